//! Property tests for the algebraic and numeric invariants.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use spectra_core::exact::puiseux::coefficients_complex;
use spectra_core::exact::series::r64;
use spectra_core::exact::univariate;
use spectra_core::exact::{discriminant_q, parse_poly, puiseux_branches, rat, resultant_q, Poly, Ring, Series, Q};
use spectra_core::numerics::sw1::sw1_periods;
use spectra_core::numerics::AnalyticEllipticData;
use spectra_core::su_adjoint::{branch_residues, SpectralFamily};
use spectra_core::symplectic::{aks_bracket, OrbitPoint2Sphere, SphereChart, SphereQuadrature, SplitAlgebra, TestFunction};
use spectra_core::weierstrass::EllipticCurveModel;

fn small_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_q() -> impl Strategy<Value = Q> {
    small_q().prop_filter("nonzero", |q| !q.is_zero())
}

/// Polynomial in `t` with coefficients `c0 + c1·a`, nonzero constant lead.
fn poly_t(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
    (1..=max_deg).prop_flat_map(|d| (proptest::collection::vec((small_q(), small_q()), d), nonzero_q())).prop_map(|(low, lead)| {
        let (t, a) = (Poly::var("t"), Poly::var("a"));
        let mut p = Poly::rational(&lead) * t.pow(low.len() as u32);
        for (i, (c0, c1)) in low.iter().enumerate() {
            p = p + (Poly::rational(c0) + Poly::rational(c1) * &a) * t.pow(i as u32);
        }
        p
    })
}

fn upoly(max_deg: usize) -> impl Strategy<Value = Vec<Q>> {
    (1..=max_deg).prop_flat_map(|d| (proptest::collection::vec(small_q(), d), nonzero_q())).prop_map(|(mut low, lead)| {
        low.push(lead);
        low
    })
}

fn complex_in(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resultant_is_multiplicative(f in poly_t(2), g in poly_t(2), h in poly_t(3)) {
        let lhs = resultant_q(&(&f * &g), &h, "t").unwrap();
        let rhs = resultant_q(&f, &h, "t").unwrap() * resultant_q(&g, &h, "t").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_detects_repeated_roots(r in small_q(), g in upoly(3)) {
        let t = Poly::var("t");
        let g = univariate::to_poly(&g, "t");
        let f = (&t - &Poly::rational(&r)).pow(2) * g;
        prop_assert!(discriminant_q(&f, "t").unwrap().is_zero());
    }

    #[test]
    fn discriminant_nonzero_when_squarefree(f in upoly(5)) {
        let sf = univariate::squarefree_part(&f);
        prop_assume!(univariate::degree(&sf) == univariate::degree(&f) && f.len() > 2);
        let d = discriminant_q(&univariate::to_poly(&f, "t"), "t").unwrap();
        prop_assert!(!d.is_zero());
    }

    #[test]
    fn series_sqrt_squares_back(c in proptest::collection::vec(small_q(), 1..6), trunc in 6i64..12) {
        let mut terms = vec![(r64(0, 1), Q::one())];
        for (i, q) in c.iter().enumerate() {
            terms.push((r64(i as i64 + 1, 1), q.clone()));
        }
        let s = Series::from_terms("xi", terms, Some(r64(trunc, 1)));
        let r = s.sqrt().unwrap();
        let defect = r.mul(&r).sub(&s);
        prop_assert!(defect.terms().iter().all(|(e, _)| *e >= r64(trunc, 1)));
    }

    #[test]
    fn branch_ramification_sums_to_degree(d in 2usize..5, c in proptest::collection::vec(complex_in(1.0), 8)) {
        // F = t^d + Σ_{i<d} (c_i + c'_i ξ) ξ^{d−i} t^i − ξ: all roots go to 0 as ξ → 0
        let (t, xi) = (Poly::<Complex64>::var("t"), Poly::<Complex64>::var("xi"));
        let mut f = t.pow(d as u32) - &xi;
        for i in 1..d {
            let coeff = Poly::constant(c[i]) + Poly::constant(c[i + 4 % 8]) * &xi;
            f = f + coeff * xi.pow((d - i) as u32) * t.pow(i as u32);
        }
        let a = coefficients_complex(&f, "t", "xi").unwrap();
        let branches = puiseux_branches(&a, r64(3, 1), 1e-8).unwrap();
        let total: u32 = branches.iter().map(|b| b.ramification).sum();
        prop_assert_eq!(total as usize, d);
    }

    #[test]
    fn polynomials_round_trip_through_text(coeffs in proptest::collection::vec((small_q(), 0u32..3, 0u32..3, 0u32..2, 0u32..2), 1..6)) {
        let mut p = Poly::zero();
        for (q, i, j, k, l) in &coeffs {
            p = p + Poly::rational(q) * Poly::var("t").pow(*i) * Poly::var("x").pow(*j) * Poly::var("y").pow(*k) * Poly::var("b").pow(*l);
        }
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn multiplication_distributes(f in poly_t(3), g in poly_t(3), h in poly_t(2)) {
        prop_assert_eq!((&f + &g) * &h, &f * &h + &g * &h);
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn aks_brackets_vanish(n in 2usize..=5, seed in any::<u64>()) {
        use rand::SeedableRng;
        let alg = SplitAlgebra::new(n).unwrap();
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let l = alg.random_point(&mut r);
        for k1 in 2..=n as u32 {
            for k2 in 2..=n as u32 {
                prop_assert!(aks_bracket(&alg, TestFunction::TracePower(k1), TestFunction::TracePower(k2), &l).is_zero());
            }
            let c = TestFunction::Entry(0, 0);
            let v = aks_bracket(&alg, TestFunction::TracePower(k1), c, &l);
            prop_assert_eq!(v.clone(), -aks_bracket(&alg, c, TestFunction::TracePower(k1), &l));
        }
    }

    #[test]
    fn sphere_area_is_linear_and_chart_free(a in proptest::collection::vec(-3.0f64..3.0, 3), s in 0.2f64..4.0, root in 0usize..3) {
        let pair = [(0, 1), (1, 2), (0, 2)][root];
        prop_assume!((a[pair.0] - a[pair.1]).abs() > 1e-3);
        let sphere = OrbitPoint2Sphere::new(a.clone(), pair).unwrap();
        let i = sphere.integral().value;
        prop_assert!((i - 2.0 * PI * (a[pair.0] - a[pair.1])).abs() < 1e-9 * (1.0 + i.abs()));
        let other = sphere.integral_with(SphereChart::Stretched, SphereQuadrature { polar: 48, azimuthal: 32 }).value;
        prop_assert!((i - other).abs() < 1e-8 * (1.0 + i.abs()));
        let scaled = OrbitPoint2Sphere::new(a.iter().map(|v| v * s).collect(), pair).unwrap().integral().value;
        prop_assert!((scaled - s * i).abs() < 1e-8 * (1.0 + scaled.abs()));
        let flipped = OrbitPoint2Sphere::new(a.iter().map(|v| -v).collect(), pair).unwrap().integral().value;
        prop_assert!((flipped + i).abs() < 1e-9 * (1.0 + i.abs()));
    }

    #[test]
    fn weierstrass_function_is_periodic_and_solves_the_ode(q in complex_in(0.2), z in complex_in(1.0)) {
        prop_assume!(q.norm() > 1e-3 && z.norm() > 0.1);
        let data = AnalyticEllipticData::from_nome(q, Complex64::new(PI, 0.0)).unwrap();
        let Ok(p) = data.wp(z) else { return Ok(()) };
        prop_assert!(data.ode_residual(z).unwrap() < 1e-8);
        for w in [data.omega1, data.omega2] {
            let shifted = data.wp(z + w).unwrap();
            prop_assert!((shifted - p).norm() < 1e-8 * (1.0 + p.norm()));
        }
    }

    #[test]
    fn upper_half_plane(u in complex_in(6.0)) {
        prop_assume!((u - 1.0).norm() > 1e-2 && (u + 1.0).norm() > 1e-2);
        let f = sw1_periods(u).unwrap();
        prop_assert!(f.tau[1] > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn residues_over_infinity(n in 2usize..=4, b in complex_in(1.0), c in complex_in(1.0), u in proptest::collection::vec(complex_in(1.0), 3)) {
        let disc = -4.0 * b.powi(3) - 27.0 * c.powi(2);
        prop_assume!(disc.norm() > 1e-3);
        let fam = SpectralFamily::new(n, &EllipticCurveModel::symbolic()).unwrap();
        let rep = branch_residues(&fam, b, c, &u[..n - 1]).unwrap();
        prop_assert!(rep.max_error < 1e-8, "{:?}", rep);
        prop_assert!(rep.sum.norm() < 1e-8);
    }
}

#[test]
fn xk_has_the_normalized_pole() {
    let e = EllipticCurveModel::symbolic();
    let basis = e.xk_basis(20).unwrap();
    for k in 2..=20 {
        let s = e.expand(&basis[&k].to_poly(), 0).unwrap();
        let polar: Vec<_> = s.terms().into_iter().filter(|(ex, _)| *ex <= r64(-2, 1)).collect();
        assert_eq!(polar, vec![(r64(-k as i64, 1), Poly::one())], "k = {k}");
    }
    for m in 1..=10u32 {
        assert_eq!(basis[&(2 * m as i32)].to_poly(), Poly::var("x").pow(m));
    }
}
