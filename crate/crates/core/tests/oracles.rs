//! Library results against independent computations done here in the test.

use std::collections::BTreeMap;

use num_complex::Complex64;
use spectra_core::exact::{rat, Poly, Ring, Q};
use spectra_core::su_adjoint::leading_polynomial;
use spectra_core::symplectic::OrbitPoint2Sphere;
use spectra_core::vacua::{count_index_subgroups, su2_vacua};
use spectra_core::weierstrass::EllipticCurveModel;

/// y = ξ⁻³ (1 + bξ⁴ − cξ⁶)^{1/2} by the binomial series, exponent → coefficient.
fn y_by_binomial(order: i64) -> BTreeMap<i64, Poly<Q>> {
    let (b, c) = (Poly::var("b"), Poly::var("c"));
    let mut out: BTreeMap<i64, Poly<Q>> = BTreeMap::new();
    let mut half_choose_k = Q::one();
    for k in 0..=(order + 3) / 4 {
        if k > 0 {
            half_choose_k = half_choose_k * (rat(1, 2) - rat(k - 1, 1)) * rat(1, k);
        }
        let mut k_choose_j = Q::one();
        for j in 0..=k {
            if j > 0 {
                k_choose_j = k_choose_j * rat(k - j + 1, j);
            }
            let e = 4 * (k - j) + 6 * j - 3;
            if e > order {
                continue;
            }
            let term = Poly::rational(&(half_choose_k.clone() * k_choose_j.clone()))
                * b.pow((k - j) as u32)
                * (-&c).pow(j as u32);
            let slot = out.entry(e).or_insert_with(Poly::zero);
            *slot = slot.clone() + term;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

#[test]
fn y_series_matches_binomial_expansion() {
    let order = 21;
    let got = EllipticCurveModel::symbolic().expand_y(order).unwrap();
    let want = y_by_binomial(order);
    let got: BTreeMap<i64, Poly<Q>> = got
        .terms()
        .into_iter()
        .map(|(e, p)| {
            assert!(e.is_integer());
            (*e.numer(), p)
        })
        .collect();
    assert_eq!(got, want);
    assert_eq!(want[&5], Poly::rational(&rat(-1, 8)) * Poly::var("b").pow(2));
}

/// (c−1)^{n−1}(c+n−1) in i128 arithmetic.
fn factored_leading(n: usize) -> Vec<i128> {
    let mut p = vec![n as i128 - 1, 1];
    for _ in 1..n {
        let mut next = vec![0i128; p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a;
        }
        p = next;
    }
    p
}

#[test]
fn leading_polynomial_factors() {
    for n in 2..=12 {
        let want: Vec<Q> = factored_leading(n).into_iter().map(|a| rat(a as i64, 1)).collect();
        assert_eq!(leading_polynomial(n), want, "n = {n}");
    }
}

/// Roots of u³ + bu − c by Cardano's formula.
fn cardano(b: Complex64, c: Complex64) -> Vec<Complex64> {
    let p = b;
    let q = -c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut a = (-q / 2.0 + disc).powf(1.0 / 3.0);
    if a.norm() < 1e-14 {
        a = (-q / 2.0 - disc).powf(1.0 / 3.0);
    }
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    (0..3)
        .map(|k| {
            let ak = a * w.powi(k);
            if ak.norm() < 1e-14 {
                ak
            } else {
                ak - p / (3.0 * ak)
            }
        })
        .collect()
}

#[test]
fn su2_vacua_are_the_cubic_roots() {
    let samples = [
        (Complex64::new(-1.0, 0.0), Complex64::new(0.3, 0.0)),
        (Complex64::new(0.4, -0.7), Complex64::new(1.1, 0.2)),
        (Complex64::new(2.0, 1.0), Complex64::new(-0.5, 0.9)),
    ];
    for (b, c) in samples {
        let got: Vec<Complex64> = su2_vacua(b, c).unwrap().into_iter().map(|v| v.u).collect();
        let mut want = cardano(b, c);
        for g in &got {
            let (i, d) = want
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (w - g).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < 1e-10, "b = {b}, c = {c}: {g} unmatched ({d})");
            want.remove(i);
        }
    }
}

#[test]
fn subgroup_counts_are_divisor_sums() {
    for n in 1..=16usize {
        let sigma: usize = (1..=n).filter(|d| n % d == 0).sum();
        assert_eq!(count_index_subgroups(n).unwrap().count(), sigma, "n = {n}");
    }
}

#[test]
fn sphere_area_matches_closed_form() {
    // su(2) at level diag(a, −a): area 4πa
    for a in [0.5, 1.0, 2.5] {
        let v = OrbitPoint2Sphere::new(vec![a, -a], (0, 1)).unwrap().integral().value;
        assert!((v - 4.0 * std::f64::consts::PI * a).abs() < 1e-10, "{v}");
    }
}
