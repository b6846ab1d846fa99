//! Spectral curves of SU(n) with adjoint matter: `C_u : p_n + Σ u_ℓ p_ℓ = 0`
//! over the elliptic curve E.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::binomial;
use num_rational::Rational64;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::{lstsq_complex, rank, solve_affine, Matrix};
use crate::exact::puiseux::{puiseux_branches, PuiseuxBranch};
use crate::exact::ring::{int, q_string};
use crate::exact::series::{r64, Series};
use crate::exact::univariate::{self, complex_roots, rational_roots, UPoly};
use crate::exact::{Poly, Ring, Q};
use crate::numerics::AnalyticEllipticData;
use crate::weierstrass::{EllipticCurveModel, XI};

pub const T_PRIME: &str = "t'";

fn t() -> Poly<Q> {
    Poly::var("t")
}

fn param(l: usize) -> String {
    format!("u{l}")
}

/// `p_n = t^n − Σ_{k=2}^n (−1)^k (k−1) C(n,k) x_k t^{n−k}`.
pub fn pn_closed(n: usize, e: &EllipticCurveModel) -> Result<Poly<Q>> {
    let mut p = t().pow(n as u32);
    if n < 2 {
        return Ok(p);
    }
    let basis = e.xk_basis(n as i32)?;
    for k in 2..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = sign * (k as i64 - 1) * binomial(n as i64, k as i64);
        p = p - Poly::int(c) * basis[&(k as i32)].to_poly() * t().pow((n - k) as u32);
    }
    Ok(p)
}

/// The family `C_u = p̃_n + Σ u_ℓ p̃_ℓ` with symbolic parameters `u0, …, u_{n−2}`.
#[derive(Clone, Debug)]
pub struct SpectralFamily {
    pub n: usize,
    pub base: EllipticCurveModel,
    pub equation: Poly<Q>,
    pub parameters: Vec<String>,
}

impl SpectralFamily {
    pub fn new(n: usize, base: &EllipticCurveModel) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("SU(n) needs n ≥ 2".into()));
        }
        let mut eq = pn_normalized(n, base)?;
        let mut parameters = Vec::new();
        for l in 0..=n - 2 {
            let name = param(l);
            eq = eq + Poly::var(&name) * pn_normalized(l, base)?;
            parameters.push(name);
        }
        Ok(SpectralFamily {
            n,
            base: base.clone(),
            equation: eq,
            parameters,
        })
    }

    /// Coefficient `f_k` of `t^{n−k}`.
    pub fn f(&self, k: usize) -> Poly<Q> {
        self.equation.coeff_of("t", (self.n - k) as i32)
    }

    /// Tracelessness and the pole-order bound `ord_∞ f_k ≤ k`.
    pub fn check_invariants(&self) -> bool {
        if !self.f(1).is_zero() {
            return false;
        }
        (2..=self.n).all(|k| self.base.reduce(&self.f(k)).pole_order() <= k as i32)
    }
}

/// Result of substituting `t = t′ + ξ⁻¹`.
#[derive(Clone, Debug)]
pub struct PoleCheck {
    pub ok: bool,
    /// `(power of t′, ξ-exponent, coefficient)` for each pole of order ≥ 2.
    pub offending: Vec<(i32, Rational64, Poly<Q>)>,
}

/// Coefficients in `t′` of `P(t′ + ξ⁻¹)` as ξ-series, exact below `order`.
pub fn shifted_expansion(
    p: &Poly<Q>,
    e: &EllipticCurveModel,
    order: i64,
) -> Result<BTreeMap<i32, Series<Poly<Q>>>> {
    let parts = p.coeffs_in("t");
    let shift = Series::from_terms(
        XI,
        [
            (r64(0, 1), Poly::var(T_PRIME)),
            (r64(-1, 1), Poly::one()),
        ],
        None,
    );
    let mut total = Series::zero(XI);
    for (i, f) in parts {
        if i < 0 {
            return Err(Error::Domain("negative power of t".into()));
        }
        let fi = e.expand(&f, order + i as i64)?;
        total = total.add(&fi.mul(&shift.pow(i)?));
    }
    let mut by_power: BTreeMap<i32, Vec<(Rational64, Poly<Q>)>> = BTreeMap::new();
    for (ex, c) in total.terms() {
        for (j, cj) in c.coeffs_in(T_PRIME) {
            by_power.entry(j).or_default().push((ex, cj));
        }
    }
    let trunc = total.truncation();
    Ok(by_power
        .into_iter()
        .map(|(j, terms)| (j, Series::from_terms(XI, terms, trunc)))
        .collect())
}

/// True iff `P(t′ + ξ⁻¹)` has at most first-order poles in every `t′`
/// coefficient.
pub fn check_first_order_poles(p: &Poly<Q>, e: &EllipticCurveModel) -> Result<PoleCheck> {
    let parts = shifted_expansion(p, e, 0)?;
    let mut offending = Vec::new();
    for (j, s) in &parts {
        if s.truncation().is_some_and(|tr| tr <= r64(-1, 1)) {
            return Err(Error::NeedsHigherOrder("expansion too short to see the ξ⁻² terms".into()));
        }
        for (ex, c) in s.terms() {
            if ex <= r64(-2, 1) {
                offending.push((*j, ex, c));
            }
        }
    }
    Ok(PoleCheck {
        ok: offending.is_empty(),
        offending,
    })
}

/// Solution space of monic `P = t^n + Σ_k f_k t^{n−k}` with `f_k` in the span
/// of `b^i c^l x_j` (weighted degree ≤ k; x:2, y:3, b:4, c:6) satisfying the
/// first-order-pole condition.
#[derive(Clone, Debug)]
pub struct PnSolution {
    pub n: usize,
    /// The unique solution without constant (`x_0`) components.
    pub normalized: Poly<Q>,
    /// The solution with each `f_k` a rational multiple of `x_k`, if any.
    pub basis_supported: Option<Poly<Q>>,
    /// Directions of the solution space (each `m(b,c)·p̃_ℓ`).
    pub directions: Vec<Poly<Q>>,
}

impl PnSolution {
    /// Number of parameter-free directions: the constants `u_0..u_{n−2}`.
    pub fn dimension(&self) -> usize {
        self.directions
            .iter()
            .filter(|d| !d.has_var("b") && !d.has_var("c"))
            .count()
    }

    pub fn particular(&self) -> &Poly<Q> {
        &self.normalized
    }
}

/// Monomials `b^i c^l` of weighted degree at most `w`.
fn weight_monomials(w: usize, e: &EllipticCurveModel) -> Vec<Poly<Q>> {
    let mut out = Vec::new();
    for l in 0..=w / 6 {
        for i in 0..=(w - 6 * l) / 4 {
            out.push(e.b.pow(i as u32) * e.c.pow(l as u32));
        }
    }
    out
}

/// Independent linear-solve derivation of `p_n`. Equations are split by
/// monomials in the remaining variables, so unknowns are rational.
pub fn pn_solve(n: usize, e: &EllipticCurveModel) -> Result<PnSolution> {
    if n < 2 {
        return Err(Error::Domain("pn_solve needs n ≥ 2".into()));
    }
    let basis = e.xk_basis(n as i32)?;
    let elem = |j: usize| {
        if j == 0 {
            Poly::one()
        } else {
            basis[&(j as i32)].to_poly()
        }
    };
    // unknown (k, j, monomial index) with coefficient m·x_j in f_k
    struct Unknown {
        k: usize,
        j: usize,
        mono: Poly<Q>,
    }
    let mut unknowns: Vec<Unknown> = Vec::new();
    for k in 2..=n {
        for j in std::iter::once(0).chain(2..=k) {
            for mono in weight_monomials(k - j, e) {
                unknowns.push(Unknown { k, j, mono });
            }
        }
    }
    let uname = |i: usize| format!("α{i:04}");
    let mut p = t().pow(n as u32);
    for (i, u) in unknowns.iter().enumerate() {
        p = p + Poly::var(&uname(i)) * &u.mono * elem(u.j) * t().pow((n - u.k) as u32);
    }
    let parts = shifted_expansion(&p, e, 0)?;
    let index: BTreeMap<String, usize> = (0..unknowns.len()).map(|i| (uname(i), i)).collect();
    // equation key: (t′ power, ξ exponent, other-variable monomial)
    let mut rows: BTreeMap<(i32, Rational64, Vec<(String, i32)>), (Vec<Q>, Q)> = BTreeMap::new();
    for (j, s) in &parts {
        for (ex, c) in s.terms() {
            if ex > r64(-2, 1) {
                continue;
            }
            for (factors, coef) in c.named_terms() {
                let mut which = None;
                let mut rest = Vec::new();
                for (v, k) in factors {
                    match index.get(&v) {
                        Some(&i) => {
                            assert_eq!(k, 1, "condition must be linear in the unknowns");
                            which = Some(i);
                        }
                        None => rest.push((v, k)),
                    }
                }
                let row = rows
                    .entry((*j, ex, rest))
                    .or_insert_with(|| (vec![Q::zero(); unknowns.len()], Q::zero()));
                match which {
                    Some(i) => row.0[i] += coef,
                    None => row.1 -= coef,
                }
            }
        }
    }
    let (a, b): (Matrix<Q>, Vec<Q>) = rows.into_values().unzip();
    let (_, null) = solve_affine(&a, &b)
        .ok_or_else(|| Error::Internal("first-order-pole system is inconsistent".into()))?;
    let build = |x: &[Q], with_t: bool| {
        let mut acc = if with_t { t().pow(n as u32) } else { Poly::zero() };
        for (i, u) in unknowns.iter().enumerate() {
            if !x[i].is_zero() {
                acc = acc + Poly::rational(&x[i]) * &u.mono * elem(u.j) * t().pow((n - u.k) as u32);
            }
        }
        e.reduce(&acc).to_poly()
    };
    let pinned = |keep: &dyn Fn(&Unknown) -> bool| {
        let mut a2 = a.clone();
        let mut b2 = b.clone();
        for (i, u) in unknowns.iter().enumerate() {
            if !keep(u) {
                let mut r = vec![Q::zero(); unknowns.len()];
                r[i] = int(1);
                a2.push(r);
                b2.push(Q::zero());
            }
        }
        solve_affine(&a2, &b2)
    };
    let (xn, nn) = pinned(&|u: &Unknown| u.j != 0)
        .ok_or_else(|| Error::Internal("no solution without constant components".into()))?;
    if !nn.is_empty() {
        return Err(Error::Internal("normalized solution is not unique".into()));
    }
    let basis_supported = match pinned(&|u: &Unknown| u.j == u.k && u.mono.as_constant().is_some()) {
        Some((x, nd)) if nd.is_empty() => Some(build(&x, true)),
        _ => None,
    };
    Ok(PnSolution {
        n,
        normalized: build(&xn, true),
        basis_supported,
        directions: null.iter().map(|v| build(v, false)).collect(),
    })
}

/// The normalized `p̃_n` (equal to the closed form for n ≤ 5).
pub fn pn_normalized(n: usize, e: &EllipticCurveModel) -> Result<Poly<Q>> {
    match n {
        0 | 1 => pn_closed(n, e),
        _ => Ok(pn_solve(n, e)?.normalized),
    }
}

/// Whether `q` lies in the affine solution space.
pub fn in_solution_space(sol: &PnSolution, q: &Poly<Q>) -> bool {
    // q − particular must be a Q-combination of the directions
    let diff = q - &sol.normalized;
    let mut monos: BTreeMap<Vec<(String, i32)>, usize> = BTreeMap::new();
    let mut polys = sol.directions.clone();
    polys.push(diff);
    let mut cols: Vec<Vec<(usize, Q)>> = Vec::new();
    for p in &polys {
        let mut col = Vec::new();
        for (f, c) in p.named_terms() {
            let len = monos.len();
            let idx = *monos.entry(f).or_insert(len);
            col.push((idx, c));
        }
        cols.push(col);
    }
    let m = monos.len();
    let build = |k: usize| -> Matrix<Q> {
        let mut a = vec![vec![Q::zero(); k]; m];
        for (j, col) in cols.iter().take(k).enumerate() {
            for (i, c) in col {
                a[*i][j] = c.clone();
            }
        }
        a
    };
    let k = polys.len();
    rank(&build(k - 1)) == rank(&build(k))
}

/// `q(c) = c^n − Σ (−1)^k (k−1) C(n,k) c^{n−k}`, ascending coefficients.
pub fn leading_polynomial(n: usize) -> UPoly {
    let mut q = vec![Q::zero(); n + 1];
    q[n] = int(1);
    for k in 2..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        q[n - k] -= int(sign * (k as i64 - 1) * binomial(n as i64, k as i64));
    }
    q
}

/// `(c−1)^{n−1} (c+n−1)`, ascending coefficients.
pub fn expected_leading_polynomial(n: usize) -> UPoly {
    let mut acc: UPoly = vec![int(n as i64 - 1), int(1)];
    for _ in 0..n - 1 {
        let mut next = vec![Q::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c;
        }
        acc = next;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub n: usize,
    pub u: Vec<Complex64>,
    /// Branch leading coefficients and ramification from Newton–Puiseux.
    pub branches: Vec<(Complex64, u32)>,
    /// Residues of `t·dz` read off the expansions.
    pub series_residues: Vec<Complex64>,
    /// Residues measured by contour integration, one per point over ∞.
    pub contour_residues: Vec<(Complex64, u32)>,
    pub leading_poly: UPoly,
    pub leading_roots: Vec<(Q, usize)>,
    /// Max deviation of either residue set from the target multiset.
    pub max_error: f64,
    pub sum: Complex64,
}

fn target_residues(n: usize) -> Vec<f64> {
    let mut v = vec![1.0; n - 1];
    v.insert(0, 1.0 - n as f64);
    v
}

fn multiset_error(found: &[Complex64], target: &[f64]) -> f64 {
    if found.len() != target.len() {
        return f64::INFINITY;
    }
    let mut f: Vec<Complex64> = found.to_vec();
    f.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    f.iter()
        .zip(target)
        .map(|(a, b)| (a - Complex64::new(*b, 0.0)).norm())
        .fold(0.0, f64::max)
}

/// Numeric values for the curve and family parameters.
pub fn numeric_values(b: Complex64, c: Complex64, u: &[Complex64]) -> BTreeMap<String, Complex64> {
    let mut vals = BTreeMap::new();
    vals.insert("b".to_string(), b);
    vals.insert("c".to_string(), c);
    for (l, x) in u.iter().enumerate() {
        vals.insert(param(l), *x);
    }
    vals
}

fn eval_series(s: &Series<Poly<Q>>, vals: &BTreeMap<String, Complex64>) -> Result<Series<Complex64>> {
    let mut terms = Vec::new();
    for (ex, c) in s.terms() {
        let v = c
            .eval_complex(vals)
            .ok_or_else(|| Error::Domain("unassigned parameter".into()))?;
        terms.push((ex, v));
    }
    Ok(Series::from_terms(s.var(), terms, s.truncation()))
}

/// Residues of `λ = t·dz`, `dz = −dx/(2y)`, on the branches of `C_u` over ∞.
pub fn branch_residues(
    fam: &SpectralFamily,
    b: Complex64,
    c: Complex64,
    u: &[Complex64],
) -> Result<ResidueReport> {
    let n = fam.n;
    if u.len() != n - 1 {
        return Err(Error::Domain(format!("expected {} parameters", n - 1)));
    }
    let vals = numeric_values(b, c, u);
    let order = 2i64;
    let mut coeffs = Vec::new();
    for i in 0..=n {
        let f = fam.equation.coeff_of("t", i as i32);
        coeffs.push(eval_series(&fam.base.expand(&f, order + n as i64 + 4)?, &vals)?);
    }
    let branches: Vec<PuiseuxBranch<Complex64>> = puiseux_branches(&coeffs, r64(order, 1), 1e-7)?;
    let w = eval_series(&fam.base.expand_y_inverse(order + 8)?.shift(r64(-3, 1)), &vals)?;
    let mut series_res = Vec::new();
    let mut lead = Vec::new();
    for br in &branches {
        let (ex, c0) = br.series.leading().unwrap_or((r64(0, 1), Complex64::new(0.0, 0.0)));
        lead.push((if ex == r64(-1, 1) { c0 } else { Complex64::new(f64::NAN, 0.0) }, br.ramification));
        let res = br.series.mul(&w).coeff(r64(-1, 1)) * br.ramification as f64;
        series_res.push(res);
    }
    let mut ram: Vec<u32> = branches.iter().map(|b| b.ramification).collect();
    ram.sort_unstable();
    // shrink the circle until it encloses no finite branch point, i.e. its
    // sheet cycles match the ramification over ∞
    let mut r = 0.05;
    let mut contour = settled_contour(fam, b, c, u, r)?;
    for _ in 0..6 {
        let mut lens: Vec<u32> = contour.iter().map(|c| c.1).collect();
        lens.sort_unstable();
        if lens == ram {
            break;
        }
        r *= 0.5;
        contour = settled_contour(fam, b, c, u, r)?;
    }
    let target = target_residues(n);
    let cres: Vec<Complex64> = contour.iter().map(|r| r.0).collect();
    let err = multiset_error(&series_res, &target).max(multiset_error(&cres, &target));
    let qpoly = leading_polynomial(n);
    let sum = cres.iter().sum();
    Ok(ResidueReport {
        n,
        u: u.to_vec(),
        branches: lead,
        series_residues: series_res,
        contour_residues: contour,
        leading_roots: rational_roots(&qpoly),
        leading_poly: qpoly,
        max_error: err,
        sum,
    })
}

/// Contour residues with the node count doubled until the rectangle rule
/// settles; nearly colliding sheets slow its convergence.
fn settled_contour(
    fam: &SpectralFamily,
    b: Complex64,
    c: Complex64,
    u: &[Complex64],
    r: f64,
) -> Result<Vec<(Complex64, u32)>> {
    let mut m = 512;
    let mut contour = contour_residues(fam, b, c, u, r, m)?;
    while m < 16384 {
        m *= 2;
        let finer = contour_residues(fam, b, c, u, r, m)?;
        let same_cycles = finer.len() == contour.len();
        let shift = contour
            .iter()
            .zip(&finer)
            .map(|(a, f)| (a.0 - f.0).norm())
            .fold(0.0, f64::max);
        contour = finer;
        if same_cycles && shift < 1e-10 {
            break;
        }
    }
    Ok(contour)
}

/// Residues by tracking the n sheets over the circle `|ξ| = r` and summing
/// `t·dz` over each cycle of sheets (one cycle per point over ∞).
pub fn contour_residues(
    fam: &SpectralFamily,
    b: Complex64,
    c: Complex64,
    u: &[Complex64],
    r: f64,
    m: usize,
) -> Result<Vec<(Complex64, u32)>> {
    let n = fam.n;
    let vals = numeric_values(b, c, u);
    let fixed: Vec<(&str, Complex64)> = vals.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    // coefficients as (A, B) with f = A(x) + B(x)·y, parameters substituted
    let coeffs: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..=n)
        .map(|i| {
            let f = fam.base.reduce(&fam.equation.coeff_of("t", i as i32));
            let dense = |p: &Poly<Q>| -> Result<Vec<Complex64>> {
                let pc = p.to_complex_poly().eval_vars(&fixed);
                let mut out = Vec::new();
                for (k, cf) in pc.coeffs_in("x") {
                    let k = k as usize;
                    if out.len() <= k {
                        out.resize(k + 1, Complex64::new(0.0, 0.0));
                    }
                    out[k] = cf
                        .as_constant()
                        .ok_or_else(|| Error::Domain("unassigned parameter".into()))?;
                }
                Ok(out)
            };
            Ok((dense(&f.a)?, dense(&f.b)?))
        })
        .collect::<Result<_>>()?;
    let roots_at = |xi: Complex64| -> Result<(Vec<Complex64>, Complex64)> {
        let inner = (Complex64::new(1.0, 0.0) + b * xi.powi(4) - c * xi.powi(6)).sqrt();
        let y = inner / xi.powi(3);
        let x = xi.powi(-2);
        let p: Vec<Complex64> = coeffs
            .iter()
            .map(|(a, bb)| univariate::eval_complex(a, x) + univariate::eval_complex(bb, x) * y)
            .collect();
        // roots are solved for and tracked as s = ξ·t, which stays bounded near
        // ∞; dz/dξ = ξ⁻³ / y
        let inv = xi.inv();
        let mut w = Complex64::new(1.0, 0.0);
        let p: Vec<Complex64> = p
            .into_iter()
            .map(|a| {
                let v = a * w;
                w *= inv;
                v
            })
            .collect();
        let scaled = complex_roots(&p);
        Ok((scaled, xi.powi(-3) / y))
    };
    // carries the sheet labels from angle a to b, bisecting where matching is ambiguous
    fn track(
        roots_at: &dyn Fn(Complex64) -> Result<(Vec<Complex64>, Complex64)>,
        r: f64,
        prev: &[Complex64],
        a: f64,
        b: f64,
        depth: u32,
    ) -> Result<Vec<Complex64>> {
        let (roots, _) = roots_at(Complex64::from_polar(r, b))?;
        match match_roots(prev, &roots) {
            Ok(next) => Ok(next),
            Err(e) if depth == 0 => Err(e),
            Err(_) => {
                let mid = 0.5 * (a + b);
                let half = track(roots_at, r, prev, a, mid, depth - 1)?;
                track(roots_at, r, &half, mid, b, depth - 1)
            }
        }
    }
    let (mut cur, _) = roots_at(Complex64::new(r, 0.0))?;
    let start = cur.clone();
    let mut sums = vec![Complex64::new(0.0, 0.0); n];
    let step = 2.0 * std::f64::consts::PI / m as f64;
    for k in 0..m {
        let th = step * k as f64;
        let (_, dz) = roots_at(Complex64::from_polar(r, th))?;
        if k > 0 {
            cur = track(&roots_at, r, &cur, th - step, th, 10)?;
        }
        for s in 0..n {
            // t·dz over this step, with t = cur/ξ and dξ = iξ dθ
            sums[s] += cur[s] * dz / m as f64;
        }
    }
    let end = track(&roots_at, r, &cur, 2.0 * std::f64::consts::PI - step, 2.0 * std::f64::consts::PI, 10)?;
    // permutation: sheet s ends where start sheet perm[s] began
    let perm: Vec<usize> = end
        .iter()
        .map(|z| {
            (0..n)
                .min_by(|&i, &j| (start[i] - z).norm().partial_cmp(&(start[j] - z).norm()).unwrap())
                .unwrap()
        })
        .collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut total = Complex64::new(0.0, 0.0);
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            total += sums[i];
            len += 1;
            i = perm[i];
        }
        out.push((total, len));
    }
    out.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
    Ok(out)
}

/// Reorders `next` to follow `prev` by nearest-neighbour matching; fails if
/// the assignment is ambiguous.
pub fn match_roots(prev: &[Complex64], next: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = prev.len();
    let mut used = vec![false; n];
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut best = None;
        let mut bd = f64::INFINITY;
        let mut second = f64::INFINITY;
        for j in 0..n {
            if used[j] {
                continue;
            }
            let d = (prev[i] - next[j]).norm();
            if d < bd {
                second = bd;
                bd = d;
                best = Some(j);
            } else if d < second {
                second = d;
            }
        }
        let j = best.ok_or_else(|| Error::Continuation("no root to match".into()))?;
        if second.is_finite() && bd > 0.3 * second {
            return Err(Error::Continuation("root tracking ambiguous; refine the step".into()));
        }
        used[j] = true;
        out[i] = next[j];
    }
    Ok(out)
}

/// Random complex parameters with components uniform in `[−1, 1]`.
pub fn random_parameters(rng: &mut ChaCha8Rng, k: usize) -> Vec<Complex64> {
    (0..k)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Su2Consistency {
    /// `s² − (x−u)(x³+bx−c)` after eliminating `t, y`.
    pub quotient_residual: Poly<Q>,
    pub quotient_equation: Poly<Q>,
    /// Numerator identity reduced modulo `e³ + be − c`.
    pub mobius_residual: Poly<Q>,
    /// Value of the numerator at `x = u`; nonzero means `u ↦ ∞`.
    pub u_image_numerator: Poly<Q>,
    pub mobius_determinant: Poly<Q>,
}

impl Su2Consistency {
    pub fn ok(&self) -> bool {
        self.quotient_residual.is_zero()
            && self.mobius_residual.is_zero()
            && !self.u_image_numerator.is_zero()
            && !self.mobius_determinant.is_zero()
    }
}

/// The αβ-quotient of `t² = x − u` and the Möbius map to the SW family.
pub fn su2_consistency() -> Su2Consistency {
    let e = EllipticCurveModel::symbolic();
    let (x, u, b, c, y) = (
        Poly::var("x"),
        Poly::var("u"),
        Poly::var("b"),
        Poly::var("c"),
        Poly::var("y"),
    );
    // s = t·y is invariant under (t, y) ↦ (−t, −y); s² = t²·y²
    let s2 = t().pow(2) * y.pow(2);
    let on_cu = s2
        .rem_monic(&(t().pow(2) - &x + &u), "t")
        .rem_monic(&(y.pow(2) - e.cubic()), "y");
    let target = (&x - &u) * e.cubic();
    let ev = Poly::var("e");
    let cubic_e = ev.pow(3) + &b * &ev - &c;
    let numer = |z: &Poly<Q>| (u.pow(2) + &b) * z - &c;
    let identity = numer(&ev) - (&ev * &u + ev.pow(2)) * (&u - &ev);
    Su2Consistency {
        quotient_residual: &on_cu - &target,
        quotient_equation: Poly::var("s").pow(2) - &target,
        mobius_residual: identity.rem_monic(&cubic_e, "e"),
        u_image_numerator: numer(&u),
        mobius_determinant: (u.pow(2) + &b) * &u - &c,
    }
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub partition: Vec<usize>,
    pub samples: usize,
    pub max_block_rank: usize,
    pub ok: bool,
    /// A constructed rank-2 perturbation whose blocks are detected to fail.
    pub negative_control_rank: usize,
    pub negative_control_detected: bool,
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

fn block_ranks(m: &Matrix<Q>, partition: &[usize]) -> Vec<usize> {
    let mut off = 0;
    let mut out = Vec::new();
    for &k in partition {
        let blk: Matrix<Q> = (off..off + k)
            .map(|i| (off..off + k).map(|j| m[i][j].clone()).collect())
            .collect();
        out.push(rank(&blk));
        off += k;
    }
    out
}

/// `rank(A − Id) ≤ 1` is inherited by every principal block.
pub fn block_inheritance(partition: &[usize], samples: usize, seed: u64) -> Result<BlockReport> {
    let n: usize = partition.iter().sum();
    if partition.iter().any(|k| *k == 0) || n == 0 {
        return Err(Error::Domain("partition parts must be positive".into()));
    }
    let mut rng = rng(seed);
    let mut max_rank = 0;
    for _ in 0..samples {
        let col: Vec<Q> = (0..n).map(|_| rand_q(&mut rng)).collect();
        let row: Vec<Q> = (0..n).map(|_| rand_q(&mut rng)).collect();
        // A − Id = col · rowᵀ
        let m: Matrix<Q> = (0..n).map(|i| (0..n).map(|j| &col[i] * &row[j]).collect()).collect();
        debug_assert!(rank(&m) <= 1);
        max_rank = max_rank.max(block_ranks(&m, partition).into_iter().max().unwrap_or(0));
    }
    // negative control: A − Id = E_11 + E_22 puts rank 2 in the first block
    // whenever it has size ≥ 2, otherwise in the whole matrix
    let mut neg: Matrix<Q> = vec![vec![Q::zero(); n]; n];
    if n >= 2 {
        neg[0][0] = int(1);
        neg[1][1] = int(1);
    }
    let neg_rank = rank(&neg);
    let target: Vec<usize> = if partition[0] >= 2 { partition.to_vec() } else { vec![n] };
    let detected = block_ranks(&neg, &target).into_iter().max().unwrap_or(0) > 1;
    Ok(BlockReport {
        partition: partition.to_vec(),
        samples,
        max_block_rank: max_rank,
        ok: max_rank <= 1,
        negative_control_rank: neg_rank,
        negative_control_detected: detected,
    })
}

#[derive(Clone, Debug)]
pub struct PureCurveReport {
    pub n: usize,
    pub p: Poly<Q>,
    pub fiber_product_residual: Poly<Q>,
    /// Degree of the squarefree part of `p² + 1`.
    pub branch_points: usize,
    pub squarefree: bool,
    pub genus: i64,
    /// Ramification of `z ↦ v = p(z)`: indices at the finite critical points
    /// (over Q̄, counted via the squarefree part of p′) and at ∞.
    pub finite_critical_points: usize,
    pub ramification_at_infinity: usize,
    pub riemann_hurwitz_ok: bool,
}

/// Structure of `w² = p(z)² + 1` with `p = z^n + b_2 z^{n−2} + … + b_n`.
pub fn pure_curve_structure(n: usize, b: &[Q]) -> Result<PureCurveReport> {
    if n < 1 || b.len() != n.saturating_sub(1) {
        return Err(Error::Domain(format!("need n ≥ 1 and {} coefficients b_2..b_n", n.saturating_sub(1))));
    }
    let z = Poly::var("z");
    let mut p = z.pow(n as u32);
    for (i, bi) in b.iter().enumerate() {
        p = p + Poly::rational(bi) * z.pow((n - 2 - i) as u32);
    }
    let w = Poly::var("w");
    let v = Poly::var("v");
    let curve = w.pow(2) - p.pow(2) - Poly::one();
    let fiber = (w.pow(2) - v.pow(2) - Poly::one()).subs("v", &p)?;
    let h = univariate::from_poly(&(p.pow(2) + Poly::one()), "z").unwrap();
    let sf = univariate::squarefree_part(&h);
    let deg = univariate::degree(&sf).unwrap_or(0);
    let genus = (deg as i64 + 1) / 2 - 1;
    let dp = univariate::from_poly(&p.derivative("z"), "z").unwrap_or_default();
    let crit = univariate::degree(&univariate::squarefree_part(&dp)).unwrap_or(0);
    // Riemann–Hurwitz for P¹ → P¹ of degree n: −2 = −2n + Σ(e−1)
    let dp_deg = univariate::degree(&dp).unwrap_or(0);
    let rh = -2 == -2 * n as i64 + dp_deg as i64 + (n as i64 - 1);
    Ok(PureCurveReport {
        n,
        p,
        fiber_product_residual: fiber - curve,
        branch_points: deg,
        squarefree: deg == 2 * n,
        genus,
        finite_critical_points: crit,
        ramification_at_infinity: n,
        riemann_hurwitz_ok: rh,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationPoint {
    pub q: f64,
    /// Fitted scale with `Λ² = 1/|slope|`.
    pub lambda4: f64,
    /// Max deviation of the branch-set invariant from its affine fit,
    /// relative to the invariant's size on the grid.
    pub residual: f64,
    /// Invariant at the fitted `u′ = 0`, where the limit branch set
    /// `{±Λ², 0}` is symmetric under `x ↦ −x`.
    pub symmetric_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub points: Vec<DegenerationPoint>,
    pub residual_decreasing: bool,
    /// Slope of `log Λ⁴` against `log q`.
    pub loglog_slope: f64,
}

/// Convergence of the adjoint SU(2) Prym family, branched at ∞ and
/// `e_i u + e_i²`, to the pure curve with branch set `{±Λ², u′, ∞}`.
///
/// Three finite branch points and ∞ have one affine invariant,
/// `κ = (B1 − m)/h` with `m, h` the midpoint and half-difference of the
/// colliding pair `B2, B3`; for the pure curve `κ = u′/Λ²`. `κ(u)` is
/// Möbius in `u`, so it is fitted by an affine function on a grid between
/// the two collision points; the fit residual must vanish as `q → 0`.
pub fn degeneration_check_su2(qs: &[f64], grid: usize) -> Result<DegenerationReport> {
    if qs.len() < 2 || grid < 3 {
        return Err(Error::Domain("need at least two nomes and three grid points".into()));
    }
    let mut points = Vec::new();
    for &q in qs {
        if !(q > 0.0 && q <= 1e-3) {
            return Err(Error::Domain(format!("nome {q} outside (0, 1e-3]")));
        }
        let d = AnalyticEllipticData::from_nome(Complex64::new(q, 0.0), Complex64::new(std::f64::consts::PI, 0.0))?;
        let [e1, e2, e3] = d.roots();
        let kappa = |u: Complex64| {
            let b = [e1 * u + e1 * e1, e2 * u + e2 * e2, e3 * u + e3 * e3];
            (b[0] - (b[1] + b[2]) / 2.0) / ((b[1] - b[2]) / 2.0)
        };
        // B1 meets B2 at u = e3 and B3 at u = e2 (κ = ±1); the grid spans
        // the segment between these two strong-coupling points
        let (mid, half) = ((e2 + e3) / 2.0, (e3 - e2) / 2.0);
        let mut rows = Vec::new();
        let mut vals = Vec::new();
        for j in 0..grid {
            let w = -1.0 + 2.0 * j as f64 / (grid - 1) as f64;
            let u = mid + half * w;
            rows.push(vec![u, Complex64::new(1.0, 0.0)]);
            vals.push(kappa(u));
        }
        let (fit, _) = lstsq_complex(&rows, &vals);
        let size = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let residual = rows
            .iter()
            .zip(&vals)
            .map(|(r, v)| (fit[0] * r[0] + fit[1] - v).norm())
            .fold(0.0, f64::max)
            / size;
        let u0 = -fit[1] / fit[0];
        points.push(DegenerationPoint {
            q,
            lambda4: fit[0].norm().powi(-2),
            residual,
            symmetric_residual: kappa(u0).norm() / size,
        });
    }
    let mut sorted = points.clone();
    sorted.sort_by(|a, b| b.q.partial_cmp(&a.q).unwrap());
    let residual_decreasing = sorted.windows(2).all(|w| w[1].residual < w[0].residual);
    let xs: Vec<f64> = points.iter().map(|p| p.q.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.lambda4.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(DegenerationReport {
        points,
        residual_decreasing,
        loglog_slope: sxy / sxx,
    })
}

/// Rational coefficients as strings, for reports.
pub fn upoly_strings(p: &[Q]) -> Vec<String> {
    p.iter().map(q_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn v(n: &str) -> Poly<Q> {
        Poly::var(n)
    }

    #[test]
    fn closed_form_small_cases() {
        let e = EllipticCurveModel::symbolic();
        assert_eq!(pn_closed(1, &e).unwrap(), t());
        assert_eq!(pn_closed(4, &e).unwrap().to_string(), "t^4 - 6*t^2*x + 8*t*y - 3*x^2");
    }

    #[test]
    fn pole_condition_examples() {
        let e = EllipticCurveModel::symbolic();
        assert!(check_first_order_poles(&pn_closed(3, &e).unwrap(), &e).unwrap().ok);
        let bad = check_first_order_poles(&t().pow(2), &e).unwrap();
        assert!(!bad.ok);
        assert!(bad.offending.iter().any(|(j, ex, _)| *j == 0 && *ex == r64(-2, 1)));
        let fam = pn_closed(4, &e).unwrap() + v("u") * pn_closed(2, &e).unwrap();
        assert!(check_first_order_poles(&fam, &e).unwrap().ok);
    }

    #[test]
    fn linear_solve_small_n() {
        let e = EllipticCurveModel::symbolic();
        let s2 = pn_solve(2, &e).unwrap();
        assert_eq!(s2.dimension(), 1);
        assert_eq!(s2.basis_supported, Some(t().pow(2) - v("x")));
        let s3 = pn_solve(3, &e).unwrap();
        assert_eq!(s3.basis_supported.as_ref(), Some(&pn_closed(3, &e).unwrap()));
        assert_eq!(s3.normalized, pn_closed(3, &e).unwrap());
        assert_eq!(s3.dimension(), 2);
        assert!(in_solution_space(&s3, &(pn_closed(3, &e).unwrap() + Poly::int(5) * t())));
        assert!(!in_solution_space(&s3, &(pn_closed(3, &e).unwrap() + v("x"))));
    }

    #[test]
    fn closed_form_breaks_at_six() {
        let e = EllipticCurveModel::symbolic();
        let bad = check_first_order_poles(&pn_closed(6, &e).unwrap(), &e).unwrap();
        assert_eq!(bad.offending, vec![(0, r64(-2, 1), Poly::int(32) * v("b"))]);
        let s6 = pn_solve(6, &e).unwrap();
        assert!(s6.basis_supported.is_none());
        assert_eq!(s6.normalized, pn_closed(6, &e).unwrap() - Poly::int(32) * v("b") * v("x"));
        assert_eq!(s6.dimension(), 5);
    }

    #[test]
    fn leading_polynomial_factors() {
        for n in 2..=6 {
            assert_eq!(leading_polynomial(n), expected_leading_polynomial(n));
        }
        assert_eq!(rational_roots(&leading_polynomial(3)), vec![(int(-2), 1), (int(1), 2)]);
    }

    #[test]
    fn residues_su2_and_su3() {
        let e = EllipticCurveModel::symbolic();
        for n in 2..=3 {
            let fam = SpectralFamily::new(n, &e).unwrap();
            let u: Vec<Complex64> = (0..n - 1).map(|i| Complex64::new(0.3 + 0.2 * i as f64, -0.1)).collect();
            let r = branch_residues(&fam, Complex64::new(0.4, 0.1), Complex64::new(-0.3, 0.2), &u).unwrap();
            assert!(r.max_error < 1e-8, "n={n}: {r:?}");
            assert!(r.sum.norm() < 1e-8);
        }
    }

    #[test]
    fn su2_identities() {
        let r = su2_consistency();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn blocks_and_negative_control() {
        let r = block_inheritance(&[2, 2], 20, 1).unwrap();
        assert!(r.ok && r.negative_control_detected);
    }

    #[test]
    fn degeneration_trend() {
        let r = degeneration_check_su2(&[1e-3, 1e-4, 1e-5], 13).unwrap();
        assert!(r.residual_decreasing, "{r:?}");
        assert!((r.loglog_slope - 1.0).abs() < 0.05, "{r:?}");
    }

    #[test]
    fn pure_curve_genus() {
        let r2 = pure_curve_structure(2, &[Q::zero()]).unwrap();
        assert_eq!((r2.genus, r2.branch_points), (1, 4));
        let r3 = pure_curve_structure(3, &[rat(1, 2), int(1)]).unwrap();
        assert_eq!(r3.genus, 2);
        assert!(r3.fiber_product_residual.is_zero() && r3.riemann_hurwitz_ok);
    }
}
