//! Symplectic checks at matrix scale: the Adler–Kostant–Symes commutation on
//! tridiagonal orbits (exact) and linearity of the Kirillov–Kostant class of
//! a coadjoint orbit in its level (numeric).
//!
//! The splitting is `sl(n) = a ⊕ b` with `b` the traceless upper-triangular
//! and `a` the strictly lower-triangular matrices, paired by the trace form.
//! The shift `ε = Σ E_{j,j+1}` kills both `[a, a]` and `[b, b]`, and the
//! shifted orbit consists of tridiagonal matrices `ε + Σ b_j E_jj + Σ a_j E_{j+1,j}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::{commutator, identity, mat_add, mat_mul, mat_scale, mat_sub, trace, Matrix};
use crate::exact::ring::{rat, Ring, Q};
use crate::numerics::quad::gauss_legendre;
use crate::su_adjoint::rng;

type C64 = Complex64;

fn unit(n: usize, i: usize, j: usize) -> Matrix<Q> {
    let mut m = vec![vec![Q::zero(); n]; n];
    m[i][j] = Q::one();
    m
}

/// The splitting of `sl(n)` together with its shift.
#[derive(Clone, Debug)]
pub struct SplitAlgebra {
    pub n: usize,
    pub epsilon: Matrix<Q>,
}

/// Outcome of the structural checks on a [`SplitAlgebra`].
#[derive(Clone, Debug, Serialize)]
pub struct SplitChecks {
    /// `dim a + dim b = n² − 1` and the projections reassemble every basis matrix.
    pub spans_traceless: bool,
    pub epsilon_kills_aa: bool,
    pub epsilon_kills_bb: bool,
}

impl SplitChecks {
    pub fn ok(&self) -> bool {
        self.spans_traceless && self.epsilon_kills_aa && self.epsilon_kills_bb
    }
}

impl SplitAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateInput(format!("sl({n}) needs n ≥ 2")));
        }
        let mut epsilon = vec![vec![Q::zero(); n]; n];
        for j in 0..n - 1 {
            epsilon[j][j + 1] = Q::one();
        }
        Ok(SplitAlgebra { n, epsilon })
    }

    pub fn pairing(&self, x: &Matrix<Q>, y: &Matrix<Q>) -> Q {
        trace(&mat_mul(x, y))
    }

    /// Component in `b` of a traceless matrix (upper triangle with diagonal).
    pub fn pi_b(&self, x: &Matrix<Q>) -> Matrix<Q> {
        let mut out = x.clone();
        for (i, row) in out.iter_mut().enumerate() {
            for v in row.iter_mut().take(i) {
                *v = Q::zero();
            }
        }
        out
    }

    /// Component in `a` (strict lower triangle).
    pub fn pi_a(&self, x: &Matrix<Q>) -> Matrix<Q> {
        mat_sub(x, &self.pi_b(x))
    }

    fn a_basis(&self) -> Vec<Matrix<Q>> {
        let n = self.n;
        (0..n).flat_map(|i| (0..i).map(move |j| unit(n, i, j))).collect()
    }

    fn b_basis(&self) -> Vec<Matrix<Q>> {
        let n = self.n;
        let mut out: Vec<Matrix<Q>> = (0..n).flat_map(|i| (i + 1..n).map(move |j| unit(n, i, j))).collect();
        for i in 0..n - 1 {
            out.push(mat_sub(&unit(n, i, i), &unit(n, i + 1, i + 1)));
        }
        out
    }

    pub fn checks(&self) -> SplitChecks {
        let n = self.n;
        let (a, b) = (self.a_basis(), self.b_basis());
        let mut spans = a.len() + b.len() == n * n - 1;
        for i in 0..n {
            for j in 0..n {
                let mut x = unit(n, i, j);
                if i == j {
                    x = mat_sub(&x, &mat_scale(&identity(n), &rat(1, n as i64)));
                }
                let parts = mat_add(&self.pi_a(&x), &self.pi_b(&x));
                spans &= parts == x && trace(&self.pi_b(&x)).is_zero();
            }
        }
        let kills = |basis: &[Matrix<Q>]| {
            basis.iter().all(|x| basis.iter().all(|y| self.pairing(&self.epsilon, &commutator(x, y)).is_zero()))
        };
        SplitChecks { spans_traceless: spans, epsilon_kills_aa: kills(&a), epsilon_kills_bb: kills(&b) }
    }

    /// `ε + Σ b_j E_jj + Σ a_j E_{j+1,j}`; requires `Σ b_j = 0` and all `a_j ≠ 0`.
    pub fn tridiagonal_point(&self, diag: &[Q], sub: &[Q]) -> Result<Matrix<Q>> {
        let n = self.n;
        if diag.len() != n || sub.len() != n - 1 {
            return Err(Error::DegenerateInput(format!("expected {n} diagonal and {} subdiagonal entries", n - 1)));
        }
        if !diag.iter().fold(Q::zero(), |s, d| s + d).is_zero() {
            return Err(Error::Domain("diagonal of an orbit point must be traceless".into()));
        }
        if sub.iter().any(|a| a.is_zero()) {
            return Err(Error::Domain("subdiagonal entries of an orbit point must be nonzero".into()));
        }
        let mut m = self.epsilon.clone();
        for j in 0..n {
            m[j][j] = diag[j].clone();
        }
        for j in 0..n - 1 {
            m[j + 1][j] = sub[j].clone();
        }
        Ok(m)
    }

    /// A random orbit point with small rational entries.
    pub fn random_point(&self, r: &mut rand_chacha::ChaCha8Rng) -> Matrix<Q> {
        let n = self.n;
        let mut small = |nonzero: bool| loop {
            let v = rat(r.gen_range(-30..=30), r.gen_range(1..=7));
            if !nonzero || !v.is_zero() {
                return v;
            }
        };
        let mut diag: Vec<Q> = (0..n - 1).map(|_| small(false)).collect();
        diag.push(-diag.iter().fold(Q::zero(), |s, d| s + d));
        let sub: Vec<Q> = (0..n - 1).map(|_| small(true)).collect();
        self.tridiagonal_point(&diag, &sub).expect("constructed point is valid")
    }
}

/// Functions on `sl(n)` whose bracket is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TestFunction {
    /// `tr(X^k)`, an invariant function.
    TracePower(u32),
    /// The matrix entry `X_ij`, which is not invariant.
    Entry(usize, usize),
}

impl TestFunction {
    /// Gradient at `x` for the trace form, projected onto traceless matrices.
    pub fn gradient(&self, x: &Matrix<Q>) -> Matrix<Q> {
        let n = x.len();
        let g = match *self {
            TestFunction::TracePower(0) => vec![vec![Q::zero(); n]; n],
            TestFunction::TracePower(k) => {
                let mut p = identity(n);
                for _ in 1..k {
                    p = mat_mul(&p, x);
                }
                mat_scale(&p, &Q::from(num_bigint::BigInt::from(k)))
            }
            // tr(E_ji · X) = X_ij
            TestFunction::Entry(i, j) => unit(n, j, i),
        };
        let shift = trace(&g) / Q::from(num_bigint::BigInt::from(n));
        mat_sub(&g, &mat_scale(&identity(n), &shift))
    }

    pub fn label(&self) -> String {
        match self {
            TestFunction::TracePower(k) => format!("tr X^{k}"),
            TestFunction::Entry(i, j) => format!("X_{}{}", i + 1, j + 1),
        }
    }
}

/// `⟨L, [π_b ∇f₁, π_b ∇f₂]⟩` at the orbit point `L`, exactly.
pub fn aks_bracket(alg: &SplitAlgebra, f1: TestFunction, f2: TestFunction, point: &Matrix<Q>) -> Q {
    let v1 = alg.pi_b(&f1.gradient(point));
    let v2 = alg.pi_b(&f2.gradient(point));
    alg.pairing(point, &commutator(&v1, &v2))
}

/// Result of sweeping the bracket over random orbit points.
#[derive(Clone, Debug, Serialize)]
pub struct AksReport {
    pub max_n: usize,
    pub points_per_n: usize,
    /// Number of (point, invariant pair) evaluations.
    pub evaluations: usize,
    pub nonzero_invariant_brackets: usize,
    /// Negative-control evaluations against `X_11` with a nonzero value.
    pub control_nonzero: usize,
    pub control_evaluations: usize,
    /// Swapping arguments negated every control value.
    pub control_antisymmetric: bool,
    pub structure_ok: bool,
}

impl AksReport {
    pub fn ok(&self) -> bool {
        self.structure_ok && self.nonzero_invariant_brackets == 0 && self.control_nonzero > 0 && self.control_antisymmetric
    }
}

/// Brackets of all pairs `tr X^k₁, tr X^k₂` with `2 ≤ k₁ ≤ k₂ ≤ n` for `n = 2..=max_n`,
/// plus the `X_11` control, at `points` random tridiagonal points per `n`.
pub fn aks_sweep(max_n: usize, points: usize, seed: u64) -> Result<AksReport> {
    let mut r = rng(seed);
    let mut rep = AksReport {
        max_n,
        points_per_n: points,
        evaluations: 0,
        nonzero_invariant_brackets: 0,
        control_nonzero: 0,
        control_evaluations: 0,
        control_antisymmetric: true,
        structure_ok: true,
    };
    for n in 2..=max_n {
        let alg = SplitAlgebra::new(n)?;
        rep.structure_ok &= alg.checks().ok();
        for _ in 0..points {
            let l = alg.random_point(&mut r);
            for k1 in 2..=n as u32 {
                for k2 in k1..=n as u32 {
                    rep.evaluations += 1;
                    if !aks_bracket(&alg, TestFunction::TracePower(k1), TestFunction::TracePower(k2), &l).is_zero() {
                        rep.nonzero_invariant_brackets += 1;
                    }
                }
                let c = TestFunction::Entry(0, 0);
                let v = aks_bracket(&alg, TestFunction::TracePower(k1), c, &l);
                let w = aks_bracket(&alg, c, TestFunction::TracePower(k1), &l);
                rep.control_evaluations += 1;
                rep.control_antisymmetric &= v == -w;
                if !v.is_zero() {
                    rep.control_nonzero += 1;
                }
            }
        }
    }
    Ok(rep)
}

/// The 2-sphere through `diag(level)` swept out by the `SU(2)` of the root
/// `e_i − e_j` inside a coadjoint orbit of `U(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPoint2Sphere {
    /// Real diagonal entries of the (hermitian) orbit representative.
    pub level: Vec<f64>,
    pub root: (usize, usize),
}

/// Coordinates on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SphereChart {
    /// `U = R_z(φ) R_y(θ)`, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    Polar,
    /// `θ = πs − sin(2πs)/2`, `φ = ψ + sin θ`; same sphere, different coordinates.
    Stretched,
}

/// Quadrature sizes: Gauss–Legendre nodes in the polar angle and trapezoid
/// nodes in the periodic angle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SphereQuadrature {
    pub polar: usize,
    pub azimuthal: usize,
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        SphereQuadrature { polar: 24, azimuthal: 16 }
    }
}

impl SphereQuadrature {
    fn refined(self) -> Self {
        SphereQuadrature { polar: 2 * self.polar, azimuthal: 2 * self.azimuthal }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereIntegral {
    pub value: f64,
    /// Difference to the same integral at doubled quadrature.
    pub quadrature_error: f64,
    /// The root is degenerate for this level; the cycle collapses and 0 is returned.
    pub degenerate: bool,
    /// Largest drift of the spectrum along the quadrature nodes.
    pub spectrum_drift: f64,
}

fn embed(n: usize, (i, j): (usize, usize), block: [[C64; 2]; 2]) -> Matrix<C64> {
    let mut m: Matrix<C64> = identity(n);
    m[i][i] = block[0][0];
    m[i][j] = block[0][1];
    m[j][i] = block[1][0];
    m[j][j] = block[1][1];
    m
}

fn embed_lie(n: usize, (i, j): (usize, usize), block: [[C64; 2]; 2]) -> Matrix<C64> {
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    m[i][i] = block[0][0];
    m[i][j] = block[0][1];
    m[j][i] = block[1][0];
    m[j][j] = block[1][1];
    m
}

fn dagger(m: &Matrix<C64>) -> Matrix<C64> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].conj()).collect()).collect()
}

impl OrbitPoint2Sphere {
    pub fn new(level: Vec<f64>, root: (usize, usize)) -> Result<Self> {
        let n = level.len();
        if n < 2 || root.0 >= n || root.1 >= n || root.0 == root.1 {
            return Err(Error::DegenerateInput(format!("root {root:?} is not a root of u({n})")));
        }
        Ok(OrbitPoint2Sphere { level, root })
    }

    fn degenerate(&self) -> bool {
        let (i, j) = self.root;
        let scale = self.level.iter().fold(1.0f64, |m, a| m.max(a.abs()));
        (self.level[i] - self.level[j]).abs() <= 1e-14 * scale
    }

    /// The orbit point `μ = U a U†` and the generators `∂U U†` of the two
    /// coordinate tangent vectors, in polar coordinates.
    fn polar_frame(&self, theta: f64, phi: f64) -> (Matrix<C64>, Matrix<C64>, Matrix<C64>) {
        let n = self.level.len();
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let (ep, em) = (C64::from_polar(1.0, phi / 2.0), C64::from_polar(1.0, -phi / 2.0));
        let z = C64::new(0.0, 0.0);
        let rz = embed(n, self.root, [[ep, z], [z, em]]);
        let ry = embed(n, self.root, [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]);
        let u = mat_mul(&rz, &ry);
        let a: Matrix<C64> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { C64::new(self.level[i], 0.0) } else { z }).collect())
            .collect();
        let mu = mat_mul(&mat_mul(&u, &a), &dagger(&u));
        // ∂_θ U U† = R_z (∂_θ R_y R_y†) R_z†, and ∂_φ U U† = ∂_φ R_z R_z†
        let half = C64::new(0.5, 0.0);
        let gy = embed_lie(n, self.root, [[z, -half], [half, z]]);
        let xi_theta = mat_mul(&mat_mul(&rz, &gy), &dagger(&rz));
        let xi_phi = embed_lie(n, self.root, [[C64::new(0.0, 0.5), z], [z, C64::new(0.0, -0.5)]]);
        (mu, xi_theta, xi_phi)
    }

    /// KKS form on the coordinate tangent vectors: `⟨μ, [ξ_θ, ξ_φ]⟩` with
    /// `⟨μ, ξ⟩ = −i tr(μξ)` pairing hermitian and anti-hermitian matrices.
    fn density(&self, chart: SphereChart, s: f64, t: f64) -> (f64, Matrix<C64>) {
        let (theta, phi, jac, mix) = match chart {
            SphereChart::Polar => (s, t, 1.0, 0.0),
            SphereChart::Stretched => {
                let theta = PI * s - (2.0 * PI * s).sin() / 2.0;
                let dtheta = PI - PI * (2.0 * PI * s).cos();
                (theta, t + theta.sin(), dtheta, theta.cos() * dtheta)
            }
        };
        let (mu, xt, xp) = self.polar_frame(theta, phi);
        // ξ_s = θ'(s) ξ_θ + (dφ/ds) ξ_φ and ξ_ψ = ξ_φ
        let xs = mat_add(&mat_scale(&xt, &C64::new(jac, 0.0)), &mat_scale(&xp, &C64::new(mix, 0.0)));
        let w = trace(&mat_mul(&mu, &commutator(&xs, &xp))) * C64::new(0.0, -1.0);
        (w.re, mu)
    }

    fn integrate(&self, chart: SphereChart, q: SphereQuadrature) -> (f64, f64) {
        let (lo, hi) = match chart {
            SphereChart::Polar => (0.0, PI),
            SphereChart::Stretched => (0.0, 1.0),
        };
        let (x, w) = gauss_legendre(q.polar);
        let (m, h) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        let mut sorted = self.level.clone();
        sorted.sort_by(f64::total_cmp);
        let mut total = 0.0;
        let mut drift: f64 = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            let s = m + h * xi;
            for k in 0..q.azimuthal {
                let t = 2.0 * PI * k as f64 / q.azimuthal as f64;
                let (d, mu) = self.density(chart, s, t);
                total += wi * h * d * (2.0 * PI / q.azimuthal as f64);
                if k == 0 {
                    drift = drift.max(spectrum_drift(&mu, &sorted));
                }
            }
        }
        (total, drift)
    }

    /// Symplectic area of the sphere with the default quadrature and chart.
    pub fn integral(&self) -> SphereIntegral {
        self.integral_with(SphereChart::Polar, SphereQuadrature::default())
    }

    pub fn integral_with(&self, chart: SphereChart, q: SphereQuadrature) -> SphereIntegral {
        if self.degenerate() {
            return SphereIntegral { value: 0.0, quadrature_error: 0.0, degenerate: true, spectrum_drift: 0.0 };
        }
        let (value, spectrum_drift) = self.integrate(chart, q);
        let (fine, _) = self.integrate(chart, q.refined());
        SphereIntegral { value, quadrature_error: (fine - value).abs(), degenerate: false, spectrum_drift }
    }
}

/// `max |λ_k(μ) − a_k|` through the characteristic polynomial: for a
/// hermitian `μ` we compare `det(μ − a_k)` scaled by the spectral gaps.
fn spectrum_drift(mu: &Matrix<C64>, sorted: &[f64]) -> f64 {
    // Newton sums: tr μ^k must equal Σ a_i^k for k = 1..n
    let n = mu.len();
    let mut p: Matrix<C64> = identity(n);
    let mut drift: f64 = 0.0;
    for k in 1..=n {
        p = mat_mul(&p, mu);
        let want: f64 = sorted.iter().map(|a| a.powi(k as i32)).sum();
        let scale = sorted.iter().fold(1.0f64, |m, a| m.max(a.abs())).powi(k as i32);
        drift = drift.max((trace(&p) - C64::new(want, 0.0)).norm() / scale);
    }
    drift
}

/// Fit of one cycle integral as an affine function of the level.
#[derive(Clone, Debug, Serialize)]
pub struct CycleFit {
    pub root: (usize, usize),
    /// Chamber label: the ordering of the level entries (a permutation).
    pub chamber: Vec<usize>,
    pub samples: usize,
    /// Coefficients of `a_1, …, a_n`.
    pub slope: Vec<f64>,
    pub intercept: f64,
    /// `max |I − fit| / max |I|`.
    pub relative_residual: f64,
    pub max_quadrature_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DhFitReport {
    pub n: usize,
    pub levels: Vec<Vec<f64>>,
    /// `integrals[s][r]` for sample `s` and root `r`.
    pub integrals: Vec<Vec<f64>>,
    pub roots: Vec<(usize, usize)>,
    pub fits: Vec<CycleFit>,
    /// Samples dropped because a root degenerates there.
    pub wall_samples: Vec<usize>,
    pub max_residual: f64,
    /// Largest `|intercept|` relative to the largest integral.
    pub max_intercept: f64,
    /// `max |I_ij + I_jk − I_ik|` relative, over triples of roots.
    pub additivity_residual: f64,
}

impl DhFitReport {
    pub fn ok(&self, tol: f64) -> bool {
        !self.fits.is_empty() && self.max_residual < tol && self.max_intercept < tol && self.additivity_residual < tol
    }
}

fn all_roots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn chamber(level: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..level.len()).collect();
    idx.sort_by(|&i, &j| level[j].total_cmp(&level[i]));
    idx
}

/// Real least squares through the complex normal-equation solver.
fn lstsq_real(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Matrix<Q> = a.iter().map(|r| r.iter().map(|&v| Q::from_float(v).unwrap_or_else(Q::zero)).collect()).collect();
    if crate::exact::linalg::rank(&mut m) < cols {
        return Err(Error::DegenerateInput("sample levels do not determine an affine function".into()));
    }
    let ac: Vec<Vec<C64>> = a.iter().map(|r| r.iter().map(|&v| C64::new(v, 0.0)).collect()).collect();
    let bc: Vec<C64> = b.iter().map(|&v| C64::new(v, 0.0)).collect();
    let (x, _) = crate::exact::linalg::lstsq_complex(&ac, &bc);
    Ok(x.iter().map(|z| z.re).collect())
}

/// Fit every root-cycle integral as an affine function of the level over
/// each Weyl chamber met by the samples. Levels are diagonals of hermitian
/// representatives; traceless levels leave the intercept alone, so the
/// trace direction is dropped from the fit.
pub fn dh_linearity_fit(levels: &[Vec<f64>], q: SphereQuadrature) -> Result<DhFitReport> {
    let n = levels.first().map_or(0, Vec::len);
    if n < 2 || levels.iter().any(|l| l.len() != n) {
        return Err(Error::DegenerateInput("levels must share a size n ≥ 2".into()));
    }
    let roots = all_roots(n);
    let mut integrals = Vec::with_capacity(levels.len());
    let mut errs = Vec::with_capacity(levels.len());
    let mut wall = Vec::new();
    for (s, level) in levels.iter().enumerate() {
        let mut row = Vec::new();
        let mut err: f64 = 0.0;
        for &r in &roots {
            let it = OrbitPoint2Sphere::new(level.clone(), r)?.integral_with(SphereChart::Polar, q);
            if it.degenerate && !wall.contains(&s) {
                wall.push(s);
            }
            err = err.max(it.quadrature_error);
            row.push(it.value);
        }
        integrals.push(row);
        errs.push(err);
    }
    let mut chambers: Vec<Vec<usize>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (s, level) in levels.iter().enumerate() {
        if wall.contains(&s) {
            continue;
        }
        let c = chamber(level);
        match chambers.iter().position(|x| *x == c) {
            Some(p) => members[p].push(s),
            None => {
                chambers.push(c);
                members.push(vec![s]);
            }
        }
    }
    // coordinates: differences a_i − a_n, which span the traceless directions
    let coords = |l: &[f64]| -> Vec<f64> { (0..n - 1).map(|i| l[i] - l[n - 1]).collect() };
    let mut fits = Vec::new();
    let scale = integrals.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut max_res: f64 = 0.0;
    let mut max_int: f64 = 0.0;
    for (c, ms) in chambers.iter().zip(&members) {
        if ms.len() < 4 {
            return Err(Error::DegenerateInput(format!("chamber {c:?} has {} regular samples; at least 4 are needed", ms.len())));
        }
        let design: Vec<Vec<f64>> = ms
            .iter()
            .map(|&s| {
                let mut row = vec![1.0];
                row.extend(coords(&levels[s]));
                row
            })
            .collect();
        for (ri, &r) in roots.iter().enumerate() {
            let rhs: Vec<f64> = ms.iter().map(|&s| integrals[s][ri]).collect();
            let x = lstsq_real(&design, &rhs)?;
            let res = design
                .iter()
                .zip(&rhs)
                .map(|(row, y)| (row.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - y).abs())
                .fold(0.0f64, f64::max);
            let mut slope = x[1..].to_vec();
            slope.push(-slope.iter().sum::<f64>());
            max_res = max_res.max(res / scale);
            max_int = max_int.max(x[0].abs() / scale);
            fits.push(CycleFit {
                root: r,
                chamber: c.clone(),
                samples: ms.len(),
                slope,
                intercept: x[0],
                relative_residual: res / scale,
                max_quadrature_error: ms.iter().map(|&s| errs[s]).fold(0.0, f64::max),
            });
        }
    }
    let mut add: f64 = 0.0;
    for (s, row) in integrals.iter().enumerate() {
        if wall.contains(&s) {
            continue;
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let at = |p: (usize, usize)| row[roots.iter().position(|&r| r == p).unwrap()];
                    add = add.max((at((i, j)) + at((j, k)) - at((i, k))).abs() / scale);
                }
            }
        }
    }
    Ok(DhFitReport {
        n,
        levels: levels.to_vec(),
        integrals,
        roots,
        fits,
        wall_samples: wall,
        max_residual: max_res,
        max_intercept: max_int,
        additivity_residual: add,
    })
}

/// The su(2) levels `s·diag(1, −1)/2` for the given multiples.
pub fn su2_levels(multiples: &[f64]) -> Vec<Vec<f64>> {
    multiples.iter().map(|&s| vec![s / 2.0, -s / 2.0]).collect()
}

/// Random traceless regular levels of su(n) in the dominant chamber.
pub fn random_regular_levels(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let mut l = vec![0.0];
            for _ in 1..n {
                let step = r.gen_range(0.25..3.0);
                let last = *l.last().unwrap();
                l.push(last - step);
            }
            let mean = l.iter().sum::<f64>() / n as f64;
            l.iter().map(|v| v - mean).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_structure() {
        for n in 2..=5 {
            assert!(SplitAlgebra::new(n).unwrap().checks().ok(), "n = {n}");
        }
    }

    #[test]
    fn bracket_with_itself_vanishes() {
        let alg = SplitAlgebra::new(2).unwrap();
        let l = alg.tridiagonal_point(&[rat(3, 2), rat(-3, 2)], &[rat(5, 1)]).unwrap();
        let f = TestFunction::TracePower(2);
        assert!(aks_bracket(&alg, f, f, &l).is_zero());
    }

    #[test]
    fn invariants_commute_and_control_does_not() {
        let rep = aks_sweep(4, 10, 7).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn su2_area_is_linear() {
        let one = OrbitPoint2Sphere::new(vec![0.5, -0.5], (0, 1)).unwrap().integral();
        let two = OrbitPoint2Sphere::new(vec![1.0, -1.0], (0, 1)).unwrap().integral();
        assert!((two.value / one.value - 2.0).abs() < 1e-8);
        assert!((one.value - 2.0 * PI).abs() < 1e-10, "{one:?}");
        assert!(one.quadrature_error < 1e-8 && one.spectrum_drift < 1e-12);
        let neg = OrbitPoint2Sphere::new(vec![-0.5, 0.5], (0, 1)).unwrap().integral();
        assert!((neg.value + one.value).abs() < 1e-10);
    }

    #[test]
    fn charts_agree() {
        let s = OrbitPoint2Sphere::new(vec![1.3, -0.2, -1.1], (0, 2)).unwrap();
        let a = s.integral_with(SphereChart::Polar, SphereQuadrature::default());
        let b = s.integral_with(SphereChart::Stretched, SphereQuadrature { polar: 48, azimuthal: 32 });
        assert!((a.value - b.value).abs() < 1e-8, "{a:?} {b:?}");
    }

    #[test]
    fn degenerate_root_gives_zero() {
        let s = OrbitPoint2Sphere::new(vec![1.0, 1.0, -2.0], (0, 1)).unwrap().integral();
        assert!(s.degenerate && s.value == 0.0);
    }

    #[test]
    fn fits_and_guards() {
        let rep = dh_linearity_fit(&su2_levels(&[1.0, 2.0, 3.0, 5.0]), SphereQuadrature::default()).unwrap();
        assert!(rep.ok(1e-8), "{rep:?}");
        let rep = dh_linearity_fit(&random_regular_levels(3, 6, 0), SphereQuadrature::default()).unwrap();
        assert!(rep.ok(1e-8), "{rep:?}");
        assert_eq!(rep.fits.len(), 3);
        let same = vec![vec![1.0, -1.0]; 4];
        assert!(dh_linearity_fit(&same, SphereQuadrature::default()).is_err());
    }

    #[test]
    fn refinement_reduces_residual() {
        let levels = random_regular_levels(3, 6, 3);
        let coarse = dh_linearity_fit(&levels, SphereQuadrature { polar: 3, azimuthal: 4 }).unwrap();
        let fine = dh_linearity_fit(&levels, SphereQuadrature::default()).unwrap();
        assert!(fine.fits[0].max_quadrature_error < coarse.fits[0].max_quadrature_error);
    }
}
