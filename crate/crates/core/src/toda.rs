//! Periodic Toda lattices for the classical Lie algebras.
//!
//! Chevalley generators are built in the defining representation (traceless
//! matrices for A, anti-diagonal orthogonal or symplectic forms for B, C, D,
//! so the Borel subalgebra is upper triangular). The Lax matrix
//! `Σ b_i h_i + Σ e_i + Σ a_i f_i + z f_θ + a_0 z⁻¹ e_θ` has a characteristic
//! polynomial of the shape `x^ε(z + μ/z) + p(x)` up to sign. The explicit
//! spectral families, their changes of variables and quotients are checked
//! as exact polynomial identities, and genera come from a hyperelliptic
//! formula or from numerically traced monodromy (Riemann–Hurwitz).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::exact::linalg::{commutator, det, is_zero_matrix, mat_add, mat_mul, mat_scale, transpose, Matrix};
use crate::exact::univariate::{self, complex_roots};
use crate::exact::{discriminant_q, int, rat, resultant_q, Poly, Ring, Q};
use crate::su_adjoint::{match_roots, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            other => Err(Error::Domain(format!("unknown classical type {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Self::A | Self::C => 1,
            Self::B => 2,
            Self::D => 3,
        }
    }

    /// Dimension of the defining representation.
    pub fn size(self, rank: usize) -> usize {
        match self {
            Self::A => rank + 1,
            Self::B => 2 * rank + 1,
            Self::C | Self::D => 2 * rank,
        }
    }
}

type Weight = Vec<i64>;

fn unit(n: usize, a: usize, b: usize) -> Matrix<Q> {
    let mut m = vec![vec![Q::zero(); n]; n];
    m[a][b] = Q::one();
    m
}

fn inner(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn basis(dim: usize, i: usize) -> Weight {
    let mut w = vec![0; dim];
    w[i] = 1;
    w
}

fn simple_roots(ty: LieType, n: usize) -> Vec<Weight> {
    let dim = if ty == LieType::A { n + 1 } else { n };
    let diff = |i: usize, j: usize| -> Weight {
        let mut w = basis(dim, i);
        w[j] -= 1;
        w
    };
    let mut roots: Vec<Weight> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
    let last = match ty {
        LieType::A => diff(n - 1, n),
        LieType::B => basis(dim, n - 1),
        LieType::C => {
            let mut w = basis(dim, n - 1);
            w[n - 1] = 2;
            w
        }
        LieType::D => {
            let mut w = basis(dim, n - 2);
            w[n - 1] = 1;
            w
        }
    };
    roots.push(last);
    roots
}

fn highest_root(ty: LieType, n: usize) -> Weight {
    match ty {
        LieType::A => {
            let mut w = basis(n + 1, 0);
            w[n] = -1;
            w
        }
        LieType::C => {
            let mut w = basis(n, 0);
            w[0] = 2;
            w
        }
        LieType::B | LieType::D => {
            let mut w = basis(n, 0);
            w[1] = 1;
            w
        }
    }
}

/// Weight of each basis vector of the defining representation.
fn index_weights(ty: LieType, n: usize) -> Vec<Weight> {
    let size = ty.size(n);
    if ty == LieType::A {
        return (0..size).map(|k| basis(size, k)).collect();
    }
    (0..size)
        .map(|k| {
            if k < n {
                basis(n, k)
            } else if size - 1 - k < n {
                basis(n, size - 1 - k).iter().map(|x| -x).collect()
            } else {
                vec![0; n]
            }
        })
        .collect()
}

/// Entries of the anti-diagonal invariant form, `J[k][size−1−k]`.
fn form_signs(ty: LieType, n: usize) -> Vec<Q> {
    let size = ty.size(n);
    (0..size)
        .map(|k| if ty == LieType::C && k >= n { int(-1) } else { Q::one() })
        .collect()
}

fn invariant_form(ty: LieType, n: usize) -> Option<Matrix<Q>> {
    if ty == LieType::A {
        return None;
    }
    let size = ty.size(n);
    let j = form_signs(ty, n);
    let mut m = vec![vec![Q::zero(); size]; size];
    for k in 0..size {
        m[k][size - 1 - k] = j[k].clone();
    }
    Some(m)
}

/// A matrix of weight `alpha` in the Lie algebra: the matrix unit with that
/// weight plus, for B/C/D, the partner entry forced by the invariant form.
fn root_vector(ty: LieType, n: usize, alpha: &[i64]) -> Result<Matrix<Q>> {
    let size = ty.size(n);
    let wts = index_weights(ty, n);
    let (a, b) = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .find(|&(a, b)| a != b && wts[a].iter().zip(&wts[b]).map(|(x, y)| x - y).eq(alpha.iter().copied()))
        .ok_or_else(|| Error::Internal(format!("no matrix unit of weight {alpha:?}")))?;
    let mut m = unit(size, a, b);
    if ty == LieType::A {
        return Ok(m);
    }
    let (ap, bp) = (size - 1 - a, size - 1 - b);
    if b == ap {
        if ty != LieType::C {
            return Err(Error::Internal("long root 2ε in an orthogonal algebra".into()));
        }
        return Ok(m);
    }
    // J·X must be antisymmetric (orthogonal) or symmetric (symplectic)
    let j = form_signs(ty, n);
    let ratio = j[ap].clone() / j[b].clone();
    m[bp][ap] = if ty == LieType::C { ratio } else { -ratio };
    Ok(m)
}

/// `λ` with `[h, e] = λ e`, when `e` is an eigenvector.
fn ad_eigenvalue(h: &Matrix<Q>, e: &Matrix<Q>) -> Option<Q> {
    let c = commutator(h, e);
    let (i, j) = (0..e.len())
        .flat_map(|i| (0..e.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !e[i][j].is_zero())?;
    let lam = c[i][j].clone() / e[i][j].clone();
    is_zero_matrix(&crate::exact::linalg::mat_sub(&c, &mat_scale(e, &lam))).then_some(lam)
}

/// Rescales `f` so that `α([e, f]) = 2`; returns `(f, h)`.
fn normalize_pair(e: &Matrix<Q>, f: &Matrix<Q>) -> Result<(Matrix<Q>, Matrix<Q>)> {
    let h0 = commutator(e, f);
    let lam = ad_eigenvalue(&h0, e).filter(|l| !l.is_zero()).ok_or_else(|| Error::Internal("degenerate sl2 pair".into()))?;
    let f = mat_scale(f, &(int(2) / lam));
    let h = commutator(e, &f);
    Ok((f, h))
}

#[derive(Clone, Debug)]
pub struct ChevalleyRealization {
    pub ty: LieType,
    pub rank: usize,
    pub size: usize,
    pub e: Vec<Matrix<Q>>,
    pub f: Vec<Matrix<Q>>,
    pub h: Vec<Matrix<Q>>,
    /// Highest-root vector and its opposite.
    pub e_theta: Matrix<Q>,
    pub f_theta: Matrix<Q>,
    pub cartan: Vec<Vec<i64>>,
    pub form: Option<Matrix<Q>>,
}

#[derive(Clone, Debug)]
pub struct ChevalleyChecks {
    pub cartan_relations: bool,
    pub ef_relations: bool,
    pub in_algebra: bool,
    pub theta_is_highest: bool,
}

impl ChevalleyChecks {
    pub fn ok(&self) -> bool {
        self.cartan_relations && self.ef_relations && self.in_algebra && self.theta_is_highest
    }
}

impl ChevalleyRealization {
    pub fn new(ty: LieType, rank: usize) -> Result<Self> {
        if rank < ty.min_rank() {
            return Err(Error::Domain(format!("type {} needs rank ≥ {}", ty.label(), ty.min_rank())));
        }
        let roots = simple_roots(ty, rank);
        let mut e = Vec::new();
        let mut f = Vec::new();
        let mut h = Vec::new();
        for alpha in &roots {
            let neg: Weight = alpha.iter().map(|x| -x).collect();
            let ea = root_vector(ty, rank, alpha)?;
            let (fa, ha) = normalize_pair(&ea, &root_vector(ty, rank, &neg)?)?;
            e.push(ea);
            f.push(fa);
            h.push(ha);
        }
        let theta = highest_root(ty, rank);
        let neg: Weight = theta.iter().map(|x| -x).collect();
        let e_theta = root_vector(ty, rank, &theta)?;
        let (f_theta, _) = normalize_pair(&e_theta, &root_vector(ty, rank, &neg)?)?;
        let cartan = roots
            .iter()
            .map(|ai| roots.iter().map(|aj| 2 * inner(ai, aj) / inner(ai, ai)).collect())
            .collect();
        Ok(Self {
            ty,
            rank,
            size: ty.size(rank),
            e,
            f,
            h,
            e_theta,
            f_theta,
            cartan,
            form: invariant_form(ty, rank),
        })
    }

    fn in_algebra(&self, m: &Matrix<Q>) -> bool {
        match &self.form {
            None => m.iter().enumerate().fold(Q::zero(), |s, (i, r)| s + r[i].clone()).is_zero(),
            Some(j) => is_zero_matrix(&mat_add(&mat_mul(&transpose(m), j), &mat_mul(j, m))),
        }
    }

    /// Cartan relations `[h_i, e_j] = A_ij e_j`, `[e_i, f_j] = δ_ij h_i`,
    /// membership in the algebra and maximality of θ.
    pub fn checks(&self) -> ChevalleyChecks {
        let n = self.rank;
        let mut cartan_relations = true;
        let mut ef_relations = true;
        for i in 0..n {
            for j in 0..n {
                let lhs = commutator(&self.h[i], &self.e[j]);
                let rhs = mat_scale(&self.e[j], &int(self.cartan[i][j]));
                cartan_relations &= lhs == rhs;
                let ef = commutator(&self.e[i], &self.f[j]);
                ef_relations &= if i == j { ef == self.h[i] } else { is_zero_matrix(&ef) };
            }
        }
        let all = self.e.iter().chain(&self.f).chain(&self.h).chain([&self.e_theta, &self.f_theta]);
        let in_algebra = all.into_iter().all(|m| self.in_algebra(m));
        let theta_is_highest = self.e.iter().all(|ei| is_zero_matrix(&commutator(ei, &self.e_theta)))
            && self.f.iter().all(|fi| is_zero_matrix(&commutator(fi, &self.f_theta)));
        ChevalleyChecks {
            cartan_relations,
            ef_relations,
            in_algebra,
            theta_is_highest,
        }
    }
}

/// `L(z) = Σ b_i h_i + Σ e_i + Σ a_i f_i + z f_θ + a_0 z⁻¹ e_θ` with symbolic
/// `a_0, …, a_n`, `b_1, …, b_n` and loop variable `z`.
#[derive(Clone, Debug)]
pub struct LaxOperator {
    pub realization: ChevalleyRealization,
    pub matrix: Matrix<Poly<Q>>,
}

impl LaxOperator {
    pub fn new(realization: ChevalleyRealization) -> Self {
        let n = realization.size;
        let mut l = vec![vec![Poly::zero(); n]; n];
        let mut add = |m: &Matrix<Q>, c: &Poly<Q>| {
            for i in 0..n {
                for j in 0..n {
                    if !m[i][j].is_zero() {
                        l[i][j] = &l[i][j] + &c.scale(&m[i][j]);
                    }
                }
            }
        };
        for k in 0..realization.rank {
            add(&realization.h[k], &Poly::var(&format!("b{}", k + 1)));
            add(&realization.e[k], &Poly::one());
            add(&realization.f[k], &Poly::var(&format!("a{}", k + 1)));
        }
        let z = Poly::var("z");
        add(&realization.f_theta, &z);
        add(&realization.e_theta, &(Poly::var("a0") * z.pow_signed(-1)));
        Self { realization, matrix: l }
    }

    /// Trace of `L`, which vanishes identically.
    pub fn trace(&self) -> Poly<Q> {
        (0..self.matrix.len()).fold(Poly::zero(), |s, i| s + self.matrix[i][i].clone())
    }
}

#[derive(Clone, Debug)]
pub struct CharpolyReport {
    pub ty: LieType,
    pub rank: usize,
    pub charpoly: Poly<Q>,
    /// `det(xI − L) = x^k (σ x^ε (z + μ/z) + p(x))`, with `k` the spurious x
    /// power (1 for B).
    pub sign: i64,
    pub epsilon: i32,
    pub spurious_x: i32,
    pub mu: Poly<Q>,
    pub p: Poly<Q>,
    /// Coefficients of `p` below the leading power, as `(power of x, value)`.
    pub hamiltonians: Vec<(i32, Poly<Q>)>,
}

fn x_monomial(p: &Poly<Q>) -> Option<(Q, i32)> {
    let terms = p.named_terms();
    if terms.len() != 1 {
        return None;
    }
    let (vars, c) = &terms[0];
    match vars.as_slice() {
        [] => Some((c.clone(), 0)),
        [(v, k)] if v == "x" => Some((c.clone(), *k)),
        _ => None,
    }
}

/// Symbolic `det(x·I − L(z))` and its decomposition.
pub fn toda_charpoly(ty: LieType, rank: usize) -> Result<CharpolyReport> {
    let mut real = ChevalleyRealization::new(ty, rank)?;
    let c = charpoly_of(&real).coeff_of("z", 1);
    // normalize f_θ so that the z-coefficient is ±x^k
    if let Some((sc, _)) = x_monomial(&c) {
        let s = num_traits::Signed::abs(&sc);
        if !s.is_zero() && !s.is_one() {
            real.f_theta = mat_scale(&real.f_theta, &(Q::one() / s.clone()));
            real.e_theta = mat_scale(&real.e_theta, &s);
        }
    }
    decompose(ty, rank, charpoly_of(&real))
}

fn charpoly_of(real: &ChevalleyRealization) -> Poly<Q> {
    let lax = LaxOperator::new(real.clone());
    let n = lax.matrix.len();
    let x = Poly::var("x");
    let m: Matrix<Poly<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { &x - &lax.matrix[i][j] } else { -&lax.matrix[i][j] })
                .collect()
        })
        .collect();
    det(&m)
}

fn decompose(ty: LieType, rank: usize, charpoly: Poly<Q>) -> Result<CharpolyReport> {
    let x = var("x");
    let by_z = charpoly.coeffs_in("z");
    let stray: Vec<i32> = by_z.keys().copied().filter(|k| !(-1..=1).contains(k)).collect();
    if !stray.is_empty() {
        return Err(Error::Structural(format!("charpoly has z-powers {stray:?} outside z + μ/z")));
    }
    let c1 = charpoly.coeff_of("z", 1);
    let cm1 = charpoly.coeff_of("z", -1);
    let p0 = charpoly.coeff_of("z", 0);
    let (sc, k) = x_monomial(&c1).ok_or_else(|| Error::Structural(format!("z-coefficient {c1} is not ±x^k")))?;
    let sign = if sc == int(1) {
        1
    } else if sc == int(-1) {
        -1
    } else {
        return Err(Error::Structural(format!("z-coefficient {c1} is not normalized to ±x^k")));
    };
    let mu = cm1
        .div_exact(&c1)
        .filter(|q| !q.has_var("x") && !q.has_var("z") && (1..=rank).all(|i| !q.has_var(&format!("b{i}"))))
        .ok_or_else(|| Error::Structural(format!("z⁻¹ coefficient {cm1} is not μ times the z coefficient")))?;
    let spurious_x = k.min(p0.min_degree_in("x").unwrap_or(0));
    let xs = x.pow(spurious_x as u32);
    let p = p0.div_exact(&xs).ok_or_else(|| Error::Internal("x-power division".into()))?;
    let deg = p.degree_in("x").unwrap_or(0);
    let coeffs = p.coeffs_in("x");
    let hamiltonians = (0..deg)
        .rev()
        .filter_map(|j| coeffs.get(&j).map(|c| (j, c.clone())))
        .collect();
    Ok(CharpolyReport {
        ty,
        rank,
        charpoly,
        sign,
        epsilon: k - spurious_x,
        spurious_x,
        mu,
        p,
        hamiltonians,
    })
}

// ---------------------------------------------------------------------------
// explicit families

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyType {
    A,
    B,
    C,
    D,
    BDual,
    CDual,
    G2Dual,
}

impl FamilyType {
    pub fn parse(ty: &str, dual: bool) -> Result<Self> {
        let t = ty.trim().to_ascii_uppercase();
        Ok(match (t.as_str(), dual) {
            ("A", false) => Self::A,
            ("B", false) => Self::B,
            ("C", false) => Self::C,
            ("D", false) => Self::D,
            ("B", true) => Self::BDual,
            ("C", true) => Self::CDual,
            ("G2" | "G", true) => Self::G2Dual,
            _ => {
                return Err(Error::Domain(format!(
                    "unknown family {ty}{}",
                    if dual { " (dual)" } else { "" }
                )))
            }
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::BDual => "B-dual",
            Self::CDual => "C-dual",
            Self::G2Dual => "G2-dual",
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Self::A | Self::C | Self::CDual => 1,
            Self::B | Self::BDual | Self::G2Dual => 2,
            Self::D => 3,
        }
    }

    /// Parameter names `u_k` of `p`.
    pub fn parameters(self, rank: usize) -> Vec<String> {
        match self {
            Self::A => (2..=rank + 1).map(|k| format!("u{k}")).collect(),
            Self::G2Dual => vec!["u2".into(), "u4".into()],
            _ => (1..=rank).map(|k| format!("u{}", 2 * k)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveModel {
    /// `fiber² = f(base)`.
    Hyperelliptic,
    /// Finite cover of the base line by the fiber coordinate.
    CoverOfLine,
}

/// A plane curve `equation(fiber, base; parameters) = 0`; Laurent monomials
/// in the fiber variable are allowed and cleared before any computation.
#[derive(Clone, Debug)]
pub struct PlaneCurveModel {
    pub label: String,
    pub equation: Poly<Q>,
    pub fiber: String,
    pub base: String,
    pub parameters: Vec<String>,
    pub model: CurveModel,
}

impl PlaneCurveModel {
    pub fn new(label: &str, equation: Poly<Q>, fiber: &str, base: &str, model: CurveModel) -> Self {
        let parameters = equation
            .variables_set()
            .into_iter()
            .filter(|v| v != fiber && v != base)
            .collect();
        Self {
            label: label.into(),
            equation,
            fiber: fiber.into(),
            base: base.into(),
            parameters,
            model,
        }
    }

    /// The same curve viewed as a cover of the other coordinate line.
    pub fn swapped(&self) -> Self {
        Self {
            label: format!("{} (over {})", self.label, self.fiber),
            equation: self.equation.clone(),
            fiber: self.base.clone(),
            base: self.fiber.clone(),
            parameters: self.parameters.clone(),
            model: CurveModel::CoverOfLine,
        }
    }
}

fn var(name: &str) -> Poly<Q> {
    Poly::var(name)
}

fn w_poly() -> Poly<Q> {
    var("z") + var("mu") * var("z").pow_signed(-1)
}

fn w_prime() -> Poly<Q> {
    var("z") - var("mu") * var("z").pow_signed(-1)
}

/// `p(x) = x^{n+1} + u_2 x^{n−1} + … + u_{n+1}`.
pub fn p_type_a(rank: usize) -> Poly<Q> {
    let x = var("x");
    (2..=rank + 1).fold(x.pow(rank as u32 + 1), |acc, k| acc + var(&format!("u{k}")) * x.pow((rank + 1 - k) as u32))
}

/// `p(s) = s^n + u_2 s^{n−1} + u_4 s^{n−2} + … + u_{2n}` evaluated at `s`.
pub fn p_even(rank: usize, s: &Poly<Q>) -> Poly<Q> {
    (1..=rank).fold(s.pow(rank as u32), |acc, k| acc + var(&format!("u{}", 2 * k)) * s.pow((rank - k) as u32))
}

fn g2_dual_equation() -> Poly<Q> {
    let x = var("x");
    let w = w_poly();
    let u2 = var("u2");
    Poly::int(3) * w_prime().pow(2) - x.pow(8) + Poly::int(2) * &u2 * x.pow(6)
        - (u2.pow(2) + Poly::int(6) * &w) * x.pow(4)
        + (var("u4") + Poly::int(2) * &u2 * &w) * x.pow(2)
}

/// The explicit spectral family in `(z, x)` with `w = z + μ z⁻¹`.
pub fn toda_family(ty: FamilyType, rank: usize) -> Result<PlaneCurveModel> {
    if rank < ty.min_rank() || (ty == FamilyType::G2Dual && rank != 2) {
        return Err(Error::Domain(format!("family {} is not defined for rank {rank}", ty.label())));
    }
    let x = var("x");
    let x2 = x.pow(2);
    let w = w_poly();
    let eq = match ty {
        FamilyType::A => &w + &p_type_a(rank),
        FamilyType::B | FamilyType::C => &w + &p_even(rank, &x2),
        FamilyType::D => &x2 * &w + p_even(rank, &x2),
        FamilyType::BDual => &x * &w + p_even(rank, &x2),
        FamilyType::CDual => w.pow(2) + p_even(rank, &x2),
        FamilyType::G2Dual => g2_dual_equation(),
    };
    let label = format!("{}_{rank}", ty.label());
    let mut m = PlaneCurveModel::new(&label, eq, "z", "x", CurveModel::CoverOfLine);
    m.parameters = ty.parameters(rank).into_iter().chain(["mu".to_string()]).collect();
    Ok(m)
}

/// Substitutes the charpoly's Hamiltonians and μ into the matching family
/// and returns `charpoly − x^k · family(σz)` (zero when the two agree).
pub fn charpoly_family_residual(report: &CharpolyReport) -> Result<Poly<Q>> {
    let fam = match report.ty {
        LieType::A => FamilyType::A,
        LieType::B => FamilyType::B,
        LieType::C => FamilyType::C,
        LieType::D => FamilyType::D,
    };
    let model = toda_family(fam, report.rank)?;
    let deg = report.p.degree_in("x").unwrap_or(0);
    let mut subs: Vec<(String, Poly<Q>)> = Vec::new();
    for name in fam.parameters(report.rank) {
        let k: i32 = name[1..].parse().map_err(|_| Error::Internal(name.clone()))?;
        subs.push((name, report.p.coeff_of("x", deg - k)));
    }
    subs.push(("mu".into(), report.mu.clone()));
    let refs: Vec<(&str, Poly<Q>)> = subs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let mut f = model.equation.subs_many(&refs)?;
    if report.sign < 0 {
        f = f.subs("z", &-var("z"))?;
    }
    Ok(&report.charpoly - &(var("x").pow(report.spurious_x as u32) * f))
}

// ---------------------------------------------------------------------------
// substitutions and quotients

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub statement: String,
    /// True for a relation taken verbatim from the source that is expected to
    /// fail; its residual documents the discrepancy.
    pub as_printed_variant: bool,
    pub residual: Poly<Q>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    pub family: FamilyType,
    pub rank: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SubstitutionReport {
    /// Every identity in its correct form holds, and every recorded misprint
    /// really fails.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.holds() != c.as_printed_variant)
    }
}

/// Multiplies by the power of `v` that clears negative exponents.
fn clear(p: &Poly<Q>, v: &str) -> Poly<Q> {
    match p.min_degree_in(v) {
        Some(k) if k < 0 => p * &var(v).pow((-k) as u32),
        _ => p.clone(),
    }
}

/// `r − c·t^m` with `m = deg r / deg t` and `c` the ratio of leading
/// coefficients in `new_var`, so `r` is a unit multiple of a power of `t`
/// exactly when the residual vanishes.
fn power_residual(r: &Poly<Q>, t: &Poly<Q>, new_var: &str) -> Poly<Q> {
    let (Some(dr), Some(dt)) = (r.degree_in(new_var), t.degree_in(new_var)) else {
        return r.clone();
    };
    if dt == 0 || dr % dt != 0 {
        return r.clone();
    }
    let tm = t.pow((dr / dt) as u32);
    let lr = r.coeff_of(new_var, dr);
    let lt = tm.coeff_of(new_var, dr);
    match lr.div_exact(&lt) {
        Some(c) => r - &(c * tm),
        None => &(r * &lt) - &(lr * tm),
    }
}

/// Eliminates `z` between a curve and a relation defining a new variable.
fn eliminate_z(curve: &Poly<Q>, relation: &Poly<Q>) -> Result<Poly<Q>> {
    resultant_q(&clear(curve, "z"), &clear(relation, "z"), "z")
}

fn lambda_pow(k: u32) -> Poly<Q> {
    var("Lambda").pow(k)
}

fn mu_from_lambda(k: u32) -> Poly<Q> {
    lambda_pow(k).scale(&rat(1, 4))
}

/// Substitution into `y = …`: eliminate z, impose `4μ = Λ^k` (when given),
/// compare with the target curve in `y`.
fn substitution_check(
    label: &str,
    statement: &str,
    curve: &Poly<Q>,
    relation: &Poly<Q>,
    target: &Poly<Q>,
    lambda: Option<u32>,
    new_var: &str,
    as_printed_variant: bool,
) -> Result<IdentityCheck> {
    let mut r = eliminate_z(curve, relation)?;
    if let Some(k) = lambda {
        r = r.subs("mu", &mu_from_lambda(k))?;
    }
    Ok(IdentityCheck {
        label: label.into(),
        statement: statement.into(),
        as_printed_variant,
        residual: power_residual(&r, target, new_var),
    })
}

/// Quotient by `x ↦ −x`: with `s = x·y`, `t = x²` the equation `s² = g(t)`
/// must pull back to `x² · (curve in y)`.
fn quotient_check(label: &str, statement: &str, quotient: &Poly<Q>, curve_y: &Poly<Q>) -> Result<IdentityCheck> {
    let x = var("x");
    let pulled = quotient.subs_many(&[("s", &x * &var("y")), ("t", x.pow(2))])?;
    Ok(IdentityCheck {
        label: label.into(),
        statement: statement.into(),
        as_printed_variant: false,
        residual: pulled - x.pow(2) * curve_y.clone(),
    })
}

fn direct_check(label: &str, statement: &str, lhs: Poly<Q>, rhs: Poly<Q>, as_printed_variant: bool) -> IdentityCheck {
    IdentityCheck {
        label: label.into(),
        statement: statement.into(),
        as_printed_variant,
        residual: lhs - rhs,
    }
}

/// Verifies the changes of variables and quotient equations of a family.
pub fn substitution_identities(ty: FamilyType, rank: usize) -> Result<SubstitutionReport> {
    let fam = toda_family(ty, rank)?.equation;
    let (x, y, z, mu) = (var("x"), var("y"), var("z"), var("mu"));
    let (s, t, v) = (var("s"), var("t"), var("v"));
    let x2 = x.pow(2);
    let n = rank as u32;
    let mut checks = Vec::new();
    match ty {
        FamilyType::A => {
            let p = p_type_a(rank);
            let k = 2 * (n + 1);
            let target = y.pow(2) - p.pow(2) + lambda_pow(k);
            checks.push(substitution_check(
                "y = 2z + p/2 (as printed)",
                "y² = p(x)² − Λ^{2(n+1)}, 4μ = Λ^{2(n+1)}",
                &fam,
                &(&y - &(Poly::int(2) * &z) - p.scale(&rat(1, 2))),
                &target,
                Some(k),
                "y",
                true,
            )?);
            checks.push(substitution_check(
                "y = 2z + p",
                "y² = p(x)² − Λ^{2(n+1)}, 4μ = Λ^{2(n+1)}",
                &fam,
                &(&y - &(Poly::int(2) * &z) - p),
                &target,
                Some(k),
                "y",
                false,
            )?);
        }
        FamilyType::C => {
            let p = p_even(rank, &x2);
            checks.push(substitution_check(
                "y = 2z + p(x²)",
                "y² = p(x²)² − 4μ",
                &fam,
                &(&y - &(Poly::int(2) * &z) - p.clone()),
                &(y.pow(2) - p.pow(2) + Poly::int(4) * &mu),
                None,
                "y",
                false,
            )?);
        }
        FamilyType::D => {
            let p = p_even(rank, &x2);
            let k = 4 * (n - 1);
            let target = y.pow(2) - p.pow(2) + lambda_pow(k) * x.pow(4);
            checks.push(substitution_check(
                "y = x²(z − μ/z)",
                "y² = p(x²)² − Λ^{4(n−1)} x⁴, 4μ = Λ^{4(n−1)}",
                &fam,
                &(&y - &(&x2 * &w_prime())),
                &target,
                Some(k),
                "y",
                false,
            )?);
            let c2 = s.pow(2) - &t * &p_even(rank, &t).pow(2) + lambda_pow(k) * t.pow(3);
            checks.push(quotient_check("quotient C″", "s² = t·p(t)² − Λ^{4(n−1)} t³", &c2, &target)?);
        }
        FamilyType::BDual => {
            let p = p_even(rank, &x2);
            let k = 2 * (2 * n - 1);
            let target = y.pow(2) - p.pow(2) + lambda_pow(k) * x2.clone();
            checks.push(substitution_check(
                "y = 2xz + p(x²)",
                "y² = p(x²)² − Λ^{2(2n−1)} x², 4μ = Λ^{2(2n−1)}",
                &fam,
                &(&y - &(Poly::int(2) * &x * &z) - p),
                &target,
                Some(k),
                "y",
                false,
            )?);
            let q = s.pow(2) - &t * &(p_even(rank, &t).pow(2) - lambda_pow(k) * t.clone());
            checks.push(quotient_check("genus-n quotient", "s² = t(p(t)² − Λ^{2(2n−1)} t)", &q, &target)?);
        }
        FamilyType::CDual => {
            let p = p_even(rank, &x2);
            let pt = p_even(rank, &t);
            let middle = |sg: i64| v.pow(2) + (&p + &(Poly::int(sg * 2) * &mu)) * &v + mu.pow(2);
            let v_rel = &v - &z.pow(2);
            let fam_prime = w_prime().pow(2) + p.clone();
            // as printed: the w = z + μ/z family with the −2μ middle curve
            checks.push(substitution_check(
                "middle curve, v = z² (as printed)",
                "v + μ²/v + p(x²) − 2μ = 0",
                &fam,
                &v_rel,
                &middle(-1),
                None,
                "v",
                true,
            )?);
            checks.push(substitution_check(
                "middle curve, v = z²",
                "v + μ²/v + p(x²) + 2μ = 0",
                &fam,
                &v_rel,
                &middle(1),
                None,
                "v",
                false,
            )?);
            checks.push(substitution_check(
                "middle curve of w′² + p = 0, v = z²",
                "v + μ²/v + p(x²) − 2μ = 0, w′ = z − μ/z",
                &fam_prime,
                &v_rel,
                &middle(-1),
                None,
                "v",
                false,
            )?);
            // the C_n Toda family with (z, μ, p) ↦ (v, μ², p ∓ 2μ)
            let top = format!("u{}", 2 * rank);
            for (sg, what) in [(1i64, "w-family"), (-1, "w′-family")] {
                let cn = clear(&toda_family(FamilyType::C, rank)?.equation, "z")
                    .subs("mu", &mu.pow(2))?
                    .subs(&top, &(var(&top) + Poly::int(2 * sg) * &mu))?
                    .rename("z", "v");
                checks.push(direct_check(
                    &format!("C_n shape of the middle curve ({what})"),
                    &format!("(z, μ, p) ↦ (v, μ², p {} 2μ)", if sg > 0 { "+" } else { "−" }),
                    cn,
                    middle(sg),
                    false,
                ));
                let shifted = &p + &(Poly::int(2 * sg) * &mu);
                let target = y.pow(2) - shifted.pow(2) + Poly::int(4) * mu.pow(2);
                checks.push(substitution_check(
                    &format!("y = 2v + p {} 2μ ({what})", if sg > 0 { "+" } else { "−" }),
                    "y² = (p ± 2μ)² − 4μ²",
                    &clear(&middle(sg), "v").rename("v", "z"),
                    &(&y - &(Poly::int(2) * &z) - shifted.clone()),
                    &target,
                    None,
                    "y",
                    false,
                )?);
                let pt_shift = &pt + &(Poly::int(2 * sg) * &mu);
                checks.push(direct_check(
                    &format!("factorization ({what})"),
                    "(p ± 2μ)² − 4μ² = p(p ± 4μ)",
                    pt_shift.pow(2) - Poly::int(4) * mu.pow(2),
                    &pt * &(&pt + &(Poly::int(4 * sg) * &mu)),
                    false,
                ));
                let q = s.pow(2) - &t * &pt * (&pt + &(Poly::int(4 * sg) * &mu));
                let curve_y = y.pow(2) - &p * &(&p + &(Poly::int(4 * sg) * &mu));
                checks.push(quotient_check(
                    &format!("n-dimensional piece ({what})"),
                    &format!("s² = t·p(t)(p(t) {} 4μ)", if sg > 0 { "+" } else { "−" }),
                    &q,
                    &curve_y,
                )?);
            }
        }
        FamilyType::G2Dual => {
            let (u2, u4) = (var("u2"), var("u4"));
            // v = x(w − s² + u2 s / 3) with s = x²
            let rel = &v - &(&x * &(w_poly() - x.pow(4) + u2.scale(&rat(1, 3)) * &x2));
            let q5 = |s: &Poly<Q>| {
                Poly::int(4) * s.pow(4) - Poly::int(4) * &u2 * s.pow(3) + u2.pow(2).scale(&rat(4, 3)) * s.pow(2)
                    - &u4 * s
                    + Poly::int(12) * &mu
            };
            let target = Poly::int(3) * v.pow(2) - &x2 * &q5(&x2);
            checks.push(substitution_check(
                "(s, v) quotient",
                "3v² = s(4s⁴ − 4u2 s³ + (4/3)u2² s² − u4 s + 12μ), s = x²",
                &fam,
                &rel,
                &target,
                None,
                "v",
                false,
            )?);
        }
        FamilyType::B => {}
    }
    Ok(SubstitutionReport {
        family: ty,
        rank,
        checks,
    })
}

// ---------------------------------------------------------------------------
// genus

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusMode {
    Hyperelliptic,
    Cover,
}

#[derive(Clone, Debug)]
pub struct BranchData {
    /// `None` for the point at infinity.
    pub point: Option<Complex64>,
    pub cycles: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GenusReport {
    pub label: String,
    pub mode: GenusMode,
    pub genus: i64,
    pub sheets: usize,
    /// Degree of the squarefree `f` (hyperelliptic) or `Σ(e_P − 1)` (cover).
    pub branch_degree: usize,
    /// False when `f` had repeated factors and was reduced.
    pub squarefree: bool,
    pub branch: Vec<BranchData>,
    pub specialization: Vec<(String, Q)>,
}

fn random_rational(r: &mut rand_chacha::ChaCha8Rng) -> Q {
    loop {
        let num: i64 = r.gen_range(-40..=40);
        let den: i64 = r.gen_range(1..=9);
        if num != 0 {
            return rat(num, den);
        }
    }
}

fn specialize(curve: &PlaneCurveModel, seed: u64) -> Result<(Poly<Q>, Vec<(String, Q)>)> {
    let mut r = rng(seed);
    let values: Vec<(String, Q)> = curve.parameters.iter().map(|p| (p.clone(), random_rational(&mut r))).collect();
    let subs: Vec<(&str, Poly<Q>)> = values.iter().map(|(n, q)| (n.as_str(), Poly::rational(q))).collect();
    Ok((curve.equation.subs_many(&subs)?, values))
}

/// Strips monomial factors, clears Laurent powers and splits off the
/// remaining curve as a polynomial in `(fiber, base)`.
fn prepare(eq: &Poly<Q>, fiber: &str, base: &str) -> Poly<Q> {
    let mut f = eq.clone();
    for v in [fiber, base] {
        if let Some(k) = f.min_degree_in(v) {
            f = f * var(v).pow_signed(-k);
        }
    }
    f
}

/// Tracks the roots of `poly_at(t)` for `t ∈ [0, 1]` and returns the start
/// and end sets, with `end[i]` the continuation of `start[i]`.
pub(crate) fn track_roots(poly_at: &dyn Fn(f64) -> Vec<Complex64>, steps: usize) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let start = complex_roots(&poly_at(0.0));
    let mut cur = start.clone();
    let h_max = 1.0 / steps as f64;
    let (mut t, mut h) = (0.0, h_max);
    while t < 1.0 {
        let tn = (t + h).min(1.0);
        let next = complex_roots(&poly_at(tn));
        if next.len() != cur.len() {
            return Err(Error::Continuation("root count changed along the path".into()));
        }
        match match_roots(&cur, &next) {
            Ok(m) => {
                cur = m;
                t = tn;
                h = (h * 1.5).min(h_max);
            }
            Err(_) => {
                h /= 2.0;
                if h < 1e-10 {
                    return Err(Error::Continuation("root tracking step underflow".into()));
                }
            }
        }
    }
    Ok((start, cur))
}

/// Cycle lengths of the permutation `start → end`.
pub(crate) fn cycle_type(start: &[Complex64], end: &[Complex64]) -> Result<Vec<usize>> {
    let n = start.len();
    let mut perm = vec![usize::MAX; n];
    for (i, e) in end.iter().enumerate() {
        let (j, _) = start
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (s - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::Internal("empty fiber".into()))?;
        perm[i] = j;
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut k = i;
        while !seen[k] {
            if perm[k] == usize::MAX || seen.get(perm[k]).is_none() {
                return Err(Error::Continuation("end fiber does not match start fiber".into()));
            }
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if k != i {
            return Err(Error::Continuation("fiber matching is not a permutation".into()));
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    Ok(cycles)
}

/// Local monodromy cycle types over every branch candidate and ∞.
fn cover_branching(f: &Poly<Q>, fiber: &str, base: &str) -> Result<(usize, Vec<BranchData>)> {
    let sheets = f.degree_in(fiber).unwrap_or(0) as usize;
    if sheets == 0 {
        return Err(Error::Structural("curve does not involve the fiber variable".into()));
    }
    let coeff = |k: i32| -> Vec<Complex64> {
        univariate::from_poly(&f.coeff_of(fiber, k), base)
            .unwrap_or_default()
            .iter()
            .map(|q| q.to_complex().unwrap_or_default())
            .collect()
    };
    let cfs: Vec<Vec<Complex64>> = (0..=sheets as i32).map(coeff).collect();
    let at = |xv: Complex64| -> Vec<Complex64> { cfs.iter().map(|c| univariate::eval_complex(c, xv)).collect() };
    let mut cand = vec![Q::one()];
    if sheets > 1 {
        let disc = discriminant_q(f, fiber)?;
        if disc.is_zero() {
            return Err(Error::Structural("curve is not reduced (zero discriminant)".into()));
        }
        cand = univariate::from_poly(&disc, base).ok_or_else(|| Error::Internal("discriminant not univariate".into()))?;
    }
    let lead = univariate::from_poly(&f.coeff_of(fiber, sheets as i32), base).unwrap_or_default();
    let prod = univariate::from_poly(&(univariate::to_poly(&cand, base) * univariate::to_poly(&lead, base)), base).unwrap_or_default();
    let sf = univariate::squarefree_part(&prod);
    let pts = complex_roots(&sf.iter().map(|q| q.to_complex().unwrap_or_default()).collect::<Vec<_>>());
    let mut branch = Vec::new();
    let loop_at = |c: Complex64, r: f64| -> Result<Vec<usize>> {
        let path = |s: f64| at(c + Complex64::from_polar(r, 2.0 * PI * s));
        let (s, e) = track_roots(&path, 256)?;
        cycle_type(&s, &e)
    };
    for (i, &c) in pts.iter().enumerate() {
        let dmin = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, d)| (d - c).norm())
            .fold(f64::INFINITY, f64::min);
        let r = if dmin.is_finite() { 0.4 * dmin } else { 0.5 * (1.0 + c.norm()) };
        branch.push(BranchData {
            point: Some(c),
            cycles: loop_at(c, r)?,
        });
    }
    let big = 2.0 * pts.iter().map(|p| p.norm()).fold(0.0, f64::max) + 1.0;
    branch.push(BranchData {
        point: None,
        cycles: loop_at(Complex64::new(0.0, 0.0), big)?,
    });
    Ok((sheets, branch))
}

/// Genus of a plane curve, with generic rational values for its parameters
/// drawn from `seed`.
pub fn cover_genus(curve: &PlaneCurveModel, mode: GenusMode, seed: u64) -> Result<GenusReport> {
    let (eq, specialization) = specialize(curve, seed)?;
    let f = prepare(&eq, &curve.fiber, &curve.base);
    match mode {
        GenusMode::Hyperelliptic => {
            let two = f.coeff_of(&curve.fiber, 2);
            if f.degree_in(&curve.fiber) != Some(2) || !two.as_constant().is_some_and(|c| c.is_one()) || !f.coeff_of(&curve.fiber, 1).is_zero() {
                return Err(Error::Domain(format!("{} is not of the form {}² = f({})", curve.label, curve.fiber, curve.base)));
            }
            let g = univariate::from_poly(&-f.coeff_of(&curve.fiber, 0), &curve.base)
                .ok_or_else(|| Error::Domain("f must depend on the base only".into()))?;
            let sf = odd_part(&g);
            let d = univariate::degree(&sf).unwrap_or(0);
            Ok(GenusReport {
                label: curve.label.clone(),
                mode,
                genus: (d as i64 + 1) / 2 - 1,
                sheets: 2,
                branch_degree: d,
                squarefree: univariate::degree(&g) == Some(d),
                branch: Vec::new(),
                specialization,
            })
        }
        GenusMode::Cover => {
            let (sheets, branch) = cover_branching(&f, &curve.fiber, &curve.base)?;
            let b: usize = branch.iter().map(|p| sheets - p.cycles.len()).sum();
            if b % 2 != 0 {
                return Err(Error::Internal(format!("odd total ramification {b}")));
            }
            Ok(GenusReport {
                label: curve.label.clone(),
                mode,
                genus: 1 - sheets as i64 + b as i64 / 2,
                sheets,
                branch_degree: b,
                squarefree: true,
                branch,
                specialization,
            })
        }
    }
}

/// Product of the factors of odd multiplicity (Yun's squarefree
/// decomposition); `s² = g²h` and `s² = h` have the same normalization.
fn odd_part(f: &[Q]) -> univariate::UPoly {
    let mut out = vec![Q::one()];
    let mut a = f.to_vec();
    univariate::trim(&mut a);
    if univariate::degree(&a).unwrap_or(0) == 0 {
        return a;
    }
    let g = univariate::gcd(&a, &univariate::derivative(&a));
    let (mut w, _) = univariate::divrem(&a, &g);
    let mut c = g;
    let mut i = 1;
    while univariate::degree(&w).unwrap_or(0) > 0 {
        let y = univariate::gcd(&w, &c);
        let (fi, _) = univariate::divrem(&w, &y);
        if i % 2 == 1 {
            out = univariate::from_poly(&(univariate::to_poly(&out, "t") * univariate::to_poly(&fi, "t")), "t").unwrap_or_default();
        }
        let (cn, _) = univariate::divrem(&c, &y);
        c = cn;
        w = y;
        i += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct GenusRow {
    pub report: GenusReport,
    pub expected: Option<i64>,
}

impl GenusRow {
    pub fn ok(&self) -> bool {
        self.expected.is_none_or(|g| g == self.report.genus)
    }
}

fn hyper(label: &str, rhs: Poly<Q>, fiber: &str, base: &str) -> PlaneCurveModel {
    PlaneCurveModel::new(label, var(fiber).pow(2) - rhs, fiber, base, CurveModel::Hyperelliptic)
}

/// The genus table of the families and their quotients; `expected` is set
/// where the value is stated for the curve.
pub fn genus_table(max_rank: usize, seed: u64) -> Result<Vec<GenusRow>> {
    let mut rows = Vec::new();
    let mut push = |curve: PlaneCurveModel, mode, expected: Option<usize>| -> Result<()> {
        rows.push(GenusRow {
            report: cover_genus(&curve, mode, seed)?,
            expected: expected.map(|g| g as i64),
        });
        Ok(())
    };
    let (x, t, mu) = (var("x"), var("t"), var("mu"));
    for n in 1..=max_rank.max(1) {
        let a = toda_family(FamilyType::A, n)?;
        push(a.swapped(), GenusMode::Cover, Some(n))?;
        push(a, GenusMode::Cover, Some(n))?;
    }
    for n in 3..=max_rank {
        let k = 4 * (n as u32 - 1);
        push(toda_family(FamilyType::D, n)?, GenusMode::Cover, Some(2 * n - 1))?;
        let c1 = &t * &w_poly() + p_even(n, &t);
        push(PlaneCurveModel::new(&format!("C′ of D_{n}"), c1, "z", "t", CurveModel::CoverOfLine), GenusMode::Cover, Some(n - 1))?;
        let c2 = &t * &p_even(n, &t).pow(2) - lambda_pow(k) * t.pow(3);
        push(hyper(&format!("C″ of D_{n}"), c2, "s", "t"), GenusMode::Hyperelliptic, Some(n))?;
    }
    for n in 2..=max_rank {
        let k = 2 * (2 * n as u32 - 1);
        push(toda_family(FamilyType::BDual, n)?, GenusMode::Cover, Some(2 * n - 1))?;
        let yc = p_even(n, &x.pow(2)).pow(2) - lambda_pow(k) * x.pow(2);
        push(hyper(&format!("y-form of B_{n}-dual"), yc, "y", "x"), GenusMode::Hyperelliptic, Some(2 * n - 1))?;
        let q = &t * &(p_even(n, &t).pow(2) - lambda_pow(k) * t.clone());
        push(hyper(&format!("quotient of B_{n}-dual"), q, "s", "t"), GenusMode::Hyperelliptic, Some(n))?;
    }
    for n in 1..=max_rank {
        push(toda_family(FamilyType::CDual, n)?, GenusMode::Cover, None)?;
        let pt = p_even(n, &t);
        let piece = &t * &pt * (&pt + &(Poly::int(4) * &mu));
        push(hyper(&format!("n-dimensional piece of C_{n}-dual"), piece, "s", "t"), GenusMode::Hyperelliptic, Some(n))?;
    }
    push(toda_family(FamilyType::G2Dual, 2)?, GenusMode::Cover, None)?;
    let s = var("s");
    let u2 = var("u2");
    let q5 = Poly::int(4) * s.pow(4) - Poly::int(4) * &u2 * s.pow(3) + u2.pow(2).scale(&rat(4, 3)) * s.pow(2) - var("u4") * &s
        + Poly::int(12) * &mu;
    push(hyper("(s, v) quotient of G2-dual", (&s * &q5).scale(&rat(1, 3)), "v", "s"), GenusMode::Hyperelliptic, Some(2))?;
    Ok(rows)
}

/// Symbolic charpoly summaries keyed by `(type, rank)`, for reporting.
pub fn charpoly_table(entries: &[(LieType, usize)]) -> Result<BTreeMap<(LieType, usize), CharpolyReport>> {
    entries.iter().map(|&(ty, n)| Ok(((ty, n), toda_charpoly(ty, n)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chevalley_relations() {
        for (ty, n) in [(LieType::A, 1), (LieType::A, 3), (LieType::B, 2), (LieType::B, 3), (LieType::C, 2), (LieType::C, 3), (LieType::D, 3), (LieType::D, 4)] {
            let r = ChevalleyRealization::new(ty, n).unwrap();
            let c = r.checks();
            assert!(c.ok(), "{ty:?}{n}: {c:?}");
        }
        let b2 = ChevalleyRealization::new(LieType::B, 2).unwrap();
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn rank_one_by_hand() {
        let r = toda_charpoly(LieType::A, 1).unwrap();
        let (x, z) = (var("x"), var("z"));
        let (a0, a1, b1) = (var("a0"), var("a1"), var("b1"));
        let mu = &a0 * &a1;
        let expect = x.pow(2) - (b1.pow(2) + &a0 + &a1) - (&z + &(&mu * &z.pow_signed(-1)));
        assert_eq!(r.charpoly, expect);
        assert_eq!(r.mu, mu);
        assert_eq!(r.sign, -1);
    }

    #[test]
    fn charpoly_shapes() {
        for n in 1..=4 {
            let r = toda_charpoly(LieType::A, n).unwrap();
            assert_eq!((r.sign, r.epsilon, r.spurious_x), (-1, 0, 0));
            let prod = (0..=n).fold(Poly::one(), |acc, i| acc * var(&format!("a{i}")));
            assert_eq!(r.mu, prod);
            assert!(charpoly_family_residual(&r).unwrap().is_zero());
        }
        let d3 = toda_charpoly(LieType::D, 3).unwrap();
        assert_eq!(d3.epsilon, 2);
        assert!(charpoly_family_residual(&d3).unwrap().is_zero());
        let b2 = toda_charpoly(LieType::B, 2).unwrap();
        assert_eq!((b2.epsilon, b2.spurious_x), (0, 1));
        let c2 = toda_charpoly(LieType::C, 2).unwrap();
        assert_eq!(c2.epsilon, 0);
        assert!(charpoly_family_residual(&c2).unwrap().is_zero());
    }

    #[test]
    fn lax_is_traceless() {
        let l = LaxOperator::new(ChevalleyRealization::new(LieType::A, 3).unwrap());
        assert!(l.trace().is_zero());
    }

    #[test]
    fn family_examples() {
        let a2 = toda_family(FamilyType::A, 2).unwrap();
        let (x, z) = (var("x"), var("z"));
        let expect = &z + &(var("mu") * z.pow_signed(-1)) + x.pow(3) + var("u2") * &x + var("u3");
        assert_eq!(a2.equation, expect);
        let c3 = toda_family(FamilyType::CDual, 3).unwrap();
        let w = w_poly();
        let expect = w.pow(2) + x.pow(6) + var("u2") * x.pow(4) + var("u4") * x.pow(2) + var("u6");
        assert_eq!(c3.equation, expect);
        assert!(toda_family(FamilyType::G2Dual, 3).is_err());
        assert!(FamilyType::parse("E", false).is_err());
    }

    #[test]
    fn substitutions() {
        for (ty, ranks) in [
            (FamilyType::A, 1..=3),
            (FamilyType::C, 1..=3),
            (FamilyType::D, 3..=4),
            (FamilyType::BDual, 2..=3),
            (FamilyType::CDual, 1..=3),
            (FamilyType::G2Dual, 2..=2),
        ] {
            for n in ranks {
                let r = substitution_identities(ty, n).unwrap();
                for c in &r.checks {
                    assert_eq!(c.holds(), !c.as_printed_variant, "{ty:?}{n} {}: {}", c.label, c.residual);
                }
            }
        }
    }

    #[test]
    fn genus_examples() {
        let a3 = toda_family(FamilyType::A, 3).unwrap();
        assert_eq!(cover_genus(&a3, GenusMode::Cover, 1).unwrap().genus, 3);
        assert_eq!(cover_genus(&a3.swapped(), GenusMode::Cover, 1).unwrap().genus, 3);
        let d3 = toda_family(FamilyType::D, 3).unwrap();
        assert_eq!(cover_genus(&d3, GenusMode::Cover, 2).unwrap().genus, 5);
        let t = var("t");
        let f = t.pow(6) - Poly::int(3) * t.pow(2) + Poly::int(1);
        let c = hyper("sextic", f, "s", "t");
        let g = cover_genus(&c, GenusMode::Hyperelliptic, 0).unwrap();
        assert_eq!((g.genus, g.squarefree), (2, true));
        let sq = hyper("square", (&t * &t - Poly::one()).pow(2) * (&t - &Poly::int(3)), "s", "t");
        let g = cover_genus(&sq, GenusMode::Hyperelliptic, 0).unwrap();
        assert_eq!((g.genus, g.squarefree), (0, false));
        let sq = hyper("cube", (&t - &Poly::one()).pow(3) * (t.pow(4) - Poly::int(2)), "s", "t");
        assert_eq!(cover_genus(&sq, GenusMode::Hyperelliptic, 0).unwrap().genus, 2);
    }

    #[test]
    fn table_matches() {
        for row in genus_table(3, 7).unwrap() {
            assert!(row.ok(), "{}: got {} expected {:?}", row.report.label, row.report.genus, row.expected);
        }
    }
}
