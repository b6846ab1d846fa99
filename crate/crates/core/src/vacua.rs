//! Massive vacua of the SU(n) adjoint family.
//!
//! A vacuum is a point `u` where `C_u` acquires the maximal number `n − 1`
//! of nodes; its normalization is then an unramified n-sheeted cover of `E`.
//! Such covers are classified by index-n sublattices, and each one gives a
//! curve through the meromorphic function `t = Σ r_j ζ′(z − q_j) + C` on the
//! cover. This module counts the sublattices, builds the curves and checks
//! their singularities and genus directly.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::linalg::lstsq_complex;
use crate::exact::univariate::{self, cluster_roots, complex_roots};
use crate::exact::{resultant, Poly};
use crate::numerics::AnalyticEllipticData;
use crate::su_adjoint::{contour_residues, pn_normalized, SpectralFamily};
use crate::toda::{cycle_type, track_roots};
use crate::weierstrass::EllipticCurveModel;

type C64 = Complex64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// The sublattice of `Z²` spanned by `(d1, 0)` and `(k, d2)`, in Hermite normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupClass {
    pub d1: i64,
    pub k: i64,
    pub d2: i64,
}

impl SubgroupClass {
    pub fn index(&self) -> i64 {
        self.d1 * self.d2
    }

    /// Coset representatives `(a, b)` of `Z² / Λ′`.
    pub fn cosets(&self) -> Vec<(i64, i64)> {
        (0..self.d2).flat_map(|b| (0..self.d1).map(move |a| (a, b))).collect()
    }

    fn contains(&self, a: i64, b: i64) -> bool {
        b % self.d2 == 0 && (a - (b / self.d2) * self.k) % self.d1 == 0
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupCount {
    pub n: usize,
    pub classes: Vec<SubgroupClass>,
    /// Order-n subgroups of `Z_n × Z_n`, found by closing pairs of elements.
    pub brute_force: usize,
    pub divisor_sum: u64,
}

impl SubgroupCount {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn consistent(&self) -> bool {
        self.count() == self.brute_force && self.count() as u64 == self.divisor_sum
    }
}

pub fn divisor_sum(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// Subgroups of order `n` in `Z_n × Z_n`; every subgroup is 2-generated, so
/// closing all pairs of elements finds them all.
pub fn index_subgroups_brute_force(n: usize) -> usize {
    let m = n * n;
    let mut found: HashSet<Vec<bool>> = HashSet::new();
    for g in 0..m {
        for h in g..m {
            let (ga, gb, ha, hb) = (g / n, g % n, h / n, h % n);
            let mut mask = vec![false; m];
            for i in 0..n {
                for j in 0..n {
                    let a = (i * ga + j * ha) % n;
                    let b = (i * gb + j * hb) % n;
                    mask[a * n + b] = true;
                }
            }
            if mask.iter().filter(|&&x| x).count() == n {
                found.insert(mask);
            }
        }
    }
    found.len()
}

/// Index-n sublattices of `Z²` (equivalently index-n subgroups of `Z_n²`).
pub fn count_index_subgroups(n: usize) -> Result<SubgroupCount> {
    if n == 0 {
        return Err(Error::Domain("index must be positive".into()));
    }
    let n64 = n as i64;
    let classes = (1..=n64)
        .filter(|d1| n64 % d1 == 0)
        .flat_map(|d1| (0..d1).map(move |k| SubgroupClass { d1, k, d2: n64 / d1 }))
        .collect();
    Ok(SubgroupCount {
        n,
        classes,
        brute_force: index_subgroups_brute_force(n),
        divisor_sum: divisor_sum(n as u64),
    })
}

// ---------------------------------------------------------------------------
// SU(2)

#[derive(Clone, Debug)]
pub struct Su2Vacuum {
    pub u: C64,
    /// Distance between the branch points `(u, ±y(u))` of `t² = x − u`.
    pub branch_gap: f64,
    /// `|q(u)|` and `|q′(u)|` for `q = (x − u)(x³ + bx − c)`: both vanish at a
    /// repeated branch point.
    pub quartic_residual: f64,
}

fn check_smooth(b: C64, c0: C64) -> Result<()> {
    let disc = -4.0 * b.powi(3) - 27.0 * c0.powi(2);
    let scale = 4.0 * b.norm().powi(3) + 27.0 * c0.norm().powi(2);
    if disc.norm() <= 1e-12 * scale.max(1e-300) {
        return Err(Error::Nodal("x³ + bx − c has a repeated root".into()));
    }
    Ok(())
}

/// The three `u` where the two branch points of `t² = x − u` collide.
pub fn su2_vacua(b: C64, c0: C64) -> Result<Vec<Su2Vacuum>> {
    check_smooth(b, c0)?;
    let cubic = [-c0, b, c(0.0), c(1.0)];
    let mut out: Vec<Su2Vacuum> = complex_roots(&cubic)
        .into_iter()
        .map(|u| {
            let yv = univariate::eval_complex(&cubic, u).sqrt();
            // q(u) = 0 identically; q′(u) = u³ + bu − c
            let q1 = univariate::eval_complex(&cubic, u).norm();
            Su2Vacuum {
                u,
                branch_gap: 2.0 * yv.norm(),
                quartic_residual: q1,
            }
        })
        .collect();
    out.sort_by(|a, b| a.u.re.total_cmp(&b.u.re).then(a.u.im.total_cmp(&b.u.im)));
    Ok(out)
}

// ---------------------------------------------------------------------------
// numeric curves over E

/// `C_u` with numbers substituted: `F(t, x, y)` plus the cubic.
struct NumericCurve {
    n: usize,
    b: C64,
    c: C64,
    f: Poly<C64>,
}

impl NumericCurve {
    fn new(fam: &SpectralFamily, b: C64, c0: C64, u: &[C64]) -> Result<Self> {
        if u.len() != fam.n - 1 {
            return Err(Error::Domain(format!("expected {} parameters", fam.n - 1)));
        }
        let mut vals: Vec<(String, C64)> = vec![("b".into(), b), ("c".into(), c0)];
        for (l, v) in u.iter().enumerate() {
            vals.push((format!("u{l}"), *v));
        }
        let refs: Vec<(&str, C64)> = vals.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let f = fam.equation.to_complex_poly().eval_vars(&refs);
        Ok(Self { n: fam.n, b, c: c0, f })
    }

    fn cubic(&self) -> [C64; 4] {
        [-self.c, self.b, c(0.0), c(1.0)]
    }

    fn t_coeffs(&self, x: C64, y: C64) -> Vec<C64> {
        (0..=self.n as i32)
            .map(|k| eval2(&self.f.coeff_of("t", k), x, y, c(0.0)))
            .collect()
    }
}

fn eval2(p: &Poly<C64>, x: C64, y: C64, t: C64) -> C64 {
    let mut vals = BTreeMap::new();
    vals.insert("x".to_string(), x);
    vals.insert("y".to_string(), y);
    vals.insert("t".to_string(), t);
    p.eval_complex(&vals).unwrap_or(C64::new(f64::NAN, f64::NAN))
}

/// `Σ |c|·|monomial|` at the point `(x, y, t)`.
fn term_scale(q: &Poly<C64>, p: [C64; 3]) -> f64 {
    q.named_terms()
        .iter()
        .map(|(vars, cf)| {
            vars.iter().fold(cf.norm(), |acc, (v, k)| {
                let base = match v.as_str() {
                    "x" => p[0],
                    "y" => p[1],
                    _ => p[2],
                };
                acc * base.norm().powi(*k)
            })
        })
        .sum()
}

fn dense(p: &Poly<C64>, var: &str) -> Vec<C64> {
    let mut out = Vec::new();
    for (k, cf) in p.coeffs_in(var) {
        let k = k as usize;
        if out.len() <= k {
            out.resize(k + 1, c(0.0));
        }
        out[k] = cf.as_constant().unwrap_or(C64::new(f64::NAN, f64::NAN));
    }
    out
}

fn conv(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![c(0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![c(0.0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    out
}

/// x-coordinates of the zeros of `Disc_t F` on `E`, as roots of the norm
/// `A² − B²·(x³ + bx − c)` of `Disc = A + B·y`, clustered.
fn discriminant_points(curve: &NumericCurve) -> Result<Vec<C64>> {
    let ft = curve.f.derivative("t");
    let disc = resultant(&curve.f, &ft, "t")?;
    let y = Poly::<C64>::var("y");
    let x = Poly::<C64>::var("x");
    let modulus = y.pow(2) - x.pow(3) - x.scale(&curve.b) + Poly::constant(curve.c);
    let red = disc.rem_monic(&modulus, "y");
    let a = dense(&red.coeff_of("y", 0), "x");
    let bb = dense(&red.coeff_of("y", 1), "x");
    let mut norm = sub(&conv(&a, &a), &conv(&conv(&bb, &bb), &curve.cubic()));
    // the leading terms cancel by weight; drop their rounding residue
    let big = norm.iter().map(|v| v.norm()).fold(0.0, f64::max);
    while norm.last().is_some_and(|v| v.norm() < 1e-11 * big) {
        norm.pop();
    }
    let roots = complex_roots(&norm);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    Ok(cluster_roots(&roots, 1e-5 * scale).into_iter().map(|(r, _)| r).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularKind {
    Node,
    /// Degenerate Hessian: a cusp or worse.
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub x: C64,
    pub y: C64,
    pub t: C64,
    pub residual: f64,
    /// `det` of the Hessian in a local coordinate of E and t, relative to
    /// the size of its entries.
    pub hessian: f64,
    pub kind: SingularKind,
}

#[derive(Clone, Debug)]
pub struct NodeReport {
    pub points: Vec<SingularPoint>,
    pub nodes: usize,
    pub degenerate: usize,
    /// Sheet cycles over ∞ (from the contour), one entry per point.
    pub infinity_cycles: Vec<u32>,
}

/// Polynomials for the singular-point system and the Hessian. `V` is the
/// vector field `2y ∂_x + (3x² + b) ∂_y` tangent to `E`.
struct SingularSystem {
    eqs: [Poly<C64>; 4],
    jac: [[Poly<C64>; 3]; 4],
    hess: [Poly<C64>; 3],
}

impl SingularSystem {
    fn new(curve: &NumericCurve) -> Self {
        let (x, y) = (Poly::<C64>::var("x"), Poly::<C64>::var("y"));
        let vf = |g: &Poly<C64>| -> Poly<C64> {
            (&y * &g.derivative("x")).scale(&c(2.0))
                + (x.pow(2).scale(&c(3.0)) + Poly::constant(curve.b)) * g.derivative("y")
        };
        let e = y.pow(2) - x.pow(3) - x.scale(&curve.b) + Poly::constant(curve.c);
        let f = curve.f.clone();
        let ft = f.derivative("t");
        let df = vf(&f);
        let eqs = [e, f.clone(), ft.clone(), df.clone()];
        let jac = eqs.clone().map(|q| [q.derivative("x"), q.derivative("y"), q.derivative("t")]);
        let hess = [vf(&df), vf(&ft), ft.derivative("t")];
        Self { eqs, jac, hess }
    }

    /// Largest equation value relative to the size of its terms.
    fn residual(&self, p: [C64; 3]) -> f64 {
        self.eqs
            .iter()
            .map(|q| eval2(q, p[0], p[1], p[2]).norm() / term_scale(q, p).max(1.0))
            .fold(0.0, f64::max)
    }

    /// Gauss–Newton on the overdetermined system.
    fn refine(&self, mut p: [C64; 3]) -> [C64; 3] {
        for _ in 0..60 {
            let r: Vec<C64> = self.eqs.iter().map(|q| -eval2(q, p[0], p[1], p[2])).collect();
            let j: Vec<Vec<C64>> = self
                .jac
                .iter()
                .map(|row| row.iter().map(|q| eval2(q, p[0], p[1], p[2])).collect())
                .collect();
            let (dx, _) = lstsq_complex(&j, &r);
            if dx.iter().any(|d| !d.is_finite()) {
                break;
            }
            for k in 0..3 {
                p[k] += dx[k];
            }
            let size = dx.iter().map(|d| d.norm()).fold(0.0, f64::max);
            if size < 1e-15 * (1.0 + p.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
                break;
            }
        }
        p
    }

    fn hessian(&self, p: [C64; 3]) -> f64 {
        let [fzz, fzt, ftt] = self.hess.clone().map(|q| eval2(&q, p[0], p[1], p[2]));
        let d = fzz * ftt - fzt * fzt;
        let scale = (fzz * ftt).norm() + (fzt * fzt).norm();
        if scale == 0.0 {
            0.0
        } else {
            d.norm() / scale
        }
    }
}

const SINGULAR_TOL: f64 = 1e-8;
const HESSIAN_TOL: f64 = 1e-6;

/// Singular points of the affine curve `C_u` over `E`, each classified by its
/// Hessian.
pub fn node_count(fam: &SpectralFamily, b: C64, c0: C64, u: &[C64]) -> Result<NodeReport> {
    check_smooth(b, c0)?;
    let curve = NumericCurve::new(fam, b, c0, u)?;
    let sys = SingularSystem::new(&curve);
    let cubic = curve.cubic();
    let mut points: Vec<SingularPoint> = Vec::new();
    for x0 in discriminant_points(&curve)? {
        let y0 = univariate::eval_complex(&cubic, x0).sqrt();
        for y in [y0, -y0] {
            let roots = complex_roots(&curve.t_coeffs(x0, y));
            let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
            // the t-root pair that nearly coincides
            let mut best = (f64::INFINITY, c(0.0));
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    let d = (roots[i] - roots[j]).norm();
                    if d < best.0 {
                        best = (d, (roots[i] + roots[j]) / 2.0);
                    }
                }
            }
            if best.0 > 1e-2 * scale {
                continue;
            }
            let p = sys.refine([x0, y, best.1]);
            let residual = sys.residual(p);
            let magnitude = 1.0 + p.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if residual > SINGULAR_TOL {
                continue;
            }
            if points.iter().any(|q| (q.x - p[0]).norm() + (q.y - p[1]).norm() + (q.t - p[2]).norm() < 1e-6 * magnitude) {
                continue;
            }
            let hessian = sys.hessian(p);
            points.push(SingularPoint {
                x: p[0],
                y: p[1],
                t: p[2],
                residual,
                hessian,
                kind: if hessian > HESSIAN_TOL { SingularKind::Node } else { SingularKind::Degenerate },
            });
        }
    }
    let infinity_cycles = contour_residues(fam, b, c0, u, 0.05, 512)?.into_iter().map(|r| r.1).collect();
    let nodes = points.iter().filter(|p| p.kind == SingularKind::Node).count();
    Ok(NodeReport {
        degenerate: points.len() - nodes,
        nodes,
        points,
        infinity_cycles,
    })
}

#[derive(Clone, Debug)]
pub struct LocalMonodromy {
    pub x: C64,
    pub y: C64,
    pub cycles: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GenusOverE {
    pub sheets: usize,
    pub local: Vec<LocalMonodromy>,
    pub infinity_cycles: Vec<u32>,
    /// `Σ(e_P − 1)` over all points of the normalization.
    pub ramification: usize,
    pub genus: i64,
}

impl GenusOverE {
    pub fn unramified(&self) -> bool {
        self.ramification == 0
    }
}

/// Genus of the normalization of `C_u` by Riemann–Hurwitz over `E`:
/// `g = n(g_E − 1) + 1 + B/2 = 1 + B/2`, with `B` read off the monodromy of
/// the t-sheets around each zero of the discriminant and around ∞.
pub fn normalization_genus(fam: &SpectralFamily, b: C64, c0: C64, u: &[C64]) -> Result<GenusOverE> {
    check_smooth(b, c0)?;
    let curve = NumericCurve::new(fam, b, c0, u)?;
    let n = curve.n;
    let cubic = curve.cubic();
    let e_roots = complex_roots(&cubic);
    let cands = discriminant_points(&curve)?;
    let mut local = Vec::new();
    for (i, &x0) in cands.iter().enumerate() {
        let scale = 1.0 + x0.norm();
        let torsion = e_roots.iter().position(|e| (e - x0).norm() < 1e-6 * scale);
        let mut r = f64::INFINITY;
        for (j, &x1) in cands.iter().enumerate() {
            if j != i {
                r = r.min(0.4 * (x1 - x0).norm());
            }
        }
        for (k, e) in e_roots.iter().enumerate() {
            if Some(k) != torsion {
                r = r.min(0.4 * (e - x0).norm());
            }
        }
        if !r.is_finite() {
            r = 0.5 * scale;
        }
        let x_at = |s: f64, turns: f64| x0 + C64::from_polar(r, 2.0 * PI * turns * s);
        // y continued along the loop: principal roots of ratios stay continuous
        // because every other root of the cubic lies outside 2.5 r
        let y_at = |s: f64, turns: f64, sign: f64| -> C64 {
            let xv = x_at(s, turns);
            let mut yv = c(sign);
            for (k, e) in e_roots.iter().enumerate() {
                if Some(k) == torsion {
                    yv *= C64::from_polar(r.sqrt(), PI * turns * s);
                } else {
                    let x_start = x_at(0.0, turns);
                    yv *= (x_start - e).sqrt() * ((xv - e) / (x_start - e)).sqrt();
                }
            }
            yv
        };
        let signs: &[f64] = if torsion.is_some() { &[1.0] } else { &[1.0, -1.0] };
        let turns = if torsion.is_some() { 2.0 } else { 1.0 };
        for &sg in signs {
            let path = |s: f64| curve.t_coeffs(x_at(s, turns), y_at(s, turns, sg));
            let (start, end) = track_roots(&path, 256)?;
            local.push(LocalMonodromy {
                x: x0,
                y: y_at(0.0, turns, sg),
                cycles: cycle_type(&start, &end)?,
            });
        }
    }
    let infinity_cycles: Vec<u32> = contour_residues(fam, b, c0, u, 0.05, 512)?.into_iter().map(|r| r.1).collect();
    let ramification = local.iter().map(|m| n - m.cycles.len()).sum::<usize>()
        + infinity_cycles.iter().map(|&l| l as usize - 1).sum::<usize>();
    if ramification % 2 != 0 {
        return Err(Error::Internal(format!("odd total ramification {ramification}")));
    }
    Ok(GenusOverE {
        sheets: n,
        local,
        infinity_cycles,
        ramification,
        genus: 1 + ramification as i64 / 2,
    })
}

// ---------------------------------------------------------------------------
// cover construction

#[derive(Clone, Debug)]
pub struct VacuumPoint {
    pub u: Vec<C64>,
    pub subgroup: SubgroupClass,
    pub distinguished: usize,
    /// Relative least-squares residual of the fit in the p̃ basis.
    pub fit_residual: f64,
    /// Deviation of the fiber sums of t from zero.
    pub trace_residual: f64,
    /// Residues of `t dz` at the preimages of ∞, by contour integration.
    pub residues: Vec<C64>,
    pub nodes: NodeReport,
    pub genus: GenusOverE,
}

impl VacuumPoint {
    pub fn residue_error(&self) -> f64 {
        let n = self.residues.len();
        self.residues
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let target = if j == self.distinguished { 1.0 - n as f64 } else { 1.0 };
                (r - target).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Builds `C_u` from the unramified cover `C/Λ′ → C/Λ` given by `h`, with the
/// residue `1 − n` at the preimage `distinguished` of ∞.
pub fn cover_to_curve(
    data: &AnalyticEllipticData,
    h: &SubgroupClass,
    fam: &SpectralFamily,
    distinguished: usize,
) -> Result<VacuumPoint> {
    let n = fam.n;
    if h.index() != n as i64 {
        return Err(Error::Domain(format!("subgroup of index {} for SU({n})", h.index())));
    }
    if distinguished >= n {
        return Err(Error::Domain("distinguished preimage out of range".into()));
    }
    let (w1, w2) = (data.omega1, data.omega2);
    let sub = AnalyticEllipticData::from_basis(w1 * h.d1 as f64, w1 * h.k as f64 + w2 * h.d2 as f64)?;
    let q: Vec<C64> = h.cosets().iter().map(|&(a, b)| w1 * a as f64 + w2 * b as f64).collect();
    let r: Vec<f64> = (0..n).map(|j| if j == distinguished { 1.0 - n as f64 } else { 1.0 }).collect();
    let raw = |z: C64| -> Result<C64> {
        let mut acc = c(0.0);
        for (qj, rj) in q.iter().zip(&r) {
            acc += sub.zeta(z - qj)? * *rj;
        }
        Ok(acc)
    };
    let fiber_sum = |z: C64| -> Result<C64> {
        let mut acc = c(0.0);
        for qj in &q {
            acc += raw(z + qj)?;
        }
        Ok(acc)
    };
    let probe = |s: f64, t: f64| w1 * s + w2 * t;
    let c0 = -fiber_sum(probe(0.1234, 0.3717))? / n as f64;
    let trace_residual = (fiber_sum(probe(0.6102, 0.2291))? / n as f64 + c0).norm();
    let f = |z: C64| -> Result<C64> { Ok(raw(z)? + c0) };

    let basis: Vec<Poly<C64>> = (0..=n)
        .map(|l| pn_normalized(l, &fam.base).map(|p| p.to_complex_poly().eval_vars(&[("b", data.b), ("c", data.c)])))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for s in 0..(4 * n + 4) {
        let z = probe(0.071 + 0.0613 * s as f64, 0.043 + 0.0377 * s as f64);
        let (wp, dwp, _) = data.weierstrass(z)?;
        let (x, y) = (wp, -dwp / 2.0);
        for qj in &q {
            let t = f(z + qj)?;
            rows.push((0..n - 1).map(|l| eval2(&basis[l], x, y, t)).collect::<Vec<_>>());
            rhs.push(-eval2(&basis[n], x, y, t));
        }
    }
    let (u, res) = lstsq_complex(&rows, &rhs);
    let scale = rhs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let fit_residual = res / scale;
    if !(fit_residual < 1e-6) {
        return Err(Error::Construction(format!("fit residual {fit_residual:.3e} in the p̃ basis")));
    }
    // residues at the preimages of ∞, by the trapezoid rule on small circles
    let rho = 0.2 * [w1.norm(), w2.norm(), (w1 + w2).norm(), (w1 - w2).norm()].into_iter().fold(f64::INFINITY, f64::min);
    let mut residues = Vec::new();
    for qj in &q {
        let m = 64;
        let mut acc = c(0.0);
        for k in 0..m {
            let e = C64::from_polar(rho, 2.0 * PI * k as f64 / m as f64);
            acc += f(qj + e)? * e;
        }
        residues.push(acc / m as f64);
    }
    let nodes = node_count(fam, data.b, data.c, &u)?;
    let genus = normalization_genus(fam, data.b, data.c, &u)?;
    Ok(VacuumPoint {
        u,
        subgroup: *h,
        distinguished,
        fit_residual,
        trace_residual,
        residues,
        nodes,
        genus,
    })
}

/// All vacua for SU(n) at the curve with analytic data `data`, one per
/// index-n sublattice.
pub fn vacua_from_covers(data: &AnalyticEllipticData, n: usize) -> Result<Vec<VacuumPoint>> {
    let fam = SpectralFamily::new(n, &EllipticCurveModel::symbolic())?;
    count_index_subgroups(n)?
        .classes
        .iter()
        .map(|h| cover_to_curve(data, h, &fam, n - 1))
        .collect()
}

/// Largest distance between matched points of two vacuum sets and the
/// smallest distance between points within the first.
pub fn vacuum_separation(points: &[Vec<C64>]) -> f64 {
    let mut dmin = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].iter().zip(&points[j]).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            dmin = dmin.min(d);
        }
    }
    dmin
}

/// Checks that a subgroup class really contains `nZ²`, for tests.
pub fn contains_n_lattice(h: &SubgroupClass) -> bool {
    let n = h.index();
    h.contains(n, 0) && h.contains(0, n)
}

/// Demonstration nome with no special symmetry.
pub const GENERIC_NOME: (f64, f64) = (0.04, 0.03);

pub fn generic_data() -> Result<AnalyticEllipticData> {
    AnalyticEllipticData::from_nome(C64::new(GENERIC_NOME.0, GENERIC_NOME.1), c(PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(count_index_subgroups(1).unwrap().count(), 1);
        assert_eq!(count_index_subgroups(2).unwrap().count(), 3);
        assert_eq!(count_index_subgroups(4).unwrap().count(), 7);
        for n in 1..=8 {
            let s = count_index_subgroups(n).unwrap();
            assert!(s.consistent(), "n = {n}");
            assert!(s.classes.iter().all(contains_n_lattice));
        }
    }

    #[test]
    fn su2_roots_and_guard() {
        let v = su2_vacua(c(-2.0), c(1.0)).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|p| p.branch_gap < 1e-6 && p.quartic_residual < 1e-10));
        assert!(matches!(su2_vacua(c(-3.0), c(-2.0)), Err(Error::Nodal(_))));
    }

    #[test]
    fn nodes_su2() {
        let fam = SpectralFamily::new(2, &EllipticCurveModel::symbolic()).unwrap();
        let (b, c0) = (C64::new(-1.3, 0.2), C64::new(0.7, -0.4));
        for v in su2_vacua(b, c0).unwrap() {
            let r = node_count(&fam, b, c0, &[v.u]).unwrap();
            assert_eq!(r.nodes, 1, "{r:?}");
        }
        let r = node_count(&fam, b, c0, &[C64::new(0.3, 0.9)]).unwrap();
        assert_eq!(r.points.len(), 0);
    }

    #[test]
    fn generic_genus() {
        let (b, c0) = (C64::new(-1.3, 0.2), C64::new(0.7, -0.4));
        for n in 2..=4 {
            let fam = SpectralFamily::new(n, &EllipticCurveModel::symbolic()).unwrap();
            let u: Vec<C64> = (0..n - 1).map(|l| C64::new(0.3 + 0.2 * l as f64, -0.5 + 0.37 * l as f64)).collect();
            let g = normalization_genus(&fam, b, c0, &u).unwrap();
            assert_eq!(g.genus, n as i64, "{g:?}");
            assert_eq!(node_count(&fam, b, c0, &u).unwrap().points.len(), 0);
        }
    }

    #[test]
    fn su2_cover_matches_roots() {
        let data = generic_data().unwrap();
        let pts = vacua_from_covers(&data, 2).unwrap();
        let roots = su2_vacua(data.b, data.c).unwrap();
        for p in &pts {
            let d = roots.iter().map(|r| (r.u - p.u[0]).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-8, "{d}");
            assert!(p.residue_error() < 1e-8);
        }
    }

    #[test]
    fn su3_vacua() {
        let data = generic_data().unwrap();
        let pts = vacua_from_covers(&data, 3).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!(p.fit_residual < 1e-8, "{}", p.fit_residual);
            assert_eq!(p.nodes.nodes, 2, "{:?}", p.nodes);
            assert_eq!(p.nodes.degenerate, 0);
            assert_eq!(p.genus.genus, 1);
            assert!(p.genus.unramified());
        }
        let us: Vec<Vec<C64>> = pts.iter().map(|p| p.u.clone()).collect();
        assert!(vacuum_separation(&us) > 1e-6);
        // another choice of distinguished preimage gives the same curve
        let fam = SpectralFamily::new(3, &EllipticCurveModel::symbolic()).unwrap();
        let alt = cover_to_curve(&data, &pts[1].subgroup, &fam, 0).unwrap();
        let d: f64 = alt.u.iter().zip(&pts[1].u).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(d < 1e-8, "{d}");
    }
}
