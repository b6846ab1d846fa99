//! The SU(2) curve `y² = (x+1)(x−1)(x−u)` with `λ = (x−u)dx/y`: periods,
//! analytic continuation in `u`, monodromy and the Kähler potential.
//!
//! Cycles are loops around straight cuts between two of the branch points
//! `−1, 1, u`. Each cut integral uses a cosine substitution that removes the
//! square-root endpoint singularities. Continuation re-expresses the carried
//! periods in a freshly computed cycle basis at every step: the holomorphic
//! periods `∮dx/y` fix the integer change of basis, which is then applied to
//! the `λ` periods as well (`λ` has no residue at ∞).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::elliptic::real_coords;
use super::quad::integrate;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const QUAD_TOL: f64 = 1e-13;
/// Largest allowed distance of a basis coefficient from an integer.
const MATCH_TOL: f64 = 0.1;

/// Base point of all continuations.
pub const BASE_POINT: Complex64 = Complex64::new(0.0, 3.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A square root of `w` continuous away from the ray through `cut`.
fn sqrt_cut(w: Complex64, cut: Complex64) -> Complex64 {
    (-cut).sqrt() * (-w / cut).sqrt()
}

/// Ray from 0 avoiding the segment `[w0, w1]` (which must miss 0).
fn avoiding_ray(w0: Complex64, w1: Complex64) -> Complex64 {
    let d = -(w0 / w0.norm() + w1 / w1.norm());
    if d.norm() < 1e-12 {
        // antipodal endpoints: any perpendicular works
        I * w0 / w0.norm()
    } else {
        d / d.norm()
    }
}

/// Cuts between pairs of the finite branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cut {
    /// `[−1, 1]`
    Inner,
    /// `[1, u]`
    Right,
    /// `[−1, u]`
    Left,
}

/// `(∮λ, ∮dx/y)` over the loop around `cut`, i.e. twice the cut integrals.
pub fn cut_periods(u: Complex64, cut: Cut) -> Result<(Complex64, Complex64)> {
    cut_periods_tol(u, cut, QUAD_TOL)
}

fn cut_periods_tol(u: Complex64, cut: Cut, tol: f64) -> Result<(Complex64, Complex64)> {
    let tol = tol * (1.0 + u.norm());
    let (res, _) = match cut {
        Cut::Inner => {
            // x = −cos θ: λ = −i·s dθ, dx/y = −i dθ/s with s² = x − u
            let ray = avoiding_ray(c(-1.0) - u, c(1.0) - u);
            let f = move |th: f64| {
                // half-angle forms keep x − u accurate near either endpoint
                let w = if th < PI / 2.0 {
                    (-1.0 - u) + 2.0 * (th / 2.0).sin().powi(2)
                } else {
                    (1.0 - u) - 2.0 * (th / 2.0).cos().powi(2)
                };
                let s = sqrt_cut(w, ray);
                [-I * s, -I / s]
            };
            integrate(&f, 0.0, PI, tol)
        }
        Cut::Right | Cut::Left => {
            // x = e_a + (u − e_a) sin²(φ/2): λ = i(u−e_a)cos²(φ/2)dφ/r,
            // dx/y = −i dφ/r with r² = x − e_b
            let (ea, eb) = if cut == Cut::Right { (1.0, -1.0) } else { (-1.0, 1.0) };
            let ray = avoiding_ray(c(ea - eb), u - eb);
            let f = move |ph: f64| {
                let (s, co) = ((ph / 2.0).sin(), (ph / 2.0).cos());
                let w = if s < co { (ea - eb) + (u - ea) * s * s } else { (u - eb) - (u - ea) * co * co };
                let r = sqrt_cut(w, ray);
                [I * (u - ea) * co * co / r, -I / r]
            };
            integrate(&f, 0.0, PI, tol)
        }
    };
    Ok((2.0 * res[0], 2.0 * res[1]))
}

/// Distance from the branch point not on `cut` to the cut segment.
fn clearance(u: Complex64, cut: Cut) -> f64 {
    let (a, b, p) = match cut {
        Cut::Inner => (c(-1.0), c(1.0), u),
        Cut::Right => (c(1.0), u, c(-1.0)),
        Cut::Left => (c(-1.0), u, c(1.0)),
    };
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (a + t * d - p).norm()
}

fn check_u(u: Complex64) -> Result<()> {
    let d = (u - 1.0).norm().min((u + 1.0).norm());
    if d < 1e-6 {
        return Err(Error::Proximity(format!("u = {u} is within 1e-6 of a singular point")));
    }
    Ok(())
}

/// Periods at `u`, carried as `(∮_{γD} λ, ∮_γ λ)` and the matching
/// holomorphic periods.
#[derive(Clone, Copy, Debug)]
struct State {
    u: Complex64,
    lam: [Complex64; 2],
    hol: [Complex64; 2],
}

/// The cycle basis `γ = [−1,1]`, `γD = [1,u]` at `u`, swapped in
/// orientation so that `Im τ > 0`.
fn standard_state(u: Complex64) -> Result<State> {
    check_u(u)?;
    if clearance(u, Cut::Inner) < 1e-9 || clearance(u, Cut::Right) < 1e-9 {
        return Err(Error::Domain(format!(
            "at u = {u} a standard cut runs through a branch point; use continuation"
        )));
    }
    let (la, wa) = cut_periods(u, Cut::Inner)?;
    let (mut ld, mut wd) = cut_periods(u, Cut::Right)?;
    if (wd / wa).im < 0.0 {
        ld = -ld;
        wd = -wd;
    }
    Ok(State { u, lam: [ld, la], hol: [wd, wa] })
}

/// Two cut cycles whose segments stay farthest from the third point.
fn fresh_basis(u: Complex64) -> Result<[(Complex64, Complex64); 2]> {
    check_u(u)?;
    let mut cuts = [Cut::Inner, Cut::Right, Cut::Left];
    cuts.sort_by(|a, b| clearance(u, *b).partial_cmp(&clearance(u, *a)).unwrap());
    Ok([cut_periods(u, cuts[0])?, cut_periods(u, cuts[1])?])
}

/// Moves `prev` to `u` by matching it against a fresh basis there; returns
/// the new state and the worst distance of a coefficient from an integer.
fn step(prev: &State, u: Complex64) -> Result<(State, f64)> {
    let f = fresh_basis(u)?;
    let mut lam = [c(0.0); 2];
    let mut hol = [c(0.0); 2];
    let mut worst: f64 = 0.0;
    for k in 0..2 {
        let (m1, m2) = real_coords(prev.hol[k], f[0].1, f[1].1);
        let (r1, r2) = (m1.round(), m2.round());
        worst = worst.max((m1 - r1).abs()).max((m2 - r2).abs());
        lam[k] = r1 * f[0].0 + r2 * f[1].0;
        hol[k] = r1 * f[0].1 + r2 * f[1].1;
    }
    if worst > MATCH_TOL {
        return Err(Error::Continuation(format!(
            "basis matching at u = {u} is ambiguous (offset {worst:.3}); decrease the step"
        )));
    }
    Ok((State { u, lam, hol }, worst))
}

/// One frame on a continued path.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodFrame {
    pub u: [f64; 2],
    pub a: [f64; 2],
    pub a_dual: [f64; 2],
    pub tau: [f64; 2],
    /// Word describing how the frame was reached from its basis point.
    pub path: String,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl State {
    fn frame(&self, path: &str) -> PeriodFrame {
        PeriodFrame {
            u: pair(self.u),
            a: pair(self.lam[1]),
            a_dual: pair(self.lam[0]),
            tau: pair(self.tau()),
            path: path.to_string(),
        }
    }

    /// `τ = (da_D/du)/(da/du)`; since `∂λ/∂u = −dx/(2y)` this is the ratio
    /// of holomorphic periods.
    fn tau(&self) -> Complex64 {
        self.hol[0] / self.hol[1]
    }
}

impl PeriodFrame {
    pub fn a(&self) -> Complex64 {
        Complex64::new(self.a[0], self.a[1])
    }
    pub fn a_dual(&self) -> Complex64 {
        Complex64::new(self.a_dual[0], self.a_dual[1])
    }
    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.tau[0], self.tau[1])
    }
}

/// `(a, a_D, τ)` at `u` in the standard cut basis.
pub fn sw1_periods(u: Complex64) -> Result<PeriodFrame> {
    Ok(standard_state(u)?.frame("standard"))
}

/// Continues `start` through `waypoints`, subdividing each straight leg so
/// that no step exceeds a quarter of the distance to `±1` (nor `max_step`),
/// and halving further where the basis matching is ambiguous.
/// Returns the state at every waypoint and the worst matching offset.
fn continue_path(start: State, waypoints: &[Complex64], max_step: f64) -> Result<(Vec<State>, f64)> {
    let mut cur = start;
    let mut out = Vec::with_capacity(waypoints.len());
    let mut worst: f64 = 0.0;
    for &target in waypoints {
        let from = cur.u;
        let mut s = 0.0;
        while s < 1.0 {
            let here = from + (target - from) * s;
            let dist = (here - 1.0).norm().min((here + 1.0).norm());
            let len = (target - from).norm().max(1e-300);
            let mut ds = (max_step.min(0.25 * dist) / len).max(1e-6);
            // halve the step while the basis matching is ambiguous
            let (next, off, s1) = loop {
                let s1 = (s + ds).min(1.0);
                match step(&cur, from + (target - from) * s1) {
                    Ok((next, off)) => break (next, off, s1),
                    Err(Error::Continuation(_)) if ds * len > 1e-7 => ds /= 2.0,
                    Err(e) => return Err(e),
                }
            };
            s = s1;
            worst = worst.max(off);
            cur = next;
        }
        out.push(cur);
    }
    Ok((out, worst))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Loop {
    Infinity,
    Plus,
    Minus,
}

impl Loop {
    pub fn label(&self) -> &'static str {
        match self {
            Loop::Infinity => "inf",
            Loop::Plus => "+1",
            Loop::Minus => "-1",
        }
    }

    pub fn parse(s: &str) -> Option<Loop> {
        match s {
            "inf" | "infinity" | "∞" => Some(Loop::Infinity),
            "+1" | "1" | "plus" => Some(Loop::Plus),
            "-1" | "minus" => Some(Loop::Minus),
            _ => None,
        }
    }

    /// Default radius: 10 around ∞, 1/2 around `±1`.
    pub fn default_radius(&self) -> f64 {
        match self {
            Loop::Infinity => 10.0,
            _ => 0.5,
        }
    }
}

pub type IntMatrix = [[i64; 2]; 2];

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyMatrix {
    pub label: String,
    /// Acts on the column `(a_D, a)`.
    pub matrix: IntMatrix,
    /// Distance of the real continuation matrix from the integer one.
    pub residual: f64,
    /// Mismatch when the same matrix is applied to the `λ` periods.
    pub lambda_residual: f64,
    /// Worst basis-matching offset along the loop.
    pub matching_offset: f64,
}

impl MonodromyMatrix {
    pub fn det(&self) -> i64 {
        det(&self.matrix)
    }
}

pub fn det(m: &IntMatrix) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// Inverse of a determinant-1 matrix.
pub fn inv(a: &IntMatrix) -> IntMatrix {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

fn loop_waypoints(lp: Loop, radius: f64, steps: usize) -> Vec<Complex64> {
    let center = match lp {
        Loop::Infinity => c(0.0),
        Loop::Plus => c(1.0),
        Loop::Minus => c(-1.0),
    };
    let start = center + I * radius;
    let mut w = vec![start];
    for k in 1..=steps {
        let th = PI / 2.0 + 2.0 * PI * k as f64 / steps as f64;
        w.push(center + Complex64::from_polar(radius, th));
    }
    w.push(BASE_POINT);
    w
}

/// Monodromy of `(a_D, a)` along the counter-clockwise loop around `lp`
/// based at `3i`.
pub fn monodromy(lp: Loop, radius: f64, steps: usize) -> Result<MonodromyMatrix> {
    if radius <= 0.0 || steps < 8 {
        return Err(Error::Domain("loop radius must be positive and steps ≥ 8".into()));
    }
    let outside = match lp {
        Loop::Infinity => radius > 1.0 + 1e-3,
        _ => radius < 2.0 - 1e-3,
    };
    if !outside {
        return Err(Error::Domain("loop must enclose exactly the chosen singular point".into()));
    }
    let base = standard_state(BASE_POINT)?;
    let max_step = 2.0 * PI * radius / steps as f64;
    let (states, offset) = continue_path(base, &loop_waypoints(lp, radius, steps), max_step)?;
    let end = states.last().unwrap();
    let mut m = [[0i64; 2]; 2];
    let mut residual: f64 = 0.0;
    let mut lambda_residual: f64 = 0.0;
    for k in 0..2 {
        let (x, y) = real_coords(end.hol[k], base.hol[0], base.hol[1]);
        m[k] = [x.round() as i64, y.round() as i64];
        residual = residual.max((x - x.round()).abs()).max((y - y.round()).abs());
        let lam = m[k][0] as f64 * base.lam[0] + m[k][1] as f64 * base.lam[1];
        lambda_residual = lambda_residual.max((lam - end.lam[k]).norm() / end.lam[k].norm().max(1.0));
    }
    Ok(MonodromyMatrix {
        label: lp.label().to_string(),
        matrix: m,
        residual,
        lambda_residual,
        matching_offset: offset,
    })
}

/// `M ≡ I (mod 2)` and `det M = 1`.
pub fn gamma2_membership(m: &IntMatrix) -> bool {
    det(m) == 1 && m[0][0].rem_euclid(2) == 1 && m[1][1].rem_euclid(2) == 1 && m[0][1] % 2 == 0 && m[1][0] % 2 == 0
}

/// A `P ∈ SL(2,Z)` with entries bounded by `bound` such that
/// `P·A_i·P⁻¹ = B_i` for all pairs, if one exists.
pub fn simultaneous_conjugator(pairs: &[(IntMatrix, IntMatrix)], bound: i64) -> Option<IntMatrix> {
    for a in -bound..=bound {
        for b in -bound..=bound {
            for cc in -bound..=bound {
                for d in -bound..=bound {
                    let p = [[a, b], [cc, d]];
                    if det(&p) != 1 {
                        continue;
                    }
                    let pi = inv(&p);
                    if pairs.iter().all(|(x, y)| mul(&mul(&p, x), &pi) == *y) {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// `K = Im(a_D · ā)`.
pub fn kahler_potential(frame: &PeriodFrame) -> f64 {
    (frame.a_dual() * frame.a().conj()).im
}

/// Frames at `count` points continued from the base point: three quarters
/// on circles around `±1` (radius `near`), `0` and ∞, all outside the
/// `near`-neighbourhoods of the singular points.
pub fn continued_scan(count: usize, near: f64) -> Result<Vec<PeriodFrame>> {
    let groups = [
        (c(1.0), near * 2.0, count / 5),
        (c(-1.0), near * 2.0, count / 5),
        (c(0.0), 4.0, count * 3 / 10),
        (c(0.0), 0.5, count - 2 * (count / 5) - count * 3 / 10),
    ];
    let mut wp = Vec::new();
    let mut labels = Vec::new();
    for (g, (center, r, k)) in groups.iter().enumerate() {
        for j in 0..*k {
            let th = PI / 2.0 + 2.0 * PI * j as f64 / *k as f64;
            wp.push(center + Complex64::from_polar(*r, th));
            labels.push(format!("scan{g}:{j}"));
        }
    }
    let base = standard_state(BASE_POINT)?;
    let (states, _) = continue_path(base, &wp, 0.05)?;
    Ok(states.iter().zip(&labels).map(|(s, l)| s.frame(l)).collect())
}

/// `a_D` continued from the base point straight down to `1 + ε·i`.
pub fn dual_period_near_one(eps: f64) -> Result<Complex64> {
    let base = standard_state(BASE_POINT)?;
    let (states, _) = continue_path(base, &[Complex64::new(1.0, eps)], 0.05)?;
    Ok(states[0].lam[0])
}

/// Frames continued along a path through `waypoints`.
pub fn continue_frames(waypoints: &[Complex64], max_step: f64) -> Result<Vec<PeriodFrame>> {
    let base = standard_state(BASE_POINT)?;
    let (states, _) = continue_path(base, waypoints, max_step)?;
    Ok(states.iter().enumerate().map(|(i, s)| s.frame(&format!("p{i}"))).collect())
}

/// Change in the standard periods at `u` when the quadrature tolerance is
/// tightened a hundredfold.
pub fn quadrature_convergence(u: Complex64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for cut in [Cut::Inner, Cut::Right] {
        let (l0, w0) = cut_periods_tol(u, cut, 1e2 * QUAD_TOL)?;
        let (l1, w1) = cut_periods(u, cut)?;
        worst = worst.max((l0 - l1).norm()).max((w0 - w1).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma2_examples() {
        assert!(gamma2_membership(&[[-1, 2], [0, -1]]));
        assert!(gamma2_membership(&[[1, 0], [-2, 1]]));
        assert!(!gamma2_membership(&[[1, 1], [0, 1]]));
    }

    #[test]
    fn loops_and_relation() {
        let m: Vec<IntMatrix> = [Loop::Infinity, Loop::Plus, Loop::Minus]
            .iter()
            .map(|lp| {
                let r = monodromy(*lp, lp.default_radius(), 400).unwrap();
                assert!(r.residual < 1e-6 && r.det() == 1 && gamma2_membership(&r.matrix));
                r.matrix
            })
            .collect();
        assert_eq!(m[0][0][0] + m[0][1][1], -2);
        assert_eq!(m[1][0][0] + m[1][1][1], 2);
        assert_eq!(mul(&m[2], &m[1]), m[0]);
        let reference = [([[-1, 2], [0, -1]], m[0]), ([[1, 0], [-2, 1]], m[1])];
        let pairs: Vec<(IntMatrix, IntMatrix)> = reference.iter().map(|(p, c)| (*c, *p)).collect();
        assert!(simultaneous_conjugator(&pairs, 3).is_some());
    }

    #[test]
    fn periods_on_imaginary_axis() {
        for k in 1..6 {
            let f = sw1_periods(Complex64::new(0.0, k as f64 * 0.7)).unwrap();
            assert!(f.tau[1] > 0.0);
            assert!(kahler_potential(&f).is_finite());
        }
        let ratio = |r: f64| {
            let u = Complex64::new(0.3 * r, 0.7 * r);
            let f = sw1_periods(u).unwrap();
            f.a() * f.a() / (2.0 * u)
        };
        assert!((ratio(1e3) - ratio(1e4)).norm() < 1e-3 * ratio(1e4).norm());
        assert!(dual_period_near_one(1e-5).unwrap().norm() < 1e-3);
    }

    #[test]
    fn metric_is_positive_along_a_path() {
        let pts: Vec<Complex64> = (0..20).map(|k| Complex64::new(0.1 * k as f64, 2.0 - 0.05 * k as f64)).collect();
        let frames = continue_frames(&pts, 0.05).unwrap();
        for w in frames.windows(2) {
            let da = w[1].a() - w[0].a();
            let dad = w[1].a_dual() - w[0].a_dual();
            assert!((dad * da.conj()).im > 0.0);
        }
    }
}
