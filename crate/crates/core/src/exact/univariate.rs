//! Dense univariate polynomials over Q (ascending coefficients) and complex
//! root finding.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use num_bigint::BigInt;

use super::poly::Poly;
use super::ring::{q_to_f64, Q};

pub type UPoly = Vec<Q>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Q]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Dense coefficients of `p` in `var`; `None` if `p` involves other variables
/// or negative powers.
pub fn from_poly(p: &Poly<Q>, var: &str) -> Option<UPoly> {
    if p.vars().iter().any(|v| v != var) {
        return None;
    }
    let mut out: UPoly = Vec::new();
    for (k, c) in p.coeffs_in(var) {
        if k < 0 {
            return None;
        }
        let k = k as usize;
        if out.len() <= k {
            out.resize(k + 1, Q::zero());
        }
        out[k] = c.as_constant()?;
    }
    Some(out)
}

pub fn to_poly(p: &[Q], var: &str) -> Poly<Q> {
    let v = Poly::var(var);
    let mut acc = Poly::zero();
    for (k, c) in p.iter().enumerate() {
        if !c.is_zero() {
            acc = acc + Poly::rational(c) * v.pow(k as u32);
        }
    }
    acc
}

pub fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Q]) -> UPoly {
    let mut d: UPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut d);
    d
}

/// Euclidean division `a = q·b + r`.
pub fn divrem(a: &[Q], b: &[Q]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    let lb = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lb;
        for i in 0..=db {
            let t = &c * &b[i];
            r[dr - db + i] -= t;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic(p: &[Q]) -> UPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let l = p[d].clone();
            p[..=d].iter().map(|c| c / &l).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(a: &[Q], b: &[Q]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &[Q]) -> UPoly {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return monic(p);
    }
    monic(&divrem(p, &g).0)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
        if d > BigInt::from(1_000_000) {
            break;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots with multiplicities, sorted ascending.
///
/// Candidates come from numerical root approximations snapped to denominators
/// dividing the leading coefficient; every reported root is verified exactly.
pub fn rational_roots(p: &[Q]) -> Vec<(Q, usize)> {
    let Some(d) = degree(p) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut rest: UPoly = p[..=d].to_vec();
    // clear zero roots first
    let z = rest.iter().position(|c| !c.is_zero()).unwrap();
    if z > 0 {
        out.push((Q::zero(), z));
        rest.drain(..z);
    }
    let sf = squarefree_part(&rest);
    if degree(&sf).unwrap_or(0) == 0 {
        return out;
    }
    let lcm_den = sf.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<BigInt> = sf.iter().map(|c| (c * Q::from_integer(lcm_den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let dens = divisors(&lead);
    let approx = complex_roots(&sf.iter().map(|c| Complex64::new(q_to_f64(c), 0.0)).collect::<Vec<_>>());
    let mut found: Vec<Q> = Vec::new();
    for r in approx {
        if r.im.abs() > 1e-6 * (1.0 + r.re.abs()) {
            continue;
        }
        for den in &dens {
            let scaled = r.re * den.to_f64().unwrap_or(f64::MAX);
            if !scaled.is_finite() || scaled.abs() > 1e15 {
                continue;
            }
            let num = BigInt::from(scaled.round() as i64);
            let cand = Q::new(num, den.clone());
            if !found.contains(&cand) && eval(&sf, &cand).is_zero() {
                found.push(cand);
                break;
            }
        }
    }
    for r in found {
        let lin = vec![-r.clone(), Q::one()];
        let mut m = 0;
        let mut cur = rest.clone();
        loop {
            let (q, rem) = divrem(&cur, &lin);
            if degree(&rem).is_some() {
                break;
            }
            m += 1;
            cur = q;
        }
        out.push((r, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn eval_complex(p: &[Complex64], x: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// All complex roots (with multiplicity) by Aberth–Ehrlich iteration.
pub fn complex_roots(p: &[Complex64]) -> Vec<Complex64> {
    let Some(d) = p.iter().rposition(|c| c.norm() != 0.0) else {
        return Vec::new();
    };
    let lead = p[d];
    let a: Vec<Complex64> = p[..=d].iter().map(|c| c / lead).collect();
    let zeros = a.iter().position(|c| c.norm() != 0.0).unwrap();
    let a: Vec<Complex64> = a[zeros..].to_vec();
    let n = a.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-a[0]);
        return roots;
    }
    let da: Vec<Complex64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let radius = 1.0 + a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    // geometric-mean radius is a better start than the Cauchy bound
    let gm = a[0].norm().powf(1.0 / n as f64).clamp(1e-3, radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(gm, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let mut stall = 0;
    for _ in 0..2000 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let f = eval_complex(&a, z[i]);
            let fp = eval_complex(&da, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / fp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxstep = maxstep.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        // cubic convergence: two more sweeps after 1e-12 reach rounding level
        if maxstep < 1e-12 {
            stall += 1;
            if stall > 2 {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

/// Groups roots closer than `tol` (relative to scale) and replaces each
/// cluster by its centroid, which is far more accurate than the individual
/// members for a multiple root.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() < tol * scale {
                let a = find(&mut parent, i);
                let b = find(&mut parent, j);
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(roots[i]);
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_values()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect();
    out.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap()
            .then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    out
}

/// Complex roots grouped by multiplicity. The tolerance adapts to the
/// expected `eps^(1/m)` spread of an m-fold root.
pub fn complex_roots_with_multiplicity(p: &[Complex64]) -> Vec<(Complex64, usize)> {
    let roots = complex_roots(p);
    let n = roots.len().max(1);
    let tol = (1e-14f64).powf(1.0 / n as f64).max(1e-7).min(5e-3);
    let mut cl = cluster_roots(&roots, tol);
    // an m-fold root is a simple root of the (m-1)-th derivative
    for (r, m) in cl.iter_mut() {
        let mut f = p.to_vec();
        for _ in 1..*m {
            f = cderiv(&f);
        }
        let fp = cderiv(&f);
        for _ in 0..4 {
            let d = eval_complex(&fp, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval_complex(&f, *r) / d;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    cl
}

fn cderiv(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{int, rat};

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let p = vec![int(2), int(-3), int(0), int(1)];
        assert_eq!(squarefree_part(&p), vec![int(-2), int(1), int(1)]);
        assert_eq!(gcd(&p, &derivative(&p)), vec![int(-1), int(1)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = vec![int(2), int(-3), int(0), int(1)];
        assert_eq!(rational_roots(&p), vec![(int(-2), 1), (int(1), 2)]);
        // 6t^2 - t - 1 = (3t+1)(2t-1)
        let q = vec![int(-1), int(-1), int(6)];
        assert_eq!(rational_roots(&q), vec![(rat(-1, 3), 1), (rat(1, 2), 1)]);
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_empty());
    }

    #[test]
    fn aberth_finds_multiple_root_centroid() {
        // (c-1)^4 (c+4)
        let p = [4.0, -15.0, 20.0, -10.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let r = complex_roots_with_multiplicity(&p);
        assert_eq!(r.len(), 2);
        assert!((r[0].0 - Complex64::new(-4.0, 0.0)).norm() < 1e-10);
        assert_eq!(r[1].1, 4);
        assert!((r[1].0 - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
