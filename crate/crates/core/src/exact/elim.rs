//! Sylvester resultants and discriminants.
//!
//! Sign convention (used everywhere): the Sylvester matrix lists the
//! coefficients of `f` (degree m) in descending powers on n shifted rows,
//! followed by those of `g` (degree n) on m rows. Its determinant equals
//! `lc(f)^n · Π g(αᵢ)` over the roots of `f`. The discriminant is
//! `(−1)^{m(m−1)/2} · Res(f, f′) / lc(f)`, so `disc(x³ + bx − c) = −4b³ − 27c²`.

use super::linalg::{det, det_bareiss};
use super::poly::Poly;
use super::ring::{Q, Ring};
use crate::error::{Error, Result};

fn dense_desc<R: Ring>(f: &Poly<R>, var: &str) -> Result<Vec<Poly<R>>> {
    let parts = f.coeffs_in(var);
    if parts.keys().next().is_some_and(|k| *k < 0) {
        return Err(Error::Domain(format!("negative power of {var} in resultant input")));
    }
    let d = parts.keys().next_back().copied().unwrap_or(0) as usize;
    Ok((0..=d)
        .rev()
        .map(|k| parts.get(&(k as i32)).cloned().unwrap_or_else(Poly::zero))
        .collect())
}

pub fn sylvester<R: Ring>(f: &Poly<R>, g: &Poly<R>, var: &str) -> Result<Vec<Vec<Poly<R>>>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateInput("resultant of a zero polynomial".into()));
    }
    if !f.has_var(var) && !g.has_var(var) {
        return Err(Error::DegenerateInput(format!("{var} occurs in neither input")));
    }
    let a = dense_desc(f, var)?;
    let b = dense_desc(g, var)?;
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Poly::zero(); size];
        for (j, c) in a.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Poly::zero(); size];
        for (j, c) in b.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    Ok(rows)
}

pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>, var: &str) -> Result<Poly<R>> {
    let s = sylvester(f, g, var)?;
    Ok(det(&s))
}

/// Resultant over Q using fraction-free elimination; identical result to
/// [`resultant`] but practical for large Sylvester matrices.
pub fn resultant_q(f: &Poly<Q>, g: &Poly<Q>, var: &str) -> Result<Poly<Q>> {
    let s = sylvester(f, g, var)?;
    if s.len() <= 8 {
        Ok(det(&s))
    } else {
        Ok(det_bareiss(&s))
    }
}

fn disc_from_res<R: Ring>(f: &Poly<R>, var: &str, res: Poly<R>) -> Result<Poly<R>> {
    let m = f.degree_in(var).unwrap_or(0);
    let lc = f.coeff_of(var, m);
    let q = lc_divide(&res, &lc)?;
    Ok(if (m * (m - 1) / 2) % 2 == 1 { q.neg() } else { q })
}

fn lc_divide<R: Ring>(res: &Poly<R>, lc: &Poly<R>) -> Result<Poly<R>> {
    if let Some(inv) = lc.inv() {
        return Ok(res.mul(&inv));
    }
    res.div_exact(lc)
        .ok_or_else(|| Error::Internal("leading coefficient does not divide the resultant".into()))
}

fn check_disc_input<R: Ring>(f: &Poly<R>, var: &str) -> Result<()> {
    match f.degree_in(var) {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(Error::DegenerateInput(format!("polynomial is constant in {var}"))),
    }
}

pub fn discriminant<R: Ring>(f: &Poly<R>, var: &str) -> Result<Poly<R>> {
    check_disc_input(f, var)?;
    let res = resultant(f, &f.derivative(var), var)?;
    disc_from_res(f, var, res)
}

pub fn discriminant_q(f: &Poly<Q>, var: &str) -> Result<Poly<Q>> {
    check_disc_input(f, var)?;
    let res = resultant_q(f, &f.derivative(var), var)?;
    disc_from_res(f, var, res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly<Q> {
        Poly::var(n)
    }

    #[test]
    fn linear_and_evaluation_cases() {
        let t = v("t");
        assert_eq!(resultant(&(&t - v("a")), &(&t - v("b")), "t").unwrap(), v("a") - v("b"));
        let r = resultant(&(t.pow(2) - v("x")), &(&t - Poly::int(2)), "t").unwrap();
        assert_eq!(r, Poly::int(4) - v("x"));
    }

    #[test]
    fn cubic_discriminant() {
        let x = v("x");
        let f = x.pow(3) + v("b") * &x - v("c");
        let d = discriminant(&f, "x").unwrap();
        assert_eq!(d, Poly::int(-4) * v("b").pow(3) - Poly::int(27) * v("c").pow(2));
        assert_eq!(discriminant_q(&f, "x").unwrap(), d);
        let t = v("t");
        let q = t.pow(2) - &x + v("u");
        assert_eq!(discriminant(&q, "t").unwrap(), Poly::int(4) * (&x - v("u")));
        let rep = (&t - Poly::int(1)).pow(2) * (&t + Poly::int(2));
        assert!(discriminant(&rep, "t").unwrap().is_zero());
    }

    #[test]
    fn missing_variable_is_degenerate() {
        assert!(matches!(
            resultant(&v("a"), &v("b"), "t"),
            Err(Error::DegenerateInput(_))
        ));
        assert!(discriminant(&v("a"), "t").is_err());
    }
}
