//! The elliptic curve `E: y² = x³ + bx − c`, its expansions in the local
//! coordinate `ξ = x^{-1/2}` at infinity, and the pole basis `x_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::exact::series::{r64, Series};
use crate::exact::{discriminant, Poly, Q};

pub const XI: &str = "ξ";

/// Weierstrass data. `b` and `c` are polynomials so that the same code runs
/// with symbolic (`b`, `c` as variables) or rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurveModel {
    pub b: Poly<Q>,
    pub c: Poly<Q>,
    pub nodal: bool,
}

impl EllipticCurveModel {
    /// Fully symbolic curve with parameters `b`, `c`.
    pub fn symbolic() -> Self {
        EllipticCurveModel {
            b: Poly::var("b"),
            c: Poly::var("c"),
            nodal: false,
        }
    }

    /// Smooth curve; rejects a vanishing discriminant.
    pub fn new(b: Poly<Q>, c: Poly<Q>) -> Result<Self> {
        let e = EllipticCurveModel { b, c, nodal: false };
        if e.disc().is_zero() {
            return Err(Error::Nodal("discriminant vanishes; use EllipticCurveModel::nodal".into()));
        }
        Ok(e)
    }

    /// Singular curve, accepted only by the degeneration code paths.
    pub fn nodal(b: Poly<Q>, c: Poly<Q>) -> Result<Self> {
        let e = EllipticCurveModel { b, c, nodal: true };
        if !e.disc().is_zero() {
            return Err(Error::Domain("curve is smooth; nodal mode needs disc = 0".into()));
        }
        Ok(e)
    }

    /// `x³ + bx − c`.
    pub fn cubic(&self) -> Poly<Q> {
        let x = Poly::var("x");
        x.pow(3) + &self.b * &x - &self.c
    }

    /// Discriminant of the cubic, `−4b³ − 27c²`.
    pub fn disc(&self) -> Poly<Q> {
        discriminant(&self.cubic(), "x").expect("cubic has degree 3")
    }

    /// `1 + bξ⁴ − cξ⁶`, so that `y = ξ⁻³ · sqrt(this)`.
    fn inner(&self) -> Series<Poly<Q>> {
        Series::from_terms(
            XI,
            [
                (r64(0, 1), Poly::one()),
                (r64(4, 1), self.b.clone()),
                (r64(6, 1), -&self.c),
            ],
            None,
        )
    }

    /// `x = ξ⁻²`; the branch of ξ is fixed by this leading coefficient.
    pub fn expand_x(&self) -> Series<Poly<Q>> {
        Series::monomial(XI, Poly::one(), r64(-2, 1))
    }

    /// `y` through the `ξ^order` term.
    pub fn expand_y(&self, order: i64) -> Result<Series<Poly<Q>>> {
        if order < -3 {
            return Err(Error::Domain("expand_y needs order ≥ -3".into()));
        }
        let s = self.inner().sqrt_rel(r64(order + 4, 1))?;
        Ok(s.shift(r64(-3, 1)).truncate(r64(order + 1, 1)))
    }

    /// `y⁻¹` through the `ξ^order` term.
    pub fn expand_y_inverse(&self, order: i64) -> Result<Series<Poly<Q>>> {
        if order < 3 {
            return Err(Error::Domain("expand_y_inverse needs order ≥ 3".into()));
        }
        let s = self.inner().sqrt_rel(r64(order - 2, 1))?;
        let inv = s.inverse()?;
        Ok(inv.shift(r64(3, 1)).truncate(r64(order + 1, 1)))
    }

    /// Canonical form of a polynomial in `x, y` (other variables are carried
    /// along as coefficients) modulo `y² = x³ + bx − c`.
    pub fn reduce(&self, p: &Poly<Q>) -> FunctionFieldElement {
        let f = self.cubic();
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (k, coeff) in p.coeffs_in("y") {
            assert!(k >= 0, "negative powers of y are not polynomial");
            let term = coeff * f.pow((k / 2) as u32);
            if k % 2 == 0 {
                a = a + term;
            } else {
                b = b + term;
            }
        }
        FunctionFieldElement { a, b }
    }

    /// ξ-expansion of any polynomial in `x, y` (and other variables kept in
    /// the coefficients), correct through exponents below `order`.
    pub fn expand(&self, p: &Poly<Q>, order: i64) -> Result<Series<Poly<Q>>> {
        let el = self.reduce(p);
        let a = x_to_series(&el.a);
        let db = el.b.degree_in("x").unwrap_or(0) as i64;
        if el.b.is_zero() {
            return Ok(a.truncate(r64(order, 1)));
        }
        let y = self.expand_y(order + 2 * db)?;
        Ok(a.add(&x_to_series(&el.b).mul(&y)).truncate(r64(order, 1)))
    }

    /// The basis element `x_k = ξ^{-k} + O(ξ^{-1})`, k ≥ 2.
    pub fn xk(&self, k: i32) -> Result<FunctionFieldElement> {
        Ok(self.xk_basis(k)?.remove(&k).unwrap())
    }

    /// `x_2, …, x_kmax`, built by triangular elimination on pole orders.
    /// Only exponents −(k−1)…−2 are cleared; no constants are subtracted.
    pub fn xk_basis(&self, kmax: i32) -> Result<BTreeMap<i32, FunctionFieldElement>> {
        if kmax < 2 {
            return Err(Error::Domain(format!("x_k needs k ≥ 2, got {kmax}")));
        }
        let x = Poly::var("x");
        let y = Poly::var("y");
        let mut out: BTreeMap<i32, FunctionFieldElement> = BTreeMap::new();
        for k in 2..=kmax {
            let mut p = if k % 2 == 0 {
                x.pow((k / 2) as u32)
            } else {
                x.pow(((k - 3) / 2) as u32) * &y
            };
            let s = self.expand(&p, -1)?;
            for e in (2..k).rev() {
                let c = s.coeff(r64(-(e as i64), 1));
                if !c.is_zero() {
                    // x_e only touches ξ^{-e} and exponents ≥ -1
                    p = p - c * out[&e].to_poly();
                }
            }
            out.insert(k, self.reduce(&p));
        }
        Ok(out)
    }
}

fn x_to_series(p: &Poly<Q>) -> Series<Poly<Q>> {
    let terms: Vec<(Rational64, Poly<Q>)> = p
        .coeffs_in("x")
        .into_iter()
        .map(|(k, c)| (r64(-2 * k as i64, 1), c))
        .collect();
    Series::from_terms(XI, terms, None)
}

/// `A(x) + B(x)·y` in canonical reduced form.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionFieldElement {
    pub a: Poly<Q>,
    pub b: Poly<Q>,
}

impl FunctionFieldElement {
    pub fn to_poly(&self) -> Poly<Q> {
        &self.a + &self.b * Poly::var("y")
    }

    /// Pole order at ∞ with `x ~ ξ⁻²`, `y ~ ξ⁻³`; the two parts never cancel
    /// because their orders have different parity.
    pub fn pole_order(&self) -> i32 {
        let pa = self.a.degree_in("x").map(|d| 2 * d);
        let pb = self.b.degree_in("x").map(|d| 2 * d + 3);
        pa.into_iter().chain(pb).max().unwrap_or(0)
    }

    pub fn mul(&self, o: &Self, e: &EllipticCurveModel) -> Self {
        e.reduce(&(self.to_poly() * o.to_poly()))
    }
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    fn v(n: &str) -> Poly<Q> {
        Poly::var(n)
    }

    #[test]
    fn y_squared_is_the_cubic() {
        let e = EllipticCurveModel::symbolic();
        let y = e.expand_y(12).unwrap();
        let lhs = y.mul(&y);
        let rhs = e.expand(&e.cubic(), lhs.truncation().unwrap().to_integer()).unwrap();
        assert!(lhs.sub(&rhs).is_zero());
        let inv = e.expand_y_inverse(12).unwrap();
        let one = y.mul(&inv);
        assert_eq!(one.terms(), vec![(r64(0, 1), Poly::one())]);
    }

    #[test]
    fn trivial_curve_expansion_is_exact() {
        let e = EllipticCurveModel::nodal(Poly::zero(), Poly::zero()).unwrap();
        assert_eq!(e.expand_y(9).unwrap().terms(), vec![(r64(-3, 1), Poly::one())]);
    }

    #[test]
    fn reduction_rules() {
        let e = EllipticCurveModel::symbolic();
        assert_eq!(e.reduce(&v("y").pow(2)).to_poly(), e.cubic());
        assert_eq!(e.reduce(&v("y").pow(3)).to_poly(), e.cubic() * v("y"));
        let x3 = e.xk(3).unwrap();
        let sq = x3.mul(&x3, &e);
        let expect = e.xk(6).unwrap().to_poly() + v("b") * e.xk(2).unwrap().to_poly() - v("c");
        assert_eq!(sq.to_poly(), expect);
        assert_eq!(e.xk(11).unwrap().pole_order(), 11);
    }

    #[test]
    fn small_xk_entries() {
        let e = EllipticCurveModel::symbolic();
        let half = Poly::rational(&rat(1, 2));
        assert_eq!(e.xk(7).unwrap().to_poly(), v("x").pow(2) * v("y") - &half * v("b") * v("y"));
        assert!(e.xk(1).is_err());
    }
}
