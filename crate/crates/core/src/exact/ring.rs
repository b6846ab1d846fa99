//! Coefficient rings shared by polynomials, series and matrices.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in canonical reduced form.
pub type Q = BigRational;
pub type ExactScalar = Q;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Commutative ring with unit. Fields return `Some` from [`Ring::inv`] for
/// every nonzero element.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Q) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Numeric value, if the element is a plain number.
    fn to_complex(&self) -> Option<Complex64>;
    /// Canonical text for the coefficient, used in polynomial printing.
    fn canonical(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    /// True when the canonical text needs parentheses inside a product.
    fn needs_parens(&self) -> bool {
        false
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_complex(&self) -> Option<Complex64> {
        Some(Complex64::new(q_to_f64(self), 0.0))
    }
    fn canonical(&self) -> String {
        q_string(self)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Q) -> Self {
        Complex64::new(q_to_f64(q), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn to_complex(&self) -> Option<Complex64> {
        Some(*self)
    }
    fn canonical(&self) -> String {
        format!("[{:e}, {:e}]", self.re, self.im)
    }
}

pub fn q_to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator beyond f64 range individually
        let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
        let n = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `"p/q"`, or `"p"` for integers.
pub fn q_string(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn q_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Parses `"p/q"`, `"p"` or a decimal like `"0.25"` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = Q::new(n, d);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(q_string(&rat(6, 3)), "2");
        assert_eq!(q_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_q("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_q("7"), Some(int(7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(q_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(q_sqrt(&rat(2, 1)), None);
        assert_eq!(q_sqrt(&rat(-1, 1)), None);
    }
}
