//! Truncated Laurent/Puiseux series `Σ c_k v^{k/ram} + O(v^trunc)`.
//!
//! One generic type serves exact coefficients (Q, polynomials in
//! parameters) and complex floating coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::ring::{int, q_sqrt, rat, Q, Ring};
use super::univariate::{self, complex_roots_with_multiplicity};
use crate::error::{Error, Result};

/// Coefficient rings usable in series and Newton–Puiseux iteration.
pub trait SeriesCoeff: Ring {
    /// Zero test tolerant of floating noise relative to `scale`.
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64;
    /// Principal square root: the positive rational root for exact values,
    /// the root with positive leading coefficient for monomials, the
    /// principal branch for complex numbers.
    fn sqrt_coeff(&self) -> Option<Self>;
    /// Roots with multiplicity of `Σ p[i] X^i`.
    fn poly_roots(p: &[Self]) -> Result<Vec<(Self, usize)>>;
    /// `exp(2πi k / e)` if it exists in the ring.
    fn root_of_unity(e: u32, k: u32) -> Option<Self>;
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

fn small_root_of_unity<R: Ring>(e: u32, k: u32) -> Option<R> {
    match (e, k % e.max(1)) {
        (1, _) => Some(R::one()),
        (2, 0) => Some(R::one()),
        (2, 1) => Some(R::one().neg()),
        (_, 0) => Some(R::one()),
        _ => None,
    }
}

impl SeriesCoeff for Q {
    fn magnitude(&self) -> f64 {
        super::ring::q_to_f64(&self.abs())
    }
    fn sqrt_coeff(&self) -> Option<Self> {
        q_sqrt(self)
    }
    fn poly_roots(p: &[Self]) -> Result<Vec<(Self, usize)>> {
        let d = univariate::degree(p).unwrap_or(0);
        let roots = univariate::rational_roots(p);
        let found: usize = roots.iter().map(|r| r.1).sum();
        if found < d {
            return Err(Error::Branch(
                "characteristic polynomial has non-rational roots; use complex coefficients".into(),
            ));
        }
        Ok(roots)
    }
    fn root_of_unity(e: u32, k: u32) -> Option<Self> {
        small_root_of_unity(e, k)
    }
}

impl SeriesCoeff for Poly<Q> {
    fn magnitude(&self) -> f64 {
        self.terms()
            .map(|(_, c)| super::ring::q_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
    fn sqrt_coeff(&self) -> Option<Self> {
        if self.num_terms() != 1 {
            return None;
        }
        let (f, c) = self.named_terms().pop()?;
        if f.iter().any(|(_, k)| k % 2 != 0) {
            return None;
        }
        let r = q_sqrt(&c)?;
        let half: Vec<(&str, i32)> = f.iter().map(|(v, k)| (v.as_str(), k / 2)).collect();
        Some(Poly::monomial(r, &half))
    }
    fn poly_roots(p: &[Self]) -> Result<Vec<(Self, usize)>> {
        let d = p.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        if let Some(consts) = p.iter().map(|c| c.as_constant()).collect::<Option<Vec<Q>>>() {
            return Ok(Q::poly_roots(&consts)?
                .into_iter()
                .map(|(r, m)| (Poly::constant(r), m))
                .collect());
        }
        let low = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut out = Vec::new();
        if low > 0 {
            out.push((Poly::zero(), low));
        }
        let lead_inv = p[d].inv();
        match (d - low, lead_inv) {
            (1, Some(li)) => out.push((p[low].neg().mul(&li), 1)),
            (2, Some(li)) if p[low + 1].is_zero() => {
                let sq = p[low].neg().mul(&li);
                let r = sq.sqrt_coeff().ok_or_else(|| {
                    Error::Branch(format!("root sqrt({sq}) is not a monomial"))
                })?;
                out.push((r.neg(), 1));
                out.push((r, 1));
            }
            _ => {
                return Err(Error::Branch(
                    "parameter-dependent roots beyond linear/binomial case".into(),
                ))
            }
        }
        Ok(out)
    }
    fn root_of_unity(e: u32, k: u32) -> Option<Self> {
        small_root_of_unity(e, k)
    }
}

impl SeriesCoeff for Complex64 {
    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-11 * scale.max(1.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn sqrt_coeff(&self) -> Option<Self> {
        Some(self.sqrt())
    }
    fn poly_roots(p: &[Self]) -> Result<Vec<(Self, usize)>> {
        Ok(complex_roots_with_multiplicity(p))
    }
    fn root_of_unity(e: u32, k: u32) -> Option<Self> {
        Some(Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * k as f64 / e as f64,
        ))
    }
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol * (1.0 + self.norm().max(other.norm()))
    }
}

#[derive(Clone, PartialEq)]
pub struct Series<C: SeriesCoeff> {
    var: String,
    ram: u32,
    terms: BTreeMap<i64, C>,
    trunc: Option<Rational64>,
}

pub type PuiseuxSeries = Series<Poly<Q>>;

fn lcm(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

fn min_opt(a: Option<Rational64>, b: Option<Rational64>) -> Option<Rational64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: SeriesCoeff> Series<C> {
    pub fn zero(var: &str) -> Self {
        Series {
            var: var.to_string(),
            ram: 1,
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    /// The zero series known only up to `O(var^order)`.
    pub fn big_o(var: &str, order: Rational64) -> Self {
        Series {
            trunc: Some(order),
            ..Self::zero(var)
        }
    }

    pub fn constant(var: &str, c: C) -> Self {
        Self::monomial(var, c, Rational64::zero())
    }

    pub fn monomial(var: &str, c: C, exp: Rational64) -> Self {
        let mut s = Self::zero(var);
        s.ram = *exp.denom() as u32;
        if !c.is_zero() {
            s.terms.insert(*exp.numer(), c);
        }
        s
    }

    pub fn from_terms(var: &str, terms: impl IntoIterator<Item = (Rational64, C)>, trunc: Option<Rational64>) -> Self {
        let mut s = Self::zero(var);
        for (e, c) in terms {
            s = s.add(&Self::monomial(var, c, e));
        }
        s.trunc = trunc;
        s.normalized()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn truncation(&self) -> Option<Rational64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Stored terms as `(exponent, coefficient)` in increasing exponent.
    pub fn terms(&self) -> Vec<(Rational64, C)> {
        self.terms
            .iter()
            .map(|(k, c)| (Rational64::new(*k, self.ram as i64), c.clone()))
            .collect()
    }

    pub fn coeff(&self, e: Rational64) -> C {
        let k = e * Rational64::from_integer(self.ram as i64);
        if !k.is_integer() {
            return C::zero();
        }
        self.terms.get(&k.to_integer()).cloned().unwrap_or_else(C::zero)
    }

    /// Exponent of the lowest stored nonzero term.
    pub fn valuation(&self) -> Option<Rational64> {
        self.terms
            .keys()
            .next()
            .map(|k| Rational64::new(*k, self.ram as i64))
    }

    pub fn leading(&self) -> Option<(Rational64, C)> {
        self.terms
            .iter()
            .next()
            .map(|(k, c)| (Rational64::new(*k, self.ram as i64), c.clone()))
    }

    /// Lower bound on the valuation: the first term, or the truncation when
    /// nothing is known.
    fn val_bound(&self) -> Option<Rational64> {
        self.valuation().or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn rescaled(&self, ram: u32) -> BTreeMap<i64, C> {
        let f = (ram / self.ram) as i64;
        self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect()
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        if let Some(t) = self.trunc {
            let ram = self.ram as i64;
            self.terms
                .retain(|k, _| Rational64::new(*k, ram) < t);
        }
        let mut g = self.ram as i64;
        for k in self.terms.keys() {
            g = g.gcd(k);
        }
        if g > 1 {
            self.terms = self.terms.into_iter().map(|(k, c)| (k / g, c)).collect();
            self.ram /= g as u32;
        }
        self
    }

    pub fn truncate(&self, order: Rational64) -> Self {
        let mut s = self.clone();
        s.trunc = min_opt(s.trunc, Some(order));
        s.normalized()
    }

    pub fn add(&self, o: &Self) -> Self {
        let ram = lcm(self.ram, o.ram);
        let mut terms = self.rescaled(ram);
        for (k, c) in o.rescaled(ram) {
            match terms.get_mut(&k) {
                Some(x) => *x = x.add(&c),
                None => {
                    terms.insert(k, c);
                }
            }
        }
        Series {
            var: self.var.clone(),
            ram,
            terms,
            trunc: min_opt(self.trunc, o.trunc),
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Series {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            terms: self.terms.iter().map(|(k, x)| (*k, x.mul(c))).collect(),
            ..self.clone()
        }
        .normalized()
    }

    /// Multiplies by `var^e`.
    pub fn shift(&self, e: Rational64) -> Self {
        let ram = lcm(self.ram, *e.denom() as u32);
        let off = (e * Rational64::from_integer(ram as i64)).to_integer();
        Series {
            var: self.var.clone(),
            ram,
            terms: self.rescaled(ram).into_iter().map(|(k, c)| (k + off, c)).collect(),
            trunc: self.trunc.map(|t| t + e),
        }
        .normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let trunc = match (self.trunc, o.trunc) {
            (None, None) => None,
            _ => {
                let a = self.trunc.zip(o.val_bound()).map(|(t, v)| t + v);
                let b = o.trunc.zip(self.val_bound()).map(|(t, v)| t + v);
                match (a, b) {
                    (None, None) if self.is_zero() || o.is_zero() => None,
                    (x, y) => min_opt(x, y),
                }
            }
        };
        let ram = lcm(self.ram, o.ram);
        let a = self.rescaled(ram);
        let b = o.rescaled(ram);
        let limit = trunc.map(|t| t * Rational64::from_integer(ram as i64));
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let k = ka + kb;
                if limit.is_some_and(|l| Rational64::from_integer(k) >= l) {
                    break;
                }
                let p = ca.mul(cb);
                match terms.get_mut(&k) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        terms.insert(k, p);
                    }
                }
            }
        }
        Series {
            var: self.var.clone(),
            ram,
            terms,
            trunc,
        }
        .normalized()
    }

    pub fn map_coeffs<D: SeriesCoeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            var: self.var.clone(),
            ram: self.ram,
            terms: self.terms.iter().map(|(k, c)| (*k, f(c))).collect(),
            trunc: self.trunc,
        }
        .normalized()
    }

    /// `(1 + r)^α` for `val(r) > 0`, keeping terms below `prec`.
    fn binomial(r: &Self, alpha: &Q, prec: Rational64) -> Self {
        let var = r.var.clone();
        let one = Self::constant(&var, C::one()).truncate(prec);
        let Some(vr) = r.valuation() else {
            return one;
        };
        assert!(vr > Rational64::zero(), "binomial series needs positive valuation");
        let r = r.truncate(prec);
        let mut acc = one.clone();
        let mut power = one;
        let mut coef = int(1);
        let mut k = 0i64;
        loop {
            k += 1;
            if vr * Rational64::from_integer(k) >= prec {
                break;
            }
            coef = coef * (alpha - Q::from_integer((k - 1).into())) / Q::from_integer(k.into());
            power = power.mul(&r);
            acc = acc.add(&power.scale(&C::from_rational(&coef)));
        }
        acc
    }

    /// Relative precision `trunc − valuation`, or `default` for exact series.
    fn rel_prec(&self, default: Option<Rational64>) -> Result<Rational64> {
        let v = self.valuation().ok_or_else(|| Error::Branch("series is zero".into()))?;
        match (self.trunc, default) {
            (Some(t), Some(d)) => Ok((t - v).min(d)),
            (Some(t), None) => Ok(t - v),
            (None, Some(d)) => Ok(d),
            (None, None) => {
                if self.terms.len() == 1 {
                    Ok(Rational64::from_integer(i64::MAX / 4))
                } else {
                    Err(Error::NeedsHigherOrder(
                        "exact non-monomial series needs an explicit order".into(),
                    ))
                }
            }
        }
    }

    /// `self^α` for rational α, with `rel` relative precision if the series
    /// is exact.
    fn power_q(&self, alpha: &Q, rel: Option<Rational64>) -> Result<Self> {
        let (v, c0) = self.leading().ok_or_else(|| Error::Branch("power of zero series".into()))?;
        let p = self.rel_prec(rel)?;
        let lead = if alpha == &int(1).neg() {
            c0.inv()
                .ok_or_else(|| Error::Branch("leading coefficient not invertible".into()))?
        } else if alpha == &rat(1, 2) {
            c0.sqrt_coeff()
                .ok_or_else(|| Error::Branch(format!("leading coefficient {} is not a square", c0.canonical())))?
        } else if alpha == &rat(-1, 2) {
            c0.sqrt_coeff()
                .and_then(|s| s.inv())
                .ok_or_else(|| Error::Branch(format!("leading coefficient {} is not an invertible square", c0.canonical())))?
        } else {
            return Err(Error::Domain("only exponents -1, 1/2, -1/2 are supported".into()));
        };
        let c0_inv = c0
            .inv()
            .ok_or_else(|| Error::Branch("leading coefficient not invertible".into()))?;
        // self = c0 v^e (1 + r)
        let r = self
            .shift(-v)
            .scale(&c0_inv)
            .sub(&Self::constant(&self.var, C::one()));
        let r = if self.trunc.is_none() { r.truncate(p) } else { r };
        let big = p >= Rational64::from_integer(i64::MAX / 8);
        let unit = if r.is_zero() && big {
            Self::constant(&self.var, C::one())
        } else {
            Self::binomial(&r, alpha, p)
        };
        let a = Rational64::new(
            alpha.numer().to_i64().unwrap(),
            alpha.denom().to_i64().unwrap(),
        );
        Ok(unit.scale(&lead).shift(v * a))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.power_q(&int(1).neg(), None)
    }

    /// Inverse of an exact series, correct through relative order `rel`.
    pub fn inverse_rel(&self, rel: Rational64) -> Result<Self> {
        self.power_q(&int(1).neg(), Some(rel))
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.power_q(&rat(1, 2), None)
    }

    pub fn sqrt_rel(&self, rel: Rational64) -> Result<Self> {
        self.power_q(&rat(1, 2), Some(rel))
    }

    pub fn inv_sqrt(&self) -> Result<Self> {
        self.power_q(&rat(-1, 2), None)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::constant(&self.var, C::one());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// d/dvar, exponentwise.
    pub fn derivative(&self) -> Self {
        let ram = self.ram as i64;
        Series {
            var: self.var.clone(),
            ram: self.ram,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - ram, c.mul(&C::from_rational(&Q::new((*k).into(), ram.into())))))
                .collect(),
            trunc: self.trunc.map(|t| t - Rational64::one()),
        }
        .normalized()
    }

    /// Substitutes `var ↦ ζ·var` for ζ = exp(2πi k/ram): the Galois conjugate.
    pub fn conjugate(&self, k: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let z = C::root_of_unity(self.ram, (e.rem_euclid(self.ram as i64) as u32 * k) % self.ram)?;
            terms.insert(*e, c.mul(&z));
        }
        Some(
            Series {
                terms,
                ..self.clone()
            }
            .normalized(),
        )
    }

    /// True when all stored terms below `order` agree.
    pub fn agrees_with(&self, o: &Self, order: Rational64, tol: f64) -> bool {
        let a = self.truncate(order);
        let b = o.truncate(order);
        let ram = lcm(a.ram, b.ram);
        let ta = a.rescaled(ram);
        let tb = b.rescaled(ram);
        let keys: std::collections::BTreeSet<i64> = ta.keys().chain(tb.keys()).copied().collect();
        keys.into_iter().all(|k| {
            let x = ta.get(&k).cloned().unwrap_or_else(C::zero);
            let y = tb.get(&k).cloned().unwrap_or_else(C::zero);
            x.close_to(&y, tol)
        })
    }

    /// Largest coefficient magnitude, used as a noise scale.
    pub fn scale_hint(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Drops coefficients that are numerically negligible.
    pub fn cleaned(&self, scale: f64) -> Self {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.negligible(scale))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            ..self.clone()
        }
        .normalized()
    }
}

fn exp_string(var: &str, e: Rational64) -> String {
    if e.is_integer() {
        if e == Rational64::one() {
            var.to_string()
        } else {
            format!("{var}^{}", e.numer())
        }
    } else {
        format!("{var}^({}/{})", e.numer(), e.denom())
    }
}

impl<C: SeriesCoeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms() {
            let mut cs = c.canonical();
            if c.needs_parens() {
                cs = format!("({cs})");
            }
            let term = if e.is_zero() {
                cs
            } else if cs == "1" {
                exp_string(&self.var, e)
            } else if cs == "-1" {
                format!("-{}", exp_string(&self.var, e))
            } else {
                format!("{cs}*{}", exp_string(&self.var, e))
            };
            parts.push(term);
        }
        if let Some(t) = self.trunc {
            parts.push(format!("O({})", exp_string(&self.var, t)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        write!(f, "{out}")
    }
}

impl<C: SeriesCoeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

pub fn r64(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::int;

    fn p(n: &str) -> Poly<Q> {
        Poly::var(n)
    }

    fn mono(c: Poly<Q>, e: i64) -> PuiseuxSeries {
        Series::monomial("ξ", c, r64(e, 1))
    }

    fn inner() -> PuiseuxSeries {
        mono(Poly::one(), 0)
            .add(&mono(p("b"), 4))
            .sub(&mono(p("c"), 6))
    }

    #[test]
    fn sqrt_of_weierstrass_factor() {
        let s = inner().sqrt_rel(r64(13, 1)).unwrap();
        let half = Poly::rational(&rat(1, 2));
        let expect = [
            (0, Poly::one()),
            (4, &half * p("b")),
            (6, -(&half * p("c"))),
            (8, Poly::rational(&rat(-1, 8)) * p("b").pow(2)),
            (10, Poly::rational(&rat(1, 4)) * p("b") * p("c")),
            (12, Poly::rational(&rat(-1, 16)) * (Poly::int(2) * p("c").pow(2) - p("b").pow(3))),
        ];
        for (e, c) in expect {
            assert_eq!(s.coeff(r64(e, 1)), c, "coefficient of ξ^{e}");
        }
        let sq = s.mul(&s);
        assert!(sq.sub(&inner()).is_zero());
    }

    #[test]
    fn inverse_sqrt_of_weierstrass_factor() {
        let s = inner().inv_sqrt_rel_for_test(r64(13, 1));
        assert_eq!(s.coeff(r64(8, 1)), Poly::rational(&rat(3, 8)) * p("b").pow(2));
        assert_eq!(
            s.coeff(r64(12, 1)),
            Poly::rational(&rat(1, 16)) * (Poly::int(6) * p("c").pow(2) - Poly::int(5) * p("b").pow(3))
        );
    }

    impl PuiseuxSeries {
        fn inv_sqrt_rel_for_test(&self, rel: Rational64) -> Self {
            self.power_q(&rat(-1, 2), Some(rel)).unwrap()
        }
    }

    #[test]
    fn fractional_exponents_and_ramification() {
        let s: Series<Q> = Series::monomial("ξ", int(4), r64(1, 1));
        let r = s.sqrt().unwrap();
        assert_eq!(r.ramification(), 2);
        assert_eq!(r.coeff(r64(1, 2)), int(2));
        let back = r.mul(&r);
        assert_eq!(back, s);
        assert_eq!(back.ramification(), 1);
        assert!(Series::<Q>::monomial("ξ", int(2), r64(0, 1)).sqrt().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let s: Series<Q> = Series::from_terms("ξ", [(r64(-1, 1), int(1)), (r64(1, 1), int(3))], None);
        let inv = s.inverse_rel(r64(8, 1)).unwrap();
        let one = s.mul(&inv);
        assert_eq!(one.coeff(r64(0, 1)), int(1));
        assert_eq!(one.terms().len(), 1);
        assert_eq!(one.truncation(), Some(r64(8, 1)));
    }
}
