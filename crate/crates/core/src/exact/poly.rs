//! Sparse multivariate (Laurent) polynomials over a [`Ring`].
//!
//! Every polynomial carries its own ordered variable list. Variables are kept
//! in one global canonical order, so two polynomials that are equal as
//! expressions compare equal structurally and print identically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::ring::{Q, Ring};
use crate::error::{Error, Result};

const FIXED_ORDER: [&str; 8] = ["t", "x", "y", "z", "w", "s", "v", "ξ"];

/// Sort key of a variable name: the fixed names first, then the rest
/// alphabetically.
pub fn var_key(name: &str) -> (usize, &str) {
    match FIXED_ORDER.iter().position(|v| *v == name) {
        Some(i) => (i, ""),
        None => (FIXED_ORDER.len(), name),
    }
}

fn sort_vars(vars: &mut Vec<String>) {
    vars.sort_by(|a, b| var_key(a).cmp(&var_key(b)));
    vars.dedup();
}

#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, R>,
}

pub type SparsePoly = Poly<Q>;

impl<R: Ring> Poly<R> {
    pub fn zero() -> Self {
        Poly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }

    pub fn rational(q: &Q) -> Self {
        Self::constant(R::from_rational(q))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(R::one(), &[(name, 1)])
    }

    /// `coeff * Π name^exp`.
    pub fn monomial(coeff: R, factors: &[(&str, i32)]) -> Self {
        let mut vars: Vec<String> = factors.iter().map(|(n, _)| n.to_string()).collect();
        sort_vars(&mut vars);
        let mut exp = vec![0; vars.len()];
        for (n, e) in factors {
            let i = vars.iter().position(|v| v == n).unwrap();
            exp[i] += e;
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Poly { vars, terms }.normalized()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &R)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Terms as `(name, exponent)` lists, skipping zero exponents.
    pub fn named_terms(&self) -> Vec<(Vec<(String, i32)>, R)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let f = self
                    .vars
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k != 0)
                    .map(|(v, &k)| (v.clone(), k))
                    .collect();
                (f, c.clone())
            })
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<R> {
        if self.terms.is_empty() {
            return Some(R::zero());
        }
        if self.vars.is_empty() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                let e2 = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, u)| **u)
                    .map(|(x, _)| *x)
                    .collect();
                (e2, c)
            })
            .collect();
        Poly { vars, terms }
    }

    /// Re-express over a superset of variables (already canonically sorted).
    fn lifted(&self, vars: &[String]) -> BTreeMap<Vec<i32>, R> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).unwrap())
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    e2[map[i]] = k;
                }
                (e2, c.clone())
            })
            .collect()
    }

    fn union_vars(&self, o: &Self) -> Vec<String> {
        let mut vars: Vec<String> = self.vars.iter().chain(o.vars.iter()).cloned().collect();
        sort_vars(&mut vars);
        vars
    }

    pub fn add_poly(&self, o: &Self) -> Self {
        if self.vars == o.vars {
            let mut terms = self.terms.clone();
            for (e, c) in &o.terms {
                accumulate(&mut terms, e.clone(), c);
            }
            return Poly {
                vars: self.vars.clone(),
                terms,
            }
            .normalized();
        }
        let vars = self.union_vars(o);
        let mut terms = self.lifted(&vars);
        for (e, c) in o.lifted(&vars) {
            accumulate(&mut terms, e, &c);
        }
        Poly { vars, terms }.normalized()
    }

    pub fn neg_poly(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub_poly(&self, o: &Self) -> Self {
        self.add_poly(&o.neg_poly())
    }

    pub fn mul_poly(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let vars = self.union_vars(o);
        let a = self.lifted(&vars);
        let b = o.lifted(&vars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, &ca.mul(cb));
            }
        }
        Poly { vars, terms }.normalized()
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Largest exponent of `var`, or `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap(),
            None => 0,
        })
    }

    pub fn min_degree_in(&self, var: &str) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).min().unwrap(),
            None => 0,
        })
    }

    /// Total degree (sum of exponents) of the leading-degree term.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Splits by powers of `var`: `self = Σ_k out[k] · var^k`.
    pub fn coeffs_in(&self, var: &str) -> BTreeMap<i32, Poly<R>> {
        let mut out: BTreeMap<i32, Poly<R>> = BTreeMap::new();
        let Some(i) = self.var_index(var) else {
            if !self.is_zero() {
                out.insert(0, self.clone());
            }
            return out;
        };
        let rest: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut raw: BTreeMap<i32, BTreeMap<Vec<i32>, R>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(i);
            raw.entry(k).or_default().insert(e2, c.clone());
        }
        for (k, terms) in raw {
            out.insert(
                k,
                Poly {
                    vars: rest.clone(),
                    terms,
                }
                .normalized(),
            );
        }
        out
    }

    pub fn coeff_of(&self, var: &str, k: i32) -> Poly<R> {
        self.coeffs_in(var).remove(&k).unwrap_or_else(Self::zero)
    }

    /// Rebuilds `Σ_k coeffs[k] · var^k`.
    pub fn from_coeffs_in(var: &str, coeffs: &BTreeMap<i32, Poly<R>>) -> Self {
        let v = Self::var(var);
        let mut acc = Self::zero();
        for (k, c) in coeffs {
            acc = acc.add_poly(&c.mul_poly(&v.pow_signed(*k)));
        }
        acc
    }

    /// `var^k` for any integer `k` (Laurent monomial when `k < 0`).
    pub fn pow_signed(&self, k: i32) -> Self {
        if k >= 0 {
            return self.pow(k as u32);
        }
        let inv = self.monomial_inverse().expect("negative power of a non-monomial");
        inv.pow((-k) as u32)
    }

    /// Inverse of a monomial with invertible coefficient.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let ci = c.inv()?;
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x).collect(), ci);
        Some(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitutes `var := value`. Negative powers of `var` require `value` to
    /// be an invertible monomial.
    pub fn subs(&self, var: &str, value: &Poly<R>) -> Result<Self> {
        if !self.has_var(var) {
            return Ok(self.clone());
        }
        let parts = self.coeffs_in(var);
        let inv = value.monomial_inverse();
        let mut acc = Self::zero();
        let mut pos_cache: BTreeMap<i32, Poly<R>> = BTreeMap::new();
        for (k, c) in parts {
            let p = if k >= 0 {
                pos_cache
                    .entry(k)
                    .or_insert_with(|| value.pow(k as u32))
                    .clone()
            } else {
                match &inv {
                    Some(i) => i.pow((-k) as u32),
                    None => {
                        return Err(Error::Domain(format!(
                            "negative power of {var} under non-monomial substitution"
                        )))
                    }
                }
            };
            acc = acc.add_poly(&c.mul_poly(&p));
        }
        Ok(acc)
    }

    /// Simultaneous substitution of several variables.
    pub fn subs_many(&self, subs: &[(&str, Poly<R>)]) -> Result<Self> {
        // rename first so that substituted values may mention the same names
        let mut cur = self.clone();
        let tmp: Vec<String> = (0..subs.len()).map(|i| format!("\u{1}tmp{i}")).collect();
        for ((v, _), t) in subs.iter().zip(&tmp) {
            cur = cur.rename(v, t);
        }
        for ((_, val), t) in subs.iter().zip(&tmp) {
            cur = cur.subs(t, val)?;
        }
        Ok(cur)
    }

    pub fn rename(&self, from: &str, to: &str) -> Self {
        if !self.has_var(from) {
            return self.clone();
        }
        let mut acc = Self::zero();
        for (f, c) in self.named_terms() {
            let factors: Vec<(&str, i32)> = f
                .iter()
                .map(|(v, k)| (if v == from { to } else { v.as_str() }, *k))
                .collect();
            acc = acc.add_poly(&Self::monomial(c, &factors));
        }
        acc
    }

    /// Partial evaluation at numeric values.
    pub fn eval_vars(&self, values: &[(&str, R)]) -> Self {
        let mut cur = self.clone();
        for (v, x) in values {
            cur = cur
                .subs(v, &Poly::constant(x.clone()))
                .expect("numeric substitution with zero value at a negative power");
        }
        cur
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.var_index(var) else {
            return Self::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            accumulate(&mut terms, e2, &c.mul(&R::from_i64(e[i] as i64)));
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
        .normalized()
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
        }
        .normalized()
    }

    /// Monomial `Π v^{min exponent}` dividing every term.
    fn min_monomial(&self) -> Vec<i32> {
        (0..self.vars.len())
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    fn shifted(&self, by: &[i32]) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Laurent monomials are units, so they are cleared before dividing.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let vars = self.union_vars(d);
        let f = Poly {
            vars: vars.clone(),
            terms: self.lifted(&vars),
        };
        let g = Poly {
            vars: vars.clone(),
            terms: d.lifted(&vars),
        };
        let mf = f.min_monomial();
        let mg = g.min_monomial();
        let f0 = f.shifted(&mf.iter().map(|x| -x).collect::<Vec<_>>());
        let g0 = g.shifted(&mg.iter().map(|x| -x).collect::<Vec<_>>());
        let (lg_e, lg_c) = g0.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let lg_inv = lg_c.inv()?;
        let mut r = f0.terms.clone();
        let mut q: BTreeMap<Vec<i32>, R> = BTreeMap::new();
        while let Some((e, c)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lg_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<i32> = e.iter().zip(&lg_e).map(|(a, b)| a - b).collect();
            let qc = c.mul(&lg_inv);
            for (ge, gc) in &g0.terms {
                let te: Vec<i32> = ge.iter().zip(&qe).map(|(a, b)| a + b).collect();
                accumulate(&mut r, te, &gc.mul(&qc).neg());
            }
            r.retain(|_, c| !c.is_zero());
            accumulate(&mut q, qe, &qc);
        }
        let shift: Vec<i32> = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Some(
            Poly {
                vars,
                terms: q,
            }
            .shifted(&shift)
            .normalized(),
        )
    }

    /// Remainder of `self` modulo a polynomial `m` that is monic in `var`.
    pub fn rem_monic(&self, m: &Self, var: &str) -> Self {
        let d = m.degree_in(var).unwrap_or(0);
        assert!(d >= 1 && m.coeff_of(var, d).as_constant().is_some_and(|c| c.is_one()), "modulus must be monic in {var}");
        let v = Self::var(var);
        let tail = m.sub_poly(&v.pow(d as u32));
        let mut r = self.clone();
        while let Some(k) = r.degree_in(var) {
            if k < d {
                break;
            }
            let lead = r.coeff_of(var, k);
            // var^k = var^(k-d) * (m - tail) ≡ -var^(k-d) * tail
            let shift = v.pow((k - d) as u32);
            r = r.sub_poly(&lead.mul_poly(&v.pow(k as u32)))
                .sub_poly(&lead.mul_poly(&shift).mul_poly(&tail));
        }
        r
    }

    /// Evaluates every variable; `None` if a variable is unassigned.
    pub fn eval_complex(&self, values: &BTreeMap<String, Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_complex()?;
            for (v, &k) in self.vars.iter().zip(e) {
                if k != 0 {
                    t *= values.get(v)?.powi(k);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn variables_set(&self) -> BTreeSet<String> {
        self.vars.iter().cloned().collect()
    }
}

impl Poly<Q> {
    pub fn to_complex_poly(&self) -> Poly<Complex64> {
        self.map_coeffs(|q| q.to_complex().unwrap())
    }
}

fn accumulate<R: Ring>(terms: &mut BTreeMap<Vec<i32>, R>, e: Vec<i32>, c: &R) {
    match terms.get_mut(&e) {
        Some(x) => {
            *x = x.add(c);
            if x.is_zero() {
                terms.remove(&e);
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(e, c.clone());
            }
        }
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_poly(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_poly(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_poly(o)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn from_rational(q: &Q) -> Self {
        Poly::rational(q)
    }
    fn inv(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.inv())
            .map(Poly::constant)
    }
    fn to_complex(&self) -> Option<Complex64> {
        self.as_constant().and_then(|c| c.to_complex())
    }
    fn canonical(&self) -> String {
        self.to_string()
    }
    fn needs_parens(&self) -> bool {
        self.terms.len() > 1 || self.terms.values().any(|c| c.needs_parens())
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let mut cs = c.canonical();
            if c.needs_parens() {
                cs = format!("({cs})");
            }
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !c.needs_parens() => (true, rest.to_string()),
                _ => (false, cs),
            };
            let text = if mono.is_empty() {
                body
            } else if body == "1" {
                mono.join("*")
            } else {
                format!("{body}*{}", mono.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{text}")?,
                (true, false) => write!(f, "{text}")?,
                (false, true) => write!(f, " - {text}")?,
                (false, false) => write!(f, " + {text}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<R: Ring> $tr<&Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                self.$imp(o)
            }
        }
        impl<R: Ring> $tr<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                self.$imp(&o)
            }
        }
        impl<R: Ring> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                self.$imp(o)
            }
        }
        impl<R: Ring> $tr<Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                self.$imp(&o)
            }
        }
    };
}

poly_binop!(Add, add, add_poly);
poly_binop!(Sub, sub, sub_poly);
poly_binop!(Mul, mul, mul_poly);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_poly()
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{int, rat};

    fn v(n: &str) -> SparsePoly {
        Poly::var(n)
    }

    #[test]
    fn canonical_printing_order() {
        let t = v("t");
        let x = v("x");
        let y = v("y");
        let p = t.pow(4) - Poly::int(6) * &x * t.pow(2) + Poly::int(8) * &y * &t - Poly::int(3) * x.pow(2);
        assert_eq!(p.to_string(), "t^4 - 6*t^2*x + 8*t*y - 3*x^2");
        let q = Poly::rational(&rat(-1, 2)) * v("b") * v("y");
        assert_eq!(q.to_string(), "-1/2*y*b");
    }

    #[test]
    fn cancellation_drops_variables() {
        let a = v("x") + v("y");
        let b = a.clone() - v("y");
        assert_eq!(b, v("x"));
        assert_eq!(b.vars(), &["x".to_string()]);
    }

    #[test]
    fn exact_division() {
        let x = v("x");
        let y = v("y");
        let f = (&x - &y) * (&x + &y + Poly::int(2));
        assert_eq!(f.div_exact(&(&x - &y)), Some(&x + &y + Poly::int(2)));
        assert_eq!(f.div_exact(&(&x + Poly::int(1))), None);
        let z = v("z");
        let lz = (&z + Poly::var("mu") * z.pow_signed(-1)) * &x;
        assert_eq!(lz.div_exact(&x), Some(&z + Poly::var("mu") * z.pow_signed(-1)));
    }

    #[test]
    fn substitution_and_laurent() {
        let z = v("z");
        let w = &z + v("mu") * z.pow_signed(-1);
        let w2 = w.subs("z", &(-&z)).unwrap();
        assert_eq!(w2, -w);
        let p = v("x").pow(2) + Poly::int(1);
        assert_eq!(p.subs("x", &(v("t") + Poly::int(1))).unwrap(), v("t").pow(2) + Poly::int(2) * v("t") + Poly::int(2));
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let p = v("x") - Poly::int(2) * v("y");
        let q = p.subs_many(&[("x", v("y")), ("y", v("x"))]).unwrap();
        assert_eq!(q, v("y") - Poly::int(2) * v("x"));
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let p = v("t").pow(3) * v("x") - Poly::int(3) * v("t") + v("b");
        let parts = p.coeffs_in("t");
        assert_eq!(parts[&3], v("x"));
        assert_eq!(parts[&0], v("b"));
        assert_eq!(Poly::from_coeffs_in("t", &parts), p);
        assert_eq!(p.derivative("t"), Poly::int(3) * v("t").pow(2) * v("x") - Poly::int(3));
        assert_eq!(p.degree_in("t"), Some(3));
        assert_eq!(int(1), Ring::one());
    }
}
