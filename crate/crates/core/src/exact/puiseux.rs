//! Newton–Puiseux branches of `F(t, ξ) = Σ a_i(ξ) t^i = 0` near `ξ = 0`.

use num_integer::binomial;
use num_rational::Rational64;
use num_traits::Zero;

use super::poly::Poly;
use super::ring::Q;
use super::series::{Series, SeriesCoeff};
use crate::error::{Error, Result};

/// One Galois cycle of roots: a representative series and the number of
/// conjugate sheets it stands for.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch<C: SeriesCoeff> {
    pub series: Series<C>,
    pub ramification: u32,
}

struct State<C: SeriesCoeff> {
    prefix: Series<C>,
    gamma_last: Option<Rational64>,
    coeffs: Vec<Series<C>>,
    mult: usize,
}

#[derive(Clone, Copy)]
struct Pt {
    i: usize,
    v: Rational64,
    known: bool,
}

fn lower_hull(pts: &[Pt]) -> Vec<Pt> {
    let mut h: Vec<Pt> = Vec::new();
    for p in pts {
        while h.len() >= 2 {
            let a = h[h.len() - 2];
            let b = h[h.len() - 1];
            // keep b only if it lies strictly below the chord a–p
            let lhs = (b.v - a.v) * Rational64::from_integer((p.i - a.i) as i64);
            let rhs = (p.v - a.v) * Rational64::from_integer((b.i - a.i) as i64);
            if lhs >= rhs {
                h.pop();
            } else {
                break;
            }
        }
        h.push(*p);
    }
    h
}

/// Coefficients of `F(s + t)` as a polynomial in `t`, for a series `s`.
fn taylor_shift<C: SeriesCoeff>(a: &[Series<C>], s: &Series<C>) -> Vec<Series<C>> {
    let d = a.len() - 1;
    let var = a[0].var().to_string();
    let mut pw = vec![Series::constant(&var, C::one())];
    for k in 1..=d {
        let next = pw[k - 1].mul(s);
        pw.push(next);
    }
    (0..=d)
        .map(|j| {
            let mut acc = Series::zero(&var);
            for i in j..=d {
                if a[i].is_zero() && a[i].is_exact() {
                    continue;
                }
                let c = C::from_i64(binomial(i as i64, j as i64));
                acc = acc.add(&a[i].mul(&pw[i - j]).scale(&c));
            }
            acc
        })
        .collect()
}

fn exactly_zero<C: SeriesCoeff>(s: &Series<C>) -> bool {
    s.is_zero() && s.is_exact()
}

/// All `deg_t F` roots as individual series, each correct to `O(ξ^order)`.
pub fn puiseux_roots<C: SeriesCoeff>(a: &[Series<C>], order: Rational64) -> Result<Vec<Series<C>>> {
    let mut coeffs: Vec<Series<C>> = a.to_vec();
    while coeffs.last().is_some_and(exactly_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::DegenerateInput("F has degree < 1 in the fiber variable".into()));
    }
    let var = coeffs[0].var().to_string();
    let scale = coeffs.iter().map(|c| c.scale_hint()).fold(0.0, f64::max);
    let d = coeffs.len() - 1;
    let mut out = Vec::new();
    let mut stack = vec![State {
        prefix: Series::zero(&var),
        gamma_last: None,
        coeffs,
        mult: d,
    }];
    while let Some(st) = stack.pop() {
        let coeffs: Vec<Series<C>> = st.coeffs.iter().map(|c| c.cleaned(scale)).collect();
        let j0 = coeffs.iter().position(|c| !exactly_zero(c)).unwrap_or(coeffs.len());
        let zero_roots = j0.min(st.mult);
        for _ in 0..zero_roots {
            out.push(st.prefix.truncate(order));
        }
        if zero_roots == st.mult {
            continue;
        }
        let pts: Vec<Pt> = coeffs
            .iter()
            .enumerate()
            .skip(j0)
            .filter(|(_, c)| !exactly_zero(c))
            .map(|(i, c)| match c.valuation() {
                Some(v) => Pt { i, v, known: true },
                None => Pt {
                    i,
                    v: c.truncation().unwrap(),
                    known: false,
                },
            })
            .collect();
        let hull = lower_hull(&pts);
        let mut width_done = 0usize;
        let need = st.mult - zero_roots;
        for w in hull.windows(2) {
            if width_done >= need {
                break;
            }
            let (p, q) = (w[0], w[1]);
            let gamma = -(q.v - p.v) / Rational64::from_integer((q.i - p.i) as i64);
            if st.gamma_last.is_some_and(|g| gamma <= g) {
                break;
            }
            let width = q.i - p.i;
            width_done += width;
            if gamma >= order {
                if width > 1 {
                    return Err(Error::NeedsHigherOrder(format!(
                        "{width} roots agree through order {order}; raise the truncation order"
                    )));
                }
                out.push(st.prefix.truncate(order));
                continue;
            }
            let on_edge: Vec<&Pt> = pts
                .iter()
                .filter(|r| {
                    r.i >= p.i
                        && r.i <= q.i
                        && r.v + gamma * Rational64::from_integer(r.i as i64)
                            == p.v + gamma * Rational64::from_integer(p.i as i64)
                })
                .collect();
            if on_edge.iter().any(|r| !r.known) {
                return Err(Error::NeedsHigherOrder(
                    "coefficient truncation too short to fix the Newton polygon".into(),
                ));
            }
            let mut phi = vec![C::zero(); width + 1];
            for r in &on_edge {
                phi[r.i - p.i] = coeffs[r.i].coeff(r.v);
            }
            let roots = C::poly_roots(&phi)?;
            let found: usize = roots.iter().filter(|(c, _)| !c.is_zero()).map(|r| r.1).sum();
            if found != width {
                return Err(Error::Branch(format!(
                    "edge polynomial yielded {found} of {width} roots"
                )));
            }
            for (c, m) in roots {
                if c.is_zero() {
                    continue;
                }
                let step = Series::monomial(&var, c, gamma);
                stack.push(State {
                    prefix: st.prefix.add(&step),
                    gamma_last: Some(gamma),
                    coeffs: taylor_shift(&coeffs, &step),
                    mult: m,
                });
            }
        }
        if width_done != need {
            return Err(Error::NeedsHigherOrder(format!(
                "Newton polygon accounts for {width_done} of {need} roots"
            )));
        }
    }
    if out.len() != d {
        return Err(Error::Internal(format!("found {} of {d} roots", out.len())));
    }
    Ok(out)
}

/// Roots grouped into conjugacy cycles. The ramification indices sum to
/// `deg_t F`.
pub fn puiseux_branches<C: SeriesCoeff>(
    a: &[Series<C>],
    order: Rational64,
    tol: f64,
) -> Result<Vec<PuiseuxBranch<C>>> {
    let mut roots = puiseux_roots(a, order)?;
    let mut out = Vec::new();
    while !roots.is_empty() {
        let r = roots.remove(0);
        let e = r.ramification();
        for k in 1..e {
            let c = r
                .conjugate(k)
                .ok_or_else(|| Error::Branch(format!("ring lacks {e}-th roots of unity")))?;
            let pos = roots
                .iter()
                .position(|s| s.ramification() == e && s.agrees_with(&c, order, tol))
                .ok_or_else(|| Error::Branch("conjugate branch missing".into()))?;
            roots.remove(pos);
        }
        out.push(PuiseuxBranch {
            series: r,
            ramification: e,
        });
    }
    Ok(out)
}

/// Splits an exact polynomial `F(t, ξ, params)` into `t`-coefficients that
/// are series in `ξ` with polynomial coefficients.
pub fn coefficients_exact(f: &Poly<Q>, t: &str, xi: &str) -> Result<Vec<Series<Poly<Q>>>> {
    let parts = f.coeffs_in(t);
    if parts.keys().any(|k| *k < 0) {
        return Err(Error::Domain("negative power of the fiber variable".into()));
    }
    let d = parts.keys().max().copied().unwrap_or(0) as usize;
    Ok((0..=d)
        .map(|i| {
            let c = parts.get(&(i as i32)).cloned().unwrap_or_else(Poly::zero);
            let terms: Vec<(Rational64, Poly<Q>)> = c
                .coeffs_in(xi)
                .into_iter()
                .map(|(k, p)| (Rational64::from_integer(k as i64), p))
                .collect();
            Series::from_terms(xi, terms, None)
        })
        .collect())
}

/// Same as [`coefficients_exact`] for complex polynomials in `t, ξ` only.
pub fn coefficients_complex(
    f: &Poly<num_complex::Complex64>,
    t: &str,
    xi: &str,
) -> Result<Vec<Series<num_complex::Complex64>>> {
    let parts = f.coeffs_in(t);
    let d = parts.keys().max().copied().unwrap_or(0);
    if d < 0 || parts.keys().any(|k| *k < 0) {
        return Err(Error::Domain("negative power of the fiber variable".into()));
    }
    (0..=d)
        .map(|i| {
            let c = parts.get(&i).cloned().unwrap_or_else(Poly::zero);
            let mut terms = Vec::new();
            for (k, p) in c.coeffs_in(xi) {
                let v = p
                    .as_constant()
                    .ok_or_else(|| Error::Domain("unassigned parameter in numeric curve".into()))?;
                terms.push((Rational64::from_integer(k as i64), v));
            }
            Ok(Series::from_terms(xi, terms, None))
        })
        .collect()
}

/// Leading exponent and coefficient of each root, for reports.
pub fn leading_terms<C: SeriesCoeff>(roots: &[Series<C>]) -> Vec<(Rational64, C)> {
    roots
        .iter()
        .map(|r| r.leading().unwrap_or((Rational64::zero(), C::zero())))
        .collect()
}

/// `F(t(ξ), ξ)` for a root series, for residual checks.
pub fn substitute_root<C: SeriesCoeff>(a: &[Series<C>], root: &Series<C>) -> Series<C> {
    let mut acc = Series::zero(root.var());
    for c in a.iter().rev() {
        acc = acc.mul(root).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;
    use crate::exact::series::r64;
    use num_complex::Complex64;

    fn v(n: &str) -> Poly<Q> {
        Poly::var(n)
    }

    #[test]
    fn square_root_branch_is_one_cycle() {
        let f = v("t").pow(2) - v("ξ");
        let a = coefficients_exact(&f, "t", "ξ").unwrap();
        let br = puiseux_branches(&a, r64(4, 1), 0.0).unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].ramification, 2);
        assert_eq!(br[0].series.leading().unwrap(), (r64(1, 2), Poly::one()));
    }

    #[test]
    fn pole_branches_with_parameter() {
        // t^2 - x + u with x = ξ^-2, times ξ^2 to clear the pole
        let f = (v("t").pow(2) - v("ξ").pow_signed(-2) + v("u")) * v("ξ").pow(2);
        let a = coefficients_exact(&f, "t", "ξ").unwrap();
        let roots = puiseux_roots(&a, r64(4, 1)).unwrap();
        assert_eq!(roots.len(), 2);
        let mut lead: Vec<Poly<Q>> = roots.iter().map(|r| r.coeff(r64(-1, 1))).collect();
        lead.sort_by_key(|p| p.to_string());
        assert_eq!(lead, vec![Poly::int(-1), Poly::one()]);
        for r in &roots {
            let c1 = r.coeff(r64(1, 1));
            let c_1 = r.coeff(r64(-1, 1));
            assert_eq!(c1, Poly::rational(&rat(-1, 2)) * v("u") * c_1);
            assert!(substitute_root(&a, r).is_zero());
        }
    }

    #[test]
    fn implicit_function_branches() {
        let f = (v("t") - Poly::int(1)) * (v("t") - Poly::int(2)) + v("ξ");
        let a = coefficients_exact(&f, "t", "ξ").unwrap();
        let mut roots = puiseux_roots(&a, r64(3, 1)).unwrap();
        roots.sort_by_key(|r| r.coeff(r64(0, 1)).to_string());
        assert_eq!(roots[0].coeff(r64(1, 1)), Poly::int(1));
        assert_eq!(roots[1].coeff(r64(1, 1)), Poly::int(-1));
    }

    #[test]
    fn complex_cube_root_cycle() {
        let f: Poly<Complex64> = (v("t").pow(3) - v("ξ").pow(2)).to_complex_poly();
        let a = coefficients_complex(&f, "t", "ξ").unwrap();
        let br = puiseux_branches(&a, r64(3, 1), 1e-9).unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].ramification, 3);
    }

    #[test]
    fn coincident_branches_need_higher_order() {
        // (t - ξ^5)(t + ξ^5): the branches differ only at order 5
        let f = v("t").pow(2) - v("ξ").pow(10);
        let a = coefficients_exact(&f, "t", "ξ").unwrap();
        assert!(matches!(puiseux_roots(&a, r64(3, 1)), Err(Error::NeedsHigherOrder(_))));
        assert_eq!(puiseux_roots(&a, r64(6, 1)).unwrap().len(), 2);
    }
}
