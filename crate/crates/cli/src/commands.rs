//! One report builder per subcommand.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;
use spectra_core::exact::series::r64;
use spectra_core::exact::{rat, Poly, Q};
use spectra_core::numerics::sw1::{gamma2_membership, monodromy, sw1_periods, Loop};
use spectra_core::numerics::AnalyticEllipticData;
use spectra_core::report::{c_json, cs_json, poly_json, q_json, Check, Report};
use spectra_core::su_adjoint::{self, branch_residues, check_first_order_poles, pn_closed, pn_solve, pure_curve_structure, rng, SpectralFamily};
use spectra_core::suite::{criterion, suite_all};
use spectra_core::symplectic::{aks_sweep, dh_linearity_fit, random_regular_levels, su2_levels, SphereQuadrature};
use spectra_core::toda::{self, cover_genus, genus_table, substitution_identities, toda_charpoly, toda_family, FamilyType, GenusMode, LieType};
use spectra_core::vacua::{count_index_subgroups, divisor_sum, su2_vacua, vacua_from_covers, vacuum_separation};
use spectra_core::weierstrass::EllipticCurveModel;
use spectra_core::{Error, Result};

use crate::values::{complex, rational};
use crate::{Algebra, Command, CurveKind, DegenerateKind, Sw1Op, TodaOp};

pub fn run(cmd: &Command, echo: &str, seed: u64) -> Result<Report> {
    match cmd {
        Command::Xk { k, b, c } => xk(echo, seed, *k, b.as_deref(), c.as_deref()),
        Command::Pn { n, verify } => pn(echo, seed, *n, *verify),
        Command::Curve { kind: CurveKind::Su(a) } => curve_su(echo, seed, a.n, &a.u),
        Command::Residues { n, u, q } => residues(echo, seed, *n, u, q),
        Command::Sw1 { op: Sw1Op::Periods { u } } => periods(echo, seed, u),
        Command::Sw1 { op: Sw1Op::Monodromy { lp } } => sw1_monodromy(echo, seed, lp),
        Command::Toda { op } => toda_cmd(echo, seed, op),
        Command::Genus { model, rank } => genus(echo, seed, model, *rank),
        Command::Vacua { n, q } => vacua(echo, seed, *n, q),
        Command::Subgroups { n } => subgroups(echo, seed, *n),
        Command::Aks { n, samples } => aks(echo, seed, *n, *samples),
        Command::Dh { algebra, levels } => dh(echo, seed, *algebra, levels),
        Command::Degenerate { kind: DegenerateKind::Su2 { qs } } => degenerate(echo, seed, qs),
        Command::Suite { which } => suite(echo, seed, which),
    }
}

fn xk(echo: &str, seed: u64, k: i32, b: Option<&str>, c: Option<&str>) -> Result<Report> {
    let e = EllipticCurveModel::symbolic();
    let f = e.xk(k)?.to_poly();
    let mut r = Report::new(echo, json!({"k": k, "b": b, "c": c}), seed);
    let series = e.expand(&f, 0)?;
    let polar: Vec<_> = series.terms().into_iter().filter(|(ex, _)| *ex < r64(-1, 1)).collect();
    let normalized = polar.len() == 1 && polar[0].0 == r64(-k as i64, 1) && polar[0].1 == Poly::one();
    let mut results = json!({"k": k, "x_k": poly_json(&f), "pole_order": e.reduce(&f).pole_order()});
    let mut vals: Vec<(&str, Q)> = Vec::new();
    if let Some(b) = b {
        vals.push(("b", rational(b)?));
    }
    if let Some(c) = c {
        vals.push(("c", rational(c)?));
    }
    if !vals.is_empty() {
        results["specialized"] = poly_json(&f.eval_vars(&vals));
    }
    r.results = results;
    r.checks.push(Check::exact("x_k − ξ^−k = O(ξ^−1)", normalized, ""));
    Ok(r)
}

fn pn(echo: &str, seed: u64, n: usize, verify: bool) -> Result<Report> {
    let e = EllipticCurveModel::symbolic();
    let closed = pn_closed(n, &e)?;
    let mut r = Report::new(echo, json!({"n": n, "verify": verify}), seed);
    r.results = json!({"n": n, "p_n": poly_json(&closed)});
    if verify {
        let poles = check_first_order_poles(&closed, &e)?;
        let offending: Vec<String> = poles.offending.iter().map(|(j, ex, c)| format!("t′^{j} ξ^{ex}: {c}")).collect();
        r.checks.push(Check::exact("closed form has first-order poles", poles.ok, offending.join("; ")));
        if n >= 2 {
            let sol = pn_solve(n, &e)?;
            let diff = &sol.normalized - &closed;
            r.checks.push(Check::exact(
                "closed form equals the linear solve",
                diff.is_zero(),
                if diff.is_zero() { String::new() } else { format!("solution − closed form = {diff}") },
            ));
            r.results["solved"] = poly_json(&sol.normalized);
            r.results["solution_dimension"] = json!(sol.dimension());
        }
    }
    Ok(r)
}

fn curve_su(echo: &str, seed: u64, n: usize, u: &[String]) -> Result<Report> {
    let e = EllipticCurveModel::symbolic();
    let fam = SpectralFamily::new(n, &e)?;
    let mut r = Report::new(echo, json!({"n": n, "u": u}), seed);
    let mut eq = fam.equation.clone();
    if !u.is_empty() {
        if u.len() != n - 1 {
            return Err(Error::Domain(format!("expected {} values u_0..u_{}", n - 1, n - 2)));
        }
        let vals: Vec<(&str, Q)> = fam.parameters.iter().map(String::as_str).zip(u.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>()?).collect();
        eq = eq.eval_vars(&vals);
    }
    r.results = json!({"equation": poly_json(&eq), "parameters": fam.parameters, "base": poly_json(&e.cubic())});
    r.checks.push(Check::exact("traceless with ord f_k ≤ k", fam.check_invariants(), ""));
    r.checks.push(Check::exact("first-order poles after t = t′ + ξ⁻¹", check_first_order_poles(&eq, &e)?.ok, ""));
    Ok(r)
}

fn curve_at_nome(q: &str) -> Result<(Complex64, AnalyticEllipticData)> {
    let q = complex(q)?;
    Ok((q, AnalyticEllipticData::from_nome(q, Complex64::new(PI, 0.0))?))
}

fn residues(echo: &str, seed: u64, n: usize, u: &[String], q: &str) -> Result<Report> {
    let (qv, data) = curve_at_nome(q)?;
    let fam = SpectralFamily::new(n, &EllipticCurveModel::symbolic())?;
    let uv = u.iter().map(|s| complex(s)).collect::<Result<Vec<_>>>()?;
    let rep = branch_residues(&fam, data.b, data.c, &uv)?;
    let mut r = Report::new(echo, json!({"n": n, "u": cs_json(&uv), "q": c_json(qv)}), seed);
    r.results = json!({
        "b": c_json(data.b),
        "c": c_json(data.c),
        "series_residues": cs_json(&rep.series_residues),
        "contour_residues": rep.contour_residues.iter().map(|(z, e)| json!({"residue": c_json(*z), "ramification": e})).collect::<Vec<_>>(),
        "leading_polynomial": su_adjoint::upoly_strings(&rep.leading_poly),
    });
    r.checks.push(Check::numeric(format!("residues are {{1×{}, {}}}", n - 1, 1 - n as i64), rep.max_error, 1e-8, ""));
    r.checks.push(Check::numeric("residues sum to 0", rep.sum.norm(), 1e-8, ""));
    Ok(r)
}

fn periods(echo: &str, seed: u64, u: &str) -> Result<Report> {
    let uv = complex(u)?;
    let f = sw1_periods(uv)?;
    let mut r = Report::new(echo, json!({"u": c_json(uv)}), seed);
    r.results = json!({"a": c_json(f.a()), "a_dual": c_json(f.a_dual()), "tau": c_json(f.tau())});
    r.checks.push(Check::exact("Im τ > 0", f.tau[1] > 0.0, format!("Im τ = {:.6}", f.tau[1])));
    Ok(r)
}

fn sw1_monodromy(echo: &str, seed: u64, lp: &str) -> Result<Report> {
    let l = Loop::parse(lp).ok_or_else(|| Error::Domain(format!("unknown loop {lp:?}; use inf, +1 or -1")))?;
    let m = monodromy(l, l.default_radius(), 400)?;
    let mut r = Report::new(echo, json!({"loop": l.label()}), seed);
    r.results = json!({"matrix": m.matrix, "gamma2": gamma2_membership(&m.matrix), "det": m.det()});
    r.checks.push(Check::numeric("integral", m.residual, 1e-6, ""));
    r.checks.push(Check::numeric("same matrix on the λ periods", m.lambda_residual, 1e-6, ""));
    r.checks.push(Check::exact("in Γ(2)", gamma2_membership(&m.matrix), ""));
    Ok(r)
}

fn toda_cmd(echo: &str, seed: u64, op: &TodaOp) -> Result<Report> {
    match op {
        TodaOp::Charpoly { ty, rank } => {
            let rep = toda_charpoly(LieType::parse(ty)?, *rank)?;
            let res = toda::charpoly_family_residual(&rep)?;
            let mut r = Report::new(echo, json!({"type": rep.ty.label(), "rank": rank}), seed);
            r.results = json!({
                "charpoly": poly_json(&rep.charpoly),
                "sign": rep.sign,
                "epsilon": rep.epsilon,
                "spurious_x": rep.spurious_x,
                "mu": poly_json(&rep.mu),
                "p": poly_json(&rep.p),
                "hamiltonians": rep.hamiltonians.iter().map(|(k, h)| json!({"power": k, "value": poly_json(h)})).collect::<Vec<_>>(),
            });
            r.checks.push(Check::exact("det(x − L) = ±x^k (x^ε(z + μ/z) + p(x))", res.is_zero(), if res.is_zero() { String::new() } else { res.to_string() }));
            Ok(r)
        }
        TodaOp::Family { ty, dual, rank } => {
            let f = toda_family(FamilyType::parse(ty, *dual)?, *rank)?;
            let mut r = Report::new(echo, json!({"type": ty, "dual": dual, "rank": rank}), seed);
            r.results = json!({"label": f.label, "equation": poly_json(&f.equation), "fiber": f.fiber, "base": f.base, "parameters": f.parameters});
            Ok(r)
        }
        TodaOp::VerifySubstitutions { ty, dual, rank } => {
            let rep = substitution_identities(FamilyType::parse(ty, *dual)?, *rank)?;
            let mut r = Report::new(echo, json!({"type": ty, "dual": dual, "rank": rank}), seed);
            let mut rows = Vec::new();
            for c in &rep.checks {
                let detail = if c.as_printed_variant { format!("misprinted form, residual {}", c.residual) } else { String::new() };
                let name = if c.as_printed_variant { format!("{} fails as printed", c.label) } else { format!("{} holds", c.label) };
                r.checks.push(Check::exact(name, c.holds() != c.as_printed_variant, detail));
                rows.push(json!({"label": c.label, "statement": c.statement, "holds": c.holds(), "residual": poly_json(&c.residual)}));
            }
            r.results = json!({"family": rep.family.label(), "identities": rows});
            Ok(r)
        }
    }
}

fn expected_genus(fam: FamilyType, n: usize) -> Option<i64> {
    match fam {
        FamilyType::A => Some(n as i64),
        FamilyType::D | FamilyType::BDual => Some(2 * n as i64 - 1),
        _ => None,
    }
}

fn genus(echo: &str, seed: u64, model: &str, rank: usize) -> Result<Report> {
    let mut r = Report::new(echo, json!({"model": model, "rank": rank}), seed);
    match model.to_ascii_lowercase().as_str() {
        "table" => {
            let mut rows = Vec::new();
            for row in genus_table(rank, seed)? {
                if let Some(g) = row.expected {
                    r.checks.push(Check::exact(format!("genus of {}", row.report.label), row.ok(), format!("got {}, expected {g}", row.report.genus)));
                }
                rows.push(json!({"curve": row.report.label, "genus": row.report.genus, "expected": row.expected}));
            }
            r.results = json!({"table": rows});
        }
        "pure" => {
            use rand::Rng as _;
            let mut g = rng(seed);
            let b: Vec<Q> = (0..rank.saturating_sub(1)).map(|_| rat(g.gen_range(-9..=9), g.gen_range(1..=5))).collect();
            let rep = pure_curve_structure(rank, &b)?;
            r.results = json!({"p": poly_json(&rep.p), "genus": rep.genus, "branch_points": rep.branch_points, "b": b.iter().map(q_json).collect::<Vec<_>>()});
            r.checks.push(Check::exact("genus n − 1", rep.genus == rank as i64 - 1, ""));
            r.checks.push(Check::exact("fiber product over v = p(z)", rep.fiber_product_residual.is_zero(), ""));
            r.checks.push(Check::exact("Riemann–Hurwitz for z ↦ p(z)", rep.riemann_hurwitz_ok, ""));
        }
        other => {
            let (ty, dual) = match other.strip_suffix("-dual") {
                Some(t) => (t, true),
                None => (other, false),
            };
            let fam = FamilyType::parse(ty, dual)?;
            let curve = toda_family(fam, rank)?;
            let rep = cover_genus(&curve, GenusMode::Cover, seed)?;
            r.results = json!({
                "curve": rep.label,
                "equation": poly_json(&curve.equation),
                "genus": rep.genus,
                "sheets": rep.sheets,
                "branch_degree": rep.branch_degree,
                "specialization": rep.specialization.iter().map(|(k, v)| json!([k, q_json(v)])).collect::<Vec<_>>(),
            });
            if let Some(g) = expected_genus(fam, rank) {
                r.checks.push(Check::exact(format!("genus {g}"), rep.genus == g, format!("got {}", rep.genus)));
            }
        }
    }
    Ok(r)
}

fn vacua(echo: &str, seed: u64, n: usize, q: &str) -> Result<Report> {
    if !(2..=3).contains(&n) {
        return Err(Error::Domain("vacua supports n = 2 or 3".into()));
    }
    let (qv, data) = curve_at_nome(q)?;
    let pts = vacua_from_covers(&data, n)?;
    let mut r = Report::new(echo, json!({"n": n, "q": c_json(qv)}), seed);
    let expected = divisor_sum(n as u64) as usize;
    let us: Vec<Vec<Complex64>> = pts.iter().map(|p| p.u.clone()).collect();
    r.checks.push(Check::exact(format!("{expected} distinct vacua"), pts.len() == expected && vacuum_separation(&us) > 1e-6, format!("found {}", pts.len())));
    let mut rows = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        r.checks.push(Check::numeric(format!("point {i}: cover fit"), p.fit_residual, 1e-8, ""));
        r.checks.push(Check::numeric(format!("point {i}: residues"), p.residue_error(), 1e-8, ""));
        r.checks.push(Check::exact(format!("point {i}: {} nodes", n - 1), p.nodes.nodes == n - 1, format!("found {}", p.nodes.nodes)));
        r.checks.push(Check::exact(format!("point {i}: genus-1 unramified normalization"), p.genus.genus == 1 && p.genus.unramified(), format!("genus {}", p.genus.genus)));
        rows.push(json!({"u": cs_json(&p.u), "subgroup": [p.subgroup.d1, p.subgroup.k, p.subgroup.d2], "nodes": p.nodes.nodes, "genus": p.genus.genus, "fit_residual": p.fit_residual}));
    }
    if n == 2 {
        let roots = su2_vacua(data.b, data.c)?;
        let d = pts.iter().map(|p| roots.iter().map(|v| (v.u - p.u[0]).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
        r.checks.push(Check::numeric("agrees with the roots of x³ + bx − c", d, 1e-8, ""));
    }
    r.results = json!({"b": c_json(data.b), "c": c_json(data.c), "vacua": rows});
    Ok(r)
}

fn subgroups(echo: &str, seed: u64, n: usize) -> Result<Report> {
    let s = count_index_subgroups(n)?;
    let mut r = Report::new(echo, json!({"n": n}), seed);
    r.results = json!({
        "count": s.count(),
        "hnf": s.classes.iter().map(|h| json!([[h.d1, h.k], [0, h.d2]])).collect::<Vec<_>>(),
        "brute_force": s.brute_force,
        "divisor_sum": s.divisor_sum,
    });
    r.checks.push(Check::exact("HNF count = brute force = σ(n)", s.consistent(), ""));
    Ok(r)
}

fn aks(echo: &str, seed: u64, n: usize, samples: usize) -> Result<Report> {
    let rep = aks_sweep(n, samples, seed)?;
    let mut r = Report::new(echo, json!({"n": n, "samples": samples}), seed);
    r.checks.push(Check::exact("invariant brackets vanish exactly", rep.nonzero_invariant_brackets == 0, format!("{} evaluations", rep.evaluations)));
    r.checks.push(Check::exact("X_11 control is nonzero", rep.control_nonzero > 0, format!("{}/{}", rep.control_nonzero, rep.control_evaluations)));
    r.checks.push(Check::exact("control is antisymmetric", rep.control_antisymmetric, ""));
    r.checks.push(Check::exact("splitting structure", rep.structure_ok, ""));
    r.results = serde_json::to_value(&rep).expect("report serializes");
    Ok(r)
}

fn dh(echo: &str, seed: u64, algebra: Algebra, levels: &[String]) -> Result<Report> {
    let lv: Vec<Vec<f64>> = match (algebra, levels.is_empty()) {
        (Algebra::Su2, true) => su2_levels(&[1.0, 2.0, 3.0, 5.0]),
        (Algebra::Su3, true) => random_regular_levels(3, 6, seed),
        (Algebra::Su2, false) => su2_levels(&levels.iter().map(|s| s.parse().map_err(|_| Error::Domain(format!("bad level {s:?}")))).collect::<Result<Vec<f64>>>()?),
        (Algebra::Su3, false) => levels
            .iter()
            .map(|s| {
                let v: Vec<f64> = s.split(':').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| Error::Domain(format!("bad level {s:?}")))?;
                if v.len() != 3 {
                    return Err(Error::Domain(format!("su3 levels are a1:a2:a3, got {s:?}")));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?,
    };
    let rep = dh_linearity_fit(&lv, SphereQuadrature::default())?;
    let mut r = Report::new(echo, json!({"algebra": format!("{algebra:?}").to_lowercase(), "levels": lv}), seed);
    r.checks.push(Check::numeric("relative fit residual", rep.max_residual, 1e-8, ""));
    r.checks.push(Check::numeric("relative intercept", rep.max_intercept, 1e-8, ""));
    if lv[0].len() >= 3 {
        r.checks.push(Check::numeric("additivity over roots", rep.additivity_residual, 1e-8, ""));
    }
    r.results = serde_json::to_value(&rep).expect("report serializes");
    Ok(r)
}

fn degenerate(echo: &str, seed: u64, qs: &[f64]) -> Result<Report> {
    let rep = su_adjoint::degeneration_check_su2(qs, 13)?;
    let mut r = Report::new(echo, json!({"qs": qs}), seed);
    r.checks.push(Check::exact("fit residual decreases", rep.residual_decreasing, ""));
    r.checks.push(Check::numeric("log-log slope of Λ⁴ is 1", (rep.loglog_slope - 1.0).abs(), 0.05, format!("slope {:.4}", rep.loglog_slope)));
    r.results = serde_json::to_value(&rep).expect("report serializes");
    Ok(r)
}

fn suite(echo: &str, seed: u64, which: &str) -> Result<Report> {
    if which == "all" || which == "12" {
        let mut r = suite_all(seed);
        r.command = echo.to_string();
        return Ok(r);
    }
    let id: usize = which.parse().ok().filter(|i| (1..=11).contains(i)).ok_or_else(|| Error::Domain(format!("unknown suite {which:?}; use all or 1..12")))?;
    let c = criterion(id, seed);
    let mut r = Report::new(echo, json!({"criterion": id}), seed);
    r.results = c.to_json();
    r.checks = c.checks;
    Ok(r)
}
