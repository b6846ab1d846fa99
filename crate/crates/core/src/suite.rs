//! The acceptance battery: twelve criteria, each a conjunction of checks.
//!
//! Criteria 1–11 are computed by [`criterion`]; criterion 12 re-runs them
//! with the same seed and compares the serialized reports byte for byte.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::Result;
use crate::exact::series::r64;
use crate::exact::{rat, Poly, Q};
use crate::numerics::sw1::{self, continued_scan, gamma2_membership, monodromy, simultaneous_conjugator, IntMatrix, Loop};
use crate::report::{c_json, cs_json, poly_json, Check, Report, Status};
use crate::su_adjoint::{
    self, branch_residues, check_first_order_poles, expected_leading_polynomial, leading_polynomial, pn_closed, pn_solve,
    pure_curve_structure, random_parameters, rng, su2_consistency, SpectralFamily,
};
use crate::symplectic::{aks_sweep, dh_linearity_fit, random_regular_levels, su2_levels, SphereQuadrature};
use crate::tables;
use crate::toda::{charpoly_family_residual, genus_table, substitution_identities, toda_charpoly, FamilyType, LieType};
use crate::vacua::{self, count_index_subgroups, generic_data, node_count, su2_vacua, vacua_from_covers, vacuum_separation};
use crate::weierstrass::EllipticCurveModel;

pub const CRITERIA: [&str; 12] = [
    "x_k table",
    "y-expansions",
    "p_n closed form and linear solve",
    "residues over infinity",
    "SU(2) consistency",
    "SW1 monodromy",
    "Toda curves",
    "massive vacua",
    "AKS commutation",
    "DH linearity",
    "degeneration",
    "determinism",
];

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub results: Value,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Collapses the parts into a single check; failing parts are listed.
    pub fn summary(&self) -> Check {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        let residual = self.checks.iter().filter_map(|c| c.residual.filter(|_| c.tolerance.is_some_and(|t| t > 0.0))).fold(0.0, f64::max);
        Check {
            name: format!("criterion {}: {}", self.id, self.title),
            status: if failed.is_empty() { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            tolerance: None,
            detail: if failed.is_empty() {
                if self.checks.len() == 1 { "1 check".to_string() } else { format!("{} checks", self.checks.len()) }
            } else {
                format!("failed: {}", failed.join("; "))
            },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "title": self.title, "passed": self.passed(), "checks": self.checks, "results": self.results})
    }
}

fn sub_seed(seed: u64, id: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64)
}

/// Runs criterion `id` (1–11).
pub fn criterion(id: usize, seed: u64) -> CriterionResult {
    let ran = match id {
        1 => xk_table(),
        2 => y_expansions(),
        3 => pn_checks(),
        4 => residues(sub_seed(seed, 4)),
        5 => su2(),
        6 => sw1_monodromy(),
        7 => toda(sub_seed(seed, 7)),
        8 => vacua_checks(),
        9 => aks(sub_seed(seed, 9)),
        10 => dh(sub_seed(seed, 10)),
        11 => degeneration(),
        _ => Ok((vec![Check { name: format!("criterion {id}"), status: Status::Skip, residual: None, tolerance: None, detail: "not a computed criterion".into() }], json!({}))),
    };
    let (checks, results) = ran.unwrap_or_else(|e| (vec![Check::error("evaluation", &e)], json!({})));
    CriterionResult { id, title: CRITERIA.get(id - 1).copied().unwrap_or("unknown"), checks, results }
}

fn battery(seed: u64) -> Vec<CriterionResult> {
    (1..=11).map(|id| criterion(id, seed)).collect()
}

fn assemble(command: &str, seed: u64, parts: &[CriterionResult]) -> Report {
    let mut r = Report::new(command, json!({"criteria": parts.iter().map(|c| c.id).collect::<Vec<_>>()}), seed);
    r.results = json!({"criteria": parts.iter().map(CriterionResult::to_json).collect::<Vec<_>>()});
    r.checks = parts.iter().map(CriterionResult::summary).collect();
    r
}

/// The full battery as one report. Criterion 12 recomputes 1–11 and
/// compares the serialized reports.
pub fn suite_all(seed: u64) -> Report {
    let mut parts = battery(seed);
    let first = assemble("suite all", seed, &parts).to_json();
    let second = assemble("suite all", seed, &battery(seed)).to_json();
    parts.push(CriterionResult {
        id: 12,
        title: CRITERIA[11],
        checks: vec![Check::exact("re-run with the same seed is byte-identical", first == second, format!("{} bytes", first.len()))],
        results: json!({"bytes": first.len()}),
    });
    assemble("suite all", seed, &parts)
}

type Parts = Result<(Vec<Check>, Value)>;

fn xk_table() -> Parts {
    let e = EllipticCurveModel::symbolic();
    let basis = e.xk_basis(12)?;
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for (k, want) in tables::parsed(&tables::XK)? {
        let got = basis[&k].to_poly();
        checks.push(Check::exact(format!("x_{k}"), got == want, if got == want { String::new() } else { format!("got {got}, expected {want}") }));
        rows.push(json!({"k": k, "x_k": poly_json(&got)}));
    }
    Ok((checks, json!({"table": rows})))
}

fn y_expansions() -> Parts {
    let e = EllipticCurveModel::symbolic();
    let y = e.expand_y(9)?.shift(r64(3, 1));
    let yi = e.expand_y_inverse(15)?.shift(r64(-3, 1));
    let mut checks = Vec::new();
    let mut results = serde_json::Map::new();
    for (label, series, table) in [("y", &y, &tables::Y_SERIES), ("1/y", &yi, &tables::Y_INVERSE_SERIES)] {
        let printed = tables::parsed(table)?;
        let mut bad = Vec::new();
        let mut coeffs = Vec::new();
        for k in 0..=12i64 {
            let got = series.coeff(r64(k, 1));
            let want = printed.iter().find(|(j, _)| *j == k).map_or_else(Poly::zero, |(_, p)| p.clone());
            if got != want {
                bad.push(format!("ξ^{k}: got {got}, expected {want}"));
            }
            coeffs.push(poly_json(&got));
        }
        let long_enough = series.truncation().is_none_or(|t| t > r64(12, 1));
        checks.push(Check::exact(format!("{label} through ξ^12"), bad.is_empty() && long_enough, bad.join("; ")));
        results.insert(label.to_string(), Value::Array(coeffs));
    }
    Ok((checks, Value::Object(results)))
}

fn pn_checks() -> Parts {
    let e = EllipticCurveModel::symbolic();
    let mut checks = Vec::new();
    for (n, want) in tables::parsed(&tables::PN)? {
        let got = pn_closed(n, &e)?;
        checks.push(Check::exact(format!("closed form p_{n} matches the table"), got == want, ""));
    }
    let mut rows = Vec::new();
    for n in 2..=8 {
        let closed = pn_closed(n, &e)?;
        let sol = pn_solve(n, &e)?;
        let diff = &sol.normalized - &closed;
        checks.push(Check::exact(
            format!("linear solve p_{n} equals the closed form"),
            diff.is_zero(),
            if diff.is_zero() { String::new() } else { format!("solution − closed form = {diff}") },
        ));
        let mut fam = closed.clone();
        for l in 0..n.saturating_sub(1) {
            fam = fam + Poly::var(&format!("u{l}")) * pn_closed(l, &e)?;
        }
        let pc = check_first_order_poles(&fam, &e)?;
        let offending: Vec<String> = pc.offending.iter().map(|(j, ex, c)| format!("t′^{j} ξ^{ex}: {c}")).collect();
        checks.push(Check::exact(format!("closed-form family n = {n} has first-order poles"), pc.ok, offending.join("; ")));
        let corrected = SpectralFamily::new(n, &e)?;
        let ok = check_first_order_poles(&corrected.equation, &e)?.ok;
        checks.push(Check::exact(format!("solved family n = {n} has first-order poles"), ok, ""));
        rows.push(json!({"n": n, "closed": poly_json(&closed), "solved": poly_json(&sol.normalized), "dimension": sol.dimension()}));
    }
    Ok((checks, json!({"p_n": rows})))
}

fn residues(seed: u64) -> Parts {
    let e = EllipticCurveModel::symbolic();
    let mut r = rng(seed);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for n in 2..=5 {
        let fam = SpectralFamily::new(n, &e)?;
        let (mut worst, mut worst_sum) = (0.0f64, 0.0f64);
        for _ in 0..20 {
            let bc = random_parameters(&mut r, 2);
            let u = random_parameters(&mut r, n - 1);
            let rep = branch_residues(&fam, bc[0], bc[1], &u)?;
            worst = worst.max(rep.max_error);
            worst_sum = worst_sum.max(rep.sum.norm());
        }
        checks.push(Check::numeric(format!("n = {n}: residues {{1×{}, {}}}", n - 1, 1 - n as i64), worst, 1e-8, "20 random u"));
        checks.push(Check::numeric(format!("n = {n}: residues sum to 0"), worst_sum, 1e-8, ""));
        rows.push(json!({"n": n, "max_error": worst, "max_sum": worst_sum}));
    }
    for n in 2..=8 {
        let q = leading_polynomial(n);
        checks.push(Check::exact(format!("q(c) = (c−1)^{}(c+{}) for n = {n}", n - 1, n - 1), q == expected_leading_polynomial(n), ""));
    }
    Ok((checks, json!({"samples": rows})))
}

fn su2() -> Parts {
    let r = su2_consistency();
    let checks = vec![
        Check::exact("Möbius identity modulo e³+be−c", r.mobius_residual.is_zero() && !r.mobius_determinant.is_zero(), format!("residual {}", r.mobius_residual)),
        Check::exact("u is sent to ∞", !r.u_image_numerator.is_zero(), ""),
        Check::exact("quotient s² = (x−u)(x³+bx−c)", r.quotient_residual.is_zero(), format!("residual {}", r.quotient_residual)),
    ];
    Ok((checks, json!({"quotient": poly_json(&r.quotient_equation)})))
}

fn mat_json(m: &IntMatrix) -> Value {
    json!(m)
}

fn sw1_monodromy() -> Parts {
    let mut checks = Vec::new();
    let mut mats = Vec::new();
    let mut rows = Vec::new();
    for lp in [Loop::Infinity, Loop::Plus, Loop::Minus] {
        let m = monodromy(lp, lp.default_radius(), 400)?;
        checks.push(Check::numeric(format!("M_{} is integral", lp.label()), m.residual, 1e-6, ""));
        checks.push(Check::exact(format!("M_{} ∈ Γ(2)", lp.label()), gamma2_membership(&m.matrix), ""));
        rows.push(json!({"loop": lp.label(), "matrix": mat_json(&m.matrix), "residual": m.residual}));
        mats.push(m.matrix);
    }
    let pairs = [(mats[0], tables::M_INFINITY), (mats[1], tables::M_PLUS_ONE)];
    let conj = simultaneous_conjugator(&pairs, 3);
    checks.push(Check::exact(
        "M_∞, M_+1 simultaneously SL(2,Z)-conjugate to the reference pair",
        conj.is_some(),
        conj.map(|p| format!("P = {p:?}")).unwrap_or_default(),
    ));
    let product = sw1::mul(&mats[2], &mats[1]);
    checks.push(Check::exact("M_−1 · M_+1 = M_∞", product == mats[0], format!("{product:?}")));
    let frames = continued_scan(200, 0.25)?;
    let min_im = frames.iter().map(|f| f.tau[1]).fold(f64::INFINITY, f64::min);
    checks.push(Check::exact("Im τ > 0 at 200 points", frames.len() == 200 && min_im > 0.0, format!("min Im τ = {min_im:.6}")));
    Ok((checks, json!({"monodromies": rows, "conjugator": conj.map(|p| mat_json(&p)), "min_im_tau": min_im})))
}

fn toda(seed: u64) -> Parts {
    let mut checks = Vec::new();
    let mut shapes = Vec::new();
    for (ty, n) in [(LieType::A, 1), (LieType::A, 2), (LieType::A, 3), (LieType::A, 4), (LieType::D, 3)] {
        let rep = toda_charpoly(ty, n)?;
        let res = charpoly_family_residual(&rep)?;
        checks.push(Check::exact(format!("{}_{n} char-poly shape", ty.label()), res.is_zero(), format!("ε = {}, μ = {}", rep.epsilon, rep.mu)));
        shapes.push(json!({"type": ty.label(), "rank": n, "epsilon": rep.epsilon, "mu": poly_json(&rep.mu), "p": poly_json(&rep.p)}));
    }
    let mut identities = Vec::new();
    for (fam, ranks) in [
        (FamilyType::A, 1..=4),
        (FamilyType::C, 1..=3),
        (FamilyType::D, 3..=4),
        (FamilyType::BDual, 2..=3),
        (FamilyType::CDual, 1..=3),
        (FamilyType::G2Dual, 2..=2),
    ] {
        for n in ranks {
            let rep = substitution_identities(fam, n)?;
            let bad: Vec<&str> = rep.checks.iter().filter(|c| c.holds() == c.as_printed_variant).map(|c| c.label.as_str()).collect();
            checks.push(Check::exact(format!("{} rank {n} substitutions", fam.label()), rep.ok(), bad.join("; ")));
            for c in &rep.checks {
                identities.push(json!({"family": fam.label(), "rank": n, "label": c.label, "statement": c.statement, "holds": c.holds(), "misprint": c.as_printed_variant}));
            }
        }
    }
    let mut genera = Vec::new();
    for row in genus_table(4, seed)? {
        if let Some(g) = row.expected {
            checks.push(Check::exact(format!("genus of {}", row.report.label), row.ok(), format!("got {}, expected {g}", row.report.genus)));
        }
        genera.push(json!({"curve": row.report.label, "genus": row.report.genus, "expected": row.expected}));
    }
    let mut r = rng(seed);
    for n in 1..=4usize {
        use rand::Rng as _;
        let b: Vec<Q> = (0..n - 1).map(|_| rat(r.gen_range(-9..=9), r.gen_range(1..=5))).collect();
        let rep = pure_curve_structure(n, &b)?;
        checks.push(Check::exact(
            format!("pure curve n = {n}: genus n−1 and fiber product"),
            rep.genus == n as i64 - 1 && rep.fiber_product_residual.is_zero() && rep.riemann_hurwitz_ok,
            format!("genus {}", rep.genus),
        ));
    }
    Ok((checks, json!({"charpolys": shapes, "identities": identities, "genera": genera})))
}

fn vacua_checks() -> Parts {
    let mut checks = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=12 {
        let s = count_index_subgroups(n)?;
        checks.push(Check::exact(format!("index-{n} subgroups"), s.consistent(), format!("{} classes, σ = {}", s.count(), s.divisor_sum)));
        counts.push(s.count());
    }
    let data = generic_data()?;
    let fam2 = SpectralFamily::new(2, &EllipticCurveModel::symbolic())?;
    let roots = su2_vacua(data.b, data.c)?;
    checks.push(Check::exact("SU(2) has 3 vacua", roots.len() == 3, ""));
    for (i, v) in roots.iter().enumerate() {
        let nodes = node_count(&fam2, data.b, data.c, &[v.u])?;
        checks.push(Check::exact(format!("SU(2) vacuum {i} is nodal"), nodes.nodes == 1, format!("{} nodes", nodes.nodes)));
    }
    let covers2 = vacua_from_covers(&data, 2)?;
    let cross = covers2.iter().map(|p| roots.iter().map(|r| (r.u - p.u[0]).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    checks.push(Check::numeric("SU(2) covers reproduce the cubic roots", cross, 1e-8, format!("{} covers", covers2.len())));
    let pts = vacua_from_covers(&data, 3)?;
    let us: Vec<Vec<Complex64>> = pts.iter().map(|p| p.u.clone()).collect();
    checks.push(Check::exact("SU(3) gives 4 distinct points", pts.len() == 4 && vacuum_separation(&us) > 1e-6, format!("separation {:.3e}", vacuum_separation(&us))));
    let mut rows = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        checks.push(Check::numeric(format!("SU(3) point {i} fit"), p.fit_residual, 1e-8, ""));
        checks.push(Check::exact(format!("SU(3) point {i} has 2 nodes"), p.nodes.nodes == 2 && p.nodes.degenerate == 0, format!("{} nodes", p.nodes.nodes)));
        checks.push(Check::exact(format!("SU(3) point {i} normalization is genus 1 unramified"), p.genus.genus == 1 && p.genus.unramified(), format!("genus {}", p.genus.genus)));
        rows.push(json!({"u": cs_json(&p.u), "subgroup": [p.subgroup.d1, p.subgroup.k, p.subgroup.d2], "nodes": p.nodes.nodes, "genus": p.genus.genus}));
    }
    let su2_rows: Vec<Value> = roots.iter().map(|v| c_json(v.u)).collect();
    Ok((checks, json!({"subgroup_counts": counts, "su2": su2_rows, "su3": rows, "nome": [vacua::GENERIC_NOME.0, vacua::GENERIC_NOME.1]})))
}

fn aks(seed: u64) -> Parts {
    let rep = aks_sweep(5, 100, seed)?;
    let checks = vec![
        Check::exact("structure of the splitting", rep.structure_ok, ""),
        Check::exact("invariant brackets vanish exactly", rep.nonzero_invariant_brackets == 0, format!("{} evaluations", rep.evaluations)),
        Check::exact("X_11 control is nonzero", rep.control_nonzero > 0, format!("{}/{} nonzero", rep.control_nonzero, rep.control_evaluations)),
        Check::exact("control is antisymmetric", rep.control_antisymmetric, ""),
    ];
    Ok((checks, serde_json::to_value(&rep).expect("report serializes")))
}

fn dh(seed: u64) -> Parts {
    let q = SphereQuadrature::default();
    let s2 = dh_linearity_fit(&su2_levels(&[1.0, 2.0, 3.0, 5.0]), q)?;
    let s3 = dh_linearity_fit(&random_regular_levels(3, 6, seed), q)?;
    let checks = vec![
        Check::numeric("su(2) fit residual", s2.max_residual.max(s2.max_intercept), 1e-8, "4 levels"),
        Check::numeric("su(3) fit residual", s3.max_residual.max(s3.max_intercept), 1e-8, format!("6 levels, {} cycles", s3.roots.len())),
        Check::numeric("su(3) additivity I12 + I23 = I13", s3.additivity_residual, 1e-8, ""),
    ];
    let quad = s2.fits.iter().chain(&s3.fits).map(|f| f.max_quadrature_error).fold(0.0, f64::max);
    Ok((checks, json!({"su2": s2.integrals, "su3": s3.integrals, "su3_levels": s3.levels, "max_quadrature_error": quad})))
}

fn degeneration() -> Parts {
    let rep = su_adjoint::degeneration_check_su2(&[1e-3, 1e-4, 1e-5], 13)?;
    let checks = vec![
        Check::exact("fit residual decreases", rep.residual_decreasing, format!("{:?}", rep.points.iter().map(|p| p.residual).collect::<Vec<_>>())),
        Check::numeric("log-log slope of Λ⁴ is 1", (rep.loglog_slope - 1.0).abs(), 0.05, format!("slope {:.4}", rep.loglog_slope)),
    ];
    Ok((checks, serde_json::to_value(&rep).expect("report serializes")))
}
