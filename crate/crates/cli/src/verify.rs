//! `aqaw verify`: seeded invariant suites.

use std::f64::consts::{PI, TAU};

use aqaw_core::aqaw::{coefficient_table, coefficients};
use aqaw_core::cf::{cf_direct, cf_pincherle, closed_form_3_3, closed_form_3_4};
use aqaw_core::contiguous::{relation_residual, RelationInput};
use aqaw_core::solutions::{eval_solution, eval_solution_at, proportionality_variation, recurrence_residual};
use aqaw_core::spectral::{
    boundary_density, classical_aw_density, discrete_spectrum_guard, expected_norms, identity_4_10_residual,
    moment_matrix, orthogonality_error, qdougall_residual, quadrature_abscissae, quadrature_from_densities,
    quadrature_thetas, stieltjes_residual, weight_density, weight_density_alt, wronskian, wronskian_closed_form,
    x4_wronskian,
};
use aqaw_core::{
    ArgumentFlag, Error, QBase, QParameters, RelationId, SolutionId, SpectralPoint, TenPhiNineSpec, ToleranceConfig,
    VwpW, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::eval::cx;
use crate::output::{pretty, Cell, Table};

const MAX_ATTEMPTS: usize = 100_000;
pub const QUAD_N: usize = 2048;
pub const GRID_N: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Contiguous,
    Solutions,
    Pincherle,
    Wronskian,
    Dougall,
    Orthogonality,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Contiguous, Suite::Solutions, Suite::Pincherle, Suite::Wronskian, Suite::Dougall, Suite::Orthogonality];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Contiguous => "contiguous",
            Suite::Solutions => "solutions",
            Suite::Pincherle => "pincherle",
            Suite::Wronskian => "wronskian",
            Suite::Dougall => "dougall",
            Suite::Orthogonality => "orthogonality",
            Suite::All => "all",
        }
    }

    fn stream(&self) -> u64 {
        *self as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub draw: Option<usize>,
    pub inputs: Value,
    pub residual: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, draw: Option<usize>, inputs: Value, r: Result<f64, Error>, threshold: f64) -> Self {
        let (residual, error) = match r {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = residual.is_some_and(|r| r <= threshold);
        Check { name: name.into(), draw, inputs, residual, threshold, pass, error }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => pretty(&serde_json::to_value(self).expect("reports serialize")),
            OutputFormat::Csv => {
                let mut t = Table::new(vec!["suite", "check", "draw", "residual", "threshold", "pass"]);
                for s in &self.suites {
                    for c in &s.checks {
                        t.push(vec![
                            Cell::Text(s.suite.into()),
                            Cell::Text(c.name.clone()),
                            c.draw.map_or(Cell::Text(String::new()), |d| Cell::Int(d as i64)),
                            Cell::Float(c.residual.unwrap_or(f64::NAN)),
                            Cell::Float(c.threshold),
                            Cell::Bool(c.pass),
                        ]);
                    }
                }
                t.to_csv()
            }
        }
    }

    /// Checks whose name starts with `prefix`, across all suites.
    pub fn checks(&self, prefix: &str) -> Vec<&Check> {
        self.suites.iter().flat_map(|s| &s.checks).filter(|c| c.name.starts_with(prefix)).collect()
    }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn params_json(p: &QParameters) -> Value {
    json!({
        "q": cx(p.q.value()),
        "alpha": cx(p.alpha),
        "beta": cx(p.beta),
        "gamma": cx(p.gamma),
        "delta": cx(p.delta),
        "epsilon": cx(p.epsilon),
    })
}

fn polar(rng: &mut ChaCha8Rng, m: (f64, f64), t: (f64, f64)) -> C64 {
    let r = rng.gen_range(m.0..m.1);
    C64::from_polar(r, rng.gen_range(t.0..t.1))
}

fn draw_params(rng: &mut ChaCha8Rng, q: (f64, f64), m: (f64, f64), eps: (f64, f64)) -> QParameters {
    let qv = rng.gen_range(q.0..q.1);
    let [a, b, c, d] = [(); 4].map(|_| polar(rng, m, (-0.4, 0.4)));
    let e = polar(rng, eps, (-0.5, 0.5));
    QParameters::new(QBase::real(qv).expect("q in (0, 1)"), a, b, c, d, e).expect("nonzero parameters")
}

fn draw_u(rng: &mut ChaCha8Rng, m: (f64, f64)) -> C64 {
    polar(rng, m, (0.0, TAU))
}

/// Rejection sampling with a fixed attempt budget.
fn sample<T>(
    rng: &mut ChaCha8Rng,
    what: &str,
    mut gen: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> Result<T, CliError> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(t) = gen(rng) {
            return Ok(t);
        }
    }
    Err(CliError::Argument(format!("no admissible draw for {what} within {MAX_ATTEMPTS} attempts")))
}

fn run_items<T, F>(serial: bool, items: &[T], f: F) -> Vec<Check>
where
    T: Sync,
    F: Fn(usize, &T) -> Vec<Check> + Sync + Send,
{
    if serial {
        items.iter().enumerate().flat_map(|(i, t)| f(i, t)).collect()
    } else {
        let parts: Vec<Vec<Check>> = items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
        parts.into_iter().flatten().collect()
    }
}

fn holds_everywhere(id: SolutionId, p: &QParameters, u: C64) -> bool {
    (-1..=11).all(|n| id.predicate_holds(p, n, u))
}

/// Runs `suite` (every suite for [`Suite::All`]) with the configuration's
/// seed. Configuration errors, including poles of the recurrence
/// coefficients at the configured parameters, abort with `Err`.
pub fn cmd_verify(suite: Suite, run: &RunConfig, serial: bool) -> Result<VerifyReport, CliError> {
    coefficient_table(&run.params, 10)?;
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
        rng.set_stream(s.stream());
        let checks = match s {
            Suite::Contiguous => contiguous(&mut rng, run, serial)?,
            Suite::Solutions => solutions(&mut rng, run, serial)?,
            Suite::Pincherle => pincherle(&mut rng, run, serial)?,
            Suite::Wronskian => wronskian_suite(&mut rng, run, serial)?,
            Suite::Dougall => dougall(&mut rng, run, serial)?,
            Suite::Orthogonality => orthogonality(run, serial)?,
            Suite::All => unreachable!("expanded above"),
        };
        let passed = checks.iter().all(|c| c.pass);
        reports.push(SuiteReport { suite: s.name(), checks, passed });
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok(VerifyReport { seed: run.seed, suites: reports, passed })
}

fn far_from_one(xs: &[C64]) -> bool {
    xs.iter().all(|&x| (C64::new(1.0, 0.0) - x).norm() > 0.05)
}

fn ten_phi_nine_draw(rng: &mut ChaCha8Rng, n: usize) -> Option<TenPhiNineSpec> {
    let ph = (0.05, 0.8);
    let a = polar(rng, ph, (-0.6, 0.6));
    let free = [(); 5].map(|_| polar(rng, ph, (-0.6, 0.6)));
    let q = QBase::real(rng.gen_range(0.3..0.7)).ok()?;
    let s = TenPhiNineSpec::balanced(a, free, q, n).ok()?;
    let qv = q.value();
    far_from_one(&[s.a, s.a * qv * qv, s.c * qv / s.b, s.b * qv / s.c, s.a * qv / s.b, s.b * qv / s.a]).then_some(s)
}

fn vwp_draw(rng: &mut ChaCha8Rng) -> Option<VwpW> {
    let ph = (0.05, 0.8);
    let dir = polar(rng, ph, (-0.6, 0.6));
    let params = [(); 5].map(|_| polar(rng, ph, (-0.6, 0.6)));
    let q = QBase::real(rng.gen_range(0.3..0.7)).ok()?;
    let r = rng.gen_range(0.05..0.7);
    let prod: C64 = params.iter().product();
    let qv = q.value();
    let a = dir / dir.norm() * (r * prod.norm()).sqrt() / qv.re;
    let [b, c, ..] = params;
    far_from_one(&[a, a * qv * qv, a / (qv * qv), c * qv / b, b * qv / c, a * qv / b, b * qv / a])
        .then_some(VwpW::new(a, params, q))
}

fn contiguous(rng: &mut ChaCha8Rng, run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let mut jobs = Vec::new();
    for id in RelationId::ALL {
        for i in 0..25 {
            let input = match id {
                RelationId::R2_2 => RelationInput::TenPhiNine(sample(rng, id.name(), |r| ten_phi_nine_draw(r, i % 6))?),
                RelationId::R2_8 => {
                    RelationInput::TenPhiNine(sample(rng, id.name(), |r| ten_phi_nine_draw(r, 1 + i % 5))?)
                }
                RelationId::R2_3 | RelationId::R2_9 => RelationInput::Vwp(sample(rng, id.name(), vwp_draw)?),
            };
            jobs.push((id, i, input));
        }
    }
    let tol = run.tolerance;
    Ok(run_items(serial, &jobs, |_, (id, i, input)| {
        let inputs = match input {
            RelationInput::TenPhiNine(s) => json!({
                "n": s.n,
                "q": cx(s.q.value()),
                "params": s.params().map(cx).to_vec(),
            }),
            RelationInput::Vwp(w) => json!({
                "q": cx(w.q.value()),
                "a": cx(w.a),
                "params": w.params().map(cx).to_vec(),
            }),
        };
        vec![Check::new(format!("relation_{}", id.name()), Some(*i), inputs, relation_residual(*id, input, &tol), 1e-9)]
    }))
}

#[derive(Debug, Clone, Copy)]
enum SolutionCheck {
    Recurrence(SolutionId),
    Asymptotic(SolutionId),
    Proportional(SolutionId, SolutionId),
}

fn solutions(rng: &mut ChaCha8Rng, run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let mut jobs = Vec::new();
    let u_range = (1.05, 3.0);
    for id in SolutionId::ALL {
        let ranges = if id == SolutionId::S5 {
            ((0.6, 0.8), (2.0, 4.0), (0.5, 0.95))
        } else {
            ((0.3, 0.7), (0.1, 0.8), (0.1, 0.9))
        };
        for i in 0..20 {
            let (p, u) = sample(rng, "solution draw", |r| {
                let p = draw_params(r, ranges.0, ranges.1, ranges.2);
                let u = draw_u(r, u_range);
                holds_everywhere(id, &p, u).then_some((p, u))
            })?;
            jobs.push((SolutionCheck::Recurrence(id), i, p, u));
        }
    }
    for id in [SolutionId::S4, SolutionId::S6] {
        for i in 0..20 {
            let (p, u) = sample(rng, "asymptotic draw", |r| {
                let p = draw_params(r, (0.3, 0.45), (0.1, 0.8), (0.1, 0.9));
                let u = draw_u(r, u_range);
                (holds_everywhere(id, &p, u) && id.predicate_holds(&p, 20, u)).then_some((p, u))
            })?;
            jobs.push((SolutionCheck::Asymptotic(id), i, p, u));
        }
    }
    for (a, b) in [(SolutionId::S3, SolutionId::S4), (SolutionId::S4, SolutionId::S6)] {
        for i in 0..20 {
            let (p, u) = sample(rng, "proportionality draw", |r| {
                let p = draw_params(r, (0.3, 0.7), (0.1, 0.8), (0.1, 0.9));
                let u = draw_u(r, u_range);
                [a, b].iter().all(|id| holds_everywhere(*id, &p, u)).then_some((p, u))
            })?;
            jobs.push((SolutionCheck::Proportional(a, b), i, p, u));
        }
    }
    let tol = run.tolerance;
    Ok(run_items(serial, &jobs, |_, (kind, i, p, u)| {
        let pt = SpectralPoint::from_u(*u).expect("|u| > 1");
        let inputs = json!({ "params": params_json(p), "u": cx(*u) });
        let check = match *kind {
            SolutionCheck::Recurrence(id) => {
                let r = (0..=10)
                    .try_fold(0.0f64, |w, n| Ok(w.max(recurrence_residual(id, ArgumentFlag::U, p, n, &pt, &tol)?)));
                Check::new(format!("recurrence_{id}"), Some(*i), inputs, r, 1e-8)
            }
            SolutionCheck::Asymptotic(id) => {
                let scaled = |n: i64| -> Result<C64, Error> {
                    Ok(aqaw_core::qcore::powi(2.0 * u, n) * eval_solution(id, ArgumentFlag::U, p, n, &pt, &tol)?)
                };
                let r = scaled(19).and_then(|a| Ok(rel(a, scaled(20)?)));
                Check::new(format!("asymptotic_{id}"), Some(*i), inputs, r, 1e-6)
            }
            SolutionCheck::Proportional(a, b) => {
                let r = proportionality_variation((a, ArgumentFlag::U), (b, ArgumentFlag::U), p, &pt, 0..=8, &tol);
                Check::new(format!("proportional_{a}_{b}"), Some(*i), inputs, r, 1e-8)
            }
        };
        vec![check]
    }))
}

fn pincherle(rng: &mut ChaCha8Rng, run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let mut jobs = Vec::new();
    for i in 0..20 {
        let (p, u) = sample(rng, "pincherle draw", |r| {
            let p = draw_params(r, (0.3, 0.7), (0.1, 0.8), (0.05, 0.9));
            let u = draw_u(r, (1.3, 3.0));
            let q = p.q.value();
            ((p.s() * p.epsilon / (q * q)).norm() < 1.0 && p.epsilon.norm() < 1.0).then_some((p, u))
        })?;
        jobs.push((i, p, u));
    }
    let (tol, cfg) = (run.tolerance, run.cf);
    Ok(run_items(serial, &jobs, |_, (i, p, u)| {
        let pt = SpectralPoint::from_u(*u).expect("|u| > 1");
        let r = (|| -> Result<f64, Error> {
            let forms = [
                cf_direct(p, &pt, &cfg)?.value,
                cf_pincherle(p, &pt, &tol)?,
                closed_form_3_3(p, &pt, &tol)?.inv(),
                closed_form_3_4(p, &pt, &tol)?.inv(),
            ];
            let mut worst = 0.0f64;
            for a in 0..4 {
                for b in a + 1..4 {
                    worst = worst.max(rel(forms[a], forms[b]));
                }
            }
            Ok(worst)
        })();
        let inputs = json!({ "params": params_json(p), "u": cx(*u), "z": cx(pt.z) });
        vec![Check::new("cf_four_way", Some(*i), inputs, r, 1e-8)]
    }))
}

fn wronskian_suite(rng: &mut ChaCha8Rng, run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let mut jobs = Vec::new();
    for i in 0..20 {
        let (p, u) = sample(rng, "wronskian draw", |r| {
            let p = draw_params(r, (0.3, 0.7), (0.1, 0.8), (0.05, 0.9));
            let u = draw_u(r, (1.05, 3.0));
            (-1..=10).all(|n| SolutionId::S4.predicate_holds(&p, n, C64::new(2.0, 0.0))).then_some((p, u))
        })?;
        jobs.push((i, p, u));
    }
    let tol = run.tolerance;
    Ok(run_items(serial, &jobs, |_, (i, p, u)| {
        let u = *u;
        let inputs = json!({ "params": params_json(p), "u": cx(u) });
        let scaling = (|| -> Result<f64, Error> {
            let x = |k: i64| eval_solution_at(SolutionId::S4, p, k, u, &tol);
            let y = |k: i64| eval_solution_at(SolutionId::S4, p, k, u.inv(), &tol);
            let z = |k: i64| eval_solution_at(SolutionId::S2, p, k, u, &tol);
            let mut worst = 0.0f64;
            for n in 0..=8 {
                let b2 = coefficients(p, n)?.b2;
                worst = worst.max(rel(wronskian(x, y, n)?, b2 * wronskian(x, y, n - 1)?));
                worst = worst.max(rel(wronskian(x, z, n)?, b2 * wronskian(x, z, n - 1)?));
            }
            Ok(worst)
        })();
        let closed = (|| Ok(rel(x4_wronskian(p, u, -1, &tol)?, wronskian_closed_form(p, u, &tol)?)))();
        vec![
            Check::new("casoratian_scaling", Some(*i), inputs.clone(), scaling, 1e-10),
            Check::new("casoratian_closed_form", Some(*i), inputs, closed, 1e-8),
        ]
    }))
}

fn dougall(rng: &mut ChaCha8Rng, run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let mut jobs = Vec::new();
    for i in 0..20 {
        let (p, u) = sample(rng, "dougall draw", |r| {
            let p = draw_params(r, (0.3, 0.7), (0.1, 0.8), (0.05, 0.9));
            let u = C64::from_polar(1.0, r.gen_range(0.05..PI - 0.05));
            let q = p.q.value();
            ((p.s() * p.epsilon / (q * q)).norm() < 1.0).then_some((p, u))
        })?;
        jobs.push((i, p, u));
    }
    let tol = run.tolerance;
    let mut checks = run_items(serial, &jobs, |_, (i, p, u)| {
        let mut out = vec![Check::new(
            "q_dougall",
            Some(*i),
            json!({ "params": params_json(p), "u": cx(*u) }),
            qdougall_residual(p, *u, &tol),
            1e-9,
        )];
        let classical = p.with_epsilon(C64::new(1.0, 0.0)).expect("eps = 1 is admissible");
        let q = p.q.value();
        if (classical.s() / (q * q)).norm() < 1.0 {
            out.push(Check::new(
                "q_dougall_eps1",
                Some(*i),
                json!({ "params": params_json(&classical), "u": cx(*u) }),
                qdougall_residual(&classical, *u, &tol),
                1e-9,
            ));
        }
        out
    });
    let q = 0.5f64;
    let (al, be, ga) = (0.8, 0.7, 0.6);
    for m in 1..=3u32 {
        let p = QParameters::real(q, al, be, ga, q.powi(m as i32) / (al * be * ga), 1.0)?;
        for t in [PI / 3.0, 0.4, 2.2] {
            let u = C64::from_polar(1.0, t);
            checks.push(Check::new(
                format!("balanced_identity_m{m}"),
                None,
                json!({ "params": params_json(&p), "m": m, "u": cx(u) }),
                identity_4_10_residual(&p, m, u, &tol),
                1e-9,
            ));
        }
    }
    Ok(checks)
}

fn densities(p: &QParameters, xs: &[f64], tol: &ToleranceConfig, serial: bool) -> Result<Vec<f64>, Error> {
    if serial {
        xs.iter().map(|&x| weight_density(p, x, tol)).collect()
    } else {
        xs.par_iter().map(|&x| weight_density(p, x, tol)).collect()
    }
}

/// Checks at the configured parameters, which must pass the
/// no-discrete-spectrum guard.
fn orthogonality(run: &RunConfig, serial: bool) -> Result<Vec<Check>, CliError> {
    let p = &run.params;
    let tol = run.tolerance;
    let guard = discrete_spectrum_guard(p);
    if !guard.certified {
        return Err(Error::Guard(format!("absence of discrete spectrum not certified: {}", guard.reason)).into());
    }
    let pj = params_json(p);
    let mut checks = Vec::new();

    let mut grid = quadrature_abscissae(GRID_N + 1);
    grid.reverse();
    let dens = densities(p, &grid, &tol, serial)?;
    let nonpositive = dens.iter().filter(|&&d| d.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)).count();
    checks.push(Check::new(
        "weight_positive",
        None,
        json!({ "params": pj, "nodes": GRID_N }),
        Ok(nonpositive as f64),
        0.0,
    ));
    let alt = (|| {
        let mut worst = 0.0f64;
        for (&x, &d) in grid.iter().zip(&dens) {
            let a = weight_density_alt(p, x, &tol)?;
            worst = worst.max((a.value - d).abs() / d);
        }
        Ok(worst)
    })();
    checks.push(Check::new("weight_forms_agree", None, json!({ "params": pj, "nodes": GRID_N }), alt, 1e-8));

    let classical = p.with_epsilon(C64::new(1.0, 0.0))?;
    let classical_r = (|| {
        let mut worst = 0.0f64;
        for &x in &grid {
            let d = weight_density(&classical, x, &tol)?;
            let c = classical_aw_density(&classical, x, &tol)?;
            worst = worst.max((d - c).abs() / c);
        }
        Ok(worst)
    })();
    checks.push(Check::new(
        "weight_classical",
        None,
        json!({ "params": params_json(&classical), "nodes": GRID_N }),
        classical_r,
        1e-10,
    ));

    let thetas = quadrature_thetas(QUAD_N);
    let xs = quadrature_abscissae(QUAD_N);
    let nodes = quadrature_from_densities(&thetas, &densities(p, &xs, &tol, serial)?, QUAD_N);
    let quad = json!({ "params": pj, "quad_n": QUAD_N });
    let n_max = 5;
    let m = moment_matrix(p, n_max, &nodes)?;
    let norms = expected_norms(p, n_max)?;
    checks.push(Check::new("normalization", None, quad.clone(), Ok((m[0][0] - 1.0).abs()), 1e-6));
    checks.push(Check::new("orthogonality_matrix", None, quad.clone(), Ok(orthogonality_error(&m, &norms)), 1e-6));

    for z in [2.0, 5.0] {
        let pt = SpectralPoint::from_z(C64::new(z, 0.0));
        checks.push(Check::new(
            "stieltjes",
            None,
            json!({ "params": pj, "quad_n": QUAD_N, "z": z }),
            stieltjes_residual(p, &pt, &nodes, &run.cf),
            1e-6,
        ));
    }

    let eta = 1e-5;
    for x in [-0.8, -0.3, 0.0, 0.45, 0.9] {
        let r = (|| {
            let d = weight_density(p, x, &tol)?;
            let b1 = boundary_density(p, x, eta, &tol)?;
            let b2 = boundary_density(p, x, 2.0 * eta, &tol)?;
            Ok((2.0 * b1 - b2 - d).abs() / d)
        })();
        checks.push(Check::new("boundary_value", None, json!({ "params": pj, "x": x, "eta": eta }), r, 1e-6));
    }
    Ok(checks)
}
