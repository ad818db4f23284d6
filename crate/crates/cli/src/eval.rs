//! `aqaw eval`: a single value from one of the library evaluators.

use aqaw_core::aqaw::eval_assoc_polynomial;
use aqaw_core::cf::cf_direct;
use aqaw_core::hyperseries::{eval_phi, eval_w};
use aqaw_core::solutions::{eval_solution, select_minimal, UNIT_CIRCLE_BAND};
use aqaw_core::spectral::{discrete_spectrum_guard, weight_density};
use aqaw_core::{ArgumentFlag, PhiSeriesSpec, SolutionId, SpectralPoint, VwpW, C64};
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::output::{pretty, Cell, Table};

/// Number of indices checked when deciding real orthogonality on the cut.
const ORTHOGONALITY_CHECK_DEPTH: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalKind {
    Phi,
    #[value(name = "W", alias = "w")]
    W,
    Solution,
    Polynomial,
    Cf,
    Weight,
}

impl EvalKind {
    pub fn name(&self) -> &'static str {
        match self {
            EvalKind::Phi => "phi",
            EvalKind::W => "W",
            EvalKind::Solution => "solution",
            EvalKind::Polynomial => "polynomial",
            EvalKind::Cf => "cf",
            EvalKind::Weight => "weight",
        }
    }
}

/// Kind-specific inputs. Unused fields are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalArgs {
    pub n: Option<i64>,
    pub z: Option<C64>,
    pub x: Option<f64>,
    pub solution: Option<SolutionId>,
    pub inverse: bool,
    pub numerators: Vec<C64>,
    pub denominators: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub kind: EvalKind,
    pub value: C64,
    pub terms_used: Option<usize>,
    pub converged: bool,
    pub tail_estimate: f64,
    pub domain: Value,
}

pub fn cx(z: C64) -> Value {
    json!([z.re, z.im])
}

impl EvalResult {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "value": cx(self.value),
            "terms_used": self.terms_used,
            "converged": self.converged,
            "tail_estimate": self.tail_estimate,
            "domain": self.domain,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => pretty(&self.to_json()),
            OutputFormat::Csv => {
                let mut t = Table::new(vec!["kind", "re", "im", "terms_used", "converged", "tail_estimate"]);
                t.push(vec![
                    Cell::Text(self.kind.name().into()),
                    Cell::Float(self.value.re),
                    Cell::Float(self.value.im),
                    self.terms_used.map_or(Cell::Text(String::new()), |k| Cell::Int(k as i64)),
                    Cell::Bool(self.converged),
                    Cell::Float(self.tail_estimate),
                ]);
                t.to_csv()
            }
        }
    }
}

fn need<T>(v: Option<T>, flag: &str, kind: EvalKind) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Argument(format!("eval {} needs {flag}", kind.name())))
}

fn nonnegative(n: i64) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| CliError::Argument(format!("n must be nonnegative, got {n}")))
}

pub fn cmd_eval(kind: EvalKind, run: &RunConfig, args: &EvalArgs) -> Result<EvalResult, CliError> {
    let p = &run.params;
    let tol = &run.tolerance;
    match kind {
        EvalKind::Phi => {
            let z = need(args.z, "--z-re/--z-im (series argument)", kind)?;
            if args.numerators.len() != args.denominators.len() + 1 {
                return Err(CliError::Argument(format!(
                    "an r+1phi_r series needs one more numerator than denominators, got {} and {}",
                    args.numerators.len(),
                    args.denominators.len()
                )));
            }
            let spec = PhiSeriesSpec::new(args.numerators.clone(), args.denominators.clone(), p.q, z)?;
            let v = eval_phi(&spec, tol)?;
            Ok(EvalResult {
                kind,
                value: v.value,
                terms_used: Some(v.terms_used),
                converged: v.converged,
                tail_estimate: v.tail_estimate,
                domain: json!({
                    "argument": cx(z),
                    "argument_modulus": z.norm(),
                    "terminating_order": spec.terminating_order(),
                    "condition": "|z| < 1 or terminating",
                }),
            })
        }
        EvalKind::W => {
            let [a, b, c, d, e, f]: [C64; 6] = args.numerators.as_slice().try_into().map_err(|_| {
                CliError::Argument(format!(
                    "eval W needs six --num values a, b, c, d, e, f, got {}",
                    args.numerators.len()
                ))
            })?;
            let w = VwpW::new(a, [b, c, d, e, f], p.q);
            let v = eval_w(&w, tol)?;
            Ok(EvalResult {
                kind,
                value: v.value,
                terms_used: Some(v.terms_used),
                converged: v.converged,
                tail_estimate: v.tail_estimate,
                domain: json!({
                    "argument": cx(w.argument()),
                    "argument_modulus": w.argument().norm(),
                    "terminating_order": w.terminating_order(),
                    "in_domain": w.in_domain(),
                    "condition": "|a^2 q^2/(bcdef)| < 1 or terminating",
                }),
            })
        }
        EvalKind::Solution => {
            let id = need(args.solution, "--solution", kind)?;
            let n = args.n.unwrap_or(0);
            let pt = SpectralPoint::from_z(need(args.z, "--z-re/--z-im", kind)?);
            let flag = if args.inverse { ArgumentFlag::InvU } else { ArgumentFlag::U };
            let value = eval_solution(id, flag, p, n, &pt, tol)?;
            let u = flag.apply(pt.u);
            Ok(EvalResult {
                kind,
                value,
                terms_used: None,
                converged: true,
                tail_estimate: tol.rel_tol * value.norm(),
                domain: json!({
                    "solution": id.to_string(),
                    "argument": if args.inverse { "1/u" } else { "u" },
                    "u": cx(u),
                    "n": n,
                    "predicate": id.predicate_text(),
                    "predicate_modulus": id.predicate_modulus(p, n, u),
                }),
            })
        }
        EvalKind::Polynomial => {
            let n = nonnegative(need(args.n, "--n", kind)?)?;
            let pt = SpectralPoint::from_z(need(args.z, "--z-re/--z-im", kind)?);
            let value = eval_assoc_polynomial(p, n, &pt)?;
            Ok(EvalResult {
                kind,
                value,
                terms_used: Some(n),
                converged: true,
                tail_estimate: 0.0,
                domain: json!({ "z": cx(pt.z), "u": cx(pt.u), "n": n, "condition": "polynomial: every z" }),
            })
        }
        EvalKind::Cf => {
            let pt = SpectralPoint::from_z(need(args.z, "--z-re/--z-im", kind)?);
            if pt.on_unit_circle(UNIT_CIRCLE_BAND) && p.real_orthogonality(ORTHOGONALITY_CHECK_DEPTH) {
                return Err(CliError::ContinuousSpectrum(format!(
                    "z = {} lies on [-1, 1] inside the support of the orthogonality measure",
                    pt.z
                )));
            }
            let v = cf_direct(p, &pt, &run.cf)?;
            let minimal = select_minimal(p, &pt, 0).ok().map(|id| id.to_string());
            Ok(EvalResult {
                kind,
                value: v.value,
                terms_used: Some(v.terms_used),
                converged: v.converged,
                tail_estimate: v.tail_estimate,
                domain: json!({
                    "z": cx(pt.z),
                    "u": cx(pt.u),
                    "u_modulus": pt.u.norm(),
                    "minimal_solution": minimal,
                    "condition": "|u| > 1",
                }),
            })
        }
        EvalKind::Weight => {
            let x = need(args.x, "--x", kind)?;
            let d = weight_density(p, x, tol)?;
            let guard = discrete_spectrum_guard(p);
            Ok(EvalResult {
                kind,
                value: C64::new(d, 0.0),
                terms_used: None,
                converged: true,
                tail_estimate: tol.rel_tol * d.abs(),
                domain: json!({
                    "x": x,
                    "interior": x.abs() < 1.0,
                    "guard_certified": guard.certified,
                    "guard_reason": guard.reason,
                }),
            })
        }
    }
}
