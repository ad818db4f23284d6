use std::path::PathBuf;
use std::process::Command;

use aqaw_cli::config::{OutputFormat, RunConfig};
use aqaw_cli::eval::{cmd_eval, EvalArgs, EvalKind};
use aqaw_cli::table::{cmd_table, TableArgs, TableKind};
use aqaw_cli::verify::{cmd_verify, Suite};
use aqaw_core::aqaw::{classical_coefficients, coefficients, eval_assoc_polynomial};
use aqaw_core::cf::{cf_direct, convergents};
use aqaw_core::hyperseries::eval_w;
use aqaw_core::solutions::eval_solution;
use aqaw_core::spectral::{weight_density, WeightTable};
use aqaw_core::{ArgumentFlag, QParameters, SolutionId, SpectralPoint, VwpW, C64};
use serde_json::Value;

fn aqaw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_aqaw")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn bits(v: &Value) -> [u64; 2] {
    [v[0].as_f64().unwrap().to_bits(), v[1].as_f64().unwrap().to_bits()]
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aqaw-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn config_defaults_and_complex_params() {
    let d = RunConfig::default();
    assert_eq!(d.params, QParameters::real(0.5, 0.4, 0.4, 0.4, 0.4, 0.5).unwrap());
    assert_eq!(d.output_format, OutputFormat::Json);
    let c =
        RunConfig::from_json(r#"{"params": {"alpha": [0.3, 0.1], "epsilon": 0.7}, "seed": 9, "output_format": "csv"}"#)
            .unwrap();
    assert_eq!(c.params.alpha, C64::new(0.3, 0.1));
    assert_eq!(c.params.beta, C64::new(0.4, 0.0));
    assert_eq!(c.params.epsilon, C64::new(0.7, 0.0));
    assert_eq!((c.seed, c.output_format), (9, OutputFormat::Csv));
    for bad in
        [r#"{"params": {"q": 1.5}}"#, r#"{"tolerance": {"rel_tol": -1}}"#, r#"{"cf": {"max_depth": 0}}"#, r#"{"x": 1}"#]
    {
        assert_eq!(RunConfig::from_json(bad).unwrap_err().exit_code(), 2, "{bad}");
    }
}

#[test]
fn eval_matches_library_bit_for_bit() {
    let run = RunConfig::default();
    let (p, tol) = (run.params, run.tolerance);
    let z = C64::new(1.7, 0.4);
    let pt = SpectralPoint::from_z(z);

    let (code, out) = aqaw(&["eval", "cf", "--z-re", "1.7", "--z-im", "0.4", "--serial"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let lib = cf_direct(&p, &pt, &run.cf).unwrap();
    assert_eq!(bits(&v["value"]), [lib.value.re.to_bits(), lib.value.im.to_bits()]);
    assert_eq!(v["terms_used"], lib.terms_used);

    let (_, out) =
        aqaw(&["eval", "solution", "--solution", "S4", "--n", "3", "--z-re", "1.7", "--z-im", "0.4", "--inverse"]);
    let lib = eval_solution(SolutionId::S4, ArgumentFlag::InvU, &p, 3, &pt, &tol).unwrap();
    assert_eq!(bits(&json(&out)["value"]), [lib.re.to_bits(), lib.im.to_bits()]);

    let (_, out) = aqaw(&["eval", "polynomial", "--n", "6", "--z-re", "1.7", "--z-im", "0.4"]);
    let lib = eval_assoc_polynomial(&p, 6, &pt).unwrap();
    assert_eq!(bits(&json(&out)["value"]), [lib.re.to_bits(), lib.im.to_bits()]);

    let (_, out) = aqaw(&[
        "eval", "W", "--num", "0.2", "--num", "0.3", "--num", "0.4", "--num", "0.5,0.1", "--num", "0.6", "--num", "0.7",
    ]);
    let r = |x: f64| C64::new(x, 0.0);
    let w = VwpW::new(r(0.2), [r(0.3), r(0.4), C64::new(0.5, 0.1), r(0.6), r(0.7)], p.q);
    let lib = eval_w(&w, &tol).unwrap().value;
    assert_eq!(bits(&json(&out)["value"]), [lib.re.to_bits(), lib.im.to_bits()]);

    let (code, out) = aqaw(&["eval", "weight", "--x", "0.25"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let lib = weight_density(&p, 0.25, &tol).unwrap();
    assert!(lib > 0.0);
    assert_eq!(v["value"][0].as_f64().unwrap().to_bits(), lib.to_bits());
    assert_eq!(v["domain"]["guard_certified"], true);
}

#[test]
fn eval_in_process_equals_library() {
    let run = RunConfig::default();
    let args = EvalArgs { x: Some(-0.6), ..EvalArgs::default() };
    let r = cmd_eval(EvalKind::Weight, &run, &args).unwrap();
    assert_eq!(r.value.re.to_bits(), weight_density(&run.params, -0.6, &run.tolerance).unwrap().to_bits());
    let args = EvalArgs { n: Some(0), z: Some(C64::new(-3.0, 8.0)), ..EvalArgs::default() };
    assert_eq!(cmd_eval(EvalKind::Polynomial, &run, &args).unwrap().value, C64::new(1.0, 0.0));
}

#[test]
fn exit_codes() {
    let (code, out) = aqaw(&["eval", "cf", "--z-re", "-0.4"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["reason"], "continuous spectrum");

    let pole =
        temp_file("pole.json", r#"{"params": {"alpha": 0.5, "beta": 0.5, "gamma": 0.5, "delta": 0.5, "epsilon": 2}}"#);
    let (code, out) = aqaw(&["verify", "all", "--config", pole.to_str().unwrap()]);
    assert_eq!(code, 2);
    let e = &json(&out)["error"];
    assert_eq!(e["kind"], "pole");
    assert_eq!(e["factor"], "1 - s eps^2 q^(2n-2)");

    let budget = temp_file("budget.json", r#"{"cf": {"max_depth": 3}}"#);
    let (code, out) = aqaw(&["eval", "cf", "--z-re", "1.05", "--config", budget.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["error"]["kind"], "non_convergence");

    let loose = temp_file("loose.json", r#"{"tolerance": {"rel_tol": 1e-4}}"#);
    let (code, out) = aqaw(&["verify", "dougall", "--config", loose.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["passed"], false);

    let guard = temp_file("guard.json", r#"{"params": {"alpha": 0.9}}"#);
    let (code, out) = aqaw(&["verify", "orthogonality", "--config", guard.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "guard");

    assert_eq!(aqaw(&["eval", "polynomial", "--n", "-1", "--z-re", "2"]).0, 2);
    assert_eq!(aqaw(&["eval", "W", "--num", "0.2"]).0, 2);
    assert_eq!(aqaw(&["eval", "phi", "--num", "0.2", "--num", "0.3", "--den", "0.4", "--z-re", "1.5"]).0, 2);
    assert_eq!(aqaw(&["table", "convergents", "--depth", "0"]).0, 2);
    assert_eq!(aqaw(&["eval", "solution", "--solution", "S7", "--z-re", "2"]).0, 2);
    assert_eq!(aqaw(&["eval", "polynomial", "--n", "0", "--z-re", "0.3"]).0, 0);
}

#[test]
fn verify_reports_are_deterministic() {
    let (c1, a) = aqaw(&["verify", "pincherle", "--seed", "11", "--serial"]);
    let (c2, b) = aqaw(&["verify", "pincherle", "--seed", "11"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 20);
    for (i, c) in checks.iter().enumerate() {
        assert_eq!(c["draw"], i);
        assert!(c["inputs"]["params"]["alpha"].is_array());
        assert_eq!(c["threshold"], 1e-8);
        assert_eq!(c["pass"], true);
    }
    let run = RunConfig { seed: 11, ..RunConfig::default() };
    let lib = cmd_verify(Suite::Pincherle, &run, true).unwrap();
    assert_eq!(lib.render(OutputFormat::Json), a);
}

#[test]
fn verify_dougall_passes_at_default_seed() {
    let (code, out) = aqaw(&["verify", "dougall"]);
    assert_eq!(code, 0);
    let v = json(&out);
    for c in v["suites"][0]["checks"].as_array().unwrap() {
        assert!(c["residual"].as_f64().unwrap() <= 1e-9, "{c}");
    }
}

#[test]
fn weight_table() {
    let (code, out) = aqaw(&["table", "weight", "--grid-n", "101", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,density"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (x, d) = l.split_once(',').unwrap();
            assert!(d.split('e').next().unwrap().trim_start_matches('-').len() >= 17, "{d}");
            (x.parse().unwrap(), d.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|&(_, d)| d >= 0.0));
    let run = RunConfig::default();
    let lib = WeightTable::build(&run.params, 102, &run.tolerance).unwrap();
    for (&(x, d), (&lx, &ld)) in rows.iter().zip(lib.nodes.iter().zip(&lib.density)) {
        assert_eq!((x.to_bits(), d.to_bits()), (lx.to_bits(), ld.to_bits()));
    }
    let serial = cmd_table(TableKind::Weight, &run, &TableArgs::default(), true).unwrap();
    let parallel = cmd_table(TableKind::Weight, &run, &TableArgs::default(), false).unwrap();
    assert_eq!(serial, parallel);
}

#[test]
fn coefficients_table_reduces_to_classical() {
    let path = temp_file(
        "classical.json",
        r#"{"params": {"alpha": 0.6, "beta": 0.5, "gamma": [0.3, 0.2], "delta": 0.25, "epsilon": 1}}"#,
    );
    let (code, out) = aqaw(&["table", "coefficients", "--n", "10", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let p = RunConfig::load(&path).unwrap().params;
    for (n, row) in rows.iter().enumerate() {
        let c = classical_coefficients(p.q, p.abcd(), n as i64).unwrap();
        let b2 = C64::new(row["b2_re"].as_f64().unwrap(), row["b2_im"].as_f64().unwrap());
        assert!((b2 - c.b2).norm() <= 1e-13 * c.b2.norm().max(1e-300), "n = {n}: {b2} vs {}", c.b2);
        assert_eq!(row["n"], n);
        let lib = coefficients(&p, n as i64).unwrap();
        assert_eq!(row["a_re"].as_f64().unwrap().to_bits(), lib.a.re.to_bits());
    }
}

#[test]
fn convergents_table_decays() {
    let (code, out) = aqaw(&["table", "convergents", "--depth", "50", "--z-re", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,re,im,delta"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 50);
    let deltas: Vec<f64> = rows.iter().map(|r| r[3]).collect();
    let floor = deltas.iter().position(|&d| d <= 1e-14).unwrap();
    assert!(floor >= 6);
    for w in deltas[..floor].windows(2) {
        assert!(w[1] < 0.95 * w[0], "{deltas:?}");
    }
    let run = RunConfig::default();
    let lib = convergents(&run.params, C64::new(2.0, 0.0), 50, &run.cf).unwrap();
    for (row, c) in rows.iter().zip(&lib) {
        assert_eq!((row[1].to_bits(), row[2].to_bits()), (c.re.to_bits(), c.im.to_bits()));
    }
}

#[test]
fn table_writes_file() {
    let dir = std::env::temp_dir().join(format!("aqaw-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weights.json");
    let (code, out) = aqaw(&["table", "weight", "--grid-n", "11", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v = json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v.as_array().unwrap().len(), 11);
    assert!(v[0]["x"].as_f64().unwrap() < v[10]["x"].as_f64().unwrap());
}
