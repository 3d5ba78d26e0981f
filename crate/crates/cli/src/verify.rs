use lrb::homological::Analysis;
use lrb::io::{parse_json, to_pretty_json, MonoidJson};
use lrb::oracle::{idempotent_report, oracle_crosscheck};
use lrb::{Lrb, LrbError};
use serde_json::{json, Map, Value};

use crate::{read_text, CliResult, Failure, VerifyArgs};

fn failed(e: &LrbError) -> Value {
    json!({ "passed": false, "error": e.kind(), "message": e.to_string() })
}

fn entry<T: serde::Serialize>(value: &T, passed: bool) -> Value {
    let mut v = serde_json::to_value(value).expect("report serializes");
    if let Value::Object(m) = &mut v {
        m.insert("passed".into(), Value::Bool(passed));
    }
    v
}

fn check(b: &Lrb, args: &VerifyArgs, name: &str) -> Value {
    let analysis = Analysis::new(b);
    let outcome = match name {
        "idempotents" => idempotent_report(b, args.field).map(|r| entry(&r, r.passed())),
        "oracle" => {
            let max_degree = args.max_degree.unwrap_or_else(|| analysis.chain_bound());
            oracle_crosscheck(b, args.field, max_degree, args.budget).map(|r| entry(&r, r.passed()))
        }
        "geometric" => analysis
            .geometric_commutation_check(args.field)
            .map(|r| entry(&r, r.agree)),
        _ => unreachable!("unknown check {name}"),
    };
    outcome.unwrap_or_else(|e| failed(&e))
}

/// Runs the requested checks (axioms, idempotents and oracle by default)
/// and prints one JSON report. Fails with exit code 1 when a check fails.
pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let raw: MonoidJson = parse_json(&read_text(&args.monoid)?)?;
    let any = args.axioms || args.idempotents || args.oracle || args.geometric;
    let mut checks = Map::new();

    let b = match raw.to_lrb() {
        Ok(b) => b,
        Err(e) if args.axioms || !any => {
            checks.insert("axioms".into(), failed(&e));
            let report = json!({ "passed": false, "checks": checks });
            print!("{}", to_pretty_json(&report));
            return Err(Failure::Verification);
        }
        Err(e) => return Err(e.into()),
    };
    if args.axioms || !any {
        checks.insert("axioms".into(), json!({ "passed": true, "size": b.size() }));
    }
    for (on, name) in [
        (args.idempotents || !any, "idempotents"),
        (args.oracle || !any, "oracle"),
        (args.geometric, "geometric"),
    ] {
        if on {
            checks.insert(name.into(), check(&b, args, name));
        }
    }

    let passed = checks.values().all(|c| c["passed"] == Value::Bool(true));
    let global_dimension = match Analysis::new(&b).global_dimension(args.field) {
        Ok(d) => json!(d),
        Err(e) => failed(&e),
    };
    let report = json!({
        "passed": passed,
        "field": args.field.to_string(),
        "size": b.size(),
        "global_dimension": global_dimension,
        "checks": checks,
    });
    print!("{}", to_pretty_json(&report));
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
