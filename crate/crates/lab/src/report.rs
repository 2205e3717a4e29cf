//! Report objects and their JSON and text renderings.

use std::fmt::Write as _;

use serde_json::{json, Value};

use cva_core::{CheckReport, Comparison, Valuation};

pub fn comparison_json(c: Comparison) -> Value {
    match c {
        Comparison::Exact => json!("exact"),
        Comparison::Truncated(n) => json!(format!("truncated({n})")),
    }
}

pub fn report_json<T>(r: &CheckReport<T>, encode: &dyn Fn(&Valuation<T>) -> Value) -> Value {
    let laws: Vec<Value> = r
        .laws
        .iter()
        .map(|l| {
            let cx = l.counterexample.as_ref().map(|cx| {
                let witnesses: Vec<Value> =
                    cx.witnesses.iter().map(|(label, v)| json!({"label": label, "valuation": encode(v)})).collect();
                json!({"detail": cx.detail, "witnesses": witnesses})
            });
            json!({
                "law": l.law,
                "passed": l.passed(),
                "cases": l.cases,
                "skipped": l.skipped,
                "counterexample": cx,
            })
        })
        .collect();
    json!({
        "subject": r.subject,
        "seed": r.seed,
        "comparison": comparison_json(r.comparison),
        "passed": r.passed(),
        "laws": laws,
    })
}

/// Renders a command output object. Reports get a line per law; anything
/// else falls back to pretty JSON.
pub fn render_text(out: &Value) -> String {
    let Some(reports) = out.get("reports").and_then(Value::as_array) else {
        return format!("{}\n", serde_json::to_string_pretty(out).unwrap_or_default());
    };
    let mut s = String::new();
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "{} {} (seed {})",
        verdict(out["passed"].as_bool().unwrap_or(false)),
        out["command"].as_str().unwrap_or(""),
        out["seed"]
    );
    for r in reports {
        let _ = writeln!(
            s,
            "  {} {} [{}]",
            verdict(r["passed"].as_bool().unwrap_or(false)),
            r["subject"].as_str().unwrap_or(""),
            r["comparison"].as_str().unwrap_or("")
        );
        for l in r["laws"].as_array().into_iter().flatten() {
            let _ = writeln!(
                s,
                "    {} {}: {} cases, {} skipped",
                verdict(l["passed"].as_bool().unwrap_or(false)),
                l["law"].as_str().unwrap_or(""),
                l["cases"],
                l["skipped"]
            );
            if let Some(cx) = l.get("counterexample").filter(|c| !c.is_null()) {
                let _ = writeln!(s, "      {}", cx["detail"].as_str().unwrap_or(""));
                for w in cx["witnesses"].as_array().into_iter().flatten() {
                    let _ = writeln!(s, "      {} = {}", w["label"].as_str().unwrap_or(""), w["valuation"]);
                }
            }
        }
    }
    s
}
