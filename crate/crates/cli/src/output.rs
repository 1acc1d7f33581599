//! Stable serialization of reports and sweep summaries.
//!
//! JSON objects carry sorted keys and every numeric value as a string:
//! exact fractions as `n/d`, floats with 17 significant digits, infinities
//! as `+inf` / `-inf`. The same renderings feed the flat CSV format.

use serde_json::{json, Map, Value};

use assoc2x2::oracle::SweepSummary;
use assoc2x2::report::{MeasureReport, ReportValue};
use assoc2x2::sign::SignPolicy;

fn policy_fields(policy: &SignPolicy) -> (&'static str, Value) {
    match policy {
        SignPolicy::Exact => ("exact", Value::Null),
        SignPolicy::Float { zero_band } => (
            "float",
            Value::String(assoc2x2::report::render_f64(*zero_band)),
        ),
    }
}

/// The analyze report as a JSON document.
pub fn report_to_json(report: &MeasureReport, table: &[ReportValue; 4]) -> Value {
    let mut measures = Map::new();
    for (key, entry) in &report.entries {
        let mut fields = Map::new();
        fields.insert("label".into(), json!(entry.label));
        match (&entry.value, &entry.omitted) {
            (Some(value), _) => {
                fields.insert("value".into(), json!(value.render()));
                fields.insert(
                    "sign".into(),
                    match entry.sign {
                        Some(sign) => json!(sign.word()),
                        None => Value::Null,
                    },
                );
            }
            (None, Some(reason)) => {
                fields.insert("omitted".into(), json!(reason));
            }
            (None, None) => unreachable!("entries hold a value or a reason"),
        }
        measures.insert((*key).into(), Value::Object(fields));
    }
    let (mode, zero_band) = policy_fields(&report.policy);
    json!({
        "delta_sign": report.delta_sign.word(),
        "measures": Value::Object(measures),
        "mode": mode,
        "table": {
            "p": table[0].render(),
            "q": table[1].render(),
            "r": table[2].render(),
            "s": table[3].render(),
        },
        "verdict": report.verdict.word(),
        "zero_band": zero_band,
    })
}

/// The analyze report as flat CSV with a header row; the final row carries
/// the verdict.
pub fn report_to_csv(report: &MeasureReport) -> String {
    let mut out = String::from("measure,label,value,sign,omitted\n");
    for (key, entry) in &report.entries {
        let value = entry
            .value
            .as_ref()
            .map(ReportValue::render)
            .unwrap_or_default();
        let sign = entry.sign.map(|s| s.word()).unwrap_or_default();
        let omitted = entry.omitted.unwrap_or_default();
        out.push_str(&format!(
            "{key},{label},{value},{sign},{omitted}\n",
            label = entry.label
        ));
    }
    out.push_str(&format!("verdict,,{},,\n", report.verdict.word()));
    out
}

/// Sweep summary as a JSON document.
pub fn summary_to_json(summary: &SweepSummary) -> Value {
    let failures: Vec<Value> = summary
        .failures
        .iter()
        .map(|failure| {
            json!({
                "counts": {
                    "n_p": failure.counts.n_p,
                    "n_q": failure.counts.n_q,
                    "n_r": failure.counts.n_r,
                    "n_s": failure.counts.n_s,
                },
                "dissent": failure.dissent,
            })
        })
        .collect();
    json!({
        "failures": failures,
        "n_max": summary.n_max,
        "tables_checked": summary.tables_checked,
    })
}

/// Sweep summary as flat CSV: one row of totals, then one row per failure.
pub fn summary_to_csv(summary: &SweepSummary) -> String {
    let mut out = String::from("n_max,tables_checked,failures\n");
    out.push_str(&format!(
        "{},{},{}\n",
        summary.n_max,
        summary.tables_checked,
        summary.failures.len()
    ));
    if !summary.failures.is_empty() {
        out.push_str("n_p,n_q,n_r,n_s,dissent\n");
        for failure in &summary.failures {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                failure.counts.n_p,
                failure.counts.n_q,
                failure.counts.n_r,
                failure.counts.n_s,
                failure.dissent
            ));
        }
    }
    out
}
