//! JSON and CSV encodings of command results.
//!
//! Every command produces one JSON document
//! `{command, params, report, pass?}`. Exact rationals are written as
//! strings (`"4"`, `"-1/3"`); floats only appear for normalized errors,
//! frequencies and timings. The CSV form is derived from the JSON document,
//! so both always carry the same data.

use serde_json::{json, Map, Value};
use shortint::interval_lab::{ChebotarevReport, ExperimentReport, LargeQRow, MorseScan};
use shortint::morse_galois::{CancellationVerdict, MorseDiagnostics};
use shortint::{CycleType, Rational};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn joint_key(types: &[CycleType]) -> String {
    types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("|")
}

pub fn experiment(rep: &ExperimentReport<Rational>) -> Value {
    let counts: Map<String, Value> = rep
        .cycle_type_counts
        .iter()
        .map(|(k, v)| (joint_key(k), json!(v)))
        .collect();
    json!({
        "summary": rep.summary,
        "q": rep.q,
        "raw_sum": rational(&rep.raw_sum),
        "predicted_constant": rational(&rep.predicted_constant),
        "prediction": rep.prediction.to_string(),
        "main_term": rational(&rep.main_term),
        "abs_error": rational(&rep.abs_error),
        "normalized_error": rep.normalized_error,
        "cycle_type_counts": counts,
        "nonsquarefree_count": rep.nonsquarefree_count,
        "elapsed_ms": rep.elapsed.as_secs_f64() * 1e3,
    })
}

pub fn chebotarev(rep: &ChebotarevReport) -> Value {
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "cycle_type": joint_key(&r.cycle_types),
                "count": r.count,
                "frequency": r.frequency,
                "predicted": r.predicted,
                "deviation": r.deviation,
            })
        })
        .collect();
    json!({
        "summary": rep.summary,
        "q": rep.q,
        "squarefree_total": rep.squarefree_total,
        "nonsquarefree_count": rep.nonsquarefree_count,
        "total_variation": rep.total_variation,
        "max_scaled_deviation": rep.max_scaled_deviation,
        "rows": rows,
        "elapsed_ms": rep.elapsed.as_secs_f64() * 1e3,
    })
}

pub fn morse(diag: &MorseDiagnostics) -> Value {
    json!({
        "is_morse": diag.is_morse,
        "derivative_degree": diag.derivative_degree,
        "derivative_squarefree": diag.derivative_squarefree,
        "distinct_critical_values": diag.distinct_critical_values,
        "hypothesis_warning": diag.hypothesis_warning,
        "method": format!("{:?}", diag.method),
    })
}

pub fn verdict(v: &CancellationVerdict) -> Value {
    json!({
        "kind": format!("{:?}", v.kind),
        "sign": v.sign,
        "witness": v.witness.to_string(),
        "exponents": v.exponents,
    })
}

pub fn morse_scan(scan: &MorseScan) -> Value {
    json!({
        "q": scan.q,
        "count": scan.count(),
        "bad_s": scan.bad_s.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "hypothesis_violated": scan.hypothesis_violated,
    })
}

pub fn large_q_row(row: &LargeQRow) -> Value {
    json!({
        "p": row.p,
        "l": row.l,
        "q": row.q,
        "f": row.f.to_string(),
        "s": row.s.to_string(),
        "alpha": row.alpha.to_string(),
        "is_morse": row.is_morse,
        "single_sums": row.single_sums.iter().map(rational).collect::<Vec<_>>(),
        "product_sum": rational(&row.product_sum),
        "nonsquarefree_count": row.nonsquarefree_count,
        "multiplicity_two": row.multiplicity_two,
        "singles_small": row.singles_small,
        "product_large": row.product_large,
        "tolerance": row.tolerance,
        "pass": row.passed(),
    })
}

pub fn document(command: &str, params: Value, report: Value, pass: Option<bool>) -> Value {
    let mut doc = json!({ "command": command, "params": params, "report": report });
    if let Some(p) = pass {
        doc["pass"] = Value::Bool(p);
    }
    doc
}

/// Removes every `elapsed_ms` entry.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn is_row_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

type Row = Vec<(String, String)>;

fn flatten_fields(prefix: &str, v: &Value, out: &mut Row) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                if val.is_object() {
                    flatten_fields(&key, val, out);
                } else {
                    out.push((key, scalar(val)));
                }
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

/// Splits the report into summary columns and row sections.
fn collect(prefix: &str, v: &Value, summary: &mut Row, sections: &mut Vec<(String, Vec<Row>)>) {
    let Value::Object(map) = v else {
        summary.push((prefix.to_string(), scalar(v)));
        return;
    };
    for (k, val) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        if k == "cycle_type_counts" {
            if let Value::Object(counts) = val {
                let rows = counts
                    .iter()
                    .map(|(t, c)| vec![("cycle_type".to_string(), t.clone()), ("count".to_string(), scalar(c))])
                    .collect();
                sections.push((key, rows));
                continue;
            }
        }
        if is_row_list(val) {
            let rows = val
                .as_array()
                .expect("row list")
                .iter()
                .map(|item| {
                    let mut row = Row::new();
                    flatten_fields("", item, &mut row);
                    row
                })
                .collect();
            sections.push((key, rows));
        } else if val.is_object() {
            collect(&key, val, summary, sections);
        } else {
            summary.push((key, scalar(val)));
        }
    }
}

/// One row per element of each list in the report (cycle types, checks,
/// table rows), with the scalar summary columns repeated on every row.
pub fn to_csv(doc: &Value) -> String {
    let mut summary: Row = vec![("command".to_string(), scalar(&doc["command"]))];
    let mut sections = Vec::new();
    if let Some(params) = doc.get("params") {
        let mut p = Row::new();
        flatten_fields("params", params, &mut p);
        summary.extend(p);
    }
    if let Some(rep) = doc.get("report") {
        collect("", rep, &mut summary, &mut sections);
    }
    if let Some(pass) = doc.get("pass") {
        summary.push(("pass".to_string(), scalar(pass)));
    }
    let mut row_columns: Vec<String> = Vec::new();
    for (_, rows) in &sections {
        for row in rows {
            for (k, _) in row {
                if !row_columns.contains(k) {
                    row_columns.push(k.clone());
                }
            }
        }
    }
    let mut header: Vec<String> = summary.iter().map(|(k, _)| k.clone()).collect();
    if !sections.is_empty() {
        header.push("section".to_string());
        header.extend(row_columns.iter().cloned());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    let base: Vec<String> = summary.iter().map(|(_, v)| v.clone()).collect();
    if sections.is_empty() {
        w.write_record(&base).expect("in-memory write");
    }
    for (name, rows) in &sections {
        for row in rows {
            let mut record = base.clone();
            record.push(name.clone());
            for col in &row_columns {
                record.push(row.iter().find(|(k, _)| k == col).map(|(_, v)| v.clone()).unwrap_or_default());
            }
            w.write_record(&record).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_per_cycle_type() {
        let doc = document(
            "sum",
            json!({"p": 7, "f": "x^3"}),
            json!({"raw_sum": "4", "cycle_type_counts": {"3": 4, "2,1": 0, "1,1,1": 2}, "nonsquarefree_count": 1}),
            None,
        );
        let csv = to_csv(&doc);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "command,params.f,params.p,nonsquarefree_count,raw_sum,section,cycle_type,count");
        assert_eq!(lines.len(), 4);
        assert!(lines[1..].iter().all(|l| l.starts_with("sum,x^3,7,1,4,cycle_type_counts,")));
        assert!(lines.contains(&"sum,x^3,7,1,4,cycle_type_counts,\"2,1\",0"));
    }

    #[test]
    fn csv_without_lists_is_one_row() {
        let doc = document("gauss", json!({"p": 2, "d": 2}), json!({"enumerated": 1, "formula": 1}), Some(true));
        let csv = to_csv(&doc);
        assert_eq!(csv, "command,params.d,params.p,enumerated,formula,pass\ngauss,2,2,1,1,true\n");
    }

    #[test]
    fn timings_are_stripped_everywhere() {
        let mut v = json!({"elapsed_ms": 1.0, "a": [{"elapsed_ms": 2.0, "b": 1}], "c": {"elapsed_ms": 3}});
        strip_timings(&mut v);
        assert_eq!(v, json!({"a": [{"b": 1}], "c": {}}));
    }
}
