use std::fmt::Write as _;

use serde_json::{json, Map, Value as Json};

use crate::commands::{Extra, Row};
use crate::config::{Grid, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn extra_text(e: &Extra) -> String {
    match e {
        Extra::Num(v) => num(*v),
        Extra::Bool(b) => b.to_string(),
    }
}

/// One header line plus one line per row, LF terminated.
pub fn csv(rows: &[Row]) -> String {
    let mut out = String::from("z,value,method,units");
    if let Some(first) = rows.first() {
        for (name, _) in &first.extra {
            out.push(',');
            out.push_str(name);
        }
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{}",
            num(r.z),
            num(r.value),
            r.method,
            r.units
        );
        for (_, e) in &r.extra {
            out.push(',');
            out.push_str(&extra_text(e));
        }
        out.push('\n');
    }
    out
}

/// Resolved configuration and rows as one JSON document.
pub fn json(command: &str, params: &Params, grid: &Grid, rows: &[Row]) -> String {
    let mut config = Map::new();
    config.insert("command".into(), json!(command));
    for (k, v) in params.iter() {
        config.insert(k.to_string(), v.to_json());
    }
    config.insert("zmin".into(), json!(grid.z_min));
    config.insert("zmax".into(), json!(grid.z_max));
    config.insert("points".into(), json!(grid.points));
    config.insert("spacing".into(), json!(grid.spacing.as_str()));

    let rows: Vec<Json> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("z".into(), json!(r.z));
            m.insert("value".into(), json!(r.value));
            m.insert("method".into(), json!(r.method));
            m.insert("units".into(), json!(r.units));
            for (name, e) in &r.extra {
                let v = match e {
                    Extra::Num(v) => json!(v),
                    Extra::Bool(b) => json!(b),
                };
                m.insert(name.to_string(), v);
            }
            Json::Object(m)
        })
        .collect();
    let doc = json!({ "config": Json::Object(config), "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("plain values serialise");
    s.push('\n');
    s
}
