//! Deterministic JSON and CSV writers.
//!
//! The JSON envelope is `{meta: {version, config_hash}, results: [{op,
//! inputs, outputs}]}` (schema shipped in `schema/report.schema.json`).
//! Key order is insertion order, floats carry 12 significant digits, counts
//! stay exact integers — a fixed config therefore serializes to identical
//! bytes on every run.

use num_complex::Complex64;
use std::fmt::Write as _;

/// Minimal JSON value with order-preserving objects.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    UInt(u64),
    Int(i64),
    /// Serialized with 12 significant digits.
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn complex(z: Complex64) -> Json {
        if z.im == 0.0 {
            Json::Float(z.re)
        } else {
            Json::Object(vec![("re".into(), Json::Float(z.re)), ("im".into(), Json::Float(z.im))])
        }
    }

    pub fn opt_float(v: Option<f64>) -> Json {
        match v {
            Some(x) => Json::Float(x),
            None => Json::Null,
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::UInt(n) => {
                let _ = write!(out, "{n}");
            }
            Json::Int(n) => {
                let _ = write!(out, "{n}");
            }
            Json::Float(x) => {
                if x.is_finite() {
                    let _ = write!(out, "{x:.11e}");
                } else {
                    out.push_str("null");
                }
            }
            Json::Str(s) => write_json_string(out, s),
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_json_string(out, k);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }

}

impl std::fmt::Display for Json {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// One operation's record in the report.
#[derive(Debug, Clone)]
pub struct OpResult {
    pub op: String,
    pub inputs: Vec<(String, Json)>,
    pub outputs: Vec<(String, Json)>,
}

impl OpResult {
    pub fn new(op: impl Into<String>) -> OpResult {
        OpResult {
            op: op.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn input(mut self, key: impl Into<String>, value: Json) -> Self {
        self.inputs.push((key.into(), value));
        self
    }

    pub fn output(mut self, key: impl Into<String>, value: Json) -> Self {
        self.outputs.push((key.into(), value));
        self
    }
}

/// The report envelope.
#[derive(Debug, Clone)]
pub struct Report {
    pub version: String,
    pub config_hash: String,
    pub results: Vec<OpResult>,
}

impl Report {
    pub fn new(config_hash: String) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_hash,
            results: Vec::new(),
        }
    }

    pub fn push(&mut self, r: OpResult) {
        self.results.push(r);
    }

    pub fn to_json(&self) -> String {
        let results: Vec<Json> = self
            .results
            .iter()
            .map(|r| {
                Json::Object(vec![
                    ("op".into(), Json::Str(r.op.clone())),
                    ("inputs".into(), Json::Object(r.inputs.clone())),
                    ("outputs".into(), Json::Object(r.outputs.clone())),
                ])
            })
            .collect();
        let root = Json::Object(vec![
            (
                "meta".into(),
                Json::Object(vec![
                    ("version".into(), Json::Str(self.version.clone())),
                    ("config_hash".into(), Json::Str(self.config_hash.clone())),
                ]),
            ),
            ("results".into(), Json::Array(results)),
        ]);
        let mut s = root.to_string();
        s.push('\n');
        s
    }
}

/// Rectangular data for CSV output.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Json>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Json>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                match cell {
                    Json::Str(v) => {
                        // bare unless it needs quoting
                        if v.contains([',', '"', '\n']) {
                            s.push('"');
                            s.push_str(&v.replace('"', "\"\""));
                            s.push('"');
                        } else {
                            s.push_str(v);
                        }
                    }
                    other => s.push_str(&other.to_string()),
                }
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_formatting_rules() {
        let v = Json::Object(vec![
            ("count".into(), Json::UInt(9900)),
            ("value".into(), Json::Float(0.25)),
            ("flag".into(), Json::Bool(true)),
            ("name".into(), Json::Str("a\"b".into())),
            ("nothing".into(), Json::Null),
            ("bad".into(), Json::Float(f64::NAN)),
        ]);
        let s = v.to_string();
        assert!(s.contains("\"count\":9900"));
        assert!(s.contains("\"value\":2.50000000000e-1"));
        assert!(s.contains("\"name\":\"a\\\"b\""));
        assert!(s.contains("\"bad\":null"));
    }

    #[test]
    fn report_roundtrips_through_serde() {
        let mut rep = Report::new("cafe".into());
        rep.push(
            OpResult::new("demo")
                .input("x", Json::UInt(1000))
                .output("a", Json::Float(1.340319))
                .output("z", Json::complex(Complex64::new(1.0, -2.0))),
        );
        let text = rep.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["meta"]["config_hash"], "cafe");
        assert_eq!(parsed["results"][0]["op"], "demo");
        assert!(parsed["results"][0]["outputs"]["a"].as_f64().is_some());
        // 12 significant digits survive the round trip
        let a = parsed["results"][0]["outputs"]["a"].as_f64().unwrap();
        assert!((a - 1.340319).abs() < 1e-9);
    }

    #[test]
    fn csv_shape() {
        let mut t = Table::new(&["x", "h", "l1"]);
        t.push_row(vec![Json::UInt(100), Json::UInt(10), Json::Float(0.5)]);
        let s = t.to_csv();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "x,h,l1");
        assert_eq!(lines.next().unwrap(), "100,10,5.00000000000e-1");
    }

    #[test]
    fn byte_identical_reserialization() {
        let mut rep = Report::new("beef".into());
        rep.push(OpResult::new("op").output("v", Json::Float(std::f64::consts::PI)));
        assert_eq!(rep.to_json(), rep.clone().to_json());
    }
}
