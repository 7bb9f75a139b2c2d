//! Machine-readable report documents with byte-stable serialization.
//!
//! The JSON writer is deliberately hand-rolled: object keys keep insertion
//! order and every float is printed with 17 significant digits (`{:.16e}`),
//! which round-trips f64 exactly. Identical report data therefore always
//! serializes to identical bytes.

use std::fmt::Write as _;

/// A JSON value with ordered object fields.
#[derive(Clone, Debug, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    UInt(u64),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object(fields: impl IntoIterator<Item = (&'static str, Json)>) -> Json {
        Json::Object(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    pub fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::UInt(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Float(x) => write_float(out, *x),
            Json::Str(s) => write_escaped(out, s),
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
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(out, key);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

impl From<&str> for Json {
    fn from(s: &str) -> Json {
        Json::Str(s.to_string())
    }
}

impl From<u64> for Json {
    fn from(v: u64) -> Json {
        Json::UInt(v)
    }
}

impl From<u32> for Json {
    fn from(v: u32) -> Json {
        Json::UInt(v as u64)
    }
}

impl From<f64> for Json {
    fn from(v: f64) -> Json {
        Json::Float(v)
    }
}

impl From<bool> for Json {
    fn from(v: bool) -> Json {
        Json::Bool(v)
    }
}

/// Fixed 17-significant-digit scientific notation; lossless for f64.
pub fn write_float(out: &mut String, x: f64) {
    assert!(x.is_finite(), "report floats must be finite, got {x}");
    let _ = write!(out, "{x:.16e}");
}

pub fn format_float(x: f64) -> String {
    let mut s = String::new();
    write_float(&mut s, x);
    s
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
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

/// One self-describing command report: what ran, with which inputs, seeds,
/// and tolerances, and what came out.
#[derive(Clone, Debug)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    pub params: Json,
    pub seed: u64,
    pub tolerances: Vec<(String, f64)>,
    pub payload: Json,
}

impl ReportDocument {
    pub fn new(
        command: &str,
        params: Json,
        seed: u64,
        tolerances: Vec<(&str, f64)>,
        payload: Json,
    ) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params,
            seed,
            tolerances: tolerances
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            payload,
        }
    }

    fn as_json(&self) -> Json {
        Json::object([
            ("tool_version", Json::Str(self.tool_version.clone())),
            ("command", Json::Str(self.command.clone())),
            ("params", self.params.clone()),
            ("seed", Json::UInt(self.seed)),
            (
                "tolerances",
                Json::Object(
                    self.tolerances
                        .iter()
                        .map(|(k, v)| (k.clone(), Json::Float(*v)))
                        .collect(),
                ),
            ),
            ("payload", self.payload.clone()),
        ])
    }

    /// Compact single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = self.as_json().render();
        out.push('\n');
        out
    }
}
