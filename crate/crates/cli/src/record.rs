//! Output records and their JSON-lines and CSV encodings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "ok" => Some(Status::Ok),
            "fail" => Some(Status::Fail),
            "error" => Some(Status::Error),
            _ => None,
        }
    }
}

/// A number or a piece of text. Text that parses as a number reads back as a number from CSV.
#[derive(Debug, Clone)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Number(a), Value::Number(b)) => a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()),
            (Value::Text(a), Value::Text(b)) => a == b,
            _ => false,
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Number(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Number(v as f64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Text(v.to_string())
    }
}

fn non_finite(v: f64) -> &'static str {
    if v.is_nan() {
        "NaN"
    } else if v > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

fn parse_non_finite(s: &str) -> Option<f64> {
    match s {
        "NaN" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => None,
    }
}

impl Value {
    /// CSV cell: 17 significant digits for numbers.
    pub fn cell(&self) -> String {
        match self {
            Value::Number(v) if v.is_finite() => format!("{v:.16e}"),
            Value::Number(v) => non_finite(*v).to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    pub fn from_cell(s: &str) -> Self {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Value::Number(v),
            _ => parse_non_finite(s).map(Value::Number).unwrap_or_else(|| Value::Text(s.to_string())),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(v) => Some(*v),
            Value::Text(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cell())
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Number(v) if v.is_finite() => s.serialize_f64(*v),
            Value::Number(v) => s.serialize_str(non_finite(*v)),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Value;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                Ok(Value::Number(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value::Number(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::Number(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                Ok(parse_non_finite(v).map(Value::Number).unwrap_or_else(|| Value::Text(v.to_string())))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            status: Status::Ok,
            diagnostics: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.to_string(), v.into());
    }

    pub fn error(mut self, msg: impl fmt::Display) -> Self {
        self.status = Status::Error;
        self.diagnostics.push(msg.to_string());
        self
    }
}

#[derive(Debug)]
pub enum CodecError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
    Format(String),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::Io(e) => write!(f, "{e}"),
            CodecError::Json(e) => write!(f, "{e}"),
            CodecError::Csv(e) => write!(f, "{e}"),
            CodecError::Format(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for CodecError {}

impl From<std::io::Error> for CodecError {
    fn from(e: std::io::Error) -> Self {
        CodecError::Io(e)
    }
}

impl From<serde_json::Error> for CodecError {
    fn from(e: serde_json::Error) -> Self {
        CodecError::Json(e)
    }
}

impl From<csv::Error> for CodecError {
    fn from(e: csv::Error) -> Self {
        CodecError::Csv(e)
    }
}

/// One JSON object per line.
pub fn write_json<W: Write>(records: &[OutputRecord], mut w: W) -> Result<(), CodecError> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_json<R: BufRead>(r: R) -> Result<Vec<OutputRecord>, CodecError> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

const IN: &str = "in:";
const OUT: &str = "out:";

/// Wide CSV: command, status, in:<key>…, out:<key>…, diagnostics. Missing keys are empty cells;
/// diagnostics are joined by newlines inside one quoted cell.
pub fn write_csv<W: Write>(records: &[OutputRecord], w: W) -> Result<(), CodecError> {
    let ins: BTreeSet<&String> = records.iter().flat_map(|r| r.inputs.keys()).collect();
    let outs: BTreeSet<&String> = records.iter().flat_map(|r| r.outputs.keys()).collect();
    let mut wr = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Necessary).from_writer(w);
    let mut header = vec!["command".to_string(), "status".to_string()];
    header.extend(ins.iter().map(|k| format!("{IN}{k}")));
    header.extend(outs.iter().map(|k| format!("{OUT}{k}")));
    header.push("diagnostics".into());
    wr.write_record(&header)?;
    for r in records {
        let mut row = vec![r.command.clone(), r.status.name().to_string()];
        row.extend(ins.iter().map(|k| r.inputs.get(*k).map(Value::cell).unwrap_or_default()));
        row.extend(outs.iter().map(|k| r.outputs.get(*k).map(Value::cell).unwrap_or_default()));
        row.push(r.diagnostics.join("\n"));
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(r: R) -> Result<Vec<OutputRecord>, CodecError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header = rd.headers()?.clone();
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let mut rec = OutputRecord::new("");
        for (name, cell) in header.iter().zip(row.iter()) {
            if let Some(k) = name.strip_prefix(IN) {
                if !cell.is_empty() {
                    rec.inputs.insert(k.to_string(), Value::from_cell(cell));
                }
            } else if let Some(k) = name.strip_prefix(OUT) {
                if !cell.is_empty() {
                    rec.outputs.insert(k.to_string(), Value::from_cell(cell));
                }
            } else {
                match name {
                    "command" => rec.command = cell.to_string(),
                    "status" => {
                        rec.status = Status::parse(cell).ok_or_else(|| CodecError::Format(format!("bad status '{cell}'")))?
                    }
                    "diagnostics" if !cell.is_empty() => rec.diagnostics = cell.split('\n').map(String::from).collect(),
                    "diagnostics" => {}
                    other => return Err(CodecError::Format(format!("unknown column '{other}'"))),
                }
            }
        }
        out.push(rec);
    }
    Ok(out)
}
