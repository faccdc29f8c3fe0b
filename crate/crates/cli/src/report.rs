//! Output documents.
//!
//! Every invocation yields one document with the fields `verb`, `inputs`
//! (canonical texts that re-parse to the objects used), `verdict`, an
//! optional `certificate` and `stats`. Failed invocations carry an `error`
//! object instead of a verdict. Object keys are emitted in sorted order, so
//! identical invocations give byte-identical output.

use serde_json::{Map, Value};

use crate::args::Format;
use crate::Failure;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub verb: String,
    pub inputs: Map<String, Value>,
    pub verdict: Value,
    pub certificate: Option<Value>,
    pub stats: Map<String, Value>,
    pub error: Option<Value>,
}

impl Report {
    pub fn new(verb: &str, inputs: Map<String, Value>, verdict: Value) -> Self {
        Report {
            verb: verb.to_owned(),
            inputs,
            verdict,
            certificate: None,
            stats: Map::new(),
            error: None,
        }
    }

    pub fn with_certificate(mut self, certificate: Value) -> Self {
        self.certificate = Some(certificate);
        self
    }

    pub fn with_stat(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.stats.insert(key.to_owned(), value.into());
        self
    }

    pub fn failure(verb: &str, inputs: Map<String, Value>, failure: &Failure) -> Self {
        let mut error = Map::new();
        error.insert("kind".into(), failure.kind().into());
        error.insert("message".into(), failure.message().into());
        error.insert("exit_code".into(), failure.exit_code().into());
        Report {
            error: Some(Value::Object(error)),
            ..Report::new(verb, inputs, Value::Null)
        }
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("verb".into(), self.verb.clone().into());
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("verdict".into(), self.verdict.clone());
        if let Some(c) = &self.certificate {
            doc.insert("certificate".into(), c.clone());
        }
        if let Some(e) = &self.error {
            doc.insert("error".into(), e.clone());
        }
        doc.insert("stats".into(), Value::Object(self.stats.clone()));
        Value::Object(doc)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.verb));
        write_section(&mut out, "inputs", &Value::Object(self.inputs.clone()));
        if let Some(e) = &self.error {
            let kind = e["kind"].as_str().unwrap_or("");
            let message = e["message"].as_str().unwrap_or("");
            out.push_str(&format!("error [{kind}]: {message}\n"));
            return out;
        }
        write_section(&mut out, "verdict", &self.verdict);
        if let Some(c) = &self.certificate {
            write_section(&mut out, "certificate", c);
        }
        if !self.stats.is_empty() {
            write_section(&mut out, "stats", &Value::Object(self.stats.clone()));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        Value::Array(a)
            if a.iter()
                .all(|x| matches!(x, Value::String(s) if !s.contains('\n'))) =>
        {
            Some(
                a.iter()
                    .map(|x| x.as_str().unwrap_or(""))
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        }
        _ => None,
    }
}

fn write_section(out: &mut String, key: &str, value: &Value) {
    write_value(out, 0, key, value);
}

fn write_value(out: &mut String, depth: usize, key: &str, value: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(value) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match value {
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}  {line}\n"));
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                write_value(out, depth + 1, &format!("[{}]", i + 1), item);
            }
        }
        Value::Object(map) => {
            for (k, v) in map {
                write_value(out, depth + 1, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
