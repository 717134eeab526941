//! Structured command reports with a text and a JSON rendering.

use std::time::Duration;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Counterexample,
    Inconclusive,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::Inconclusive => "inconclusive",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Counterexample => 1,
            Status::Inconclusive => 2,
            Status::Error => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Keys keep insertion order. The leading keys are fixed: `command`,
/// `semigroup`, `window`, `status`, `exhaustive`.
#[derive(Debug, Clone)]
pub struct Report {
    fields: Map<String, Value>,
    status: Status,
    timing: Option<Duration>,
}

impl Report {
    pub fn new(command: &str, semigroup: &str, window: Option<usize>) -> Report {
        let mut fields = Map::new();
        fields.insert("command".into(), command.into());
        fields.insert("semigroup".into(), semigroup.into());
        fields.insert("window".into(), window.map_or(Value::Null, Value::from));
        fields.insert("status".into(), Status::Inconclusive.as_str().into());
        fields.insert("exhaustive".into(), false.into());
        Report {
            fields,
            status: Status::Inconclusive,
            timing: None,
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.fields.insert("status".into(), status.as_str().into());
    }

    pub fn set_exhaustive(&mut self, exhaustive: bool) {
        self.fields.insert("exhaustive".into(), exhaustive.into());
    }

    pub fn set_window(&mut self, window: usize) {
        self.fields.insert("window".into(), window.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn fields(&self) -> &Map<String, Value> {
        &self.fields
    }

    pub fn set_timing(&mut self, elapsed: Duration) {
        self.timing = Some(elapsed);
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn document(&self) -> Map<String, Value> {
        let mut doc = self.fields.clone();
        if let Some(t) = self.timing {
            doc.insert("timing_ms".into(), (t.as_secs_f64() * 1000.0).into());
        }
        doc
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.document())).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.document() {
                    write_text(&mut out, k, v);
                }
                out
            }
        }
    }
}

fn write_text(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, inner) in m {
                write_text(out, &format!("{key}.{k}"), inner);
            }
        }
        Value::String(s) if !s.contains('\n') => {
            out.push_str(&format!("{key}: {s}\n"));
        }
        Value::Null => out.push_str(&format!("{key}: -\n")),
        other => out.push_str(&format!("{key}: {other}\n")),
    }
}
