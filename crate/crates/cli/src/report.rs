//! The report envelope and its text rendering.

use std::fmt::Write;
use std::time::Instant;

use serde_json::{json, Map, Value};
use stratkit::Error;

#[derive(Debug, Clone)]
pub struct Input {
    pub source: String,
    pub name: Option<String>,
    pub sha256: String,
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub input: Option<Input>,
    pub budget: u64,
    pub results: Map<String, Value>,
    timings: Option<Map<String, Value>>,
    pub limits_hit: Vec<String>,
    pub violations: Vec<String>,
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, budget: u64, timings: bool) -> Self {
        Report {
            command,
            input: None,
            budget,
            results: Map::new(),
            timings: timings.then(Map::new),
            limits_hit: Vec::new(),
            violations: Vec::new(),
            error: None,
        }
    }

    /// Runs one stage and stores its value under `key`. Returns false when
    /// the stage failed; the failure is recorded and later stages should be
    /// skipped.
    pub fn stage(&mut self, key: &str, f: impl FnOnce() -> stratkit::Result<Value>) -> bool {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timings {
            t.insert(key.to_string(), json!(start.elapsed().as_secs_f64()));
        }
        match out {
            Ok(v) => {
                self.results.insert(key.to_string(), v);
                true
            }
            Err(e) => {
                self.record_error(key, e);
                false
            }
        }
    }

    pub fn record_error(&mut self, key: &str, e: Error) {
        if let Error::BudgetExceeded(_) = e {
            self.limits_hit.push(format!("{key}: {e}"));
        }
        self.error.get_or_insert_with(|| format!("{key}: {e}"));
    }

    pub fn fail(&mut self, msg: String) {
        self.error.get_or_insert(msg);
    }

    pub fn violation(&mut self, what: impl Into<String>) {
        self.violations.push(what.into());
    }

    pub fn timing(&mut self, key: &str, secs: f64) {
        if let Some(t) = &mut self.timings {
            t.insert(key.to_string(), json!(secs));
        }
    }

    pub fn timings_enabled(&self) -> bool {
        self.timings.is_some()
    }

    /// 2 on any error (budget exhaustion included), 1 on violations, else 0.
    pub fn exit_code(&self) -> u8 {
        if self.error.is_some() {
            2
        } else if !self.violations.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_value(&self) -> Value {
        let input = self.input.as_ref().map(|i| {
            json!({
                "source": i.source,
                "name": i.name,
                "sha256": i.sha256,
            })
        });
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("input".into(), input.unwrap_or(Value::Null));
        out.insert("budget".into(), json!(self.budget));
        out.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(t) = &self.timings {
            out.insert("timings".into(), Value::Object(t.clone()));
        }
        out.insert("limits_hit".into(), json!(self.limits_hit));
        out.insert("violations".into(), json!(self.violations));
        out.insert("error".into(), json!(self.error));
        Value::Object(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(i) = &self.input {
            let name = i.name.as_deref().unwrap_or(&i.source);
            let _ = writeln!(s, "# {} {} (sha256 {})", self.command, name, &i.sha256[..16]);
        }
        for (k, v) in &self.results {
            render(&mut s, k, v, 0);
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "timings:");
            for (k, v) in t {
                let _ = writeln!(s, "  {k}: {:.3}s", v.as_f64().unwrap_or(0.0));
            }
        }
        for l in &self.limits_hit {
            let _ = writeln!(s, "limit hit: {l}");
        }
        for v in &self.violations {
            let _ = writeln!(s, "violation: {v}");
        }
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            let items: Vec<String> = a.iter().filter_map(scalar).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

fn render(s: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(x) = scalar(v) {
        let _ = writeln!(s, "{pad}{key}: {x}");
        return;
    }
    let _ = writeln!(s, "{pad}{key}:");
    match v {
        Value::Array(items) => {
            for (n, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(x) => {
                        let _ = writeln!(s, "{pad}  - {x}");
                    }
                    None => render(s, &format!("[{n}]"), item, depth + 1),
                }
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                render(s, k, x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
