//! Human-readable report followed by a machine-readable `RESULT` block.

use std::fmt::Write;

#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    result: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) {
        self.result.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.result.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            writeln!(out, "{l}").unwrap();
        }
        if !self.result.is_empty() {
            if !self.lines.is_empty() {
                out.push('\n');
            }
            out.push_str("RESULT\n");
            for (k, v) in &self.result {
                writeln!(out, "{k}: {v}").unwrap();
            }
        }
        out
    }
}

/// Parse the `RESULT` block of a rendered report.
pub fn parse_result(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut on = false;
    for line in text.lines() {
        if line == "RESULT" {
            on = true;
            continue;
        }
        if on {
            if let Some((k, v)) = line.split_once(':') {
                out.push((k.to_string(), v.trim_start().to_string()));
            }
        }
    }
    out
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}
