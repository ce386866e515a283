//! Line-oriented key=value reports with a final verdict line.
//!
//! Reports are buffered and emitted in insertion order so that identical
//! jobs (including seeds) produce byte-identical output.

use std::fmt::Display;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// pass/inconclusive exit 0; fail (a falsified identity) exits 2.
    pub fn exit_code(&self) -> u8 {
        match self {
            Verdict::Fail => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report { lines: Vec::new() }
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key}={value}"));
    }

    pub fn raw(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn finish(mut self, verdict: Verdict) -> (String, u8) {
        self.lines.push(format!("verdict={}", verdict.as_str()));
        let mut out = self.lines.join("\n");
        out.push('\n');
        (out, verdict.exit_code())
    }
}
