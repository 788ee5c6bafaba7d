use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A computed value with nothing to check it against.
    Value,
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub task: String,
    /// The identity or construction this line exercises.
    pub anchor: String,
    pub status: Status,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    /// Wall-clock time; the only field allowed to differ between runs.
    pub millis: u64,
}

impl Entry {
    pub fn new(task: impl Into<String>, anchor: impl Into<String>, status: Status, value: impl Into<String>) -> Self {
        Self { task: task.into(), anchor: anchor.into(), status, value: value.into(), tolerance: None, millis: 0 }
    }

    pub fn check(task: impl Into<String>, anchor: impl Into<String>, ok: bool, value: impl Into<String>) -> Self {
        Self::new(task, anchor, if ok { Status::Pass } else { Status::Fail }, value)
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(format!("{tol:e}"));
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                for e in &self.entries {
                    let status = match e.status {
                        Status::Pass => "PASS ",
                        Status::Fail => "FAIL ",
                        Status::Value => "VALUE",
                    };
                    write!(out, "{status} {} [{}] {}", e.task, e.anchor, e.value).unwrap();
                    if let Some(t) = &e.tolerance {
                        write!(out, " (tol {t})").unwrap();
                    }
                    writeln!(out, " {}ms", e.millis).unwrap();
                }
                let failed = self.entries.iter().filter(|e| e.status == Status::Fail).count();
                writeln!(out, "{} entries, {failed} failed", self.entries.len()).unwrap();
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lines_do_not_fail_a_report() {
        let r = Report { entries: vec![Entry::new("t", "a", Status::Value, "1"), Entry::check("t", "a", true, "ok")] };
        assert!(r.passed());
        let text = r.render(Format::Text);
        assert!(text.starts_with("VALUE t [a] 1 0ms\nPASS  t [a] ok 0ms\n"));
        assert!(text.ends_with("2 entries, 0 failed\n"));
    }

    #[test]
    fn one_failure_fails_the_report() {
        let r = Report { entries: vec![Entry::check("t", "a", false, "no").with_tolerance(1e-12)] };
        assert!(!r.passed());
        assert!(r.render(Format::Text).contains("FAIL  t [a] no (tol 1e-12)"));
        assert!(r.render(Format::Json).contains("\"status\": \"fail\""));
    }
}
