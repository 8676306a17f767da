//! Rendering of command results as JSON, CSV or plain text.

use clap::ValueEnum;
use qkm::report::CheckResult;
use qkm::table::CoeffTable;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Everything a command produces. `json` is the full machine-readable
/// result; the other formats render `tables`, `rows` and `checks`.
#[derive(Debug, Default)]
pub struct Output {
    pub json: Value,
    pub tables: Vec<CoeffTable>,
    pub rows: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub checks: Vec<CheckResult>,
    /// Checks that decide the exit status.
    pub gating: Vec<CheckResult>,
}

impl Output {
    pub fn passed(&self) -> bool {
        self.gating.iter().all(CheckResult::passed)
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).unwrap_or_default();
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Pretty => self.pretty(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&t.to_csv());
        }
        if let Some((head, rows)) = &self.rows {
            out.push_str(&head.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push_str("check,d,points,status,first_failing_order\n");
            for c in &self.checks {
                let f = c.first_failing_order.map(|k| k.to_string()).unwrap_or_default();
                out.push_str(&format!("{},{},{},{},{f}\n", c.check, c.d, c.points.join(";"), status(c)));
            }
        }
        out
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&t.to_pretty());
            out.push('\n');
        }
        if let Some((head, rows)) = &self.rows {
            out.push_str(&head.join("  "));
            out.push('\n');
            for r in rows {
                out.push_str(&r.join("  "));
                out.push('\n');
            }
        }
        for c in &self.checks {
            let detail = c.detail.as_deref().map(|d| format!("  ({d})")).unwrap_or_default();
            let at = if c.points.is_empty() { String::new() } else { format!(" at {}", c.points.join(", ")) };
            out.push_str(&format!("{:<4} {} [d={}]{at}{detail}\n", status(c), c.check, c.d));
        }
        out
    }
}

fn status(c: &CheckResult) -> &'static str {
    if c.passed() {
        "pass"
    } else {
        "fail"
    }
}
