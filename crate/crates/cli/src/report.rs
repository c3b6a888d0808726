//! Line-oriented run reports with a versioned header.

use relnerve::homology::HomologyGroup;
use relnerve::{Certificate, TruncSSet};

pub const HEADER: &str = "groth-report v1";

/// A report under construction. Lines are emitted in insertion order, so the
/// output is byte-identical whenever the computation is.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    params: Vec<(String, String)>,
    lines: Vec<String>,
    passed: usize,
    failed: usize,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.param("command", command);
        r
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn sizes(&mut self, name: &str, x: &TruncSSet) {
        self.lines.push(format!(
            "sizes name={name} simplices={:?} nondegenerate={:?}",
            x.sizes(),
            x.nondegenerate_counts()
        ));
    }

    pub fn certificate(&mut self, c: &Certificate) {
        self.tally(c.passed());
        self.lines.push(c.line());
    }

    pub fn homology(&mut self, side: &str, table: &[HomologyGroup]) {
        for h in table {
            self.lines.push(format!("side={side} {h}"));
        }
    }

    /// A comparison verdict that is not backed by a certificate.
    pub fn verdict(&mut self, name: &str, pass: bool, detail: &str) {
        self.tally(pass);
        let v = if pass { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            self.lines.push(format!("verdict name={name} verdict={v}"));
        } else {
            self.lines.push(format!(
                "verdict name={name} verdict={v} detail=\"{detail}\""
            ));
        }
    }

    fn tally(&mut self, pass: bool) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.passed, self.failed)
    }

    /// Appends another report's body lines and tallies; its parameters are dropped.
    pub fn absorb(&mut self, other: Report) {
        self.lines.extend(other.lines);
        self.passed += other.passed;
        self.failed += other.failed;
    }

    pub fn render(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (k, v) in &self.params {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "summary passed={} failed={} verdict={overall}\n",
            self.passed, self.failed
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_stable() {
        let mut r = Report::new("verify identities");
        r.param("cap", 3);
        r.certificate(&Certificate::pass("identities", "x", Some(3), 10));
        r.verdict("pi0", false, "1 vs 2");
        let text = r.render();
        assert!(text.starts_with("groth-report v1\ncommand: verify identities\ncap: 3\n"));
        assert!(text.ends_with("summary passed=1 failed=1 verdict=FAIL\n"));
        assert_eq!(text, r.clone().render());
    }
}
