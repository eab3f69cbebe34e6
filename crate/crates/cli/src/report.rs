//! Verification reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// How `measured` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured - expected| ≤ tolerance`.
    Within,
    /// `measured ≤ expected + tolerance`.
    AtMost,
    /// `measured ≥ expected - tolerance`.
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Case {
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        let ok = match comparison {
            Comparison::Within => (measured - expected).abs() <= tolerance,
            Comparison::AtMost => measured <= expected + tolerance,
            Comparison::AtLeast => measured >= expected - tolerance,
        };
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance,
            comparison,
            note: None,
        }
    }

    pub fn within(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, measured, expected, tolerance, Comparison::Within)
    }

    /// A worst-case error that must not exceed `tolerance`.
    pub fn error(name: impl Into<String>, worst: f64, tolerance: f64) -> Self {
        Self::new(name, worst, 0.0, tolerance, Comparison::AtMost)
    }

    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, measured, bound, tolerance, Comparison::AtMost)
    }

    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, measured, bound, tolerance, Comparison::AtLeast)
    }

    /// A case that could not be evaluated.
    pub fn failed(name: impl Into<String>, why: impl ToString) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            measured: f64::NAN,
            expected: f64::NAN,
            tolerance: 0.0,
            comparison: Comparison::Within,
            note: Some(why.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub criterion: usize,
    pub status: Status,
    pub seed: u64,
    /// Wall-clock seconds; the only field that varies between identical runs.
    pub elapsed: f64,
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn new(suite: &str, criterion: usize, seed: u64, elapsed: f64, cases: Vec<Case>) -> Self {
        let ok = !cases.is_empty() && cases.iter().all(Case::passed);
        Self {
            suite: suite.to_owned(),
            criterion,
            status: if ok { Status::Pass } else { Status::Fail },
            seed,
            elapsed,
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed())
    }

    /// One line: `PASS  3 fiber (4 cases, 0.12 s)`.
    pub fn summary_line(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{tag} {:>2} {:<15} ({} cases, {:.2} s)",
            self.criterion,
            self.suite,
            self.cases.len(),
            self.elapsed
        );
        if let Some(c) = self.failures().next() {
            line.push_str(&format!(
                "  first failure: {} measured {:e} vs {:e} ± {:e}",
                c.name, c.measured, c.expected, c.tolerance
            ));
            if let Some(n) = &c.note {
                line.push_str(&format!(" [{n}]"));
            }
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert!(Case::within("a", 1.0, 1.05, 0.1).passed());
        assert!(!Case::within("a", 1.0, 1.2, 0.1).passed());
        assert!(Case::error("b", 1e-12, 1e-10).passed());
        assert!(!Case::error("b", f64::NAN, 1e-10).passed());
        assert!(Case::at_least("c", -1e-11, 0.0, 1e-10).passed());
        assert!(!Case::failed("d", "boom").passed());
    }

    #[test]
    fn report_status() {
        let ok = VerificationReport::new("s", 1, 42, 0.0, vec![Case::error("x", 0.0, 0.0)]);
        assert!(ok.passed());
        assert!(ok.summary_line().starts_with("PASS  1 s"));
        let bad = VerificationReport::new("s", 1, 42, 0.0, vec![Case::error("x", 1.0, 0.0)]);
        assert!(!bad.passed());
        assert!(bad.summary_line().contains("first failure: x"));
        assert!(!VerificationReport::new("s", 1, 42, 0.0, vec![]).passed());
        let json = serde_json::to_string(&ok).unwrap();
        assert!(json.starts_with(r#"{"suite":"s","criterion":1,"status":"pass","seed":42"#));
    }
}
