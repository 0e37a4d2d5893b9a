use std::fmt::Write as _;

use serde::Serialize;

/// One `(degree, length)` cell of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub branch: String,
    pub degree: usize,
    pub length: usize,
    /// Number of basis words in the cell.
    pub dimension: usize,
    /// Number of reduced monomials whose images land in the cell.
    pub monomials: usize,
    pub rank: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A named side check (relations, counts, classification).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckRecord { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub ring: String,
    pub lambda: String,
    pub semigroup: String,
    pub degree_bound: usize,
    pub length_bound: usize,
    pub cells: Vec<CellRecord>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str, ring: String, lambda: String, semigroup: String, degree_bound: usize, length_bound: usize) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            ring,
            lambda,
            semigroup,
            degree_bound,
            length_bound,
            cells: Vec::new(),
            checks: Vec::new(),
            passed: true,
            counterexample: None,
        }
    }

    /// Recomputes the overall verdict and the first counterexample.
    pub fn finish(mut self) -> Self {
        self.cells.sort_by(|a, b| (&a.branch, a.degree, a.length).cmp(&(&b.branch, b.degree, b.length)));
        self.passed = self.cells.iter().all(|c| c.passed) && self.checks.iter().all(|c| c.passed);
        self.counterexample = self
            .cells
            .iter()
            .find(|c| !c.passed)
            .map(|c| {
                let at = format!("{} cell ({}, {})", if c.branch.is_empty() { "" } else { &c.branch }, c.degree, c.length);
                format!("{}: {}", at.trim(), c.note.clone().unwrap_or_default())
            })
            .or_else(|| self.checks.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)));
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "theorem   {}", self.theorem);
        let _ = writeln!(s, "ring      {}", self.ring);
        let _ = writeln!(s, "lambda    {}", self.lambda);
        let _ = writeln!(s, "semigroup {}", self.semigroup);
        let _ = writeln!(s, "bounds    degree <= {}, length <= {}", self.degree_bound, self.length_bound);
        if !self.cells.is_empty() {
            let bw = self.cells.iter().map(|c| c.branch.len()).max().unwrap_or(0).max(6);
            let _ = writeln!(s, "{:<bw$}  {:>6}  {:>6}  {:>9}  {:>9}  {:>6}  verdict", "branch", "degree", "length", "dimension", "monomials", "rank");
            for c in &self.cells {
                let _ = write!(
                    s,
                    "{:<bw$}  {:>6}  {:>6}  {:>9}  {:>9}  {:>6}  {}",
                    c.branch,
                    c.degree,
                    c.length,
                    c.dimension,
                    c.monomials,
                    c.rank,
                    if c.passed { "pass" } else { "FAIL" }
                );
                if let Some(n) = &c.note {
                    let _ = write!(s, "  ({n})");
                }
                s.push('\n');
            }
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(s, "overall   {}", if self.passed { "PASS" } else { "FAIL" });
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "counterexample {c}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_records() {
        let mut r = VerificationReport::new("t", "Q".into(), "1".into(), "F(x)".into(), 2, 2);
        r.cells.push(CellRecord {
            branch: String::new(),
            degree: 1,
            length: 1,
            dimension: 1,
            monomials: 1,
            rank: 1,
            passed: true,
            note: None,
        });
        let r = r.finish();
        assert!(r.passed && r.counterexample.is_none());
        let mut r2 = r.clone();
        r2.checks.push(CheckRecord::new("count", false, "3 != 4"));
        let r2 = r2.finish();
        assert!(!r2.passed);
        assert_eq!(r2.counterexample.as_deref(), Some("count: 3 != 4"));
        assert!(r2.render_table().contains("FAIL"));
    }
}
