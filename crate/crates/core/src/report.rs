//! Verification reports.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

static WITNESS_LIMIT: AtomicUsize = AtomicUsize::new(1);

/// How many witnesses a single comparison keeps; the first is always the
/// smallest failing column in canonical order.
pub fn witness_limit() -> usize {
    WITNESS_LIMIT.load(Ordering::Relaxed)
}

pub fn set_witness_limit(n: usize) {
    WITNESS_LIMIT.store(n.max(1), Ordering::Relaxed);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Domain basis element, as labels.
    pub input: String,
    pub index: usize,
    /// Codomain basis element where the two sides differ.
    pub output: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub more_witnesses: Vec<Witness>,
    pub violations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Report>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            pass: true,
            witness: None,
            more_witnesses: Vec::new(),
            violations: 0,
            note: None,
            parts: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, note: impl Into<String>) -> Self {
        Report { pass: false, violations: 1, note: Some(note.into()), ..Report::pass(check) }
    }

    pub fn from_witnesses(check: impl Into<String>, violations: u64, mut witnesses: Vec<Witness>) -> Self {
        let witness = (!witnesses.is_empty()).then(|| witnesses.remove(0));
        Report { pass: violations == 0, witness, more_witnesses: witnesses, violations, ..Report::pass(check) }
    }

    /// Conjunction of sub-checks; inherits the first failing witness.
    pub fn all(check: impl Into<String>, parts: Vec<Report>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let violations = parts.iter().map(|p| p.violations).sum();
        let witness = parts.iter().find(|p| !p.pass).and_then(|p| p.witness.clone());
        Report { pass, witness, violations, parts, ..Report::pass(check) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    pub fn push(&mut self, part: Report) {
        self.pass &= part.pass;
        self.violations += part.violations;
        if self.witness.is_none() && !part.pass {
            self.witness = part.witness.clone();
        }
        self.parts.push(part);
    }

    /// Deepest first failing leaf, in part order.
    pub fn first_failure(&self) -> Option<&Report> {
        if self.pass {
            return None;
        }
        self.parts.iter().find_map(|p| p.first_failure()).or(Some(self))
    }

    pub fn find(&self, check: &str) -> Option<&Report> {
        if self.check == check {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(check))
    }

    /// Indented human-readable rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!("{pad}[{}] {}", if self.pass { "PASS" } else { "FAIL" }, self.check));
        if self.violations > 0 {
            out.push_str(&format!(" ({} violations)", self.violations));
        }
        out.push('\n');
        if let Some(note) = &self.note {
            out.push_str(&format!("{pad}  note: {note}\n"));
        }
        for w in self.witness.iter().chain(&self.more_witnesses) {
            if self.parts.is_empty() {
                out.push_str(&format!(
                    "{pad}  witness: input {} -> at {}: lhs {} vs rhs {}\n",
                    w.input, w.output, w.lhs, w.rhs
                ));
            }
        }
        for p in &self.parts {
            p.render_into(out, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_takes_first_failure() {
        let bad = Report::fail("b", "broken");
        let r = Report::all("top", vec![Report::pass("a"), bad, Report::fail("c", "also")]);
        assert!(!r.pass);
        assert_eq!(r.violations, 2);
        assert_eq!(r.first_failure().unwrap().check, "b");
    }
}
