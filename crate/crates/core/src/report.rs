//! Pass/fail bookkeeping shared by the axiom and functor-law checkers.

use std::fmt;

use serde::Serialize;

/// Failures beyond this count per entry are tallied but not stored.
pub const MAX_STORED_FAILURES: usize = 5;

/// A failing instance: the rendered witness cells and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub witnesses: Vec<String>,
    pub detail: String,
}

/// Results for one kind of check at one level and one choice of `p` (and `q`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry<K> {
    #[serde(rename = "id")]
    pub kind: K,
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures, in check order.
    pub failures: Vec<Failure>,
}

impl<K> CheckEntry<K> {
    pub fn new(kind: K, level: usize, p: Option<usize>, q: Option<usize>) -> Self {
        CheckEntry {
            kind,
            level,
            p,
            q,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, outcome: Result<(), Failure>) {
        self.checked += 1;
        if let Err(f) = outcome {
            self.failed += 1;
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<K> {
    pub entries: Vec<CheckEntry<K>>,
}

impl<K> Default for CheckReport<K> {
    fn default() -> Self {
        CheckReport {
            entries: Vec::new(),
        }
    }
}

impl<K: Copy + PartialEq> CheckReport<K> {
    /// True iff every entry passed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn checked(&self) -> usize {
        self.entries.iter().map(|e| e.checked).sum()
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().map(|e| e.failed).sum()
    }

    pub fn merge(&mut self, other: CheckReport<K>) {
        self.entries.extend(other.entries);
    }

    pub fn of_kind(&self, kind: K) -> impl Iterator<Item = &CheckEntry<K>> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }
}

impl<K: Serialize> CheckReport<K> {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = serde_json::to_value(e).expect("entry serializes");
                v["verdict"] = serde_json::json!(if e.passed() { "pass" } else { "fail" });
                v
            })
            .collect();
        let failed: usize = self.entries.iter().map(|e| e.failed).sum();
        serde_json::json!({
            "passed": failed == 0,
            "checked": self.entries.iter().map(|e| e.checked).sum::<usize>(),
            "failed": failed,
            "entries": entries,
        })
    }
}

impl<K: fmt::Display + Copy + PartialEq> fmt::Display for CheckReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let mut tag = format!("{} l={}", e.kind, e.level);
            if let Some(p) = e.p {
                tag.push_str(&format!(" p={p}"));
            }
            if let Some(q) = e.q {
                tag.push_str(&format!(" q={q}"));
            }
            writeln!(
                f,
                "{:<34} checked={:<6} failed={:<4} {}",
                tag,
                e.checked,
                e.failed,
                if e.passed() { "PASS" } else { "FAIL" }
            )?;
            for fail in &e.failures {
                writeln!(f, "    {}: {}", fail.witnesses.join(" | "), fail.detail)?;
            }
        }
        write!(
            f,
            "total checked={} failed={}  {}",
            self.checked(),
            self.failed(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
