//! Pass/fail reports produced by validators and verification suites.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

/// One law, checked on a number of instances; `witness` describes the first failure.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub status: Status,
    pub instances: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, id: &str, anchor: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.id == id) {
            return &mut self.checks[i];
        }
        self.checks.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Pass,
            instances: 0,
            failures: 0,
            witness: None,
        });
        self.checks.last_mut().unwrap()
    }

    /// Registers a law so that it appears even if no instance is checked.
    pub fn declare(&mut self, id: &str, anchor: &str) {
        self.entry(id, anchor);
    }

    /// Records one instance of a law; `witness` is only evaluated on failure.
    pub fn record(&mut self, id: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) {
        let c = self.entry(id, anchor);
        c.instances += 1;
        if !ok {
            c.failures += 1;
            if c.status == Status::Pass {
                c.status = Status::Fail;
            }
            if c.witness.is_none() {
                c.witness = Some(witness());
            }
        }
    }

    pub fn undecided(&mut self, id: &str, anchor: &str, why: String) {
        let c = self.entry(id, anchor);
        c.instances += 1;
        if c.status == Status::Pass {
            c.status = Status::Undecided;
        }
        c.witness.get_or_insert(why);
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let e = self.entry(&c.id, &c.anchor);
            e.instances += c.instances;
            e.failures += c.failures;
            if e.witness.is_none() {
                e.witness = c.witness;
            }
            e.status = match (e.status, c.status) {
                (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
                (Status::Undecided, _) | (_, Status::Undecided) => Status::Undecided,
                _ => Status::Pass,
            };
        }
    }

    /// Prefixes every check id, for nesting sub-reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}.{}", c.id);
        }
        self
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Undecided) {
            Status::Undecided
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_is_kept() {
        let mut r = Report::new();
        r.record("a", "x", true, || unreachable!());
        r.record("a", "x", false, || "first".into());
        r.record("a", "x", false, || "second".into());
        assert_eq!(r.checks[0].failures, 2);
        assert_eq!(r.checks[0].witness.as_deref(), Some("first"));
        assert_eq!(r.status(), Status::Fail);
    }
}
