//! Pass/fail records produced by the identity checks.

use serde::{Serialize, Serializer};

use crate::linalg::{format_vector, is_zero_vector, Rational, Vector};

/// A failing instance: which identity family, at which basis tuple, with what residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub tuple: Vec<usize>,
    #[serde(serialize_with = "serialize_vector")]
    pub residual: Vector,
}

impl Witness {
    pub fn new(kind: impl Into<String>, tuple: Vec<usize>, residual: Vector) -> Self {
        Witness {
            kind: kind.into(),
            tuple,
            residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// Set when the hypotheses of the check do not hold; the check was not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    /// Witnesses are sorted so the report does not depend on evaluation order.
    pub fn from_witnesses(check: impl Into<String>, mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort_by(|a, b| {
            (&a.kind, &a.tuple)
                .cmp(&(&b.kind, &b.tuple))
                .then_with(|| format_vector(&a.residual).cmp(&format_vector(&b.residual)))
        });
        witnesses.dedup();
        CheckReport {
            check: check.into(),
            passed: witnesses.is_empty(),
            skipped: None,
            witnesses,
            notes: Vec::new(),
        }
    }

    pub fn skipped(check: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            skipped: Some(reason.into()),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    /// Ran and failed.
    pub fn failed(&self) -> bool {
        !self.passed
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Merges several reports into one under a new name.
    pub fn combine(check: impl Into<String>, parts: impl IntoIterator<Item = CheckReport>) -> Self {
        let mut witnesses = Vec::new();
        let mut notes = Vec::new();
        for p in parts {
            witnesses.extend(p.witnesses);
            notes.extend(p.notes);
        }
        let mut r = CheckReport::from_witnesses(check, witnesses);
        r.notes = notes;
        r
    }
}

/// Collects nonzero residuals as witnesses.
#[derive(Default)]
pub(crate) struct WitnessSink {
    pub witnesses: Vec<Witness>,
}

impl WitnessSink {
    pub fn push(&mut self, kind: &str, tuple: &[usize], residual: Vector) {
        if !is_zero_vector(&residual) {
            self.witnesses
                .push(Witness::new(kind, tuple.to_vec(), residual));
        }
    }

    pub fn into_report(self, check: &str) -> CheckReport {
        CheckReport::from_witnesses(check, self.witnesses)
    }
}

pub(crate) fn serialize_vector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    format_vector(v).serialize(s)
}
