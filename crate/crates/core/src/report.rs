//! Check outcomes shared by the axiom checks and the verifiers.

use crate::element::ConformalElement;
use crate::poly::Rat;

/// A nonzero element left over by an identity check, with a note on where
/// it came from (e.g. `"(L, G)"`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub context: String,
    pub value: ConformalElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub residuals: Vec<Residual>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
    /// A precondition of the check does not hold; the witness says which.
    NotApplicable,
}

/// Coefficients recovered while checking a structural claim, such as the
/// centroid coordinates of a biderivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub subject: String,
    pub coefficients: Vec<(String, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierReport {
    pub name: &'static str,
    pub status: Status,
    pub residuals: Vec<Residual>,
    pub decompositions: Vec<Decomposition>,
    pub notes: Vec<String>,
}

impl VerifierReport {
    pub fn new(name: &'static str) -> Self {
        VerifierReport {
            name,
            status: Status::Passed,
            residuals: Vec::new(),
            decompositions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(name: &'static str, witness: impl Into<String>) -> Self {
        VerifierReport {
            status: Status::NotApplicable,
            notes: vec![witness.into()],
            ..VerifierReport::new(name)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.status = Status::Failed;
        self.notes.push(note.into());
    }

    pub fn push_residual(&mut self, context: String, value: ConformalElement) {
        if !value.is_zero() {
            self.residuals.push(Residual { context, value });
            self.status = Status::Failed;
        }
    }
}
