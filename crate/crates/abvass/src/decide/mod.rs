//! Decision procedures: brute-force enumeration, bounded-height memoized
//! search, the antichain fixpoint for lossy coverability, and subsumption
//! search for the expansive and increasing modes.

mod antichain;
mod bounded;
mod brute;
mod subsume;

pub use antichain::{decide_lossy, min_cover_antichains, CoverAntichain};
pub use bounded::{decide_bounded_height, decide_strict_bounded, default_caps, SearchCaps};
pub use brute::brute_force;
pub use subsume::{decide_expansive, decide_increasing};

use crate::tree::DeductionTree;
use crate::vecs::Nat;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// The outcome of a decision procedure.  A yes answer always carries a
/// witness accepted by `validate_tree`; unknown only arises from capped
/// procedures.
#[derive(Clone, Debug)]
pub struct Decision {
    pub answer: Answer,
    pub witness: Option<DeductionTree>,
    pub procedure: &'static str,
    pub bounds_used: Option<(usize, Nat)>,
    pub diagnostics: Option<String>,
}

impl Decision {
    pub fn yes(procedure: &'static str, witness: DeductionTree) -> Self {
        Decision {
            answer: Answer::Yes,
            witness: Some(witness),
            procedure,
            bounds_used: None,
            diagnostics: None,
        }
    }

    pub fn no(procedure: &'static str) -> Self {
        Decision {
            answer: Answer::No,
            witness: None,
            procedure,
            bounds_used: None,
            diagnostics: None,
        }
    }

    pub fn unknown(procedure: &'static str, diagnostics: impl Into<String>) -> Self {
        Decision {
            answer: Answer::Unknown,
            witness: None,
            procedure,
            bounds_used: None,
            diagnostics: Some(diagnostics.into()),
        }
    }

    pub fn with_bounds(mut self, height: usize, value: Nat) -> Self {
        self.bounds_used = Some((height, value));
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

#[derive(Debug, Error)]
pub enum DecideError {
    #[error("procedure requires {0} semantics")]
    WrongSemantics(&'static str),
    #[error("instance is not in coverability form ({0})")]
    NotCoverabilityForm(&'static str),
    #[error("antichain guard exceeded ({0} elements)")]
    AntichainGuard(usize),
    #[error(transparent)]
    Step(#[from] crate::steps::StepError),
    #[error(transparent)]
    Reduce(#[from] crate::reduce::ReduceError),
}
