//! Propositional linear logic: formulas in negation normal form, one- and
//! two-sided sequents, cut-free bounded provers with non-logical theories,
//! independent proof checking, and the two translations tying provability to
//! counter-system reachability.

mod check;
pub mod formula;
mod ilz;
pub mod prover;
pub mod sequent;
mod theta;

pub use check::check_proof;
pub use formula::{ilz_view, is_ilz, Formula, IlzView};
pub use ilz::{ilz_to_abvass, subformulas, IlzTranslation, TranslateError};
pub use prover::{fragment_check, prove_bounded, LogicError, Proof, ProveOutcome, Rule};
pub use sequent::{Axiom, Calculus, Multiset, Sequent, Theory};
pub use theta::{abvass_to_theory, ThetaEncoding, ThetaError, ThetaFlavor};
