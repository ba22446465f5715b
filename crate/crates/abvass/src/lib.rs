//! Alternating branching vector addition systems with states and full zero
//! tests (ABVASS₀), together with the machinery built on top of them:
//!
//! * the counter-system model itself and its four semantics (strict, lossy,
//!   expansive, increasing), with deduction trees as witnesses ([`system`],
//!   [`tree`], [`steps`]);
//! * instance-to-instance reductions: zero-test elimination, ordinary form,
//!   coverability and bottom-up views, pseudo-increasing rewriting
//!   ([`reduce`]);
//! * decision procedures: an antichain fixpoint for lossy coverability,
//!   bounded-height memoized search, subsumption search for the expansive and
//!   increasing modes, and a brute-force enumeration oracle ([`decide`]);
//! * `tower`/`H`/`H'` bound arithmetic over bignums ([`bounds`]);
//! * hardness gadget generators: the `B_k` tower hierarchy, Minsky machine
//!   simulations, weak tower initializers ([`gadgets`]);
//! * propositional linear logic: formulas, cut-free bounded provers, and the
//!   two-way translations between provability and reachability ([`logic`]).
//!
//! All structures are immutable after construction and every operation is a
//! pure function of its inputs.

pub mod bounds;
pub mod decide;
pub mod gadgets;
pub mod logic;
pub mod reduce;
pub mod steps;
pub mod system;
pub mod tree;
pub mod vecs;

pub use decide::{Answer, Decision};
pub use system::{
    Configuration, ForkReading, Instance, LeafCondition, RootCondition, Semantics, SemanticsMode,
    StateId, System, ZeroReading,
};
pub use tree::{DeductionTree, StepTag};
pub use vecs::{CVec, Delta};
