//! The counter-system model: states, rules, semantics, instances.
//!
//! An ABVASS₀ is a tuple ⟨Q, d, T_u, T_f, T_s, T_z⟩ of states, a dimension,
//! and unary / fork / split / full-zero-test rules.  AVASS restrict to unary
//! and fork rules, BVASS to unary and split rules.

use crate::vecs::{CVec, Delta};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Interned state identifier; an index into [`System::state_names`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryRule {
    pub src: StateId,
    pub delta: Delta,
    pub dst: StateId,
}

/// Fork and split rules share this shape; the semantics differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchRule {
    pub src: StateId,
    pub dst1: StateId,
    pub dst2: StateId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroRule {
    pub src: StateId,
    pub dst: StateId,
}

/// An ABVASS₀ ⟨Q, d, T_u, T_f, T_s, T_z⟩.
#[derive(Clone, Debug, Default)]
pub struct System {
    state_names: Vec<String>,
    by_name: BTreeMap<String, StateId>,
    pub dim: usize,
    pub unary: Vec<UnaryRule>,
    pub fork: Vec<BranchRule>,
    pub split: Vec<BranchRule>,
    pub zero: Vec<ZeroRule>,
}

impl System {
    pub fn new(dim: usize) -> Self {
        System {
            dim,
            ..Default::default()
        }
    }

    /// Interns a state name, returning the existing id when already present.
    pub fn add_state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = StateId(self.state_names.len() as u32);
        self.state_names.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.by_name.get(name).copied()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.state_names[id.index()]
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_names.len() as u32).map(StateId)
    }

    pub fn add_unary(&mut self, src: StateId, delta: Delta, dst: StateId) {
        self.unary.push(UnaryRule { src, delta, dst });
    }

    pub fn add_fork(&mut self, src: StateId, dst1: StateId, dst2: StateId) {
        self.fork.push(BranchRule { src, dst1, dst2 });
    }

    pub fn add_split(&mut self, src: StateId, dst1: StateId, dst2: StateId) {
        self.split.push(BranchRule { src, dst1, dst2 });
    }

    pub fn add_zero(&mut self, src: StateId, dst: StateId) {
        self.zero.push(ZeroRule { src, dst });
    }

    /// Largest absolute value among the negative entries of unary deltas.
    pub fn max_neg(&self) -> crate::vecs::Nat {
        self.unary
            .iter()
            .map(|r| r.delta.max_neg())
            .max()
            .unwrap_or_default()
    }

    /// Largest positive entry among unary deltas.
    pub fn max_pos(&self) -> crate::vecs::Nat {
        self.unary
            .iter()
            .map(|r| r.delta.max_pos())
            .max()
            .unwrap_or_default()
    }

    /// True when every unary delta is a unit vector ±e_i or zero.
    pub fn is_ordinary(&self) -> bool {
        use num_traits::One;
        self.unary
            .iter()
            .all(|r| r.delta.l1_norm() <= crate::vecs::Nat::one())
    }
}

/// How the rules in T_z are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroReading {
    /// Fires only at the all-zero vector, producing the all-zero vector.
    Test,
    /// Fires at any vector, producing the all-zero vector.
    Reset,
    /// Fires only at the all-zero vector, producing any vector (the target
    /// freedom is realized by subsequent increase steps).
    Jump,
}

/// How the rules in T_f are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForkReading {
    /// Both children copy the parent vector.
    Duplicate,
    /// Children carry any vectors whose componentwise minimum is the parent.
    Meet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SemanticsMode {
    Strict,
    Lossy,
    Expansive,
    Increasing,
}

/// A semantics mode together with the readings of zero and fork rules.
///
/// The constructors derive the default readings: strict and expansive read
/// zero rules as tests, lossy permits either test or reset (losses make the
/// two readings interchangeable), increasing reads them as jumps.  The meet
/// reading of forks and the reset reading under a strict mode only arise in
/// the views produced by the reduction passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Semantics {
    pub mode: SemanticsMode,
    pub zero_reading: ZeroReading,
    pub fork_reading: ForkReading,
    /// Increasing mode only: drop the free increase step, leaving the
    /// pseudo-unary reading of unary rules to absorb increases.
    pub pseudo: bool,
}

impl Semantics {
    pub fn strict() -> Self {
        Semantics {
            mode: SemanticsMode::Strict,
            zero_reading: ZeroReading::Test,
            fork_reading: ForkReading::Duplicate,
            pseudo: false,
        }
    }

    pub fn lossy() -> Self {
        Semantics {
            mode: SemanticsMode::Lossy,
            zero_reading: ZeroReading::Test,
            fork_reading: ForkReading::Duplicate,
            pseudo: false,
        }
    }

    pub fn expansive() -> Self {
        Semantics {
            mode: SemanticsMode::Expansive,
            zero_reading: ZeroReading::Test,
            fork_reading: ForkReading::Duplicate,
            pseudo: false,
        }
    }

    pub fn increasing() -> Self {
        Semantics {
            mode: SemanticsMode::Increasing,
            zero_reading: ZeroReading::Jump,
            fork_reading: ForkReading::Duplicate,
            pseudo: false,
        }
    }

    pub fn from_mode(mode: SemanticsMode) -> Self {
        match mode {
            SemanticsMode::Strict => Self::strict(),
            SemanticsMode::Lossy => Self::lossy(),
            SemanticsMode::Expansive => Self::expansive(),
            SemanticsMode::Increasing => Self::increasing(),
        }
    }

    pub fn with_zero_reading(mut self, reading: ZeroReading) -> Self {
        self.zero_reading = reading;
        self
    }

    pub fn with_fork_reading(mut self, reading: ForkReading) -> Self {
        self.fork_reading = reading;
        self
    }
}

/// A (state, vector) pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    pub vector: CVec,
}

impl Configuration {
    pub fn new(state: StateId, vector: CVec) -> Self {
        Configuration { state, vector }
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{})", self.state, self.vector)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafCondition {
    /// Leaf labels must be (q_ℓ, 0).
    ZeroVector,
    /// Leaf labels only need q_ℓ; the vector is arbitrary (coverability).
    AnyVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootCondition {
    /// The root label is exactly (root_state, root_vector).
    ExactVector,
    /// Any root vector is admitted (bottom-up coverability views).
    AnyVector,
}

/// A decision-problem instance: a system, a semantics, a root judgement
/// shape, and a leaf set.
#[derive(Clone, Debug)]
pub struct Instance {
    pub system: System,
    pub semantics: Semantics,
    pub root_state: StateId,
    pub root_vector: CVec,
    pub root_condition: RootCondition,
    pub leaf_states: Vec<StateId>,
    pub leaf_condition: LeafCondition,
}

impl Instance {
    /// Reachability instance: root (q_r, 0), leaves (Q_ℓ, 0).
    pub fn reachability(
        system: System,
        semantics: Semantics,
        root_state: StateId,
        leaf_states: Vec<StateId>,
    ) -> Self {
        let dim = system.dim;
        let mut leaf_states = leaf_states;
        leaf_states.sort();
        leaf_states.dedup();
        Instance {
            system,
            semantics,
            root_state,
            root_vector: CVec::zeros(dim),
            root_condition: RootCondition::ExactVector,
            leaf_states,
            leaf_condition: LeafCondition::ZeroVector,
        }
    }

    pub fn with_root_vector(mut self, v: CVec) -> Self {
        assert_eq!(v.dim(), self.system.dim);
        self.root_vector = v;
        self
    }

    pub fn with_leaf_condition(mut self, cond: LeafCondition) -> Self {
        self.leaf_condition = cond;
        self
    }

    pub fn is_leaf_state(&self, q: StateId) -> bool {
        self.leaf_states.binary_search(&q).is_ok()
    }

    /// Whether a configuration satisfies the leaf condition.
    pub fn leaf_ok(&self, cfg: &Configuration) -> bool {
        self.is_leaf_state(cfg.state)
            && match self.leaf_condition {
                LeafCondition::ZeroVector => cfg.vector.is_zero(),
                LeafCondition::AnyVector => true,
            }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("{rule} rule #{index}: delta has {got} entries, expected {want}")]
    BadDelta {
        rule: &'static str,
        index: usize,
        got: usize,
        want: usize,
    },
    #[error("{rule} rule #{index} references state id {0} out of range", .id)]
    DanglingState {
        rule: &'static str,
        index: usize,
        id: u32,
    },
    #[error("root state id {0} out of range", .id)]
    BadRoot { id: u32 },
    #[error("leaf state id {0} out of range", .id)]
    BadLeaf { id: u32 },
    #[error("root vector has {got} entries, expected {want}")]
    BadRootVector { got: usize, want: usize },
}

/// Report-style result of [`validate_system`] / [`validate_instance`].
#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural invariants of a system: every rule endpoint is a
/// known state and every delta has exactly `dim` entries.
pub fn validate_system(sys: &System) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = sys.num_states() as u32;
    let check_state = |report: &mut ValidationReport, rule: &'static str, index, id: StateId| {
        if id.0 >= n {
            report.violations.push(Violation::DanglingState {
                rule,
                index,
                id: id.0,
            });
        }
    };
    for (i, r) in sys.unary.iter().enumerate() {
        check_state(&mut report, "unary", i, r.src);
        check_state(&mut report, "unary", i, r.dst);
        if r.delta.dim() != sys.dim {
            report.violations.push(Violation::BadDelta {
                rule: "unary",
                index: i,
                got: r.delta.dim(),
                want: sys.dim,
            });
        }
    }
    for (i, r) in sys.fork.iter().enumerate() {
        check_state(&mut report, "fork", i, r.src);
        check_state(&mut report, "fork", i, r.dst1);
        check_state(&mut report, "fork", i, r.dst2);
    }
    for (i, r) in sys.split.iter().enumerate() {
        check_state(&mut report, "split", i, r.src);
        check_state(&mut report, "split", i, r.dst1);
        check_state(&mut report, "split", i, r.dst2);
    }
    for (i, r) in sys.zero.iter().enumerate() {
        check_state(&mut report, "zerotest", i, r.src);
        check_state(&mut report, "zerotest", i, r.dst);
    }
    report
}

/// [`validate_system`] plus the instance-level invariants.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut report = validate_system(&inst.system);
    let n = inst.system.num_states() as u32;
    if inst.root_state.0 >= n {
        report.violations.push(Violation::BadRoot {
            id: inst.root_state.0,
        });
    }
    for &q in &inst.leaf_states {
        if q.0 >= n {
            report.violations.push(Violation::BadLeaf { id: q.0 });
        }
    }
    if inst.root_vector.dim() != inst.system.dim {
        report.violations.push(Violation::BadRootVector {
            got: inst.root_vector.dim(),
            want: inst.system.dim,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dim_system_with_empty_delta_is_ok() {
        let mut sys = System::new(0);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_unary(a, Delta::zeros(0), b);
        assert!(validate_system(&sys).ok());
    }

    #[test]
    fn dangling_state_is_reported() {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        sys.add_unary(a, Delta::from_i64s(&[1]), StateId(7));
        let report = validate_system(&sys);
        assert!(!report.ok());
        assert!(matches!(
            report.violations[0],
            Violation::DanglingState { id: 7, .. }
        ));
    }

    #[test]
    fn wrong_delta_width_is_reported() {
        let mut sys = System::new(3);
        let a = sys.add_state("a");
        sys.add_unary(a, Delta::from_i64s(&[0, 1]), a);
        let report = validate_system(&sys);
        assert!(matches!(
            report.violations[0],
            Violation::BadDelta { got: 2, want: 3, .. }
        ));
    }

    #[test]
    fn state_interning_is_idempotent() {
        let mut sys = System::new(0);
        let a = sys.add_state("a");
        assert_eq!(sys.add_state("a"), a);
        assert_eq!(sys.state("a"), Some(a));
        assert_eq!(sys.state_name(a), "a");
    }
}
