//! Instance-to-instance reductions.
//!
//! Every pass returns the rewritten instance together with a
//! [`ReductionTrace`] mapping output states and coordinates back to the
//! input, and supports back-translating witnesses of the output into
//! witnesses of the input.

use crate::system::{
    Configuration, ForkReading, Instance, LeafCondition, RootCondition, Semantics, SemanticsMode,
    StateId, System, ZeroReading,
};
use crate::tree::{DeductionTree, StepTag};
use crate::vecs::{CVec, Delta, Int, Nat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("pass requires {expected} semantics, instance has {found:?}")]
    WrongSemantics {
        expected: &'static str,
        found: SemanticsMode,
    },
    #[error("pass requires the all-zero leaf condition")]
    NeedsZeroLeaves,
    #[error("witness does not fit the reduction ({0})")]
    BadWitness(String),
    #[error("root-state fixpoint did not converge within |Q| iterations")]
    FixpointDiverged,
    #[error("oracle failure: {0}")]
    Oracle(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateOrigin {
    From(StateId),
    Generated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordOrigin {
    From(usize),
    /// Coordinate j of the original system inside block `block`.
    Block { block: usize, coord: usize },
}

/// Maps every output state and coordinate back to the input.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub pass: &'static str,
    pub state_map: Vec<StateOrigin>,
    pub coord_map: Vec<CoordOrigin>,
}

impl ReductionTrace {
    fn identity(pass: &'static str, inst: &Instance) -> Self {
        ReductionTrace {
            pass,
            state_map: inst
                .system
                .state_ids()
                .map(StateOrigin::From)
                .collect(),
            coord_map: (0..inst.system.dim).map(CoordOrigin::From).collect(),
        }
    }
}

/// Pass-specific data needed to translate witnesses back.
#[derive(Clone, Debug)]
enum PassData {
    EliminateZero {
        /// block index per output state
        block_of: Vec<usize>,
        orig_dim: usize,
    },
    Ordinary {
        /// for generated chain states: the original rule they belong to
        chain_state: Vec<bool>,
    },
    CoverView,
    IncreasingView,
    PseudoIncreasing,
}

/// The result of a reduction pass.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub instance: Instance,
    pub trace: ReductionTrace,
    data: PassData,
}

// ---------------------------------------------------------------------------
// Full zero test elimination
// ---------------------------------------------------------------------------

/// Removes T_z by moving to states {1..|Q|}×Q over dimension |Q|·d: state
/// (i,q) simulates q on the i-th d-block and each zero rule q → q' becomes a
/// 0-delta unary rule (i,q) → (i+1,q'), postponing the zero checks to the
/// all-zero leaf condition.  Decision-equivalent for strict, lossy, and
/// expansive semantics.
pub fn eliminate_zero_tests(inst: &Instance) -> Result<Reduction, ReduceError> {
    if inst.semantics.mode == SemanticsMode::Increasing {
        return Err(ReduceError::WrongSemantics {
            expected: "strict, lossy, or expansive",
            found: inst.semantics.mode,
        });
    }
    if inst.leaf_condition != LeafCondition::ZeroVector {
        return Err(ReduceError::NeedsZeroLeaves);
    }
    let sys = &inst.system;
    let n = sys.num_states();
    let d = sys.dim;
    let mut out = System::new(n * d);
    let mut state_map = Vec::new();
    let mut block_of = Vec::new();
    let mut product = vec![Vec::with_capacity(n); n]; // [block][orig] -> new id
    for block in 0..n {
        for q in sys.state_ids() {
            let id = out.add_state(&format!("$z{}.{}", block + 1, sys.state_name(q)));
            product[block].push(id);
            state_map.push(StateOrigin::From(q));
            block_of.push(block);
        }
    }
    let coord_map: Vec<CoordOrigin> = (0..n * d)
        .map(|c| CoordOrigin::Block {
            block: c / d,
            coord: c % d,
        })
        .collect();

    let place = |block: usize, u: &Delta| {
        let mut v = vec![Int::zero(); n * d];
        for (j, x) in u.0.iter().enumerate() {
            v[block * d + j] = x.clone();
        }
        Delta(v)
    };
    for block in 0..n {
        for r in &sys.unary {
            out.add_unary(
                product[block][r.src.index()],
                place(block, &r.delta),
                product[block][r.dst.index()],
            );
        }
        for r in &sys.fork {
            out.add_fork(
                product[block][r.src.index()],
                product[block][r.dst1.index()],
                product[block][r.dst2.index()],
            );
        }
        for r in &sys.split {
            out.add_split(
                product[block][r.src.index()],
                product[block][r.dst1.index()],
                product[block][r.dst2.index()],
            );
        }
        if block + 1 < n {
            for r in &sys.zero {
                out.add_unary(
                    product[block][r.src.index()],
                    Delta::zeros(n * d),
                    product[block + 1][r.dst.index()],
                );
            }
        }
    }

    let mut root_vector = CVec::zeros(n * d);
    for j in 0..d {
        root_vector.0[j] = inst.root_vector.0[j].clone();
    }
    let leaf_states: Vec<StateId> = (0..n)
        .flat_map(|block| {
            inst.leaf_states
                .iter()
                .map(move |q| (block, *q))
        })
        .map(|(block, q)| product[block][q.index()])
        .collect();

    let instance = Instance {
        system: out,
        semantics: inst.semantics,
        root_state: product[0][inst.root_state.index()],
        root_vector,
        root_condition: RootCondition::ExactVector,
        leaf_states: {
            let mut l = leaf_states;
            l.sort();
            l.dedup();
            l
        },
        leaf_condition: LeafCondition::ZeroVector,
    };
    Ok(Reduction {
        instance,
        trace: ReductionTrace {
            pass: "eliminate-zerotests",
            state_map,
            coord_map,
        },
        data: PassData::EliminateZero {
            block_of,
            orig_dim: d,
        },
    })
}

// ---------------------------------------------------------------------------
// Ordinary form
// ---------------------------------------------------------------------------

/// Decomposes every multi-unit unary rule into a chain of ±e_i steps through
/// fresh intermediate states (increments first).  Deltas that are already
/// unit vectors or zero are kept.  Decision-equivalent under strict, lossy,
/// and expansive semantics.
pub fn to_ordinary(inst: &Instance) -> Result<Reduction, ReduceError> {
    let sys = &inst.system;
    let d = sys.dim;
    let mut out = System::new(d);
    let mut state_map = Vec::new();
    let mut chain_state = Vec::new();
    for q in sys.state_ids() {
        out.add_state(sys.state_name(q));
        state_map.push(StateOrigin::From(q));
        chain_state.push(false);
    }
    for (idx, r) in sys.unary.iter().enumerate() {
        if r.delta.l1_norm() <= Nat::one() {
            out.add_unary(r.src, r.delta.clone(), r.dst);
            continue;
        }
        // unit steps: increments first, then decrements
        let mut units: Vec<Delta> = Vec::new();
        for (j, x) in r.delta.0.iter().enumerate() {
            if x.is_positive() {
                let mut n = x.clone();
                while n.is_positive() {
                    units.push(Delta::unit(d, j, 1));
                    n -= 1;
                }
            }
        }
        for (j, x) in r.delta.0.iter().enumerate() {
            if x.is_negative() {
                let mut n = -x.clone();
                while n.is_positive() {
                    units.push(Delta::unit(d, j, -1));
                    n -= 1;
                }
            }
        }
        let mut cur = r.src;
        for (step, unit) in units.iter().enumerate() {
            let next = if step + 1 == units.len() {
                r.dst
            } else {
                let id = out.add_state(&format!("$ord.{idx}.{step}"));
                state_map.push(StateOrigin::Generated);
                chain_state.push(true);
                id
            };
            out.add_unary(cur, unit.clone(), next);
            cur = next;
        }
    }
    out.fork = sys.fork.clone();
    out.split = sys.split.clone();
    out.zero = sys.zero.clone();

    let instance = Instance {
        system: out,
        semantics: inst.semantics,
        root_state: inst.root_state,
        root_vector: inst.root_vector.clone(),
        root_condition: inst.root_condition,
        leaf_states: inst.leaf_states.clone(),
        leaf_condition: inst.leaf_condition,
    };
    let coord_map = (0..d).map(CoordOrigin::From).collect();
    Ok(Reduction {
        instance,
        trace: ReductionTrace {
            pass: "ordinary",
            state_map,
            coord_map,
        },
        data: PassData::Ordinary { chain_state },
    })
}

// ---------------------------------------------------------------------------
// Views
// ---------------------------------------------------------------------------

/// Lossy reachability as top-down coverability: zero rules re-read as full
/// resets, the leaf condition relaxed to any vector, and the semantics set
/// to strict on the view (losses can be applied as late as possible, at the
/// leaves or right before a reset).
pub fn coverability_view(inst: &Instance) -> Result<Reduction, ReduceError> {
    if inst.semantics.mode != SemanticsMode::Lossy {
        return Err(ReduceError::WrongSemantics {
            expected: "lossy",
            found: inst.semantics.mode,
        });
    }
    let mut instance = inst.clone();
    instance.semantics = Semantics {
        mode: SemanticsMode::Strict,
        zero_reading: ZeroReading::Reset,
        fork_reading: ForkReading::Duplicate,
        pseudo: false,
    };
    instance.leaf_condition = LeafCondition::AnyVector;
    Ok(Reduction {
        trace: ReductionTrace::identity("coverability-view", inst),
        instance,
        data: PassData::CoverView,
    })
}

/// Increasing reachability as bottom-up coverability: forks re-read as
/// meets, zero rules as zero-jumps, leaves required at zero, and the root
/// vector left free.
pub fn increasing_view(inst: &Instance) -> Result<Reduction, ReduceError> {
    if inst.semantics.mode != SemanticsMode::Increasing {
        return Err(ReduceError::WrongSemantics {
            expected: "increasing",
            found: inst.semantics.mode,
        });
    }
    let mut instance = inst.clone();
    instance.semantics = Semantics {
        mode: SemanticsMode::Increasing,
        zero_reading: ZeroReading::Jump,
        fork_reading: ForkReading::Meet,
        pseudo: false,
    };
    instance.leaf_condition = LeafCondition::ZeroVector;
    instance.root_condition = RootCondition::AnyVector;
    Ok(Reduction {
        trace: ReductionTrace::identity("increasing-view", inst),
        instance,
        data: PassData::IncreasingView,
    })
}

/// Drops the free increase step: unary rules are read pseudo-unary, which
/// applies the minimal necessary increase implicitly.
pub fn to_pseudo_increasing(inst: &Instance) -> Result<Reduction, ReduceError> {
    if inst.semantics.mode != SemanticsMode::Increasing {
        return Err(ReduceError::WrongSemantics {
            expected: "increasing",
            found: inst.semantics.mode,
        });
    }
    let mut instance = inst.clone();
    instance.semantics.pseudo = true;
    Ok(Reduction {
        trace: ReductionTrace::identity("pseudo-increasing", inst),
        instance,
        data: PassData::PseudoIncreasing,
    })
}

// ---------------------------------------------------------------------------
// Root states fixpoint
// ---------------------------------------------------------------------------

/// Root_A(Q_ℓ) = μX. Root_{A'}(Q_ℓ) ∪ Root_{A'}(X ∪ T_z⁻¹(X)) where A' drops
/// the zero rules.  The oracle decides ⟨A', q, X⟩ reachability under the
/// active semantics; convergence within |Q| iterations is asserted.
pub fn root_states<E: std::fmt::Display>(
    sys: &System,
    leaf_states: &[StateId],
    mut oracle: impl FnMut(&System, StateId, &[StateId]) -> Result<bool, E>,
) -> Result<BTreeSet<StateId>, ReduceError> {
    let mut stripped = sys.clone();
    stripped.zero.clear();

    let mut roots_of = |targets: &BTreeSet<StateId>| -> Result<BTreeSet<StateId>, ReduceError> {
        let target_vec: Vec<StateId> = targets.iter().copied().collect();
        let mut out = BTreeSet::new();
        for q in sys.state_ids() {
            if oracle(&stripped, q, &target_vec).map_err(|e| ReduceError::Oracle(e.to_string()))? {
                out.insert(q);
            }
        }
        Ok(out)
    };

    let base: BTreeSet<StateId> = leaf_states.iter().copied().collect();
    let mut x = roots_of(&base)?;
    for _ in 0..=sys.num_states() {
        let mut targets: BTreeSet<StateId> = x.clone();
        for r in &sys.zero {
            if x.contains(&r.dst) {
                targets.insert(r.src);
            }
        }
        let next: BTreeSet<StateId> = x.union(&roots_of(&targets)?).copied().collect();
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(ReduceError::FixpointDiverged)
}

// ---------------------------------------------------------------------------
// Witness back-translation
// ---------------------------------------------------------------------------

impl Reduction {
    /// Translates a witness of the reduced instance into a witness of
    /// `original`; composing trace maps node by node.
    pub fn back_translate(
        &self,
        original: &Instance,
        witness: &DeductionTree,
    ) -> Result<DeductionTree, ReduceError> {
        match &self.data {
            PassData::EliminateZero { block_of, orig_dim } => {
                bt_eliminate_zero(self, original, witness, block_of, *orig_dim)
            }
            PassData::Ordinary { chain_state } => {
                bt_ordinary(original, witness, chain_state)
            }
            PassData::CoverView => bt_cover_view(original, witness),
            PassData::IncreasingView => Ok(witness.clone()),
            PassData::PseudoIncreasing => Ok(witness.clone()),
        }
    }
}

/// Loss chain from (q, v) down to (q, target), then `tail`.
fn loss_chain(state: StateId, v: &CVec, target: &CVec, tail: DeductionTree) -> DeductionTree {
    let mut nodes = Vec::new();
    let mut cur = v.clone();
    for i in 0..v.dim() {
        while cur.0[i] > target.0[i] {
            nodes.push((cur.clone(), i));
            cur = cur
                .checked_add(&Delta::unit(v.dim(), i, -1))
                .expect("loss step");
        }
    }
    let mut tree = tail;
    for (vec, coord) in nodes.into_iter().rev() {
        tree = DeductionTree::node(
            Configuration::new(state, vec),
            StepTag::Loss { coord },
            vec![tree],
        );
    }
    tree
}

fn bt_eliminate_zero(
    red: &Reduction,
    original: &Instance,
    node: &DeductionTree,
    block_of: &[usize],
    d: usize,
) -> Result<DeductionTree, ReduceError> {
    let orig_state = |s: StateId| match red.trace.state_map[s.index()] {
        StateOrigin::From(q) => q,
        StateOrigin::Generated => unreachable!("product states all map back"),
    };
    let block = block_of[node.label.state.index()];
    let slice = |v: &CVec, b: usize| CVec(v.0[b * d..(b + 1) * d].to_vec());
    let q = orig_state(node.label.state);
    let v = slice(&node.label.vector, block);
    let translate_children = |red: &Reduction| -> Result<Vec<DeductionTree>, ReduceError> {
        node.children
            .iter()
            .map(|c| bt_eliminate_zero(red, original, c, block_of, d))
            .collect()
    };
    match &node.step {
        StepTag::Leaf => Ok(DeductionTree::leaf(Configuration::new(q, v))),
        StepTag::Unary { dst, .. } => {
            let dst_block = block_of[dst.index()];
            let children = translate_children(red)?;
            if dst_block == block {
                // genuine rule of the original in this block
                let delta = Delta(
                    node.children[0].label.vector.0[block * d..(block + 1) * d]
                        .iter()
                        .zip(v.0.iter())
                        .map(|(c, p)| Int::from(c.clone()) - Int::from(p.clone()))
                        .collect(),
                );
                Ok(DeductionTree::node(
                    Configuration::new(q, v),
                    StepTag::Unary {
                        src: q,
                        delta,
                        dst: orig_state(*dst),
                    },
                    children,
                ))
            } else {
                // block change: a postponed zero test
                let dst_q = orig_state(*dst);
                let zero_node = DeductionTree::node(
                    Configuration::new(q, CVec::zeros(d)),
                    StepTag::Zero { src: q, dst: dst_q },
                    children,
                );
                if v.is_zero() {
                    Ok(zero_node)
                } else if original.semantics.mode == SemanticsMode::Lossy {
                    Ok(loss_chain(q, &v, &CVec::zeros(d), zero_node))
                } else {
                    Err(ReduceError::BadWitness(
                        "nonzero frozen block at a zero transition".into(),
                    ))
                }
            }
        }
        StepTag::Fork { dst1, dst2, .. } => Ok(DeductionTree::node(
            Configuration::new(q, v),
            StepTag::Fork {
                src: q,
                dst1: orig_state(*dst1),
                dst2: orig_state(*dst2),
            },
            translate_children(red)?,
        )),
        StepTag::Split { dst1, dst2, .. } => Ok(DeductionTree::node(
            Configuration::new(q, v),
            StepTag::Split {
                src: q,
                dst1: orig_state(*dst1),
                dst2: orig_state(*dst2),
            },
            translate_children(red)?,
        )),
        StepTag::Loss { coord } | StepTag::Expansion { coord } | StepTag::Increase { coord } => {
            let children = translate_children(red)?;
            if coord / d == block {
                let tag = match node.step {
                    StepTag::Loss { .. } => StepTag::Loss { coord: coord % d },
                    StepTag::Expansion { .. } => StepTag::Expansion { coord: coord % d },
                    _ => StepTag::Increase { coord: coord % d },
                };
                Ok(DeductionTree::node(Configuration::new(q, v), tag, children))
            } else {
                // step on a frozen block: contract the edge
                Ok(children.into_iter().next().expect("unit step has a child"))
            }
        }
        other => Err(ReduceError::BadWitness(format!(
            "unexpected step {other:?} in a zero-elimination witness"
        ))),
    }
}

fn bt_ordinary(
    original: &Instance,
    node: &DeductionTree,
    chain_state: &[bool],
) -> Result<DeductionTree, ReduceError> {
    assert!(
        !chain_state[node.label.state.index()],
        "translation must start at an original state"
    );
    let label = node.label.clone();
    match &node.step {
        StepTag::Unary { .. } => {
            // Walk the chain (possibly a single unit step) to the next
            // original state, collecting the rule delta and any interleaved
            // loss/expansion steps for relocation.
            let mut cur = node;
            let mut delta = Delta::zeros(label.vector.dim());
            let mut losses: Vec<usize> = Vec::new();
            let mut expansions: Vec<usize> = Vec::new();
            let end = loop {
                match &cur.step {
                    StepTag::Unary { delta: d, dst, .. } => {
                        for (i, x) in d.0.iter().enumerate() {
                            delta.0[i] += x;
                        }
                        let child = &cur.children[0];
                        if chain_state[dst.index()] {
                            cur = child;
                        } else {
                            break child;
                        }
                    }
                    StepTag::Loss { coord } => {
                        losses.push(*coord);
                        cur = &cur.children[0];
                    }
                    StepTag::Expansion { coord } => {
                        expansions.push(*coord);
                        cur = &cur.children[0];
                    }
                    other => {
                        return Err(ReduceError::BadWitness(format!(
                            "step {other:?} interrupts an ordinary chain"
                        )))
                    }
                }
            };
            // An in-chain expansion relocates before the rule when the rule
            // consumes the coordinate (values decrease monotonically along
            // the chain, so the coordinate was already positive), after it
            // otherwise.
            let pre: Vec<usize> = expansions
                .iter()
                .copied()
                .filter(|&c| delta.0[c].is_negative())
                .collect();
            let post_exp: Vec<usize> = expansions
                .iter()
                .copied()
                .filter(|&c| !delta.0[c].is_negative())
                .collect();

            let mut start_vec = label.vector.clone();
            let mut pre_nodes = Vec::new();
            for &coord in &pre {
                pre_nodes.push((start_vec.clone(), coord));
                start_vec = start_vec
                    .checked_add(&Delta::unit(start_vec.dim(), coord, 1))
                    .expect("expansion step");
            }
            let fired = start_vec
                .checked_add(&delta)
                .ok_or_else(|| ReduceError::BadWitness("infeasible contracted rule".into()))?;
            let mut post_nodes = Vec::new();
            let mut post_vec = fired.clone();
            for &coord in &post_exp {
                post_nodes.push((post_vec.clone(), coord, false));
                post_vec = post_vec
                    .checked_add(&Delta::unit(post_vec.dim(), coord, 1))
                    .expect("expansion step");
            }
            for &coord in &losses {
                post_nodes.push((post_vec.clone(), coord, true));
                post_vec = post_vec
                    .checked_add(&Delta::unit(post_vec.dim(), coord, -1))
                    .expect("loss step");
            }
            debug_assert_eq!(post_vec, end.label.vector);

            let dst_state = end.label.state;
            let mut tree = bt_ordinary(original, end, chain_state)?;
            for (vec, coord, is_loss) in post_nodes.into_iter().rev() {
                let tag = if is_loss {
                    StepTag::Loss { coord }
                } else {
                    StepTag::Expansion { coord }
                };
                tree = DeductionTree::node(Configuration::new(dst_state, vec), tag, vec![tree]);
            }
            tree = DeductionTree::node(
                Configuration::new(label.state, start_vec),
                StepTag::Unary {
                    src: label.state,
                    delta,
                    dst: dst_state,
                },
                vec![tree],
            );
            for (vec, coord) in pre_nodes.into_iter().rev() {
                tree = DeductionTree::node(
                    Configuration::new(label.state, vec),
                    StepTag::Expansion { coord },
                    vec![tree],
                );
            }
            Ok(tree)
        }
        _ => {
            let children = node
                .children
                .iter()
                .map(|c| bt_ordinary(original, c, chain_state))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DeductionTree::node(label, node.step.clone(), children))
        }
    }
}

fn bt_cover_view(original: &Instance, node: &DeductionTree) -> Result<DeductionTree, ReduceError> {
    let label = node.label.clone();
    match &node.step {
        StepTag::Leaf => {
            if original.leaf_condition == LeafCondition::ZeroVector && !label.vector.is_zero() {
                let zero = CVec::zeros(label.vector.dim());
                let leaf = DeductionTree::leaf(Configuration::new(label.state, zero.clone()));
                Ok(loss_chain(label.state, &label.vector, &zero, leaf))
            } else {
                Ok(DeductionTree::leaf(label))
            }
        }
        StepTag::Zero { src, dst } => {
            let child = bt_cover_view(original, &node.children[0])?;
            if original.semantics.zero_reading == ZeroReading::Reset || label.vector.is_zero() {
                Ok(DeductionTree::node(label, node.step.clone(), vec![child]))
            } else {
                // the original reads T_z as tests: lose down to zero first
                let zero = CVec::zeros(label.vector.dim());
                let zero_node = DeductionTree::node(
                    Configuration::new(label.state, zero.clone()),
                    StepTag::Zero {
                        src: *src,
                        dst: *dst,
                    },
                    vec![child],
                );
                Ok(loss_chain(label.state, &label.vector, &zero, zero_node))
            }
        }
        _ => {
            let children = node
                .children
                .iter()
                .map(|c| bt_cover_view(original, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DeductionTree::node(label, node.step.clone(), children))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::validate_instance;

    fn strict_instance_with_zero_test() -> Instance {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_unary(a, Delta::from_i64s(&[1]), a);
        sys.add_unary(a, Delta::from_i64s(&[-1]), a);
        sys.add_zero(a, b);
        Instance::reachability(sys, Semantics::strict(), a, vec![b])
    }

    #[test]
    fn eliminate_zero_tests_shape() {
        let inst = strict_instance_with_zero_test();
        let red = eliminate_zero_tests(&inst).unwrap();
        assert!(validate_instance(&red.instance).ok());
        assert_eq!(red.instance.system.num_states(), 4);
        assert_eq!(red.instance.system.dim, 2);
        assert!(red.instance.system.zero.is_empty());
        assert_eq!(red.trace.state_map.len(), 4);
        assert_eq!(red.trace.coord_map.len(), 2);
    }

    #[test]
    fn eliminate_zero_tests_identity_when_no_zero_rules() {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        sys.add_unary(a, Delta::from_i64s(&[0]), a);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![a]);
        let red = eliminate_zero_tests(&inst).unwrap();
        // |Q| = 1 block, so the output is isomorphic to the input
        assert_eq!(red.instance.system.num_states(), 1);
        assert_eq!(red.instance.system.dim, 1);
        assert_eq!(red.instance.system.unary.len(), 1);
    }

    #[test]
    fn eliminate_zero_tests_rejects_increasing() {
        let mut inst = strict_instance_with_zero_test();
        inst.semantics = Semantics::increasing();
        assert!(matches!(
            eliminate_zero_tests(&inst),
            Err(ReduceError::WrongSemantics { .. })
        ));
    }

    #[test]
    fn ordinary_chain_counts() {
        let mut sys = System::new(3);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_unary(a, Delta::from_i64s(&[0, -1, 2]), b);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![b]);
        let red = to_ordinary(&inst).unwrap();
        // |u|_1 = 3: chain of 3 unit rules through 2 fresh states
        assert_eq!(red.instance.system.unary.len(), 3);
        assert_eq!(red.instance.system.num_states(), 4);
        assert!(red.instance.system.is_ordinary());
    }

    #[test]
    fn ordinary_keeps_already_ordinary_systems() {
        let mut sys = System::new(2);
        let a = sys.add_state("a");
        sys.add_unary(a, Delta::from_i64s(&[1, 0]), a);
        sys.add_unary(a, Delta::from_i64s(&[0, 0]), a);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![a]);
        let red = to_ordinary(&inst).unwrap();
        assert_eq!(red.instance.system.num_states(), 1);
        assert_eq!(red.instance.system.unary.len(), 2);
    }

    #[test]
    fn coverability_view_changes_reading_and_leaves() {
        let mut inst = strict_instance_with_zero_test();
        inst.semantics = Semantics::lossy();
        let red = coverability_view(&inst).unwrap();
        assert_eq!(red.instance.semantics.mode, SemanticsMode::Strict);
        assert_eq!(red.instance.semantics.zero_reading, ZeroReading::Reset);
        assert_eq!(red.instance.leaf_condition, LeafCondition::AnyVector);
        assert!(coverability_view(&strict_instance_with_zero_test()).is_err());
    }

    #[test]
    fn pseudo_increasing_flips_the_flag() {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_unary(a, Delta::from_i64s(&[-1]), b);
        let inst = Instance::reachability(sys, Semantics::increasing(), a, vec![b]);
        let red = to_pseudo_increasing(&inst).unwrap();
        assert!(red.instance.semantics.pseudo);
        let strict = Instance::reachability(red.instance.system.clone(), Semantics::strict(), a, vec![b]);
        assert!(to_pseudo_increasing(&strict).is_err());
        assert!(increasing_view(&strict).is_err());
    }

    #[test]
    fn root_states_monotone_and_trivial_cases() {
        let sys = strict_instance_with_zero_test().system;
        let all: Vec<StateId> = sys.state_ids().collect();
        // oracle: q reaches targets iff q is a target (no-op oracle)
        let oracle = |_: &System, q: StateId, targets: &[StateId]| -> Result<bool, ReduceError> {
            Ok(targets.contains(&q))
        };
        let roots = root_states(&sys, &all, oracle).unwrap();
        assert_eq!(roots.len(), all.len()); // X = Q is already a fixpoint
    }
}
