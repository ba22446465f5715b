//! Backward antichain fixpoint for top-down coverability, and the lossy
//! decision procedure built on it.
//!
//! Per state the fixpoint maintains the finite antichain of minimal
//! coverable vectors; membership of (q, v) is domination of some minimal
//! element.  Monotonicity of the unary, fork, and split rules makes the
//! upward-closed sets exact, and Dickson's lemma terminates the iteration.
//! Each inserted element records its derivation in an append-only log, from
//! which witnesses are replayed without re-searching.

use crate::decide::{Decision, DecideError};
use crate::reduce::coverability_view;
use crate::system::{
    Configuration, Instance, LeafCondition, SemanticsMode, StateId, ZeroReading,
};
use crate::tree::{DeductionTree, StepTag};
use crate::vecs::{CVec, Int};
use num_traits::Zero;

const ANTICHAIN_GUARD: usize = 100_000;

#[derive(Clone, Debug)]
enum Derivation {
    Leaf,
    Unary { rule: usize, child: usize },
    Fork { rule: usize, left: usize, right: usize },
    Split { rule: usize, left: usize, right: usize },
    Reset { rule: usize, child: usize },
}

#[derive(Clone, Debug)]
struct Fact {
    state: StateId,
    vector: CVec,
    via: Derivation,
}

/// Per-state antichains of minimal coverable vectors.
#[derive(Clone, Debug)]
pub struct CoverAntichain {
    /// log of derived facts; antichain entries index into it
    log: Vec<Fact>,
    /// per state: log indices of the current minimal elements
    minimal: Vec<Vec<usize>>,
}

impl CoverAntichain {
    /// The minimal coverable vectors at `q`, pairwise incomparable.
    pub fn minimal_at(&self, q: StateId) -> Vec<&CVec> {
        self.minimal[q.index()]
            .iter()
            .map(|&i| &self.log[i].vector)
            .collect()
    }

    /// Whether (q, v) dominates some minimal element.
    pub fn covers(&self, q: StateId, v: &CVec) -> bool {
        self.find(q, v).is_some()
    }

    fn find(&self, q: StateId, v: &CVec) -> Option<usize> {
        self.minimal[q.index()]
            .iter()
            .copied()
            .find(|&i| self.log[i].vector.leq(v))
    }

    pub fn total_size(&self) -> usize {
        self.minimal.iter().map(|m| m.len()).sum()
    }
}

/// Least fixpoint of the backward rule transformers over a coverability-form
/// instance (any-vector leaves; zero rules read as resets, if any).
pub fn min_cover_antichains(view: &Instance) -> Result<CoverAntichain, DecideError> {
    if view.leaf_condition != LeafCondition::AnyVector {
        return Err(DecideError::NotCoverabilityForm(
            "leaf condition must be any-vector",
        ));
    }
    if !view.system.zero.is_empty() && view.semantics.zero_reading != ZeroReading::Reset {
        return Err(DecideError::NotCoverabilityForm(
            "zero rules must be read as resets",
        ));
    }
    let sys = &view.system;
    let d = sys.dim;
    let mut ac = CoverAntichain {
        log: Vec::new(),
        minimal: vec![Vec::new(); sys.num_states()],
    };

    // returns true when the candidate is new-minimal
    fn insert(ac: &mut CoverAntichain, state: StateId, vector: CVec, via: Derivation) -> bool {
        let slot = &mut ac.minimal[state.index()];
        if slot.iter().any(|&i| ac.log[i].vector.leq(&vector)) {
            return false;
        }
        slot.retain(|&i| !vector.leq(&ac.log[i].vector));
        ac.log.push(Fact { state, vector, via });
        let idx = ac.log.len() - 1;
        ac.minimal[state.index()].push(idx);
        true
    }

    for &q in &view.leaf_states {
        insert(&mut ac, q, CVec::zeros(d), Derivation::Leaf);
    }

    let mut changed = true;
    while changed {
        changed = false;
        for (ri, rule) in sys.unary.iter().enumerate() {
            for li in ac.minimal[rule.dst.index()].clone() {
                let m1 = &ac.log[li].vector;
                // max(m1 − u, u₋, 0) componentwise
                let (_, u_minus) = rule.delta.split();
                let mut cand = Vec::with_capacity(d);
                for j in 0..d {
                    let need = Int::from(m1.0[j].clone()) - &rule.delta.0[j];
                    let need = need.max(Int::from(u_minus.0[j].clone()));
                    let need = need.max(Int::zero());
                    cand.push(need.to_biguint().unwrap());
                }
                changed |= insert(
                    &mut ac,
                    rule.src,
                    CVec(cand),
                    Derivation::Unary { rule: ri, child: li },
                );
            }
        }
        for (ri, rule) in sys.fork.iter().enumerate() {
            for li in ac.minimal[rule.dst1.index()].clone() {
                for ri2 in ac.minimal[rule.dst2.index()].clone() {
                    let cand = ac.log[li]
                        .vector
                        .join(&ac.log[ri2].vector)
                        .expect("equal dimensions");
                    changed |= insert(
                        &mut ac,
                        rule.src,
                        cand,
                        Derivation::Fork {
                            rule: ri,
                            left: li,
                            right: ri2,
                        },
                    );
                }
            }
        }
        for (ri, rule) in sys.split.iter().enumerate() {
            for li in ac.minimal[rule.dst1.index()].clone() {
                for ri2 in ac.minimal[rule.dst2.index()].clone() {
                    let cand = ac.log[li].vector.add(&ac.log[ri2].vector);
                    changed |= insert(
                        &mut ac,
                        rule.src,
                        cand,
                        Derivation::Split {
                            rule: ri,
                            left: li,
                            right: ri2,
                        },
                    );
                }
            }
        }
        for (ri, rule) in sys.zero.iter().enumerate() {
            // a reset reaches (dst, 0); coverable iff 0 is minimal there
            if let Some(ci) = ac.minimal[rule.dst.index()]
                .iter()
                .copied()
                .find(|&i| ac.log[i].vector.is_zero())
            {
                changed |= insert(
                    &mut ac,
                    rule.src,
                    CVec::zeros(d),
                    Derivation::Reset { rule: ri, child: ci },
                );
            }
        }
        if ac.total_size() > ANTICHAIN_GUARD {
            return Err(DecideError::AntichainGuard(ac.total_size()));
        }
    }
    Ok(ac)
}

/// Replays the derivation of a dominated element into a deduction tree for
/// (q, v) in the view instance.  Recursion follows the derivation log
/// indices, which strictly decrease, so replay always terminates.
fn replay(view: &Instance, ac: &CoverAntichain, q: StateId, v: &CVec) -> DeductionTree {
    let idx = ac.find(q, v).expect("replay requires domination");
    replay_fact(view, ac, idx, v)
}

fn replay_fact(view: &Instance, ac: &CoverAntichain, idx: usize, v: &CVec) -> DeductionTree {
    let fact = &ac.log[idx];
    debug_assert!(fact.vector.leq(v));
    let q = fact.state;
    let sys = &view.system;
    match &fact.via {
        Derivation::Leaf => DeductionTree::leaf(Configuration::new(q, v.clone())),
        Derivation::Unary { rule, child } => {
            let r = &sys.unary[*rule];
            let cv = v.checked_add(&r.delta).expect("minimality makes the rule fire");
            debug_assert!(ac.log[*child].vector.leq(&cv));
            let sub = replay_fact(view, ac, *child, &cv);
            DeductionTree::node(
                Configuration::new(q, v.clone()),
                StepTag::Unary {
                    src: r.src,
                    delta: r.delta.clone(),
                    dst: r.dst,
                },
                vec![sub],
            )
        }
        Derivation::Fork { rule, left, right } => {
            let r = &sys.fork[*rule];
            let l = replay_fact(view, ac, *left, v);
            let rr = replay_fact(view, ac, *right, v);
            DeductionTree::node(
                Configuration::new(q, v.clone()),
                StepTag::Fork {
                    src: r.src,
                    dst1: r.dst1,
                    dst2: r.dst2,
                },
                vec![l, rr],
            )
        }
        Derivation::Split { rule, left, right } => {
            let r = &sys.split[*rule];
            // the right child takes its minimal vector, the left the rest
            let m2 = ac.log[*right].vector.clone();
            let v1 = v.checked_sub(&m2).expect("dominates the sum of minima");
            let l = replay_fact(view, ac, *left, &v1);
            let rr = replay_fact(view, ac, *right, &m2);
            DeductionTree::node(
                Configuration::new(q, v.clone()),
                StepTag::Split {
                    src: r.src,
                    dst1: r.dst1,
                    dst2: r.dst2,
                },
                vec![l, rr],
            )
        }
        Derivation::Reset { rule, child } => {
            let r = &sys.zero[*rule];
            debug_assert!(ac.log[*child].vector.is_zero());
            let sub = replay_fact(view, ac, *child, &CVec::zeros(v.dim()));
            DeductionTree::node(
                Configuration::new(q, v.clone()),
                StepTag::Zero {
                    src: r.src,
                    dst: r.dst,
                },
                vec![sub],
            )
        }
    }
}

/// Lossy reachability via the coverability view and the antichain fixpoint.
/// When a witness is requested the fixpoint derivation is replayed and loss
/// steps are inserted as late as possible (at the leaves and before zero
/// tests).
pub fn decide_lossy(inst: &Instance, want_witness: bool) -> Result<Decision, DecideError> {
    if inst.semantics.mode != SemanticsMode::Lossy {
        return Err(DecideError::WrongSemantics("lossy"));
    }
    let red = coverability_view(inst)?;
    let ac = match min_cover_antichains(&red.instance) {
        Ok(ac) => ac,
        Err(DecideError::AntichainGuard(n)) => {
            return Ok(Decision::unknown(
                "antichain",
                format!("antichain guard exceeded at {n} elements"),
            ))
        }
        Err(e) => return Err(e),
    };
    if !ac.covers(inst.root_state, &inst.root_vector) {
        return Ok(Decision::no("antichain"));
    }
    if !want_witness {
        return Ok(Decision {
            answer: crate::decide::Answer::Yes,
            witness: None,
            procedure: "antichain",
            bounds_used: None,
            diagnostics: None,
        });
    }
    let view_witness = replay(&red.instance, &ac, inst.root_state, &inst.root_vector);
    let witness = red.back_translate(inst, &view_witness)?;
    debug_assert!(crate::tree::validate_tree(inst, &witness).is_ok());
    Ok(Decision::yes("antichain", witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_example_bvass;
    use crate::tree::validate_tree;
    use num_traits::Zero as _;

    fn example_at(m: u64) -> Instance {
        let g = gen_example_bvass();
        let v = CVec::from_u64s(&[m, 0, 0]);
        g.instance.with_root_vector(v)
    }

    #[test]
    fn example_threshold_is_four() {
        let g = gen_example_bvass();
        let red = coverability_view(&g.instance).unwrap();
        let ac = min_cover_antichains(&red.instance).unwrap();
        let q0 = g.instance.system.state("q0").unwrap();
        for m in 0..=6u64 {
            let covered = ac.covers(q0, &CVec::from_u64s(&[m, 0, 0]));
            assert_eq!(covered, m >= 4, "m = {m}");
        }
    }

    #[test]
    fn empty_leaf_set_covers_nothing() {
        let g = gen_example_bvass();
        let mut inst = g.instance;
        inst.leaf_states.clear();
        let red = coverability_view(&inst).unwrap();
        let ac = min_cover_antichains(&red.instance).unwrap();
        assert_eq!(ac.total_size(), 0);
        assert!(!ac.covers(inst.root_state, &CVec::from_u64s(&[9, 9, 9])));
    }

    #[test]
    fn lossy_decision_with_witness_validates() {
        let inst = example_at(4);
        let d = decide_lossy(&inst, true).unwrap();
        assert!(d.is_yes());
        let w = d.witness.unwrap();
        assert!(validate_tree(&inst, &w).is_ok());

        let d = decide_lossy(&example_at(3), true).unwrap();
        assert!(d.is_no());
    }

    #[test]
    fn minimal_elements_are_pairwise_incomparable() {
        let g = gen_example_bvass();
        let red = coverability_view(&g.instance).unwrap();
        let ac = min_cover_antichains(&red.instance).unwrap();
        for q in g.instance.system.state_ids() {
            let mins = ac.minimal_at(q);
            for (i, a) in mins.iter().enumerate() {
                for (j, b) in mins.iter().enumerate() {
                    if i != j {
                        assert!(!a.leq(b), "{a} ≤ {b} at {q:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn decrementing_a_minimal_element_uncovers_it() {
        let g = gen_example_bvass();
        let red = coverability_view(&g.instance).unwrap();
        let ac = min_cover_antichains(&red.instance).unwrap();
        for q in g.instance.system.state_ids() {
            for m in ac.minimal_at(q) {
                for i in 0..m.dim() {
                    if m.0[i].is_zero() {
                        continue;
                    }
                    let mut smaller = (*m).clone();
                    smaller.0[i] -= 1u32;
                    assert!(!ac.covers(q, &smaller));
                }
            }
        }
    }
}
