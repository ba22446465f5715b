//! Subsumption search for the increasing and expansive semantics.
//!
//! Witnessable configurations are downward closed: under the increasing
//! rules, anything below a witnessable configuration can first be increased
//! up to it; under the expansive rules the same holds for the order ⊑
//! (componentwise ≤ with equal support), since every coordinate that must
//! grow is positive.  Success and failure caches exploit both closures; the
//! failure cache records the capped predicate "no witness with values below
//! the cap", which is upward closed for the same reason.  On-path revisits
//! are pruned (a minimal witness never repeats a configuration along a
//! branch); a failure is cached only when no prune in its subtree referred
//! to a configuration above it, which keeps cached entries path-independent.
//! The final verdict downgrades no to unknown whenever the value cap was hit
//! anywhere.

use crate::decide::{Answer, Decision, DecideError};
use crate::steps::{enumerate_steps, pseudo_unary_target, step_tag, RuleApp, StepOptions};
use crate::system::{Configuration, Instance, SemanticsMode, StateId};
use crate::tree::{DeductionTree, StepTag};
use crate::vecs::{CVec, Nat};
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    /// componentwise ≤ (increasing mode)
    Le,
    /// componentwise ≤ with equal support (expansive mode)
    SupportLe,
}

impl Order {
    fn le(self, a: &CVec, b: &CVec) -> bool {
        match self {
            Order::Le => a.leq(b),
            Order::SupportLe => a.leq(b) && a.support() == b.support(),
        }
    }
}

/// A step descriptor small enough to keep whole lists of them on the DFS
/// stack; split decompositions are decoded from their index on demand.
#[derive(Clone, Debug)]
enum CStep {
    Unary(usize),
    PseudoUnary(usize),
    Fork(usize),
    SplitNth(usize, u64),
    Zero(usize),
    Expansion(usize),
}

/// The `nth` first-child share of a split of `v`, in the mixed-radix order
/// with coordinate 0 as the most significant digit.
fn nth_decomposition(v: &CVec, nth: u64) -> CVec {
    use num_traits::ToPrimitive;
    let radices: Vec<u64> = v.0.iter().map(|n| n.to_u64().expect("capped values") + 1).collect();
    let mut digits = vec![0u64; radices.len()];
    let mut rest = nth;
    for i in (0..radices.len()).rev() {
        digits[i] = rest % radices[i];
        rest /= radices[i];
    }
    CVec(digits.into_iter().map(crate::vecs::Nat::from).collect())
}

#[derive(Clone)]
enum Via {
    Leaf,
    /// A rule step; `pseudo` marks a pseudo-unary application that must be
    /// expanded into explicit expansion steps in an expansive witness.
    Step {
        app: RuleApp,
        pseudo: bool,
        children: Vec<usize>,
    },
}

struct SFact {
    cfg: Configuration,
    via: Via,
}

struct Engine<'a> {
    inst: &'a Instance,
    order: Order,
    value_cap: Nat,
    opts: StepOptions,
    log: Vec<SFact>,
    /// per state: log indices of proven-witnessable configurations
    successes: Vec<Vec<usize>>,
    /// per state: vectors with no witness below the value cap (upward
    /// closed under the order)
    failures: Vec<Vec<CVec>>,
    /// some branch ran into the value cap; an overall failure is then only
    /// an unknown, not an exact no
    cap_hit: bool,
}

/// `min_prune` is the shallowest path depth a revisit prune referred to in
/// the failed subtree; `usize::MAX` when none did.
const NO_PRUNE: usize = usize::MAX;

enum Outcome {
    Yes(usize),
    No { min_prune: usize },
}

impl<'a> Engine<'a> {
    fn new(inst: &'a Instance, order: Order, value_cap: Nat) -> Self {
        Engine {
            inst,
            order,
            value_cap: value_cap.clone(),
            opts: StepOptions {
                value_cap: Some(value_cap),
                ..Default::default()
            },
            log: Vec::new(),
            successes: vec![Vec::new(); inst.system.num_states()],
            failures: vec![Vec::new(); inst.system.num_states()],
            cap_hit: false,
        }
    }

    fn search(
        &mut self,
        cfg: &Configuration,
        path: &mut HashMap<Configuration, usize>,
        depth: usize,
    ) -> Result<Outcome, DecideError> {
        if self.inst.leaf_ok(cfg) {
            self.log.push(SFact {
                cfg: cfg.clone(),
                via: Via::Leaf,
            });
            let idx = self.log.len() - 1;
            self.successes[cfg.state.index()].push(idx);
            return Ok(Outcome::Yes(idx));
        }
        if let Some(&idx) = self.successes[cfg.state.index()]
            .iter()
            .find(|&&i| self.order.le(&cfg.vector, &self.log[i].cfg.vector))
        {
            return Ok(Outcome::Yes(idx));
        }
        if self.failures[cfg.state.index()]
            .iter()
            .any(|f| self.order.le(f, &cfg.vector))
        {
            return Ok(Outcome::No { min_prune: NO_PRUNE });
        }
        if cfg.vector.max_entry() > self.value_cap {
            self.cap_hit = true;
            return Ok(Outcome::No { min_prune: NO_PRUNE });
        }
        if let Some(&d) = path.get(cfg) {
            return Ok(Outcome::No { min_prune: d });
        }
        path.insert(cfg.clone(), depth);

        let mut min_prune = NO_PRUNE;
        let mut result = None;
        let steps = self.compact_steps(cfg)?;
        'step: for compact in steps {
            // children are recomputed per step so that deep recursion does
            // not hold materialized decomposition lists alive
            let (app, children, pseudo) = self.expand_step(cfg, &compact)?;
            let mut child_idxs = Vec::with_capacity(children.len());
            for child in &children {
                match self.search(child, path, depth + 1)? {
                    Outcome::Yes(i) => child_idxs.push(i),
                    Outcome::No { min_prune: p } => {
                        min_prune = min_prune.min(p);
                        continue 'step;
                    }
                }
            }
            self.log.push(SFact {
                cfg: cfg.clone(),
                via: Via::Step {
                    app,
                    pseudo,
                    children: child_idxs,
                },
            });
            let idx = self.log.len() - 1;
            self.successes[cfg.state.index()].push(idx);
            result = Some(Outcome::Yes(idx));
            break;
        }
        path.remove(cfg);
        match result {
            Some(r) => Ok(r),
            None => {
                if min_prune >= depth {
                    // no prune referred to anything above this node, so the
                    // failure is intrinsic and safe to cache
                    self.failures[cfg.state.index()].push(cfg.vector.clone());
                }
                Ok(Outcome::No { min_prune })
            }
        }
    }

    /// Compact step descriptors at `cfg`: the semantics' own steps, plus
    /// pseudo-unary folding in expansive mode (restricted to σ(u₋) ⊆ σ(v)).
    /// Split decompositions are referenced by index and decoded on demand.
    fn compact_steps(&self, cfg: &Configuration) -> Result<Vec<CStep>, DecideError> {
        use num_traits::{One, ToPrimitive, Zero};
        let sys = &self.inst.system;
        let v = &cfg.vector;
        let mut out = Vec::new();
        for (i, rule) in sys.unary.iter().enumerate() {
            if rule.src != cfg.state {
                continue;
            }
            if v.checked_add(&rule.delta).is_some() {
                out.push(CStep::Unary(i));
            }
            if self.inst.semantics.mode == SemanticsMode::Expansive {
                let (_, u_minus) = rule.delta.split();
                let support = v.support();
                if !u_minus.support().iter().all(|c| support.contains(c)) {
                    continue;
                }
                let target = pseudo_unary_target(v, &rule.delta);
                if let Some(strict) = v.checked_add(&rule.delta) {
                    if strict == target {
                        continue;
                    }
                }
                if target.max_entry() > self.value_cap {
                    continue;
                }
                out.push(CStep::PseudoUnary(i));
            }
        }
        for (i, rule) in sys.fork.iter().enumerate() {
            if rule.src == cfg.state {
                out.push(CStep::Fork(i));
            }
        }
        for (i, rule) in sys.split.iter().enumerate() {
            if rule.src != cfg.state {
                continue;
            }
            let count = v
                .0
                .iter()
                .fold(crate::vecs::Nat::one(), |acc, n| acc * (n + crate::vecs::Nat::one()));
            if count > self.opts.split_guard {
                return Err(DecideError::Step(crate::steps::StepError::CombinatorialLimit {
                    count,
                    guard: self.opts.split_guard.clone(),
                }));
            }
            let count = count.to_u64().expect("guarded decomposition count");
            for nth in 0..count {
                out.push(CStep::SplitNth(i, nth));
            }
        }
        for (i, rule) in sys.zero.iter().enumerate() {
            if rule.src == cfg.state && v.is_zero() {
                out.push(CStep::Zero(i));
            }
        }
        if self.inst.semantics.mode == SemanticsMode::Expansive {
            for coord in 0..sys.dim {
                if !v.0[coord].is_zero() && v.0[coord] < self.value_cap {
                    out.push(CStep::Expansion(coord));
                }
            }
        }
        Ok(out)
    }

    fn expand_step(
        &self,
        cfg: &Configuration,
        compact: &CStep,
    ) -> Result<(RuleApp, Vec<Configuration>, bool), DecideError> {
        let sys = &self.inst.system;
        let app = match compact {
            CStep::Unary(i) | CStep::PseudoUnary(i) => RuleApp::Unary(*i),
            CStep::Fork(i) => RuleApp::Fork(*i),
            CStep::SplitNth(i, nth) => {
                RuleApp::Split(*i, nth_decomposition(&cfg.vector, *nth))
            }
            CStep::Zero(i) => RuleApp::Zero(*i),
            CStep::Expansion(c) => RuleApp::Expansion(*c),
        };
        let (children, pseudo) = match compact {
            CStep::PseudoUnary(i) => {
                let rule = &sys.unary[*i];
                let target = pseudo_unary_target(&cfg.vector, &rule.delta);
                (vec![Configuration::new(rule.dst, target)], true)
            }
            _ => (
                crate::steps::apply_rule(sys, cfg, &app, self.inst.semantics)
                    .expect("compact steps are applicable"),
                false,
            ),
        };
        Ok((app, children, pseudo))
    }

    /// Rebuilds a witness for a query vector `v ≤ log[idx].cfg.vector`
    /// (same state).  In expansive mode the gap is bridged by explicit
    /// expansion steps; in increasing mode the logged derivation is replayed
    /// structurally at the smaller vector, which pseudo-unary steps, meets
    /// of split decompositions, and fork copies absorb without any explicit
    /// increase step.
    fn rebuild(&self, idx: usize, v: &CVec) -> DeductionTree {
        let fact = &self.log[idx];
        let state = fact.cfg.state;
        debug_assert!(self.order.le(v, &fact.cfg.vector));
        match self.order {
            Order::Le => self.rebuild_projected(idx, v),
            Order::SupportLe => match &fact.via {
                Via::Leaf => self.bridge(state, v, &fact.cfg.vector, |target| {
                    DeductionTree::leaf(Configuration::new(state, target.clone()))
                }),
                Via::Step {
                    app,
                    pseudo,
                    children,
                } => self.bridge(state, v, &fact.cfg.vector, |target| {
                    self.replay_step(state, target, app, *pseudo, children)
                }),
            },
        }
    }

    /// Increasing-mode replay of a logged derivation at `v` below the logged
    /// vector.
    fn rebuild_projected(&self, idx: usize, v: &CVec) -> DeductionTree {
        let fact = &self.log[idx];
        let state = fact.cfg.state;
        let sys = &self.inst.system;
        let cfg = Configuration::new(state, v.clone());
        match &fact.via {
            // under the zero leaf condition the logged leaf vector is zero,
            // forcing v = 0 as well; under any-vector leaves v is free
            Via::Leaf => DeductionTree::leaf(cfg),
            Via::Step { app, children, .. } => match app {
                RuleApp::Unary(i) => {
                    let rule = &sys.unary[*i];
                    let target = pseudo_unary_target(v, &rule.delta);
                    let sub = self.rebuild(children[0], &target);
                    DeductionTree::node(
                        cfg,
                        StepTag::Unary {
                            src: rule.src,
                            delta: rule.delta.clone(),
                            dst: rule.dst,
                        },
                        vec![sub],
                    )
                }
                RuleApp::Fork(i) => {
                    let rule = &sys.fork[*i];
                    let l = self.rebuild(children[0], v);
                    let r = self.rebuild(children[1], v);
                    DeductionTree::node(
                        cfg,
                        StepTag::Fork {
                            src: rule.src,
                            dst1: rule.dst1,
                            dst2: rule.dst2,
                        },
                        vec![l, r],
                    )
                }
                RuleApp::Split(i, logged_first) => {
                    let rule = &sys.split[*i];
                    let v1 = v.meet(logged_first).expect("equal dimensions");
                    let v2 = v.checked_sub(&v1).expect("meet is below v");
                    let l = self.rebuild(children[0], &v1);
                    let r = self.rebuild(children[1], &v2);
                    DeductionTree::node(
                        cfg,
                        StepTag::Split {
                            src: rule.src,
                            dst1: rule.dst1,
                            dst2: rule.dst2,
                        },
                        vec![l, r],
                    )
                }
                RuleApp::Zero(i) => {
                    let rule = &sys.zero[*i];
                    debug_assert!(v.is_zero());
                    let sub = self.rebuild(children[0], &CVec::zeros(v.dim()));
                    DeductionTree::node(
                        cfg,
                        StepTag::Zero {
                            src: rule.src,
                            dst: rule.dst,
                        },
                        vec![sub],
                    )
                }
                other => unreachable!("step {other:?} cannot appear in increasing search"),
            },
        }
    }

    /// Chain of increase (or expansion) steps from (state, from) down to the
    /// witnessed vector, then the continuation.
    fn bridge(
        &self,
        state: StateId,
        from: &CVec,
        to: &CVec,
        k: impl FnOnce(&CVec) -> DeductionTree,
    ) -> DeductionTree {
        // build bottom-up: continuation at `to`, steps raising from `from`
        let dim = from.dim();
        let mut stack = Vec::new();
        let mut cur = from.clone();
        for i in 0..dim {
            while cur.0[i] < to.0[i] {
                stack.push((cur.clone(), i));
                cur.0[i] += 1u32;
            }
        }
        debug_assert_eq!(cur, *to);
        let mut tree = k(to);
        for (vec, coord) in stack.into_iter().rev() {
            let tag = match self.inst.semantics.mode {
                SemanticsMode::Increasing => StepTag::Increase { coord },
                SemanticsMode::Expansive => StepTag::Expansion { coord },
                _ => unreachable!("subsumption search runs in increasing or expansive mode"),
            };
            tree = DeductionTree::node(Configuration::new(state, vec), tag, vec![tree]);
        }
        tree
    }

    fn replay_step(
        &self,
        state: StateId,
        v: &CVec,
        app: &RuleApp,
        pseudo: bool,
        children: &[usize],
    ) -> DeductionTree {
        let sys = &self.inst.system;
        let cfg = Configuration::new(state, v.clone());
        if pseudo {
            // expansive pseudo-unary: expansions up to the join, then the rule
            let RuleApp::Unary(i) = app else {
                unreachable!("pseudo steps are unary")
            };
            let rule = &sys.unary[*i];
            let (_, u_minus) = rule.delta.split();
            let join = v.join(&u_minus).expect("equal dimensions");
            let fired = join.checked_add(&rule.delta).expect("join enables the rule");
            let sub = self.rebuild(children[0], &fired);
            return self.bridge(state, v, &join, |target| {
                DeductionTree::node(
                    Configuration::new(state, target.clone()),
                    StepTag::Unary {
                        src: rule.src,
                        delta: rule.delta.clone(),
                        dst: rule.dst,
                    },
                    vec![sub],
                )
            });
        }
        let concrete = crate::steps::apply_rule(sys, &cfg, app, self.inst.semantics)
            .expect("logged step replays at a dominating vector");
        let subtrees: Vec<DeductionTree> = concrete
            .iter()
            .zip(children.iter())
            .map(|(child_cfg, &ci)| self.rebuild(ci, &child_cfg.vector))
            .collect();
        DeductionTree::node(cfg, step_tag(sys, app), subtrees)
    }
}

fn decide_subsume(
    inst: &Instance,
    order: Order,
    value_cap: u64,
    procedure: &'static str,
) -> Result<Decision, DecideError> {
    let cap = Nat::from(value_cap);
    let root = Configuration::new(inst.root_state, inst.root_vector.clone());
    // the DFS has no height budget; give it a dedicated deep stack
    let outcome = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(256 << 20)
            .spawn_scoped(scope, || -> Result<_, DecideError> {
                let mut engine = Engine::new(inst, order, cap.clone());
                let mut path = HashMap::new();
                let witness = match engine.search(&root, &mut path, 0)? {
                    Outcome::Yes(idx) => {
                        let witness = engine.rebuild(idx, &root.vector);
                        debug_assert!(crate::tree::validate_tree(inst, &witness).is_ok());
                        Some(witness)
                    }
                    Outcome::No { .. } => None,
                };
                Ok((witness, engine.cap_hit))
            })
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })?;
    Ok(match outcome {
        (Some(witness), _) => Decision::yes(procedure, witness).with_bounds(0, cap),
        (None, false) => Decision::no(procedure).with_bounds(0, cap),
        (None, true) => Decision {
            answer: Answer::Unknown,
            witness: None,
            procedure,
            bounds_used: Some((0, cap)),
            diagnostics: Some("search exhausted only up to the value cap".into()),
        },
    })
}

/// Increasing reachability via pseudo-unary folding and ≤-subsumption.
pub fn decide_increasing(inst: &Instance, value_cap: u64) -> Result<Decision, DecideError> {
    if inst.semantics.mode != SemanticsMode::Increasing {
        return Err(DecideError::WrongSemantics("increasing"));
    }
    let mut folded = inst.clone();
    folded.semantics.pseudo = true; // increases are absorbed by pseudo-unary steps
    let d = decide_subsume(&folded, Order::Le, value_cap, "increasing")?;
    if let Some(w) = &d.witness {
        // projection-based witnesses are valid for both readings
        debug_assert!(crate::tree::validate_tree(inst, w).is_ok());
    }
    Ok(d)
}

/// Expansive reachability: explicit expansion steps plus pseudo-unary
/// folding, with ⊑-subsumption.
pub fn decide_expansive(inst: &Instance, value_cap: u64) -> Result<Decision, DecideError> {
    if inst.semantics.mode != SemanticsMode::Expansive {
        return Err(DecideError::WrongSemantics("expansive"));
    }
    decide_subsume(inst, Order::SupportLe, value_cap, "expansive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Instance, Semantics, System};
    use crate::vecs::Delta;

    fn single_dec_rule() -> System {
        let mut sys = System::new(1);
        let q = sys.add_state("q");
        let qp = sys.add_state("qp");
        sys.add_unary(q, Delta::from_i64s(&[-1]), qp);
        sys
    }

    #[test]
    fn increasing_yes_where_expansive_fails_at_zero() {
        let sys = single_dec_rule();
        let q = sys.state("q").unwrap();
        let qp = sys.state("qp").unwrap();

        let inc = Instance::reachability(sys.clone(), Semantics::increasing(), q, vec![qp]);
        let d = decide_increasing(&inc, 8).unwrap();
        assert!(d.is_yes());

        let exp = Instance::reachability(sys, Semantics::expansive(), q, vec![qp]);
        let d = decide_expansive(&exp, 8).unwrap();
        assert!(d.is_no(), "expansion needs a positive coordinate: {d:?}");
    }

    #[test]
    fn expansive_yes_from_positive_root() {
        let sys = single_dec_rule();
        let q = sys.state("q").unwrap();
        let qp = sys.state("qp").unwrap();
        let inst = Instance::reachability(sys, Semantics::expansive(), q, vec![qp])
            .with_root_vector(CVec::from_u64s(&[1]));
        let d = decide_expansive(&inst, 8).unwrap();
        assert!(d.is_yes());
        let w = d.witness.unwrap();
        assert!(crate::tree::validate_tree(&inst, &w).is_ok());
    }

    #[test]
    fn expansion_before_split_is_found() {
        // split a single token to two children that each need one unit:
        // requires an expansion before the split
        let mut sys = System::new(1);
        let q = sys.add_state("q");
        let q1 = sys.add_state("q1");
        let l = sys.add_state("l");
        sys.add_split(q, q1, q1);
        sys.add_unary(q1, Delta::from_i64s(&[-1]), l);
        let inst = Instance::reachability(sys, Semantics::expansive(), q, vec![l])
            .with_root_vector(CVec::from_u64s(&[1]));
        let d = decide_expansive(&inst, 8).unwrap();
        assert!(d.is_yes());
        let w = d.witness.unwrap();
        assert!(crate::tree::validate_tree(&inst, &w).is_ok());
    }
}
