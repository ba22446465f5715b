//! Rule application and step enumeration.
//!
//! `apply_rule` applies one rule instance to a configuration under a given
//! semantics; `enumerate_steps` lists every applicable instantiation,
//! expanding split rules into all decompositions of the parent vector.

use crate::system::{Configuration, Semantics, SemanticsMode, System, ZeroReading};
use crate::tree::StepTag;
use crate::vecs::{CVec, Delta, Nat};
use num_traits::{One, Zero};
use thiserror::Error;

/// Default guard on the number of split decompositions per node.
pub fn split_guard_default() -> Nat {
    Nat::from(1_000_000u64)
}

/// A concrete rule instance: which rule, plus the choices the rule leaves
/// open (split decomposition, semantic step coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleApp {
    Unary(usize),
    Fork(usize),
    /// Split rule with the vector granted to the first child.
    Split(usize, CVec),
    Zero(usize),
    Loss(usize),
    Expansion(usize),
    Increase(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepError {
    #[error("rule not applicable")]
    Inapplicable,
    #[error("rule index out of range")]
    BadRule,
    #[error("split decomposition count {count} exceeds guard {guard}")]
    CombinatorialLimit { count: Nat, guard: Nat },
}

/// Target of the pseudo-unary reading: the minimal increase is applied
/// implicitly, so the rule fires from any vector.  Computes (v ⊔ u₋) + u.
pub fn pseudo_unary_target(v: &CVec, u: &Delta) -> CVec {
    let (_, u_minus) = u.split();
    let raised = v.join(&u_minus).expect("dimension mismatch");
    raised
        .checked_add(u)
        .expect("join with u_minus makes the rule applicable")
}

/// Applies one rule instance, returning the child configurations or
/// [`StepError::Inapplicable`] when the precondition fails.
pub fn apply_rule(
    sys: &System,
    cfg: &Configuration,
    app: &RuleApp,
    sem: Semantics,
) -> Result<Vec<Configuration>, StepError> {
    let v = &cfg.vector;
    match app {
        RuleApp::Unary(i) => {
            let rule = sys.unary.get(*i).ok_or(StepError::BadRule)?;
            if rule.src != cfg.state {
                return Err(StepError::Inapplicable);
            }
            let target = if sem.mode == SemanticsMode::Increasing {
                pseudo_unary_target(v, &rule.delta)
            } else {
                v.checked_add(&rule.delta).ok_or(StepError::Inapplicable)?
            };
            Ok(vec![Configuration::new(rule.dst, target)])
        }
        RuleApp::Fork(i) => {
            let rule = sys.fork.get(*i).ok_or(StepError::BadRule)?;
            if rule.src != cfg.state {
                return Err(StepError::Inapplicable);
            }
            Ok(vec![
                Configuration::new(rule.dst1, v.clone()),
                Configuration::new(rule.dst2, v.clone()),
            ])
        }
        RuleApp::Split(i, first) => {
            let rule = sys.split.get(*i).ok_or(StepError::BadRule)?;
            if rule.src != cfg.state {
                return Err(StepError::Inapplicable);
            }
            let second = v.checked_sub(first).ok_or(StepError::Inapplicable)?;
            Ok(vec![
                Configuration::new(rule.dst1, first.clone()),
                Configuration::new(rule.dst2, second),
            ])
        }
        RuleApp::Zero(i) => {
            let rule = sys.zero.get(*i).ok_or(StepError::BadRule)?;
            if rule.src != cfg.state {
                return Err(StepError::Inapplicable);
            }
            match sem.zero_reading {
                ZeroReading::Test | ZeroReading::Jump => {
                    if !v.is_zero() {
                        return Err(StepError::Inapplicable);
                    }
                }
                ZeroReading::Reset => {}
            }
            Ok(vec![Configuration::new(rule.dst, CVec::zeros(sys.dim))])
        }
        RuleApp::Loss(coord) => {
            if sem.mode != SemanticsMode::Lossy || *coord >= sys.dim {
                return Err(StepError::Inapplicable);
            }
            let child = v
                .checked_add(&Delta::unit(sys.dim, *coord, -1))
                .ok_or(StepError::Inapplicable)?;
            Ok(vec![Configuration::new(cfg.state, child)])
        }
        RuleApp::Expansion(coord) => {
            if sem.mode != SemanticsMode::Expansive
                || *coord >= sys.dim
                || v.0[*coord].is_zero()
            {
                return Err(StepError::Inapplicable);
            }
            let child = v.checked_add(&Delta::unit(sys.dim, *coord, 1)).unwrap();
            Ok(vec![Configuration::new(cfg.state, child)])
        }
        RuleApp::Increase(coord) => {
            if sem.mode != SemanticsMode::Increasing || *coord >= sys.dim {
                return Err(StepError::Inapplicable);
            }
            let child = v.checked_add(&Delta::unit(sys.dim, *coord, 1)).unwrap();
            Ok(vec![Configuration::new(cfg.state, child)])
        }
    }
}

/// The [`StepTag`] a rule application carries in a deduction tree.
pub fn step_tag(sys: &System, app: &RuleApp) -> StepTag {
    match app {
        RuleApp::Unary(i) => {
            let r = &sys.unary[*i];
            StepTag::Unary {
                src: r.src,
                delta: r.delta.clone(),
                dst: r.dst,
            }
        }
        RuleApp::Fork(i) => {
            let r = &sys.fork[*i];
            StepTag::Fork {
                src: r.src,
                dst1: r.dst1,
                dst2: r.dst2,
            }
        }
        RuleApp::Split(i, _) => {
            let r = &sys.split[*i];
            StepTag::Split {
                src: r.src,
                dst1: r.dst1,
                dst2: r.dst2,
            }
        }
        RuleApp::Zero(i) => {
            let r = &sys.zero[*i];
            StepTag::Zero {
                src: r.src,
                dst: r.dst,
            }
        }
        RuleApp::Loss(c) => StepTag::Loss { coord: *c },
        RuleApp::Expansion(c) => StepTag::Expansion { coord: *c },
        RuleApp::Increase(c) => StepTag::Increase { coord: *c },
    }
}

/// Options controlling step enumeration.
#[derive(Clone, Debug)]
pub struct StepOptions {
    /// Cap on increase-step targets (increase steps are the only unbounded
    /// family); `None` disables increase steps entirely.
    pub value_cap: Option<Nat>,
    /// Guard on split decomposition counts.
    pub split_guard: Nat,
    /// Include loss/expansion/increase steps of the active mode.
    pub semantic_steps: bool,
}

impl Default for StepOptions {
    fn default() -> Self {
        StepOptions {
            value_cap: None,
            split_guard: split_guard_default(),
            semantic_steps: true,
        }
    }
}

/// Lists every applicable rule instantiation at `cfg`, with split rules
/// expanded into all Π_i (v(i)+1) decompositions.
pub fn enumerate_steps(
    sys: &System,
    cfg: &Configuration,
    sem: Semantics,
    opts: &StepOptions,
) -> Result<Vec<(RuleApp, Vec<Configuration>)>, StepError> {
    let mut out = Vec::new();
    let v = &cfg.vector;

    for (i, rule) in sys.unary.iter().enumerate() {
        if rule.src != cfg.state {
            continue;
        }
        if let Ok(children) = apply_rule(sys, cfg, &RuleApp::Unary(i), sem) {
            out.push((RuleApp::Unary(i), children));
        }
    }
    for (i, rule) in sys.fork.iter().enumerate() {
        if rule.src != cfg.state {
            continue;
        }
        out.push((
            RuleApp::Fork(i),
            apply_rule(sys, cfg, &RuleApp::Fork(i), sem)?,
        ));
    }
    for (i, rule) in sys.split.iter().enumerate() {
        if rule.src != cfg.state {
            continue;
        }
        let count = v
            .0
            .iter()
            .fold(Nat::one(), |acc, n| acc * (n + Nat::one()));
        if count > opts.split_guard {
            return Err(StepError::CombinatorialLimit {
                count,
                guard: opts.split_guard.clone(),
            });
        }
        for first in decompositions(v) {
            let app = RuleApp::Split(i, first);
            let children = apply_rule(sys, cfg, &app, sem)?;
            out.push((app, children));
        }
    }
    for (i, rule) in sys.zero.iter().enumerate() {
        if rule.src != cfg.state {
            continue;
        }
        if let Ok(children) = apply_rule(sys, cfg, &RuleApp::Zero(i), sem) {
            out.push((RuleApp::Zero(i), children));
        }
    }

    if opts.semantic_steps {
        match sem.mode {
            SemanticsMode::Lossy => {
                for coord in 0..sys.dim {
                    if !v.0[coord].is_zero() {
                        let app = RuleApp::Loss(coord);
                        let children = apply_rule(sys, cfg, &app, sem)?;
                        out.push((app, children));
                    }
                }
            }
            SemanticsMode::Expansive => {
                let capped = |coord: usize| match &opts.value_cap {
                    Some(cap) => v.0[coord] < *cap,
                    None => true,
                };
                for coord in 0..sys.dim {
                    if !v.0[coord].is_zero() && capped(coord) {
                        let app = RuleApp::Expansion(coord);
                        let children = apply_rule(sys, cfg, &app, sem)?;
                        out.push((app, children));
                    }
                }
            }
            SemanticsMode::Increasing if !sem.pseudo => {
                if let Some(cap) = &opts.value_cap {
                    for coord in 0..sys.dim {
                        if v.0[coord] < *cap {
                            let app = RuleApp::Increase(coord);
                            let children = apply_rule(sys, cfg, &app, sem)?;
                            out.push((app, children));
                        }
                    }
                }
            }
            SemanticsMode::Increasing => {}
            SemanticsMode::Strict => {}
        }
    }
    Ok(out)
}

/// All vectors `w ≤ v`, in lexicographic order; each is a first-child share
/// of a split decomposition of `v`.
pub fn decompositions(v: &CVec) -> Vec<CVec> {
    let mut out = vec![CVec(Vec::new())];
    for bound in &v.0 {
        let mut next = Vec::new();
        for prefix in &out {
            let mut n = Nat::zero();
            loop {
                let mut w = prefix.clone();
                w.0.push(n.clone());
                next.push(w);
                if n == *bound {
                    break;
                }
                n += Nat::one();
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_example_bvass;
    use crate::system::{Semantics, System};

    #[test]
    fn unary_application_from_the_worked_example() {
        // q1 --(0,-1,2)--> q1 on (q1,(3,2,0)) yields (q1,(3,1,2)).
        let g = gen_example_bvass();
        let sys = &g.instance.system;
        let q1 = sys.state("q1").unwrap();
        let cfg = Configuration::new(q1, CVec::from_u64s(&[3, 2, 0]));
        let i = sys
            .unary
            .iter()
            .position(|r| r.src == q1 && r.dst == q1)
            .unwrap();
        let children = apply_rule(sys, &cfg, &RuleApp::Unary(i), Semantics::strict()).unwrap();
        assert_eq!(children.len(), 1);
        assert_eq!(children[0].vector, CVec::from_u64s(&[3, 1, 2]));
    }

    #[test]
    fn split_application_with_a_chosen_decomposition() {
        let g = gen_example_bvass();
        let sys = &g.instance.system;
        let q2 = sys.state("q2").unwrap();
        let q3 = sys.state("q3").unwrap();
        let cfg = Configuration::new(q2, CVec::from_u64s(&[5, 2, 0]));
        let app = RuleApp::Split(0, CVec::from_u64s(&[3, 1, 0]));
        let children = apply_rule(sys, &cfg, &app, Semantics::strict()).unwrap();
        assert_eq!(children[0], Configuration::new(q3, CVec::from_u64s(&[3, 1, 0])));
        assert_eq!(children[1], Configuration::new(q3, CVec::from_u64s(&[2, 1, 0])));
    }

    #[test]
    fn pseudo_unary_absorbs_the_minimal_increase() {
        // u = (-2,1) on (1,3): (1,3) ⊔ (2,0) = (2,3), then +(-2,1) = (0,4).
        let mut sys = System::new(2);
        let q = sys.add_state("q");
        let qp = sys.add_state("qp");
        sys.add_unary(q, Delta::from_i64s(&[-2, 1]), qp);
        let cfg = Configuration::new(q, CVec::from_u64s(&[1, 3]));
        let children =
            apply_rule(&sys, &cfg, &RuleApp::Unary(0), Semantics::increasing()).unwrap();
        assert_eq!(children[0].vector, CVec::from_u64s(&[0, 4]));
    }

    #[test]
    fn split_decomposition_count_in_the_example() {
        // (q2,(0,2,0)): 1·3·1 decompositions.
        let g = gen_example_bvass();
        let sys = &g.instance.system;
        let q2 = sys.state("q2").unwrap();
        let cfg = Configuration::new(q2, CVec::from_u64s(&[0, 2, 0]));
        let steps =
            enumerate_steps(sys, &cfg, Semantics::strict(), &StepOptions::default()).unwrap();
        let splits = steps
            .iter()
            .filter(|(app, _)| matches!(app, RuleApp::Split(..)))
            .count();
        assert_eq!(splits, 3);
    }

    #[test]
    fn leaf_only_state_has_no_steps() {
        let g = gen_example_bvass();
        let sys = &g.instance.system;
        let q4 = sys.state("q4").unwrap();
        let cfg = Configuration::new(q4, CVec::from_u64s(&[0, 0, 0]));
        let steps =
            enumerate_steps(sys, &cfg, Semantics::strict(), &StepOptions::default()).unwrap();
        assert!(steps.is_empty());
    }

    #[test]
    fn zero_test_fires_exactly_at_zero() {
        let mut sys = System::new(1);
        let q = sys.add_state("q");
        let q1 = sys.add_state("q1");
        sys.add_zero(q, q1);
        let at_zero = Configuration::new(q, CVec::from_u64s(&[0]));
        let steps =
            enumerate_steps(&sys, &at_zero, Semantics::strict(), &StepOptions::default()).unwrap();
        assert_eq!(steps.len(), 1);
        let nonzero = Configuration::new(q, CVec::from_u64s(&[1]));
        let steps =
            enumerate_steps(&sys, &nonzero, Semantics::strict(), &StepOptions::default()).unwrap();
        assert!(steps.is_empty());
    }

    #[test]
    fn split_guard_trips() {
        let mut sys = System::new(1);
        let q = sys.add_state("q");
        sys.add_split(q, q, q);
        let cfg = Configuration::new(q, CVec::from_u64s(&[10]));
        let opts = StepOptions {
            split_guard: Nat::from(5u32),
            ..Default::default()
        };
        let err = enumerate_steps(&sys, &cfg, Semantics::strict(), &opts).unwrap_err();
        assert!(matches!(err, StepError::CombinatorialLimit { .. }));
    }
}
