//! Memoized bounded-height search.
//!
//! Decides whether a witness of rule-height ≤ `height_cap` exists with all
//! vector entries ≤ `value_cap`.  Loss, expansion, and increase steps do not
//! consume height.  Memoization stores, per configuration, the smallest
//! height known to succeed and the largest known to fail, exploiting the
//! monotonicity of the capped predicate in the height budget.

use crate::bounds::bound_h_with_limit;
use crate::decide::{Answer, Decision, DecideError};
use crate::steps::{enumerate_steps, step_tag, RuleApp, StepOptions};
use crate::system::{Configuration, Instance, LeafCondition, SemanticsMode};
use crate::tree::DeductionTree;
use crate::vecs::Nat;
use num_traits::One;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct SearchCaps {
    pub height: usize,
    pub value: Nat,
}

/// The caps from the height-bound lemma, when they are representable:
/// height H(d,|Q|,max⁻(T_u)) and values (max⁺(T_u)+1)·H(d,|Q|,max⁻(T_u)).
pub fn default_caps(inst: &Instance) -> Option<SearchCaps> {
    let sys = &inst.system;
    let d = sys.dim as u64;
    let s = sys.num_states().max(1) as u64;
    let m = u64::try_from(&sys.max_neg()).ok()?;
    // only usable when the height fits a machine word
    let h = bound_h_with_limit(d, s, m, 64).ok()?;
    let height = usize::try_from(&h).ok()?;
    let value = (sys.max_pos() + Nat::one()) * h;
    Some(SearchCaps {
        height,
        value,
    })
}

struct Memo {
    success: HashMap<Configuration, (usize, Via)>,
    failure: HashMap<Configuration, usize>,
}

#[derive(Clone)]
enum Via {
    Leaf,
    Step(RuleApp),
}

/// Bounded-height decision: yes exactly when a witness of rule-height ≤
/// `height_cap` exists with values ≤ `value_cap`; `no` when additionally the
/// caps dominate the theoretical bound (making the bounded search complete),
/// `unknown` otherwise.
pub fn decide_bounded_height(
    inst: &Instance,
    height_cap: usize,
    value_cap: Nat,
) -> Result<Decision, DecideError> {
    let found = bounded_witness(inst, height_cap, &value_cap)?;
    let sound_no = default_caps(inst)
        .map(|c| height_cap >= c.height && value_cap >= c.value && inst.system.zero.is_empty())
        .unwrap_or(false);
    Ok(match found {
        Some(tree) => Decision::yes("bounded", tree).with_bounds(height_cap, value_cap),
        None if sound_no => Decision::no("bounded").with_bounds(height_cap, value_cap),
        None => Decision {
            answer: Answer::Unknown,
            witness: None,
            procedure: "bounded",
            bounds_used: Some((height_cap, value_cap)),
            diagnostics: Some("no witness within the caps".into()),
        },
    })
}

/// Same engine with the zero rules read as tests and the all-zero leaf
/// condition: a semi-decision procedure for strict reachability.
pub fn decide_strict_bounded(
    inst: &Instance,
    height_cap: usize,
    value_cap: Nat,
) -> Result<Decision, DecideError> {
    if inst.semantics.mode != SemanticsMode::Strict {
        return Err(DecideError::WrongSemantics("strict"));
    }
    if inst.leaf_condition != LeafCondition::ZeroVector {
        return Err(DecideError::NotCoverabilityForm(
            "strict reachability uses the all-zero leaf condition",
        ));
    }
    let mut d = decide_bounded_height(inst, height_cap, value_cap)?;
    d.procedure = "strict-bounded";
    Ok(d)
}

/// The raw search: `Some(witness)` when one exists within the caps.
pub(crate) fn bounded_witness(
    inst: &Instance,
    height_cap: usize,
    value_cap: &Nat,
) -> Result<Option<DeductionTree>, DecideError> {
    if inst.root_vector.max_entry() > *value_cap {
        return Ok(None);
    }
    let mut memo = Memo {
        success: HashMap::new(),
        failure: HashMap::new(),
    };
    let opts = StepOptions {
        value_cap: Some(value_cap.clone()),
        ..Default::default()
    };
    let root = Configuration::new(inst.root_state, inst.root_vector.clone());
    if search(inst, &opts, value_cap, &mut memo, &root, height_cap)? {
        Ok(Some(rebuild(inst, &memo, &root)))
    } else {
        Ok(None)
    }
}

fn search(
    inst: &Instance,
    opts: &StepOptions,
    cap: &Nat,
    memo: &mut Memo,
    cfg: &Configuration,
    budget: usize,
) -> Result<bool, DecideError> {
    if inst.leaf_ok(cfg) {
        memo.success
            .entry(cfg.clone())
            .or_insert((0, Via::Leaf));
        return Ok(true);
    }
    if let Some((h, _)) = memo.success.get(cfg) {
        if *h <= budget {
            return Ok(true);
        }
    }
    if let Some(h) = memo.failure.get(cfg) {
        if budget <= *h {
            return Ok(false);
        }
    }
    let steps = enumerate_steps(&inst.system, cfg, inst.semantics, opts)?;
    'step: for (app, children) in steps {
        let cost = match app {
            RuleApp::Loss(_) | RuleApp::Expansion(_) | RuleApp::Increase(_) => 0,
            _ => 1,
        };
        if budget < cost {
            continue;
        }
        if children.iter().any(|c| c.vector.max_entry() > *cap) {
            continue;
        }
        for child in &children {
            if !search(inst, opts, cap, memo, child, budget - cost)? {
                continue 'step;
            }
        }
        let entry = memo
            .success
            .entry(cfg.clone())
            .or_insert((budget, Via::Step(app.clone())));
        if entry.0 > budget {
            *entry = (budget, Via::Step(app));
        }
        return Ok(true);
    }
    let f = memo.failure.entry(cfg.clone()).or_insert(budget);
    *f = (*f).max(budget);
    Ok(false)
}

fn rebuild(inst: &Instance, memo: &Memo, cfg: &Configuration) -> DeductionTree {
    let (_, via) = memo
        .success
        .get(cfg)
        .expect("successful configurations are memoized");
    match via {
        Via::Leaf => DeductionTree::leaf(cfg.clone()),
        Via::Step(app) => {
            let children = crate::steps::apply_rule(&inst.system, cfg, app, inst.semantics)
                .expect("memoized step replays");
            let subtrees = children.iter().map(|c| rebuild(inst, memo, c)).collect();
            DeductionTree::node(cfg.clone(), step_tag(&inst.system, app), subtrees)
        }
    }
}
