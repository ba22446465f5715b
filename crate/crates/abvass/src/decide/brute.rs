//! Brute-force enumeration of deduction trees within height and value caps.
//!
//! No memoization and no pruning beyond the caps: this is the independent
//! oracle the other procedures are cross-checked against.  Loss, expansion,
//! and increase steps are enumerated explicitly and do not count toward the
//! height.

use crate::decide::{Decision, DecideError};
use crate::steps::{enumerate_steps, step_tag, RuleApp, StepOptions};
use crate::system::{Configuration, Instance};
use crate::tree::DeductionTree;
use crate::vecs::Nat;

pub fn brute_force(
    inst: &Instance,
    height_cap: usize,
    value_cap: u64,
) -> Result<Decision, DecideError> {
    let cap = Nat::from(value_cap);
    let opts = StepOptions {
        value_cap: Some(cap.clone()),
        ..Default::default()
    };
    let root = Configuration::new(inst.root_state, inst.root_vector.clone());
    if root.vector.max_entry() > cap {
        return Ok(
            Decision::unknown("brute", "root vector exceeds the value cap")
                .with_bounds(height_cap, cap),
        );
    }
    let witness = search(inst, &opts, &cap, &root, height_cap)?;
    Ok(match witness {
        Some(tree) => Decision::yes("brute", tree).with_bounds(height_cap, cap),
        None => Decision::no("brute").with_bounds(height_cap, cap),
    })
}

fn search(
    inst: &Instance,
    opts: &StepOptions,
    cap: &Nat,
    cfg: &Configuration,
    budget: usize,
) -> Result<Option<DeductionTree>, DecideError> {
    if inst.leaf_ok(cfg) {
        return Ok(Some(DeductionTree::leaf(cfg.clone())));
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
        let mut subtrees = Vec::with_capacity(children.len());
        for child in &children {
            match search(inst, opts, cap, child, budget - cost)? {
                Some(t) => subtrees.push(t),
                None => continue 'step,
            }
        }
        return Ok(Some(DeductionTree::node(
            cfg.clone(),
            step_tag(&inst.system, &app),
            subtrees,
        )));
    }
    Ok(None)
}
