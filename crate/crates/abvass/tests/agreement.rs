//! Cross-procedure agreement: the antichain decision, the bounded-height
//! search, the subsumption searches, and the brute-force oracle must answer
//! alike.  Yes answers carry witnesses, whose measured height and values
//! calibrate the caps handed to the capped procedures, so the comparisons
//! are exact rather than cap-sensitive.

mod common;

use abvass::decide::{
    brute_force, decide_bounded_height, decide_expansive, decide_increasing, decide_lossy, Answer,
};
use abvass::reduce::coverability_view;
use abvass::system::{LeafCondition, Semantics};
use abvass::tree::validate_tree;
use abvass::vecs::Nat;
use common::{random_instance, witness_caps, CorpusOptions};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn lossy_antichain_bounded_and_brute_agree() {
    common::with_deep_stack(|| lossy_antichain_bounded_and_brute_agree_body());
}

fn lossy_antichain_bounded_and_brute_agree_body() {
    let mut rng = StdRng::seed_from_u64(0xa9_0001);
    let opts = CorpusOptions::default();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..120 {
        let mut inst = random_instance(&mut rng, Semantics::lossy(), &opts);
        inst.leaf_condition = LeafCondition::ZeroVector;
        let exact = decide_lossy(&inst, true).unwrap();
        let view = coverability_view(&inst).unwrap().instance;
        match exact.answer {
            Answer::Yes => {
                yes += 1;
                let w = exact.witness.unwrap();
                validate_tree(&inst, &w).unwrap();
                let (h, v) = witness_caps(&w);
                // the same witness, stripped of losses, lives in the view
                let bounded = decide_bounded_height(&view, h, Nat::from(v)).unwrap();
                assert!(bounded.is_yes(), "bounded missed a witness at caps {h}/{v}");
                let brute = brute_force(&view, h, v).unwrap();
                assert!(brute.is_yes(), "brute missed a witness at caps {h}/{v}");
            }
            Answer::No => {
                no += 1;
                // no witness exists at any caps
                let bounded = decide_bounded_height(&view, 8, Nat::from(8u64)).unwrap();
                assert!(!bounded.is_yes());
                let brute = brute_force(&view, 8, 8).unwrap();
                assert!(!brute.is_yes());
            }
            Answer::Unknown => panic!("the antichain procedure is exact"),
        }
    }
    assert!(yes >= 15, "only {yes} positive cases");
    assert!(no >= 15, "only {no} negative cases");
}

#[test]
fn increasing_subsumption_agrees_with_brute_force() {
    common::with_deep_stack(|| increasing_subsumption_agrees_with_brute_force_body());
}

fn increasing_subsumption_agrees_with_brute_force_body() {
    let mut rng = StdRng::seed_from_u64(0xa9_0002);
    let opts = CorpusOptions {
        split_rules: 0,
        ..Default::default()
    };
    let (mut yes, mut no) = (0, 0);
    for _ in 0..120 {
        let inst = random_instance(&mut rng, Semantics::increasing(), &opts);
        // the subsumption search gets a roomier value cap than the oracle,
        // so a brute witness can never escape it
        let d = decide_increasing(&inst, 16).unwrap();
        let oracle = brute_force(&inst, 8, 6).unwrap();
        match d.answer {
            Answer::Yes => {
                yes += 1;
                let w = d.witness.unwrap();
                validate_tree(&inst, &w).unwrap();
                let (h, v) = witness_caps(&w);
                let check = brute_force(&inst, h, v.max(6)).unwrap();
                assert!(check.is_yes(), "oracle missed the found witness");
            }
            Answer::No => {
                no += 1;
                assert!(!oracle.is_yes(), "exact no contradicted by the oracle");
            }
            Answer::Unknown => {
                assert!(!oracle.is_yes(), "capped unknown but the oracle found a witness");
            }
        }
    }
    assert!(yes >= 15, "only {yes} positive cases");
    assert!(no >= 10, "only {no} negative cases");
}

#[test]
fn expansive_subsumption_agrees_with_brute_force() {
    common::with_deep_stack(|| expansive_subsumption_agrees_with_brute_force_body());
}

fn expansive_subsumption_agrees_with_brute_force_body() {
    let mut rng = StdRng::seed_from_u64(0xa9_0003);
    let opts = CorpusOptions {
        split_rules: 0,
        ..Default::default()
    };
    let (mut yes, mut no) = (0, 0);
    for _ in 0..120 {
        let inst = random_instance(&mut rng, Semantics::expansive(), &opts);
        let d = decide_expansive(&inst, 16).unwrap();
        let oracle = brute_force(&inst, 8, 6).unwrap();
        match d.answer {
            Answer::Yes => {
                yes += 1;
                let w = d.witness.unwrap();
                validate_tree(&inst, &w).unwrap();
                let (h, v) = witness_caps(&w);
                let check = brute_force(&inst, h, v.max(6)).unwrap();
                assert!(check.is_yes());
            }
            Answer::No => {
                no += 1;
                assert!(!oracle.is_yes());
            }
            Answer::Unknown => {
                assert!(!oracle.is_yes());
            }
        }
    }
    assert!(yes >= 15, "only {yes} positive cases");
    assert!(no >= 10, "only {no} negative cases");
}

#[test]
fn expansive_subsumption_handles_splits() {
    common::with_deep_stack(|| expansive_subsumption_handles_splits_body());
}

fn expansive_subsumption_handles_splits_body() {
    // splits force expansion before the split; the subsumption search must
    // agree with the explicit-step oracle on BVASS corpora too
    let mut rng = StdRng::seed_from_u64(0xa9_0004);
    let opts = CorpusOptions {
        fork_rules: 0,
        split_rules: 2,
        zero_rules: 0,
        ..Default::default()
    };
    for _ in 0..60 {
        let inst = random_instance(&mut rng, Semantics::expansive(), &opts);
        let d = decide_expansive(&inst, 10).unwrap();
        let oracle = brute_force(&inst, 6, 5).unwrap();
        match d.answer {
            Answer::Yes => {
                let w = d.witness.unwrap();
                validate_tree(&inst, &w).unwrap();
            }
            Answer::No | Answer::Unknown => {
                assert!(!oracle.is_yes());
            }
        }
    }
}
