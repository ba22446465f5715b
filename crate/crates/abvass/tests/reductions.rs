//! Decision invariance of the reduction passes, cross-checked against the
//! brute-force oracle, plus witness back-translation.

mod common;

use abvass::decide::brute_force;
use abvass::reduce::{
    coverability_view, eliminate_zero_tests, root_states, to_ordinary, to_pseudo_increasing,
};
use abvass::system::{Instance, LeafCondition, Semantics, StateId, System};
use abvass::tree::validate_tree;
use abvass::vecs::{CVec, Delta};
use common::{random_instance, CorpusOptions};
use rand::rngs::StdRng;
use rand::SeedableRng;

const HEIGHT: usize = 8;
const VALUE: u64 = 4;

#[test]
fn zero_test_elimination_is_decision_equivalent() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let opts = CorpusOptions {
        max_states: 3,
        dim: 2,
        unary_rules: 4,
        ..Default::default()
    };
    let mut yes = 0;
    for _ in 0..60 {
        let mut inst = random_instance(&mut rng, Semantics::strict(), &opts);
        inst.leaf_condition = LeafCondition::ZeroVector;
        let red = eliminate_zero_tests(&inst).unwrap();
        // node-for-node simulation: equal caps on both sides
        let a = brute_force(&inst, HEIGHT, VALUE).unwrap();
        let b = brute_force(&red.instance, HEIGHT, VALUE).unwrap();
        assert_eq!(a.answer, b.answer, "instance: {inst:?}");
        if a.is_yes() {
            yes += 1;
            let w = b.witness.unwrap();
            let back = red.back_translate(&inst, &w).unwrap();
            validate_tree(&inst, &back).unwrap();
        }
    }
    assert!(yes >= 5, "corpus needs positive cases, got {yes}");
}

#[test]
fn zero_test_elimination_under_lossy_and_expansive() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let opts = CorpusOptions {
        max_states: 3,
        dim: 2,
        unary_rules: 4,
        ..Default::default()
    };
    for sem in [Semantics::lossy(), Semantics::expansive()] {
        for _ in 0..40 {
            let mut inst = random_instance(&mut rng, sem, &opts);
            inst.leaf_condition = LeafCondition::ZeroVector;
            let red = eliminate_zero_tests(&inst).unwrap();
            let a = brute_force(&inst, 6, 3).unwrap();
            let b = brute_force(&red.instance, 6, 3).unwrap();
            assert_eq!(a.answer, b.answer);
            if b.is_yes() {
                let back = red.back_translate(&inst, &b.witness.unwrap()).unwrap();
                validate_tree(&inst, &back).unwrap();
            }
        }
    }
}

#[test]
fn ordinary_form_is_decision_equivalent() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let opts = CorpusOptions::default();
    let mut yes = 0;
    for sem in [Semantics::strict(), Semantics::lossy(), Semantics::expansive()] {
        for _ in 0..60 {
            let inst = random_instance(&mut rng, sem, &opts);
            let red = to_ordinary(&inst).unwrap();
            let max_l1: usize = inst
                .system
                .unary
                .iter()
                .map(|r| usize::try_from(&r.delta.l1_norm()).unwrap().max(1))
                .max()
                .unwrap_or(1);
            let a = brute_force(&inst, HEIGHT, 8).unwrap();
            // chains stretch each rule into at most max_l1 edges and bump
            // values by at most max⁺ inside a chain
            let b_wide = brute_force(&red.instance, HEIGHT * max_l1, 8 + 2).unwrap();
            if a.is_yes() {
                yes += 1;
                assert!(b_wide.is_yes(), "lost a witness through chaining");
                let back = red
                    .back_translate(&inst, &b_wide.witness.clone().unwrap())
                    .unwrap();
                validate_tree(&inst, &back).unwrap();
            }
            // chain contraction shrinks heights and values, so a reduced
            // witness inside the base caps forces an original one
            let b_base = brute_force(&red.instance, HEIGHT, 8).unwrap();
            if b_base.is_yes() {
                assert!(a.is_yes(), "chain witness without an original witness");
            }
        }
    }
    assert!(yes >= 10);
}

#[test]
fn coverability_view_matches_lossy_decisions() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let opts = CorpusOptions::default();
    let mut yes = 0;
    for _ in 0..80 {
        let mut inst = random_instance(&mut rng, Semantics::lossy(), &opts);
        inst.leaf_condition = LeafCondition::ZeroVector;
        let red = coverability_view(&inst).unwrap();
        let a = brute_force(&inst, HEIGHT, VALUE).unwrap();
        let b = brute_force(&red.instance, HEIGHT, VALUE).unwrap();
        assert_eq!(a.answer, b.answer);
        if b.is_yes() {
            yes += 1;
            let back = red.back_translate(&inst, &b.witness.unwrap()).unwrap();
            validate_tree(&inst, &back).unwrap();
        }
    }
    assert!(yes >= 10);
}

#[test]
fn pseudo_increasing_matches_increasing_decisions() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let opts = CorpusOptions {
        split_rules: 0, // AVASS corpus
        zero_rules: 1,
        ..Default::default()
    };
    let mut yes = 0;
    for _ in 0..80 {
        let inst = random_instance(&mut rng, Semantics::increasing(), &opts);
        let red = to_pseudo_increasing(&inst).unwrap();
        let a = brute_force(&inst, 6, 6).unwrap();
        let b = brute_force(&red.instance, 6, 6).unwrap();
        assert_eq!(a.answer, b.answer, "{inst:?}");
        if a.is_yes() {
            yes += 1;
            validate_tree(&red.instance, &b.witness.unwrap()).unwrap();
        }
    }
    assert!(yes >= 10);
}

#[test]
fn pseudo_unary_example_fires_from_zero() {
    // q --(-1)--> q' from (q, 0): increasing fires after one increase,
    // pseudo-increasing fires directly via (0 ⊔ 1) − 1 = 0
    let mut sys = System::new(1);
    let q = sys.add_state("q");
    let qp = sys.add_state("qp");
    sys.add_unary(q, Delta::from_i64s(&[-1]), qp);
    let inst = Instance::reachability(sys, Semantics::increasing(), q, vec![qp]);
    let a = brute_force(&inst, 4, 4).unwrap();
    assert!(a.is_yes());
    let red = to_pseudo_increasing(&inst).unwrap();
    let b = brute_force(&red.instance, 4, 4).unwrap();
    assert!(b.is_yes());
}

#[test]
fn root_states_agrees_with_zero_test_elimination() {
    // three-state chain with one zero test in the middle
    let mut sys = System::new(1);
    let a = sys.add_state("a");
    let b = sys.add_state("b");
    let c = sys.add_state("c");
    sys.add_unary(a, Delta::from_i64s(&[1]), a);
    sys.add_unary(a, Delta::from_i64s(&[-1]), b);
    sys.add_zero(b, c);
    sys.add_unary(c, Delta::from_i64s(&[0]), c);

    let oracle = |s: &System, q: StateId, leaves: &[StateId]| -> Result<bool, std::convert::Infallible> {
        let inst = Instance::reachability(s.clone(), Semantics::strict(), q, leaves.to_vec());
        Ok(brute_force(&inst, 8, 4).unwrap().is_yes())
    };
    let roots = root_states(&sys, &[c], oracle).unwrap();

    for q in sys.state_ids() {
        let inst = Instance::reachability(sys.clone(), Semantics::strict(), q, vec![c]);
        let red = eliminate_zero_tests(&inst).unwrap();
        let direct = brute_force(&red.instance, 8, 4).unwrap().is_yes();
        assert_eq!(roots.contains(&q), direct, "state {:?}", q);
    }
}

#[test]
fn root_states_is_monotone_in_the_leaf_set() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let opts = CorpusOptions {
        max_states: 3,
        ..Default::default()
    };
    let oracle = |s: &System, q: StateId, leaves: &[StateId]| -> Result<bool, std::convert::Infallible> {
        let inst = Instance::reachability(s.clone(), Semantics::strict(), q, leaves.to_vec());
        Ok(brute_force(&inst, 6, 3).unwrap().is_yes())
    };
    for _ in 0..15 {
        let inst = random_instance(&mut rng, Semantics::strict(), &opts);
        let sys = &inst.system;
        let all: Vec<StateId> = sys.state_ids().collect();
        let small = root_states(sys, &all[..1], oracle).unwrap();
        let big = root_states(sys, &all, oracle).unwrap();
        assert!(small.is_subset(&big));
        // Root(X) always contains X
        for q in &all {
            assert!(big.contains(q));
        }
    }
}

#[test]
fn worked_example_is_stable_under_ordinary_form() {
    // lossy decisions on the worked example stay put for m = 3, 4
    let g = abvass::gadgets::gen_example_bvass();
    for (m, expect) in [(3u64, false), (4, true)] {
        let inst = g.instance.clone().with_root_vector(CVec::from_u64s(&[m, 0, 0]));
        let red = to_ordinary(&inst).unwrap();
        let a = abvass::decide::decide_lossy(&inst, false).unwrap();
        let b = abvass::decide::decide_lossy(&red.instance, false).unwrap();
        assert_eq!(a.is_yes(), expect);
        assert_eq!(b.is_yes(), expect);
    }
}
