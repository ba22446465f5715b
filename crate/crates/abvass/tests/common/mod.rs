//! Shared helpers for the integration suites: seeded random instances and
//! cap calibration from witnesses.

use abvass::system::{Instance, LeafCondition, Semantics, System};
use abvass::tree::DeductionTree;
use abvass::vecs::{Delta, Nat};
use rand::rngs::StdRng;
use rand::Rng;

pub struct CorpusOptions {
    pub max_states: usize,
    pub dim: usize,
    pub max_delta: i64,
    pub unary_rules: usize,
    pub fork_rules: usize,
    pub split_rules: usize,
    pub zero_rules: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_states: 4,
            dim: 2,
            max_delta: 2,
            unary_rules: 5,
            fork_rules: 1,
            split_rules: 1,
            zero_rules: 1,
        }
    }
}

pub fn random_instance(rng: &mut StdRng, sem: Semantics, opts: &CorpusOptions) -> Instance {
    let n = rng.gen_range(2..=opts.max_states);
    let dim = rng.gen_range(1..=opts.dim);
    let mut sys = System::new(dim);
    let states: Vec<_> = (0..n).map(|i| sys.add_state(&format!("q{i}"))).collect();
    let pick = |rng: &mut StdRng| states[rng.gen_range(0..n)];
    for _ in 0..rng.gen_range(1..=opts.unary_rules) {
        let delta: Vec<i64> = (0..dim)
            .map(|_| rng.gen_range(-opts.max_delta..=opts.max_delta))
            .collect();
        let (src, dst) = (pick(rng), pick(rng));
        sys.add_unary(src, Delta::from_i64s(&delta), dst);
    }
    for _ in 0..rng.gen_range(0..=opts.fork_rules) {
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        sys.add_fork(a, b, c);
    }
    for _ in 0..rng.gen_range(0..=opts.split_rules) {
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        sys.add_split(a, b, c);
    }
    for _ in 0..rng.gen_range(0..=opts.zero_rules) {
        let (a, b) = (pick(rng), pick(rng));
        sys.add_zero(a, b);
    }
    let root = pick(rng);
    let mut leaves = vec![pick(rng)];
    if rng.gen_bool(0.4) {
        leaves.push(pick(rng));
    }
    let mut inst = Instance::reachability(sys, sem, root, leaves);
    if rng.gen_bool(0.3) {
        let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..3)).collect();
        inst = inst.with_root_vector(abvass::vecs::CVec::from_u64s(&v));
    }
    if rng.gen_bool(0.3) {
        inst = inst.with_leaf_condition(LeafCondition::AnyVector);
    }
    inst
}

/// Caps that certainly admit this witness: its rule height and max value.
pub fn witness_caps(w: &DeductionTree) -> (usize, u64) {
    let h = w.rule_height();
    let v = u64::try_from(&w.max_value()).expect("desk-scale witnesses have small values");
    (h, v)
}

#[allow(dead_code)]
pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Runs a test body on a thread with a deep stack; witness validation and
/// the brute-force oracle recurse to witness height.
pub fn with_deep_stack(f: impl FnOnce() + Send) {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, f)
            .expect("spawn test thread")
            .join()
            .expect("test body panicked");
    });
}
