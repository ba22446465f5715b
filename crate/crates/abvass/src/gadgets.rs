//! Hardness gadget generators: the worked example BVASS, the `B_k` tower
//! hierarchy, Minsky machines and their two encodings (the lossy-BVASS
//! tower-hardness simulation and the zero-test-via-fork AVASS), and the weak
//! tower initializer fragment.

use crate::bounds::{tower, BoundsError};
use crate::system::{Instance, LeafCondition, Semantics, StateId, System};
use crate::vecs::{Delta, Int};

use std::collections::BTreeSet;
use thiserror::Error;

/// An instance together with a role name per counter coordinate.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub instance: Instance,
    /// `counter_legend[i]` names the role of coordinate `i`; total on the
    /// dimension.
    pub counter_legend: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("k must be at least 1")]
    BadLevel,
    #[error("unknown machine state {0}")]
    UnknownState(String),
    #[error("state-space guard exceeded ({0} configurations)")]
    StateSpaceGuard(usize),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// The five-state example BVASS: six unary rules, one split rule, threshold
/// m ≥ 4 for coverability from (q0, (m,0,0)).  Coordinates are c, d, d'.
pub fn gen_example_bvass() -> GadgetInstance {
    let mut sys = System::new(3);
    let q0 = sys.add_state("q0");
    let q1 = sys.add_state("q1");
    let q2 = sys.add_state("q2");
    let q3 = sys.add_state("q3");
    let q4 = sys.add_state("q4");
    sys.add_unary(q0, Delta::from_i64s(&[0, 1, 0]), q1);
    sys.add_unary(q1, Delta::from_i64s(&[0, -1, 2]), q1);
    sys.add_unary(q1, Delta::from_i64s(&[0, 0, 0]), q2);
    sys.add_unary(q2, Delta::from_i64s(&[0, 1, -1]), q2);
    sys.add_unary(q3, Delta::from_i64s(&[0, 0, 0]), q0);
    sys.add_unary(q3, Delta::from_i64s(&[-1, -2, 0]), q4);
    sys.add_split(q2, q3, q3);
    let instance = Instance::reachability(sys, Semantics::lossy(), q0, vec![q4])
        .with_leaf_condition(LeafCondition::AnyVector);
    GadgetInstance {
        instance,
        counter_legend: vec!["c".into(), "d".into(), "dp".into()],
    }
}

/// Coordinate of `d_j` (1-based `j`) in a `B_k` system of dimension 2k−1.
pub fn bk_d_coord(_k: usize, j: usize) -> usize {
    j - 1
}

/// Coordinate of `d'_j` (1-based `j`, `j < k`).
pub fn bk_dp_coord(k: usize, j: usize) -> usize {
    k + j - 1
}

/// The `B_k` hierarchy: coverability from (init_k, n·e_{d_k}) holds exactly
/// when n ≥ tower(k).  Dimension 2k−1 with coordinates d_1..d_k,
/// d'_1..d'_{k−1}.
pub fn gen_tower_bvass(k: usize) -> Result<GadgetInstance, GadgetError> {
    if k == 0 {
        return Err(GadgetError::BadLevel);
    }
    let dim = 2 * k - 1;
    let mut sys = System::new(dim);
    let leaf = sys.add_state("$Bk.leaf");
    let mut init = Vec::with_capacity(k + 1);
    init.push(StateId(u32::MAX)); // 1-based indexing
    for j in 1..=k {
        init.push(sys.add_state(&format!("$Bk.init.{j}")));
    }
    // B_1: one unary rule consuming two units of d_1.
    let mut delta = vec![0i64; dim];
    delta[bk_d_coord(k, 1)] = -2;
    sys.add_unary(init[1], Delta::from_i64s(&delta), leaf);
    for j in 2..=k {
        let one = sys.add_state(&format!("$Bk.one.{j}"));
        let two = sys.add_state(&format!("$Bk.two.{j}"));
        let looper = sys.add_state(&format!("$Bk.loop.{j}"));
        let d_lo = bk_d_coord(k, j - 1);
        let dp_lo = bk_dp_coord(k, j - 1);
        let d_hi = bk_d_coord(k, j);

        let mut u = vec![0i64; dim];
        u[d_lo] = 1;
        sys.add_unary(init[j], Delta::from_i64s(&u), one);

        let mut u = vec![0i64; dim];
        u[d_lo] = -1;
        u[dp_lo] = 2;
        sys.add_unary(one, Delta::from_i64s(&u), one);

        sys.add_unary(one, Delta::zeros(dim), two);

        let mut u = vec![0i64; dim];
        u[dp_lo] = -1;
        u[d_lo] = 1;
        sys.add_unary(two, Delta::from_i64s(&u), two);

        sys.add_split(two, looper, looper);
        sys.add_unary(looper, Delta::zeros(dim), init[j]);

        let mut u = vec![0i64; dim];
        u[d_hi] = -1;
        sys.add_unary(looper, Delta::from_i64s(&u), init[j - 1]);
    }
    let root = init[k];
    let instance = Instance::reachability(sys, Semantics::lossy(), root, vec![leaf])
        .with_leaf_condition(LeafCondition::AnyVector);
    let mut legend = vec![String::new(); dim];
    for j in 1..=k {
        legend[bk_d_coord(k, j)] = format!("d{j}");
    }
    for j in 1..k {
        legend[bk_dp_coord(k, j)] = format!("dp{j}");
    }
    Ok(GadgetInstance {
        instance,
        counter_legend: legend,
    })
}

// ---------------------------------------------------------------------------
// Minsky machines
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct MStateId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinskyRule {
    Inc {
        src: MStateId,
        counter: usize,
        dst: MStateId,
    },
    Dec {
        src: MStateId,
        counter: usize,
        dst: MStateId,
    },
    Zero {
        src: MStateId,
        counter: usize,
        dst: MStateId,
    },
}

/// A counter program with increment, decrement, and zero-test rules.
#[derive(Clone, Debug, Default)]
pub struct MinskyMachine {
    state_names: Vec<String>,
    counter_names: Vec<String>,
    pub rules: Vec<MinskyRule>,
}

impl MinskyMachine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, name: &str) -> MStateId {
        if let Some(i) = self.state_names.iter().position(|n| n == name) {
            return MStateId(i as u32);
        }
        self.state_names.push(name.to_string());
        MStateId((self.state_names.len() - 1) as u32)
    }

    pub fn add_counter(&mut self, name: &str) -> usize {
        if let Some(i) = self.counter_names.iter().position(|n| n == name) {
            return i;
        }
        self.counter_names.push(name.to_string());
        self.counter_names.len() - 1
    }

    pub fn state(&self, name: &str) -> Option<MStateId> {
        self.state_names
            .iter()
            .position(|n| n == name)
            .map(|i| MStateId(i as u32))
    }

    pub fn state_name(&self, id: MStateId) -> &str {
        &self.state_names[id.0 as usize]
    }

    pub fn counter(&self, name: &str) -> Option<usize> {
        self.counter_names.iter().position(|n| n == name)
    }

    pub fn counter_name(&self, i: usize) -> &str {
        &self.counter_names[i]
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_counters(&self) -> usize {
        self.counter_names.len()
    }
}

/// Exact BFS of the machine semantics with every counter capped at
/// `value_bound`: increments beyond the bound are disabled, zero tests fire
/// only at zero.  Starts from `q0` with all counters zero.
pub fn simulate_minsky_bounded(
    m: &MinskyMachine,
    q0: MStateId,
    value_bound: u64,
) -> Result<BTreeSet<(MStateId, Vec<u64>)>, GadgetError> {
    let guard = 1_000_000usize;
    let mut seen = BTreeSet::new();
    let mut queue = vec![(q0, vec![0u64; m.num_counters()])];
    seen.insert(queue[0].clone());
    while let Some((q, vals)) = queue.pop() {
        for rule in &m.rules {
            let next = match rule {
                MinskyRule::Inc { src, counter, dst } if *src == q => {
                    if vals[*counter] < value_bound {
                        let mut v = vals.clone();
                        v[*counter] += 1;
                        Some((*dst, v))
                    } else {
                        None
                    }
                }
                MinskyRule::Dec { src, counter, dst } if *src == q => {
                    if vals[*counter] > 0 {
                        let mut v = vals.clone();
                        v[*counter] -= 1;
                        Some((*dst, v))
                    } else {
                        None
                    }
                }
                MinskyRule::Zero { src, counter, dst } if *src == q => {
                    if vals[*counter] == 0 {
                        Some((*dst, vals.clone()))
                    } else {
                        None
                    }
                }
                _ => None,
            };
            if let Some(cfg) = next {
                if seen.insert(cfg.clone()) {
                    if seen.len() > guard {
                        return Err(GadgetError::StateSpaceGuard(seen.len()));
                    }
                    queue.push(cfg);
                }
            }
        }
    }
    Ok(seen)
}

// ---------------------------------------------------------------------------
// Weak tower initializer
// ---------------------------------------------------------------------------

/// A VASS fragment (unary rules only) with designated entry and exit states.
#[derive(Clone, Debug)]
pub struct WeakTowerFragment {
    pub system: System,
    pub entry: StateId,
    pub exit: StateId,
    /// Coordinates added for the chain and scratch counters, 2K per target.
    pub fresh_coords: Vec<usize>,
}

/// Builds a VASS fragment that weakly computes tower(K) into each of the
/// `targets` (coordinates below `ambient_dim`): K chained doubling stages per
/// target, each transferring x into y with y += 2 per unit of x, with an
/// outer loop per exponentiation level.  Every run yields target values
/// ≤ tower(K), and tower(K) is attainable.
pub fn gen_weak_tower_initializer(
    k: usize,
    ambient_dim: usize,
    targets: &[usize],
) -> Result<WeakTowerFragment, GadgetError> {
    if k == 0 {
        return Err(GadgetError::BadLevel);
    }
    let dim = ambient_dim + 2 * k * targets.len();
    let mut sys = System::new(dim);
    let entry = sys.add_state("$wt.entry");
    let exit = sys.add_state("$wt.exit");
    let mut fresh_coords = Vec::new();
    let mut fresh = ambient_dim;
    let mut cur = entry;
    for (tau, &target) in targets.iter().enumerate() {
        assert!(target < ambient_dim, "target out of ambient range");
        // chain counters a_0..a_{K-1} and scratch z_1..z_K
        let a: Vec<usize> = (0..k).map(|i| fresh + i).collect();
        let z: Vec<usize> = (0..k).map(|i| fresh + k + i).collect();
        fresh += 2 * k;
        fresh_coords.extend(a.iter().chain(z.iter()).copied());

        // seed a_0 := 1
        let seeded = sys.add_state(&format!("$wt.{tau}.seed"));
        let mut u = vec![0i64; dim];
        u[a[0]] = 1;
        sys.add_unary(cur, Delta::from_i64s(&u), seeded);
        cur = seeded;

        for j in 1..=k {
            let input = a[j - 1];
            let output = if j == k { target } else { a[j] };
            let scratch = z[j - 1];
            let outer = sys.add_state(&format!("$wt.{tau}.{j}.outer"));
            let dbl_a = sys.add_state(&format!("$wt.{tau}.{j}.dblA"));
            let dbl_b = sys.add_state(&format!("$wt.{tau}.{j}.dblB"));
            let stage_out = sys.add_state(&format!("$wt.{tau}.{j}.out"));

            // output := 1 on stage entry
            let mut u = vec![0i64; dim];
            u[output] = 1;
            sys.add_unary(cur, Delta::from_i64s(&u), outer);

            // consume one unit of input per doubling round
            let mut u = vec![0i64; dim];
            u[input] = -1;
            sys.add_unary(outer, Delta::from_i64s(&u), dbl_a);

            // transfer output into scratch, doubling
            let mut u = vec![0i64; dim];
            u[output] = -1;
            u[scratch] = 2;
            sys.add_unary(dbl_a, Delta::from_i64s(&u), dbl_a);
            sys.add_unary(dbl_a, Delta::zeros(dim), dbl_b);

            // transfer scratch back
            let mut u = vec![0i64; dim];
            u[scratch] = -1;
            u[output] = 1;
            sys.add_unary(dbl_b, Delta::from_i64s(&u), dbl_b);
            sys.add_unary(dbl_b, Delta::zeros(dim), outer);

            sys.add_unary(outer, Delta::zeros(dim), stage_out);
            cur = stage_out;
        }
    }
    sys.add_unary(cur, Delta::zeros(dim), exit);
    Ok(WeakTowerFragment {
        system: sys,
        entry,
        exit,
        fresh_coords,
    })
}

/// Exhaustively enumerates the valuations reachable at the fragment's exit
/// state (strict VASS semantics, values capped for the enumeration).
pub fn fragment_exit_valuations(
    frag: &WeakTowerFragment,
    value_cap: u64,
) -> Result<BTreeSet<Vec<u64>>, GadgetError> {
    let guard = 2_000_000usize;
    let sys = &frag.system;
    let start = (frag.entry, vec![0u64; sys.dim]);
    let mut seen = BTreeSet::new();
    let mut queue = vec![start.clone()];
    seen.insert(start);
    let mut out = BTreeSet::new();
    while let Some((q, vals)) = queue.pop() {
        if q == frag.exit {
            out.insert(vals.clone());
        }
        for rule in &sys.unary {
            if rule.src != q {
                continue;
            }
            let mut next = vals.clone();
            let mut ok = true;
            for (i, d) in rule.delta.0.iter().enumerate() {
                let d = i64::try_from(d).expect("gadget deltas are small");
                let v = next[i] as i64 + d;
                if v < 0 || v as u64 > value_cap {
                    ok = false;
                    break;
                }
                next[i] = v as u64;
            }
            if !ok {
                continue;
            }
            let cfg = (rule.dst, next);
            if seen.insert(cfg.clone()) {
                if seen.len() > guard {
                    return Err(GadgetError::StateSpaceGuard(seen.len()));
                }
                queue.push(cfg);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tower-hardness simulation A(M)
// ---------------------------------------------------------------------------

/// Coordinates of the three counters tracking Minsky counter `gamma`.
fn sim_coords(gamma: usize) -> (usize, usize, usize) {
    (3 * gamma, 3 * gamma + 1, 3 * gamma + 2)
}

/// The lossy BVASS A(M): per Minsky counter c the counters c, ĉ, c' with
/// c + ĉ kept constant, d_1..d_K and d'_1..d'_{K−1} for the embedded B_K
/// check, an initializer that weakly sets each ĉ to tower(K), increments and
/// decrements compiled to transfer rules, and each zero test compiled to the
/// two transfer loops followed by a split into B_K and the continuation.
///
/// Coverability from the root equals qH-reachability of M with counters
/// bounded by tower(K).
pub fn gen_minsky_sim(
    m: &MinskyMachine,
    q0: MStateId,
    qh: MStateId,
    k: usize,
) -> Result<GadgetInstance, GadgetError> {
    if k == 0 {
        return Err(GadgetError::BadLevel);
    }
    let nc = m.num_counters();
    let dim = 3 * nc + 2 * k - 1;
    let d_coord = |j: usize| 3 * nc + j - 1; // d_j, 1-based
    let dp_coord = |j: usize| 3 * nc + k + j - 1; // d'_j, 1-based
    let tower_k = tower(k as u64)?;

    let mut sys = System::new(dim);
    let enc: Vec<StateId> = (0..m.num_states())
        .map(|i| sys.add_state(&format!("$sim.q.{}", m.state_name(MStateId(i as u32)))))
        .collect();
    let enc = |q: MStateId| enc[q.0 as usize];

    // initializer: one constant-delta rule per hatted counter
    let root = if nc == 0 {
        enc(q0)
    } else {
        let root = sys.add_state("$sim.init.0");
        let mut cur = root;
        for gamma in 0..nc {
            let next = if gamma + 1 == nc {
                enc(q0)
            } else {
                sys.add_state(&format!("$sim.init.{}", gamma + 1))
            };
            let (_, hat, _) = sim_coords(gamma);
            let mut u = vec![Int::from(0); dim];
            u[hat] = Int::from(tower_k.clone());
            sys.add_unary(cur, Delta(u), next);
            cur = next;
        }
        root
    };

    // embedded B_K over the d coordinates
    let bk_leaf = sys.add_state("$Bk.leaf");
    let mut bk_init = vec![StateId(u32::MAX)];
    for j in 1..=k {
        bk_init.push(sys.add_state(&format!("$Bk.init.{j}")));
    }
    {
        let mut u = vec![0i64; dim];
        u[d_coord(1)] = -2;
        sys.add_unary(bk_init[1], Delta::from_i64s(&u), bk_leaf);
    }
    for j in 2..=k {
        let one = sys.add_state(&format!("$Bk.one.{j}"));
        let two = sys.add_state(&format!("$Bk.two.{j}"));
        let looper = sys.add_state(&format!("$Bk.loop.{j}"));
        let mut u = vec![0i64; dim];
        u[d_coord(j - 1)] = 1;
        sys.add_unary(bk_init[j], Delta::from_i64s(&u), one);
        let mut u = vec![0i64; dim];
        u[d_coord(j - 1)] = -1;
        u[dp_coord(j - 1)] = 2;
        sys.add_unary(one, Delta::from_i64s(&u), one);
        sys.add_unary(one, Delta::zeros(dim), two);
        let mut u = vec![0i64; dim];
        u[dp_coord(j - 1)] = -1;
        u[d_coord(j - 1)] = 1;
        sys.add_unary(two, Delta::from_i64s(&u), two);
        sys.add_split(two, looper, looper);
        sys.add_unary(looper, Delta::zeros(dim), bk_init[j]);
        let mut u = vec![0i64; dim];
        u[d_coord(j)] = -1;
        sys.add_unary(looper, Delta::from_i64s(&u), bk_init[j - 1]);
    }

    // Minsky operations
    for (rho, rule) in m.rules.iter().enumerate() {
        match rule {
            MinskyRule::Inc { src, counter, dst } => {
                let (c, hat, _) = sim_coords(*counter);
                let mut u = vec![0i64; dim];
                u[c] = 1;
                u[hat] = -1;
                sys.add_unary(enc(*src), Delta::from_i64s(&u), enc(*dst));
            }
            MinskyRule::Dec { src, counter, dst } => {
                let (c, hat, _) = sim_coords(*counter);
                let mut u = vec![0i64; dim];
                u[c] = -1;
                u[hat] = 1;
                sys.add_unary(enc(*src), Delta::from_i64s(&u), enc(*dst));
            }
            MinskyRule::Zero { src, counter, dst } => {
                let (_, hat, prime) = sim_coords(*counter);
                let z1 = sys.add_state(&format!("$sim.{rho}.z1"));
                let z2 = sys.add_state(&format!("$sim.{rho}.z2"));
                sys.add_unary(enc(*src), Delta::zeros(dim), z1);
                let mut u = vec![0i64; dim];
                u[hat] = -1;
                u[d_coord(k)] = 1;
                u[prime] = 1;
                sys.add_unary(z1, Delta::from_i64s(&u), z1);
                sys.add_unary(z1, Delta::zeros(dim), z2);
                let mut u = vec![0i64; dim];
                u[prime] = -1;
                u[hat] = 1;
                sys.add_unary(z2, Delta::from_i64s(&u), z2);
                sys.add_split(z2, enc(*dst), bk_init[k]);
            }
        }
    }

    let instance = Instance::reachability(
        sys,
        Semantics::lossy(),
        root,
        vec![enc(qh), bk_leaf],
    )
    .with_leaf_condition(LeafCondition::AnyVector);

    let mut legend = vec![String::new(); dim];
    for gamma in 0..nc {
        let (c, hat, prime) = sim_coords(gamma);
        legend[c] = format!("c:{}", m.counter_name(gamma));
        legend[hat] = format!("hat:{}", m.counter_name(gamma));
        legend[prime] = format!("prime:{}", m.counter_name(gamma));
    }
    for j in 1..=k {
        legend[d_coord(j)] = format!("d{j}");
    }
    for j in 1..k {
        legend[dp_coord(j)] = format!("dp{j}");
    }
    Ok(GadgetInstance {
        instance,
        counter_legend: legend,
    })
}

// ---------------------------------------------------------------------------
// Zero tests via forks: the AVASS encoding
// ---------------------------------------------------------------------------

/// The strict-semantics AVASS encoding of a Minsky machine: each zero test
/// q →(c?=0) q' becomes a fork q → q' ∧ q_c where q_c drains every counter
/// other than c and exits to the single leaf state; the halt state drains
/// everything.  Reachability (leaves at zero) equals qH-reachability of M.
pub fn minsky_to_avass(
    m: &MinskyMachine,
    q0: MStateId,
    qh: MStateId,
) -> Result<GadgetInstance, GadgetError> {
    let nc = m.num_counters();
    let mut sys = System::new(nc);
    let enc: Vec<StateId> = (0..m.num_states())
        .map(|i| sys.add_state(m.state_name(MStateId(i as u32))))
        .collect();
    let enc = |q: MStateId| enc[q.0 as usize];
    let leaf = sys.add_state("$av.leaf");

    for (rho, rule) in m.rules.iter().enumerate() {
        match rule {
            MinskyRule::Inc { src, counter, dst } => {
                sys.add_unary(enc(*src), Delta::unit(nc, *counter, 1), enc(*dst));
            }
            MinskyRule::Dec { src, counter, dst } => {
                sys.add_unary(enc(*src), Delta::unit(nc, *counter, -1), enc(*dst));
            }
            MinskyRule::Zero { src, counter, dst } => {
                let check = sys.add_state(&format!("$chk.{rho}"));
                sys.add_fork(enc(*src), enc(*dst), check);
                for c in 0..nc {
                    if c != *counter {
                        sys.add_unary(check, Delta::unit(nc, c, -1), check);
                    }
                }
                sys.add_unary(check, Delta::zeros(nc), leaf);
            }
        }
    }
    // drain at the halt state
    for c in 0..nc {
        sys.add_unary(enc(qh), Delta::unit(nc, c, -1), enc(qh));
    }
    sys.add_unary(enc(qh), Delta::zeros(nc), leaf);

    let instance = Instance::reachability(sys, Semantics::strict(), enc(q0), vec![leaf]);
    let legend = (0..nc).map(|c| format!("c:{}", m.counter_name(c))).collect();
    Ok(GadgetInstance {
        instance,
        counter_legend: legend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::validate_instance;

    #[test]
    fn example_bvass_shape() {
        let g = gen_example_bvass();
        assert!(validate_instance(&g.instance).ok());
        assert_eq!(g.instance.system.num_states(), 5);
        assert_eq!(g.instance.system.dim, 3);
        assert_eq!(g.instance.system.unary.len(), 6);
        assert_eq!(g.instance.system.split.len(), 1);
        assert!(g.instance.system.fork.is_empty());
        assert!(g.instance.system.zero.is_empty());
    }

    #[test]
    fn tower_bvass_counts() {
        let g = gen_tower_bvass(2).unwrap();
        assert!(validate_instance(&g.instance).ok());
        assert_eq!(g.instance.system.num_states(), 6);
        assert_eq!(g.instance.system.dim, 3);
        assert!(gen_tower_bvass(0).is_err());
    }

    #[test]
    fn simulate_zero_test_from_start() {
        let mut m = MinskyMachine::new();
        let q0 = m.add_state("q0");
        let qh = m.add_state("qH");
        let c = m.add_counter("c");
        m.rules.push(MinskyRule::Zero {
            src: q0,
            counter: c,
            dst: qh,
        });
        let reach = simulate_minsky_bounded(&m, q0, 4).unwrap();
        assert!(reach.contains(&(qh, vec![0])));
    }

    #[test]
    fn simulate_inc_blocks_zero_test() {
        let mut m = MinskyMachine::new();
        let q0 = m.add_state("q0");
        let q1 = m.add_state("q1");
        let qh = m.add_state("qH");
        let c = m.add_counter("c");
        m.rules.push(MinskyRule::Inc {
            src: q0,
            counter: c,
            dst: q1,
        });
        m.rules.push(MinskyRule::Zero {
            src: q1,
            counter: c,
            dst: qh,
        });
        let reach = simulate_minsky_bounded(&m, q0, 4).unwrap();
        assert!(!reach.iter().any(|(q, _)| *q == qh));
    }

    #[test]
    fn simulate_pump_and_transfer_grid() {
        // q0 pumps c1, transfers c1 to c2 through q1; all 9 valuations of
        // the 3x3 grid appear at q0 under bound 2.
        let mut m = MinskyMachine::new();
        let q0 = m.add_state("q0");
        let q1 = m.add_state("q1");
        let c1 = m.add_counter("c1");
        let c2 = m.add_counter("c2");
        m.rules.push(MinskyRule::Inc {
            src: q0,
            counter: c1,
            dst: q0,
        });
        m.rules.push(MinskyRule::Dec {
            src: q0,
            counter: c1,
            dst: q1,
        });
        m.rules.push(MinskyRule::Inc {
            src: q1,
            counter: c2,
            dst: q0,
        });
        let reach = simulate_minsky_bounded(&m, q0, 2).unwrap();
        let at_q0: BTreeSet<_> = reach
            .iter()
            .filter(|(q, _)| *q == q0)
            .map(|(_, v)| v.clone())
            .collect();
        assert_eq!(at_q0.len(), 9);
    }

    #[test]
    fn weak_tower_k1_max_is_two() {
        let frag = gen_weak_tower_initializer(1, 1, &[0]).unwrap();
        let exits = fragment_exit_valuations(&frag, 8).unwrap();
        let max_target = exits.iter().map(|v| v[0]).max().unwrap();
        assert_eq!(max_target, 2);
    }

    #[test]
    fn weak_tower_k2_max_is_four_and_three_attainable() {
        let frag = gen_weak_tower_initializer(2, 1, &[0]).unwrap();
        let exits = fragment_exit_valuations(&frag, 16).unwrap();
        let targets: BTreeSet<u64> = exits.iter().map(|v| v[0]).collect();
        assert_eq!(targets.iter().max(), Some(&4));
        assert!(targets.contains(&3));
    }

    #[test]
    fn minsky_sim_legend_covers_all_coordinates() {
        let mut m = MinskyMachine::new();
        let q0 = m.add_state("q0");
        let qh = m.add_state("qH");
        let c = m.add_counter("c");
        m.rules.push(MinskyRule::Zero {
            src: q0,
            counter: c,
            dst: qh,
        });
        let g = gen_minsky_sim(&m, q0, qh, 1).unwrap();
        assert!(validate_instance(&g.instance).ok());
        assert_eq!(g.instance.system.dim, 3 * 1 + 2 * 1 - 1);
        assert_eq!(g.counter_legend.len(), g.instance.system.dim);
        assert!(g.counter_legend.iter().all(|r| !r.is_empty()));
    }

    #[test]
    fn minsky_avass_shape() {
        let mut m = MinskyMachine::new();
        let q0 = m.add_state("q0");
        let qh = m.add_state("qH");
        let c = m.add_counter("c");
        m.rules.push(MinskyRule::Zero {
            src: q0,
            counter: c,
            dst: qh,
        });
        let g = minsky_to_avass(&m, q0, qh).unwrap();
        assert!(validate_instance(&g.instance).ok());
        assert!(g.instance.system.split.is_empty());
        assert!(g.instance.system.zero.is_empty());
        assert_eq!(g.instance.system.fork.len(), 1);
    }
}
