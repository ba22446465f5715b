//! From counter-system reachability to classical provability.
//!
//! A configuration (q, v) of an ordinary zero-test-free system becomes the
//! sequent ⊢ q⊥, (e_1⊥)^{v(1)}, …, (e_d⊥)^{v(d)}; the rules become
//! non-logical axioms over the state and counter atoms.  Reachability then
//! matches provability of ⊢ q_r⊥, ?Q_ℓ in LL plus the theory, or, compiled
//! to pure formulas, of the goals returned here.

use crate::logic::formula::Formula;
use crate::logic::sequent::{Axiom, Sequent, Theory};
use crate::system::{Instance, StateId};
use crate::vecs::CVec;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("system is not in ordinary form (run the ordinary reduction first)")]
    NotOrdinary,
    #[error("system still has zero-test rules (eliminate them first)")]
    HasZeroTests,
    #[error("the contractive flavor needs a single leaf state with no outgoing rules")]
    LlcLeafShape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaFlavor {
    /// ⊢ Γ in LL + T; pure goal ⊢ q_r⊥, ?Q_ℓ, ?⟦T⟧.
    LL,
    /// ⊢ ⊥ ⊕ ⊕_t ⟦t⟧, q_r⊥, q_ℓ in LLC (matches expansive reachability).
    LLC,
}

#[derive(Clone, Debug)]
pub struct ThetaEncoding {
    pub theory: Theory,
    /// Goal for proving with the theory rules (LL flavor: ⊢ q_r⊥, ?Q_ℓ).
    pub goal: Sequent,
    /// Self-contained goal: the theory folded into the sequent.
    pub pure_goal: Sequent,
    pub flavor: ThetaFlavor,
    /// atom per state, indexed by state id
    pub state_atoms: Vec<String>,
    /// atom per counter coordinate
    pub counter_atoms: Vec<String>,
}

impl ThetaEncoding {
    /// θ(q, v) = ⊢ q⊥, (e_1⊥)^{v(1)}, …, (e_d⊥)^{v(d)}.
    pub fn theta(&self, q: StateId, v: &CVec) -> Sequent {
        let mut fs = vec![Formula::neg_atom(&self.state_atoms[q.index()])];
        for (i, n) in v.0.iter().enumerate() {
            let mut k = n.clone();
            while !k.is_zero() {
                fs.push(Formula::neg_atom(&self.counter_atoms[i]));
                k -= 1u32;
            }
        }
        Sequent::one_sided(fs)
    }

    /// The goal θ(q_r, v_r), ?Q_ℓ for an arbitrary root vector.
    pub fn goal_for(&self, inst: &Instance) -> Sequent {
        let base = self.theta(inst.root_state, &inst.root_vector);
        let mut fs: Vec<Formula> = match base {
            Sequent::OneSided { gamma } => gamma.iter().cloned().collect(),
            _ => unreachable!(),
        };
        for &l in &inst.leaf_states {
            fs.push(Formula::why_not(Formula::atom(&self.state_atoms[l.index()])));
        }
        Sequent::one_sided(fs)
    }
}

/// Valid LL atom from an arbitrary state name, deduplicated against taken
/// names.
fn sanitize(name: &str, taken: &BTreeSet<String>) -> String {
    let mut base: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect();
    if !base.chars().next().map(|c| c.is_ascii_lowercase()).unwrap_or(false) {
        base.insert_str(0, "s_");
    }
    if !taken.contains(&base) {
        return base;
    }
    for k in 2.. {
        let cand = format!("{base}_{k}");
        if !taken.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

/// Encodes an ordinary zero-test-free instance as a theory plus goal
/// sequents of the chosen flavor.
pub fn abvass_to_theory(
    inst: &Instance,
    flavor: ThetaFlavor,
) -> Result<ThetaEncoding, ThetaError> {
    let sys = &inst.system;
    if !sys.is_ordinary() {
        return Err(ThetaError::NotOrdinary);
    }
    if !sys.zero.is_empty() {
        return Err(ThetaError::HasZeroTests);
    }
    if flavor == ThetaFlavor::LLC {
        if inst.leaf_states.len() != 1 {
            return Err(ThetaError::LlcLeafShape);
        }
        let l = inst.leaf_states[0];
        let outgoing = sys.unary.iter().any(|r| r.src == l)
            || sys.fork.iter().any(|r| r.src == l)
            || sys.split.iter().any(|r| r.src == l);
        if outgoing {
            return Err(ThetaError::LlcLeafShape);
        }
    }

    let mut taken = BTreeSet::new();
    let mut counter_atoms = Vec::with_capacity(sys.dim);
    for i in 0..sys.dim {
        let a = sanitize(&format!("e{}", i + 1), &taken);
        taken.insert(a.clone());
        counter_atoms.push(a);
    }
    let mut state_atoms = Vec::with_capacity(sys.num_states());
    for q in sys.state_ids() {
        let a = sanitize(sys.state_name(q), &taken);
        taken.insert(a.clone());
        state_atoms.push(a);
    }

    let state = |q: StateId| Formula::atom(&state_atoms[q.index()]);
    let mut axioms = Vec::new();
    for r in &sys.unary {
        let src_atom = state_atoms[r.src.index()].clone();
        let coord = r.delta.0.iter().position(|x| !x.is_zero());
        match coord {
            None => axioms.push(Axiom {
                head: state(r.dst),
                negated_atoms: vec![src_atom],
            }),
            Some(i) if r.delta.0[i].is_positive() => axioms.push(Axiom {
                head: Formula::tensor(state(r.dst), Formula::atom(&counter_atoms[i])),
                negated_atoms: vec![src_atom],
            }),
            Some(i) => axioms.push(Axiom {
                head: state(r.dst),
                negated_atoms: vec![src_atom, counter_atoms[i].clone()],
            }),
        }
    }
    for r in &sys.fork {
        axioms.push(Axiom {
            head: Formula::plus(state(r.dst1), state(r.dst2)),
            negated_atoms: vec![state_atoms[r.src.index()].clone()],
        });
    }
    for r in &sys.split {
        axioms.push(Axiom {
            head: Formula::par(state(r.dst1), state(r.dst2)),
            negated_atoms: vec![state_atoms[r.src.index()].clone()],
        });
    }
    let theory = Theory { axioms };

    let enc = ThetaEncoding {
        goal: Sequent::one_sided(vec![]),
        pure_goal: Sequent::one_sided(vec![]),
        theory,
        flavor,
        state_atoms,
        counter_atoms,
    };

    let mut goal_fs = vec![Formula::neg_atom(&enc.state_atoms[inst.root_state.index()])];
    let mut root_extra = Vec::new();
    {
        // root vector occurrences, matching θ(q_r, v_r)
        let theta = enc.theta(inst.root_state, &inst.root_vector);
        if let Sequent::OneSided { gamma } = theta {
            root_extra = gamma.iter().cloned().collect();
        }
    }
    goal_fs.clear();
    goal_fs.extend(root_extra);

    let pure_goal;
    let goal;
    match flavor {
        ThetaFlavor::LL => {
            let mut fs = goal_fs.clone();
            for &l in &inst.leaf_states {
                fs.push(Formula::why_not(Formula::atom(&enc.state_atoms[l.index()])));
            }
            goal = Sequent::one_sided(fs.clone());
            let mut pure = fs;
            for ax in &enc.theory.axioms {
                pure.push(Formula::why_not(ax.compiled()));
            }
            pure_goal = Sequent::one_sided(pure);
        }
        ThetaFlavor::LLC => {
            let l = inst.leaf_states[0];
            let mut selector = Formula::Bot;
            for ax in &enc.theory.axioms {
                selector = Formula::plus(selector, ax.compiled());
            }
            let mut fs = goal_fs.clone();
            fs.push(selector);
            fs.push(Formula::atom(&enc.state_atoms[l.index()]));
            goal = Sequent::one_sided(fs.clone());
            pure_goal = goal.clone();
        }
    }

    Ok(ThetaEncoding { goal, pure_goal, ..enc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Instance, Semantics, System};
    use crate::vecs::Delta;

    fn tiny() -> Instance {
        let mut sys = System::new(1);
        let q = sys.add_state("q");
        let q1 = sys.add_state("q1");
        sys.add_unary(q, Delta::from_i64s(&[1]), q1);
        Instance::reachability(sys, Semantics::strict(), q, vec![q1])
    }

    #[test]
    fn axiom_table_for_an_increment() {
        let enc = abvass_to_theory(&tiny(), ThetaFlavor::LL).unwrap();
        assert_eq!(enc.theory.axioms.len(), 1);
        let ax = &enc.theory.axioms[0];
        assert_eq!(
            ax.head,
            Formula::tensor(Formula::atom("q1"), Formula::atom("e1"))
        );
        assert_eq!(ax.negated_atoms, vec!["q".to_string()]);
        assert_eq!(
            ax.compiled(),
            Formula::tensor(
                Formula::par(Formula::neg_atom("q1"), Formula::neg_atom("e1")),
                Formula::atom("q"),
            )
        );
    }

    #[test]
    fn theta_repeats_counter_atoms() {
        let mut sys = System::new(3);
        let q = sys.add_state("q");
        let inst = Instance::reachability(sys, Semantics::strict(), q, vec![q]);
        let enc = abvass_to_theory(&inst, ThetaFlavor::LL).unwrap();
        let seq = enc.theta(q, &CVec::from_u64s(&[2, 0, 1]));
        // ⊢ q⊥, e1⊥, e1⊥, e3⊥
        let expect = Sequent::one_sided(vec![
            Formula::neg_atom("q"),
            Formula::neg_atom("e1"),
            Formula::neg_atom("e1"),
            Formula::neg_atom("e3"),
        ]);
        assert_eq!(seq, expect);
    }

    #[test]
    fn non_ordinary_systems_are_rejected() {
        let mut sys = System::new(2);
        let q = sys.add_state("q");
        sys.add_unary(q, Delta::from_i64s(&[1, -1]), q);
        let inst = Instance::reachability(sys, Semantics::strict(), q, vec![q]);
        assert_eq!(
            abvass_to_theory(&inst, ThetaFlavor::LL).unwrap_err(),
            ThetaError::NotOrdinary
        );
    }

    #[test]
    fn name_sanitization_avoids_collisions() {
        let mut sys = System::new(1);
        let a = sys.add_state("E1");
        let b = sys.add_state("$B.init");
        sys.add_unary(a, Delta::from_i64s(&[0]), b);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![b]);
        let enc = abvass_to_theory(&inst, ThetaFlavor::LL).unwrap();
        assert_eq!(enc.counter_atoms, vec!["e1".to_string()]);
        assert_ne!(enc.state_atoms[0], "e1");
        let mut all: Vec<&String> = enc.state_atoms.iter().chain(enc.counter_atoms.iter()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 3);
    }
}
