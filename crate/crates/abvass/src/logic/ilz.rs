//! From intuitionistic provability to counter-system reachability.
//!
//! A formula F yields a system of dimension |S| (S the subformulas of F in
//! the implicational reading) whose states carry the set of stored !-guarded
//! subformulas and the current consequent.  A configuration encodes the
//! sequent !Ψ, Δ ⊢ A as (support(!Ψ), A, Δ), with Δ living in the counters.
//! Strict reachability of the translation matches ILZ provability; allowing
//! losses matches the affine calculus and allowing expansions the
//! contractive one.

use crate::logic::formula::{ilz_view, is_ilz, Formula, IlzView};
use crate::logic::sequent::Calculus;
use crate::system::{Instance, Semantics, StateId, System};
use crate::vecs::{Delta, Int};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("formula outside the ILZ fragment: {0}")]
    NotIlz(String),
    #[error("calculus {0} is not an intuitionistic calculus")]
    NotIntuitionistic(&'static str),
    #[error("store space too large: {0} !-guarded subformulas")]
    StoreTooLarge(usize),
    #[error("translated system exceeds the state guard ({0} states)")]
    TooManyStates(usize),
}

/// The subformulas of `f` under the implicational reading, and the
/// !-guarded ones among them.
pub fn subformulas(f: &Formula) -> Result<(Vec<Formula>, Vec<Formula>), TranslateError> {
    fn walk(f: &Formula, out: &mut BTreeSet<Formula>) -> Result<(), TranslateError> {
        if !out.insert(f.clone()) {
            return Ok(());
        }
        match ilz_view(f) {
            Some(IlzView::Imp(a, b))
            | Some(IlzView::Tensor(a, b))
            | Some(IlzView::Plus(a, b))
            | Some(IlzView::With(a, b)) => {
                walk(&a, out)?;
                walk(&b, out)
            }
            Some(IlzView::OfCourse(a)) => walk(&a, out),
            Some(_) => Ok(()),
            None => Err(TranslateError::NotIlz(f.to_string())),
        }
    }
    let mut set = BTreeSet::new();
    walk(f, &mut set)?;
    let s: Vec<Formula> = set.into_iter().collect();
    let bang = s.iter().filter(|x| x.is_of_course()).cloned().collect();
    Ok((s, bang))
}

/// The translated instance plus the coordinate legend.
#[derive(Clone, Debug)]
pub struct IlzTranslation {
    pub instance: Instance,
    /// coordinate i counts occurrences of `subformulas[i]`
    pub subformulas: Vec<Formula>,
    /// indices into `subformulas` of the !-guarded ones, in store-bit order
    pub bang_indices: Vec<usize>,
}

type LState = (u32, Option<usize>); // (store mask, consequent index or ".")

struct Builder {
    sys: System,
    s: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
    bangs: Vec<usize>,       // S-index per store bit
    bang_bit: BTreeMap<usize, usize>, // S-index -> bit
    leaf: StateId,
    logical: BTreeMap<LState, StateId>,
    queue: VecDeque<LState>,
}

const STATE_GUARD: usize = 50_000;

impl Builder {
    fn unit(&self, i: usize, sign: i64) -> Delta {
        Delta::unit(self.s.len(), i, sign)
    }

    fn logical_state(&mut self, key: LState) -> StateId {
        if let Some(&id) = self.logical.get(&key) {
            return id;
        }
        let cons = match key.1 {
            Some(i) => i.to_string(),
            None => "dot".into(),
        };
        let id = self.sys.add_state(&format!("$s{}.{}", key.0, cons));
        self.logical.insert(key, id);
        self.queue.push_back(key);
        id
    }

    fn idx(&self, f: &Formula) -> usize {
        self.index[f]
    }

    /// All (q, q') with q ∪ q' = mask.
    fn cover_pairs(mask: u32) -> Vec<(u32, u32)> {
        let mut out = BTreeSet::new();
        let mut a = mask;
        loop {
            // a ranges over submasks of mask
            let mut r = a;
            loop {
                // r ⊆ a joins the complement on the right
                out.insert((a, (mask & !a) | r));
                if r == 0 {
                    break;
                }
                r = (r - 1) & a;
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & mask;
        }
        out.into_iter().collect()
    }

    #[allow(clippy::too_many_lines)]
    fn emit(&mut self, key: LState) -> Result<(), TranslateError> {
        let (mask, cons) = key;
        let src = self.logical_state(key);
        let dim = self.s.len();

        // store: move a !A occurrence from the counters into the state set
        for (bit, &i_bang) in self.bangs.clone().iter().enumerate() {
            let dst = self.logical_state((mask | (1 << bit), cons));
            self.sys.add_unary(src, self.unit(i_bang, -1), dst);
        }
        // !D: use a stored !A, keeping or dropping it
        for (bit, &i_bang) in self.bangs.clone().iter().enumerate() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let body = match &self.s[i_bang] {
                Formula::OfCourse(a) => (**a).clone(),
                _ => unreachable!("bang indices are !-guarded"),
            };
            let i_body = self.idx(&body);
            let keep = self.logical_state((mask, cons));
            self.sys.add_unary(src, self.unit(i_body, 1), keep);
            let drop = self.logical_state((mask & !(1 << bit), cons));
            self.sys.add_unary(src, self.unit(i_body, 1), drop);
        }
        // !W: forget a stored !A
        for bit in 0..self.bangs.len() {
            if mask & (1 << bit) == 0 {
                continue;
            }
            let dst = self.logical_state((mask & !(1 << bit), cons));
            self.sys.add_unary(src, Delta::zeros(dim), dst);
        }

        // left rules, applicable under any consequent
        for i in 0..dim {
            let f = self.s[i].clone();
            match ilz_view(&f).expect("S contains ILZ formulas only") {
                IlzView::Imp(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let cons_name = match cons {
                        Some(c) => c.to_string(),
                        None => "dot".into(),
                    };
                    let t1 = self
                        .sys
                        .add_state(&format!("$limp.{i}.{mask}.{cons_name}"));
                    self.sys.add_unary(src, self.unit(i, -1), t1);
                    for (q, qp) in Self::cover_pairs(mask) {
                        let left = self.logical_state((q, Some(i_a)));
                        let t2 = self.sys.add_state(&format!("$limpb.{i}.{qp}.{cons_name}"));
                        self.sys.add_split(t1, left, t2);
                        let dst = self.logical_state((qp, cons));
                        self.sys.add_unary(t2, self.unit(i_b, 1), dst);
                    }
                }
                IlzView::Tensor(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let cons_name = match cons {
                        Some(c) => c.to_string(),
                        None => "dot".into(),
                    };
                    let t = self
                        .sys
                        .add_state(&format!("$lten.{i}.{mask}.{cons_name}"));
                    self.sys.add_unary(src, self.unit(i, -1), t);
                    let mut d = vec![Int::zero(); dim];
                    d[i_a] += 1;
                    d[i_b] += 1;
                    self.sys.add_unary(t, Delta(d), src);
                }
                IlzView::Plus(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let cons_name = match cons {
                        Some(c) => c.to_string(),
                        None => "dot".into(),
                    };
                    let t1 = self
                        .sys
                        .add_state(&format!("$lplus.{i}.{mask}.{cons_name}"));
                    let t2a = self
                        .sys
                        .add_state(&format!("$lplusa.{i}.{mask}.{cons_name}"));
                    let t2b = self
                        .sys
                        .add_state(&format!("$lplusb.{i}.{mask}.{cons_name}"));
                    self.sys.add_unary(src, self.unit(i, -1), t1);
                    self.sys.add_fork(t1, t2a, t2b);
                    self.sys.add_unary(t2a, self.unit(i_a, 1), src);
                    self.sys.add_unary(t2b, self.unit(i_b, 1), src);
                }
                IlzView::With(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let cons_name = match cons {
                        Some(c) => c.to_string(),
                        None => "dot".into(),
                    };
                    let t = self
                        .sys
                        .add_state(&format!("$lwith.{i}.{mask}.{cons_name}"));
                    self.sys.add_unary(src, self.unit(i, -1), t);
                    self.sys.add_unary(t, self.unit(i_a, 1), src);
                    self.sys.add_unary(t, self.unit(i_b, 1), src);
                }
                IlzView::One => {
                    // L1 consumes a unit occurrence
                    self.sys.add_unary(src, self.unit(i, -1), src);
                }
                IlzView::Bot => {
                    if cons.is_none() {
                        self.sys.add_unary(src, self.unit(i, -1), self.leaf);
                    }
                }
                IlzView::Atom(_) | IlzView::Top | IlzView::OfCourse(_) => {}
            }
        }

        // init and right rules
        if let Some(i_c) = cons {
            let f = self.s[i_c].clone();
            let is_bang = f.is_of_course();
            if !is_bang && mask == 0 {
                self.sys.add_unary(src, self.unit(i_c, -1), self.leaf);
            }
            if is_bang {
                let bit = self.bang_bit[&i_c];
                if mask == (1 << bit) {
                    self.sys.add_unary(src, Delta::zeros(dim), self.leaf);
                }
            }
            match ilz_view(&f).expect("ILZ formula") {
                IlzView::Imp(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let dst = self.logical_state((mask, Some(i_b)));
                    self.sys.add_unary(src, self.unit(i_a, 1), dst);
                }
                IlzView::Tensor(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    for (q, qp) in Self::cover_pairs(mask) {
                        let left = self.logical_state((q, Some(i_a)));
                        let right = self.logical_state((qp, Some(i_b)));
                        self.sys.add_split(src, left, right);
                    }
                }
                IlzView::Plus(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let da = self.logical_state((mask, Some(i_a)));
                    self.sys.add_unary(src, Delta::zeros(dim), da);
                    let db = self.logical_state((mask, Some(i_b)));
                    self.sys.add_unary(src, Delta::zeros(dim), db);
                }
                IlzView::With(a, b) => {
                    let (i_a, i_b) = (self.idx(&a), self.idx(&b));
                    let da = self.logical_state((mask, Some(i_a)));
                    let db = self.logical_state((mask, Some(i_b)));
                    self.sys.add_fork(src, da, db);
                }
                IlzView::Bot => {
                    let dst = self.logical_state((mask, None));
                    self.sys.add_unary(src, Delta::zeros(dim), dst);
                }
                IlzView::One => {
                    if mask == 0 {
                        self.sys.add_unary(src, Delta::zeros(dim), self.leaf);
                    }
                }
                IlzView::Top => {
                    let t = self.sys.add_state(&format!("$rtop.{mask}"));
                    self.sys.add_unary(src, Delta::zeros(dim), t);
                    for (j, g) in self.s.clone().iter().enumerate() {
                        if !g.is_of_course() {
                            self.sys.add_unary(t, self.unit(j, -1), t);
                        }
                    }
                    self.sys.add_unary(t, Delta::zeros(dim), self.leaf);
                }
                IlzView::OfCourse(a) => {
                    let i_a = self.idx(&a);
                    let dst = self.logical_state((mask, Some(i_a)));
                    self.sys.add_zero(src, dst);
                }
                IlzView::Atom(_) => {}
            }
        }
        if self.sys.num_states() > STATE_GUARD {
            return Err(TranslateError::TooManyStates(self.sys.num_states()));
        }
        Ok(())
    }
}

/// Builds the reachability instance of a formula under the given
/// intuitionistic calculus: strict semantics for ILZ, lossy for the affine
/// variant, expansive for the contractive one.  States are materialized
/// lazily (only the part reachable from the root); `full` forces the whole
/// 2^{S_!} × (S ⊎ {.}) space and is gated at |S_!| ≤ 10.
pub fn ilz_to_abvass(
    f: &Formula,
    calc: Calculus,
    full: bool,
) -> Result<IlzTranslation, TranslateError> {
    let semantics = match calc {
        Calculus::Ilz => Semantics::strict(),
        Calculus::IlzW => Semantics::lossy(),
        Calculus::IlzC => Semantics::expansive(),
        other => return Err(TranslateError::NotIntuitionistic(other.name())),
    };
    if !is_ilz(f) {
        return Err(TranslateError::NotIlz(f.to_string()));
    }
    let (s, bang_formulas) = subformulas(f)?;
    if bang_formulas.len() > if full { 10 } else { 30 } {
        return Err(TranslateError::StoreTooLarge(bang_formulas.len()));
    }
    let index: BTreeMap<Formula, usize> =
        s.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    let bangs: Vec<usize> = bang_formulas.iter().map(|g| index[g]).collect();
    let bang_bit: BTreeMap<usize, usize> =
        bangs.iter().enumerate().map(|(bit, &i)| (i, bit)).collect();

    let mut sys = System::new(s.len());
    let leaf = sys.add_state("$leaf");
    let mut b = Builder {
        sys,
        s: s.clone(),
        index,
        bangs: bangs.clone(),
        bang_bit,
        leaf,
        logical: BTreeMap::new(),
        queue: VecDeque::new(),
    };

    let root_key: LState = (0, Some(b.idx(f)));
    let root = b.logical_state(root_key);
    if full {
        for mask in 0u32..(1 << bangs.len()) {
            for c in (0..s.len()).map(Some).chain([None]) {
                b.logical_state((mask, c));
            }
        }
    }
    let mut emitted = BTreeSet::new();
    while let Some(key) = b.queue.pop_front() {
        if emitted.insert(key) {
            b.emit(key)?;
        }
    }

    let instance = Instance::reachability(b.sys, semantics, root, vec![leaf]);
    Ok(IlzTranslation {
        instance,
        subformulas: s,
        bang_indices: bangs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subformula_sets() {
        // !a ⊸ b: S ⊇ {!a ⊸ b, !a, a, b}, S_! = {!a}
        let f = Formula::imp(
            Formula::of_course(Formula::atom("a")),
            Formula::atom("b"),
        );
        let (s, bang) = subformulas(&f).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&Formula::atom("a")));
        assert!(s.contains(&Formula::atom("b")));
        assert!(s.contains(&Formula::of_course(Formula::atom("a"))));
        assert_eq!(bang, vec![Formula::of_course(Formula::atom("a"))]);

        let (s, bang) = subformulas(&Formula::atom("a")).unwrap();
        assert_eq!(s, vec![Formula::atom("a")]);
        assert!(bang.is_empty());

        // !(a & 1): S_! = {!(a & 1)}
        let f = Formula::of_course(Formula::with(Formula::atom("a"), Formula::One));
        let (_, bang) = subformulas(&f).unwrap();
        assert_eq!(bang, vec![f]);
    }

    #[test]
    fn translation_dimension_is_subformula_count() {
        let f = Formula::imp(Formula::atom("a"), Formula::atom("a"));
        let t = ilz_to_abvass(&f, Calculus::Ilz, false).unwrap();
        // S = {a ⊸ a, a}
        assert_eq!(t.instance.system.dim, 2);
        assert!(crate::system::validate_instance(&t.instance).ok());
    }

    #[test]
    fn lazy_states_are_a_subset_of_full() {
        let f = Formula::imp(
            Formula::of_course(Formula::atom("a")),
            Formula::tensor(Formula::atom("a"), Formula::atom("a")),
        );
        let lazy = ilz_to_abvass(&f, Calculus::Ilz, false).unwrap();
        let full = ilz_to_abvass(&f, Calculus::Ilz, true).unwrap();
        assert!(lazy.instance.system.num_states() <= full.instance.system.num_states());
    }

    #[test]
    fn non_ilz_inputs_are_rejected() {
        let f = Formula::why_not(Formula::atom("a"));
        assert!(matches!(
            ilz_to_abvass(&f, Calculus::Ilz, false),
            Err(TranslateError::NotIlz(_))
        ));
        let f = Formula::atom("a");
        assert!(ilz_to_abvass(&f, Calculus::MALL, false).is_err());
    }
}
