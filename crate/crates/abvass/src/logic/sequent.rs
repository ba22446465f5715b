//! Sequents, theories, and calculi.

use crate::logic::formula::Formula;
use std::fmt;

/// A multiset of formulas, kept sorted for canonical equality and hashing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Multiset(Vec<Formula>);

impl Multiset {
    pub fn new(mut formulas: Vec<Formula>) -> Self {
        formulas.sort();
        Multiset(formulas)
    }

    pub fn empty() -> Self {
        Multiset(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    /// Distinct formulas, each once.
    pub fn distinct(&self) -> Vec<&Formula> {
        let mut out: Vec<&Formula> = Vec::new();
        for f in &self.0 {
            if out.last().map(|g| *g != f).unwrap_or(true) {
                out.push(f);
            }
        }
        out
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.0.iter().filter(|g| *g == f).count()
    }

    pub fn insert(&self, f: Formula) -> Multiset {
        let mut v = self.0.clone();
        let pos = v.binary_search(&f).unwrap_or_else(|p| p);
        v.insert(pos, f);
        Multiset(v)
    }

    /// Removes one occurrence; `None` when absent.
    pub fn remove(&self, f: &Formula) -> Option<Multiset> {
        let pos = self.0.binary_search(f).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Multiset(v))
    }

    /// Removes one occurrence of each listed formula.
    pub fn remove_all(&self, fs: &[Formula]) -> Option<Multiset> {
        let mut cur = self.clone();
        for f in fs {
            cur = cur.remove(f)?;
        }
        Some(cur)
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Multiset(v)
    }

    /// All ways to pass a sub-multiset to the left premise of a context
    /// split; enumerated positionally for determinism.
    pub fn splits(&self) -> Vec<(Multiset, Multiset)> {
        let n = self.0.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u64..(1u64 << n) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, f) in self.0.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(f.clone());
                } else {
                    right.push(f.clone());
                }
            }
            out.push((Multiset(left), Multiset(right)));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Multiset::new(iter.into_iter().collect())
    }
}

/// One-sided (⊢ Γ) or two-sided (Γ ⊢ A?) sequents; two-sided consequents
/// hold at most one formula.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sequent {
    OneSided {
        gamma: Multiset,
    },
    TwoSided {
        gamma: Multiset,
        consequent: Option<Formula>,
    },
}

impl Sequent {
    pub fn one_sided(formulas: Vec<Formula>) -> Self {
        Sequent::OneSided {
            gamma: Multiset::new(formulas),
        }
    }

    pub fn two_sided(left: Vec<Formula>, consequent: Option<Formula>) -> Self {
        Sequent::TwoSided {
            gamma: Multiset::new(left),
            consequent,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Sequent::OneSided { gamma } => gamma.len(),
            Sequent::TwoSided { gamma, consequent } => {
                gamma.len() + consequent.is_some() as usize
            }
        }
    }

    pub fn is_two_sided(&self) -> bool {
        matches!(self, Sequent::TwoSided { .. })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(fs: &Multiset, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            for (i, x) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            Sequent::OneSided { gamma } => {
                write!(f, "|- ")?;
                list(gamma, f)
            }
            Sequent::TwoSided { gamma, consequent } => {
                list(gamma, f)?;
                write!(f, " |-")?;
                if let Some(c) = consequent {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// A non-logical axiom ⊢ C, p_1⊥, …, p_m⊥ with C a MALL formula and the p_i
/// atomic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub head: Formula,
    pub negated_atoms: Vec<String>,
}

impl Axiom {
    pub fn sequent(&self) -> Sequent {
        let mut fs = vec![self.head.clone()];
        fs.extend(self.negated_atoms.iter().map(|a| Formula::neg_atom(a)));
        Sequent::one_sided(fs)
    }

    /// ⟦C, p_1⊥, …, p_m⊥⟧ = C⊥ ⊗ p_1 ⊗ … ⊗ p_m.
    pub fn compiled(&self) -> Formula {
        let mut out = self.head.dual();
        for a in &self.negated_atoms {
            out = Formula::tensor(out, Formula::atom(a));
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub axioms: Vec<Axiom>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Calculus {
    LL,
    MELL,
    MALL,
    LLW,
    MELLW,
    LLC,
    MALLC,
    Ilz,
    IlzW,
    IlzC,
}

impl Calculus {
    pub fn two_sided(self) -> bool {
        matches!(self, Calculus::Ilz | Calculus::IlzW | Calculus::IlzC)
    }

    pub fn structural_weakening(self) -> bool {
        matches!(
            self,
            Calculus::LLW | Calculus::MELLW | Calculus::IlzW
        )
    }

    pub fn structural_contraction(self) -> bool {
        matches!(self, Calculus::LLC | Calculus::MALLC | Calculus::IlzC)
    }

    pub fn allows_additives(self) -> bool {
        !matches!(self, Calculus::MELL | Calculus::MELLW)
    }

    pub fn allows_exponentials(self) -> bool {
        !matches!(self, Calculus::MALL | Calculus::MALLC)
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::LL => "ll",
            Calculus::MELL => "mell",
            Calculus::MALL => "mall",
            Calculus::LLW => "llw",
            Calculus::MELLW => "mellw",
            Calculus::LLC => "llc",
            Calculus::MALLC => "mallc",
            Calculus::Ilz => "ilz",
            Calculus::IlzW => "ilzw",
            Calculus::IlzC => "ilzc",
        }
    }

    pub fn parse(name: &str) -> Option<Calculus> {
        Some(match name.to_ascii_lowercase().as_str() {
            "ll" => Calculus::LL,
            "mell" => Calculus::MELL,
            "mall" => Calculus::MALL,
            "llw" => Calculus::LLW,
            "mellw" => Calculus::MELLW,
            "llc" => Calculus::LLC,
            "mallc" => Calculus::MALLC,
            "ilz" => Calculus::Ilz,
            "ilzw" => Calculus::IlzW,
            "ilzc" => Calculus::IlzC,
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_equality_ignores_order() {
        let a = Multiset::new(vec![Formula::atom("b"), Formula::atom("a")]);
        let b = Multiset::new(vec![Formula::atom("a"), Formula::atom("b")]);
        assert_eq!(a, b);
        assert_eq!(a.count(&Formula::atom("a")), 1);
    }

    #[test]
    fn splits_cover_all_partitions() {
        let m = Multiset::new(vec![Formula::atom("a"), Formula::atom("a"), Formula::atom("b")]);
        let splits = m.splits();
        // distinct partitions of {a,a,b}: left ∈ {∅,a,b,aa,ab,aab} = 6
        assert_eq!(splits.len(), 6);
        for (l, r) in &splits {
            assert_eq!(l.union(r), m);
        }
    }

    #[test]
    fn compiled_axiom_shape() {
        // rule q --(+e1)--> q1 gives axiom (q1 ⊗ e1, q⊥) and
        // ⟦t⟧ = (q1⊥ ⅋ e1⊥) ⊗ q
        let t = Axiom {
            head: Formula::tensor(Formula::atom("q1"), Formula::atom("e1")),
            negated_atoms: vec!["q".into()],
        };
        assert_eq!(
            t.compiled(),
            Formula::tensor(
                Formula::par(Formula::neg_atom("q1"), Formula::neg_atom("e1")),
                Formula::atom("q"),
            )
        );
    }
}
