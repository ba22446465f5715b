//! Propositional linear logic formulas in negation normal form.
//!
//! Negation is pushed to the atoms by the dualities (A⅋B)⊥ = A⊥⊗B⊥,
//! (A&B)⊥ = A⊥⊕B⊥, ⊥⊥ = 1, ⊤⊥ = 0, (?A)⊥ = !A⊥.  Linear implication is
//! derived sugar: A ⊸ B stands for A⊥ ⅋ B, and the intuitionistic calculi
//! read every ⅋ node through that lens.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(String),
    NegAtom(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    One,
    Bot,
    Top,
    Zero,
    OfCourse(Box<Formula>),
    WhyNot(Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Atom(name.to_string())
    }

    pub fn neg_atom(name: &str) -> Formula {
        NegAtom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Plus(Box::new(a), Box::new(b))
    }

    pub fn of_course(a: Formula) -> Formula {
        OfCourse(Box::new(a))
    }

    pub fn why_not(a: Formula) -> Formula {
        WhyNot(Box::new(a))
    }

    /// A ⊸ B desugars to A⊥ ⅋ B.
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::par(a.dual(), b)
    }

    /// Negation normal form dual; an involution.
    pub fn dual(&self) -> Formula {
        match self {
            Atom(a) => NegAtom(a.clone()),
            NegAtom(a) => Atom(a.clone()),
            Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            With(a, b) => Formula::plus(a.dual(), b.dual()),
            Plus(a, b) => Formula::with(a.dual(), b.dual()),
            One => Bot,
            Bot => One,
            Top => Zero,
            Zero => Top,
            OfCourse(a) => Formula::why_not(a.dual()),
            WhyNot(a) => Formula::of_course(a.dual()),
        }
    }

    pub fn is_why_not(&self) -> bool {
        matches!(self, WhyNot(_))
    }

    pub fn is_of_course(&self) -> bool {
        matches!(self, OfCourse(_))
    }

    /// Connective census for fragment checks: (has additives, has exponentials).
    pub fn uses(&self) -> (bool, bool) {
        match self {
            Atom(_) | NegAtom(_) | One | Bot => (false, false),
            Top | Zero => (true, false),
            With(a, b) | Plus(a, b) => {
                let (_, e1) = a.uses();
                let (_, e2) = b.uses();
                (true, e1 || e2)
            }
            Tensor(a, b) | Par(a, b) => {
                let (x1, e1) = a.uses();
                let (x2, e2) = b.uses();
                (x1 || x2, e1 || e2)
            }
            OfCourse(a) | WhyNot(a) => {
                let (x, _) = a.uses();
                (x, true)
            }
        }
    }
}

/// The intuitionistic reading of a formula: ⅋ nodes are implications.
#[derive(Clone, Debug)]
pub enum IlzView {
    Atom(String),
    /// A ⊸ B, with A recovered as the dual of the stored left component.
    Imp(Formula, Formula),
    Tensor(Formula, Formula),
    Plus(Formula, Formula),
    With(Formula, Formula),
    One,
    Bot,
    Top,
    OfCourse(Formula),
}

/// Views a formula through the ILZ connectives; `None` for anything outside
/// the fragment (dangling negated atoms, ?, 0).
pub fn ilz_view(f: &Formula) -> Option<IlzView> {
    match f {
        Atom(a) => Some(IlzView::Atom(a.clone())),
        Par(a, b) => Some(IlzView::Imp(a.dual(), (**b).clone())),
        Tensor(a, b) => Some(IlzView::Tensor((**a).clone(), (**b).clone())),
        Plus(a, b) => Some(IlzView::Plus((**a).clone(), (**b).clone())),
        With(a, b) => Some(IlzView::With((**a).clone(), (**b).clone())),
        One => Some(IlzView::One),
        Bot => Some(IlzView::Bot),
        Top => Some(IlzView::Top),
        OfCourse(a) => Some(IlzView::OfCourse((**a).clone())),
        NegAtom(_) | Zero | WhyNot(_) => None,
    }
}

/// Whether the formula lies in the ILZ fragment under the ⊸-reading.
pub fn is_ilz(f: &Formula) -> bool {
    match ilz_view(f) {
        None => false,
        Some(IlzView::Atom(_))
        | Some(IlzView::One)
        | Some(IlzView::Bot)
        | Some(IlzView::Top) => true,
        Some(IlzView::Imp(a, b))
        | Some(IlzView::Tensor(a, b))
        | Some(IlzView::Plus(a, b))
        | Some(IlzView::With(a, b)) => is_ilz(&a) && is_ilz(&b),
        Some(IlzView::OfCourse(a)) => is_ilz(&a),
    }
}

fn prec(f: &Formula) -> u8 {
    match f {
        Tensor(..) | Par(..) => 2,
        With(..) | Plus(..) => 1,
        _ => 3,
    }
}

fn fmt_at(f: &Formula, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(f);
    let wrap = p < min_prec;
    if wrap {
        write!(out, "(")?;
    }
    match f {
        Atom(a) => write!(out, "{a}")?,
        NegAtom(a) => write!(out, "~{a}")?,
        One => write!(out, "1")?,
        Bot => write!(out, "bot")?,
        Top => write!(out, "top")?,
        Zero => write!(out, "0")?,
        OfCourse(a) => {
            write!(out, "!")?;
            fmt_at(a, 3, out)?;
        }
        WhyNot(a) => {
            write!(out, "?")?;
            fmt_at(a, 3, out)?;
        }
        Tensor(a, b) => {
            fmt_at(a, p, out)?;
            write!(out, " * ")?;
            fmt_at(b, p + 1, out)?;
        }
        Par(a, b) => {
            fmt_at(a, p, out)?;
            write!(out, " | ")?;
            fmt_at(b, p + 1, out)?;
        }
        With(a, b) => {
            fmt_at(a, p, out)?;
            write!(out, " & ")?;
            fmt_at(b, p + 1, out)?;
        }
        Plus(a, b) => {
            fmt_at(a, p, out)?;
            write!(out, " + ")?;
            fmt_at(b, p + 1, out)?;
        }
    }
    if wrap {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_at(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_pushes_negation_to_atoms() {
        // dual(a ⊗ b) = a⊥ ⅋ b⊥
        let f = Formula::tensor(Formula::atom("a"), Formula::atom("b"));
        assert_eq!(
            f.dual(),
            Formula::par(Formula::neg_atom("a"), Formula::neg_atom("b"))
        );
    }

    #[test]
    fn dual_is_an_involution() {
        let cases = vec![
            Formula::why_not(Formula::atom("a")),
            Formula::imp(Formula::atom("a"), Formula::atom("b")),
            Formula::with(Formula::One, Formula::Top),
        ];
        for f in cases {
            assert_eq!(f.dual().dual(), f);
        }
    }

    #[test]
    fn imp_desugars_to_par() {
        let f = Formula::imp(Formula::atom("a"), Formula::atom("b"));
        assert_eq!(
            f,
            Formula::par(Formula::neg_atom("a"), Formula::atom("b"))
        );
        match ilz_view(&f) {
            Some(IlzView::Imp(a, b)) => {
                assert_eq!(a, Formula::atom("a"));
                assert_eq!(b, Formula::atom("b"));
            }
            other => panic!("expected an implication view, got {other:?}"),
        }
    }

    #[test]
    fn ilz_fragment_membership() {
        assert!(is_ilz(&Formula::imp(
            Formula::of_course(Formula::atom("a")),
            Formula::tensor(Formula::atom("a"), Formula::atom("a")),
        )));
        assert!(!is_ilz(&Formula::why_not(Formula::atom("a"))));
        assert!(!is_ilz(&Formula::Zero));
        assert!(!is_ilz(&Formula::neg_atom("a")));
    }

    #[test]
    fn display_round_trips_structure() {
        let f = Formula::par(
            Formula::tensor(Formula::atom("a"), Formula::neg_atom("b")),
            Formula::plus(Formula::One, Formula::atom("c")),
        );
        assert_eq!(f.to_string(), "a * ~b | (1 + c)");
    }
}
