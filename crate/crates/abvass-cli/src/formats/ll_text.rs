//! ASCII grammar for linear logic formulas, sequents, and theories.
//!
//! Atoms `[a-z][a-z0-9_]*`; `~A` dual; infix `*` (⊗), `|` (⅋), `&`, `+`
//! (⊕); `-o` (⊸) is right-associative with the lowest precedence; units
//! `1 bot top 0`; prefixes `!` and `?`; parentheses.  Precedence:
//! prefix > {*, |} > {&, +} > -o, binary operators left-associative.
//! Sequents: `G1, G2 |- A` or `|- A, B`.  Theories: one axiom per line,
//! `C ; p1, p2` with the head formula first and the negated atoms after the
//! semicolon.

use abvass::logic::{Axiom, Calculus, Formula, Sequent, Theory};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LlParseError {
    #[error("position {pos}: {msg}")]
    At { pos: usize, msg: String },
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, LlParseError> {
    Err(LlParseError::At {
        pos,
        msg: msg.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    One,
    Zero,
    Bot,
    Top,
    Tilde,
    Bang,
    Quest,
    Star,
    Pipe,
    Amp,
    Plus,
    Lolli,
    Turnstile,
    LParen,
    RParen,
    Comma,
    Semi,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LlParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Tok::Tilde,
            '!' => Tok::Bang,
            '?' => Tok::Quest,
            '*' => Tok::Star,
            '&' => Tok::Amp,
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '1' => Tok::One,
            '0' => Tok::Zero,
            '|' => {
                if bytes.get(i + 1) == Some(&'-') {
                    out.push((i, Tok::Turnstile));
                    i += 2;
                    continue;
                }
                Tok::Pipe
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'o') {
                    out.push((i, Tok::Lolli));
                    i += 2;
                    continue;
                }
                return err(i, "expected -o");
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                let mut name = String::new();
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == '_')
                {
                    name.push(bytes[i]);
                    i += 1;
                }
                let tok = match name.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Atom(name),
                };
                out.push((start, tok));
                continue;
            }
            other => return err(i, format!("unexpected character {other:?}")),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), LlParseError> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {t:?}"))
        }
    }

    // -o, right-associative, lowest precedence
    fn formula(&mut self) -> Result<Formula, LlParseError> {
        let left = self.additive()?;
        if self.peek() == Some(&Tok::Lolli) {
            self.at += 1;
            let right = self.formula()?;
            Ok(Formula::imp(left, right))
        } else {
            Ok(left)
        }
    }

    fn additive(&mut self) -> Result<Formula, LlParseError> {
        let mut f = self.multiplicative()?;
        loop {
            match self.peek() {
                Some(Tok::Amp) => {
                    self.at += 1;
                    f = Formula::with(f, self.multiplicative()?);
                }
                Some(Tok::Plus) => {
                    self.at += 1;
                    f = Formula::plus(f, self.multiplicative()?);
                }
                _ => return Ok(f),
            }
        }
    }

    fn multiplicative(&mut self) -> Result<Formula, LlParseError> {
        let mut f = self.prefix()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    f = Formula::tensor(f, self.prefix()?);
                }
                Some(Tok::Pipe) => {
                    self.at += 1;
                    f = Formula::par(f, self.prefix()?);
                }
                _ => return Ok(f),
            }
        }
    }

    fn prefix(&mut self) -> Result<Formula, LlParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Tilde) => Ok(self.prefix()?.dual()),
            Some(Tok::Bang) => Ok(Formula::of_course(self.prefix()?)),
            Some(Tok::Quest) => Ok(Formula::why_not(self.prefix()?)),
            Some(Tok::Atom(a)) => Ok(Formula::atom(&a)),
            Some(Tok::One) => Ok(Formula::One),
            Some(Tok::Zero) => Ok(Formula::Zero),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            other => err(pos, format!("expected a formula, found {other:?}")),
        }
    }

    fn formula_list(&mut self) -> Result<Vec<Formula>, LlParseError> {
        let mut out = vec![self.formula()?];
        while self.peek() == Some(&Tok::Comma) {
            self.at += 1;
            out.push(self.formula()?);
        }
        Ok(out)
    }
}

/// A parsed `.ll` item: either a bare formula or a raw sequent whose reading
/// (one- or two-sided) is fixed by the calculus that consumes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LlItem {
    Formula(Formula),
    RawSequent {
        left: Vec<Formula>,
        right: Vec<Formula>,
    },
}

pub fn parse_ll(text: &str) -> Result<LlItem, LlParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0 };
    let left = if p.peek() == Some(&Tok::Turnstile) {
        Vec::new()
    } else {
        let fs = p.formula_list()?;
        if p.peek() != Some(&Tok::Turnstile) {
            // a bare formula (exactly one, no turnstile)
            if fs.len() == 1 && p.at == p.toks.len() {
                return Ok(LlItem::Formula(fs.into_iter().next().unwrap()));
            }
            return err(p.pos(), "expected |-");
        }
        fs
    };
    p.expect(Tok::Turnstile)?;
    let right = if p.at == p.toks.len() {
        Vec::new()
    } else {
        p.formula_list()?
    };
    if p.at != p.toks.len() {
        return err(p.pos(), "trailing input");
    }
    Ok(LlItem::RawSequent { left, right })
}

/// Reads a raw sequent for a calculus: one-sided calculi dualize the left
/// side into the right; intuitionistic calculi take at most one consequent.
pub fn sequent_for(item: &LlItem, calc: Calculus) -> Result<Sequent, String> {
    match item {
        LlItem::Formula(f) => Ok(if calc.two_sided() {
            Sequent::two_sided(vec![], Some(f.clone()))
        } else {
            Sequent::one_sided(vec![f.clone()])
        }),
        LlItem::RawSequent { left, right } => {
            if calc.two_sided() {
                if right.len() > 1 {
                    return Err("intuitionistic sequents take at most one consequent".into());
                }
                Ok(Sequent::two_sided(left.clone(), right.first().cloned()))
            } else {
                let mut fs: Vec<Formula> = left.iter().map(|f| f.dual()).collect();
                fs.extend(right.iter().cloned());
                Ok(Sequent::one_sided(fs))
            }
        }
    }
}

/// Theories: one axiom per line, `C ; p1, p2`; the atom list may be empty
/// (`C ;` or just `C`).
pub fn parse_theory(text: &str) -> Result<Theory, LlParseError> {
    let mut axioms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head_text, atoms_text) = match content.split_once(';') {
            Some((h, a)) => (h, a.trim()),
            None => (content, ""),
        };
        let toks = tokenize(head_text).map_err(|e| shift(e, lineno))?;
        let mut p = Parser { toks, at: 0 };
        let head = p.formula().map_err(|e| shift(e, lineno))?;
        if p.at != p.toks.len() {
            return Err(LlParseError::At {
                pos: lineno,
                msg: "trailing input in axiom head".into(),
            });
        }
        let mut negated_atoms = Vec::new();
        if !atoms_text.is_empty() {
            for part in atoms_text.split(',') {
                let name = part.trim();
                if name.is_empty()
                    || !name
                        .chars()
                        .next()
                        .map(|c| c.is_ascii_lowercase())
                        .unwrap_or(false)
                    || !name
                        .chars()
                        .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
                {
                    return Err(LlParseError::At {
                        pos: lineno,
                        msg: format!("bad atom {name:?} in axiom"),
                    });
                }
                negated_atoms.push(name.to_string());
            }
        }
        axioms.push(Axiom {
            head,
            negated_atoms,
        });
    }
    Ok(Theory { axioms })
}

fn shift(e: LlParseError, line: usize) -> LlParseError {
    match e {
        LlParseError::At { pos, msg } => LlParseError::At {
            pos,
            msg: format!("line {}: {msg}", line + 1),
        },
    }
}

pub fn serialize_theory(t: &Theory) -> String {
    let mut out = String::new();
    for ax in &t.axioms {
        out.push_str(&ax.head.to_string());
        if !ax.negated_atoms.is_empty() {
            out.push_str(" ; ");
            out.push_str(&ax.negated_atoms.join(", "));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_sequent(s: &Sequent) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bang_imp_parses_with_subformulas() {
        let item = parse_ll("!a -o (a * a)").unwrap();
        let f = match item {
            LlItem::Formula(f) => f,
            other => panic!("{other:?}"),
        };
        let (_, bang) = abvass::logic::subformulas(&f).unwrap();
        assert_eq!(bang, vec![Formula::of_course(Formula::atom("a"))]);
    }

    #[test]
    fn one_sided_sequent() {
        let item = parse_ll("|- ~q0, ?ql").unwrap();
        match &item {
            LlItem::RawSequent { left, right } => {
                assert!(left.is_empty());
                assert_eq!(right.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        let seq = sequent_for(&item, Calculus::LL).unwrap();
        assert_eq!(
            seq,
            Sequent::one_sided(vec![
                Formula::neg_atom("q0"),
                Formula::why_not(Formula::atom("ql")),
            ])
        );
    }

    #[test]
    fn lolli_desugars() {
        let a = parse_ll("a -o a").unwrap();
        let b = parse_ll("~a | a").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn precedence_and_associativity() {
        // prefix > {*,|} > {&,+} > -o; -o right-assoc
        let f = match parse_ll("!a * b & c -o d -o e").unwrap() {
            LlItem::Formula(f) => f,
            _ => unreachable!(),
        };
        let expect = Formula::imp(
            Formula::with(
                Formula::tensor(Formula::of_course(Formula::atom("a")), Formula::atom("b")),
                Formula::atom("c"),
            ),
            Formula::imp(Formula::atom("d"), Formula::atom("e")),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn display_parse_round_trip() {
        for text in ["a * ~b | (1 + c)", "!(a & top) -o ?b", "(a -o b) * 0"] {
            let f = match parse_ll(text).unwrap() {
                LlItem::Formula(f) => f,
                _ => unreachable!(),
            };
            let printed = f.to_string();
            let again = match parse_ll(&printed).unwrap() {
                LlItem::Formula(f) => f,
                _ => unreachable!(),
            };
            assert_eq!(f, again, "through {printed}");
        }
    }

    #[test]
    fn theory_lines() {
        let t = parse_theory("q1 * e1 ; q\nq1 ; q, e1\n").unwrap();
        assert_eq!(t.axioms.len(), 2);
        assert_eq!(t.axioms[0].negated_atoms, vec!["q"]);
        assert_eq!(t.axioms[1].negated_atoms, vec!["q", "e1"]);
        let rt = parse_theory(&serialize_theory(&t)).unwrap();
        assert_eq!(rt, t);
    }

    #[test]
    fn two_sided_reading() {
        let item = parse_ll("a, b |- c").unwrap();
        let seq = sequent_for(&item, Calculus::Ilz).unwrap();
        assert_eq!(
            seq,
            Sequent::two_sided(
                vec![Formula::atom("a"), Formula::atom("b")],
                Some(Formula::atom("c"))
            )
        );
        // classically the left side dualizes
        let seq = sequent_for(&item, Calculus::LL).unwrap();
        assert_eq!(
            seq,
            Sequent::one_sided(vec![
                Formula::neg_atom("a"),
                Formula::neg_atom("b"),
                Formula::atom("c"),
            ])
        );
    }
}
