//! The `.abvass` line-oriented instance format.
//!
//! Directives: `dim N`, `state id+`, `unary q q' z1..zd`, `fork q q1 q2`,
//! `split q q1 q2`, `zerotest q q1`, `root q`, `rootvec n1..nd`, `leaf q+`,
//! `leafcond zero|any`, `semantics strict|lossy|expansive|increasing`.
//! `#` starts a comment; tokens are whitespace-separated.  Views produced by
//! the reduction passes need three optional extension directives:
//! `zeroread test|reset|jump`, `forkread fork|meet`, `rootcond exact|any`,
//! and `pseudo yes|no` for the pseudo-increasing reading.  The serializer
//! emits them only when they differ from the semantics defaults, so plain
//! instances round-trip through the plain grammar.

use abvass::system::{
    ForkReading, Instance, LeafCondition, RootCondition, Semantics, SemanticsMode, StateId,
    System, ZeroReading,
};
use abvass::vecs::{CVec, Delta, Int, Nat};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("{0}")]
    Global(String),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::At {
        line,
        msg: msg.into(),
    })
}

pub fn parse_abvass(text: &str) -> Result<Instance, ParseError> {
    let mut dim: Option<usize> = None;
    let mut sys = System::new(0);
    let mut declared: BTreeSet<String> = BTreeSet::new();
    let mut root: Option<String> = None;
    let mut root_vector: Option<CVec> = None;
    let mut leaf: Vec<String> = Vec::new();
    let mut leaf_condition = LeafCondition::ZeroVector;
    let mut root_condition = RootCondition::ExactVector;
    let mut mode = SemanticsMode::Strict;
    let mut zero_reading: Option<ZeroReading> = None;
    let mut fork_reading = ForkReading::Duplicate;
    let mut pseudo = false;
    // rules are collected first; the system is assembled once dim is known
    struct Pending {
        line: usize,
        kind: &'static str,
        args: Vec<String>,
    }
    let mut rules: Vec<Pending> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let args: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
        match tokens[0] {
            "dim" => {
                if args.len() != 1 {
                    return err(line, "dim takes one number");
                }
                match args[0].parse::<usize>() {
                    Ok(n) => dim = Some(n),
                    Err(_) => return err(line, format!("bad dimension {}", args[0])),
                }
            }
            "state" => {
                for name in &args {
                    declared.insert(name.clone());
                }
            }
            kind @ ("unary" | "fork" | "split" | "zerotest") => rules.push(Pending {
                line,
                kind: match kind {
                    "unary" => "unary",
                    "fork" => "fork",
                    "split" => "split",
                    _ => "zerotest",
                },
                args,
            }),
            "root" => {
                if args.len() != 1 {
                    return err(line, "root takes one state");
                }
                root = Some(args[0].clone());
            }
            "rootvec" => {
                let mut v = Vec::new();
                for a in &args {
                    match Nat::from_str(a) {
                        Ok(n) => v.push(n),
                        Err(_) => return err(line, format!("bad natural {a}")),
                    }
                }
                root_vector = Some(CVec(v));
            }
            "leaf" => leaf.extend(args.iter().cloned()),
            "leafcond" => match args.as_slice() {
                [w] if w == "zero" => leaf_condition = LeafCondition::ZeroVector,
                [w] if w == "any" => leaf_condition = LeafCondition::AnyVector,
                _ => return err(line, "leafcond is zero or any"),
            },
            "rootcond" => match args.as_slice() {
                [w] if w == "exact" => root_condition = RootCondition::ExactVector,
                [w] if w == "any" => root_condition = RootCondition::AnyVector,
                _ => return err(line, "rootcond is exact or any"),
            },
            "semantics" => match args.as_slice() {
                [w] if w == "strict" => mode = SemanticsMode::Strict,
                [w] if w == "lossy" => mode = SemanticsMode::Lossy,
                [w] if w == "expansive" => mode = SemanticsMode::Expansive,
                [w] if w == "increasing" => mode = SemanticsMode::Increasing,
                _ => return err(line, "semantics is strict, lossy, expansive, or increasing"),
            },
            "zeroread" => match args.as_slice() {
                [w] if w == "test" => zero_reading = Some(ZeroReading::Test),
                [w] if w == "reset" => zero_reading = Some(ZeroReading::Reset),
                [w] if w == "jump" => zero_reading = Some(ZeroReading::Jump),
                _ => return err(line, "zeroread is test, reset, or jump"),
            },
            "forkread" => match args.as_slice() {
                [w] if w == "fork" => fork_reading = ForkReading::Duplicate,
                [w] if w == "meet" => fork_reading = ForkReading::Meet,
                _ => return err(line, "forkread is fork or meet"),
            },
            "pseudo" => match args.as_slice() {
                [w] if w == "yes" => pseudo = true,
                [w] if w == "no" => pseudo = false,
                _ => return err(line, "pseudo is yes or no"),
            },
            other => return err(line, format!("unknown directive {other}")),
        }
    }

    let dim = match dim {
        Some(d) => d,
        None => return Err(ParseError::Global("missing dim directive".into())),
    };
    sys.dim = dim;
    // deterministic state numbering: declaration set is sorted
    for name in &declared {
        sys.add_state(name);
    }
    let lookup = |sys: &System, line: usize, name: &str| -> Result<StateId, ParseError> {
        match sys.state(name) {
            Some(id) => Ok(id),
            None => err(line, format!("unknown state {name}")),
        }
    };
    for p in rules {
        match p.kind {
            "unary" => {
                if p.args.len() != 2 + dim {
                    return err(
                        p.line,
                        format!("expected {} entries after the two states", dim),
                    );
                }
                let src = lookup(&sys, p.line, &p.args[0])?;
                let dst = lookup(&sys, p.line, &p.args[1])?;
                let mut delta = Vec::with_capacity(dim);
                for a in &p.args[2..] {
                    match Int::from_str(a) {
                        Ok(n) => delta.push(n),
                        Err(_) => return err(p.line, format!("bad integer {a}")),
                    }
                }
                sys.add_unary(src, Delta(delta), dst);
            }
            "fork" | "split" => {
                if p.args.len() != 3 {
                    return err(p.line, "expected three states");
                }
                let src = lookup(&sys, p.line, &p.args[0])?;
                let d1 = lookup(&sys, p.line, &p.args[1])?;
                let d2 = lookup(&sys, p.line, &p.args[2])?;
                if p.kind == "fork" {
                    sys.add_fork(src, d1, d2);
                } else {
                    sys.add_split(src, d1, d2);
                }
            }
            _ => {
                if p.args.len() != 2 {
                    return err(p.line, "expected two states");
                }
                let src = lookup(&sys, p.line, &p.args[0])?;
                let dst = lookup(&sys, p.line, &p.args[1])?;
                sys.add_zero(src, dst);
            }
        }
    }

    let root_name = root.ok_or_else(|| ParseError::Global("missing root directive".into()))?;
    let root_state = sys
        .state(&root_name)
        .ok_or_else(|| ParseError::Global(format!("unknown root state {root_name}")))?;
    let mut leaf_states = Vec::new();
    for name in &leaf {
        leaf_states.push(
            sys.state(name)
                .ok_or_else(|| ParseError::Global(format!("unknown leaf state {name}")))?,
        );
    }
    leaf_states.sort();
    leaf_states.dedup();
    let root_vector = match root_vector {
        Some(v) => {
            if v.dim() != dim {
                return Err(ParseError::Global(format!(
                    "rootvec has {} entries, expected {dim}",
                    v.dim()
                )));
            }
            v
        }
        None => CVec::zeros(dim),
    };
    let mut semantics = Semantics::from_mode(mode);
    if let Some(zr) = zero_reading {
        semantics.zero_reading = zr;
    }
    semantics.fork_reading = fork_reading;
    semantics.pseudo = pseudo;

    Ok(Instance {
        system: sys,
        semantics,
        root_state,
        root_vector,
        root_condition,
        leaf_states,
        leaf_condition,
    })
}

/// Canonical serialization: states and rules sorted, extension directives
/// only when they differ from the defaults of the semantics mode.
pub fn serialize_abvass(inst: &Instance) -> String {
    let sys = &inst.system;
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", sys.dim);
    let mut names: Vec<&str> = sys.state_ids().map(|q| sys.state_name(q)).collect();
    names.sort();
    if !names.is_empty() {
        let _ = writeln!(out, "state {}", names.join(" "));
    }
    let mut unary: Vec<String> = sys
        .unary
        .iter()
        .map(|r| {
            let entries: Vec<String> = r.delta.0.iter().map(|x| x.to_string()).collect();
            format!(
                "unary {} {} {}",
                sys.state_name(r.src),
                sys.state_name(r.dst),
                entries.join(" ")
            )
            .trim_end()
            .to_string()
        })
        .collect();
    unary.sort();
    let mut branch: Vec<String> = sys
        .fork
        .iter()
        .map(|r| {
            format!(
                "fork {} {} {}",
                sys.state_name(r.src),
                sys.state_name(r.dst1),
                sys.state_name(r.dst2)
            )
        })
        .chain(sys.split.iter().map(|r| {
            format!(
                "split {} {} {}",
                sys.state_name(r.src),
                sys.state_name(r.dst1),
                sys.state_name(r.dst2)
            )
        }))
        .chain(sys.zero.iter().map(|r| {
            format!(
                "zerotest {} {}",
                sys.state_name(r.src),
                sys.state_name(r.dst)
            )
        }))
        .collect();
    branch.sort();
    for l in unary.into_iter().chain(branch) {
        let _ = writeln!(out, "{l}");
    }
    let _ = writeln!(out, "root {}", sys.state_name(inst.root_state));
    if !inst.root_vector.is_zero() {
        let entries: Vec<String> = inst.root_vector.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "rootvec {}", entries.join(" "));
    }
    let mut leaves: Vec<&str> = inst
        .leaf_states
        .iter()
        .map(|&q| sys.state_name(q))
        .collect();
    leaves.sort();
    if !leaves.is_empty() {
        let _ = writeln!(out, "leaf {}", leaves.join(" "));
    }
    let _ = writeln!(
        out,
        "leafcond {}",
        match inst.leaf_condition {
            LeafCondition::ZeroVector => "zero",
            LeafCondition::AnyVector => "any",
        }
    );
    let mode_word = match inst.semantics.mode {
        SemanticsMode::Strict => "strict",
        SemanticsMode::Lossy => "lossy",
        SemanticsMode::Expansive => "expansive",
        SemanticsMode::Increasing => "increasing",
    };
    let _ = writeln!(out, "semantics {mode_word}");
    let defaults = Semantics::from_mode(inst.semantics.mode);
    if inst.semantics.zero_reading != defaults.zero_reading {
        let w = match inst.semantics.zero_reading {
            ZeroReading::Test => "test",
            ZeroReading::Reset => "reset",
            ZeroReading::Jump => "jump",
        };
        let _ = writeln!(out, "zeroread {w}");
    }
    if inst.semantics.fork_reading == ForkReading::Meet {
        let _ = writeln!(out, "forkread meet");
    }
    if inst.root_condition == RootCondition::AnyVector {
        let _ = writeln!(out, "rootcond any");
    }
    if inst.semantics.pseudo {
        let _ = writeln!(out, "pseudo yes");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use abvass::gadgets::{gen_example_bvass, gen_tower_bvass};

    const EXAMPLE: &str = "\
dim 3
state q0 q1 q2 q3 q4
unary q0 q1 0 1 0
unary q1 q1 0 -1 2
unary q1 q2 0 0 0
unary q2 q2 0 1 -1
unary q3 q0 0 0 0
unary q3 q4 -1 -2 0
split q2 q3 q3
root q0
leaf q4
leafcond any
semantics lossy
";

    #[test]
    fn twelve_line_example_parses() {
        let inst = parse_abvass(EXAMPLE).unwrap();
        assert_eq!(inst.system.num_states(), 5);
        assert_eq!(inst.system.dim, 3);
        assert_eq!(inst.system.unary.len(), 6);
        assert_eq!(inst.system.split.len(), 1);
        // matches the generated gadget after canonicalization
        let g = gen_example_bvass();
        assert_eq!(serialize_abvass(&inst), serialize_abvass(&g.instance));
    }

    #[test]
    fn wrong_entry_count_is_a_line_error() {
        let text = "dim 3\nstate q0 q1\nunary q0 q1 0 1\nroot q0\nleaf q1\n";
        match parse_abvass(text) {
            Err(ParseError::At { line: 3, msg }) => assert!(msg.contains("expected 3")),
            other => panic!("expected a line-3 error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_state_is_reported() {
        let text = "dim 1\nstate q0\nunary q0 qX 1\nroot q0\nleaf q0\n";
        match parse_abvass(text) {
            Err(ParseError::At { msg, .. }) => assert!(msg.contains("unknown state qX")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip_is_canonical() {
        let g = gen_tower_bvass(2).unwrap();
        let once = serialize_abvass(&g.instance);
        let reparsed = parse_abvass(&once).unwrap();
        assert_eq!(serialize_abvass(&reparsed), once);
    }

    #[test]
    fn extension_directives_round_trip() {
        let g = gen_example_bvass();
        let red = abvass::reduce::coverability_view(&g.instance).unwrap();
        let text = serialize_abvass(&red.instance);
        assert!(text.contains("zeroread reset") || red.instance.system.zero.is_empty());
        let reparsed = parse_abvass(&text).unwrap();
        assert_eq!(reparsed.semantics, red.instance.semantics);
        assert_eq!(serialize_abvass(&reparsed), text);
    }
}
