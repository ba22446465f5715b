//! The `.mm` Minsky machine format: line-oriented, `#` comments.
//!
//! Directives: `state id+`, `counter id+`, `inc q c q1`, `dec q c q1`,
//! `zero q c q1`, `start q`, `halt q`.

use abvass::gadgets::{MStateId, MinskyMachine, MinskyRule};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MmParseError {
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
    #[error("{0}")]
    Global(String),
}

#[derive(Clone, Debug)]
pub struct MinskyFile {
    pub machine: MinskyMachine,
    pub start: MStateId,
    pub halt: MStateId,
}

pub fn parse_minsky(text: &str) -> Result<MinskyFile, MmParseError> {
    let mut m = MinskyMachine::new();
    let mut start: Option<String> = None;
    let mut halt: Option<String> = None;
    let fail = |line: usize, msg: String| MmParseError::At { line, msg };
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "state" => {
                for t in &toks[1..] {
                    m.add_state(t);
                }
            }
            "counter" => {
                for t in &toks[1..] {
                    m.add_counter(t);
                }
            }
            kind @ ("inc" | "dec" | "zero") => {
                if toks.len() != 4 {
                    return Err(fail(line, format!("{kind} takes state counter state")));
                }
                let src = m
                    .state(toks[1])
                    .ok_or_else(|| fail(line, format!("unknown state {}", toks[1])))?;
                let counter = m
                    .counter(toks[2])
                    .ok_or_else(|| fail(line, format!("unknown counter {}", toks[2])))?;
                let dst = m
                    .state(toks[3])
                    .ok_or_else(|| fail(line, format!("unknown state {}", toks[3])))?;
                m.rules.push(match kind {
                    "inc" => MinskyRule::Inc { src, counter, dst },
                    "dec" => MinskyRule::Dec { src, counter, dst },
                    _ => MinskyRule::Zero { src, counter, dst },
                });
            }
            "start" => start = Some(toks.get(1).map(|s| s.to_string()).unwrap_or_default()),
            "halt" => halt = Some(toks.get(1).map(|s| s.to_string()).unwrap_or_default()),
            other => return Err(fail(line, format!("unknown directive {other}"))),
        }
    }
    let start = start.ok_or_else(|| MmParseError::Global("missing start".into()))?;
    let halt = halt.ok_or_else(|| MmParseError::Global("missing halt".into()))?;
    let start = m
        .state(&start)
        .ok_or_else(|| MmParseError::Global(format!("unknown start state {start}")))?;
    let halt = m
        .state(&halt)
        .ok_or_else(|| MmParseError::Global(format!("unknown halt state {halt}")))?;
    Ok(MinskyFile {
        machine: m,
        start,
        halt,
    })
}

pub fn serialize_minsky(f: &MinskyFile) -> String {
    use std::fmt::Write as _;
    let m = &f.machine;
    let mut out = String::new();
    let states: Vec<&str> = (0..m.num_states())
        .map(|i| m.state_name(MStateId(i as u32)))
        .collect();
    let _ = writeln!(out, "state {}", states.join(" "));
    if m.num_counters() > 0 {
        let counters: Vec<&str> = (0..m.num_counters()).map(|i| m.counter_name(i)).collect();
        let _ = writeln!(out, "counter {}", counters.join(" "));
    }
    for r in &m.rules {
        let (kind, src, c, dst) = match r {
            MinskyRule::Inc { src, counter, dst } => ("inc", src, counter, dst),
            MinskyRule::Dec { src, counter, dst } => ("dec", src, counter, dst),
            MinskyRule::Zero { src, counter, dst } => ("zero", src, counter, dst),
        };
        let _ = writeln!(
            out,
            "{kind} {} {} {}",
            m.state_name(*src),
            m.counter_name(*c),
            m.state_name(*dst)
        );
    }
    let _ = writeln!(out, "start {}", m.state_name(f.start));
    let _ = writeln!(out, "halt {}", m.state_name(f.halt));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "state q0 q1 qh\ncounter c\ninc q0 c q1\nzero q1 c qh\nstart q0\nhalt qh\n";
        let f = parse_minsky(text).unwrap();
        assert_eq!(f.machine.rules.len(), 2);
        let again = parse_minsky(&serialize_minsky(&f)).unwrap();
        assert_eq!(serialize_minsky(&again), serialize_minsky(&f));
    }

    #[test]
    fn unknown_counter_errors() {
        let text = "state q0\ncounter c\ninc q0 d q0\nstart q0\nhalt q0\n";
        assert!(matches!(
            parse_minsky(text),
            Err(MmParseError::At { line: 3, .. })
        ));
    }
}
