//! DOT export for system graphs and deduction trees.

use abvass::system::{Instance, StateId};
use abvass::tree::{DeductionTree, StepTag};
use std::fmt::Write as _;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The system graph: states as nodes, rules as edges; fork and split rules
/// branch through a small junction node.
pub fn system_dot(inst: &Instance) -> String {
    let sys = &inst.system;
    let mut out = String::new();
    let _ = writeln!(out, "digraph system {{");
    let _ = writeln!(out, "  rankdir=LR;");
    for q in sys.state_ids() {
        let name = sys.state_name(q);
        let mut attrs = vec![format!("label=\"{}\"", esc(name))];
        if q == inst.root_state {
            attrs.push("shape=box".into());
        } else if inst.is_leaf_state(q) {
            attrs.push("peripheries=2".into());
        }
        let _ = writeln!(out, "  s{} [{}];", q.0, attrs.join(","));
    }
    for (i, r) in sys.unary.iter().enumerate() {
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{}\"] /* u{i} */;",
            r.src.0,
            r.dst.0,
            esc(&r.delta.to_string())
        );
    }
    let mut junction = 0usize;
    let mut branch = |out: &mut String, kind: &str, src: StateId, d1: StateId, d2: StateId| {
        let j = format!("j{junction}");
        junction += 1;
        let _ = writeln!(out, "  {j} [shape=point,label=\"\"];");
        let _ = writeln!(out, "  s{} -> {j} [label=\"{kind}\"];", src.0);
        let _ = writeln!(out, "  {j} -> s{};", d1.0);
        let _ = writeln!(out, "  {j} -> s{};", d2.0);
    };
    for r in &sys.fork {
        branch(&mut out, "fork", r.src, r.dst1, r.dst2);
    }
    for r in &sys.split {
        branch(&mut out, "split", r.src, r.dst1, r.dst2);
    }
    for r in &sys.zero {
        let _ = writeln!(out, "  s{} -> s{} [label=\"=0\"];", r.src.0, r.dst.0);
    }
    let _ = writeln!(out, "}}");
    out
}

/// A witness straight from its JSON form (state names are embedded).
pub fn witness_dot_json(node: &crate::formats::witness::WitnessNode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph witness {{");
    let mut n = 0usize;
    emit_json(node, &mut out, &mut n);
    let _ = writeln!(out, "}}");
    out
}

fn emit_json(node: &crate::formats::witness::WitnessNode, out: &mut String, n: &mut usize) -> usize {
    let id = *n;
    *n += 1;
    let label = format!("{} ⟨{}⟩", node.state, node.vector.join(","));
    let _ = writeln!(out, "  n{id} [label=\"{}\"];", esc(&label));
    for child in &node.children {
        let cid = emit_json(child, out, n);
        let _ = writeln!(
            out,
            "  n{id} -> n{cid} [label=\"{}\"];",
            esc(&node.rule.kind)
        );
    }
    id
}

/// A deduction tree with nodes labelled `q ⟨v⟩`.
pub fn witness_dot(inst: &Instance, tree: &DeductionTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph witness {{");
    let mut n = 0usize;
    emit(inst, tree, &mut out, &mut n);
    let _ = writeln!(out, "}}");
    out
}

fn emit(inst: &Instance, t: &DeductionTree, out: &mut String, n: &mut usize) -> usize {
    let id = *n;
    *n += 1;
    let vec = t
        .label
        .vector
        .0
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let label = format!(
        "{} ⟨{}⟩",
        inst.system.state_name(t.label.state),
        vec
    );
    let _ = writeln!(out, "  n{id} [label=\"{}\"];", esc(&label));
    for child in &t.children {
        let cid = emit(inst, child, out, n);
        let tag = match &t.step {
            StepTag::Leaf => String::new(),
            StepTag::Unary { delta, .. } => delta.to_string(),
            StepTag::Fork { .. } => "fork".into(),
            StepTag::Split { .. } => "split".into(),
            StepTag::Meet { .. } => "meet".into(),
            StepTag::Zero { .. } => "=0".into(),
            StepTag::Loss { coord } => format!("loss {coord}"),
            StepTag::Expansion { coord } => format!("exp {coord}"),
            StepTag::Increase { coord } => format!("inc {coord}"),
        };
        let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{}\"];", esc(&tag));
    }
    id
}
