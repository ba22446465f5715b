//! Witness JSON: deduction trees with enough rule detail for replay.
//!
//! Node schema: `{state, vector: ["…"], rule: {kind, detail}, children: […]}`.
//! Vector entries are strings (values can exceed any fixed-width integer).
//! Rules are identified by their full content (source, targets, delta), not
//! by index, so witnesses survive rule reordering in the instance file.

use abvass::system::{Configuration, Instance, StateId};
use abvass::tree::{DeductionTree, StepTag};
use abvass::vecs::{CVec, Delta, Int, Nat};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WitnessNode {
    pub state: String,
    pub vector: Vec<String>,
    pub rule: RuleJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<WitnessNode>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RuleJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
}

fn vec_to_strings(v: &CVec) -> Vec<String> {
    v.0.iter().map(|n| n.to_string()).collect()
}

pub fn tree_to_json(inst: &Instance, tree: &DeductionTree) -> WitnessNode {
    let sys = &inst.system;
    let name = |q: StateId| sys.state_name(q).to_string();
    let rule = match &tree.step {
        StepTag::Leaf => RuleJson {
            kind: "leaf".into(),
            detail: serde_json::Value::Null,
        },
        StepTag::Unary { src, delta, dst } => RuleJson {
            kind: "unary".into(),
            detail: serde_json::json!({
                "src": name(*src),
                "dst": name(*dst),
                "delta": delta.0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
        },
        StepTag::Fork { src, dst1, dst2 } => branch_json("fork", name(*src), name(*dst1), name(*dst2)),
        StepTag::Split { src, dst1, dst2 } => branch_json("split", name(*src), name(*dst1), name(*dst2)),
        StepTag::Meet { src, dst1, dst2 } => branch_json("meet", name(*src), name(*dst1), name(*dst2)),
        StepTag::Zero { src, dst } => RuleJson {
            kind: "zero".into(),
            detail: serde_json::json!({ "src": name(*src), "dst": name(*dst) }),
        },
        StepTag::Loss { coord } => unit_json("loss", *coord),
        StepTag::Expansion { coord } => unit_json("expansion", *coord),
        StepTag::Increase { coord } => unit_json("increase", *coord),
    };
    WitnessNode {
        state: name(tree.label.state),
        vector: vec_to_strings(&tree.label.vector),
        rule,
        children: tree.children.iter().map(|c| tree_to_json(inst, c)).collect(),
    }
}

fn branch_json(kind: &str, src: String, dst1: String, dst2: String) -> RuleJson {
    RuleJson {
        kind: kind.into(),
        detail: serde_json::json!({ "src": src, "dst1": dst1, "dst2": dst2 }),
    }
}

fn unit_json(kind: &str, coord: usize) -> RuleJson {
    RuleJson {
        kind: kind.into(),
        detail: serde_json::json!({ "coord": coord }),
    }
}

pub fn json_to_tree(inst: &Instance, node: &WitnessNode) -> Result<DeductionTree, WitnessError> {
    let sys = &inst.system;
    let state = sys
        .state(&node.state)
        .ok_or_else(|| WitnessError::Shape(format!("unknown state {}", node.state)))?;
    let mut entries = Vec::with_capacity(node.vector.len());
    for s in &node.vector {
        entries.push(
            Nat::from_str(s)
                .map_err(|_| WitnessError::Shape(format!("bad vector entry {s:?}")))?,
        );
    }
    let vector = CVec(entries);
    let detail = &node.rule.detail;
    let lookup = |key: &str| -> Result<StateId, WitnessError> {
        let name = detail
            .get(key)
            .and_then(|v| v.as_str())
            .ok_or_else(|| WitnessError::Shape(format!("missing rule field {key}")))?;
        sys.state(name)
            .ok_or_else(|| WitnessError::Shape(format!("unknown state {name}")))
    };
    let coord = || -> Result<usize, WitnessError> {
        detail
            .get("coord")
            .and_then(|v| v.as_u64())
            .map(|v| v as usize)
            .ok_or_else(|| WitnessError::Shape("missing coord".into()))
    };
    let step = match node.rule.kind.as_str() {
        "leaf" => StepTag::Leaf,
        "unary" => {
            let raw = detail
                .get("delta")
                .and_then(|v| v.as_array())
                .ok_or_else(|| WitnessError::Shape("missing delta".into()))?;
            let mut delta = Vec::with_capacity(raw.len());
            for v in raw {
                let s = v
                    .as_str()
                    .ok_or_else(|| WitnessError::Shape("delta entries are strings".into()))?;
                delta.push(
                    Int::from_str(s)
                        .map_err(|_| WitnessError::Shape(format!("bad delta entry {s:?}")))?,
                );
            }
            StepTag::Unary {
                src: lookup("src")?,
                delta: Delta(delta),
                dst: lookup("dst")?,
            }
        }
        "fork" => StepTag::Fork {
            src: lookup("src")?,
            dst1: lookup("dst1")?,
            dst2: lookup("dst2")?,
        },
        "split" => StepTag::Split {
            src: lookup("src")?,
            dst1: lookup("dst1")?,
            dst2: lookup("dst2")?,
        },
        "meet" => StepTag::Meet {
            src: lookup("src")?,
            dst1: lookup("dst1")?,
            dst2: lookup("dst2")?,
        },
        "zero" => StepTag::Zero {
            src: lookup("src")?,
            dst: lookup("dst")?,
        },
        "loss" => StepTag::Loss { coord: coord()? },
        "expansion" => StepTag::Expansion { coord: coord()? },
        "increase" => StepTag::Increase { coord: coord()? },
        other => return Err(WitnessError::Shape(format!("unknown rule kind {other}"))),
    };
    let children = node
        .children
        .iter()
        .map(|c| json_to_tree(inst, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DeductionTree {
        label: Configuration::new(state, vector),
        step,
        children,
    })
}

pub fn to_string_pretty(node: &WitnessNode) -> String {
    serde_json::to_string_pretty(node).expect("witness nodes serialize")
}

pub fn from_str(text: &str) -> Result<WitnessNode, WitnessError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use abvass::decide::decide_lossy;
    use abvass::gadgets::gen_example_bvass;
    use abvass::tree::validate_tree;

    #[test]
    fn witness_round_trips_and_validates() {
        let inst = gen_example_bvass()
            .instance
            .with_root_vector(CVec::from_u64s(&[4, 0, 0]));
        let d = decide_lossy(&inst, true).unwrap();
        let tree = d.witness.unwrap();
        let json = tree_to_json(&inst, &tree);
        let text = to_string_pretty(&json);
        let back = json_to_tree(&inst, &from_str(&text).unwrap()).unwrap();
        assert_eq!(back, tree);
        assert!(validate_tree(&inst, &back).is_ok());
    }
}
