//! Deduction trees and their validation.
//!
//! A deduction tree is a finitely branching tree of configurations where each
//! internal node's children arise from one rule application (or from a loss,
//! expansion, or increase step of the active semantics).  Trees are read
//! root-to-leaves.

use crate::steps::{pseudo_unary_target, split_guard_default};
use crate::system::{
    Configuration, ForkReading, Instance, LeafCondition, RootCondition, SemanticsMode, StateId,
    ZeroReading,
};
use crate::vecs::{Delta, Nat};
use num_traits::{One, Zero};
use std::fmt;

/// What produced the children of a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepTag {
    Leaf,
    /// One child; identified by source, delta, target (index-free so that
    /// serialized witnesses survive rule reordering).
    Unary {
        src: StateId,
        delta: Delta,
        dst: StateId,
    },
    Fork {
        src: StateId,
        dst1: StateId,
        dst2: StateId,
    },
    /// Two children whose vectors sum to the parent vector.
    Split {
        src: StateId,
        dst1: StateId,
        dst2: StateId,
    },
    /// Two children whose componentwise minimum is the parent vector.
    Meet {
        src: StateId,
        dst1: StateId,
        dst2: StateId,
    },
    /// Zero rule under its active reading (test, reset, or jump).
    Zero {
        src: StateId,
        dst: StateId,
    },
    /// Lossy semantics: one child with coordinate `coord` decremented.
    Loss {
        coord: usize,
    },
    /// Expansive semantics: one child with positive coordinate `coord`
    /// incremented.
    Expansion {
        coord: usize,
    },
    /// Increasing semantics: one child with coordinate `coord` incremented.
    Increase {
        coord: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductionTree {
    pub label: Configuration,
    pub step: StepTag,
    pub children: Vec<DeductionTree>,
}

impl DeductionTree {
    pub fn leaf(label: Configuration) -> Self {
        DeductionTree {
            label,
            step: StepTag::Leaf,
            children: Vec::new(),
        }
    }

    pub fn node(label: Configuration, step: StepTag, children: Vec<DeductionTree>) -> Self {
        DeductionTree {
            label,
            step,
            children,
        }
    }

    /// Maximum number of edges along any root-to-leaf path.
    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| 1 + c.height())
            .max()
            .unwrap_or(0)
    }

    /// Like [`height`](Self::height) but loss/expansion/increase steps do not
    /// count as edges; this is the notion bound comparisons use.
    pub fn rule_height(&self) -> usize {
        let step_cost = match self.step {
            StepTag::Loss { .. } | StepTag::Expansion { .. } | StepTag::Increase { .. } => 0,
            _ => 1,
        };
        self.children
            .iter()
            .map(|c| step_cost + c.rule_height())
            .max()
            .unwrap_or(0)
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    /// Largest counter value appearing in any label.
    pub fn max_value(&self) -> Nat {
        let mut m = self.label.vector.max_entry();
        for c in &self.children {
            m = m.max(c.max_value());
        }
        m
    }

    pub fn subtree(&self, path: &[usize]) -> Option<&DeductionTree> {
        let mut cur = self;
        for &i in path {
            cur = cur.children.get(i)?;
        }
        Some(cur)
    }

    fn subtree_mut(&mut self, path: &[usize]) -> Option<&mut DeductionTree> {
        let mut cur = self;
        for &i in path {
            cur = cur.children.get_mut(i)?;
        }
        Some(cur)
    }
}

/// Height and size of a tree; see the methods on [`DeductionTree`].
pub fn tree_height(tree: &DeductionTree) -> usize {
    tree.height()
}

pub fn tree_size(tree: &DeductionTree) -> usize {
    tree.size()
}

/// A validation failure, pinpointing the first offending node by its path of
/// child indices from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeViolation {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {}", self.path, self.message)
    }
}

/// Checks that a tree is a deduction tree of the instance: the root label
/// matches, every internal node is a correct rule application under the
/// instance semantics, and every leaf satisfies the leaf condition.
pub fn validate_tree(inst: &Instance, tree: &DeductionTree) -> Result<(), TreeViolation> {
    if tree.label.state != inst.root_state {
        return Err(TreeViolation {
            path: vec![],
            message: format!(
                "root state is {}, expected {}",
                inst.system.state_name(tree.label.state),
                inst.system.state_name(inst.root_state)
            ),
        });
    }
    if inst.root_condition == RootCondition::ExactVector && tree.label.vector != inst.root_vector {
        return Err(TreeViolation {
            path: vec![],
            message: format!(
                "root vector is {}, expected {}",
                tree.label.vector, inst.root_vector
            ),
        });
    }
    let mut path = Vec::new();
    validate_node(inst, tree, &mut path)
}

fn fail(path: &[usize], message: String) -> Result<(), TreeViolation> {
    Err(TreeViolation {
        path: path.to_vec(),
        message,
    })
}

fn validate_node(
    inst: &Instance,
    node: &DeductionTree,
    path: &mut Vec<usize>,
) -> Result<(), TreeViolation> {
    let sys = &inst.system;
    let sem = inst.semantics;
    let label = &node.label;
    if label.vector.dim() != sys.dim {
        return fail(path, format!("vector {} has wrong dimension", label.vector));
    }

    let expect_children = |n: usize| -> Result<(), TreeViolation> {
        if node.children.len() != n {
            fail(
                path,
                format!("expected {n} children, found {}", node.children.len()),
            )
        } else {
            Ok(())
        }
    };

    match &node.step {
        StepTag::Leaf => {
            expect_children(0)?;
            if !inst.is_leaf_state(label.state) {
                return fail(
                    path,
                    format!("leaf state {} not in leaf set", sys.state_name(label.state)),
                );
            }
            if inst.leaf_condition == LeafCondition::ZeroVector && !label.vector.is_zero() {
                return fail(path, format!("leaf vector {} must be zero", label.vector));
            }
        }
        StepTag::Unary { src, delta, dst } => {
            expect_children(1)?;
            if *src != label.state {
                return fail(path, "unary rule source differs from node state".into());
            }
            let rule = sys
                .unary
                .iter()
                .find(|r| r.src == *src && r.dst == *dst && r.delta == *delta);
            if rule.is_none() {
                return fail(path, "no such unary rule in the system".into());
            }
            let child = &node.children[0];
            if child.label.state != *dst {
                return fail(path, "unary child state differs from rule target".into());
            }
            let expected = if sem.mode == SemanticsMode::Increasing {
                Some(pseudo_unary_target(&label.vector, delta))
            } else {
                label.vector.checked_add(delta)
            };
            match expected {
                Some(v) if v == child.label.vector => {}
                Some(v) => {
                    return fail(
                        path,
                        format!("unary child vector is {}, expected {v}", child.label.vector),
                    )
                }
                None => return fail(path, "unary rule not applicable (negative entry)".into()),
            }
        }
        StepTag::Fork { src, dst1, dst2 } => {
            expect_children(2)?;
            if sem.fork_reading == ForkReading::Meet {
                return fail(path, "fork node under a meet reading".into());
            }
            check_branch(sys, "fork", &sys.fork, *src, *dst1, *dst2, label, path)?;
            for child in &node.children {
                if child.label.vector != label.vector {
                    return fail(path, "fork children must copy vector".into());
                }
            }
            check_branch_states(node, *dst1, *dst2, path)?;
        }
        StepTag::Meet { src, dst1, dst2 } => {
            expect_children(2)?;
            if sem.fork_reading != ForkReading::Meet {
                return fail(path, "meet node under a duplicate reading".into());
            }
            check_branch(sys, "fork", &sys.fork, *src, *dst1, *dst2, label, path)?;
            let glb = node.children[0]
                .label
                .vector
                .meet(&node.children[1].label.vector)
                .map_err(|e| TreeViolation {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
            if glb != label.vector {
                return fail(path, "meet children minimum differs from parent".into());
            }
            check_branch_states(node, *dst1, *dst2, path)?;
        }
        StepTag::Split { src, dst1, dst2 } => {
            expect_children(2)?;
            check_branch(sys, "split", &sys.split, *src, *dst1, *dst2, label, path)?;
            let sum = node.children[0]
                .label
                .vector
                .add(&node.children[1].label.vector);
            if sum != label.vector {
                return fail(path, "split children must sum to parent vector".into());
            }
            check_branch_states(node, *dst1, *dst2, path)?;
        }
        StepTag::Zero { src, dst } => {
            expect_children(1)?;
            if *src != label.state {
                return fail(path, "zero rule source differs from node state".into());
            }
            if !sys.zero.iter().any(|r| r.src == *src && r.dst == *dst) {
                return fail(path, "no such zero rule in the system".into());
            }
            let child = &node.children[0];
            if child.label.state != *dst {
                return fail(path, "zero child state differs from rule target".into());
            }
            match sem.zero_reading {
                ZeroReading::Test => {
                    if !label.vector.is_zero() {
                        return fail(path, "zero test fired on a nonzero vector".into());
                    }
                    if !child.label.vector.is_zero() {
                        return fail(path, "zero test child must be zero".into());
                    }
                }
                ZeroReading::Reset => {
                    if !child.label.vector.is_zero() {
                        return fail(path, "reset child must be zero".into());
                    }
                }
                ZeroReading::Jump => {
                    if !label.vector.is_zero() {
                        return fail(path, "zero jump fired on a nonzero vector".into());
                    }
                }
            }
        }
        StepTag::Loss { coord } => {
            expect_children(1)?;
            if sem.mode != SemanticsMode::Lossy {
                return fail(path, "loss step outside lossy semantics".into());
            }
            check_unit_step(node, *coord, -1, path, "loss")?;
        }
        StepTag::Expansion { coord } => {
            expect_children(1)?;
            if sem.mode != SemanticsMode::Expansive {
                return fail(path, "expansion step outside expansive semantics".into());
            }
            if label.vector.0[*coord].is_zero() {
                return fail(path, "expansion requires a positive coordinate".into());
            }
            check_unit_step(node, *coord, 1, path, "expansion")?;
        }
        StepTag::Increase { coord } => {
            expect_children(1)?;
            if sem.mode != SemanticsMode::Increasing || sem.pseudo {
                return fail(path, "increase step outside increasing semantics".into());
            }
            check_unit_step(node, *coord, 1, path, "increase")?;
        }
    }

    for (i, child) in node.children.iter().enumerate() {
        path.push(i);
        validate_node(inst, child, path)?;
        path.pop();
    }
    Ok(())
}

fn check_unit_step(
    node: &DeductionTree,
    coord: usize,
    sign: i64,
    path: &[usize],
    what: &str,
) -> Result<(), TreeViolation> {
    let label = &node.label;
    let child = &node.children[0];
    if child.label.state != label.state {
        return fail(path, format!("{what} step must stay in the same state"));
    }
    if coord >= label.vector.dim() {
        return fail(path, format!("{what} coordinate {coord} out of range"));
    }
    let expected = label
        .vector
        .checked_add(&Delta::unit(label.vector.dim(), coord, sign));
    match expected {
        Some(v) if v == child.label.vector => Ok(()),
        Some(v) => fail(
            path,
            format!("{what} child vector is {}, expected {v}", child.label.vector),
        ),
        None => fail(path, format!("{what} step not applicable")),
    }
}

#[allow(clippy::too_many_arguments)]
fn check_branch(
    _sys: &crate::system::System,
    kind: &str,
    rules: &[crate::system::BranchRule],
    src: StateId,
    dst1: StateId,
    dst2: StateId,
    label: &Configuration,
    path: &[usize],
) -> Result<(), TreeViolation> {
    if src != label.state {
        return fail(path, format!("{kind} rule source differs from node state"));
    }
    if !rules
        .iter()
        .any(|r| r.src == src && r.dst1 == dst1 && r.dst2 == dst2)
    {
        return fail(path, format!("no such {kind} rule in the system"));
    }
    Ok(())
}

fn check_branch_states(
    node: &DeductionTree,
    dst1: StateId,
    dst2: StateId,
    path: &[usize],
) -> Result<(), TreeViolation> {
    if node.children[0].label.state != dst1 || node.children[1].label.state != dst2 {
        return fail(path, "branch children states differ from rule targets".into());
    }
    Ok(())
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ShortenError {
    #[error("invalid path")]
    BadPath,
    #[error("ancestor must be strictly above descendant")]
    NotAncestor,
    #[error("no repetition: labels differ")]
    LabelsDiffer,
}

/// Replaces the subtree at `ancestor` by the subtree at `descendant`, which
/// must lie strictly below it and carry the same label.  Shortening preserves
/// reachability and coverability witnesses.
pub fn shorten(
    tree: &DeductionTree,
    ancestor: &[usize],
    descendant: &[usize],
) -> Result<DeductionTree, ShortenError> {
    if descendant.len() <= ancestor.len() || descendant[..ancestor.len()] != *ancestor {
        return Err(ShortenError::NotAncestor);
    }
    let anc = tree.subtree(ancestor).ok_or(ShortenError::BadPath)?;
    let desc = tree.subtree(descendant).ok_or(ShortenError::BadPath)?;
    if anc.label != desc.label {
        return Err(ShortenError::LabelsDiffer);
    }
    let replacement = desc.clone();
    let mut out = tree.clone();
    *out.subtree_mut(ancestor).ok_or(ShortenError::BadPath)? = replacement;
    Ok(out)
}

/// Exhaustive scan for a repeated label along a vertical path; used by the
/// shortening-based arguments and handy for tests.
pub fn find_repetition(tree: &DeductionTree) -> Option<(Vec<usize>, Vec<usize>)> {
    fn walk(
        node: &DeductionTree,
        path: &mut Vec<usize>,
        seen: &mut Vec<(Configuration, Vec<usize>)>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if let Some((_, anc)) = seen.iter().find(|(l, _)| *l == node.label) {
            return Some((anc.clone(), path.clone()));
        }
        seen.push((node.label.clone(), path.clone()));
        for (i, child) in node.children.iter().enumerate() {
            path.push(i);
            if let Some(hit) = walk(child, path, seen) {
                return Some(hit);
            }
            path.pop();
        }
        seen.pop();
        None
    }
    let mut path = Vec::new();
    let mut seen = Vec::new();
    walk(tree, &mut path, &mut seen)
}

/// Guard value used by split-step enumeration; re-exported here so tree and
/// step modules agree on the default.
pub fn default_split_guard() -> Nat {
    split_guard_default()
}

#[allow(unused)]
fn nat_one() -> Nat {
    Nat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Semantics, System};
    use crate::vecs::CVec;

    fn chain_instance() -> (Instance, StateId, StateId) {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_unary(a, Delta::from_i64s(&[0]), a);
        sys.add_unary(a, Delta::from_i64s(&[0]), b);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![b]);
        (inst, a, b)
    }

    fn cfg(q: StateId, v: &[u64]) -> Configuration {
        Configuration::new(q, CVec::from_u64s(v))
    }

    #[test]
    fn single_node_metrics() {
        let t = DeductionTree::leaf(cfg(StateId(0), &[0]));
        assert_eq!(tree_height(&t), 0);
        assert_eq!(tree_size(&t), 1);
    }

    #[test]
    fn fork_of_two_leaves_metrics() {
        let t = DeductionTree::node(
            cfg(StateId(0), &[0]),
            StepTag::Fork {
                src: StateId(0),
                dst1: StateId(1),
                dst2: StateId(1),
            },
            vec![
                DeductionTree::leaf(cfg(StateId(1), &[0])),
                DeductionTree::leaf(cfg(StateId(1), &[0])),
            ],
        );
        assert_eq!(tree_height(&t), 1);
        assert_eq!(tree_size(&t), 3);
    }

    #[test]
    fn shorten_removes_a_repeated_label() {
        let (inst, a, b) = chain_instance();
        let loop_tag = StepTag::Unary {
            src: a,
            delta: Delta::from_i64s(&[0]),
            dst: a,
        };
        let exit_tag = StepTag::Unary {
            src: a,
            delta: Delta::from_i64s(&[0]),
            dst: b,
        };
        // a -> a -> a -> b with the loop rule applied twice.
        let tree = DeductionTree::node(
            cfg(a, &[0]),
            loop_tag.clone(),
            vec![DeductionTree::node(
                cfg(a, &[0]),
                exit_tag.clone(),
                vec![DeductionTree::leaf(cfg(b, &[0]))],
            )],
        );
        assert!(validate_tree(&inst, &tree).is_ok());
        let (anc, desc) = find_repetition(&tree).expect("repeated label");
        let short = shorten(&tree, &anc, &desc).unwrap();
        assert!(short.size() < tree.size());
        assert!(validate_tree(&inst, &short).is_ok());
    }

    #[test]
    fn shorten_rejects_distinct_labels_and_bad_paths() {
        let (_, a, b) = chain_instance();
        let tree = DeductionTree::node(
            cfg(a, &[0]),
            StepTag::Unary {
                src: a,
                delta: Delta::from_i64s(&[0]),
                dst: b,
            },
            vec![DeductionTree::leaf(cfg(b, &[0]))],
        );
        assert_eq!(
            shorten(&tree, &[], &[0]),
            Err(ShortenError::LabelsDiffer)
        );
        assert_eq!(shorten(&tree, &[0], &[]), Err(ShortenError::NotAncestor));
        assert_eq!(
            shorten(&tree, &[], &[0, 0]),
            Err(ShortenError::BadPath)
        );
    }

    #[test]
    fn minimal_tree_has_no_repetition() {
        // Hand-built 4-node tree with pairwise distinct labels.
        let t = DeductionTree::node(
            cfg(StateId(0), &[2]),
            StepTag::Split {
                src: StateId(0),
                dst1: StateId(1),
                dst2: StateId(1),
            },
            vec![
                DeductionTree::leaf(cfg(StateId(1), &[2])),
                DeductionTree::node(
                    cfg(StateId(1), &[0]),
                    StepTag::Unary {
                        src: StateId(1),
                        delta: Delta::from_i64s(&[0]),
                        dst: StateId(2),
                    },
                    vec![DeductionTree::leaf(cfg(StateId(2), &[0]))],
                ),
            ],
        );
        assert_eq!(find_repetition(&t), None);
    }

    #[test]
    fn fork_children_with_unequal_vectors_are_rejected() {
        let mut sys = System::new(1);
        let a = sys.add_state("a");
        let b = sys.add_state("b");
        sys.add_fork(a, b, b);
        let inst = Instance::reachability(sys, Semantics::strict(), a, vec![b])
            .with_root_vector(CVec::from_u64s(&[1]))
            .with_leaf_condition(LeafCondition::AnyVector);
        let tree = DeductionTree::node(
            cfg(a, &[1]),
            StepTag::Fork {
                src: a,
                dst1: b,
                dst2: b,
            },
            vec![
                DeductionTree::leaf(cfg(b, &[1])),
                DeductionTree::leaf(cfg(b, &[0])),
            ],
        );
        let err = validate_tree(&inst, &tree).unwrap_err();
        assert!(err.message.contains("fork children must copy vector"));
    }
}
