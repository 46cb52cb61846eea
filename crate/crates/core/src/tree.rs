//! Solution trees.
//!
//! Each minimal triple gives one root; from a node `(x, y, z)` the tree
//! branches to `(x, z, 3xz - y)` (left) and `(y, z, 3yz - x)` (right).
//! Every positive solution sits in exactly one tree.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;
use serde_json::{json, Value};

use crate::enumerate::enumerate_minimal_bruteforce;
use crate::error::{Error, Result};
use crate::triple::{MinimalTriple, OrderedTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn as_char(self) -> char {
        match self {
            Move::L => 'L',
            Move::R => 'R',
        }
    }
}

/// Renders a path as `"LRL..."`.
pub fn path_string(path: &[Move]) -> String {
    path.iter().map(|m| m.as_char()).collect()
}

/// `(x, z, 3xz - y)` and `(y, z, 3yz - x)`.
pub fn children(t: &OrderedTriple) -> (OrderedTriple, OrderedTriple) {
    let [x, y, z] = t.components();
    let m = t.m();
    let left = OrderedTriple::from_parts(m, x.clone(), z.clone(), 3 * x * z - y);
    let right = OrderedTriple::from_parts(m, y.clone(), z.clone(), 3 * y * z - x);
    (left, right)
}

fn child(t: &OrderedTriple, mv: Move) -> OrderedTriple {
    let (l, r) = children(t);
    match mv {
        Move::L => l,
        Move::R => r,
    }
}

/// One root per minimal triple, in the lexicographic order of the minimal
/// triples. Two minimal triples sharing a root would contradict tree
/// uniqueness and is reported as an invariant violation.
pub fn roots(m: u64) -> Result<Vec<OrderedTriple>> {
    let set = enumerate_minimal_bruteforce(m)?;
    let roots: Vec<OrderedTriple> = set.triples().iter().map(MinimalTriple::root).collect();
    let mut sorted = roots.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != roots.len() {
        return Err(Error::invariant(
            "one tree per minimal triple",
            format!(
                "m={m}: {} minimal triples but {} roots",
                roots.len(),
                sorted.len()
            ),
        ));
    }
    Ok(roots)
}

/// Whether `t` is the root of its own tree.
pub fn is_root(t: &OrderedTriple) -> Result<bool> {
    Ok(t.descend()?.minimal.root() == *t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub triple: OrderedTriple,
    pub path: Vec<Move>,
}

impl TreeNode {
    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

/// Breadth-first prefix of one solution tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTree {
    pub m: u64,
    pub root: OrderedTriple,
    pub nodes: Vec<TreeNode>,
}

/// Limits for [`expand`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandOptions {
    pub depth: usize,
    /// Nodes whose largest component exceeds this are dropped with their
    /// subtrees.
    pub max_component: BigInt,
}

impl ExpandOptions {
    pub fn depth(depth: usize) -> Self {
        ExpandOptions {
            depth,
            max_component: BigInt::from(10).pow(300u32),
        }
    }
}

/// Expand the tree under `root` breadth-first. Left children precede right
/// children within each level.
pub fn expand(root: &OrderedTriple, opts: &ExpandOptions) -> Result<SolutionTree> {
    if !is_root(root)? {
        return Err(Error::domain(format!(
            "{root} is not the root of a solution tree for m={}",
            root.m()
        )));
    }
    let mut nodes = Vec::new();
    let mut queue = VecDeque::new();
    if root.largest() <= &opts.max_component {
        queue.push_back(TreeNode {
            triple: root.clone(),
            path: Vec::new(),
        });
    }
    while let Some(node) = queue.pop_front() {
        if node.depth() < opts.depth {
            let (l, r) = children(&node.triple);
            for (mv, t) in [(Move::L, l), (Move::R, r)] {
                if t.largest() <= node.triple.largest() {
                    return Err(Error::invariant(
                        "components grow along tree paths",
                        format!("{} -> {t}", node.triple),
                    ));
                }
                if t.largest() > &opts.max_component {
                    continue;
                }
                let mut path = node.path.clone();
                path.push(mv);
                queue.push_back(TreeNode { triple: t, path });
            }
        }
        nodes.push(node);
    }
    Ok(SolutionTree {
        m: root.m(),
        root: root.clone(),
        nodes,
    })
}

/// Every tree for `m`, each expanded to the same limits.
pub fn expand_all(m: u64, opts: &ExpandOptions) -> Result<Vec<SolutionTree>> {
    roots(m)?.iter().map(|r| expand(r, opts)).collect()
}

fn triple_json(t: &OrderedTriple) -> Value {
    Value::Array(
        t.components()
            .iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

impl SolutionTree {
    /// Nodes at the given depth.
    pub fn level(&self, depth: usize) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(move |n| n.depth() == depth)
    }

    /// `{m, root, nodes: [{t, path, depth}]}` with every integer as a
    /// decimal string.
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m.to_string(),
            "root": triple_json(&self.root),
            "nodes": self.nodes.iter().map(|n| json!({
                "t": triple_json(&n.triple),
                "path": path_string(&n.path),
                "depth": n.depth().to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Where a triple lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub root: OrderedTriple,
    pub minimal: MinimalTriple,
    /// Moves from the root to the triple.
    pub path: Vec<Move>,
    /// The triple is an improper minimal triple `(a, a, c)`. It is not a node
    /// of the tree but sits directly above the root, whose both Vieta
    /// neighbours it is; `path` is empty.
    pub above_root: bool,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root {} path {:?}", self.root, path_string(&self.path))
    }
}

/// Find the tree containing `t` and the moves that reach it from the root.
pub fn locate(t: &OrderedTriple) -> Result<Location> {
    let descent = t.descend()?;
    let minimal = descent.minimal;
    let root = minimal.root();

    // t followed by everything below it, ending with the minimal triple
    let mut chain = Vec::with_capacity(descent.path.len() + 1);
    chain.push(t.clone());
    chain.extend(descent.path);

    let Some(root_at) = chain.iter().rposition(|x| *x == root) else {
        // only possible when t is itself the improper minimal triple
        return Ok(Location {
            root,
            minimal,
            path: Vec::new(),
            above_root: true,
        });
    };

    let mut path = Vec::with_capacity(root_at);
    for w in chain[..=root_at].windows(2).rev() {
        let (child_t, parent) = (&w[0], &w[1]);
        let (l, r) = children(parent);
        if *child_t == l {
            path.push(Move::L);
        } else if *child_t == r {
            path.push(Move::R);
        } else {
            return Err(Error::invariant(
                "descent steps invert the child rule",
                format!("{child_t} is not a child of {parent}"),
            ));
        }
    }

    let replayed = path.iter().fold(root.clone(), |cur, mv| child(&cur, *mv));
    if replayed != *t {
        return Err(Error::invariant(
            "every positive solution lies in a unique tree",
            format!(
                "replaying {} from {root} gave {replayed}, not {t}",
                path_string(&path)
            ),
        ));
    }
    Ok(Location {
        root,
        minimal,
        path,
        above_root: false,
    })
}

/// Follow `path` from `root`.
pub fn follow(root: &OrderedTriple, path: &[Move]) -> OrderedTriple {
    path.iter().fold(root.clone(), |cur, mv| child(&cur, *mv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(m: u64, a: i64, b: i64, c: i64) -> OrderedTriple {
        OrderedTriple::new(m, a, b, c).unwrap()
    }

    #[test]
    fn children_examples() {
        assert_eq!(children(&o(5, 1, 2, 6)), (o(5, 1, 6, 16), o(5, 2, 6, 35)));
        assert_eq!(
            children(&o(5, 2, 6, 35)),
            (o(5, 2, 35, 204), o(5, 6, 35, 628))
        );
        assert_eq!(
            children(&o(12, 1, 5, 14)),
            (o(12, 1, 14, 37), o(12, 5, 14, 209))
        );
    }

    #[test]
    fn roots_examples() {
        assert_eq!(roots(5).unwrap(), vec![o(5, 1, 2, 6)]);
        assert_eq!(roots(12).unwrap(), vec![o(12, 1, 5, 14), o(12, 1, 2, 7)]);
        assert!(roots(4).unwrap().is_empty());
    }

    #[test]
    fn expansion_depths() {
        let t = expand(&o(5, 1, 2, 6), &ExpandOptions::depth(1)).unwrap();
        let got: Vec<_> = t.nodes.iter().map(|n| n.triple.clone()).collect();
        assert_eq!(got, vec![o(5, 1, 2, 6), o(5, 1, 6, 16), o(5, 2, 6, 35)]);
        let t = expand(&o(5, 1, 2, 6), &ExpandOptions::depth(0)).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(
            expand(&o(5, 1, 2, 6), &ExpandOptions::depth(3))
                .unwrap()
                .nodes
                .len(),
            15
        );
    }

    #[test]
    fn expansion_rejects_non_roots() {
        assert!(matches!(
            expand(&o(5, 1, 6, 16), &ExpandOptions::depth(2)),
            Err(Error::Domain(_))
        ));
        // the improper minimal triple is not a root; its image is
        assert!(expand(&o(12, 1, 1, 5), &ExpandOptions::depth(2)).is_err());
        assert!(expand(&o(12, 1, 5, 14), &ExpandOptions::depth(2)).is_ok());
    }

    #[test]
    fn magnitude_cutoff() {
        let opts = ExpandOptions {
            depth: 10,
            max_component: BigInt::from(1000),
        };
        let cut = expand(&o(5, 1, 2, 6), &opts).unwrap();
        let full = expand(&o(5, 1, 2, 6), &ExpandOptions::depth(10)).unwrap();
        let filtered: Vec<_> = full
            .nodes
            .into_iter()
            .filter(|n| n.triple.largest() <= &opts.max_component)
            .collect();
        assert_eq!(cut.nodes, filtered);
        assert_eq!(cut.nodes.len(), 10);
    }

    #[test]
    fn locate_examples() {
        let l = locate(&o(5, 6, 16, 287)).unwrap();
        assert_eq!(l.root, o(5, 1, 2, 6));
        assert_eq!(l.path, vec![Move::L, Move::R]);

        let l = locate(&o(12, 1, 5, 14)).unwrap();
        assert_eq!(l.root, o(12, 1, 5, 14));
        assert!(l.path.is_empty() && !l.above_root);

        let l = locate(&o(5, 2, 204, 1189)).unwrap();
        assert_eq!(l.root, o(5, 1, 2, 6));
        assert_eq!(path_string(&l.path), "RLL");

        let l = locate(&o(12, 1, 1, 5)).unwrap();
        assert!(l.above_root);
        assert_eq!(l.root, o(12, 1, 5, 14));
    }

    #[test]
    fn json_shape() {
        let t = expand(&o(5, 1, 2, 6), &ExpandOptions::depth(1)).unwrap();
        let v = t.to_json();
        assert_eq!(v["m"], "5");
        assert_eq!(v["root"], json!(["1", "2", "6"]));
        assert_eq!(
            v["nodes"][2],
            json!({"t": ["2", "6", "35"], "path": "R", "depth": "1"})
        );
    }
}
