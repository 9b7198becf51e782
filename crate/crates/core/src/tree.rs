//! Finite rooted binary trees, read as subdivisions of `[0, 1]` into standard
//! dyadic intervals. Leaves are indexed from 0, left to right.
//!
//! Text form: `.` is a leaf and `(LR)` a caret, so `((..).)` has three leaves.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::ParseError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Caret(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn caret() -> Self {
        BinaryTree::join(BinaryTree::Leaf, BinaryTree::Leaf)
    }

    pub fn join(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Caret(Box::new(left), Box::new(right))
    }

    /// The right vine with `n ≥ 1` leaves: `(.(.(..)))` for `n = 4`.
    pub fn right_vine(n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one leaf");
        (1..n).fold(BinaryTree::Leaf, |acc, _| BinaryTree::join(BinaryTree::Leaf, acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Length of the path from the root to the leftmost leaf.
    pub fn left_depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Caret(l, _) => 1 + l.left_depth(),
        }
    }

    /// Length of the path from the root to the rightmost leaf.
    pub fn right_depth(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Caret(_, r) => 1 + r.right_depth(),
        }
    }

    pub fn leaf_depths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.collect_depths(0, &mut out);
        out
    }

    fn collect_depths(&self, depth: usize, out: &mut Vec<usize>) {
        match self {
            BinaryTree::Leaf => out.push(depth),
            BinaryTree::Caret(l, r) => {
                l.collect_depths(depth + 1, out);
                r.collect_depths(depth + 1, out);
            }
        }
    }

    /// The standard dyadic intervals of the leaves, left to right.
    pub fn leaf_intervals(&self) -> Vec<(BigRational, BigRational)> {
        let mut start = BigRational::zero();
        self.leaf_depths()
            .into_iter()
            .map(|d| {
                let len = BigRational::new(BigInt::one(), BigInt::one() << d);
                let iv = (start.clone(), &start + &len);
                start += len;
                iv
            })
            .collect()
    }

    /// Replaces leaf `i` by a caret.
    pub fn expand_leaf(&self, i: usize) -> BinaryTree {
        self.graft(i, &BinaryTree::caret())
    }

    /// Replaces leaf `i` by `subtree`.
    pub fn graft(&self, i: usize, subtree: &BinaryTree) -> BinaryTree {
        assert!(i < self.leaf_count(), "leaf {i} out of range");
        self.graft_inner(i, subtree).0
    }

    fn graft_inner(&self, i: usize, subtree: &BinaryTree) -> (BinaryTree, usize) {
        match self {
            BinaryTree::Leaf => {
                if i == 0 {
                    (subtree.clone(), 1)
                } else {
                    (BinaryTree::Leaf, 1)
                }
            }
            BinaryTree::Caret(l, r) => {
                let (nl, nleft) = l.graft_inner(i, subtree);
                let (nr, nright) = if i >= nleft {
                    r.graft_inner(i - nleft, subtree)
                } else {
                    ((**r).clone(), r.leaf_count())
                };
                (BinaryTree::join(nl, nr), nleft + nright)
            }
        }
    }

    /// Indices `i` such that leaves `i` and `i + 1` hang from a common caret.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_exposed(0, &mut out);
        out
    }

    fn collect_exposed(&self, offset: usize, out: &mut Vec<usize>) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Caret(l, r) if l.is_leaf() && r.is_leaf() => {
                out.push(offset);
                2
            }
            BinaryTree::Caret(l, r) => {
                let nl = l.collect_exposed(offset, out);
                nl + r.collect_exposed(offset + nl, out)
            }
        }
    }

    /// Collapses the exposed caret on leaves `i`, `i + 1` into a single leaf.
    pub fn contract_caret(&self, i: usize) -> BinaryTree {
        let (t, _) = self.contract_inner(i);
        t
    }

    fn contract_inner(&self, i: usize) -> (BinaryTree, usize) {
        match self {
            BinaryTree::Leaf => (BinaryTree::Leaf, 1),
            BinaryTree::Caret(l, r) if i == 0 && l.is_leaf() && r.is_leaf() => (BinaryTree::Leaf, 2),
            BinaryTree::Caret(l, r) => {
                let nl = l.leaf_count();
                if i < nl {
                    let (t, _) = l.contract_inner(i);
                    (BinaryTree::join(t, (**r).clone()), nl + r.leaf_count())
                } else {
                    let (t, _) = r.contract_inner(i - nl);
                    (BinaryTree::join((**l).clone(), t), nl + r.leaf_count())
                }
            }
        }
    }

    /// The smallest tree refining both inputs.
    pub fn union(&self, other: &BinaryTree) -> BinaryTree {
        match (self, other) {
            (BinaryTree::Leaf, t) | (t, BinaryTree::Leaf) => t.clone(),
            (BinaryTree::Caret(a, b), BinaryTree::Caret(c, d)) => BinaryTree::join(a.union(c), b.union(d)),
        }
    }

    /// Whether `other` is obtained from `self` by grafting trees onto leaves.
    pub fn is_refined_by(&self, other: &BinaryTree) -> bool {
        match (self, other) {
            (BinaryTree::Leaf, _) => true,
            (BinaryTree::Caret(..), BinaryTree::Leaf) => false,
            (BinaryTree::Caret(a, b), BinaryTree::Caret(c, d)) => a.is_refined_by(c) && b.is_refined_by(d),
        }
    }

    /// For `self` refined by `target`, the first leaf of `self` that is a
    /// caret in `target`.
    pub fn first_unrefined_leaf(&self, target: &BinaryTree) -> Option<usize> {
        self.unrefined_inner(target, 0).err()
    }

    // Ok(leaf count) when nothing to do, Err(index) when found.
    fn unrefined_inner(&self, target: &BinaryTree, offset: usize) -> Result<usize, usize> {
        match (self, target) {
            (BinaryTree::Leaf, BinaryTree::Leaf) => Ok(1),
            (BinaryTree::Leaf, BinaryTree::Caret(..)) => Err(offset),
            (BinaryTree::Caret(..), BinaryTree::Leaf) => panic!("target does not refine tree"),
            (BinaryTree::Caret(a, b), BinaryTree::Caret(c, d)) => {
                let nl = a.unrefined_inner(c, offset)?;
                Ok(nl + b.unrefined_inner(d, offset + nl)?)
            }
        }
    }

    /// Builds the tree whose leaves are the given standard dyadic intervals,
    /// which must tile `[lo, hi]` in order. `None` if they do not.
    pub fn from_intervals(intervals: &[(BigRational, BigRational)]) -> Option<BinaryTree> {
        let lo = BigRational::zero();
        let hi = BigRational::one();
        let (tree, used) = Self::build(intervals, &lo, &hi)?;
        (used == intervals.len()).then_some(tree)
    }

    fn build(intervals: &[(BigRational, BigRational)], lo: &BigRational, hi: &BigRational) -> Option<(BinaryTree, usize)> {
        let (a, b) = intervals.first()?;
        if a != lo {
            return None;
        }
        if b == hi {
            return Some((BinaryTree::Leaf, 1));
        }
        if b > hi {
            return None;
        }
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let (left, nl) = Self::build(intervals, lo, &mid)?;
        let (right, nr) = Self::build(&intervals[nl..], &mid, hi)?;
        Some((BinaryTree::join(left, right), nl + nr))
    }

    /// A tree with `leaves` leaves, each split point uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, leaves: usize) -> BinaryTree {
        assert!(leaves >= 1);
        if leaves == 1 {
            return BinaryTree::Leaf;
        }
        let left = rng.gen_range(1..leaves);
        BinaryTree::join(Self::random(rng, left), Self::random(rng, leaves - left))
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("."),
            BinaryTree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_tree_at(s, 0)
    }
}

/// Parses a tree occupying all of `s` (surrounding whitespace allowed).
pub fn parse_tree_at(s: &str, offset: usize) -> Result<BinaryTree, ParseError> {
    let bytes = s.as_bytes();
    let mut pos = 0;
    skip_ws(bytes, &mut pos);
    let tree = parse_node(bytes, &mut pos).map_err(|e| e.offset(offset))?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(ParseError::new(offset + pos, "trailing input after tree"));
    }
    Ok(tree)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_node(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree, ParseError> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BinaryTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_node(bytes, pos)?;
            let r = parse_node(bytes, pos)?;
            if bytes.get(*pos) != Some(&b')') {
                return Err(ParseError::new(*pos, "expected ')'"));
            }
            *pos += 1;
            Ok(BinaryTree::join(l, r))
        }
        Some(_) => Err(ParseError::new(*pos, "expected '.' or '('")),
        None => Err(ParseError::new(*pos, "unexpected end of tree")),
    }
}
