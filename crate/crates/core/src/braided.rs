//! Braided paired tree diagrams `(T₋, b, T₊)` for the braided Thompson groups.
//!
//! `T₋` sits on top with its leaves feeding the braid; strand `s` leaves
//! minus-leaf `s` and arrives at plus-leaf `perm(b)[s]`. Multiplication
//! stacks the first diagram above the second, gluing `d1.plus` to `d2.minus`,
//! so on trivial braids it agrees with [`TreePair::multiply`].

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::braid::{braid_equal, parse_braid_at, BraidError, BraidWord, Letter};
use crate::thompson::TreePair;
use crate::tree::{parse_tree_at, BinaryTree};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("trees have {minus} and {plus} leaves but the braid has {strands} strands")]
    Shape { minus: usize, plus: usize, strands: usize },
    #[error("leaf {leaf} out of range for {leaves} leaves")]
    NoSuchLeaf { leaf: usize, leaves: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidedDiagram {
    minus: BinaryTree,
    braid: BraidWord,
    plus: BinaryTree,
}

impl BraidedDiagram {
    pub fn new(minus: BinaryTree, braid: BraidWord, plus: BinaryTree) -> Result<Self, DiagramError> {
        let (m, p, s) = (minus.leaf_count(), plus.leaf_count(), braid.strands());
        if m != s || p != s {
            return Err(DiagramError::Shape { minus: m, plus: p, strands: s });
        }
        Ok(BraidedDiagram { minus, braid, plus })
    }

    pub fn identity() -> Self {
        BraidedDiagram { minus: BinaryTree::Leaf, braid: BraidWord::empty(1), plus: BinaryTree::Leaf }
    }

    /// The image of an element of F (trivial braid).
    pub fn from_tree_pair(d: &TreePair) -> Self {
        let n = d.leaf_count();
        BraidedDiagram { minus: d.minus().clone(), braid: BraidWord::empty(n), plus: d.plus().clone() }
    }

    pub fn minus(&self) -> &BinaryTree {
        &self.minus
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn plus(&self) -> &BinaryTree {
        &self.plus
    }

    pub fn leaf_count(&self) -> usize {
        self.braid.strands()
    }

    pub fn is_pure(&self) -> bool {
        self.braid.is_pure()
    }

    /// Splits minus-leaf `leaf` and the plus-leaf its strand reaches, cabling
    /// that strand.
    pub fn expand(&self, leaf: usize) -> Result<BraidedDiagram, DiagramError> {
        let n = self.leaf_count();
        if leaf >= n {
            return Err(DiagramError::NoSuchLeaf { leaf, leaves: n });
        }
        let target = self.braid.permutation()[leaf];
        Ok(BraidedDiagram {
            minus: self.minus.expand_leaf(leaf),
            braid: self.braid.cable(leaf)?,
            plus: self.plus.expand_leaf(target),
        })
    }

    /// Expansion addressed by a plus-leaf.
    pub fn expand_at_plus(&self, leaf: usize) -> Result<BraidedDiagram, DiagramError> {
        let perm = self.braid.permutation();
        let source = perm.iter().position(|&p| p == leaf).ok_or(DiagramError::NoSuchLeaf {
            leaf,
            leaves: self.leaf_count(),
        })?;
        self.expand(source)
    }

    pub fn expand_minus_to(&self, target: &BinaryTree) -> BraidedDiagram {
        let mut d = self.clone();
        while let Some(i) = d.minus.first_unrefined_leaf(target) {
            d = d.expand(i).expect("leaf in range");
        }
        d
    }

    pub fn expand_plus_to(&self, target: &BinaryTree) -> BraidedDiagram {
        let mut d = self.clone();
        while let Some(i) = d.plus.first_unrefined_leaf(target) {
            d = d.expand_at_plus(i).expect("leaf in range");
        }
        d
    }

    /// Glues `self.plus` to `other.minus` after expanding both to their common
    /// refinement, then removes the carets [`Self::try_reduce`] detects.
    pub fn multiply(&self, other: &BraidedDiagram) -> Result<BraidedDiagram, DiagramError> {
        self.multiply_unreduced(other)?.try_reduce()
    }

    pub fn multiply_unreduced(&self, other: &BraidedDiagram) -> Result<BraidedDiagram, DiagramError> {
        let common = self.plus.union(&other.minus);
        let top = self.expand_plus_to(&common);
        let bottom = other.expand_minus_to(&common);
        Ok(BraidedDiagram { minus: top.minus, braid: top.braid.concat(&bottom.braid)?, plus: bottom.plus })
    }

    pub fn inverse(&self) -> BraidedDiagram {
        BraidedDiagram { minus: self.plus.clone(), braid: self.braid.inverse(), plus: self.minus.clone() }
    }

    /// Whether the two diagrams represent the same element: both are expanded
    /// to a common minus tree, after which they agree iff the plus trees match
    /// and the braids are isotopic.
    pub fn equivalent(&self, other: &BraidedDiagram) -> Result<bool, DiagramError> {
        let common = self.minus.union(&other.minus);
        let a = self.expand_minus_to(&common);
        let b = other.expand_minus_to(&common);
        if a.plus != b.plus {
            return Ok(false);
        }
        Ok(braid_equal(&a.braid, &b.braid)?)
    }

    pub fn is_identity(&self) -> Result<bool, DiagramError> {
        self.equivalent(&BraidedDiagram::identity())
    }

    /// A caret on minus-leaves `i, i + 1` can be removed if its strands land on
    /// an exposed plus caret in order and the braid is a cabling of the braid
    /// with strand `i + 1` deleted.
    fn reduction_at(&self, i: usize) -> Result<Option<BraidedDiagram>, DiagramError> {
        let perm = self.braid.permutation();
        let j = perm[i];
        if perm[i + 1] != j + 1 || !self.plus.exposed_carets().contains(&j) {
            return Ok(None);
        }
        let thinner = self.braid.delete_strand(i + 1)?;
        if !braid_equal(&thinner.cable(i)?, &self.braid)? {
            return Ok(None);
        }
        Ok(Some(BraidedDiagram {
            minus: self.minus.contract_caret(i),
            braid: thinner,
            plus: self.plus.contract_caret(j),
        }))
    }

    /// Greedily reverses expansions until none is detected.
    pub fn try_reduce(&self) -> Result<BraidedDiagram, DiagramError> {
        let mut d = self.clone();
        'outer: loop {
            for i in d.minus.exposed_carets() {
                if let Some(r) = d.reduction_at(i)? {
                    d = r;
                    continue 'outer;
                }
            }
            return Ok(d);
        }
    }

    /// `(φ₀, φ₁) = (L(T₊) − L(T₋), R(T₊) − R(T₋))`.
    pub fn characters(&self) -> (i64, i64) {
        let l = self.plus.left_depth() as i64 - self.minus.left_depth() as i64;
        let r = self.plus.right_depth() as i64 - self.minus.right_depth() as i64;
        (l, r)
    }

    /// A random pure diagram: random trees with a random pure braid.
    pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, leaves: usize, braid_len: usize) -> BraidedDiagram {
        BraidedDiagram {
            minus: BinaryTree::random(rng, leaves),
            braid: BraidWord::random_pure(rng, leaves, braid_len),
            plus: BinaryTree::random(rng, leaves),
        }
    }
}

/// `A_ij` on `n` strands (1-based `i < j ≤ n`): strand `j` is carried over to
/// `i`, wraps it once, and returns.
pub fn wrap_braid(i: usize, j: usize, n: usize) -> BraidWord {
    assert!(1 <= i && i < j && j <= n, "need 1 ≤ i < j ≤ n");
    let mut letters: Vec<Letter> = (i + 1..j).rev().map(|k| Letter::new(k, true)).collect();
    letters.push(Letter::new(i, true));
    letters.push(Letter::new(i, true));
    letters.extend((i + 1..j).map(|k| Letter::new(k, false)));
    BraidWord::new(n, letters).expect("indices in range")
}

/// `α_ij = (R_{j+1}, A_ij, R_{j+1})`.
pub fn alpha(i: usize, j: usize) -> BraidedDiagram {
    let vine = BinaryTree::right_vine(j + 1);
    BraidedDiagram::new(vine.clone(), wrap_braid(i, j, j + 1), vine).expect("shapes agree")
}

/// `β_ij = (R_j, A_ij, R_j)`.
pub fn beta(i: usize, j: usize) -> BraidedDiagram {
    let vine = BinaryTree::right_vine(j);
    BraidedDiagram::new(vine.clone(), wrap_braid(i, j, j), vine).expect("shapes agree")
}

/// The generating set `x₀, x₁, α₁₂, α₁₃, α₂₃, α₂₄, β₁₂, β₁₃, β₂₃, β₂₄`.
pub fn fbr_generators() -> Vec<(String, BraidedDiagram)> {
    let mut out = vec![
        ("x0".to_string(), BraidedDiagram::from_tree_pair(&TreePair::x0())),
        ("x1".to_string(), BraidedDiagram::from_tree_pair(&TreePair::x1())),
    ];
    let pairs = [(1, 2), (1, 3), (2, 3), (2, 4)];
    out.extend(pairs.iter().map(|&(i, j)| (format!("alpha{i}{j}"), alpha(i, j))));
    out.extend(pairs.iter().map(|&(i, j)| (format!("beta{i}{j}"), beta(i, j))));
    out
}

impl fmt::Display for BraidedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.minus, self.braid, self.plus)
    }
}

impl fmt::Debug for BraidedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BraidedDiagram {
    type Err = ParseError;

    /// `minusTree | braid | plusTree`, e.g. `(..) | s1 s1 | (..)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bars: Vec<usize> = s.match_indices('|').map(|(i, _)| i).collect();
        let [a, b] = bars[..] else {
            return Err(ParseError::new(0, "expected 'minus | braid | plus'"));
        };
        let minus = parse_tree_at(&s[..a], 0)?;
        let plus = parse_tree_at(&s[b + 1..], b + 1)?;
        let braid = parse_braid_at(&s[a + 1..b], minus.leaf_count(), a + 1)?;
        BraidedDiagram::new(minus, braid, plus).map_err(|e| ParseError::new(b + 1, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> BraidedDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_of_identity() {
        let e = BraidedDiagram::identity().expand(0).unwrap();
        assert_eq!(e, d("(..) |  | (..)"));
        assert!(e.is_identity().unwrap());
    }

    #[test]
    fn expansion_follows_the_strand() {
        let x = d("(..) | s1 | (..)");
        let e = x.expand(0).unwrap();
        assert_eq!(e.minus(), &"((..).)".parse().unwrap());
        assert_eq!(e.plus(), &"(.(..))".parse().unwrap());
        assert_eq!(e.braid().to_string(), "s2 s1");
        assert!(e.equivalent(&x).unwrap());
        assert_eq!(e.try_reduce().unwrap(), x);
    }

    // Stand-in for the pictured diagram and its expansion, whose exact trees
    // are not recoverable from the text.
    #[test]
    fn aligned_expansion_has_an_equal_braid() {
        let x = d("((..).) | s1 s2' | (.(..))");
        let e = x.expand(1).unwrap().expand(3).unwrap();
        assert!(e.equivalent(&x).unwrap());
        let aligned = x.expand_minus_to(e.minus());
        assert_eq!(aligned.plus(), e.plus());
        assert!(crate::braid::braid_equal(aligned.braid(), e.braid()).unwrap());
    }

    #[test]
    fn linked_caret_is_not_reducible() {
        let x = d("(..) | s1 s1 | (..)");
        assert_eq!(x.try_reduce().unwrap(), x);
        assert!(!x.is_identity().unwrap());
    }

    #[test]
    fn generators_are_pure() {
        let gens = fbr_generators();
        assert_eq!(gens.len(), 10);
        for (name, g) in &gens {
            assert!(g.is_pure(), "{name}");
        }
        assert_eq!(alpha(1, 2).braid().to_string(), "s1 s1");
        assert_eq!(alpha(1, 2).leaf_count(), 3);
        assert_eq!(beta(1, 2).leaf_count(), 2);
        assert_eq!(wrap_braid(1, 3, 3).to_string(), "s2 s1 s1 s2'");
    }

    #[test]
    fn alpha_linking() {
        let inv = alpha(1, 2).braid().invariants();
        let link = inv.linking_matrix().unwrap();
        assert_eq!(link[0][1], 1);
        assert_eq!(link[0][2] + link[1][2], 0);
        let inv = wrap_braid(2, 4, 5).invariants();
        assert_eq!(inv.linking(1, 3), Some(1));
        assert_eq!(inv.linking(2, 3), Some(0));
    }

    #[test]
    fn characters() {
        assert_eq!(BraidedDiagram::identity().characters(), (0, 0));
        for (_, g) in fbr_generators().iter().skip(2) {
            assert_eq!(g.characters(), (0, 0));
        }
        let x0 = BraidedDiagram::from_tree_pair(&TreePair::x0());
        assert_eq!(x0.characters(), TreePair::x0().characters());
    }

    #[test]
    fn product_with_inverse_is_identity() {
        let x = alpha(1, 3).multiply(&BraidedDiagram::from_tree_pair(&TreePair::x0())).unwrap();
        assert!(x.multiply(&x.inverse()).unwrap().is_identity().unwrap());
        assert!(!x.is_identity().unwrap());
    }

    #[test]
    fn trivial_braids_match_f() {
        let (a, b) = (TreePair::x0(), TreePair::x1().inverse());
        let prod = BraidedDiagram::from_tree_pair(&a).multiply(&BraidedDiagram::from_tree_pair(&b)).unwrap();
        assert_eq!(prod, BraidedDiagram::from_tree_pair(&a.multiply(&b)));
    }

    #[test]
    fn parse_errors() {
        assert!("(..) | s2 | (..)".parse::<BraidedDiagram>().is_err());
        assert!("(..) | s1".parse::<BraidedDiagram>().is_err());
    }
}
