//! Thompson's group F as reduced tree-pair diagrams.
//!
//! A pair `(minus, plus)` acts on `[0, 1]` by sending the leaf intervals of
//! `plus` affinely onto the leaf intervals of `minus`. With this reading the
//! standard generator `x₀ = ((..).) | (.(..))` has slope `1/2` at `0`, the
//! product `d1·d2` glues `d1.plus` to `d2.minus`, and `to_pl(d1·d2)` is
//! `to_pl(d1) ∘ to_pl(d2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::exact::ExactNumber;
use crate::pl::{BieriStrebelSpec, PLMap};
use crate::tree::{parse_tree_at, BinaryTree};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreePairError {
    #[error("trees have {minus} and {plus} leaves")]
    LeafCountMismatch { minus: usize, plus: usize },
    #[error("map is not in F: {0}")]
    NotInF(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    minus: BinaryTree,
    plus: BinaryTree,
}

impl TreePair {
    pub fn new(minus: BinaryTree, plus: BinaryTree) -> Result<Self, TreePairError> {
        let (m, p) = (minus.leaf_count(), plus.leaf_count());
        if m != p {
            return Err(TreePairError::LeafCountMismatch { minus: m, plus: p });
        }
        Ok(TreePair { minus, plus })
    }

    pub fn identity() -> Self {
        TreePair { minus: BinaryTree::Leaf, plus: BinaryTree::Leaf }
    }

    /// `x₀ = ((..).) | (.(..))`.
    pub fn x0() -> Self {
        Self::x(0)
    }

    /// `x₁ = (.((..).)) | (.(.(..)))`.
    pub fn x1() -> Self {
        Self::x(1)
    }

    /// The generator `xₙ` of the infinite presentation.
    pub fn x(n: usize) -> Self {
        let inner_minus = BinaryTree::join(BinaryTree::caret(), BinaryTree::Leaf);
        let inner_plus = BinaryTree::join(BinaryTree::Leaf, BinaryTree::caret());
        let wrap = |t: BinaryTree| (0..n).fold(t, |acc, _| BinaryTree::join(BinaryTree::Leaf, acc));
        TreePair { minus: wrap(inner_minus), plus: wrap(inner_plus) }
    }

    pub fn minus(&self) -> &BinaryTree {
        &self.minus
    }

    pub fn plus(&self) -> &BinaryTree {
        &self.plus
    }

    pub fn leaf_count(&self) -> usize {
        self.minus.leaf_count()
    }

    /// Adds a caret at leaf `i` of both trees.
    pub fn expand(&self, i: usize) -> TreePair {
        TreePair { minus: self.minus.expand_leaf(i), plus: self.plus.expand_leaf(i) }
    }

    /// Indices of carets that can be removed from both trees at once.
    pub fn reducible_carets(&self) -> Vec<usize> {
        let plus = self.plus.exposed_carets();
        self.minus.exposed_carets().into_iter().filter(|i| plus.contains(i)).collect()
    }

    pub fn contract(&self, i: usize) -> TreePair {
        TreePair { minus: self.minus.contract_caret(i), plus: self.plus.contract_caret(i) }
    }

    pub fn is_reduced(&self) -> bool {
        self.reducible_carets().is_empty()
    }

    pub fn reduce(&self) -> TreePair {
        self.reduce_with(|carets| carets[0])
    }

    /// Reduces, letting `pick` choose which available caret pair to remove next.
    pub fn reduce_with(&self, mut pick: impl FnMut(&[usize]) -> usize) -> TreePair {
        let mut d = self.clone();
        loop {
            let carets = d.reducible_carets();
            if carets.is_empty() {
                return d;
            }
            d = d.contract(pick(&carets));
        }
    }

    /// Expands until the plus tree is `target`, which must refine it.
    pub fn expand_plus_to(&self, target: &BinaryTree) -> TreePair {
        let mut d = self.clone();
        while let Some(i) = d.plus.first_unrefined_leaf(target) {
            d = d.expand(i);
        }
        d
    }

    /// Expands until the minus tree is `target`, which must refine it.
    pub fn expand_minus_to(&self, target: &BinaryTree) -> TreePair {
        let mut d = self.clone();
        while let Some(i) = d.minus.first_unrefined_leaf(target) {
            d = d.expand(i);
        }
        d
    }

    pub fn multiply(&self, other: &TreePair) -> TreePair {
        let common = self.plus.union(&other.minus);
        let left = self.expand_plus_to(&common);
        let right = other.expand_minus_to(&common);
        TreePair { minus: left.minus, plus: right.plus }.reduce()
    }

    pub fn inverse(&self) -> TreePair {
        TreePair { minus: self.plus.clone(), plus: self.minus.clone() }
    }

    pub fn pow(&self, n: i64) -> TreePair {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(TreePair::identity(), |acc, _| acc.multiply(&base))
    }

    /// `(L(plus) − L(minus), R(plus) − R(minus))`: the base-2 logarithms of
    /// the slopes of `to_pl` at `0` and at `1`.
    pub fn characters(&self) -> (i64, i64) {
        let l = self.plus.left_depth() as i64 - self.minus.left_depth() as i64;
        let r = self.plus.right_depth() as i64 - self.minus.right_depth() as i64;
        (l, r)
    }

    pub fn to_pl(&self) -> PLMap {
        let from = self.plus.leaf_intervals();
        let to = self.minus.leaf_intervals();
        let breaks = from.iter().skip(1).map(|(a, _)| ExactNumber::from_rational(a.clone())).collect();
        let slopes = from
            .iter()
            .zip(&to)
            .map(|((a, b), (c, d))| ExactNumber::from_rational((d - c) / (b - a)))
            .collect();
        PLMap::new(ExactNumber::one(), breaks, slopes).expect("tree pairs give homeomorphisms")
    }

    /// The reduced diagram of a map in F.
    pub fn from_pl(f: &PLMap) -> Result<TreePair, TreePairError> {
        let report = f.membership(&BieriStrebelSpec::thompson_f());
        if !report.is_member() {
            let first = report.violations[0].to_string();
            return Err(TreePairError::NotInF(first));
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut domain = Vec::new();
        let mut range = Vec::new();
        let mut stack = vec![(BigRational::zero(), BigRational::one())];
        while let Some((a, b)) = stack.pop() {
            let (ea, eb) = (ExactNumber::from_rational(a.clone()), ExactNumber::from_rational(b.clone()));
            let affine = !f.breakpoints().iter().any(|x| x > &ea && x < &eb);
            let image = (f.evaluate(&ea).expect("in domain"), f.evaluate(&eb).expect("in domain"));
            let (fa, fb) = (rational(&image.0), rational(&image.1));
            if affine && is_standard_dyadic(&fa, &fb) {
                domain.push((a, b));
                range.push((fa, fb));
            } else {
                let mid = (&a + &b) / &two;
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
        let plus = BinaryTree::from_intervals(&domain).expect("dyadic subdivision");
        let minus = BinaryTree::from_intervals(&range).expect("images tile [0,1]");
        Ok(TreePair { minus, plus }.reduce())
    }

    /// A reduced diagram obtained from a random pair of trees with `leaves` leaves.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, leaves: usize) -> TreePair {
        TreePair { minus: BinaryTree::random(rng, leaves), plus: BinaryTree::random(rng, leaves) }.reduce()
    }
}

fn rational(x: &ExactNumber) -> BigRational {
    x.as_rational().expect("F maps are rational").clone()
}

fn is_standard_dyadic(a: &BigRational, b: &BigRational) -> bool {
    let len = b - a;
    if !len.numer().is_one() || len.denom().magnitude().count_ones() != 1 {
        return false;
    }
    (a / &len).is_integer()
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.minus, self.plus)
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TreePair {
    type Err = ParseError;

    /// `minus|plus`, e.g. `((..).)|(.(..))`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bar = s.find('|').ok_or_else(|| ParseError::new(s.len(), "expected 'minus|plus'"))?;
        let minus = parse_tree_at(&s[..bar], 0)?;
        let plus = parse_tree_at(&s[bar + 1..], bar + 1)?;
        TreePair::new(minus, plus).map_err(|e| ParseError::new(bar, e.to_string()))
    }
}
