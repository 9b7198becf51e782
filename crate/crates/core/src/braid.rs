//! Braid words, their permutation and linking invariants, cabling, and the
//! word problem via Dehornoy's handle reduction.
//!
//! Convention: `σᵢ` (1-based) lets the strand at position `i` pass over the
//! strand at position `i + 1`. Words are read left to right, top to bottom;
//! strand `s` starts at top position `s` and ends at bottom position `perm[s]`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::ParseError;

/// Handle reductions allowed before giving up.
pub const DEFAULT_REDUCTION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("braids on {0} and {1} strands cannot be combined")]
    StrandMismatch(usize, usize),
    #[error("strand {strand} out of range for {strands} strands")]
    NoSuchStrand { strand: usize, strands: usize },
    #[error("handle reduction exceeded {0} steps")]
    ReductionCap(usize),
}

/// A signed Artin generator: `index` is 1-based, `positive` selects `σ` vs `σ⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub fn new(index: usize, positive: bool) -> Self {
        Letter { index, positive }
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, positive: !self.positive }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidInvariants {
    /// `permutation[s]` is the bottom position (0-based) of the strand starting at `s`.
    pub permutation: Vec<usize>,
    pub exponent_sum: i64,
    /// Signed crossing counts between strands, indexed by starting position.
    pub crossings: Vec<Vec<i64>>,
}

impl BraidInvariants {
    pub fn is_pure(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Half the signed crossing count between strands `i` and `j`; `None` if odd.
    pub fn linking(&self, i: usize, j: usize) -> Option<i64> {
        let c = self.crossings[i][j];
        (c % 2 == 0).then_some(c / 2)
    }

    /// The full linking matrix, defined for pure braids.
    pub fn linking_matrix(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.crossings.len();
        (0..n).map(|i| (0..n).map(|j| self.linking(i, j)).collect()).collect()
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        assert!(strands >= 1, "a braid has at least one strand");
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(BraidError::IndexOutOfRange { index: l.index, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed indices: `2` is `σ₂`, `-2` is `σ₂⁻¹`.
    pub fn from_signed(strands: usize, word: &[i64]) -> Result<Self, BraidError> {
        let letters = word.iter().map(|&k| Letter::new(k.unsigned_abs() as usize, k > 0)).collect();
        BraidWord::new(strands, letters)
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord { strands: self.strands, letters }
    }

    pub fn invariants(&self) -> BraidInvariants {
        let n = self.strands;
        // at[p] = strand currently at position p
        let mut at: Vec<usize> = (0..n).collect();
        let mut crossings = vec![vec![0i64; n]; n];
        let mut exponent_sum = 0;
        for l in &self.letters {
            let p = l.index - 1;
            let (a, b) = (at[p], at[p + 1]);
            crossings[a][b] += l.sign();
            crossings[b][a] += l.sign();
            exponent_sum += l.sign();
            at.swap(p, p + 1);
        }
        let mut permutation = vec![0; n];
        for (pos, &s) in at.iter().enumerate() {
            permutation[s] = pos;
        }
        BraidInvariants { permutation, exponent_sum, crossings }
    }

    pub fn permutation(&self) -> Vec<usize> {
        self.invariants().permutation
    }

    pub fn is_pure(&self) -> bool {
        self.invariants().is_pure()
    }

    /// Doubles the strand starting at position `s` (0-based) into two parallel
    /// strands at positions `s`, `s + 1`.
    pub fn cable(&self, s: usize) -> Result<BraidWord, BraidError> {
        if s >= self.strands {
            return Err(BraidError::NoSuchStrand { strand: s, strands: self.strands });
        }
        // 1-based position of the doubled strand's left copy
        let mut p = s + 1;
        let mut out = Vec::with_capacity(self.letters.len() * 2);
        for &l in &self.letters {
            let i = l.index;
            if i + 1 < p {
                out.push(l);
            } else if i > p {
                out.push(Letter::new(i + 1, l.positive));
            } else if i == p {
                out.push(Letter::new(p + 1, l.positive));
                out.push(Letter::new(p, l.positive));
                p += 1;
            } else {
                out.push(Letter::new(i, l.positive));
                out.push(Letter::new(i + 1, l.positive));
                p = i;
            }
        }
        Ok(BraidWord { strands: self.strands + 1, letters: out })
    }

    /// Removes the strand starting at position `s` (0-based) together with
    /// every crossing it takes part in.
    pub fn delete_strand(&self, s: usize) -> Result<BraidWord, BraidError> {
        if s >= self.strands || self.strands == 1 {
            return Err(BraidError::NoSuchStrand { strand: s, strands: self.strands });
        }
        let mut p = s + 1;
        let mut out = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.index;
            if i == p {
                p += 1;
            } else if i + 1 == p {
                p = i;
            } else if i > p {
                out.push(Letter::new(i - 1, l.positive));
            } else {
                out.push(l);
            }
        }
        Ok(BraidWord { strands: self.strands - 1, letters: out })
    }

    /// Cancels adjacent `σᵢ^e σᵢ^{−e}` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce(&self.letters) }
    }

    /// Handle-reduces to a word that is empty iff the braid is trivial.
    pub fn handle_reduce(&self, cap: usize) -> Result<BraidWord, BraidError> {
        let mut w = free_reduce(&self.letters);
        for _ in 0..cap {
            let Some((j, k)) = first_handle(&w) else {
                return Ok(BraidWord { strands: self.strands, letters: w });
            };
            w = reduce_handle(&w, j, k);
        }
        Err(BraidError::ReductionCap(cap))
    }

    pub fn is_trivial(&self) -> Result<bool, BraidError> {
        if self.invariants() != BraidWord::empty(self.strands).invariants() {
            return Ok(false);
        }
        Ok(self.handle_reduce(DEFAULT_REDUCTION_CAP)?.is_empty())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
        if strands < 2 {
            return BraidWord::empty(strands);
        }
        let letters = (0..len).map(|_| Letter::new(rng.gen_range(1..strands), rng.gen_bool(0.5))).collect();
        BraidWord { strands, letters }
    }

    /// A random word followed by positive letters sorting its strands back, so
    /// the result is pure.
    pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
        let mut w = BraidWord::random(rng, strands, len);
        let mut at = vec![0; strands];
        for (s, &pos) in w.permutation().iter().enumerate() {
            at[pos] = s;
        }
        // bubble sort positions back to identity
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..strands.saturating_sub(1) {
                if at[p] > at[p + 1] {
                    at.swap(p, p + 1);
                    w.letters.push(Letter::new(p + 1, rng.gen_bool(0.5)));
                    changed = true;
                }
            }
        }
        w
    }
}

/// The handle ending first: indices `(j, k)` with `w[j] = σᵢ^e`, `w[k] = σᵢ^{−e}`
/// and every letter in between of index greater than `i`. A handle that ends
/// first contains no smaller handle, so it is permitted.
fn first_handle(w: &[Letter]) -> Option<(usize, usize)> {
    for k in 1..w.len() {
        let i = w[k].index;
        for j in (0..k).rev() {
            let idx = w[j].index;
            if idx > i {
                continue;
            }
            if idx == i && w[j].positive != w[k].positive {
                return Some((j, k));
            }
            break;
        }
    }
    None
}

/// Replaces `σᵢ^e v σᵢ^{−e}` by `v` with each `σᵢ₊₁^d` turned into
/// `σᵢ₊₁^{−e} σᵢ^d σᵢ₊₁^e`.
fn reduce_handle(w: &[Letter], j: usize, k: usize) -> Vec<Letter> {
    let i = w[j].index;
    let e = w[j].positive;
    let mut out = Vec::with_capacity(w.len() + 2 * (k - j));
    out.extend_from_slice(&w[..j]);
    for &l in &w[j + 1..k] {
        if l.index == i + 1 {
            out.push(Letter::new(i + 1, !e));
            out.push(Letter::new(i, l.positive));
            out.push(Letter::new(i + 1, e));
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&w[k + 1..]);
    free_reduce(&out)
}

fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Whether two braids on the same strands are isotopic.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands != b.strands {
        return Err(BraidError::StrandMismatch(a.strands, b.strands));
    }
    if a.invariants() != b.invariants() {
        return Ok(false);
    }
    Ok(a.concat(&b.inverse())?.handle_reduce(DEFAULT_REDUCTION_CAP)?.is_empty())
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}{}", l.index, if l.positive { "" } else { "'" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} strands] {}", self.strands, self)
    }
}

/// Parses `s1 s2' s1` on `strands` strands; positions are offset by `offset`.
pub fn parse_braid_at(s: &str, strands: usize, offset: usize) -> Result<BraidWord, ParseError> {
    let mut letters = Vec::new();
    let mut pos = 0;
    let bytes = s.as_bytes();
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        if bytes[pos] != b's' {
            return Err(ParseError::new(offset + pos, "expected 's<index>'"));
        }
        pos += 1;
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits == pos {
            return Err(ParseError::new(offset + pos, "expected generator index"));
        }
        let index: usize = s[digits..pos].parse().map_err(|_| ParseError::new(offset + digits, "bad index"))?;
        let positive = if bytes.get(pos) == Some(&b'\'') {
            pos += 1;
            false
        } else {
            true
        };
        if index == 0 || index >= strands {
            return Err(ParseError::new(offset + start, format!("index {index} out of range for {strands} strands")));
        }
        letters.push(Letter::new(index, positive));
    }
    Ok(BraidWord { strands, letters })
}

impl FromStr for BraidWord {
    type Err = ParseError;

    /// `n: s1 s2' s1`, with the strand count before the colon; without a
    /// colon the strand count is one more than the largest index.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.find(':') {
            Some(c) => {
                let n: usize = s[..c].trim().parse().map_err(|_| ParseError::new(0, "bad strand count"))?;
                if n == 0 {
                    return Err(ParseError::new(0, "strand count must be positive"));
                }
                parse_braid_at(&s[c + 1..], n, c + 1)
            }
            None => {
                let w = parse_braid_at(s, usize::MAX, 0)?;
                let n = w.letters.iter().map(|l| l.index + 1).max().unwrap_or(1);
                Ok(BraidWord { strands: n, letters: w.letters })
            }
        }
    }
}
