//! Reduced words in a free group and Stallings folding of subgroup graphs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::ParseError;

/// Default generator names, in order.
pub const DEFAULT_ALPHABET: &str = "xyz";

/// A freely reduced word. Letter `k > 0` is generator `k - 1`; `-k` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord { letters: vec![index as i32 + 1] }
    }

    /// Reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Image under the endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        self.letters.iter().fold(FreeWord::identity(), |acc, &l| {
            let g = &images[l.unsigned_abs() as usize - 1];
            acc.mul(&if l > 0 { g.clone() } else { g.inverse() })
        })
    }

    /// Exponent sums, one per generator.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Parses words such as `z^3 x z^-3`, `x y' X` (an uppercase letter or a
    /// trailing `'` inverts) or `1` for the identity, over `alphabet`.
    pub fn parse(s: &str, alphabet: &str) -> Result<Self, ParseError> {
        let names: Vec<char> = alphabet.chars().collect();
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            i += 1;
            if c.is_whitespace() || c == '*' {
                continue;
            }
            if c == '1' && letters.is_empty() && s.trim() == "1" {
                continue;
            }
            let (index, mut sign) = if let Some(k) = names.iter().position(|&n| n == c) {
                (k, 1i64)
            } else if let Some(k) = names.iter().position(|&n| n.to_ascii_uppercase() == c && n != c) {
                (k, -1)
            } else {
                return Err(ParseError::new(pos, format!("unknown generator '{c}'")));
            };
            let mut power = 1i64;
            if i < chars.len() && chars[i].1 == '\'' {
                sign = -sign;
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '^' {
                let start = i + 1;
                let mut end = start;
                if end < chars.len() && chars[end].1 == '-' {
                    end += 1;
                }
                while end < chars.len() && chars[end].1.is_ascii_digit() {
                    end += 1;
                }
                let lit: String = chars[start..end].iter().map(|&(_, c)| c).collect();
                let at = chars.get(start).map_or(s.len(), |&(p, _)| p);
                power = lit.parse().map_err(|_| ParseError::new(at, "expected an integer exponent"))?;
                i = end;
            }
            let g = FreeWord::generator(index).pow(sign * power);
            letters.extend(g.letters);
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn display_with(&self, alphabet: &str) -> String {
        let names: Vec<char> = alphabet.chars().collect();
        if self.letters.is_empty() {
            return "1".into();
        }
        // Group runs into powers.
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.signum() as i64;
            let name = names.get(l.unsigned_abs() as usize - 1).copied().unwrap_or('?');
            parts.push(if run == 1 { name.to_string() } else { format!("{name}^{run}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = if self.max_generator() <= DEFAULT_ALPHABET.len() { DEFAULT_ALPHABET } else { "abcdefghijklmnopqrstuvw" };
        f.write_str(&self.display_with(alphabet))
    }
}

/// A folded subgroup graph with base vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedGraph {
    pub rank: usize,
    pub vertices: usize,
    /// Edges `(source, generator index, target)`, positively oriented.
    pub edges: Vec<(usize, usize, usize)>,
    out: Vec<HashMap<i32, usize>>,
}

impl FoldedGraph {
    /// Whether `w` lies in the subgroup.
    pub fn contains(&self, w: &FreeWord) -> bool {
        let mut v = 0;
        for &l in w.letters() {
            match self.out[v].get(&l) {
                Some(&t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// Rank of the subgroup as a free group.
    pub fn subgroup_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices)
    }

    /// The subgroup is the whole free group iff the folded graph is the rose.
    pub fn is_full(&self) -> bool {
        self.vertices == 1 && self.edges.len() == self.rank
    }

    /// A free basis read off a spanning tree.
    pub fn basis(&self) -> Vec<FreeWord> {
        let mut path: Vec<Option<FreeWord>> = vec![None; self.vertices];
        path[0] = Some(FreeWord::identity());
        let mut tree: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let mut outs: Vec<(i32, usize)> = self.out[v].iter().map(|(&l, &t)| (l, t)).collect();
            outs.sort_unstable();
            for (l, t) in outs {
                if path[t].is_none() {
                    path[t] = Some(path[v].as_ref().expect("visited").mul(&FreeWord::from_letters([l])));
                    let e = if l > 0 { (v, l as usize - 1, t) } else { (t, (-l) as usize - 1, v) };
                    tree.insert(e);
                    queue.push_back(t);
                }
            }
        }
        self.edges
            .iter()
            .filter(|e| !tree.contains(e))
            .map(|&(s, g, t)| {
                let to_s = path[s].as_ref().expect("connected");
                let to_t = path[t].as_ref().expect("connected");
                to_s.mul(&FreeWord::generator(g)).mul(&to_t.inverse())
            })
            .collect()
    }
}

/// Folds the bouquet of loops spelling `words` at a common base vertex.
pub fn stallings_fold(words: &[FreeWord], rank: usize) -> FoldedGraph {
    // Raw graph: one loop per word.
    let mut raw: Vec<(usize, i32, usize)> = Vec::new();
    let mut vertices = 1usize;
    for w in words.iter().filter(|w| !w.is_identity()) {
        assert!(w.max_generator() <= rank, "word uses a generator beyond the rank");
        let mut prev = 0;
        for (k, &l) in w.letters().iter().enumerate() {
            let next = if k + 1 == w.len() {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            raw.push((prev, l, next));
            prev = next;
        }
    }

    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    // Identify targets of equally labelled edges until nothing changes.
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, i32), usize> = HashMap::new();
        for &(s, l, t) in &raw {
            for (a, lab, b) in [(s, l, t), (t, -l, s)] {
                let (a, b) = (find(&mut parent, a), find(&mut parent, b));
                match seen.get(&(a, lab)) {
                    Some(&c) => {
                        let c = find(&mut parent, c);
                        if c != b {
                            // Keep the base vertex as representative.
                            let (keep, drop) = if c < b { (c, b) } else { (b, c) };
                            parent[drop] = keep;
                            changed = true;
                        }
                    }
                    None => {
                        seen.insert((a, lab), b);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut ids: HashMap<usize, usize> = HashMap::from([(find(&mut parent, 0), 0)]);
    let mut edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for &(s, l, t) in &raw {
        let (mut s, mut t) = (find(&mut parent, s), find(&mut parent, t));
        let mut l = l;
        if l < 0 {
            std::mem::swap(&mut s, &mut t);
            l = -l;
        }
        let n = ids.len();
        let s = *ids.entry(s).or_insert(n);
        let n = ids.len();
        let t = *ids.entry(t).or_insert(n);
        edges.insert((s, l as usize - 1, t));
    }
    let vertices = ids.len();
    let mut out = vec![HashMap::new(); vertices];
    for &(s, g, t) in &edges {
        out[s].insert(g as i32 + 1, t);
        out[t].insert(-(g as i32 + 1), s);
    }
    FoldedGraph { rank, vertices, edges: edges.into_iter().collect(), out }
}
