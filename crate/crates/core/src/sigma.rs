//! Cayley-graph balls and the components of their nonnegative-character
//! subgraphs. Everything here is evidence at a finite radius: no function
//! decides membership in the Σ¹ invariant.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::case_studies::{GwElement, GwGroup};
use crate::exact::ExactNumber;
use crate::lodha_moore::{probe_inputs, Address, Generator, LMWord, PeriodicSeq, Variant};
use crate::pl::PLMap;
use crate::thompson::TreePair;
use crate::ParseError;

pub const MAX_RADIUS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("radius {0} exceeds the cap {MAX_RADIUS}")]
    RadiusTooLarge(usize),
    #[error("unknown character '{label}' for {group}; available: {available}")]
    UnknownCharacter { label: String, group: String, available: String },
}

/// A group presented to the ball builder.
pub trait GroupOracle {
    type Element: Clone;
    type Key: Clone + Eq + Hash;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Element;
    /// Labelled generators, closed under inversion.
    fn generators(&self) -> Vec<(String, Self::Element)>;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    /// Canonical key; equal keys mean equal elements when `exact_equality`.
    fn key(&self, a: &Self::Element) -> Self::Key;
    fn exact_equality(&self) -> bool {
        true
    }
    fn character_labels(&self) -> Vec<String>;
    fn character(&self, label: &str, a: &Self::Element) -> Option<i64>;
}

/// The ball of radius `radius`, with every Cayley edge between its vertices.
#[derive(Debug, Clone, Serialize)]
pub struct Ball<E> {
    pub radius: usize,
    #[serde(skip)]
    pub vertices: Vec<E>,
    /// Word length of each vertex.
    pub distance: Vec<usize>,
    /// `(from, generator index, to)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub generator_labels: Vec<String>,
    /// False when equality was only depth-bounded, so distinct elements may
    /// have been merged.
    pub exact: bool,
}

impl<E> Ball<E> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex counts of the balls of radius `0..=radius`.
    pub fn sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|r| self.distance.iter().filter(|&&d| d <= r).count()).collect()
    }
}

pub fn ball<O: GroupOracle>(oracle: &O, radius: usize) -> Result<Ball<O::Element>, SigmaError> {
    if radius > MAX_RADIUS {
        return Err(SigmaError::RadiusTooLarge(radius));
    }
    let gens = oracle.generators();
    let id = oracle.identity();
    let mut index: HashMap<O::Key, usize> = HashMap::from([(oracle.key(&id), 0)]);
    let mut vertices = vec![id];
    let mut distance = vec![0];
    let mut edges = Vec::new();
    let mut frontier = 0..1;
    for r in 0..=radius {
        let end = vertices.len();
        for v in frontier.clone() {
            for (gi, (_, g)) in gens.iter().enumerate() {
                let w = oracle.multiply(&vertices[v], g);
                let key = oracle.key(&w);
                match index.get(&key) {
                    Some(&t) => edges.push((v, gi, t)),
                    None if r < radius => {
                        index.insert(key, vertices.len());
                        edges.push((v, gi, vertices.len()));
                        vertices.push(w);
                        distance.push(r + 1);
                    }
                    None => {}
                }
            }
        }
        frontier = end..vertices.len();
    }
    Ok(Ball {
        radius,
        vertices,
        distance,
        edges,
        generator_labels: gens.into_iter().map(|(l, _)| l).collect(),
        exact: oracle.exact_equality(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub radius: usize,
    pub character: String,
    pub nonnegative_vertices: usize,
    pub count: usize,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
    pub note: String,
}

/// Components of the subgraph of `ball` on vertices with `χ ≥ 0` and word
/// length at most `within`.
pub fn nonneg_components<O: GroupOracle>(
    oracle: &O,
    ball: &Ball<O::Element>,
    character: &str,
    within: usize,
) -> Result<Components, SigmaError> {
    let values: Option<Vec<i64>> = ball.vertices.iter().map(|v| oracle.character(character, v)).collect();
    let values = values.ok_or_else(|| SigmaError::UnknownCharacter {
        label: character.into(),
        group: oracle.name(),
        available: oracle.character_labels().join(", "),
    })?;
    let keep: Vec<bool> = (0..ball.len()).map(|i| values[i] >= 0 && ball.distance[i] <= within).collect();
    let mut parent: Vec<usize> = (0..ball.len()).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for &(a, _, b) in &ball.edges {
        if keep[a] && keep[b] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in (0..ball.len()).filter(|&i| keep[i]) {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut sizes: Vec<usize> = sizes.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Components {
        radius: within,
        character: character.into(),
        nonnegative_vertices: keep.iter().filter(|&&k| k).count(),
        count: sizes.len(),
        sizes,
        note: format!("evidence at radius {within} only; not a decision about the invariant"),
    })
}

pub fn nonneg_subgraph_components<O: GroupOracle>(oracle: &O, character: &str, radius: usize) -> Result<Components, SigmaError> {
    let b = ball(oracle, radius)?;
    nonneg_components(oracle, &b, character, radius)
}

/// `Z^n` with the standard generators.
#[derive(Debug, Clone, Copy)]
pub struct Lattice(pub usize);

impl GroupOracle for Lattice {
    type Element = Vec<i64>;
    type Key = Vec<i64>;

    fn name(&self) -> String {
        if self.0 == 1 {
            "Z".into()
        } else {
            format!("Z^{}", self.0)
        }
    }
    fn identity(&self) -> Vec<i64> {
        vec![0; self.0]
    }
    fn generators(&self) -> Vec<(String, Vec<i64>)> {
        let mut out = Vec::new();
        for i in 0..self.0 {
            for s in [1, -1] {
                let mut v = vec![0; self.0];
                v[i] = s;
                out.push((format!("e{}{}", i + 1, if s < 0 { "'" } else { "" }), v));
            }
        }
        out
    }
    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn key(&self, a: &Vec<i64>) -> Vec<i64> {
        a.clone()
    }
    fn character_labels(&self) -> Vec<String> {
        (1..=self.0).map(|i| format!("e{i}*")).chain((1..=self.0).map(|i| format!("-e{i}*"))).collect()
    }
    fn character(&self, label: &str, a: &Vec<i64>) -> Option<i64> {
        let (sign, rest) = label.strip_prefix('-').map_or((1, label), |r| (-1, r));
        let i: usize = rest.strip_prefix('e')?.strip_suffix('*')?.parse().ok()?;
        a.get(i.checked_sub(1)?).map(|x| sign * x)
    }
}

fn thompson_character(label: &str, chars: (i64, i64)) -> Option<i64> {
    match label {
        "chi0" => Some(chars.0),
        "chi1" => Some(chars.1),
        "-chi0" => Some(-chars.0),
        "-chi1" => Some(-chars.1),
        _ => None,
    }
}

const THOMPSON_CHARACTERS: [&str; 4] = ["chi0", "chi1", "-chi0", "-chi1"];

/// Thompson's group via reduced tree pairs.
#[derive(Debug, Clone, Copy)]
pub struct ThompsonTreePairs;

impl GroupOracle for ThompsonTreePairs {
    type Element = TreePair;
    type Key = TreePair;

    fn name(&self) -> String {
        "F (tree pairs)".into()
    }
    fn identity(&self) -> TreePair {
        TreePair::identity()
    }
    fn generators(&self) -> Vec<(String, TreePair)> {
        let (x0, x1) = (TreePair::x0(), TreePair::x1());
        vec![("x0".into(), x0.clone()), ("x0'".into(), x0.inverse()), ("x1".into(), x1.clone()), ("x1'".into(), x1.inverse())]
    }
    fn multiply(&self, a: &TreePair, b: &TreePair) -> TreePair {
        a.multiply(b)
    }
    fn key(&self, a: &TreePair) -> TreePair {
        a.reduce()
    }
    fn character_labels(&self) -> Vec<String> {
        THOMPSON_CHARACTERS.iter().map(|s| s.to_string()).collect()
    }
    fn character(&self, label: &str, a: &TreePair) -> Option<i64> {
        thompson_character(label, a.characters())
    }
}

/// Thompson's group via piecewise-linear maps of `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct ThompsonPl;

fn log2_power(x: &ExactNumber) -> i64 {
    let (r, _) = x.coords();
    let (num, den) = (r.numer().clone(), r.denom().clone());
    if den.is_one() {
        num.bits() as i64 - 1
    } else {
        debug_assert!(num.is_one() && !den.is_zero());
        -(den.bits() as i64 - 1)
    }
}

impl GroupOracle for ThompsonPl {
    type Element = PLMap;
    type Key = PLMap;

    fn name(&self) -> String {
        "F (PL maps)".into()
    }
    fn identity(&self) -> PLMap {
        PLMap::unit_identity()
    }
    fn generators(&self) -> Vec<(String, PLMap)> {
        ThompsonTreePairs.generators().into_iter().map(|(l, g)| (l, g.to_pl())).collect()
    }
    fn multiply(&self, a: &PLMap, b: &PLMap) -> PLMap {
        a.compose(b).expect("maps share the unit interval")
    }
    fn key(&self, a: &PLMap) -> PLMap {
        a.clone()
    }
    fn character_labels(&self) -> Vec<String> {
        ThompsonTreePairs.character_labels()
    }
    fn character(&self, label: &str, a: &PLMap) -> Option<i64> {
        thompson_character(label, (log2_power(a.slope_at_start()), log2_power(a.slope_at_end())))
    }
}

/// The crystallographic group `Z² ⋊ Z` over `e₁, e₂, t`.
#[derive(Debug, Clone, Copy)]
pub struct Crystallographic(pub GwGroup);

impl GroupOracle for Crystallographic {
    type Element = GwElement;
    type Key = GwElement;

    fn name(&self) -> String {
        format!("GW(b={})", self.0.b)
    }
    fn identity(&self) -> GwElement {
        GwElement::IDENTITY
    }
    fn generators(&self) -> Vec<(String, GwElement)> {
        let names = ["e1", "e2", "t", "e1'", "e2'", "t'"];
        names.iter().map(|s| s.to_string()).zip(self.0.symmetric_generators()).collect()
    }
    fn multiply(&self, a: &GwElement, b: &GwElement) -> GwElement {
        self.0.multiply(a, b)
    }
    fn key(&self, a: &GwElement) -> GwElement {
        *a
    }
    fn character_labels(&self) -> Vec<String> {
        vec!["t*".into(), "-t*".into()]
    }
    fn character(&self, label: &str, a: &GwElement) -> Option<i64> {
        match label {
            "t*" => Some(a.z),
            "-t*" => Some(-a.z),
            _ => None,
        }
    }
}

/// A Lodha–Moore group over `x₀, x₁` and `y` letters at depth two. Equality
/// is only tested on finitely many inputs, so the ball may merge elements.
#[derive(Debug, Clone)]
pub struct LodhaMoore {
    pub variant: Variant,
    pub depth: usize,
    probes: Vec<PeriodicSeq>,
}

impl LodhaMoore {
    pub fn new(variant: Variant, depth: usize) -> Self {
        LodhaMoore { variant, depth, probes: probe_inputs(depth).collect() }
    }
}

impl GroupOracle for LodhaMoore {
    type Element = LMWord;
    type Key = Vec<PeriodicSeq>;

    fn name(&self) -> String {
        format!("{} (depth {})", self.variant, self.depth)
    }
    fn identity(&self) -> LMWord {
        LMWord::identity(self.variant)
    }
    fn generators(&self) -> Vec<(String, LMWord)> {
        let mut letters = vec![Generator::x(Address::constant(0, 1)), Generator::x(Address::constant(1, 1))];
        for a in [Address::constant(0, 1), Address::constant(1, 1), Address(vec![0, 1]), Address(vec![1, 0])] {
            if self.variant.allows_y(&a) {
                letters.push(Generator::y(a));
            }
        }
        letters
            .into_iter()
            .flat_map(|g| [g.clone(), g.inv()])
            .map(|g| (g.to_string(), LMWord::new(vec![g], self.variant).expect("legal letter")))
            .collect()
    }
    fn multiply(&self, a: &LMWord, b: &LMWord) -> LMWord {
        a.then(b)
    }
    fn key(&self, a: &LMWord) -> Vec<PeriodicSeq> {
        self.probes.iter().map(|p| a.apply(p)).collect()
    }
    fn exact_equality(&self) -> bool {
        false
    }
    fn character_labels(&self) -> Vec<String> {
        crate::lodha_moore::Character::ALL
            .into_iter()
            .filter(|c| c.defined_on(self.variant))
            .flat_map(|c| [c.to_string(), format!("-{c}")])
            .collect()
    }
    fn character(&self, label: &str, a: &LMWord) -> Option<i64> {
        let (sign, rest) = label.strip_prefix('-').map_or((1, label), |r| (-1, r));
        let c: crate::lodha_moore::Character = rest.parse().ok()?;
        a.character(c).ok().map(|v| sign * v)
    }
}

/// A group selector for the command line: `Z`, `Z^n`, `F`, `F-pl`,
/// `GW:b`, or `LM:<variant>` (one of `G`, `yG`, `Gy`, `yGy`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupChoice {
    Lattice(usize),
    TreePairs,
    Pl,
    Gw(i64),
    Lm(Variant),
}

impl FromStr for GroupChoice {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = |pos: usize, msg: &str| ParseError::new(pos, msg);
        match s {
            "Z" => Ok(GroupChoice::Lattice(1)),
            "F" => Ok(GroupChoice::TreePairs),
            "F-pl" => Ok(GroupChoice::Pl),
            _ if s.starts_with("Z^") => {
                s[2..].parse().map(GroupChoice::Lattice).map_err(|_| bad(2, "expected a dimension"))
            }
            _ if s.starts_with("GW:") => s[3..]
                .parse()
                .ok()
                .filter(|&b: &i64| b >= 1)
                .map(GroupChoice::Gw)
                .ok_or_else(|| bad(3, "expected a positive integer b")),
            _ if s.starts_with("LM:") => s[3..].parse().map(GroupChoice::Lm).map_err(|e: ParseError| e.offset(3)),
            _ => Err(bad(0, "expected Z, Z^n, F, F-pl, GW:b or LM:<variant>")),
        }
    }
}

impl fmt::Display for GroupChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupChoice::Lattice(1) => f.write_str("Z"),
            GroupChoice::Lattice(n) => write!(f, "Z^{n}"),
            GroupChoice::TreePairs => f.write_str("F"),
            GroupChoice::Pl => f.write_str("F-pl"),
            GroupChoice::Gw(b) => write!(f, "GW:{b}"),
            GroupChoice::Lm(v) => write!(f, "LM:{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_balls() {
        let b = ball(&Lattice(1), 3).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(nonneg_subgraph_components(&Lattice(1), "e1*", 4).unwrap().count, 1);
        let c = nonneg_subgraph_components(&Lattice(2), "e1*", 5).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(ball(&Lattice(2), 5).unwrap().len(), 61);
    }

    #[test]
    fn thompson_representations_agree() {
        for r in 0..=4 {
            let a = ball(&ThompsonTreePairs, r).unwrap();
            let b = ball(&ThompsonPl, r).unwrap();
            assert_eq!(a.sizes(), b.sizes());
        }
        assert_eq!(ball(&ThompsonTreePairs, 1).unwrap().len(), 5);
    }

    #[test]
    fn thompson_characters_agree() {
        let a = ball(&ThompsonTreePairs, 3).unwrap();
        for v in &a.vertices {
            for l in THOMPSON_CHARACTERS {
                assert_eq!(ThompsonTreePairs.character(l, v), ThompsonPl.character(l, &v.to_pl()));
            }
        }
    }

    #[test]
    fn radius_cap_and_unknown_character() {
        assert_eq!(ball(&Lattice(1), MAX_RADIUS + 1).unwrap_err(), SigmaError::RadiusTooLarge(MAX_RADIUS + 1));
        assert!(matches!(nonneg_subgraph_components(&Lattice(1), "psi", 2), Err(SigmaError::UnknownCharacter { .. })));
    }

    #[test]
    fn group_choice_parsing() {
        for s in ["Z", "Z^3", "F", "F-pl", "GW:2", "LM:yGy"] {
            assert_eq!(s.parse::<GroupChoice>().unwrap().to_string(), s);
        }
        assert_eq!("GW:0".parse::<GroupChoice>().unwrap_err().pos, 3);
        assert_eq!("LM:Q".parse::<GroupChoice>().unwrap_err().pos, 3);
    }

    #[test]
    fn lodha_moore_ball_is_flagged_inexact() {
        let lm = LodhaMoore::new(Variant::G, 4);
        let b = ball(&lm, 2).unwrap();
        assert!(!b.exact);
        assert!(b.len() > 1);
    }
}
