//! The Lodha–Moore groups as words in `x_s`, `y_t` acting on infinite binary
//! sequences.
//!
//! Every generator maps eventually periodic sequences to eventually periodic
//! sequences (`y` is a two-state transducer), so images are computed exactly
//! and compared as canonical `(preperiod, period)` pairs.
//!
//! Words use left-hand notation: the rightmost letter acts first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("y({address}) is not a generator of {variant}")]
    IllegalAddress { address: Address, variant: Variant },
    #[error("{character} is not defined on {variant}")]
    CharacterUndefined { character: Character, variant: Variant },
}

/// A finite binary sequence; the empty one prints as `ø`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(pub Vec<u8>);

impl Address {
    pub fn empty() -> Self {
        Address(Vec::new())
    }

    pub fn constant(bit: u8, n: usize) -> Self {
        Address(vec![bit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `0ⁿ` for some `n ≥ 0` (including the empty address).
    pub fn is_all(&self, bit: u8) -> bool {
        self.0.iter().all(|&b| b == bit)
    }

    pub fn child(&self, bits: &[u8]) -> Address {
        let mut v = self.0.clone();
        v.extend_from_slice(bits);
        Address(v)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Every address of length at most `n`, shortest first.
    pub fn all_up_to(n: usize) -> Vec<Address> {
        let mut out = vec![Address::empty()];
        let mut layer = vec![Address::empty()];
        for _ in 0..n {
            layer = layer.iter().flat_map(|a| [a.child(&[0]), a.child(&[1])]).collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// `x_s(t)`, when `t = s·u` and `x` is determined on `u`.
    pub fn image_under_x(&self, t: &Address) -> Option<Address> {
        let u = t.0.strip_prefix(&self.0[..])?;
        let (emit, used) = x_step(u, false)?;
        let mut out = self.0.clone();
        out.extend_from_slice(emit);
        out.extend_from_slice(&u[used..]);
        Some(Address(out))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ø");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Address {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        if s == "ø" || s.is_empty() {
            return Ok(Address::empty());
        }
        parse_bits(s, 0).map(Address)
    }
}

fn parse_bits(s: &str, offset: usize) -> Result<Vec<u8>, ParseError> {
    s.char_indices()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(ParseError::new(offset + i, format!("expected a bit, found '{c}'"))),
        })
        .collect()
}

/// The four groups, named by which `y` addresses they allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    /// `G`: no `y_{0ⁿ}`, no `y_{1ⁿ}`.
    G,
    /// `_yG`: no `y_{1ⁿ}`.
    #[serde(rename = "yG")]
    YG,
    /// `G_y`: no `y_{0ⁿ}`.
    #[serde(rename = "Gy")]
    GY,
    /// `_yG_y`: every address.
    #[serde(rename = "yGy")]
    YGY,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::G, Variant::YG, Variant::GY, Variant::YGY];

    pub fn allows_y(self, address: &Address) -> bool {
        let zeros = address.is_all(0);
        let ones = address.is_all(1);
        match self {
            Variant::G => !zeros && !ones,
            Variant::YG => !ones,
            Variant::GY => !zeros,
            Variant::YGY => true,
        }
    }

    /// The two characters spanning the quotient, with their signs.
    pub fn quotient_basis(self) -> [(i64, Character); 2] {
        use Character::*;
        match self {
            Variant::G => [(1, Chi0), (1, Chi1)],
            Variant::YG => [(1, Psi0), (1, Chi1)],
            Variant::GY => [(1, Chi0), (-1, Psi1)],
            Variant::YGY => [(1, Psi0), (-1, Psi1)],
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::G => "G",
            Variant::YG => "yG",
            Variant::GY => "Gy",
            Variant::YGY => "yGy",
        })
    }
}

impl FromStr for Variant {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "G" => Ok(Variant::G),
            "yG" => Ok(Variant::YG),
            "Gy" => Ok(Variant::GY),
            "yGy" => Ok(Variant::YGY),
            _ => Err(ParseError::new(0, "variant must be one of G, yG, Gy, yGy")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    X,
    Y,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub address: Address,
    pub inverse: bool,
}

impl Generator {
    pub fn x(address: Address) -> Self {
        Generator { kind: Kind::X, address, inverse: false }
    }

    pub fn y(address: Address) -> Self {
        Generator { kind: Kind::Y, address, inverse: false }
    }

    pub fn inv(mut self) -> Self {
        self.inverse = !self.inverse;
        self
    }

    pub fn apply(&self, seq: &PeriodicSeq) -> PeriodicSeq {
        let s = &self.address.0;
        if !(0..s.len()).all(|i| seq.bit(i) == s[i]) {
            return seq.clone();
        }
        let rest = seq.drop(s.len());
        let image = match self.kind {
            Kind::X => apply_x(&rest, self.inverse),
            Kind::Y => apply_y(&rest, self.inverse),
        };
        image.prepend(s)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::X => 'x',
            Kind::Y => 'y',
        };
        let addr = if self.address.is_empty() { String::new() } else { self.address.to_string() };
        write!(f, "{k}({addr}){}", if self.inverse { "'" } else { "" })
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One step of `x` (or `x⁻¹`) on the head of `u`: the emitted bits and the
/// number consumed, or `None` if `u` is too short to decide.
fn x_step(u: &[u8], inverse: bool) -> Option<(&'static [u8], usize)> {
    match (inverse, u) {
        (false, [0, 0, ..]) => Some((&[0], 2)),
        (false, [0, 1, ..]) => Some((&[1, 0], 2)),
        (false, [1, ..]) => Some((&[1, 1], 1)),
        (true, [0, ..]) => Some((&[0, 0], 1)),
        (true, [1, 0, ..]) => Some((&[0, 1], 2)),
        (true, [1, 1, ..]) => Some((&[1], 2)),
        _ => None,
    }
}

fn apply_x(seq: &PeriodicSeq, inverse: bool) -> PeriodicSeq {
    let head = [seq.bit(0), seq.bit(1)];
    let (emit, used) = x_step(&head, inverse).expect("two bits always decide");
    seq.drop(used).prepend(emit)
}

/// Runs the two-state transducer for `y` (state `false`) and `y⁻¹` (state
/// `true`) over an eventually periodic input until a (phase, state) repeats.
fn apply_y(seq: &PeriodicSeq, inverse: bool) -> PeriodicSeq {
    let mut out = Vec::new();
    let mut pos = 0;
    let mut state = inverse;
    let mut seen: HashMap<(usize, bool), usize> = HashMap::new();
    loop {
        if pos >= seq.pre.len() {
            let phase = (pos - seq.pre.len()) % seq.period.len();
            if let Some(&start) = seen.get(&(phase, state)) {
                let period = out.split_off(start);
                return PeriodicSeq::new(out, period);
            }
            seen.insert((phase, state), out.len());
        }
        let (a, b) = (seq.bit(pos), seq.bit(pos + 1));
        let (emit, used, switch): (&[u8], usize, bool) = match (state, a, b) {
            (false, 0, 0) => (&[0], 2, false),
            (false, 0, 1) => (&[1, 0], 2, true),
            (false, 1, _) => (&[1, 1], 1, false),
            (true, 0, _) => (&[0, 0], 1, false),
            (true, 1, 0) => (&[0, 1], 2, true),
            (true, 1, 1) => (&[1], 2, false),
            _ => unreachable!("bits are 0 or 1"),
        };
        out.extend_from_slice(emit);
        pos += used;
        state ^= switch;
    }
}

/// `pre · period^ω`, kept canonical: minimal period, shortest preperiod.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicSeq {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl PeriodicSeq {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let mut s = PeriodicSeq { pre, period };
        s.canonicalize();
        s
    }

    pub fn constant(bit: u8) -> Self {
        PeriodicSeq::new(Vec::new(), vec![bit])
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        if let Some(d) = (1..p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| self.period[i] == self.period[i - d])) {
            self.period.truncate(d);
        }
        while let Some(&last) = self.pre.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn bit(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, k: usize) -> Vec<u8> {
        (0..k).map(|i| self.bit(i)).collect()
    }

    /// The sequence with its first `n` bits removed.
    pub fn drop(&self, n: usize) -> PeriodicSeq {
        if n <= self.pre.len() {
            return PeriodicSeq { pre: self.pre[n..].to_vec(), period: self.period.clone() };
        }
        let mut period = self.period.clone();
        let shift = (n - self.pre.len()) % period.len();
        period.rotate_left(shift);
        PeriodicSeq { pre: Vec::new(), period }
    }

    pub fn prepend(&self, bits: &[u8]) -> PeriodicSeq {
        let mut pre = bits.to_vec();
        pre.extend_from_slice(&self.pre);
        PeriodicSeq::new(pre, self.period.clone())
    }

    /// First index where the two sequences differ, if any.
    pub fn first_difference(&self, other: &PeriodicSeq) -> Option<usize> {
        if self == other {
            return None;
        }
        // Distinct canonical forms differ within the longer preperiod plus
        // the product of the periods.
        let bound = self.pre.len().max(other.pre.len()) + self.period.len() * other.period.len();
        (0..bound).find(|&i| self.bit(i) != other.bit(i))
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        f.write_str("(")?;
        for b in &self.period {
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PeriodicSeq {
    type Err = ParseError;

    /// `pre(period)`, e.g. `001(10)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let open = s.find('(').ok_or_else(|| ParseError::new(s.len(), "expected '(period)'"))?;
        let close = s[open..].find(')').map(|c| c + open).ok_or_else(|| ParseError::new(s.len(), "expected ')'"))?;
        if close + 1 != s.len() {
            return Err(ParseError::new(close + 1, "trailing input"));
        }
        let pre = parse_bits(&s[..open], 0)?;
        let period = parse_bits(&s[open + 1..close], open + 1)?;
        if period.is_empty() {
            return Err(ParseError::new(close, "period must be nonempty"));
        }
        Ok(PeriodicSeq::new(pre, period))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Character {
    Chi0,
    Chi1,
    Psi0,
    Psi1,
}

impl Character {
    pub const ALL: [Character; 4] = [Character::Chi0, Character::Chi1, Character::Psi0, Character::Psi1];

    pub fn defined_on(self, variant: Variant) -> bool {
        use Variant::*;
        match self {
            Character::Chi0 => matches!(variant, G | GY),
            Character::Chi1 => matches!(variant, G | YG),
            Character::Psi0 => matches!(variant, YG | YGY),
            Character::Psi1 => matches!(variant, GY | YGY),
        }
    }

    /// Value on a single positive generator.
    pub fn on_generator(self, kind: Kind, address: &Address) -> i64 {
        match (self, kind) {
            (Character::Chi0, Kind::X) if address.is_all(0) => -1,
            (Character::Chi1, Kind::X) if address.is_all(1) => 1,
            (Character::Psi0, Kind::Y) if address.is_all(0) => 1,
            (Character::Psi1, Kind::Y) if address.is_all(1) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Chi0 => "chi0",
            Character::Chi1 => "chi1",
            Character::Psi0 => "psi0",
            Character::Psi1 => "psi1",
        })
    }
}

impl FromStr for Character {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Character::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| ParseError::new(0, "character must be one of chi0, chi1, psi0, psi1"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LMWord {
    letters: Vec<Generator>,
    variant: Variant,
}

impl LMWord {
    pub fn new(letters: Vec<Generator>, variant: Variant) -> Result<Self, LmError> {
        if let Some(g) = letters.iter().find(|g| g.kind == Kind::Y && !variant.allows_y(&g.address)) {
            return Err(LmError::IllegalAddress { address: g.address.clone(), variant });
        }
        Ok(LMWord { letters, variant })
    }

    pub fn identity(variant: Variant) -> Self {
        LMWord { letters: Vec::new(), variant }
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Parses `x(011) y(01)' x()` in the given group.
    pub fn parse(s: &str, variant: Variant) -> Result<Self, LmError> {
        LMWord::new(parse_letters(s)?, variant)
    }

    pub fn then(&self, other: &LMWord) -> LMWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        LMWord { letters, variant: self.variant }
    }

    pub fn inverse(&self) -> LMWord {
        let letters = self.letters.iter().rev().map(|g| g.clone().inv()).collect();
        LMWord { letters, variant: self.variant }
    }

    /// The exact image of `seq`.
    pub fn apply(&self, seq: &PeriodicSeq) -> PeriodicSeq {
        self.letters.iter().rev().fold(seq.clone(), |acc, g| g.apply(&acc))
    }

    /// First `k` bits of the image of `seq`.
    pub fn evaluate_prefix(&self, seq: &PeriodicSeq, k: usize) -> Vec<u8> {
        self.apply(seq).prefix(k)
    }

    pub fn character(&self, c: Character) -> Result<i64, LmError> {
        if !c.defined_on(self.variant) {
            return Err(LmError::CharacterUndefined { character: c, variant: self.variant });
        }
        Ok(self.character_unchecked(c))
    }

    fn character_unchecked(&self, c: Character) -> i64 {
        self.letters
            .iter()
            .map(|g| c.on_generator(g.kind, &g.address) * if g.inverse { -1 } else { 1 })
            .sum()
    }

    /// Coordinates in the rank-two quotient spanned by the variant's two
    /// distinguished characters.
    pub fn quotient_image(&self) -> (i64, i64) {
        let [(s0, c0), (s1, c1)] = self.variant.quotient_basis();
        (s0 * self.character_unchecked(c0), s1 * self.character_unchecked(c1))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, variant: Variant, len: usize, max_depth: usize) -> LMWord {
        let mut letters = Vec::with_capacity(len);
        while letters.len() < len {
            let depth = rng.gen_range(0..=max_depth);
            let address = Address((0..depth).map(|_| rng.gen_range(0..2)).collect());
            let g = if rng.gen_bool(0.5) { Generator::x(address) } else { Generator::y(address) };
            if g.kind == Kind::Y && !variant.allows_y(&g.address) {
                continue;
            }
            letters.push(if rng.gen_bool(0.5) { g.inv() } else { g });
        }
        LMWord { letters, variant }
    }
}

fn parse_letters(s: &str) -> Result<Vec<Generator>, ParseError> {
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let kind = match bytes[pos] {
            b'x' => Kind::X,
            b'y' => Kind::Y,
            _ => return Err(ParseError::new(pos, "expected 'x' or 'y'")),
        };
        pos += 1;
        if bytes.get(pos) != Some(&b'(') {
            return Err(ParseError::new(pos, "expected '('"));
        }
        let close = s[pos..].find(')').map(|c| c + pos).ok_or_else(|| ParseError::new(s.len(), "expected ')'"))?;
        let inner = &s[pos + 1..close];
        let address = if inner == "ø" { Address::empty() } else { Address(parse_bits(inner, pos + 1)?) };
        pos = close + 1;
        let inverse = bytes.get(pos) == Some(&b'\'');
        if inverse {
            pos += 1;
        }
        out.push(Generator { kind, address, inverse });
    }
    Ok(out)
}

impl fmt::Display for LMWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LMWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.variant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "crate::report::display")]
    pub input: PeriodicSeq,
    #[serde(serialize_with = "crate::report::display")]
    pub left: PeriodicSeq,
    #[serde(serialize_with = "crate::report::display")]
    pub right: PeriodicSeq,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Comparison {
    Distinct(Witness),
    Indistinguishable { depth: usize },
}

impl Comparison {
    pub fn is_indistinguishable(&self) -> bool {
        matches!(self, Comparison::Indistinguishable { .. })
    }
}

/// The inputs probed at depth `d`: every length-`d` prefix followed by
/// `0^ω`, `1^ω` and `(10)^ω`.
pub fn probe_inputs(depth: usize) -> impl Iterator<Item = PeriodicSeq> {
    (0u64..1 << depth).flat_map(move |n| {
        let pre: Vec<u8> = (0..depth).map(|i| ((n >> (depth - 1 - i)) & 1) as u8).collect();
        [vec![0], vec![1], vec![1, 0]].into_iter().map(move |tail| PeriodicSeq::new(pre.clone(), tail))
    })
}

/// Compares the exact images of every probe input at depth `d`.
pub fn equal_up_to_depth(a: &LMWord, b: &LMWord, depth: usize) -> Comparison {
    for input in probe_inputs(depth) {
        let left = a.apply(&input);
        let right = b.apply(&input);
        if let Some(position) = left.first_difference(&right) {
            return Comparison::Distinct(Witness { input, left, right, position });
        }
    }
    Comparison::Indistinguishable { depth }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    LM1,
    LM2,
    LM3,
    LM4,
    LM5,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An instance of a defining relation, both sides as words in `_yG_y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub relation: Relation,
    pub s: Address,
    pub t: Option<Address>,
    pub lhs: LMWord,
    pub rhs: LMWord,
}

impl RelationInstance {
    /// Whether every `y` letter on both sides is a generator of `variant`.
    pub fn legal_in(&self, variant: Variant) -> bool {
        self.lhs.letters.iter().chain(&self.rhs.letters).all(|g| g.kind == Kind::X || variant.allows_y(&g.address))
    }

    /// The relator `lhs · rhs⁻¹` as a word in `variant`.
    pub fn relator(&self, variant: Variant) -> LMWord {
        let mut w = self.lhs.then(&self.rhs.inverse());
        w.variant = variant;
        w
    }
}

/// Instances of LM1–LM5 at `(s, t)`, with a reason for each one that does not apply.
pub fn relation_instances(s: &Address, t: &Address) -> Vec<Result<RelationInstance, (Relation, String)>> {
    let w = |gens: Vec<Generator>| LMWord { letters: gens, variant: Variant::YGY };
    let x = |a: &Address| Generator::x(a.clone());
    let y = |a: &Address| Generator::y(a.clone());
    let inst = |relation, t: Option<&Address>, lhs, rhs| {
        Ok(RelationInstance { relation, s: s.clone(), t: t.cloned(), lhs, rhs })
    };
    let mut out = Vec::new();
    out.push(inst(Relation::LM1, None, w(vec![x(s), x(s)]), w(vec![x(&s.child(&[1])), x(s), x(&s.child(&[0]))])));
    match s.image_under_x(t) {
        Some(xt) => {
            out.push(inst(Relation::LM2, Some(t), w(vec![x(s), x(t)]), w(vec![x(&xt), x(s)])));
            out.push(inst(Relation::LM3, Some(t), w(vec![x(s), y(t)]), w(vec![y(&xt), x(s)])));
        }
        None => {
            let why = format!("x_{s}({t}) is not defined");
            out.push(Err((Relation::LM2, why.clone())));
            out.push(Err((Relation::LM3, why)));
        }
    }
    if s.comparable(t) {
        out.push(Err((Relation::LM4, format!("{s} and {t} are comparable"))));
    } else {
        out.push(inst(Relation::LM4, Some(t), w(vec![y(s), y(t)]), w(vec![y(t), y(s)])));
    }
    out.push(inst(
        Relation::LM5,
        None,
        w(vec![y(s)]),
        w(vec![y(&s.child(&[1, 1])), y(&s.child(&[1, 0])).inv(), y(&s.child(&[0])), x(s)]),
    ));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub relation: Relation,
    pub instance: String,
    #[serde(flatten)]
    pub status: RelationStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RelationStatus {
    Passed,
    Failed { witness: Witness },
    Skipped { reason: String },
}

/// Checks every applicable relation at `(s, t)` in `variant` at depth `d`.
pub fn relation_suite(s: &Address, t: &Address, variant: Variant, depth: usize) -> Vec<RelationOutcome> {
    relation_instances(s, t)
        .into_iter()
        .map(|r| match r {
            Err((relation, reason)) => RelationOutcome { relation, instance: String::new(), status: RelationStatus::Skipped { reason } },
            Ok(inst) => {
                let instance = format!("{} = {}", inst.lhs, inst.rhs);
                let status = if !inst.legal_in(variant) {
                    RelationStatus::Skipped { reason: format!("uses a y generator outside {variant}") }
                } else {
                    match equal_up_to_depth(&inst.lhs, &inst.rhs, depth) {
                        Comparison::Indistinguishable { .. } => RelationStatus::Passed,
                        Comparison::Distinct(witness) => RelationStatus::Failed { witness },
                    }
                };
                RelationOutcome { relation: inst.relation, instance, status }
            }
        })
        .collect()
}

/// Per-variant tally of a relation sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub variant: Variant,
    pub checked: usize,
    pub failed: Vec<String>,
    /// Relators whose character values do not sum to zero.
    pub character_violations: Vec<String>,
}

/// Checks every instance of LM1–LM5 with `|s|, |t| ≤ max_len` in each of the
/// four groups. An instance legal in several groups is evaluated once, since
/// the maps do not depend on the group.
pub fn relation_sweep(max_len: usize, depth: usize) -> Vec<SweepSummary> {
    use rayon::prelude::*;
    use std::collections::BTreeMap;

    let addresses = Address::all_up_to(max_len);
    let mut unique: BTreeMap<String, RelationInstance> = BTreeMap::new();
    for s in &addresses {
        for t in &addresses {
            for inst in relation_instances(s, t).into_iter().flatten() {
                unique.entry(format!("{} = {}", inst.lhs, inst.rhs)).or_insert(inst);
            }
        }
    }
    let instances: Vec<(String, RelationInstance)> = unique.into_iter().collect();
    let verdicts: Vec<bool> = instances
        .par_iter()
        .map(|(_, inst)| equal_up_to_depth(&inst.lhs, &inst.rhs, depth).is_indistinguishable())
        .collect();

    Variant::ALL
        .iter()
        .map(|&variant| {
            let mut summary = SweepSummary { variant, checked: 0, failed: Vec::new(), character_violations: Vec::new() };
            for ((name, inst), ok) in instances.iter().zip(&verdicts) {
                if !inst.legal_in(variant) {
                    continue;
                }
                summary.checked += 1;
                if !ok {
                    summary.failed.push(name.clone());
                }
                let relator = inst.relator(variant);
                for c in Character::ALL.into_iter().filter(|c| c.defined_on(variant)) {
                    if relator.character_unchecked(c) != 0 {
                        summary.character_violations.push(format!("{c} on {name}"));
                    }
                }
            }
            summary
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PeriodicSeq {
        s.parse().unwrap()
    }

    fn word(s: &str) -> LMWord {
        LMWord::parse(s, Variant::YGY).unwrap()
    }

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_sequences() {
        assert_eq!(seq("0101(01)"), seq("(01)"));
        assert_eq!(seq("1(0101)"), seq("(10)"));
        assert_eq!(seq("(10)").to_string(), "(10)");
        assert_eq!(seq("001(10)").drop(3), seq("(10)"));
        assert_eq!(seq("(10)").drop(1), seq("(01)"));
    }

    #[test]
    fn x_on_examples() {
        assert_eq!(word("x()").evaluate_prefix(&seq("0(01)"), 5), vec![0, 1, 0, 1, 0]);
        assert_eq!(word("x()").evaluate_prefix(&seq("1(0)"), 2), vec![1, 1]);
        assert_eq!(word("x()").apply(&seq("01(1)")), seq("10(1)"));
    }

    #[test]
    fn y_fixes_zeros() {
        for k in 1..20 {
            assert_eq!(word("y()").evaluate_prefix(&PeriodicSeq::constant(0), k), vec![0; k]);
        }
        assert_eq!(word("y()").apply(&PeriodicSeq::constant(1)), PeriodicSeq::constant(1));
    }

    #[test]
    fn inverses_undo() {
        for w in ["x()", "y()", "x(01) y(1)' y()", "y(0)' x(10)"] {
            let w = word(w);
            let both = w.inverse().then(&w);
            for input in probe_inputs(6) {
                assert_eq!(both.apply(&input), input, "{w} on {input}");
            }
        }
    }

    #[test]
    fn x_differs_from_its_inverse() {
        let Comparison::Distinct(wit) = equal_up_to_depth(&word("x()"), &word("x()'"), 4) else {
            panic!("x and x⁻¹ should differ");
        };
        assert_eq!(&wit.input.prefix(2), &[0, 0]);
        assert!(equal_up_to_depth(&word("x(0) y(1)"), &word("x(0) y(1)"), 8).is_indistinguishable());
    }

    #[test]
    fn lm1_at_root() {
        assert!(equal_up_to_depth(&word("x() x()"), &word("x(1) x() x(0)"), 12).is_indistinguishable());
    }

    #[test]
    fn image_of_addresses() {
        assert_eq!(a("ø").image_under_x(&a("01")), Some(a("10")));
        assert_eq!(a("0").image_under_x(&a("000")), Some(a("00")));
        assert_eq!(a("ø").image_under_x(&a("0")), None);
        assert_eq!(a("1").image_under_x(&a("0")), None);
    }

    #[test]
    fn suite_examples() {
        let out = relation_suite(&a("ø"), &a("01"), Variant::YGY, 12);
        let lm2 = out.iter().find(|o| o.relation == Relation::LM2).unwrap();
        assert_eq!(lm2.instance, "x() x(01) = x(10) x()");
        assert_eq!(lm2.status, RelationStatus::Passed);
        let out = relation_suite(&a("0"), &a("1"), Variant::YGY, 12);
        let lm4 = out.iter().find(|o| o.relation == Relation::LM4).unwrap();
        assert_eq!(lm4.status, RelationStatus::Passed);
        assert!(out.iter().all(|o| !matches!(o.status, RelationStatus::Failed { .. })));
    }

    #[test]
    fn variants_restrict_y() {
        assert!(LMWord::parse("y()", Variant::G).is_err());
        assert!(LMWord::parse("y(00)", Variant::GY).is_err());
        assert!(LMWord::parse("y(00)", Variant::YG).is_ok());
        assert!(LMWord::parse("y(01)", Variant::G).is_ok());
    }

    #[test]
    fn characters() {
        let g = |s: &str| LMWord::parse(s, Variant::G).unwrap();
        assert_eq!(g("x(000)").character(Character::Chi0), Ok(-1));
        assert_eq!(g("x(01)").character(Character::Chi0), Ok(0));
        assert!(g("x(0)").character(Character::Psi0).is_err());
        for n in 0..=5 {
            let w = LMWord::new(vec![Generator::y(Address::constant(0, n))], Variant::YGY).unwrap();
            assert_eq!(w.character(Character::Psi0), Ok(1));
        }
    }

    #[test]
    fn quotient_images() {
        let g = |s: &str| LMWord::parse(s, Variant::G).unwrap();
        assert_eq!(g("x(0)").quotient_image(), (-1, 0));
        assert_eq!(g("x(1)").quotient_image(), (0, 1));
        assert_eq!(g("x()").quotient_image(), (-1, 1));
        assert_eq!(g("x(0) x(1)").quotient_image(), g("x()").quotient_image());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_letters("x(01) z(1)").unwrap_err().pos, 6);
        assert_eq!(parse_letters("x(0a)").unwrap_err().pos, 3);
        assert_eq!(word("x() y(01)'").to_string(), "x() y(01)'");
    }
}
