//! Orientation-preserving piecewise-linear homeomorphisms of `[0, ℓ]` with
//! exact breakpoints and slopes, and membership in the groups G([0,ℓ]; A, P).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{parse_number_at, AdditiveGroupSpec, ExactNumber, FactorError, SlopeGroupSpec};
use crate::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("interval length must be positive, got {0}")]
    NonPositiveLength(ExactNumber),
    #[error("breakpoints must be strictly increasing inside (0, {0})")]
    BadBreakpoints(ExactNumber),
    #[error("expected {expected} slopes, got {got}")]
    SlopeCount { expected: usize, got: usize },
    #[error("slope {0} is not positive")]
    NonPositiveSlope(ExactNumber),
    #[error("map sends {ell} to {image}, not to itself")]
    EndpointNotFixed { ell: ExactNumber, image: ExactNumber },
    #[error("{0} lies outside the domain")]
    OutOfDomain(ExactNumber),
    #[error("maps act on intervals of different length")]
    DomainMismatch,
    #[error("parameter {0} must be greater than 1")]
    ParameterTooSmall(ExactNumber),
}

/// `x ↦ f(x)` on `[0, ℓ]`, anchored at `f(0) = 0`, with slope `slopes[i]` on
/// the `i`-th piece between consecutive breakpoints.
///
/// Consecutive slopes always differ, so two maps are equal iff their fields are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    ell: ExactNumber,
    breaks: Vec<ExactNumber>,
    slopes: Vec<ExactNumber>,
}

impl PLMap {
    pub fn new(ell: ExactNumber, breaks: Vec<ExactNumber>, slopes: Vec<ExactNumber>) -> Result<Self, PlError> {
        if !ell.is_positive() {
            return Err(PlError::NonPositiveLength(ell));
        }
        let zero = ExactNumber::zero();
        let increasing = breaks.windows(2).all(|w| w[0] < w[1]);
        let inside = breaks.first().is_none_or(|b| b > &zero) && breaks.last().is_none_or(|b| b < &ell);
        if !increasing || !inside {
            return Err(PlError::BadBreakpoints(ell));
        }
        if slopes.len() != breaks.len() + 1 {
            return Err(PlError::SlopeCount { expected: breaks.len() + 1, got: slopes.len() });
        }
        if let Some(s) = slopes.iter().find(|s| !s.is_positive()) {
            return Err(PlError::NonPositiveSlope(s.clone()));
        }
        let map = PLMap { ell, breaks, slopes }.pruned();
        let image = map.value_at_end();
        if image != map.ell {
            return Err(PlError::EndpointNotFixed { ell: map.ell, image });
        }
        Ok(map)
    }

    pub fn identity(ell: ExactNumber) -> Self {
        PLMap::new(ell, Vec::new(), vec![ExactNumber::one()]).expect("identity is valid")
    }

    /// Identity on the unit interval.
    pub fn unit_identity() -> Self {
        PLMap::identity(ExactNumber::one())
    }

    pub fn ell(&self) -> &ExactNumber {
        &self.ell
    }

    pub fn breakpoints(&self) -> &[ExactNumber] {
        &self.breaks
    }

    pub fn slopes(&self) -> &[ExactNumber] {
        &self.slopes
    }

    pub fn is_identity(&self) -> bool {
        self.breaks.is_empty()
    }

    fn pruned(mut self) -> Self {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut slopes = vec![self.slopes[0].clone()];
        for (b, s) in self.breaks.drain(..).zip(self.slopes.drain(..).skip(1)) {
            if slopes.last() != Some(&s) {
                breaks.push(b);
                slopes.push(s);
            }
        }
        PLMap { ell: self.ell, breaks, slopes }
    }

    fn value_at_end(&self) -> ExactNumber {
        self.knot_values().pop().expect("at least one knot")
    }

    /// Values at `0`, each breakpoint, and `ℓ`.
    pub fn knot_values(&self) -> Vec<ExactNumber> {
        let mut out = Vec::with_capacity(self.breaks.len() + 2);
        let mut x = ExactNumber::zero();
        let mut y = ExactNumber::zero();
        out.push(y.clone());
        for (b, s) in self.breaks.iter().chain(std::iter::once(&self.ell)).zip(&self.slopes) {
            y = &y + &(s * &(b - &x));
            x = b.clone();
            out.push(y.clone());
        }
        out
    }

    /// Images of the breakpoints, in order.
    pub fn breakpoint_images(&self) -> Vec<ExactNumber> {
        let mut v = self.knot_values();
        v.pop();
        v.remove(0);
        v
    }

    fn piece_index(&self, x: &ExactNumber) -> usize {
        self.breaks.partition_point(|b| b <= x)
    }

    fn piece_start(&self, i: usize) -> ExactNumber {
        if i == 0 {
            ExactNumber::zero()
        } else {
            self.breaks[i - 1].clone()
        }
    }

    pub fn evaluate(&self, x: &ExactNumber) -> Result<ExactNumber, PlError> {
        if x.is_negative() || x > &self.ell {
            return Err(PlError::OutOfDomain(x.clone()));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &ExactNumber) -> ExactNumber {
        let i = self.piece_index(x).min(self.slopes.len() - 1);
        let start = self.piece_start(i);
        let base = if i == 0 { ExactNumber::zero() } else { self.knot_values()[i].clone() };
        &base + &(&self.slopes[i] * &(x - &start))
    }

    /// Slope on `[x, x + ε)`; for `x = ℓ` the last slope.
    pub fn slope_right_of(&self, x: &ExactNumber) -> &ExactNumber {
        &self.slopes[self.piece_index(x).min(self.slopes.len() - 1)]
    }

    pub fn slope_at_start(&self) -> &ExactNumber {
        &self.slopes[0]
    }

    pub fn slope_at_end(&self) -> &ExactNumber {
        self.slopes.last().expect("nonempty slopes")
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &PLMap) -> Result<PLMap, PlError> {
        if self.ell != other.ell {
            return Err(PlError::DomainMismatch);
        }
        let inner_inv = other.invert();
        let mut points: Vec<ExactNumber> = other.breaks.clone();
        points.extend(self.breaks.iter().map(|b| inner_inv.eval_unchecked(b)));
        points.sort();
        points.dedup();
        let mut slopes = Vec::with_capacity(points.len() + 1);
        for start in std::iter::once(ExactNumber::zero()).chain(points.iter().cloned()) {
            let inner = other.slope_right_of(&start);
            let outer = self.slope_right_of(&other.eval_unchecked(&start));
            slopes.push(outer * inner);
        }
        PLMap::new(self.ell.clone(), points, slopes)
    }

    pub fn invert(&self) -> PLMap {
        let breaks = self.breakpoint_images();
        let slopes = self.slopes.iter().map(|s| s.recip().expect("positive slope")).collect();
        PLMap::new(self.ell.clone(), breaks, slopes).expect("inverse of a valid map is valid")
    }

    /// Maximal open intervals on which `f(x) ≠ x`.
    pub fn support(&self) -> Vec<(ExactNumber, ExactNumber)> {
        let values = self.knot_values();
        let knots: Vec<ExactNumber> = std::iter::once(ExactNumber::zero())
            .chain(self.breaks.iter().cloned())
            .chain(std::iter::once(self.ell.clone()))
            .collect();
        let mut points = knots.clone();
        for i in 0..self.slopes.len() {
            let s = &self.slopes[i];
            if s.is_one() {
                continue;
            }
            // f(u) + s(x − u) = x  ⇒  x = (f(u) − s·u) / (1 − s)
            let u = &knots[i];
            let x = &(&values[i] - &(s * u)) / &(&ExactNumber::one() - s);
            if &x > u && x < knots[i + 1] {
                points.push(x);
            }
        }
        points.sort();
        points.dedup();

        let two = ExactNumber::from_int(2);
        let mut out: Vec<(ExactNumber, ExactNumber)> = Vec::new();
        for w in points.windows(2) {
            let mid = &(&w[0] + &w[1]) / &two;
            if self.eval_unchecked(&mid) == mid {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == w[0] && self.eval_unchecked(&w[0]) != w[0] => last.1 = w[1].clone(),
                _ => out.push((w[0].clone(), w[1].clone())),
            }
        }
        out
    }

    /// Exponent vectors of the slopes at `0⁺` and at `ℓ⁻` in `P`.
    pub fn endpoint_characters(&self, p: &SlopeGroupSpec) -> Result<(Vec<i64>, Vec<i64>), FactorError> {
        Ok((p.factor(self.slope_at_start())?, p.factor(self.slope_at_end())?))
    }

    pub fn is_member(&self, spec: &BieriStrebelSpec) -> bool {
        self.membership(spec).is_member()
    }

    /// Every clause of membership in G([0,ℓ]; A, P) that this map violates.
    pub fn membership(&self, spec: &BieriStrebelSpec) -> MembershipReport {
        let mut violations = Vec::new();
        if self.ell != spec.ell {
            violations.push(Violation::Domain { map: self.ell.clone(), group: spec.ell.clone() });
            return MembershipReport { violations };
        }
        for b in &self.breaks {
            if !spec.additive.contains(b) {
                violations.push(Violation::Singularity { at: b.clone() });
            }
        }
        for (b, fb) in self.breaks.iter().zip(self.breakpoint_images()) {
            if !spec.additive.contains(&fb) {
                violations.push(Violation::SingularityImage { at: b.clone(), image: fb });
            }
        }
        for s in &self.slopes {
            if !spec.slopes.contains(s) {
                violations.push(Violation::Slope { slope: s.clone() });
            }
        }
        MembershipReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    Domain {
        #[serde(serialize_with = "crate::report::display")]
        map: ExactNumber,
        #[serde(serialize_with = "crate::report::display")]
        group: ExactNumber,
    },
    Singularity {
        #[serde(serialize_with = "crate::report::display")]
        at: ExactNumber,
    },
    SingularityImage {
        #[serde(serialize_with = "crate::report::display")]
        at: ExactNumber,
        #[serde(serialize_with = "crate::report::display")]
        image: ExactNumber,
    },
    Slope {
        #[serde(serialize_with = "crate::report::display")]
        slope: ExactNumber,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Domain { map, group } => write!(f, "map acts on [0,{map}] but group on [0,{group}]"),
            Violation::Singularity { at } => write!(f, "breakpoint {at} not in A"),
            Violation::SingularityImage { at, image } => write!(f, "image {image} of breakpoint {at} not in A"),
            Violation::Slope { slope } => write!(f, "slope {slope} not in P"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("interval endpoint {0} is not in A")]
    EndpointNotInA(ExactNumber),
    #[error("P·A is not contained in A: {p}·{a} = {product}")]
    NotInvariant { p: ExactNumber, a: ExactNumber, product: ExactNumber },
    #[error("interval length must be positive")]
    NonPositiveLength,
}

/// The data (ℓ, A, P) of a group G([0,ℓ]; A, P).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BieriStrebelSpec {
    pub ell: ExactNumber,
    pub additive: AdditiveGroupSpec,
    pub slopes: SlopeGroupSpec,
}

impl BieriStrebelSpec {
    pub fn new(ell: ExactNumber, additive: AdditiveGroupSpec, slopes: SlopeGroupSpec) -> Result<Self, SpecError> {
        if !ell.is_positive() {
            return Err(SpecError::NonPositiveLength);
        }
        if !additive.contains(&ell) {
            return Err(SpecError::EndpointNotInA(ell));
        }
        for g in slopes.generators() {
            let inv = g.recip().expect("positive generator");
            for p in [g, &inv] {
                for a in additive.test_elements() {
                    let product = p * &a;
                    if !additive.contains(&product) {
                        return Err(SpecError::NotInvariant { p: p.clone(), a, product });
                    }
                }
            }
        }
        Ok(BieriStrebelSpec { ell, additive, slopes })
    }

    /// Thompson's group F = G([0,1]; Z[1/2], ⟨2⟩).
    pub fn thompson_f() -> Self {
        Self::new(ExactNumber::one(), AdditiveGroupSpec::ZInvN(2), SlopeGroupSpec::powers_of(2.into()))
            .expect("valid")
    }

    /// F_{2,3} = G([0,1]; Z[1/6], ⟨2,3⟩).
    pub fn stein_f23() -> Self {
        let p = SlopeGroupSpec::new(vec![2.into(), 3.into()]).expect("independent");
        Self::new(ExactNumber::one(), AdditiveGroupSpec::ZInvN(6), p).expect("valid")
    }

    /// F_τ = G([0,1]; Z[τ], ⟨τ⟩).
    pub fn cleary_f_tau() -> Self {
        Self::new(ExactNumber::one(), AdditiveGroupSpec::ZTau, SlopeGroupSpec::powers_of(ExactNumber::tau()))
            .expect("valid")
    }
}

impl fmt::Display for BieriStrebelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.ell, self.additive, self.slopes)
    }
}

impl FromStr for BieriStrebelSpec {
    type Err = ParseError;

    /// `"<ell> <A> <P>"`, e.g. `"1 Z[1/2] <2>"`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut parts = s.split_whitespace();
        let (Some(ell), Some(a), Some(p), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(0, "expected '<ell> <A> <P>'"));
        };
        let pos_of = |part: &str| part.as_ptr() as usize - s.as_ptr() as usize;
        let ell = parse_number_at(ell, pos_of(ell))?;
        let additive: AdditiveGroupSpec = a.parse().map_err(|e: ParseError| e.offset(pos_of(a)))?;
        let slopes: SlopeGroupSpec = p.parse().map_err(|e: ParseError| e.offset(pos_of(p)))?;
        BieriStrebelSpec::new(ell, additive, slopes).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

/// The generators f_p, g_q, h_r of the groups G(p, q, r), for exact
/// parameters greater than 1.
pub fn uncountable_family_generators(
    p: &ExactNumber,
    q: &ExactNumber,
    r: &ExactNumber,
) -> Result<[PLMap; 3], PlError> {
    Ok([contract_left(p)?, contract_middle(q)?, contract_middle(r)?])
}

/// f_p: slope 1/p on [0, 3p/(4p+4)], slope p up to 3/4, identity after.
pub fn contract_left(p: &ExactNumber) -> Result<PLMap, PlError> {
    check_parameter(p)?;
    let four = ExactNumber::from_int(4);
    let first = &(&ExactNumber::from_int(3) * p) / &(&(&four * p) + &four);
    let breaks = vec![first, ExactNumber::ratio(3, 4)];
    let slopes = vec![p.recip().expect("p > 1"), p.clone(), ExactNumber::one()];
    PLMap::new(ExactNumber::one(), breaks, slopes)
}

/// g_q (and h_r): identity on [0, 1/4], slope 1/q up to (4q+1)/(4q+4), slope q after.
pub fn contract_middle(q: &ExactNumber) -> Result<PLMap, PlError> {
    check_parameter(q)?;
    let four = ExactNumber::from_int(4);
    let second = &(&(&four * q) + &ExactNumber::one()) / &(&(&four * q) + &four);
    let breaks = vec![ExactNumber::ratio(1, 4), second];
    let slopes = vec![ExactNumber::one(), q.recip().expect("q > 1"), q.clone()];
    PLMap::new(ExactNumber::one(), breaks, slopes)
}

fn check_parameter(p: &ExactNumber) -> Result<(), PlError> {
    if p > &ExactNumber::one() {
        Ok(())
    } else {
        Err(PlError::ParameterTooSmall(p.clone()))
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl ell={} breaks=[", self.ell)?;
        write_list(f, &self.breaks)?;
        f.write_str("] slopes=[")?;
        write_list(f, &self.slopes)?;
        f.write_str("]")
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[ExactNumber]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl FromStr for PLMap {
    type Err = ParseError;

    /// `pl ell=<num> breaks=[<num>,...] slopes=[<num>,...]`
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut rest = s.trim_start();
        let mut pos = s.len() - rest.len();
        let expect = |lit: &str, rest: &mut &str, pos: &mut usize| -> Result<(), ParseError> {
            let trimmed = rest.trim_start();
            *pos += rest.len() - trimmed.len();
            match trimmed.strip_prefix(lit) {
                Some(r) => {
                    *pos += lit.len();
                    *rest = r;
                    Ok(())
                }
                None => Err(ParseError::new(*pos, format!("expected '{lit}'"))),
            }
        };
        expect("pl", &mut rest, &mut pos)?;
        expect("ell=", &mut rest, &mut pos)?;
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let ell = parse_number_at(&rest[..end], pos)?;
        rest = &rest[end..];
        pos += end;
        expect("breaks=[", &mut rest, &mut pos)?;
        let breaks = parse_list(&mut rest, &mut pos)?;
        expect("slopes=[", &mut rest, &mut pos)?;
        let slopes = parse_list(&mut rest, &mut pos)?;
        if !rest.trim().is_empty() {
            return Err(ParseError::new(pos + (rest.len() - rest.trim_start().len()), "trailing input"));
        }
        PLMap::new(ell, breaks, slopes).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

fn parse_list(rest: &mut &str, pos: &mut usize) -> Result<Vec<ExactNumber>, ParseError> {
    let close = rest.find(']').ok_or_else(|| ParseError::new(*pos + rest.len(), "missing ']'"))?;
    let body = &rest[..close];
    let mut out = Vec::new();
    if !body.trim().is_empty() {
        let mut at = *pos;
        for part in body.split(',') {
            out.push(parse_number_at(part, at)?);
            at += part.len() + 1;
        }
    }
    *pos += close + 1;
    *rest = &rest[close + 1..];
    Ok(out)
}
