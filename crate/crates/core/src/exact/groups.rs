use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::parse::parse_number_at;
use super::ExactNumber;
use crate::ParseError;

/// The additive subgroups of R that singularities and breakpoint images may live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AdditiveGroupSpec {
    /// Z[1/n]: rationals whose reduced denominator divides a power of `n`.
    ZInvN(u64),
    /// Z[τ] = {a + bτ : a, b ∈ Z}.
    ZTau,
    /// All of Q.
    FullRational,
}

impl AdditiveGroupSpec {
    pub fn contains(&self, x: &ExactNumber) -> bool {
        match (self, x) {
            (AdditiveGroupSpec::ZInvN(n), ExactNumber::Rational(r)) => {
                denominator_divides_power(r.denom(), &BigInt::from(*n))
            }
            (AdditiveGroupSpec::ZInvN(_), ExactNumber::Quadratic(..)) => false,
            (AdditiveGroupSpec::ZTau, _) => {
                let (a, b) = x.coords();
                a.is_integer() && b.is_integer()
            }
            (AdditiveGroupSpec::FullRational, _) => x.is_rational(),
        }
    }

    /// A finite set that generates the group as a Z[P]-module for the
    /// slope groups used with it; used to test `P·A ⊆ A`.
    pub fn test_elements(&self) -> Vec<ExactNumber> {
        match self {
            AdditiveGroupSpec::ZInvN(n) => vec![ExactNumber::one(), ExactNumber::ratio(1, *n as i64)],
            AdditiveGroupSpec::ZTau => vec![ExactNumber::one(), ExactNumber::tau()],
            AdditiveGroupSpec::FullRational => vec![ExactNumber::one(), ExactNumber::ratio(1, 2)],
        }
    }
}

fn denominator_divides_power(den: &BigInt, n: &BigInt) -> bool {
    let mut d = den.clone();
    loop {
        if d.is_one() {
            return true;
        }
        let g = d.gcd(n);
        if g.is_one() {
            return false;
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

impl fmt::Display for AdditiveGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdditiveGroupSpec::ZInvN(n) => write!(f, "Z[1/{n}]"),
            AdditiveGroupSpec::ZTau => f.write_str("Z[t]"),
            AdditiveGroupSpec::FullRational => f.write_str("Q"),
        }
    }
}

impl FromStr for AdditiveGroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        match t {
            "Q" => return Ok(AdditiveGroupSpec::FullRational),
            "Z[t]" => return Ok(AdditiveGroupSpec::ZTau),
            _ => {}
        }
        let inner = t
            .strip_prefix("Z[1/")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(0, "expected Z[1/n], Z[t] or Q"))?;
        let n: u64 = inner.parse().map_err(|_| ParseError::new(4, "expected an integer n >= 2"))?;
        if n < 2 {
            return Err(ParseError::new(4, "n must be at least 2"));
        }
        Ok(AdditiveGroupSpec::ZInvN(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeGroupError {
    #[error("slope group needs at least one generator")]
    Empty,
    #[error("generator {0} is not positive")]
    NonPositive(ExactNumber),
    #[error("generator 1 generates nothing")]
    TrivialGenerator,
    #[error("generators are multiplicatively dependent")]
    Dependent,
    #[error("only rational generators, or a single generator, are supported")]
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{0} is not positive")]
    NotPositive(ExactNumber),
    #[error("{0} is not in the slope group")]
    NonMember(ExactNumber),
}

/// A finitely generated subgroup P of the positive reals, with generators
/// assumed multiplicatively independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeGroupSpec {
    generators: Vec<ExactNumber>,
    kind: SlopeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SlopeKind {
    /// All generators rational: exponent vectors over `primes`, one column per generator.
    Rational { primes: Vec<BigInt>, exponents: Vec<Vec<i64>> },
    /// One generator, possibly irrational: factor by repeated exact division.
    Single,
}

impl SlopeGroupSpec {
    pub fn new(generators: Vec<ExactNumber>) -> Result<Self, SlopeGroupError> {
        if generators.is_empty() {
            return Err(SlopeGroupError::Empty);
        }
        for g in &generators {
            if !g.is_positive() {
                return Err(SlopeGroupError::NonPositive(g.clone()));
            }
            if g.is_one() {
                return Err(SlopeGroupError::TrivialGenerator);
            }
        }
        let kind = if generators.iter().all(ExactNumber::is_rational) {
            let mut primes: Vec<BigInt> = Vec::new();
            for g in &generators {
                let r = g.as_rational().expect("rational generator");
                for p in prime_factors(r.numer()).into_iter().chain(prime_factors(r.denom())) {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                }
            }
            primes.sort();
            let exponents: Vec<Vec<i64>> = primes
                .iter()
                .map(|p| {
                    generators
                        .iter()
                        .map(|g| valuation(g.as_rational().expect("rational generator"), p))
                        .collect()
                })
                .collect();
            if rank(&exponents, generators.len()) < generators.len() {
                return Err(SlopeGroupError::Dependent);
            }
            SlopeKind::Rational { primes, exponents }
        } else if generators.len() == 1 {
            SlopeKind::Single
        } else {
            return Err(SlopeGroupError::Unsupported);
        };
        Ok(SlopeGroupSpec { generators, kind })
    }

    /// ⟨2⟩
    pub fn powers_of(g: ExactNumber) -> Self {
        SlopeGroupSpec::new(vec![g]).expect("valid single generator")
    }

    pub fn generators(&self) -> &[ExactNumber] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, x: &ExactNumber) -> bool {
        self.factor(x).is_ok()
    }

    /// The unique exponent vector `e` with `x = Π gᵢ^eᵢ`.
    pub fn factor(&self, x: &ExactNumber) -> Result<Vec<i64>, FactorError> {
        if !x.is_positive() {
            return Err(FactorError::NotPositive(x.clone()));
        }
        let non_member = || FactorError::NonMember(x.clone());
        match &self.kind {
            SlopeKind::Rational { primes, exponents } => {
                let r = x.as_rational().ok_or_else(non_member)?;
                let mut num = r.numer().clone();
                let mut den = r.denom().clone();
                let mut target = Vec::with_capacity(primes.len());
                for p in primes {
                    let up = strip_factor(&mut num, p);
                    let down = strip_factor(&mut den, p);
                    target.push(up - down);
                }
                if !num.is_one() || !den.is_one() {
                    return Err(non_member());
                }
                solve_integer(exponents, &target, self.generators.len()).ok_or_else(non_member)
            }
            SlopeKind::Single => {
                let g = &self.generators[0];
                let (step, sign) = if g > &ExactNumber::one() {
                    (g.clone(), 1)
                } else {
                    (g.recip().expect("positive generator"), -1)
                };
                let one = ExactNumber::one();
                let mut y = x.clone();
                let mut k: i64 = 0;
                while y > one {
                    y = &y / &step;
                    k += 1;
                }
                while y < one {
                    y = &y * &step;
                    k -= 1;
                }
                if y == one {
                    Ok(vec![sign * k])
                } else {
                    Err(non_member())
                }
            }
        }
    }

    /// `Π gᵢ^eᵢ`.
    pub fn expand(&self, exponents: &[i64]) -> ExactNumber {
        assert_eq!(exponents.len(), self.generators.len(), "exponent vector length");
        self.generators
            .iter()
            .zip(exponents)
            .fold(ExactNumber::one(), |acc, (g, &e)| &acc * &g.pow(e).expect("nonzero generator"))
    }
}

impl fmt::Display for SlopeGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for SlopeGroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| ParseError::new(lead, "expected <g1,g2,...>"))?;
        let mut gens = Vec::new();
        let mut pos = lead + 1;
        for part in inner.split(',') {
            gens.push(parse_number_at(part, pos)?);
            pos += part.len() + 1;
        }
        SlopeGroupSpec::new(gens).map_err(|e| ParseError::new(lead, e.to_string()))
    }
}

fn strip_factor(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    while !n.is_zero() && (&*n % p).is_zero() {
        *n /= p;
        k += 1;
    }
    k
}

fn valuation(r: &BigRational, p: &BigInt) -> i64 {
    let mut num = r.numer().abs();
    let mut den = r.denom().clone();
    strip_factor(&mut num, p) - strip_factor(&mut den, p)
}

/// Prime factors of |n| by trial division; generators are small in practice.
fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Row-reduces a copy of the rows × cols matrix over Q and returns its rank.
fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A e = b` over Z for a full-column-rank integer matrix `A`.
fn solve_integer(a: &[Vec<i64>], b: &[i64], cols: usize) -> Option<Vec<i64>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            row.iter()
                .chain(std::iter::once(&rhs))
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let lead = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=cols {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Rows below the pivots must be consistent.
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut e = vec![0i64; cols];
    for (row, &c) in pivots.iter().enumerate() {
        let v = &m[row][cols];
        if !v.is_integer() {
            return None;
        }
        e[c] = v.to_integer().to_i64()?;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> ExactNumber {
        s.parse().unwrap()
    }

    #[test]
    fn z_inv_n_membership() {
        let a = AdditiveGroupSpec::ZInvN(6);
        assert!(a.contains(&n("1/6")));
        assert!(a.contains(&n("5/72")));
        assert!(!a.contains(&n("1/5")));
        assert!(!a.contains(&ExactNumber::tau()));
    }

    #[test]
    fn z_tau_membership() {
        assert!(AdditiveGroupSpec::ZTau.contains(&n("2-3*t")));
        assert!(AdditiveGroupSpec::ZTau.contains(&n("4")));
        assert!(!AdditiveGroupSpec::ZTau.contains(&n("1/2+1*t")));
    }

    #[test]
    fn factor_over_two_and_three() {
        let p = SlopeGroupSpec::new(vec![n("2"), n("3")]).unwrap();
        assert_eq!(p.factor(&n("6")), Ok(vec![1, 1]));
        assert_eq!(p.factor(&n("4/27")), Ok(vec![2, -3]));
        assert_eq!(p.factor(&n("5")), Err(FactorError::NonMember(n("5"))));
        assert_eq!(p.factor(&n("-6")), Err(FactorError::NotPositive(n("-6"))));
        assert!(!p.contains(&ExactNumber::tau()));
    }

    #[test]
    fn factor_non_prime_generators() {
        let p = SlopeGroupSpec::new(vec![n("4"), n("6")]).unwrap();
        assert_eq!(p.factor(&n("24")), Ok(vec![1, 1]));
        assert_eq!(p.factor(&n("8/3")), Ok(vec![2, -1]));
        // 2 = 4^(1/2) is not an integer combination
        assert!(p.factor(&n("2")).is_err());
    }

    #[test]
    fn factor_over_tau() {
        let p = SlopeGroupSpec::powers_of(ExactNumber::tau());
        assert_eq!(p.factor(&n("1-1*t")), Ok(vec![2]));
        assert_eq!(p.factor(&n("1+1*t")), Ok(vec![-1]));
        assert_eq!(p.factor(&ExactNumber::one()), Ok(vec![0]));
        assert!(p.factor(&n("2")).is_err());
    }

    #[test]
    fn dependent_generators_rejected() {
        assert_eq!(SlopeGroupSpec::new(vec![n("2"), n("8")]), Err(SlopeGroupError::Dependent));
        assert_eq!(SlopeGroupSpec::new(vec![n("1")]), Err(SlopeGroupError::TrivialGenerator));
        assert_eq!(
            SlopeGroupSpec::new(vec![n("2"), ExactNumber::tau()]),
            Err(SlopeGroupError::Unsupported)
        );
    }

    #[test]
    fn spec_strings() {
        assert_eq!("Z[1/6]".parse::<AdditiveGroupSpec>().unwrap(), AdditiveGroupSpec::ZInvN(6));
        let p: SlopeGroupSpec = "<2,3>".parse().unwrap();
        assert_eq!(p.to_string(), "<2,3>");
        assert_eq!("<t>".parse::<SlopeGroupSpec>().unwrap().to_string(), "<t>");
    }
}
