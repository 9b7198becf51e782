use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithmeticError;

/// An element of Q(√5), stored in the basis (1, τ) with τ = (√5 − 1)/2.
///
/// Values whose τ-coordinate vanishes are always stored as `Rational`, so
/// structural equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    Rational(BigRational),
    /// `a + b·τ`, with `b ≠ 0`.
    Quadratic(BigRational, BigRational),
}

impl ExactNumber {
    pub fn zero() -> Self {
        ExactNumber::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactNumber::Rational(BigRational::one())
    }

    /// The small golden ratio τ = (√5 − 1)/2 ≈ 0.618.
    pub fn tau() -> Self {
        ExactNumber::Quadratic(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactNumber::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExactNumber::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactNumber::Rational(r)
    }

    /// `a + b·τ`, collapsed to a rational when `b = 0`.
    pub fn quadratic(a: BigRational, b: BigRational) -> Self {
        if b.is_zero() {
            ExactNumber::Rational(a)
        } else {
            ExactNumber::Quadratic(a, b)
        }
    }

    /// Coordinates in the basis (1, τ).
    pub fn coords(&self) -> (BigRational, BigRational) {
        match self {
            ExactNumber::Rational(r) => (r.clone(), BigRational::zero()),
            ExactNumber::Quadratic(a, b) => (a.clone(), b.clone()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactNumber::Rational(r) => Some(r),
            ExactNumber::Quadratic(..) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactNumber::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactNumber::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactNumber::Rational(r) if r.is_one())
    }

    /// Exact sign: −1, 0 or 1.
    ///
    /// For `a + bτ` we have `2(a + bτ) = (2a − b) + b√5`, so the sign is that of
    /// `p + q√5` with `p = 2a − b`, `q = b`, decided by comparing `p²` with `5q²`.
    pub fn signum(&self) -> i8 {
        match self {
            ExactNumber::Rational(r) => sign_of(r),
            ExactNumber::Quadratic(a, b) => {
                let p = a * BigRational::from_integer(2.into()) - b;
                let q = b.clone();
                sign_of_p_plus_q_root5(&p, &q)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate, sending √5 to −√5 (so τ to −1 − τ).
    pub fn conjugate(&self) -> Self {
        match self {
            ExactNumber::Rational(_) => self.clone(),
            ExactNumber::Quadratic(a, b) => ExactNumber::quadratic(a - b, -b),
        }
    }

    /// Field norm `x · conj(x) = a² − ab − b²`.
    pub fn norm(&self) -> BigRational {
        match self {
            ExactNumber::Rational(r) => r * r,
            ExactNumber::Quadratic(a, b) => a * a - a * b - b * b,
        }
    }

    pub fn recip(&self) -> Result<Self, ArithmeticError> {
        match self {
            ExactNumber::Rational(r) => {
                if r.is_zero() {
                    Err(ArithmeticError::DivisionByZero)
                } else {
                    Ok(ExactNumber::Rational(r.recip()))
                }
            }
            ExactNumber::Quadratic(..) => {
                // x⁻¹ = conj(x) / N(x); N(x) ≠ 0 since √5 is irrational.
                let n = self.norm();
                let (ca, cb) = self.conjugate().coords();
                Ok(ExactNumber::quadratic(ca / &n, cb / &n))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithmeticError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self, ArithmeticError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = ExactNumber::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// A decimal approximation, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (a, b) = self.coords();
        let tau = (5f64.sqrt() - 1.0) / 2.0;
        a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * tau
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_of_p_plus_q_root5(p: &BigRational, q: &BigRational) -> i8 {
    let sp = sign_of(p);
    let sq = sign_of(q);
    match (sp, sq) {
        (0, s) | (s, 0) => s,
        (1, 1) => 1,
        (-1, -1) => -1,
        _ => {
            // Opposite signs: the term with the larger square wins.
            let p2 = p * p;
            let q2 = q * q * BigRational::from_integer(5.into());
            match p2.cmp(&q2) {
                Ordering::Greater => sp,
                Ordering::Less => sq,
                // p² = 5q² has no nonzero rational solution.
                Ordering::Equal => unreachable!("p^2 = 5 q^2 with p, q nonzero rationals"),
            }
        }
    }
}

impl Default for ExactNumber {
    fn default() -> Self {
        ExactNumber::zero()
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        ExactNumber::from_int(n)
    }
}

impl From<BigRational> for ExactNumber {
    fn from(r: BigRational) -> Self {
        ExactNumber::Rational(r)
    }
}

impl Ord for ExactNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (ExactNumber::Rational(a), ExactNumber::Rational(b)) = (self, other) {
            return a.cmp(b);
        }
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExactNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Neg for &'a ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        match self {
            ExactNumber::Rational(r) => ExactNumber::Rational(-r),
            ExactNumber::Quadratic(a, b) => ExactNumber::Quadratic(-a, -b),
        }
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

impl<'a, 'b> Add<&'b ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn add(self, rhs: &'b ExactNumber) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => ExactNumber::Rational(x + y),
            _ => {
                let (a, b) = self.coords();
                let (c, d) = rhs.coords();
                ExactNumber::quadratic(a + c, b + d)
            }
        }
    }
}

impl<'a, 'b> Sub<&'b ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: &'b ExactNumber) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => ExactNumber::Rational(x - y),
            _ => {
                let (a, b) = self.coords();
                let (c, d) = rhs.coords();
                ExactNumber::quadratic(a - c, b - d)
            }
        }
    }
}

impl<'a, 'b> Mul<&'b ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn mul(self, rhs: &'b ExactNumber) -> ExactNumber {
        match (self, rhs) {
            (ExactNumber::Rational(x), ExactNumber::Rational(y)) => ExactNumber::Rational(x * y),
            _ => {
                // (a + bτ)(c + dτ) = ac + (ad + bc)τ + bd·τ², with τ² = 1 − τ.
                let (a, b) = self.coords();
                let (c, d) = rhs.coords();
                let bd = &b * &d;
                ExactNumber::quadratic(&a * &c + &bd, &a * &d + &b * &c - bd)
            }
        }
    }
}

/// Panics on division by zero, like `BigRational`; see [`ExactNumber::checked_div`].
impl<'a, 'b> Div<&'b ExactNumber> for &'a ExactNumber {
    type Output = ExactNumber;
    fn div(self, rhs: &'b ExactNumber) -> ExactNumber {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: ExactNumber) -> ExactNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ExactNumber> for ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: &'a ExactNumber) -> ExactNumber { (&self).$m(rhs) }
        }
        impl<'a> $tr<ExactNumber> for &'a ExactNumber {
            type Output = ExactNumber;
            fn $m(self, rhs: ExactNumber) -> ExactNumber { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Rational(r) => write_rational(f, r),
            ExactNumber::Quadratic(a, b) => {
                if !a.is_zero() {
                    write_rational(f, a)?;
                    if b.is_positive() {
                        f.write_str("+")?;
                    }
                }
                if b.is_negative() {
                    f.write_str("-")?;
                }
                if !b.abs().is_one() {
                    write_rational(f, &b.abs())?;
                    f.write_str("*")?;
                }
                f.write_str("t")
            }
        }
    }
}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}
