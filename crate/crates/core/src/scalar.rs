//! Exact field elements: rationals and residues modulo a prime.
//!
//! Rationals keep an `i64` numerator/denominator pair while the values stay
//! small and switch to big integers on overflow. Both representations are
//! always fully reduced, so structural equality is numeric equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("cannot parse {text:?} as an exact element of {field}: {reason}")]
    Parse {
        text: String,
        field: FieldSpec,
        reason: String,
    },
}

/// The coefficient field of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Checked constructor for `F_p`. Moduli are limited to 32 bits so that
    /// products of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p < (1 << 32) && is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(Rational::from_integer(n)),
            FieldSpec::PrimeField(p) => {
                Scalar::Residue(Residue::new(n.rem_euclid(p as i64) as u64, p))
            }
        }
    }

    /// `num / den` as a field element; `None` when `den` vanishes in the field.
    pub fn fraction(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den).inv()?;
        Some(self.from_i64(num) * d)
    }

    /// Parses the exact textual form: `"3"`, `"-1/2"`. Decimal points and
    /// exponents are rejected.
    pub fn parse(self, text: &str) -> Result<Scalar, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            text: text.to_string(),
            field: self,
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let (num_txt, den_txt) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let parse_int = |s: &str| -> Result<BigInt, ScalarError> {
            let digits = s
                .strip_prefix('-')
                .or_else(|| s.strip_prefix('+'))
                .unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("expected an integer or a fraction p/q of integers"));
            }
            BigInt::from_str(s).map_err(|e| err(&e.to_string()))
        };
        let num = parse_int(num_txt)?;
        let den = match den_txt {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        match self {
            FieldSpec::Rationals => {
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                Ok(Scalar::Rational(Rational::from_big(BigRational::new(
                    num, den,
                ))))
            }
            FieldSpec::PrimeField(p) => {
                let reduce = |n: &BigInt| {
                    let m = BigInt::from(p);
                    (((n % &m) + &m) % &m)
                        .to_u64()
                        .expect("residue fits in u64")
                };
                let n = Scalar::Residue(Residue::new(reduce(&num), p));
                let d = Scalar::Residue(Residue::new(reduce(&den), p));
                let d_inv = d
                    .inv()
                    .ok_or_else(|| err("denominator vanishes modulo p"))?;
                Ok(n * d_inv)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(Repr);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Small(Ratio<i64>),
    // only used when the value does not fit `Small`
    Big(BigRational),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small(Ratio::from_integer(n)))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    fn combine(
        &self,
        other: &Rational,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(r) = small(a, b) {
                if *r.numer() != i64::MIN {
                    return Rational(Repr::Small(r));
                }
            }
        }
        Rational::from_big(big(&self.to_big(), &other.to_big()))
    }

    pub fn add(&self, other: &Rational) -> Rational {
        self.combine(other, |a, b| a.checked_add(b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.combine(other, |a, b| a.checked_sub(b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        self.combine(other, |a, b| a.checked_mul(b), |a, b| a * b)
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            // i64::MIN is never stored in Small, so negation cannot overflow
            Repr::Small(r) => Rational(Repr::Small(-*r)),
            Repr::Big(r) => Rational::from_big(-r),
        }
    }

    pub fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) => Rational(Repr::Small(r.recip())),
            Repr::Big(r) => Rational::from_big(r.recip()),
        })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{r}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

/// A residue in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Residue { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Residue {
        let (mut base, mut acc) = (self.value, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Residue::new(acc, self.modulus)
    }
}

/// An element of a [`FieldSpec`]. Mixing elements of different fields in
/// arithmetic is an invariant violation and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue(r) => FieldSpec::PrimeField(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => *r == Rational::from_integer(1),
            Scalar::Residue(r) => r.value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => r.inv().map(Scalar::Rational),
            Scalar::Residue(r) if r.value == 0 => None,
            Scalar::Residue(r) => Some(Scalar::Residue(r.pow(r.modulus - 2))),
        }
    }

    /// Multiplies by `(-1)^exponent`.
    pub fn signed(self, exponent: i64) -> Scalar {
        if exponent.rem_euclid(2) == 0 {
            self
        } else {
            -self
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.add(b)),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Scalar::Residue(Residue::new((a.value + b.value) % a.modulus, a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.sub(b)),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => Scalar::Residue(
                Residue::new((a.value + a.modulus - b.value) % a.modulus, a.modulus),
            ),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.mul(b)),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Scalar::Residue(Residue::new(a.value * b.value % a.modulus, a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.neg()),
            Scalar::Residue(a) => {
                Scalar::Residue(Residue::new((a.modulus - a.value) % a.modulus, a.modulus))
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $assign_tr<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_print_in_lowest_terms() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse("3").unwrap().to_string(), "3");
        assert_eq!(q.parse("-2/4").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn floats_are_rejected() {
        let q = FieldSpec::Rationals;
        assert!(q.parse("0.5").is_err());
        assert!(q.parse("1e3").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(FieldSpec::PrimeField(5).parse("2.0").is_err());
    }

    #[test]
    fn residues() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse("-1").unwrap().to_string(), "4");
        assert_eq!(f.parse("1/2").unwrap().to_string(), "3");
        let two = f.from_i64(2);
        assert!((&two * &two.inv().unwrap()).is_one());
        assert!(f.parse("1/5").is_err());
        assert_eq!(FieldSpec::prime(4), Err(ScalarError::NotPrime(4)));
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let q = FieldSpec::Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        let Scalar::Rational(r) = &sq else {
            unreachable!()
        };
        assert_eq!(r.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let back = sq * big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(&back, Scalar::Rational(Rational(Repr::Small(_)))));
        let min = q.parse("-9223372036854775808").unwrap();
        assert_eq!((-&min).to_string(), "9223372036854775808");
    }
}
