//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//!
//! Both kinds share the single [`FieldElement`] type so that polynomial and
//! derivation code is written once. Each element remembers its field; the
//! operator impls (`+`, `*`, ...) panic when operands come from different
//! fields, the `checked_*` methods report [`Error::FieldMismatch`] instead.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// The base field 𝕂: either `ℚ` or `F_p` for a validated prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// The prime field `F_p`. Composite `p` is rejected.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec(Kind::Prime(p)))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    /// `Some(p)` for `F_p`, `None` for `ℚ`.
    pub fn characteristic(&self) -> Option<u64> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// The image of an integer in this field.
    pub fn int(&self, n: i64) -> FieldElement {
        match self.0 {
            Kind::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.into()))),
            Kind::Prime(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                FieldElement(Repr::Residue { value: r, modulus: p })
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.0 {
            Kind::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.clone()))),
            Kind::Prime(p) => FieldElement(Repr::Residue { value: reduce_bigint(n, p), modulus: p }),
        }
    }

    /// `numer / denom` in this field.
    pub fn ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<FieldElement> {
        let d = self.from_bigint(denom);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(numer).checked_div(&d)
    }

    /// Embeds a rational number; over `F_p` the denominator must be a unit.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        self.ratio(q.numer(), q.denom())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => f.write_str("Q"),
            Kind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    // r < p fits in u64
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact element of ℚ or of `F_p`.
///
/// Rationals are kept in lowest terms with a positive denominator; residues
/// are kept in `[0, p)`. Ordering is by value within a field, which gives
/// hyperplanes a deterministic key order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self.0 {
            Repr::Rational(_) => FieldSpec(Kind::Rationals),
            Repr::Residue { modulus, .. } => FieldSpec(Kind::Prime(modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// Negative rationals; always `false` over `F_p`.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_negative(),
            Repr::Residue { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(value),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(FieldElement(Repr::Rational(a + b))),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                let s = (*a as u128 + *b as u128) % *p as u128;
                Ok(residue(s as u64, *p))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(FieldElement(Repr::Rational(a * b))),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q })
                if p == q =>
            {
                let s = (*a as u128 * *b as u128) % *p as u128;
                Ok(residue(s as u64, *p))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.0 {
            Repr::Rational(q) => Ok(FieldElement(Repr::Rational(q.recip()))),
            Repr::Residue { value, modulus } => Ok(residue(pow_mod(*value, modulus - 2, *modulus), *modulus)),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if self.spec() != rhs.spec() {
            return Err(Error::FieldMismatch);
        }
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

fn residue(value: u64, modulus: u64) -> FieldElement {
    FieldElement(Repr::Residue { value, modulus })
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let m = p as u128;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(-q)),
            Repr::Residue { value, modulus } => residue((modulus - value) % modulus, *modulus),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(-q)),
            Repr::Residue { value, modulus } => residue((modulus - value) % modulus, modulus),
        }
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }

        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldSpec::rationals().ratio(&n.into(), &d.into()).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(3, 7) + &FieldSpec::rationals().zero(), q(3, 7));
    }

    #[test]
    fn residue_sum_and_reduction() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(&f7.int(5) + &f7.int(4), f7.int(2));
        assert_eq!(f7.int(10), f7.int(3));
        assert_eq!(f7.int(-1), f7.int(6));
    }

    #[test]
    fn inverses() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.int(2).inv().unwrap(), f5.int(3));
        assert_eq!(q(-3, 4).inv().unwrap(), q(-4, 3));
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q(0, 1).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn lowest_terms() {
        let a = q(6, -4);
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f5.one().checked_add(&f7.one()), Err(Error::FieldMismatch));
        assert_eq!(f5.one().checked_mul(&q(1, 2)), Err(Error::FieldMismatch));
        assert_eq!(f5.one().checked_div(&f7.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(0), Err(Error::NotPrime(0)));
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
    }

    #[test]
    fn ratio_with_non_unit_denominator() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.ratio(&1.into(), &6.into()), Err(Error::DivisionByZero));
        assert_eq!(f3.ratio(&1.into(), &2.into()).unwrap(), f3.int(2));
    }

    #[test]
    fn fermat_identity() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = FieldSpec::prime(p).unwrap();
            let all: Vec<_> = (0..p as i64).map(|a| f.int(a)).collect();
            for a in &all {
                assert_eq!(a.pow(p), *a);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(FieldSpec::rationals()),
                Just(FieldSpec::prime(2).unwrap()),
                Just(FieldSpec::prime(7).unwrap()),
                Just(FieldSpec::prime(101).unwrap()),
            ]
        }

        fn elem(spec: FieldSpec, n: i64, d: i64) -> FieldElement {
            if spec.is_rationals() {
                spec.ratio(&n.into(), &d.into()).unwrap()
            } else {
                spec.int(n)
            }
        }

        proptest! {
            #[test]
            fn field_axioms(spec in spec_strategy(),
                            a in (-50i64..50, 1i64..20),
                            b in (-50i64..50, 1i64..20),
                            c in (-50i64..50, 1i64..20)) {
                let a = elem(spec, a.0, a.1);
                let b = elem(spec, b.0, b.1);
                let c = elem(spec, c.0, c.1);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }
}
