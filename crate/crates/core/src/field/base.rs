//! Scalar arithmetic for the two kinds of prime field: Q and Z_p.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FieldElement;
use crate::error::{Error, Result};

/// A prime field. Extensions are built on top of one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum BaseField {
    Rationals,
    Prime(u64),
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

impl BaseField {
    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(BigRational::zero()),
            BaseField::Prime(_) => FieldElement::Residue(0),
        }
    }

    pub fn one(self) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(BigRational::one()),
            BaseField::Prime(_) => FieldElement::Residue(1),
        }
    }

    /// Image of the integer `n` (that is, `n * 1`).
    pub fn from_int(self, n: i64) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => FieldElement::Residue((n as i128).rem_euclid(p as i128) as u64),
        }
    }

    pub fn contains(self, a: &FieldElement) -> bool {
        match (self, a) {
            (BaseField::Rationals, FieldElement::Rational(_)) => true,
            (BaseField::Prime(p), FieldElement::Residue(r)) => *r < p,
            _ => false,
        }
    }

    pub fn is_zero(self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue(r) => *r == 0,
            FieldElement::Coeffs(_) => false,
        }
    }

    pub fn is_one(self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue(r) => *r == 1,
            FieldElement::Coeffs(_) => false,
        }
    }

    pub fn add(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (BaseField::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (BaseField::Prime(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(((*x as u128 + *y as u128) % p as u128) as u64)
            }
            _ => panic!("base field operands of the wrong kind"),
        }
    }

    pub fn neg(self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (BaseField::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (BaseField::Prime(p), FieldElement::Residue(x)) => {
                FieldElement::Residue(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("base field operand of the wrong kind"),
        }
    }

    pub fn sub(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (BaseField::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (BaseField::Prime(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            _ => panic!("base field operands of the wrong kind"),
        }
    }

    pub fn inv(self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (BaseField::Rationals, FieldElement::Rational(x)) => Ok(FieldElement::Rational(x.recip())),
            (BaseField::Prime(p), FieldElement::Residue(x)) => Ok(FieldElement::Residue(mod_inverse(*x, p))),
            _ => panic!("base field operand of the wrong kind"),
        }
    }

    /// `None` for Q.
    pub fn order(self) -> Option<u64> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(p),
        }
    }

    pub fn rank(self, a: &FieldElement) -> Option<u64> {
        match a {
            FieldElement::Residue(r) => Some(*r),
            _ => None,
        }
    }
}

/// Inverse of `a` modulo prime `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn modular_inverse_matches_search() {
        for p in [2u64, 3, 5, 7, 13] {
            for a in 1..p {
                let expected = (1..p).find(|x| a * x % p == 1).unwrap();
                assert_eq!(mod_inverse(a, p), expected);
            }
        }
    }

    #[test]
    fn from_int_reduces_negatives() {
        let f = BaseField::Prime(5);
        assert_eq!(f.from_int(-1), FieldElement::Residue(4));
        assert_eq!(f.from_int(12), FieldElement::Residue(2));
    }
}
