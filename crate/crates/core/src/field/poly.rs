//! Dense univariate polynomials over a prime field, plus the irreducibility
//! machinery used to validate extension moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::BaseField;
use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Coefficients in ascending degree. The highest stored coefficient is
/// nonzero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    /// Builds a polynomial, dropping zero high-degree coefficients.
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(is_zero_scalar) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| match c {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue(r) => *r == 1,
            FieldElement::Coeffs(_) => false,
        })
    }

    /// Human-readable form such as `x^3+x+1` or `x^2-2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if is_zero_scalar(c) {
                continue;
            }
            let (negative, magnitude) = match c {
                FieldElement::Rational(r) if r.is_negative() => (true, super::format_rational(&-r)),
                FieldElement::Rational(r) => (false, super::format_rational(r)),
                FieldElement::Residue(r) => (false, r.to_string()),
                FieldElement::Coeffs(_) => (false, "?".to_string()),
            };
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let unit = magnitude == "1";
            match i {
                0 => out.push_str(&magnitude),
                _ => {
                    if !unit {
                        out.push_str(&magnitude);
                        out.push('*');
                    }
                    out.push('x');
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

fn is_zero_scalar(c: &FieldElement) -> bool {
    match c {
        FieldElement::Rational(r) => r.is_zero(),
        FieldElement::Residue(r) => *r == 0,
        FieldElement::Coeffs(v) => v.iter().all(is_zero_scalar),
    }
}

pub(crate) fn add(base: BaseField, a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = base.zero();
    let out = (0..n)
        .map(|i| base.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
        .collect();
    Polynomial::new(out)
}

pub(crate) fn neg(base: BaseField, a: &Polynomial) -> Polynomial {
    Polynomial::new(a.coeffs.iter().map(|c| base.neg(c)).collect())
}

pub(crate) fn sub(base: BaseField, a: &Polynomial, b: &Polynomial) -> Polynomial {
    add(base, a, &neg(base, b))
}

pub(crate) fn mul(base: BaseField, a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(x, y));
        }
    }
    Polynomial::new(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn div_rem(base: BaseField, a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lead_inv = base.inv(b.leading().expect("nonzero"))?;
    let mut rem = a.coeffs.clone();
    let mut quot = vec![base.zero(); a.coeffs.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let top = rem.len() - 1;
        let c = base.mul(&rem[top], &lead_inv);
        let shift = top - db;
        if !base.is_zero(&c) {
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[shift + j] = base.sub(&rem[shift + j], &base.mul(&c, bc));
            }
        }
        quot[shift] = c;
        rem.pop();
    }
    Ok((Polynomial::new(quot), Polynomial::new(rem)))
}

pub(crate) fn rem(base: BaseField, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    Ok(div_rem(base, a, b)?.1)
}

/// Returns `(g, s)` with `g = s*a (mod m)` and `g = gcd(a, m)`.
pub(crate) fn gcd_with_cofactor(base: BaseField, a: &Polynomial, m: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let (mut old_r, mut r) = (a.clone(), m.clone());
    let (mut old_s, mut s) = (Polynomial::new(vec![base.one()]), Polynomial::zero());
    while !r.is_zero() {
        let (q, next_r) = div_rem(base, &old_r, &r)?;
        let next_s = sub(base, &old_s, &mul(base, &q, &s));
        old_r = std::mem::replace(&mut r, next_r);
        old_s = std::mem::replace(&mut s, next_s);
    }
    Ok((old_r, old_s))
}

pub(crate) fn eval(base: BaseField, p: &Polynomial, x: &FieldElement) -> FieldElement {
    p.coeffs
        .iter()
        .rev()
        .fold(base.zero(), |acc, c| base.add(&base.mul(&acc, x), c))
}

/// Monic polynomials of exactly `degree` over Z_p, in rank order of the
/// non-leading coefficient tuple (rank = sum of c_i * p^i).
fn monic_polys(p: u64, degree: usize) -> impl Iterator<Item = Polynomial> {
    let count = p.checked_pow(degree as u32).expect("desk-scale degree");
    (0..count).map(move |mut rank| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(FieldElement::Residue(rank % p));
            rank /= p;
        }
        coeffs.push(FieldElement::Residue(1));
        Polynomial::new(coeffs)
    })
}

/// Decides irreducibility of a monic polynomial over Z_p (any degree, by
/// exhaustive trial division) or over Q (degree at most 3, by the rational
/// root test).
pub fn is_irreducible(base: &Field, poly: &Polynomial) -> Result<bool> {
    let base = base.as_base().ok_or(Error::UnsupportedTower)?;
    is_irreducible_over(base, poly)
}

pub(crate) fn is_irreducible_over(base: BaseField, poly: &Polynomial) -> Result<bool> {
    if !poly.coeffs.iter().all(|c| base.contains(c)) {
        return Err(Error::FieldMismatch("polynomial coefficient".into()));
    }
    if !poly.is_monic() {
        return Err(Error::NonMonicModulus);
    }
    let degree = poly.degree().expect("monic implies nonzero");
    if degree == 0 {
        // units are not irreducible
        return Ok(false);
    }
    match base {
        BaseField::Prime(p) => {
            for d in 1..=degree / 2 {
                for candidate in monic_polys(p, d) {
                    if rem(base, poly, &candidate)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        BaseField::Rationals => {
            if degree > 3 {
                return Err(Error::UnsupportedDegree(degree));
            }
            Ok(degree == 1 || !has_rational_root(poly))
        }
    }
}

fn has_rational_root(poly: &Polynomial) -> bool {
    let rationals: Vec<&BigRational> = poly
        .coeffs
        .iter()
        .map(|c| match c {
            FieldElement::Rational(r) => r,
            _ => unreachable!("checked by caller"),
        })
        .collect();
    let lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rationals
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let constant = &ints[0];
    if constant.is_zero() {
        return true;
    }
    let leading = ints.last().expect("nonzero polynomial");
    let poly_q = Polynomial::new(poly.coeffs.clone());
    for num in divisors(constant) {
        for den in divisors(leading) {
            for sign in [1i32, -1] {
                let candidate = BigRational::new(BigInt::from(sign) * &num, den.clone());
                let value = eval(BaseField::Rationals, &poly_q, &FieldElement::Rational(candidate));
                if is_zero_scalar(&value) {
                    return true;
                }
            }
        }
    }
    false
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let root = n.sqrt();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= root {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The rank-smallest monic irreducible polynomial of `degree` over Z_p.
pub fn find_irreducible(base: &Field, degree: usize) -> Result<Polynomial> {
    let p = match base.as_base() {
        Some(BaseField::Prime(p)) => p,
        _ => return Err(Error::NotPrimeField(base.to_string())),
    };
    if degree < 2 {
        return Err(Error::DegenerateModulus(degree));
    }
    for candidate in monic_polys(p, degree) {
        if is_irreducible_over(BaseField::Prime(p), &candidate)? {
            return Ok(candidate);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over a finite field")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(coeffs: &[u64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| FieldElement::Residue(c)).collect())
    }

    fn q(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| FieldElement::Rational(BigRational::from_integer(c.into())))
                .collect(),
        )
    }

    #[test]
    fn trims_high_zeros() {
        assert_eq!(zp(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(zp(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_recovers_dividend() {
        let base = BaseField::Prime(5);
        let a = zp(&[3, 1, 4, 1, 2]);
        let b = zp(&[2, 0, 3]);
        let (quot, r) = div_rem(base, &a, &b).unwrap();
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(add(base, &mul(base, &quot, &b), &r), a);
    }

    #[test]
    fn small_irreducibles_over_z2() {
        let base = BaseField::Prime(2);
        assert!(is_irreducible_over(base, &zp(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible_over(base, &zp(&[1, 0, 1])).unwrap());
        assert!(is_irreducible_over(base, &zp(&[1, 1, 0, 1])).unwrap());
        assert!(!is_irreducible_over(base, &zp(&[1, 0, 1, 0, 1])).unwrap()); // (x^2+x+1)^2
    }

    #[test]
    fn rational_root_test() {
        let base = BaseField::Rationals;
        assert!(is_irreducible_over(base, &q(&[-2, 0, 1])).unwrap());
        assert!(!is_irreducible_over(base, &q(&[-4, 0, 1])).unwrap());
        assert!(is_irreducible_over(base, &q(&[-2, 0, 0, 1])).unwrap());
        assert!(!is_irreducible_over(base, &q(&[0, 1, 1])).unwrap());
        // 2x^2 - 1 scaled to monic: x^2 - 1/2, root-free over Q
        let half = Polynomial::new(vec![
            FieldElement::Rational(BigRational::new((-1).into(), 2.into())),
            FieldElement::Rational(BigRational::from_integer(0.into())),
            FieldElement::Rational(BigRational::from_integer(1.into())),
        ]);
        assert!(is_irreducible_over(base, &half).unwrap());
        // x^2 - 1/4 = (x - 1/2)(x + 1/2)
        let quarter = Polynomial::new(vec![
            FieldElement::Rational(BigRational::new((-1).into(), 4.into())),
            FieldElement::Rational(BigRational::from_integer(0.into())),
            FieldElement::Rational(BigRational::from_integer(1.into())),
        ]);
        assert!(!is_irreducible_over(base, &quarter).unwrap());
        assert_eq!(
            is_irreducible_over(base, &q(&[2, 0, 0, 0, 1])),
            Err(Error::UnsupportedDegree(4))
        );
    }

    #[test]
    fn non_monic_rejected() {
        assert_eq!(
            is_irreducible_over(BaseField::Prime(3), &zp(&[1, 2])),
            Err(Error::NonMonicModulus)
        );
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(zp(&[1, 1, 0, 1]).pretty(), "x^3+x+1");
        assert_eq!(q(&[-2, 0, 1]).pretty(), "x^2-2");
        assert_eq!(zp(&[2, 0, 1]).pretty(), "x^2+2");
        assert_eq!(q(&[0, 3]).pretty(), "3*x");
    }
}
