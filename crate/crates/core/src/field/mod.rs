//! Exact scalar fields: Q, Z_p, and simple extensions `base[x]/(m)` of either.
//!
//! A [`Field`] is a validated, cheaply clonable handle. Elements are plain
//! values ([`FieldElement`]) and carry no reference to their field, so every
//! operation goes through the handle:
//!
//! ```
//! use linmap::field::{Field, FieldDescriptor};
//!
//! let gf4: Field = "Fq:2:1,1,1".parse::<FieldDescriptor>().unwrap().try_into().unwrap();
//! let alpha = gf4.generator().unwrap();
//! let sq = gf4.mul(&alpha, &alpha);
//! assert_eq!(sq, gf4.add(&alpha, &gf4.one()));
//! ```

mod base;
mod poly;
pub(crate) mod text;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

pub use base::is_prime;
pub(crate) use base::BaseField;
pub use poly::{find_irreducible, is_irreducible, Polynomial};
pub(crate) use text::format_rational;

use crate::error::{Error, Result};

/// An exact value in one field. The variant must match the owning field:
/// `Rational` for Q, `Residue` (in `[0, p)`) for Z_p, and `Coeffs` (base
/// elements in ascending degree, exactly `deg(modulus)` of them) for
/// extensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u64),
    Coeffs(Vec<FieldElement>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
    /// `base[x]/(modulus)`; the modulus is monic with coefficients in `base`.
    Extension {
        base: Box<FieldDescriptor>,
        modulus: Polynomial,
    },
}

/// A scalar of a prime field, tagged with where it came from, used to embed
/// the prime subfield into a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeScalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

#[derive(Debug)]
enum Kind {
    Base(BaseField),
    Extension {
        base: BaseField,
        modulus: Polynomial,
        degree: usize,
    },
}

#[derive(Debug)]
struct Inner {
    desc: FieldDescriptor,
    kind: Kind,
    /// `Some(q)` when finite and `q` fits in a `u64`.
    order: Option<u64>,
}

/// A validated field handle.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.inner.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.desc.fmt(f)
    }
}

impl TryFrom<FieldDescriptor> for Field {
    type Error = Error;

    fn try_from(desc: FieldDescriptor) -> Result<Self> {
        Field::new(desc)
    }
}

fn base_of(desc: &FieldDescriptor) -> Result<BaseField> {
    match desc {
        FieldDescriptor::Rationals => Ok(BaseField::Rationals),
        FieldDescriptor::Prime(p) => {
            if base::is_prime(*p) {
                Ok(BaseField::Prime(*p))
            } else {
                Err(Error::NonPrimeModulus(*p))
            }
        }
        FieldDescriptor::Extension { .. } => Err(Error::UnsupportedTower),
    }
}

impl Field {
    /// Validates the descriptor: primality of `p`, and for extensions a
    /// monic irreducible modulus of degree at least 2 over Q or Z_p.
    pub fn new(desc: FieldDescriptor) -> Result<Self> {
        let (kind, order) = match &desc {
            FieldDescriptor::Extension { base, modulus } => {
                let base = base_of(base)?;
                if !modulus.coeffs().iter().all(|c| base.contains(c)) {
                    return Err(Error::FieldMismatch("modulus coefficient".into()));
                }
                if !modulus.is_monic() {
                    return Err(Error::NonMonicModulus);
                }
                let degree = modulus.degree().expect("monic");
                if degree < 2 {
                    return Err(Error::DegenerateModulus(degree));
                }
                if !poly::is_irreducible_over(base, modulus)? {
                    return Err(Error::ReducibleModulus);
                }
                let order = base.order().and_then(|p| p.checked_pow(degree as u32));
                (
                    Kind::Extension {
                        base,
                        modulus: modulus.clone(),
                        degree,
                    },
                    order,
                )
            }
            other => {
                let base = base_of(other)?;
                (Kind::Base(base), base.order())
            }
        };
        Ok(Field {
            inner: Arc::new(Inner { desc, kind, order }),
        })
    }

    pub fn rationals() -> Self {
        Field::new(FieldDescriptor::Rationals).expect("Q is valid")
    }

    pub fn prime(p: u64) -> Result<Self> {
        Field::new(FieldDescriptor::Prime(p))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.inner.desc
    }

    /// The prime field underneath, or the field itself when prime.
    pub(crate) fn base(&self) -> BaseField {
        match self.inner.kind {
            Kind::Base(b) => b,
            Kind::Extension { base, .. } => base,
        }
    }

    /// `Some` only for Q and Z_p themselves.
    pub(crate) fn as_base(&self) -> Option<BaseField> {
        match self.inner.kind {
            Kind::Base(b) => Some(b),
            Kind::Extension { .. } => None,
        }
    }

    /// The prime subfield k as a field handle.
    pub fn prime_subfield(&self) -> Field {
        match self.base() {
            BaseField::Rationals => Field::rationals(),
            BaseField::Prime(p) => Field::prime(p).expect("already validated"),
        }
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        match &self.inner.kind {
            Kind::Base(_) => None,
            Kind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Degree over the prime subfield (1 for Q and Z_p).
    pub fn degree(&self) -> usize {
        match self.inner.kind {
            Kind::Base(_) => 1,
            Kind::Extension { degree, .. } => degree,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.inner.kind, Kind::Base(_))
    }

    pub fn is_finite(&self) -> bool {
        self.base() != BaseField::Rationals
    }

    /// Number of elements, `None` for infinite fields.
    pub fn order(&self) -> Result<Option<u64>> {
        match (self.is_finite(), self.inner.order) {
            (false, _) => Ok(None),
            (true, Some(q)) => Ok(Some(q)),
            (true, None) => Err(Error::OrderOverflow),
        }
    }

    /// Like [`Field::order`], but an infinite field is an error.
    pub fn finite_order(&self) -> Result<u64> {
        self.order()?
            .ok_or_else(|| Error::InfiniteField(self.to_string()))
    }

    /// 0 for Q and its extensions, p otherwise.
    pub fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    pub fn zero(&self) -> FieldElement {
        self.lift(self.base().zero())
    }

    pub fn one(&self) -> FieldElement {
        self.lift(self.base().one())
    }

    /// `n * 1`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.lift(self.base().from_int(n))
    }

    /// Class of `x` in an extension field.
    pub fn generator(&self) -> Option<FieldElement> {
        match &self.inner.kind {
            Kind::Base(_) => None,
            Kind::Extension { base, degree, .. } => {
                let mut coeffs = vec![base.zero(); *degree];
                coeffs[1] = base.one();
                Some(FieldElement::Coeffs(coeffs))
            }
        }
    }

    /// Embeds an element of the prime subfield (given in base form).
    pub(crate) fn lift(&self, scalar: FieldElement) -> FieldElement {
        match &self.inner.kind {
            Kind::Base(_) => scalar,
            Kind::Extension { base, degree, .. } => {
                let mut coeffs = vec![base.zero(); *degree];
                coeffs[0] = scalar;
                FieldElement::Coeffs(coeffs)
            }
        }
    }

    /// Coordinates of `a` over the prime subfield in the power basis
    /// `1, x, ..., x^(deg-1)`.
    pub fn prime_coords(&self, a: &FieldElement) -> Vec<FieldElement> {
        match a {
            FieldElement::Coeffs(c) => c.clone(),
            other => vec![other.clone()],
        }
    }

    /// The image of a prime-field scalar in this field.
    pub fn embed_prime(&self, scalar: &PrimeScalar) -> Result<FieldElement> {
        let chr = self.characteristic();
        match scalar {
            PrimeScalar::Rational(r) if chr == 0 => Ok(self.lift(FieldElement::Rational(r.clone()))),
            PrimeScalar::Rational(_) => Err(Error::CharacteristicMismatch { scalar: 0, field: chr }),
            PrimeScalar::Residue { value, modulus } if *modulus == chr => {
                Ok(self.lift(FieldElement::Residue(value % modulus)))
            }
            PrimeScalar::Residue { modulus, .. } => Err(Error::CharacteristicMismatch {
                scalar: *modulus,
                field: chr,
            }),
        }
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        match (&self.inner.kind, a) {
            (Kind::Base(b), _) => b.contains(a),
            (Kind::Extension { base, degree, .. }, FieldElement::Coeffs(c)) => {
                c.len() == *degree && c.iter().all(|x| base.contains(x))
            }
            _ => false,
        }
    }

    pub(crate) fn ensure(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string()))
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Coeffs(c) => c.iter().all(|x| self.base().is_zero(x)),
            other => self.base().is_zero(other),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Coeffs(c) => {
                let b = self.base();
                c.first().is_some_and(|x| b.is_one(x)) && c[1..].iter().all(|x| b.is_zero(x))
            }
            other => self.base().is_one(other),
        }
    }

    fn coeffs<'a>(&self, a: &'a FieldElement) -> &'a [FieldElement] {
        match a {
            FieldElement::Coeffs(c) => c,
            _ => panic!("expected an extension element"),
        }
    }

    fn pad(&self, p: Polynomial, degree: usize) -> FieldElement {
        let mut coeffs = p.coeffs().to_vec();
        coeffs.resize(degree, self.base().zero());
        FieldElement::Coeffs(coeffs)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match &self.inner.kind {
            Kind::Base(base) => base.add(a, b),
            Kind::Extension { base, .. } => FieldElement::Coeffs(
                self.coeffs(a)
                    .iter()
                    .zip(self.coeffs(b))
                    .map(|(x, y)| base.add(x, y))
                    .collect(),
            ),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match &self.inner.kind {
            Kind::Base(base) => base.neg(a),
            Kind::Extension { base, .. } => {
                FieldElement::Coeffs(self.coeffs(a).iter().map(|x| base.neg(x)).collect())
            }
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match &self.inner.kind {
            Kind::Base(base) => base.mul(a, b),
            Kind::Extension { base, modulus, degree } => {
                let pa = Polynomial::new(self.coeffs(a).to_vec());
                let pb = Polynomial::new(self.coeffs(b).to_vec());
                let product = poly::mul(*base, &pa, &pb);
                let reduced = poly::rem(*base, &product, modulus).expect("monic modulus");
                self.pad(reduced, *degree)
            }
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match &self.inner.kind {
            Kind::Base(base) => base.inv(a),
            Kind::Extension { base, modulus, degree } => {
                let pa = Polynomial::new(self.coeffs(a).to_vec());
                let (g, s) = poly::gcd_with_cofactor(*base, &pa, modulus)?;
                // the modulus is irreducible, so g is a nonzero constant
                debug_assert_eq!(g.degree(), Some(0));
                let scale = base.inv(&g.coeffs()[0])?;
                let s = poly::mul(*base, &s, &Polynomial::new(vec![scale]));
                let s = poly::rem(*base, &s, modulus)?;
                Ok(self.pad(s, *degree))
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked dispatcher: validates membership of the operands, and the
    /// presence of `b` for binary operations.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
        self.ensure(a)?;
        if let Some(b) = b {
            self.ensure(b)?;
        }
        let rhs = || b.ok_or_else(|| Error::parse(format!("{op:?} needs two operands")));
        match op {
            ArithOp::Add => Ok(self.add(a, rhs()?)),
            ArithOp::Sub => Ok(self.sub(a, rhs()?)),
            ArithOp::Mul => Ok(self.mul(a, rhs()?)),
            ArithOp::Div => self.div(a, rhs()?),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    /// Canonical rank of an element of a finite field: residues by value,
    /// extension elements as `sum c_i * p^i`.
    pub fn rank(&self, a: &FieldElement) -> Option<u64> {
        let p = self.base().order()?;
        match a {
            FieldElement::Coeffs(c) => c.iter().rev().try_fold(0u64, |acc, x| {
                acc.checked_mul(p)?.checked_add(self.base().rank(x)?)
            }),
            other => self.base().rank(other),
        }
    }

    /// Inverse of [`Field::rank`].
    pub fn element_at(&self, mut rank: u64) -> Option<FieldElement> {
        let q = self.order().ok()??;
        if rank >= q {
            return None;
        }
        match &self.inner.kind {
            Kind::Base(_) => Some(FieldElement::Residue(rank)),
            Kind::Extension { base, degree, .. } => {
                let p = base.order()?;
                let mut coeffs = Vec::with_capacity(*degree);
                for _ in 0..*degree {
                    coeffs.push(FieldElement::Residue(rank % p));
                    rank /= p;
                }
                Some(FieldElement::Coeffs(coeffs))
            }
        }
    }

    /// All elements of a finite field in rank order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.finite_order()?;
        Ok((0..q).map(move |r| self.element_at(r).expect("rank below order")))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => f.write_str(&format_rational(r)),
            FieldElement::Residue(r) => write!(f, "{r}"),
            FieldElement::Coeffs(c) => {
                f.write_str("[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    x.fmt(f)?;
                }
                f.write_str("]")
            }
        }
    }
}
