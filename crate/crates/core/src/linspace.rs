//! Coordinate spaces `F^d`, exhaustive vector enumeration over finite
//! fields, and the decomposition of `F^d \ {0}` into scalar orbits
//! `{ l*u : l != 0 }`.
//!
//! Vectors are ordered lexicographically by coordinate rank with coordinate
//! 0 varying slowest, so `rank(v) = sum rank(v_i) * q^(d-1-i)`. Each orbit is
//! represented by its unique member whose first nonzero coordinate is 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::text::{split_top_level, unwrap_delimited};
use crate::field::{Field, FieldDescriptor, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<FieldElement>);

impl Vector {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            c.fmt(f)?;
        }
        f.write_str(")")
    }
}

/// `F^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    field: Field,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Vector,
    pub size: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VecOp {
    Add,
    ScalarMul,
}

impl Space {
    pub fn new(field: Field, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(Space { field, dim })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn descriptor(&self) -> (&FieldDescriptor, usize) {
        (self.field.descriptor(), self.dim)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.dim() == self.dim && v.0.iter().all(|c| self.field.contains(c))
    }

    pub(crate) fn ensure(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        for c in &v.0 {
            self.field.ensure(c)?;
        }
        Ok(())
    }

    pub fn zero(&self) -> Vector {
        Vector(vec![self.field.zero(); self.dim])
    }

    pub fn is_zero(&self, v: &Vector) -> bool {
        v.0.iter().all(|c| self.field.is_zero(c))
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v.0[i] = self.field.one();
        v
    }

    pub fn add(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        self.ensure(u)?;
        self.ensure(v)?;
        Ok(self.add_unchecked(u, v))
    }

    pub fn scale(&self, lambda: &FieldElement, v: &Vector) -> Result<Vector> {
        self.field.ensure(lambda)?;
        self.ensure(v)?;
        Ok(self.scale_unchecked(lambda, v))
    }

    pub fn neg(&self, v: &Vector) -> Result<Vector> {
        self.ensure(v)?;
        Ok(Vector(v.0.iter().map(|c| self.field.neg(c)).collect()))
    }

    pub(crate) fn add_unchecked(&self, u: &Vector, v: &Vector) -> Vector {
        Vector(u.0.iter().zip(&v.0).map(|(a, b)| self.field.add(a, b)).collect())
    }

    pub(crate) fn scale_unchecked(&self, lambda: &FieldElement, v: &Vector) -> Vector {
        Vector(v.0.iter().map(|c| self.field.mul(lambda, c)).collect())
    }

    /// Dispatcher over the two vector-space operations. `ScalarMul` expects
    /// `scalar` and uses `lhs` as the vector; `Add` expects `rhs`.
    pub fn vec_arith(
        &self,
        op: VecOp,
        lhs: &Vector,
        rhs: Option<&Vector>,
        scalar: Option<&FieldElement>,
    ) -> Result<Vector> {
        match op {
            VecOp::Add => {
                let rhs = rhs.ok_or_else(|| Error::parse("vector addition needs two operands"))?;
                self.add(lhs, rhs)
            }
            VecOp::ScalarMul => {
                let s = scalar.ok_or_else(|| Error::parse("scalar multiplication needs a scalar"))?;
                self.scale(s, lhs)
            }
        }
    }

    /// `q^dim`, erroring for infinite fields or on overflow.
    pub fn cardinality(&self) -> Result<u64> {
        let q = self.field.finite_order()?;
        q.checked_pow(self.dim as u32).ok_or(Error::OrderOverflow)
    }

    /// Rank of `v` in enumeration order.
    pub fn rank(&self, v: &Vector) -> Option<u64> {
        let q = self.field.order().ok()??;
        v.0.iter().try_fold(0u64, |acc, c| {
            acc.checked_mul(q)?.checked_add(self.field.rank(c)?)
        })
    }

    pub fn vector_at(&self, mut rank: u64) -> Option<Vector> {
        let q = self.field.order().ok()??;
        let mut coords = vec![self.field.zero(); self.dim];
        for slot in coords.iter_mut().rev() {
            *slot = self.field.element_at(rank % q)?;
            rank /= q;
        }
        (rank == 0).then_some(Vector(coords))
    }

    /// Every vector of a finite space, lexicographic in coordinate rank.
    pub fn vectors(&self) -> Result<impl Iterator<Item = Vector> + '_> {
        let n = self.cardinality()?;
        Ok((0..n).map(move |r| self.vector_at(r).expect("rank below cardinality")))
    }

    /// Vectors with ranks in `range`, for splitting enumeration across workers.
    pub fn vectors_in(&self, range: std::ops::Range<u64>) -> Result<impl Iterator<Item = Vector> + '_> {
        let n = self.cardinality()?;
        let range = range.start.min(n)..range.end.min(n);
        Ok(range.map(move |r| self.vector_at(r).expect("rank below cardinality")))
    }

    /// Splits nonzero `v` as `scale * rep` with the first nonzero coordinate
    /// of `rep` equal to 1.
    pub fn canonical_rep(&self, v: &Vector) -> Result<(Vector, FieldElement)> {
        self.ensure(v)?;
        let lead = v
            .0
            .iter()
            .find(|c| !self.field.is_zero(c))
            .ok_or(Error::ZeroVector)?
            .clone();
        let inv = self.field.inv(&lead)?;
        Ok((self.scale_unchecked(&inv, v), lead))
    }

    pub fn is_canonical(&self, v: &Vector) -> bool {
        v.0.iter()
            .find(|c| !self.field.is_zero(c))
            .is_some_and(|c| self.field.is_one(c))
    }

    /// `(q^dim - 1) / (q - 1)`.
    pub fn orbit_count(&self) -> Result<u64> {
        let q = self.field.finite_order()?;
        Ok((self.cardinality()? - 1) / (q - 1))
    }

    /// All scalar orbits, ordered by their representatives' enumeration order.
    pub fn orbits(&self) -> Result<Vec<Orbit>> {
        let size = self.field.finite_order()? - 1;
        Ok(self
            .vectors()?
            .filter(|v| self.is_canonical(v))
            .map(|representative| Orbit { representative, size })
            .collect())
    }

    /// Position of a canonical representative in [`Space::orbits`], computed
    /// without enumerating.
    ///
    /// Representatives with their leading 1 at coordinate `i` are preceded
    /// by all representatives with the pivot further right (which have
    /// smaller ranks), `1 + q + ... + q^(dim-2-i)` of them.
    pub fn orbit_index(&self, rep: &Vector) -> Option<u64> {
        if !self.is_canonical(rep) || rep.dim() != self.dim {
            return None;
        }
        let q = self.field.order().ok()??;
        let pivot = rep.0.iter().position(|c| !self.field.is_zero(c))?;
        let tail = &rep.0[pivot + 1..];
        let before: u64 = (0..tail.len() as u32).map(|t| q.pow(t)).sum();
        let offset = tail
            .iter()
            .try_fold(0u64, |acc, c| Some(acc * q + self.field.rank(c)?))?;
        Some(before + offset)
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        v.to_string()
    }

    /// Parses `(e0,e1,...)`.
    pub fn parse_vector(&self, s: &str) -> Result<Vector> {
        let inner = unwrap_delimited(s, '(', ')')?;
        let coords = split_top_level(inner)?
            .into_iter()
            .map(|c| self.field.parse_element(c))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(Vector(coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(field: &str, dim: usize) -> Space {
        Space::new(field.parse().unwrap(), dim).unwrap()
    }

    fn render(vs: impl Iterator<Item = Vector>) -> Vec<String> {
        vs.map(|v| v.to_string()).collect()
    }

    #[test]
    fn coordinate_arithmetic() {
        let q2 = space("Q", 2);
        let sum = q2.add(&q2.basis(0), &q2.basis(1)).unwrap();
        assert_eq!(sum.to_string(), "(1,1)");

        let z5 = space("Fp:5", 2);
        let v = z5.parse_vector("(1,2)").unwrap();
        let two = FieldElement::Residue(2);
        assert_eq!(z5.scale(&two, &v).unwrap().to_string(), "(2,4)");
        assert_eq!(
            z5.vec_arith(VecOp::ScalarMul, &v, None, Some(&two)).unwrap().to_string(),
            "(2,4)"
        );

        let q3 = space("Q", 3);
        assert_eq!(
            q2.add(&q2.basis(0), &q3.basis(1)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert!(matches!(
            z5.scale(&FieldElement::Residue(9), &v),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            render(space("Fp:2", 2).vectors().unwrap()),
            ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
        );
        assert_eq!(space("Fp:3", 1).vectors().unwrap().count(), 3);
        assert_eq!(space("Fq:2:1,1,1", 2).vectors().unwrap().count(), 16);
        assert!(matches!(space("Q", 1).vectors().err(), Some(Error::InfiniteField(_))));
        let s = space("Fp:3", 2);
        for (r, v) in s.vectors().unwrap().enumerate() {
            assert_eq!(s.rank(&v), Some(r as u64));
        }
    }

    #[test]
    fn canonical_representatives() {
        let z5 = space("Fp:5", 2);
        let (rep, scale) = z5.canonical_rep(&z5.parse_vector("(2,4)").unwrap()).unwrap();
        assert_eq!((rep.to_string(), scale), ("(1,2)".to_string(), FieldElement::Residue(2)));
        let (rep, scale) = z5.canonical_rep(&z5.parse_vector("(0,3)").unwrap()).unwrap();
        assert_eq!((rep.to_string(), scale), ("(0,1)".to_string(), FieldElement::Residue(3)));
        for f in ["Fp:3", "Q", "Fq:2:1,1,1"] {
            let s = space(f, 2);
            let ones = Vector(vec![s.field().one(); 2]);
            let (rep, scale) = s.canonical_rep(&ones).unwrap();
            assert_eq!(rep, ones);
            assert!(s.field().is_one(&scale));
        }
        assert_eq!(z5.canonical_rep(&z5.zero()), Err(Error::ZeroVector));
    }

    #[test]
    fn orbit_listing() {
        let z2 = space("Fp:2", 2);
        let reps: Vec<String> = z2
            .orbits()
            .unwrap()
            .into_iter()
            .map(|o| o.representative.to_string())
            .collect();
        assert_eq!(reps, ["(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(space("Fq:2:1,1,1", 2).orbits().unwrap().len(), 5);
        for f in ["Fp:2", "Fp:7", "Fq:3:1,0,1"] {
            let s = space(f, 1);
            let orbits = s.orbits().unwrap();
            assert_eq!(orbits.len(), 1);
            assert_eq!(orbits[0].representative, s.basis(0));
        }
    }

    #[test]
    fn orbit_index_matches_listing() {
        for (f, d) in [("Fp:2", 4), ("Fp:3", 3), ("Fq:2:1,1,1", 3), ("Fp:5", 2)] {
            let s = space(f, d);
            for (i, o) in s.orbits().unwrap().iter().enumerate() {
                assert_eq!(s.orbit_index(&o.representative), Some(i as u64));
            }
            assert_eq!(s.orbit_index(&s.zero()), None);
        }
    }

    #[test]
    fn vector_parsing() {
        let gf4 = space("Fq:2:1,1,1", 2);
        let v = gf4.parse_vector("([0,1],[1,1])").unwrap();
        assert_eq!(v.to_string(), "([0,1],[1,1])");
        assert!(gf4.parse_vector("([0,1])").is_err());
        assert!(gf4.parse_vector("[0,1],[1,1]").is_err());
    }
}
