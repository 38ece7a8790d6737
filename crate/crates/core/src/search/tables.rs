//! Rank-indexed arithmetic for the inner loops of the search engines.
//! Elements and vectors are identified with their canonical ranks.

use crate::field::Field;
use crate::linspace::Space;

/// Largest field order for which full `q x q` operation tables are built.
const ELEMENT_TABLE_LIMIT: u64 = 256;
/// Largest vector count for which full vector operation tables are built.
const VECTOR_TABLE_LIMIT: u64 = 1024;

enum ElementOps {
    Table { q: usize, add: Vec<u32>, mul: Vec<u32> },
    Generic(Field),
}

impl ElementOps {
    fn new(field: &Field, q: u64) -> Self {
        if q > ELEMENT_TABLE_LIMIT {
            return ElementOps::Generic(field.clone());
        }
        let elems: Vec<_> = field.elements().expect("finite").collect();
        let rank = |e| field.rank(&e).expect("finite") as u32;
        let mut add = Vec::with_capacity(elems.len() * elems.len());
        let mut mul = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                add.push(rank(field.add(a, b)));
                mul.push(rank(field.mul(a, b)));
            }
        }
        ElementOps::Table { q: q as usize, add, mul }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            ElementOps::Table { q, add, .. } => add[a as usize * q + b as usize] as u64,
            ElementOps::Generic(f) => {
                let (x, y) = (f.element_at(a).expect("rank"), f.element_at(b).expect("rank"));
                f.rank(&f.add(&x, &y)).expect("finite")
            }
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            ElementOps::Table { q, mul, .. } => mul[a as usize * q + b as usize] as u64,
            ElementOps::Generic(f) => {
                let (x, y) = (f.element_at(a).expect("rank"), f.element_at(b).expect("rank"));
                f.rank(&f.mul(&x, &y)).expect("finite")
            }
        }
    }
}

/// Addition and scalar multiplication on the vectors of a finite space,
/// by rank.
pub(crate) struct VectorOps {
    q: u64,
    dim: usize,
    size: u64,
    elem: ElementOps,
    add_table: Option<Vec<u64>>,
    scale_table: Option<Vec<u64>>,
}

impl VectorOps {
    pub fn new(space: &Space) -> Self {
        let q = space.field().finite_order().expect("finite");
        let size = space.cardinality().expect("fits");
        let mut ops = VectorOps {
            q,
            dim: space.dim(),
            size,
            elem: ElementOps::new(space.field(), q),
            add_table: None,
            scale_table: None,
        };
        if size <= VECTOR_TABLE_LIMIT && q <= VECTOR_TABLE_LIMIT {
            let add = (0..size)
                .flat_map(|a| (0..size).map(move |b| (a, b)))
                .map(|(a, b)| ops.add_digits(a, b))
                .collect();
            let scale = (0..q)
                .flat_map(|s| (0..size).map(move |v| (s, v)))
                .map(|(s, v)| ops.scale_digits(s, v))
                .collect();
            ops.add_table = Some(add);
            ops.scale_table = Some(scale);
        }
        ops
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for d in out.iter_mut().rev() {
            *d = v % self.q;
            v /= self.q;
        }
        out
    }

    fn compose(&self, digits: impl Iterator<Item = u64>) -> u64 {
        digits.fold(0, |acc, d| acc * self.q + d)
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.compose(x.into_iter().zip(y).map(|(s, t)| self.elem.add(s, t)))
    }

    fn scale_digits(&self, s: u64, v: u64) -> u64 {
        self.compose(self.digits(v).into_iter().map(|d| self.elem.mul(s, d)))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add_table {
            Some(t) => t[(a * self.size + b) as usize],
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn scale(&self, s: u64, v: u64) -> u64 {
        match &self.scale_table {
            Some(t) => t[(s * self.size + v) as usize],
            None => self.scale_digits(s, v),
        }
    }
}
