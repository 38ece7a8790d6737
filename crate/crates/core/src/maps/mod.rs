//! Maps `phi: F^m -> F^n`, the classical constructions separating
//! additivity from homogeneity, and checkers that extract witnesses.

mod check;
mod file;
mod trace;

pub use check::{
    check_additive, check_homogeneous, check_linear, CheckReport, Property, Strategy, Verdict, Witness,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
pub use file::{MapFile, MapPayload, ReportDoc, WitnessDoc};
pub use trace::{rational_proof_trace, ProofTrace, TraceStep};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linspace::{Space, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapBody {
    /// Image of every domain vector, indexed by vector rank.
    Table(Vec<Vector>),
    /// Image of each orbit representative, indexed by orbit index; extended
    /// to the whole space by `phi(s * rep) = s * phi(rep)` and `phi(0) = 0`.
    OrbitTable(Vec<Vector>),
    /// Prime-subfield-linear map `F -> F` given by the images of the power
    /// basis `1, a, ..., a^(deg-1)`.
    KLinearExtension(Vec<FieldElement>),
    /// `(x, y) -> xy / (x + y)`, and 0 where `x + y = 0`.
    Ratio,
    /// Over Z_2: `0 -> 0`, everything else `-> 1`.
    Indicator,
    /// Ordinary matrix map, one row per codomain coordinate.
    Matrix(Vec<Vec<FieldElement>>),
}

impl MapBody {
    pub fn kind(&self) -> &'static str {
        match self {
            MapBody::Table(_) => "table",
            MapBody::OrbitTable(_) => "orbit_table",
            MapBody::KLinearExtension(_) => "klinear_extension",
            MapBody::Ratio => "ratio",
            MapBody::Indicator => "indicator",
            MapBody::Matrix(_) => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    domain: Space,
    codomain: Space,
    body: MapBody,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMap(msg.into())
}

impl MapSpec {
    /// Validates the shape constraints of each body kind.
    pub fn new(domain: Space, codomain: Space, body: MapBody) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(invalid("domain and codomain are over different fields"));
        }
        let field = domain.field().clone();
        let (m, n) = (domain.dim(), codomain.dim());
        let all_in_codomain = |vs: &[Vector]| {
            vs.iter().try_for_each(|v| codomain.ensure(v))
        };
        match &body {
            MapBody::Table(entries) => {
                let size = domain.cardinality()?;
                if entries.len() as u64 != size {
                    return Err(invalid(format!("table has {} entries, domain has {size} vectors", entries.len())));
                }
                all_in_codomain(entries)?;
            }
            MapBody::OrbitTable(values) => {
                let count = domain.orbit_count()?;
                if values.len() as u64 != count {
                    return Err(invalid(format!("orbit table has {} values, domain has {count} orbits", values.len())));
                }
                all_in_codomain(values)?;
            }
            MapBody::KLinearExtension(images) => {
                if field.is_prime_field() {
                    return Err(Error::NotAnExtension(field.to_string()));
                }
                if (m, n) != (1, 1) {
                    return Err(invalid("klinear_extension maps F to F (dimensions 1 and 1)"));
                }
                if images.len() != field.degree() {
                    return Err(invalid(format!(
                        "klinear_extension needs {} basis images, got {}",
                        field.degree(),
                        images.len()
                    )));
                }
                images.iter().try_for_each(|c| field.ensure(c))?;
            }
            MapBody::Ratio => {
                if (m, n) != (2, 1) {
                    return Err(invalid("ratio maps F^2 to F"));
                }
            }
            MapBody::Indicator => {
                if field.descriptor() != &crate::field::FieldDescriptor::Prime(2) {
                    return Err(invalid("indicator is defined over Fp:2"));
                }
                if (m, n) != (2, 1) {
                    return Err(invalid("indicator maps F^2 to F"));
                }
            }
            MapBody::Matrix(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != m) {
                    return Err(invalid(format!("matrix must be {n} x {m}")));
                }
                rows.iter().flatten().try_for_each(|c| field.ensure(c))?;
            }
        }
        Ok(MapSpec { domain, codomain, body })
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn body(&self) -> &MapBody {
        &self.body
    }

    pub fn field(&self) -> &Field {
        self.domain.field()
    }

    /// Tabulates `f` over a finite domain.
    pub fn table_from_fn(domain: Space, codomain: Space, mut f: impl FnMut(&Vector) -> Vector) -> Result<Self> {
        let entries = domain.vectors()?.map(|v| f(&v)).collect();
        MapSpec::new(domain, codomain, MapBody::Table(entries))
    }

    pub fn matrix(domain: Space, codomain: Space, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        MapSpec::new(domain, codomain, MapBody::Matrix(rows))
    }

    /// `phi(u) = phi(s * rep) = s * phi(rep)`, `phi(0) = 0`.
    pub fn evaluate(&self, v: &Vector) -> Result<Vector> {
        if !self.domain.contains(v) {
            return Err(Error::DomainMismatch);
        }
        Ok(self.eval_unchecked(v))
    }

    pub(crate) fn eval_unchecked(&self, v: &Vector) -> Vector {
        let field = self.field();
        match &self.body {
            MapBody::Table(entries) => {
                let rank = self.domain.rank(v).expect("finite domain");
                entries[rank as usize].clone()
            }
            MapBody::OrbitTable(values) => {
                if self.domain.is_zero(v) {
                    return self.codomain.zero();
                }
                let (rep, scale) = self.domain.canonical_rep(v).expect("nonzero domain vector");
                let idx = self.domain.orbit_index(&rep).expect("canonical representative");
                self.codomain.scale_unchecked(&scale, &values[idx as usize])
            }
            MapBody::KLinearExtension(images) => {
                let coords = field.prime_coords(&v.0[0]);
                let image = coords
                    .into_iter()
                    .zip(images)
                    .fold(field.zero(), |acc, (c, img)| field.add(&acc, &field.mul(&field.lift(c), img)));
                Vector(vec![image])
            }
            MapBody::Ratio => {
                let (x, y) = (&v.0[0], &v.0[1]);
                let sum = field.add(x, y);
                let value = match field.inv(&sum) {
                    Ok(inv) => field.mul(&field.mul(x, y), &inv),
                    Err(_) => field.zero(),
                };
                Vector(vec![value])
            }
            MapBody::Indicator => {
                let value = if self.domain.is_zero(v) { field.zero() } else { field.one() };
                Vector(vec![value])
            }
            MapBody::Matrix(rows) => Vector(
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .zip(&v.0)
                            .fold(field.zero(), |acc, (a, x)| field.add(&acc, &field.mul(a, x)))
                    })
                    .collect(),
            ),
        }
    }
}

/// The additive but not homogeneous map on an extension `F = k(a)`:
/// every power-basis vector `1, a, ..., a^(deg-1)` is sent to `a`, and the
/// map is extended k-linearly. Then `phi(a * 1) = a` while `a * phi(1) = a^2`.
pub fn theorem1_counterexample(field: &Field) -> Result<MapSpec> {
    let alpha = field
        .generator()
        .ok_or_else(|| Error::NotAnExtension(field.to_string()))?;
    let line = Space::new(field.clone(), 1)?;
    let images = vec![alpha; field.degree()];
    MapSpec::new(line.clone(), line, MapBody::KLinearExtension(images))
}

/// `(x, y) -> xy/(x+y)` on `F^2`; homogeneous but not additive whenever
/// `2 != 0` in `F`.
pub fn ratio_map(field: &Field) -> Result<MapSpec> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    MapSpec::new(Space::new(field.clone(), 2)?, Space::new(field.clone(), 1)?, MapBody::Ratio)
}

/// Indicator of the nonzero vectors of `Z_2^2`.
pub fn char2_indicator() -> MapSpec {
    let z2 = Field::prime(2).expect("2 is prime");
    MapSpec::new(
        Space::new(z2.clone(), 2).expect("dim 2"),
        Space::new(z2, 1).expect("dim 1"),
        MapBody::Indicator,
    )
    .expect("valid indicator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> Field {
        s.parse().unwrap()
    }

    fn vector(space: &Space, s: &str) -> Vector {
        space.parse_vector(s).unwrap()
    }

    #[test]
    fn closed_form_evaluation() {
        let ratio = ratio_map(&Field::rationals()).unwrap();
        let d = ratio.domain().clone();
        assert_eq!(ratio.evaluate(&vector(&d, "(1,1)")).unwrap().to_string(), "(1/2)");
        assert_eq!(ratio.evaluate(&vector(&d, "(1,0)")).unwrap().to_string(), "(0)");
        assert_eq!(ratio.evaluate(&vector(&d, "(3,-3)")).unwrap().to_string(), "(0)");

        let ind = char2_indicator();
        let d = ind.domain().clone();
        assert_eq!(ind.evaluate(&vector(&d, "(0,0)")).unwrap().to_string(), "(0)");
        assert_eq!(ind.evaluate(&vector(&d, "(1,0)")).unwrap().to_string(), "(1)");

        let z3 = ratio_map(&field("Fp:3")).unwrap();
        let d = z3.domain().clone();
        assert_eq!(z3.evaluate(&vector(&d, "(1,1)")).unwrap().to_string(), "(2)");
    }

    #[test]
    fn evaluation_rejects_foreign_vectors() {
        let ratio = ratio_map(&Field::rationals()).unwrap();
        let q3 = Space::new(Field::rationals(), 3).unwrap();
        assert_eq!(ratio.evaluate(&q3.zero()), Err(Error::DomainMismatch));
    }

    #[test]
    fn theorem1_on_gf4() {
        let gf4 = field("Fq:2:1,1,1");
        let map = theorem1_counterexample(&gf4).unwrap();
        let alpha = gf4.generator().unwrap();
        let line = map.domain().clone();
        // phi(a + b*alpha) = (a + b) * alpha
        for v in line.vectors().unwrap() {
            let c = gf4.prime_coords(&v.0[0]);
            let a_plus_b = gf4.add(&gf4.lift(c[0].clone()), &gf4.lift(c[1].clone()));
            assert_eq!(map.evaluate(&v).unwrap().0[0], gf4.mul(&a_plus_b, &alpha));
        }
        let one = Vector(vec![gf4.one()]);
        let at_alpha = Vector(vec![alpha.clone()]);
        assert_eq!(map.evaluate(&one).unwrap(), at_alpha);
        assert_eq!(map.evaluate(&at_alpha).unwrap(), at_alpha);
        assert_ne!(gf4.mul(&alpha, &alpha), alpha);
    }

    #[test]
    fn theorem1_on_sqrt2() {
        let f = field("Qext:-2,0,1");
        let map = theorem1_counterexample(&f).unwrap();
        let v = map.domain().parse_vector("([3,5])").unwrap();
        assert_eq!(map.evaluate(&v).unwrap().to_string(), "([0,8])");
    }

    #[test]
    fn builder_guards() {
        assert_eq!(
            theorem1_counterexample(&field("Fp:5")),
            Err(Error::NotAnExtension("Fp:5".into()))
        );
        assert!(theorem1_counterexample(&Field::rationals()).is_err());
        assert_eq!(ratio_map(&field("Fq:2:1,1,1")), Err(Error::CharacteristicTwo));
        assert_eq!(ratio_map(&field("Fp:2")), Err(Error::CharacteristicTwo));
        assert!(ratio_map(&field("Fq:3:1,0,1")).is_ok());
        assert_eq!(char2_indicator().domain().dim(), 2);
    }

    #[test]
    fn shape_validation() {
        let z3 = field("Fp:3");
        let d = Space::new(z3.clone(), 2).unwrap();
        let c = Space::new(z3.clone(), 1).unwrap();
        assert!(matches!(
            MapSpec::new(d.clone(), c.clone(), MapBody::Table(vec![c.zero(); 8])),
            Err(Error::InvalidMap(_))
        ));
        assert!(matches!(
            MapSpec::new(d.clone(), c.clone(), MapBody::OrbitTable(vec![c.zero(); 3])),
            Err(Error::InvalidMap(_))
        ));
        assert!(MapSpec::new(d.clone(), c.clone(), MapBody::OrbitTable(vec![c.zero(); 4])).is_ok());
        assert!(matches!(
            MapSpec::new(d.clone(), c.clone(), MapBody::Indicator),
            Err(Error::InvalidMap(_))
        ));
        let q1 = Space::new(Field::rationals(), 1).unwrap();
        assert!(matches!(MapSpec::new(d, q1, MapBody::Ratio), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn orbit_table_scales_representative_values() {
        let z5 = field("Fp:5");
        let d = Space::new(z5.clone(), 2).unwrap();
        let c = Space::new(z5.clone(), 1).unwrap();
        // orbits of Z_5^2: (0,1), (1,0), (1,1), ..., (1,4)
        let values: Vec<Vector> = (0..6).map(|i| Vector(vec![FieldElement::Residue(i % 5)])).collect();
        let map = MapSpec::new(d.clone(), c, MapBody::OrbitTable(values)).unwrap();
        // (2,4) = 2 * (1,2), orbit index 3, value 3 -> 6 = 1
        assert_eq!(map.evaluate(&vector(&d, "(2,4)")).unwrap().to_string(), "(1)");
        assert_eq!(map.evaluate(&d.zero()).unwrap().to_string(), "(0)");
    }

    #[test]
    fn matrix_maps() {
        let q = Field::rationals();
        let line = Space::new(q.clone(), 1).unwrap();
        let triple = MapSpec::matrix(line.clone(), line.clone(), vec![vec![q.from_int(3)]]).unwrap();
        assert_eq!(triple.evaluate(&vector(&line, "(7/2)")).unwrap().to_string(), "(21/2)");
    }
}
