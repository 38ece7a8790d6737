//! Additivity and homogeneity checkers.
//!
//! Exhaustive checks walk pairs in canonical order (`u1` then `u2` by vector
//! rank; `lambda` by element rank then `u`) and stop at the first violation,
//! so witnesses are reproducible. Sampled checks run a fixed list of corner
//! cases first and then seeded pseudo-random draws.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MapSpec;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linspace::{Space, Vector};

pub const DEFAULT_SEED: u64 = 24001;
pub const DEFAULT_SAMPLES: usize = 200;

/// Sampled numerators lie in `[-9, 9]`, denominators in `[1, 9]`.
const SAMPLE_BOUND: i64 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

impl Strategy {
    pub fn sampled() -> Self {
        Strategy::Sampled {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }

    /// Exhaustive when the domain is finite, default sampling otherwise.
    pub fn default_for(map: &MapSpec) -> Self {
        if map.field().is_finite() {
            Strategy::Exhaustive
        } else {
            Strategy::sampled()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Additive,
    Homogeneous,
    Linear,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Additive => "additive",
            Property::Homogeneous => "homogeneous",
            Property::Linear => "linear",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    HoldsExhaustive,
    HoldsOnSamples,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsExhaustive => "holds_exhaustive",
            Verdict::HoldsOnSamples => "holds_on_samples",
            Verdict::Violated => "violated",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A concrete input on which the two sides of a condition disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `phi(u1 + u2) = lhs != rhs = phi(u1) + phi(u2)`.
    Additivity { u1: Vector, u2: Vector, lhs: Vector, rhs: Vector },
    /// `phi(lambda u) = lhs != rhs = lambda phi(u)`.
    Homogeneity { lambda: FieldElement, u: Vector, lhs: Vector, rhs: Vector },
}

impl Witness {
    pub fn lhs(&self) -> &Vector {
        match self {
            Witness::Additivity { lhs, .. } | Witness::Homogeneity { lhs, .. } => lhs,
        }
    }

    pub fn rhs(&self) -> &Vector {
        match self {
            Witness::Additivity { rhs, .. } | Witness::Homogeneity { rhs, .. } => rhs,
        }
    }

    /// Re-evaluates both sides on `map`; true iff they reproduce the stored
    /// values and still differ.
    pub fn recheck(&self, map: &MapSpec) -> Result<bool> {
        let (lhs, rhs) = match self {
            Witness::Additivity { u1, u2, .. } => additivity_sides(map, u1, u2)?,
            Witness::Homogeneity { lambda, u, .. } => homogeneity_sides(map, lambda, u)?,
        };
        Ok(&lhs == self.lhs() && &rhs == self.rhs() && lhs != rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Violated
    }
}

fn additivity_sides(map: &MapSpec, u1: &Vector, u2: &Vector) -> Result<(Vector, Vector)> {
    let sum = map.domain().add(u1, u2).map_err(|_| Error::DomainMismatch)?;
    let lhs = map.evaluate(&sum)?;
    let rhs = map.codomain().add_unchecked(&map.evaluate(u1)?, &map.evaluate(u2)?);
    Ok((lhs, rhs))
}

fn homogeneity_sides(map: &MapSpec, lambda: &FieldElement, u: &Vector) -> Result<(Vector, Vector)> {
    let scaled = map.domain().scale(lambda, u).map_err(|_| Error::DomainMismatch)?;
    let lhs = map.evaluate(&scaled)?;
    let rhs = map.codomain().scale_unchecked(lambda, &map.evaluate(u)?);
    Ok((lhs, rhs))
}

fn report(property: Property, verdict: Verdict, witness: Option<Witness>, pairs_checked: u64) -> CheckReport {
    CheckReport {
        property,
        verdict,
        witness,
        pairs_checked,
    }
}

/// Images of every domain vector, indexed by rank.
fn image_table(map: &MapSpec) -> Result<Vec<Vector>> {
    Ok(map.domain().vectors()?.map(|v| map.eval_unchecked(&v)).collect())
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    let rational = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let d = rng.random_range(1..=SAMPLE_BOUND);
        FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    };
    match field.order() {
        Ok(Some(q)) => field.element_at(rng.random_range(0..q)).expect("rank below order"),
        _ if field.is_prime_field() => rational(rng),
        _ => FieldElement::Coeffs((0..field.degree()).map(|_| rational(rng)).collect()),
    }
}

fn random_vector(space: &Space, rng: &mut ChaCha8Rng) -> Vector {
    Vector((0..space.dim()).map(|_| random_element(space.field(), rng)).collect())
}

fn push_unique<T: PartialEq>(list: &mut Vec<T>, item: T) {
    if !list.contains(&item) {
        list.push(item);
    }
}

/// Zero, the standard basis and its negatives, the all-ones vector and the
/// alternating `(1,-1,1,...)`; the last two land on both branches of the
/// closed-form maps.
fn corner_vectors(space: &Space) -> Vec<Vector> {
    let field = space.field();
    let mut out = vec![space.zero()];
    for i in 0..space.dim() {
        push_unique(&mut out, space.basis(i));
    }
    for i in 0..space.dim() {
        let mut v = space.zero();
        v.0[i] = field.neg(&field.one());
        push_unique(&mut out, v);
    }
    push_unique(&mut out, Vector(vec![field.one(); space.dim()]));
    let alternating = (0..space.dim())
        .map(|i| if i % 2 == 0 { field.one() } else { field.neg(&field.one()) })
        .collect();
    push_unique(&mut out, Vector(alternating));
    out
}

fn corner_scalars(field: &Field) -> Vec<FieldElement> {
    let mut out = Vec::new();
    for s in [field.zero(), field.one(), field.neg(&field.one())] {
        push_unique(&mut out, s);
    }
    if let Some(g) = field.generator() {
        push_unique(&mut out, g);
    }
    out
}

pub fn check_additive(map: &MapSpec, strategy: Strategy) -> Result<CheckReport> {
    let domain = map.domain();
    let codomain = map.codomain();
    match strategy {
        Strategy::Exhaustive => {
            if !domain.field().is_finite() {
                return Err(Error::InfiniteDomainExhaustive);
            }
            let images = image_table(map)?;
            let vectors: Vec<Vector> = domain.vectors()?.collect();
            let mut checked = 0u64;
            for (i, u1) in vectors.iter().enumerate() {
                for (j, u2) in vectors.iter().enumerate() {
                    checked += 1;
                    let sum = domain.add_unchecked(u1, u2);
                    let lhs = &images[domain.rank(&sum).expect("finite") as usize];
                    let rhs = codomain.add_unchecked(&images[i], &images[j]);
                    if *lhs != rhs {
                        let witness = Witness::Additivity {
                            u1: u1.clone(),
                            u2: u2.clone(),
                            lhs: lhs.clone(),
                            rhs,
                        };
                        return Ok(report(Property::Additive, Verdict::Violated, Some(witness), checked));
                    }
                }
            }
            Ok(report(Property::Additive, Verdict::HoldsExhaustive, None, checked))
        }
        Strategy::Sampled { seed, samples } => {
            let corners = corner_vectors(domain);
            let corner_pairs = corners
                .iter()
                .flat_map(|a| corners.iter().map(move |b| (a.clone(), b.clone())));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let random_pairs = (0..samples).map(move |_| {
                let a = random_vector(domain, &mut rng);
                let b = random_vector(domain, &mut rng);
                (a, b)
            });
            let mut checked = 0u64;
            for (u1, u2) in corner_pairs.chain(random_pairs) {
                checked += 1;
                let (lhs, rhs) = additivity_sides(map, &u1, &u2)?;
                if lhs != rhs {
                    let witness = Witness::Additivity { u1, u2, lhs, rhs };
                    return Ok(report(Property::Additive, Verdict::Violated, Some(witness), checked));
                }
            }
            Ok(report(Property::Additive, Verdict::HoldsOnSamples, None, checked))
        }
    }
}

pub fn check_homogeneous(map: &MapSpec, strategy: Strategy) -> Result<CheckReport> {
    let domain = map.domain();
    let codomain = map.codomain();
    let field = domain.field();
    match strategy {
        Strategy::Exhaustive => {
            if !field.is_finite() {
                return Err(Error::InfiniteDomainExhaustive);
            }
            let images = image_table(map)?;
            let vectors: Vec<Vector> = domain.vectors()?.collect();
            let mut checked = 0u64;
            for lambda in field.elements()? {
                for (i, u) in vectors.iter().enumerate() {
                    checked += 1;
                    let scaled = domain.scale_unchecked(&lambda, u);
                    let lhs = &images[domain.rank(&scaled).expect("finite") as usize];
                    let rhs = codomain.scale_unchecked(&lambda, &images[i]);
                    if *lhs != rhs {
                        let witness = Witness::Homogeneity {
                            lambda,
                            u: u.clone(),
                            lhs: lhs.clone(),
                            rhs,
                        };
                        return Ok(report(Property::Homogeneous, Verdict::Violated, Some(witness), checked));
                    }
                }
            }
            Ok(report(Property::Homogeneous, Verdict::HoldsExhaustive, None, checked))
        }
        Strategy::Sampled { seed, samples } => {
            let scalars = corner_scalars(field);
            let corners = corner_vectors(domain);
            let corner_pairs = scalars
                .iter()
                .flat_map(|s| corners.iter().map(move |u| (s.clone(), u.clone())));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let random_pairs = (0..samples).map(move |_| {
                let s = random_element(field, &mut rng);
                let u = random_vector(domain, &mut rng);
                (s, u)
            });
            let mut checked = 0u64;
            for (lambda, u) in corner_pairs.chain(random_pairs) {
                checked += 1;
                let (lhs, rhs) = homogeneity_sides(map, &lambda, &u)?;
                if lhs != rhs {
                    let witness = Witness::Homogeneity { lambda, u, lhs, rhs };
                    return Ok(report(Property::Homogeneous, Verdict::Violated, Some(witness), checked));
                }
            }
            Ok(report(Property::Homogeneous, Verdict::HoldsOnSamples, None, checked))
        }
    }
}

/// Additivity first, then homogeneity; the first violation wins.
pub fn check_linear(map: &MapSpec, strategy: Strategy) -> Result<CheckReport> {
    let additive = check_additive(map, strategy)?;
    if additive.verdict == Verdict::Violated {
        return Ok(CheckReport {
            property: Property::Linear,
            ..additive
        });
    }
    let homogeneous = check_homogeneous(map, strategy)?;
    Ok(CheckReport {
        property: Property::Linear,
        verdict: homogeneous.verdict,
        witness: homogeneous.witness,
        pairs_checked: additive.pairs_checked + homogeneous.pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{char2_indicator, ratio_map, theorem1_counterexample, MapBody};

    fn field(s: &str) -> Field {
        s.parse().unwrap()
    }

    fn additivity_inputs(r: &CheckReport) -> (String, String, String, String) {
        match r.witness.as_ref().unwrap() {
            Witness::Additivity { u1, u2, lhs, rhs } => {
                (u1.to_string(), u2.to_string(), lhs.to_string(), rhs.to_string())
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    fn homogeneity_inputs(r: &CheckReport) -> (String, String, String, String) {
        match r.witness.as_ref().unwrap() {
            Witness::Homogeneity { lambda, u, lhs, rhs } => {
                (lambda.to_string(), u.to_string(), lhs.to_string(), rhs.to_string())
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    fn s(a: &str, b: &str, c: &str, d: &str) -> (String, String, String, String) {
        (a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn indicator_is_homogeneous_not_additive() {
        let map = char2_indicator();
        let add = check_additive(&map, Strategy::Exhaustive).unwrap();
        assert_eq!(add.verdict, Verdict::Violated);
        assert_eq!(additivity_inputs(&add), s("(0,1)", "(1,0)", "(1)", "(0)"));
        let hom = check_homogeneous(&map, Strategy::Exhaustive).unwrap();
        assert_eq!(hom.verdict, Verdict::HoldsExhaustive);
        assert_eq!(hom.pairs_checked, 8);
        let lin = check_linear(&map, Strategy::Exhaustive).unwrap();
        assert_eq!(lin.property, Property::Linear);
        assert!(matches!(lin.witness, Some(Witness::Additivity { .. })));
    }

    #[test]
    fn ratio_over_q_sampled() {
        let map = ratio_map(&Field::rationals()).unwrap();
        let add = check_additive(&map, Strategy::sampled()).unwrap();
        assert_eq!(additivity_inputs(&add), s("(1,0)", "(0,1)", "(1/2)", "(0)"));
        let hom = check_homogeneous(&map, Strategy::sampled()).unwrap();
        assert_eq!(hom.verdict, Verdict::HoldsOnSamples);
        assert!(hom.pairs_checked > DEFAULT_SAMPLES as u64);
        assert_eq!(
            check_additive(&map, Strategy::Exhaustive),
            Err(Error::InfiniteDomainExhaustive)
        );
    }

    #[test]
    fn theorem1_gf4_reports() {
        let gf4 = field("Fq:2:1,1,1");
        let map = theorem1_counterexample(&gf4).unwrap();
        let add = check_additive(&map, Strategy::Exhaustive).unwrap();
        assert_eq!((add.verdict, add.pairs_checked), (Verdict::HoldsExhaustive, 16));
        let hom = check_homogeneous(&map, Strategy::Exhaustive).unwrap();
        assert_eq!(homogeneity_inputs(&hom), s("[0,1]", "([1,0])", "([0,1])", "([1,1])"));
        let lin = check_linear(&map, Strategy::Exhaustive).unwrap();
        assert!(matches!(lin.witness, Some(Witness::Homogeneity { .. })));
    }

    #[test]
    fn theorem1_sqrt2_sampled() {
        let f = field("Qext:-2,0,1");
        let map = theorem1_counterexample(&f).unwrap();
        assert_eq!(check_additive(&map, Strategy::sampled()).unwrap().verdict, Verdict::HoldsOnSamples);
        let hom = check_homogeneous(&map, Strategy::sampled()).unwrap();
        assert_eq!(homogeneity_inputs(&hom), s("[0,1]", "([1,0])", "([0,1])", "([2,0])"));
    }

    #[test]
    fn identity_is_linear() {
        let z3 = Space::new(field("Fp:3"), 1).unwrap();
        let id = MapSpec::table_from_fn(z3.clone(), z3, |v| v.clone()).unwrap();
        let r = check_linear(&id, Strategy::Exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsExhaustive);
        assert_eq!(r.pairs_checked, 9 + 9);
    }

    #[test]
    fn ratio_over_small_fields() {
        for f in ["Fp:3", "Fp:5", "Fq:3:1,0,1"] {
            let map = ratio_map(&field(f)).unwrap();
            let hom = check_homogeneous(&map, Strategy::Exhaustive).unwrap();
            assert_eq!(hom.verdict, Verdict::HoldsExhaustive, "{f}");
            let add = check_additive(&map, Strategy::Exhaustive).unwrap();
            let w = add.witness.as_ref().unwrap();
            assert!(w.recheck(&map).unwrap());
            match w {
                Witness::Additivity { u1, u2, .. } => {
                    assert_eq!((u1, u2), (&map.domain().basis(1), &map.domain().basis(0)), "{f}");
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn nonzero_at_origin_breaks_additivity_early() {
        let z2 = Space::new(field("Fp:2"), 1).unwrap();
        let constant = MapSpec::table_from_fn(z2.clone(), z2.clone(), |_| z2.basis(0)).unwrap();
        let add = check_additive(&constant, Strategy::Exhaustive).unwrap();
        assert_eq!(add.pairs_checked, 1);
        let sampled = check_additive(&constant, Strategy::sampled()).unwrap();
        assert_eq!(sampled.pairs_checked, 1);
        assert!(matches!(constant.body(), MapBody::Table(_)));
    }

    #[test]
    fn corner_lists_are_deduplicated() {
        let z2 = Space::new(field("Fp:2"), 2).unwrap();
        let corners: Vec<String> = corner_vectors(&z2).iter().map(|v| v.to_string()).collect();
        assert_eq!(corners, ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]);
        assert_eq!(corner_scalars(&field("Fp:2")).len(), 2);
        assert_eq!(corner_scalars(&field("Fq:3:1,0,1")).len(), 4);
    }

    #[test]
    fn sampling_is_deterministic() {
        let map = ratio_map(&Field::rationals()).unwrap();
        let a = check_homogeneous(&map, Strategy::Sampled { seed: 7, samples: 50 }).unwrap();
        let b = check_homogeneous(&map, Strategy::Sampled { seed: 7, samples: 50 }).unwrap();
        assert_eq!(a, b);
    }
}
