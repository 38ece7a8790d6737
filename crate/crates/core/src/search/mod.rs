//! Exhaustive engines over finite fields.
//!
//! [`search_homogeneous_nonadditive`] walks every homogeneous map `F^du -> F^dv`.
//! Such a map is a free choice of value on each scalar orbit, so the space
//! is `(q^dv)^N` orbit tables for `N` orbits. [`additive_table_census`] walks
//! every raw table `F^du -> F^dv` and keeps the additive ones.
//!
//! Both run on the pruned backtracking engine: a constraint
//! `phi(a + b) = phi(a) + phi(b)` is tested as soon as the values it reads are
//! assigned, and a failing prefix accounts for its whole subtree at once.

mod engine;
mod tables;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use self::engine::{Collect, Constraint, Outcome, Point, Problem};
use self::tables::VectorOps;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::linspace::{Space, Vector};
use crate::maps::{check_additive, check_homogeneous, CheckReport, MapBody, MapFile, MapSpec, Strategy};

pub const DEFAULT_MAX_CANDIDATES: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    CountOnly,
    FirstWitness,
    EnumerateAll,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::CountOnly => "count_only",
            SearchMode::FirstWitness => "first_witness",
            SearchMode::EnumerateAll => "enumerate_all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub field: FieldDescriptor,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub mode: SearchMode,
    pub max_candidates: u64,
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(field: FieldDescriptor, domain_dim: usize, codomain_dim: usize) -> Self {
        SearchConfig {
            field,
            domain_dim,
            codomain_dim,
            mode: SearchMode::FirstWitness,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchInstance {
    pub field: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub mode: &'static str,
    pub orbits: String,
    pub candidates: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub instance: SearchInstance,
    pub homogeneous_count: BigUint,
    pub homogeneous_additive_count: BigUint,
    /// The first homogeneous non-additive orbit table in canonical order.
    pub witness_map: Option<MapSpec>,
    /// Additivity report of `witness_map`.
    pub witness_report: Option<CheckReport>,
    /// Every homogeneous non-additive map, in [`SearchMode::EnumerateAll`].
    pub witnesses: Vec<MapSpec>,
}

impl SearchResult {
    pub fn non_additive_count(&self) -> BigUint {
        &self.homogeneous_count - &self.homogeneous_additive_count
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            homogeneous: String,
            homogeneous_additive: String,
            non_additive: String,
            witness: Option<MapFile>,
            witness_report: Option<&'a CheckReport>,
            #[serde(skip_serializing_if = "Option::is_none")]
            witnesses: Option<Vec<MapFile>>,
            instance: &'a SearchInstance,
        }
        let doc = Doc {
            homogeneous: self.homogeneous_count.to_string(),
            homogeneous_additive: self.homogeneous_additive_count.to_string(),
            non_additive: self.non_additive_count().to_string(),
            witness: self.witness_map.as_ref().map(MapSpec::to_file),
            witness_report: self.witness_report.as_ref(),
            witnesses: (self.instance.mode == SearchMode::EnumerateAll.as_str())
                .then(|| self.witnesses.iter().map(MapSpec::to_file).collect()),
            instance: &self.instance,
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

fn orbit_count_big(q: u64, du: usize) -> BigUint {
    (BigUint::from(q).pow(du as u32) - 1u32) / BigUint::from(q - 1)
}

fn big_pow(q: u64, exponent: &BigUint) -> Result<BigUint> {
    let e = exponent.to_u32().ok_or(Error::OrderOverflow)?;
    Ok(BigUint::from(q).pow(e))
}

/// Number of homogeneous maps `F^du -> F^dv`: `q^(dv * N)` with
/// `N = (q^du - 1)/(q - 1)` scalar orbits.
pub fn count_homogeneous(field: &Field, du: usize, dv: usize) -> Result<BigUint> {
    let q = field.finite_order()?;
    big_pow(q, &(orbit_count_big(q, du) * dv))
}

/// Number of linear maps `F^du -> F^dv`: `q^(du * dv)`.
pub fn count_linear(field: &Field, du: usize, dv: usize) -> Result<BigUint> {
    let q = field.finite_order()?;
    big_pow(q, &BigUint::from(du * dv))
}

/// `q^exponent` if it does not exceed `limit`.
fn guard(q: u64, exponent: &BigUint, limit: u64) -> Result<u64> {
    let fits = exponent
        .to_u32()
        .and_then(|e| q.checked_pow(e))
        .filter(|&c| c <= limit);
    fits.ok_or_else(|| {
        let candidates = match exponent.to_u32().map(|e| BigUint::from(q).pow(e).to_string()) {
            Some(decimal) if decimal.len() <= 30 => decimal,
            _ => format!("{q}^{exponent}"),
        };
        Error::SearchSpaceTooLarge { candidates, limit }
    })
}

fn vectors_from_ranks(space: &Space, ranks: &[u64]) -> Vec<Vector> {
    ranks
        .iter()
        .map(|&r| space.vector_at(r).expect("rank below cardinality"))
        .collect()
}

/// Additivity constraints on an orbit table, one per pair `(r, b)` of a
/// representative `r` and a nonzero `b` with `r + b != 0`. By homogeneity
/// these imply every other additivity condition, and the pair `(r, t*r')`
/// is equivalent to `(r', t^-1 * r)`, so only the one with the smaller
/// representative index is kept.
fn orbit_constraints(domain: &Space) -> Vec<Constraint> {
    let field = domain.field();
    let point = |v: &Vector| {
        if domain.is_zero(v) {
            return Point::ZERO;
        }
        let (rep, scale) = domain.canonical_rep(v).expect("nonzero");
        let idx = domain.orbit_index(&rep).expect("canonical");
        Point::new(idx as usize, field.rank(&scale).expect("finite"))
    };
    let one = field.rank(&field.one()).expect("finite");
    let mut out = Vec::new();
    for orbit in domain.orbits().expect("finite") {
        let r = orbit.representative;
        let r_idx = domain.orbit_index(&r).expect("canonical");
        for b in domain.vectors().expect("finite") {
            if domain.is_zero(&b) {
                continue;
            }
            let (b_rep, _) = domain.canonical_rep(&b).expect("nonzero");
            if domain.orbit_index(&b_rep).expect("canonical") < r_idx {
                continue;
            }
            let sum = domain.add_unchecked(&r, &b);
            if domain.is_zero(&sum) {
                continue;
            }
            out.push(Constraint {
                a: Point::new(r_idx as usize, one),
                b: point(&b),
                c: point(&sum),
            });
        }
    }
    out
}

fn collect_for(mode: SearchMode) -> Collect {
    Collect {
        failures: mode == SearchMode::EnumerateAll,
        survivors: false,
    }
}

fn verified_witness(map: MapSpec) -> Result<(MapSpec, CheckReport)> {
    let homogeneous = check_homogeneous(&map, Strategy::Exhaustive)?;
    if !homogeneous.holds() {
        return Err(Error::VerificationFailed(format!(
            "orbit table is not homogeneous: {homogeneous:?}"
        )));
    }
    let additive = check_additive(&map, Strategy::Exhaustive)?;
    if additive.holds() {
        return Err(Error::VerificationFailed("orbit table is additive".into()));
    }
    Ok((map, additive))
}

/// Counts homogeneous and homogeneous-additive maps `F^du -> F^dv` and, unless
/// counting only, returns the canonically first homogeneous map that is not
/// additive together with its additivity witness.
///
/// Orbit tables are ordered lexicographically by their values' ranks, orbit 0
/// most significant. Every returned map is re-checked exhaustively before it
/// is reported.
pub fn search_homogeneous_nonadditive(config: &SearchConfig) -> Result<SearchResult> {
    let field = Field::try_from(config.field.clone())?;
    let q = field.finite_order()?;
    let orbits = orbit_count_big(q, config.domain_dim);
    let candidates = guard(q, &(&orbits * config.codomain_dim), config.max_candidates)?;
    let domain = Space::new(field.clone(), config.domain_dim)?;
    let codomain = Space::new(field.clone(), config.codomain_dim)?;
    let slots = domain.orbit_count()? as usize;

    let one = field.rank(&field.one()).expect("finite");
    let problem = Problem::new(slots, VectorOps::new(&codomain), one, orbit_constraints(&domain));
    let outcome = problem.run(1, config.jobs, collect_for(config.mode));

    let to_map = |assign: &[u64]| {
        MapSpec::new(
            domain.clone(),
            codomain.clone(),
            MapBody::OrbitTable(vectors_from_ranks(&codomain, assign)),
        )
    };
    let (witness_map, witness_report) = match (&outcome.first_failure, config.mode) {
        (Some(first), SearchMode::FirstWitness | SearchMode::EnumerateAll) => {
            let (m, r) = verified_witness(to_map(first)?)?;
            (Some(m), Some(r))
        }
        _ => (None, None),
    };
    let witnesses = outcome
        .failure_list
        .iter()
        .map(|a| verified_witness(to_map(a)?).map(|(m, _)| m))
        .collect::<Result<Vec<_>>>()?;

    Ok(SearchResult {
        instance: SearchInstance {
            field: field.to_string(),
            domain_dim: config.domain_dim,
            codomain_dim: config.codomain_dim,
            mode: config.mode.as_str(),
            orbits: orbits.to_string(),
            candidates: candidates.to_string(),
        },
        homogeneous_count: BigUint::from(candidates),
        homogeneous_additive_count: BigUint::from(outcome.survivors),
        witness_map,
        witness_report,
        witnesses,
    })
}

/// All tables `F^du -> F^dv` filtered by exhaustive additivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCensus {
    pub tables_total: BigUint,
    pub additive: BigUint,
    pub additive_non_homogeneous: BigUint,
    /// The first additive table that is not homogeneous, with its
    /// homogeneity report.
    pub first_non_homogeneous: Option<(MapSpec, CheckReport)>,
}

/// Enumerates every table map `F^du -> F^dv`, keeps the additive ones and
/// checks each survivor for homogeneity exhaustively.
pub fn additive_table_census(
    field: &Field,
    du: usize,
    dv: usize,
    max_candidates: u64,
    jobs: usize,
) -> Result<TableCensus> {
    let q = field.finite_order()?;
    let domain_size = BigUint::from(q).pow(du as u32);
    let tables_total = guard(q, &(&domain_size * dv), max_candidates)?;
    let domain = Space::new(field.clone(), du)?;
    let codomain = Space::new(field.clone(), dv)?;
    let slots = domain.cardinality()? as usize;

    let one = field.rank(&field.one()).expect("finite");
    let dops = VectorOps::new(&domain);
    let mut constraints = Vec::new();
    for a in 0..slots as u64 {
        for b in a..slots as u64 {
            let c = dops.add(a, b);
            constraints.push(Constraint {
                a: Point::new(a as usize, one),
                b: Point::new(b as usize, one),
                c: Point::new(c as usize, one),
            });
        }
    }
    let problem = Problem::new(slots, VectorOps::new(&codomain), one, constraints);
    let collect = Collect {
        failures: false,
        survivors: true,
    };
    let outcome: Outcome = problem.run(2, jobs, collect);

    let mut non_homogeneous = 0u64;
    let mut first = None;
    for assign in &outcome.survivor_list {
        let map = MapSpec::new(
            domain.clone(),
            codomain.clone(),
            MapBody::Table(vectors_from_ranks(&codomain, assign)),
        )?;
        if !check_additive(&map, Strategy::Exhaustive)?.holds() {
            return Err(Error::VerificationFailed("surviving table is not additive".into()));
        }
        let report = check_homogeneous(&map, Strategy::Exhaustive)?;
        if !report.holds() {
            non_homogeneous += 1;
            if first.is_none() {
                first = Some((map, report));
            }
        }
    }
    Ok(TableCensus {
        tables_total: BigUint::from(tables_total),
        additive: BigUint::from(outcome.survivors),
        additive_non_homogeneous: BigUint::from(non_homogeneous),
        first_non_homogeneous: first,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub p: u64,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub census: TableCensus,
    /// `p^(du * dv)`, the number of linear maps.
    pub expected_additive: BigUint,
}

impl Theorem1Report {
    /// Every additive table is homogeneous and there are exactly as many
    /// additive tables as linear maps.
    pub fn holds(&self) -> bool {
        self.census.additive_non_homogeneous == BigUint::ZERO && self.census.additive == self.expected_additive
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c = &self.census;
        serde_json::json!({
            "instance": {
                "field": format!("Fp:{}", self.p),
                "domain_dim": self.domain_dim,
                "codomain_dim": self.codomain_dim,
            },
            "tables_total": c.tables_total.to_string(),
            "additive": c.additive.to_string(),
            "expected_additive": self.expected_additive.to_string(),
            "additive_non_homogeneous": c.additive_non_homogeneous.to_string(),
            "holds": self.holds(),
            "first_non_homogeneous": c.first_non_homogeneous.as_ref().map(|(m, _)| m.to_file()),
            "first_non_homogeneous_report": c.first_non_homogeneous.as_ref().map(|(_, r)| r),
        })
    }
}

/// Machine check that additive maps between `Z_p` spaces are homogeneous.
pub fn verify_theorem1_prime(
    field: &Field,
    du: usize,
    dv: usize,
    max_candidates: u64,
    jobs: usize,
) -> Result<Theorem1Report> {
    if !field.is_prime_field() || !field.is_finite() {
        return Err(Error::NotPrimeField(field.to_string()));
    }
    let census = additive_table_census(field, du, dv, max_candidates, jobs)?;
    let expected_additive = count_linear(field, du, dv)?;
    Ok(Theorem1Report {
        p: field.characteristic(),
        domain_dim: du,
        codomain_dim: dv,
        census,
        expected_additive,
    })
}
