//! Executable version of the argument that additive maps over Q are
//! Q-homogeneous: for `l = m/n` it evaluates each identity in the chain
//! `phi((m/n)x) = m phi((1/n)x)`, `phi(x) = n phi((1/n)x)`,
//! `phi((1/n)x) = (1/n) phi(x)`, `phi((m/n)x) = (m/n) phi(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::MapSpec;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linspace::Vector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub label: &'static str,
    pub lhs: Vector,
    pub rhs: Vector,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub m: BigInt,
    pub n: BigInt,
    pub x: Vector,
    pub steps: Vec<TraceStep>,
}

impl ProofTrace {
    pub fn all_equal(&self) -> bool {
        self.steps.iter().all(|s| s.equal)
    }
}

fn step(label: &'static str, lhs: Vector, rhs: Vector) -> TraceStep {
    let equal = lhs == rhs;
    TraceStep { label, lhs, rhs, equal }
}

pub fn rational_proof_trace(map: &MapSpec, m: &BigInt, n: &BigInt, x: &Vector) -> Result<ProofTrace> {
    let field = map.field();
    if field.characteristic() != 0 || !field.is_prime_field() {
        return Err(Error::RequiresRationals(field.to_string()));
    }
    if n.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let domain = map.domain();
    let codomain = map.codomain();
    let scalar = |r: BigRational| FieldElement::Rational(r);
    let m_q = scalar(BigRational::from_integer(m.clone()));
    let n_q = scalar(BigRational::from_integer(n.clone()));
    let inv_n = scalar(BigRational::new(BigInt::from(1), n.clone()));
    let m_over_n = scalar(BigRational::new(m.clone(), n.clone()));

    let phi_x = map.evaluate(x)?;
    let phi_x_over_n = map.evaluate(&domain.scale(&inv_n, x)?)?;
    let phi_mx_over_n = map.evaluate(&domain.scale(&m_over_n, x)?)?;

    let steps = vec![
        step(
            "phi((m/n)x) = m*phi((1/n)x)",
            phi_mx_over_n.clone(),
            codomain.scale(&m_q, &phi_x_over_n)?,
        ),
        step("phi(x) = n*phi((1/n)x)", phi_x.clone(), codomain.scale(&n_q, &phi_x_over_n)?),
        step(
            "phi((1/n)x) = (1/n)*phi(x)",
            phi_x_over_n,
            codomain.scale(&inv_n, &phi_x)?,
        ),
        step(
            "phi((m/n)x) = (m/n)*phi(x)",
            phi_mx_over_n,
            codomain.scale(&m_over_n, &phi_x)?,
        ),
    ];
    Ok(ProofTrace {
        m: m.clone(),
        n: n.clone(),
        x: x.clone(),
        steps,
    })
}
