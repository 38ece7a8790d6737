//! Exact checking of additivity and homogeneity for maps between vector
//! spaces over Q, Z_p and simple algebraic extensions of those.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: exact scalar arithmetic and irreducible moduli.
//! - [`linspace`]: coordinate spaces `F^d`, vector enumeration and scalar orbits.
//! - [`maps`]: map representations, the classical counterexample
//!   constructions, and the additivity / homogeneity checkers.
//! - [`search`]: exhaustive engines over finite fields.

pub mod error;
pub mod field;
pub mod linspace;
pub mod maps;
pub mod search;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElement};
pub use linspace::{Space, Vector};
pub use maps::{CheckReport, MapSpec, Strategy, Witness};
