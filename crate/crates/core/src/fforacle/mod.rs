//! Finite-field oracle: place counts, automorphism checks and genus
//! inference from zeta functions.

mod automorphism;
mod count;
mod curve;
pub mod field;
mod poly;
mod zeta;

use thiserror::Error;

use crate::families::FamilyError;

pub use automorphism::{verify_automorphism, OrbitReport};
pub use count::{count_places, count_places_in, count_places_naive};
pub use field::{AnyField, Elem, FieldSpec, FiniteField, PolyField, TableField};
pub use poly::{is_irreducible, least_irreducible};
pub use zeta::{count_series, zeta_genus, PlaceCountSeries, DEFAULT_FIELD_CAP};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field of order {q} exceeds the cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("automorphism has order {found}, descriptor says {expected}")]
    OrderMismatch { expected: i64, found: u64 },
    #[error("fixed points differ from the expected set: {0}")]
    FixedPointMismatch(String),
    #[error("need at least {needed} place counts, got {got}")]
    InsufficientCounts { needed: usize, got: usize },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("{count} places over F_{q} violates the Hasse-Weil bound for genus {genus}")]
    HasseWeil { count: u64, q: u64, genus: i64 },
    #[error(transparent)]
    Family(#[from] FamilyError),
}
