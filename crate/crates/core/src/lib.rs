//! Curves with a cyclic automorphism group of order `N >= 2g + 1`.
//!
//! * [`ramification`]: exact Riemann–Hurwitz arithmetic, tame and wild.
//! * [`families`]: the Kummer, hyperelliptic and Artin–Schreier models.
//! * [`classify`]: the classification engine and the tame signature enumerator.
//! * [`fforacle`]: finite-field place counting, automorphism checks and
//!   zeta-function genus inference used to verify all of the above.
//!
//! The genus arithmetic is generic over [`ExactInt`]; `i64` is the default
//! everywhere and the aliases below name the other common widths.

pub mod arith;
pub mod classify;
pub mod families;
pub mod fforacle;
pub mod ramification;
pub mod scalar;

pub use classify::{
    canonical_pair, classify, classify_query, enumerate_signatures, primitive_pairs,
    verify_sasaki_bound, Branch, ClassificationEntry, ClassifyError, ClassifyQuery, SasakiReport,
};
pub use families::{
    kummer_genus, kummer_signature, Action, AutomorphismDescriptor, CurveModel, FamilyError,
    FieldValue, Param, PrimitivePair, Ramification, RootOfUnity,
};
pub use fforacle::{
    count_places, count_places_in, count_places_naive, count_series, verify_automorphism,
    zeta_genus, AnyField, Elem, FieldSpec, FiniteField, OracleError, OrbitReport, PlaceCountSeries,
};
pub use ramification::{
    different_exponent, kummer_branch_valid, quotient_is_branched, rh_genus_tame, rh_genus_wild,
    validate_filtration, FiltrationProfile, OrbitDatum, RamificationError, Signature,
};
pub use scalar::ExactInt;

/// Default exact integer used for genera and group orders.
pub type Int = i64;

pub type Signature32 = Signature<i32>;
pub type Signature128 = Signature<i128>;
pub type Filtration32 = FiltrationProfile<i32>;
pub type Filtration128 = FiltrationProfile<i128>;
