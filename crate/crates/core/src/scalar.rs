//! Integer scalar abstraction for the exact genus arithmetic.
//!
//! Everything in [`crate::ramification`] and the Kummer genus formulas is
//! generic over [`ExactInt`], so the same code runs on `i32`, `i64` or
//! `i128`. All arithmetic goes through the checked helpers below; a silent
//! wraparound would corrupt a classification table.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive};

/// Signed primitive integer usable as an exact genus / group-order scalar.
pub trait ExactInt:
    PrimInt
    + Signed
    + Integer
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Hash
    + Send
    + Sync
    + 'static
{
    /// Largest group order accepted by contract (2^32), saturated to the type.
    fn order_cap() -> Self {
        Self::from_u64(1u64 << 32).unwrap_or_else(Self::max_value)
    }

    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("literal out of range for scalar type")
    }
}

impl<T> ExactInt for T where
    T: PrimInt
        + Signed
        + Integer
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Hash
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub(crate) fn add<I: ExactInt>(a: I, b: I) -> Result<I, Overflow> {
    a.checked_add(&b).ok_or(Overflow)
}

pub(crate) fn sub<I: ExactInt>(a: I, b: I) -> Result<I, Overflow> {
    a.checked_sub(&b).ok_or(Overflow)
}

pub(crate) fn mul<I: ExactInt>(a: I, b: I) -> Result<I, Overflow> {
    a.checked_mul(&b).ok_or(Overflow)
}
