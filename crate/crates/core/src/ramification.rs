//! Riemann–Hurwitz arithmetic for cyclic covers.
//!
//! A cover `X -> X/G` by a group of order `N` satisfies
//!
//! ```text
//! 2g - 2 = N (2 g0 - 2) + sum_P d_P
//! ```
//!
//! where the different exponent at a ramified point is
//! `d_P = sum_{i >= 0} (|G_P^(i)| - 1)`. In the tame case only `G_P^(0)` is
//! nontrivial and a branch point with index `e` contributes `(N/e)(e - 1)`.
//!
//! Stabilizers are never materialized as groups: a [`FiltrationProfile`]
//! records the orders of the higher ramification groups and the group
//! structure is enforced through arithmetic invariants on those orders.

use std::fmt;

use thiserror::Error;

use crate::arith::is_odd_prime;
use crate::scalar::{self, ExactInt, Overflow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamificationError {
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("inconsistent Riemann-Hurwitz data: {0}")]
    Inconsistent(String),
    #[error("{value} does not divide the group order {order}")]
    NotADivisor { value: i128, order: i128 },
    #[error("arithmetic overflow in genus computation")]
    Overflow,
}

impl From<Overflow> for RamificationError {
    fn from(_: Overflow) -> Self {
        RamificationError::Overflow
    }
}

fn wide<I: ExactInt>(v: I) -> i128 {
    v.to_i128().unwrap_or(i128::MAX)
}

/// Ramification type `(g0; e_1, ..., e_n)` of a cyclic cover.
///
/// Indices are kept sorted, so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature<I: ExactInt = i64> {
    g0: I,
    indices: Vec<I>,
}

impl<I: ExactInt> Signature<I> {
    pub fn new(g0: I, indices: impl IntoIterator<Item = I>) -> Result<Self, RamificationError> {
        if g0 < I::zero() {
            return Err(RamificationError::InvalidSignature(format!(
                "quotient genus {g0} is negative"
            )));
        }
        let mut indices: Vec<I> = indices.into_iter().collect();
        if let Some(bad) = indices.iter().find(|&&e| e < I::lit(2)) {
            return Err(RamificationError::InvalidSignature(format!(
                "ramification index {bad} is below 2"
            )));
        }
        indices.sort();
        Ok(Self { g0, indices })
    }

    pub fn g0(&self) -> I {
        self.g0
    }

    pub fn indices(&self) -> &[I] {
        &self.indices
    }

    /// Number of branch points.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// l.c.m. of the indices (1 for an unramified type).
    pub fn lcm(&self) -> I {
        self.indices.iter().fold(I::one(), |acc, e| acc.lcm(e))
    }
}

impl<I: ExactInt> fmt::Display for Signature<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.g0)?;
        for (i, e) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Orders `o_0 >= o_1 >= ...` of the higher ramification groups at a point.
///
/// Trailing ones are dropped, so `orders()` is empty for an unramified
/// point and `order_at(i)` is 1 past the stored levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiltrationProfile<I: ExactInt = i64> {
    p: I,
    orders: Vec<I>,
}

fn is_power_of<I: ExactInt>(mut x: I, p: I) -> bool {
    if x < I::one() {
        return false;
    }
    while x > I::one() {
        if !x.is_multiple_of(&p) {
            return false;
        }
        x = x / p;
    }
    true
}

/// Checks the structural constraints on a list of higher ramification orders:
/// `o_1` is a power of `p`, `o_0 / o_1` is prime to `p`, successive quotients
/// from level 1 on are powers of `p`, and all jumps `i >= 1` agree mod `p`.
pub fn validate_filtration<I: ExactInt>(p: I, orders: &[I]) -> Result<(), RamificationError> {
    let bad = |msg: String| Err(RamificationError::InvalidFiltration(msg));
    match p.to_u64() {
        Some(pu) if is_odd_prime(pu) => {}
        _ => return bad(format!("{p} is not an odd prime")),
    }
    if let Some(o) = orders.iter().find(|&&o| o < I::one()) {
        return bad(format!("order {o} is not positive"));
    }
    if let Some(w) = orders.windows(2).find(|w| w[1] > w[0]) {
        return bad(format!("orders increase from {} to {}", w[0], w[1]));
    }
    let at = |i: usize| orders.get(i).copied().unwrap_or_else(I::one);
    let (o0, o1) = (at(0), at(1));
    if !is_power_of(o1, p) {
        return bad(format!("|G^(1)| = {o1} is not a power of {p}"));
    }
    if !o0.is_multiple_of(&o1) {
        return bad(format!("|G^(1)| = {o1} does not divide |G^(0)| = {o0}"));
    }
    if (o0 / o1).is_multiple_of(&p) {
        return bad(format!("|G^(0)|/|G^(1)| = {} is divisible by {p}", o0 / o1));
    }
    for i in 1..orders.len() {
        let (hi, lo) = (at(i), at(i + 1));
        if !hi.is_multiple_of(&lo) || !is_power_of(hi / lo, p) {
            return bad(format!("level {i}: {hi}/{lo} is not a power of {p}"));
        }
    }
    let jumps = jump_indices(orders);
    if let Some(&first) = jumps.first() {
        let pu = p.to_u64().unwrap_or(1) as usize;
        if let Some(j) = jumps.iter().find(|&&j| j % pu != first % pu) {
            return bad(format!("jumps {first} and {j} are not congruent mod {p}"));
        }
    }
    Ok(())
}

fn jump_indices<I: ExactInt>(orders: &[I]) -> Vec<usize> {
    let at = |i: usize| orders.get(i).copied().unwrap_or_else(I::one);
    (1..orders.len()).filter(|&i| at(i) > at(i + 1)).collect()
}

impl<I: ExactInt> FiltrationProfile<I> {
    pub fn new(p: I, orders: impl IntoIterator<Item = I>) -> Result<Self, RamificationError> {
        let mut orders: Vec<I> = orders.into_iter().collect();
        while orders.last() == Some(&I::one()) {
            orders.pop();
        }
        validate_filtration(p, &orders)?;
        Ok(Self { p, orders })
    }

    /// Single tame level of order `e` (requires `p` not dividing `e`).
    pub fn tame(p: I, e: I) -> Result<Self, RamificationError> {
        Self::new(p, [e])
    }

    pub fn p(&self) -> I {
        self.p
    }

    pub fn orders(&self) -> &[I] {
        &self.orders
    }

    pub fn order_at(&self, i: usize) -> I {
        self.orders.get(i).copied().unwrap_or_else(I::one)
    }

    /// Ramification index `e_P = |G_P^(0)|`.
    pub fn ramification_index(&self) -> I {
        self.order_at(0)
    }

    pub fn is_tame(&self) -> bool {
        self.order_at(1) == I::one()
    }

    /// Indices `i >= 1` with `o_i > o_{i+1}`.
    pub fn jumps(&self) -> Vec<usize> {
        jump_indices(&self.orders)
    }
}

/// Different exponent `d_P = sum_i (o_i - 1)`.
pub fn different_exponent<I: ExactInt>(
    profile: &FiltrationProfile<I>,
) -> Result<I, RamificationError> {
    profile
        .orders
        .iter()
        .try_fold(I::zero(), |acc, &o| scalar::add(acc, o - I::one()))
        .map_err(Into::into)
}

/// A set of `orbit_size` points sharing one stabilizer filtration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitDatum<I: ExactInt = i64> {
    pub filtration: FiltrationProfile<I>,
    pub orbit_size: I,
}

impl<I: ExactInt> OrbitDatum<I> {
    pub fn new(filtration: FiltrationProfile<I>, orbit_size: I) -> Self {
        Self {
            filtration,
            orbit_size,
        }
    }
}

fn check_order<I: ExactInt>(n: I) -> Result<(), RamificationError> {
    if n < I::one() || n > I::order_cap() {
        return Err(RamificationError::Inconsistent(format!(
            "group order {n} outside [1, 2^32]"
        )));
    }
    Ok(())
}

fn genus_from_euler<I: ExactInt>(two_g_minus_two: I) -> Result<I, RamificationError> {
    if two_g_minus_two.is_odd() {
        return Err(RamificationError::Inconsistent(format!(
            "2g - 2 = {two_g_minus_two} is odd"
        )));
    }
    let g = scalar::add(two_g_minus_two, I::lit(2))? / I::lit(2);
    if g < I::zero() {
        return Err(RamificationError::Inconsistent(format!(
            "negative genus {g}"
        )));
    }
    Ok(g)
}

fn base_term<I: ExactInt>(n: I, g0: I) -> Result<I, Overflow> {
    let two = I::lit(2);
    scalar::mul(n, scalar::sub(scalar::mul(two, g0)?, two)?)
}

/// Genus of a tame cyclic cover of order `n` with the given signature.
pub fn rh_genus_tame<I: ExactInt>(n: I, sig: &Signature<I>) -> Result<I, RamificationError> {
    check_order(n)?;
    let mut total = base_term(n, sig.g0())?;
    for &e in sig.indices() {
        if !n.is_multiple_of(&e) {
            return Err(RamificationError::NotADivisor {
                value: wide(e),
                order: wide(n),
            });
        }
        total = scalar::add(total, scalar::mul(n / e, e - I::one())?)?;
    }
    genus_from_euler(total)
}

/// Genus of a (possibly wildly ramified) cover from its short-orbit data.
pub fn rh_genus_wild<I: ExactInt>(
    n: I,
    g0: I,
    orbits: &[OrbitDatum<I>],
) -> Result<I, RamificationError> {
    check_order(n)?;
    if g0 < I::zero() {
        return Err(RamificationError::Inconsistent(format!(
            "quotient genus {g0} is negative"
        )));
    }
    let mut total = base_term(n, g0)?;
    for orbit in orbits {
        let e = orbit.filtration.ramification_index();
        if orbit.orbit_size < I::one() || scalar::mul(orbit.orbit_size, e)? != n {
            return Err(RamificationError::Inconsistent(format!(
                "orbit of size {} with stabilizer order {e} in a group of order {n}",
                orbit.orbit_size
            )));
        }
        let d = different_exponent(&orbit.filtration)?;
        total = scalar::add(total, scalar::mul(orbit.orbit_size, d)?)?;
    }
    genus_from_euler(total)
}

/// Whether a point with stabilizer order `e_p` lies over a branch point of
/// the intermediate cover `X/<sigma^(n/d)> -> X/G`: true iff `e_p` does not divide `d`.
pub fn quotient_is_branched<I: ExactInt>(n: I, e_p: I, d: I) -> Result<bool, RamificationError> {
    for v in [e_p, d] {
        if v < I::one() || !n.is_multiple_of(&v) {
            return Err(RamificationError::NotADivisor {
                value: wide(v),
                order: wide(n),
            });
        }
    }
    Ok(!d.is_multiple_of(&e_p))
}

/// Sanity check on the valuations of a Kummer generator `alpha` in `y^n = alpha`.
///
/// A principal divisor has degree zero, and the branch points are exactly the
/// places where `n` does not divide the valuation. A single branch point is
/// impossible, so such data is rejected.
pub fn kummer_branch_valid<P, I: ExactInt>(n: I, ords: &[(P, I)]) -> bool {
    let mut sum = I::zero();
    for (_, v) in ords {
        match sum.checked_add(v) {
            Some(s) => sum = s,
            None => return false,
        }
    }
    let branch = ords.iter().filter(|(_, v)| !v.is_multiple_of(&n)).count();
    sum.is_zero() && branch != 1
}
