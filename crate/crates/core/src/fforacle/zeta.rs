//! Recovering the genus from place counts over a tower of extensions.

use crate::families::CurveModel;

use super::count::{count_places_in, hasse_weil};
use super::field::{AnyField, FieldSpec};
use super::OracleError;

/// Default cap on the largest field `q^depth` visited by [`count_series`].
pub const DEFAULT_FIELD_CAP: u64 = 1_000_000_000;

/// Place counts `N_1, ..., N_k` of one model over `F_q, F_{q^2}, ..., F_{q^k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceCountSeries {
    model: CurveModel,
    base: FieldSpec,
    counts: Vec<u64>,
}

impl PlaceCountSeries {
    /// Wraps externally obtained counts, checking each against the
    /// Hasse–Weil bound for the model's genus.
    pub fn new(model: CurveModel, base: FieldSpec, counts: Vec<u64>) -> Result<Self, OracleError> {
        let mut qj = 1u64;
        for &n in &counts {
            qj = qj.checked_mul(base.q()).ok_or(OracleError::FieldTooLarge {
                q: u64::MAX,
                cap: super::field::MAX_FIELD_ORDER,
            })?;
            hasse_weil(&model, qj, n)?;
        }
        Ok(Self {
            model,
            base,
            counts,
        })
    }

    pub fn model(&self) -> &CurveModel {
        &self.model
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Counts places of `model` over `F_{q^j}` for `j = 1..=depth`, refusing to
/// build any field larger than `cap`.
pub fn count_series(
    model: &CurveModel,
    base: &FieldSpec,
    depth: u32,
    cap: u64,
) -> Result<PlaceCountSeries, OracleError> {
    let mut counts = Vec::with_capacity(depth as usize);
    for j in 1..=depth {
        let spec = base.extension(j)?;
        if spec.q() > cap {
            return Err(OracleError::FieldTooLarge { q: spec.q(), cap });
        }
        let field = AnyField::new(spec)?;
        counts.push(count_places_in(model, base, &field)?);
    }
    PlaceCountSeries::new(model.clone(), base.clone(), counts)
}

/// Smallest `g <= g_max` such that a degree-`2g` L-polynomial satisfying the
/// functional equation reproduces every supplied count.
pub fn zeta_genus(series: &PlaceCountSeries, g_max: u32) -> Result<u32, OracleError> {
    let counts = series.counts();
    let needed = 2 * g_max as usize;
    if counts.len() < needed {
        return Err(OracleError::InsufficientCounts {
            needed,
            got: counts.len(),
        });
    }
    let q = series.base().q() as i128;
    // s_j = q^j + 1 - N_j is the j-th power sum of the Frobenius eigenvalues
    let mut s = Vec::with_capacity(counts.len());
    let mut qj: i128 = 1;
    for &n in counts {
        qj = qj.checked_mul(q).ok_or_else(overflow)?;
        s.push(qj + 1 - n as i128);
    }
    (0..=g_max)
        .find(|&g| fits(&s, q, g as usize).unwrap_or(false))
        .ok_or_else(|| {
            OracleError::Inconsistent(format!(
                "no genus up to {g_max} explains the counts {counts:?}"
            ))
        })
}

fn overflow() -> OracleError {
    OracleError::Inconsistent("arithmetic overflow in the zeta recursion".into())
}

/// Whether the power sums `s` come from a Weil polynomial of degree `2g`.
fn fits(s: &[i128], q: i128, g: usize) -> Result<bool, OracleError> {
    let deg = 2 * g;
    if s.len() < deg {
        return Ok(false);
    }
    // Newton: j c_j = -(s_1 c_{j-1} + ... + s_j c_0), for j <= g
    let mut c = vec![0i128; deg + 1];
    c[0] = 1;
    for j in 1..=g {
        let mut acc: i128 = 0;
        for i in 1..=j {
            acc = acc
                .checked_add(s[i - 1].checked_mul(c[j - i]).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        if acc % j as i128 != 0 {
            return Ok(false);
        }
        c[j] = -acc / j as i128;
    }
    // c_{2g-i} = q^(g-i) c_i
    for i in 0..g {
        c[deg - i] = q
            .checked_pow((g - i) as u32)
            .ok_or_else(overflow)?
            .checked_mul(c[i])
            .ok_or_else(overflow)?;
    }
    // predicted power sums via Newton with c_j = 0 beyond the degree
    let mut predicted: Vec<i128> = Vec::with_capacity(s.len());
    for j in 1..=s.len() {
        let mut acc: i128 = if j <= deg { j as i128 * c[j] } else { 0 };
        for i in 1..j {
            if j - i <= deg {
                acc = acc
                    .checked_add(
                        predicted[i - 1]
                            .checked_mul(c[j - i])
                            .ok_or_else(overflow)?,
                    )
                    .ok_or_else(overflow)?;
            }
        }
        predicted.push(-acc);
    }
    Ok(predicted == s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(m: &str, q: u64, counts: &[u64]) -> PlaceCountSeries {
        PlaceCountSeries::new(
            m.parse().unwrap(),
            FieldSpec::from_order(q).unwrap(),
            counts.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn elliptic_curve_counts() {
        // y^2 = x^3 + x over F_5 has 4 points; a_1 = 2, so N_2 = 25 + 1 - (4 - 10) = 32
        let s = PlaceCountSeries {
            model: "hyper:2,2".parse().unwrap(),
            base: FieldSpec::from_order(5).unwrap(),
            counts: vec![4, 32],
        };
        assert_eq!(zeta_genus(&s, 1).unwrap(), 1);
    }

    #[test]
    fn rational_counts_give_genus_zero() {
        let s = PlaceCountSeries {
            model: "hyper:2,2".parse().unwrap(),
            base: FieldSpec::from_order(7).unwrap(),
            counts: vec![8, 50, 344, 2402],
        };
        assert_eq!(zeta_genus(&s, 2).unwrap(), 0);
    }

    #[test]
    fn insufficient_and_inconsistent() {
        let s = series("homma:5", 5, &[6, 26]);
        assert!(matches!(
            zeta_genus(&s, 2),
            Err(OracleError::InsufficientCounts { needed: 4, got: 2 })
        ));
        let s = PlaceCountSeries {
            model: "homma:5".parse().unwrap(),
            base: FieldSpec::from_order(5).unwrap(),
            counts: vec![3, 3, 3, 3],
        };
        assert!(matches!(
            zeta_genus(&s, 2),
            Err(OracleError::Inconsistent(_))
        ));
    }

    #[test]
    fn genus_from_counted_series() {
        let m: CurveModel = "homma:5".parse().unwrap();
        let s = count_series(&m, &FieldSpec::from_order(5).unwrap(), 4, DEFAULT_FIELD_CAP).unwrap();
        assert_eq!(zeta_genus(&s, 2).unwrap(), 2);
    }

    #[test]
    fn field_cap_enforced() {
        let m: CurveModel = "homma:5".parse().unwrap();
        let r = count_series(&m, &FieldSpec::from_order(5).unwrap(), 4, 200);
        assert!(matches!(
            r,
            Err(OracleError::FieldTooLarge { q: 625, cap: 200 })
        ));
    }
}
