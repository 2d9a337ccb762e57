//! Checking an automorphism descriptor against the affine points of a model.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::families::{Action, AutomorphismDescriptor, CurveModel};

use super::curve::{bind, BoundCurve, Embedding};
use super::field::{AnyField, Elem, FieldSpec, FiniteField};
use super::OracleError;

/// Outcome of a successful [`verify_automorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// Number of affine points.
    pub points: usize,
    /// Order of the coordinate map.
    pub order: u64,
    /// Order of the induced permutation of the affine points; divides `order`.
    pub permutation_order: u64,
    pub fixed_points: Vec<(Elem, Elem)>,
    /// Orbit size -> number of orbits of that size.
    pub orbit_sizes: BTreeMap<u64, u64>,
}

/// Applies `descriptor` to every affine point of `model` over `spec` and checks
/// that it permutes the points with the stated order and expected fixed set.
pub fn verify_automorphism(
    model: &CurveModel,
    spec: &FieldSpec,
    descriptor: &AutomorphismDescriptor,
) -> Result<OrbitReport, OracleError> {
    let field = AnyField::new(spec.clone())?;
    let curve = bind(model, spec, &field)?;
    let map = PointMap::new(&field, spec, &descriptor.action)?;
    let points = affine_points(&curve);
    let index: HashMap<(Elem, Elem), usize> =
        points.iter().enumerate().map(|(i, &pt)| (pt, i)).collect();

    let mut image = Vec::with_capacity(points.len());
    let mut hit = vec![false; points.len()];
    for &(x, y) in &points {
        let (u, v) = map
            .apply(&field, x, y)
            .ok_or_else(|| not_auto(format!("({}, {}) has no affine image", x.0, y.0)))?;
        let j = *index
            .get(&(u, v))
            .ok_or_else(|| not_auto(format!("image of ({}, {}) is off the curve", x.0, y.0)))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(not_auto("two points share an image".into()));
        }
        image.push(j);
    }

    let mut seen = vec![false; points.len()];
    let mut orbit_sizes = BTreeMap::new();
    let mut permutation_order = 1u64;
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = image[i];
            len += 1;
        }
        *orbit_sizes.entry(len).or_insert(0) += 1;
        permutation_order = permutation_order.lcm(&len);
    }
    let order = map.order(&field);
    if order % permutation_order != 0 {
        return Err(not_auto(format!(
            "permutation order {permutation_order} does not divide {order}"
        )));
    }
    if order as i64 != descriptor.order {
        return Err(OracleError::OrderMismatch {
            expected: descriptor.order,
            found: order,
        });
    }

    let fixed_points: Vec<_> = points
        .iter()
        .zip(&image)
        .enumerate()
        .filter(|(i, (_, &j))| *i == j)
        .map(|(_, (&pt, _))| pt)
        .collect();
    let expected: Vec<_> = points
        .iter()
        .copied()
        .filter(|&pt| map.expected_fixed(pt))
        .collect();
    if fixed_points != expected {
        return Err(OracleError::FixedPointMismatch(format!(
            "{} fixed points, expected {}",
            fixed_points.len(),
            expected.len()
        )));
    }
    Ok(OrbitReport {
        points: points.len(),
        order,
        permutation_order,
        fixed_points,
        orbit_sizes,
    })
}

fn not_auto(msg: String) -> OracleError {
    OracleError::NotAnAutomorphism(msg)
}

/// All affine solutions, sorted by `(x, y)`.
pub(crate) fn affine_points<F: FiniteField>(curve: &BoundCurve<'_, F>) -> Vec<(Elem, Elem)> {
    let f = curve.field;
    let mut fibres: HashMap<Elem, Vec<Elem>> = HashMap::new();
    for y in f.elements() {
        fibres.entry(curve.lhs(y)).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in f.elements() {
        if let Some(ys) = curve.rhs(x).and_then(|r| fibres.get(&r)) {
            out.extend(ys.iter().map(|&y| (x, y)));
        }
    }
    out
}

enum PointMap {
    Identity,
    ScaleY(Elem),
    ScaleXNegateY(Elem),
    ScaleXShiftY(Elem),
    InvertXShiftY { a: Elem, gamma: Elem },
    ShiftY,
}

impl PointMap {
    fn new<F: FiniteField>(
        field: &F,
        spec: &FieldSpec,
        action: &Action,
    ) -> Result<Self, OracleError> {
        let zeta = |n: i64| {
            field.root_of_unity(n as u64).ok_or_else(|| {
                OracleError::PreconditionViolated(format!(
                    "F_{} has no root of unity of order {n}",
                    spec.q()
                ))
            })
        };
        Ok(match action {
            Action::Identity => PointMap::Identity,
            Action::ScaleY { zeta: z } => PointMap::ScaleY(zeta(z.0)?),
            Action::ScaleXNegateY { zeta: z } => PointMap::ScaleXNegateY(zeta(z.0)?),
            Action::ScaleXShiftY { zeta: z } => PointMap::ScaleXShiftY(zeta(z.0)?),
            Action::InvertXShiftY { a, b, c } => {
                let emb = Embedding::new(spec, field)?;
                let (a, b, c) = (
                    emb.param(field, a, "a")?,
                    emb.param(field, b, "b")?,
                    emb.param(field, c, "c")?,
                );
                let p = field.characteristic();
                let gamma = field
                    .elements()
                    .skip(1)
                    .find(|&y| {
                        field
                            .add(field.mul(b, field.pow(y, p)), field.mul(c, y))
                            .is_zero()
                    })
                    .ok_or_else(|| {
                        OracleError::PreconditionViolated(
                            "b Y^p + c Y has no nonzero root in the field".into(),
                        )
                    })?;
                PointMap::InvertXShiftY { a, gamma }
            }
            Action::ShiftY => PointMap::ShiftY,
        })
    }

    fn apply<F: FiniteField>(&self, f: &F, x: Elem, y: Elem) -> Option<(Elem, Elem)> {
        Some(match *self {
            PointMap::Identity => (x, y),
            PointMap::ScaleY(z) => (x, f.mul(z, y)),
            PointMap::ScaleXNegateY(z) => (f.mul(z, x), f.neg(y)),
            PointMap::ScaleXShiftY(z) => (f.mul(z, x), f.add(y, Elem::ONE)),
            PointMap::InvertXShiftY { a, gamma } => (f.inv(f.mul(a, x))?, f.add(y, gamma)),
            PointMap::ShiftY => (x, f.add(y, Elem::ONE)),
        })
    }

    fn order<F: FiniteField>(&self, f: &F) -> u64 {
        let p = f.characteristic();
        match *self {
            PointMap::Identity => 1,
            PointMap::ScaleY(z) => f.mult_order(z),
            PointMap::ScaleXNegateY(z) => f.mult_order(z).lcm(&2),
            PointMap::ScaleXShiftY(z) => f.mult_order(z).lcm(&p),
            // x -> 1/(a x) is an involution
            PointMap::InvertXShiftY { .. } => 2 * p,
            PointMap::ShiftY => p,
        }
    }

    fn expected_fixed(&self, (x, y): (Elem, Elem)) -> bool {
        match self {
            PointMap::Identity => true,
            PointMap::ScaleY(_) => y.is_zero(),
            PointMap::ScaleXNegateY(_) => x.is_zero() && y.is_zero(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    #[test]
    fn kummer_generator() {
        let m: CurveModel = "kummer:5,1,1".parse().unwrap();
        let r = verify_automorphism(&m, &spec(11), &m.generator()).unwrap();
        assert_eq!(r.order, 5);
        assert_eq!(r.fixed_points, vec![(Elem(0), Elem(0)), (Elem(1), Elem(0))]);
        assert_eq!(r.points, 2 + 5 * r.orbit_sizes[&5] as usize);
    }

    #[test]
    fn homma_and_identity() {
        let m: CurveModel = "homma:5".parse().unwrap();
        let r = verify_automorphism(&m, &spec(5), &m.generator()).unwrap();
        assert_eq!(r.order, 5);
        assert!(r.fixed_points.is_empty());
        let id = verify_automorphism(&m, &spec(5), &AutomorphismDescriptor::identity()).unwrap();
        assert_eq!(id.order, 1);
        assert_eq!(id.fixed_points.len(), id.points);
    }

    #[test]
    fn wrong_order_and_wrong_characteristic() {
        let m: CurveModel = "kummer:5,1,1".parse().unwrap();
        let mut d = m.generator();
        d.order = 10;
        assert!(matches!(
            verify_automorphism(&m, &spec(11), &d),
            Err(OracleError::OrderMismatch {
                expected: 10,
                found: 5
            })
        ));
        let a: CurveModel = "aspower:5,2,1,0".parse().unwrap();
        assert!(matches!(
            verify_automorphism(&a, &spec(11), &a.generator()),
            Err(OracleError::NotAnAutomorphism(_))
        ));
        let r = verify_automorphism(&a, &spec(5), &a.generator()).unwrap();
        assert_eq!(r.order, 10);
        assert_eq!(r.permutation_order, 5);
        assert!(r.fixed_points.is_empty());
    }
}
