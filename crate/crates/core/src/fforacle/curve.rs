//! Binding a symbolic [`CurveModel`] to concrete elements of a finite field.
//!
//! Every family has an affine equation of the separated shape
//! `L(y) = R(x)`, which is what both the point enumerators and the counting
//! routines work with.

use crate::families::{CurveModel, FieldValue, Param};

use super::field::{Elem, FieldSpec, FiniteField};
use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Equation {
    /// `y^n = x^r (1 - x)^s`
    Kummer { n: u64, r: u64, s: u64 },
    /// `y^2 = (x^e - 1)(x^e - lambda)`, `e = g + 1`
    Hyper { e: u64, lambda: Elem },
    /// `y^p - y = a (x^m - b)`
    AsPower { p: u64, m: u64, a: Elem, b: Elem },
    /// `b y^p + c y = a x + 1/x`
    AsRational { p: u64, a: Elem, b: Elem, c: Elem },
    /// `y^p - y = x^2`
    Homma { p: u64 },
}

pub(crate) struct BoundCurve<'f, F: FiniteField> {
    pub field: &'f F,
    pub eq: Equation,
}

impl<'f, F: FiniteField> BoundCurve<'f, F> {
    pub fn lhs(&self, y: Elem) -> Elem {
        let f = self.field;
        match self.eq {
            Equation::Kummer { n, .. } => f.pow(y, n),
            Equation::Hyper { .. } => f.mul(y, y),
            Equation::AsPower { p, .. } | Equation::Homma { p } => f.sub(f.pow(y, p), y),
            Equation::AsRational { p, b, c, .. } => f.add(f.mul(b, f.pow(y, p)), f.mul(c, y)),
        }
    }

    /// Right-hand side, `None` where the affine model has no points (`x = 0`
    /// for the rational AS family).
    pub fn rhs(&self, x: Elem) -> Option<Elem> {
        let f = self.field;
        Some(match self.eq {
            Equation::Kummer { r, s, .. } => f.mul(f.pow(x, r), f.pow(f.sub(Elem::ONE, x), s)),
            Equation::Hyper { e, lambda } => {
                let xe = f.pow(x, e);
                f.mul(f.sub(xe, Elem::ONE), f.sub(xe, lambda))
            }
            Equation::AsPower { m, a, b, .. } => f.mul(a, f.sub(f.pow(x, m), b)),
            Equation::AsRational { a, .. } => f.add(f.mul(a, x), f.inv(x)?),
            Equation::Homma { .. } => f.mul(x, x),
        })
    }

    /// Whether the field characteristic is the Artin–Schreier prime of the model.
    pub fn artin_schreier_char(&self) -> bool {
        match self.eq {
            Equation::AsPower { p, .. }
            | Equation::AsRational { p, .. }
            | Equation::Homma { p } => p == self.field.characteristic(),
            _ => false,
        }
    }
}

fn violated(msg: impl Into<String>) -> OracleError {
    OracleError::PreconditionViolated(msg.into())
}

/// Maps literal parameters of the base field `F_q` into `field = F_{q^j}`.
pub(crate) struct Embedding {
    base_k: u32,
    /// Image of the generator `t` of the base field.
    alpha: Elem,
}

impl Embedding {
    pub fn new<F: FiniteField>(base: &FieldSpec, field: &F) -> Result<Self, OracleError> {
        let target = field.spec();
        if base.p() != target.p() || !target.k().is_multiple_of(base.k()) {
            return Err(OracleError::InvalidField(format!(
                "F_{} is not a subfield of F_{}",
                base.q(),
                target.q()
            )));
        }
        let alpha = if base.k() == 1 {
            Elem::ZERO
        } else if base == target {
            Elem(base.p() as u32)
        } else {
            // least root of the base modulus in the extension
            let m: Vec<Elem> = base.modulus().iter().map(|&c| Elem(c as u32)).collect();
            field
                .elements()
                .find(|&z| eval(field, &m, z).is_zero())
                .ok_or_else(|| {
                    OracleError::InvalidField("base modulus has no root in the extension".into())
                })?
        };
        Ok(Self {
            base_k: base.k(),
            alpha,
        })
    }

    pub fn value<F: FiniteField>(&self, field: &F, v: &FieldValue) -> Result<Elem, OracleError> {
        let coeffs = v.coefficients();
        let p = field.characteristic() as i64;
        let mut trimmed = coeffs.clone();
        while trimmed.last().is_some_and(|c| c.rem_euclid(p) == 0) {
            trimmed.pop();
        }
        if trimmed.len() > self.base_k as usize {
            return Err(violated(format!(
                "parameter {v} has degree at least {} in t",
                self.base_k
            )));
        }
        let mut acc = Elem::ZERO;
        for &c in trimmed.iter().rev() {
            acc = field.add(field.mul(acc, self.alpha), field.embed_int(c));
        }
        Ok(acc)
    }

    pub fn param<F: FiniteField>(
        &self,
        field: &F,
        p: &Param,
        name: &str,
    ) -> Result<Elem, OracleError> {
        match p {
            Param::Symbol(s) => Err(violated(format!(
                "parameter {name} = '{s}' is symbolic; give a field value"
            ))),
            Param::Value(v) => self.value(field, v),
        }
    }
}

fn eval<F: FiniteField>(field: &F, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

fn poly_trim(mut a: Vec<Elem>) -> Vec<Elem> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_rem<F: FiniteField>(field: &F, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = field.inv(m[dm]).expect("trimmed divisor");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = field.mul(r[r.len() - 1], lead_inv);
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(factor, c));
        }
        r = poly_trim(r);
    }
    r
}

/// `gcd(f, f') = 1` over the field.
fn is_separable<F: FiniteField>(field: &F, f: &[Elem]) -> bool {
    let deriv: Vec<Elem> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.embed_int(i as i64), c))
        .collect();
    let mut a = poly_trim(f.to_vec());
    let mut b = poly_trim(deriv);
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Checks the counting preconditions and binds the parameters.
///
/// `base` is the field the parameters live in; `field` is `base` itself or
/// an extension of it.
pub(crate) fn bind<'f, F: FiniteField>(
    model: &CurveModel,
    base: &FieldSpec,
    field: &'f F,
) -> Result<BoundCurve<'f, F>, OracleError> {
    model.validate()?;
    let emb = Embedding::new(base, field)?;
    let ch = base.p();
    let q1 = base.q() - 1;
    let eq = match model {
        CurveModel::Kummer(pair) => {
            let n = pair.n() as u64;
            if !q1.is_multiple_of(n) {
                return Err(violated(format!("N = {n} does not divide q - 1 = {q1}")));
            }
            Equation::Kummer {
                n,
                r: pair.r() as u64,
                s: pair.s() as u64,
            }
        }
        CurveModel::Hyperelliptic { g, lambda } => {
            let e = (*g + 1) as u64;
            if e.is_multiple_of(ch) {
                return Err(violated(format!("characteristic {ch} divides g + 1 = {e}")));
            }
            let lambda = emb.param(field, lambda, "lambda")?;
            if lambda.is_zero() || lambda == Elem::ONE {
                return Err(violated("lambda reduces to 0 or 1 in the field"));
            }
            Equation::Hyper { e, lambda }
        }
        CurveModel::AsPower { p, m, a, b } => {
            let (p, m) = (*p as u64, *m as u64);
            if !q1.is_multiple_of(m) {
                return Err(violated(format!("m = {m} does not divide q - 1 = {q1}")));
            }
            let a = emb.param(field, a, "a")?;
            let b = emb.param(field, b, "b")?;
            if a.is_zero() {
                return Err(violated("a reduces to 0 in the field"));
            }
            if p != ch {
                // x^m = (y^p - y)/a + b must have distinct roots in y
                let a_inv = field.inv(a).expect("nonzero");
                let mut f = vec![Elem::ZERO; p as usize + 1];
                f[0] = b;
                f[1] = field.neg(a_inv);
                f[p as usize] = a_inv;
                if !is_separable(field, &f) {
                    return Err(violated("(y^p - y)/a + b has a repeated root"));
                }
            }
            Equation::AsPower { p, m, a, b }
        }
        CurveModel::AsRational { p, a, b, c } => {
            let p = *p as u64;
            if p != ch {
                return Err(violated(format!(
                    "the rational AS family needs characteristic {p}, field has {ch}"
                )));
            }
            let (a, b, c) = (
                emb.param(field, a, "a")?,
                emb.param(field, b, "b")?,
                emb.param(field, c, "c")?,
            );
            if a.is_zero() || b.is_zero() || c.is_zero() {
                return Err(violated("a, b and c must be nonzero in the field"));
            }
            Equation::AsRational { p, a, b, c }
        }
        CurveModel::Homma { p } => {
            let p = *p as u64;
            if p != ch {
                return Err(violated(format!(
                    "y^p - y = x^2 is counted in characteristic {p}, field has {ch}"
                )));
            }
            Equation::Homma { p }
        }
    };
    Ok(BoundCurve { field, eq })
}
