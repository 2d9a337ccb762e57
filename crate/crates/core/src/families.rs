//! The curve families carrying a cyclic automorphism group of order `N >= 2g + 1`.
//!
//! | family          | equation                        | `N`      | genus               |
//! |-----------------|---------------------------------|----------|---------------------|
//! | Kummer `F(r,s)` | `y^N = x^r (1 - x)^s`           | `N`      | gcd formula         |
//! | hyperelliptic   | `y^2 = (x^(g+1) - 1)(x^(g+1) - l)` | `2g + 2` | `g`              |
//! | AS power        | `y^p - y = a (x^m - b)`         | `p m`    | `(p - 1)(m - 1)/2`  |
//! | AS rational     | `b y^p + c y = a x + 1/x`       | `2p`     | `p - 1`             |
//! | Homma           | `y^p - y = x^2`                 | `p`      | `(p - 1)/2`         |
//!
//! Parameters stay field-agnostic here: they are either symbols (for
//! classification templates) or literal field values bound to a concrete
//! field only by [`crate::fforacle`].

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::is_odd_prime;
use crate::ramification::{
    rh_genus_tame, rh_genus_wild, FiltrationProfile, OrbitDatum, RamificationError, Signature,
};
use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("not a primitive pair: {0}")]
    NotPrimitive(String),
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse model spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
}

/// `(N, r, s)` with `r, s >= 1`, `r + s <= N - 1` and `gcd(r, s, N) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitivePair {
    n: i64,
    r: i64,
    s: i64,
}

fn check_pair<I: ExactInt>(n: I, r: I, s: I) -> Result<(), FamilyError> {
    let one = I::one();
    if n < I::lit(2) || n > I::order_cap() {
        return Err(FamilyError::NotPrimitive(format!(
            "N = {n} outside [2, 2^32]"
        )));
    }
    if r < one || s < one || r + s > n - one {
        return Err(FamilyError::NotPrimitive(format!(
            "({r}, {s}) is not in A_{n}: need r, s >= 1 and r + s <= {}",
            n - one
        )));
    }
    if r.gcd(&s).gcd(&n) != one {
        return Err(FamilyError::NotPrimitive(format!(
            "gcd({r}, {s}, {n}) != 1"
        )));
    }
    Ok(())
}

impl PrimitivePair {
    pub fn new(n: i64, r: i64, s: i64) -> Result<Self, FamilyError> {
        check_pair(n, r, s)?;
        Ok(Self { n, r, s })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Exponent at infinity, `t = -(r + s) mod N`, so `r + s + t = N`.
    pub fn t(&self) -> i64 {
        self.n - self.r - self.s
    }

    pub fn genus(&self) -> i64 {
        kummer_genus(self.n, self.r, self.s).expect("validated pair")
    }

    pub fn signature(&self) -> Signature {
        kummer_signature(self.n, self.r, self.s).expect("validated pair")
    }
}

impl fmt::Display for PrimitivePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Genus of `y^N = x^r (1 - x)^s`:
/// `(N + 2 - gcd(N, r) - gcd(N, s) - gcd(N, r + s)) / 2`.
pub fn kummer_genus<I: ExactInt>(n: I, r: I, s: I) -> Result<I, FamilyError> {
    check_pair(n, r, s)?;
    let two = I::lit(2);
    let num = n + two - n.gcd(&r) - n.gcd(&s) - n.gcd(&(r + s));
    debug_assert!(num.is_even());
    Ok(num / two)
}

/// Ramification type `(0; N/gcd(N,r), N/gcd(N,s), N/gcd(N,r+s))` of `F(r,s)`.
pub fn kummer_signature<I: ExactInt>(n: I, r: I, s: I) -> Result<Signature<I>, FamilyError> {
    check_pair(n, r, s)?;
    let idx = [n / n.gcd(&r), n / n.gcd(&s), n / n.gcd(&(r + s))];
    Ok(Signature::new(I::zero(), idx)?)
}

/// A literal element of the ground field.
///
/// `Int` values live in the prime field; `Poly` holds coefficients
/// `c_0, c_1, ...` of `c_0 + c_1 t + ...` in the field's generator `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Int(i64),
    Poly(Vec<i64>),
}

impl FieldValue {
    fn normalized(coeffs: Vec<i64>) -> Self {
        let mut c = coeffs;
        while c.len() > 1 && c.last() == Some(&0) {
            c.pop();
        }
        if c.len() <= 1 {
            FieldValue::Int(c.first().copied().unwrap_or(0))
        } else {
            FieldValue::Poly(c)
        }
    }

    pub fn coefficients(&self) -> Vec<i64> {
        match self {
            FieldValue::Int(v) => vec![*v],
            FieldValue::Poly(c) => c.clone(),
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Int(v) => write!(f, "{v}"),
            FieldValue::Poly(c) => {
                let mut first = true;
                for (deg, &coef) in c.iter().enumerate().rev() {
                    if coef == 0 {
                        continue;
                    }
                    let mag = coef.abs();
                    if coef < 0 {
                        f.write_str("-")?;
                    } else if !first {
                        f.write_str("+")?;
                    }
                    first = false;
                    match (deg, mag) {
                        (0, m) => write!(f, "{m}")?,
                        (1, 1) => f.write_str("t")?,
                        (1, m) => write!(f, "{m}t")?,
                        (d, 1) => write!(f, "t^{d}")?,
                        (d, m) => write!(f, "{m}t^{d}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FieldValue {
    type Err = FamilyError;

    /// Parses an integer or a polynomial in `t` such as `2t^2-t+3`.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = || FamilyError::Parse(format!("bad field element '{src}'"));
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ if coeffs.is_empty() && rest.len() == s.len() => (false, rest),
                _ => return Err(err()),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, deg) = match term.find('t') {
                None => (term.parse::<i64>().map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let c = match &term[..pos] {
                        "" => 1,
                        digits => digits.parse::<i64>().map_err(|_| err())?,
                    };
                    let d = match &term[pos + 1..] {
                        "" => 1,
                        e => e
                            .strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<usize>()
                            .map_err(|_| err())?,
                    };
                    (c, d)
                }
            };
            if deg >= 64 {
                return Err(err());
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += if neg { -coef } else { coef };
        }
        Ok(FieldValue::normalized(coeffs))
    }
}

/// A model parameter: a named symbol or a literal field value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Param {
    Symbol(String),
    Value(FieldValue),
}

impl Param {
    pub fn symbol(name: &str) -> Self {
        Param::Symbol(name.to_string())
    }

    pub fn int(v: i64) -> Self {
        Param::Value(FieldValue::Int(v))
    }

    fn is_literal(&self, v: i64) -> bool {
        matches!(self, Param::Value(FieldValue::Int(x)) if *x == v)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Symbol(s) => f.write_str(s),
            Param::Value(v) => v.fmt(f),
        }
    }
}

impl FromStr for Param {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<FieldValue>() {
            return Ok(Param::Value(v));
        }
        let ident = !s.is_empty()
            && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ident {
            Ok(Param::Symbol(s.to_string()))
        } else {
            Err(FamilyError::Parse(format!("bad parameter '{s}'")))
        }
    }
}

/// One of the five families, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurveModel {
    /// `y^N = x^r (1 - x)^s`.
    Kummer(PrimitivePair),
    /// `y^2 = (x^(g+1) - 1)(x^(g+1) - lambda)`, `g` even.
    Hyperelliptic { g: i64, lambda: Param },
    /// `y^p - y = a (x^m - b)`.
    AsPower { p: i64, m: i64, a: Param, b: Param },
    /// `b y^p + c y = a x + 1/x`.
    AsRational {
        p: i64,
        a: Param,
        b: Param,
        c: Param,
    },
    /// `y^p - y = x^2`.
    Homma { p: i64 },
}

fn odd_prime(p: i64, what: &str) -> Result<(), FamilyError> {
    if p > 0 && is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(FamilyError::InvalidParameter(format!(
            "{what}: p = {p} is not an odd prime"
        )))
    }
}

fn nonzero(param: &Param, name: &str) -> Result<(), FamilyError> {
    if param.is_literal(0) {
        Err(FamilyError::InvalidParameter(format!(
            "{name} must be nonzero"
        )))
    } else {
        Ok(())
    }
}

impl CurveModel {
    pub fn kummer(n: i64, r: i64, s: i64) -> Result<Self, FamilyError> {
        let m = CurveModel::Kummer(PrimitivePair::new(n, r, s)?);
        m.validate()?;
        Ok(m)
    }

    pub fn hyperelliptic(g: i64, lambda: Param) -> Result<Self, FamilyError> {
        let m = CurveModel::Hyperelliptic { g, lambda };
        m.validate()?;
        Ok(m)
    }

    pub fn as_power(p: i64, m: i64, a: Param, b: Param) -> Result<Self, FamilyError> {
        let model = CurveModel::AsPower { p, m, a, b };
        model.validate()?;
        Ok(model)
    }

    pub fn as_rational(p: i64, a: Param, b: Param, c: Param) -> Result<Self, FamilyError> {
        let m = CurveModel::AsRational { p, a, b, c };
        m.validate()?;
        Ok(m)
    }

    pub fn homma(p: i64) -> Result<Self, FamilyError> {
        let m = CurveModel::Homma { p };
        m.validate()?;
        Ok(m)
    }

    /// Re-checks every parameter constraint, including `genus >= 2`.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            CurveModel::Kummer(pair) => {
                check_pair(pair.n, pair.r, pair.s)?;
            }
            CurveModel::Hyperelliptic { g, lambda } => {
                if *g < 2 || g % 2 != 0 {
                    return Err(FamilyError::InvalidParameter(format!(
                        "hyperelliptic genus {g} must be even and at least 2"
                    )));
                }
                if 2 * *g + 2 > 1i64 << 32 {
                    return Err(FamilyError::InvalidParameter(format!(
                        "N = {} too large",
                        2 * g + 2
                    )));
                }
                if lambda.is_literal(0) || lambda.is_literal(1) {
                    return Err(FamilyError::InvalidParameter(
                        "lambda must avoid 0 and 1".into(),
                    ));
                }
            }
            CurveModel::AsPower { p, m, a, .. } => {
                odd_prime(*p, "AS power")?;
                if *p == 3 {
                    return Err(FamilyError::InvalidParameter(
                        "AS power family requires p != 3".into(),
                    ));
                }
                if *m <= 1 || p.gcd(m) != 1 {
                    return Err(FamilyError::InvalidParameter(format!(
                        "need m > 1 coprime to p, got m = {m}"
                    )));
                }
                if p.checked_mul(*m).is_none_or(|n| n > 1i64 << 32) {
                    return Err(FamilyError::InvalidParameter("N = pm too large".into()));
                }
                nonzero(a, "a")?;
            }
            CurveModel::AsRational { p, a, b, c } => {
                odd_prime(*p, "AS rational")?;
                if *p == 3 {
                    return Err(FamilyError::InvalidParameter(
                        "AS rational family requires p != 3".into(),
                    ));
                }
                nonzero(a, "a")?;
                nonzero(b, "b")?;
                nonzero(c, "c")?;
            }
            CurveModel::Homma { p } => odd_prime(*p, "Homma")?,
        }
        let g = self.formula_genus();
        if g < 2 {
            return Err(FamilyError::DegenerateModel(format!(
                "{self} has genus {g}"
            )));
        }
        Ok(())
    }

    fn formula_genus(&self) -> i64 {
        match self {
            CurveModel::Kummer(pair) => {
                let n = pair.n;
                (n + 2 - n.gcd(&pair.r) - n.gcd(&pair.s) - n.gcd(&(pair.r + pair.s))) / 2
            }
            CurveModel::Hyperelliptic { g, .. } => *g,
            CurveModel::AsPower { p, m, .. } => (p - 1) * (m - 1) / 2,
            CurveModel::AsRational { p, .. } => p - 1,
            CurveModel::Homma { p } => (p - 1) / 2,
        }
    }

    pub fn genus(&self) -> Result<i64, FamilyError> {
        self.validate()?;
        Ok(self.formula_genus())
    }

    /// Order `N` of the cyclic group attached to the model.
    pub fn cyclic_order(&self) -> i64 {
        match self {
            CurveModel::Kummer(pair) => pair.n,
            CurveModel::Hyperelliptic { g, .. } => 2 * g + 2,
            CurveModel::AsPower { p, m, .. } => p * m,
            CurveModel::AsRational { p, .. } => 2 * p,
            CurveModel::Homma { p } => *p,
        }
    }

    /// Characteristic the model is tied to, for the Artin–Schreier families.
    pub fn artin_schreier_prime(&self) -> Option<i64> {
        match self {
            CurveModel::AsPower { p, .. }
            | CurveModel::AsRational { p, .. }
            | CurveModel::Homma { p } => Some(*p),
            _ => None,
        }
    }

    pub fn generator(&self) -> AutomorphismDescriptor {
        let n = self.cyclic_order();
        let action = match self {
            CurveModel::Kummer(pair) => Action::ScaleY {
                zeta: RootOfUnity(pair.n),
            },
            CurveModel::Hyperelliptic { g, .. } => Action::ScaleXNegateY {
                zeta: RootOfUnity(g + 1),
            },
            CurveModel::AsPower { m, .. } => Action::ScaleXShiftY {
                zeta: RootOfUnity(*m),
            },
            CurveModel::AsRational { a, b, c, .. } => Action::InvertXShiftY {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            },
            CurveModel::Homma { .. } => Action::ShiftY,
        };
        AutomorphismDescriptor { order: n, action }
    }

    /// Ramification data of the cover `X -> X/<generator>`.
    ///
    /// The quotient is always the projective line.
    pub fn ramification(&self) -> Ramification {
        match self {
            CurveModel::Kummer(pair) => Ramification::Tame(pair.signature()),
            CurveModel::Hyperelliptic { g, .. } => {
                Ramification::Tame(Signature::new(0, [2, 2, g + 1, g + 1]).expect("indices >= 2"))
            }
            CurveModel::AsPower { p, m, .. } => {
                // point at infinity: G_0 = G, G_1 = ... = G_m of order p
                let mut orders = vec![p * m];
                orders.extend(std::iter::repeat_n(*p, *m as usize));
                let infinity = FiltrationProfile::new(*p, orders).expect("valid AS profile");
                let zero = FiltrationProfile::tame(*p, *m).expect("m prime to p");
                Ramification::Wild(vec![
                    OrbitDatum::new(infinity, 1),
                    OrbitDatum::new(zero, *p),
                ])
            }
            CurveModel::AsRational { p, .. } => {
                let poles = FiltrationProfile::new(*p, [*p, *p]).expect("valid AS profile");
                let inv = FiltrationProfile::tame(*p, 2).expect("p odd");
                Ramification::Wild(vec![
                    OrbitDatum::new(poles, 2),
                    OrbitDatum::new(inv.clone(), *p),
                    OrbitDatum::new(inv, *p),
                ])
            }
            CurveModel::Homma { p } => {
                let inf = FiltrationProfile::new(*p, [*p, *p, *p]).expect("valid AS profile");
                Ramification::Wild(vec![OrbitDatum::new(inf, 1)])
            }
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::Kummer(pr) => write!(f, "kummer:{},{},{}", pr.n, pr.r, pr.s),
            CurveModel::Hyperelliptic { g, lambda } => write!(f, "hyper:{g},{lambda}"),
            CurveModel::AsPower { p, m, a, b } => write!(f, "aspower:{p},{m},{a},{b}"),
            CurveModel::AsRational { p, a, b, c } => write!(f, "asrational:{p},{a},{b},{c}"),
            CurveModel::Homma { p } => write!(f, "homma:{p}"),
        }
    }
}

impl FromStr for CurveModel {
    type Err = FamilyError;

    /// Parses `kummer:N,r,s`, `hyper:g,lambda`, `aspower:p,m,a,b`,
    /// `asrational:p,a,b,c` or `homma:p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, args) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Parse(format!("missing ':' in '{s}'")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<i64, FamilyError> {
            args[i]
                .parse::<i64>()
                .map_err(|_| FamilyError::Parse(format!("'{}' is not an integer", args[i])))
        };
        let param = |i: usize| args[i].parse::<Param>();
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(FamilyError::Parse(format!(
                    "{family} takes {n} parameters, got {}",
                    args.len()
                )))
            }
        };
        match family.trim() {
            "kummer" => {
                arity(3)?;
                CurveModel::kummer(int(0)?, int(1)?, int(2)?)
            }
            "hyper" => {
                arity(2)?;
                CurveModel::hyperelliptic(int(0)?, param(1)?)
            }
            "aspower" => {
                arity(4)?;
                CurveModel::as_power(int(0)?, int(1)?, param(2)?, param(3)?)
            }
            "asrational" => {
                arity(4)?;
                CurveModel::as_rational(int(0)?, param(1)?, param(2)?, param(3)?)
            }
            "homma" => {
                arity(1)?;
                CurveModel::homma(int(0)?)
            }
            other => Err(FamilyError::Parse(format!("unknown family '{other}'"))),
        }
    }
}

/// Ramification of the cyclic cover onto the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ramification {
    Tame(Signature),
    /// Short orbits with their filtration profiles.
    Wild(Vec<OrbitDatum>),
}

impl Ramification {
    /// Genus recomputed through Riemann–Hurwitz.
    pub fn genus(&self, n: i64) -> Result<i64, RamificationError> {
        match self {
            Ramification::Tame(sig) => rh_genus_tame(n, sig),
            Ramification::Wild(orbits) => rh_genus_wild(n, 0, orbits),
        }
    }
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ramification::Tame(sig) => sig.fmt(f),
            Ramification::Wild(orbits) => {
                for (i, o) in orbits.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}x[", o.orbit_size)?;
                    for (j, ord) in o.filtration.orders().iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{ord}")?;
                    }
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

/// Symbolic primitive root of unity of the recorded order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity(pub i64);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Identity,
    /// `(x, y) -> (x, zeta y)`
    ScaleY {
        zeta: RootOfUnity,
    },
    /// `(x, y) -> (zeta x, -y)`
    ScaleXNegateY {
        zeta: RootOfUnity,
    },
    /// `(x, y) -> (zeta x, y + 1)`
    ScaleXShiftY {
        zeta: RootOfUnity,
    },
    /// `(x, y) -> (1/(a x), y + gamma)` with `gamma` a nonzero root of `b Y^p + c Y`.
    InvertXShiftY {
        a: Param,
        b: Param,
        c: Param,
    },
    /// `(x, y) -> (x, y + 1)`
    ShiftY,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Identity => f.write_str("(x,y) -> (x,y)"),
            Action::ScaleY { zeta } => write!(f, "(x,y) -> (x,z{}*y)", zeta.0),
            Action::ScaleXNegateY { zeta } => write!(f, "(x,y) -> (z{}*x,-y)", zeta.0),
            Action::ScaleXShiftY { zeta } => write!(f, "(x,y) -> (z{}*x,y+1)", zeta.0),
            Action::InvertXShiftY { a, .. } => write!(f, "(x,y) -> (1/({a}*x),y+gamma)"),
            Action::ShiftY => f.write_str("(x,y) -> (x,y+1)"),
        }
    }
}

/// Generator of the cyclic group, as a symbolic coordinate map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutomorphismDescriptor {
    pub order: i64,
    pub action: Action,
}

impl AutomorphismDescriptor {
    pub fn identity() -> Self {
        Self {
            order: 1,
            action: Action::Identity,
        }
    }
}
