//! Finite fields `F_q`, `q = p^k`, with two interchangeable backends.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^(k-1)`
//! where `c_0 + c_1 t + ...` is the residue modulo the field's irreducible
//! modulus. Both backends share this encoding, so elements move freely
//! between them:
//!
//! * [`PolyField`] does schoolbook polynomial arithmetic on every call;
//! * [`TableField`] precomputes discrete log, antilog and Zech tables.
//!
//! Counting code is generic over [`FiniteField`]; the brute-force oracle
//! runs on `PolyField` while the fast counts run on `TableField`, so the two
//! routes share no arithmetic.

use std::ops::Range;

use crate::arith::{gcd, is_odd_prime, prime_factors, prime_power};

use super::poly::{is_irreducible, least_irreducible};
use super::OracleError;

/// Largest field order accepted at all.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;
/// Largest field order for which [`TableField`] is built.
pub const TABLE_MAX_ORDER: u64 = 1 << 22;

const MAX_DEGREE: usize = 20;

/// Element of a finite field in the integer encoding described above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `F_{p^k}` together with the monic irreducible modulus defining it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Field of order `p^k` with the least irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Self, OracleError> {
        Self::check_size(p, k)?;
        Ok(Self {
            p,
            k,
            modulus: least_irreducible(p, k),
        })
    }

    /// Field of order `q`, which must be an odd prime power.
    pub fn from_order(q: u64) -> Result<Self, OracleError> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| OracleError::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    /// Field with an explicit modulus (monic, coefficients low degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, OracleError> {
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(OracleError::InvalidField(format!(
                "modulus {modulus:?} is not monic over F_{p}"
            )));
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_size(p, k)?;
        if !is_irreducible(&modulus, p) {
            return Err(OracleError::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(Self { p, k, modulus })
    }

    fn check_size(p: u64, k: u32) -> Result<(), OracleError> {
        if !is_odd_prime(p) {
            return Err(OracleError::InvalidField(format!(
                "characteristic {p} is not an odd prime"
            )));
        }
        if k == 0 {
            return Err(OracleError::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_ORDER && (k as usize) <= MAX_DEGREE => Ok(()),
            _ => Err(OracleError::FieldTooLarge {
                q: p.saturating_pow(k),
                cap: MAX_FIELD_ORDER,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The degree-`j` extension `F_{q^j}`, with its own least modulus.
    pub fn extension(&self, j: u32) -> Result<FieldSpec, OracleError> {
        FieldSpec::new(self.p, self.k * j)
    }
}

type Digits = [u64; MAX_DEGREE];

/// Arithmetic in a finite field on the shared integer encoding.
pub trait FiniteField: Send + Sync {
    fn spec(&self) -> &FieldSpec;

    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn characteristic(&self) -> u64 {
        self.spec().p()
    }

    fn order(&self) -> u64 {
        self.spec().q()
    }

    fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// Image of an integer in the prime field.
    fn embed_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.characteristic() as i64) as u32)
    }

    fn elements(&self) -> std::iter::Map<Range<u32>, fn(u32) -> Elem> {
        (0..self.order() as u32).map(Elem as fn(u32) -> Elem)
    }

    /// Whether `a` is an `n`-th power (zero counts as one).
    fn is_nth_power(&self, a: Elem, n: u64) -> bool {
        if a.is_zero() {
            return true;
        }
        let q1 = self.order() - 1;
        self.pow(a, q1 / gcd(n, q1)) == Elem::ONE
    }

    /// Absolute trace `a + a^p + ... + a^(p^(k-1))`, as an integer mod `p`.
    fn trace(&self, a: Elem) -> u64 {
        let mut acc = Elem::ZERO;
        let mut cur = a;
        for _ in 0..self.spec().k() {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.characteristic());
        }
        debug_assert!((acc.0 as u64) < self.characteristic());
        acc.0 as u64
    }

    /// Multiplicative order of a nonzero element.
    fn mult_order(&self, a: Elem) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut ord = self.order() - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == Elem::ONE {
                ord /= l;
            }
        }
        ord
    }

    /// Least element (in the encoding order) of exact multiplicative order `n`.
    fn root_of_unity(&self, n: u64) -> Option<Elem> {
        if n == 0 || !(self.order() - 1).is_multiple_of(n) {
            return None;
        }
        self.elements().skip(1).find(|&e| self.mult_order(e) == n)
    }

    /// Element `c_0 + c_1 t + ...` (integer coefficients reduced mod `p`).
    fn embed_coeffs(&self, coeffs: &[i64]) -> Option<Elem> {
        let spec = self.spec();
        let p = spec.p() as i64;
        let mut trimmed = coeffs.to_vec();
        while trimmed.last().is_some_and(|c| c.rem_euclid(p) == 0) {
            trimmed.pop();
        }
        if trimmed.len() > spec.k() as usize {
            return None;
        }
        let mut idx = 0u64;
        for &c in trimmed.iter().rev() {
            idx = idx * spec.p() + c.rem_euclid(p) as u64;
        }
        Some(Elem(idx as u32))
    }
}

fn digits(spec: &FieldSpec, a: Elem) -> Digits {
    let mut d = [0u64; MAX_DEGREE];
    let mut v = a.0 as u64;
    for slot in d.iter_mut().take(spec.k as usize) {
        *slot = v % spec.p;
        v /= spec.p;
    }
    d
}

fn encode(spec: &FieldSpec, d: &Digits) -> Elem {
    let mut v = 0u64;
    for &c in d[..spec.k as usize].iter().rev() {
        v = v * spec.p + c;
    }
    Elem(v as u32)
}

fn add_digits(spec: &FieldSpec, a: Elem, b: Elem) -> Elem {
    if spec.k == 1 {
        return Elem(((a.0 as u64 + b.0 as u64) % spec.p) as u32);
    }
    let (x, y) = (digits(spec, a), digits(spec, b));
    let mut z = [0u64; MAX_DEGREE];
    for i in 0..spec.k as usize {
        z[i] = (x[i] + y[i]) % spec.p;
    }
    encode(spec, &z)
}

fn neg_digits(spec: &FieldSpec, a: Elem) -> Elem {
    if spec.k == 1 {
        return Elem(((spec.p - a.0 as u64) % spec.p) as u32);
    }
    let x = digits(spec, a);
    let mut z = [0u64; MAX_DEGREE];
    for i in 0..spec.k as usize {
        z[i] = (spec.p - x[i]) % spec.p;
    }
    encode(spec, &z)
}

/// Field arithmetic by direct polynomial multiplication and reduction.
#[derive(Debug, Clone)]
pub struct PolyField {
    spec: FieldSpec,
}

impl PolyField {
    pub fn new(spec: FieldSpec) -> Self {
        Self { spec }
    }
}

impl FiniteField for PolyField {
    fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        add_digits(&self.spec, a, b)
    }

    fn neg(&self, a: Elem) -> Elem {
        neg_digits(&self.spec, a)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let spec = &self.spec;
        let p = spec.p;
        if spec.k == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        let k = spec.k as usize;
        let (x, y) = (digits(spec, a), digits(spec, b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // reduce with the monic modulus: t^k = -(m_0 + ... + m_{k-1} t^(k-1))
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in spec.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p - c * m % p) % p;
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        out[..k].copy_from_slice(&prod[..k]);
        encode(spec, &out)
    }
}

const NO_LOG: u32 = u32::MAX;

/// Field arithmetic through log / antilog / Zech tables.
#[derive(Debug, Clone)]
pub struct TableField {
    spec: FieldSpec,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, empty for prime fields.
    zech: Vec<u32>,
    /// Traces of the basis `1, t, ..., t^(k-1)`.
    basis_trace: Vec<u64>,
}

impl TableField {
    pub fn new(spec: FieldSpec) -> Result<Self, OracleError> {
        let q = spec.q();
        if q > TABLE_MAX_ORDER {
            return Err(OracleError::FieldTooLarge {
                q,
                cap: TABLE_MAX_ORDER,
            });
        }
        let slow = PolyField::new(spec.clone());
        let q1 = q - 1;
        let factors = prime_factors(q1);
        let generator = slow
            .elements()
            .skip(1)
            .find(|&g| factors.iter().all(|&l| slow.pow(g, q1 / l) != Elem::ONE))
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u32; q1 as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = Elem::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = slow.mul(cur, generator);
        }
        let zech = if spec.k() > 1 {
            exp.iter()
                .map(|&e| log[slow.add(Elem(e), Elem::ONE).0 as usize])
                .collect()
        } else {
            Vec::new()
        };
        let basis_trace = (0..spec.k())
            .map(|i| slow.trace(Elem(spec.p().pow(i) as u32)))
            .collect();
        Ok(Self {
            spec,
            exp,
            log,
            zech,
            basis_trace,
        })
    }

    fn log_of(&self, a: Elem) -> u64 {
        self.log[a.0 as usize] as u64
    }

    fn exp_of(&self, e: u64) -> Elem {
        Elem(self.exp[(e % (self.order() - 1)) as usize])
    }
}

impl FiniteField for TableField {
    fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.zech.is_empty() {
            return add_digits(&self.spec, a, b);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let q1 = self.order() - 1;
        let (la, lb) = (self.log_of(a), self.log_of(b));
        let z = self.zech[((lb + q1 - la) % q1) as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            self.exp_of(la + z as u64)
        }
    }

    fn neg(&self, a: Elem) -> Elem {
        neg_digits(&self.spec, a)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        self.exp_of(self.log_of(a) + self.log_of(b))
    }

    fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let q1 = self.order() - 1;
        let le = (self.log_of(a) as u128 * (e % q1) as u128 % q1 as u128) as u64;
        self.exp_of(le)
    }

    fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let q1 = self.order() - 1;
        Some(self.exp_of(q1 - self.log_of(a)))
    }

    fn is_nth_power(&self, a: Elem, n: u64) -> bool {
        a.is_zero() || self.log_of(a).is_multiple_of(gcd(n, self.order() - 1))
    }

    fn trace(&self, a: Elem) -> u64 {
        let p = self.spec.p();
        let d = digits(&self.spec, a);
        self.basis_trace
            .iter()
            .zip(d.iter())
            .fold(0, |acc, (&t, &c)| (acc + t * c) % p)
    }

    fn mult_order(&self, a: Elem) -> u64 {
        let q1 = self.order() - 1;
        q1 / gcd(self.log_of(a), q1)
    }
}

/// Whichever backend fits the field size.
#[derive(Debug, Clone)]
pub enum AnyField {
    Table(TableField),
    Poly(PolyField),
}

impl AnyField {
    pub fn new(spec: FieldSpec) -> Result<Self, OracleError> {
        if spec.q() <= TABLE_MAX_ORDER {
            Ok(AnyField::Table(TableField::new(spec)?))
        } else {
            Ok(AnyField::Poly(PolyField::new(spec)))
        }
    }
}

macro_rules! delegate {
    ($self:ident, $f:ident => $e:expr) => {
        match $self {
            AnyField::Table($f) => $e,
            AnyField::Poly($f) => $e,
        }
    };
}

impl FiniteField for AnyField {
    fn spec(&self) -> &FieldSpec {
        delegate!(self, f => f.spec())
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        delegate!(self, f => f.add(a, b))
    }
    fn neg(&self, a: Elem) -> Elem {
        delegate!(self, f => f.neg(a))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        delegate!(self, f => f.mul(a, b))
    }
    fn pow(&self, a: Elem, e: u64) -> Elem {
        delegate!(self, f => f.pow(a, e))
    }
    fn inv(&self, a: Elem) -> Option<Elem> {
        delegate!(self, f => f.inv(a))
    }
    fn is_nth_power(&self, a: Elem, n: u64) -> bool {
        delegate!(self, f => f.is_nth_power(a, n))
    }
    fn trace(&self, a: Elem) -> u64 {
        delegate!(self, f => f.trace(a))
    }
    fn mult_order(&self, a: Elem) -> u64 {
        delegate!(self, f => f.mult_order(a))
    }
}
