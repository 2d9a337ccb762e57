//! Classification of curves with a cyclic automorphism group of order `N >= 2g + 1`.
//!
//! For `p = 0` or an odd prime `p`, every such curve of genus `g >= 2` is
//! birational to one of:
//!
//! * (I) `p` prime to `N`: a Kummer curve `F(r,s)` for a primitive pair, or
//!   the hyperelliptic curve `H_lambda` with `N = 2g + 2`, `g` even;
//! * (II) `N = pm`, `p >= 5`: `y^p - y = a(x^m - b)` of genus `(p-1)(m-1)/2`,
//!   or `b y^p + c y = a x + 1/x` of genus `p - 1` with `N = 2p`;
//! * (III) `N = p`: `y^p - y = x^2`.
//!
//! [`classify`] lists every branch compatible with `(p, g)`. The Kummer search
//! runs over `2g + 1 <= N <= 4g + 4` (`4g + 2` when `p = 0`), the ceiling
//! coming from the bound on abelian automorphism groups.
//!
//! [`enumerate_signatures`] is the purely arithmetic counterpart: all tame
//! ramification types of order `N` and genus `g` that survive the l.c.m.
//! constraints on branch indices.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{divisors, is_odd_prime};
use crate::families::{kummer_genus, CurveModel, FamilyError, Param, PrimitivePair, Ramification};
use crate::ramification::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("characteristic 2 unsupported")]
    UnsupportedCharacteristic(u64),
    #[error("characteristic must be 0 or an odd prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("genus must be at least 2, got {0}")]
    BadGenus(i64),
}

/// Which case of the classification an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Kummer,
    Hyperelliptic,
    AsPower,
    AsRational,
    Homma,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Kummer => "I-Kummer",
            Branch::Hyperelliptic => "I-Hyperelliptic",
            Branch::AsPower => "II-ASPower",
            Branch::AsRational => "II-ASRational",
            Branch::Homma => "III-Homma",
        }
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, Branch::AsPower | Branch::AsRational | Branch::Homma)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyQuery {
    pub p: u64,
    pub g: i64,
    /// Restrict to one group order.
    pub n: Option<i64>,
    /// One Kummer entry per primitive pair instead of per canonical class.
    pub raw_pairs: bool,
}

impl ClassifyQuery {
    pub fn new(p: u64, g: i64) -> Result<Self, ClassifyError> {
        if p == 2 {
            return Err(ClassifyError::UnsupportedCharacteristic(p));
        }
        if p != 0 && !is_odd_prime(p) {
            return Err(ClassifyError::InvalidCharacteristic(p));
        }
        if g < 2 {
            return Err(ClassifyError::BadGenus(g));
        }
        Ok(Self {
            p,
            g,
            n: None,
            raw_pairs: false,
        })
    }

    pub fn with_order(mut self, n: Option<i64>) -> Self {
        self.n = n;
        self
    }

    pub fn with_raw_pairs(mut self, raw: bool) -> Self {
        self.raw_pairs = raw;
        self
    }

    /// Largest `N` searched for Kummer curves.
    pub fn ceiling(&self) -> i64 {
        if self.p == 0 {
            4 * self.g + 2
        } else {
            4 * self.g + 4
        }
    }

    fn prime_divides(&self, n: i64) -> bool {
        self.p != 0 && n % self.p as i64 == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationEntry {
    pub n: i64,
    pub branch: Branch,
    /// Model with symbolic parameters where the family is parametric.
    pub model_template: CurveModel,
    pub genus: i64,
    pub ramification: Ramification,
    /// `p` divides `N`.
    pub wild: bool,
    /// Kummer entries: the primitive pairs represented (first is canonical).
    pub pairs: Vec<PrimitivePair>,
}

impl ClassificationEntry {
    fn from_model(branch: Branch, model: CurveModel, p: u64) -> Self {
        let n = model.cyclic_order();
        let genus = model.genus().expect("classification templates are valid");
        let wild = p != 0 && n % p as i64 == 0;
        Self {
            n,
            branch,
            ramification: model.ramification(),
            model_template: model,
            genus,
            wild,
            pairs: Vec::new(),
        }
    }
}

/// All entries of the classification for characteristic `p` and genus `g`.
pub fn classify(p: u64, g: i64) -> Result<Vec<ClassificationEntry>, ClassifyError> {
    Ok(classify_query(&ClassifyQuery::new(p, g)?))
}

pub fn classify_query(query: &ClassifyQuery) -> Vec<ClassificationEntry> {
    let (p, g) = (query.p, query.g);
    let wanted = |n: i64| query.n.is_none_or(|m| m == n);
    let mut out = Vec::new();

    for n in (2 * g + 1)..=query.ceiling() {
        if !wanted(n) || query.prime_divides(n) {
            continue;
        }
        let matching: Vec<PrimitivePair> =
            primitive_pairs(n).filter(|pr| pr.genus() == g).collect();
        let groups: Vec<Vec<PrimitivePair>> = if query.raw_pairs {
            matching.into_iter().map(|pr| vec![pr]).collect()
        } else {
            let mut by_class: BTreeMap<PrimitivePair, Vec<PrimitivePair>> = BTreeMap::new();
            for pr in matching {
                let c = canonical_pair(n, pr.r(), pr.s()).expect("pair is primitive");
                by_class.entry(c).or_default().push(pr);
            }
            by_class
                .into_iter()
                .map(|(c, mut members)| {
                    members.retain(|m| *m != c);
                    members.insert(0, c);
                    members
                })
                .collect()
        };
        for members in groups {
            let lead = members[0];
            let model = CurveModel::Kummer(lead);
            let mut entry = ClassificationEntry::from_model(Branch::Kummer, model, p);
            entry.pairs = members;
            out.push(entry);
        }
    }

    let hyper_n = 2 * g + 2;
    if g % 2 == 0 && wanted(hyper_n) && !query.prime_divides(hyper_n) {
        let model = CurveModel::hyperelliptic(g, Param::symbol("lambda")).expect("g even >= 2");
        out.push(ClassificationEntry::from_model(
            Branch::Hyperelliptic,
            model,
            p,
        ));
    }

    if p >= 5 {
        let pi = p as i64;
        if (2 * g) % (pi - 1) == 0 {
            let m = 2 * g / (pi - 1) + 1;
            if m > 1 && m.gcd(&pi) == 1 && wanted(pi * m) {
                let model = CurveModel::as_power(pi, m, Param::symbol("a"), Param::symbol("b"))
                    .expect("p >= 5, m coprime to p");
                out.push(ClassificationEntry::from_model(Branch::AsPower, model, p));
            }
        }
        if g == pi - 1 && wanted(2 * pi) {
            let model = CurveModel::as_rational(
                pi,
                Param::symbol("a"),
                Param::symbol("b"),
                Param::symbol("c"),
            )
            .expect("p >= 5");
            out.push(ClassificationEntry::from_model(
                Branch::AsRational,
                model,
                p,
            ));
        }
    }
    if p >= 3 && 2 * g + 1 == p as i64 && wanted(p as i64) {
        let model = CurveModel::homma(p as i64).expect("p = 2g + 1 >= 5");
        out.push(ClassificationEntry::from_model(Branch::Homma, model, p));
    }

    out.sort_by(|a, b| (a.n, a.branch, &a.pairs).cmp(&(b.n, b.branch, &b.pairs)));
    out
}

/// Every primitive pair of `A_N` in lexicographic order.
pub fn primitive_pairs(n: i64) -> impl Iterator<Item = PrimitivePair> {
    (1..n.max(1)).flat_map(move |r| {
        (1..n - r).filter_map(move |s| {
            if r.gcd(&s).gcd(&n) == 1 {
                PrimitivePair::new(n, r, s).ok()
            } else {
                None
            }
        })
    })
}

/// Least pair in the orbit of `(r, s)` under unit scaling and the
/// permutations of the exponent triple `(r, s, -r-s)`, restricted to `A_N`.
///
/// Pairs in one orbit define the same curve up to a change of coordinates on
/// the line and of the generator of the group; whether distinct orbits can
/// still give isomorphic curves is not decided here.
pub fn canonical_pair(n: i64, r: i64, s: i64) -> Result<PrimitivePair, FamilyError> {
    PrimitivePair::new(n, r, s)?;
    let t = n - r - s;
    let mut best: Option<(i64, i64)> = None;
    for u in (1..n).filter(|u| u.gcd(&n) == 1) {
        let tri = [(u * r) % n, (u * s) % n, (u * t) % n];
        for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
            let (a, b) = (tri[i], tri[j]);
            if a >= 1 && b >= 1 && a + b < n && best.is_none_or(|bst| (a, b) < bst) {
                best = Some((a, b));
            }
        }
    }
    let (a, b) = best.expect("the identity or its negative lies in A_N");
    PrimitivePair::new(n, a, b)
}

/// All tame types `(g0; e_1..e_n)` of a cyclic group of order `n` acting on a
/// genus-`g` curve, subject to: `e_i | n`, at least two branch points (three
/// when `g0 = 0`), `lcm(e) = n` when `g0 = 0`, and the l.c.m. unchanged by
/// dropping any single index.
pub fn enumerate_signatures(n: i64, g: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    if n < 2 || g < 0 {
        return out;
    }
    let idx: Vec<i64> = divisors(n as u64)
        .into_iter()
        .skip(1)
        .map(|d| d as i64)
        .collect();
    let mut g0 = 0i64;
    loop {
        let deficit = (2 * g - 2) - n * (2 * g0 - 2);
        // each branch point adds at least n/2
        if deficit < n {
            break;
        }
        let min_branch = if g0 == 0 { 3 } else { 2 };
        let mut chosen = Vec::new();
        search(n, &idx, 0, deficit, &mut chosen, &mut |ms: &[i64]| {
            if ms.len() < min_branch {
                return;
            }
            let lcm = ms.iter().fold(1i64, |a, e| a.lcm(e));
            if g0 == 0 && lcm != n {
                return;
            }
            let stable = (0..ms.len()).all(|skip| {
                ms.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .fold(1i64, |a, (_, e)| a.lcm(e))
                    == lcm
            });
            if stable {
                out.push(Signature::new(g0, ms.iter().copied()).expect("indices >= 2"));
            }
        });
        g0 += 1;
    }
    out.sort();
    out
}

fn search(
    n: i64,
    idx: &[i64],
    from: usize,
    remaining: i64,
    chosen: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for (k, &e) in idx.iter().enumerate().skip(from) {
        let c = n - n / e;
        if c > remaining {
            break;
        }
        chosen.push(e);
        search(n, idx, k, remaining - c, chosen, emit);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakiReport {
    pub n_max: i64,
    pub pairs_checked: u64,
    /// Pairs attaining `N = 2g + 1`.
    pub equality_cases: u64,
    pub violations: Vec<PrimitivePair>,
}

/// Checks `N >= 2 g(r,s) + 1` for every primitive pair with `N <= n_max`.
pub fn verify_sasaki_bound(n_max: i64) -> SasakiReport {
    let mut report = SasakiReport {
        n_max,
        pairs_checked: 0,
        equality_cases: 0,
        violations: Vec::new(),
    };
    for n in 3..=n_max {
        for pr in primitive_pairs(n) {
            let g = kummer_genus(n, pr.r(), pr.s()).expect("primitive");
            report.pairs_checked += 1;
            if n < 2 * g + 1 {
                report.violations.push(pr);
            } else if n == 2 * g + 1 {
                report.equality_cases += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs_of(n: i64) -> Vec<(i64, i64)> {
        primitive_pairs(n).map(|p| (p.r(), p.s())).collect()
    }

    #[test]
    fn primitive_pair_enumeration() {
        assert_eq!(
            pairs_of(5),
            vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)]
        );
        assert!(!pairs_of(4).contains(&(2, 2)));
        assert_eq!(pairs_of(4), vec![(1, 1), (1, 2), (2, 1)]);
        for n in [3i64, 7, 11, 13] {
            assert_eq!(pairs_of(n).len() as i64, (n - 1) * (n - 2) / 2);
        }
        assert!(pairs_of(2).is_empty());
    }

    #[test]
    fn canonical_examples() {
        let c = canonical_pair(6, 4, 1).unwrap();
        assert_eq!((c.r(), c.s()), (1, 1));
        let c = canonical_pair(5, 2, 2).unwrap();
        assert_eq!((c.r(), c.s()), (1, 1));
        assert!(canonical_pair(4, 2, 2).is_err());
    }

    #[test]
    fn canonical_is_idempotent_and_preserves_genus() {
        for n in 3..=30 {
            for pr in primitive_pairs(n) {
                let c = canonical_pair(n, pr.r(), pr.s()).unwrap();
                assert_eq!(canonical_pair(n, c.r(), c.s()).unwrap(), c);
                assert_eq!(c.genus(), pr.genus());
                assert!(c <= pr);
            }
        }
    }

    #[test]
    fn signature_examples() {
        let s: Vec<String> = enumerate_signatures(6, 2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(s, vec!["(0;2,2,3,3)", "(0;3,6,6)"]);
        let s: Vec<String> = enumerate_signatures(5, 2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(s, vec!["(0;5,5,5)"]);
        // (0;7,7,7) has genus 3; no type of order 7 has genus 4
        assert!(enumerate_signatures(7, 4).is_empty());
        let s: Vec<String> = enumerate_signatures(7, 3)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(s, vec!["(0;7,7,7)"]);
        // below 2g + 1 the enumerator still answers
        let s: Vec<String> = enumerate_signatures(3, 2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(s, vec!["(0;3,3,3,3)"]);
    }

    #[test]
    fn signatures_with_positive_quotient_genus() {
        // order 2 on genus 3: (1;2,2,2,2) and (2;) is excluded (needs >= 2 branch points)
        let sigs = enumerate_signatures(2, 3);
        assert!(sigs.iter().any(|s| s.to_string() == "(1;2,2,2,2)"));
        assert!(sigs.iter().any(|s| s.to_string() == "(0;2,2,2,2,2,2,2,2)"));
        assert!(sigs.iter().all(|s| s.len() >= 2));
        for s in &sigs {
            assert_eq!(crate::rh_genus_tame(2, s).unwrap(), 3);
        }
    }

    #[test]
    fn classify_p5_g2() {
        let entries = classify(5, 2).unwrap();
        let summary: Vec<(i64, Branch)> = entries.iter().map(|e| (e.n, e.branch)).collect();
        assert_eq!(
            summary,
            vec![
                (5, Branch::Homma),
                (6, Branch::Kummer),
                (6, Branch::Hyperelliptic),
                (8, Branch::Kummer),
                (10, Branch::AsPower),
            ]
        );
        let k6: Vec<(i64, i64)> = entries[1].pairs.iter().map(|p| (p.r(), p.s())).collect();
        assert_eq!(k6, vec![(1, 1), (1, 4), (4, 1)]);
        assert_eq!(entries[3].pairs[0], PrimitivePair::new(8, 1, 3).unwrap());
        assert!(entries[0].wild && entries[4].wild);
        assert!(!entries[1].wild);
    }

    #[test]
    fn classify_p3_g3() {
        let entries = classify(3, 3).unwrap();
        assert!(entries.iter().all(|e| e.branch == Branch::Kummer));
        assert!(entries.iter().all(|e| e.n % 3 != 0));
        let n7: Vec<_> = entries
            .iter()
            .filter(|e| e.n == 7)
            .map(|e| e.pairs[0])
            .collect();
        assert_eq!(
            n7,
            vec![
                PrimitivePair::new(7, 1, 1).unwrap(),
                PrimitivePair::new(7, 1, 2).unwrap()
            ]
        );
        let orders: Vec<i64> = entries.iter().map(|e| e.n).collect();
        assert_eq!(orders, vec![7, 7, 8, 8, 14]);
    }

    #[test]
    fn classify_p0_is_branch_one_only() {
        let entries = classify(0, 2).unwrap();
        assert!(entries.iter().all(|e| !e.branch.is_wild() && !e.wild));
        let orders: Vec<i64> = entries.iter().map(|e| e.n).collect();
        assert_eq!(orders, vec![5, 6, 6, 8, 10]);
    }

    #[test]
    fn classify_raw_and_filtered() {
        let q = ClassifyQuery::new(5, 2)
            .unwrap()
            .with_raw_pairs(true)
            .with_order(Some(6));
        let entries = classify_query(&q);
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e.n == 6));
    }

    #[test]
    fn classify_errors() {
        assert_eq!(
            classify(2, 3).unwrap_err(),
            ClassifyError::UnsupportedCharacteristic(2)
        );
        assert_eq!(classify(5, 1).unwrap_err(), ClassifyError::BadGenus(1));
        assert_eq!(
            classify(9, 2).unwrap_err(),
            ClassifyError::InvalidCharacteristic(9)
        );
        assert_eq!(
            ClassifyError::UnsupportedCharacteristic(2).to_string(),
            "characteristic 2 unsupported"
        );
    }

    #[test]
    fn wild_branches() {
        // p = 7, g = 3: Homma at N = 7, AS power with m = 2 at N = 14
        let e = classify(7, 3).unwrap();
        assert!(e.iter().any(|x| x.branch == Branch::Homma && x.n == 7));
        assert!(e.iter().any(|x| x.branch == Branch::AsPower && x.n == 14));
        // p = 5, g = 4: AS rational at N = 10 and AS power with m = 3 at N = 15
        let e = classify(5, 4).unwrap();
        assert!(e
            .iter()
            .any(|x| x.branch == Branch::AsRational && x.n == 10));
        assert!(e.iter().any(|x| x.branch == Branch::AsPower && x.n == 15));
        // p = 5, g = 10: m = 6
        let e = classify(5, 10).unwrap();
        assert!(e.iter().any(|x| x.branch == Branch::AsPower && x.n == 30));
        // p = 5, g = 8: m = 5 is not prime to p
        let e = classify(5, 8).unwrap();
        assert!(!e.iter().any(|x| x.branch == Branch::AsPower));
    }

    #[test]
    fn sasaki_small() {
        let r = verify_sasaki_bound(5);
        assert_eq!(r.pairs_checked, 1 + 3 + 6);
        assert!(r.violations.is_empty());
        assert!(r.equality_cases >= 1);
        assert_eq!(PrimitivePair::new(5, 1, 1).unwrap().genus(), 2);
    }
}
