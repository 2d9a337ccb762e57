//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncurve::fforacle::DEFAULT_FIELD_CAP;
use ncurve::{
    classify, count_places_in, count_places_naive, count_series, enumerate_signatures,
    kummer_genus, kummer_signature, primitive_pairs, rh_genus_tame, rh_genus_wild,
    validate_filtration, verify_automorphism, verify_sasaki_bound, zeta_genus, AnyField, Branch,
    CurveModel, Elem, FieldSpec, FiltrationProfile, OracleError, OrbitDatum,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn within(outcome: Outcome, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    match limit {
        Some(l) if outcome.ok && elapsed > l => fail(format!(
            "{}; took {elapsed:.2?}, limit {l:?}",
            outcome.detail
        )),
        _ => outcome,
    }
}

/// Models with the prime-power order their parameters live in.
const ORACLE_MODELS: &[(&str, u64)] = &[
    ("kummer:5,1,1", 11),
    ("kummer:6,1,1", 13),
    ("kummer:5,1,2", 11),
    ("homma:5", 5),
    ("homma:7", 7),
    ("aspower:5,2,1,0", 11),
    ("aspower:5,2,1,0", 5),
    ("hyper:2,2", 7),
    ("hyper:2,3", 7),
    ("asrational:5,1,1,-1", 5),
];

fn model(s: &str) -> CurveModel {
    s.parse().expect("valid model")
}

fn sasaki() -> Outcome {
    let r = verify_sasaki_bound(200);
    if r.violations.is_empty() {
        pass(format!(
            "{} pairs, 0 violations, {} equality cases",
            r.pairs_checked, r.equality_cases
        ))
    } else {
        fail(format!(
            "{} violations, first {}",
            r.violations.len(),
            r.violations[0]
        ))
    }
}

fn coherence() -> Outcome {
    let mut checked = 0u64;
    for n in 3..=100i64 {
        for pr in primitive_pairs(n) {
            let (r, s) = (pr.r(), pr.s());
            let formula = kummer_genus(n, r, s).expect("primitive");
            let sig = kummer_signature(n, r, s).expect("primitive");
            match rh_genus_tame(n, &sig) {
                Ok(g) if g == formula => checked += 1,
                other => {
                    return fail(format!(
                        "N={n} {pr}: formula {formula}, signature gives {other:?}"
                    ))
                }
            }
        }
    }
    pass(format!("{checked} pairs agree exactly"))
}

fn case_analysis() -> Outcome {
    let mut outputs = 0usize;
    for n in 3..=60i64 {
        for g in 2..=(n - 1) / 2 {
            for sig in enumerate_signatures(n, g) {
                outputs += 1;
                let e = sig.indices();
                let hyper = n == 2 * g + 2 && g % 2 == 0 && e == [2, 2, g + 1, g + 1];
                if sig.g0() != 0 || !(e.len() == 3 || hyper) {
                    return fail(format!("N={n} g={g}: unexpected type {sig}"));
                }
            }
        }
    }
    pass(format!(
        "{outputs} signatures, all of the two allowed shapes"
    ))
}

fn classification() -> Outcome {
    let mut entries = 0usize;
    for p in [0u64, 3, 5, 7, 11, 13] {
        for g in 2..=30i64 {
            let list = match classify(p, g) {
                Ok(l) => l,
                Err(e) => return fail(format!("classify({p}, {g}): {e}")),
            };
            for e in list {
                entries += 1;
                let tag = format!("p={p} g={g} N={} {}", e.n, e.branch.label());
                if e.n < 2 * g + 1 {
                    return fail(format!("{tag}: N < 2g+1"));
                }
                if e.model_template.genus().ok() != Some(g) || e.genus != g {
                    return fail(format!("{tag}: template genus differs"));
                }
                let pi = p as i64;
                let wild_ok = match e.branch {
                    Branch::AsPower => {
                        p != 3 && p >= 5 && e.n % pi == 0 && (pi - 1) * (e.n / pi - 1) / 2 == g
                    }
                    Branch::AsRational => p >= 5 && e.n == 2 * pi && g == pi - 1,
                    Branch::Homma => e.n == pi && 2 * g == pi - 1,
                    Branch::Kummer | Branch::Hyperelliptic => !e.wild,
                };
                if !wild_ok || e.wild != e.branch.is_wild() {
                    return fail(format!("{tag}: wild entry outside the allowed families"));
                }
            }
        }
    }
    pass(format!("{entries} entries consistent"))
}

fn zeta_cross_validation() -> Outcome {
    let mut lines = Vec::new();
    for &(m, q) in ORACLE_MODELS {
        let model = model(m);
        let g = model.genus().expect("genus");
        let base = FieldSpec::from_order(q).expect("field");
        let found = count_series(&model, &base, 2 * g as u32, DEFAULT_FIELD_CAP)
            .and_then(|s| zeta_genus(&s, g as u32));
        match found {
            Ok(z) if z as i64 == g => lines.push(format!("{m}/F{q}:g={g}")),
            other => return fail(format!("{m}/F{q}: formula genus {g}, zeta gives {other:?}")),
        }
    }
    pass(format!("{} models [{}]", lines.len(), lines.join(" ")))
}

fn automorphisms() -> Outcome {
    let mut checked = 0;
    for &(m, q) in ORACLE_MODELS {
        let model = model(m);
        let spec = FieldSpec::from_order(q).expect("field");
        let gen = model.generator();
        let in_char = model
            .artin_schreier_prime()
            .is_none_or(|p| p as u64 == spec.p());
        match verify_automorphism(&model, &spec, &gen) {
            Ok(r) if in_char => {
                if r.order as i64 != model.cyclic_order() {
                    return fail(format!(
                        "{m}/F{q}: order {} but branch claims {}",
                        r.order,
                        model.cyclic_order()
                    ));
                }
                if let CurveModel::Kummer(_) = model {
                    let expected = vec![(Elem(0), Elem(0)), (Elem(1), Elem(0))];
                    if r.fixed_points != expected {
                        return fail(format!("{m}/F{q}: fixed points {:?}", r.fixed_points));
                    }
                }
                checked += 1;
            }
            // y -> y + 1 only preserves y^p - y in characteristic p
            Err(OracleError::NotAnAutomorphism(_)) if !in_char => checked += 1,
            other => return fail(format!("{m}/F{q}: {other:?}")),
        }
    }
    pass(format!("{checked} models, exit code 0"))
}

fn counting_equivalence() -> Outcome {
    let mut compared = 0;
    for &(m, q) in ORACLE_MODELS {
        let model = model(m);
        let base = FieldSpec::from_order(q).expect("field");
        let mut j = 1;
        while base.q().pow(j) <= 10_000 {
            let field = AnyField::new(base.extension(j).expect("extension")).expect("field");
            let fast = count_places_in(&model, &base, &field);
            let naive = count_places_naive(&model, &base, &field);
            match (fast, naive) {
                (Ok(a), Ok(b)) if a == b => compared += 1,
                (a, b) => {
                    return fail(format!(
                        "{m} over F_{}: fast {a:?}, naive {b:?}",
                        base.q().pow(j)
                    ))
                }
            }
            j += 1;
        }
    }
    pass(format!("{compared} (model, field) pairs agree exactly"))
}

fn wild_identity() -> Outcome {
    for p in [3i64, 5, 7, 11, 13] {
        let mut orders = vec![p * p, p * p];
        orders.extend(std::iter::repeat_n(p, p as usize));
        if let Err(e) = validate_filtration(p, &orders) {
            return fail(format!("p={p}: profile rejected: {e}"));
        }
        let profile = FiltrationProfile::new(p, orders).expect("validated");
        if profile.jumps() != vec![1, p as usize + 1] {
            return fail(format!("p={p}: jumps {:?}", profile.jumps()));
        }
        match rh_genus_wild(p * p, 0, &[OrbitDatum::new(profile, 1)]) {
            Ok(g) if p * p == 2 * g + p => {}
            other => return fail(format!("p={p}: genus {other:?}")),
        }
    }
    pass("p^2 = 2g + p for p in {3,5,7,11,13}")
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<u64>); 8] = [
        ("sasaki bound, N <= 200", sasaki, Some(10)),
        ("formula/signature coherence, N <= 100", coherence, None),
        ("signature case analysis, N <= 60", case_analysis, Some(30)),
        ("classification self-consistency", classification, Some(10)),
        (
            "zeta genus cross-validation",
            zeta_cross_validation,
            Some(60),
        ),
        ("automorphism verification", automorphisms, None),
        (
            "fast count equals naive count, q <= 10^4",
            counting_equivalence,
            None,
        ),
        ("wild filtration identity", wild_identity, None),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let raw = check();
        let elapsed = start.elapsed();
        let outcome = within(raw, elapsed, limit.map(Duration::from_secs));
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {name}: {} ({elapsed:.2?})",
            i + 1,
            outcome.detail
        );
        failures += usize::from(!outcome.ok);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
