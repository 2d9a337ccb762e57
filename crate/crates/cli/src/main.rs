mod output;

use std::collections::BTreeSet;
use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use ncurve::fforacle::DEFAULT_FIELD_CAP;
use ncurve::{
    canonical_pair, classify_query, count_places, count_series, enumerate_signatures,
    primitive_pairs, verify_automorphism, zeta_genus, ClassifyQuery, CurveModel, FieldSpec,
    OracleError,
};

use output::{emit, num, nums, Format, Record};

#[derive(Parser)]
#[command(
    name = "ncurve",
    version,
    about = "Curves with a cyclic automorphism group of order N >= 2g + 1"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every family of genus-g curves with a large cyclic automorphism group.
    Classify {
        /// Characteristic: 0 or an odd prime.
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
        /// Only entries with this group order.
        #[arg(long)]
        n: Option<i64>,
        /// One Kummer entry per primitive pair rather than per equivalence class.
        #[arg(long)]
        raw_pairs: bool,
    },
    /// List primitive pairs (r, s) for a group order.
    Pairs {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        genus: Option<i64>,
        /// Keep only the canonical representative of each class.
        #[arg(long)]
        canonical: bool,
    },
    /// Enumerate tame ramification types of a cyclic cover.
    Signatures {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Count points and check the automorphism of a concrete model over F_q.
    Verify {
        /// kummer:N,r,s | hyper:g,lambda | aspower:p,m,a,b | asrational:p,a,b,c | homma:p
        #[arg(long)]
        model: String,
        #[arg(long)]
        q: u64,
        /// Count over F_q, ..., F_{q^k} and infer the genus from the zeta function.
        #[arg(long)]
        zeta_depth: Option<u32>,
        /// Largest field order the zeta series may visit.
        #[arg(long, default_value_t = DEFAULT_FIELD_CAP)]
        max_field_size: u64,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

struct Outcome {
    records: Vec<Record>,
    mismatch: Option<String>,
}

impl From<Vec<Record>> for Outcome {
    fn from(records: Vec<Record>) -> Self {
        Outcome {
            records,
            mismatch: None,
        }
    }
}

fn echo(cli: &Cli) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), cli.format.name().into());
    let opt = |v: Option<i64>| v.map_or(Value::Null, num);
    match &cli.command {
        Command::Classify {
            p,
            genus,
            n,
            raw_pairs,
        } => {
            m.insert("name".into(), "classify".into());
            m.insert("p".into(), num(p));
            m.insert("genus".into(), num(genus));
            m.insert("n".into(), opt(*n));
            m.insert("raw_pairs".into(), (*raw_pairs).into());
        }
        Command::Pairs {
            n,
            genus,
            canonical,
        } => {
            m.insert("name".into(), "pairs".into());
            m.insert("n".into(), num(n));
            m.insert("genus".into(), opt(*genus));
            m.insert("canonical".into(), (*canonical).into());
        }
        Command::Signatures { n, genus } => {
            m.insert("name".into(), "signatures".into());
            m.insert("n".into(), num(n));
            m.insert("genus".into(), num(genus));
        }
        Command::Verify {
            model,
            q,
            zeta_depth,
            max_field_size,
        } => {
            m.insert("name".into(), "verify".into());
            m.insert("model".into(), model.as_str().into());
            m.insert("q".into(), num(q));
            m.insert("zeta_depth".into(), zeta_depth.map_or(Value::Null, num));
            m.insert("max_field_size".into(), num(max_field_size));
        }
    }
    Value::Object(m)
}

fn cmd_classify(p: u64, genus: i64, n: Option<i64>, raw_pairs: bool) -> Result<Outcome, Failure> {
    let query = ClassifyQuery::new(p, genus)
        .map_err(usage)?
        .with_order(n)
        .with_raw_pairs(raw_pairs);
    let records = classify_query(&query)
        .into_iter()
        .map(|e| {
            Record::new()
                .with("n", num(e.n))
                .with("branch", e.branch.label())
                .with("model", e.model_template.to_string())
                .with("genus", num(e.genus))
                .with("ramification", e.ramification.to_string())
                .with("wild", e.wild)
                .with(
                    "pairs",
                    Value::Array(e.pairs.iter().map(|pr| pr.to_string().into()).collect()),
                )
        })
        .collect::<Vec<_>>();
    Ok(records.into())
}

fn cmd_pairs(n: i64, genus: Option<i64>, canonical: bool) -> Result<Outcome, Failure> {
    if n < 3 {
        return Err(usage(format!("N = {n}: primitive pairs need N >= 3")));
    }
    let mut seen = BTreeSet::new();
    let mut records = Vec::new();
    for pr in primitive_pairs(n).filter(|pr| genus.is_none_or(|g| pr.genus() == g)) {
        let pr = if canonical {
            canonical_pair(n, pr.r(), pr.s()).map_err(usage)?
        } else {
            pr
        };
        if canonical && !seen.insert(pr) {
            continue;
        }
        records.push(
            Record::new()
                .with("n", num(n))
                .with("r", num(pr.r()))
                .with("s", num(pr.s()))
                .with("genus", num(pr.genus()))
                .with("signature", pr.signature().to_string()),
        );
    }
    Ok(records.into())
}

fn cmd_signatures(n: i64, genus: i64) -> Result<Outcome, Failure> {
    if n < 2 || genus < 2 {
        return Err(usage(format!(
            "need N >= 2 and genus >= 2, got N = {n}, genus = {genus}"
        )));
    }
    let records = enumerate_signatures(n, genus)
        .into_iter()
        .map(|sig| {
            Record::new()
                .with("n", num(n))
                .with("genus", num(genus))
                .with("signature", sig.to_string())
                .with("g0", num(sig.g0()))
                .with("indices", nums(sig.indices().iter()))
        })
        .collect::<Vec<_>>();
    Ok(records.into())
}

/// Field or parameter problems are usage errors; everything else is a failed check.
fn classify_oracle_error(e: OracleError) -> Failure {
    match e {
        OracleError::InvalidField(_)
        | OracleError::FieldTooLarge { .. }
        | OracleError::PreconditionViolated(_)
        | OracleError::InsufficientCounts { .. }
        | OracleError::Family(_) => Failure::Usage(e.to_string()),
        _ => Failure::Mismatch(e.to_string()),
    }
}

fn cmd_verify(model: &str, q: u64, zeta_depth: Option<u32>, cap: u64) -> Result<Outcome, Failure> {
    let model: CurveModel = model.parse().map_err(usage)?;
    let spec = FieldSpec::from_order(q).map_err(usage)?;
    if q > cap {
        return Err(usage(OracleError::FieldTooLarge { q, cap }));
    }
    let genus = model.genus().map_err(usage)?;
    let mut mismatches = Vec::new();

    let counts = match zeta_depth {
        None => vec![count_places(&model, &spec).map_err(classify_oracle_error)?],
        Some(k) => {
            if (k as i64) < 2 * genus {
                return Err(usage(format!("zeta depth {k} is below 2g = {}", 2 * genus)));
            }
            count_series(&model, &spec, k, cap)
                .map_err(classify_oracle_error)?
                .counts()
                .to_vec()
        }
    };

    let inferred = match zeta_depth {
        None => Value::Null,
        Some(k) => {
            let series = ncurve::PlaceCountSeries::new(model.clone(), spec.clone(), counts.clone())
                .map_err(classify_oracle_error)?;
            match zeta_genus(&series, k / 2) {
                Ok(g) => {
                    if g as i64 != genus {
                        mismatches.push(format!(
                            "zeta function gives genus {g}, formula gives {genus}"
                        ));
                    }
                    num(g)
                }
                Err(e) => match classify_oracle_error(e) {
                    Failure::Usage(m) => return Err(Failure::Usage(m)),
                    Failure::Mismatch(m) => {
                        mismatches.push(m);
                        Value::Null
                    }
                },
            }
        }
    };

    let generator = model.generator();
    let automorphism = match verify_automorphism(&model, &spec, &generator) {
        Ok(r) => json!({
            "action": generator.action.to_string(),
            "claimed_order": num(generator.order),
            "order": num(r.order),
            "permutation_order": num(r.permutation_order),
            "affine_points": num(r.points),
            "fixed_points": Value::Array(
                r.fixed_points.iter().map(|(x, y)| nums([x.0, y.0])).collect()
            ),
            "orbits": Value::Object(r.orbit_sizes.iter().map(|(k, v)| (k.to_string(), num(v))).collect()),
        }),
        Err(e) => match classify_oracle_error(e) {
            Failure::Usage(m) => return Err(Failure::Usage(m)),
            Failure::Mismatch(m) => {
                let v = json!({ "action": generator.action.to_string(), "claimed_order": num(generator.order), "error": m });
                mismatches.push(m);
                v
            }
        },
    };

    let status = if mismatches.is_empty() {
        "ok"
    } else {
        "mismatch"
    };
    let record = Record::new()
        .with("model", model.to_string())
        .with("q", num(q))
        .with("genus", num(genus))
        .with("counts", nums(counts))
        .with("inferred_genus", inferred)
        .with("automorphism", automorphism)
        .with("status", status);
    Ok(Outcome {
        records: vec![record],
        mismatch: (!mismatches.is_empty()).then(|| mismatches.join("; ")),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify {
            p,
            genus,
            n,
            raw_pairs,
        } => cmd_classify(*p, *genus, *n, *raw_pairs),
        Command::Pairs {
            n,
            genus,
            canonical,
        } => cmd_pairs(*n, *genus, *canonical),
        Command::Signatures { n, genus } => cmd_signatures(*n, *genus),
        Command::Verify {
            model,
            q,
            zeta_depth,
            max_field_size,
        } => cmd_verify(model, *q, *zeta_depth, *max_field_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(
                &mut io::stdout().lock(),
                cli.format,
                &echo(&cli),
                &outcome.records,
            ) {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            match outcome.mismatch {
                None => ExitCode::SUCCESS,
                Some(m) => {
                    eprintln!("{m}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
