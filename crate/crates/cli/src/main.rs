//! `moonshine`: exact q-expansions, modular-group reduction, small group
//! structure and moonshine identity checks from the command line.
//!
//! Exit codes: 0 success, 1 a verification returned false, 2 usage error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;

use moonshine_core::groups::{
    composition_census, composition_series, conjugacy_classes, group_by_name, jordan_holder_factors,
    normal_subgroups, PermGroup, DEFAULT_ELEMENT_CAP,
};
use moonshine_core::modular::{discriminant, eisenstein_normalized, eta_product_delta, j_expansion, j_normalized};
use moonshine_core::moonshine::{
    knz_verify_with, mckay_identity_check, monster_order, ConstantTerm, IdentityStatus, MonsterFacts,
    Provenance,
};
use moonshine_core::qseries::{format_rational, format_rational_full, Coefficient, LaurentSeries};
use moonshine_core::sl2z::{
    canonical_representative, in_fundamental_domain, lattice_same, moebius, parse_qcomplex,
    reduce_to_fundamental, tau_equivalent, tau_from_basis, word_decompose, GeneratorWord, LatticeBasis,
    Syllable,
};
use moonshine_core::{CoeffTable, IrrepDims, Mat2Z, PSLElement, UpperHalfPoint};

use output::{s, strings, Output};

#[derive(Parser, Debug)]
#[command(name = "moonshine", version, about = "Exact computations around Klein's J and the monster")]
struct Cli {
    /// Emit one JSON object per line (integers as strings).
    #[arg(long, global = true)]
    json: bool,

    /// Truncation order; meaning depends on the subcommand.
    #[arg(long, global = true, allow_negative_numbers = true)]
    order: Option<i64>,

    /// Maximum number of elements a permutation group may have.
    #[arg(long, global = true, env = "MOONSHINE_ELEMENT_CAP", default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,

    /// File of monster irreducible dimensions (`index value` lines starting
    /// at 1) extending the shipped r_1..r_5, e.g. with r_6 and r_7.
    #[arg(long, global = true, env = "MOONSHINE_IRREP_DIMS")]
    irrep_dims: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients c(-1)..c(order-1) of J (default order 10).
    J {
        /// Drop the constant term (J - 744).
        #[arg(long)]
        normalized: bool,
    },
    /// Normalized Eisenstein series E_k through q^(order-1) (default order 10).
    Eisenstein {
        #[arg(long)]
        weight: u32,
    },
    /// Discriminant coefficients through q^(order-1) (default order 10).
    Delta {
        /// Also compare with q * prod (1 - q^n)^24.
        #[arg(long)]
        verify: bool,
    },
    /// Reduce a point `x,y` (meaning x + iy) into the fundamental domain.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        tau: UpperHalfPoint,
        /// Normalize boundary points (Re = -1/2 edge, left half of the arc).
        #[arg(long)]
        canonical: bool,
    },
    /// Decide whether two points lie in one modular-group orbit.
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        tau1: UpperHalfPoint,
        #[arg(long, allow_hyphen_values = true)]
        tau2: UpperHalfPoint,
    },
    /// Decide whether two bases (complex numbers `re,im`) span one lattice.
    Lattice {
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
    },
    /// Write a matrix `a,b,c,d` as a word in S and T, or evaluate a word.
    Word {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "letters", required_unless_present = "letters")]
        matrix: Option<String>,
        /// Space-separated letters: `S`, `T`, `T^k`.
        #[arg(long, allow_hyphen_values = true)]
        letters: Option<String>,
    },
    /// Structure of a small group: C<n>, D<n>, A<n> or S<n>.
    Group {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = GroupAction::Factors)]
        action: GroupAction,
    },
    /// Thompson's decompositions of the J coefficients (default order 6).
    Mckay,
    /// Truncated product formula for J(p) - J(q) (default order 2).
    Knz {
        /// Use c(0) = 744 instead of 0 (the identity then fails).
        #[arg(long)]
        use_unnormalized_c0: bool,
    },
    /// Published facts about the monster.
    Facts,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupAction {
    Classes,
    Normal,
    Series,
    Factors,
    Census,
}

/// Outcome of a successful run: did every check hold?
enum Verdict {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let mut out = Output::new(cli.json);
    let order = |default: i64| cli.order.unwrap_or(default);
    match &cli.command {
        Command::J { normalized } => {
            let n = order(10);
            let j = if *normalized { j_normalized(n)? } else { j_expansion(n)? };
            for (k, c) in dense(&j.series, -1)? {
                out.record(format!("{k} {c}"), vec![("n", s(k)), ("c", s(c))])?;
            }
            Ok(Verdict::Ok)
        }
        Command::Eisenstein { weight } => {
            let e = eisenstein_normalized(*weight, order(10))?;
            for (k, c) in dense(&e.series, 0)? {
                let c = format_rational(&c);
                out.record(format!("{k} {c}"), vec![("n", s(k)), ("c", s(c))])?;
            }
            Ok(Verdict::Ok)
        }
        Command::Delta { verify } => {
            let n = order(10);
            let d = discriminant(n)?;
            for (k, c) in dense(&d.series, 1)? {
                out.record(format!("{k} {c}"), vec![("n", s(k)), ("c", s(c))])?;
            }
            if !*verify {
                return Ok(Verdict::Ok);
            }
            let equal = eta_product_delta(n)? == d.series;
            out.record(format!("equal: {equal}"), vec![("equal", equal.into())])?;
            Ok(if equal { Verdict::Ok } else { Verdict::CheckFailed })
        }
        Command::Reduce { tau, canonical } => {
            let r = if *canonical {
                canonical_representative(tau)
            } else {
                reduce_to_fundamental(tau)
            };
            let sound = in_fundamental_domain(&r.point)
                && moebius(&r.element, tau) == r.point
                && r.word.evaluate() == r.element;
            out.record(
                format!("{}\nmatrix {}\nword {}", r.point, r.element, r.word),
                vec![
                    ("x", s(format_rational_full(r.point.x()))),
                    ("y", s(format_rational_full(r.point.y()))),
                    ("matrix", matrix_json(&r.element)),
                    ("word", s(&r.word)),
                    ("verified", sound.into()),
                ],
            )?;
            Ok(if sound { Verdict::Ok } else { Verdict::CheckFailed })
        }
        Command::Equiv { tau1, tau2 } => {
            match tau_equivalent(tau1, tau2) {
                Some(m) => {
                    if moebius(&m, tau1) != *tau2 {
                        bail!("internal: returned matrix does not map tau1 to tau2");
                    }
                    out.record(
                        format!("equivalent: true\nmatrix {m}"),
                        vec![("equivalent", true.into()), ("matrix", matrix_json(&m))],
                    )?;
                }
                None => out.record("equivalent: false", vec![("equivalent", false.into())])?,
            }
            Ok(Verdict::Ok)
        }
        Command::Lattice { w1, w2, v1, v2 } => {
            let b1 = LatticeBasis::new(parse_qcomplex(w1)?, parse_qcomplex(w2)?)?;
            let b2 = LatticeBasis::new(parse_qcomplex(v1)?, parse_qcomplex(v2)?)?;
            let (t1, t2) = (tau_from_basis(&b1)?, tau_from_basis(&b2)?);
            let change = lattice_same(&b1, &b2);
            let mut text = format!("tau1 {t1}\ntau2 {t2}\nsame: {}", change.is_some());
            let mut fields = vec![
                ("tau1", point_json(&t1)),
                ("tau2", point_json(&t2)),
                ("same", change.is_some().into()),
            ];
            if let Some(m) = &change {
                text.push_str(&format!("\nchange {m}"));
                fields.push(("change", strings([&m.a, &m.b, &m.c, &m.d])));
            }
            out.record(text, fields)?;
            Ok(Verdict::Ok)
        }
        Command::Word { matrix, letters } => {
            let (element, word) = match (matrix, letters) {
                (Some(m), _) => {
                    let e = PSLElement::new(parse_matrix(m)?);
                    let w = word_decompose(&e);
                    (e, w)
                }
                (None, Some(l)) => {
                    let w = parse_word(l)?;
                    (w.evaluate(), w)
                }
                (None, None) => bail!("give --matrix or --letters"),
            };
            let canonical = word_decompose(&element);
            let sound = canonical.evaluate() == element && word.evaluate() == element;
            out.record(
                format!("word {canonical}\nmatrix {element}"),
                vec![
                    ("word", s(&canonical)),
                    ("matrix", matrix_json(&element)),
                    ("verified", sound.into()),
                ],
            )?;
            Ok(if sound { Verdict::Ok } else { Verdict::CheckFailed })
        }
        Command::Group { name, action } => {
            let g = group_by_name(name, cli.element_cap)?;
            group_command(&mut out, &g, *action)
        }
        Command::Mckay => mckay_command(&mut out, order(6), cli.irrep_dims.as_ref()),
        Command::Knz { use_unnormalized_c0 } => {
            let n = order(2);
            let n: u32 = n.try_into().map_err(|_| anyhow!("knz order must be >= 0, got {n}"))?;
            let constant = if *use_unnormalized_c0 {
                ConstantTerm::Unnormalized
            } else {
                ConstantTerm::Normalized
            };
            let o = knz_verify_with(n, constant)?;
            out.record(
                format!("equal: {}", o.equal),
                vec![("order", s(n)), ("equal", o.equal.into()), ("mismatches", s(o.mismatches.len()))],
            )?;
            for ((p, q), l, r) in &o.mismatches {
                out.record(
                    format!("mismatch p^{p} q^{q} lhs {l} rhs {r}"),
                    vec![("p", s(p)), ("q", s(q)), ("lhs", s(l)), ("rhs", s(r))],
                )?;
            }
            Ok(if o.equal { Verdict::Ok } else { Verdict::CheckFailed })
        }
        Command::Facts => {
            let m = monster_order();
            let digits = m.to_string().len();
            let factorization: Vec<String> = MonsterFacts::ORDER_FACTORIZATION
                .iter()
                .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect();
            out.record(
                format!(
                    "order {m}\ndigits {digits}\nfactorization {}\nconjugacy-classes {}\nmckay-thompson-series {}\nspan-dimension {}",
                    factorization.join(" "),
                    MonsterFacts::CONJUGACY_CLASSES,
                    MonsterFacts::DISTINCT_MCKAY_THOMPSON_SERIES,
                    MonsterFacts::MCKAY_THOMPSON_SPAN_DIMENSION,
                ),
                vec![
                    ("order", s(&m)),
                    ("digits", s(digits)),
                    ("factorization", strings(&factorization)),
                    ("conjugacy_classes", s(MonsterFacts::CONJUGACY_CLASSES)),
                    ("mckay_thompson_series", s(MonsterFacts::DISTINCT_MCKAY_THOMPSON_SERIES)),
                    ("span_dimension", s(MonsterFacts::MCKAY_THOMPSON_SPAN_DIMENSION)),
                ],
            )?;
            Ok(if digits == 54 { Verdict::Ok } else { Verdict::CheckFailed })
        }
    }
}

fn group_command(out: &mut Output, g: &PermGroup, action: GroupAction) -> anyhow::Result<Verdict> {
    match action {
        GroupAction::Classes => {
            for c in conjugacy_classes(g) {
                out.record(
                    format!("{} {}", c.size(), c.representative),
                    vec![("size", s(c.size())), ("representative", s(&c.representative))],
                )?;
            }
        }
        GroupAction::Normal => {
            for n in normal_subgroups(g) {
                out.record(n.len().to_string(), vec![("order", s(n.len()))])?;
            }
        }
        GroupAction::Series => {
            let chain = composition_series(g)?;
            let orders = chain.orders();
            let factors = chain.factor_orders();
            out.record(
                format!("chain {}\nfactors {}", join(&orders), join(&factors)),
                vec![("chain", strings(&orders)), ("factors", strings(&factors))],
            )?;
        }
        GroupAction::Factors => {
            let factors = jordan_holder_factors(g)?;
            let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
            let abelian: Vec<bool> = factors.iter().map(|f| f.is_abelian).collect();
            out.record(
                join(&orders),
                vec![("factors", strings(&orders)), ("abelian", abelian.into())],
            )?;
        }
        GroupAction::Census => {
            let census = composition_census(g);
            let invariant = census.factor_multisets.len() == 1;
            out.record(
                format!("series {}\ninvariant: {invariant}", census.series_count),
                vec![("series", s(&census.series_count)), ("invariant", invariant.into())],
            )?;
            for m in &census.factor_multisets {
                let orders: Vec<u64> = m.iter().map(|f| f.order).collect();
                out.record(format!("factors {}", join(&orders)), vec![("factors", strings(&orders))])?;
            }
            if !invariant {
                return Ok(Verdict::CheckFailed);
            }
        }
    }
    Ok(Verdict::Ok)
}

fn mckay_command(out: &mut Output, order: i64, dims_path: Option<&PathBuf>) -> anyhow::Result<Verdict> {
    let j = j_expansion(order)?;
    let table = CoeffTable::from_series(&j.series, "J")?;
    let mut dims = IrrepDims::embedded();
    if let Some(path) = dims_path {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let more = IrrepDims::parse(&text, Provenance::External(path.display().to_string()))?;
        dims = dims.extended_with(&more)?;
    }
    let reports = mckay_identity_check(&table, &dims)?;
    let mut all_pass = true;
    for r in &reports {
        all_pass &= !matches!(r.status, IdentityStatus::Fail);
        let lhs = r.lhs.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
        let rhs = r.rhs.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
        let status = match &r.status {
            IdentityStatus::Pass => "pass",
            IdentityStatus::Fail => "fail",
            IdentityStatus::NotConfigured(_) => "not-configured",
        };
        let mut fields = vec![
            ("label", s(r.label)),
            ("exponent", s(r.exponent)),
            ("lhs", r.lhs.as_ref().map_or(serde_json::Value::Null, s)),
            ("rhs", r.rhs.as_ref().map_or(serde_json::Value::Null, s)),
            ("multiplicities", strings(&r.decomposition.multiplicities)),
            ("status", s(status)),
        ];
        let mut text = format!(
            "c({}) {lhs} = {} = {rhs} {}",
            r.label,
            describe_mults(&r.decomposition.multiplicities),
            r.status
        );
        if let IdentityStatus::NotConfigured(why) = &r.status {
            fields.push(("reason", s(why)));
            text = format!("c({}) {lhs} = {} {}", r.label, describe_mults(&r.decomposition.multiplicities), r.status);
        }
        out.record(text, fields)?;
    }
    out.record(format!("all-configured-pass: {all_pass}"), vec![("all_configured_pass", all_pass.into())])?;
    Ok(if all_pass { Verdict::Ok } else { Verdict::CheckFailed })
}

fn describe_mults(m: &[u64]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(i, k)| format!("{k}*r{}", i + 1))
        .collect();
    parts.join(" + ")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Every coefficient from `q^from` up to the truncation, zeros included.
fn dense<C: Coefficient>(series: &LaurentSeries<C>, from: i64) -> anyhow::Result<Vec<(i64, C)>> {
    (from..series.trunc())
        .map(|k| Ok((k, series.coeff(k)?)))
        .collect()
}

fn point_json(p: &UpperHalfPoint) -> serde_json::Value {
    strings([format_rational_full(p.x()), format_rational_full(p.y())])
}

fn matrix_json(m: &PSLElement) -> serde_json::Value {
    strings(m.matrix().entries())
}

fn parse_matrix(text: &str) -> anyhow::Result<Mat2Z> {
    let parts: Vec<BigInt> = text
        .split(',')
        .map(|p| p.trim().parse::<BigInt>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!("cannot parse matrix {text:?}; expected a,b,c,d"))?;
    let [a, b, c, d]: [BigInt; 4] = parts
        .try_into()
        .map_err(|_| anyhow!("matrix {text:?} needs exactly four entries"))?;
    Ok(Mat2Z::new(a, b, c, d)?)
}

fn parse_word(text: &str) -> anyhow::Result<GeneratorWord> {
    let mut syllables = Vec::new();
    for tok in text.split_whitespace() {
        match tok {
            "S" => syllables.push(Syllable::S),
            "T" => syllables.push(Syllable::T(BigInt::one())),
            _ => {
                let k = tok
                    .strip_prefix("T^")
                    .and_then(|k| k.parse::<BigInt>().ok())
                    .ok_or_else(|| anyhow!("bad letter {tok:?}; expected S, T or T^k"))?;
                syllables.push(Syllable::T(k));
            }
        }
    }
    Ok(GeneratorWord::from_syllables(syllables))
}
