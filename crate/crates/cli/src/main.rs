use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qzeta::eval::{classical_zeta, frakz, mhs, q_zeta, SeriesConfig, SeriesValue};
use qzeta::expansion::expand;
use qzeta::qarith::{parse_rational, parse_tolerance};
use qzeta::rules::{classical_expand, compose, ClassicalTerm, Composition, Family};
use qzeta::verify::{self, qseries, VerificationReport};
use qzeta::{Error, MollifierTriple, QContext, Rational, SignedIndex, SignedString};
use serde_json::json;

mod latex;

#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about = "Mollifier expansions and verification of q-multiple zeta star identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Mhs,
    MhsStar,
    Qzeta,
    QzetaStar,
    Frakz,
    Zeta,
    ZetaStar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the composed pattern of a composition and its full expansion.
    Expand {
        /// Composition, e.g. `2^2,1,3,1`.
        s: String,
        /// Print the q -> 1 expansion into alternating Euler sums instead.
        #[arg(long)]
        classical: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Evaluate a single sum.
    Eval {
        #[arg(value_enum)]
        kind: Kind,
        /// Signed string (`-k` for a barred entry) or, for `frakz`, a triple `[s; t; r]`.
        string: Option<String>,
        #[arg(long = "s")]
        s: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value = "1/2")]
        q: String,
        /// Tail bound target for infinite q-series.
        #[arg(long)]
        eps: Option<String>,
        /// Fixed cutoff for infinite series.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Verify a composition, a family, a randomized suite or a named display.
    ///
    /// Targets: a composition; `random`; `structured`; a family name
    /// (two-one, 2c2, 2c21, 212c21, 2c212, 212c212, 2a1l, c1l); or one of the
    /// displays two-term, four-term, trailing-twos, symmetric, eight-term.
    Verify {
        target: String,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        /// Rational q values; repeatable.
        #[arg(long)]
        q: Vec<String>,
        /// Check the infinite q-series identity instead of finite sums.
        #[arg(long, conflicts_with = "classical")]
        qzeta: bool,
        /// Check the classical Euler-sum identity.
        #[arg(long)]
        classical: bool,
        #[arg(long, default_value = "1e-25")]
        eps: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 10_000_000)]
        k: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of compositions for `random`.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Weight limit for `structured` and family targets.
        #[arg(long, default_value_t = 12)]
        max_weight: u32,
        /// Display parameters such as `a=1`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, u32)>,
    },
    /// Run the kernel lemma suite.
    Lemmas {
        #[arg(long, default_value_t = 40)]
        n_max: u64,
        #[arg(long)]
        q: Vec<String>,
    },
}

fn parse_param(s: &str) -> Result<(String, u32), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v = v.trim().parse().map_err(|_| format!("invalid value in `{s}`"))?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = verify::with_pool(|| run(cli.command));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Expand { s, classical, format } => expand_cmd(&s, classical, format),
        Command::Eval {
            kind,
            string,
            s,
            n,
            q,
            eps,
            k,
            format,
        } => {
            let src = s.or(string).ok_or_else(|| Failure::Input("missing string; pass it positionally or with --s".into()))?;
            eval_cmd(kind, &src, n, &q, eps.as_deref(), k, format)
        }
        Command::Verify {
            target,
            n_max,
            q,
            qzeta,
            classical,
            eps,
            tol,
            k,
            seed,
            count,
            max_weight,
            params,
        } => {
            let q_list = q_list(&q)?;
            let reports = if classical {
                verify_classical(&target, k, tol)?
            } else if qzeta || is_display(&target) {
                verify_numeric(&target, &q_list, &parse_tolerance(&eps)?, &params)?
            } else {
                verify_exact(&target, n_max, &q_list, seed, count, max_weight)?
            };
            emit(&reports)
        }
        Command::Lemmas { n_max, q } => {
            let q_list = if q.is_empty() {
                ["1/2", "1/3", "9/10"].iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
            } else {
                q_list(&q)?
            };
            emit(&verify::lemma_suite(n_max, &q_list)?)
        }
    }
}

fn q_list(q: &[String]) -> Result<Vec<Rational>, Failure> {
    let list: Vec<Rational> = if q.is_empty() {
        vec![Rational::from((1, 2))]
    } else {
        q.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
    };
    for x in &list {
        QContext::new(x.clone())?;
    }
    Ok(list)
}

fn emit(reports: &[VerificationReport]) -> Outcome {
    for r in reports {
        println!("{}", serde_json::to_string(r).expect("reports serialize"));
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn composition(s: &str) -> Result<Composition, Failure> {
    Ok(s.parse()?)
}

fn classical_plain(t: &ClassicalTerm) -> String {
    let sign = if t.sign < 0 { '-' } else { '+' };
    format!("{sign}{}*z({})", t.coefficient, t.index)
}

fn expand_cmd(src: &str, classical: bool, format: Format) -> Outcome {
    let s = composition(src)?;
    if classical {
        let terms = classical_expand(&s)?;
        match format {
            Format::Plain => terms.iter().for_each(|t| println!("{}", classical_plain(t))),
            Format::Json => println!("{}", json!({ "composition": s.to_string(), "terms": terms })),
            Format::Latex => println!("{}", latex::classical_identity(&s, &terms)),
        }
        return Ok(());
    }
    let (delta, pattern) = compose(&s)?;
    let terms = expand(&pattern);
    match format {
        Format::Plain => {
            println!("delta {}", if delta < 0 { "-1" } else { "+1" });
            println!("pattern {pattern}");
            terms.iter().for_each(|t| println!("{t}"));
        }
        Format::Json => println!(
            "{}",
            json!({ "composition": s.to_string(), "delta": delta, "pattern": pattern, "expansion": terms })
        ),
        Format::Latex => println!("{}", latex::q_identity(&s, delta, &terms)),
    }
    Ok(())
}

fn series_config(eps: Option<&str>, k: Option<u64>) -> Result<SeriesConfig, Failure> {
    Ok(match (eps, k) {
        (Some(_), Some(_)) => return Err(Failure::Input("pass either --eps or --k, not both".into())),
        (Some(e), None) => SeriesConfig::epsilon(parse_tolerance(e)?)?,
        (None, Some(k)) => SeriesConfig::fixed(k)?,
        (None, None) => SeriesConfig::epsilon(parse_tolerance("1e-25")?)?,
    })
}

fn print_series(v: &SeriesValue, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "value": v.value.to_string(),
                "approx": v.value.to_f64(),
                "tail_bound": v.tail_bound.to_string(),
                "cutoff": v.cutoff,
            })
        ),
        _ => println!("{:e} (tail bound {:e}, K = {})", v.value.to_f64(), v.tail_bound.to_f64(), v.cutoff),
    }
}

fn eval_cmd(kind: Kind, src: &str, n: Option<u64>, q: &str, eps: Option<&str>, k: Option<u64>, format: Format) -> Outcome {
    let ctx = || -> Result<QContext, Failure> { Ok(QContext::new(parse_rational(q)?)?) };
    let signed = || signed_string(src);
    match kind {
        Kind::Mhs | Kind::MhsStar => {
            let n = n.ok_or_else(|| Failure::Input("--n is required".into()))?;
            let v = mhs(&signed()?, n, &ctx()?, kind == Kind::MhsStar);
            match format {
                Format::Json => println!("{}", json!({ "value": v.to_string() })),
                _ => println!("{v}"),
            }
        }
        Kind::Qzeta | Kind::QzetaStar => {
            let v = q_zeta(&signed()?, &ctx()?, &series_config(eps, k)?, kind == Kind::QzetaStar)?;
            print_series(&v, format);
        }
        Kind::Frakz => {
            let t: MollifierTriple = src.parse()?;
            print_series(&frakz(&t, &ctx()?, &series_config(eps, k)?)?, format);
        }
        Kind::Zeta | Kind::ZetaStar => {
            let cfg = SeriesConfig::fixed(k.unwrap_or(1_000_000))?;
            let v = classical_zeta(&signed()?, &cfg, kind == Kind::ZetaStar)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({ "value": v.value, "tail_estimate": v.tail_estimate, "tail_kind": "heuristic", "cutoff": v.cutoff })
                ),
                _ => println!(
                    "{:.15e} (heuristic tail estimate {:e}, K = {})",
                    v.value,
                    v.tail_estimate.unwrap_or(0.0),
                    v.cutoff
                ),
            }
        }
    }
    Ok(())
}

/// A signed string, also accepting the `k^e` repetition shorthand.
fn signed_string(src: &str) -> Result<SignedString, Failure> {
    if !src.contains('^') {
        return Ok(src.parse()?);
    }
    let mut out = Vec::new();
    for item in src.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (base, exp) = match item.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| Failure::Input(format!("invalid exponent in `{item}`")))?),
            None => (item, 1),
        };
        let x: SignedIndex = base.parse()?;
        out.extend(std::iter::repeat(x).take(exp));
    }
    Ok(SignedString::new(out))
}

fn verify_exact(
    target: &str,
    n_max: u64,
    q_list: &[Rational],
    seed: Option<u64>,
    count: usize,
    max_weight: u32,
) -> Result<Vec<VerificationReport>, Failure> {
    Ok(match target {
        "random" => verify::random_suite(seed, count, n_max, q_list)?,
        "structured" => verify::structured_suite(max_weight, n_max, q_list)?,
        name if is_family(name) => {
            let fams: Vec<Family> = Family::enumerate(max_weight).into_iter().filter(|f| f.name() == name).collect();
            fams.iter()
                .map(|f| verify::verify_family(f, n_max, q_list))
                .collect::<Result<_, _>>()?
        }
        s => vec![verify::verify_mhs(&composition(s)?, n_max, q_list)?],
    })
}

const FAMILIES: [&str; 8] = ["two-one", "2c2", "2c21", "212c21", "2c212", "212c212", "2a1l", "c1l"];
const DISPLAYS: [&str; 5] = ["two-term", "four-term", "trailing-twos", "symmetric", "eight-term"];

fn is_family(s: &str) -> bool {
    FAMILIES.contains(&s)
}

fn is_display(s: &str) -> bool {
    DISPLAYS.contains(&s)
}

fn display_identity(name: &str, params: &[(String, u32)], ctx: &QContext) -> Result<qseries::QIdentity, Failure> {
    let map: BTreeMap<&str, u32> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let get = |k: &str, default: u32| map.get(k).copied().unwrap_or(default);
    let need_positive = |k: &str, v: u32| {
        if v == 0 {
            Err(Failure::Input(format!("{name}: parameter {k} must be at least 1")))
        } else {
            Ok(v)
        }
    };
    Ok(match name {
        "two-term" => qseries::two_term_identity(get("a", 0), get("b", 0)),
        "four-term" => qseries::four_term_identity(need_positive("a0", get("a0", 1))?, get("b", 0), get("a1", 0)),
        "trailing-twos" => qseries::trailing_twos_identity(get("b", 0), get("a1", 0), need_positive("a2", get("a2", 1))?),
        "symmetric" => qseries::symmetric_identity(get("a", 0), get("b", 0), ctx),
        "eight-term" => qseries::eight_term_identity(need_positive("a", get("a", 1))?, get("b", 0), get("c", 0), get("d", 0)),
        _ => unreachable!("checked by is_display"),
    })
}

fn verify_numeric(
    target: &str,
    q_list: &[Rational],
    eps: &Rational,
    params: &[(String, u32)],
) -> Result<Vec<VerificationReport>, Failure> {
    let mut out = Vec::new();
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        let r = if is_display(target) {
            verify::verify_q_identity(&display_identity(target, params, &ctx)?, &ctx, eps)?
        } else {
            verify::verify_qmzsv(&composition(target)?, &ctx, eps)?
        };
        out.push(r);
    }
    Ok(out)
}

fn verify_classical(target: &str, k: u64, tol: f64) -> Result<Vec<VerificationReport>, Failure> {
    let r = verify::verify_classical(&composition(target)?, k, tol)?;
    eprintln!("note: classical tail estimates are heuristic, not rigorous bounds");
    Ok(vec![r])
}
