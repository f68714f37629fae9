mod output;

use clap::{Parser, Subcommand, ValueEnum};
use niemeier_cusp::acceptance::{self, Context};
use niemeier_cusp::codes;
use niemeier_cusp::cuspform::{self, CuspCoefficients, CuspForm};
use niemeier_cusp::exactq::{factor_string, factor_string_rational, to_f64, BigInt, BigRational};
use niemeier_cusp::golay;
use niemeier_cusp::hecke::{self, HeckeError};
use niemeier_cusp::niemeier::{build_matrix, NiemeierError, Registry};
use niemeier_cusp::qseries;
use niemeier_cusp::rootsys::RootSystemType;
use niemeier_cusp::subcount::Counter;
use num_traits::One;
use output::{Doc, Format};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "niemeier",
    version,
    about = "Exact computations for the Siegel cusp form of degree 12 built from Niemeier theta series"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Persistent cache of sublattice counts in exceptional root systems.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Niemeier registry file replacing the bundled one.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The 24×24 matrix of sublattice counts.
    Matrix,
    /// The 24 coefficients of the cusp form in the theta basis.
    Cuspform,
    /// The Fourier coefficient a(M) of a root lattice of rank at most 12.
    Coeff {
        /// Lattice expression such as "A4 E8" or "D4^3".
        lattice: String,
    },
    /// Coefficients of all rank-12 root lattices up to a determinant.
    Table {
        #[arg(long, default_value_t = 96)]
        max_det: u64,
    },
    /// The q-expansion of η(8τ)^12·θ(τ).
    Qexp {
        #[arg(long, default_value_t = qseries::DEFAULT_TERMS)]
        terms: usize,
    },
    /// Determinant table against the q-expansion.
    Compare {
        #[arg(long, default_value_t = 96)]
        max_det: u64,
    },
    /// Golay code computations.
    Golay {
        #[command(subcommand)]
        action: GolayAction,
    },
    /// a(D12) by the theta combination and by frames.
    D12 {
        #[arg(long, value_enum, default_value_t = D12Method::Frames)]
        method: D12Method,
    },
    /// λ(2) and the Satake product.
    Hecke {
        /// Row of the T(2) matrix used for the eigenvalue.
        #[arg(long, value_enum, default_value_t = HeckeRow::Leech)]
        row: HeckeRow,
    },
    /// Runs the acceptance checks.
    Selftest,
}

#[derive(Subcommand)]
enum GolayAction {
    /// Classes of 12-element subsets.
    Classify,
}

#[derive(Clone, Copy, ValueEnum)]
enum D12Method {
    Theta,
    Frames,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeckeRow {
    Leech,
    D24,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn mismatch(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
    fn data(msg: impl Into<String>) -> Self {
        Failure {
            code: 3,
            msg: msg.into(),
        }
    }
}

impl From<NiemeierError> for Failure {
    fn from(e: NiemeierError) -> Self {
        Failure::data(e.to_string())
    }
}

struct Env {
    registry: Registry,
    counter: Counter,
}

impl Env {
    fn coefficients(&self) -> Result<CuspCoefficients, Failure> {
        cuspform::solve(&build_matrix(&self.registry, &self.counter)).map_err(|e| Failure::mismatch(e.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((doc, code)) => {
            print!("{}", doc.render(cli.format));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(Doc, u8), Failure> {
    let registry = match &cli.data {
        Some(p) => Registry::from_file(p)?,
        None => Registry::builtin(),
    };
    let counter = match &cli.cache {
        Some(p) => Counter::with_cache_file(p).map_err(|e| Failure::data(e.to_string()))?,
        None => Counter::new(),
    };
    let env = Env { registry, counter };
    let doc = match &cli.command {
        Command::Matrix => matrix(&env),
        Command::Cuspform => cusp(&env)?,
        Command::Coeff { lattice } => coeff(&env, lattice)?,
        Command::Table { max_det } => table(&env, *max_det)?,
        Command::Qexp { terms } => qexp(*terms),
        Command::Compare { max_det } => compare(&env, *max_det)?,
        Command::Golay {
            action: GolayAction::Classify,
        } => golay_classify()?,
        Command::D12 { method } => d12(&env, *method)?,
        Command::Hecke { row } => hecke_cmd(&env, *row)?,
        Command::Selftest => return selftest(env),
    };
    env.counter.save().map_err(|e| Failure::data(e.to_string()))?;
    Ok((doc, 0))
}

fn rat(r: &BigRational) -> String {
    r.to_string()
}

fn matrix(env: &Env) -> Doc {
    let m = build_matrix(&env.registry, &env.counter);
    let mut headers = vec!["row".to_string()];
    headers.extend(m.columns.iter().cloned());
    let rows: Vec<Vec<String>> = m
        .rows
        .iter()
        .zip(&m.entries)
        .map(|(r, e)| {
            std::iter::once(r.compact_or_zero())
                .chain(e.iter().map(BigInt::to_string))
                .collect()
        })
        .collect();
    let json = json!({
        "columns": m.columns,
        "rows": m.rows.iter().zip(&m.entries).map(|(r, e)| json!({
            "row": r.compact_or_zero(),
            "counts": e.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    Doc::table(headers, rows, json)
}

trait CompactOrZero {
    fn compact_or_zero(&self) -> String;
}

impl CompactOrZero for RootSystemType {
    fn compact_or_zero(&self) -> String {
        if self.is_empty() {
            "0".into()
        } else {
            self.compact()
        }
    }
}

fn cusp(env: &Env) -> Result<Doc, Failure> {
    let c = env.coefficients()?;
    let rows: Vec<Vec<String>> = c
        .labels
        .iter()
        .zip(&c.values)
        .enumerate()
        .map(|(i, (l, v))| vec![(i + 1).to_string(), l.clone(), rat(v)])
        .collect();
    let json = Value::Array(
        rows.iter()
            .map(|r| json!({"index": r[0].parse::<u32>().unwrap_or(0), "label": r[1], "coefficient": r[2]}))
            .collect(),
    );
    Ok(Doc::table(
        vec!["index".into(), "lattice".into(), "coefficient".into()],
        rows,
        json,
    ))
}

fn parse_lattice(s: &str) -> Result<RootSystemType, Failure> {
    s.parse::<RootSystemType>()
        .map_err(|e| Failure::usage(format!("cannot parse lattice `{s}`: {e}")))
}

fn coeff(env: &Env, lattice: &str) -> Result<Doc, Failure> {
    let m = parse_lattice(lattice)?;
    let form = CuspForm::new(env.coefficients()?, &env.registry, &env.counter);
    let v = form.coefficient(&m).map_err(|e| Failure::usage(e.to_string()))?;
    let json = json!({"lattice": m.compact_or_zero(), "rank": m.rank(), "det": m.determinant().to_string(), "coefficient": rat(&v)});
    Ok(Doc::single(
        rat(&v),
        vec!["lattice".into(), "det".into(), "coefficient".into()],
        vec![m.compact_or_zero(), m.determinant().to_string(), rat(&v)],
        json,
    ))
}

fn table(env: &Env, max_det: u64) -> Result<Doc, Failure> {
    let form = CuspForm::new(env.coefficients()?, &env.registry, &env.counter);
    let t = form.det_table(max_det);
    let rows: Vec<Vec<String>> = t
        .iter()
        .map(|e| vec![e.det.to_string(), rat(&e.value), e.lattice.compact()])
        .collect();
    let json = Value::Array(
        rows.iter()
            .map(|r| json!({"det": r[0], "coef": r[1], "lattice": r[2]}))
            .collect(),
    );
    Ok(Doc::table(
        vec!["det".into(), "coef".into(), "lattice".into()],
        rows,
        json,
    ))
}

fn qexp(terms: usize) -> Doc {
    let s = qseries::eta8_12_theta(terms);
    let rows: Vec<Vec<String>> = s
        .support()
        .into_iter()
        .map(|n| vec![n.to_string(), s.coeff(n).to_string()])
        .collect();
    let json = json!({
        "order": s.order(),
        "coefficients": s.support().into_iter().map(|n| json!({"exponent": n, "coefficient": s.coeff(n).to_string()})).collect::<Vec<_>>(),
    });
    Doc::with_plain(
        format!("{s}\n"),
        vec!["exponent".into(), "coefficient".into()],
        rows,
        json,
    )
}

fn compare(env: &Env, max_det: u64) -> Result<Doc, Failure> {
    let form = CuspForm::new(env.coefficients()?, &env.registry, &env.counter);
    let t = form.det_table(max_det);
    let s = qseries::eta8_12_theta((max_det as usize).max(4));
    let report = qseries::compare_report(&t, &s);
    let rows: Vec<Vec<String>> = report
        .iter()
        .map(|r| {
            vec![
                r.det.to_string(),
                r.lattice.clone(),
                rat(&r.coef),
                r.series_coef.to_string(),
                r.flag(),
            ]
        })
        .collect();
    let json = Value::Array(
        report
            .iter()
            .map(|r| {
                json!({
                    "det": r.det.to_string(), "residue_mod_8": r.residue, "lattice": r.lattice, "coef": rat(&r.coef),
                    "series_coef": r.series_coef.to_string(), "ratio": r.ratio.as_ref().map(rat), "flag": r.flag(),
                })
            })
            .collect(),
    );
    let headers = ["det", "lattice", "coef", "series_coef", "ratio_or_flag"]
        .map(String::from)
        .to_vec();
    Ok(Doc::table(headers, rows, json))
}

fn golay_classify() -> Result<Doc, Failure> {
    let classes = golay::classify_subsets().map_err(|e| Failure::mismatch(e.to_string()))?;
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![
                c.label.to_string(),
                c.size.to_string(),
                c.signature.to_string(),
                format!("{:06x}", c.representative),
            ]
        })
        .collect();
    let json = Value::Array(
        classes
            .iter()
            .map(|c| {
                json!({
                    "label": c.label.name(), "size": c.size, "codeword": c.signature.codeword,
                    "octad_intersections": c.signature.octad_intersections, "representative": c.representative,
                })
            })
            .collect(),
    );
    for c in &classes {
        if c.size != c.label.expected_size() {
            return Err(Failure::mismatch(format!("class {} has {} subsets", c.label, c.size)));
        }
    }
    Ok(Doc::table(
        ["class", "size", "signature", "representative"]
            .map(String::from)
            .to_vec(),
        rows,
        json,
    ))
}

fn d12(env: &Env, method: D12Method) -> Result<Doc, Failure> {
    let form = CuspForm::new(env.coefficients()?, &env.registry, &env.counter);
    let d12: RootSystemType = "D12".parse().expect("D12");
    let scale = BigRational::from_integer(golay::d12_raw_value());
    let theta_norm = form.coefficient(&d12).map_err(|e| Failure::mismatch(e.to_string()))?;
    let frames_raw = golay::a_d12_frames().map_err(|e| Failure::mismatch(e.to_string()))?;
    let frames_norm = BigRational::from_integer(frames_raw.clone()) / &scale;
    let theta_raw = &theta_norm * &scale;
    if theta_norm != frames_norm || !theta_norm.is_one() {
        return Err(Failure::mismatch(format!(
            "normalised values differ: theta {theta_norm}, frames {frames_norm}"
        )));
    }
    let (first, second) = match method {
        D12Method::Frames => (("frames", BigRational::from_integer(frames_raw)), ("theta", theta_raw)),
        D12Method::Theta => (("theta", theta_raw), ("frames", BigRational::from_integer(frames_raw))),
    };
    let row = |name: &str, raw: &BigRational| {
        vec![
            name.to_string(),
            rat(raw),
            factor_string_rational(raw),
            rat(&(raw / &scale)),
        ]
    };
    let rows = vec![row(first.0, &first.1), row(second.0, &second.1)];
    let json = json!({
        "method": first.0,
        "values": rows.iter().map(|r| json!({"method": r[0], "raw": r[1], "factored": r[2], "normalized": r[3]})).collect::<Vec<_>>(),
        "equal": true,
    });
    Ok(Doc::table(
        ["method", "raw", "factored", "normalized"].map(String::from).to_vec(),
        rows,
        json,
    ))
}

fn hecke_cmd(env: &Env, row: HeckeRow) -> Result<Doc, Failure> {
    if !hecke::factor_claims_hold() {
        return Err(Failure::mismatch("901141 is not prime"));
    }
    let c = env.coefficients()?;
    let lam = match row {
        HeckeRow::Leech => hecke::lambda2(&env.registry, &c),
        HeckeRow::D24 => hecke::lambda2_from_d24_row(&env.registry, &env.counter, &c, &codes::code_data()),
    }
    .map_err(|e| match e {
        HeckeError::Data(d) => Failure::data(d.to_string()),
        other => Failure::mismatch(other.to_string()),
    })?;
    let beta = hecke::beta(2, 24, 12).value;
    let s = hecke::satake_product(&lam);
    let violated = hecke::ramanujan_violated(&s);
    let rows = vec![
        vec!["beta(2,24,12)".into(), rat(&beta), factor_string_rational(&beta)],
        vec![
            "lambda(2)/beta".into(),
            rat(&lam.over_beta),
            factor_string_rational(&lam.over_beta),
        ],
        vec!["lambda(2)".into(), rat(&lam.value), factor_string_rational(&lam.value)],
        vec!["satake_product".into(), rat(&s), factor_string_rational(&s)],
        vec![
            "satake_product_approx".into(),
            format!("{:.6e}", to_f64(&s)),
            String::new(),
        ],
        vec!["ramanujan_violated".into(), violated.to_string(), String::new()],
    ];
    let json = json!({
        "row": match row { HeckeRow::Leech => "leech", HeckeRow::D24 => "d24" },
        "beta": rat(&beta), "lambda_over_beta": rat(&lam.over_beta), "lambda_over_beta_factored": factor_string_rational(&lam.over_beta),
        "lambda": rat(&lam.value), "satake_product": rat(&s), "satake_product_factored": factor_string_rational(&s),
        "ramanujan_violated": violated,
        "expected_lambda_over_beta": factor_string(&hecke::expected_lambda_over_beta()),
        "matches_expected": lam.over_beta == BigRational::from_integer(hecke::expected_lambda_over_beta()),
    });
    Ok(Doc::table(
        ["quantity", "value", "factored"].map(String::from).to_vec(),
        rows,
        json,
    ))
}

fn selftest(env: Env) -> Result<(Doc, u8), Failure> {
    let ctx = Context::new(env.registry, env.counter);
    let verdicts = acceptance::run_all(&ctx);
    ctx.counter.save().map_err(|e| Failure::data(e.to_string()))?;
    let rows: Vec<Vec<String>> = verdicts
        .iter()
        .map(|v| {
            vec![
                if v.pass { "PASS" } else { "FAIL" }.into(),
                v.id.to_string(),
                v.name.into(),
                v.detail.clone(),
            ]
        })
        .collect();
    let json = Value::Array(
        verdicts
            .iter()
            .map(|v| json!({"id": v.id, "name": v.name, "pass": v.pass, "detail": v.detail}))
            .collect(),
    );
    let plain: String = verdicts.iter().map(|v| v.line() + "\n").collect();
    let doc = Doc::with_plain(
        plain,
        ["status", "id", "name", "detail"].map(String::from).to_vec(),
        rows,
        json,
    );
    let failed: Vec<String> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id.to_string()).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {}", failed.join(", "));
    }
    Ok((doc, u8::from(!failed.is_empty())))
}
