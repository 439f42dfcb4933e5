//! `flagk`: runs the verification suites, prints reports, and dumps operators
//! and Gram matrices.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! or configuration errors.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flagk_core::hecke0::verify_hecke;
use flagk_core::idemkit::{verify_abc, verify_braid_demazure, verify_idempotents, verify_idempotents_all};
use flagk_core::loopgen::{
    cross_model_check, generators_at, op_e, op_f, op_psi, verify_cat_shadows, verify_cat_shadows_all,
    verify_cross_model, verify_u_relations, Condition, IndexBounds, PsiSign, Weight,
};
use flagk_core::sodlab::{
    gram, verify_component_split, verify_diagonal_action, verify_duality, verify_exceptionality, verify_word_classes,
    Collection,
};
use flagk_core::{Composition, VerificationReport};

#[derive(Parser)]
#[command(
    name = "flagk",
    version,
    about = "Exact K-theory checks for 0-affine actions on flag varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a relation or idempotent suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        opts: Opts,
    },
    /// Grassmannian collections and the diagonal action on them.
    Sod {
        #[arg(value_enum)]
        what: SodTarget,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print an operator.
    Dump {
        #[arg(value_enum)]
        what: DumpTarget,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Hecke,
    U0,
    Cat,
    Idem,
    Abc,
    Braid,
    Words,
    Cross,
}

#[derive(Clone, Copy, ValueEnum)]
enum SodTarget {
    Gram,
    Act,
    Split,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpTarget {
    Op,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CollectionArg {
    Kapranov,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenArg {
    E,
    F,
    #[value(name = "psi+")]
    PsiPlus,
    #[value(name = "psi-")]
    PsiMinus,
}

#[derive(Args)]
struct Opts {
    /// Total dimension N (number of variables for `hecke`).
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Number of blocks n in a composition.
    #[arg(long = "n")]
    n: Option<usize>,
    /// A single weight, as `k1,k2,...`.
    #[arg(long)]
    comp: Option<Composition>,
    /// Grassmannian rank k in Gr(k, N).
    #[arg(long)]
    k: Option<usize>,
    /// Exponent window for sampled Laurent polynomials.
    #[arg(long, default_value_t = 2)]
    deg: i32,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Categorical condition to restrict `cat` to; repeatable.
    #[arg(long = "condition")]
    conditions: Vec<String>,
    /// Use the extended index window for `u0`.
    #[arg(long)]
    extended: bool,
    #[arg(long, value_enum, default_value = "kapranov")]
    collection: CollectionArg,
    /// Generator for `dump op`.
    #[arg(long = "gen", value_enum)]
    generator: Option<GenArg>,
    /// Generator index i.
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Loop index, or the power for psi.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the size guards.
    #[arg(long)]
    force: bool,
    /// Record wall-clock time in `elapsed_ms` (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

/// A configuration problem, reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Output of one invocation: the rendered bytes and whether everything passed.
struct Outcome {
    body: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                eprintln!("run `flagk --help` for usage");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (opts, outcome) = match cli.command {
        Command::Verify { suite, opts } => {
            let o = verify(suite, &opts)?;
            (opts, o)
        }
        Command::Sod { what, opts } => {
            let o = sod(what, &opts)?;
            (opts, o)
        }
        Command::Dump {
            what: DumpTarget::Op,
            opts,
        } => {
            let o = dump_op(&opts)?;
            (opts, o)
        }
    };
    emit(&opts, &outcome.body)?;
    Ok(outcome.passed)
}

fn emit(opts: &Opts, body: &str) -> anyhow::Result<()> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &opts.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Largest N a suite runs at without `--force`.
fn default_cap(name: &str) -> usize {
    match name {
        "abc" | "braid" => 4,
        "words" | "sod" | "dump" => 6,
        _ => 5,
    }
}

fn guard(name: &str, big_n: usize, opts: &Opts) -> anyhow::Result<()> {
    if opts.force {
        return Ok(());
    }
    let cap = match std::env::var("FLAGK_MAX_N") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("FLAGK_MAX_N must be a nonnegative integer, got `{v}`")))?,
        Err(_) => default_cap(name),
    };
    if big_n > cap {
        bail!(usage(format!(
            "{name} at N = {big_n} exceeds the guard N <= {cap}; pass --force or set FLAGK_MAX_N"
        )));
    }
    Ok(())
}

fn need<T: Copy>(value: Option<T>, flag: &str, what: &str) -> anyhow::Result<T> {
    value.ok_or_else(|| usage(format!("{what} needs {flag}")))
}

fn render_report(mut report: VerificationReport, opts: &Opts, start: Instant) -> anyhow::Result<Outcome> {
    if opts.timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    let body = match opts.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Csv => bail!(usage("csv output is only available for `sod gram` and `dump op`")),
    };
    Ok(Outcome {
        passed: report.passed(),
        body,
    })
}

fn verify(suite: Suite, opts: &Opts) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let n_or = |d: usize| opts.n.unwrap_or(d);
    let report = match suite {
        Suite::Hecke => {
            let big_n = opts.big_n.unwrap_or(3);
            guard("hecke", big_n, opts)?;
            if big_n < 2 {
                bail!(usage("hecke needs --N >= 2"));
            }
            verify_hecke(big_n, opts.deg, opts.samples, opts.seed)
        }
        Suite::U0 => {
            let big_n = opts.big_n.unwrap_or(3);
            guard("u0", big_n, opts)?;
            let bounds = if opts.extended {
                IndexBounds::Extended
            } else {
                IndexBounds::Standard
            };
            verify_u_relations(n_or(2), big_n, bounds)
        }
        Suite::Cat => match &opts.comp {
            Some(k) => {
                guard("cat", k.total(), opts)?;
                let conditions = if opts.conditions.is_empty() {
                    Condition::ALL.to_vec()
                } else {
                    opts.conditions
                        .iter()
                        .map(|c| Condition::parse(c).map_err(|e| usage(e.to_string())))
                        .collect::<anyhow::Result<Vec<_>>>()?
                };
                verify_cat_shadows(k, &conditions)
            }
            None => {
                let big_n = opts.big_n.unwrap_or(3);
                guard("cat", big_n, opts)?;
                verify_cat_shadows_all(n_or(2), big_n)
            }
        },
        Suite::Idem => match &opts.comp {
            Some(k) => {
                guard("idem", k.total(), opts)?;
                verify_idempotents(k)
            }
            None => {
                let big_n = opts.big_n.unwrap_or(3);
                guard("idem", big_n, opts)?;
                verify_idempotents_all(n_or(2), big_n)
            }
        },
        Suite::Abc => {
            let big_n = opts.big_n.unwrap_or(4);
            guard("abc", big_n, opts)?;
            verify_abc(n_or(3), big_n)
        }
        Suite::Braid => {
            let big_n = opts.big_n.unwrap_or(3);
            guard("braid", big_n, opts)?;
            verify_braid_demazure(big_n)
        }
        Suite::Words => {
            let (k, big_n) = grassmannian(opts, "words")?;
            verify_word_classes(k, big_n)
        }
        Suite::Cross => match &opts.comp {
            Some(k) => {
                guard("cross", k.total(), opts)?;
                if k.n() != 2 {
                    bail!(usage(
                        "cross compares against the matrix model, which needs a two-block --comp"
                    ));
                }
                cross_model_check(k, &generators_at(&Weight::from(k)))
            }
            None => {
                let big_n = opts.big_n.unwrap_or(3);
                guard("cross", big_n, opts)?;
                verify_cross_model(big_n)
            }
        },
    };
    render_report(report, opts, start)
}

fn grassmannian(opts: &Opts, what: &str) -> anyhow::Result<(usize, usize)> {
    let k = need(opts.k, "--k", what)?;
    let big_n = need(opts.big_n, "--N", what)?;
    if k == 0 || k >= big_n {
        bail!(usage(format!("{what} needs 1 <= k < N, got k = {k}, N = {big_n}")));
    }
    guard(if what == "words" { "words" } else { "sod" }, big_n, opts)?;
    Ok((k, big_n))
}

fn sod(what: SodTarget, opts: &Opts) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let (k, big_n) = grassmannian(opts, "sod")?;
    let report = match what {
        SodTarget::Gram => {
            let which = match opts.collection {
                CollectionArg::Kapranov => Collection::Kapranov,
                CollectionArg::Dual => Collection::Dual,
            };
            let g = gram(k, big_n, which).map_err(|e| usage(e.to_string()))?;
            let passed = verify_exceptionality(k, big_n, which).passed();
            let body = match opts.format {
                Format::Json => serde_json::to_string_pretty(&g.to_json())?,
                Format::Csv => g.to_csv(),
                Format::Text => {
                    let mut s = format!("collection: {}\n", which.as_str());
                    s.push_str(&g.to_csv().replace(',', "\t"));
                    s
                }
            };
            return Ok(Outcome { body, passed });
        }
        SodTarget::Act => verify_diagonal_action(k, big_n),
        SodTarget::Split => verify_component_split(k, big_n),
        SodTarget::Dual => verify_duality(k, big_n),
    };
    render_report(report, opts, start)
}

fn dump_op(opts: &Opts) -> anyhow::Result<Outcome> {
    let k = opts.comp.as_ref().ok_or_else(|| usage("dump op needs --comp"))?;
    guard("dump", k.total(), opts)?;
    let generator = need(opts.generator, "--gen", "dump op")?;
    let op = match generator {
        GenArg::E => op_e(opts.i, opts.r, k),
        GenArg::F => op_f(opts.i, opts.r, k),
        GenArg::PsiPlus => op_psi(opts.i, PsiSign::Plus, opts.r, k),
        GenArg::PsiMinus => op_psi(opts.i, PsiSign::Minus, opts.r, k),
    }
    .map_err(|e| usage(e.to_string()))?;
    let body = match opts.format {
        Format::Json => serde_json::to_string_pretty(&op.to_json())?,
        Format::Text => {
            let mut s = format!("{}: {} -> {}\n", op.tag(), op.source(), op.target());
            match op.matrix() {
                Some(m) => s.push_str(&m.to_string()),
                None => s.push_str(&op.poly().to_string()),
            }
            s
        }
        Format::Csv => {
            let m = op
                .matrix()
                .ok_or_else(|| usage("csv needs a matrix; only two-block weights carry one"))?;
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("\n")
        }
    };
    Ok(Outcome { body, passed: true })
}
