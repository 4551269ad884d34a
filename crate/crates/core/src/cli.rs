//! The `uawq` command line.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::checks::{run_suite, Level};
use crate::classify::*;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq2};
use crate::modules::{build_vn, build_w, ModuleDump, Params4, Params5};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_NEEDS_EXTENSION: i32 = 4;

const ELEMENT_HELP: &str = "Field elements are written x0 or x0+x1i, where i is sqrt(t) for the least \
non-residue t mod p. Roots of polynomials are found by scanning F_{p^2}, so p is meant to stay below a few hundred.";

#[derive(Parser, Debug)]
#[command(name = "uawq", version, about = "Modules of the universal Askey-Wilson algebra at a root of unity over F_{p^2}", after_help = ELEMENT_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Odd prime p.
    #[arg(long, default_value_t = 13)]
    pub p: u64,
    /// Multiplicative order d of q.
    #[arg(long, default_value_t = 3)]
    pub d: u64,
    /// Emit JSON on stdout.
    #[arg(long)]
    pub json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Vn,
    W,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelArg {
    Smoke,
    Standard,
    Exhaustive,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build V_n(a,b,c) or W_lambda^delta(a,b,c) and dump its matrices.
    Build {
        kind: Kind,
        #[command(flatten)]
        common: Common,
        /// a,b,c for vn; a,b,c,lambda,delta for w.
        #[arg(long)]
        params: String,
        /// n for vn.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the irreducibility criterion and the Burnside oracle.
    Irr {
        kind: Kind,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        params: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The S4 orbit of a quadruple, or the equivalence closure of a quintuple.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// a,b,c,lambda or a,b,c,lambda,delta.
        #[arg(long)]
        params: String,
        /// Node cap for the closure.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the property suite.
    Suite {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// exhaustive requires p <= 17.
        #[arg(long, value_enum, default_value_t = LevelArg::Standard)]
        level: LevelArg,
    },
    /// Sample quintuples and classify the irreducible W up to isomorphism.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

/// What a command produced: exit code and the text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NeedsExtension(_) => EXIT_NEEDS_EXTENSION,
        Error::InvariantViolation(_) => EXIT_FAILURE,
        _ => EXIT_BAD_INPUT,
    }
}

/// The machine-readable error report written to stderr.
pub fn error_json(e: &Error) -> String {
    json!({"schema": 1, "error": e.kind(), "message": e.to_string()}).to_string()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn fmt_params(xs: &[Fq2]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn parse_exact(ctx: &FieldCtx, s: &str, want: usize) -> Result<Vec<Fq2>> {
    let xs = ctx.parse_list(s)?;
    if xs.len() != want {
        return Err(Error::Parse(format!(
            "expected {want} comma-separated values, got {}",
            xs.len()
        )));
    }
    Ok(xs)
}

fn params5(ctx: &FieldCtx, s: &str) -> Result<Params5> {
    let x = parse_exact(ctx, s, 5)?;
    Params5::new(x[0], x[1], x[2], x[3], x[4])
}

fn vn_args(ctx: &FieldCtx, s: &str, n: Option<usize>) -> Result<(Fq2, Fq2, Fq2, usize)> {
    let x = parse_exact(ctx, s, 3)?;
    let n = n.ok_or_else(|| Error::BadRange("vn needs --n".into()))?;
    Ok((x[0], x[1], x[2], n))
}

fn cmd_build(
    ctx: &FieldCtx,
    kind: Kind,
    params: &str,
    n: Option<usize>,
    json: bool,
) -> Result<Output> {
    let (rep, ps) = match kind {
        Kind::W => {
            let p = params5(ctx, params)?;
            (build_w(ctx, &p), p.to_array().to_vec())
        }
        Kind::Vn => {
            let (a, b, c, n) = vn_args(ctx, params, n)?;
            (build_vn(ctx, a, b, c, n)?, vec![a, b, c])
        }
    };
    let dump = ModuleDump::new(&rep, ps);
    let stdout = if json {
        to_json(&dump)
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "p = {}, d = {}, dbar = {}, dim = {}",
            dump.p,
            dump.d,
            dump.dbar,
            rep.dim()
        );
        let _ = writeln!(s, "params: {}", fmt_params(&dump.params));
        let _ = writeln!(s, "A = {:?}", dump.a);
        let _ = writeln!(s, "B = {:?}", dump.b);
        let _ = writeln!(
            s,
            "omega = {}, omega* = {}, omega_eps = {}",
            dump.omega, dump.omega_star, dump.omega_eps
        );
        s
    };
    Ok(Output {
        code: EXIT_OK,
        stdout,
    })
}

fn cmd_irr(
    ctx: &FieldCtx,
    kind: Kind,
    params: &str,
    n: Option<usize>,
    json: bool,
) -> Result<Output> {
    let (criterion, oracle) = match kind {
        Kind::W => {
            let p = params5(ctx, params)?;
            (
                irr_w_criterion(ctx, &p),
                burnside_irreducible(&build_w(ctx, &p)),
            )
        }
        Kind::Vn => {
            let (a, b, c, n) = vn_args(ctx, params, n)?;
            (
                irr_vn_criterion(ctx, a, b, c, n)?,
                burnside_irreducible(&build_vn(ctx, a, b, c, n)?),
            )
        }
    };
    let agree = criterion == oracle;
    let stdout = if json {
        to_json(&json!({"schema": 1, "criterion": criterion, "oracle": oracle, "agree": agree}))
    } else {
        format!("criterion: {criterion}\noracle:    {oracle}\nagree:     {agree}\n")
    };
    Ok(Output {
        code: if agree { EXIT_OK } else { EXIT_DISAGREE },
        stdout,
    })
}

#[derive(Serialize)]
struct OrbitReport {
    schema: u32,
    p: u32,
    d: u32,
    input: Vec<Fq2>,
    s4_images: Vec<(String, Params4)>,
    s4_classes: Vec<Params4>,
    closure: Option<Closure>,
    stats: OrbitStats,
}

#[derive(Serialize)]
struct OrbitStats {
    s4_size: usize,
    closure_size: Option<usize>,
    closure_edges: Option<usize>,
    irreducible: Option<bool>,
}

fn cmd_orbit(ctx: &FieldCtx, params: &str, cap: usize, json: bool) -> Result<Output> {
    let xs = ctx.parse_list(params)?;
    let (quad, five) = match xs.len() {
        4 => (Params4::new(xs[0], xs[1], xs[2], xs[3])?, None),
        5 => {
            let p = Params5::new(xs[0], xs[1], xs[2], xs[3], xs[4])?;
            (p.quad(), Some(p))
        }
        k => {
            return Err(Error::Parse(format!(
                "expected 4 or 5 comma-separated values, got {k}"
            )))
        }
    };
    let orbit = s4_orbit(ctx, &quad)?;
    let closure = five.map(|p| simeq_closure(ctx, &p, cap)).transpose()?;
    let report = OrbitReport {
        schema: 1,
        p: ctx.p(),
        d: ctx.d(),
        input: xs,
        stats: OrbitStats {
            s4_size: orbit.classes.len(),
            closure_size: closure.as_ref().map(|c| c.len()),
            closure_edges: closure.as_ref().map(|c| c.edges.len()),
            irreducible: five.map(|p| irr_w_criterion(ctx, &p)),
        },
        s4_images: orbit.images,
        s4_classes: orbit.classes,
        closure,
    };
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "S4 orbit: {} sign classes", report.stats.s4_size);
        for (label, x) in &report.s4_images {
            let _ = writeln!(s, "  {label:<14} ({})", fmt_params(&x.to_array()));
        }
        if let Some(cl) = &report.closure {
            let _ = writeln!(s, "closure: {} members, {} edges", cl.len(), cl.edges.len());
            for (k, m) in cl.members.iter().enumerate() {
                let _ = writeln!(s, "  [{k}] ({})", fmt_params(&m.to_array()));
            }
            for e in &cl.edges {
                let _ = writeln!(s, "  {} -> {} by {}", e.from, e.to, e.label);
            }
        }
        s
    };
    Ok(Output {
        code: EXIT_OK,
        stdout,
    })
}

fn cmd_suite(ctx: &FieldCtx, seed: u64, level: LevelArg, json: bool) -> Result<Output> {
    let level = match level {
        LevelArg::Smoke => Level::Smoke,
        LevelArg::Standard => Level::Standard,
        LevelArg::Exhaustive => Level::Exhaustive,
    };
    let report = run_suite(ctx, seed, level)?;
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        for c in &report.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{tag}  {} ({} cases", c.name, c.cases);
            if c.skipped > 0 {
                let _ = write!(s, ", {} skipped", c.skipped);
            }
            let _ = writeln!(s, ")");
            if let Some(f) = &c.first_failure {
                let _ = writeln!(s, "      first failure: {f}");
            }
        }
        s
    };
    Ok(Output {
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
        stdout,
    })
}

fn cmd_classify(ctx: &FieldCtx, seed: u64, count: usize, cap: usize, json: bool) -> Result<Output> {
    let report = classify_sample(ctx, seed, count, cap)?;
    let stdout = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} samples: {} classes, {} rejected, {} errors",
            report.count,
            report.classes.len(),
            report.rejected.len(),
            report.errors.len()
        );
        for (k, c) in report.classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "  [{k}] ({}) size {} closure {} isomorphisms {}",
                fmt_params(&c.representative.to_array()),
                c.size,
                c.closure_size,
                if c.isomorphisms_verified {
                    "verified"
                } else {
                    "FAILED"
                }
            );
        }
        let _ = writeln!(
            s,
            "cross-class pairs checked: {}, isomorphic: {}",
            report.cross_class_pairs_checked,
            report.cross_class_isomorphic.len()
        );
        s
    };
    let code = if report.classes.is_empty() {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    Ok(Output { code, stdout })
}

fn dispatch(cmd: &Command) -> Result<Output> {
    let common = match cmd {
        Command::Build { common, .. }
        | Command::Irr { common, .. }
        | Command::Orbit { common, .. }
        | Command::Suite { common, .. }
        | Command::Classify { common, .. } => common,
    };
    let ctx = FieldCtx::new(common.p, common.d)?;
    let json = common.json;
    match cmd {
        Command::Build {
            kind, params, n, ..
        } => cmd_build(&ctx, *kind, params, *n, json),
        Command::Irr {
            kind, params, n, ..
        } => cmd_irr(&ctx, *kind, params, *n, json),
        Command::Orbit { params, cap, .. } => cmd_orbit(&ctx, params, *cap, json),
        Command::Suite { seed, level, .. } => cmd_suite(&ctx, *seed, *level, json),
        Command::Classify {
            seed, count, cap, ..
        } => cmd_classify(&ctx, *seed, *count, *cap, json),
    }
}

/// Parses `args`, runs the command, writes its output, and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            let target = match &cli.command {
                Command::Build { common, .. }
                | Command::Irr { common, .. }
                | Command::Orbit { common, .. }
                | Command::Suite { common, .. }
                | Command::Classify { common, .. } => common.out.as_ref(),
            };
            match target {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.stdout) {
                        eprintln!(
                            "{}",
                            json!({"schema": 1, "error": "Io", "message": e.to_string()})
                        );
                        return EXIT_BAD_INPUT;
                    }
                }
                None => print!("{}", out.stdout),
            }
            out.code
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FieldCtx {
        FieldCtx::new(13, 3).unwrap()
    }

    #[test]
    fn irr_examples() {
        let out = cmd_irr(&ctx(), Kind::W, "1,1,1,1,0", None, true).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("\"criterion\": false"));
        let out = cmd_irr(&ctx(), Kind::Vn, "2,3,5", Some(0), false).unwrap();
        assert_eq!(out.code, EXIT_OK);
    }

    #[test]
    fn build_errors() {
        let e = cmd_build(&ctx(), Kind::Vn, "2,2,2", Some(5), true).unwrap_err();
        assert_eq!(e.kind(), "BadRange");
        assert_eq!(exit_code(&e), EXIT_BAD_INPUT);
        assert_eq!(
            cmd_build(&ctx(), Kind::W, "1,1,1", None, true)
                .unwrap_err()
                .kind(),
            "Parse"
        );
    }

    #[test]
    fn orbit_needs_extension() {
        let ctx = ctx();
        let out = cmd_orbit(&ctx, "1,1,1,1", DEFAULT_CAP, true).unwrap();
        assert!(out.stdout.contains("\"s4_size\""));
        let x = ctx
            .nonzero_elements()
            .into_iter()
            .find(|&x| !ctx.is_square(x * ctx.q()))
            .unwrap();
        let e = cmd_orbit(&ctx, &format!("{x},1,1,1"), DEFAULT_CAP, true).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_NEEDS_EXTENSION);
    }
}
