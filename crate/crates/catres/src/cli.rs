//! Command dispatch. `run` never prints; it returns the exit code and the
//! text destined for stdout and stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catres_core::auslander::{build_auslander, default_max_depth, verify_auslander, AuslanderData};
use catres_core::certify::{certify_resolution, CertConfig, CertReport};
use catres_core::functors::{theta, theta_lambda, theta_rho};
use catres_core::homology::{
    global_dimension_with, is_injective, GlobalDimension, ResolutionStatus,
};
use catres_core::modules::{hom_space, Projectives};
use catres_core::{Algebra, Field, Repn};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::exec::Threads;
use crate::format::{
    self, emit_algebra, emit_matrix, emit_module, to_json, AlgebraCtx, AlgebraRef, Any,
    AuslanderRef, MatrixDoc, ModuleCtx,
};
use crate::with_field;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_DEGENERATE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INPUT: u8 = 65;
pub const EXIT_COMPUTE: u8 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "catres",
    version,
    about = "Auslander algebras and categorical resolutions over exact fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctorKind {
    /// Restriction to the corner: Ã-module to Λ-module.
    Theta,
    /// Right adjoint Hom(M, -): Λ-module to Ã-module.
    ThetaRho,
    /// Left adjoint via a projective presentation: Λ-module to Ã-module.
    ThetaLambda,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, radical chain and idempotents of an algebra.
    Analyze { input: PathBuf },
    /// Build and verify the Auslander algebra.
    Auslander {
        input: PathBuf,
        /// Resolution depth for the global dimension of the Auslander algebra.
        #[arg(long)]
        max_depth: Option<usize>,
        /// Emit the Auslander algebra as an algebra document instead of the report.
        #[arg(long)]
        emit_algebra: bool,
    },
    /// Global dimension from resolutions of the simple modules.
    Gldim {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_depth: usize,
    },
    /// Dimension and basis of Hom(M, N).
    Hom { source: PathBuf, target: PathBuf },
    /// Apply one of the recollement functors to a module.
    Functor {
        #[arg(value_enum)]
        which: FunctorKind,
        input: PathBuf,
    },
    /// Certify the categorical resolution given by the Auslander algebra.
    Certify {
        input: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resolution depth over the Auslander algebra (default: nilpotency index + 2).
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_window: usize,
        #[arg(long, default_value_t = 12)]
        max_term_dim: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: u8, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: u8, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Input(format::LoadError),
    Compute(catres_core::Error),
    Usage(String),
}

impl From<format::LoadError> for Failure {
    fn from(e: format::LoadError) -> Self {
        Failure::Input(e)
    }
}

impl From<catres_core::Error> for Failure {
    fn from(e: catres_core::Error) -> Self {
        Failure::Compute(e)
    }
}

type Res<T> = Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(EXIT_PASS, text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Input(e)) => Outcome::err(EXIT_INPUT, e),
        Err(Failure::Compute(e)) => Outcome::err(EXIT_COMPUTE, e),
        Err(Failure::Usage(e)) => Outcome::err(EXIT_USAGE, e),
    }
}

fn dispatch(cli: &Cli) -> Res<Outcome> {
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze { input } => {
            let a = format::load_algebra(input)?;
            with_field!(&a, c => analyze(&c.algebra, fmt))
        }
        Command::Auslander {
            input,
            max_depth,
            emit_algebra,
        } => {
            let a = format::load_algebra(input)?;
            with_field!(&a, c => auslander(&c.algebra, *max_depth, *emit_algebra, fmt))
        }
        Command::Gldim { input, max_depth } => {
            let a = format::load_algebra(input)?;
            with_field!(&a, c => gldim(&c.algebra, *max_depth, fmt))
        }
        Command::Hom { source, target } => {
            let m = format::load_module(source)?;
            let n = format::load_module(target)?;
            match (m, n) {
                (Any::Prime(m), Any::Prime(n)) => hom(&m, &n, fmt),
                (Any::Rational(m), Any::Rational(n)) => hom(&m, &n, fmt),
                _ => Err(Failure::Usage("modules are over different fields".into())),
            }
        }
        Command::Functor { which, input } => {
            let m = format::load_module(input)?;
            with_field!(&m, c => functor(*which, c))
        }
        Command::Certify {
            input,
            samples,
            seed,
            max_depth,
            max_window,
            max_term_dim,
        } => {
            let cfg = CertConfig {
                seed: *seed,
                samples: *samples,
                max_degree_window: *max_window,
                max_term_dim: *max_term_dim,
                max_resolution_depth: *max_depth,
            };
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let exec = Threads::from_env().map_err(Failure::Usage)?;
            let a = format::load_algebra(input)?;
            let report = with_field!(&a, c => certify_resolution(&c.algebra, &cfg, &exec)?);
            let code = report.verdict.exit_code() as u8;
            let out = match fmt {
                OutputFormat::Json => to_json(&report),
                OutputFormat::Text => certify_text(&report),
            };
            Ok(Outcome::ok(code, out))
        }
    }
}

#[derive(Serialize)]
struct Analysis {
    format: &'static str,
    field: String,
    dim: usize,
    basis: Vec<String>,
    radical_dims: Vec<usize>,
    nilpotency_index: usize,
    radical_source: catres_core::algebra::RadicalSource,
    primitive_idempotents: usize,
    idempotent_classes: Vec<usize>,
    projective_dims: Vec<usize>,
    semisimple: bool,
    commutative: bool,
    self_injective: bool,
}

fn analyze<F: Field>(a: &Arc<Algebra<F>>, fmt: OutputFormat) -> Res<Outcome> {
    let chain = a.radical_chain().map_err(|e| Failure::Compute(e.clone()))?;
    let proj = Projectives::new(a)?;
    let r = Analysis {
        format: "catres-analysis/1",
        field: a.field().spec().to_string(),
        dim: a.dim(),
        basis: a.labels().to_vec(),
        radical_dims: chain.dims(),
        nilpotency_index: chain.nilpotency_index(),
        radical_source: chain.source(),
        primitive_idempotents: proj.len(),
        idempotent_classes: a
            .idempotent_classes()
            .map_err(|e| Failure::Compute(e.clone()))?
            .to_vec(),
        projective_dims: proj.projectives.iter().map(Repn::dim).collect(),
        semisimple: a.is_semisimple().map_err(|e| Failure::Compute(e.clone()))?,
        commutative: a.is_commutative(),
        self_injective: is_injective(&Repn::regular(a), &proj)?,
    };
    Ok(Outcome::ok(
        EXIT_PASS,
        match fmt {
            OutputFormat::Json => to_json(&r),
            OutputFormat::Text => format!(
                "field {}\ndim {}\nradical chain {:?}\nnilpotency index {}\nprimitive idempotents {} in classes {:?}\nprojective dims {:?}\nsemisimple {}\ncommutative {}\nself-injective {}\n",
                r.field,
                r.dim,
                r.radical_dims,
                r.nilpotency_index,
                r.primitive_idempotents,
                r.idempotent_classes,
                r.projective_dims,
                r.semisimple,
                r.commutative,
                r.self_injective
            ),
        },
    ))
}

fn auslander<F: Field>(
    a: &Arc<Algebra<F>>,
    depth: Option<usize>,
    emit: bool,
    fmt: OutputFormat,
) -> Res<Outcome> {
    let data = build_auslander(a)?;
    if emit {
        return Ok(Outcome::ok(EXIT_PASS, to_json(&emit_algebra(data.tilde()))));
    }
    let report = verify_auslander(&data, depth.unwrap_or_else(|| default_max_depth(&data)))?;
    let code = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    Ok(Outcome::ok(
        code,
        match fmt {
            OutputFormat::Json => to_json(&report),
            OutputFormat::Text => format!(
                "n {}\ndim M {} (summands {:?})\ndim Auslander algebra {}\ndim corner {} (isomorphic to input: {})\nglobal dimension {}\n",
                report.n,
                report.dim_m,
                report.summand_dims,
                report.dim_tilde,
                report.dim_corner,
                report.corner_iso_ok,
                report.gldim_tilde
            ),
        },
    ))
}

#[derive(Serialize)]
struct ResolutionSummary {
    simple: usize,
    term_dims: Vec<usize>,
    status: ResolutionStatus,
}

#[derive(Serialize)]
struct GldimReport {
    format: &'static str,
    max_depth: usize,
    global_dimension: GlobalDimension,
    resolutions: Vec<ResolutionSummary>,
}

fn gldim<F: Field>(a: &Arc<Algebra<F>>, depth: usize, fmt: OutputFormat) -> Res<Outcome> {
    let proj = Projectives::new(a)?;
    let (verdict, res) = global_dimension_with(&proj, depth)?;
    let r = GldimReport {
        format: "catres-gldim/1",
        max_depth: depth,
        resolutions: proj
            .representatives
            .iter()
            .zip(&res)
            .map(|(&k, r)| ResolutionSummary {
                simple: k,
                term_dims: r.terms.iter().map(Repn::dim).collect(),
                status: r.status.clone(),
            })
            .collect(),
        global_dimension: verdict,
    };
    Ok(Outcome::ok(
        EXIT_PASS,
        match fmt {
            OutputFormat::Json => to_json(&r),
            OutputFormat::Text => format!("{}\n", r.global_dimension),
        },
    ))
}

#[derive(Serialize)]
struct HomReport {
    format: &'static str,
    dim: usize,
    basis: Vec<MatrixDoc>,
}

fn hom<F: Field>(m: &ModuleCtx<F>, n: &ModuleCtx<F>, fmt: OutputFormat) -> Res<Outcome> {
    if *m.algebra.algebra != *n.algebra.algebra {
        return Err(Failure::Usage("modules are over different algebras".into()));
    }
    let target = Repn::new(
        m.algebra.algebra.clone(),
        n.module.dim(),
        n.module.actions().to_vec(),
    )?;
    let h = hom_space(&m.module, &target)?;
    let r = HomReport {
        format: "catres-hom/1",
        dim: h.dim(),
        basis: h.matrices().iter().map(emit_matrix).collect(),
    };
    Ok(Outcome::ok(
        EXIT_PASS,
        match fmt {
            OutputFormat::Json => to_json(&r),
            OutputFormat::Text => format!("{}\n", r.dim),
        },
    ))
}

fn functor<F: Field>(which: FunctorKind, c: &ModuleCtx<F>) -> Res<Outcome> {
    let m = &c.module;
    let (module, reference) = match which {
        FunctorKind::Theta => {
            let (data, base) = auslander_parts(&c.algebra)?;
            (theta(m, data)?.module, base)
        }
        FunctorKind::ThetaRho | FunctorKind::ThetaLambda => {
            let data = build_auslander(&c.algebra.algebra)?;
            let out = if which == FunctorKind::ThetaRho {
                theta_rho(m, &data)?.module
            } else {
                theta_lambda(m, &data)?.module
            };
            let r = AlgebraRef::Auslander(AuslanderRef {
                auslander_of: Box::new(c.algebra.reference.clone()),
            });
            (out, r)
        }
    };
    Ok(Outcome::ok(
        EXIT_PASS,
        to_json(&emit_module(&module, &reference)),
    ))
}

fn auslander_parts<F: Field>(c: &AlgebraCtx<F>) -> Res<(&AuslanderData<F>, AlgebraRef)> {
    match (&c.auslander, &c.reference) {
        (Some(data), AlgebraRef::Auslander(r)) => Ok((data, (*r.auslander_of).clone())),
        _ => Err(Failure::Usage(
            "theta needs a module over {\"auslander_of\": ...}".into(),
        )),
    }
}

pub fn certify_text(r: &CertReport) -> String {
    let mut s = String::new();
    let a = &r.algebra;
    let _ = writeln!(
        s,
        "algebra: dim {} over {}, nilpotency index {}",
        a.dim, a.field, a.nilpotency_index
    );
    let _ = writeln!(s, "global dimension of input: {}", r.gldim_lambda);
    let _ = writeln!(
        s,
        "global dimension of Auslander algebra: {}",
        r.gldim_tilde
    );
    let _ = writeln!(
        s,
        "Auslander algebra: dim {}, corner isomorphic to input: {}",
        r.auslander.dim_tilde, r.auslander.corner_iso_ok
    );
    let _ = writeln!(s, "seed {}, samples {}", r.config.seed, r.config.samples);
    for (name, suite) in &r.suites {
        let status = match (suite.applicable, suite.passed) {
            (false, _) => "n/a ",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        let _ = writeln!(
            s,
            "  [{status}] {name:<16} {} samples, {} checks, {} failures",
            suite.samples, suite.checks, suite.failures
        );
        if let Some(f) = &suite.first_failure {
            let _ = writeln!(
                s,
                "         first failure: sample {} ({}): {}",
                f.index, f.check, f.reason
            );
        }
        if let Some(note) = &suite.note {
            let _ = writeln!(s, "         {note}");
        }
    }
    if r.degenerate {
        let _ = writeln!(
            s,
            "note: the input does not have certified infinite global dimension"
        );
    }
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    s
}

/// Runs the CLI on a file path, for tests.
pub fn run_on(verb: &[&str], path: &Path) -> Outcome {
    let mut args: Vec<OsString> = vec!["catres".into()];
    args.extend(verb.iter().map(OsString::from));
    args.push(path.as_os_str().to_owned());
    run(args)
}
