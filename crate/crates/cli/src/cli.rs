//! Argument parsing, window resolution and dispatch.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shpoisson::freecdga::Window;
use shpoisson::lieinfty::TensorKind;

use crate::commands::{self, Context, OperadChoice};
use crate::dsl::{self, BlockKind, Manifest};
use crate::error::{usage, CliError, CliResult};
use crate::model;
use crate::output::{self, Document, Outcome, Timings};

/// Environment variable holding default window sizes, as comma-separated
/// `key=value` pairs: `max_weight=4,min_degree=-6,max_degree=6,max_length=5`.
pub const WINDOW_ENV: &str = "SHPOISSON_WINDOW";

#[derive(Debug, Parser)]
#[command(name = "shpoisson", version, about = "Exact checks for shifted Poisson and symplectic structures")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add wall-clock timings in a separate report section.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Largest weight kept by truncations (default 6).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_weight: Option<i32>,
    /// Largest cohomological degree kept (default 8).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_degree: Option<i32>,
    /// Smallest cohomological degree kept (default -8).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub min_degree: Option<i32>,
    /// Largest polynomial length kept (default 6).
    #[arg(long, global = true)]
    pub max_length: Option<i32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Manifest file; reads standard input when absent or `-`.
    pub input: Option<PathBuf>,
    /// Use this block instead of the first one of a suitable kind.
    #[arg(long)]
    pub block: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sym2,
    Wedge3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperadArg {
    Pn,
    As,
    Lie,
    Bd1,
    Bd0,
    Arnold,
    Weyl,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate a free cdga: bidegrees, d² = 0, Leibniz.
    CheckCdga(Input),
    /// Validate a graded mixed complex or mixed cdga.
    CheckMixed(Input),
    /// Build and validate the de Rham algebra of a cdga.
    DeRham(Input),
    /// Classes of closed p-forms, or validation of a given form tower.
    ClosedForms {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        p: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i32,
    },
    /// Strict shifted Poisson check of p0 with its bracket table.
    CheckPoisson(Input),
    /// Maurer–Cartan equations of a Poisson tower.
    Mc(Input),
    /// Poisson to symplectic and back, with the map phi_pi.
    Dualize(Input),
    /// Strictify a closed 2-form tower.
    Strictify(Input),
    /// Split off the constant part of p0 and check the rewritten equation.
    Darboux(Input),
    /// Chevalley–Eilenberg mixed algebra of a Lie algebra.
    Ce(Input),
    /// Read a Lie algebra off a strict mixed structure.
    LieFromMixed(Input),
    /// Invariant tensors of a Lie algebra.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KindArg::Sym2)]
        kind: KindArg,
    },
    /// The 3-tensor Z = [t12, t23] and the semi-strict check.
    ZFromT(Input),
    /// Koszul homotopy groups and the cotangent tower.
    Koszul {
        #[command(flatten)]
        input: Input,
        /// Transition stages of the cotangent tower (0 skips it).
        #[arg(long, default_value_t = 2)]
        stages: u32,
    },
    /// The formal completion functor on an affine quotient.
    DFunctor(Input),
    /// Homology of the realization.
    Realize(Input),
    /// Tate realization stages and the comparison map.
    Tate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        stage: i32,
        #[arg(long, default_value_t = 4)]
        max_stage: i32,
    },
    /// Operad layer checks.
    Operad {
        #[arg(value_enum)]
        kind: OperadArg,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i32,
        /// Specialize the BD_1 family at hbar = 0 or 1.
        #[arg(long)]
        specialize: Option<i64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckCdga(_) => "check-cdga",
            Command::CheckMixed(_) => "check-mixed",
            Command::DeRham(_) => "de-rham",
            Command::ClosedForms { .. } => "closed-forms",
            Command::CheckPoisson(_) => "check-poisson",
            Command::Mc(_) => "mc",
            Command::Dualize(_) => "dualize",
            Command::Strictify(_) => "strictify",
            Command::Darboux(_) => "darboux",
            Command::Ce(_) => "ce",
            Command::LieFromMixed(_) => "lie-from-mixed",
            Command::Invariants { .. } => "invariants",
            Command::ZFromT(_) => "z-from-t",
            Command::Koszul { .. } => "koszul",
            Command::DFunctor(_) => "d-functor",
            Command::Realize(_) => "realize",
            Command::Tate { .. } => "tate",
            Command::Operad { .. } => "operad",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::CheckCdga(i)
            | Command::CheckMixed(i)
            | Command::DeRham(i)
            | Command::CheckPoisson(i)
            | Command::Mc(i)
            | Command::Dualize(i)
            | Command::Strictify(i)
            | Command::Darboux(i)
            | Command::Ce(i)
            | Command::LieFromMixed(i)
            | Command::ZFromT(i)
            | Command::DFunctor(i)
            | Command::Realize(i) => Some(i),
            Command::ClosedForms { input, .. }
            | Command::Invariants { input, .. }
            | Command::Koszul { input, .. }
            | Command::Tate { input, .. } => Some(input),
            Command::Operad { .. } => None,
        }
    }

    /// Parameters that affect the result, other than the input text.
    fn parameters(&self) -> String {
        let block = self.input().and_then(|i| i.block.clone()).unwrap_or_default();
        let rest = match self {
            Command::ClosedForms { p, n, .. } => format!("p={p};n={n}"),
            Command::Invariants { kind, .. } => format!("kind={kind:?}"),
            Command::Koszul { stages, .. } => format!("stages={stages}"),
            Command::Tate { stage, max_stage, .. } => format!("stage={stage};max_stage={max_stage}"),
            Command::Operad { kind, arity, n, specialize } => format!("kind={kind:?};arity={arity};n={n};specialize={specialize:?}"),
            _ => String::new(),
        };
        format!("block={block};{rest}")
    }
}

pub fn window_from_env(value: &str) -> CliResult<model::WindowOverrides> {
    let mut o = model::WindowOverrides::default();
    for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, v) = part.split_once('=').ok_or_else(|| usage(format!("{WINDOW_ENV}: expected key=value, got `{part}`")))?;
        let v: i32 = v.trim().parse().map_err(|_| usage(format!("{WINDOW_ENV}: `{v}` is not an integer")))?;
        let slot = match key.trim() {
            "max_weight" => &mut o.max_weight,
            "max_degree" => &mut o.max_degree,
            "min_degree" => &mut o.min_degree,
            "max_length" => &mut o.max_length,
            other => return Err(usage(format!("{WINDOW_ENV}: unknown key `{other}`"))),
        };
        *slot = Some(v);
    }
    Ok(o)
}

/// Defaults, then the environment, then `options` blocks, then flags.
pub fn resolve_window(cli: &Cli, env: Option<&str>, manifest: &Manifest) -> CliResult<Window> {
    let mut w = Window::default();
    if let Some(v) = env {
        window_from_env(v)?.apply(&mut w);
    }
    for b in manifest.blocks_of(BlockKind::Options) {
        model::options(b)?.apply(&mut w);
    }
    let flags = model::WindowOverrides {
        max_length: cli.max_length,
        max_weight: cli.max_weight,
        min_degree: cli.min_degree,
        max_degree: cli.max_degree,
    };
    flags.apply(&mut w);
    commands::require_window(&w)?;
    Ok(w)
}

fn read_source(input: &Input) -> CliResult<String> {
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn dispatch(command: &Command, ctx: &Context) -> CliResult<Outcome> {
    match command {
        Command::CheckCdga(_) => commands::check_cdga(ctx),
        Command::CheckMixed(_) => commands::check_mixed(ctx),
        Command::DeRham(_) => commands::de_rham_cmd(ctx),
        Command::ClosedForms { p, n, .. } => commands::closed_forms(ctx, *p, *n),
        Command::CheckPoisson(_) => commands::check_poisson(ctx),
        Command::Mc(_) => commands::mc(ctx),
        Command::Dualize(_) => commands::dualize(ctx),
        Command::Strictify(_) => commands::strictify(ctx),
        Command::Darboux(_) => commands::darboux(ctx),
        Command::Ce(_) => commands::ce_cmd(ctx),
        Command::LieFromMixed(_) => commands::lie_from_mixed_cmd(ctx),
        Command::Invariants { kind, .. } => {
            let kind = match kind {
                KindArg::Sym2 => TensorKind::Sym2,
                KindArg::Wedge3 => TensorKind::Wedge3,
            };
            commands::invariants_cmd(ctx, kind)
        }
        Command::ZFromT(_) => commands::z_from_t_cmd(ctx),
        Command::Koszul { stages, .. } => commands::koszul_cmd(ctx, *stages),
        Command::DFunctor(_) => commands::d_functor_cmd(ctx),
        Command::Realize(_) => commands::realize(ctx),
        Command::Tate { stage, max_stage, .. } => commands::tate(ctx, *stage, *max_stage),
        Command::Operad { kind, arity, n, specialize } => {
            let choice = match kind {
                OperadArg::Pn => OperadChoice::Pn,
                OperadArg::As => OperadChoice::As,
                OperadArg::Lie => OperadChoice::Lie,
                OperadArg::Bd1 => OperadChoice::Bd1,
                OperadArg::Bd0 => OperadChoice::Bd0,
                OperadArg::Arnold => OperadChoice::Arnold,
                OperadArg::Weyl => OperadChoice::Weyl,
            };
            commands::operad(choice, *arity, *n, *specialize)
        }
    }
}

/// Runs a command on manifest source text. `source` is ignored by commands
/// that take no input.
pub fn execute(cli: &Cli, source: &str, env: Option<&str>) -> Document {
    let start = Instant::now();
    let command = &cli.command;
    let parsed = dsl::parse(source);
    let canonical = parsed.as_ref().map(dsl::serialize).unwrap_or_else(|_| source.to_string());
    let prepared: CliResult<(Manifest, Window)> = parsed.map_err(CliError::from).and_then(|m| {
        let w = resolve_window(cli, env, &m)?;
        Ok((m, w))
    });
    let window = prepared.as_ref().map(|(_, w)| *w).unwrap_or_default();
    let digest = output::digest(&[command.name(), &command.parameters(), &canonical, &format!("{window:?}")]);
    let result = prepared.and_then(|(m, w)| {
        let block = command.input().and_then(|i| i.block.as_deref());
        dispatch(command, &Context { manifest: &m, window: w, block })
    });
    let mut doc = output::document(command.name(), digest, window, result);
    if cli.timings {
        doc.timings = Some(Timings { elapsed_ms: start.elapsed().as_millis() });
    }
    doc
}

/// Parses arguments, reads the input, runs, prints; returns the exit code.
pub fn main_with(cli: Cli) -> i32 {
    let env = std::env::var(WINDOW_ENV).ok();
    let source = match cli.command.input() {
        Some(input) => match read_source(input) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        None => String::new(),
    };
    let doc = execute(&cli, &source, env.as_deref());
    if cli.json {
        print!("{}", output::to_json(&doc));
    } else {
        print!("{}", output::to_text(&doc));
    }
    doc.exit_code
}
