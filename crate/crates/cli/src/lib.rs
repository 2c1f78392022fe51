//! The `quadop` command line.
//!
//! Exit codes: 0 success, 1 bad input (usage, parse, unknown operad, spec
//! file), 2 internal invariant violation.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use quadop_core::catalog::{catalog, catalog_names, replicate, resolve};
use quadop_core::dong::dong_verdict;
use quadop_core::koszul::dual_operad;
use quadop_core::locality::{locality_sweep, LocalityParams};
use quadop_core::manin::{
    black_direct, black_product, black_recipe, split, split_recipe, white_product, white_recipe, ProductKind,
    Replication, SplitMode,
};
use quadop_core::operad::QuadOperad;
use quadop_core::par::Exec;
use quadop_core::selfcheck::run_selfcheck;
use quadop_core::spec_file::load_spec_file;
use quadop_core::{Error, Result};

use report::*;

#[derive(Debug, Parser)]
#[command(name = "quadop", version, about = "Binary quadratic operads: Koszul duals, Manin products and the Dong criterion")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Disable data-parallel batches.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List catalog operads.
    Catalog,
    /// Show an operad given by catalog expression or spec file.
    Show { operad: String },
    /// Koszul dual.
    Dual { operad: String },
    /// Dong verdict with kernel witnesses.
    Dong { operad: String },
    /// Manin products, replication and splitting.
    Product(ProductArgs),
    /// Windowed locality search for every pair of operations.
    Locality(LocalityArgs),
    /// Run the invariant suites.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct KindFlags {
    #[arg(long)]
    white: bool,
    #[arg(long)]
    black: bool,
    #[arg(long)]
    di: bool,
    #[arg(long)]
    tri: bool,
    #[arg(long)]
    pre: bool,
    #[arg(long)]
    post: bool,
}

#[derive(Debug, Args)]
struct ProductArgs {
    #[command(flatten)]
    kind: KindFlags,
    #[arg(required = true, num_args = 1..=2)]
    operands: Vec<String>,
}

#[derive(Debug, Args)]
struct LocalityArgs {
    operad: String,
    /// n-product order.
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long = "n-max", default_value_t = 4)]
    n_max: usize,
    /// Index window radius K.
    #[arg(long, default_value_t = 6)]
    window: i64,
    /// Anchors `n,m`.
    #[arg(long, default_value = "0,0", value_parser = parse_anchor, allow_hyphen_values = true)]
    anchor: (i64, i64),
}

fn parse_anchor(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,m")?;
    let n = a.trim().parse().map_err(|e| format!("{e}"))?;
    let m = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((n, m))
}

/// A spec-file path when one exists, otherwise a catalog expression.
pub fn load_operad(reference: &str) -> Result<Arc<QuadOperad>> {
    let path = Path::new(reference);
    if path.is_file() {
        return load_spec_file(path).map(Arc::new);
    }
    if reference.ends_with(".json") {
        return Err(Error::SpecFile(format!("{reference}: no such file")));
    }
    resolve(reference)
}

fn product_kind(f: &KindFlags) -> ProductKind {
    match (f.white, f.black, f.di, f.tri, f.pre) {
        (true, ..) => ProductKind::White,
        (_, true, ..) => ProductKind::Black,
        (_, _, true, ..) => ProductKind::Di,
        (_, _, _, true, _) => ProductKind::Tri,
        (.., true) => ProductKind::SplitPre,
        _ => ProductKind::SplitPost,
    }
}

fn product(args: &ProductArgs) -> Result<Report> {
    let kind = product_kind(&args.kind);
    let binary = matches!(kind, ProductKind::White | ProductKind::Black);
    let want = if binary { 2 } else { 1 };
    if args.operands.len() != want {
        return Err(Error::InvalidArgument(format!(
            "--{} takes {want} operand(s), got {}",
            kind.label(),
            args.operands.len()
        )));
    }
    let ops = args.operands.iter().map(|o| load_operad(o)).collect::<Result<Vec<_>>>()?;
    let (result, recipe, cross_check) = match kind {
        ProductKind::White => (white_product(&ops[0], &ops[1])?, white_recipe(&ops[0], &ops[1]), None),
        ProductKind::Black => {
            let b = black_product(&ops[0], &ops[1])?;
            let direct = black_direct(&ops[0], &ops[1])?;
            if direct.relations() != b.relations() || direct.gens().swap() != b.gens().swap() {
                return Err(Error::Invariant(format!(
                    "black({}, {}): dual route and direct route disagree",
                    ops[0].name(),
                    ops[1].name()
                )));
            }
            (b, black_recipe(&ops[0], &ops[1]), Some("black_direct: equal".to_string()))
        }
        ProductKind::Di | ProductKind::Tri => {
            let (mode, partner) =
                if kind == ProductKind::Di { (Replication::Di, "Perm") } else { (Replication::Tri, "ComTriAs") };
            let r = replicate(&ops[0], mode)?;
            let mut recipe = white_recipe(&*catalog(partner)?, &ops[0]);
            recipe.kind = kind;
            recipe.operands = vec![ops[0].name().to_string()];
            (r, recipe, None)
        }
        ProductKind::SplitPre | ProductKind::SplitPost => {
            let mode = if kind == ProductKind::SplitPre { SplitMode::Pre } else { SplitMode::Post };
            (split(&ops[0], mode)?, split_recipe(&ops[0], mode), None)
        }
    };
    let mut report = Report::new(summarize(&result, false)?);
    report.product = Some(product_section(&recipe, &result, cross_check)?);
    Ok(report)
}

enum Output {
    Bytes(Vec<u8>),
    /// Output plus a failure exit code.
    Failed(Vec<u8>, i32),
}

fn execute(cli: &Cli) -> Result<Output> {
    let format = if cli.json { Format::Json } else { Format::Text };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let report = match &cli.command {
        Command::Catalog => {
            let names = catalog_names();
            let entries = exec.map(&names, |n| -> Result<CatalogEntry> {
                let p = catalog(n)?;
                let s = summarize(&p, false)?;
                Ok(CatalogEntry { name: s.name, provenance: s.provenance, dims: s.dims })
            });
            let report = CatalogReport {
                schema_version: SCHEMA_VERSION,
                catalog: entries.into_iter().collect::<Result<Vec<_>>>()?,
            };
            return Ok(Output::Bytes(emit_catalog(&report, format)));
        }
        Command::Selfcheck { seed } => {
            let checks = run_selfcheck(*seed, exec);
            let passed = checks.iter().all(|c| c.passed);
            let report = SelfcheckReport { schema_version: SCHEMA_VERSION, seed: *seed, passed, checks };
            let bytes = emit_selfcheck(&report, format);
            return Ok(if passed { Output::Bytes(bytes) } else { Output::Failed(bytes, 2) });
        }
        Command::Show { operad } => Report::new(summarize(&*load_operad(operad)?, true)?),
        Command::Dual { operad } => {
            let p = load_operad(operad)?;
            let dual = dual_operad(&p)?;
            let mut r = Report::new(summarize(&dual, false)?);
            r.dual = Some(DualSection { of: p.name().to_string(), relations: relation_strings(&dual) });
            r
        }
        Command::Dong { operad } => {
            let p = load_operad(operad)?;
            let mut r = Report::new(summarize(&p, false)?);
            r.dong = Some(dong_section(&dong_verdict(&p)?));
            r
        }
        Command::Product(args) => product(args)?,
        Command::Locality(args) => {
            let p = load_operad(&args.operad)?;
            let params =
                LocalityParams { window: args.window, n_max: args.n_max, k: args.k, n: args.anchor.0, m: args.anchor.1 };
            let lab = locality_sweep(&p, params, exec)?;
            let mut r = Report::new(summarize(&p, false)?);
            r.locality = Some(LocalitySection {
                params: lab.params,
                space_dim: lab.space_dim,
                pairs: lab.pairs,
                all_local: lab.all_local,
                note: lab.note,
            });
            r
        }
    };
    Ok(Output::Bytes(emit(&report, format)))
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let (bytes, code) = match execute(&cli) {
        Ok(Output::Bytes(b)) => (b, 0),
        Ok(Output::Failed(b, code)) => (b, code),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
        return 1;
    }
    code
}
