//! `sts-veblen`: catalog access, classification runs, published-count
//! verification and exports for Steiner triple systems with Veblen points.

mod source;
mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use steiner_veblen::automorphism::{automorphism_group_unbounded, format_cycles};
use steiner_veblen::catalog;
use steiner_veblen::extension::{
    classify, extension_sts, kernel_first_labeling, quotient_automorphisms, ClassificationReport,
    ClassifyOptions, ExtensionSpec,
};
use steiner_veblen::factor::{fundamental_pairs, kernel_coords, CoboundarySpace, Code};
use steiner_veblen::format::{
    default_column_width, representative_dump, to_columns, to_json, to_text,
};
use steiner_veblen::pasch::{find_pasch_configurations, pasch_switch, PaschConfiguration};
use steiner_veblen::sts::max_veblen_count;
use steiner_veblen::{Error, SteinerTripleSystem};

use source::Catalog;
use verify::{Suite, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "sts-veblen",
    version,
    about = "Steiner triple systems with Veblen points"
)]
struct Cli {
    /// Replace a catalog entry by a system read from a file (NAME=PATH).
    #[arg(long = "catalog-override", global = true, value_name = "NAME=PATH")]
    catalog_override: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or show the shipped systems
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Classify extensions of a quotient with a given number of Veblen points
    Enumerate(EnumerateArgs),
    /// Recompute published counts and compare; exit 0 iff all match
    Verify(VerifyArgs),
    /// Write a system, or an extension built from a factor-system code
    Export(ExportArgs),
    /// Veblen points of a system
    Veblen {
        /// Catalog name or file
        source: String,
    },
    /// Automorphism group generators (cycle notation) and order
    Aut {
        /// Catalog name or file
        source: String,
        /// Allow exhaustive search on systems with more than 15 points
        #[arg(long)]
        long_running: bool,
    },
    /// Pasch configurations of a system, or the result of switching one
    Pasch {
        /// Catalog name or file
        source: String,
        /// Switch the configuration with labels x,a,b,c,d,t (triples xab,
        /// xcd, tac, tbd) and print the new system
        #[arg(long, value_name = "X,A,B,C,D,T")]
        switch: Option<String>,
        #[arg(long, value_enum, default_value_t = SystemFormat::Text)]
        format: SystemFormat,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Names, sizes and Veblen counts
    List,
    /// Print one system
    Show {
        name: String,
        #[arg(long, value_enum, default_value_t = ShowFormat::Table)]
        format: ShowFormat,
        /// Columns per block in column layout
        #[arg(long)]
        width: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShowFormat {
    Table,
    Json,
    /// Three rows per block, one triple per column
    #[value(name = "paper-columns")]
    Columns,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemFormat {
    Text,
    Json,
    /// Three rows per block, one triple per column
    #[value(name = "paper-columns")]
    Columns,
    /// Factor-system values on the fundamental pairs (with --code only)
    Assignment,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Labeling {
    /// Element `(P, x)` is point `2^t·P + x - 1`
    Linear,
    /// Kernel points first, then `(P_i, 0)`, then `(P_i, 1)`, ...
    KernelFirst,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Quotient: catalog name or file
    #[arg(long)]
    quotient: String,
    /// Kernel dimension
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Required Veblen count of the extensions (must be 2^t - 1)
    #[arg(long)]
    veblen: Option<usize>,
    /// Coset representatives per streamed block
    #[arg(long, default_value_t = 1 << 16)]
    block_size: usize,
    /// Worker threads for the orbit and verification phases
    #[arg(long, env = "STS_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Accept runs with t·b above 26 bits
    #[arg(long)]
    long_running: bool,
    /// Resumable checkpoint file for the orbit phase
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Cosets visited between checkpoint writes
    #[arg(long, default_value_t = 1 << 22)]
    checkpoint_every: u64,
    /// Stop after this many cosets are visited (checkpoint tests)
    #[arg(long, hide = true, requires = "checkpoint")]
    halt_after: Option<u64>,
    /// Machine-readable report
    #[arg(long)]
    json: bool,
    /// With --json, include the triples of every surviving system
    #[arg(long, requires = "json")]
    with_triples: bool,
    /// Also write the surviving representative codes to this file
    #[arg(long)]
    dump: Option<PathBuf>,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Worker threads for the orbit and verification phases
    #[arg(long, env = "STS_WORKERS", default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    long_running: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Catalog name or file (omit when building from --code)
    source: Option<String>,
    /// Quotient for --code
    #[arg(long, requires = "code")]
    quotient: Option<String>,
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Factor-system code, decimal or 0x-prefixed hex
    #[arg(long, requires = "quotient", conflicts_with = "source")]
    code: Option<String>,
    #[arg(long, value_enum, default_value_t = SystemFormat::Text)]
    format: SystemFormat,
    #[arg(long, value_enum, default_value_t = Labeling::Linear)]
    labeling: Labeling,
    /// Columns per block in column layout
    #[arg(long)]
    width: Option<usize>,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    };
    // a closed pipe (`| head`) is not an error
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: writing output: {e}");
            ExitCode::FAILURE
        }
        _ => code,
    }
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode> {
    let cat = Catalog::with_overrides(&cli.catalog_override)?;
    match cli.command {
        Command::Catalog(CatalogCommand::List) => out.push_str(&catalog_list()?),
        Command::Catalog(CatalogCommand::Show {
            name,
            format,
            width,
        }) => out.push_str(&catalog_show(&cat, &name, format, width)?),
        Command::Enumerate(args) => enumerate(&cat, args, out)?,
        Command::Verify(args) => return verify(&cat, args, out),
        Command::Export(args) => export(&cat, args, out)?,
        Command::Veblen { source } => {
            let (_, s) = cat.resolve(&source)?;
            let pts = s.veblen_points();
            let list: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            writeln!(out, "v={} Veblen points: {}", s.v(), pts.len())?;
            writeln!(out, "points: {}", list.join(" "))?;
            if let Ok(bound) = max_veblen_count(s.v(), true) {
                writeln!(out, "bound for v={}: {bound}", s.v())?;
            }
        }
        Command::Aut {
            source,
            long_running,
        } => {
            let (name, s) = cat.resolve(&source)?;
            let (gens, order) = match quotient_automorphisms(&name, &s) {
                Ok(g) => g,
                Err(Error::SearchBudgetExceeded(..)) if long_running => {
                    let g = automorphism_group_unbounded(&s);
                    (g.generators, g.order)
                }
                Err(e @ Error::SearchBudgetExceeded(..)) => {
                    bail!("{e}; rerun with --long-running")
                }
                Err(e) => return Err(e.into()),
            };
            writeln!(out, "order: {order}")?;
            for g in gens {
                writeln!(out, "{}", format_cycles(g.perm()))?;
            }
        }
        Command::Pasch {
            source,
            switch,
            format,
        } => {
            let (_, s) = cat.resolve(&source)?;
            match switch {
                Some(labels) => {
                    let labels: Vec<usize> = labels
                        .split(',')
                        .map(|l| {
                            catalog::parse_label(l.trim())
                                .with_context(|| format!("bad label `{l}`"))
                        })
                        .collect::<Result<_>>()?;
                    let labels: [usize; 6] = labels
                        .try_into()
                        .map_err(|_| anyhow::anyhow!("--switch needs exactly six labels"))?;
                    let cfg = PaschConfiguration::new(&s, labels)?;
                    let switched = pasch_switch(&s, &cfg)?.canonical_order();
                    out.push_str(&render_system(&switched, format, None)?);
                }
                None => {
                    let found = find_pasch_configurations(&s);
                    writeln!(out, "Pasch configurations: {}", found.len())?;
                    for c in found {
                        let [x, a, b, cc, d, t] = c.labels();
                        writeln!(out, "{x} {a} {b} {cc} {d} {t}")?;
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_list() -> Result<String> {
    let mut out = format!(
        "{:<18}{:>4}{:>6}{:>8}  {}\n",
        "name", "v", "b", "Veblen", "provenance"
    );
    for name in catalog::names() {
        let e = catalog::get(name)?;
        let veblen = e.known_veblen_count.map_or_else(
            || e.system.veblen_points().len().to_string(),
            |k| k.to_string(),
        );
        writeln!(
            out,
            "{:<18}{:>4}{:>6}{:>8}  {}",
            e.name,
            e.system.v(),
            e.system.b(),
            veblen,
            e.provenance
        )?;
    }
    Ok(out)
}

fn catalog_show(
    cat: &Catalog,
    name: &str,
    format: ShowFormat,
    width: Option<usize>,
) -> Result<String> {
    let entry = catalog::get(name)?;
    let s = cat.system(name)?;
    Ok(match format {
        ShowFormat::Text => to_text(&s),
        ShowFormat::Columns => to_columns(&s, width.unwrap_or_else(|| default_column_width(&s))),
        ShowFormat::Json => {
            let mut v = serde_json::to_value(&entry)?;
            v["v"] = s.v().into();
            v["triples"] = serde_json::to_value(s.source_triples())?;
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        ShowFormat::Table => {
            let mut out = String::new();
            writeln!(out, "name        {}", entry.name)?;
            writeln!(out, "provenance  {}", entry.provenance)?;
            writeln!(out, "v           {}", s.v())?;
            writeln!(out, "triples     {}", s.b())?;
            let pts: Vec<String> = s.veblen_points().iter().map(|p| p.to_string()).collect();
            writeln!(out, "Veblen      {} [{}]", pts.len(), pts.join(" "))?;
            writeln!(out, "Pasch       {}", find_pasch_configurations(&s).len())?;
            out.push('\n');
            out.push_str(&to_columns(
                &s,
                width.unwrap_or_else(|| default_column_width(&s)),
            ));
            out
        }
    })
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut String) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn enumerate(cat: &Catalog, args: EnumerateArgs, out: &mut String) -> Result<()> {
    let (name, q) = cat.resolve(&args.quotient)?;
    if args.t == 0 || args.t > 8 {
        bail!("--t must be between 1 and 8");
    }
    let target = args.veblen.unwrap_or((1 << args.t) - 1);
    let opts = ClassifyOptions {
        long_running: args.long_running,
        workers: args.workers,
        block_size: args.block_size,
        checkpoint: args.checkpoint.clone(),
        checkpoint_every: args.checkpoint_every,
        halt_after: args.halt_after,
        ..Default::default()
    };
    let label = if name.is_empty() {
        args.quotient.clone()
    } else {
        name.clone()
    };
    let report = classify(&q, &name, args.t, target, &opts)?;

    if let Some(path) = &args.dump {
        let space = CoboundarySpace::new(&q, args.t)?;
        let codes: Vec<Code> = report
            .representatives
            .iter()
            .filter(|r| r.survivor)
            .map(|r| r.code)
            .collect();
        std::fs::write(path, representative_dump(&space, &codes, true))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let text = if args.json {
        let mut v = serde_json::to_value(&report)?;
        v["name"] = label.clone().into();
        if args.with_triples {
            let systems = report
                .representatives
                .iter()
                .filter(|r| r.survivor)
                .map(|r| {
                    let s = extension_sts(&ExtensionSpec::from_code(q.clone(), args.t, r.code)?)?;
                    Ok(serde_json::json!({ "code": r.code, "triples": s.source_triples() }))
                })
                .collect::<Result<Vec<_>>>()?;
            v["systems"] = systems.into();
        }
        format!("{}\n", serde_json::to_string_pretty(&v)?)
    } else {
        report_table(&label, &q, &report)?
    };
    emit(&text, args.output.as_ref(), out)
}

fn report_table(label: &str, q: &SteinerTripleSystem, r: &ClassificationReport) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "quotient         {label} (v={}, b={})", q.v(), q.b())?;
    writeln!(out, "kernel           GF(2)^{}", r.t)?;
    writeln!(out, "target Veblen    {}", r.target_veblen)?;
    writeln!(out, "factor systems   {}", r.ext_count)?;
    writeln!(
        out,
        "|B²|             {} (dim {})",
        1u128 << r.b2_dim,
        r.b2_dim
    )?;
    writeln!(out, "cosets           {}", r.coset_count)?;
    writeln!(out, "group order      {}", r.group_order)?;
    writeln!(out, "orbits           {}", r.orbit_count)?;
    writeln!(out, "classes          {}", r.exact_k_survivors)?;
    out.push('\n');
    writeln!(
        out,
        "{:<36} {:>12} {:>7}  kept",
        "representative", "orbit size", "Veblen"
    )?;
    for rep in &r.representatives {
        let veblen = rep.veblen_count.map_or("-".to_string(), |k| k.to_string());
        writeln!(
            out,
            "{:<36} {:>12} {:>7}  {}",
            format!("{:#x}", rep.code),
            rep.orbit_size,
            veblen,
            if rep.survivor { "yes" } else { "no" }
        )?;
    }
    Ok(out)
}

fn verify(cat: &Catalog, args: VerifyArgs, out: &mut String) -> Result<ExitCode> {
    let checks = verify::run(
        args.suite,
        cat,
        &VerifyOptions {
            workers: args.workers,
            long_running: args.long_running,
        },
    )?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_code(s: &str) -> Result<Code> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => Code::from_str_radix(h, 16),
        None => s.parse(),
    };
    parsed.with_context(|| format!("bad code `{s}`"))
}

fn render_system(
    s: &SteinerTripleSystem,
    format: SystemFormat,
    width: Option<usize>,
) -> Result<String> {
    Ok(match format {
        SystemFormat::Text => to_text(s),
        SystemFormat::Json => format!("{}\n", to_json(s)),
        SystemFormat::Columns => to_columns(s, width.unwrap_or_else(|| default_column_width(s))),
        SystemFormat::Assignment => bail!("--format assignment needs --code and --quotient"),
    })
}

fn export(cat: &Catalog, args: ExportArgs, out: &mut String) -> Result<()> {
    let text = match (&args.source, &args.code) {
        (Some(source), None) => {
            if args.labeling == Labeling::KernelFirst {
                bail!("--labeling kernel-first applies to extensions built with --code");
            }
            let (_, s) = cat.resolve(source)?;
            render_system(&s, args.format, args.width)?
        }
        (None, Some(code)) => {
            let qname = args
                .quotient
                .as_deref()
                .context("--code needs --quotient")?;
            let (_, q) = cat.resolve(qname)?;
            let spec = ExtensionSpec::from_code(q.clone(), args.t, parse_code(code)?)?;
            if args.format == SystemFormat::Assignment {
                assignment(&q, &spec)
            } else {
                let mut s = extension_sts(&spec)?.canonical_order();
                if args.labeling == Labeling::KernelFirst {
                    s = s
                        .relabel(&kernel_first_labeling(q.v(), args.t))?
                        .canonical_order();
                }
                render_system(&s, args.format, args.width)?
            }
        }
        _ => bail!("give either a source system or --quotient with --code"),
    };
    emit(&text, args.output.as_ref(), out)
}

/// One line per triple in canonical order: index, triple, fundamental pair
/// and the value there as kernel coordinates.
fn assignment(q: &SteinerTripleSystem, spec: &ExtensionSpec) -> String {
    let mut out = format!("# t={} b={} code={}\n", spec.t, q.b(), spec.fs.code);
    let pairs = fundamental_pairs(q).pairs;
    for (i, (tr, value)) in q.triples().iter().zip(spec.fs.decode()).enumerate() {
        let coords: String = kernel_coords(value, spec.t)
            .iter()
            .map(|c| c.to_string())
            .collect();
        let [a, b] = pairs[i];
        writeln!(
            out,
            "{i:>3}  {{{},{},{}}}  f({a},{b}) = {coords}",
            tr[0], tr[1], tr[2]
        )
        .unwrap();
    }
    out
}
