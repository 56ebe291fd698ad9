//! `atlas`: census, cover and symmetry reports for the surfaces of a group.

mod cache;
mod document;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use atlas_core::action::{all_reports, render_summary, summarize, ActionKind, AutomorphismAction, Conjugation, ElementAction};
use atlas_core::complex::{census, Complex, ExportDocument};
use atlas_core::cover::{analyze_central_cover, analyze_cover, CoverOptions};
use atlas_core::golden::{diff_census, golden_table, parse_golden, write_census_csv};
use atlas_core::group::{automorphism_group, build_named_group, element::split_generators, BuildOptions, GroupFamily, GroupTable, DEFAULT_AUT_CAP};
use atlas_core::AtlasError;
use clap::{Parser, Subcommand, ValueEnum};

use crate::cache::Cache;
use crate::document::AtlasDocument;

#[derive(Parser)]
#[command(name = "atlas", version, about = "Surfaces built from finite groups")]
struct Cli {
    /// Worker threads for per-component work (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Do not read or write the census cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (default: $ATLAS_CACHE_DIR, $XDG_CACHE_HOME/atlas or ~/.cache/atlas).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Component census grouped by genus, faces, symbol, vertices and edges.
    Census {
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lifts of every component along `Γ → Γ/N`.
    Cover {
        group: String,
        /// Generators of the normal subgroup N, e.g. "(1 2)(3 4),(1 3)(2 4)".
        #[arg(long, conflicts_with = "kernel_center")]
        kernel: Option<String>,
        /// Use the center as N.
        #[arg(long)]
        kernel_center: bool,
        /// Require N to be central and run the central-extension checks
        /// (N defaults to the center).
        #[arg(long)]
        central: bool,
        /// Pick lift representatives at random with this seed.
        #[arg(long)]
        lift_seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetry of each component under conjugation (or all automorphisms).
    Actions {
        group: String,
        #[arg(long)]
        aut: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the census with a reference CSV (default: the bundled table).
    DiffGolden { group: String, file: Option<PathBuf> },
    /// Write one component as a self-contained JSON document.
    Export {
        group: String,
        #[arg(long)]
        component: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<AtlasError> for Failure {
    fn from(e: AtlasError) -> Self {
        let code = match &e {
            AtlasError::Violation(_) => 1,
            AtlasError::CapExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        AtlasError::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        AtlasError::from(e).into()
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let opts = BuildOptions::from_env()?;
    match &cli.command {
        Command::Census { group, format, out } => {
            let doc = census_document(cli, group, opts)?;
            let text = match format {
                Format::Text => doc.render_text(),
                Format::Csv => write_census_csv(&doc.census)?,
                Format::Json => json(&doc)?,
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Cover {
            group,
            kernel,
            kernel_center,
            central,
            lift_seed,
            format,
            out,
        } => {
            let g = build(group, opts)?;
            let n = match (kernel, *kernel_center || *central) {
                (Some(gens), _) => {
                    let gens = split_generators(gens)
                        .into_iter()
                        .map(|s| g.parse_element(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    g.subgroup_closure(&gens)
                }
                (None, true) => g.center(),
                (None, false) => return usage("cover needs --kernel, --kernel-center or --central"),
            };
            let options = CoverOptions { lift_seed: *lift_seed };
            let report = if *central { analyze_central_cover(&g, &n, options)? } else { analyze_cover(&g, &n, options)? };
            let text = match format {
                Format::Text => report.render_text(),
                Format::Json => json(&report)?,
                Format::Csv => return usage("cover supports text and json"),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Actions { group, aut, format, out } => {
            let g = build(group, opts)?;
            let complex = Complex::build(&g)?;
            warn_if_empty(&g, &complex);
            let auts;
            let action: Box<dyn ElementAction + '_> = if *aut {
                auts = automorphism_group(&g, DEFAULT_AUT_CAP)?;
                Box::new(AutomorphismAction::new(&g, &auts)?)
            } else {
                Box::new(Conjugation(&g))
            };
            let reports = all_reports(&complex, action.as_ref())?;
            let rows = summarize(&reports);
            let kind = if *aut { ActionKind::Automorphism } else { ActionKind::Conjugation };
            let text = match format {
                Format::Text => render_summary(g.label(), kind, &rows),
                Format::Json => {
                    let mut doc = AtlasDocument::new(
                        g.label().to_owned(),
                        g.order(),
                        complex.triangle_count(),
                        census(&reports.iter().map(|r| r.invariants).collect::<Vec<_>>()),
                    );
                    doc.reports = Some(serde_json::json!({ "kind": kind, "summary": rows, "components": reports }));
                    json(&doc)?
                }
                Format::Csv => return usage("actions supports text and json"),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::DiffGolden { group, file } => {
            let doc = census_document(cli, group, opts)?;
            let expected = match file {
                Some(path) => parse_golden(&std::fs::read_to_string(path)?)?,
                None => match golden_table(&doc.group) {
                    Some(rows) => rows,
                    None => return usage(&format!("no bundled reference table for {}", doc.group)),
                },
            };
            let diff = diff_census(&doc.census, &expected);
            let mut out = String::new();
            for d in &diff {
                let r = &d.row;
                out.push_str(&format!(
                    "mismatch: genus {} faces {} {} vertices {} edges {}: computed {}, expected {}\n",
                    r.genus,
                    r.faces,
                    r.symbol(),
                    r.vertices,
                    r.edges,
                    d.computed,
                    d.expected
                ));
            }
            let expected_total: u64 = expected.iter().map(|r| r.count).sum();
            if diff.is_empty() {
                out.push_str(&format!(
                    "identical: {} rows, {} components, {} distinct genera\n",
                    doc.census.len(),
                    doc.total_components,
                    doc.distinct_genera()
                ));
            } else {
                out.push_str(&format!(
                    "{} mismatched rows; {} components computed, {} expected\n",
                    diff.len(),
                    doc.total_components,
                    expected_total
                ));
            }
            emit(None, &out)?;
            Ok(if diff.is_empty() { 0 } else { 1 })
        }
        Command::Export { group, component, out } => {
            let g = build(group, opts)?;
            let complex = Complex::build(&g)?;
            if *component >= complex.component_count() {
                return Err(AtlasError::OutOfRange {
                    index: *component,
                    len: complex.component_count(),
                }
                .into());
            }
            let doc = ExportDocument::build(&complex, *component)?;
            emit(out.as_ref(), &json(&doc)?)?;
            Ok(0)
        }
    }
}

fn usage(message: &str) -> Outcome {
    Err(Failure {
        code: 2,
        message: message.to_owned(),
    })
}

fn build(spec: &str, opts: BuildOptions) -> Result<GroupTable, Failure> {
    let family: GroupFamily = spec.parse()?;
    Ok(build_named_group(&family, opts)?)
}

fn warn_if_empty(g: &GroupTable, complex: &Complex<'_>) {
    if complex.is_empty() {
        eprintln!("warning: {} is abelian; it has no noncommuting pairs and no surfaces", g.label());
    }
}

fn census_document(cli: &Cli, spec: &str, opts: BuildOptions) -> Result<AtlasDocument, Failure> {
    let family: GroupFamily = spec.parse()?;
    let canonical = family.to_string();
    let cache = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(Cache::default_dir).map(Cache::new) };
    let key = Cache::key("census", &canonical, opts.table_cap);
    if let Some(doc) = cache.as_ref().and_then(|c| c.load(&key)) {
        if doc.census.is_empty() {
            eprintln!("warning: {} is abelian; it has no noncommuting pairs and no surfaces", doc.group);
        }
        return Ok(doc);
    }
    let g = build_named_group(&family, opts)?;
    let complex = Complex::build(&g)?;
    warn_if_empty(&g, &complex);
    let doc = AtlasDocument::new(
        g.label().to_owned(),
        g.order(),
        complex.triangle_count(),
        census(&complex.all_invariants()?),
    );
    if let Some(c) = &cache {
        c.store(&key, &doc);
    }
    Ok(doc)
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
