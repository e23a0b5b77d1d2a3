use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fpgeom::export::{self, geometry_json, report_json, report_text, ExportFormat};
use fpgeom::inputs::{self, InputError};
use fpgeom::pipeline::{self, MicReportJson, PipelineOptions, TableJson};
use fpgeom_core::geometry::isomorphic;
use fpgeom_core::lowindex::eta_sequence;
use fpgeom_core::mic::{find_fiducials, FiducialBudget, PauliGroup, RANK_TOLERANCE};

#[derive(Parser)]
#[command(name = "fpgeom", version, about = "Low-index subgroups, coset geometries and MIC checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pauli {
    Wh,
    Tensor,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Json,
    Dot,
    Tsv,
    All,
}

#[derive(Args)]
struct Budgets {
    /// Largest subgroup index to enumerate.
    #[arg(short = 'n', long, env = "FPGEOM_MAX_INDEX", default_value_t = 10)]
    max_index: usize,
    /// Coset limit for Todd–Coxeter runs.
    #[arg(long, env = "FPGEOM_MAX_COSETS", default_value_t = fpgeom_core::coset::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Node limit for the low-index search.
    #[arg(long, env = "FPGEOM_NODE_BUDGET")]
    node_budget: Option<u64>,
    /// Wall-clock limit for the low-index search, in seconds.
    #[arg(long, env = "FPGEOM_TIME_BUDGET")]
    time_budget: Option<f64>,
}

#[derive(Args)]
struct MicArgs {
    /// Search each permutation group for MIC fiducials.
    #[arg(long, env = "FPGEOM_MIC")]
    mic: bool,
    /// Absolute tolerance for distinct overlap values.
    #[arg(long, env = "FPGEOM_TOLERANCE", default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long, env = "FPGEOM_PAULI", value_enum, default_value = "wh")]
    pauli: Pauli,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of subgroups of bounded index and the eta sequence.
    Subgroups {
        /// Presentation file, bundled name (sigma257, wbar, q), or inline "a,b | relators".
        presentation: String,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long, env = "FPGEOM_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
    /// Full pipeline: groups, geometries, contextuality, optional MIC search.
    Analyze {
        presentation: String,
        #[command(flatten)]
        budgets: Budgets,
        #[command(flatten)]
        mic: MicArgs,
        #[arg(long, env = "FPGEOM_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyze a permutation group given by generators in cycle notation.
    Permgroup {
        /// One permutation per line; `gr28` names the bundled A_8 generators.
        generators: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Compare the geometry with a list of 1-based lines.
        #[arg(long)]
        lines: Option<PathBuf>,
        #[command(flatten)]
        mic: MicArgs,
        #[arg(long, env = "FPGEOM_FORMAT", value_enum, default_value = "text")]
        format: Format,
    },
    /// MIC/SIC report for a fiducial given as JSON [[re, im], ...].
    Mic {
        fiducial: Option<PathBuf>,
        /// Search a permutation group (generator file) instead.
        #[arg(long, conflicts_with = "fiducial")]
        search: Option<String>,
        #[arg(long, env = "FPGEOM_TOLERANCE", default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, env = "FPGEOM_PAULI", value_enum, default_value = "wh")]
        pauli: Pauli,
    },
    /// Run the pipeline and write report.json, DOT files and TSV tables.
    Export {
        presentation: String,
        #[arg(short, long)]
        out: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
        #[command(flatten)]
        mic: MicArgs,
        #[arg(long, env = "FPGEOM_FORMAT", value_enum, default_value = "all")]
        format: ExportKind,
    },
}

/// Exit code 3: a budget ran out; partial output was still written.
struct Exhausted;

fn options(budgets: &Budgets, mic: Option<&MicArgs>) -> PipelineOptions {
    let mut o = PipelineOptions {
        max_index: budgets.max_index,
        max_cosets: budgets.max_cosets,
        node_budget: budgets.node_budget,
        time_budget: budgets.time_budget.map(Duration::from_secs_f64),
        ..Default::default()
    };
    if let Some(m) = mic {
        o.mic = m.mic;
        o.tolerance = m.tolerance;
        o.pauli = pauli(m.pauli);
    }
    o
}

fn pauli(p: Pauli) -> PauliGroup {
    match p {
        Pauli::Wh => PauliGroup::WeylHeisenberg,
        Pauli::Tensor => PauliGroup::Tensor,
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
}

fn run(cli: Cli) -> Result<Option<Exhausted>> {
    match cli.command {
        Command::Subgroups { presentation, budgets, format } => {
            let (text, p) = inputs::load_presentation(&presentation)?;
            let opts = options(&budgets, None);
            let (records, complete) = pipeline::subgroups(&p, &opts)?;
            let eta = eta_sequence(&records, opts.max_index).counts;
            match format {
                Format::Json => {
                    let subgroups: Vec<_> = records
                        .iter()
                        .map(|r| {
                            json!({
                                "index": r.index,
                                "class_id": r.class_id,
                                "generators": r.generators.iter().map(|w| w.render()).collect::<Vec<_>>(),
                                "table": TableJson::new(&r.table),
                            })
                        })
                        .collect();
                    print_json(&json!({
                        "presentation": text,
                        "max_index": opts.max_index,
                        "eta": eta,
                        "complete": complete,
                        "subgroups": subgroups,
                    }));
                }
                Format::Tsv => {
                    let ds: Vec<String> = (1..=eta.len()).map(|d| d.to_string()).collect();
                    let cs: Vec<String> = eta.iter().map(|c| c.to_string()).collect();
                    println!("d\t{}\neta\t{}", ds.join("\t"), cs.join("\t"));
                }
                Format::Text => {
                    println!("presentation: {text}");
                    println!("eta (d=1..{}): {:?}{}", opts.max_index, eta, if complete { "" } else { "  [INCOMPLETE]" });
                    for r in &records {
                        let gens: Vec<String> = r.generators.iter().map(|w| w.render()).collect();
                        println!("{:>3} {:>5}  H = <{}>", r.index, r.class_id, gens.join(", "));
                    }
                }
            }
            Ok((!complete).then_some(Exhausted))
        }
        Command::Analyze { presentation, budgets, mic, format } => {
            let (_, p) = inputs::load_presentation(&presentation)?;
            let out = pipeline::run_pipeline(&p, &options(&budgets, Some(&mic)))?;
            match format {
                Format::Json => println!("{}", report_json(&out.report)),
                Format::Tsv => print!("{}", export::table_tsv(&out.report)),
                Format::Text => print!("{}", report_text(&out.report)),
            }
            Ok((!out.report.complete).then_some(Exhausted))
        }
        Command::Permgroup { generators, degree, lines, mic, format } => {
            let group = inputs::load_generators(&generators, degree)?;
            let opts =
                PipelineOptions { mic: mic.mic, tolerance: mic.tolerance, pauli: pauli(mic.pauli), ..Default::default() };
            let a = pipeline::analyze_permgroup(&group, &opts)?;
            let matches_lines = match &lines {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let given = inputs::geometry_from_lines(group.degree(), &inputs::parse_lines(&text)?)?;
                    Some(isomorphic(&a.geometry.proper_part(), &given).is_some())
                }
                None => None,
            };
            match format {
                Format::Json => print_json(&json!({
                    "row": a.row,
                    "geometry": geometry_json(&a.geometry),
                    "matches_lines": matches_lines,
                })),
                _ => {
                    println!("degree {}  order {}  P = {}", a.row.index, a.row.order, a.row.group);
                    println!("geometry: {}  ({})", a.row.geometry.join(", "), a.geometry);
                    println!("axiom (ii): {}", if a.row.axiom_ii { "holds" } else { "fails" });
                    if let Some(f) = &a.row.filtration {
                        println!("filtration: {f:?}");
                    }
                    if let Some(m) = matches_lines {
                        println!("matches given lines: {m}");
                    }
                    if let Some(m) = &a.row.mic {
                        match &m.best {
                            Some(b) if b.is_mic => println!("MIC: yes, pp={} (rank {})", b.pp, b.gram_rank),
                            _ if !m.searched => println!("MIC: unchecked (group too large)"),
                            _ => println!("MIC: none found within budget"),
                        }
                    }
                }
            }
            Ok(None)
        }
        Command::Mic { fiducial, search, tolerance, pauli: p } => {
            let group_kind = pauli(p);
            if let Some(gens) = search {
                let group = inputs::load_generators(&gens, None)?;
                let s = find_fiducials(&group, group_kind, FiducialBudget::default())?;
                let reports: Vec<_> = s.candidates.iter().map(MicReportJson::new).collect();
                print_json(&json!({ "complete": s.complete, "candidates": reports }));
                return Ok((!s.complete).then_some(Exhausted));
            }
            let text = match fiducial {
                Some(path) => fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?,
                None => std::io::read_to_string(std::io::stdin())?,
            };
            let f = inputs::parse_fiducial(&text)?;
            let r = f.report_with(group_kind, RANK_TOLERANCE, tolerance)?;
            print_json(&json!({
                "dim": r.dim,
                "gram_rank": r.gram_rank,
                "pp": r.pp,
                "is_mic": r.is_mic,
                "is_sic": r.is_sic,
            }));
            Ok(None)
        }
        Command::Export { presentation, out, budgets, mic, format } => {
            let (_, p) = inputs::load_presentation(&presentation)?;
            let outcome = pipeline::run_pipeline(&p, &options(&budgets, Some(&mic)))?;
            let format = match format {
                ExportKind::Json => ExportFormat::Json,
                ExportKind::Dot => ExportFormat::Dot,
                ExportKind::Tsv => ExportFormat::Tsv,
                ExportKind::All => ExportFormat::All,
            };
            for path in export::export(&outcome, &out, format)? {
                println!("{}", path.display());
            }
            Ok((!outcome.report.complete).then_some(Exhausted))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Exhausted)) => {
            eprintln!("fpgeom: budget exhausted; output is partial");
            ExitCode::from(3)
        }
        Err(e) if e.downcast_ref::<InputError>().is_some() => {
            eprintln!("fpgeom: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("fpgeom: {e:#}");
            ExitCode::FAILURE
        }
    }
}
