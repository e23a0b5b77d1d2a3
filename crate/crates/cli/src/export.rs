//! Report rendering and export: JSON, a plain-text table, DOT per geometry,
//! and TSV mirroring the printed tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use fpgeom_core::geometry::{GeometryName, IncidenceGeometry};

use crate::pipeline::{PipelineOutcome, PipelineReport, SubgroupRow};

#[derive(Serialize)]
struct GeometryJson<'a> {
    points: usize,
    /// 1-based points.
    lines: Vec<Vec<usize>>,
    contextual: Option<&'a [bool]>,
}

pub fn geometry_json(g: &IncidenceGeometry) -> serde_json::Value {
    serde_json::to_value(GeometryJson {
        points: g.point_count(),
        lines: g.lines().iter().map(|l| l.iter().map(|p| p + 1).collect()).collect(),
        contextual: g.contextual(),
    })
    .expect("plain data serializes")
}

pub fn report_json(report: &PipelineReport) -> String {
    serde_json::to_string_pretty(report).expect("plain data serializes")
}

/// Points as nodes; a size-2 line is a plain edge, a longer line a labelled
/// chain of edges through its points. Contextual lines are red.
pub fn geometry_dot(name: &str, g: &IncidenceGeometry) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{name}\" {{");
    let _ = writeln!(s, "  node [shape=circle];");
    for p in 0..g.point_count() {
        let _ = writeln!(s, "  p{} [label=\"{}\"];", p + 1, p + 1);
    }
    let contextual = g.contextual();
    for (i, line) in g.lines().iter().enumerate() {
        let color = match contextual {
            Some(c) if c[i] => "red",
            _ => "black",
        };
        let label = if line.len() > 2 { format!(", label=\"L{}\"", i + 1) } else { String::new() };
        for w in line.windows(2) {
            let _ = writeln!(s, "  p{} -- p{} [color={color}{label}];", w[0] + 1, w[1] + 1);
        }
    }
    s.push_str("}\n");
    s
}

fn mic_cell(row: &SubgroupRow) -> (String, String) {
    match &row.mic {
        None => (String::new(), String::new()),
        Some(m) if !m.searched => ("unchecked".into(), String::new()),
        Some(m) if m.found() => ("yes".into(), m.best.as_ref().map(|b| b.pp.to_string()).unwrap_or_default()),
        Some(_) => ("no".into(), String::new()),
    }
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|b| if b { "yes" } else { "no" }.to_string()).unwrap_or_else(|| "-".into())
}

pub const TSV_HEADER: &str = "d\tclass\tP\torder\tgeometry\tcontextual\taxiom_i\taxiom_ii\tMIC\tpp";

pub fn table_tsv(report: &PipelineReport) -> String {
    let mut s = String::from(TSV_HEADER);
    s.push('\n');
    for r in &report.rows {
        let (mic, pp) = mic_cell(r);
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.index,
            r.class_id.map(|c| c.to_string()).unwrap_or_default(),
            r.group,
            r.order,
            r.geometry.join(", "),
            opt_bool(r.contextual),
            opt_bool(r.axiom_i),
            opt_bool(Some(r.axiom_ii)),
            mic,
            pp
        );
    }
    s
}

/// `d` header row and `eta` counts row.
pub fn eta_tsv(report: &PipelineReport) -> String {
    let ds: Vec<String> = (1..=report.eta.len()).map(|d| d.to_string()).collect();
    let counts: Vec<String> = report.eta.iter().map(|c| c.to_string()).collect();
    format!("d\t{}\neta\t{}\n", ds.join("\t"), counts.join("\t"))
}

/// Human-readable table; rows with only trivial geometry are kept.
pub fn report_text(report: &PipelineReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "presentation: {}", report.presentation);
    let _ = writeln!(s, "eta (d=1..{}): {:?}{}", report.max_index, report.eta, if report.complete { "" } else { "  [INCOMPLETE]" });
    let _ = writeln!(s, "{:>3} {:>5}  {:<28} {:>16}  {:<26} {:<5} {:<4} {:<4} {:<9}", "d", "class", "P", "order", "geometry", "ctx", "(i)", "(ii)", "MIC");
    for r in &report.rows {
        let (mic, pp) = mic_cell(r);
        let mic = if pp.is_empty() { mic } else { format!("{mic} pp={pp}") };
        let _ = writeln!(
            s,
            "{:>3} {:>5}  {:<28} {:>16}  {:<26} {:<5} {:<4} {:<4} {:<9}",
            r.index,
            r.class_id.map(|c| c.to_string()).unwrap_or_default(),
            r.group,
            r.order,
            r.geometry.join(", "),
            opt_bool(r.contextual),
            opt_bool(r.axiom_i),
            opt_bool(Some(r.axiom_ii)),
            mic
        );
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
    Tsv,
    All,
}

/// Writes report.json / per-geometry .dot files / table.tsv + eta.tsv into `dir`.
pub fn export(outcome: &PipelineOutcome, dir: &Path, format: ExportFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let mut put = |name: String, body: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
        Ok(())
    };
    if matches!(format, ExportFormat::Json | ExportFormat::All) {
        put("report.json".into(), report_json(&outcome.report))?;
    }
    if matches!(format, ExportFormat::Dot | ExportFormat::All) {
        for a in &outcome.analyses {
            if a.names.iter().all(|n| *n == GeometryName::Unknown) {
                continue;
            }
            let label = a.names.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" + ");
            let file = format!("d{}_class{}.dot", a.row.index, a.row.class_id.unwrap_or(0));
            put(file, geometry_dot(&label, &a.geometry))?;
        }
    }
    if matches!(format, ExportFormat::Tsv | ExportFormat::All) {
        put("table.tsv".into(), table_tsv(&outcome.report))?;
        put("eta.tsv".into(), eta_tsv(&outcome.report))?;
    }
    Ok(written)
}
