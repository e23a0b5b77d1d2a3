//! Input formats: presentation files (or bundled names), generator lists in
//! cycle notation, 1-based line lists, and fiducial vectors as JSON.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use fpgeom_core::fpgroup::{parse_presentation_file, Presentation};
use fpgeom_core::geometry::IncidenceGeometry;
use fpgeom_core::mic::Fiducial;
use fpgeom_core::num_complex::Complex64;
use fpgeom_core::perm::Permutation;
use fpgeom_core::permgrp::PermutationGroup;

pub const SIGMA257: &str = include_str!("../data/sigma257.fp");
pub const WBAR: &str = include_str!("../data/wbar.fp");
pub const Q: &str = include_str!("../data/q.fp");
pub const GR28_GENERATORS: &str = include_str!("../data/gr28.perm");
pub const GR28_LINES: &str = include_str!("../data/gr28.lines");

/// Bundled presentation text by short name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "sigma257" => Some(SIGMA257),
        "wbar" => Some(WBAR),
        "q" => Some(Q),
        _ => None,
    }
}

/// Raised for malformed input; the binary maps it to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Reads a presentation from a file path, a bundled name, or inline
/// `gens | relators` text, tried in that order.
pub fn load_presentation(source: &str) -> Result<(String, Presentation)> {
    let text = if Path::new(source).exists() {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    } else if let Some(t) = bundled(source) {
        t.to_string()
    } else if source.contains('|') {
        source.to_string()
    } else {
        return Err(InputError(format!("no presentation file or bundled name `{source}`")).into());
    };
    let p = parse_presentation_file(&text).map_err(|e| InputError(format!("{source}: {e}")))?;
    Ok((p.render(), p))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// One permutation per non-comment line; the degree is the largest point
/// mentioned unless given.
pub fn parse_generators(text: &str, degree: Option<usize>) -> Result<PermutationGroup> {
    let rows: Vec<&str> = content_lines(text).collect();
    let d = degree.unwrap_or_else(|| rows.iter().map(|r| Permutation::max_point_in(r)).max().unwrap_or(1).max(1));
    let gens = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Permutation::parse_cycles(r, d).map_err(|e| InputError(format!("generator {}: {e}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    PermutationGroup::new(d, gens).map_err(|e| anyhow!(InputError(format!("{e:?}"))))
}

pub fn load_generators(source: &str, degree: Option<usize>) -> Result<PermutationGroup> {
    let text = if source == "gr28" && !Path::new(source).exists() {
        GR28_GENERATORS.to_string()
    } else {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    parse_generators(&text, degree)
}

/// Lines as rows of 1-based points separated by spaces or commas, in file order.
pub fn parse_lines(text: &str) -> Result<Vec<Vec<usize>>> {
    content_lines(text)
        .enumerate()
        .map(|(i, row)| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(n - 1),
                    _ => Err(anyhow!(InputError(format!("line {}: bad point `{s}`", i + 1)))),
                })
                .collect()
        })
        .collect()
}

pub fn geometry_from_lines(points: usize, lines: &[Vec<usize>]) -> Result<IncidenceGeometry> {
    IncidenceGeometry::from_lines(points, lines.to_vec()).map_err(|e| anyhow!(InputError(e.to_string())))
}

/// `[[re, im], ...]`, normalized on load.
pub fn parse_fiducial(json: &str) -> Result<Fiducial> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(json).map_err(|e| InputError(format!("fiducial: {e}")))?;
    Fiducial::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .map_err(|e| anyhow!(InputError(e.to_string())))
}

pub fn fiducial_to_json(f: &Fiducial) -> Vec<[f64; 2]> {
    f.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}
