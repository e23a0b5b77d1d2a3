//! Subgroups → permutation images → geometries (→ MIC search), one row per
//! conjugacy class of subgroups.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use fpgeom_core::coset::{CosetTable, DEFAULT_MAX_COSETS};
use fpgeom_core::fpgroup::Presentation;
use fpgeom_core::geometry::{
    binomial_filtration, build_geometry, contextuality, recognize_all, GeometryName, IncidenceGeometry,
};
use fpgeom_core::lowindex::{eta_sequence, low_index_subgroups_with_budget, LowIndexError, SearchBudget, SubgroupRecord};
use fpgeom_core::mic::{find_fiducials, FiducialBudget, FiducialReport, PauliGroup, RANK_TOLERANCE};
use fpgeom_core::permgrp::{perm_image, word_image, PermutationGroup};

use crate::inputs::fiducial_to_json;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub max_index: usize,
    pub mic: bool,
    pub max_cosets: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Absolute clustering tolerance for MIC overlap values.
    pub tolerance: f64,
    pub pauli: PauliGroup,
    pub fiducial_budget: FiducialBudget,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_index: 10,
            mic: false,
            max_cosets: DEFAULT_MAX_COSETS,
            node_budget: None,
            time_budget: None,
            tolerance: 1e-8,
            pauli: PauliGroup::WeylHeisenberg,
            fiducial_budget: FiducialBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableJson {
    pub index: usize,
    /// `action[g][i]`: 1-based image of coset `i+1` under generator `g`.
    pub action: Vec<Vec<usize>>,
    pub reps: Vec<String>,
}

impl TableJson {
    pub fn new(t: &CosetTable) -> Self {
        TableJson {
            index: t.index(),
            action: t.action().iter().map(|col| col.iter().map(|&c| c + 1).collect()).collect(),
            reps: t.representatives().iter().map(|w| w.render()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MicReportJson {
    pub dim: usize,
    pub gram_rank: usize,
    pub pp: usize,
    pub is_mic: bool,
    pub is_sic: bool,
    pub angle_set: Vec<f64>,
    pub fiducial: Vec<[f64; 2]>,
}

impl MicReportJson {
    pub fn new(r: &FiducialReport) -> Self {
        MicReportJson {
            dim: r.dim,
            gram_rank: r.gram_rank,
            pp: r.pp,
            is_mic: r.is_mic,
            is_sic: r.is_sic,
            angle_set: r.angle_set.clone(),
            fiducial: fiducial_to_json(&r.fiducial),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MicSummary {
    /// False when the group was too large to list its elements.
    pub searched: bool,
    pub complete: bool,
    pub candidates: usize,
    pub best: Option<MicReportJson>,
}

impl MicSummary {
    pub fn found(&self) -> bool {
        self.best.as_ref().is_some_and(|b| b.is_mic)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubgroupRow {
    pub index: usize,
    pub class_id: Option<usize>,
    pub group: String,
    pub order: u128,
    pub primitive: bool,
    pub rank: Option<usize>,
    /// Normal closure of the subgroup is the whole group (coset rows only).
    pub axiom_i: Option<bool>,
    pub axiom_ii: bool,
    pub geometry: Vec<String>,
    /// Line size → number of lines.
    pub lines: BTreeMap<usize, usize>,
    pub contextual: Option<bool>,
    pub filtration: Option<Vec<usize>>,
    pub mic: Option<MicSummary>,
    pub generators: Vec<String>,
    pub table: Option<TableJson>,
}

/// A row plus the full geometry, which is exported separately.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub row: SubgroupRow,
    pub group: PermutationGroup,
    pub geometry: IncidenceGeometry,
    pub names: Vec<GeometryName>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub presentation: String,
    pub max_index: usize,
    pub eta: Vec<usize>,
    /// False when a budget cut the subgroup search short.
    pub complete: bool,
    pub rows: Vec<SubgroupRow>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub report: PipelineReport,
    pub analyses: Vec<GroupAnalysis>,
}

/// Enumerates subgroups with the option budgets. `Ok((records, complete))`.
pub fn subgroups(p: &Presentation, opts: &PipelineOptions) -> Result<(Vec<SubgroupRecord>, bool)> {
    let start = Instant::now();
    let deadline = opts.time_budget;
    let interrupt = move || deadline.is_some_and(|t| start.elapsed() > t);
    let budget = SearchBudget { max_nodes: opts.node_budget, interrupt: Some(&interrupt) };
    match low_index_subgroups_with_budget(p, opts.max_index, &budget) {
        Ok(r) => Ok((r, true)),
        Err(LowIndexError::Exhausted { partial, .. }) => Ok((partial, false)),
        Err(e) => Err(e.into()),
    }
}

fn mic_summary(group: &PermutationGroup, opts: &PipelineOptions) -> Result<MicSummary> {
    let search = find_fiducials(group, opts.pauli, opts.fiducial_budget)?;
    let searched = group.degree() < 2 || group.order() <= opts.fiducial_budget.max_group_order;
    let best = search
        .candidates
        .first()
        .map(|r| r.fiducial.report_with(opts.pauli, RANK_TOLERANCE, opts.tolerance))
        .transpose()?;
    Ok(MicSummary {
        searched,
        complete: search.complete,
        candidates: search.candidates.len(),
        best: best.as_ref().map(MicReportJson::new),
    })
}

fn base_analysis(group: PermutationGroup, opts: &PipelineOptions) -> Result<GroupAnalysis> {
    let geometry = build_geometry(&group)?;
    let names = recognize_all(&geometry);
    let filtration = names
        .iter()
        .any(|n| matches!(n, GeometryName::Grassmannian(k) if *k >= 4))
        .then(|| binomial_filtration(&geometry).ok())
        .flatten();
    let mic = if opts.mic { Some(mic_summary(&group, opts)?) } else { None };
    let row = SubgroupRow {
        index: group.degree(),
        class_id: None,
        group: group.name(),
        order: group.order(),
        primitive: group.is_primitive(),
        rank: group.rank().ok(),
        axiom_i: None,
        axiom_ii: geometry.axiom_ii_holds(),
        geometry: names.iter().map(|n| n.to_string()).collect(),
        lines: geometry.line_size_counts(),
        contextual: None,
        filtration,
        mic,
        generators: group.generators().iter().map(|g| g.to_cycle_string()).collect(),
        table: None,
    };
    Ok(GroupAnalysis { row, group, geometry, names })
}

/// Analysis of a permutation group given directly by generators; no coset
/// representatives, so contextuality is not assessed.
pub fn analyze_permgroup(group: &PermutationGroup, opts: &PipelineOptions) -> Result<GroupAnalysis> {
    base_analysis(group.clone(), opts)
}

/// Full analysis of one subgroup class from its record alone.
pub fn analyze_record(record: &SubgroupRecord, opts: &PipelineOptions) -> Result<GroupAnalysis> {
    let table = &record.table;
    let group = perm_image(table);
    let d = group.degree();
    let mut a = base_analysis(group, opts)?;
    let gens = a.group.generators();
    let h: Vec<_> = record.generators.iter().map(|w| word_image(w, gens, d)).collect();
    let reps: Vec<_> = table.representatives().iter().map(|w| word_image(w, gens, d)).collect();
    let flags = contextuality(&a.geometry, &reps)?;
    a.geometry.set_contextuality(flags);
    a.row.class_id = Some(record.class_id);
    a.row.axiom_i = Some(a.group.normal_closure_is_full(&h));
    a.row.contextual = Some(a.geometry.is_contextual());
    a.row.generators = record.generators.iter().map(|w| w.render()).collect();
    a.row.table = Some(TableJson::new(table));
    Ok(a)
}

pub fn run_pipeline(presentation: &Presentation, opts: &PipelineOptions) -> Result<PipelineOutcome> {
    let (records, complete) = subgroups(presentation, opts)?;
    let analyses: Vec<GroupAnalysis> =
        records.par_iter().map(|r| analyze_record(r, opts)).collect::<Result<Vec<_>>>()?;
    let report = PipelineReport {
        presentation: presentation.render(),
        max_index: opts.max_index,
        eta: eta_sequence(&records, opts.max_index).counts,
        complete,
        rows: analyses.iter().map(|a| a.row.clone()).collect(),
    };
    Ok(PipelineOutcome { report, analyses })
}
