//! Low-index subgroup enumeration.
//!
//! Backtracking over partial coset tables: the first undefined entry (in
//! coset-major, column `a, a⁻¹, b, b⁻¹, ...` order) is set to each admissible
//! existing coset or to a fresh one, relator rotations through the new edge
//! are scanned for forced deductions, and a table survives only if it is the
//! lexicographically least among its re-basings at every coset. One table is
//! emitted per conjugacy class of subgroups.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coset::{letter_column, CosetTable};
use crate::fpgroup::{Presentation, Word};

/// A subgroup of finite index, identified by its canonical coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub index: usize,
    pub table: CosetTable,
    /// Schreier generators of the subgroup.
    pub generators: Vec<Word>,
    /// Position in the canonical (index, table) order.
    pub class_id: usize,
}

/// `counts[d-1]` is the number of conjugacy classes of index-`d` subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaSequence {
    pub counts: Vec<usize>,
}

impl EtaSequence {
    /// Count at index `d` (1-based).
    pub fn at(&self, d: usize) -> usize {
        d.checked_sub(1).and_then(|i| self.counts.get(i)).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowIndexError {
    /// The node budget ran out or the interrupt fired; `partial` holds every
    /// class found so far (in canonical order) but the list is incomplete.
    Exhausted { nodes: u64, partial: Vec<SubgroupRecord> },
    InvalidIndex,
}

impl fmt::Display for LowIndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowIndexError::Exhausted { nodes, partial } => write!(
                f,
                "low-index search stopped after {nodes} nodes with {} classes found",
                partial.len()
            ),
            LowIndexError::InvalidIndex => write!(f, "maximum index must be at least 1"),
        }
    }
}

impl core::error::Error for LowIndexError {}

/// Limits on a low-index search.
#[derive(Default)]
pub struct SearchBudget<'a> {
    pub max_nodes: Option<u64>,
    /// Polled every few thousand nodes; returning true aborts the search.
    pub interrupt: Option<&'a dyn Fn() -> bool>,
}

const UNDEF: u16 = u16::MAX;
const POLL_INTERVAL: u64 = 4096;

struct Search<'a, 'b> {
    max_index: usize,
    cols: usize,
    table: Vec<u16>,
    /// Relator rotations (and rotations of inverses) keyed by first column.
    rotations: Vec<Vec<Vec<u8>>>,
    trail: Vec<(u16, u8)>,
    deductions: Vec<(u16, u8)>,
    found: Vec<Vec<u16>>,
    found_sizes: Vec<usize>,
    nodes: u64,
    budget: &'a SearchBudget<'b>,
    stopped: bool,
    // scratch for canonicity
    map: Vec<u16>,
    inv: Vec<u16>,
}

impl Search<'_, '_> {
    #[inline]
    fn get(&self, c: usize, x: usize) -> u16 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn assign(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d as u16;
        self.table[d * self.cols + (x ^ 1)] = c as u16;
        self.trail.push((c as u16, x as u8));
        self.deductions.push((c as u16, x as u8));
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (c, x) = self.trail.pop().unwrap();
            let (c, x) = (c as usize, x as usize);
            let d = self.get(c, x) as usize;
            self.table[c * self.cols + x] = UNDEF;
            self.table[d * self.cols + (x ^ 1)] = UNDEF;
        }
    }

    /// Scans every relator rotation through each queued edge; false on conflict.
    fn propagate(&mut self) -> bool {
        while let Some((c, x)) = self.deductions.pop() {
            let (c, x) = (c as usize, x as usize);
            let d = self.get(c, x) as usize;
            for (start, col) in [(c, x), (d, x ^ 1)] {
                for ri in 0..self.rotations[col].len() {
                    if !self.scan(start, col, ri) {
                        self.deductions.clear();
                        return false;
                    }
                }
            }
        }
        true
    }

    #[inline]
    fn scan(&mut self, start: usize, col: usize, ri: usize) -> bool {
        let (deduce_at, deduce_col, target) = {
            let w = &self.rotations[col][ri];
            let n = w.len();
            let mut f = start;
            let mut i = 0;
            while i < n {
                let t = self.table[f * self.cols + w[i] as usize];
                if t == UNDEF {
                    break;
                }
                f = t as usize;
                i += 1;
            }
            if i == n {
                return f == start;
            }
            let mut b = start;
            let mut j = n;
            while j > i {
                let t = self.table[b * self.cols + (w[j - 1] as usize ^ 1)];
                if t == UNDEF {
                    break;
                }
                b = t as usize;
                j -= 1;
            }
            if j == i {
                // Backward scan met the forward one: both ends must agree.
                return f == b;
            }
            if j - i > 1 {
                return true;
            }
            (f, w[i] as usize, b)
        };
        // Exactly one gap: the entry is forced, unless its inverse slot is taken.
        if self.get(target, deduce_col ^ 1) != UNDEF {
            return false;
        }
        self.assign(deduce_at, deduce_col, target);
        true
    }

    /// Lexicographic comparison of the table against its re-basing at every
    /// other coset; false if some re-basing is provably smaller.
    fn is_canonical(&mut self, n: usize) -> bool {
        let cols = self.cols;
        'base: for alpha in 1..n {
            for m in self.map[..n].iter_mut() {
                *m = UNDEF;
            }
            self.map[alpha] = 0;
            self.inv[0] = alpha as u16;
            let mut next = 1usize;
            for row in 0..n {
                if row >= next {
                    continue 'base;
                }
                let old = self.inv[row] as usize;
                for x in 0..cols {
                    let t = self.table[old * cols + x];
                    if t == UNDEF {
                        continue 'base;
                    }
                    let mut nt = self.map[t as usize];
                    if nt == UNDEF {
                        nt = next as u16;
                        self.map[t as usize] = nt;
                        self.inv[next] = t;
                        next += 1;
                    }
                    let orig = self.table[row * cols + x];
                    if orig == UNDEF {
                        continue 'base;
                    }
                    if nt < orig {
                        return false;
                    }
                    if nt > orig {
                        continue 'base;
                    }
                }
            }
        }
        true
    }

    fn poll(&mut self) -> bool {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                self.stopped = true;
            }
        }
        if self.nodes.is_multiple_of(POLL_INTERVAL) {
            if let Some(stop) = self.budget.interrupt {
                if stop() {
                    self.stopped = true;
                }
            }
        }
        !self.stopped
    }

    fn run(&mut self, n: usize) {
        if !self.poll() {
            return;
        }
        let first = self.table[..n * self.cols].iter().position(|&t| t == UNDEF);
        let Some(pos) = first else {
            self.found.push(self.table[..n * self.cols].to_vec());
            self.found_sizes.push(n);
            return;
        };
        let (c, x) = (pos / self.cols, pos % self.cols);
        let choices = if n < self.max_index { n + 1 } else { n };
        for d in 0..choices {
            if self.stopped {
                return;
            }
            if d < n && self.get(d, x ^ 1) != UNDEF {
                continue;
            }
            let mark = self.trail.len();
            let size = if d == n { n + 1 } else { n };
            self.assign(c, x, d);
            if self.propagate() && self.is_canonical(size) {
                self.run(size);
            }
            self.undo(mark);
        }
    }
}

fn rotations(p: &Presentation) -> Vec<Vec<Vec<u8>>> {
    let cols = 2 * p.generator_count();
    let mut by_col: Vec<Vec<Vec<u8>>> = vec![Vec::new(); cols];
    for r in p.relators() {
        let r = r.cyclic_reduce();
        for w in [r.clone(), r.inverse()] {
            let letters: Vec<u8> = w.letters().iter().map(|&l| letter_column(l) as u8).collect();
            let n = letters.len();
            for k in 0..n {
                let rot: Vec<u8> = letters[k..].iter().chain(&letters[..k]).copied().collect();
                if !by_col[rot[0] as usize].contains(&rot) {
                    by_col[rot[0] as usize].push(rot);
                }
            }
        }
    }
    by_col
}

fn to_record(p: &Presentation, flat: &[u16], n: usize) -> SubgroupRecord {
    let gens = p.generator_count();
    let cols = 2 * gens;
    let forward = (0..gens).map(|g| (0..n).map(|c| flat[c * cols + 2 * g] as usize).collect()).collect();
    let mut table = CosetTable::from_action(forward, Vec::new()).expect("complete search tables are permutations");
    let generators = table.schreier_generators();
    table.set_subgroup_generators(generators.clone());
    SubgroupRecord { index: n, table, generators, class_id: 0 }
}

fn finish(p: &Presentation, found: Vec<Vec<u16>>, sizes: Vec<usize>) -> Vec<SubgroupRecord> {
    let mut entries: Vec<(usize, Vec<u16>)> = sizes.into_iter().zip(found).collect();
    entries.sort();
    entries
        .iter()
        .enumerate()
        .map(|(i, (n, flat))| {
            let mut rec = to_record(p, flat, *n);
            rec.class_id = i;
            rec
        })
        .collect()
}

/// One record per conjugacy class of subgroups of index at most `max_index`,
/// sorted by (index, coset table).
pub fn low_index_subgroups(p: &Presentation, max_index: usize) -> Result<Vec<SubgroupRecord>, LowIndexError> {
    low_index_subgroups_with_budget(p, max_index, &SearchBudget::default())
}

pub fn low_index_subgroups_with_budget(
    p: &Presentation,
    max_index: usize,
    budget: &SearchBudget<'_>,
) -> Result<Vec<SubgroupRecord>, LowIndexError> {
    if max_index == 0 || max_index >= UNDEF as usize {
        return Err(LowIndexError::InvalidIndex);
    }
    let cols = 2 * p.generator_count();
    let mut s = Search {
        max_index,
        cols,
        table: vec![UNDEF; max_index * cols],
        rotations: rotations(p),
        trail: Vec::new(),
        deductions: Vec::new(),
        found: Vec::new(),
        found_sizes: Vec::new(),
        nodes: 0,
        budget,
        stopped: false,
        map: vec![UNDEF; max_index],
        inv: vec![UNDEF; max_index],
    };
    s.run(1);
    let (stopped, nodes) = (s.stopped, s.nodes);
    let records = finish(p, s.found, s.found_sizes);
    if stopped {
        Err(LowIndexError::Exhausted { nodes, partial: records })
    } else {
        Ok(records)
    }
}

/// Histogram of record indices, `counts[d-1]` for `d = 1..=max_index`.
pub fn eta_sequence(records: &[SubgroupRecord], max_index: usize) -> EtaSequence {
    let mut counts = vec![0; max_index];
    for r in records {
        if (1..=max_index).contains(&r.index) {
            counts[r.index - 1] += 1;
        }
    }
    EtaSequence { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::parse_presentation;

    fn eta(text: &str, n: usize) -> Vec<usize> {
        let p = parse_presentation(text).unwrap();
        let recs = low_index_subgroups(&p, n).unwrap();
        for r in &recs {
            assert!(r.table.is_valid_for(&p));
            assert!(r.table.is_standard());
        }
        eta_sequence(&recs, n).counts
    }

    #[test]
    fn s3_classes() {
        assert_eq!(eta("a,b | a^2, b^2, (ab)^3", 3), vec![1, 1, 1]);
        assert_eq!(eta("a,b | a^2, b^2, (ab)^3", 6), vec![1, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn infinite_cyclic_has_one_subgroup_per_index() {
        assert_eq!(eta("a | ", 3), vec![1, 1, 1]);
        assert_eq!(eta("a | ", 7), vec![1; 7]);
    }

    #[test]
    fn free_group_rank_two() {
        // Conjugacy classes of index-n subgroups of F2: 1, 3, 7, 26.
        assert_eq!(eta("a,b | ", 4), vec![1, 3, 7, 26]);
    }

    #[test]
    fn records_are_canonically_ordered() {
        let p = parse_presentation("a,b | a^2, b^3, (ab)^5").unwrap();
        let recs = low_index_subgroups(&p, 12).unwrap();
        assert_eq!(eta_sequence(&recs, 12).counts, vec![1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1]);
        for (i, r) in recs.iter().enumerate() {
            assert_eq!(r.class_id, i);
        }
        assert!(recs.windows(2).all(|w| w[0].index <= w[1].index));
    }

    #[test]
    fn budget_exhaustion_keeps_partial_results() {
        let p = parse_presentation("a,b | ").unwrap();
        let budget = SearchBudget { max_nodes: Some(20), interrupt: None };
        match low_index_subgroups_with_budget(&p, 5, &budget) {
            Err(LowIndexError::Exhausted { nodes, partial }) => {
                assert!(nodes > 20);
                assert!(!partial.is_empty());
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
        let stop = || true;
        let budget = SearchBudget { max_nodes: None, interrupt: Some(&stop) };
        assert!(low_index_subgroups_with_budget(&p, 6, &budget).is_err());
        assert_eq!(low_index_subgroups(&p, 0), Err(LowIndexError::InvalidIndex));
    }
}
