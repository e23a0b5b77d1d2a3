//! Point/line geometries read off from two-point stabilizers.
//!
//! Unordered point pairs are grouped into classes with identical pointwise
//! stabilizers. A class whose pairs are all pairs of its point set becomes a
//! single line. A class that is not a clique becomes the maximum cliques of
//! its pair graph when those partition its pairs (the pentagram case), and
//! otherwise one size-2 line per pair (the multipartite cases). Every pair of
//! points therefore lies on exactly one line.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::permgrp::{PermGroupError, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    NotTransitive,
    PointOutOfRange { line: usize, point: usize },
    ShortLine(usize),
    /// Two lines share two or more points.
    Overlap(usize, usize),
    UnsupportedTag,
    NotGrassmannian,
    RepresentativeCount,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NotTransitive => write!(f, "geometry needs a transitive group"),
            GeometryError::PointOutOfRange { line, point } => {
                write!(f, "line {line} names point {} outside the point set", point + 1)
            }
            GeometryError::ShortLine(l) => write!(f, "line {l} has fewer than two points"),
            GeometryError::Overlap(a, b) => write!(f, "lines {a} and {b} share more than one point"),
            GeometryError::UnsupportedTag => write!(f, "no reference model for this tag"),
            GeometryError::NotGrassmannian => write!(f, "geometry is not a combinatorial Grassmannian"),
            GeometryError::RepresentativeCount => write!(f, "need one representative per point"),
        }
    }
}

impl core::error::Error for GeometryError {}

impl From<PermGroupError> for GeometryError {
    fn from(_: PermGroupError) -> Self {
        GeometryError::NotTransitive
    }
}

/// Points `0..points` and lines as sorted point lists, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    points: usize,
    lines: Vec<Vec<usize>>,
    /// Order of the common two-point stabilizer, when built from a group.
    line_stabilizer_order: Vec<Option<u128>>,
    /// Lines with the same class id came from the same stabilizer subgroup.
    line_class: Vec<usize>,
    contextual: Option<Vec<bool>>,
}

impl IncidenceGeometry {
    /// Each line is its own class.
    pub fn from_lines(points: usize, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        let classes = (0..lines.len()).collect();
        Self::from_parts(points, lines, vec![None; 0], classes)
    }

    fn from_parts(
        points: usize,
        lines: Vec<Vec<usize>>,
        orders: Vec<Option<u128>>,
        classes: Vec<usize>,
    ) -> Result<Self, GeometryError> {
        let n = lines.len();
        let orders = if orders.is_empty() { vec![None; n] } else { orders };
        let mut entries: Vec<(Vec<usize>, Option<u128>, usize)> = lines
            .into_iter()
            .zip(orders)
            .zip(classes)
            .map(|((mut l, o), c)| {
                l.sort_unstable();
                l.dedup();
                (l, o, c)
            })
            .collect();
        entries.sort();
        for (i, (l, _, _)) in entries.iter().enumerate() {
            if l.len() < 2 {
                return Err(GeometryError::ShortLine(i));
            }
            if let Some(&p) = l.iter().find(|&&p| p >= points) {
                return Err(GeometryError::PointOutOfRange { line: i, point: p });
            }
        }
        let mut on_line: Vec<Option<usize>> = vec![None; points * points];
        for (i, (l, _, _)) in entries.iter().enumerate() {
            for (k, &a) in l.iter().enumerate() {
                for &b in &l[k + 1..] {
                    if let Some(j) = on_line[a * points + b] {
                        return Err(GeometryError::Overlap(j, i));
                    }
                    on_line[a * points + b] = Some(i);
                }
            }
        }
        // Renumber classes by first appearance in sorted line order.
        let mut renum: BTreeMap<usize, usize> = BTreeMap::new();
        let mut line_class = Vec::with_capacity(entries.len());
        for (_, _, c) in &entries {
            let next = renum.len();
            line_class.push(*renum.entry(*c).or_insert(next));
        }
        Ok(IncidenceGeometry {
            points,
            line_stabilizer_order: entries.iter().map(|e| e.1).collect(),
            lines: entries.into_iter().map(|e| e.0).collect(),
            line_class,
            contextual: None,
        })
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line_stabilizer_orders(&self) -> &[Option<u128>] {
        &self.line_stabilizer_order
    }

    pub fn line_classes(&self) -> &[usize] {
        &self.line_class
    }

    pub fn contextual(&self) -> Option<&[bool]> {
        self.contextual.as_deref()
    }

    /// Number of lines of each size, keyed by size.
    pub fn line_size_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for l in &self.lines {
            *m.entry(l.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn lines_of_size(&self, k: usize) -> usize {
        self.lines.iter().filter(|l| l.len() == k).count()
    }

    /// Number of lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points];
        for l in &self.lines {
            for &p in l {
                deg[p] += 1;
            }
        }
        deg
    }

    fn class_sizes(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &c in &self.line_class {
            *m.entry(c).or_insert(0) += 1;
        }
        m
    }

    /// A line is exceptional if it has three or more points or shares its
    /// stabilizer with another line.
    pub fn exceptional_lines(&self) -> Vec<bool> {
        let sizes = self.class_sizes();
        self.lines
            .iter()
            .zip(&self.line_class)
            .map(|(l, c)| l.len() >= 3 || sizes[c] > 1)
            .collect()
    }

    /// The sub-geometry of lines with at least three points.
    pub fn proper_part(&self) -> IncidenceGeometry {
        self.select(|i| self.lines[i].len() >= 3)
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> IncidenceGeometry {
        let idx: Vec<usize> = (0..self.lines.len()).filter(|&i| keep(i)).collect();
        IncidenceGeometry {
            points: self.points,
            lines: idx.iter().map(|&i| self.lines[i].clone()).collect(),
            line_stabilizer_order: idx.iter().map(|&i| self.line_stabilizer_order[i]).collect(),
            line_class: idx.iter().map(|&i| self.line_class[i]).collect(),
            contextual: self.contextual.as_ref().map(|c| idx.iter().map(|&i| c[i]).collect()),
        }
    }

    /// Size-2 lines whose stabilizer class holds more than one line.
    pub fn shared_edges(&self) -> Vec<(usize, usize)> {
        let sizes = self.class_sizes();
        self.lines
            .iter()
            .zip(&self.line_class)
            .filter(|(l, c)| l.len() == 2 && sizes[c] > 1)
            .map(|(l, _)| (l[0], l[1]))
            .collect()
    }

    /// No triple of points with equal pairwise stabilizers and no shared
    /// stabilizers: every line is a private pair.
    pub fn axiom_ii_holds(&self) -> bool {
        !self.exceptional_lines().into_iter().any(|e| e)
    }

    /// Stores a per-line contextuality annotation.
    pub fn set_contextuality(&mut self, flags: Vec<bool>) {
        assert_eq!(flags.len(), self.lines.len());
        self.contextual = Some(flags);
    }

    /// True if some exceptional line is contextual.
    pub fn is_contextual(&self) -> bool {
        match &self.contextual {
            Some(c) => self.exceptional_lines().iter().zip(c).any(|(&e, &c)| e && c),
            None => false,
        }
    }

    /// Lines that contain every point of `points`.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&i| self.lines[i].contains(&point)).collect()
    }

    fn collinearity(&self) -> Vec<Option<u32>> {
        let n = self.points;
        let mut m = vec![None; n * n];
        for (i, l) in self.lines.iter().enumerate() {
            for &a in l {
                for &b in l {
                    if a != b {
                        m[a * n + b] = Some(i as u32);
                    }
                }
            }
        }
        m
    }

    /// Sub-geometry induced on `points` (relabelled in the given order).
    pub fn induced(&self, points: &[usize]) -> IncidenceGeometry {
        let mut new_of = vec![usize::MAX; self.points];
        for (i, &p) in points.iter().enumerate() {
            new_of[p] = i;
        }
        let lines = self
            .lines
            .iter()
            .filter(|l| l.iter().all(|&p| new_of[p] != usize::MAX))
            .map(|l| l.iter().map(|&p| new_of[p]).collect())
            .collect();
        IncidenceGeometry::from_lines(points.len(), lines).expect("subsets of valid lines stay valid")
    }
}

impl fmt::Display for IncidenceGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} points;", self.points)?;
        for (k, n) in self.line_size_counts() {
            write!(f, " {n} lines of size {k};")?;
        }
        Ok(())
    }
}

/// Builds the geometry of equal two-point stabilizers of a transitive group.
pub fn build_geometry(group: &PermutationGroup) -> Result<IncidenceGeometry, GeometryError> {
    if !group.is_transitive() {
        return Err(GeometryError::NotTransitive);
    }
    let d = group.degree();
    // Bucket pairs by (order, fixed points), then split buckets into equal subgroups.
    let mut buckets: BTreeMap<(u128, Vec<usize>), Vec<(PermutationGroup, Vec<(usize, usize)>)>> = BTreeMap::new();
    for a in 0..d {
        for b in a + 1..d {
            let stab = group.pair_stabilizer(a, b)?;
            let key = (stab.order(), stab.fixed_points());
            let classes = buckets.entry(key).or_default();
            match classes.iter_mut().find(|(s, _)| s.same_group(&stab)) {
                Some((_, pairs)) => pairs.push((a, b)),
                None => classes.push((stab, vec![(a, b)])),
            }
        }
    }
    let mut lines = Vec::new();
    let mut orders = Vec::new();
    let mut classes = Vec::new();
    let mut class_id = 0;
    for ((order, _), list) in buckets {
        for (_, pairs) in list {
            for line in lines_of_class(d, &pairs) {
                lines.push(line);
                orders.push(Some(order));
                classes.push(class_id);
            }
            class_id += 1;
        }
    }
    IncidenceGeometry::from_parts(d, lines, orders, classes)
}

/// Splits one stabilizer class into lines.
fn lines_of_class(d: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut pts: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    pts.sort_unstable();
    pts.dedup();
    let k = pts.len();
    if pairs.len() == k * (k - 1) / 2 {
        return vec![pts];
    }
    let as_edges = || pairs.iter().map(|&(a, b)| vec![a, b]).collect();
    if d > 64 {
        return as_edges();
    }
    let mut adj = vec![0u64; d];
    for &(a, b) in pairs {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let cliques = maximum_cliques(&adj, &pts);
    let size = cliques.first().map_or(0, |c| c.count_ones() as usize);
    if size < 3 || cliques.len() * size * (size - 1) / 2 != pairs.len() {
        return as_edges();
    }
    // Equal edge totals plus pairwise intersections of at most one point means a partition.
    for (i, x) in cliques.iter().enumerate() {
        if cliques[i + 1..].iter().any(|y| (x & y).count_ones() > 1) {
            return as_edges();
        }
    }
    cliques
        .into_iter()
        .map(|c| (0..d).filter(|&p| c >> p & 1 == 1).collect())
        .collect()
}

/// All maximum cliques of the graph (Bron–Kerbosch with pivoting).
fn maximum_cliques(adj: &[u64], vertices: &[usize]) -> Vec<u64> {
    fn expand(adj: &[u64], r: u64, mut p: u64, mut x: u64, best: &mut Vec<u64>, best_size: &mut u32) {
        if p == 0 && x == 0 {
            let size = r.count_ones();
            if size > *best_size {
                *best_size = size;
                best.clear();
            }
            if size == *best_size {
                best.push(r);
            }
            return;
        }
        if r.count_ones() + p.count_ones() < *best_size {
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut candidates = p & !adj[pivot];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            expand(adj, r | 1 << v, p & adj[v], x & adj[v], best, best_size);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let all = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
    let mut best = Vec::new();
    let mut best_size = 0;
    expand(adj, 0, all, 0, &mut best, &mut best_size);
    best.sort_unstable();
    best
}

/// Per-line flag: some pair of points on the line has representatives whose
/// permutation images do not commute.
pub fn contextuality(geometry: &IncidenceGeometry, rep_images: &[Permutation]) -> Result<Vec<bool>, GeometryError> {
    if rep_images.len() != geometry.point_count() {
        return Err(GeometryError::RepresentativeCount);
    }
    Ok(geometry
        .lines()
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .any(|(k, &a)| l[k + 1..].iter().any(|&b| !rep_images[a].commutes_with(&rep_images[b])))
        })
        .collect())
}

/// Names a geometry can be certified as.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeometryName {
    CompleteGraph(usize),
    /// Complete multipartite graph with `parts` parts of `part_size` points.
    Multipartite { part_size: usize, parts: usize },
    FanoPlane,
    PG32,
    GQ22,
    MerminPentagram,
    /// `Gr(2, n)`.
    Grassmannian(usize),
    Unknown,
}

impl fmt::Display for GeometryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryName::CompleteGraph(d) => write!(f, "K_{d}"),
            GeometryName::Multipartite { part_size, parts } => {
                let inner: Vec<String> = (0..*parts).map(|_| format!("{part_size}")).collect();
                write!(f, "K({})", inner.join(","))
            }
            GeometryName::FanoPlane => write!(f, "Fano plane"),
            GeometryName::PG32 => write!(f, "PG(3,2)"),
            GeometryName::GQ22 => write!(f, "GQ(2,2)"),
            GeometryName::MerminPentagram => write!(f, "Mermin pentagram"),
            GeometryName::Grassmannian(n) => write!(f, "Gr(2,{n})"),
            GeometryName::Unknown => write!(f, "unknown"),
        }
    }
}

/// Point-line truncation of PG(n,2): points are nonzero vectors of F₂ⁿ⁺¹
/// (vector `v` is point `v-1`), lines are `{u, v, u+v}`.
pub fn projective_space(n: usize) -> IncidenceGeometry {
    let q = (1usize << (n + 1)) - 1;
    let mut lines = Vec::new();
    for u in 1..=q {
        for v in u + 1..=q {
            let w = u ^ v;
            if w > v {
                lines.push(vec![u - 1, v - 1, w - 1]);
            }
        }
    }
    IncidenceGeometry::from_lines(q, lines).expect("projective lines meet in at most one point")
}

/// Symplectic GQ(2,2): totally isotropic lines of PG(3,2) under
/// `x1y2 + x2y1 + x3y4 + x4y3`.
pub fn generalized_quadrangle() -> IncidenceGeometry {
    let form = |x: usize, y: usize| {
        let bit = |v: usize, i: usize| (v >> i) & 1;
        (bit(x, 0) & bit(y, 1)) ^ (bit(x, 1) & bit(y, 0)) ^ (bit(x, 2) & bit(y, 3)) ^ (bit(x, 3) & bit(y, 2))
    };
    let lines = projective_space(3)
        .lines()
        .iter()
        .filter(|l| form(l[0] + 1, l[1] + 1) == 0)
        .cloned()
        .collect();
    IncidenceGeometry::from_lines(15, lines).expect("subset of projective lines")
}

/// Colex index of the 2-subset `{a, b}`, `a < b`.
pub fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

/// Gr(2,n): points are 2-subsets of `{0..n}` in colex order, lines are the
/// triangles `{ab, ac, bc}`.
pub fn grassmannian(n: usize) -> IncidenceGeometry {
    let mut lines = Vec::new();
    for c in 0..n {
        for b in 0..c {
            for a in 0..b {
                lines.push(vec![pair_index(a, b), pair_index(a, c), pair_index(b, c)]);
            }
        }
    }
    IncidenceGeometry::from_lines(n * n.saturating_sub(1) / 2, lines).expect("triangles meet in at most one point")
}

/// Ten points (the 2-subsets of a 5-set), five lines of four points: the
/// subsets through each symbol. Every point is on two lines.
pub fn pentagram() -> IncidenceGeometry {
    let lines = (0..5)
        .map(|i| (0..5).filter(|&j| j != i).map(|j| pair_index(i.min(j), i.max(j))).collect())
        .collect();
    IncidenceGeometry::from_lines(10, lines).expect("stars meet in one point")
}

pub fn complete_graph(d: usize) -> IncidenceGeometry {
    let lines = (0..d).flat_map(|a| (a + 1..d).map(move |b| vec![a, b])).collect();
    IncidenceGeometry::from_lines(d, lines).expect("edges are lines")
}

/// Complete multipartite graph: part `i` is `{i·m, .., i·m+m-1}`; all edges share one class.
pub fn multipartite(part_size: usize, parts: usize) -> IncidenceGeometry {
    let d = part_size * parts;
    let lines: Vec<Vec<usize>> = (0..d)
        .flat_map(|a| (a + 1..d).filter(move |b| a / part_size != b / part_size).map(move |b| vec![a, b]))
        .collect();
    let n = lines.len();
    IncidenceGeometry::from_parts(d, lines, Vec::new(), vec![0; n]).expect("edges are lines")
}

pub fn reference_model(tag: &GeometryName) -> Result<IncidenceGeometry, GeometryError> {
    Ok(match *tag {
        GeometryName::CompleteGraph(d) if d >= 2 => complete_graph(d),
        GeometryName::Multipartite { part_size, parts } if part_size >= 2 && parts >= 2 => {
            multipartite(part_size, parts)
        }
        GeometryName::FanoPlane => projective_space(2),
        GeometryName::PG32 => projective_space(3),
        GeometryName::GQ22 => generalized_quadrangle(),
        GeometryName::MerminPentagram => pentagram(),
        GeometryName::Grassmannian(n) if n >= 3 => grassmannian(n),
        _ => return Err(GeometryError::UnsupportedTag),
    })
}

/// Point invariant used to prune the isomorphism search.
fn point_signatures(g: &IncidenceGeometry) -> Vec<Vec<usize>> {
    let mut sig = vec![Vec::new(); g.points];
    for l in &g.lines {
        for &p in l {
            sig[p].push(l.len());
        }
    }
    for s in &mut sig {
        s.sort_unstable();
    }
    sig
}

/// A point bijection `map` with `map[p]` in `g2` carrying lines onto lines, if any.
///
/// Exhaustive backtracking over points in a connectivity-first order; lines
/// are matched as soon as two of their points are placed.
pub fn isomorphic(g1: &IncidenceGeometry, g2: &IncidenceGeometry) -> Option<Vec<usize>> {
    let n = g1.points;
    if n != g2.points || g1.lines.len() != g2.lines.len() || g1.line_size_counts() != g2.line_size_counts() {
        return None;
    }
    let (sig1, sig2) = (point_signatures(g1), point_signatures(g2));
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let (col1, col2) = (g1.collinearity(), g2.collinearity());

    // Order: each next point has the most already-ordered collinear neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let p = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| (links[p], sig1[p].len(), core::cmp::Reverse(p)))
            .expect("unplaced point remains");
        placed[p] = true;
        order.push(p);
        for q in 0..n {
            if col1[p * n + q].is_some() {
                links[q] += 1;
            }
        }
    }

    struct State<'a> {
        n: usize,
        order: Vec<usize>,
        sig1: &'a [Vec<usize>],
        sig2: &'a [Vec<usize>],
        col1: &'a [Option<u32>],
        col2: &'a [Option<u32>],
        map: Vec<usize>,
        used: Vec<bool>,
        line_map: Vec<u32>,
        line_rev: Vec<u32>,
    }

    const NONE: u32 = u32::MAX;

    fn search(s: &mut State<'_>, k: usize) -> bool {
        if k == s.n {
            return true;
        }
        let p = s.order[k];
        for x in 0..s.n {
            if s.used[x] || s.sig1[p] != s.sig2[x] {
                continue;
            }
            let mut newly: Vec<u32> = Vec::new();
            let mut ok = true;
            for &q in &s.order[..k] {
                let y = s.map[q];
                match (s.col1[p * s.n + q], s.col2[x * s.n + y]) {
                    (None, None) => {}
                    (Some(l1), Some(l2)) => {
                        let (m, r) = (s.line_map[l1 as usize], s.line_rev[l2 as usize]);
                        if m == NONE && r == NONE {
                            s.line_map[l1 as usize] = l2;
                            s.line_rev[l2 as usize] = l1;
                            newly.push(l1);
                        } else if m != l2 || r != l1 {
                            ok = false;
                        }
                    }
                    _ => ok = false,
                }
                if !ok {
                    break;
                }
            }
            if ok {
                s.map[p] = x;
                s.used[x] = true;
                if search(s, k + 1) {
                    return true;
                }
                s.used[x] = false;
            }
            for l1 in newly {
                let l2 = s.line_map[l1 as usize];
                s.line_map[l1 as usize] = NONE;
                s.line_rev[l2 as usize] = NONE;
            }
        }
        false
    }

    let mut state = State {
        n,
        order,
        sig1: &sig1,
        sig2: &sig2,
        col1: &col1,
        col2: &col2,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        line_map: vec![NONE; g1.lines.len()],
        line_rev: vec![NONE; g2.lines.len()],
    };
    if search(&mut state, 0) {
        Some(state.map)
    } else {
        None
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Reference tags whose parameters match the given line structure.
fn candidate_models(points: usize, g: &IncidenceGeometry) -> Vec<GeometryName> {
    let sizes = g.line_size_counts();
    let lines = g.line_count();
    let only = |k: usize| sizes.len() == 1 && sizes.contains_key(&k);
    let mut out = Vec::new();
    if only(3) {
        if points == 7 && lines == 7 {
            out.push(GeometryName::FanoPlane);
        }
        if points == 15 && lines == 35 {
            out.push(GeometryName::PG32);
        }
        if points == 15 && lines == 15 {
            out.push(GeometryName::GQ22);
        }
        for n in 3..=64 {
            if binomial(n, 2) == points && binomial(n, 3) == lines {
                out.push(GeometryName::Grassmannian(n));
            }
        }
    }
    if only(4) && points == 10 && lines == 5 {
        out.push(GeometryName::MerminPentagram);
    }
    out
}

/// Tests whether the edges form the complete multipartite graph on all
/// `points` with equal parts; returns (part size, parts).
fn complete_multipartite(points: usize, edges: &[(usize, usize)]) -> Option<(usize, usize)> {
    let mut adj = vec![false; points * points];
    for &(a, b) in edges {
        adj[a * points + b] = true;
        adj[b * points + a] = true;
    }
    // Non-adjacency must be an equivalence relation with equal classes.
    let mut part = vec![usize::MAX; points];
    let mut sizes = Vec::new();
    for p in 0..points {
        if part[p] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let members: Vec<usize> = (0..points).filter(|&q| q == p || !adj[p * points + q]).collect();
        for &q in &members {
            if part[q] != usize::MAX {
                return None;
            }
            part[q] = id;
        }
        sizes.push(members.len());
    }
    for a in 0..points {
        for b in 0..points {
            if a != b && (part[a] == part[b]) == adj[a * points + b] {
                return None;
            }
        }
    }
    let m = sizes[0];
    (sizes.len() >= 2 && m >= 2 && sizes.iter().all(|&s| s == m)).then_some((m, sizes.len()))
}

/// Certified name of a geometry, or `Unknown`.
pub fn recognize(g: &IncidenceGeometry) -> GeometryName {
    let d = g.point_count();
    let proper = g.proper_part();
    let shared = g.shared_edges();
    if proper.line_count() == 0 {
        if shared.is_empty() {
            return if d >= 2 && g.line_count() == binomial(d, 2) {
                GeometryName::CompleteGraph(d)
            } else {
                GeometryName::Unknown
            };
        }
        if g.lines_of_size(2) == g.line_count() {
            if let Some((m, k)) = complete_multipartite(d, &shared) {
                return GeometryName::Multipartite { part_size: m, parts: k };
            }
        }
        return GeometryName::Unknown;
    }
    if let Some(name) = certify(&proper) {
        return name;
    }
    // Disjoint blocks of equal size plus a multipartite graph between them.
    let m = proper.lines[0].len();
    let disjoint = proper.lines.iter().all(|l| l.len() == m) && proper.line_count() * m == d;
    if disjoint && !shared.is_empty() {
        if let Some((pm, k)) = complete_multipartite(d, &shared) {
            if pm == m && k == proper.line_count() {
                return GeometryName::Multipartite { part_size: m, parts: k };
            }
        }
    }
    GeometryName::Unknown
}

fn certify(proper: &IncidenceGeometry) -> Option<GeometryName> {
    candidate_models(proper.point_count(), proper)
        .into_iter()
        .find(|tag| reference_model(tag).ok().and_then(|m| isomorphic(proper, &m)).is_some())
}

/// The name of the whole geometry followed by the certified names of its
/// sub-geometries formed by lines of a single stabilizer order.
pub fn recognize_all(g: &IncidenceGeometry) -> Vec<GeometryName> {
    let mut names = vec![recognize(g)];
    let proper = g.proper_part();
    let mut orders: Vec<Option<u128>> = proper.line_stabilizer_order.clone();
    orders.sort();
    orders.dedup();
    if orders.len() > 1 {
        for o in orders {
            let part = proper.select(|i| proper.line_stabilizer_order[i] == o);
            if let Some(name) = certify(&part) {
                if !names.contains(&name) {
                    names.push(name);
                }
            }
        }
    }
    if names.len() > 1 {
        names.retain(|n| *n != GeometryName::Unknown);
    }
    names
}

/// For a geometry whose lines form Gr(2,n): `n` and a map from its points to
/// the colex-ordered 2-subsets of the reference model.
pub fn certify_grassmannian(g: &IncidenceGeometry) -> Option<(usize, Vec<usize>)> {
    let proper = g.proper_part();
    let n = (3..=64).find(|&n| binomial(n, 2) == proper.point_count())?;
    isomorphic(&proper, &grassmannian(n)).map(|map| (n, map))
}

/// Cumulative line counts of the nested Gr(2,3) ⊂ Gr(2,4) ⊂ … ⊂ Gr(2,n),
/// each level checked to be a Gr(2,i) with `C(i,3)` lines.
pub fn binomial_filtration(g: &IncidenceGeometry) -> Result<Vec<usize>, GeometryError> {
    let (n, map) = certify_grassmannian(g).ok_or(GeometryError::NotGrassmannian)?;
    let mut inverse = vec![0; map.len()];
    for (p, &label) in map.iter().enumerate() {
        inverse[label] = p;
    }
    let proper = g.proper_part();
    let mut counts = Vec::new();
    for i in 3..=n {
        let level: Vec<usize> = inverse[..binomial(i, 2)].to_vec();
        let sub = proper.induced(&level);
        if sub.line_count() != binomial(i, 3) || isomorphic(&sub, &grassmannian(i)).is_none() {
            return Err(GeometryError::NotGrassmannian);
        }
        counts.push(sub.line_count());
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn perm(text: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(text, d).unwrap()
    }

    fn group(d: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::new(d, gens.iter().map(|g| perm(g, d)).collect()).unwrap()
    }

    fn fano_group() -> PermutationGroup {
        group(7, &["(1,2,4,5,6,7,3)", "(2,5,6)(3,7,4)"])
    }

    fn assert_partial_linear_space(g: &IncidenceGeometry) {
        let d = g.point_count();
        let mut count = vec![0; d * d];
        for l in g.lines() {
            for (k, &a) in l.iter().enumerate() {
                for &b in &l[k + 1..] {
                    count[a * d + b] += 1;
                }
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                assert_eq!(count[a * d + b], 1, "pair {a},{b}");
            }
        }
        for (i, x) in g.lines().iter().enumerate() {
            for y in &g.lines()[i + 1..] {
                assert!(x.iter().filter(|p| y.contains(p)).count() <= 1);
            }
        }
    }

    #[test]
    fn a5_natural_is_k5() {
        let g = build_geometry(&group(5, &["(1,2,3,4,5)", "(3,4,5)"])).unwrap();
        assert_eq!(g.line_count(), 10);
        assert_eq!(g.lines_of_size(2), 10);
        assert_partial_linear_space(&g);
        assert!(g.axiom_ii_holds());
        assert_eq!(recognize(&g), GeometryName::CompleteGraph(5));
    }

    /// Brute-force pair classes for A_d: stabilizers compared as element sets.
    #[test]
    fn alternating_natural_actions_give_complete_graphs() {
        for d in 5..=9 {
            let cyc = if d % 2 == 1 {
                format!("({})", (1..=d).map(|i| format!("{i}")).collect::<Vec<_>>().join(","))
            } else {
                format!("({})", (2..=d).map(|i| format!("{i}")).collect::<Vec<_>>().join(","))
            };
            let g = group(d, &[&cyc, "(1,2,3)"]);
            assert_eq!(g.order() * 2, (1..=d as u128).product::<u128>());
            let geo = build_geometry(&g).unwrap();
            assert_eq!(recognize(&geo), GeometryName::CompleteGraph(d));
            if d <= 6 {
                let els = g.elements(1000).unwrap();
                let mut seen = BTreeSet::new();
                for a in 0..d {
                    for b in a + 1..d {
                        let stab: BTreeSet<_> =
                            els.iter().filter(|e| e.apply(a) == a && e.apply(b) == b).cloned().collect();
                        assert!(seen.insert(stab.into_iter().collect::<Vec<_>>()));
                    }
                }
            }
        }
    }

    #[test]
    fn fano_from_psl27() {
        let g = build_geometry(&fano_group()).unwrap();
        assert_eq!(g.line_count(), 7);
        assert!(g.lines().iter().all(|l| l.len() == 3));
        assert!(g.line_stabilizer_orders().iter().all(|&o| o == Some(4)));
        assert_partial_linear_space(&g);
        assert!(!g.axiom_ii_holds());
        assert!(isomorphic(&g, &projective_space(2)).is_some());
        assert_eq!(recognize(&g), GeometryName::FanoPlane);
    }

    #[test]
    fn a5_on_ten_points_is_pentagram() {
        // A5 acting on the 2-subsets of {1..5}.
        let gens = [perm("(1,2,3,4,5)", 5), perm("(3,4,5)", 5)];
        let label = |a: usize, b: usize| pair_index(a.min(b), a.max(b));
        let lift = |p: &Permutation| {
            let mut images = vec![0; 10];
            for b in 0..5 {
                for a in 0..b {
                    images[pair_index(a, b)] = label(p.apply(a), p.apply(b));
                }
            }
            Permutation::from_images(images).unwrap()
        };
        let g = PermutationGroup::new(10, gens.iter().map(lift).collect()).unwrap();
        assert_eq!(g.order(), 60);
        let geo = build_geometry(&g).unwrap();
        assert_eq!(geo.lines_of_size(4), 5);
        assert_partial_linear_space(&geo);
        assert_eq!(recognize(&geo), GeometryName::MerminPentagram);
    }

    #[test]
    fn imprimitive_actions_give_multipartite_graphs() {
        // S4 ≀-free example: A5 on 15 points = cosets of a Klein four-group, blocks of 3.
        let a5 = group(5, &["(1,2,3,4,5)", "(3,4,5)"]);
        let els = a5.elements(60).unwrap();
        let v4: Vec<Permutation> =
            els.iter().filter(|e| e.apply(4) == 4 && e.order() <= 2).cloned().collect();
        assert_eq!(v4.len(), 4);
        // Right cosets V4·g, acted on by right multiplication.
        let mut cosets: Vec<Vec<Permutation>> = Vec::new();
        for e in &els {
            let mut c: Vec<Permutation> = v4.iter().map(|h| h.then(e)).collect();
            c.sort();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        assert_eq!(cosets.len(), 15);
        let act = |g: &Permutation| {
            let images = cosets
                .iter()
                .map(|c| {
                    let mut moved: Vec<Permutation> = c.iter().map(|x| x.then(g)).collect();
                    moved.sort();
                    cosets.iter().position(|d| *d == moved).unwrap()
                })
                .collect();
            Permutation::from_images(images).unwrap()
        };
        let p = PermutationGroup::new(15, a5.generators().iter().map(act).collect()).unwrap();
        assert_eq!(p.order(), 60);
        let geo = build_geometry(&p).unwrap();
        assert_partial_linear_space(&geo);
        assert_eq!(geo.lines_of_size(3), 5);
        assert_eq!(recognize(&geo), GeometryName::Multipartite { part_size: 3, parts: 5 });
        assert!(!geo.axiom_ii_holds());
    }

    #[test]
    fn reference_models_have_expected_parameters() {
        let pg2 = projective_space(2);
        assert_eq!((pg2.point_count(), pg2.line_count()), (7, 7));
        let pg3 = projective_space(3);
        assert_eq!((pg3.point_count(), pg3.line_count()), (15, 35));
        let gq = generalized_quadrangle();
        assert_eq!((gq.point_count(), gq.line_count()), (15, 15));
        assert!(gq.point_degrees().iter().all(|&d| d == 3));
        let gr = grassmannian(8);
        assert_eq!((gr.point_count(), gr.line_count()), (28, 56));
        assert!(gr.point_degrees().iter().all(|&d| d == 6));
        let pent = pentagram();
        assert_eq!((pent.point_count(), pent.line_count()), (10, 5));
        assert!(pent.point_degrees().iter().all(|&d| d == 2));
        assert_eq!(reference_model(&GeometryName::Unknown), Err(GeometryError::UnsupportedTag));
    }

    #[test]
    fn recognize_round_trips_reference_models() {
        let tags = [
            GeometryName::CompleteGraph(5),
            GeometryName::CompleteGraph(2),
            GeometryName::Multipartite { part_size: 2, parts: 7 },
            GeometryName::Multipartite { part_size: 3, parts: 5 },
            GeometryName::FanoPlane,
            GeometryName::PG32,
            GeometryName::GQ22,
            GeometryName::MerminPentagram,
            GeometryName::Grassmannian(3),
            GeometryName::Grassmannian(4),
            GeometryName::Grassmannian(5),
            GeometryName::Grassmannian(6),
            GeometryName::Grassmannian(8),
        ];
        for t in tags {
            assert_eq!(recognize(&reference_model(&t).unwrap()), t, "{t}");
        }
    }

    #[test]
    fn isomorphism_search_basics() {
        let fano = projective_space(2);
        assert!(isomorphic(&complete_graph(5), &fano).is_none());
        let map = isomorphic(&fano, &fano).unwrap();
        assert_eq!(map.len(), 7);
        // A relabelled copy is found and the bijection carries lines to lines.
        let shift = |p: usize| (p * 3 + 2) % 7;
        let relabelled = IncidenceGeometry::from_lines(
            7,
            fano.lines().iter().map(|l| l.iter().map(|&p| shift(p)).collect()).collect(),
        )
        .unwrap();
        let map = isomorphic(&relabelled, &fano).unwrap();
        let image: BTreeSet<Vec<usize>> = relabelled
            .lines()
            .iter()
            .map(|l| {
                let mut m: Vec<usize> = l.iter().map(|&p| map[p]).collect();
                m.sort();
                m
            })
            .collect();
        assert_eq!(image, fano.lines().iter().cloned().collect());
        assert!(isomorphic(&fano, &relabelled).is_some());
        // Same parameters, different structure: GQ(2,2) vs Gr(2,6) differ in line count already;
        // 15 points/15 lines of size 3 in a non-GQ arrangement:
        assert!(isomorphic(&generalized_quadrangle(), &grassmannian(6)).is_none());
    }

    #[test]
    fn invalid_line_sets_rejected() {
        assert_eq!(
            IncidenceGeometry::from_lines(4, vec![vec![0, 1, 2], vec![1, 2, 3]]),
            Err(GeometryError::Overlap(0, 1))
        );
        assert_eq!(IncidenceGeometry::from_lines(3, vec![vec![0]]), Err(GeometryError::ShortLine(0)));
        assert!(matches!(
            IncidenceGeometry::from_lines(3, vec![vec![0, 5]]),
            Err(GeometryError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn axiom_ii_on_single_line() {
        let g = IncidenceGeometry::from_lines(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!g.axiom_ii_holds());
    }

    #[test]
    fn filtration_of_grassmannians() {
        assert_eq!(binomial_filtration(&grassmannian(8)).unwrap(), vec![1, 4, 10, 20, 35, 56]);
        let gr6 = grassmannian(6);
        assert_eq!((gr6.point_count(), gr6.line_count()), (15, 20));
        assert!(gr6.point_degrees().iter().all(|&d| d == 4));
        let gr5 = grassmannian(5);
        assert_eq!((gr5.point_count(), gr5.line_count()), (10, 10));
        assert!(gr5.point_degrees().iter().all(|&d| d == 3));
        let gr4 = grassmannian(4);
        assert_eq!((gr4.point_count(), gr4.line_count()), (6, 4));
        assert!(gr4.point_degrees().iter().all(|&d| d == 2));
        assert_eq!(binomial_filtration(&projective_space(2)), Err(GeometryError::NotGrassmannian));
    }

    #[test]
    fn identity_point_lines_are_not_contextual() {
        let g = fano_group();
        let geo = build_geometry(&g).unwrap();
        let mut reps = vec![Permutation::identity(7); 7];
        reps[1] = g.generators()[0].clone();
        let flags = contextuality(&geo, &reps).unwrap();
        assert!(flags.iter().all(|&f| !f));
        assert!(contextuality(&geo, &reps[..3]).is_err());
    }

    #[test]
    fn non_transitive_rejected() {
        assert_eq!(build_geometry(&group(4, &["(1,2)"])), Err(GeometryError::NotTransitive));
    }
}
