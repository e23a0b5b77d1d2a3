//! Weyl–Heisenberg orbits of pure states and their informational
//! completeness.
//!
//! A state `ψ` in dimension `d` is a MIC fiducial when the `d²` projectors
//! `D ψψ† D†` over all displacements `D` span the operator space, i.e. their
//! Gram matrix `tr(Π_a Π_b) = |⟨ψ_a|ψ_b⟩|²` has rank `d²`. It is a SIC
//! fiducial when every off-diagonal Gram entry equals `1/(d+1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::linalg::{symmetric_rank, Matrix};
use crate::perm::Permutation;
use crate::permgrp::PermutationGroup;

/// Relative eigenvalue threshold for the Gram rank.
pub const RANK_TOLERANCE: f64 = 1e-8;
/// Absolute tolerance for clustering Gram entries.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MicError {
    ZeroVector,
    /// Tensor Paulis need a power-of-two dimension.
    NotQubits(usize),
    NotSic,
    ProbabilityCount { expected: usize, got: usize },
}

impl fmt::Display for MicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MicError::ZeroVector => write!(f, "fiducial vector is zero"),
            MicError::NotQubits(d) => write!(f, "dimension {d} is not a power of two"),
            MicError::NotSic => write!(f, "fiducial is not a SIC fiducial"),
            MicError::ProbabilityCount { expected, got } => {
                write!(f, "expected {expected} probabilities, got {got}")
            }
        }
    }
}

impl core::error::Error for MicError {}

/// Which displacement operators generate the orbit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PauliGroup {
    /// `X^i Z^j` for a single qudit.
    #[default]
    WeylHeisenberg,
    /// Tensor products of qubit Paulis; `d` must be a power of two.
    Tensor,
}

impl PauliGroup {
    fn check(self, d: usize) -> Result<(), MicError> {
        match self {
            PauliGroup::Tensor if !d.is_power_of_two() || d < 2 => Err(MicError::NotQubits(d)),
            _ => Ok(()),
        }
    }

    /// `D_(i,j) v`.
    fn displace(self, i: usize, j: usize, v: &[Complex64]) -> Vec<Complex64> {
        let d = v.len();
        let mut out = vec![ZERO; d];
        match self {
            PauliGroup::WeylHeisenberg => {
                for (k, &x) in v.iter().enumerate() {
                    out[(k + i) % d] = root_of_unity((j * k) % d, d) * x;
                }
            }
            PauliGroup::Tensor => {
                for (k, &x) in v.iter().enumerate() {
                    let sign = if (j & k).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                    out[k ^ i] = x * sign;
                }
            }
        }
        out
    }
}

/// `exp(2πi k/n)`.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let t = 2.0 * PI * k as f64 / n as f64;
    Complex64::new(Float::cos(t), Float::sin(t))
}

/// The `d²` matrices `D_(i,j)`, listed in order `i·d + j`.
pub fn displacement_operators(d: usize, group: PauliGroup) -> Result<Vec<Matrix>, MicError> {
    group.check(d)?;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut m = Matrix::zeros(d);
            for k in 0..d {
                let mut e = vec![ZERO; d];
                e[k] = Complex64::new(1.0, 0.0);
                for (r, x) in group.displace(i, j, &e).into_iter().enumerate() {
                    m[(r, k)] = x;
                }
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// A unit vector in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiducial {
    amplitudes: Vec<Complex64>,
}

impl Fiducial {
    /// Normalizes `amplitudes` to unit length.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, MicError> {
        let norm = Float::sqrt(amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm < 1e-12 {
            return Err(MicError::ZeroVector);
        }
        Ok(Fiducial { amplitudes: amplitudes.into_iter().map(|a| a / norm).collect() })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self, MicError> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn projector(&self) -> Matrix {
        Matrix::outer(&self.amplitudes)
    }

    /// The orbit states `D_(i,j) ψ`, order `i·d + j`.
    pub fn orbit_states(&self, group: PauliGroup) -> Result<Vec<Vec<Complex64>>, MicError> {
        let d = self.dim();
        group.check(d)?;
        Ok((0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| group.displace(i, j, &self.amplitudes)).collect())
    }

    /// The `d²` projectors `Π_(i,j) = D ψψ† D†`.
    pub fn pauli_orbit(&self, group: PauliGroup) -> Result<Vec<Matrix>, MicError> {
        Ok(self.orbit_states(group)?.iter().map(|v| Matrix::outer(v)).collect())
    }

    /// Row-major `d² × d²` matrix of `|⟨ψ_a|ψ_b⟩|²`.
    pub fn gram(&self, group: PauliGroup) -> Result<Vec<f64>, MicError> {
        let states = self.orbit_states(group)?;
        let n = states.len();
        let mut g = vec![0.0; n * n];
        for a in 0..n {
            for b in a..n {
                let ip: Complex64 = states[a].iter().zip(&states[b]).map(|(x, y)| x.conj() * y).sum();
                g[a * n + b] = ip.norm_sqr();
                g[b * n + a] = ip.norm_sqr();
            }
        }
        Ok(g)
    }

    /// Fiducial report with the default tolerances.
    pub fn report(&self, group: PauliGroup) -> Result<FiducialReport, MicError> {
        self.report_with(group, RANK_TOLERANCE, CLUSTER_TOLERANCE)
    }

    /// `rank_tol` is relative to the largest eigenvalue; `cluster_tol` is absolute.
    pub fn report_with(&self, group: PauliGroup, rank_tol: f64, cluster_tol: f64) -> Result<FiducialReport, MicError> {
        let d = self.dim();
        let gram = self.gram(group)?;
        let n = d * d;
        let gram_rank = symmetric_rank(gram.clone(), n, rank_tol);
        let angle_set = cluster_off_diagonal(&gram, n, cluster_tol);
        let target = 1.0 / (d as f64 + 1.0);
        let is_mic = gram_rank == n;
        let is_sic = is_mic
            && (0..n).all(|a| (0..n).all(|b| a == b || (gram[a * n + b] - target).abs() <= cluster_tol));
        Ok(FiducialReport {
            fiducial: self.clone(),
            dim: d,
            gram_rank,
            pp: angle_set.len(),
            angle_set,
            is_mic,
            is_sic,
        })
    }

    pub fn gram_rank(&self, group: PauliGroup) -> Result<usize, MicError> {
        Ok(self.report(group)?.gram_rank)
    }

    pub fn pairwise_products(&self, group: PauliGroup) -> Result<(usize, Vec<f64>), MicError> {
        let r = self.report(group)?;
        Ok((r.pp, r.angle_set))
    }

    pub fn is_sic(&self, group: PauliGroup) -> Result<bool, MicError> {
        Ok(self.report(group)?.is_sic)
    }

    /// `p_i = tr(ρ Π_i)/d` for the SIC effects `E_i = Π_i/d`.
    pub fn born_probabilities(&self, rho: &Matrix, group: PauliGroup) -> Result<Vec<f64>, MicError> {
        let d = self.dim() as f64;
        Ok(self
            .orbit_states(group)?
            .iter()
            .map(|v| {
                let rv = rho.apply(v);
                let e: Complex64 = v.iter().zip(&rv).map(|(x, y)| x.conj() * y).sum();
                e.re / d
            })
            .collect())
    }

    /// `ρ = Σ [(d+1) p_i − 1/d] Π_i`; only valid for SIC fiducials.
    pub fn reconstruct_state(&self, p: &[f64], group: PauliGroup) -> Result<Matrix, MicError> {
        let d = self.dim();
        if p.len() != d * d {
            return Err(MicError::ProbabilityCount { expected: d * d, got: p.len() });
        }
        if !self.is_sic(group)? {
            return Err(MicError::NotSic);
        }
        let mut rho = Matrix::zeros(d);
        for (pi, proj) in p.iter().zip(self.pauli_orbit(group)?) {
            let w = (d as f64 + 1.0) * pi - 1.0 / d as f64;
            rho = &rho + &proj.scale(Complex64::new(w, 0.0));
        }
        Ok(rho)
    }

    /// True if `other` equals `D_(i,j) self` up to a global phase for some `(i,j)`.
    pub fn displacement_equivalent(&self, other: &Fiducial, group: PauliGroup, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match self.orbit_states(group) {
            Ok(states) => states.iter().any(|v| {
                let ip: Complex64 = v.iter().zip(&other.amplitudes).map(|(x, y)| x.conj() * y).sum();
                (ip.norm() - 1.0).abs() <= tol
            }),
            Err(_) => false,
        }
    }

    /// Key identifying the displacement orbit up to global phase.
    fn orbit_key(&self, group: PauliGroup) -> Vec<i64> {
        let states = self.orbit_states(group).expect("dimension checked by caller");
        states
            .iter()
            .map(|v| {
                let lead = v.iter().find(|x| x.norm() > 1e-6).copied().unwrap_or(Complex64::new(1.0, 0.0));
                let phase = lead.conj() / lead.norm();
                v.iter()
                    .flat_map(|x| {
                        let y = x * phase;
                        [Float::round(y.re * 1e6) as i64, Float::round(y.im * 1e6) as i64]
                    })
                    .collect::<Vec<i64>>()
            })
            .min()
            .unwrap_or_default()
    }
}

/// Distinct off-diagonal values, clustered greedily after sorting.
fn cluster_off_diagonal(gram: &[f64], n: usize, tol: f64) -> Vec<f64> {
    let mut vals: Vec<f64> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).map(|(a, b)| gram[a * n + b]).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).expect("finite Gram entries"));
    let mut out: Vec<f64> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for v in vals {
        if v - start > tol {
            out.push(v);
            start = v;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiducialReport {
    pub fiducial: Fiducial,
    pub dim: usize,
    pub gram_rank: usize,
    /// Number of distinct off-diagonal Gram values.
    pub pp: usize,
    pub angle_set: Vec<f64>,
    pub is_mic: bool,
    pub is_sic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiducialBudget {
    /// Largest group order whose elements are listed.
    pub max_group_order: u128,
    /// Abelian subgroups examined before giving up.
    pub max_subgroups: usize,
}

impl Default for FiducialBudget {
    fn default() -> Self {
        FiducialBudget { max_group_order: 50_000, max_subgroups: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiducialSearch {
    pub candidates: Vec<FiducialReport>,
    /// False when the budget cut the search short.
    pub complete: bool,
}

impl FiducialSearch {
    pub fn mic_found(&self) -> bool {
        self.candidates.iter().any(|c| c.is_mic)
    }
}

/// One element per conjugacy class, in first-seen order over `elements`.
fn class_representatives(elements: &[Permutation], generators: &[Permutation]) -> Vec<Permutation> {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut reps = Vec::new();
    for e in elements {
        if seen.contains(e) {
            continue;
        }
        reps.push(e.clone());
        seen.insert(e.clone());
        let mut stack = vec![e.clone()];
        while let Some(x) = stack.pop() {
            for g in generators {
                let y = x.conjugate_by(g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Elements `x^s y^t` of `⟨x, y⟩` (commuting) with one exponent pair each.
fn abelian_elements(x: &Permutation, y: &Permutation) -> (Vec<(Permutation, usize, usize)>, usize, usize) {
    let (ox, oy) = (x.order() as usize, y.order() as usize);
    let mut seen = BTreeMap::new();
    let mut xs = Permutation::identity(x.degree());
    for s in 0..ox {
        let mut e = xs.clone();
        for t in 0..oy {
            seen.entry(e.clone()).or_insert((s, t));
            e = e.then(y);
        }
        xs = xs.then(x);
    }
    (seen.into_iter().map(|(p, (s, t))| (p, s, t)).collect(), ox, oy)
}

/// One-dimensional joint eigenvectors of the permutation matrices of `⟨x, y⟩`.
///
/// For a character `χ`, each orbit on which `χ` is trivial on the point
/// stabilizer contributes `Σ_a conj χ(a) e_{o·a}`; the eigenspace is kept only
/// when exactly one orbit contributes.
fn joint_eigenvectors(x: &Permutation, y: &Permutation) -> Vec<Vec<Complex64>> {
    let d = x.degree();
    let (elements, ox, oy) = abelian_elements(x, y);
    let l = ox / crate::perm::gcd(ox as u128, oy as u128) as usize * oy;
    // Relations x^s y^t = 1 constrain the characters.
    let identity = Permutation::identity(d);
    let mut relations = Vec::new();
    let mut xs = identity.clone();
    for s in 0..ox {
        let mut e = xs.clone();
        for t in 0..oy {
            if e == identity && (s, t) != (0, 0) {
                relations.push((s, t));
            }
            e = e.then(y);
        }
        xs = xs.then(x);
    }
    let phase = |alpha: usize, beta: usize, s: usize, t: usize| (alpha * s * (l / ox) + beta * t * (l / oy)) % l;

    // Orbits of the subgroup, with base points.
    let mut orbit_of = vec![usize::MAX; d];
    let mut bases = Vec::new();
    for o in 0..d {
        if orbit_of[o] == usize::MAX {
            for (e, _, _) in &elements {
                orbit_of[e.apply(o)] = bases.len();
            }
            bases.push(o);
        }
    }

    let mut out = Vec::new();
    for alpha in 0..ox {
        for beta in 0..oy {
            if relations.iter().any(|&(s, t)| phase(alpha, beta, s, t) != 0) {
                continue;
            }
            let supported: Vec<usize> = bases
                .iter()
                .copied()
                .filter(|&o| elements.iter().all(|(e, s, t)| e.apply(o) != o || phase(alpha, beta, *s, *t) == 0))
                .collect();
            if supported.len() != 1 {
                continue;
            }
            let o = supported[0];
            let mut v = vec![ZERO; d];
            for (e, s, t) in &elements {
                v[e.apply(o)] = root_of_unity(phase(alpha, beta, *s, *t), l).conj();
            }
            out.push(v);
        }
    }
    out
}

/// Bounded search for MIC fiducials among joint eigenvectors of abelian
/// subgroups `⟨x, y⟩` of `P`, with `x` running over conjugacy class
/// representatives and `y` over elements commuting with `x`.
///
/// Results are deduplicated up to global phase and displacement, and sorted
/// MIC first, then by `pp`.
pub fn find_fiducials(p: &PermutationGroup, group: PauliGroup, budget: FiducialBudget) -> Result<FiducialSearch, MicError> {
    let d = p.degree();
    if d < 2 {
        return Ok(FiducialSearch { candidates: Vec::new(), complete: true });
    }
    group.check(d)?;
    let elements = match p.elements(budget.max_group_order as usize) {
        Some(e) if p.order() <= budget.max_group_order => e,
        _ => return Ok(FiducialSearch { candidates: Vec::new(), complete: false }),
    };
    let reps = class_representatives(&elements, p.generators());
    let mut subgroups: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut complete = true;
    let mut pairs = Vec::new();
    'outer: for x in &reps {
        for y in elements.iter().filter(|y| x.commutes_with(y)) {
            let (els, _, _) = abelian_elements(x, y);
            let key: Vec<Permutation> = els.into_iter().map(|e| e.0).collect();
            if subgroups.insert(key) {
                if subgroups.len() > budget.max_subgroups {
                    complete = false;
                    break 'outer;
                }
                pairs.push((x.clone(), y.clone()));
            }
        }
    }

    let mut found: BTreeMap<Vec<i64>, Fiducial> = BTreeMap::new();
    for (x, y) in &pairs {
        for v in joint_eigenvectors(x, y) {
            let f = Fiducial::new(v)?;
            found.entry(f.orbit_key(group)).or_insert(f);
        }
    }
    let mut candidates = Vec::with_capacity(found.len());
    for f in found.into_values() {
        candidates.push(f.report(group)?);
    }
    // Stable sort keeps the canonical-key order among ties.
    candidates.sort_by_key(|r| (!r.is_mic, r.pp));
    Ok(FiducialSearch { candidates, complete })
}
