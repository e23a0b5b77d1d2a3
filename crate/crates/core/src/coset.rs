//! Todd–Coxeter coset enumeration (HLT strategy with coincidence processing)
//! and canonical coset tables.
//!
//! Cosets are numbered from 0 internally; coset 0 is the subgroup itself.
//! Serialized forms add one so that the subgroup is coset 1.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fpgroup::{Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetError {
    /// The live coset count would have exceeded the limit.
    Exhausted { max_cosets: usize },
    /// A subgroup generator uses a generator the presentation lacks.
    UnknownGenerator,
}

impl fmt::Display for CosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetError::Exhausted { max_cosets } => {
                write!(f, "coset enumeration exceeded {max_cosets} live cosets")
            }
            CosetError::UnknownGenerator => write!(f, "subgroup generator uses an undeclared generator"),
        }
    }
}

impl core::error::Error for CosetError {}

/// Column index of a letter: `x` at `2(x-1)`, `x⁻¹` at `2(x-1)+1`.
#[inline]
pub(crate) fn letter_column(l: i32) -> usize {
    let g = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// A complete coset table: the right action of each generator on cosets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    /// `forward[g][i]` is `i·g`.
    forward: Vec<Vec<usize>>,
    /// `backward[g][i]` is `i·g⁻¹`.
    backward: Vec<Vec<usize>>,
    subgroup_generators: Vec<Word>,
}

impl CosetTable {
    /// Builds a table from forward action columns, checking each is a permutation.
    pub fn from_action(forward: Vec<Vec<usize>>, subgroup_generators: Vec<Word>) -> Option<Self> {
        let index = forward.first().map_or(1, Vec::len);
        let mut backward = Vec::with_capacity(forward.len());
        for col in &forward {
            if col.len() != index {
                return None;
            }
            let mut inv = vec![usize::MAX; index];
            for (i, &j) in col.iter().enumerate() {
                if j >= index || inv[j] != usize::MAX {
                    return None;
                }
                inv[j] = i;
            }
            backward.push(inv);
        }
        Some(CosetTable { forward, backward, subgroup_generators })
    }

    pub fn index(&self) -> usize {
        self.forward.first().map_or(1, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.forward.len()
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    pub(crate) fn set_subgroup_generators(&mut self, gens: Vec<Word>) {
        self.subgroup_generators = gens;
    }

    /// `i·g` for 0-based generator `g`.
    pub fn act(&self, coset: usize, generator: usize) -> usize {
        self.forward[generator][coset]
    }

    /// Forward action columns, one per generator.
    pub fn action(&self) -> &[Vec<usize>] {
        &self.forward
    }

    /// Image of `coset` under a single signed letter.
    #[inline]
    pub fn act_letter(&self, coset: usize, letter: i32) -> usize {
        let g = (letter.unsigned_abs() - 1) as usize;
        if letter > 0 {
            self.forward[g][coset]
        } else {
            self.backward[g][coset]
        }
    }

    /// Traces `word` from `coset`.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.act_letter(c, l))
    }

    /// True if every relator closes at every coset and every subgroup generator closes at coset 0.
    pub fn is_valid_for(&self, p: &Presentation) -> bool {
        if self.generator_count() != p.generator_count() {
            return false;
        }
        let n = self.index();
        p.relators().iter().all(|r| (0..n).all(|c| self.trace(c, r) == c))
            && self.subgroup_generators.iter().all(|w| self.trace(0, w) == 0)
    }

    /// Column order used for breadth-first numbering: `a, a⁻¹, b, b⁻¹, ...`.
    fn column_targets(&self, coset: usize) -> impl Iterator<Item = (i32, usize)> + '_ {
        (0..self.generator_count()).flat_map(move |g| {
            [(g as i32 + 1, self.forward[g][coset]), (-(g as i32 + 1), self.backward[g][coset])]
        })
    }

    /// True if cosets are already numbered in breadth-first discovery order from coset 0.
    pub fn is_standard(&self) -> bool {
        let mut next = 1;
        for c in 0..self.index() {
            for (_, t) in self.column_targets(c) {
                if t >= next {
                    if t != next {
                        return false;
                    }
                    next += 1;
                }
            }
        }
        true
    }

    /// Renumbers cosets in breadth-first discovery order from coset 0.
    pub fn standardize(&self) -> CosetTable {
        let n = self.index();
        let mut new_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        new_of[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for (_, t) in self.column_targets(c) {
                if new_of[t] == usize::MAX {
                    new_of[t] = order.len();
                    order.push(t);
                }
            }
        }
        let forward = self
            .forward
            .iter()
            .map(|col| order.iter().map(|&old| new_of[col[old]]).collect())
            .collect();
        CosetTable::from_action(forward, self.subgroup_generators.clone()).expect("relabeling preserves bijectivity")
    }

    /// Shortest coset representatives via a breadth-first Schreier tree from
    /// coset 0, ties broken by generator order and then by inverse.
    pub fn representatives(&self) -> Vec<Word> {
        let n = self.index();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let base = reps[c].clone().unwrap_or_default();
            for (l, t) in self.column_targets(c) {
                if reps[t].is_none() {
                    let mut letters = base.letters().to_vec();
                    letters.push(l);
                    reps[t] = Some(Word::from_letters(letters));
                    queue.push_back(t);
                }
            }
        }
        reps.into_iter().map(|r| r.unwrap_or_default()).collect()
    }

    /// Schreier generators of the subgroup: `rep(i)·g·rep(i·g)⁻¹` for every
    /// non-tree edge, freely reduced, in (coset, generator) order.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let reps = self.representatives();
        let mut out = Vec::new();
        for c in 0..self.index() {
            for g in 0..self.generator_count() {
                let l = g as i32 + 1;
                let t = self.forward[g][c];
                let w = reps[c].concat(&Word::from_letters(vec![l])).concat(&reps[t].inverse());
                if !w.is_identity() {
                    out.push(w);
                }
            }
        }
        out
    }
}

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    relators: Vec<Vec<usize>>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(gens: usize, relators: Vec<Vec<usize>>, max_cosets: usize) -> Self {
        let cols = 2 * gens;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            max_cosets,
            relators,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, CosetError> {
        if self.live >= self.max_cosets {
            return Err(CosetError::Exhausted { max_cosets: self.max_cosets });
        }
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(core::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != UNDEF {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `word` from `start`, defining new cosets to close any gap.
    fn scan_and_fill(&mut self, start: u32, word: &[usize]) -> Result<(), CosetError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    /// Drops dead cosets, renumbering the live ones in increasing order.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut new_of = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                new_of[c as usize] = next;
                next += 1;
            }
        }
        let mut table = vec![UNDEF; next as usize * self.cols];
        for c in 0..n as u32 {
            let nc = new_of[c as usize];
            if nc == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let t = self.get(c, x);
                if t != UNDEF {
                    let t = self.rep(t);
                    table[nc as usize * self.cols + x] = new_of[t as usize];
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_of
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<(), CosetError> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let relators = core::mem::take(&mut self.relators);
        let mut c = 0u32;
        let result = (|| {
            while (c as usize) < self.allocated() {
                if self.is_live(c) {
                    for r in &relators {
                        self.scan_and_fill(c, r)?;
                        if !self.is_live(c) {
                            break;
                        }
                    }
                    if self.is_live(c) {
                        for x in 0..self.cols {
                            if self.get(c, x) == UNDEF {
                                self.define(c, x)?;
                            }
                        }
                    }
                }
                let dead = self.allocated() - self.live;
                if dead > 1024 && dead > self.live {
                    let map = self.compact();
                    // Resume after the last live coset not beyond c.
                    let mut k = c as i64;
                    while k >= 0 && map[k as usize] == UNDEF {
                        k -= 1;
                    }
                    c = if k < 0 { 0 } else { map[k as usize] + 1 };
                } else {
                    c += 1;
                }
            }
            Ok(())
        })();
        self.relators = relators;
        result
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// Returns a complete standardized table whose index is `[G : H]`, or
/// [`CosetError::Exhausted`] once more than `max_cosets` cosets are live.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, CosetError> {
    let gens = p.generator_count();
    if subgroup.iter().any(|w| w.max_generator() > gens) {
        return Err(CosetError::UnknownGenerator);
    }
    let to_cols = |w: &Word| w.letters().iter().map(|&l| letter_column(l)).collect::<Vec<_>>();
    let relators: Vec<Vec<usize>> = p.relators().iter().map(|r| to_cols(&r.cyclic_reduce())).collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();

    let mut e = Enumerator::new(gens, relators, max_cosets.max(1));
    e.run(&sub)?;
    e.compact();

    let n = e.allocated();
    let forward = (0..gens)
        .map(|g| (0..n as u32).map(|c| e.get(c, 2 * g) as usize).collect())
        .collect();
    let table = CosetTable::from_action(forward, subgroup.to_vec()).expect("closed enumeration yields permutations");
    Ok(table.standardize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::parse_presentation;

    fn check_invariants(t: &CosetTable, p: &Presentation) {
        assert!(t.is_valid_for(p));
        assert!(t.is_standard());
        let reps = t.representatives();
        for (i, r) in reps.iter().enumerate() {
            assert_eq!(t.trace(0, r), i);
        }
        for s in t.schreier_generators() {
            assert_eq!(t.trace(0, &s), 0);
        }
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let p = parse_presentation("a | a^3").unwrap();
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 3);
        check_invariants(&t, &p);
        let reps: Vec<_> = t.representatives().iter().map(|w| w.render()).collect();
        // BFS from coset 1: a then a⁻¹ (= a² in the group).
        assert_eq!(reps, vec!["", "a", "A"]);
    }

    #[test]
    fn s3_cosets_of_involution() {
        let p = parse_presentation("a,b | a^2, b^2, (ab)^3").unwrap();
        let a = p.parse_word("a").unwrap();
        let t = enumerate_cosets(&p, &[a], 100).unwrap();
        assert_eq!(t.index(), 3);
        check_invariants(&t, &p);
        let whole = enumerate_cosets(&p, &[], 100).unwrap();
        assert_eq!(whole.index(), 6);
        check_invariants(&whole, &p);
    }

    #[test]
    fn whole_brieskorn_group_has_index_one() {
        let p = parse_presentation("a,b | aBab^2aBab^3, a^4bAb").unwrap();
        let gens = [p.parse_word("a").unwrap(), p.parse_word("b").unwrap()];
        let t = enumerate_cosets(&p, &gens, 1000).unwrap();
        assert_eq!(t.index(), 1);
        assert_eq!(t.representatives(), vec![Word::identity()]);
    }

    #[test]
    fn larger_finite_groups() {
        // A5 as (2,3,5) triangle group.
        let p = parse_presentation("a,b | a^2, b^3, (ab)^5").unwrap();
        let t = enumerate_cosets(&p, &[], 10_000).unwrap();
        assert_eq!(t.index(), 60);
        check_invariants(&t, &p);
        // Binary octahedral-like von Dyck (2,3,4) is S4.
        let p = parse_presentation("a,b | a^2, b^3, (ab)^4").unwrap();
        let b = p.parse_word("b").unwrap();
        let t = enumerate_cosets(&p, &[b], 10_000).unwrap();
        assert_eq!(t.index(), 8);
        check_invariants(&t, &p);
    }

    #[test]
    fn coincidence_heavy_presentation() {
        // Trivial group in disguise.
        let p = parse_presentation("a,b | aBAbbb, bAbaBBAA").unwrap();
        let t = enumerate_cosets(&p, &[], 100_000);
        if let Ok(t) = t {
            check_invariants(&t, &p);
        }
        let p = parse_presentation("a,b | a^3, b^3, (ab)^3, (aB)^3").unwrap();
        // Order 27 Heisenberg-type quotient.
        let t = enumerate_cosets(&p, &[], 100_000).unwrap();
        assert_eq!(t.index(), 27);
        check_invariants(&t, &p);
    }

    #[test]
    fn infinite_index_exhausts() {
        let p = parse_presentation("a,b | ab^2").unwrap();
        assert_eq!(enumerate_cosets(&p, &[], 50), Err(CosetError::Exhausted { max_cosets: 50 }));
        let free = parse_presentation("a | ").unwrap();
        assert!(enumerate_cosets(&free, &[], 10).is_err());
    }

    #[test]
    fn standardize_is_canonical() {
        let p = parse_presentation("a,b | a^2, b^3, (ab)^5").unwrap();
        let b = p.parse_word("b").unwrap();
        let t = enumerate_cosets(&p, &[b], 10_000).unwrap();
        assert_eq!(t.index(), 20);
        assert_eq!(t.standardize(), t);
    }
}
