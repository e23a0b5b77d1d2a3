//! Brute-force subgroup lattice of a small finite group, for checking the
//! low-index search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fpgeom_core::coset::enumerate_cosets;
use fpgeom_core::fpgroup::Presentation;
use fpgeom_core::permgrp::perm_image;

/// Multiplication table of a finite group: `mul[a][b]` is `a` then `b`.
pub struct FiniteGroup {
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroup {
    /// Regular representation from a Todd–Coxeter run over the trivial subgroup.
    pub fn from_presentation(p: &Presentation) -> FiniteGroup {
        let table = enumerate_cosets(p, &[], 100_000).expect("finite group");
        let g = perm_image(&table);
        let n = g.order() as usize;
        assert!(n <= 128, "oracle handles groups up to order 128");
        let els = g.elements(n).unwrap();
        let pos = |x: &fpgeom_core::Permutation| els.iter().position(|y| y == x).unwrap();
        let mul: Vec<Vec<usize>> = els.iter().map(|a| els.iter().map(|b| pos(&a.then(b))).collect()).collect();
        let identity = els.iter().position(|e| e.is_identity()).unwrap();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == identity).unwrap()).collect();
        FiniteGroup { mul, inv, identity }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    fn closure(&self, mut set: u128) -> u128 {
        set |= 1 << self.identity;
        loop {
            let mut next = set;
            for a in 0..self.order() {
                if set >> a & 1 == 0 {
                    continue;
                }
                for b in 0..self.order() {
                    if set >> b & 1 == 1 {
                        next |= 1 << self.mul[a][b];
                    }
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// Every subgroup, as a bitset over element indices: joins of cyclic
    /// subgroups iterated to a fixpoint.
    pub fn subgroups(&self) -> BTreeSet<u128> {
        let mut all: BTreeSet<u128> = (0..self.order()).map(|a| self.closure(1 << a)).collect();
        loop {
            let list: Vec<u128> = all.iter().copied().collect();
            let before = all.len();
            for (i, &x) in list.iter().enumerate() {
                for &y in &list[i + 1..] {
                    all.insert(self.closure(x | y));
                }
            }
            if all.len() == before {
                return all;
            }
        }
    }

    fn conjugate(&self, h: u128, g: usize) -> u128 {
        (0..self.order())
            .filter(|&x| h >> x & 1 == 1)
            .fold(0, |acc, x| acc | 1 << self.mul[self.mul[self.inv[g]][x]][g])
    }

    /// Conjugacy classes of subgroups counted by index, `counts[d-1]` for `d = 1..=max`.
    pub fn class_counts(&self, max_index: usize) -> Vec<usize> {
        let subs = self.subgroups();
        let mut seen = BTreeSet::new();
        let mut counts = vec![0; max_index];
        for &h in &subs {
            if seen.contains(&h) {
                continue;
            }
            for g in 0..self.order() {
                seen.insert(self.conjugate(h, g));
            }
            let index = self.order() / h.count_ones() as usize;
            if index <= max_index {
                counts[index - 1] += 1;
            }
        }
        counts
    }
}
