//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.
//!
//! Base points are taken from an optional prefix and then in increasing order
//! of the smallest moved point, so every construction is reproducible.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coset::CosetTable;
use crate::fpgroup::Word;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermGroupError {
    PointOutOfRange(usize),
    EqualPoints,
    NotTransitive,
    DegreeMismatch,
}

impl fmt::Display for PermGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermGroupError::PointOutOfRange(p) => write!(f, "point {} is out of range", p + 1),
            PermGroupError::EqualPoints => write!(f, "pair stabilizer needs two distinct points"),
            PermGroupError::NotTransitive => write!(f, "group is not transitive"),
            PermGroupError::DegreeMismatch => write!(f, "generators have different degrees"),
        }
    }
}

impl core::error::Error for PermGroupError {}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Permutation>>,
    /// Per orbit position, how many generators have had their Schreier generator sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal, checked: vec![0] }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in 0..self.gens.len() {
                let img = self.gens[s].apply(beta);
                if self.transversal[img].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().then(&self.gens[s]);
                    self.transversal[img] = Some(u);
                    self.orbit.push(img);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain { degree, levels: prefix.iter().map(|&b| Level::new(b, degree)).collect() };
        for g in gens {
            chain.insert_generator(g.clone());
        }
        chain
    }

    fn base_fixed_by(&self, g: &Permutation, upto: usize) -> bool {
        self.levels[..upto].iter().all(|l| g.apply(l.base) == l.base)
    }

    fn push_level_for(&mut self, g: &Permutation) {
        let used: BTreeSet<usize> = self.levels.iter().map(|l| l.base).collect();
        let b = (0..self.degree).find(|&p| g.apply(p) != p && !used.contains(&p)).expect("non-identity moves an unused point");
        self.levels.push(Level::new(b, self.degree));
    }

    /// Adds `g` to the generated group and restores the chain invariants.
    fn insert_generator(&mut self, g: Permutation) {
        if g.is_identity() || self.contains(&g) {
            return;
        }
        if self.base_fixed_by(&g, self.levels.len()) {
            self.push_level_for(&g);
        }
        // g lies in every S(l) whose earlier base points it fixes.
        let top = (0..self.levels.len()).take_while(|&l| self.base_fixed_by(&g, l)).last().unwrap_or(0);
        for l in 0..=top {
            self.levels[l].add_gen(g.clone());
        }
        self.complete(top);
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.find_residue(i as usize) {
                Some((y, j)) => {
                    if j == self.levels.len() {
                        self.push_level_for(&y);
                    }
                    for l in (i as usize + 1)..=j {
                        self.levels[l].add_gen(y.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Sifts unchecked Schreier generators of level `i` until one fails.
    fn find_residue(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            while self.levels[i].checked[k] < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let s = level.checked[k];
                let beta = level.orbit[k];
                let g = &level.gens[s];
                let u_beta = level.transversal[beta].as_ref().unwrap();
                let u_img = level.transversal[g.apply(beta)].as_ref().unwrap();
                let h = u_beta.then(g).then(&u_img.inverse());
                self.levels[i].checked[k] += 1;
                let (y, j) = self.sift(h, i + 1);
                if !y.is_identity() {
                    return Some((y, j));
                }
            }
            k += 1;
        }
        None
    }

    /// Strips `g` through levels `from..`; returns the residue and the level reached.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let img = g.apply(level.base);
            match &level.transversal[img] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// The chain of the pointwise stabilizer of the first `k` base points.
    fn tail(&self, k: usize) -> StabChain {
        StabChain { degree: self.degree, levels: self.levels[k.min(self.levels.len())..].to_vec() }
    }
}

/// A permutation group on `{0, .., degree-1}` with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermGroupError> {
        Self::with_base(degree, generators, &[])
    }

    /// Builds the chain with `prefix` as the first base points.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, prefix: &[usize]) -> Result<Self, PermGroupError> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(PermGroupError::DegreeMismatch);
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(PermGroupError::PointOutOfRange(p));
        }
        let chain = StabChain::new(degree, &generators, prefix);
        Ok(PermutationGroup { degree, generators, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), chain: StabChain::new(degree, &[], &[]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    /// Sizes of the basic orbits; their product is the order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Same group: equal orders and mutual generator membership.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
            && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Orbit of `point`, in breadth-first order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &q in &o {
                seen[q] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Points fixed by every element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree).filter(|&p| self.generators.iter().all(|g| g.apply(p) == p)).collect()
    }

    fn stabilizer_of(&self, points: &[usize]) -> PermutationGroup {
        let chain = StabChain::new(self.degree, &self.generators, points);
        let tail = chain.tail(points.len());
        let generators = tail.levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        PermutationGroup { degree: self.degree, generators, chain: tail }
    }

    pub fn point_stabilizer(&self, alpha: usize) -> Result<PermutationGroup, PermGroupError> {
        if alpha >= self.degree {
            return Err(PermGroupError::PointOutOfRange(alpha));
        }
        Ok(self.stabilizer_of(&[alpha]))
    }

    /// Pointwise stabilizer of the ordered pair `(alpha, beta)`.
    pub fn pair_stabilizer(&self, alpha: usize, beta: usize) -> Result<PermutationGroup, PermGroupError> {
        for p in [alpha, beta] {
            if p >= self.degree {
                return Err(PermGroupError::PointOutOfRange(p));
            }
        }
        if alpha == beta {
            return Err(PermGroupError::EqualPoints);
        }
        Ok(self.stabilizer_of(&[alpha, beta]))
    }

    /// Number of orbits on ordered pairs, diagonal included.
    pub fn rank(&self) -> Result<usize, PermGroupError> {
        if !self.is_transitive() {
            return Err(PermGroupError::NotTransitive);
        }
        if self.degree == 0 {
            return Ok(0);
        }
        Ok(self.stabilizer_of(&[0]).orbits().len())
    }

    /// Normal closure of `gens` inside this group.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermutationGroup {
        let mut chain = StabChain::new(self.degree, &[], &[]);
        let mut closure_gens: Vec<Permutation> = Vec::new();
        let mut queue: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        while let Some(h) = queue.pop() {
            if chain.contains(&h) {
                continue;
            }
            chain.insert_generator(h.clone());
            for g in &self.generators {
                queue.push(h.conjugate_by(g));
            }
            closure_gens.push(h);
        }
        PermutationGroup { degree: self.degree, generators: closure_gens, chain }
    }

    /// True iff the normal closure of `gens` is the whole group.
    pub fn normal_closure_is_full(&self, gens: &[Permutation]) -> bool {
        self.normal_closure(gens).order() == self.order()
    }

    pub fn derived_subgroup(&self) -> PermutationGroup {
        let mut comms = Vec::new();
        for (i, x) in self.generators.iter().enumerate() {
            for y in &self.generators[i + 1..] {
                comms.push(x.inverse().then(&y.inverse()).then(x).then(y));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Elements commuting with every generator, if any besides the identity.
    pub fn has_nontrivial_center(&self) -> bool {
        match self.elements(100_000) {
            Some(els) => els
                .iter()
                .any(|e| !e.is_identity() && self.generators.iter().all(|g| g.commutes_with(e))),
            None => false,
        }
    }

    /// Every element, or None if the order exceeds `cap`. Enumerated as
    /// products of transversal elements, deepest level first.
    pub fn elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        if self.order() > cap as u128 {
            return None;
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for h in &out {
                for &beta in &level.orbit {
                    next.push(h.then(level.transversal[beta].as_ref().unwrap()));
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Transitive and without nontrivial blocks.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|b| self.minimal_block(0, b).iter().filter(|&&x| x).count() == self.degree)
    }

    /// Smallest block containing `alpha` and `beta`, as a membership mask.
    fn minimal_block(&self, alpha: usize, beta: usize) -> Vec<bool> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = vec![(alpha, beta)];
        let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
        parent[rb.max(ra)] = rb.min(ra);
        while let Some((x, y)) = queue.pop() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                    queue.push((gx, gy));
                }
            }
        }
        let root = find(&mut parent, alpha);
        (0..n).map(|p| find(&mut parent, p) == root).collect()
    }

    /// Closed-vocabulary name: `A_n`, `S_n`, `PSL(2,7)`, `SL(2,7)`, `PSL(2,13)`,
    /// else `order=<n>` with transitivity and primitivity flags.
    pub fn name(&self) -> String {
        let order = self.order();
        let fallback = || {
            format!("order={} transitive={} primitive={}", order, self.is_transitive(), self.is_primitive())
        };
        if order < 60 {
            return fallback();
        }
        if self.is_perfect() {
            match order {
                168 => return "PSL(2,7)".into(),
                336 => return "SL(2,7)".into(),
                1092 => return "PSL(2,13)".into(),
                _ => {}
            }
            if let Some(n) = factorial_index(order * 2) {
                // A_8 and PSL(3,4) share their order; only A_8 has elements of order 15.
                if n != 8 || self.has_element_of_order(15) {
                    return format!("A_{n}");
                }
            }
        } else if let Some(n) = factorial_index(order) {
            if n >= 5 {
                let derived = self.derived_subgroup();
                if derived.order() * 2 == order && derived.is_perfect() {
                    return format!("S_{n}");
                }
            }
        }
        fallback()
    }

    fn has_element_of_order(&self, k: u128) -> bool {
        self.elements(200_000).is_some_and(|els| els.iter().any(|e| e.order() == k))
    }
}

fn factorial_index(order: u128) -> Option<usize> {
    let mut f: u128 = 1;
    for n in 1..=34usize {
        f = f.checked_mul(n as u128)?;
        if f == order {
            return Some(n);
        }
        if f > order {
            return None;
        }
    }
    None
}

/// The permutation image of G acting on the cosets: one generator per column.
pub fn perm_image(table: &CosetTable) -> PermutationGroup {
    let d = table.index();
    let gens = table
        .action()
        .iter()
        .map(|col| Permutation::from_images(col.clone()).expect("coset table columns are permutations"))
        .collect();
    PermutationGroup::new(d, gens).expect("columns share the table's degree")
}

/// Image of a word under generator permutations (letters applied left to right).
pub fn word_image(word: &Word, generators: &[Permutation], degree: usize) -> Permutation {
    let inverses: Vec<Permutation> = generators.iter().map(Permutation::inverse).collect();
    word.letters().iter().fold(Permutation::identity(degree), |acc, &l| {
        let g = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            acc.then(&generators[g])
        } else {
            acc.then(&inverses[g])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::enumerate_cosets;
    use crate::fpgroup::parse_presentation;

    fn perm(text: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(text, d).unwrap()
    }

    fn group(d: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::new(d, gens.iter().map(|g| perm(g, d)).collect()).unwrap()
    }

    /// Closure by brute force, independent of the chain.
    fn brute_elements(g: &PermutationGroup) -> BTreeSet<Permutation> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![Permutation::identity(g.degree())];
        seen.insert(stack[0].clone());
        while let Some(x) = stack.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn a5() -> PermutationGroup {
        group(5, &["(1,2,3,4,5)", "(3,4,5)"])
    }

    fn fano_group() -> PermutationGroup {
        group(7, &["(1,2,4,5,6,7,3)", "(2,5,6)(3,7,4)"])
    }

    #[test]
    fn orders() {
        assert_eq!(group(3, &["(1,2)", "(1,2,3)"]).order(), 6);
        assert_eq!(a5().order(), 60);
        assert_eq!(fano_group().order(), 168);
        assert_eq!(PermutationGroup::trivial(4).order(), 1);
        assert_eq!(group(10, &["(1,2)", "(1,2,3,4,5,6,7,8,9,10)"]).order(), 3_628_800);
    }

    #[test]
    fn membership_matches_brute_force() {
        for g in [a5(), fano_group(), group(6, &["(1,2,3)(4,5,6)", "(1,4)"])] {
            let els = brute_elements(&g);
            assert_eq!(els.len() as u128, g.order());
            let listed: BTreeSet<_> = g.elements(10_000).unwrap().into_iter().collect();
            assert_eq!(listed, els);
            // every permutation of the degree is a member iff it is listed
            if g.degree() <= 6 {
                let mut all: Vec<usize> = (0..g.degree()).collect();
                permute_all(&mut all, 0, &mut |p| {
                    let p = Permutation::from_images(p.to_vec()).unwrap();
                    assert_eq!(g.contains(&p), els.contains(&p));
                });
            }
        }
    }

    fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn a5_pair_stabilizer_is_a3() {
        let g = a5();
        let s = g.pair_stabilizer(0, 1).unwrap();
        assert_eq!(s.order(), 3);
        let brute = brute_elements(&g).into_iter().filter(|p| p.apply(0) == 0 && p.apply(1) == 1).count();
        assert_eq!(brute, 3);
        assert_eq!(s.fixed_points(), vec![0, 1]);
        assert_eq!(g.pair_stabilizer(0, 0).unwrap_err(), PermGroupError::EqualPoints);
        assert_eq!(g.pair_stabilizer(0, 7).unwrap_err(), PermGroupError::PointOutOfRange(7));
    }

    #[test]
    fn fano_pair_stabilizers_are_klein() {
        let g = fano_group();
        for a in 0..7 {
            for b in 0..7 {
                if a == b {
                    continue;
                }
                let s = g.pair_stabilizer(a, b).unwrap();
                assert_eq!(s.order(), 4);
                let els = s.elements(10).unwrap();
                assert!(els.iter().all(|e| e.then(e).is_identity()));
            }
        }
        assert!(PermutationGroup::trivial(3).point_stabilizer(1).unwrap().is_trivial());
    }

    #[test]
    fn orbit_stabilizer_identity() {
        for g in [a5(), fano_group(), group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)"])] {
            for p in 0..g.degree() {
                assert_eq!(g.orbit(p).len() as u128 * g.point_stabilizer(p).unwrap().order(), g.order());
            }
        }
    }

    /// Orbitals counted by brute force on ordered pairs.
    fn brute_rank(g: &PermutationGroup) -> usize {
        let n = g.degree();
        let mut seen = vec![false; n * n];
        let mut count = 0;
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                let (a, b) = (x / n, x % n);
                for s in g.generators() {
                    let y = s.apply(a) * n + s.apply(b);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn ranks() {
        assert_eq!(a5().rank().unwrap(), 2);
        assert_eq!(fano_group().rank().unwrap(), 2);
        assert_eq!(brute_rank(&fano_group()), 2);
        let c5 = group(5, &["(1,2,3,4,5)"]);
        assert_eq!(c5.rank().unwrap(), 5);
        assert_eq!(brute_rank(&c5), 5);
        let g = group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,6)"]);
        assert_eq!(g.rank().unwrap(), brute_rank(&g));
        assert_eq!(group(4, &["(1,2)"]).rank(), Err(PermGroupError::NotTransitive));
    }

    #[test]
    fn normal_closures() {
        let g = a5();
        assert!(g.normal_closure_is_full(g.generators()));
        let c4 = group(4, &["(1,2,3,4)"]);
        let h = [perm("(1,3)(2,4)", 4)];
        assert!(!c4.normal_closure_is_full(&h));
        assert_eq!(c4.normal_closure(&h).order(), 2);
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let n = s4.normal_closure(&[perm("(1,2)(3,4)", 4)]);
        assert_eq!(n.order(), 4);
        let nn = s4.normal_closure(n.generators());
        assert!(nn.same_group(&n));
        assert_eq!(s4.derived_subgroup().order(), 12);
    }

    #[test]
    fn names() {
        assert_eq!(a5().name(), "A_5");
        assert_eq!(fano_group().name(), "PSL(2,7)");
        assert_eq!(group(5, &["(1,2,3,4,5)", "(1,2)"]).name(), "S_5");
        assert!(group(5, &["(1,2,3,4,5)"]).name().starts_with("order=5"));
        assert!(group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).name().contains("primitive=false"));
        // PSL(2,13) on the 14 points of the projective line over F13.
        let x = perm("(1,2,3,4,5,6,7,8,9,10,11,12,13)", 14);
        let y = projective_line_inversion(13);
        assert_eq!(PermutationGroup::new(14, vec![x, y]).unwrap().name(), "PSL(2,13)");
    }

    /// `t -> -1/t` on the projective line over F_p; points 1..p are 0..p-1, point p+1 is ∞.
    fn projective_line_inversion(p: usize) -> Permutation {
        let inf = p;
        let mut images = vec![0; p + 1];
        images[inf] = 0;
        images[0] = inf;
        for t in 1..p {
            let inv = (1..p).find(|&u| (u * t) % p == 1).unwrap();
            images[t] = (p - inv) % p;
        }
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn a8_on_pairs_is_named_a8() {
        let g1 = perm("(2, 4, 8, 6, 3)(5, 10, 15, 13, 9)(11, 12, 18, 25, 17)(14, 20, 19, 24, 21)(16, 22, 26, 28, 23)", 28);
        let g2 = perm("(1, 2, 5, 11, 6, 7, 3)(4, 8, 12, 19, 22, 14, 9)(10, 16, 24, 27, 21, 26, 17)(13, 20, 18, 25, 28, 23, 15)", 28);
        let g = PermutationGroup::new(28, vec![g1, g2]).unwrap();
        assert_eq!(g.order(), 20160);
        assert_eq!(g.name(), "A_8");
        assert!(g.is_primitive());
    }

    #[test]
    fn image_of_coset_action() {
        let p = parse_presentation("a | a^3").unwrap();
        let t = enumerate_cosets(&p, &[], 10).unwrap();
        let g = perm_image(&t);
        assert_eq!(g.generators()[0].to_cycle_string(), "(1, 2, 3)");
        assert_eq!(g.order(), 3);
        let one = enumerate_cosets(&p, &[p.parse_word("a").unwrap()], 10).unwrap();
        let g = perm_image(&one);
        assert_eq!((g.degree(), g.order()), (1, 1));
    }

    #[test]
    fn word_images_follow_right_action() {
        let p = parse_presentation("a,b | a^2, b^3, (ab)^5").unwrap();
        let b = p.parse_word("b").unwrap();
        let t = enumerate_cosets(&p, &[b], 1000).unwrap();
        let g = perm_image(&t);
        for (i, rep) in t.representatives().iter().enumerate() {
            assert_eq!(word_image(rep, g.generators(), g.degree()).apply(0), i);
        }
    }
}
