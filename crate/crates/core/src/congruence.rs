//! Congruence generation and the congruence lattice `Con(A)`.

use std::collections::HashMap;

use crate::algebra::{for_each_tuple, Element, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::Budget;
use crate::partition::{Partition, UnionFind};

/// Meet/join tables are precomputed up to this many elements.
const TABLE_LIMIT: usize = 1024;

/// Least congruence containing `pairs`.
///
/// Union-find over the universe; every successful merge `(a, b)` is queued
/// and pushed through all basic translations `f(.., a, ..) ~ f(.., b, ..)`.
pub fn generate_congruence(algebra: &FiniteAlgebra, pairs: &[(Element, Element)]) -> Partition {
    let n = algebra.size();
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    while let Some((a, b)) = queue.pop() {
        for op in algebra.operations() {
            let k = op.arity();
            for pos in 0..k {
                left.resize(k, 0);
                right.resize(k, 0);
                for_each_tuple(n, k - 1, |rest| {
                    left[..pos].copy_from_slice(&rest[..pos]);
                    left[pos + 1..].copy_from_slice(&rest[pos..]);
                    right.copy_from_slice(&left);
                    left[pos] = a;
                    right[pos] = b;
                    let x = op.apply(n, &left);
                    let y = op.apply(n, &right);
                    if uf.union(x, y) {
                        queue.push((x, y));
                    }
                });
            }
        }
    }
    uf.into_partition()
}

#[derive(Debug, Clone)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

/// All congruences of an algebra with their order structure.
///
/// Elements are sorted by number of blocks (descending), then by canonical
/// encoding, so index 0 is the identity relation and the last index is the
/// total relation. `x <= y` implies `index(x) <= index(y)`.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    elements: Vec<Partition>,
    index: HashMap<Vec<Element>, usize>,
    leq: BitMatrix,
    meet_table: Option<Vec<u32>>,
    join_table: Option<Vec<u32>>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    meet_irreducibles: Vec<(usize, usize)>,
    modular: bool,
}

impl CongruenceLattice {
    /// Principal congruences, then closure under joins.
    pub fn build(algebra: &FiniteAlgebra, budget: &Budget) -> Result<Self> {
        let n = algebra.size();
        let cap = budget.limits.max_lattice;
        let mut principals: Vec<Partition> = Vec::new();
        let mut seen_principal = std::collections::HashSet::new();
        for a in 0..n {
            for b in a + 1..n {
                let p = generate_congruence(algebra, &[(a, b)]);
                if seen_principal.insert(p.clone()) {
                    principals.push(p);
                }
            }
            budget.check_time()?;
        }

        let zero = Partition::identity(n);
        let mut index: HashMap<Vec<Element>, usize> = HashMap::new();
        index.insert(zero.block_of().to_vec(), 0);
        let mut elements = vec![zero];
        // after processing p_1..p_i, `elements` holds every join of a subset
        for p in &principals {
            let current = elements.len();
            for e in 0..current {
                let j = elements[e].join(p);
                if !index.contains_key(j.block_of()) {
                    if elements.len() >= cap {
                        return Err(Error::ResourceCap {
                            what: "congruence lattice size",
                            limit: cap,
                        });
                    }
                    index.insert(j.block_of().to_vec(), elements.len());
                    elements.push(j);
                }
            }
            budget.check_time()?;
        }
        Ok(Self::from_elements(elements))
    }

    /// Builds the order structure over a join-closed, meet-closed family of
    /// partitions containing the identity and total relations.
    fn from_elements(mut elements: Vec<Partition>) -> Self {
        elements.sort_by(|a, b| {
            b.num_blocks()
                .cmp(&a.num_blocks())
                .then_with(|| a.block_of().cmp(b.block_of()))
        });
        let len = elements.len();
        let index: HashMap<Vec<Element>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.block_of().to_vec(), i))
            .collect();

        let mut leq = BitMatrix::new(len);
        for i in 0..len {
            for j in i..len {
                if elements[i].leq(&elements[j]) {
                    leq.set(i, j);
                }
            }
        }

        let mut upper_covers = vec![Vec::new(); len];
        let mut lower_covers = vec![Vec::new(); len];
        for i in 0..len {
            let mut covers: Vec<usize> = Vec::new();
            for j in i + 1..len {
                if leq.get(i, j) && !covers.iter().any(|&c| leq.get(c, j)) {
                    covers.push(j);
                }
            }
            for &c in &covers {
                lower_covers[c].push(i);
            }
            upper_covers[i] = covers;
        }
        let top = len - 1;
        let atoms = if len > 1 { upper_covers[0].clone() } else { Vec::new() };
        let meet_irreducibles = (0..len)
            .filter(|&i| i != top && upper_covers[i].len() == 1)
            .map(|i| (i, upper_covers[i][0]))
            .collect();

        let mut lattice = CongruenceLattice {
            elements,
            index,
            leq,
            meet_table: None,
            join_table: None,
            upper_covers,
            lower_covers,
            atoms,
            meet_irreducibles,
            modular: false,
        };
        if len <= TABLE_LIMIT {
            let mut meets = Vec::with_capacity(len * len);
            let mut joins = Vec::with_capacity(len * len);
            for i in 0..len {
                for j in 0..len {
                    meets.push(lattice.compute_meet(i, j) as u32);
                    joins.push(lattice.compute_join(i, j) as u32);
                }
            }
            lattice.meet_table = Some(meets);
            lattice.join_table = Some(joins);
        }
        lattice.modular = lattice.check_semimodular(true) && lattice.check_semimodular(false);
        lattice
    }

    fn lookup(&self, p: &Partition) -> usize {
        *self
            .index
            .get(p.block_of())
            .unwrap_or_else(|| panic!("{p} missing from a lattice closed under meet and join"))
    }

    fn compute_meet(&self, i: usize, j: usize) -> usize {
        self.lookup(&self.elements[i].meet(&self.elements[j]))
    }

    fn compute_join(&self, i: usize, j: usize) -> usize {
        self.lookup(&self.elements[i].join(&self.elements[j]))
    }

    /// Upper covering condition (or its dual): any two distinct covers of an
    /// element are both covered by their join.
    fn check_semimodular(&self, upper: bool) -> bool {
        let covers = if upper {
            &self.upper_covers
        } else {
            &self.lower_covers
        };
        for x in 0..self.len() {
            let cs = &covers[x];
            for (s, &a) in cs.iter().enumerate() {
                for &b in &cs[s + 1..] {
                    let z = if upper { self.join(a, b) } else { self.meet(a, b) };
                    if !covers[a].contains(&z) || !covers[b].contains(&z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p.block_of()).copied()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        match &self.meet_table {
            Some(t) => t[i * self.len() + j] as usize,
            None => self.compute_meet(i, j),
        }
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        match &self.join_table {
            Some(t) => t[i * self.len() + j] as usize,
            None => self.compute_join(i, j),
        }
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.upper_covers[lower].contains(&upper)
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// `(delta, theta)` for every element with a unique upper cover `theta`;
    /// the top is excluded.
    pub fn meet_irreducibles(&self) -> &[(usize, usize)] {
        &self.meet_irreducibles
    }

    pub fn is_modular(&self) -> bool {
        self.modular
    }

    /// `{x : lo <= x <= hi}` in lattice order.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        if !self.leq(lo, hi) {
            return Err(Error::NotOrdered { lo, hi });
        }
        Ok((lo..=hi)
            .filter(|&x| self.leq(lo, x) && self.leq(x, hi))
            .collect())
    }

    /// `{x : x >= lo}`.
    pub fn filter(&self, lo: usize) -> Vec<usize> {
        (lo..self.len()).filter(|&x| self.leq(lo, x)).collect()
    }

    /// `{x : x <= hi}`.
    pub fn ideal(&self, hi: usize) -> Vec<usize> {
        (0..=hi).filter(|&x| self.leq(x, hi)).collect()
    }

    /// Exhaustive distributive-law scan.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    fn lattice(a: &FiniteAlgebra) -> CongruenceLattice {
        CongruenceLattice::build(a, &Budget::default()).unwrap()
    }

    #[test]
    fn generate_examples() {
        let z4 = fixtures::z4();
        assert_eq!(generate_congruence(&z4, &[(0, 2)]).to_string(), "{0,2|1,3}");
        assert!(generate_congruence(&z4, &[(0, 1)]).is_total());
        assert!(generate_congruence(&z4, &[]).is_identity());
    }

    #[test]
    fn lattice_shapes() {
        let z4 = lattice(&fixtures::z4());
        assert_eq!(z4.len(), 3);
        assert_eq!(z4.partition(1).to_string(), "{0,2|1,3}");
        assert!(z4.leq(0, 1) && z4.leq(1, 2));
        assert!(z4.is_modular());

        let v4 = lattice(&fixtures::v4());
        assert_eq!(v4.len(), 5);
        assert_eq!(v4.atoms(), &[1, 2, 3]);
        assert!(v4.is_modular());
        assert!(!v4.is_distributive());

        let triv = lattice(&fixtures::triv1());
        assert_eq!(triv.len(), 1);
        assert_eq!(triv.zero(), triv.one());
        assert!(triv.meet_irreducibles().is_empty());
    }

    #[test]
    fn intervals() {
        let z4 = lattice(&fixtures::z4());
        assert_eq!(z4.interval(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(z4.interval(1, 2).unwrap(), vec![1, 2]);
        let v4 = lattice(&fixtures::v4());
        assert_eq!(v4.interval(1, 2), Err(Error::NotOrdered { lo: 1, hi: 2 }));
    }

    #[test]
    fn meet_irreducible_examples() {
        let z4 = lattice(&fixtures::z4());
        assert_eq!(z4.meet_irreducibles(), &[(0, 1), (1, 2)]);
        let v4 = lattice(&fixtures::v4());
        assert_eq!(v4.meet_irreducibles(), &[(1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let v4 = fixtures::v4();
        let budget = crate::limits::Limits {
            max_lattice: 3,
            ..Default::default()
        }
        .start();
        assert!(matches!(
            CongruenceLattice::build(&v4, &budget),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn pentagon_is_not_modular() {
        // a unary algebra whose congruence lattice contains N5
        let f = crate::algebra::Operation::new("f", 1, vec![1, 1, 3, 3]);
        let a = FiniteAlgebra::new("N", 4, vec![f]).unwrap();
        let l = lattice(&a);
        assert_eq!(l.is_modular(), !has_pentagon(&l));
    }

    /// Brute-force scan for a sublattice `0 < a < c < 1, b` with
    /// `a ^ b = c ^ b` and `a v b = c v b`.
    pub(crate) fn has_pentagon(l: &CongruenceLattice) -> bool {
        let n = l.len();
        for a in 0..n {
            for c in 0..n {
                if !l.lt(a, c) {
                    continue;
                }
                for b in 0..n {
                    if l.comparable(a, b) || l.comparable(c, b) {
                        continue;
                    }
                    if l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn order_and_operations_agree_on_fixtures() {
        for a in fixtures::builtin_fixtures() {
            let l = lattice(&a);
            let n = l.len();
            for x in 0..n {
                assert!(a.is_congruence(l.partition(x)));
                for y in 0..n {
                    let m = l.meet(x, y);
                    let j = l.join(x, y);
                    assert!(l.leq(m, x) && l.leq(m, y) && l.leq(x, j) && l.leq(y, j));
                    for z in 0..n {
                        if l.leq(z, x) && l.leq(z, y) {
                            assert!(l.leq(z, m));
                        }
                        if l.leq(x, z) && l.leq(y, z) {
                            assert!(l.leq(j, z));
                        }
                    }
                    let mut pairs = Vec::new();
                    for p in [l.partition(x), l.partition(y)] {
                        for (e, &r) in p.block_of().iter().enumerate() {
                            pairs.push((e, r));
                        }
                    }
                    assert_eq!(l.index_of(&generate_congruence(&a, &pairs)), Some(j));
                }
            }
            assert_eq!(l.is_modular(), !has_pentagon(&l), "{}", a.name());
            for &(d, t) in l.meet_irreducibles() {
                assert_eq!(l.upper_covers(d), &[t]);
            }
        }
    }
}
