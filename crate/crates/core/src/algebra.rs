//! Finite algebras given by explicit operation tables.
//!
//! The universe is always `0..n`. An operation of arity `k` stores `n^k`
//! entries indexed by argument tuples in lexicographic order with the
//! leftmost argument most significant.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::closure::{self, ClosureOptions};
use crate::error::{Error, Result};
use crate::limits::Budget;
use crate::partition::Partition;

/// Arity cap for operations accepted from input.
pub const MAX_ARITY: usize = 4;
/// Universes must fit the `u16` coordinates of the closure engine.
pub const MAX_SIZE: usize = 1 << 16;

pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<Element>,
}

impl Operation {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<Element>) -> Self {
        Operation {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Builds the table by evaluating `f` on every argument tuple.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        size: usize,
        mut f: impl FnMut(&[Element]) -> Element,
    ) -> Self {
        let mut table = Vec::with_capacity(size.pow(arity as u32));
        for_each_tuple(size, arity, |args| table.push(f(args)));
        Operation::new(name, arity, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Lexicographic index of `args`; no range checks.
    pub fn index_of(&self, size: usize, args: &[Element]) -> usize {
        args.iter().fold(0, |acc, &a| acc * size + a)
    }

    #[inline]
    pub fn apply(&self, size: usize, args: &[Element]) -> Element {
        self.table[self.index_of(size, args)]
    }
}

/// Calls `f` on every tuple in `0..size` of the given length, in
/// lexicographic order.
pub fn for_each_tuple(size: usize, len: usize, mut f: impl FnMut(&[Element])) {
    if size == 0 && len > 0 {
        return;
    }
    let mut tuple = vec![0; len];
    loop {
        f(&tuple);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<Operation>,
}

impl FiniteAlgebra {
    /// Validates sizes, table lengths, entry ranges and name uniqueness.
    pub fn new(name: impl Into<String>, size: usize, operations: Vec<Operation>) -> Result<Self> {
        let name = name.into();
        if size == 0 {
            return Err(Error::InvalidAlgebra("empty universe".into()));
        }
        if size > MAX_SIZE {
            return Err(Error::InvalidAlgebra(format!(
                "universe size {size} exceeds {MAX_SIZE}"
            )));
        }
        let mut names = BTreeSet::new();
        for op in &operations {
            if !names.insert(op.name.as_str()) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate operation name `{}`",
                    op.name
                )));
            }
            let expected = size
                .checked_pow(op.arity as u32)
                .ok_or_else(|| Error::InvalidAlgebra(format!("table of `{}` too large", op.name)))?;
            if op.table.len() != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "operation `{}` of arity {} needs {} entries, found {}",
                    op.name,
                    op.arity,
                    expected,
                    op.table.len()
                )));
            }
            if let Some(&bad) = op.table.iter().find(|&&x| x >= size) {
                return Err(Error::ElementOutOfRange { element: bad, size });
            }
        }
        Ok(FiniteAlgebra {
            name,
            size,
            operations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn operation(&self, name: &str) -> Option<usize> {
        self.operations.iter().position(|op| op.name == name)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn evaluate(&self, op_index: usize, args: &[Element]) -> Result<Element> {
        let op = self.operations.get(op_index).ok_or_else(|| {
            Error::InvalidAlgebra(format!("no operation with index {op_index}"))
        })?;
        if args.len() != op.arity {
            return Err(Error::ArityMismatch {
                op: op.name.clone(),
                expected: op.arity,
                got: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                size: self.size,
            });
        }
        Ok(op.apply(self.size, args))
    }

    /// Least subuniverse containing `seed` (constants included), sorted.
    pub fn subuniverse_closure(&self, seed: &BTreeSet<Element>) -> BTreeSet<Element> {
        let gens: Vec<Vec<u16>> = seed.iter().map(|&x| vec![x as u16]).collect();
        let closed = closure::close(self, 1, &gens, ClosureOptions::default(), &Budget::unlimited())
            .expect("unbounded closure of a unary power cannot fail");
        closed.iter().map(|v| v[0] as Element).collect()
    }

    /// All nonempty subuniverses sorted by cardinality, then by their sorted
    /// member lists.
    pub fn enumerate_subuniverses(&self) -> Vec<BTreeSet<Element>> {
        let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
        let mut frontier = Vec::new();
        let bottom = self.subuniverse_closure(&BTreeSet::new());
        let starts = if bottom.is_empty() {
            (0..self.size)
                .map(|a| self.subuniverse_closure(&BTreeSet::from([a])))
                .collect()
        } else {
            vec![bottom]
        };
        for s in starts {
            if seen.insert(s.iter().copied().collect()) {
                frontier.push(s);
            }
        }
        // every subuniverse is reachable by adding one generator at a time
        while let Some(s) = frontier.pop() {
            for a in 0..self.size {
                if s.contains(&a) {
                    continue;
                }
                let mut seed = s.clone();
                seed.insert(a);
                let t = self.subuniverse_closure(&seed);
                if seen.insert(t.iter().copied().collect()) {
                    frontier.push(t);
                }
            }
        }
        let mut all: Vec<Vec<Element>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.into_iter().map(|v| v.into_iter().collect()).collect()
    }

    /// The algebra induced on a subuniverse, elements renumbered in
    /// increasing order.
    pub fn induced_subalgebra(&self, universe: &BTreeSet<Element>) -> Result<FiniteAlgebra> {
        let members: Vec<Element> = universe.iter().copied().collect();
        let mut position = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let m = members.len();
        let mut ops = Vec::with_capacity(self.operations.len());
        for op in &self.operations {
            let mut full = vec![0; op.arity];
            let mut table = Vec::with_capacity(m.pow(op.arity as u32));
            let mut escaped = None;
            for_each_tuple(m, op.arity, |args| {
                for (slot, &a) in full.iter_mut().zip(args) {
                    *slot = members[a];
                }
                let v = op.apply(self.size, &full);
                if position[v] == usize::MAX && escaped.is_none() {
                    escaped = Some(full.clone());
                }
                table.push(position[v]);
            });
            if let Some(tuple) = escaped {
                return Err(Error::InvalidAlgebra(format!(
                    "not a subuniverse: `{}` leaves it at {:?}",
                    op.name, tuple
                )));
            }
            ops.push(Operation::new(op.name.clone(), op.arity, table));
        }
        let label = members
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        FiniteAlgebra::new(format!("{}[{}]", self.name, label), m, ops)
    }

    /// First (operation, tuple) at which `theta` fails to be compatible.
    pub fn congruence_violation(&self, theta: &Partition) -> Option<(usize, Vec<Element>)> {
        let reps = theta.block_of();
        for (op_index, op) in self.operations.iter().enumerate() {
            let mut rep_args = vec![0; op.arity];
            let mut bad = None;
            for_each_tuple(self.size, op.arity, |args| {
                if bad.is_some() {
                    return;
                }
                for (slot, &a) in rep_args.iter_mut().zip(args) {
                    *slot = reps[a];
                }
                let lhs = reps[op.apply(self.size, args)];
                let rhs = reps[op.apply(self.size, &rep_args)];
                if lhs != rhs {
                    bad = Some(args.to_vec());
                }
            });
            if let Some(tuple) = bad {
                return Some((op_index, tuple));
            }
        }
        None
    }

    pub fn is_congruence(&self, theta: &Partition) -> bool {
        theta.size() == self.size && self.congruence_violation(theta).is_none()
    }

    fn require_congruence(&self, theta: &Partition) -> Result<()> {
        if theta.size() != self.size {
            return Err(Error::InvalidAlgebra(format!(
                "partition of {} elements on a universe of size {}",
                theta.size(),
                self.size
            )));
        }
        match self.congruence_violation(theta) {
            Some((op, tuple)) => Err(Error::NotACongruence {
                op: self.operations[op].name.clone(),
                tuple,
            }),
            None => Ok(()),
        }
    }

    /// The subalgebra `A(beta)` of `A x A` on the `beta`-related pairs.
    pub fn pair_algebra(&self, beta: &Partition) -> Result<PairAlgebra> {
        self.require_congruence(beta)?;
        let n = self.size;
        let mut pairs = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                if beta.related(x, y) {
                    index[x * n + y] = pairs.len();
                    pairs.push((x, y));
                }
            }
        }
        let m = pairs.len();
        let mut ops = Vec::with_capacity(self.operations.len());
        for op in &self.operations {
            let mut left = vec![0; op.arity];
            let mut right = vec![0; op.arity];
            let table = {
                let mut table = Vec::with_capacity(m.pow(op.arity as u32));
                for_each_tuple(m, op.arity, |args| {
                    for (j, &a) in args.iter().enumerate() {
                        left[j] = pairs[a].0;
                        right[j] = pairs[a].1;
                    }
                    let x = op.apply(n, &left);
                    let y = op.apply(n, &right);
                    table.push(index[x * n + y]);
                });
                table
            };
            ops.push(Operation::new(op.name.clone(), op.arity, table));
        }
        let algebra = FiniteAlgebra::new(format!("{}(pairs)", self.name), m, ops)?;
        Ok(PairAlgebra {
            algebra,
            pairs,
            index,
            base_size: n,
        })
    }

    /// `A / theta` with blocks numbered by their least elements, ascending.
    pub fn quotient_algebra(&self, theta: &Partition) -> Result<QuotientAlgebra> {
        self.require_congruence(theta)?;
        let n = self.size;
        let reps = theta.block_of();
        let mut block_index = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for x in 0..n {
            if reps[x] == x {
                block_index[x] = representatives.len();
                representatives.push(x);
            }
        }
        let block_of: Vec<usize> = (0..n).map(|x| block_index[reps[x]]).collect();
        let m = representatives.len();
        let mut ops = Vec::with_capacity(self.operations.len());
        for op in &self.operations {
            let mut full = vec![0; op.arity];
            let op_table = {
                let mut table = Vec::with_capacity(m.pow(op.arity as u32));
                for_each_tuple(m, op.arity, |args| {
                    for (slot, &b) in full.iter_mut().zip(args) {
                        *slot = representatives[b];
                    }
                    table.push(block_of[op.apply(n, &full)]);
                });
                table
            };
            ops.push(Operation::new(op.name.clone(), op.arity, op_table));
        }
        let algebra = FiniteAlgebra::new(format!("{}/{}", self.name, theta), m, ops)?;
        Ok(QuotientAlgebra {
            algebra,
            block_of,
            representatives,
        })
    }

    /// Index of a basic ternary operation satisfying the Maltsev identities.
    pub fn basic_maltsev_operation(&self) -> Option<usize> {
        let n = self.size;
        self.operations.iter().position(|op| {
            op.arity == 3
                && (0..n).all(|a| {
                    (0..n).all(|b| op.apply(n, &[a, b, b]) == a && op.apply(n, &[b, b, a]) == a)
                })
        })
    }
}

/// `A(beta)` together with its element-to-pair bijection.
#[derive(Debug, Clone)]
pub struct PairAlgebra {
    pub algebra: FiniteAlgebra,
    pub pairs: Vec<(Element, Element)>,
    index: Vec<usize>,
    base_size: usize,
}

impl PairAlgebra {
    pub fn index_of(&self, x: Element, y: Element) -> Option<usize> {
        match self.index[x * self.base_size + y] {
            usize::MAX => None,
            i => Some(i),
        }
    }
}

/// `A / theta` with the map sending each element to its block.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub algebra: FiniteAlgebra,
    pub block_of: Vec<usize>,
    pub representatives: Vec<Element>,
}

impl QuotientAlgebra {
    /// Image of a congruence `alpha >= theta` on the quotient.
    pub fn image(&self, alpha: &Partition) -> Partition {
        let reps = &self.representatives;
        Partition::from_relation(reps.len(), |i, j| alpha.related(reps[i], reps[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    #[test]
    fn evaluate_z4_and_s3() {
        let z4 = fixtures::z4();
        let plus = z4.operation("+").unwrap();
        assert_eq!(z4.evaluate(plus, &[1, 3]).unwrap(), 0);
        let zero = z4.operation("0").unwrap();
        assert_eq!(z4.evaluate(zero, &[]).unwrap(), 0);
        let s3 = fixtures::s3();
        let mul = s3.operation("*").unwrap();
        assert_eq!(s3.evaluate(mul, &[1, 1]).unwrap(), 0);
    }

    #[test]
    fn evaluate_errors() {
        let z4 = fixtures::z4();
        assert!(matches!(
            z4.evaluate(0, &[1]),
            Err(Error::ArityMismatch { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            z4.evaluate(0, &[1, 4]),
            Err(Error::ElementOutOfRange { element: 4, size: 4 })
        ));
    }

    #[test]
    fn constructor_validation() {
        assert!(FiniteAlgebra::new("E", 0, vec![]).is_err());
        let short = Operation::new("f", 2, vec![0; 3]);
        assert!(FiniteAlgebra::new("A", 2, vec![short]).is_err());
        let out = Operation::new("f", 1, vec![0, 2]);
        assert!(matches!(
            FiniteAlgebra::new("A", 2, vec![out]),
            Err(Error::ElementOutOfRange { .. })
        ));
        let dup = vec![Operation::new("f", 0, vec![0]), Operation::new("f", 0, vec![1])];
        assert!(FiniteAlgebra::new("A", 2, dup).is_err());
    }

    #[test]
    fn subuniverse_closure_examples() {
        let z4 = fixtures::z4();
        assert_eq!(z4.subuniverse_closure(&BTreeSet::from([2])), BTreeSet::from([0, 2]));
        assert_eq!(
            z4.subuniverse_closure(&BTreeSet::from([1])),
            BTreeSet::from([0, 1, 2, 3])
        );
        let all: BTreeSet<_> = (0..4).collect();
        assert_eq!(z4.subuniverse_closure(&all), all);
        // no constants: the empty set is closed
        let l2 = fixtures::l2();
        assert!(l2.subuniverse_closure(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn subuniverse_enumeration() {
        let z4 = fixtures::z4();
        let subs: Vec<Vec<usize>> = z4
            .enumerate_subuniverses()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let s3 = fixtures::s3();
        let subs = s3.enumerate_subuniverses();
        assert_eq!(subs.len(), 6);
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(subs[4], BTreeSet::from([0, 4, 5]));

        let triv = fixtures::triv1();
        assert_eq!(triv.enumerate_subuniverses(), vec![BTreeSet::from([0])]);

        let l2 = fixtures::l2();
        let subs: Vec<Vec<usize>> = l2
            .enumerate_subuniverses()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        assert_eq!(subs, vec![vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn pair_algebra_sizes() {
        let z4 = fixtures::z4();
        let zero = Partition::identity(4);
        let diag = z4.pair_algebra(&zero).unwrap();
        assert_eq!(diag.algebra.size(), 4);
        assert_eq!(z4.pair_algebra(&Partition::total(4)).unwrap().algebra.size(), 16);
        let mod2 = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        let pa = z4.pair_algebra(&mod2).unwrap();
        assert_eq!(pa.algebra.size(), 8);
        assert_eq!(pa.index_of(1, 3), Some(pa.pairs.iter().position(|&p| p == (1, 3)).unwrap()));
        assert_eq!(pa.index_of(0, 1), None);
    }

    #[test]
    fn pair_algebra_rejects_non_congruence() {
        let z4 = fixtures::z4();
        let bad = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]);
        assert!(matches!(z4.pair_algebra(&bad), Err(Error::NotACongruence { .. })));
    }

    #[test]
    fn quotients() {
        let z4 = fixtures::z4();
        let mod2 = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]);
        let q = z4.quotient_algebra(&mod2).unwrap();
        let z2 = fixtures::z2();
        assert_eq!(q.algebra.operations(), z2.operations());
        assert_eq!(q.block_of, vec![0, 1, 0, 1]);

        let id = z4.quotient_algebra(&Partition::identity(4)).unwrap();
        assert_eq!(id.algebra.operations(), z4.operations());

        let s3 = fixtures::s3();
        let a3 = Partition::from_blocks(6, &[vec![0, 4, 5], vec![1, 2, 3]]);
        let q = s3.quotient_algebra(&a3).unwrap();
        assert_eq!(q.algebra.size(), 2);
        let mul = q.algebra.operation("*").unwrap();
        assert_eq!(q.algebra.operations()[mul].table(), &[0, 1, 1, 0]);

        let bad = Partition::from_blocks(6, &[vec![0, 1], vec![2], vec![3], vec![4], vec![5]]);
        assert!(s3.quotient_algebra(&bad).is_err());
    }

    #[test]
    fn pair_algebra_of_total_projects_homomorphically() {
        for a in fixtures::builtin_fixtures() {
            let n = a.size();
            let pa = a.pair_algebra(&Partition::total(n)).unwrap();
            assert_eq!(pa.algebra.size(), n * n);
            for (op, pop) in a.operations().iter().zip(pa.algebra.operations()) {
                for_each_tuple(n * n, op.arity(), |args| {
                    let v = pa.pairs[pop.apply(n * n, args)];
                    let left: Vec<_> = args.iter().map(|&i| pa.pairs[i].0).collect();
                    let right: Vec<_> = args.iter().map(|&i| pa.pairs[i].1).collect();
                    assert_eq!(v.0, op.apply(n, &left));
                    assert_eq!(v.1, op.apply(n, &right));
                });
            }
        }
    }

    #[test]
    fn basic_maltsev_detection() {
        let z4 = fixtures::z4();
        assert_eq!(z4.basic_maltsev_operation(), None);
        let m = Operation::from_fn("m", 3, 4, |a| (a[0] + 4 - a[1] + a[2]) % 4);
        let with_m = FiniteAlgebra::new("Z4m", 4, vec![m]).unwrap();
        assert_eq!(with_m.basic_maltsev_operation(), Some(0));
    }
}
