//! Set partitions of `0..n` in canonical least-representative form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let mut block_of = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
            block_of[x] = least[r];
        }
        Partition { block_of }
    }
}

/// A partition of `0..n`; `block_of[x]` is the least element of x's block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    block_of: Vec<Element>,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
        }
    }

    /// Canonicalizes an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(*l).or_insert(x))
            .collect();
        Partition { block_of }
    }

    /// Panics if the blocks overlap or miss elements.
    pub fn from_blocks(n: usize, blocks: &[Vec<Element>]) -> Self {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                assert_eq!(labels[x], usize::MAX, "element {x} in two blocks");
                labels[x] = b;
            }
        }
        assert!(labels.iter().all(|&l| l != usize::MAX), "blocks do not cover 0..{n}");
        Partition::from_labels(&labels)
    }

    /// The equivalence generated by `related` (no need to be transitive).
    pub fn from_relation(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in x + 1..n {
                if related(x, y) {
                    uf.union(x, y);
                }
            }
        }
        uf.into_partition()
    }

    /// Accepts only canonical vectors.
    pub fn from_canonical(block_of: Vec<Element>) -> Option<Self> {
        let ok = block_of
            .iter()
            .enumerate()
            .all(|(x, &r)| r <= x && block_of[r] == r);
        ok.then_some(Partition { block_of })
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self) -> &[Element] {
        &self.block_of
    }

    #[inline]
    pub fn related(&self, x: Element, y: Element) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let n = self.size();
        let mut slot = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<Element>> = Vec::new();
        for x in 0..n {
            let r = self.block_of[x];
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(x);
        }
        blocks
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        self.block_of
            .iter()
            .enumerate()
            .all(|(x, &r)| other.block_of[x] == other.block_of[r])
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut seen = std::collections::HashMap::with_capacity(n);
        let block_of = (0..n)
            .map(|x| *seen.entry((self.block_of[x], other.block_of[x])).or_insert(x))
            .collect();
        Partition { block_of }
    }

    /// Join in the lattice of equivalence relations.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.block_of[x]);
            uf.union(x, other.block_of[x]);
        }
        uf.into_partition()
    }

    pub fn is_identity(&self) -> bool {
        self.block_of.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_total(&self) -> bool {
        self.block_of.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for Partition {
    /// `{0,2|1,3}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            f.write_str(&items.join(","))?;
        }
        f.write_str("}")
    }
}
