//! Subuniverse closure in finite powers `A^d`.
//!
//! One engine serves the plain subuniverse closure (`d = 1`), the matrix
//! subalgebras behind the term condition (`d = 4`) and the Maltsev search
//! (`d = 2n^2`). Elements are processed in insertion order; processing
//! element `i` evaluates every operation on every tuple whose largest index
//! is `i`, so each tuple is visited exactly once and short terms surface
//! early.

use rustc_hash::FxHashMap;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::limits::Budget;

const DENSE_LIMIT: usize = 1 << 22;

/// How an element of the closure was first produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Generator(usize),
    Apply { op: usize, args: Box<[u32]> },
}

#[derive(Debug, Clone, Default)]
pub struct ClosureOptions {
    /// Stop as soon as this vector shows up.
    pub target: Option<Vec<u16>>,
    pub track_origins: bool,
    /// Maximum number of elements before giving up with a resource error.
    pub cap: Option<usize>,
}

enum Index {
    Dense(Vec<u32>),
    Hashed(FxHashMap<Box<[u16]>, u32>),
}

pub struct Closure {
    dim: usize,
    coords: Vec<u16>,
    origins: Option<Vec<Origin>>,
    target: Option<usize>,
}

impl Closure {
    pub fn len(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(&self, i: usize) -> &[u16] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Index of the target vector, if one was requested and reached.
    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn origin(&self, i: usize) -> Option<&Origin> {
        self.origins.as_ref().map(|o| &o[i])
    }
}

struct Engine<'a> {
    algebra: &'a FiniteAlgebra,
    dim: usize,
    n: usize,
    coords: Vec<u16>,
    index: Index,
    origins: Option<Vec<Origin>>,
    target: Option<Vec<u16>>,
    found: Option<usize>,
    cap: usize,
    /// `n^dim` when it fits; reaching it means the closure is everything.
    full: Option<usize>,
}

impl Engine<'_> {
    fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn code(&self, v: &[u16]) -> usize {
        v.iter().rev().fold(0usize, |acc, &x| acc * self.n + x as usize)
    }

    fn lookup(&self, v: &[u16]) -> Option<u32> {
        match &self.index {
            Index::Dense(slots) => match slots[self.code(v)] {
                0 => None,
                k => Some(k - 1),
            },
            Index::Hashed(map) => map.get(v).copied(),
        }
    }

    /// Inserts `v` unless present; returns whether it was new.
    fn insert(&mut self, v: &[u16], origin: impl FnOnce() -> Origin) -> Result<bool> {
        if self.lookup(v).is_some() {
            return Ok(false);
        }
        let id = self.len();
        if id >= self.cap {
            return Err(Error::ResourceCap {
                what: "subpower closure size",
                limit: self.cap,
            });
        }
        match &mut self.index {
            Index::Dense(slots) => {
                let code = v.iter().rev().fold(0usize, |acc, &x| acc * self.n + x as usize);
                slots[code] = id as u32 + 1;
            }
            Index::Hashed(map) => {
                map.insert(v.into(), id as u32);
            }
        }
        self.coords.extend_from_slice(v);
        if let Some(origins) = &mut self.origins {
            origins.push(origin());
        }
        if self.found.is_none() && self.target.as_deref() == Some(v) {
            self.found = Some(id);
        }
        Ok(true)
    }

    fn done(&self) -> bool {
        self.found.is_some() || self.full == Some(self.len())
    }

    fn run(&mut self, budget: &Budget) -> Result<()> {
        let ops = self.algebra.operations();
        let mut out = vec![0u16; self.dim];
        let mut args = Vec::new();
        let mut steps = 0usize;
        let mut i = 0;
        while i < self.len() && !self.done() {
            for (op_index, op) in ops.iter().enumerate() {
                let k = op.arity();
                if k == 0 {
                    continue;
                }
                for first in 0..k {
                    // positions before `first` < i, position `first` = i, after <= i
                    args.clear();
                    args.resize(k, 0u32);
                    args[first] = i as u32;
                    if first > 0 && i == 0 {
                        continue;
                    }
                    loop {
                        for (c, slot) in out.iter_mut().enumerate() {
                            let mut idx = 0usize;
                            for &a in &args {
                                idx = idx * self.n + self.coords[a as usize * self.dim + c] as usize;
                            }
                            *slot = op.table()[idx] as u16;
                        }
                        let snapshot = &args;
                        self.insert(&out, || Origin::Apply {
                            op: op_index,
                            args: snapshot.clone().into_boxed_slice(),
                        })?;
                        if self.done() {
                            return Ok(());
                        }
                        steps += 1;
                        if steps.is_multiple_of(4096) {
                            budget.check_time()?;
                        }
                        // odometer over the free positions
                        let mut carried = true;
                        for pos in (0..k).rev() {
                            if pos == first {
                                continue;
                            }
                            let bound = if pos < first { i } else { i + 1 } as u32;
                            args[pos] += 1;
                            if args[pos] < bound {
                                carried = false;
                                break;
                            }
                            args[pos] = 0;
                        }
                        if carried {
                            break;
                        }
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }
}

/// Closes `generators` (vectors of length `dim`) under the operations of
/// `algebra` acting coordinatewise. Nullary operations contribute their
/// constant vector.
pub fn close(
    algebra: &FiniteAlgebra,
    dim: usize,
    generators: &[Vec<u16>],
    options: ClosureOptions,
    budget: &Budget,
) -> Result<Closure> {
    let n = algebra.size();
    let dense = dim > 0 && (n as f64).powi(dim as i32) <= DENSE_LIMIT as f64;
    let index = if dense {
        Index::Dense(vec![0; n.pow(dim as u32)])
    } else {
        Index::Hashed(FxHashMap::default())
    };
    let mut engine = Engine {
        algebra,
        dim,
        n,
        coords: Vec::new(),
        index,
        origins: options.track_origins.then(Vec::new),
        target: options.target,
        found: None,
        cap: options.cap.unwrap_or(usize::MAX),
        full: u32::try_from(dim).ok().and_then(|d| n.checked_pow(d)),
    };
    if dim == 0 {
        return Ok(Closure {
            dim,
            coords: Vec::new(),
            origins: engine.origins,
            target: None,
        });
    }
    for (g, v) in generators.iter().enumerate() {
        debug_assert_eq!(v.len(), dim);
        engine.insert(v, || Origin::Generator(g))?;
    }
    for (op_index, op) in algebra.operations().iter().enumerate() {
        if op.arity() == 0 {
            let v = vec![op.table()[0] as u16; dim];
            engine.insert(&v, || Origin::Apply {
                op: op_index,
                args: Box::new([]),
            })?;
        }
    }
    if !engine.done() {
        engine.run(budget)?;
    }
    Ok(Closure {
        dim,
        coords: engine.coords,
        origins: engine.origins,
        target: engine.found,
    })
}
