//! The modular commutator on `Con(A)` and the notions built from it.
//!
//! Two independent routes compute `[alpha, beta]`:
//!
//! * [`commutator_delta`]: build `A(beta)`, generate the congruence `Delta`
//!   from the diagonal pairs `((a,a),(b,b))` with `a alpha b`, and read off
//!   `{(x,y) : (x,y) Delta (y,y)}`. Valid in congruence modular varieties.
//! * [`commutator_oracle`]: the term-condition definition. Close the matrix
//!   subalgebra `M(alpha, beta) <= A^4` and take the least `delta` in
//!   `Con(A)` for which every matrix with `t11 delta t12` has
//!   `t21 delta t22`.
//!
//! [`CommutatorTable`] memoizes both and derives centralizers, derived
//! series, solvable radicals and the commutator identities.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::closure::{self, Closure, ClosureOptions};
use crate::congruence::{generate_congruence, CongruenceLattice};
use crate::error::{Error, Result};
use crate::limits::Budget;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Delta,
    Oracle,
}

/// `[alpha, beta]` through the `Delta` congruence on `A(beta)`.
pub fn commutator_delta(
    algebra: &FiniteAlgebra,
    lattice: &CongruenceLattice,
    alpha: usize,
    beta: usize,
) -> Result<usize> {
    let a = lattice.partition(alpha);
    let b = lattice.partition(beta);
    let pa = algebra.pair_algebra(b)?;
    let n = algebra.size();
    let diag = |x: usize| pa.index_of(x, x).expect("diagonal lies in A(beta)");
    let gens: Vec<(usize, usize)> = (0..n)
        .filter(|&x| a.block_of()[x] != x)
        .map(|x| (diag(a.block_of()[x]), diag(x)))
        .collect();
    let delta = generate_congruence(&pa.algebra, &gens);
    let in_relation = |x: usize, y: usize| match pa.index_of(x, y) {
        Some(i) => delta.related(i, diag(y)),
        None => false,
    };
    let candidate = Partition::from_relation(n, |x, y| in_relation(x, y) || in_relation(y, x));
    // the generated equivalence must not add pairs
    for x in 0..n {
        for y in 0..n {
            if candidate.related(x, y) && !in_relation(x, y) {
                return Err(Error::NotInLattice(format!(
                    "Delta route for [{},{}] gives a non-equivalence (missing ({x},{y}))",
                    a, b
                )));
            }
        }
    }
    lattice.index_of(&candidate).ok_or_else(|| {
        Error::NotInLattice(format!(
            "Delta route for [{},{}] gives {} which is not a congruence",
            a, b, candidate
        ))
    })
}

/// Matrix subalgebra `M(alpha, beta) <= A^4`, coordinates
/// `(t11, t12, t21, t22)`, generated by `(a,a,b,b)` for `a alpha b` and
/// `(c,d,c,d)` for `c beta d`.
pub fn matrix_subalgebra(algebra: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Closure {
    let n = algebra.size();
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if alpha.related(a, b) {
                gens.push(vec![a as u16, a as u16, b as u16, b as u16]);
            }
            if beta.related(a, b) {
                gens.push(vec![a as u16, b as u16, a as u16, b as u16]);
            }
        }
    }
    closure::close(algebra, 4, &gens, ClosureOptions::default(), &Budget::unlimited())
        .expect("unbounded closure in A^4 cannot fail")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Centrality {
    pub holds: bool,
    /// A matrix `(t11, t12, t21, t22)` with `t11 delta t12` but not `t21 delta t22`.
    pub witness: Option<[usize; 4]>,
}

fn first_violation(m: &Closure, delta: &Partition) -> Option<[usize; 4]> {
    m.iter()
        .find(|t| {
            delta.related(t[0] as usize, t[1] as usize) && !delta.related(t[2] as usize, t[3] as usize)
        })
        .map(|t| [t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize])
}

/// The term condition `C(alpha, beta; delta)`.
pub fn centrality_holds(
    algebra: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
    delta: &Partition,
) -> Centrality {
    let m = matrix_subalgebra(algebra, alpha, beta);
    let witness = first_violation(&m, delta);
    Centrality {
        holds: witness.is_none(),
        witness,
    }
}

/// `[alpha, beta]` as the meet of every `delta` with `C(alpha, beta; delta)`.
pub fn commutator_oracle(
    algebra: &FiniteAlgebra,
    lattice: &CongruenceLattice,
    alpha: usize,
    beta: usize,
) -> Result<usize> {
    let m = matrix_subalgebra(algebra, lattice.partition(alpha), lattice.partition(beta));
    let mut least = lattice.one();
    for d in 0..lattice.len() {
        if first_violation(&m, lattice.partition(d)).is_none() {
            least = lattice.meet(least, d);
        }
    }
    if let Some(w) = first_violation(&m, lattice.partition(least)) {
        return Err(Error::NonModularSignal(format!(
            "centralizing congruences are not meet-closed (matrix {w:?})"
        )));
    }
    Ok(least)
}

/// Memoized commutators over one algebra and its congruence lattice.
///
/// Entries are written at most once through [`OnceLock`]; a racing reader
/// either recomputes the same value or sees the stored one.
#[derive(Debug)]
pub struct CommutatorTable {
    algebra: FiniteAlgebra,
    lattice: CongruenceLattice,
    method: Method,
    delta: Vec<OnceLock<usize>>,
    oracle: Vec<OnceLock<usize>>,
}

impl CommutatorTable {
    pub fn new(algebra: FiniteAlgebra, lattice: CongruenceLattice, method: Method) -> Self {
        let cells = lattice.len() * lattice.len();
        CommutatorTable {
            algebra,
            lattice,
            method,
            delta: (0..cells).map(|_| OnceLock::new()).collect(),
            oracle: (0..cells).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn build(algebra: FiniteAlgebra, method: Method, budget: &Budget) -> Result<Self> {
        let lattice = CongruenceLattice::build(&algebra, budget)?;
        Ok(Self::new(algebra, lattice, method))
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &CongruenceLattice {
        &self.lattice
    }

    pub fn method(&self) -> Method {
        self.method
    }

    fn cell(&self, a: usize, b: usize) -> usize {
        a * self.lattice.len() + b
    }

    pub fn delta(&self, a: usize, b: usize) -> Result<usize> {
        let cell = &self.delta[self.cell(a, b)];
        if let Some(&v) = cell.get() {
            return Ok(v);
        }
        let v = commutator_delta(&self.algebra, &self.lattice, a, b)?;
        Ok(*cell.get_or_init(|| v))
    }

    pub fn oracle(&self, a: usize, b: usize) -> Result<usize> {
        let cell = &self.oracle[self.cell(a, b)];
        if let Some(&v) = cell.get() {
            return Ok(v);
        }
        let v = commutator_oracle(&self.algebra, &self.lattice, a, b)?;
        Ok(*cell.get_or_init(|| v))
    }

    /// `[a, b]` by the table's default method.
    pub fn get(&self, a: usize, b: usize) -> Result<usize> {
        match self.method {
            Method::Delta => self.delta(a, b),
            Method::Oracle => self.oracle(a, b),
        }
    }

    /// `C(a, b; d)`, answered from the memoized term-condition commutator.
    pub fn centralizes(&self, a: usize, b: usize, d: usize) -> Result<bool> {
        Ok(self.lattice.leq(self.oracle(a, b)?, d))
    }

    /// `([a, b] v d)`, the commutator of `a/d` and `b/d` pulled back.
    pub fn relative(&self, a: usize, b: usize, d: usize) -> Result<usize> {
        Ok(self.lattice.join(self.get(a, b)?, d))
    }

    /// The centralizer `(delta : theta)`: the largest `gamma` with
    /// `[gamma, theta] <= delta`.
    pub fn centralizer(&self, delta: usize, theta: usize) -> Result<usize> {
        let l = &self.lattice;
        let mut join = l.zero();
        for g in 0..l.len() {
            if l.leq(self.get(g, theta)?, delta) {
                join = l.join(join, g);
            }
        }
        if !self.centralizes(join, theta, delta)? {
            return Err(Error::NonModularSignal(format!(
                "centralizer of {} modulo {} is not join-closed",
                l.partition(theta),
                l.partition(delta)
            )));
        }
        Ok(join)
    }

    /// `sigma, [sigma,sigma] v tau, ...` up to the first repeat.
    pub fn derived_series(&self, sigma: usize, tau: usize) -> Result<Vec<usize>> {
        let l = &self.lattice;
        if !l.leq(tau, sigma) {
            return Err(Error::NotOrdered { lo: tau, hi: sigma });
        }
        let mut series = vec![sigma];
        let mut current = sigma;
        loop {
            let next = l.join(self.get(current, current)?, tau);
            if next == current {
                return Ok(series);
            }
            series.push(next);
            current = next;
        }
    }

    pub fn solvable_over(&self, sigma: usize, tau: usize) -> Result<bool> {
        Ok(*self.derived_series(sigma, tau)?.last().unwrap() == tau)
    }

    /// The solvable radical `rho(tau)`.
    pub fn solvable_radical(&self, tau: usize) -> Result<usize> {
        let l = &self.lattice;
        let mut join = tau;
        for s in l.filter(tau) {
            if self.solvable_over(s, tau)? {
                join = l.join(join, s);
            }
        }
        if !self.solvable_over(join, tau)? {
            return Err(Error::NonModularSignal(format!(
                "join of congruences solvable over {} is not solvable",
                l.partition(tau)
            )));
        }
        Ok(join)
    }

    /// `[sigma, sigma] <= tau`, for `tau <= sigma`.
    pub fn is_abelian_over(&self, tau: usize, sigma: usize) -> Result<bool> {
        if !self.lattice.leq(tau, sigma) {
            return Err(Error::NotOrdered { lo: tau, hi: sigma });
        }
        Ok(self.lattice.leq(self.get(sigma, sigma)?, tau))
    }

    /// First `(alpha, beta)` above `tau` with `[alpha,beta] v tau != alpha ^ beta`.
    pub fn neutrality_failure(&self, tau: usize) -> Result<Option<(usize, usize)>> {
        let l = &self.lattice;
        let above = l.filter(tau);
        for &a in &above {
            for &b in &above {
                if self.relative(a, b, tau)? != l.meet(a, b) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    /// The quotient by `tau` satisfies `[alpha, beta] = alpha ^ beta`.
    pub fn is_neutral_above(&self, tau: usize) -> Result<bool> {
        Ok(self.neutrality_failure(tau)?.is_none())
    }

    /// First `(alpha, beta)` breaking `[alpha ^ beta, beta] = alpha ^ [beta, beta]`.
    pub fn c1_failure(&self) -> Result<Option<(usize, usize)>> {
        let l = &self.lattice;
        for a in 0..l.len() {
            for b in 0..l.len() {
                let lhs = self.get(l.meet(a, b), b)?;
                let rhs = l.meet(a, self.get(b, b)?);
                if lhs != rhs {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn satisfies_c1(&self) -> Result<bool> {
        Ok(self.c1_failure()?.is_none())
    }

    /// Fills every cell for the default method.
    pub fn fill(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.lattice.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.get(a, b)).collect())
            .collect()
    }
}
