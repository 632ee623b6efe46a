//! Neutrabelian subdirectly irreducibles and the neutrabelian property.
//!
//! Everything here is phrased relative to a bottom congruence `delta`: the
//! quotient `A/delta` is handled inside the interval `I[delta, 1]` of
//! `Con(A)`, with `([alpha, beta] v delta)` standing in for the quotient
//! commutator. `delta = 0` is the algebra itself.

use serde::{Deserialize, Serialize};

use crate::commutator::CommutatorTable;
use crate::congruence::CongruenceLattice;
use crate::error::{Error, Result};
use crate::limits::Budget;
use crate::partition::Partition;

/// The unique atom of `Con(A)`.
pub fn monolith(lattice: &CongruenceLattice) -> Result<usize> {
    match lattice.atoms() {
        [mu] => Ok(*mu),
        atoms => Err(Error::NotSubdirectlyIrreducible { atoms: atoms.len() }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum SiFailure {
    /// The monolith centralizer is incomparable with `congruence`.
    Comparability { congruence: usize },
    /// `alpha, beta <= nu` but `[alpha, beta] != 0`.
    AbelianBelow {
        alpha: usize,
        beta: usize,
        commutator: usize,
    },
    /// Not both below `nu`, yet `[alpha, beta] != alpha ^ beta`.
    NeutralElsewhere {
        alpha: usize,
        beta: usize,
        commutator: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiVerdict {
    pub monolith: usize,
    pub centralizer: usize,
    pub failure: Option<SiFailure>,
}

impl SiVerdict {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `A/delta` is a neutrabelian SI, where `theta` is the unique
/// cover of `delta`.
pub fn quotient_si_check(table: &CommutatorTable, delta: usize, theta: usize) -> Result<SiVerdict> {
    let l = table.lattice();
    let nu = table.centralizer(delta, theta)?;
    let above = l.filter(delta);
    let verdict = |failure| SiVerdict {
        monolith: theta,
        centralizer: nu,
        failure,
    };
    if let Some(&g) = above.iter().find(|&&g| !l.comparable(g, nu)) {
        return Ok(verdict(Some(SiFailure::Comparability { congruence: g })));
    }
    for &a in &above {
        for &b in &above {
            let c = table.relative(a, b, delta)?;
            if l.leq(a, nu) && l.leq(b, nu) {
                if c != delta {
                    return Ok(verdict(Some(SiFailure::AbelianBelow {
                        alpha: a,
                        beta: b,
                        commutator: c,
                    })));
                }
            } else if c != l.meet(a, b) {
                return Ok(verdict(Some(SiFailure::NeutralElsewhere {
                    alpha: a,
                    beta: b,
                    commutator: c,
                })));
            }
        }
    }
    Ok(verdict(None))
}

/// Neutrabelian SI check on an SI algebra.
pub fn is_neutrabelian_si(table: &CommutatorTable) -> Result<SiVerdict> {
    let mu = monolith(table.lattice())?;
    quotient_si_check(table, 0, mu)
}

/// The four conditions of the radical-based characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeutChar {
    pub c1: bool,
    pub radical: usize,
    pub radical_comparable: bool,
    pub radical_abelian: bool,
    pub neutral_above_radical: bool,
}

impl NeutChar {
    pub fn holds(&self) -> bool {
        self.c1 && self.radical_comparable && self.radical_abelian && self.neutral_above_radical
    }
}

/// The characterization at bottom `delta`: (C1) in `A/delta`, `rho(delta)`
/// comparable with `I[delta,1]`, abelian over `delta`, and neutral above.
pub fn neut_char_at(table: &CommutatorTable, delta: usize) -> Result<NeutChar> {
    let l = table.lattice();
    let above = l.filter(delta);
    let mut c1 = true;
    'outer: for &a in &above {
        for &b in &above {
            let lhs = table.relative(l.meet(a, b), b, delta)?;
            let rhs = l.meet(a, table.relative(b, b, delta)?);
            if lhs != rhs {
                c1 = false;
                break 'outer;
            }
        }
    }
    let rho = table.solvable_radical(delta)?;
    Ok(NeutChar {
        c1,
        radical: rho,
        radical_comparable: above.iter().all(|&g| l.comparable(g, rho)),
        radical_abelian: table.is_abelian_over(delta, rho)?,
        neutral_above_radical: table.is_neutral_above(rho)?,
    })
}

/// Radical-based characterization of a neutrabelian SI.
pub fn neut_char_si(table: &CommutatorTable) -> Result<NeutChar> {
    monolith(table.lattice())?;
    neut_char_at(table, 0)
}

/// How `is_neutrabelian` evaluates SI quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientPath {
    /// Inside `I[delta, 1]` through the homomorphism property.
    #[default]
    Interval,
    /// Build `A/delta` and its lattice and commutators from scratch.
    Reconstruct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientFailure {
    /// Completely meet irreducible congruence whose quotient fails.
    pub delta: usize,
    pub theta: usize,
    /// Witness in terms of congruences of `A` above `delta`.
    pub failure: SiFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeutrabelianVerdict {
    pub holds: bool,
    pub failure: Option<QuotientFailure>,
}

/// Every SI quotient `A/delta` is a neutrabelian SI.
pub fn is_neutrabelian(
    table: &CommutatorTable,
    path: QuotientPath,
    budget: &Budget,
) -> Result<NeutrabelianVerdict> {
    let l = table.lattice();
    for &(delta, theta) in l.meet_irreducibles() {
        let failure = match path {
            QuotientPath::Interval => quotient_si_check(table, delta, theta)?.failure,
            QuotientPath::Reconstruct => reconstruct_check(table, delta, budget)?,
        };
        if let Some(failure) = failure {
            return Ok(NeutrabelianVerdict {
                holds: false,
                failure: Some(QuotientFailure {
                    delta,
                    theta,
                    failure,
                }),
            });
        }
    }
    Ok(NeutrabelianVerdict {
        holds: true,
        failure: None,
    })
}

fn reconstruct_check(table: &CommutatorTable, delta: usize, budget: &Budget) -> Result<Option<SiFailure>> {
    let l = table.lattice();
    let q = table.algebra().quotient_algebra(l.partition(delta))?;
    let qt = CommutatorTable::build(q.algebra.clone(), table.method(), budget)?;
    let verdict = is_neutrabelian_si(&qt)?;
    // pull quotient congruences back to A
    let lift = |i: usize| -> Result<usize> {
        let p = qt.lattice().partition(i);
        let pre = Partition::from_relation(q.block_of.len(), |x, y| p.related(q.block_of[x], q.block_of[y]));
        l.index_of(&pre)
            .ok_or_else(|| Error::NotInLattice(format!("preimage {pre} of a quotient congruence")))
    };
    Ok(match verdict.failure {
        None => None,
        Some(SiFailure::Comparability { congruence }) => Some(SiFailure::Comparability {
            congruence: lift(congruence)?,
        }),
        Some(SiFailure::AbelianBelow { alpha, beta, commutator }) => Some(SiFailure::AbelianBelow {
            alpha: lift(alpha)?,
            beta: lift(beta)?,
            commutator: lift(commutator)?,
        }),
        Some(SiFailure::NeutralElsewhere { alpha, beta, commutator }) => {
            Some(SiFailure::NeutralElsewhere {
                alpha: lift(alpha)?,
                beta: lift(beta)?,
                commutator: lift(commutator)?,
            })
        }
    })
}
