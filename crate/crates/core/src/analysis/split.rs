//! Relevant triples and the split-centralizer-at-zero condition.

use serde::{Deserialize, Serialize};

use crate::commutator::CommutatorTable;
use crate::error::Result;

/// `(delta, theta, nu)` with `delta` completely meet irreducible, `theta` its
/// unique upper cover and `nu = (delta : theta)`, subject to `theta <= nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelevantTriple {
    pub delta: usize,
    pub theta: usize,
    pub nu: usize,
}

/// `alpha` is a complement of `beta` in `I[0, nu]` with `[alpha, alpha] = 0`
/// and `beta <= delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub triple: RelevantTriple,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    /// Every pair `(alpha, beta)`; the lexicographically least is returned.
    #[default]
    Exhaustive,
    /// `beta = [nu, nu]` and `alpha` ranging below the solvable radical.
    Guided,
}

impl std::str::FromStr for SplitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(SplitMode::Exhaustive),
            "guided" => Ok(SplitMode::Guided),
            other => Err(format!("unknown mode `{other}`, expected exhaustive or guided")),
        }
    }
}

pub fn relevant_triples(table: &CommutatorTable) -> Result<Vec<RelevantTriple>> {
    let l = table.lattice();
    let mut out = Vec::new();
    for &(delta, theta) in l.meet_irreducibles() {
        let nu = table.centralizer(delta, theta)?;
        if l.leq(theta, nu) {
            out.push(RelevantTriple { delta, theta, nu });
        }
    }
    Ok(out)
}

fn splits(table: &CommutatorTable, t: RelevantTriple, alpha: usize, beta: usize) -> Result<bool> {
    let l = table.lattice();
    Ok(l.leq(beta, t.delta)
        && l.meet(alpha, beta) == l.zero()
        && l.join(alpha, beta) == t.nu
        && table.get(alpha, alpha)? == l.zero())
}

/// A split certificate for one relevant triple, if any exists.
pub fn find_split_at_zero(
    table: &CommutatorTable,
    triple: RelevantTriple,
    mode: SplitMode,
) -> Result<Option<SplitCertificate>> {
    let l = table.lattice();
    let found = |alpha, beta| SplitCertificate { triple, alpha, beta };
    match mode {
        SplitMode::Exhaustive => {
            for alpha in 0..l.len() {
                for beta in 0..l.len() {
                    if splits(table, triple, alpha, beta)? {
                        return Ok(Some(found(alpha, beta)));
                    }
                }
            }
        }
        SplitMode::Guided => {
            let beta = table.get(triple.nu, triple.nu)?;
            let rho = table.solvable_radical(l.zero())?;
            for alpha in l.ideal(rho) {
                if splits(table, triple, alpha, beta)? {
                    return Ok(Some(found(alpha, beta)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitVerdict {
    pub holds: bool,
    pub mode: SplitMode,
    /// One per relevant triple that splits, in triple order.
    pub certificates: Vec<SplitCertificate>,
    /// First relevant triple with no certificate.
    pub failure: Option<RelevantTriple>,
}

/// Every relevant triple splits at zero.
pub fn centralizers_split_at_zero(table: &CommutatorTable, mode: SplitMode) -> Result<SplitVerdict> {
    let mut certificates = Vec::new();
    let mut failure = None;
    for t in relevant_triples(table)? {
        match find_split_at_zero(table, t, mode)? {
            Some(c) => certificates.push(c),
            None => {
                failure.get_or_insert(t);
            }
        }
    }
    Ok(SplitVerdict {
        holds: failure.is_none(),
        mode,
        certificates,
        failure,
    })
}
