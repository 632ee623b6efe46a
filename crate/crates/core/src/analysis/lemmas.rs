//! Structural consequences that must hold whenever the neutrabelian and
//! split conditions do in a congruence modular algebra.

use serde::{Deserialize, Serialize};

use crate::commutator::CommutatorTable;
use crate::error::{Error, Result};
use crate::limits::Budget;

use super::maltsev::CmStatus;
use super::si::{is_neutrabelian, QuotientPath};
use super::split::{centralizers_split_at_zero, SplitMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferVerdict {
    pub holds: bool,
    /// `alpha < beta < gamma`, each a cover, with `beta` nonabelian over
    /// `alpha` and `gamma` abelian over `beta`.
    pub witness: Option<[usize; 3]>,
}

/// No three-element interval has a nonabelian cover beneath an abelian one.
pub fn transfer_check(table: &CommutatorTable) -> Result<TransferVerdict> {
    for [a, b, c] in three_element_chains(table) {
        if !table.is_abelian_over(a, b)? && table.is_abelian_over(b, c)? {
            return Ok(TransferVerdict {
                holds: false,
                witness: Some([a, b, c]),
            });
        }
    }
    Ok(TransferVerdict {
        holds: true,
        witness: None,
    })
}

/// Intervals `I[alpha, gamma]` that are three-element chains.
fn three_element_chains(table: &CommutatorTable) -> Vec<[usize; 3]> {
    let l = table.lattice();
    let mut out = Vec::new();
    for a in 0..l.len() {
        for &b in l.upper_covers(a) {
            for &c in l.upper_covers(b) {
                // the only atom of I[a, c] must be b
                let others = l
                    .upper_covers(a)
                    .iter()
                    .any(|&x| x != b && l.leq(x, c));
                if !others {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs the structural checks. Requires a CM certificate and at least one
/// of the two conditions; otherwise returns [`Error::GateNotMet`].
pub fn lemma_invariant_suite(table: &CommutatorTable, cm: &CmStatus, budget: &Budget) -> Result<LemmaReport> {
    if !cm.certified {
        return Err(Error::GateNotMet("congruence modularity is not certified".into()));
    }
    let neutrabelian = is_neutrabelian(table, QuotientPath::Interval, budget)?.holds;
    let split = centralizers_split_at_zero(table, SplitMode::Exhaustive)?;
    if !neutrabelian && !split.holds {
        return Err(Error::GateNotMet(
            "neither the neutrabelian nor the split condition holds".into(),
        ));
    }
    let l = table.lattice();
    let p = |i: usize| l.partition(i).to_string();
    let mut checks = Vec::new();
    let mut record = |name: &str, detail: Option<String>| {
        checks.push(LemmaCheck {
            name: name.to_string(),
            passed: detail.is_none(),
            detail,
        });
    };

    record(
        "c1",
        table
            .c1_failure()?
            .map(|(a, b)| format!("alpha={} beta={}", p(a), p(b))),
    );

    record(
        "transfer",
        transfer_check(table)?
            .witness
            .map(|[a, b, c]| format!("chain {} < {} < {}", p(a), p(b), p(c))),
    );

    let rho = table.solvable_radical(l.zero())?;
    let mut detail = None;
    if !table.is_abelian_over(l.zero(), rho)? {
        detail = Some(format!("radical {} is not abelian", p(rho)));
    } else {
        for g in 0..l.len() {
            if table.is_abelian_over(l.zero(), g)? && !l.leq(g, rho) {
                detail = Some(format!("abelian {} is not below the radical {}", p(g), p(rho)));
                break;
            }
        }
    }
    record("radical_is_largest_abelian", detail);

    record(
        "neutral_above_radical",
        table
            .neutrality_failure(rho)?
            .map(|(a, b)| format!("alpha={} beta={}", p(a), p(b))),
    );

    let mut radical_of = None;
    let mut abelian = None;
    let mut neutral = None;
    for tau in 0..l.len() {
        let rt = l.join(rho, tau);
        if radical_of.is_none() {
            let r = table.solvable_radical(tau)?;
            if r != rt {
                radical_of = Some(format!("rho({}) = {} but rho v tau = {}", p(tau), p(r), p(rt)));
            }
        }
        if abelian.is_none() && !table.is_abelian_over(tau, rt)? {
            abelian = Some(format!("[rho v tau, rho v tau] not below tau = {}", p(tau)));
        }
        if neutral.is_none() {
            if let Some((a, b)) = table.neutrality_failure(rt)? {
                neutral = Some(format!("above {}: alpha={} beta={}", p(rt), p(a), p(b)));
            }
        }
    }
    record("radical_of_tau", radical_of);
    record("abelian_below_radical_of_tau", abelian);
    record("neutral_above_radical_of_tau", neutral);

    record("transfer_to_si_quotient", transfer_to_si_quotient(table)?);

    let mut detail = None;
    'certs: for c in &split.certificates {
        let nn = table.get(c.triple.nu, c.triple.nu)?;
        for &(tau, _) in l.meet_irreducibles() {
            if !(l.leq(c.alpha, tau) || l.leq(nn, tau)) {
                detail = Some(format!("tau={} above neither alpha={} nor [nu,nu]={}", p(tau), p(c.alpha), p(nn)));
                break 'certs;
            }
            if l.leq(nn, tau) && !l.leq(c.triple.nu, l.join(tau, rho)) {
                detail = Some(format!("tau={} above [nu,nu] but tau v rho misses nu={}", p(tau), p(c.triple.nu)));
                break 'certs;
            }
        }
    }
    record("meet_irreducible_dichotomy", detail);

    let detail = (table.is_neutral_above(l.zero())? && !l.is_distributive())
        .then(|| "neutral but Con(A) is not distributive".to_string());
    record("neutral_implies_distributive", detail);

    Ok(LemmaReport { checks })
}

/// Each three-element interval `alpha < beta < gamma` is mirrored by some
/// completely meet irreducible `delta >= alpha` with `delta < delta v beta <
/// delta v gamma` both covers and the same abelian pattern.
fn transfer_to_si_quotient(table: &CommutatorTable) -> Result<Option<String>> {
    let l = table.lattice();
    for [a, b, c] in three_element_chains(table) {
        let low = table.is_abelian_over(a, b)?;
        let high = table.is_abelian_over(b, c)?;
        let mut found = false;
        for &(d, theta) in l.meet_irreducibles() {
            if !l.leq(a, d) || l.leq(b, d) {
                continue;
            }
            let db = l.join(d, b);
            let dc = l.join(d, c);
            if db == theta
                && l.covers(db, dc)
                && table.is_abelian_over(d, db)? == low
                && table.is_abelian_over(db, dc)? == high
            {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Some(format!(
                "no SI quotient mirrors {} < {} < {}",
                l.partition(a),
                l.partition(b),
                l.partition(c)
            )));
        }
    }
    Ok(None)
}
