//! Fuzz campaigns over random Maltsev algebras.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::analysis::{cm_status, lemma_invariant_suite, verify_equivalence, SplitMode};
use crate::commutator::{CommutatorTable, Method};
use crate::error::{Error, Result};
use crate::limits::{Budget, Limits};

use super::format::serialize_algebra;
use super::fuzz::{random_maltsev_algebra, FuzzConfig};

/// Pairs where the pair-algebra commutator and the term-condition
/// commutator differ.
pub fn cross_oracle_mismatches(table: &CommutatorTable) -> Result<Vec<(usize, usize)>> {
    let n = table.lattice().len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if table.delta(a, b)? != table.oracle(a, b)? {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Pairs `alpha, beta >= delta` where the commutator computed in `A/delta`
/// from scratch differs from the image of `[alpha, beta] v delta`.
pub fn homomorphism_mismatches(
    table: &CommutatorTable,
    delta: usize,
    budget: &Budget,
) -> Result<Vec<(usize, usize)>> {
    let l = table.lattice();
    let q = table.algebra().quotient_algebra(l.partition(delta))?;
    let qt = CommutatorTable::build(q.algebra.clone(), table.method(), budget)?;
    let ql = qt.lattice();
    let image = |i: usize| -> Result<usize> {
        let p = q.image(l.partition(i));
        ql.index_of(&p)
            .ok_or_else(|| Error::NotInLattice(format!("image {p} in the quotient")))
    };
    let above = l.filter(delta);
    let mut out = Vec::new();
    for &a in &above {
        for &b in &above {
            if qt.get(image(a)?, image(b)?)? != image(table.relative(a, b, delta)?)? {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// At most `k` congruences spread evenly over the lattice order.
pub fn sample_congruences(len: usize, k: usize) -> Vec<usize> {
    if len <= k {
        return (0..len).collect();
    }
    let mut v: Vec<usize> = (0..k).map(|i| i * (len - 1) / (k - 1).max(1)).collect();
    v.dedup();
    v
}

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub limits: Limits,
    pub cross_oracle: bool,
    /// Quotients checked against the homomorphism property per algebra.
    pub homomorphism_samples: usize,
    pub lemmas: bool,
    /// Where offending algebras are written; nothing is written when unset.
    pub dump_dir: Option<PathBuf>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            limits: Limits::default(),
            cross_oracle: true,
            homomorphism_samples: 4,
            lemmas: true,
            dump_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemOutcome {
    pub index: u64,
    pub algebra: String,
    pub size: usize,
    pub con_size: usize,
    pub neutrabelian: bool,
    pub split: bool,
    pub split_guided: bool,
    pub oracle_mismatches: usize,
    pub homomorphism_mismatches: usize,
    pub gated: bool,
    pub lemma_failures: Vec<String>,
    pub elapsed_ms: u64,
}

impl ItemOutcome {
    pub fn theorem_violation(&self) -> bool {
        self.neutrabelian != self.split
    }

    pub fn mode_disagreement(&self) -> bool {
        self.split != self.split_guided
    }

    pub fn offending(&self) -> bool {
        self.theorem_violation()
            || self.mode_disagreement()
            || self.oracle_mismatches > 0
            || self.homomorphism_mismatches > 0
            || !self.lemma_failures.is_empty()
    }
}

/// Runs every campaign check on one algebra that has a basic Maltsev
/// operation.
pub fn check_algebra(algebra: &FiniteAlgebra, index: u64, opts: &CampaignOptions) -> Result<ItemOutcome> {
    let start = Instant::now();
    let budget = opts.limits.start();
    let cm = cm_status(algebra, false, &budget);
    let method = if cm.certified { Method::Delta } else { Method::Oracle };
    let table = CommutatorTable::build(algebra.clone(), method, &budget)?;
    let exhaustive = verify_equivalence(&table, cm.certified, SplitMode::Exhaustive, &budget)?;
    let guided = verify_equivalence(&table, cm.certified, SplitMode::Guided, &budget)?;
    let oracle_mismatches = if opts.cross_oracle {
        cross_oracle_mismatches(&table)?.len()
    } else {
        0
    };
    let mut homomorphism = 0;
    for delta in sample_congruences(table.lattice().len(), opts.homomorphism_samples) {
        homomorphism += homomorphism_mismatches(&table, delta, &budget)?.len();
    }
    let gated = cm.certified && (exhaustive.neutrabelian.holds || exhaustive.split.holds);
    let lemma_failures = if opts.lemmas && gated {
        lemma_invariant_suite(&table, &cm, &budget)?
            .failures()
            .map(|c| c.name.clone())
            .collect()
    } else {
        Vec::new()
    };
    Ok(ItemOutcome {
        index,
        algebra: algebra.name().to_string(),
        size: algebra.size(),
        con_size: table.lattice().len(),
        neutrabelian: exhaustive.neutrabelian.holds,
        split: exhaustive.split.holds,
        split_guided: guided.split.holds,
        oracle_mismatches,
        homomorphism_mismatches: homomorphism,
        gated,
        lemma_failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub config: FuzzConfig,
    pub algebras: usize,
    pub neutrabelian: usize,
    pub split: usize,
    pub gated: usize,
    pub theorem_violations: usize,
    pub mode_disagreements: usize,
    pub oracle_mismatches: usize,
    pub homomorphism_mismatches: usize,
    pub lemma_failures: usize,
    /// Items abandoned at a resource cap, with the reason.
    pub skipped: Vec<(u64, String)>,
    /// `|Con(A)|` to number of algebras.
    pub con_histogram: BTreeMap<usize, usize>,
    pub offending: Vec<u64>,
    pub dumps: Vec<PathBuf>,
    pub total_ms: u64,
    pub max_item_ms: u64,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

pub fn run_fuzz_campaign(cfg: &FuzzConfig, opts: &CampaignOptions) -> Result<CampaignSummary> {
    cfg.validate().map_err(Error::InvalidAlgebra)?;
    let start = Instant::now();
    let results: Vec<(u64, FiniteAlgebra, Result<ItemOutcome>)> = (0..cfg.count as u64)
        .into_par_iter()
        .map(|i| {
            let a = random_maltsev_algebra(cfg, i);
            let r = check_algebra(&a, i, opts);
            (i, a, r)
        })
        .collect();

    let mut s = CampaignSummary {
        config: cfg.clone(),
        algebras: cfg.count,
        neutrabelian: 0,
        split: 0,
        gated: 0,
        theorem_violations: 0,
        mode_disagreements: 0,
        oracle_mismatches: 0,
        homomorphism_mismatches: 0,
        lemma_failures: 0,
        skipped: Vec::new(),
        con_histogram: BTreeMap::new(),
        offending: Vec::new(),
        dumps: Vec::new(),
        total_ms: 0,
        max_item_ms: 0,
    };
    for (i, algebra, r) in results {
        let item = match r {
            Ok(item) => item,
            Err(e) if e.is_resource() => {
                s.skipped.push((i, e.to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };
        s.neutrabelian += item.neutrabelian as usize;
        s.split += item.split as usize;
        s.gated += item.gated as usize;
        s.theorem_violations += item.theorem_violation() as usize;
        s.mode_disagreements += item.mode_disagreement() as usize;
        s.oracle_mismatches += item.oracle_mismatches;
        s.homomorphism_mismatches += item.homomorphism_mismatches;
        s.lemma_failures += item.lemma_failures.len();
        *s.con_histogram.entry(item.con_size).or_default() += 1;
        s.max_item_ms = s.max_item_ms.max(item.elapsed_ms);
        if item.offending() {
            s.offending.push(i);
            if let Some(dir) = &opts.dump_dir {
                std::fs::create_dir_all(dir).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
                let path = dir.join(format!("{}.alg", algebra.name()));
                let text = format!(
                    "# fuzz seed {} index {}\n# {}\n{}",
                    cfg.seed,
                    i,
                    serde_json::to_string(&item).unwrap(),
                    serialize_algebra(&algebra)
                );
                std::fs::write(&path, text).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
                s.dumps.push(path);
            }
        }
    }
    s.total_ms = start.elapsed().as_millis() as u64;
    Ok(s)
}
