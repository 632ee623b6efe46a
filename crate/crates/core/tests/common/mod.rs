#![allow(dead_code)]

use neutrabelian::analysis::{cm_status, method_for, CmStatus};
use neutrabelian::harness::fixtures::{builtin_fixtures, extended_corpus};
use neutrabelian::harness::fuzz::{fuzz_corpus, FuzzConfig};
use neutrabelian::{Budget, CommutatorTable, FiniteAlgebra};

pub struct Entry {
    pub table: CommutatorTable,
    pub cm: CmStatus,
}

pub fn entry(a: FiniteAlgebra) -> Entry {
    let b = Budget::unlimited();
    let cm = cm_status(&a, false, &b);
    let table = CommutatorTable::build(a, method_for(&cm), &b).unwrap();
    Entry { table, cm }
}

/// The plain fuzz corpus with default generator settings.
pub fn fuzz(seed: u64, count: usize) -> Vec<FiniteAlgebra> {
    fuzz_corpus(&FuzzConfig {
        seed,
        count,
        ..Default::default()
    })
}

/// Fuzz algebras with a planted congruence, sizes up to 6.
pub fn planted(seed: u64, count: usize) -> Vec<FiniteAlgebra> {
    fuzz_corpus(&FuzzConfig {
        seed,
        count,
        size_max: 6,
        planted: true,
        ..Default::default()
    })
}

/// Fixtures, the extended corpus, 500 plain and 200 planted fuzz algebras.
pub fn corpus() -> Vec<FiniteAlgebra> {
    let mut all = builtin_fixtures();
    all.extend(extended_corpus());
    all.extend(fuzz(1, 500));
    all.extend(planted(2, 200));
    all
}
