//! Decision procedures built on the commutator table.

mod lemmas;
mod maltsev;
mod report;
mod si;
mod split;

pub use lemmas::{lemma_invariant_suite, transfer_check, LemmaCheck, LemmaReport, TransferVerdict};
pub use maltsev::{cm_status, maltsev_term_exists, CmStatus, CmWitness, MaltsevStatus};
pub use report::{
    analyze, dualizability_verdict, dump_table, hereditary_neutrabelian, method_for, verify_equivalence,
    AnalysisOptions, AnalysisReport, Dualizability, Equivalence, HereditaryVerdict, TheoremStatus,
};
pub use si::{
    is_neutrabelian, is_neutrabelian_si, monolith, neut_char_at, neut_char_si, quotient_si_check, NeutChar,
    NeutrabelianVerdict, QuotientFailure, QuotientPath, SiFailure, SiVerdict,
};
pub use split::{
    centralizers_split_at_zero, find_split_at_zero, relevant_triples, RelevantTriple, SplitCertificate, SplitMode,
    SplitVerdict,
};

#[cfg(test)]
mod tests;
