//! End-to-end analysis of one algebra.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::commutator::{CommutatorTable, Method};
use crate::error::Result;
use crate::limits::Budget;

use super::lemmas::{lemma_invariant_suite, transfer_check, LemmaReport};
use super::maltsev::{cm_status, CmStatus, CmWitness, MaltsevStatus};
use super::si::{is_neutrabelian, NeutrabelianVerdict, QuotientPath, SiFailure};
use super::split::{centralizers_split_at_zero, SplitMode, SplitVerdict};

/// Lattices up to this size list their congruences in reports.
const LIST_CONGRUENCES: usize = 64;

/// Commutator route for an algebra with the given CM status: the pair
/// algebra construction is only trusted under a certificate.
pub fn method_for(cm: &CmStatus) -> Method {
    if cm.certified {
        Method::Delta
    } else {
        Method::Oracle
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryVerdict {
    pub holds: bool,
    /// Universe of the first subalgebra that is not neutrabelian.
    pub failing_subuniverse: Option<Vec<usize>>,
    pub subalgebras: usize,
}

/// Every subalgebra (including `A`) is neutrabelian.
pub fn hereditary_neutrabelian(algebra: &FiniteAlgebra, method: Method, budget: &Budget) -> Result<HereditaryVerdict> {
    let subs = algebra.enumerate_subuniverses();
    let count = subs.len();
    for s in subs {
        budget.check_time()?;
        let sub = algebra.induced_subalgebra(&s)?;
        let table = CommutatorTable::build(sub, method, budget)?;
        if !is_neutrabelian(&table, QuotientPath::Interval, budget)?.holds {
            return Ok(HereditaryVerdict {
                holds: false,
                failing_subuniverse: Some(s.into_iter().collect()),
                subalgebras: count,
            });
        }
    }
    Ok(HereditaryVerdict {
        holds: true,
        failing_subuniverse: None,
        subalgebras: count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dualizability {
    Dualizable,
    NotByThisCriterion,
    Unknown,
}

impl fmt::Display for Dualizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dualizability::Dualizable => "dualizable",
            Dualizability::NotByThisCriterion => "not-by-this-criterion",
            Dualizability::Unknown => "unknown",
        })
    }
}

/// Dualizable when a Maltsev term exists and the neutrabelian property is
/// hereditary. A hereditary failure only rules out this criterion when CM is
/// certified.
pub fn dualizability_verdict(cm: &CmStatus, hereditary: bool) -> Dualizability {
    match (cm.maltsev.exists(), hereditary) {
        (true, true) => Dualizability::Dualizable,
        (_, false) if cm.certified => Dualizability::NotByThisCriterion,
        _ => Dualizability::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub certified: bool,
    pub neutrabelian: NeutrabelianVerdict,
    pub split: SplitVerdict,
    pub agree: bool,
    /// Lattice and commutator table, present on disagreement.
    pub dump: Option<String>,
}

impl Equivalence {
    /// Disagreement under a CM certificate.
    pub fn violation(&self) -> bool {
        self.certified && !self.agree
    }
}

/// Compares the neutrabelian and split conditions on one algebra.
pub fn verify_equivalence(
    table: &CommutatorTable,
    certified: bool,
    mode: SplitMode,
    budget: &Budget,
) -> Result<Equivalence> {
    let neutrabelian = is_neutrabelian(table, QuotientPath::Interval, budget)?;
    let split = centralizers_split_at_zero(table, mode)?;
    let agree = neutrabelian.holds == split.holds;
    let dump = if agree { None } else { Some(dump_table(table)?) };
    Ok(Equivalence {
        certified,
        neutrabelian,
        split,
        agree,
        dump,
    })
}

/// Human-readable lattice listing and commutator table.
pub fn dump_table(table: &CommutatorTable) -> Result<String> {
    let l = table.lattice();
    let mut out = String::new();
    writeln!(out, "Con({}) has {} elements", table.algebra().name(), l.len()).unwrap();
    for (i, p) in l.elements().iter().enumerate() {
        writeln!(out, "  [{i}] {p}  covers {:?}", l.upper_covers(i)).unwrap();
    }
    writeln!(out, "commutators ({:?}):", table.method()).unwrap();
    for row in table.fill()? {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    pub assert_cm: bool,
    pub hereditary: bool,
    pub mode: SplitMode,
}

/// How the two conditions relate on this algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremStatus {
    Agree,
    /// Disagreement under a CM certificate.
    Violation,
    /// No CM certificate; nothing is claimed either way.
    Uncertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub algebra: String,
    pub size: usize,
    pub cm_certified: bool,
    pub cm_witness: Option<CmWitness>,
    pub maltsev: MaltsevStatus,
    pub method: Method,
    pub con_size: usize,
    pub modular: bool,
    pub congruences: Option<Vec<String>>,
    pub radical: usize,
    pub c1: bool,
    pub transfer: bool,
    pub neutrabelian: NeutrabelianVerdict,
    pub split: SplitVerdict,
    pub theorem: TheoremStatus,
    pub lemmas: Option<LemmaReport>,
    pub hereditary: Option<HereditaryVerdict>,
    pub dualizability: Option<Dualizability>,
}

impl AnalysisReport {
    pub fn theorem_violation(&self) -> bool {
        self.theorem == TheoremStatus::Violation
    }

    /// Certified algebra whose gated lemma checks fail.
    pub fn lemma_violation(&self) -> bool {
        self.lemmas.as_ref().is_some_and(|l| !l.all_passed())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn analyze(algebra: &FiniteAlgebra, options: AnalysisOptions, budget: &Budget) -> Result<AnalysisReport> {
    let cm = cm_status(algebra, options.assert_cm, budget);
    let method = method_for(&cm);
    let table = CommutatorTable::build(algebra.clone(), method, budget)?;
    let l = table.lattice();
    let eq = verify_equivalence(&table, cm.certified, options.mode, budget)?;
    let theorem = match (cm.certified, eq.agree) {
        (false, _) => TheoremStatus::Uncertified,
        (true, true) => TheoremStatus::Agree,
        (true, false) => TheoremStatus::Violation,
    };
    let lemmas = if cm.certified && (eq.neutrabelian.holds || eq.split.holds) {
        Some(lemma_invariant_suite(&table, &cm, budget)?)
    } else {
        None
    };
    let hereditary = if options.hereditary {
        Some(hereditary_neutrabelian(algebra, method, budget)?)
    } else {
        None
    };
    let dualizability = hereditary.as_ref().map(|h| dualizability_verdict(&cm, h.holds));
    Ok(AnalysisReport {
        algebra: algebra.name().to_string(),
        size: algebra.size(),
        cm_certified: cm.certified,
        cm_witness: cm.witness,
        maltsev: cm.maltsev,
        method,
        con_size: l.len(),
        modular: l.is_modular(),
        congruences: (l.len() <= LIST_CONGRUENCES).then(|| l.elements().iter().map(|p| p.to_string()).collect()),
        radical: table.solvable_radical(l.zero())?,
        c1: table.satisfies_c1()?,
        transfer: transfer_check(&table)?.holds,
        neutrabelian: eq.neutrabelian,
        split: eq.split,
        theorem,
        lemmas,
        hereditary,
        dualizability,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| match &self.congruences {
            Some(c) => c[i].clone(),
            None => format!("#{i}"),
        };
        writeln!(f, "algebra        {} (size {})", self.algebra, self.size)?;
        let cm = match &self.cm_witness {
            Some(CmWitness::BasicMaltsevOperation { op }) => format!("certified (basic Maltsev operation {op})"),
            Some(CmWitness::DerivedMaltsevTerm { term }) => format!("certified (Maltsev term {term})"),
            Some(CmWitness::UserAssertion) => "certified (asserted)".to_string(),
            None => "uncertified".to_string(),
        };
        writeln!(f, "CM             {cm}")?;
        let maltsev = match &self.maltsev {
            MaltsevStatus::Exists { .. } => "exists".to_string(),
            MaltsevStatus::Absent => "none".to_string(),
            MaltsevStatus::Unknown { reason } => format!("unknown ({reason})"),
        };
        writeln!(f, "Maltsev term   {maltsev}")?;
        writeln!(f, "commutator     {:?}", self.method)?;
        writeln!(f, "|Con|          {} (modular: {})", self.con_size, yes(self.modular))?;
        writeln!(f, "radical        {}", name(self.radical))?;
        writeln!(f, "C1             {}", yes(self.c1))?;
        writeln!(f, "transfer       {}", yes(self.transfer))?;
        write!(f, "neutrabelian   {}", yes(self.neutrabelian.holds))?;
        if let Some(q) = &self.neutrabelian.failure {
            let why = match q.failure {
                SiFailure::Comparability { congruence } => format!("nu incomparable with {}", name(congruence)),
                SiFailure::AbelianBelow { alpha, beta, commutator } => {
                    format!("[{}, {}] = {} below nu", name(alpha), name(beta), name(commutator))
                }
                SiFailure::NeutralElsewhere { alpha, beta, commutator } => format!(
                    "[{}, {}] = {}, not the meet",
                    name(alpha),
                    name(beta),
                    name(commutator)
                ),
            };
            write!(f, "  (A/{} fails: {why})", name(q.delta))?;
        }
        writeln!(f)?;
        write!(f, "split at 0     {} [{:?}]", yes(self.split.holds), self.split.mode)?;
        if let Some(t) = &self.split.failure {
            write!(f, "  (no split for delta={} nu={})", name(t.delta), name(t.nu))?;
        }
        writeln!(f)?;
        for c in &self.split.certificates {
            writeln!(
                f,
                "  delta={} nu={}: alpha={} beta={}",
                name(c.triple.delta),
                name(c.triple.nu),
                name(c.alpha),
                name(c.beta)
            )?;
        }
        if let Some(lemmas) = &self.lemmas {
            writeln!(f, "lemma suite    {}", if lemmas.all_passed() { "pass" } else { "FAIL" })?;
            for c in lemmas.failures() {
                writeln!(f, "  {}: {}", c.name, c.detail.as_deref().unwrap_or(""))?;
            }
        }
        if let Some(h) = &self.hereditary {
            write!(f, "hereditary     {} ({} subalgebras)", yes(h.holds), h.subalgebras)?;
            if let Some(s) = &h.failing_subuniverse {
                write!(f, "  (fails on {s:?})")?;
            }
            writeln!(f)?;
        }
        if let Some(d) = self.dualizability {
            writeln!(f, "dualizability  {d}")?;
        }
        let verdict = match self.theorem {
            TheoremStatus::Agree => "conditions agree",
            TheoremStatus::Violation => "THEOREM-VIOLATION",
            TheoremStatus::Uncertified => "uncertified",
        };
        write!(f, "verdict        {verdict}")
    }
}
