//! Maltsev term detection and congruence modularity certificates.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::closure::{close, Closure, ClosureOptions, Origin};
use crate::error::Result;
use crate::limits::Budget;

/// Nested terms longer than this are printed as a shared-node listing.
const NESTED_TERM_LIMIT: usize = 4096;

/// Result of the search for `m` with `m(x,y,y) = x = m(y,y,x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MaltsevStatus {
    Exists { term: String },
    Absent,
    /// The closure outgrew its cap or the time budget ran out.
    Unknown { reason: String },
}

impl MaltsevStatus {
    pub fn exists(&self) -> bool {
        matches!(self, MaltsevStatus::Exists { .. })
    }
}

/// Decides whether `algebra` has a Maltsev term by closing the three
/// projections in `A^(A^2 x {1,2})`.
pub fn maltsev_term_exists(algebra: &FiniteAlgebra, budget: &Budget) -> MaltsevStatus {
    match search(algebra, budget) {
        Ok(Some(term)) => MaltsevStatus::Exists { term },
        Ok(None) => MaltsevStatus::Absent,
        Err(e) => MaltsevStatus::Unknown { reason: e.to_string() },
    }
}

fn search(algebra: &FiniteAlgebra, budget: &Budget) -> Result<Option<String>> {
    let n = algebra.size();
    // coordinates as (x, y, z, wanted); repeats carry the same constraint
    let mut seen = FxHashSet::default();
    let mut coords = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in [[a, b, b, a], [b, b, a, a]] {
                if seen.insert(c) {
                    coords.push(c);
                }
            }
        }
    }
    let column = |k: usize| coords.iter().map(|c| c[k] as u16).collect::<Vec<_>>();
    let generators = vec![column(0), column(1), column(2)];
    let target = column(3);
    let closure = close(
        algebra,
        coords.len(),
        &generators,
        ClosureOptions {
            target: Some(target),
            track_origins: true,
            cap: Some(budget.limits.max_closure),
        },
        budget,
    )?;
    Ok(closure.target().map(|t| render_term(algebra, &closure, t)))
}

/// Prefix notation over the variables `x`, `y`, `z`.
fn render_term(algebra: &FiniteAlgebra, closure: &Closure, root: usize) -> String {
    let ops = algebra.operations();
    let mut memo: FxHashMap<usize, String> = FxHashMap::default();
    let mut stack = vec![root];
    let mut too_long = false;
    while let Some(&i) = stack.last() {
        if memo.contains_key(&i) {
            stack.pop();
            continue;
        }
        match closure.origin(i).expect("origins tracked") {
            Origin::Generator(g) => {
                memo.insert(i, ["x", "y", "z"][*g].to_string());
                stack.pop();
            }
            Origin::Apply { op, args } => {
                let pending: Vec<usize> = args
                    .iter()
                    .map(|&a| a as usize)
                    .filter(|a| !memo.contains_key(a))
                    .collect();
                if !pending.is_empty() {
                    stack.extend(pending);
                    continue;
                }
                let name = ops[*op].name();
                let s = if args.is_empty() {
                    name.to_string()
                } else {
                    let inner: Vec<&str> = args.iter().map(|&a| memo[&(a as usize)].as_str()).collect();
                    format!("{name}({})", inner.join(","))
                };
                too_long |= s.len() > NESTED_TERM_LIMIT;
                memo.insert(i, if too_long { String::new() } else { s });
                stack.pop();
                if too_long {
                    break;
                }
            }
        }
    }
    if too_long {
        return render_shared(algebra, closure, root);
    }
    memo.remove(&root).unwrap()
}

/// `t0 = ...; t1 = ...; tK` listing for terms whose tree form explodes.
fn render_shared(algebra: &FiniteAlgebra, closure: &Closure, root: usize) -> String {
    let ops = algebra.operations();
    let mut reachable = FxHashSet::default();
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        if reachable.insert(i) {
            if let Some(Origin::Apply { args, .. }) = closure.origin(i) {
                stack.extend(args.iter().map(|&a| a as usize));
            }
        }
    }
    let mut nodes: Vec<usize> = reachable.into_iter().collect();
    nodes.sort_unstable();
    let label = |i: usize| match closure.origin(i) {
        Some(Origin::Generator(g)) => ["x", "y", "z"][*g].to_string(),
        _ => format!("t{i}"),
    };
    let mut lines = Vec::new();
    for &i in &nodes {
        if let Some(Origin::Apply { op, args }) = closure.origin(i) {
            let inner: Vec<String> = args.iter().map(|&a| label(a as usize)).collect();
            lines.push(format!("t{i} = {}({})", ops[*op].name(), inner.join(",")));
        }
    }
    lines.push(label(root));
    lines.join("; ")
}

/// Why an algebra counts as congruence modular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CmWitness {
    BasicMaltsevOperation { op: String },
    DerivedMaltsevTerm { term: String },
    UserAssertion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmStatus {
    pub certified: bool,
    pub witness: Option<CmWitness>,
    pub maltsev: MaltsevStatus,
}

/// A basic Maltsev operation, then a derived Maltsev term, then the
/// caller's assertion, in that order.
pub fn cm_status(algebra: &FiniteAlgebra, assert_cm: bool, budget: &Budget) -> CmStatus {
    if let Some(op) = algebra.basic_maltsev_operation() {
        let name = algebra.operations()[op].name().to_string();
        return CmStatus {
            certified: true,
            maltsev: MaltsevStatus::Exists {
                term: format!("{name}(x,y,z)"),
            },
            witness: Some(CmWitness::BasicMaltsevOperation { op: name }),
        };
    }
    let maltsev = maltsev_term_exists(algebra, budget);
    let witness = match &maltsev {
        MaltsevStatus::Exists { term } => Some(CmWitness::DerivedMaltsevTerm { term: term.clone() }),
        _ if assert_cm => Some(CmWitness::UserAssertion),
        _ => None,
    };
    CmStatus {
        certified: witness.is_some(),
        witness,
        maltsev,
    }
}
