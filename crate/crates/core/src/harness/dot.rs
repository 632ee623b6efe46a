//! Hasse diagrams of `Con(A)` in DOT syntax.

use std::fmt::Write as _;

use crate::analysis::monolith;
use crate::commutator::CommutatorTable;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotAnnotations {
    /// Monolith and its centralizer, when `A` is SI.
    pub mu_nu: bool,
    pub radical: bool,
    /// Abelian covers dashed, nodes with a neutral quotient filled.
    pub shading: bool,
}

impl Default for DotAnnotations {
    fn default() -> Self {
        DotAnnotations {
            mu_nu: true,
            radical: true,
            shading: true,
        }
    }
}

impl DotAnnotations {
    pub fn none() -> Self {
        DotAnnotations {
            mu_nu: false,
            radical: false,
            shading: false,
        }
    }
}

/// Cover graph of `Con(A)`, bottom to top.
pub fn export_lattice_dot(table: &CommutatorTable, ann: DotAnnotations) -> Result<String> {
    let l = table.lattice();
    let mut tags: Vec<Vec<&str>> = vec![Vec::new(); l.len()];
    if ann.mu_nu {
        if let Ok(mu) = monolith(l) {
            tags[mu].push("μ");
            tags[table.centralizer(l.zero(), mu)?].push("ν");
        }
    }
    if ann.radical {
        tags[table.solvable_radical(l.zero())?].push("ρ");
    }
    let mut out = String::new();
    writeln!(out, "digraph \"Con({})\" {{", table.algebra().name().replace('"', "'")).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, p) in l.elements().iter().enumerate() {
        let mut label = p.to_string();
        if !tags[i].is_empty() {
            write!(label, "\\n{}", tags[i].join(" ")).unwrap();
        }
        let fill = if ann.shading && table.is_neutral_above(i)? {
            ", style=filled, fillcolor=\"#dddddd\""
        } else {
            ""
        };
        writeln!(out, "  n{i} [label=\"{label}\"{fill}];").unwrap();
    }
    for lo in 0..l.len() {
        for &hi in l.upper_covers(lo) {
            let style = if ann.shading && table.is_abelian_over(lo, hi)? {
                " [style=dashed]"
            } else {
                ""
            };
            writeln!(out, "  n{lo} -> n{hi}{style};").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
