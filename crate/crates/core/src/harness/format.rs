//! The plain-text algebra file format.
//!
//! ```text
//! # comment
//! algebra Z2
//! size 2
//! op + 2
//! 0 1
//! 1 0
//! op 0 0
//! 0
//! end
//! ```
//!
//! Tables list `n^arity` entries in lexicographic argument order, leftmost
//! argument most significant; any whitespace separates entries. The
//! `algebra` line is optional (name defaults to `A`); `end` closes the
//! document and may be omitted at end of input.

use std::fmt::Write as _;

use crate::algebra::{FiniteAlgebra, Operation, MAX_ARITY};
use crate::error::{Error, Result};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct PendingOp {
    name: String,
    arity: usize,
    line: usize,
    expected: usize,
    table: Vec<usize>,
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let mut name: Option<String> = None;
    let mut size: Option<usize> = None;
    let mut ops: Vec<Operation> = Vec::new();
    let mut pending: Option<PendingOp> = None;
    let mut ended = false;
    let mut last_line = 0;

    let finish = |pending: &mut Option<PendingOp>, ops: &mut Vec<Operation>, line: usize| -> Result<()> {
        if let Some(p) = pending.take() {
            if p.table.len() != p.expected {
                return Err(parse_error(
                    line,
                    format!(
                        "operation `{}` (line {}) needs {} entries, found {}",
                        p.name,
                        p.line,
                        p.expected,
                        p.table.len()
                    ),
                ));
            }
            ops.push(Operation::new(p.name, p.arity, p.table));
        }
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if ended {
            return Err(parse_error(line, "content after `end`"));
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "algebra" => {
                if name.is_some() || size.is_some() {
                    return Err(parse_error(line, "`algebra` must come first, once"));
                }
                let n = words.next().ok_or_else(|| parse_error(line, "missing algebra name"))?;
                if words.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after algebra name"));
                }
                name = Some(n.to_string());
            }
            "size" => {
                if size.is_some() {
                    return Err(parse_error(line, "duplicate `size`"));
                }
                let v = words.next().ok_or_else(|| parse_error(line, "missing size"))?;
                let v: usize = v
                    .parse()
                    .map_err(|_| parse_error(line, format!("bad size `{v}`")))?;
                if v == 0 {
                    return Err(parse_error(line, "size must be at least 1"));
                }
                if words.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after size"));
                }
                size = Some(v);
            }
            "op" => {
                let n = size.ok_or_else(|| parse_error(line, "`op` before `size`"))?;
                finish(&mut pending, &mut ops, line)?;
                let op_name = words.next().ok_or_else(|| parse_error(line, "missing operation name"))?;
                let arity = words.next().ok_or_else(|| parse_error(line, "missing arity"))?;
                let arity: usize = arity
                    .parse()
                    .map_err(|_| parse_error(line, format!("bad arity `{arity}`")))?;
                if arity > MAX_ARITY {
                    return Err(parse_error(
                        line,
                        format!("arity {arity} exceeds the cap of {MAX_ARITY}"),
                    ));
                }
                if words.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after arity"));
                }
                if ops.iter().any(|o| o.name() == op_name) {
                    return Err(parse_error(line, format!("duplicate operation `{op_name}`")));
                }
                let expected = n
                    .checked_pow(arity as u32)
                    .ok_or_else(|| parse_error(line, "table too large"))?;
                pending = Some(PendingOp {
                    name: op_name.to_string(),
                    arity,
                    line,
                    expected,
                    table: Vec::with_capacity(expected),
                });
            }
            "end" => {
                if words.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after `end`"));
                }
                finish(&mut pending, &mut ops, line)?;
                ended = true;
            }
            _ => {
                let n = size.ok_or_else(|| parse_error(line, format!("unexpected `{head}`")))?;
                let p = pending
                    .as_mut()
                    .ok_or_else(|| parse_error(line, format!("unexpected `{head}` outside a table")))?;
                for word in content.split_whitespace() {
                    let v: usize = word
                        .parse()
                        .map_err(|_| parse_error(line, format!("bad table entry `{word}`")))?;
                    if v >= n {
                        return Err(parse_error(
                            line,
                            format!("entry {v} out of range for size {n}"),
                        ));
                    }
                    if p.table.len() == p.expected {
                        return Err(parse_error(
                            line,
                            format!("too many entries for operation `{}`", p.name),
                        ));
                    }
                    p.table.push(v);
                }
            }
        }
    }
    finish(&mut pending, &mut ops, last_line + 1)?;
    let size = size.ok_or_else(|| parse_error(last_line.max(1), "missing `size`"))?;
    FiniteAlgebra::new(name.unwrap_or_else(|| "A".to_string()), size, ops)
        .map_err(|e| parse_error(last_line.max(1), e.to_string()))
}

/// Canonical text form; `parse_algebra` inverts it exactly. Tables are
/// written `n` entries per line.
pub fn serialize_algebra(algebra: &FiniteAlgebra) -> String {
    let mut out = String::new();
    let n = algebra.size();
    writeln!(out, "algebra {}", algebra.name()).unwrap();
    writeln!(out, "size {n}").unwrap();
    for op in algebra.operations() {
        writeln!(out, "op {} {}", op.name(), op.arity()).unwrap();
        let width = if op.arity() == 0 { 1 } else { n };
        for row in op.table().chunks(width) {
            let items: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", items.join(" ")).unwrap();
        }
    }
    out.push_str("end\n");
    out
}
