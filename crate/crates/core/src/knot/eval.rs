//! Evaluation of knot expressions against a fact table.
//!
//! Each node applies one rule: connected sums add both interval bounds,
//! cabling leaves the value unchanged, a satellite is bounded above by the
//! sum of the pattern and companion values (the lower bound stays 0: no
//! general lower bound is known). Every result carries a provenance tree
//! naming the rule applied at each node and the table source of each leaf.

use std::fmt::Write as _;

use thiserror::Error;

use super::expr::KnotExpr;
use super::table::{HandleValue, KnotTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown knot `{0}` (not in the table)")]
    UnknownKnot(String),
    #[error("unknown pattern `{0}` (not in the table)")]
    UnknownPattern(String),
    #[error("pattern `{pattern}` has winding {table} but the expression uses {expr}")]
    WindingMismatch {
        pattern: String,
        table: u32,
        expr: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Leaf {
        name: String,
        fibered: bool,
        value: HandleValue,
        source: String,
    },
    Sum {
        left: Box<Provenance>,
        right: Box<Provenance>,
    },
    Cable {
        p: u32,
        q: i64,
        inner: Box<Provenance>,
    },
    Satellite {
        pattern: String,
        pattern_value: HandleValue,
        winding: u32,
        inner: Box<Provenance>,
    },
}

impl Provenance {
    fn push_machine(&self, path: &str, out: &mut Vec<String>) {
        match self {
            Provenance::Leaf {
                name,
                fibered,
                value,
                source,
            } => {
                let fib = if *fibered { "fibered" } else { "nonfibered" };
                let upper = match value.upper() {
                    Some(u) => u.to_string(),
                    None => "inf".into(),
                };
                out.push(format!(
                    "prov|{}|knot|{}|{}|{}|{}|{}",
                    path,
                    name,
                    fib,
                    value.lower(),
                    upper,
                    source
                ));
            }
            Provenance::Sum { left, right } => {
                out.push(format!("prov|{}|sum|connected-sum-additivity", path));
                left.push_machine(&format!("{}l", path), out);
                right.push_machine(&format!("{}r", path), out);
            }
            Provenance::Cable { p, q, inner } => {
                let rule = if *p == 1 {
                    "cable-identity"
                } else {
                    "cable-invariance"
                };
                out.push(format!("prov|{}|cable|p={};q={};{}", path, p, q, rule));
                inner.push_machine(&format!("{}i", path), out);
            }
            Provenance::Satellite {
                pattern,
                pattern_value,
                winding,
                inner,
            } => {
                let upper = match pattern_value.upper() {
                    Some(u) => u.to_string(),
                    None => "inf".into(),
                };
                out.push(format!(
                    "prov|{}|satellite|pattern={};winding={};pattern_h={}..{};satellite-upper-bound",
                    path,
                    pattern,
                    winding,
                    pattern_value.lower(),
                    upper
                ));
                inner.push_machine(&format!("{}i", path), out);
            }
        }
    }

    /// Canonical machine lines, one per node, depth-first.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.push_machine(".", &mut out);
        out
    }

    fn push_human(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            Provenance::Leaf {
                name,
                fibered,
                value,
                source,
            } => {
                let fib = if *fibered { "fibered" } else { "non-fibered" };
                let _ = writeln!(out, "{}{} = {} ({}; source: {})", pad, name, value, fib, source);
            }
            Provenance::Sum { left, right } => {
                let _ = writeln!(out, "{}connected sum: both bounds add", pad);
                left.push_human(depth + 1, out);
                right.push_human(depth + 1, out);
            }
            Provenance::Cable { p, q, inner } => {
                if *p == 1 {
                    let _ = writeln!(out, "{}cable({},{}): the (1,q)-cable is the knot itself", pad, p, q);
                } else {
                    let _ = writeln!(out, "{}cable({},{}): cabling preserves the value", pad, p, q);
                }
                inner.push_human(depth + 1, out);
            }
            Provenance::Satellite {
                pattern,
                pattern_value,
                winding,
                inner,
            } => {
                let _ = writeln!(
                    out,
                    "{}satellite with pattern {} (h {}), winding {}: bounded by the sum",
                    pad, pattern, pattern_value, winding
                );
                inner.push_human(depth + 1, out);
            }
        }
    }

    pub fn human_text(&self) -> String {
        let mut out = String::new();
        self.push_human(0, &mut out);
        out
    }
}

/// Evaluates a validated expression over a table. Deterministic and total
/// once every atom and pattern resolves.
pub fn eval_expr(e: &KnotExpr, t: &KnotTable) -> Result<(HandleValue, Provenance), EvalError> {
    match e {
        KnotExpr::Atom(name) => {
            let record = t
                .knot(name)
                .ok_or_else(|| EvalError::UnknownKnot(name.clone()))?;
            Ok((
                record.handle,
                Provenance::Leaf {
                    name: record.name.clone(),
                    fibered: record.fibered,
                    value: record.handle,
                    source: record.source.clone(),
                },
            ))
        }
        KnotExpr::Sum(left, right) => {
            let (lv, lp) = eval_expr(left, t)?;
            let (rv, rp) = eval_expr(right, t)?;
            Ok((
                lv.add(&rv),
                Provenance::Sum {
                    left: Box::new(lp),
                    right: Box::new(rp),
                },
            ))
        }
        KnotExpr::Cable { p, q, inner } => {
            let (v, ip) = eval_expr(inner, t)?;
            Ok((
                v,
                Provenance::Cable {
                    p: *p,
                    q: *q,
                    inner: Box::new(ip),
                },
            ))
        }
        KnotExpr::Satellite {
            pattern,
            winding,
            inner,
        } => {
            let record = t
                .pattern(pattern)
                .ok_or_else(|| EvalError::UnknownPattern(pattern.clone()))?;
            if record.winding != *winding {
                return Err(EvalError::WindingMismatch {
                    pattern: pattern.clone(),
                    table: record.winding,
                    expr: *winding,
                });
            }
            let (iv, ip) = eval_expr(inner, t)?;
            let upper = match (record.handle.upper(), iv.upper()) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            let value = HandleValue::interval(0, upper).expect("0 <= upper");
            Ok((
                value,
                Provenance::Satellite {
                    pattern: pattern.clone(),
                    pattern_value: record.handle,
                    winding: *winding,
                    inner: Box::new(ip),
                },
            ))
        }
    }
}
