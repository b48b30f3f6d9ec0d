//! Exact-or-interval handle values and the base-knot fact table.
//!
//! The `.knots` format is line-oriented: a `KNOTS` section of
//! `name|fibered|h_lower|h_upper|source` records and an optional
//! `PATTERNS` section of `name|fibered|h_lower|h_upper|winding|source`
//! records. `h_upper` may be `inf`; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A Morse-Novikov / handle number known exactly or bracketed in an
/// interval. `upper = None` means no finite upper bound is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HandleValue {
    lower: u32,
    upper: Option<u32>,
}

impl HandleValue {
    pub fn exact(v: u32) -> Self {
        HandleValue {
            lower: v,
            upper: Some(v),
        }
    }

    /// `upper = None` is an unbounded interval.
    pub fn interval(lower: u32, upper: Option<u32>) -> Option<Self> {
        match upper {
            Some(u) if u < lower => None,
            _ => Some(HandleValue { lower, upper }),
        }
    }

    pub fn lower(&self) -> u32 {
        self.lower
    }

    pub fn upper(&self) -> Option<u32> {
        self.upper
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn exact_value(&self) -> Option<u32> {
        if self.is_exact() {
            Some(self.lower)
        } else {
            None
        }
    }

    pub fn upper_finite(&self) -> Option<u32> {
        self.upper
    }

    /// Interval sum: both bounds add; exact iff both operands are exact.
    pub fn add(&self, other: &HandleValue) -> HandleValue {
        HandleValue {
            lower: self.lower + other.lower,
            upper: match (self.upper, other.upper) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    /// Canonical machine form `value|lower|upper|exact`.
    pub fn machine_line(&self) -> String {
        let upper = match self.upper {
            Some(u) => u.to_string(),
            None => "inf".to_string(),
        };
        format!("value|{}|{}|{}", self.lower, upper, self.is_exact())
    }
}

impl fmt::Display for HandleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) if u == self.lower => write!(f, "{} (exact)", self.lower),
            Some(u) => write!(f, "in [{}, {}]", self.lower, u),
            None => write!(f, "in [{}, inf)", self.lower),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub fibered: bool,
    pub handle: HandleValue,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRecord {
    pub name: String,
    pub fibered: bool,
    pub handle: HandleValue,
    pub winding: u32,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct TableError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> TableError {
    TableError {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnotTable {
    knots: BTreeMap<String, KnotRecord>,
    patterns: BTreeMap<String, PatternRecord>,
}

fn parse_fibered(field: &str, line: usize) -> Result<bool, TableError> {
    match field {
        "fibered" => Ok(true),
        "nonfibered" => Ok(false),
        other => Err(err(line, format!("expected fibered|nonfibered, got `{}`", other))),
    }
}

fn parse_handle(
    lower: &str,
    upper: &str,
    fibered: bool,
    line: usize,
) -> Result<HandleValue, TableError> {
    let lower: u32 = lower
        .parse()
        .map_err(|_| err(line, format!("bad lower bound `{}`", lower)))?;
    let upper: Option<u32> = if upper == "inf" {
        None
    } else {
        Some(
            upper
                .parse()
                .map_err(|_| err(line, format!("bad upper bound `{}`", upper)))?,
        )
    };
    let value = HandleValue::interval(lower, upper)
        .ok_or_else(|| err(line, "lower bound exceeds upper bound"))?;
    // fibered knots and patterns have handle number exactly zero
    if fibered && value.exact_value() != Some(0) {
        return Err(err(line, "fibered entries must have handle number 0"));
    }
    Ok(value)
}

impl KnotTable {
    /// Parses a `.knots` table.
    pub fn load(text: &str) -> Result<Self, TableError> {
        #[derive(PartialEq)]
        enum Section {
            Start,
            Knots,
            Patterns,
        }
        let mut table = KnotTable::default();
        let mut section = Section::Start;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            match content {
                "KNOTS" => {
                    section = Section::Knots;
                    continue;
                }
                "PATTERNS" => {
                    section = Section::Patterns;
                    continue;
                }
                _ => {}
            }
            let fields: Vec<&str> = content.split('|').collect();
            match section {
                Section::Start => return Err(err(line, "expected a KNOTS section header")),
                Section::Knots => {
                    if fields.len() != 5 {
                        return Err(err(line, "knot record needs name|fibered|h_lower|h_upper|source"));
                    }
                    let fibered = parse_fibered(fields[1], line)?;
                    let handle = parse_handle(fields[2], fields[3], fibered, line)?;
                    let record = KnotRecord {
                        name: fields[0].to_string(),
                        fibered,
                        handle,
                        source: fields[4].to_string(),
                    };
                    if table.knots.insert(record.name.clone(), record).is_some() {
                        return Err(err(line, format!("duplicate knot `{}`", fields[0])));
                    }
                }
                Section::Patterns => {
                    if fields.len() != 6 {
                        return Err(err(
                            line,
                            "pattern record needs name|fibered|h_lower|h_upper|winding|source",
                        ));
                    }
                    let fibered = parse_fibered(fields[1], line)?;
                    let handle = parse_handle(fields[2], fields[3], fibered, line)?;
                    let winding: u32 = fields[4]
                        .parse()
                        .map_err(|_| err(line, format!("bad winding `{}`", fields[4])))?;
                    if winding == 0 {
                        return Err(err(line, "pattern winding must be positive"));
                    }
                    let record = PatternRecord {
                        name: fields[0].to_string(),
                        fibered,
                        handle,
                        winding,
                        source: fields[5].to_string(),
                    };
                    if table
                        .patterns
                        .insert(record.name.clone(), record)
                        .is_some()
                    {
                        return Err(err(line, format!("duplicate pattern `{}`", fields[0])));
                    }
                }
            }
        }
        Ok(table)
    }

    /// The table shipped with the crate: fibered knots are 0, the
    /// non-fibered knots of at most 10 crossings are 2.
    pub fn builtin() -> Self {
        KnotTable::load(include_str!("../../data/default.knots")).expect("builtin table parses")
    }

    pub fn knot(&self, name: &str) -> Option<&KnotRecord> {
        self.knots.get(name)
    }

    pub fn pattern(&self, name: &str) -> Option<&PatternRecord> {
        self.patterns.get(name)
    }

    pub fn knot_count(&self) -> usize {
        self.knots.len()
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_loads() {
        let t = KnotTable::builtin();
        assert!(t.knot_count() >= 12);
        assert!(t.knot("3_1").unwrap().fibered);
        assert_eq!(t.knot("3_1").unwrap().handle, HandleValue::exact(0));
        assert!(!t.knot("5_2").unwrap().fibered);
        assert_eq!(t.knot("5_2").unwrap().handle, HandleValue::exact(2));
        assert_eq!(t.pattern("P2").unwrap().winding, 2);
    }

    #[test]
    fn record_examples() {
        let t = KnotTable::load("KNOTS\n3_1|fibered|0|0|fibered-fact\n").unwrap();
        assert!(t.knot("3_1").unwrap().fibered);
        let t = KnotTable::load("KNOTS\n5_2|nonfibered|2|2|goda-table\n").unwrap();
        assert_eq!(t.knot("5_2").unwrap().handle, HandleValue::exact(2));
    }

    #[test]
    fn fibered_must_be_zero() {
        let e = KnotTable::load("KNOTS\nX|fibered|2|2|bad\n").unwrap_err();
        assert!(e.msg.contains("handle number 0"));
        assert_eq!(e.line, 2);
    }

    #[test]
    fn duplicates_rejected() {
        let e = KnotTable::load("KNOTS\nX|nonfibered|2|2|a\nX|nonfibered|2|2|b\n").unwrap_err();
        assert!(e.msg.contains("duplicate"));
    }

    #[test]
    fn bounds_checked() {
        let e = KnotTable::load("KNOTS\nX|nonfibered|3|2|a\n").unwrap_err();
        assert!(e.msg.contains("exceeds"));
        let t = KnotTable::load("KNOTS\nX|nonfibered|2|inf|a\n").unwrap();
        assert!(!t.knot("X").unwrap().handle.is_exact());
        assert_eq!(t.knot("X").unwrap().handle.upper(), None);
    }

    #[test]
    fn interval_sum() {
        let a = HandleValue::exact(2);
        let b = HandleValue::interval(0, Some(4)).unwrap();
        let sum = a.add(&b);
        assert_eq!(sum.lower(), 2);
        assert_eq!(sum.upper(), Some(6));
        assert!(!sum.is_exact());
        assert!(a.add(&HandleValue::exact(2)).is_exact());
        assert_eq!(a.add(&HandleValue::interval(1, None).unwrap()).upper(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(HandleValue::exact(2).to_string(), "2 (exact)");
        assert_eq!(
            HandleValue::interval(0, Some(4)).unwrap().to_string(),
            "in [0, 4]"
        );
        assert_eq!(
            HandleValue::interval(1, None).unwrap().to_string(),
            "in [1, inf)"
        );
        assert_eq!(HandleValue::exact(0).machine_line(), "value|0|0|true");
        assert_eq!(
            HandleValue::interval(0, Some(4)).unwrap().machine_line(),
            "value|0|4|false"
        );
    }
}
