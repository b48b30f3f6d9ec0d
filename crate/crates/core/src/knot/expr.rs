//! Knot expressions and their recursive-descent parser.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr  := term ('#' term)*              left-associative connected sum
//! term  := 'cable' '(' p ',' q ',' expr ')'
//!        | 'sat' '(' pattern ',' n ',' expr ')'
//!        | '(' expr ')'
//!        | atom
//! atom  := [A-Za-z0-9_]+                 e.g. 3_1, 5_2
//! ```

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotExpr {
    Atom(String),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    Cable {
        p: u32,
        q: i64,
        inner: Box<KnotExpr>,
    },
    Satellite {
        pattern: String,
        winding: u32,
        inner: Box<KnotExpr>,
    },
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Atom(name) => f.write_str(name),
            KnotExpr::Sum(l, r) => {
                write!(f, "{} # ", l)?;
                if matches!(**r, KnotExpr::Sum(..)) {
                    write!(f, "({})", r)
                } else {
                    write!(f, "{}", r)
                }
            }
            KnotExpr::Cable { p, q, inner } => write!(f, "cable({},{},{})", p, q, inner),
            KnotExpr::Satellite {
                pattern,
                winding,
                inner,
            } => write!(f, "sat({},{},{})", pattern, winding, inner),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    /// 1-based character position in the input.
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    text: &'a str,
    pos: usize,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            text,
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", want)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let slice: String = self.chars[start..self.pos].iter().collect();
        slice
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn expr(&mut self) -> Result<KnotExpr, ParseError> {
        let mut e = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('#') {
                self.pos += 1;
                let rhs = self.term()?;
                e = KnotExpr::Sum(Box::new(e), Box::new(rhs));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<KnotExpr, ParseError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        let at = self.pos + 1;
        let name = self.ident()?;
        self.skip_ws();
        match (name.as_str(), self.peek()) {
            ("cable", Some('(')) => {
                self.pos += 1;
                let p_at = self.pos + 1;
                let p = self.integer()?;
                self.expect(',')?;
                let q = self.integer()?;
                self.expect(',')?;
                let inner = self.expr()?;
                self.expect(')')?;
                if p < 1 {
                    return Err(ParseError {
                        pos: p_at,
                        msg: "cable parameter p must be positive".into(),
                    });
                }
                if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
                    return Err(ParseError {
                        pos: p_at,
                        msg: format!("cable parameters ({},{}) are not coprime", p, q),
                    });
                }
                Ok(KnotExpr::Cable {
                    p: p as u32,
                    q,
                    inner: Box::new(inner),
                })
            }
            ("sat", Some('(')) => {
                self.pos += 1;
                let pattern = self.ident()?;
                self.expect(',')?;
                let n_at = self.pos + 1;
                let n = self.integer()?;
                self.expect(',')?;
                let inner = self.expr()?;
                self.expect(')')?;
                if n < 1 {
                    return Err(ParseError {
                        pos: n_at,
                        msg: "satellite winding number must be positive".into(),
                    });
                }
                Ok(KnotExpr::Satellite {
                    pattern,
                    winding: n as u32,
                    inner: Box::new(inner),
                })
            }
            _ => {
                let _ = at;
                Ok(KnotExpr::Atom(name))
            }
        }
    }
}

/// Parses and validates an expression. Cable parameters must be coprime
/// with p >= 1, satellite winding numbers positive.
pub fn parse_expr(text: &str) -> Result<KnotExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let _ = p.text;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sum() {
        let e = parse_expr("3_1 # 5_2").unwrap();
        assert_eq!(
            e,
            KnotExpr::Sum(
                Box::new(KnotExpr::Atom("3_1".into())),
                Box::new(KnotExpr::Atom("5_2".into()))
            )
        );
    }

    #[test]
    fn sum_is_left_associative() {
        let e = parse_expr("a # b # c").unwrap();
        assert_eq!(e.to_string(), "a # b # c");
        match e {
            KnotExpr::Sum(l, r) => {
                assert!(matches!(*l, KnotExpr::Sum(..)));
                assert_eq!(*r, KnotExpr::Atom("c".into()));
            }
            _ => panic!("expected sum"),
        }
    }

    #[test]
    fn parse_cable() {
        let e = parse_expr("cable(2,3, 4_1)").unwrap();
        assert_eq!(
            e,
            KnotExpr::Cable {
                p: 2,
                q: 3,
                inner: Box::new(KnotExpr::Atom("4_1".into()))
            }
        );
        // negative q is fine when coprime
        assert!(parse_expr("cable(2,-3,4_1)").is_ok());
    }

    #[test]
    fn cable_validation() {
        let e = parse_expr("cable(2,4,3_1)").unwrap_err();
        assert!(e.msg.contains("not coprime"));
        let e = parse_expr("cable(0,1,3_1)").unwrap_err();
        assert!(e.msg.contains("positive"));
    }

    #[test]
    fn satellite_validation() {
        assert!(parse_expr("sat(P2, 2, 5_2)").is_ok());
        let e = parse_expr("sat(P2, 0, 5_2)").unwrap_err();
        assert!(e.msg.contains("winding"));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_expr("3_1 #").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_expr("cable(2,3").unwrap_err();
        assert!(e.msg.contains("expected"));
        let e = parse_expr("3_1 5_2").unwrap_err();
        assert!(e.msg.contains("trailing"));
    }

    #[test]
    fn parens() {
        let e = parse_expr("3_1 # (4_1 # 5_2)").unwrap();
        match e {
            KnotExpr::Sum(l, r) => {
                assert_eq!(*l, KnotExpr::Atom("3_1".into()));
                assert!(matches!(*r, KnotExpr::Sum(..)));
            }
            _ => panic!("expected sum"),
        }
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "3_1",
            "3_1 # 5_2",
            "cable(2,3,4_1)",
            "sat(P2,2,5_2 # 6_1)",
            "cable(3,-2,cable(2,3,3_1))",
        ] {
            let e = parse_expr(text).unwrap();
            let e2 = parse_expr(&e.to_string()).unwrap();
            assert_eq!(e, e2, "{}", text);
        }
    }
}
