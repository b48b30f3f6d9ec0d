//! Expression-level computation of Morse-Novikov numbers.
//!
//! Knots are presented as expressions in connected sums, cables and
//! satellites over named base knots; evaluation combines table facts with
//! the exact additivity of the invariant under connected sum, its
//! invariance under cabling, and the satellite upper bound. Values are
//! exact-or-interval, never guesses.

pub mod eval;
pub mod expr;
pub mod table;

pub use eval::{eval_expr, EvalError, Provenance};
pub use expr::{parse_expr, KnotExpr, ParseError};
pub use table::{HandleValue, KnotRecord, KnotTable, PatternRecord, TableError};
