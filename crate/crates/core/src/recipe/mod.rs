//! Construction recipes: a small line-oriented language for chaining the
//! constructions, plus the report each `emit` produces.
//!
//! ```text
//! let M = connsum_cp2bar(catalog(1), 14)   # N(1) # 14 CP2-bar
//! let Z = twistor(M)
//! emit blowup(Z, 6)
//! ```

pub mod ast;
mod eval;
mod parser;
pub mod report;

pub use ast::{Expr, ExprKind, Flag, Pos, Recipe, Stmt, ValueType};
pub use eval::{eval_recipe, EvalError};
pub use parser::{parse_recipe, ParseError, ParseErrorKind};
pub use report::{Report, ReportError, SCHEMA_VERSION};
