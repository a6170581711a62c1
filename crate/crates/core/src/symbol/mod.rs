//! Text front end for symbols: a small grammar for non-commutative
//! polynomials in `θ`, `θ̄` and `q`, and a canonical printer for algebra
//! elements.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' uint)?
//! atom   := 'th' | 'thb' | 'q' | number | '(' expr ')'
//! ```
//!
//! Juxtaposition is a product and products keep their written order. `θ`
//! and `θ̄` (with a combining macron) are accepted for `th` and `thb`;
//! `i` alone is the imaginary unit and a trailing `i` makes a literal
//! imaginary (`3i`, `2.5e-1i`). Complex coefficients are written as a
//! parenthesized sum, e.g. `(1+2i)*th`.

mod format;
mod lexer;
mod parser;

pub use format::{format, format_real};
pub use lexer::{lex, Token, TokenKind};
pub use parser::parse;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A positioned parse failure. `position` is a byte offset into the input
/// and never exceeds its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>, expected: &[&'static str]) -> Self {
        Self {
            position,
            message: message.into(),
            expected: expected.to_vec(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}
