use alloc::boxed::Box;
use alloc::vec::Vec;

use super::lexer::{lex, Token, TokenKind};
use super::ParseError;
use crate::algebra::Generator;
use crate::FreeExpr;

const ATOM_START: &[&str] = &["th", "thb", "q", "number", "("];

/// Parses symbol text into a [`FreeExpr`].
pub fn parse(text: &str) -> Result<FreeExpr, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new(text.len(), "empty expression", ATOM_START));
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
        text,
    };
    let expr = p.expr()?;
    match p.peek() {
        None => Ok(expr),
        Some(tok) if tok.kind == TokenKind::RParen => {
            Err(ParseError::new(tok.span.start, "unbalanced ')'", &["+", "-", "end of input"]))
        }
        Some(tok) => Err(ParseError::new(tok.span.start, "unexpected token", &["+", "-", "end of input"])),
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.span.start)
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().is_some_and(|t| t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FreeExpr, ParseError> {
        let mut terms = Vec::new();
        let first = if self.eat(TokenKind::Minus) {
            FreeExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        terms.push(first);
        loop {
            if self.eat(TokenKind::Plus) {
                terms.push(self.term()?);
            } else if self.eat(TokenKind::Minus) {
                terms.push(FreeExpr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            FreeExpr::Sum(terms)
        })
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek().map(|t| t.kind),
            Some(
                TokenKind::Theta
                    | TokenKind::ThetaBar
                    | TokenKind::Q
                    | TokenKind::Number(_)
                    | TokenKind::LParen
            )
        )
    }

    fn term(&mut self) -> Result<FreeExpr, ParseError> {
        let mut factors = alloc::vec![self.factor()?];
        loop {
            // `*` is optional: juxtaposition is also a product.
            if self.eat(TokenKind::Star) || self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            FreeExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<FreeExpr, ParseError> {
        let base = self.atom()?;
        if !self.eat(TokenKind::Caret) {
            return Ok(base);
        }
        let at = self.here();
        let err = || ParseError::new(at, "non-negative integer exponent expected", &["integer"]);
        let tok = self.peek().ok_or_else(err)?;
        let lexeme = &self.text[tok.span.clone()];
        if !matches!(tok.kind, TokenKind::Number(_)) || !lexeme.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let n: u32 = lexeme
            .parse()
            .map_err(|_| ParseError::new(at, "exponent too large", &["integer"]))?;
        self.pos += 1;
        Ok(FreeExpr::Pow(Box::new(base), n))
    }

    fn atom(&mut self) -> Result<FreeExpr, ParseError> {
        let Some(tok) = self.peek() else {
            return Err(ParseError::new(self.end, "unexpected end of input", ATOM_START));
        };
        let out = match tok.kind {
            TokenKind::Theta => FreeExpr::Gen(Generator::Theta),
            TokenKind::ThetaBar => FreeExpr::Gen(Generator::ThetaBar),
            TokenKind::Q => FreeExpr::Q,
            TokenKind::Number(c) => FreeExpr::Const(c),
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(TokenKind::RParen) {
                    return Err(ParseError::new(self.here(), "unbalanced '('", &[")"]));
                }
                // A parenthesized numeric literal such as (1+2i) is one constant.
                return Ok(match inner.constant_value() {
                    Some(c) => FreeExpr::Const(c),
                    None => inner,
                });
            }
            _ => return Err(ParseError::new(tok.span.start, "unexpected token", ATOM_START)),
        };
        self.pos += 1;
        Ok(out)
    }
}
