use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TokenKind {
    Theta,
    ThetaBar,
    Q,
    /// Real or imaginary literal.
    Number(Complex64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Range<usize>,
}

const COMBINING_MACRON: char = '\u{0304}';

/// Splits `text` into tokens. Fails on the first character that starts no
/// token.
pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while let Some(ch) = text[pos..].chars().next() {
        let start = pos;
        let single = |kind| Token {
            kind,
            span: start..start + ch.len_utf8(),
        };
        match ch {
            c if c.is_whitespace() => {
                pos += c.len_utf8();
                continue;
            }
            '+' => tokens.push(single(TokenKind::Plus)),
            '-' | '\u{2212}' => tokens.push(single(TokenKind::Minus)),
            '*' => tokens.push(single(TokenKind::Star)),
            '^' => tokens.push(single(TokenKind::Caret)),
            '(' => tokens.push(single(TokenKind::LParen)),
            ')' => tokens.push(single(TokenKind::RParen)),
            'θ' => {
                let mut end = start + ch.len_utf8();
                let kind = if text[end..].starts_with(COMBINING_MACRON) {
                    end += COMBINING_MACRON.len_utf8();
                    TokenKind::ThetaBar
                } else {
                    TokenKind::Theta
                };
                tokens.push(Token { kind, span: start..end });
                pos = end;
                continue;
            }
            c if c.is_ascii_digit() || (c == '.' && bytes.get(pos + 1).is_some_and(u8::is_ascii_digit)) => {
                let end = number_end(bytes, pos);
                let value: f64 = text[start..end]
                    .parse()
                    .map_err(|_| ParseError::new(start, format!("malformed number '{}'", &text[start..end]), &[]))?;
                let imaginary = bytes.get(end) == Some(&b'i')
                    && !bytes.get(end + 1).is_some_and(u8::is_ascii_alphanumeric);
                let (value, end) = if imaginary {
                    (Complex64::new(0.0, value), end + 1)
                } else {
                    (Complex64::new(value, 0.0), end)
                };
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    span: start..end,
                });
                pos = end;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let end = start
                    + text[start..]
                        .find(|c: char| !c.is_ascii_alphanumeric())
                        .unwrap_or(text.len() - start);
                let kind = match &text[start..end] {
                    "th" => TokenKind::Theta,
                    "thb" => TokenKind::ThetaBar,
                    "q" => TokenKind::Q,
                    "i" => TokenKind::Number(Complex64::new(0.0, 1.0)),
                    other => {
                        return Err(ParseError::new(
                            start,
                            format!("unknown token '{other}'"),
                            &["th", "thb", "q", "i"],
                        ))
                    }
                };
                tokens.push(Token { kind, span: start..end });
                pos = end;
                continue;
            }
            other => {
                return Err(ParseError::new(
                    start,
                    format!("unknown token '{other}'"),
                    &["th", "thb", "q", "number", "+", "-", "*", "^", "(", ")"],
                ))
            }
        }
        pos += ch.len_utf8();
    }
    Ok(tokens)
}

/// End of a decimal literal `digits [. digits] [e [+-] digits]` starting at
/// `pos`.
fn number_end(bytes: &[u8], mut pos: usize) -> usize {
    let digits = |mut p: usize| {
        while bytes.get(p).is_some_and(u8::is_ascii_digit) {
            p += 1;
        }
        p
    };
    pos = digits(pos);
    if bytes.get(pos) == Some(&b'.') {
        pos = digits(pos + 1);
    }
    if matches!(bytes.get(pos), Some(b'e' | b'E')) {
        let mut p = pos + 1;
        if matches!(bytes.get(p), Some(b'+' | b'-')) {
            p += 1;
        }
        if bytes.get(p).is_some_and(u8::is_ascii_digit) {
            pos = digits(p);
        }
    }
    pos
}
