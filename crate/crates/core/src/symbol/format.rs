use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::PGElement;

const SIG_DIGITS: usize = 12;

/// `x` with 12 significant digits, trailing zeros trimmed. Plain decimal
/// notation for exponents in `-5..12`, scientific otherwise.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return String::from("0");
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("LowerExp always has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if negative { "-" } else { "" };
    if !(-5..SIG_DIGITS as i32).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        return if frac.is_empty() {
            format!("{sign}{}e{exp}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp}", &digits[..1])
        };
    }
    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        (String::from(&digits[..split]), String::from(&digits[split..]))
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        (String::from("0"), format!("{zeros}{digits}"))
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

fn monomial_text(i: usize, j: usize) -> String {
    let power = |name: &str, k: usize| match k {
        0 => None,
        1 => Some(String::from(name)),
        _ => Some(format!("{name}^{k}")),
    };
    [power("th", i), power("thb", j)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

fn term_text(c: Complex64, monomial: &str) -> String {
    if c.im == 0.0 {
        match (c.re, monomial.is_empty()) {
            (re, true) => format_real(re),
            (1.0, false) => String::from(monomial),
            (-1.0, false) => format!("-{monomial}"),
            (re, false) => format!("{}*{monomial}", format_real(re)),
        }
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        let coeff = format!("({}{sign}{}i)", format_real(c.re), format_real(c.im.abs()));
        if monomial.is_empty() {
            coeff
        } else {
            format!("{coeff}*{monomial}")
        }
    }
}

/// Canonical anti-Wick text of `f`: nonzero terms in basis order, joined
/// with ` + ` / ` - `. The zero element prints as `0`.
pub fn format(f: &PGElement) -> String {
    let mut out = String::new();
    for (i, j, c) in f.terms() {
        let term = term_text(c, &monomial_text(i, j));
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
