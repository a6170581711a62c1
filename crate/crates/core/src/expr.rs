//! Non-commutative polynomials in `θ`, `θ̄` and the symbolic constant `q`.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::algebra::Generator;

/// Syntax tree of an element of the free algebra `C{θ, θ̄}`, with `q` kept
/// symbolic until evaluation. Products keep their factor order.
#[derive(Debug, Clone, PartialEq)]
pub enum FreeExpr {
    Const(Complex64),
    /// The deformation parameter, substituted at evaluation time.
    Q,
    Gen(Generator),
    Sum(Vec<FreeExpr>),
    Product(Vec<FreeExpr>),
    Pow(Box<FreeExpr>, u32),
    Neg(Box<FreeExpr>),
}

impl FreeExpr {
    pub fn theta() -> Self {
        FreeExpr::Gen(Generator::Theta)
    }

    pub fn theta_bar() -> Self {
        FreeExpr::Gen(Generator::ThetaBar)
    }

    pub fn constant(re: f64, im: f64) -> Self {
        FreeExpr::Const(Complex64::new(re, im))
    }

    pub fn pow(self, n: u32) -> Self {
        FreeExpr::Pow(Box::new(self), n)
    }

    /// The value of an expression built only from numeric constants, or
    /// `None` if it mentions `q` or a generator.
    pub fn constant_value(&self) -> Option<Complex64> {
        match self {
            FreeExpr::Const(c) => Some(*c),
            FreeExpr::Q | FreeExpr::Gen(_) => None,
            FreeExpr::Neg(e) => e.constant_value().map(|c| -c),
            FreeExpr::Sum(ts) => ts
                .iter()
                .try_fold(Complex64::new(0.0, 0.0), |acc, t| Some(acc + t.constant_value()?)),
            FreeExpr::Product(fs) => fs
                .iter()
                .try_fold(Complex64::new(1.0, 0.0), |acc, t| Some(acc * t.constant_value()?)),
            FreeExpr::Pow(b, n) => b.constant_value().map(|c| c.powi(*n as i32)),
        }
    }

    /// Expands into a sum of `(coefficient, q-degree, word)` triples with no
    /// evaluation in the quotient.
    pub fn expand(&self) -> Vec<(Complex64, u32, Vec<Generator>)> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            FreeExpr::Const(c) => vec![(*c, 0, Vec::new())],
            FreeExpr::Q => vec![(one, 1, Vec::new())],
            FreeExpr::Gen(g) => vec![(one, 0, vec![*g])],
            FreeExpr::Neg(e) => e.expand().into_iter().map(|(c, k, w)| (-c, k, w)).collect(),
            FreeExpr::Sum(ts) => ts.iter().flat_map(FreeExpr::expand).collect(),
            FreeExpr::Product(fs) => fs
                .iter()
                .fold(vec![(one, 0, Vec::new())], |acc, f| product_terms(&acc, &f.expand())),
            FreeExpr::Pow(b, n) => {
                let base = b.expand();
                (0..*n).fold(vec![(one, 0, Vec::new())], |acc, _| product_terms(&acc, &base))
            }
        }
    }
}

type Term = (Complex64, u32, Vec<Generator>);

fn product_terms(left: &[Term], right: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for (c1, k1, w1) in left {
        for (c2, k2, w2) in right {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            out.push((c1 * c2, k1 + k2, w));
        }
    }
    out
}

impl Add for FreeExpr {
    type Output = FreeExpr;

    fn add(self, rhs: FreeExpr) -> FreeExpr {
        FreeExpr::Sum(vec![self, rhs])
    }
}

impl Sub for FreeExpr {
    type Output = FreeExpr;

    fn sub(self, rhs: FreeExpr) -> FreeExpr {
        FreeExpr::Sum(vec![self, -rhs])
    }
}

impl Mul for FreeExpr {
    type Output = FreeExpr;

    fn mul(self, rhs: FreeExpr) -> FreeExpr {
        FreeExpr::Product(vec![self, rhs])
    }
}

impl Neg for FreeExpr {
    type Output = FreeExpr;

    fn neg(self) -> FreeExpr {
        FreeExpr::Neg(Box::new(self))
    }
}
