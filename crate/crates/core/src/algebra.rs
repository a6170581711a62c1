//! Elements of `PG(l, q)` and the algebra operations on them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::expr::FreeExpr;
use crate::linalg::CompensatedSum;
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The two generators of the free algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Holomorphic generator `θ`.
    Theta,
    /// Anti-holomorphic generator `θ̄`.
    ThetaBar,
}

/// Nilpotency order `l` together with the deformation parameter `q`.
///
/// Holds the table of inverse powers `q^{-k}` for `k < l²`, which is every
/// exponent the product of two basis monomials can produce.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraCtx {
    l: usize,
    q: Complex64,
    q_inv_powers: Vec<Complex64>,
}

impl AlgebraCtx {
    pub fn new(l: usize, q: Complex64) -> Result<Self, Error> {
        if l < 2 {
            return Err(Error::InvalidOrder(l));
        }
        if !(q.re.is_finite() && q.im.is_finite()) || q.norm() == 0.0 {
            return Err(Error::InvalidDeformation);
        }
        let q_inv = q.inv();
        let mut q_inv_powers = Vec::with_capacity(l * l);
        let mut acc = ONE;
        for _ in 0..l * l {
            q_inv_powers.push(acc);
            acc *= q_inv;
        }
        Ok(Self { l, q, q_inv_powers })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `q^{-k}`.
    pub fn q_inv_pow(&self, k: usize) -> Complex64 {
        match self.q_inv_powers.get(k) {
            Some(&v) => v,
            None => self.q.inv().powi(k as i32),
        }
    }

    /// Reduces a word in the generators to anti-Wick normal form.
    ///
    /// Each `θ̄` standing to the left of a `θ` contributes one factor `q^{-1}`
    /// when the pair is swapped, so the coefficient is `q^{-inv}` where `inv`
    /// counts such pairs.
    pub fn normal_order(&self, word: &[Generator]) -> PGElement {
        let mut thetas = 0usize;
        let mut bars = 0usize;
        let mut inversions = 0usize;
        for g in word {
            match g {
                Generator::Theta => {
                    thetas += 1;
                    inversions += bars;
                }
                Generator::ThetaBar => bars += 1,
            }
        }
        let mut out = PGElement::zero(self.l);
        if thetas < self.l && bars < self.l {
            out.coeffs[thetas * self.l + bars] = self.q_inv_pow(inversions);
        }
        out
    }

    /// The algebra product `f g`.
    ///
    /// On basis monomials `(θ^a θ̄^b)(θ^c θ̄^d) = q^{-bc} θ^{a+c} θ̄^{b+d}`.
    ///
    /// # Panics
    ///
    /// If `f`, `g` and the context do not share the same order.
    pub fn multiply(&self, f: &PGElement, g: &PGElement) -> PGElement {
        let l = self.l;
        assert_same_order(l, f.l);
        assert_same_order(l, g.l);
        let mut out = PGElement::zero(l);
        for (a, b, fc) in f.terms() {
            for (c, d, gc) in g.terms() {
                if a + c < l && b + d < l {
                    out.coeffs[(a + c) * l + b + d] += fc * gc * self.q_inv_pow(b * c);
                }
            }
        }
        out
    }

    /// `f^n`, with `f^0 = 1`, by repeated squaring.
    pub fn pow(&self, f: &PGElement, n: u32) -> PGElement {
        let mut acc = PGElement::one(self.l);
        let mut base = f.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// Evaluates a free-algebra expression in the quotient, substituting this
    /// context's `q` for the symbol `q`.
    ///
    /// The quotient map is an algebra homomorphism, so sums and products are
    /// evaluated directly in `PG(l, q)` instead of expanding into words first.
    pub fn evaluate(&self, e: &FreeExpr) -> PGElement {
        let l = self.l;
        match e {
            FreeExpr::Const(c) => PGElement::one(l) * *c,
            FreeExpr::Q => PGElement::one(l) * self.q,
            FreeExpr::Gen(g) => self.normal_order(core::slice::from_ref(g)),
            FreeExpr::Neg(inner) => -self.evaluate(inner),
            FreeExpr::Sum(terms) => terms
                .iter()
                .fold(PGElement::zero(l), |acc, t| acc + self.evaluate(t)),
            FreeExpr::Product(factors) => factors
                .iter()
                .fold(PGElement::one(l), |acc, t| self.multiply(&acc, &self.evaluate(t))),
            FreeExpr::Pow(base, n) => self.pow(&self.evaluate(base), *n),
        }
    }
}

fn assert_same_order(expected: usize, found: usize) {
    assert_eq!(
        expected, found,
        "paragrassmann order mismatch: expected l = {expected}, found l = {found}"
    );
}

/// An element of `PG(l, q)` stored densely over the anti-Wick basis.
///
/// Entry `i * l + j` is the coefficient of `θ^i θ̄^j`. The element does not
/// carry `q`; operations that depend on it take an [`AlgebraCtx`].
#[derive(Debug, Clone, PartialEq)]
pub struct PGElement {
    l: usize,
    coeffs: Vec<Complex64>,
}

impl PGElement {
    pub fn zero(l: usize) -> Self {
        Self {
            l,
            coeffs: vec![ZERO; l * l],
        }
    }

    pub fn one(l: usize) -> Self {
        Self::monomial(l, 0, 0)
    }

    /// `θ^i θ̄^j`, which is zero when either exponent reaches `l`.
    pub fn monomial(l: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zero(l);
        if i < l && j < l {
            out.coeffs[i * l + j] = ONE;
        }
        out
    }

    pub fn theta(l: usize) -> Self {
        Self::monomial(l, 1, 0)
    }

    pub fn theta_bar(l: usize) -> Self {
        Self::monomial(l, 0, 1)
    }

    /// Builds an element from `l²` coefficients in anti-Wick order.
    pub fn from_coeffs(l: usize, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.len() != l * l {
            return Err(Error::CoefficientCount {
                expected: l * l,
                found: coeffs.len(),
            });
        }
        Ok(Self { l, coeffs })
    }

    /// Holomorphic element `Σ_k c_k θ^k`; coefficients past `l - 1` vanish.
    pub fn holomorphic(l: usize, coeffs: &[Complex64]) -> Self {
        let mut out = Self::zero(l);
        for (k, &c) in coeffs.iter().enumerate().take(l) {
            out.coeffs[k * l] = c;
        }
        out
    }

    /// Anti-holomorphic element `Σ_k c_k θ̄^k`.
    pub fn anti_holomorphic(l: usize, coeffs: &[Complex64]) -> Self {
        let mut out = Self::zero(l);
        for (k, &c) in coeffs.iter().enumerate().take(l) {
            out.coeffs[k] = c;
        }
        out
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `θ^i θ̄^j`; zero outside the index range.
    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        if i < self.l && j < self.l {
            self.coeffs[i * self.l + j]
        } else {
            ZERO
        }
    }

    /// # Panics
    ///
    /// If `i` or `j` is not below `l`.
    pub fn set_coeff(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.l && j < self.l, "monomial index out of range");
        self.coeffs[i * self.l + j] = value;
    }

    /// Nonzero terms as `(i, j, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let l = self.l;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(move |(k, &c)| (k / l, k % l, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// True when every term lies in the span of `θ^k`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms().all(|(_, j, _)| j == 0)
    }

    pub fn is_anti_holomorphic(&self) -> bool {
        self.terms().all(|(i, _, _)| i == 0)
    }

    /// Anti-linear conjugation `(c θ^i θ̄^j)^* = c̄ θ^j θ̄^i`.
    pub fn conjugate(&self) -> Self {
        self.transposed(|c| c.conj())
    }

    /// Linear basis swap `c θ^i θ̄^j ↦ c θ^j θ̄^i`. Unlike [`conjugate`] the
    /// coefficients are left alone.
    ///
    /// [`conjugate`]: PGElement::conjugate
    pub fn z_map(&self) -> Self {
        self.transposed(|c| c)
    }

    fn transposed(&self, coeff: impl Fn(Complex64) -> Complex64) -> Self {
        let l = self.l;
        let mut out = Self::zero(l);
        for i in 0..l {
            for j in 0..l {
                out.coeffs[j * l + i] = coeff(self.coeffs[i * l + j]);
            }
        }
        out
    }

    /// Anti-Wick product `:θ^a θ̄^b: :θ^c θ̄^d: = θ^{a+c} θ̄^{b+d}`, with no
    /// `q` factors.
    ///
    /// # Panics
    ///
    /// If the orders differ.
    pub fn anti_wick_product(&self, other: &Self) -> Self {
        let l = self.l;
        assert_same_order(l, other.l);
        let mut acc = vec![CompensatedSum::default(); l * l];
        for (a, b, fc) in self.terms() {
            for (c, d, gc) in other.terms() {
                if a + c < l && b + d < l {
                    acc[(a + c) * l + b + d].add(fc * gc);
                }
            }
        }
        Self {
            l,
            coeffs: acc.iter().map(CompensatedSum::value).collect(),
        }
    }

    /// Berezin integral: the coefficient of `θ^{l-1} θ̄^{l-1}`.
    pub fn berezin_integral(&self) -> Complex64 {
        self.coeffs[self.l * self.l - 1]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            l: self.l,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_same_order(self.l, other.l);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Coefficient-wise [`approx_eq`](crate::approx_eq).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.l == other.l
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| crate::approx_eq(*a, *b))
    }
}

impl Add for PGElement {
    type Output = PGElement;

    fn add(mut self, rhs: PGElement) -> PGElement {
        self += &rhs;
        self
    }
}

impl AddAssign<&PGElement> for PGElement {
    fn add_assign(&mut self, rhs: &PGElement) {
        assert_same_order(self.l, rhs.l);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for PGElement {
    type Output = PGElement;

    fn sub(self, rhs: PGElement) -> PGElement {
        self + (-rhs)
    }
}

impl Neg for PGElement {
    type Output = PGElement;

    fn neg(mut self) -> PGElement {
        for c in &mut self.coeffs {
            *c = -*c;
        }
        self
    }
}

impl Mul<Complex64> for PGElement {
    type Output = PGElement;

    fn mul(self, rhs: Complex64) -> PGElement {
        self.scale(rhs)
    }
}

impl fmt::Display for PGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::symbol::format(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::{Theta as T, ThetaBar as B};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx(l: usize, q: f64) -> AlgebraCtx {
        AlgebraCtx::new(l, c(q, 0.0)).unwrap()
    }

    #[test]
    fn rejects_bad_context() {
        assert_eq!(AlgebraCtx::new(1, ONE), Err(Error::InvalidOrder(1)));
        assert_eq!(AlgebraCtx::new(3, ZERO), Err(Error::InvalidDeformation));
        assert_eq!(
            AlgebraCtx::new(3, c(f64::NAN, 0.0)),
            Err(Error::InvalidDeformation)
        );
    }

    #[test]
    fn normal_order_single_swap() {
        let ctx = ctx(4, 3.0);
        let e = ctx.normal_order(&[B, T]);
        assert!(e.approx_eq(&(PGElement::monomial(4, 1, 1) * c(1.0 / 3.0, 0.0))));
    }

    #[test]
    fn normal_order_already_ordered() {
        let ctx = ctx(2, 5.0);
        assert_eq!(ctx.normal_order(&[T, B]), PGElement::monomial(2, 1, 1));
    }

    #[test]
    fn normal_order_overflow_is_zero() {
        let ctx = ctx(2, 2.0);
        assert!(ctx.normal_order(&[B, T, B]).is_zero());
        assert!(ctx.normal_order(&[T, T]).is_zero());
    }

    #[test]
    fn multiply_examples() {
        let ctx = ctx(3, 2.0);
        let tt = PGElement::monomial(3, 1, 1);
        let th = PGElement::theta(3);
        assert!(ctx
            .multiply(&tt, &th)
            .approx_eq(&(PGElement::monomial(3, 2, 1) * c(0.5, 0.0))));
        assert!(ctx
            .multiply(&tt, &tt)
            .approx_eq(&(PGElement::monomial(3, 2, 2) * c(0.5, 0.0))));
        for l in 2..7 {
            let ctx = AlgebraCtx::new(l, c(0.3, 0.7)).unwrap();
            let top = PGElement::monomial(l, l - 1, 0);
            assert!(ctx.multiply(&PGElement::theta(l), &top).is_zero());
        }
    }

    #[test]
    #[should_panic(expected = "order mismatch")]
    fn multiply_rejects_mixed_orders() {
        let ctx = ctx(3, 1.0);
        ctx.multiply(&PGElement::one(3), &PGElement::one(4));
    }

    #[test]
    fn defining_relation_vanishes() {
        let ctx = AlgebraCtx::new(5, c(0.5, -1.5)).unwrap();
        let th = PGElement::theta(5);
        let tb = PGElement::theta_bar(5);
        let rel = ctx.multiply(&th, &tb) - ctx.multiply(&tb, &th) * ctx.q();
        assert!(rel.max_abs() < 1e-15);
    }

    #[test]
    fn conjugate_and_z_map() {
        let mut f = PGElement::zero(3);
        f.set_coeff(2, 1, c(2.0, 1.0));
        let conj = f.conjugate();
        assert_eq!(conj.coeff(1, 2), c(2.0, -1.0));
        assert_eq!(conj.coeff(2, 1), ZERO);
        let z = f.z_map();
        assert_eq!(z.coeff(1, 2), c(2.0, 1.0));
        let tt = PGElement::monomial(3, 1, 1);
        assert_eq!(tt.conjugate(), tt);
        assert_eq!(PGElement::theta_bar(3).z_map(), PGElement::theta(3));
    }

    #[test]
    fn anti_wick_product_has_no_q() {
        let tt = PGElement::monomial(3, 1, 1);
        assert_eq!(tt.anti_wick_product(&tt), PGElement::monomial(3, 2, 2));
        assert_eq!(
            PGElement::theta(2).anti_wick_product(&PGElement::theta_bar(2)),
            PGElement::monomial(2, 1, 1)
        );
        for l in 2..6 {
            let top = PGElement::monomial(l, l - 1, 0);
            assert!(PGElement::theta(l).anti_wick_product(&top).is_zero());
        }
    }

    #[test]
    fn berezin_picks_top_coefficient() {
        let f = PGElement::monomial(2, 1, 1) * c(3.0, 0.0) + PGElement::one(2) * c(5.0, 0.0);
        assert_eq!(f.berezin_integral(), c(3.0, 0.0));
        for l in 2..6 {
            assert_eq!(PGElement::monomial(l, l - 1, l - 2).berezin_integral(), ZERO);
        }
        let g = PGElement::monomial(3, 2, 2) * c(4.0, -1.0);
        assert_eq!(g.berezin_integral(), c(4.0, -1.0));
    }

    #[test]
    fn monomial_past_order_is_zero() {
        assert!(PGElement::monomial(3, 3, 0).is_zero());
        assert_eq!(PGElement::monomial(3, 2, 2).coeff(5, 0), ZERO);
    }

    #[test]
    fn from_coeffs_checks_length() {
        assert_eq!(
            PGElement::from_coeffs(2, vec![ONE; 3]),
            Err(Error::CoefficientCount {
                expected: 4,
                found: 3
            })
        );
    }
}
