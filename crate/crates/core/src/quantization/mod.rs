//! Operators on the holomorphic subspace and on the whole algebra: the
//! reproducing-kernel projection, multiplication operators, Toeplitz and
//! coherent-state quantizations, and the ladder operators.
//!
//! Operators on the holomorphic subspace are `l × l` matrices whose column
//! `a` holds the image of the `a`-th basis vector, either `θ^a` or the
//! normalized `φ_a = w_a^{-1/2} θ^a`. The auxiliary space of the coherent
//! state quantization is identified with `φ_a ↦ e_a`, so its matrices share
//! the orthonormal indexing.

mod coherent;
mod ladder;
mod pk;
mod toeplitz;

use core::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{PGElement, WeightSeq};

pub use coherent::{coherent_map_matrix, coherent_quantization, toeplitz_flat, CoherentMode};
pub use ladder::{anti_wick_operator_set, ladder_set, operator_set_rank, wick_operator_set, LadderSet};
pub use pk::{pk_operator, project_pk, project_pk_bar, PkMode};
pub use toeplitz::{
    mult_operator, operator_norm_bh, t_map_matrix, toeplitz, toeplitz_adjoint,
    toeplitz_orthonormal, Side, ToeplitzMode,
};

/// Basis of the holomorphic subspace a matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `θ^a`.
    Monomial,
    /// `φ_a = w_a^{-1/2} θ^a`.
    Orthonormal,
}

/// A linear map of the holomorphic subspace to itself.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBH {
    matrix: DMatrix<Complex64>,
    basis: Basis,
}

impl OperatorBH {
    /// # Panics
    ///
    /// If the matrix is not square.
    pub fn new(matrix: DMatrix<Complex64>, basis: Basis) -> Self {
        assert!(matrix.is_square(), "operator matrix must be square");
        Self { matrix, basis }
    }

    pub fn identity(l: usize, basis: Basis) -> Self {
        Self::new(DMatrix::identity(l, l), basis)
    }

    pub fn zero(l: usize, basis: Basis) -> Self {
        Self::new(DMatrix::zeros(l, l), basis)
    }

    pub fn l(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Rewrites the matrix in `target` basis. With `D = diag(w_a)` the
    /// orthonormal matrix is `D^{1/2} M D^{-1/2}`, since
    /// `φ_a = w_a^{-1/2} θ^a`.
    pub fn to_basis(&self, target: Basis, w: &WeightSeq) -> OperatorBH {
        assert_eq!(self.l(), w.l(), "weight count does not match operator size");
        if target == self.basis {
            return self.clone();
        }
        let sqrt_w: alloc::vec::Vec<f64> = w.as_slice().iter().map(|x| libm::sqrt(*x)).collect();
        let matrix = DMatrix::from_fn(self.l(), self.l(), |r, c| {
            let factor = match target {
                Basis::Orthonormal => sqrt_w[r] / sqrt_w[c],
                Basis::Monomial => sqrt_w[c] / sqrt_w[r],
            };
            self.matrix[(r, c)] * factor
        });
        OperatorBH::new(matrix, target)
    }

    /// `self ∘ other`.
    ///
    /// # Panics
    ///
    /// If the operators are written in different bases.
    pub fn compose(&self, other: &OperatorBH) -> OperatorBH {
        assert_eq!(self.basis, other.basis, "composing operators in different bases");
        OperatorBH::new(&self.matrix * &other.matrix, self.basis)
    }

    pub fn pow(&self, n: u32) -> OperatorBH {
        (0..n).fold(OperatorBH::identity(self.l(), self.basis), |acc, _| acc.compose(self))
    }

    /// Applies a monomial-basis operator to the holomorphic part of `f`.
    ///
    /// # Panics
    ///
    /// If the operator is not in the monomial basis or the orders differ.
    pub fn apply(&self, f: &PGElement) -> PGElement {
        assert_eq!(self.basis, Basis::Monomial, "apply needs a monomial-basis operator");
        let l = self.l();
        assert_eq!(f.l(), l, "paragrassmann order mismatch");
        let coords: alloc::vec::Vec<Complex64> = (0..l)
            .map(|r| (0..l).map(|c| self.matrix[(r, c)] * f.coeff(c, 0)).sum())
            .collect();
        PGElement::holomorphic(l, &coords)
    }

    /// Adjoint for the weighted inner product on the holomorphic subspace:
    /// `D^{-1} A^H D` in the monomial basis, `A^H` in the orthonormal one.
    pub fn adjoint(&self, w: &WeightSeq) -> OperatorBH {
        match self.basis {
            Basis::Orthonormal => OperatorBH::new(self.matrix.adjoint(), Basis::Orthonormal),
            Basis::Monomial => {
                assert_eq!(self.l(), w.l(), "weight count does not match operator size");
                let h = self.matrix.adjoint();
                let m = DMatrix::from_fn(self.l(), self.l(), |r, c| h[(r, c)] * (w.get(c) / w.get(r)));
                OperatorBH::new(m, Basis::Monomial)
            }
        }
    }
}

impl Mul for &OperatorBH {
    type Output = OperatorBH;

    fn mul(self, rhs: &OperatorBH) -> OperatorBH {
        self.compose(rhs)
    }
}

/// A linear map of the whole algebra over the anti-Wick basis
/// (`l² × l²`, index `i * l + j`).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPG {
    matrix: DMatrix<Complex64>,
}

impl OperatorPG {
    /// # Panics
    ///
    /// If the matrix is not square of perfect-square size.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        let n = matrix.nrows();
        assert!(matrix.is_square(), "operator matrix must be square");
        let l = libm::sqrt(n as f64) as usize;
        assert_eq!(l * l, n, "operator size {n} is not l²");
        Self { matrix }
    }

    /// Matrix whose column `k` is the image of the `k`-th basis monomial.
    pub fn from_basis_images(l: usize, image: impl Fn(&PGElement) -> PGElement) -> Self {
        let n = l * l;
        let mut matrix = DMatrix::zeros(n, n);
        for k in 0..n {
            let out = image(&PGElement::monomial(l, k / l, k % l));
            for (r, c) in out.coeffs().iter().enumerate() {
                matrix[(r, k)] = *c;
            }
        }
        Self { matrix }
    }

    pub fn identity(l: usize) -> Self {
        Self::from_matrix(DMatrix::identity(l * l, l * l))
    }

    pub fn l(&self) -> usize {
        libm::sqrt(self.matrix.nrows() as f64) as usize
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn apply(&self, f: &PGElement) -> PGElement {
        let l = self.l();
        assert_eq!(f.l(), l, "paragrassmann order mismatch");
        let coeffs = (0..l * l)
            .map(|r| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(c, x)| self.matrix[(r, c)] * x)
                    .sum()
            })
            .collect();
        PGElement::from_coeffs(l, coeffs).expect("l² coefficients")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorPG) -> OperatorPG {
        OperatorPG::from_matrix(&self.matrix * &other.matrix)
    }

    /// Compression `P_K ∘ self ∘ ι` to the holomorphic subspace, in the
    /// monomial basis.
    pub fn compress(&self, w: &WeightSeq) -> OperatorBH {
        let l = self.l();
        let projected = pk_operator(w).compose(self);
        let m = DMatrix::from_fn(l, l, |r, c| projected.matrix[(r * l, c * l)]);
        OperatorBH::new(m, Basis::Monomial)
    }
}

impl Mul for &OperatorPG {
    type Output = OperatorPG;

    fn mul(self, rhs: &OperatorPG) -> OperatorPG {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn basis_round_trip() {
        let w = WeightSeq::new(vec![1.0, 3.0, 7.0]).unwrap();
        let m = DMatrix::from_fn(3, 3, |r, c| Complex64::new((r * 3 + c) as f64, r as f64 - c as f64));
        let op = OperatorBH::new(m, Basis::Monomial);
        let back = op.to_basis(Basis::Orthonormal, &w).to_basis(Basis::Monomial, &w);
        assert!(crate::linalg::max_abs_diff(back.matrix(), op.matrix()) < 1e-12);
    }

    #[test]
    fn adjoint_agrees_across_bases() {
        let w = WeightSeq::new(vec![1.0, 3.0, 7.0]).unwrap();
        let m = DMatrix::from_fn(3, 3, |r, c| Complex64::new((r + 2 * c) as f64, 1.0 + r as f64));
        let op = OperatorBH::new(m, Basis::Monomial);
        let via_on = op.to_basis(Basis::Orthonormal, &w).adjoint(&w).to_basis(Basis::Monomial, &w);
        assert!(crate::linalg::max_abs_diff(via_on.matrix(), op.adjoint(&w).matrix()) < 1e-12);
    }

    #[test]
    fn pg_apply_matches_matrix() {
        let id = OperatorPG::identity(3);
        let f = PGElement::monomial(3, 2, 1);
        assert_eq!(id.apply(&f), f);
        assert_eq!(id.l(), 3);
    }
}
