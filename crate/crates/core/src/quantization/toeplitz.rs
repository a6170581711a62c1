use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::forms::in_range;
use crate::linalg::{columns_matrix, spectral_norm, vectorize};
use crate::quantization::{project_pk, Basis, OperatorBH, OperatorPG, PkMode};
use crate::{AlgebraCtx, PGElement, WeightSeq};

/// Which side a multiplication operator multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `F ↦ g F`.
    Left,
    /// `F ↦ F g`.
    Right,
}

/// Which route [`toeplitz`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToeplitzMode {
    /// Column formula for basis symbols, extended linearly.
    Closed,
    /// Right multiplication by the symbol followed by the kernel projection.
    Projection,
}

/// Multiplication by `g` on the algebra.
pub fn mult_operator(g: &PGElement, side: Side, ctx: &AlgebraCtx) -> OperatorPG {
    assert_eq!(g.l(), ctx.l(), "paragrassmann order mismatch");
    OperatorPG::from_basis_images(ctx.l(), |f| match side {
        Side::Left => ctx.multiply(g, f),
        Side::Right => ctx.multiply(f, g),
    })
}

/// Toeplitz operator `T_g = P_K M_g` on the holomorphic subspace, in the
/// monomial basis.
///
/// For a basis symbol `η^i η̄^j` column `a` has the single entry
/// `w_{i+a} / w_{i+a-j}` in row `i + a - j`, provided both `i + a` and
/// `i + a - j` lie in `0..l`; otherwise the column is zero.
pub fn toeplitz(g: &PGElement, w: &WeightSeq, ctx: &AlgebraCtx, mode: ToeplitzMode) -> OperatorBH {
    let l = ctx.l();
    assert!(g.l() == l && w.l() == l, "paragrassmann order mismatch");
    let mut m = DMatrix::<Complex64>::zeros(l, l);
    match mode {
        ToeplitzMode::Closed => {
            for (i, j, coeff) in g.terms() {
                for a in 0..l - i {
                    let top = i + a;
                    if let Some(row) = in_range(top as isize - j as isize, l) {
                        m[(row, a)] += coeff * (w.get(top) / w.get(row));
                    }
                }
            }
        }
        ToeplitzMode::Projection => {
            for a in 0..l {
                let shifted = ctx.multiply(&PGElement::monomial(l, a, 0), g);
                let image = project_pk(&shifted, w, PkMode::Kernel);
                for row in 0..l {
                    m[(row, a)] = image.coeff(row, 0);
                }
            }
        }
    }
    OperatorBH::new(m, Basis::Monomial)
}

/// [`toeplitz`] written in the orthonormal basis `φ_a`.
pub fn toeplitz_orthonormal(g: &PGElement, w: &WeightSeq, ctx: &AlgebraCtx) -> OperatorBH {
    toeplitz(g, w, ctx, ToeplitzMode::Closed).to_basis(Basis::Orthonormal, w)
}

/// Adjoint with respect to the weighted inner product on the holomorphic
/// subspace.
pub fn toeplitz_adjoint(a: &OperatorBH, w: &WeightSeq) -> OperatorBH {
    a.adjoint(w)
}

/// Operator norm for the weighted inner product: the largest singular value
/// of the orthonormal-basis matrix.
pub fn operator_norm_bh(a: &OperatorBH, w: &WeightSeq) -> f64 {
    spectral_norm(a.to_basis(Basis::Orthonormal, w).matrix())
}

/// Matrix of the linear map `g ↦ T_g`: column `k` is the column-major
/// vectorization of `T` applied to the `k`-th anti-Wick monomial.
pub fn t_map_matrix(w: &WeightSeq, ctx: &AlgebraCtx) -> DMatrix<Complex64> {
    let l = ctx.l();
    let columns: Vec<Vec<Complex64>> = (0..l * l)
        .map(|k| {
            let symbol = PGElement::monomial(l, k / l, k % l);
            vectorize(toeplitz(&symbol, w, ctx, ToeplitzMode::Closed).matrix())
        })
        .collect();
    columns_matrix(&columns)
}
