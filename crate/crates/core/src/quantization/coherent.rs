use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::forms::in_range;
use crate::linalg::{columns_matrix, vectorize};
use crate::quantization::{project_pk_bar, PkMode};
use crate::{AlgebraCtx, PGElement, WeightSeq};

/// Which route [`coherent_quantization`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentMode {
    /// Closed action on the basis `e_a` for each basis symbol.
    Closed,
    /// Sum of Berezin integrals against the coherent states.
    Berezin,
}

fn sqrt_weights(w: &WeightSeq) -> Vec<f64> {
    w.as_slice().iter().map(|x| libm::sqrt(*x)).collect()
}

/// Coherent-state quantization `A_g`, acting on an auxiliary `l`-dimensional
/// space with orthonormal basis `e_a`.
///
/// For `g = θ^i θ̄^j` this sends `e_a` to
/// `w_{j+a} / (w_{j-i+a} w_a)^{1/2} e_{j-i+a}` when `j + a` and `j - i + a`
/// both lie in `0..l`, and to zero otherwise.
pub fn coherent_quantization(
    g: &PGElement,
    w: &WeightSeq,
    ctx: &AlgebraCtx,
    mode: CoherentMode,
) -> DMatrix<Complex64> {
    let l = ctx.l();
    assert!(g.l() == l && w.l() == l, "paragrassmann order mismatch");
    let sw = sqrt_weights(w);
    let mut m = DMatrix::<Complex64>::zeros(l, l);
    match mode {
        CoherentMode::Closed => {
            for (i, j, coeff) in g.terms() {
                for a in 0..l.saturating_sub(j) {
                    let top = j + a;
                    if let Some(row) = in_range(top as isize - i as isize, l) {
                        m[(row, a)] += coeff * (w.get(top) / (sw[row] * sw[a]));
                    }
                }
            }
        }
        CoherentMode::Berezin => {
            // A_g = Σ_m w_{l-1-m} ∫∫ |θ⟩ θ^m g θ̄^m ⟨θ̄|, with
            // |θ⟩ = Σ_r w_r^{-1/2} θ^r e_r and ⟨θ̄| = Σ_s w_s^{-1/2} θ̄^s e_s^*.
            for m_idx in 0..l {
                let weight = w.get(l - 1 - m_idx);
                for r in 0..l {
                    let left = ctx.multiply(&PGElement::monomial(l, r + m_idx, 0), g);
                    if left.is_zero() {
                        continue;
                    }
                    for s in 0..l {
                        let full = ctx.multiply(&left, &PGElement::monomial(l, 0, m_idx + s));
                        m[(r, s)] += full.berezin_integral() * (weight / (sw[r] * sw[s]));
                    }
                }
            }
        }
    }
    m
}

/// Flat Toeplitz quantization `P_K̄ ∘ M^L_g` on the anti-holomorphic subspace,
/// written in the orthonormal basis `φ*_a = w_a^{-1/2} θ̄^a`.
pub fn toeplitz_flat(g: &PGElement, w: &WeightSeq, ctx: &AlgebraCtx) -> DMatrix<Complex64> {
    let l = ctx.l();
    assert!(g.l() == l && w.l() == l, "paragrassmann order mismatch");
    let sw = sqrt_weights(w);
    let mut m = DMatrix::<Complex64>::zeros(l, l);
    for a in 0..l {
        let image = project_pk_bar(&ctx.multiply(g, &PGElement::monomial(l, 0, a)), w, PkMode::Closed);
        for b in 0..l {
            m[(b, a)] = image.coeff(0, b) * (sw[b] / sw[a]);
        }
    }
    m
}

/// Matrix of the linear map `g ↦ A_g` over the anti-Wick basis, columns
/// vectorized column-major.
pub fn coherent_map_matrix(w: &WeightSeq, ctx: &AlgebraCtx) -> DMatrix<Complex64> {
    let l = ctx.l();
    let columns: Vec<Vec<Complex64>> = (0..l * l)
        .map(|k| {
            let symbol = PGElement::monomial(l, k / l, k % l);
            vectorize(&coherent_quantization(&symbol, w, ctx, CoherentMode::Closed))
        })
        .collect();
    columns_matrix(&columns)
}
