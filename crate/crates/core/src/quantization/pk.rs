use num_complex::Complex64;

use crate::forms::{form, in_range, FormMode};
use crate::quantization::OperatorPG;
use crate::{PGElement, WeightSeq};

/// Which route [`project_pk`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkMode {
    /// `θ^a θ̄^b ↦ (w_a / w_{a-b}) χ_l(a-b) θ^{a-b}`.
    Closed,
    /// Pair with the reproducing kernel: `Σ_k (1/w_k) ⟨θ^k, F⟩_w θ^k`.
    Kernel,
}

/// Projection onto the holomorphic subspace defined by the reproducing
/// kernel.
///
/// # Panics
///
/// If the orders of `f` and `w` differ.
pub fn project_pk(f: &PGElement, w: &WeightSeq, mode: PkMode) -> PGElement {
    let l = w.l();
    assert_eq!(f.l(), l, "paragrassmann order mismatch");
    let mut coords = alloc::vec![Complex64::new(0.0, 0.0); l];
    match mode {
        PkMode::Closed => {
            for (a, b, c) in f.terms() {
                if let Some(k) = in_range(a as isize - b as isize, l) {
                    coords[k] += c * (w.get(a) / w.get(k));
                }
            }
        }
        PkMode::Kernel => {
            for (k, slot) in coords.iter_mut().enumerate() {
                let pairing = form(&PGElement::monomial(l, k, 0), f, w, FormMode::Definitional);
                *slot = pairing / w.get(k);
            }
        }
    }
    PGElement::holomorphic(l, &coords)
}

/// Projection onto the anti-holomorphic subspace defined by its kernel:
/// `θ^a θ̄^b ↦ (w_b / w_{b-a}) χ_l(b-a) θ̄^{b-a}` in closed mode, or
/// `Σ_k (1/w_k) ⟨θ̄^k, F⟩_w θ̄^k` in kernel mode.
pub fn project_pk_bar(f: &PGElement, w: &WeightSeq, mode: PkMode) -> PGElement {
    let l = w.l();
    assert_eq!(f.l(), l, "paragrassmann order mismatch");
    let mut coords = alloc::vec![Complex64::new(0.0, 0.0); l];
    match mode {
        PkMode::Closed => {
            for (a, b, c) in f.terms() {
                if let Some(k) = in_range(b as isize - a as isize, l) {
                    coords[k] += c * (w.get(b) / w.get(k));
                }
            }
        }
        PkMode::Kernel => {
            for (k, slot) in coords.iter_mut().enumerate() {
                let pairing = form(&PGElement::monomial(l, 0, k), f, w, FormMode::Definitional);
                *slot = pairing / w.get(k);
            }
        }
    }
    PGElement::anti_holomorphic(l, &coords)
}

/// Matrix of [`project_pk`] over the anti-Wick basis.
pub fn pk_operator(w: &WeightSeq) -> OperatorPG {
    OperatorPG::from_basis_images(w.l(), |f| project_pk(f, w, PkMode::Closed))
}
