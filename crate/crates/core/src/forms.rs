//! The weighted sesquilinear form on `PG(l, q)`, its Gram matrix, adjoints
//! taken with respect to it, and the orthonormal basis of the holomorphic
//! subspace.
//!
//! The form is anti-linear in its first argument. It is nondegenerate but
//! indefinite on the whole algebra; restricted to the holomorphic span of
//! `θ^k` it is a positive definite inner product with
//! `⟨θ^j, θ^k⟩ = δ_{jk} w_j`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, Dyn, LU};
use num_complex::Complex64;

use crate::linalg::CompensatedSum;
use crate::quantization::OperatorPG;
use crate::{Error, PGElement};

/// Returns `Some(k)` when `k` lies in `0..l`: the cutoff `χ_l` as an
/// index guard.
pub(crate) fn in_range(k: isize, l: usize) -> Option<usize> {
    (k >= 0 && (k as usize) < l).then_some(k as usize)
}

/// Strictly positive weights `w_0, …, w_{l-1}`.
///
/// Reads past the end return `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    w: Vec<f64>,
}

impl WeightSeq {
    pub fn new(w: Vec<f64>) -> Result<Self, Error> {
        if w.len() < 2 {
            return Err(Error::InvalidOrder(w.len()));
        }
        if let Some((index, &value)) = w
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveWeight { index, value });
        }
        Ok(Self { w })
    }

    /// `w_n = 1`.
    pub fn ones(l: usize) -> Result<Self, Error> {
        Self::new(alloc::vec![1.0; l])
    }

    /// `w_n = n!`.
    pub fn factorial(l: usize) -> Result<Self, Error> {
        let mut acc = 1.0;
        let w = (0..l)
            .map(|n| {
                if n > 0 {
                    acc *= n as f64;
                }
                acc
            })
            .collect();
        Self::new(w)
    }

    /// `w_n = Π_{k=1..n} (1 - q^k) / (1 - q)`, the q-factorial.
    ///
    /// Only accepted for real `q` with every factor strictly positive; at
    /// `q = 1` the factors are the integers `k`.
    pub fn q_factorial(l: usize, q: Complex64) -> Result<Self, Error> {
        if q.im != 0.0 {
            return Err(Error::QFactorialWeights {
                index: 0,
                value: f64::NAN,
            });
        }
        let q = q.re;
        let mut acc = 1.0;
        let mut w = Vec::with_capacity(l);
        for n in 0..l {
            if n > 0 {
                let factor = if q == 1.0 {
                    n as f64
                } else {
                    (1.0 - libm::pow(q, n as f64)) / (1.0 - q)
                };
                if factor.is_nan() || factor <= 0.0 {
                    return Err(Error::QFactorialWeights {
                        index: n,
                        value: factor,
                    });
                }
                acc *= factor;
            }
            w.push(acc);
        }
        Self::new(w)
    }

    pub fn l(&self) -> usize {
        self.w.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    /// `w_n`, or `0` when `n >= l`.
    pub fn get(&self, n: usize) -> f64 {
        self.w.get(n).copied().unwrap_or(0.0)
    }

    /// The w-deformed integer `[a]_w = w_a / w_{a-1}`, with `[0]_w = 0`.
    pub fn deformed_integer(&self, a: usize) -> f64 {
        if a == 0 {
            0.0
        } else {
            self.get(a) / self.get(a - 1)
        }
    }

    /// `[a]_w! = Π_{k=1..a} [k]_w = w_a / w_0`, with `[0]_w! = 1`.
    pub fn deformed_factorial(&self, a: usize) -> f64 {
        (1..=a).map(|k| self.deformed_integer(k)).product()
    }
}

/// `⟨θ^a θ̄^b, θ^c θ̄^d⟩_w = δ_{a+d, b+c} χ_l(a+d) w_{a+d}`.
pub fn gram_entry(w: &WeightSeq, a: usize, b: usize, c: usize, d: usize) -> f64 {
    if a + d == b + c && a + d < w.l() {
        w.get(a + d)
    } else {
        0.0
    }
}

/// Which route [`form`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormMode {
    /// Contract coefficients against the closed-form Gram entries.
    Closed,
    /// Sum of Berezin integrals of anti-Wick products.
    Definitional,
}

/// The weighted form `⟨f, g⟩_w`, anti-linear in `f`.
///
/// # Panics
///
/// If `f`, `g` and `w` do not share the same order.
pub fn form(f: &PGElement, g: &PGElement, w: &WeightSeq, mode: FormMode) -> Complex64 {
    let l = w.l();
    assert!(
        f.l() == l && g.l() == l,
        "paragrassmann order mismatch in form: {} / {} against weights of length {l}",
        f.l(),
        g.l()
    );
    match mode {
        FormMode::Closed => {
            // Gram entries only depend on n = a + d, so collect the
            // coefficient products per n and weight each class once.
            let mut classes = alloc::vec![CompensatedSum::default(); l];
            for (a, b, fc) in f.terms() {
                for c in 0..l {
                    let Some(d) = in_range((b + c) as isize - a as isize, l) else {
                        continue;
                    };
                    if let Some(n) = in_range((a + d) as isize, l) {
                        classes[n].add(fc.conj() * g.coeff(c, d));
                    }
                }
            }
            let total: CompensatedSum = classes
                .iter()
                .enumerate()
                .map(|(n, s)| s.value() * w.get(n))
                .sum();
            total.value()
        }
        FormMode::Definitional => {
            let inner = f.conjugate().anti_wick_product(g);
            // θ^m on the left and θ̄^m on the right never need reordering, so
            // the anti-Wick product coincides with the algebra product here.
            (0..l)
                .map(|m| {
                    let wrapped = PGElement::monomial(l, m, 0)
                        .anti_wick_product(&inner)
                        .anti_wick_product(&PGElement::monomial(l, 0, m));
                    wrapped.berezin_integral() * w.get(l - 1 - m)
                })
                .sum::<CompensatedSum>()
                .value()
        }
    }
}

/// `⟨f, f⟩_w`, which is real but may be zero or negative off the
/// holomorphic subspace.
pub fn norm_sq(f: &PGElement, w: &WeightSeq) -> f64 {
    form(f, f, w, FormMode::Closed).re
}

/// The orthonormal holomorphic basis element `φ_j = w_j^{-1/2} θ^j`.
pub fn orthonormal_phi(j: usize, w: &WeightSeq) -> Result<PGElement, Error> {
    let l = w.l();
    if j >= l {
        return Err(Error::IndexOutOfRange { index: j, l });
    }
    Ok(PGElement::monomial(l, j, 0) * Complex64::new(1.0 / libm::sqrt(w.get(j)), 0.0))
}

/// The `l² × l²` Gram matrix of the form over the anti-Wick basis, with its
/// LU factorization kept for adjoint computations.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    weights: WeightSeq,
    matrix: DMatrix<f64>,
    lu: LU<Complex64, Dyn, Dyn>,
}

impl GramMatrix {
    pub fn new(w: &WeightSeq) -> Self {
        let l = w.l();
        let matrix = DMatrix::from_fn(l * l, l * l, |r, s| {
            gram_entry(w, r / l, r % l, s / l, s % l)
        });
        let lu = matrix.map(|x| Complex64::new(x, 0.0)).lu();
        Self {
            weights: w.clone(),
            matrix,
            lu,
        }
    }

    pub fn weights(&self) -> &WeightSeq {
        &self.weights
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn determinant(&self) -> f64 {
        self.lu.determinant().re
    }

    /// `f^H G g`.
    pub fn form(&self, f: &PGElement, g: &PGElement) -> Complex64 {
        let n = self.matrix.nrows();
        assert!(f.l() * f.l() == n && g.l() * g.l() == n, "paragrassmann order mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, fc) in f.coeffs().iter().enumerate() {
            for (s, gc) in g.coeffs().iter().enumerate() {
                let entry = self.matrix[(r, s)];
                if entry != 0.0 {
                    acc += fc.conj() * gc * entry;
                }
            }
        }
        acc
    }

    /// The unique `A*` with `⟨A f, g⟩_w = ⟨f, A* g⟩_w`, namely
    /// `G^{-1} A^H G`.
    pub fn adjoint(&self, a: &OperatorPG) -> OperatorPG {
        let g = self.matrix.map(|x| Complex64::new(x, 0.0));
        assert_eq!(a.matrix().nrows(), g.nrows(), "operator size does not match Gram matrix");
        let rhs = a.matrix().adjoint() * &g;
        let solved = self
            .lu
            .solve(&rhs)
            .expect("Gram matrix of strictly positive weights is invertible");
        OperatorPG::from_matrix(solved)
    }
}

/// Adjoint of `a` with respect to the weighted form. Builds the Gram
/// factorization on every call; reuse a [`GramMatrix`] for repeated use.
pub fn adjoint_wrt_form(a: &OperatorPG, w: &WeightSeq) -> OperatorPG {
    GramMatrix::new(w).adjoint(a)
}
