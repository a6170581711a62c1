use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{columns_matrix, numerical_rank, vectorize};
use crate::quantization::{toeplitz, OperatorBH, ToeplitzMode};
use crate::{AlgebraCtx, PGElement, WeightSeq};

/// Creation, annihilation and number operators in the monomial basis,
/// together with the w-deformed integers and factorials.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSet {
    /// `A†_w = T_η`, which is multiplication by `θ`.
    pub creation: OperatorBH,
    /// `A_w = T_η̄`, the weighted shift `θ^a ↦ (w_a / w_{a-1}) θ^{a-1}`.
    pub annihilation: OperatorBH,
    /// `N_w = A†_w A_w`, diagonal with entries `[a]_w`.
    pub number: OperatorBH,
    /// `[a]_w = w_a / w_{a-1}`, `[0]_w = 0`.
    pub deformed_ints: Vec<f64>,
    /// `[a]_w! = Π_{k=1..a} [k]_w`, `[0]_w! = 1`.
    pub deformed_factorials: Vec<f64>,
}

impl LadderSet {
    /// Eigenvalues of the number operator, read off its diagonal.
    pub fn number_spectrum(&self) -> Vec<f64> {
        (0..self.number.l()).map(|a| self.number.matrix()[(a, a)].re).collect()
    }
}

pub fn ladder_set(w: &WeightSeq, ctx: &AlgebraCtx) -> LadderSet {
    let l = ctx.l();
    let creation = toeplitz(&PGElement::theta(l), w, ctx, ToeplitzMode::Closed);
    let annihilation = toeplitz(&PGElement::theta_bar(l), w, ctx, ToeplitzMode::Closed);
    let number = creation.compose(&annihilation);
    LadderSet {
        creation,
        annihilation,
        number,
        deformed_ints: (0..l).map(|a| w.deformed_integer(a)).collect(),
        deformed_factorials: (0..l).map(|a| w.deformed_factorial(a)).collect(),
    }
}

/// `(A_w)^j (A†_w)^i` for all `i, j`, indexed `i * l + j`.
pub fn anti_wick_operator_set(ladder: &LadderSet) -> Vec<OperatorBH> {
    let l = ladder.creation.l() as u32;
    (0..l)
        .flat_map(|i| (0..l).map(move |j| (i, j)))
        .map(|(i, j)| ladder.annihilation.pow(j).compose(&ladder.creation.pow(i)))
        .collect()
}

/// `(A†_w)^i (A_w)^j` for all `i, j`, indexed `i * l + j`.
pub fn wick_operator_set(ladder: &LadderSet) -> Vec<OperatorBH> {
    let l = ladder.creation.l() as u32;
    (0..l)
        .flat_map(|i| (0..l).map(move |j| (i, j)))
        .map(|(i, j)| ladder.creation.pow(i).compose(&ladder.annihilation.pow(j)))
        .collect()
}

/// Rank of the span of a set of operators, via their vectorizations.
pub fn operator_set_rank(ops: &[OperatorBH]) -> usize {
    let columns: Vec<Vec<Complex64>> = ops.iter().map(|op| vectorize(op.matrix())).collect();
    numerical_rank(&columns_matrix(&columns))
}
