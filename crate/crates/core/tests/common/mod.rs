#![allow(dead_code)]

use paragrassmann::{AlgebraCtx, Complex64, FreeExpr, Generator, PGElement, WeightSeq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reduces a word by repeatedly rewriting the leftmost `θ̄ θ` into
/// `q^{-1} θ θ̄`, then applying nilpotency. Shares no code with
/// `AlgebraCtx::normal_order`.
pub fn rewrite_word(word: &[Generator], l: usize, q: Complex64) -> PGElement {
    let mut w = word.to_vec();
    let mut coeff = Complex64::new(1.0, 0.0);
    while let Some(pos) = w
        .windows(2)
        .position(|p| p == [Generator::ThetaBar, Generator::Theta])
    {
        w.swap(pos, pos + 1);
        coeff /= q;
    }
    let a = w.iter().filter(|g| **g == Generator::Theta).count();
    let b = w.len() - a;
    let mut out = PGElement::zero(l);
    if a < l && b < l {
        out.set_coeff(a, b, coeff);
    }
    out
}

/// Evaluates an expression by full expansion into words and brute-force
/// rewriting of each word.
pub fn evaluate_by_rewriting(e: &FreeExpr, l: usize, q: Complex64) -> PGElement {
    e.expand()
        .into_iter()
        .fold(PGElement::zero(l), |acc, (c, qdeg, word)| {
            acc + rewrite_word(&word, l, q) * (c * q.powu(qdeg))
        })
}

pub fn all_words(max_len: usize) -> Vec<Vec<Generator>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in [Generator::Theta, Generator::ThetaBar] {
                let mut v: Vec<Generator> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_element(l: usize, rng: &mut impl Rng) -> PGElement {
    PGElement::from_coeffs(l, (0..l * l).map(|_| random_complex(rng)).collect()).unwrap()
}

pub fn random_holomorphic(l: usize, rng: &mut impl Rng) -> PGElement {
    let c: Vec<Complex64> = (0..l).map(|_| random_complex(rng)).collect();
    PGElement::holomorphic(l, &c)
}

pub fn qs() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::from_polar(1.0, std::f64::consts::PI / 3.0),
    ]
}

pub fn weight_choices(l: usize, rng: &mut impl Rng) -> Vec<WeightSeq> {
    vec![
        WeightSeq::ones(l).unwrap(),
        WeightSeq::factorial(l).unwrap(),
        WeightSeq::new((0..l).map(|_| rng.random_range(0.25..4.0)).collect()).unwrap(),
    ]
}

pub fn ctx(l: usize, q: Complex64) -> AlgebraCtx {
    AlgebraCtx::new(l, q).unwrap()
}
