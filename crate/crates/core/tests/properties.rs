//! Property tests for algebra, form and parser invariants.

mod common;

use common::ctx;
use paragrassmann::forms::{adjoint_wrt_form, form, FormMode, GramMatrix};
use paragrassmann::{symbol, Complex64, FreeExpr, OperatorPG, PGElement, WeightSeq};
use proptest::collection::vec;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn element(l: usize) -> impl Strategy<Value = PGElement> {
    vec(complex(), l * l).prop_map(move |c| PGElement::from_coeffs(l, c).unwrap())
}

fn real_q() -> impl Strategy<Value = Complex64> {
    prop_oneof![-3.0f64..-0.2, 0.2f64..3.0].prop_map(|x| Complex64::new(x, 0.0))
}

fn any_q() -> impl Strategy<Value = Complex64> {
    (0.3f64..2.5, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn weights(l: usize) -> impl Strategy<Value = WeightSeq> {
    vec(0.2f64..5.0, l).prop_map(|w| WeightSeq::new(w).unwrap())
}

fn triple() -> impl Strategy<Value = (usize, PGElement, PGElement, PGElement)> {
    (2usize..=5).prop_flat_map(|l| (Just(l), element(l), element(l), element(l)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative((l, f, g, h) in triple(), q in any_q()) {
        let ctx = ctx(l, q);
        let left = ctx.multiply(&ctx.multiply(&f, &g), &h);
        let right = ctx.multiply(&f, &ctx.multiply(&g, &h));
        prop_assert!(left.max_abs_diff(&right) <= 1e-9 * left.max_abs().max(1.0));
    }

    #[test]
    fn conjugation_and_z_map_are_involutions((_, f, _, _) in triple()) {
        prop_assert_eq!(f.conjugate().conjugate(), f.clone());
        prop_assert_eq!(f.z_map().z_map(), f.clone());
    }

    #[test]
    fn star_rule_for_real_q((l, f, g, _) in triple(), q in real_q()) {
        let ctx = ctx(l, q);
        let lhs = ctx.multiply(&f, &g).conjugate();
        let rhs = ctx.multiply(&g.conjugate(), &f.conjugate());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn holomorphic_conjugation_rule(l in 2usize..=6, a in vec(complex(), 6), b in vec(complex(), 6), q in any_q()) {
        let ctx = ctx(l, q);
        let f = PGElement::holomorphic(l, &a);
        let g = PGElement::holomorphic(l, &b);
        let lhs = ctx.multiply(&f, &g).conjugate();
        let rhs = ctx.multiply(&f.conjugate(), &g.conjugate());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn evaluation_is_linear(l in 2usize..=4, q in any_q(), alpha in complex(), beta in complex()) {
        let ctx = ctx(l, q);
        let e1 = (FreeExpr::theta() + FreeExpr::Q * FreeExpr::theta_bar()).pow(3);
        let e2 = FreeExpr::theta_bar() * FreeExpr::theta() - FreeExpr::constant(0.5, -1.0);
        let combined = FreeExpr::Const(alpha) * e1.clone() + FreeExpr::Const(beta) * e2.clone();
        let lhs = ctx.evaluate(&combined);
        let rhs = ctx.evaluate(&e1) * alpha + ctx.evaluate(&e2) * beta;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn form_modes_agree(
        (l, f, g, w) in (2usize..=5).prop_flat_map(|l| (Just(l), element(l), element(l), weights(l)))
    ) {
        let closed = form(&f, &g, &w, FormMode::Closed);
        let definitional = form(&f, &g, &w, FormMode::Definitional);
        let dense = GramMatrix::new(&w).form(&f, &g);
        prop_assert!((closed - definitional).norm() < 1e-12, "l={l}");
        prop_assert!((closed - dense).norm() < 1e-12);
        // Conjugate symmetry, since the Gram matrix is real symmetric.
        prop_assert!((closed - form(&g, &f, &w, FormMode::Closed).conj()).norm() < 1e-12);
    }

    #[test]
    fn adjoint_defining_property(
        (l, m, w) in (2usize..=4).prop_flat_map(|l| (Just(l), vec(complex(), l.pow(4)), weights(l))),
        pairs in vec((vec(complex(), 16), vec(complex(), 16)), 5)
    ) {
        let n = l * l;
        let a = OperatorPG::from_matrix(nalgebra_matrix(n, &m));
        let gram = GramMatrix::new(&w);
        let adj = gram.adjoint(&a);
        for (fc, gc) in &pairs {
            let f = PGElement::from_coeffs(l, fc[..n].to_vec()).unwrap();
            let g = PGElement::from_coeffs(l, gc[..n].to_vec()).unwrap();
            let lhs = form(&a.apply(&f), &g, &w, FormMode::Closed);
            let rhs = form(&f, &adj.apply(&g), &w, FormMode::Closed);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
        }
        let back = gram.adjoint(&adj);
        let diff = back.matrix().iter().zip(a.matrix().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-9);
        let _ = adjoint_wrt_form(&a, &w);
    }

    #[test]
    fn format_parse_round_trip((l, f, _, _) in triple(), q in any_q()) {
        let text = symbol::format(&f);
        let parsed = symbol::parse(&text).unwrap();
        let back = ctx(l, q).evaluate(&parsed);
        prop_assert!(back.approx_eq(&f), "{text}");
    }

    #[test]
    fn parse_is_deterministic(s in "[thbq0-9i+*^() -]{0,24}") {
        prop_assert_eq!(symbol::parse(&s), symbol::parse(&s));
        if let Err(e) = symbol::parse(&s) {
            prop_assert!(e.position <= s.len());
        }
    }
}

fn nalgebra_matrix(n: usize, entries: &[Complex64]) -> paragrassmann::linalg::Matrix {
    paragrassmann::linalg::Matrix::from_fn(n, n, |r, c| entries[r * n + c])
}
