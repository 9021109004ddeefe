mod common;

use common::*;
use lcsk_core::poly::{Affine, Monomial, SPoly, Var};
use proptest::prelude::*;

const ALL: &[Var] = &[Var::D, Var::Lambda, Var::Mu, Var::Gamma];

fn poly() -> impl Strategy<Value = SPoly> {
    poly_in(ALL, 2, 4)
}

fn affine() -> impl Strategy<Value = Affine> {
    (small_rat(), prop::collection::vec(-2i64..=2, 4)).prop_map(|(c, ks)| {
        let mut a = Affine::constant(c);
        for (v, k) in ALL.iter().zip(ks) {
            a = a + Affine::sum(&[(*v, k)]);
        }
        a
    })
}

proptest! {
    #[test]
    fn ring_laws(p in poly(), r in poly(), s in poly()) {
        prop_assert_eq!(&p + &r, &r + &p);
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &SPoly::one(), p.clone());
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in poly(), r in poly(), e in affine(), vi in 0usize..4) {
        let v = ALL[vi];
        prop_assert_eq!((&p * &r).substitute(v, &e), &p.substitute(v, &e) * &r.substitute(v, &e));
        prop_assert_eq!((&p + &r).substitute(v, &e), &p.substitute(v, &e) + &r.substitute(v, &e));
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(p in poly(), vi in 0usize..4) {
        let v = ALL[vi];
        prop_assert_eq!(p.substitute(v, &Affine::var(v)), p);
    }

    #[test]
    fn monomial_coefficients_recombine(p in poly()) {
        let parts = p.monomial_coeffs(&[Var::Lambda, Var::Mu]);
        let mut back = SPoly::zero();
        for (m, c) in &parts {
            prop_assert!(!c.mentions(Var::Lambda) && !c.mentions(Var::Mu));
            back += &(&SPoly::term(q(1, 1), *m) * c);
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn rendering_is_stable(p in poly()) {
        prop_assert_eq!(p.to_string(), p.clone().to_string());
        if p.is_zero() {
            prop_assert_eq!(p.to_string(), "0");
        }
    }
}

#[test]
fn monomial_degree_is_additive() {
    let a = Monomial::var_pow(Var::D, 2);
    let b = Monomial::var_pow(Var::Lambda, 3);
    assert_eq!(a.mul(&b).degree(), 5);
}
