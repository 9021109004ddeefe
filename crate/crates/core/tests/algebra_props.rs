mod common;

use common::*;
use lcsk_core::current::{tensor_current, CommutativeAlgebra};
use lcsk_core::poly::{Rat, Var};
use lcsk_core::{builtins, ConformalElement, LcsAlgebra};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn coefficient_algebras() -> Vec<CommutativeAlgebra> {
    vec![
        CommutativeAlgebra::quotient_poly(1).unwrap(),
        CommutativeAlgebra::quotient_poly(2).unwrap(),
        CommutativeAlgebra::quotient_poly(3).unwrap(),
        CommutativeAlgebra::split(2).unwrap(),
    ]
}

fn all_builtins() -> Vec<LcsAlgebra> {
    vec![
        builtins::virasoro(),
        builtins::neveu_schwarz(),
        builtins::cur_sl2(),
        builtins::abelian(2),
    ]
}

#[test]
fn builtins_satisfy_the_axioms() {
    for alg in all_builtins() {
        assert!(alg.check_skew().passed(), "{}", alg.name());
        assert!(alg.check_jacobi().passed(), "{}", alg.name());
    }
}

#[test]
fn currents_of_builtins_satisfy_the_axioms() {
    for l in all_builtins() {
        for a in coefficient_algebras() {
            let la = tensor_current(&l, &a);
            assert_eq!(la.rank(), l.rank() * a.dim());
            assert!(la.check_skew().passed(), "{}", la.name());
            assert!(la.check_jacobi().passed(), "{}", la.name());
        }
    }
}

#[test]
fn corrupted_virasoro_fails() {
    let bad = builtins::virasoro_with(&SPoly::var(Var::D) + &SPoly::var(Var::Lambda).scale(&q(3, 1)));
    assert!(!bad.check_jacobi().passed());
}

use lcsk_core::SPoly;

proptest! {
    #![proptest_config(Config::with_cases(32))]

    #[test]
    fn mult_operator_is_multiplicative(
        n in 1usize..4,
        a in prop::collection::vec(small_rat(), 3),
        b in prop::collection::vec(small_rat(), 3),
    ) {
        let alg = CommutativeAlgebra::quotient_poly(n).unwrap();
        let a: Vec<Rat> = a[..n].to_vec();
        let b: Vec<Rat> = b[..n].to_vec();
        let ab = alg.mul(&a, &b);
        let lhs = alg.mult_operator(&ab).unwrap();
        let rhs = alg.mult_operator(&a).unwrap().mul(&alg.mult_operator(&b).unwrap());
        prop_assert_eq!(lhs.to_dense(), rhs.to_dense());
        prop_assert_eq!(alg.decompose(&ab).unwrap(), ab);
    }

    #[test]
    fn center_lies_in_every_centralizer(idx in 0usize..4, targets in prop::collection::vec(d_element(3), 0..3)) {
        let alg = &all_builtins()[idx];
        let n = alg.rank();
        let targets: Vec<ConformalElement> = targets
            .iter()
            .map(|t| ConformalElement::from_coeffs(t.coeffs()[..n].to_vec()))
            .collect();
        let z = alg.center(2);
        let c = alg.centralizer(&targets, 2).unwrap();
        prop_assert!(c.space.contains(&z.space));
        for x in &c.basis {
            for t in &targets {
                prop_assert!(alg.bracket(x, t, Var::Lambda).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn centers_of_builtins() {
    assert_eq!(builtins::virasoro().center(3).dimension(), 0);
    assert_eq!(builtins::neveu_schwarz().center(3).dimension(), 0);
    assert_eq!(builtins::cur_sl2().center(3).dimension(), 0);
    assert_eq!(builtins::abelian(2).center(3).dimension(), 8);
}
