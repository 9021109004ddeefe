mod common;

use common::*;
use lcsk_core::element::sign;
use lcsk_core::poly::{Affine, SPoly, Var};
use lcsk_core::{builtins, BilinearConfMap, ConformalElement, LcsAlgebra, Parity};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn builtins() -> Vec<LcsAlgebra> {
    vec![
        builtins::virasoro(),
        builtins::neveu_schwarz(),
        builtins::cur_sl2(),
        builtins::abelian(2),
    ]
}

fn lambda() -> SPoly {
    SPoly::var(Var::Lambda)
}

/// Keep only the components of `x` on generators of parity `p`.
fn homogeneous(alg: &LcsAlgebra, x: &ConformalElement, p: Parity) -> ConformalElement {
    ConformalElement::from_coeffs(
        (0..alg.rank())
            .map(|i| if alg.parity(i) == p { x.coeff(i).clone() } else { SPoly::zero() })
            .collect(),
    )
}

proptest! {
    #![proptest_config(Config::with_cases(128))]

    #[test]
    fn bracket_agrees_with_the_oracle(idx in 0usize..4, x in d_element(3), y in d_element(3)) {
        let alg = &builtins()[idx];
        let n = alg.rank();
        let x = ConformalElement::from_coeffs(x.coeffs()[..n].to_vec());
        let y = ConformalElement::from_coeffs(y.coeffs()[..n].to_vec());
        prop_assert_eq!(alg.bracket(&x, &y, Var::Lambda).unwrap(), oracle_bracket(alg, &x, &y));
    }

    #[test]
    fn bracket_is_sesquilinear(idx in 0usize..4, x in d_element(3), y in d_element(3)) {
        let alg = &builtins()[idx];
        let n = alg.rank();
        let x = ConformalElement::from_coeffs(x.coeffs()[..n].to_vec());
        let y = ConformalElement::from_coeffs(y.coeffs()[..n].to_vec());
        let base = alg.bracket(&x, &y, Var::Lambda).unwrap();
        prop_assert_eq!(alg.bracket(&x.partial(), &y, Var::Lambda).unwrap(), base.mul_poly(&-&lambda()));
        let d_plus_l = &SPoly::var(Var::D) + &lambda();
        prop_assert_eq!(alg.bracket(&x, &y.partial(), Var::Lambda).unwrap(), base.mul_poly(&d_plus_l));
    }

    #[test]
    fn bracket_is_skew_on_homogeneous_elements(
        idx in 0usize..4, x in d_element(3), y in d_element(3), px in any::<bool>(), py in any::<bool>()
    ) {
        let alg = &builtins()[idx];
        let n = alg.rank();
        let (px, py) = (Parity::from_bit(px as u8), Parity::from_bit(py as u8));
        let x = homogeneous(alg, &ConformalElement::from_coeffs(x.coeffs()[..n].to_vec()), px);
        let y = homogeneous(alg, &ConformalElement::from_coeffs(y.coeffs()[..n].to_vec()), py);
        let lhs = alg.bracket(&x, &y, Var::Lambda).unwrap();
        let flipped = Affine::sum(&[(Var::D, -1), (Var::Lambda, -1)]);
        let rhs = alg.bracket_at(&y, &x, &flipped).unwrap().scale_int(-sign(px, py));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bilinear_maps_follow_the_derivative_rules(
        entry in poly_in(&[Var::D, Var::Lambda], 2, 3), x in d_element(1), y in d_element(1)
    ) {
        let vir = builtins::virasoro();
        let phi = BilinearConfMap::new(&vir, vec![vec![ConformalElement::from_coeffs(vec![entry])]], Parity::Even).unwrap();
        let base = phi.apply(&x, &y, Var::Lambda).unwrap();
        prop_assert_eq!(phi.apply(&x.partial(), &y, Var::Lambda).unwrap(), base.mul_poly(&-&lambda()));
        let d_plus_l = &SPoly::var(Var::D) + &lambda();
        prop_assert_eq!(phi.apply(&x, &y.partial(), Var::Lambda).unwrap(), base.mul_poly(&d_plus_l));
    }

    #[test]
    fn bracket_map_evaluates_like_the_bracket(idx in 0usize..4, x in d_element(3), y in d_element(3)) {
        let alg = &builtins()[idx];
        let n = alg.rank();
        let x = ConformalElement::from_coeffs(x.coeffs()[..n].to_vec());
        let y = ConformalElement::from_coeffs(y.coeffs()[..n].to_vec());
        let phi = BilinearConfMap::bracket_map(alg);
        prop_assert_eq!(phi.apply(&x, &y, Var::Mu).unwrap(), alg.bracket(&x, &y, Var::Mu).unwrap());
    }
}

#[test]
fn oracle_matches_virasoro_examples() {
    let vir = builtins::virasoro();
    let l = vir.generator(0);
    let got = oracle_bracket(&vir, &l.partial(), &l);
    let want = ConformalElement::from_coeffs(vec![&(-&lambda()) * &(&SPoly::var(Var::D) + &lambda().scale(&q(2, 1)))]);
    assert_eq!(got, want);
}
