mod common;

use common::*;
use lcsk_core::current::{lift_to_current, tensor_current, CommutativeAlgebra};
use lcsk_core::solvers::{
    commuting_defect, is_biderivation, solve_biderivations, solve_centroid, solve_centroid_with,
    solve_commuting, Bounds, CentroidSides,
};
use lcsk_core::{builtins, ConformalElement, Convention, LcsAlgebra, LinearConfMap};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn small_algebras() -> Vec<LcsAlgebra> {
    let t2 = CommutativeAlgebra::quotient_poly(2).unwrap();
    vec![
        builtins::virasoro(),
        builtins::neveu_schwarz(),
        builtins::cur_sl2(),
        builtins::abelian(1),
        tensor_current(&builtins::virasoro(), &t2),
    ]
}

#[test]
fn right_sided_centroid_is_two_sided() {
    for alg in small_algebras() {
        let b = Bounds::new(2, 0);
        let right = solve_centroid_with(&alg, b, Convention::PartialCommuting, CentroidSides::Right);
        let both = solve_centroid_with(&alg, b, Convention::PartialCommuting, CentroidSides::Both);
        assert_eq!(right, both, "{}", alg.name());
    }
}

#[test]
fn centroid_induced_maps_are_biderivations() {
    for alg in small_algebras() {
        let cent = solve_centroid(&alg, 2);
        let bider = solve_biderivations(&alg, Bounds::new(3, 3));
        for a in cent.maps() {
            let phi = a.compose_bracket(&alg).unwrap();
            assert!(is_biderivation(&alg, &phi), "{}", alg.name());
            assert!(bider.express(&phi).is_some(), "{}", alg.name());
        }
    }
}

#[test]
fn solver_outputs_are_biderivations() {
    for alg in small_algebras() {
        let bider = solve_biderivations(&alg, Bounds::new(2, 2));
        assert!(bider.second_leibniz_violations.is_empty());
        for phi in bider.maps() {
            assert!(is_biderivation(&alg, phi), "{}", alg.name());
        }
    }
}

#[test]
fn dimensions_grow_with_the_bounds() {
    for alg in [builtins::virasoro(), builtins::neveu_schwarz(), builtins::abelian(1)] {
        let mut last: Option<(usize, usize, usize)> = None;
        let mut prev_bider = None;
        for k in 1..=4 {
            let b = Bounds::new(k, k);
            let c = solve_centroid(&alg, k).dimension();
            let bider = solve_biderivations(&alg, b);
            let m = solve_commuting(&alg, b, Convention::PartialCommuting).dimension();
            if let Some((c0, b0, m0)) = last {
                assert!(c >= c0 && bider.dimension() >= b0 && m >= m0, "{} at {k}", alg.name());
            }
            if let Some(prev) = &prev_bider {
                let prev: &lcsk_core::solvers::BiderivationSolution = prev;
                for phi in prev.maps() {
                    assert!(bider.express(phi).is_some(), "{} at {k}", alg.name());
                }
            }
            last = Some((c, bider.dimension(), m));
            prev_bider = Some(bider);
        }
    }
}

#[test]
fn lifted_centroid_maps_stay_in_the_centroid() {
    for l in [builtins::virasoro(), builtins::cur_sl2()] {
        for a in [CommutativeAlgebra::quotient_poly(2).unwrap(), CommutativeAlgebra::split(2).unwrap()] {
            let la = tensor_current(&l, &a);
            let cent_la = solve_centroid(&la, 1);
            for alpha in solve_centroid(&l, 1).maps() {
                for t in 0..a.dim() {
                    let lifted = lift_to_current(&l, &a, alpha, &a.basis(t)).unwrap();
                    assert!(cent_la.express(&lifted).is_some(), "{} {}", la.name(), t);
                }
            }
        }
    }
}

#[test]
fn shifted_convention_loses_the_identity() {
    let vir = builtins::virasoro();
    let shifted = solve_centroid_with(&vir, Bounds::new(3, 3), Convention::LambdaShifted, CentroidSides::Both);
    let id = LinearConfMap::identity(&vir, Convention::LambdaShifted);
    assert!(shifted.express(&id).is_none());
}

proptest! {
    #![proptest_config(Config::with_cases(100))]

    #[test]
    fn commuting_maps_kill_random_elements(u in d_element(2)) {
        for alg in [builtins::abelian(2), builtins::virasoro(), builtins::neveu_schwarz()] {
            let n = alg.rank();
            let u = ConformalElement::from_coeffs(u.coeffs()[..n].to_vec());
            for psi in &solve_commuting(&alg, Bounds::new(2, 2), Convention::PartialCommuting).maps {
                prop_assert!(commuting_defect(&alg, psi, &u).is_zero());
            }
        }
    }
}
