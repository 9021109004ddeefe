#![allow(dead_code)]

use lcsk_core::poly::{Monomial, Rat, SPoly, Var};
use lcsk_core::{ConformalElement, LcsAlgebra};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn d_pow(a: u16) -> SPoly {
    SPoly::term(Rat::one(), Monomial::var_pow(Var::D, a))
}

/// Random rational in a small range.
pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

/// Random polynomial in the given variables, up to `max_deg` per variable.
pub fn poly_in(vars: &'static [Var], max_deg: u16, max_terms: usize) -> impl Strategy<Value = SPoly> {
    prop::collection::vec(
        (small_rat(), prop::collection::vec(0..=max_deg, vars.len())),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut out = SPoly::zero();
        for (c, exps) in terms {
            let mut m = Monomial::one();
            for (v, e) in vars.iter().zip(exps) {
                m.0[v.index()] = e;
            }
            out += &SPoly::term(c, m);
        }
        out
    })
}

/// Random element `Σ pᵢ(∂)eᵢ` with `deg pᵢ ≤ 3`.
pub fn d_element(rank: usize) -> impl Strategy<Value = ConformalElement> {
    prop::collection::vec(poly_in(&[Var::D], 3, 3), rank).prop_map(ConformalElement::from_coeffs)
}

/// `(∂+λ)^b`, expanded by the binomial theorem.
fn d_plus_lambda_pow(b: u16) -> SPoly {
    let mut out = SPoly::zero();
    let mut binom = Rat::one();
    for k in 0..=b {
        let mut m = Monomial::var_pow(Var::D, b - k);
        m.0[Var::Lambda.index()] = k;
        out += &SPoly::term(binom.clone(), m);
        binom = binom * Rat::from_integer(((b - k) as i64).into()) / Rat::from_integer(((k + 1) as i64).into());
    }
    out
}

/// `(−λ)^a`.
fn minus_lambda_pow(a: u16) -> SPoly {
    let c = if a % 2 == 0 { Rat::one() } else { -Rat::one() };
    SPoly::term(c, Monomial::var_pow(Var::Lambda, a))
}

/// Independent evaluation of `[x_λ y]` for ∂-polynomial elements: expands
/// both sides into `∂ᵃeᵢ` terms and uses
/// `[∂ᵃeᵢ _λ ∂ᵇeⱼ] = (−λ)ᵃ(∂+λ)ᵇ[eᵢ_λ eⱼ]` term by term, without variable
/// substitution.
pub fn oracle_bracket(alg: &LcsAlgebra, x: &ConformalElement, y: &ConformalElement) -> ConformalElement {
    let n = alg.rank();
    let mut out = ConformalElement::zero(n);
    for i in 0..n {
        for (mx, cx) in x.coeff(i).terms() {
            assert_eq!(mx.degree(), mx.exp(Var::D) as u32, "oracle takes ∂-polynomial inputs");
            let a = mx.exp(Var::D);
            for j in 0..n {
                for (my, cy) in y.coeff(j).terms() {
                    let b = my.exp(Var::D);
                    let factor = (&minus_lambda_pow(a) * &d_plus_lambda_pow(b)).scale(&(cx * cy));
                    let entry = alg.structure_entry(i, j);
                    for k in entry.support() {
                        let mut coeffs = vec![SPoly::zero(); n];
                        coeffs[k] = &factor * entry.coeff(k);
                        out.add_assign(&ConformalElement::from_coeffs(coeffs));
                    }
                }
            }
        }
    }
    out
}

pub fn is_zero_rat(r: &Rat) -> bool {
    r.is_zero()
}
