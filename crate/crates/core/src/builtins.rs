//! Standard algebras used as test beds.

use crate::algebra::LcsAlgebra;
use crate::element::{ConformalElement, Parity};
use crate::poly::{int, rat, Rat, SPoly, Var};

fn d_plus(c: Rat) -> SPoly {
    &SPoly::var(Var::D) + &SPoly::var(Var::Lambda).scale(&c)
}

/// Virasoro conformal algebra: `[L_λ L] = (∂+2λ)L`.
pub fn virasoro() -> LcsAlgebra {
    virasoro_with(d_plus(int(2)))
}

/// Rank-one even algebra with `[L_λ L] = p·L`. Only `p = ∂+2λ` (up to a
/// scalar) gives a Lie conformal algebra; other choices are useful as
/// deliberately broken inputs.
pub fn virasoro_with(p: SPoly) -> LcsAlgebra {
    LcsAlgebra::new(
        "virasoro",
        vec!["L".into()],
        vec![Parity::Even],
        vec![vec![ConformalElement::from_coeffs(vec![p])]],
    )
    .expect("rank-one even table is parity-consistent")
}

/// Neveu–Schwarz conformal superalgebra on `L` (even) and `G` (odd):
/// `[L_λ L] = (∂+2λ)L`, `[L_λ G] = (∂+3/2λ)G`, `[G_λ L] = (1/2∂+3/2λ)G`,
/// `[G_λ G] = 2L`.
pub fn neveu_schwarz() -> LcsAlgebra {
    let z = SPoly::zero();
    let g_l = &SPoly::var(Var::D).scale(&rat(1, 2)) + &SPoly::var(Var::Lambda).scale(&rat(3, 2));
    LcsAlgebra::new(
        "neveu-schwarz",
        vec!["L".into(), "G".into()],
        vec![Parity::Even, Parity::Odd],
        vec![
            vec![
                ConformalElement::from_coeffs(vec![d_plus(int(2)), z.clone()]),
                ConformalElement::from_coeffs(vec![z.clone(), d_plus(rat(3, 2))]),
            ],
            vec![
                ConformalElement::from_coeffs(vec![z.clone(), g_l]),
                ConformalElement::from_coeffs(vec![SPoly::from_int(2), z]),
            ],
        ],
    )
    .expect("Neveu-Schwarz table is parity-consistent")
}

/// Abelian algebra of the given rank on even generators `e1, e2, …`.
pub fn abelian(rank: usize) -> LcsAlgebra {
    LcsAlgebra::new(
        format!("abelian-{rank}"),
        (1..=rank).map(|i| format!("e{i}")).collect(),
        vec![Parity::Even; rank],
        vec![vec![ConformalElement::zero(rank); rank]; rank],
    )
    .expect("zero table is valid")
}

/// Current conformal algebra `Cur(g)` of a Lie superalgebra given by
/// structure constants `[gᵢ, gⱼ] = Σₖ consts[i][j][k]·gₖ`: the bracket is
/// `[a_λ b] = [a, b]`, with no ∂ or λ in the coefficients.
pub fn current_algebra(
    name: &str,
    generators: Vec<String>,
    parities: Vec<Parity>,
    consts: &[Vec<Vec<Rat>>],
) -> crate::error::Result<LcsAlgebra> {
    let n = generators.len();
    let structure = consts
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| ConformalElement::from_coeffs(v.iter().map(|c| SPoly::constant(c.clone())).collect()))
                .collect()
        })
        .collect::<Vec<Vec<_>>>();
    if structure.len() != n {
        return Err(crate::error::Error::InvalidStructure(format!(
            "expected {n} rows of structure constants"
        )));
    }
    LcsAlgebra::new(name, generators, parities, structure)
}

/// `Cur(sl₂)` on `e, h, f` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
pub fn cur_sl2() -> LcsAlgebra {
    let z = || vec![int(0), int(0), int(0)];
    let vec3 = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
    // order: e, h, f
    let consts = vec![
        vec![z(), vec3(-2, 0, 0), vec3(0, 1, 0)],
        vec![vec3(2, 0, 0), z(), vec3(0, 0, -2)],
        vec![vec3(0, -1, 0), vec3(0, 0, 2), z()],
    ];
    current_algebra(
        "cur-sl2",
        vec!["e".into(), "h".into(), "f".into()],
        vec![Parity::Even; 3],
        &consts,
    )
    .expect("sl2 constants are parity-consistent")
}
