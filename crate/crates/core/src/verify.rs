//! Structural checks that compare solver outputs against the identities
//! they are expected to satisfy.

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{LcsAlgebra, ModuleSpace};
use crate::current::{current_index, tensor_current, CommutativeAlgebra};
use crate::element::{sign, ConformalElement, Parity};
use crate::maps::{BilinearConfMap, Convention, LinearConfMap};
use crate::poly::{Affine, Var};
use crate::report::{Decomposition, VerifierReport};
use crate::solvers::{
    monomial_elements, solve_biderivations, solve_centroid_with, solve_commuting, Bounds, CentroidSides,
};
use crate::system::{express_in, span_rank};

fn sum(vars: &[(Var, i64)]) -> Affine {
    Affine::sum(vars)
}

fn center_gate(alg: &LcsAlgebra, name: &'static str, deg_d: usize) -> Option<VerifierReport> {
    let z = alg.center(deg_d);
    if z.dimension() > 0 {
        let w = &z.basis[0];
        return Some(VerifierReport::not_applicable(
            name,
            format!(
                "center has dimension {} at deg_d = {deg_d}, e.g. {}",
                z.dimension(),
                w.display(alg.generator_names())
            ),
        ));
    }
    None
}

/// `[φ_λ(x, y)_{λ+μ} [w_γ v]] = (−1)^{|φ|(|x|+|y|)} [[x_λ y]_{λ+μ} φ_γ(w, v)]`
/// on all generator 4-tuples.
pub fn verify_swap_identity(alg: &LcsAlgebra, phi: &BilinearConfMap) -> VerifierReport {
    let mut report = VerifierReport::new("swap-identity");
    if phi.rank() != alg.rank() {
        report.fail("map and algebra ranks differ");
        return report;
    }
    let n = alg.rank();
    let lam = Affine::var(Var::Lambda);
    let gam = Affine::var(Var::Gamma);
    let lam_mu = sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let names = alg.generator_names();
    let tuples: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).flat_map(move |w| (0..n).map(move |v| (x, y, w, v)))))
        .collect();
    let residuals: Vec<_> = tuples
        .par_iter()
        .map(|&(x, y, w, v)| {
            let (ex, ey, ew, ev) = (alg.generator(x), alg.generator(y), alg.generator(w), alg.generator(v));
            let lhs = alg.br(&phi.eval(&ex, &ey, &lam), &alg.br(&ew, &ev, &gam), &lam_mu);
            let rhs = alg
                .br(&alg.br(&ex, &ey, &lam), &phi.eval(&ew, &ev, &gam), &lam_mu)
                .scale_int(sign(phi.parity(), alg.parity(x).plus(alg.parity(y))));
            (x, y, w, v, &lhs - &rhs)
        })
        .collect();
    for (x, y, w, v, r) in residuals {
        report.push_residual(format!("({}, {}, {}, {})", names[x], names[y], names[w], names[v]), r);
    }
    report
}

/// Every (λ, μ)-coefficient of `[φ_λ(x, y₁)_{λ+μ} y₂] − φ_{λ+μ}([x_λ y₁], y₂)`
/// must lie in `center`, on all generator triples.
pub fn verify_centralizer_residual(
    alg: &LcsAlgebra,
    phi: &BilinearConfMap,
    center: &ModuleSpace,
) -> VerifierReport {
    let mut report = VerifierReport::new("centralizer-residual");
    if phi.rank() != alg.rank() {
        report.fail("map and algebra ranks differ");
        return report;
    }
    let n = alg.rank();
    let lam = Affine::var(Var::Lambda);
    let lam_mu = sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let names = alg.generator_names();
    for x in 0..n {
        for y1 in 0..n {
            let (ex, ey1) = (alg.generator(x), alg.generator(y1));
            let inner = phi.eval(&ex, &ey1, &lam);
            let bracket = alg.br(&ex, &ey1, &lam);
            for y2 in 0..n {
                let ey2 = alg.generator(y2);
                let r = &alg.br(&inner, &ey2, &lam_mu) - &phi.eval(&bracket, &ey2, &lam_mu);
                let outside = r
                    .monomial_coeffs(&[Var::Lambda, Var::Mu])
                    .values()
                    .any(|c| !center.contains(c));
                if outside {
                    report.push_residual(format!("({}, {}, {})", names[x], names[y1], names[y2]), r);
                }
            }
        }
    }
    report
}

/// Every biderivation is `α∘bracket` for a centroid element `α`, and these
/// maps account for the whole biderivation space at the bound. Requires a
/// trivial center and a perfect algebra.
pub fn verify_centroid_form(alg: &LcsAlgebra, bounds: Bounds) -> VerifierReport {
    const NAME: &str = "centroid-form";
    if let Some(r) = center_gate(alg, NAME, bounds.deg_d) {
        return r;
    }
    let perfect = alg.is_perfect(bounds.deg_d);
    if let Some(w) = perfect.witness {
        return VerifierReport::not_applicable(
            NAME,
            format!("not perfect: {} is outside the derived submodule", alg.generator_names()[w]),
        );
    }
    let mut report = VerifierReport::new(NAME);
    let cent = solve_centroid_with(alg, bounds, Convention::PartialCommuting, CentroidSides::Both);
    let bider = solve_biderivations(alg, bounds);
    for v in &bider.second_leibniz_violations {
        report.push_residual(format!("second Leibniz rule, {}", v.context), v.value.clone());
    }
    let mut induced_dim = 0;
    for parity in [Parity::Even, Parity::Odd] {
        let induced: Vec<_> = cent
            .of_parity(parity)
            .iter()
            .map(|a| a.compose_bracket(alg).expect("∂-commuting map of matching rank").coordinates())
            .collect();
        induced_dim += span_rank(&induced);
        for (b, phi) in bider.of_parity(parity).iter().enumerate() {
            let subject = format!("{} biderivation {b}", parity.name());
            match express_in(&induced, &phi.coordinates()) {
                Some(c) => report.decompositions.push(Decomposition {
                    subject,
                    coefficients: c
                        .into_iter()
                        .enumerate()
                        .map(|(r, x)| (format!("{} centroid {r} ∘ bracket", parity.name()), x))
                        .collect(),
                }),
                None => report.fail(format!("{subject} is not of the form α∘bracket")),
            }
        }
    }
    if induced_dim != bider.dimension() {
        report.fail(format!(
            "biderivation space has dimension {} but centroid-induced maps span {induced_dim}",
            bider.dimension()
        ));
    }
    report.notes.push(format!(
        "dim centroid = {}, dim biderivations = {}",
        cent.dimension(),
        bider.dimension()
    ));
    report
}

/// The map `(eᵢ⊗b_s, eⱼ⊗b_u) ↦ (−1)^{|α|(|i|+|j|)} α([eᵢ_λ eⱼ]) ⊗ b_t b_s b_u`.
fn current_term(l: &LcsAlgebra, a: &CommutativeAlgebra, rank: usize, alpha: &LinearConfMap, t: usize) -> BilinearConfMap {
    let n = l.rank();
    let m = a.dim();
    let mut tensor = vec![vec![ConformalElement::zero(rank); rank]; rank];
    for i in 0..n {
        for j in 0..n {
            let image = alpha.apply_unchecked(l.structure_entry(i, j));
            if image.is_zero() {
                continue;
            }
            let sg = sign(alpha.parity(), l.parity(i).plus(l.parity(j)));
            for s in 0..m {
                let ts = a.mul(&a.basis(t), &a.basis(s));
                for u in 0..m {
                    let prod = a.mul(&ts, &a.basis(u));
                    let mut coeffs = vec![crate::poly::SPoly::zero(); rank];
                    for k in image.support() {
                        for (w, c) in prod.iter().enumerate() {
                            if !c.is_zero() {
                                coeffs[current_index(a, k, w)] = image.coeff(k).scale(c).scale(&crate::poly::int(sg));
                            }
                        }
                    }
                    tensor[current_index(a, i, s)][current_index(a, j, u)] = ConformalElement::from_coeffs(coeffs);
                }
            }
        }
    }
    BilinearConfMap::from_parts(rank, alpha.parity(), tensor)
}

/// Every biderivation of `L ⊗ A` has the form
/// `φ(x⊗a, y⊗b) = (−1)^{|φ|(|x|+|y|)} Σₜ αₜ([x_λ y]) ⊗ bₜab` with `αₜ` in the
/// centroid of `L`. Requires a trivial center of `L`.
pub fn verify_current_decomposition(l: &LcsAlgebra, a: &CommutativeAlgebra, bounds: Bounds) -> VerifierReport {
    const NAME: &str = "current-decomposition";
    if let Some(r) = center_gate(l, NAME, bounds.deg_d) {
        return r;
    }
    let mut report = VerifierReport::new(NAME);
    let la = tensor_current(l, a);
    let cent = solve_centroid_with(l, bounds, Convention::PartialCommuting, CentroidSides::Both);
    let bider = solve_biderivations(&la, bounds);
    for v in &bider.second_leibniz_violations {
        report.push_residual(format!("second Leibniz rule, {}", v.context), v.value.clone());
    }
    for parity in [Parity::Even, Parity::Odd] {
        let alphas = cent.of_parity(parity);
        let mut labels = Vec::new();
        let mut terms = Vec::new();
        for t in 0..a.dim() {
            for (r, alpha) in alphas.iter().enumerate() {
                labels.push(format!("{} · {} centroid {r}", a.basis_names()[t], parity.name()));
                terms.push(current_term(l, a, la.rank(), alpha, t).coordinates());
            }
        }
        for (b, phi) in bider.of_parity(parity).iter().enumerate() {
            let subject = format!("{} biderivation {b} of {}", parity.name(), la.name());
            match express_in(&terms, &phi.coordinates()) {
                Some(c) => report.decompositions.push(Decomposition {
                    subject,
                    coefficients: labels.iter().cloned().zip(c).collect(),
                }),
                None => report.fail(format!("{subject} does not decompose over Cent({})", l.name())),
            }
        }
    }
    report.notes.push(format!("dim biderivations of {} = {}", la.name(), bider.dimension()));
    report
}

/// `[Ψ_λ(u)_{λ+μ} v] = (−1)^{|u|(|Ψ|+|v|)} [u_{−∂−λ−μ} Ψ_λ(v)]` for
/// `u, v ∈ {eᵢ, ∂eᵢ}`; a linear commuting map satisfies it.
pub fn verify_polarization(alg: &LcsAlgebra, psi: &LinearConfMap) -> VerifierReport {
    let mut report = VerifierReport::new("polarization");
    if psi.rank() != alg.rank() {
        report.fail("map and algebra ranks differ");
        return report;
    }
    if psi.parity() != Parity::Even {
        report.fail("map does not preserve parity");
        return report;
    }
    let lam_mu = sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let flipped = sum(&[(Var::D, -1), (Var::Lambda, -1), (Var::Mu, -1)]);
    let tests = monomial_elements(alg, 1);
    let names = alg.generator_names();
    let label = |idx: usize| {
        let (i, a) = (idx / 2, idx % 2);
        if a == 0 {
            names[i].clone()
        } else {
            format!("d {}", names[i])
        }
    };
    for (p, u) in tests.iter().enumerate() {
        let pu = alg.parity(p / 2);
        for (q, v) in tests.iter().enumerate() {
            let pv = alg.parity(q / 2);
            let lhs = alg.br(&psi.apply_unchecked(u), v, &lam_mu);
            let rhs = alg
                .br(u, &psi.apply_unchecked(v), &flipped)
                .scale_int(sign(pu, psi.parity().plus(pv)));
            report.push_residual(format!("({}, {})", label(p), label(q)), &lhs - &rhs);
        }
    }
    report
}

/// Every commuting map lies in the centroid. Requires a trivial center.
pub fn verify_commuting_in_centroid(alg: &LcsAlgebra, bounds: Bounds, convention: Convention) -> VerifierReport {
    const NAME: &str = "commuting-in-centroid";
    if let Some(r) = center_gate(alg, NAME, bounds.deg_d) {
        return r;
    }
    let mut report = VerifierReport::new(NAME);
    let comm = solve_commuting(alg, bounds, convention);
    let cent = solve_centroid_with(alg, bounds, convention, CentroidSides::Both);
    for (b, psi) in comm.maps.iter().enumerate() {
        let subject = format!("commuting map {b}");
        match cent.express(psi) {
            Some(c) => report.decompositions.push(Decomposition {
                subject,
                coefficients: c
                    .into_iter()
                    .enumerate()
                    .map(|(r, x)| (format!("even centroid {r}"), x))
                    .collect(),
            }),
            None => report.fail(format!("{subject} is outside the centroid")),
        }
    }
    report.notes.push(format!(
        "dim commuting maps = {}, dim centroid = {}",
        comm.dimension(),
        cent.dimension()
    ));
    report
}
