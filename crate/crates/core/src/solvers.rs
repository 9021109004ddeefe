//! Degree-bounded solvers for centroids, biderivations and commuting maps.
//!
//! Every solver writes the unknown map as a matrix (or tensor) of
//! polynomials with unknown rational coefficients, imposes the defining
//! identities on generators over formal spectral variables, and equates
//! the coefficient of every monomial to zero. Answers are complete only up
//! to the degree bounds recorded in the result.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::LcsAlgebra;
use crate::element::{sign, ConformalElement, Parity};
use crate::maps::{BilinearConfMap, Convention, LinearConfMap};
use crate::poly::{Affine, Monomial, Rat, SPoly, Var};
use crate::report::Residual;
use crate::system::{express_in, solve_homogeneous};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    /// Maximal ∂-degree of unknown coefficients.
    pub deg_d: usize,
    /// Maximal λ-degree of unknown coefficients.
    pub deg_l: usize,
}

impl Bounds {
    pub fn new(deg_d: usize, deg_l: usize) -> Self {
        Bounds { deg_d, deg_l }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { deg_d: 3, deg_l: 3 }
    }
}

fn monomials(deg_d: usize, deg_l: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=deg_d {
        for b in 0..=deg_l {
            let mut m = Monomial::var_pow(Var::D, a as u16);
            m.0[Var::Lambda.index()] = b as u16;
            out.push(m);
        }
    }
    out
}

/// Unknown coefficients of a linear map: (output k, input i, monomial),
/// ordered input-generator-major, then output generator, then monomial.
struct LinearLayout {
    rank: usize,
    parity: Parity,
    convention: Convention,
    entries: Vec<(usize, usize, Monomial)>,
}

impl LinearLayout {
    fn new(alg: &LcsAlgebra, parity: Parity, convention: Convention, bounds: Bounds) -> Self {
        let n = alg.rank();
        let deg_l = match convention {
            Convention::PartialCommuting => 0,
            Convention::LambdaShifted => bounds.deg_l,
        };
        let monos = monomials(bounds.deg_d, deg_l);
        let mut entries = Vec::new();
        for i in 0..n {
            for k in 0..n {
                if alg.parity(k) == alg.parity(i).plus(parity) {
                    entries.extend(monos.iter().map(|m| (k, i, *m)));
                }
            }
        }
        LinearLayout {
            rank: n,
            parity,
            convention,
            entries,
        }
    }

    fn map(&self, coeffs: &[Rat]) -> LinearConfMap {
        let mut matrix = vec![vec![SPoly::zero(); self.rank]; self.rank];
        for ((k, i, m), c) in self.entries.iter().zip(coeffs) {
            matrix[*k][*i] += &SPoly::term(c.clone(), *m);
        }
        LinearConfMap::from_parts(self.rank, self.parity, self.convention, matrix)
    }

    fn unit(&self, u: usize) -> LinearConfMap {
        let (k, i, m) = self.entries[u];
        let mut matrix = vec![vec![SPoly::zero(); self.rank]; self.rank];
        matrix[k][i] = SPoly::term(Rat::one(), m);
        LinearConfMap::from_parts(self.rank, self.parity, self.convention, matrix)
    }
}

/// Unknown coefficients of a bilinear map: (i, j, k, monomial).
struct BilinearLayout {
    rank: usize,
    parity: Parity,
    entries: Vec<(usize, usize, usize, Monomial)>,
}

impl BilinearLayout {
    fn new(alg: &LcsAlgebra, parity: Parity, bounds: Bounds) -> Self {
        let n = alg.rank();
        let monos = monomials(bounds.deg_d, bounds.deg_l);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if alg.parity(k) == alg.parity(i).plus(alg.parity(j)).plus(parity) {
                        entries.extend(monos.iter().map(|m| (i, j, k, *m)));
                    }
                }
            }
        }
        BilinearLayout {
            rank: n,
            parity,
            entries,
        }
    }

    fn map(&self, coeffs: &[Rat]) -> BilinearConfMap {
        let n = self.rank;
        let mut tensor: Vec<Vec<Vec<SPoly>>> = vec![vec![vec![SPoly::zero(); n]; n]; n];
        for ((i, j, k, m), c) in self.entries.iter().zip(coeffs) {
            tensor[*i][*j][*k] += &SPoly::term(c.clone(), *m);
        }
        BilinearConfMap::from_parts(
            n,
            self.parity,
            tensor
                .into_iter()
                .map(|row| row.into_iter().map(ConformalElement::from_coeffs).collect())
                .collect(),
        )
    }

    fn unit(&self, u: usize) -> BilinearConfMap {
        let mut coeffs = vec![Rat::from_integer(0.into()); self.entries.len()];
        coeffs[u] = Rat::one();
        self.map(&coeffs)
    }
}

/// Which centroid identities to impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentroidSides {
    /// `α([x_μ y]) = (−1)^{|x||α|}[x_μ α(y)]` and `α([x_μ y]) = [α(x)_μ y]`.
    Both,
    /// Only the first identity.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidSolution {
    pub bounds: Bounds,
    pub convention: Convention,
    pub even: Vec<LinearConfMap>,
    pub odd: Vec<LinearConfMap>,
}

impl CentroidSolution {
    pub fn dimension(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn maps(&self) -> impl Iterator<Item = &LinearConfMap> {
        self.even.iter().chain(self.odd.iter())
    }

    pub fn of_parity(&self, p: Parity) -> &[LinearConfMap] {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Coordinates of `m` in the basis of its parity, if it lies in the span.
    pub fn express(&self, m: &LinearConfMap) -> Option<Vec<Rat>> {
        let basis: Vec<_> = self.of_parity(m.parity()).iter().map(|b| b.coordinates()).collect();
        express_in(&basis, &m.coordinates())
    }
}

/// Residuals of the centroid identities for a single map.
pub(crate) fn centroid_residuals(
    alg: &LcsAlgebra,
    alpha: &LinearConfMap,
    sides: CentroidSides,
) -> Vec<(usize, ConformalElement)> {
    let n = alg.rank();
    let mu = Affine::var(Var::Mu);
    let mut out = Vec::new();
    for i in 0..n {
        let ei = alg.generator(i);
        let alpha_ei = alpha.apply_unchecked(&ei);
        for j in 0..n {
            let ej = alg.generator(j);
            let bracket = alg.br(&ei, &ej, &mu);
            let lhs = alpha.apply_unchecked(&bracket);
            let alpha_ej = alpha.apply_unchecked(&ej);
            let right = alg
                .br(&ei, &alpha_ej, &mu)
                .scale_int(sign(alg.parity(i), alpha.parity()));
            let idx = 2 * (i * n + j);
            out.push((idx, &lhs - &right));
            if sides == CentroidSides::Both {
                let left = alg.br(&alpha_ei, &ej, &mu);
                out.push((idx + 1, &lhs - &left));
            }
        }
    }
    out
}

/// Degree-bounded centroid under the default ∂-commuting convention.
pub fn solve_centroid(alg: &LcsAlgebra, deg_d: usize) -> CentroidSolution {
    solve_centroid_with(
        alg,
        Bounds::new(deg_d, 0),
        Convention::PartialCommuting,
        CentroidSides::Both,
    )
}

pub fn solve_centroid_with(
    alg: &LcsAlgebra,
    bounds: Bounds,
    convention: Convention,
    sides: CentroidSides,
) -> CentroidSolution {
    let solve = |parity| {
        let layout = LinearLayout::new(alg, parity, convention, bounds);
        let space = solve_homogeneous(layout.entries.len(), |u| {
            centroid_residuals(alg, &layout.unit(u), sides)
        });
        space.basis().iter().map(|v| layout.map(v)).collect::<Vec<_>>()
    };
    CentroidSolution {
        bounds,
        convention,
        even: solve(Parity::Even),
        odd: solve(Parity::Odd),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiderivationSolution {
    pub bounds: Bounds,
    pub even: Vec<BilinearConfMap>,
    pub odd: Vec<BilinearConfMap>,
    /// Violations of the second Leibniz rule among the basis maps; this
    /// rule is checked, not imposed.
    pub second_leibniz_violations: Vec<Residual>,
}

impl BiderivationSolution {
    pub fn dimension(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn maps(&self) -> impl Iterator<Item = &BilinearConfMap> {
        self.even.iter().chain(self.odd.iter())
    }

    pub fn of_parity(&self, p: Parity) -> &[BilinearConfMap] {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn express(&self, m: &BilinearConfMap) -> Option<Vec<Rat>> {
        let basis: Vec<_> = self.of_parity(m.parity()).iter().map(|b| b.coordinates()).collect();
        express_in(&basis, &m.coordinates())
    }
}

/// Skew residual `φ_λ(eᵢ, eⱼ) + (−1)^{|i||j|}φ_{−∂−λ}(eⱼ, eᵢ)`.
pub(crate) fn bider_skew_residual(alg: &LcsAlgebra, phi: &BilinearConfMap, i: usize, j: usize) -> ConformalElement {
    let lam = Affine::var(Var::Lambda);
    let flipped = Affine::sum(&[(Var::D, -1), (Var::Lambda, -1)]);
    let (ei, ej) = (alg.generator(i), alg.generator(j));
    let lhs = phi.eval(&ei, &ej, &lam);
    let rhs = phi.eval(&ej, &ei, &flipped).scale_int(sign(alg.parity(i), alg.parity(j)));
    &lhs + &rhs
}

/// First Leibniz residual
/// `φ_λ(eᵢ, [eⱼ_μ eₖ]) − [φ_λ(eᵢ, eⱼ)_{λ+μ} eₖ] − (−1)^{|i||j|}[eⱼ_μ φ_λ(eᵢ, eₖ)]`.
pub(crate) fn bider_leibniz_residual(
    alg: &LcsAlgebra,
    phi: &BilinearConfMap,
    i: usize,
    j: usize,
    k: usize,
) -> ConformalElement {
    let lam = Affine::var(Var::Lambda);
    let mu = Affine::var(Var::Mu);
    let lam_mu = Affine::sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let (ei, ej, ek) = (alg.generator(i), alg.generator(j), alg.generator(k));
    let lhs = phi.eval(&ei, &alg.br(&ej, &ek, &mu), &lam);
    let first = alg.br(&phi.eval(&ei, &ej, &lam), &ek, &lam_mu);
    let second = alg
        .br(&ej, &phi.eval(&ei, &ek, &lam), &mu)
        .scale_int(sign(alg.parity(i), alg.parity(j)));
    &(&lhs - &first) - &second
}

/// Second Leibniz residual
/// `φ_{λ+μ}([eᵢ_μ eⱼ], eₖ) − [eᵢ_μ φ_λ(eⱼ, eₖ)] + (−1)^{|i||j|}[eⱼ_λ φ_μ(eᵢ, eₖ)]`.
pub(crate) fn bider_second_leibniz_residual(
    alg: &LcsAlgebra,
    phi: &BilinearConfMap,
    i: usize,
    j: usize,
    k: usize,
) -> ConformalElement {
    let lam = Affine::var(Var::Lambda);
    let mu = Affine::var(Var::Mu);
    let lam_mu = Affine::sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let (ei, ej, ek) = (alg.generator(i), alg.generator(j), alg.generator(k));
    let lhs = phi.eval(&alg.br(&ei, &ej, &mu), &ek, &lam_mu);
    let first = alg.br(&ei, &phi.eval(&ej, &ek, &lam), &mu);
    let second = alg
        .br(&ej, &phi.eval(&ei, &ek, &mu), &lam)
        .scale_int(sign(alg.parity(i), alg.parity(j)));
    &(&lhs - &first) + &second
}

/// All skew and first-Leibniz residuals of `φ`, or only those that can be
/// nonzero when `φ` is supported on first argument `only_first`.
fn bider_residuals(
    alg: &LcsAlgebra,
    phi: &BilinearConfMap,
    support: Option<(usize, usize)>,
) -> Vec<(usize, ConformalElement)> {
    let n = alg.rank();
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = match support {
        Some((i, j)) if i == j => vec![(i, j)],
        Some((i, j)) => vec![(i, j), (j, i)],
        None => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
    };
    for (i, j) in pairs {
        out.push((i * n + j, bider_skew_residual(alg, phi, i, j)));
    }
    let firsts: Vec<usize> = match support {
        Some((i, _)) => vec![i],
        None => (0..n).collect(),
    };
    for i in firsts {
        for j in 0..n {
            for k in 0..n {
                out.push((n * n + (i * n + j) * n + k, bider_leibniz_residual(alg, phi, i, j, k)));
            }
        }
    }
    out
}

/// Degree-bounded skew-symmetric super-biderivations. Skew-symmetry and the
/// first Leibniz rule are imposed; the second Leibniz rule is verified on
/// each basis element and any failure recorded.
pub fn solve_biderivations(alg: &LcsAlgebra, bounds: Bounds) -> BiderivationSolution {
    let n = alg.rank();
    let solve = |parity| {
        let layout = BilinearLayout::new(alg, parity, bounds);
        let space = solve_homogeneous(layout.entries.len(), |u| {
            let (i, j, _, _) = layout.entries[u];
            bider_residuals(alg, &layout.unit(u), Some((i, j)))
        });
        space.basis().iter().map(|v| layout.map(v)).collect::<Vec<_>>()
    };
    let even = solve(Parity::Even);
    let odd = solve(Parity::Odd);
    let mut violations = Vec::new();
    for (idx, phi) in even.iter().chain(odd.iter()).enumerate() {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = bider_second_leibniz_residual(alg, phi, i, j, k);
                    if !r.is_zero() {
                        violations.push(Residual {
                            context: format!(
                                "basis map {idx} at ({}, {}, {})",
                                alg.generator_names()[i],
                                alg.generator_names()[j],
                                alg.generator_names()[k]
                            ),
                            value: r,
                        });
                    }
                }
            }
        }
    }
    BiderivationSolution {
        bounds,
        even,
        odd,
        second_leibniz_violations: violations,
    }
}

/// Whether `φ` satisfies skew-symmetry and both Leibniz rules on generators.
pub fn is_biderivation(alg: &LcsAlgebra, phi: &BilinearConfMap) -> bool {
    let n = alg.rank();
    bider_residuals(alg, phi, None).iter().all(|(_, r)| r.is_zero())
        && (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| bider_second_leibniz_residual(alg, phi, i, j, k).is_zero()))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingSolution {
    pub bounds: Bounds,
    pub convention: Convention,
    pub maps: Vec<LinearConfMap>,
}

impl CommutingSolution {
    pub fn dimension(&self) -> usize {
        self.maps.len()
    }
}

/// `B(u, v) = [Ψ_λ(u)_{λ+μ} v] + [Ψ_λ(v)_{λ+μ} u]`, whose vanishing for all
/// `u, v` is equivalent (in characteristic zero) to `[Ψ_λ(u)_{λ+μ} u] = 0`.
pub(crate) fn polarized(alg: &LcsAlgebra, psi: &LinearConfMap, u: &ConformalElement, v: &ConformalElement) -> ConformalElement {
    let lam_mu = Affine::sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    let a = alg.br(&psi.apply_unchecked(u), v, &lam_mu);
    let b = alg.br(&psi.apply_unchecked(v), u, &lam_mu);
    &a + &b
}

/// Test elements `∂ᵃeᵢ` for `a ≤ deg`.
pub(crate) fn monomial_elements(alg: &LcsAlgebra, deg: usize) -> Vec<ConformalElement> {
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        for a in 0..=deg {
            out.push(ConformalElement::single(
                alg.rank(),
                i,
                SPoly::term(Rat::one(), Monomial::var_pow(Var::D, a as u16)),
            ));
        }
    }
    out
}

/// Degree-bounded parity-preserving super-commuting maps: imposes the
/// polarized identity on all pairs `∂ᵃeᵢ, ∂ᵇeⱼ` with `a, b ≤ deg_d`.
pub fn solve_commuting(alg: &LcsAlgebra, bounds: Bounds, convention: Convention) -> CommutingSolution {
    let layout = LinearLayout::new(alg, Parity::Even, convention, bounds);
    let tests = monomial_elements(alg, bounds.deg_d);
    let space = solve_homogeneous(layout.entries.len(), |u| {
        let psi = layout.unit(u);
        let mut out = Vec::new();
        let mut idx = 0;
        for (p, x) in tests.iter().enumerate() {
            for y in &tests[p..] {
                out.push((idx, polarized(alg, &psi, x, y)));
                idx += 1;
            }
        }
        out
    });
    CommutingSolution {
        bounds,
        convention,
        maps: space.basis().iter().map(|v| layout.map(v)).collect(),
    }
}

/// `[Ψ_λ(u)_{λ+μ} u]`, for spot checks of the unpolarized condition.
pub fn commuting_defect(alg: &LcsAlgebra, psi: &LinearConfMap, u: &ConformalElement) -> ConformalElement {
    let lam_mu = Affine::sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
    alg.br(&psi.apply_unchecked(u), u, &lam_mu)
}

/// Keyed coordinates of a family of bilinear maps, for span tests.
pub fn bilinear_coordinates(maps: &[BilinearConfMap]) -> Vec<BTreeMap<(usize, usize, usize, Monomial), Rat>> {
    maps.iter().map(|m| m.coordinates()).collect()
}
