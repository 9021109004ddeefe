//! Finite-rank Lie conformal superalgebras.
//!
//! An algebra is a free ℚ[∂]-module on named generators `eᵢ` with a
//! Z₂-grading and a structure table `[eᵢ_λ eⱼ] = Σₖ S[i][j][k](∂, λ)·eₖ`.
//! Brackets of arbitrary elements follow from conformal sesquilinearity:
//!
//! ```text
//! [p(∂)eᵢ _ν q(∂)eⱼ] = p(−ν)·q(∂+ν)·S[i][j](∂, ν)
//! ```
//!
//! Spectral variables other than ν inside `p` and `q` are parameters and
//! pass through. Subscripts that are not a single variable (`λ+μ`,
//! `−λ−∂`, …) are handled by evaluating at a scratch variable and
//! substituting afterwards. Since all coefficients commute, substituting an
//! expression containing ∂ is plain polynomial substitution.

use rayon::prelude::*;

use crate::element::{sign, ConformalElement, ElementParity, Parity};
use crate::error::{Error, Result};
use crate::linsolve::SolutionSpace;
use crate::poly::{Affine, Monomial, Rat, SPoly, Var};
use crate::report::{AxiomReport, Residual};
use crate::system::solve_homogeneous;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsAlgebra {
    name: String,
    generators: Vec<String>,
    parities: Vec<Parity>,
    structure: Vec<Vec<ConformalElement>>,
    // structure with λ renamed to the scratch variable, cached for bracket evaluation
    structure_scratch: Vec<Vec<ConformalElement>>,
}

impl LcsAlgebra {
    /// Validate and build an algebra. `structure[i][j]` is `[eᵢ_λ eⱼ]`,
    /// polynomial in ∂ and λ only.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        parities: Vec<Parity>,
        structure: Vec<Vec<ConformalElement>>,
    ) -> Result<Self> {
        let rank = generators.len();
        if parities.len() != rank {
            return Err(Error::InvalidStructure(format!(
                "{} generators but {} parities",
                rank,
                parities.len()
            )));
        }
        for (a, n) in generators.iter().enumerate() {
            if generators[..a].contains(n) {
                return Err(Error::InvalidStructure(format!("duplicate generator name {n}")));
            }
        }
        if structure.len() != rank || structure.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidStructure(format!("structure table must be {rank}x{rank}")));
        }
        for (i, row) in structure.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.rank() != rank {
                    return Err(Error::InvalidStructure(format!(
                        "entry ({i}, {j}) has {} coefficients, expected {rank}",
                        entry.rank()
                    )));
                }
                for (k, p) in entry.coeffs().iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    if !p.only_uses(&[Var::D, Var::Lambda]) {
                        return Err(Error::InvalidStructure(format!(
                            "entry ({i}, {j}) coefficient on generator {k} uses variables other than d and x"
                        )));
                    }
                    if parities[k] != parities[i].plus(parities[j]) {
                        return Err(Error::ParityViolation { i, j, k });
                    }
                }
            }
        }
        let to_scratch = Affine::var(Var::Scratch);
        let structure_scratch = structure
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(Var::Lambda, &to_scratch)).collect())
            .collect();
        Ok(LcsAlgebra {
            name: name.into(),
            generators,
            parities,
            structure,
            structure_scratch,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn structure(&self) -> &[Vec<ConformalElement>] {
        &self.structure
    }

    /// `[eᵢ_λ eⱼ]`
    pub fn structure_entry(&self, i: usize, j: usize) -> &ConformalElement {
        &self.structure[i][j]
    }

    pub fn generator(&self, i: usize) -> ConformalElement {
        ConformalElement::generator(self.rank(), i)
    }

    pub fn generators(&self) -> Vec<ConformalElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn zero(&self) -> ConformalElement {
        ConformalElement::zero(self.rank())
    }

    pub fn element_parity(&self, x: &ConformalElement) -> ElementParity {
        let mut even = false;
        let mut odd = false;
        for i in x.support() {
            match self.parities[i] {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        match (even, odd) {
            (_, false) => ElementParity::Even,
            (false, true) => ElementParity::Odd,
            (true, true) => ElementParity::Mixed,
        }
    }

    pub fn check_rank(&self, x: &ConformalElement) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::Usage(format!(
                "element of rank {} used with algebra {} of rank {}",
                x.rank(),
                self.name,
                self.rank()
            )));
        }
        Ok(())
    }

    /// Bracket at the scratch variable. Inputs must not mention it.
    pub(crate) fn bracket_scratch(&self, x: &ConformalElement, y: &ConformalElement) -> ConformalElement {
        debug_assert!(!x.mentions(Var::Scratch) && !y.mentions(Var::Scratch));
        let s = Var::Scratch;
        let minus_s = -Affine::var(s);
        let d_plus_s = Affine::var(Var::D) + Affine::var(s);
        let mut out = self.zero();
        let left: Vec<(usize, SPoly)> = x
            .support()
            .map(|i| (i, x.coeff(i).substitute(Var::D, &minus_s)))
            .collect();
        if left.is_empty() {
            return out;
        }
        for j in y.support() {
            let q = y.coeff(j).substitute(Var::D, &d_plus_s);
            for (i, p) in &left {
                let entry = &self.structure_scratch[*i][j];
                if entry.is_zero() {
                    continue;
                }
                out.add_assign(&entry.mul_poly(&(p * &q)));
            }
        }
        out
    }

    /// `[x_at y]` for a single spectral variable `at`.
    pub fn bracket(&self, x: &ConformalElement, y: &ConformalElement, at: Var) -> Result<ConformalElement> {
        if at == Var::D || at == Var::Scratch {
            return Err(Error::Usage(format!("bracket subscript must be a spectral variable, got {at}")));
        }
        self.bracket_at(x, y, &Affine::var(at))
    }

    /// `[x_e y]` for an affine subscript `e` such as `λ+μ` or `−λ−∂`.
    pub fn bracket_at(&self, x: &ConformalElement, y: &ConformalElement, at: &Affine) -> Result<ConformalElement> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        if x.mentions(Var::Scratch) || y.mentions(Var::Scratch) || at.mentions(Var::Scratch) {
            return Err(Error::Usage("the scratch variable is reserved".into()));
        }
        Ok(self.bracket_scratch(x, y).substitute(Var::Scratch, at))
    }

    /// Infallible bracket for internal use on elements already known to
    /// belong to this algebra.
    pub(crate) fn br(&self, x: &ConformalElement, y: &ConformalElement, at: &Affine) -> ConformalElement {
        self.bracket_scratch(x, y).substitute(Var::Scratch, at)
    }

    /// Skew-symmetry `[eᵢ_λ eⱼ] = −(−1)^{|i||j|}[eⱼ_{−λ−∂} eᵢ]` on all
    /// generator pairs; residual is `[eᵢ_λ eⱼ] + (−1)^{|i||j|}[eⱼ_{−λ−∂} eᵢ]`.
    pub fn check_skew(&self) -> AxiomReport {
        let n = self.rank();
        let lam = Affine::var(Var::Lambda);
        let flipped = Affine::sum(&[(Var::Lambda, -1), (Var::D, -1)]);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let residuals = pairs
            .par_iter()
            .filter_map(|&(i, j)| {
                let (ei, ej) = (self.generator(i), self.generator(j));
                let lhs = self.br(&ei, &ej, &lam);
                let rhs = self.br(&ej, &ei, &flipped).scale_int(sign(self.parities[i], self.parities[j]));
                let r = &lhs + &rhs;
                (!r.is_zero()).then(|| Residual {
                    context: format!("({}, {})", self.generators[i], self.generators[j]),
                    value: r,
                })
            })
            .collect();
        AxiomReport {
            axiom: "skew-symmetry",
            residuals,
        }
    }

    /// Jacobi identity on all generator triples; residual is
    /// `[eᵢ_λ[eⱼ_μ eₖ]] − [[eᵢ_λ eⱼ]_{λ+μ} eₖ] − (−1)^{|i||j|}[eⱼ_μ[eᵢ_λ eₖ]]`.
    pub fn check_jacobi(&self) -> AxiomReport {
        let n = self.rank();
        let lam = Affine::var(Var::Lambda);
        let mu = Affine::var(Var::Mu);
        let lam_mu = Affine::sum(&[(Var::Lambda, 1), (Var::Mu, 1)]);
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        let residuals = triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let (ei, ej, ek) = (self.generator(i), self.generator(j), self.generator(k));
                let lhs = self.br(&ei, &self.br(&ej, &ek, &mu), &lam);
                let first = self.br(&self.br(&ei, &ej, &lam), &ek, &lam_mu);
                let second = self
                    .br(&ej, &self.br(&ei, &ek, &lam), &mu)
                    .scale_int(sign(self.parities[i], self.parities[j]));
                let r = &(&lhs - &first) - &second;
                (!r.is_zero()).then(|| Residual {
                    context: format!(
                        "({}, {}, {})",
                        self.generators[i], self.generators[j], self.generators[k]
                    ),
                    value: r,
                })
            })
            .collect();
        AxiomReport {
            axiom: "jacobi",
            residuals,
        }
    }

    /// Both axioms hold on generators (and hence everywhere).
    pub fn is_valid(&self) -> bool {
        self.check_skew().passed() && self.check_jacobi().passed()
    }

    /// Elements `x = Σ pᵢ(∂)eᵢ`, `deg pᵢ ≤ deg_d`, with `[x_λ y] = 0` for all
    /// `y` in `targets`.
    pub fn centralizer(&self, targets: &[ConformalElement], deg_d: usize) -> Result<ModuleSpace> {
        for t in targets {
            self.check_rank(t)?;
        }
        let layout = ModuleLayout {
            rank: self.rank(),
            deg_d,
        };
        let lam = Affine::var(Var::Lambda);
        let space = solve_homogeneous(layout.len(), |u| {
            let x = layout.unit(u);
            targets.iter().map(|y| self.br(&x, y, &lam)).enumerate().collect()
        });
        Ok(ModuleSpace::new(layout, space))
    }

    /// Degree-bounded center: by sesquilinearity it is enough to test
    /// against the generators.
    pub fn center(&self, deg_d: usize) -> ModuleSpace {
        self.centralizer(&self.generators(), deg_d)
            .expect("generators always match the algebra")
    }

    /// Whether every generator lies in the ℚ[∂]-span (multipliers of degree
    /// ≤ `deg_d`) of the λ-coefficients of all generator brackets.
    pub fn is_perfect(&self, deg_d: usize) -> Perfectness {
        let n = self.rank();
        let mut spanning: Vec<ConformalElement> = Vec::new();
        for row in &self.structure {
            for entry in row {
                for (_, c) in entry.monomial_coeffs(&[Var::Lambda]) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut shifted = c;
                    for _ in 0..=deg_d {
                        spanning.push(shifted.clone());
                        shifted = shifted.partial();
                    }
                }
            }
        }
        let top = spanning
            .iter()
            .flat_map(|e| e.coeffs().iter().map(|p| p.degree_in(Var::D) as usize))
            .max()
            .unwrap_or(0);
        let layout = ModuleLayout { rank: n, deg_d: top };
        let span = SolutionSpace::span_of(
            layout.len(),
            spanning.iter().map(|e| layout.vectorize(e).expect("∂-only by construction")),
        );
        let witness = (0..n).find(|&i| {
            span.in_span(&layout.vectorize(&self.generator(i)).unwrap())
                .is_none()
        });
        Perfectness {
            perfect: witness.is_none(),
            witness,
            deg_d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perfectness {
    pub perfect: bool,
    /// First generator outside the derived submodule.
    pub witness: Option<usize>,
    pub deg_d: usize,
}

/// Coordinates for elements `Σ pᵢ(∂)eᵢ` with `deg pᵢ ≤ deg_d`:
/// generator-major, ∂-degree-minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleLayout {
    pub rank: usize,
    pub deg_d: usize,
}

impl ModuleLayout {
    pub fn len(&self) -> usize {
        self.rank * (self.deg_d + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `∂^a eᵢ` for unknown index `u = i·(deg_d+1) + a`.
    pub fn unit(&self, u: usize) -> ConformalElement {
        let (i, a) = (u / (self.deg_d + 1), u % (self.deg_d + 1));
        ConformalElement::single(self.rank, i, SPoly::term(Rat::from_integer(1.into()), Monomial::var_pow(Var::D, a as u16)))
    }

    pub fn element(&self, v: &[Rat]) -> ConformalElement {
        let mut out = ConformalElement::zero(self.rank);
        for (u, c) in v.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                out.add_assign(&self.unit(u).scale(c));
            }
        }
        out
    }

    /// Coordinates of `x`, or `None` if it mentions a spectral variable or
    /// exceeds the degree bound.
    pub fn vectorize(&self, x: &ConformalElement) -> Option<Vec<Rat>> {
        let mut v = vec![Rat::from_integer(0.into()); self.len()];
        for (i, p) in x.coeffs().iter().enumerate() {
            for (m, c) in p.terms() {
                let a = m.exp(Var::D) as usize;
                if a > self.deg_d || m.degree() as usize != a {
                    return None;
                }
                v[i * (self.deg_d + 1) + a] = c.clone();
            }
        }
        Some(v)
    }
}

/// A degree-bounded solution space of module elements. Complete only up
/// to `layout.deg_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpace {
    pub layout: ModuleLayout,
    pub space: SolutionSpace,
    pub basis: Vec<ConformalElement>,
}

impl ModuleSpace {
    fn new(layout: ModuleLayout, space: SolutionSpace) -> Self {
        let basis = space.basis().iter().map(|v| layout.element(v)).collect();
        ModuleSpace { layout, space, basis }
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn deg_d(&self) -> usize {
        self.layout.deg_d
    }

    pub fn contains(&self, x: &ConformalElement) -> bool {
        match self.layout.vectorize(x) {
            Some(v) => self.space.in_span(&v).is_some(),
            None => x.is_zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::poly::int;

    fn d() -> SPoly {
        SPoly::var(Var::D)
    }
    fn lam() -> SPoly {
        SPoly::var(Var::Lambda)
    }
    fn mu() -> SPoly {
        SPoly::var(Var::Mu)
    }
    fn c(n: i64) -> SPoly {
        SPoly::from_int(n)
    }

    #[test]
    fn parity_violation_is_rejected() {
        let err = LcsAlgebra::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![Parity::Even, Parity::Odd],
            vec![
                vec![ConformalElement::generator(2, 1), ConformalElement::zero(2)],
                vec![ConformalElement::zero(2), ConformalElement::zero(2)],
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::ParityViolation { i: 0, j: 0, k: 1 });
    }

    #[test]
    fn virasoro_brackets() {
        let vir = builtins::virasoro();
        let l = vir.generator(0);
        let d_2l = &d() + &(&c(2) * &lam());
        assert_eq!(vir.bracket(&l, &l, Var::Lambda).unwrap(), ConformalElement::single(1, 0, d_2l.clone()));
        assert_eq!(
            vir.bracket(&l.partial(), &l, Var::Lambda).unwrap(),
            ConformalElement::single(1, 0, &(-lam()) * &d_2l)
        );
        assert!(vir.bracket(&vir.zero(), &l, Var::Lambda).unwrap().is_zero());
        // [L_λ (∂+2μ)L] = (∂+λ+2μ)(∂+2λ)L
        let y = ConformalElement::single(1, 0, &d() + &(&c(2) * &mu()));
        let want = &(&(&d() + &lam()) + &(&c(2) * &mu())) * &d_2l;
        assert_eq!(vir.bracket(&l, &y, Var::Lambda).unwrap(), ConformalElement::single(1, 0, want));
    }

    #[test]
    fn bracket_rejects_bad_input() {
        let vir = builtins::virasoro();
        let l = vir.generator(0);
        assert!(vir.bracket(&l, &l, Var::D).is_err());
        assert!(vir.bracket(&l, &ConformalElement::zero(2), Var::Lambda).is_err());
    }

    #[test]
    fn axioms_of_builtins() {
        for alg in [builtins::virasoro(), builtins::neveu_schwarz(), builtins::cur_sl2(), builtins::abelian(2)] {
            assert!(alg.check_skew().passed(), "{} skew", alg.name());
            assert!(alg.check_jacobi().passed(), "{} jacobi", alg.name());
        }
    }

    #[test]
    fn corrupted_virasoro_fails() {
        // [L_λ L] = (∂+λ)L: [L_λ L] + [L_{−λ−∂} L] = (∂+λ) + (−λ) = ∂
        let bad = builtins::virasoro_with(&d() + &lam());
        let skew = bad.check_skew();
        assert!(!skew.passed());
        assert_eq!(skew.residuals[0].value, ConformalElement::single(1, 0, d()));

        let bad = builtins::virasoro_with(&d() + &(&c(3) * &lam()));
        let jac = bad.check_jacobi();
        assert!(!jac.passed());
        let lam2 = Monomial::var_pow(Var::Lambda, 2);
        assert!(!jac.residuals[0].value.coeff(0).monomial_coeffs(&[Var::Lambda])[&lam2].is_zero());
    }

    #[test]
    fn centers_and_centralizers() {
        assert_eq!(builtins::virasoro().center(3).dimension(), 0);
        let ab1 = builtins::abelian(1);
        let z = ab1.center(2);
        assert_eq!(z.dimension(), 3);
        assert!(z.contains(&ConformalElement::single(1, 0, d().pow(2))));

        let vir = builtins::virasoro();
        assert_eq!(vir.centralizer(&[vir.generator(0)], 3).unwrap().dimension(), 0);
        assert_eq!(vir.centralizer(&[vir.zero()], 2).unwrap().dimension(), 3);
        let ab2 = builtins::abelian(2);
        assert_eq!(ab2.centralizer(&[ab2.generator(0)], 1).unwrap().dimension(), 4);
    }

    #[test]
    fn perfectness() {
        assert!(builtins::virasoro().is_perfect(1).perfect);
        assert!(builtins::neveu_schwarz().is_perfect(1).perfect);
        assert!(builtins::cur_sl2().is_perfect(0).perfect);
        let p = builtins::abelian(1).is_perfect(3);
        assert!(!p.perfect);
        assert_eq!(p.witness, Some(0));
    }

    #[test]
    fn element_parity() {
        let ns = builtins::neveu_schwarz();
        assert_eq!(ns.element_parity(&ns.generator(0)), ElementParity::Even);
        assert_eq!(ns.element_parity(&ns.generator(1)), ElementParity::Odd);
        let mixed = &ns.generator(0) + &ns.generator(1);
        assert_eq!(ns.element_parity(&mixed), ElementParity::Mixed);
        assert_eq!(ns.element_parity(&ns.generator(1).scale(&int(3))), ElementParity::Odd);
    }
}
