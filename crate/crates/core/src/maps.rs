//! Conformal linear and bilinear maps given by polynomial matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::LcsAlgebra;
use crate::element::{ConformalElement, Parity};
use crate::error::{Error, Result};
use crate::poly::{Affine, Monomial, Rat, SPoly, Var};

/// How a linear map interacts with ∂.
///
/// * `PartialCommuting`: `α(∂x) = ∂α(x)`; matrix entries are ∂-polynomials.
/// * `LambdaShifted`: `α_λ(∂x) = (∂+λ)α_λ(x)`; entries are polynomials in ∂ and λ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    PartialCommuting,
    LambdaShifted,
}

impl Convention {
    pub fn entry_vars(self) -> &'static [Var] {
        match self {
            Convention::PartialCommuting => &[Var::D],
            Convention::LambdaShifted => &[Var::D, Var::Lambda],
        }
    }
}

/// `α(eᵢ) = Σₖ matrix[k][i]·eₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConfMap {
    rank: usize,
    parity: Parity,
    convention: Convention,
    matrix: Vec<Vec<SPoly>>,
}

impl LinearConfMap {
    pub fn new(alg: &LcsAlgebra, matrix: Vec<Vec<SPoly>>, parity: Parity, convention: Convention) -> Result<Self> {
        let n = alg.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Usage(format!("linear map matrix must be {n}x{n}")));
        }
        for (k, row) in matrix.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if !p.only_uses(convention.entry_vars()) {
                    return Err(Error::Usage(format!(
                        "entry ({k}, {i}) uses variables not allowed by the {convention:?} convention"
                    )));
                }
                if alg.parity(k) != alg.parity(i).plus(parity) {
                    return Err(Error::Usage(format!(
                        "entry ({k}, {i}) breaks the parity of a {} map",
                        parity.name()
                    )));
                }
            }
        }
        Ok(LinearConfMap {
            rank: n,
            parity,
            convention,
            matrix,
        })
    }

    pub(crate) fn from_parts(rank: usize, parity: Parity, convention: Convention, matrix: Vec<Vec<SPoly>>) -> Self {
        LinearConfMap {
            rank,
            parity,
            convention,
            matrix,
        }
    }

    pub fn identity(alg: &LcsAlgebra, convention: Convention) -> Self {
        let n = alg.rank();
        let matrix = (0..n)
            .map(|k| (0..n).map(|i| if k == i { SPoly::one() } else { SPoly::zero() }).collect())
            .collect();
        LinearConfMap::from_parts(n, Parity::Even, convention, matrix)
    }

    pub fn zero(alg: &LcsAlgebra, parity: Parity, convention: Convention) -> Self {
        let n = alg.rank();
        LinearConfMap::from_parts(n, parity, convention, vec![vec![SPoly::zero(); n]; n])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn matrix(&self) -> &[Vec<SPoly>] {
        &self.matrix
    }

    pub fn entry(&self, k: usize, i: usize) -> &SPoly {
        &self.matrix[k][i]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(SPoly::is_zero)
    }

    /// `α(eᵢ)`
    pub fn image_of_generator(&self, i: usize) -> ConformalElement {
        ConformalElement::from_coeffs(self.matrix.iter().map(|row| row[i].clone()).collect())
    }

    pub fn apply(&self, x: &ConformalElement) -> Result<ConformalElement> {
        if x.rank() != self.rank {
            return Err(Error::Usage(format!(
                "element of rank {} passed to a map of rank {}",
                x.rank(),
                self.rank
            )));
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &ConformalElement) -> ConformalElement {
        let shift = Affine::var(Var::D) + Affine::var(Var::Lambda);
        let mut out = ConformalElement::zero(self.rank);
        for i in x.support() {
            let coeff = match self.convention {
                Convention::PartialCommuting => x.coeff(i).clone(),
                Convention::LambdaShifted => x.coeff(i).substitute(Var::D, &shift),
            };
            for (k, row) in self.matrix.iter().enumerate() {
                if !row[i].is_zero() {
                    out.add_assign(&ConformalElement::single(self.rank, k, &coeff * &row[i]));
                }
            }
        }
        out
    }

    /// The bilinear map `(x, y) ↦ α([x_λ y])`. Defined for ∂-commuting maps.
    pub fn compose_bracket(&self, alg: &LcsAlgebra) -> Result<BilinearConfMap> {
        if self.convention != Convention::PartialCommuting {
            return Err(Error::Usage("α∘bracket needs a ∂-commuting α".into()));
        }
        if alg.rank() != self.rank {
            return Err(Error::Usage("map and algebra ranks differ".into()));
        }
        let tensor = alg
            .structure()
            .iter()
            .map(|row| row.iter().map(|e| self.apply_unchecked(e)).collect())
            .collect();
        Ok(BilinearConfMap::from_parts(self.rank, self.parity, tensor))
    }

    /// Sparse coordinates keyed by (output generator, input generator, monomial).
    pub fn coordinates(&self) -> BTreeMap<(usize, usize, Monomial), Rat> {
        let mut out = BTreeMap::new();
        for (k, row) in self.matrix.iter().enumerate() {
            for (i, p) in row.iter().enumerate() {
                for (m, c) in p.terms() {
                    out.insert((k, i, *m), c.clone());
                }
            }
        }
        out
    }

    /// `Σ cᵢ·mapsᵢ`; all maps must share rank, parity and convention.
    pub fn combine(maps: &[LinearConfMap], coeffs: &[Rat]) -> Option<LinearConfMap> {
        let first = maps.first()?;
        let n = first.rank;
        let mut matrix = vec![vec![SPoly::zero(); n]; n];
        for (m, c) in maps.iter().zip(coeffs) {
            for k in 0..n {
                for i in 0..n {
                    matrix[k][i] += &m.matrix[k][i].scale(c);
                }
            }
        }
        Some(LinearConfMap::from_parts(n, first.parity, first.convention, matrix))
    }
}

/// `φ_λ(eᵢ, eⱼ) = Σₖ tensor[i][j][k](∂, λ)·eₖ`, extended by
/// `φ_λ(∂x, y) = −λφ_λ(x, y)` and `φ_λ(x, ∂y) = (∂+λ)φ_λ(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearConfMap {
    rank: usize,
    parity: Parity,
    tensor: Vec<Vec<ConformalElement>>,
    tensor_scratch: Vec<Vec<ConformalElement>>,
}

impl BilinearConfMap {
    pub fn new(alg: &LcsAlgebra, tensor: Vec<Vec<ConformalElement>>, parity: Parity) -> Result<Self> {
        let n = alg.rank();
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n || r.iter().any(|e| e.rank() != n)) {
            return Err(Error::Usage(format!("bilinear map tensor must be {n}x{n}x{n}")));
        }
        for (i, row) in tensor.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for k in e.support() {
                    if !e.coeff(k).only_uses(&[Var::D, Var::Lambda]) {
                        return Err(Error::Usage(format!("entry ({i}, {j}, {k}) uses variables other than d and x")));
                    }
                    if alg.parity(k) != alg.parity(i).plus(alg.parity(j)).plus(parity) {
                        return Err(Error::Usage(format!(
                            "entry ({i}, {j}, {k}) breaks the parity of a {} map",
                            parity.name()
                        )));
                    }
                }
            }
        }
        Ok(BilinearConfMap::from_parts(n, parity, tensor))
    }

    pub(crate) fn from_parts(rank: usize, parity: Parity, tensor: Vec<Vec<ConformalElement>>) -> Self {
        let to_scratch = Affine::var(Var::Scratch);
        let tensor_scratch = tensor
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(Var::Lambda, &to_scratch)).collect())
            .collect();
        BilinearConfMap {
            rank,
            parity,
            tensor,
            tensor_scratch,
        }
    }

    /// The bracket itself as a bilinear map.
    pub fn bracket_map(alg: &LcsAlgebra) -> Self {
        BilinearConfMap::from_parts(alg.rank(), Parity::Even, alg.structure().to_vec())
    }

    pub fn zero(alg: &LcsAlgebra, parity: Parity) -> Self {
        let n = alg.rank();
        BilinearConfMap::from_parts(n, parity, vec![vec![ConformalElement::zero(n); n]; n])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn tensor(&self) -> &[Vec<ConformalElement>] {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.iter().flatten().all(ConformalElement::is_zero)
    }

    pub(crate) fn apply_scratch(&self, x: &ConformalElement, y: &ConformalElement) -> ConformalElement {
        let s = Var::Scratch;
        let minus_s = -Affine::var(s);
        let d_plus_s = Affine::var(Var::D) + Affine::var(s);
        let mut out = ConformalElement::zero(self.rank);
        let left: Vec<(usize, SPoly)> = x
            .support()
            .filter(|&i| self.tensor[i].iter().any(|e| !e.is_zero()))
            .map(|i| (i, x.coeff(i).substitute(Var::D, &minus_s)))
            .collect();
        if left.is_empty() {
            return out;
        }
        for j in y.support() {
            let q = y.coeff(j).substitute(Var::D, &d_plus_s);
            for (i, p) in &left {
                let entry = &self.tensor_scratch[*i][j];
                if !entry.is_zero() {
                    out.add_assign(&entry.mul_poly(&(p * &q)));
                }
            }
        }
        out
    }

    /// `φ_e(x, y)` for an affine subscript `e`.
    pub(crate) fn eval(&self, x: &ConformalElement, y: &ConformalElement, at: &Affine) -> ConformalElement {
        self.apply_scratch(x, y).substitute(Var::Scratch, at)
    }

    pub fn apply(&self, x: &ConformalElement, y: &ConformalElement, at: Var) -> Result<ConformalElement> {
        self.apply_at(x, y, &Affine::var(at))
    }

    pub fn apply_at(&self, x: &ConformalElement, y: &ConformalElement, at: &Affine) -> Result<ConformalElement> {
        if x.rank() != self.rank || y.rank() != self.rank {
            return Err(Error::Usage("element rank does not match the map".into()));
        }
        if at.mentions(Var::Scratch) || x.mentions(Var::Scratch) || y.mentions(Var::Scratch) {
            return Err(Error::Usage("the scratch variable is reserved".into()));
        }
        Ok(self.eval(x, y, at))
    }

    /// Sparse coordinates keyed by (i, j, k, monomial).
    pub fn coordinates(&self) -> BTreeMap<(usize, usize, usize, Monomial), Rat> {
        let mut out = BTreeMap::new();
        for (i, row) in self.tensor.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (k, p) in e.coeffs().iter().enumerate() {
                    for (m, c) in p.terms() {
                        out.insert((i, j, k, *m), c.clone());
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::current::{lift_to_current, tensor_current, CommutativeAlgebra};
    use crate::poly::int;

    #[test]
    fn linear_examples() {
        let vir = builtins::virasoro();
        let id = LinearConfMap::identity(&vir, Convention::PartialCommuting);
        let dl = vir.generator(0).partial();
        assert_eq!(id.apply(&dl).unwrap(), dl);
        let zero = LinearConfMap::zero(&vir, Parity::Even, Convention::PartialCommuting);
        assert!(zero.apply(&dl).unwrap().is_zero());

        let a2 = CommutativeAlgebra::quotient_poly(2).unwrap();
        let va = tensor_current(&vir, &a2);
        let t_mult = lift_to_current(&vir, &a2, &id, &[int(0), int(1)]).unwrap();
        assert_eq!(t_mult.apply(&va.generator(0)).unwrap(), va.generator(1));
        assert!(t_mult.apply(&va.generator(1)).unwrap().is_zero());
    }

    #[test]
    fn parity_checked_on_construction() {
        let ns = builtins::neveu_schwarz();
        let bad = vec![vec![SPoly::zero(), SPoly::one()], vec![SPoly::zero(), SPoly::zero()]];
        assert!(LinearConfMap::new(&ns, bad.clone(), Parity::Even, Convention::PartialCommuting).is_err());
        assert!(LinearConfMap::new(&ns, bad, Parity::Odd, Convention::PartialCommuting).is_ok());
    }

    #[test]
    fn bilinear_examples() {
        let vir = builtins::virasoro();
        let br = BilinearConfMap::bracket_map(&vir);
        let l = vir.generator(0);
        let d_2l = &SPoly::var(Var::D) + &SPoly::var(Var::Lambda).scale(&int(2));
        assert_eq!(br.apply(&l, &l, Var::Lambda).unwrap(), ConformalElement::single(1, 0, d_2l));
        let left = br.apply(&l.partial(), &l, Var::Lambda).unwrap();
        let plain = br.apply(&l, &l, Var::Lambda).unwrap();
        assert_eq!(left, plain.mul_poly(&-SPoly::var(Var::Lambda)));
        let zero = BilinearConfMap::zero(&vir, Parity::Even);
        assert!(zero.apply(&l, &l, Var::Lambda).unwrap().is_zero());
    }

    #[test]
    fn identity_composed_with_bracket_is_the_bracket() {
        let ns = builtins::neveu_schwarz();
        let id = LinearConfMap::identity(&ns, Convention::PartialCommuting);
        assert_eq!(id.compose_bracket(&ns).unwrap(), BilinearConfMap::bracket_map(&ns));
    }
}
