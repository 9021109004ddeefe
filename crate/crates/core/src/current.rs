//! Finite-dimensional commutative associative unital algebras and the
//! current construction `L ⊗ A` with `[(x⊗a)_λ (y⊗b)] = [x_λ y] ⊗ ab`.

use num_traits::{One, Zero};

use crate::algebra::LcsAlgebra;
use crate::element::ConformalElement;
use crate::error::{Error, Result};
use crate::linsolve::RatMatrix;
use crate::maps::{Convention, LinearConfMap};
use crate::poly::{Rat, SPoly};

/// `A` with a fixed basis `b₀ … b_{n−1}` and `bₛ·bₜ = Σ_w mult[s][t][w]·b_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeAlgebra {
    name: String,
    basis_names: Vec<String>,
    mult: Vec<Vec<Vec<Rat>>>,
    unit: Vec<Rat>,
}

impl CommutativeAlgebra {
    /// Build and validate: commutativity, associativity and the unit law
    /// are all checked exactly on basis elements.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<Rat>>>,
        unit: Vec<Rat>,
    ) -> Result<Self> {
        let n = basis_names.len();
        let shape_ok = mult.len() == n
            && mult.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && unit.len() == n;
        if !shape_ok {
            return Err(Error::InvalidStructure(format!(
                "multiplication table and unit must match dimension {n}"
            )));
        }
        let a = CommutativeAlgebra {
            name: name.into(),
            basis_names,
            mult,
            unit,
        };
        for s in 0..n {
            for t in 0..n {
                if a.mult[s][t] != a.mult[t][s] {
                    return Err(Error::AlgebraLaw {
                        law: "commutativity",
                        r: s,
                        s: t,
                        t: t,
                    });
                }
            }
        }
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let left = a.mul(&a.mult[r][s], &a.basis(t));
                    let right = a.mul(&a.basis(r), &a.mult[s][t]);
                    if left != right {
                        return Err(Error::AlgebraLaw {
                            law: "associativity",
                            r,
                            s,
                            t,
                        });
                    }
                }
            }
        }
        for t in 0..n {
            if a.mul(&a.unit, &a.basis(t)) != a.basis(t) {
                return Err(Error::AlgebraLaw {
                    law: "unit law",
                    r: t,
                    s: t,
                    t,
                });
            }
        }
        Ok(a)
    }

    /// `ℚ[t]/(tᴺ)` on the monomial basis `1, t, …, t^{N−1}`.
    pub fn quotient_poly(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("quotient ℚ[t]/(t^N) needs N ≥ 1".into()));
        }
        let names = (0..n)
            .map(|a| match a {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{a}"),
            })
            .collect();
        let mult = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![Rat::zero(); n];
                        if a + b < n {
                            v[a + b] = Rat::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        CommutativeAlgebra::new(format!("Q[t]/(t^{n})"), names, mult, unit)
    }

    /// `ℚⁿ` with coordinatewise product.
    pub fn split(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("split algebra needs dimension ≥ 1".into()));
        }
        let mult = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![Rat::zero(); n];
                        if a == b {
                            v[a] = Rat::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        CommutativeAlgebra::new(
            format!("Q^{n}"),
            (1..=n).map(|i| format!("u{i}")).collect(),
            mult,
            vec![Rat::one(); n],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    /// Coordinates of `b_t · b_s`.
    pub fn basis_product(&self, s: usize, t: usize) -> &[Rat] {
        &self.mult[s][t]
    }

    pub fn basis(&self, t: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[t] = Rat::one();
        v
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for s in 0..n {
            if a[s].is_zero() {
                continue;
            }
            for t in 0..n {
                if b[t].is_zero() {
                    continue;
                }
                let ab = &a[s] * &b[t];
                for (o, c) in out.iter_mut().zip(&self.mult[s][t]) {
                    *o += &ab * c;
                }
            }
        }
        out
    }

    fn check_len(&self, a: &[Rat]) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::Usage(format!(
                "vector of length {} does not match algebra dimension {}",
                a.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// The coordinates `δ_w(a)` with `a = Σ_w δ_w(a)·b_w`. The basis is
    /// fixed, so these are the stored coordinates themselves.
    pub fn decompose(&self, a: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(a)?;
        Ok(a.to_vec())
    }

    /// Matrix of `x ↦ a·x`; column `t` holds the coordinates of `a·b_t`.
    pub fn mult_operator(&self, a: &[Rat]) -> Result<RatMatrix> {
        self.check_len(a)?;
        let n = self.dim();
        let columns: Vec<Vec<Rat>> = (0..n).map(|t| self.mul(a, &self.basis(t))).collect();
        let rows = (0..n).map(|w| (0..n).map(|t| columns[t][w].clone()).collect()).collect();
        Ok(RatMatrix::from_dense(n, rows))
    }
}

/// Index of `eᵢ ⊗ b_s` in `L ⊗ A`: generator-major, basis-minor.
pub fn current_index(a: &CommutativeAlgebra, i: usize, s: usize) -> usize {
    i * a.dim() + s
}

/// The current algebra `L ⊗ A` of rank `rank(L)·dim(A)`.
pub fn tensor_current(l: &LcsAlgebra, a: &CommutativeAlgebra) -> LcsAlgebra {
    let n = l.rank();
    let m = a.dim();
    let rank = n * m;
    let mut names = Vec::with_capacity(rank);
    let mut parities = Vec::with_capacity(rank);
    for i in 0..n {
        for s in 0..m {
            names.push(format!("{}⊗{}", l.generator_names()[i], a.basis_names()[s]));
            parities.push(l.parity(i));
        }
    }
    let mut structure = vec![vec![ConformalElement::zero(rank); rank]; rank];
    for i in 0..n {
        for j in 0..n {
            let entry = l.structure_entry(i, j);
            for s in 0..m {
                for t in 0..m {
                    let prod = a.basis_product(s, t);
                    let mut coeffs = vec![SPoly::zero(); rank];
                    for (k, p) in entry.coeffs().iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        for (w, c) in prod.iter().enumerate() {
                            if !c.is_zero() {
                                coeffs[current_index(a, k, w)] = p.scale(c);
                            }
                        }
                    }
                    structure[current_index(a, i, s)][current_index(a, j, t)] =
                        ConformalElement::from_coeffs(coeffs);
                }
            }
        }
    }
    LcsAlgebra::new(
        format!("{}⊗{}", l.name(), a.name()),
        names,
        parities,
        structure,
    )
    .expect("tensor of valid tables is parity-consistent")
}

/// Lift `α` on `L` and `a ∈ A` to the map `eᵢ⊗b_t ↦ α(eᵢ) ⊗ (a·b_t)` on
/// `L ⊗ A`. Only defined for ∂-commuting maps.
pub fn lift_to_current(
    l: &LcsAlgebra,
    a: &CommutativeAlgebra,
    alpha: &LinearConfMap,
    coeff: &[Rat],
) -> Result<LinearConfMap> {
    if alpha.convention() != Convention::PartialCommuting {
        return Err(Error::Usage("only ∂-commuting maps lift to the current algebra".into()));
    }
    let beta = a.mult_operator(coeff)?;
    let n = l.rank();
    let m = a.dim();
    let rank = n * m;
    let mut matrix = vec![vec![SPoly::zero(); rank]; rank];
    for i in 0..n {
        for t in 0..m {
            let col = current_index(a, i, t);
            for k in 0..n {
                let entry = alpha.entry(k, i);
                if entry.is_zero() {
                    continue;
                }
                for w in 0..m {
                    let c = beta.get(w, t);
                    if !c.is_zero() {
                        matrix[current_index(a, k, w)][col] = entry.scale(&c);
                    }
                }
            }
        }
    }
    let lifted = tensor_current(l, a);
    LinearConfMap::new(&lifted, matrix, alpha.parity(), Convention::PartialCommuting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::poly::{int, Var};

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn quotient_family() {
        assert_eq!(CommutativeAlgebra::quotient_poly(1).unwrap().dim(), 1);
        let a2 = CommutativeAlgebra::quotient_poly(2).unwrap();
        assert_eq!(a2.basis_product(1, 1), &ints(&[0, 0])[..]);
        let a3 = CommutativeAlgebra::quotient_poly(3).unwrap();
        assert_eq!(a3.basis_product(1, 1), &ints(&[0, 0, 1])[..]);
        assert_eq!(a3.basis_product(1, 2), &ints(&[0, 0, 0])[..]);
        assert!(CommutativeAlgebra::quotient_poly(0).is_err());
        assert!(CommutativeAlgebra::split(2).is_ok());
    }

    #[test]
    fn noncommutative_table_is_rejected() {
        let mut mult = vec![vec![ints(&[0, 0]); 2]; 2];
        mult[0][0] = ints(&[1, 0]);
        mult[0][1] = ints(&[0, 1]);
        mult[1][0] = ints(&[1, 0]);
        let err = CommutativeAlgebra::new("bad", vec!["a".into(), "b".into()], mult, ints(&[1, 0])).unwrap_err();
        assert!(matches!(err, Error::AlgebraLaw { law: "commutativity", .. }));
    }

    #[test]
    fn nonassociative_table_is_rejected() {
        // 1 unit, u·u = v, v·v = u, u·v = 0: (u·u)·v = v·v = u but u·(u·v) = 0
        let mut mult = vec![vec![ints(&[0, 0, 0]); 3]; 3];
        for t in 0..3 {
            let mut e = ints(&[0, 0, 0]);
            e[t] = int(1);
            mult[0][t] = e.clone();
            mult[t][0] = e;
        }
        mult[1][1] = ints(&[0, 0, 1]);
        mult[2][2] = ints(&[0, 1, 0]);
        let err = CommutativeAlgebra::new(
            "bad",
            vec!["1".into(), "u".into(), "v".into()],
            mult,
            ints(&[1, 0, 0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlgebraLaw { law: "associativity", .. }));
    }

    #[test]
    fn decompose_and_mult_operator() {
        let a2 = CommutativeAlgebra::quotient_poly(2).unwrap();
        assert_eq!(a2.decompose(&ints(&[1, 3])).unwrap(), ints(&[1, 3]));
        assert_eq!(a2.decompose(&ints(&[0, 0])).unwrap(), ints(&[0, 0]));
        assert!(a2.decompose(&ints(&[1])).is_err());
        let beta_t = a2.mult_operator(&ints(&[0, 1])).unwrap();
        assert_eq!(beta_t, RatMatrix::from_ints(2, &[&[0, 0], &[1, 0]]));
        assert_eq!(a2.mult_operator(a2.unit()).unwrap(), RatMatrix::identity(2));

        let a3 = CommutativeAlgebra::quotient_poly(3).unwrap();
        let t = a3.mult_operator(&ints(&[0, 1, 0])).unwrap();
        let t2 = a3.mult_operator(&ints(&[0, 0, 1])).unwrap();
        assert_eq!(t.mul(&t), t2);
    }

    #[test]
    fn virasoro_current_brackets() {
        let a2 = CommutativeAlgebra::quotient_poly(2).unwrap();
        let va = tensor_current(&builtins::virasoro(), &a2);
        assert_eq!(va.rank(), 2);
        assert_eq!(va.generator_names(), &["L⊗1".to_string(), "L⊗t".to_string()]);
        let lt = va.generator(1);
        assert!(va.bracket(&lt, &lt, Var::Lambda).unwrap().is_zero());
        let d_2l = &SPoly::var(Var::D) + &SPoly::var(Var::Lambda).scale(&int(2));
        assert_eq!(
            va.bracket(&va.generator(0), &lt, Var::Lambda).unwrap(),
            ConformalElement::single(2, 1, d_2l)
        );
        let a1 = CommutativeAlgebra::quotient_poly(1).unwrap();
        let same = tensor_current(&builtins::virasoro(), &a1);
        assert_eq!(same.structure(), builtins::virasoro().structure());
    }
}
