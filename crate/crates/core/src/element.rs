//! Elements of a free ℚ[∂]-module of finite rank.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::poly::{Affine, Monomial, Rat, SPoly, Var};

/// The Z₂-degree of a generator or a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn plus(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ other.bit())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// `(−1)^(a·b)` as ±1.
pub fn sign(a: Parity, b: Parity) -> i64 {
    if a.bit() & b.bit() == 1 {
        -1
    } else {
        1
    }
}

/// Parity of an element as a whole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementParity {
    Even,
    Odd,
    Mixed,
}

/// `Σ coeffs[i]·eᵢ`, coefficients polynomial in ∂ and any spectral variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConformalElement {
    coeffs: Vec<SPoly>,
}

impl ConformalElement {
    pub fn zero(rank: usize) -> Self {
        ConformalElement {
            coeffs: vec![SPoly::zero(); rank],
        }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        let mut e = ConformalElement::zero(rank);
        e.coeffs[i] = SPoly::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<SPoly>) -> Self {
        ConformalElement { coeffs }
    }

    /// `p·eᵢ`
    pub fn single(rank: usize, i: usize, p: SPoly) -> Self {
        let mut e = ConformalElement::zero(rank);
        e.coeffs[i] = p;
        e
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[SPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &SPoly {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<SPoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SPoly::is_zero)
    }

    /// Indices of generators carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    /// Multiply every coefficient by a polynomial scalar.
    pub fn mul_poly(&self, p: &SPoly) -> Self {
        ConformalElement {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ConformalElement {
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&crate::poly::int(c))
    }

    /// `∂·x`
    pub fn partial(&self) -> Self {
        self.mul_poly(&SPoly::var(Var::D))
    }

    pub fn substitute(&self, v: Var, e: &Affine) -> Self {
        ConformalElement {
            coeffs: self.coeffs.iter().map(|c| c.substitute(v, e)).collect(),
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.coeffs.iter().any(|c| c.mentions(v))
    }

    /// Split into coefficient elements per monomial in `vars`.
    pub fn monomial_coeffs(&self, vars: &[Var]) -> BTreeMap<Monomial, ConformalElement> {
        let rank = self.rank();
        let mut out: BTreeMap<Monomial, ConformalElement> = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, p) in c.monomial_coeffs(vars) {
                out.entry(m).or_insert_with(|| ConformalElement::zero(rank)).coeffs[i] = p;
            }
        }
        out
    }

    /// Canonical text form with the given generator names, e.g.
    /// `(d + 2*x) L + 2 G`; the zero element renders as `0`.
    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|i| {
                let p = self.coeff(i);
                if p.as_constant().is_some_and(|c| c == Rat::from_integer(1.into())) {
                    names[i].clone()
                } else {
                    format!("({p}) {}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn add_assign(&mut self, other: &ConformalElement) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &ConformalElement) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }
}

impl Add for &ConformalElement {
    type Output = ConformalElement;
    fn add(self, rhs: &ConformalElement) -> ConformalElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &ConformalElement {
    type Output = ConformalElement;
    fn sub(self, rhs: &ConformalElement) -> ConformalElement {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &ConformalElement {
    type Output = ConformalElement;
    fn neg(self) -> ConformalElement {
        ConformalElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
