//! Exact multivariate polynomials over the rationals.
//!
//! Every polynomial lives over one fixed variable set: the derivation `d`
//! (written ∂ in the mathematics) and the spectral variables `x`, `y`, `z`,
//! `w` (λ, μ, γ, η). A sixth variable `s` is reserved as scratch for
//! bracket evaluation at composite subscripts and never survives in a
//! returned value.
//!
//! Because the variable set is fixed, two `SPoly` values always share a
//! registry and mixing them cannot fail.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub const NVARS: usize = 6;

/// Build a rational from a numerator and a denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The derivation ∂.
    D,
    /// λ
    Lambda,
    /// μ
    Mu,
    /// γ
    Gamma,
    /// η
    Eta,
    /// Scratch subscript used internally by bracket evaluation.
    Scratch,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::D, Var::Lambda, Var::Mu, Var::Gamma, Var::Eta, Var::Scratch];
    pub const SPECTRAL: [Var; 4] = [Var::Lambda, Var::Mu, Var::Gamma, Var::Eta];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::D => "d",
            Var::Lambda => "x",
            Var::Mu => "y",
            Var::Gamma => "z",
            Var::Eta => "w",
            Var::Scratch => "s",
        }
    }

    /// Look up a user-visible variable by its rendered name. The scratch
    /// variable is not addressable.
    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| *v != Var::Scratch)
            .find(|v| v.name() == name)
    }

    pub fn is_spectral(self) -> bool {
        !matches!(self, Var::D)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, one slot per variable in `Var::ALL` order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Graded lexicographic order, largest first.
    fn grlex_desc(&self, other: &Monomial) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// Sparse polynomial in canonical form: no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly::default()
    }

    pub fn one() -> Self {
        SPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        SPoly::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        SPoly::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        SPoly::term(Rat::one(), Monomial::var_pow(v, 1))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Highest exponent of `v` among the terms; zero for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// True when every term uses only variables from `allowed`.
    pub fn only_uses(&self, allowed: &[Var]) -> bool {
        Var::ALL
            .iter()
            .filter(|v| !allowed.contains(v))
            .all(|v| !self.mentions(*v))
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> SPoly {
        if c.is_zero() {
            return SPoly::zero();
        }
        SPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rat, mono: &Monomial) -> SPoly {
        if c.is_zero() {
            return SPoly::zero();
        }
        SPoly {
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SPoly {
        let mut acc = SPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace every occurrence of `v` by the affine expression `e`.
    ///
    /// Coefficients live in a commutative ring, so substituting an
    /// expression that mentions ∂ (as in μ ↦ −λ−∂) is ordinary polynomial
    /// substitution; no operator ordering is involved.
    pub fn substitute(&self, v: Var, e: &Affine) -> SPoly {
        if !self.mentions(v) {
            return self.clone();
        }
        let e = e.to_poly();
        let mut powers: Vec<SPoly> = vec![SPoly::one()];
        let mut out = SPoly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * &e;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[v.index()] = 0;
            for (pm, pc) in &powers[k].terms {
                out.add_term(rest.mul(pm), c * pc);
            }
        }
        out
    }

    /// Split by monomials in `vars`: returns `{m: c_m}` with `Σ m·c_m = self`
    /// and no `c_m` mentioning a variable of `vars`.
    pub fn monomial_coeffs(&self, vars: &[Var]) -> BTreeMap<Monomial, SPoly> {
        let mut out: BTreeMap<Monomial, SPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = Monomial::one();
            let mut rest = *m;
            for v in vars {
                key.0[v.index()] = m.exp(*v);
                rest.0[v.index()] = 0;
            }
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Terms sorted in graded lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.grlex_desc(b.0));
        ts
    }

    /// True if this is a single term (useful when deciding on parentheses).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v.name())?;
        } else {
            write!(f, "{}^{}", v.name(), e)?;
        }
    }
    Ok(())
}

/// Canonical rendering: graded-lex order, `a/b` rationals, `*` between
/// factors, e.g. `d^2 + 3*d*x - 1/2*y`.
impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn add(self, rhs: &SPoly) -> SPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SPoly {
    type Output = SPoly;
    fn add(mut self, rhs: SPoly) -> SPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&SPoly> for SPoly {
    fn add_assign(&mut self, rhs: &SPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&SPoly> for SPoly {
    fn sub_assign(&mut self, rhs: &SPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn sub(self, rhs: &SPoly) -> SPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SPoly {
    type Output = SPoly;
    fn sub(mut self, rhs: SPoly) -> SPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &SPoly {
    type Output = SPoly;
    fn neg(self) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for SPoly {
    type Output = SPoly;
    fn neg(self) -> SPoly {
        -&self
    }
}

impl<'a> Mul<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn mul(self, rhs: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for SPoly {
    type Output = SPoly;
    fn mul(self, rhs: SPoly) -> SPoly {
        &self * &rhs
    }
}

impl From<Var> for SPoly {
    fn from(v: Var) -> Self {
        SPoly::var(v)
    }
}

/// Affine combination `c + Σ aᵥ·v`, the only substitution targets needed
/// (μ ↦ −λ−∂, ∂ ↦ ∂+λ, …).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: Rat,
    pub coeffs: [Rat; NVARS],
}

impl Affine {
    pub fn zero() -> Self {
        Affine {
            constant: Rat::zero(),
            coeffs: std::array::from_fn(|_| Rat::zero()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Affine {
            constant: c,
            ..Affine::zero()
        }
    }

    pub fn var(v: Var) -> Self {
        let mut a = Affine::zero();
        a.coeffs[v.index()] = Rat::one();
        a
    }

    /// Sum of signed variables, e.g. `Affine::sum(&[(Var::Lambda, 1), (Var::D, -1)])`.
    pub fn sum(parts: &[(Var, i64)]) -> Self {
        let mut a = Affine::zero();
        for (v, c) in parts {
            a.coeffs[v.index()] += int(*c);
        }
        a
    }

    pub fn mentions(&self, v: Var) -> bool {
        !self.coeffs[v.index()].is_zero()
    }

    pub fn to_poly(&self) -> SPoly {
        let mut p = SPoly::constant(self.constant.clone());
        for v in Var::ALL {
            let c = &self.coeffs[v.index()];
            if !c.is_zero() {
                p.add_term(Monomial::var_pow(v, 1), c.clone());
            }
        }
        p
    }
}

impl From<Var> for Affine {
    fn from(v: Var) -> Self {
        Affine::var(v)
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(mut self, rhs: Affine) -> Affine {
        self.constant += rhs.constant;
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(mut self) -> Affine {
        self.constant = -self.constant;
        for a in self.coeffs.iter_mut() {
            *a = -a.clone();
        }
        self
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(self, rhs: Affine) -> Affine {
        self + (-rhs)
    }
}
