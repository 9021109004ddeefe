//! Algebra specification files.
//!
//! A spec file is TOML:
//!
//! ```toml
//! name = "neveu-schwarz"
//!
//! [generators]
//! L = "even"
//! G = "odd"
//!
//! [brackets]
//! "L,L" = "(d + 2*x) L"
//! "L,G" = "(d + 3/2*x) G"
//! "G,L" = "(1/2*d + 3/2*x) G"
//! "G,G" = "2 L"
//!
//! [coefficients]      # optional: ℚ[t]/(t^N) ...
//! quotient = 2
//!
//! [bounds]            # optional solver bounds
//! deg_d = 3
//! deg_l = 3
//! ```
//!
//! Omitted bracket pairs are zero. Instead of `quotient`, a coefficient
//! algebra can be given by `basis = [...]`, `unit = "..."` and a
//! `[coefficients.products]` table keyed by `"a,b"`; a product listed in one
//! order is used for both orders, and omitted products are zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use indexmap::IndexMap;
use lcsk_core::current::CommutativeAlgebra;
use lcsk_core::poly::{Rat, Var};
use lcsk_core::{ConformalElement, Error as CoreError, LcsAlgebra, Parity};
use num_traits::Zero;
use serde::Deserialize;
use serde_spanned::Spanned;

use crate::expr::{parse_element, print_element};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSpec {
    /// `ℚ[t]/(t^N)`.
    Quotient(usize),
    /// Explicit basis, unit and products; `products` holds pairs `s ≤ t`.
    Table {
        basis: Vec<String>,
        unit: Vec<Rat>,
        products: BTreeMap<(usize, usize), Vec<Rat>>,
    },
}

impl CoefficientSpec {
    pub fn build(&self) -> Result<CommutativeAlgebra, CoreError> {
        match self {
            CoefficientSpec::Quotient(n) => CommutativeAlgebra::quotient_poly(*n),
            CoefficientSpec::Table { basis, unit, products } => {
                let n = basis.len();
                let mut mult = vec![vec![vec![Rat::zero(); n]; n]; n];
                for (&(s, t), v) in products {
                    mult[s][t] = v.clone();
                    mult[t][s] = v.clone();
                }
                CommutativeAlgebra::new("A", basis.clone(), mult, unit.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpecBounds {
    pub deg_d: Option<usize>,
    pub deg_l: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub generators: Vec<(String, Parity)>,
    /// Nonzero bracket entries keyed by generator indices.
    pub brackets: BTreeMap<(usize, usize), ConformalElement>,
    pub coefficients: Option<CoefficientSpec>,
    pub bounds: SpecBounds,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Spanned<String>,
    #[serde(default)]
    generators: IndexMap<Spanned<String>, Spanned<String>>,
    #[serde(default)]
    brackets: IndexMap<Spanned<String>, Spanned<String>>,
    coefficients: Option<Spanned<RawCoefficients>>,
    bounds: Option<RawBounds>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficients {
    quotient: Option<Spanned<usize>>,
    basis: Option<Spanned<Vec<String>>>,
    unit: Option<Spanned<String>>,
    #[serde(default)]
    products: IndexMap<Spanned<String>, Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    deg_d: Option<usize>,
    deg_l: Option<usize>,
}

struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> SpecError {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |p| p + 1);
        SpecError {
            line,
            column: self.text[line_start..offset].chars().count() + 1,
            message: message.into(),
        }
    }

    fn at<T>(&self, s: &Spanned<T>, message: impl Into<String>) -> SpecError {
        self.error(s.span().start, message)
    }

    /// Offset of the first character inside a quoted string value.
    fn inner(&self, span: Range<usize>) -> usize {
        let quoted = self.text[span.clone()].starts_with(['"', '\'']);
        span.start + usize::from(quoted)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_pair<'n>(
    loc: &Locator,
    key: &Spanned<String>,
    names: &'n [String],
    what: &str,
) -> Result<(usize, usize), SpecError> {
    let parts: Vec<&str> = key.get_ref().split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(loc.at(key, format!("{what} key must look like \"a,b\", got \"{}\"", key.get_ref())));
    }
    let find = |p: &str| {
        names
            .iter()
            .position(|n| n == p)
            .ok_or_else(|| loc.at(key, format!("unknown {} '{p}' in key \"{}\"", what_of(what), key.get_ref())))
    };
    Ok((find(parts[0])?, find(parts[1])?))
}

fn what_of(what: &str) -> &'static str {
    if what == "bracket" {
        "generator"
    } else {
        "basis element"
    }
}

fn expression(
    loc: &Locator,
    value: &Spanned<String>,
    names: &[String],
    vars: &[Var],
) -> Result<ConformalElement, SpecError> {
    parse_element(value.get_ref(), names, vars)
        .map_err(|e| loc.error(loc.inner(value.span()) + e.offset, e.message))
}

fn constants(x: &ConformalElement) -> Vec<Rat> {
    x.coeffs()
        .iter()
        .map(|p| p.as_constant().expect("parsed without variables"))
        .collect()
}

/// Parse and validate a spec file: names, expressions, bracket parities and
/// coefficient-algebra laws. Lie conformal axioms are not checked here.
pub fn parse_spec(text: &str) -> Result<AlgebraSpecFile, SpecError> {
    let loc = Locator { text };
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let start = e.span().map_or(0, |s| s.start);
        loc.error(start, e.message().trim().to_string())
    })?;

    let mut generators = Vec::new();
    for (name, parity) in &raw.generators {
        let n = name.get_ref();
        if !is_identifier(n) {
            return Err(loc.at(name, format!("generator name '{n}' is not an identifier")));
        }
        if n == "d" || n == "x" {
            return Err(loc.at(name, format!("'{n}' is reserved for a variable")));
        }
        let p = match parity.get_ref().as_str() {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            other => return Err(loc.at(parity, format!("parity must be \"even\" or \"odd\", got \"{other}\""))),
        };
        generators.push((n.clone(), p));
    }
    let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
    let parities: Vec<Parity> = generators.iter().map(|(_, p)| *p).collect();

    let mut brackets = BTreeMap::new();
    let mut spans = BTreeMap::new();
    for (key, value) in &raw.brackets {
        let ij = split_pair(&loc, key, &names, "bracket")?;
        if spans.insert(ij, key.span()).is_some() {
            return Err(loc.at(key, format!("duplicate bracket entry \"{}\"", key.get_ref())));
        }
        let x = expression(&loc, value, &names, &[Var::D, Var::Lambda])?;
        if !x.is_zero() {
            brackets.insert(ij, x);
        }
    }

    let spec = AlgebraSpecFile {
        name: raw.name.get_ref().clone(),
        generators,
        brackets,
        coefficients: raw.coefficients.as_ref().map(|c| coefficient_spec(&loc, c)).transpose()?,
        bounds: raw
            .bounds
            .map(|b| SpecBounds {
                deg_d: b.deg_d,
                deg_l: b.deg_l,
            })
            .unwrap_or_default(),
    };

    if let Err(CoreError::ParityViolation { i, j, k }) = spec.try_algebra() {
        let span = spans[&(i, j)].clone();
        return Err(loc.error(
            span.start,
            format!(
                "bracket [{}, {}] has a component on {} of the wrong parity ({} ⊗ {} cannot give {})",
                names[i],
                names[j],
                names[k],
                parities[i].name(),
                parities[j].name(),
                parities[k].name()
            ),
        ));
    }
    Ok(spec)
}

fn coefficient_spec(loc: &Locator, c: &Spanned<RawCoefficients>) -> Result<CoefficientSpec, SpecError> {
    let raw = c.get_ref();
    let out = match (&raw.quotient, &raw.basis) {
        (Some(q), None) => {
            if raw.unit.is_some() || !raw.products.is_empty() {
                return Err(loc.at(q, "quotient cannot be combined with basis, unit or products"));
            }
            if *q.get_ref() == 0 {
                return Err(loc.at(q, "quotient ℚ[t]/(t^N) needs N ≥ 1"));
            }
            CoefficientSpec::Quotient(*q.get_ref())
        }
        (None, Some(basis)) => {
            let names = basis.get_ref().clone();
            if names.is_empty() {
                return Err(loc.at(basis, "basis must not be empty"));
            }
            for (i, n) in names.iter().enumerate() {
                if !is_identifier(n) || n == "d" || n == "x" {
                    return Err(loc.at(basis, format!("basis name '{n}' is not a usable identifier")));
                }
                if names[..i].contains(n) {
                    return Err(loc.at(basis, format!("duplicate basis name '{n}'")));
                }
            }
            let unit = raw
                .unit
                .as_ref()
                .ok_or_else(|| loc.at(c, "an explicit basis needs a unit"))?;
            let unit_vec = constants(&expression(loc, unit, &names, &[])?);
            let mut products = BTreeMap::new();
            for (key, value) in &raw.products {
                let (s, t) = split_pair(loc, key, &names, "product")?;
                let v = constants(&expression(loc, value, &names, &[])?);
                let k = (s.min(t), s.max(t));
                match products.get(&k) {
                    Some(prev) if *prev != v => {
                        return Err(loc.at(key, format!("product \"{}\" disagrees with the other order", key.get_ref())))
                    }
                    Some(_) if s == t => {
                        return Err(loc.at(key, format!("duplicate product \"{}\"", key.get_ref())))
                    }
                    _ => {}
                }
                products.insert(k, v);
            }
            products.retain(|_, v| v.iter().any(|x| !x.is_zero()));
            CoefficientSpec::Table {
                basis: names,
                unit: unit_vec,
                products,
            }
        }
        (Some(q), Some(_)) => return Err(loc.at(q, "give either quotient or basis, not both")),
        (None, None) => return Err(loc.at(c, "coefficients need quotient or basis")),
    };
    if let Err(e) = out.build() {
        return Err(loc.at(c, format!("coefficient algebra: {e}")));
    }
    Ok(out)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

impl AlgebraSpecFile {
    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    fn try_algebra(&self) -> Result<LcsAlgebra, CoreError> {
        let n = self.generators.len();
        let mut structure = vec![vec![ConformalElement::zero(n); n]; n];
        for (&(i, j), x) in &self.brackets {
            structure[i][j] = x.clone();
        }
        LcsAlgebra::new(
            self.name.clone(),
            self.generator_names(),
            self.generators.iter().map(|(_, p)| *p).collect(),
            structure,
        )
    }

    /// The algebra described by the file. Parsing has already validated it.
    pub fn algebra(&self) -> LcsAlgebra {
        self.try_algebra().expect("validated while parsing")
    }

    pub fn coefficient_algebra(&self) -> Option<CommutativeAlgebra> {
        self.coefficients
            .as_ref()
            .map(|c| c.build().expect("validated while parsing"))
    }

    /// Canonical text; parsing it gives back an equal value.
    pub fn to_canonical(&self) -> String {
        let names = self.generator_names();
        let mut out = format!("name = {}\n\n[generators]\n", quote(&self.name));
        for (n, p) in &self.generators {
            out += &format!("{n} = \"{}\"\n", p.name());
        }
        out += "\n[brackets]\n";
        for (&(i, j), x) in &self.brackets {
            out += &format!("\"{},{}\" = {}\n", names[i], names[j], quote(&print_element(x, &names)));
        }
        match &self.coefficients {
            None => {}
            Some(CoefficientSpec::Quotient(n)) => out += &format!("\n[coefficients]\nquotient = {n}\n"),
            Some(CoefficientSpec::Table { basis, unit, products }) => {
                let list: Vec<String> = basis.iter().map(|b| quote(b)).collect();
                let elem = |v: &Vec<Rat>| {
                    let x = ConformalElement::from_coeffs(v.iter().map(|c| lcsk_core::SPoly::constant(c.clone())).collect());
                    quote(&print_element(&x, basis))
                };
                out += &format!("\n[coefficients]\nbasis = [{}]\nunit = {}\n", list.join(", "), elem(unit));
                out += "\n[coefficients.products]\n";
                for (&(s, t), v) in products {
                    out += &format!("\"{},{}\" = {}\n", basis[s], basis[t], elem(v));
                }
            }
        }
        if self.bounds.deg_d.is_some() || self.bounds.deg_l.is_some() {
            out += "\n[bounds]\n";
            if let Some(d) = self.bounds.deg_d {
                out += &format!("deg_d = {d}\n");
            }
            if let Some(l) = self.bounds.deg_l {
                out += &format!("deg_l = {l}\n");
            }
        }
        out
    }
}
