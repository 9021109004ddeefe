//! Spec-file generators shared by the round-trip and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use lcsk_cli::spec::{CoefficientSpec, SpecBounds};
use lcsk_cli::AlgebraSpecFile;
use lcsk_core::poly::{Rat, Var};
use lcsk_core::{ConformalElement, Parity};
use num_traits::{One, Zero};
use proptest::prelude::*;

use crate::common::poly_in;

const NAMES: &[&str] = &["L", "G", "e", "h", "f", "J", "T", "a1", "b_2", "Phi"];

pub fn shipped_specs() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "lcs"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

/// `ℚ[t]/(t^n)` written out as a table on `t0, …, t(n−1)`.
pub fn truncated_table(n: usize) -> CoefficientSpec {
    let basis: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let mut unit = vec![Rat::zero(); n];
    unit[0] = Rat::one();
    let mut products = BTreeMap::new();
    for s in 0..n {
        for t in s..n {
            if s + t < n {
                let mut v = vec![Rat::zero(); n];
                v[s + t] = Rat::one();
                products.insert((s, t), v);
            }
        }
    }
    CoefficientSpec::Table { basis, unit, products }
}

/// `ℚⁿ` with orthogonal idempotents `p0, …`.
pub fn split_table(n: usize) -> CoefficientSpec {
    let basis: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut products = BTreeMap::new();
    for s in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[s] = Rat::one();
        products.insert((s, s), v);
    }
    CoefficientSpec::Table {
        basis,
        unit: vec![Rat::one(); n],
        products,
    }
}

pub fn coefficients() -> impl Strategy<Value = Option<CoefficientSpec>> {
    prop_oneof![
        Just(None),
        (1usize..=4).prop_map(|n| Some(CoefficientSpec::Quotient(n))),
        (1usize..=3).prop_map(|n| Some(truncated_table(n))),
        (1usize..=3).prop_map(|n| Some(split_table(n))),
    ]
}

pub fn spec_file() -> impl Strategy<Value = AlgebraSpecFile> {
    let gens = prop::sample::subsequence(NAMES, 0..=3)
        .prop_shuffle()
        .prop_flat_map(|names| {
            let n = names.len();
            (Just(names), prop::collection::vec(any::<bool>(), n))
        });
    (gens, coefficients(), prop::option::of(0usize..5), prop::option::of(0usize..5), "[a-zA-Z0-9 _\"\\\\é-]{1,12}")
        .prop_flat_map(|((names, odd), coefficients, deg_d, deg_l, name)| {
            let n = names.len();
            let parities: Vec<Parity> = odd.iter().map(|&o| if o { Parity::Odd } else { Parity::Even }).collect();
            let entries = prop::collection::vec(
                prop::collection::vec(poly_in(&[Var::D, Var::Lambda], 2, 2), n),
                n * n,
            );
            (Just((names, parities, coefficients, deg_d, deg_l, name)), entries)
        })
        .prop_map(|((names, parities, coefficients, deg_d, deg_l, name), entries)| {
            let n = names.len();
            let mut brackets = BTreeMap::new();
            for i in 0..n {
                for j in 0..n {
                    let mut coeffs = entries[i * n + j].clone();
                    for (k, c) in coeffs.iter_mut().enumerate() {
                        if parities[i].plus(parities[j]) != parities[k] {
                            *c = lcsk_core::SPoly::zero();
                        }
                    }
                    let x = ConformalElement::from_coeffs(coeffs);
                    if !x.is_zero() {
                        brackets.insert((i, j), x);
                    }
                }
            }
            AlgebraSpecFile {
                name,
                generators: names.iter().map(|s| s.to_string()).zip(parities).collect(),
                brackets,
                coefficients,
                bounds: SpecBounds { deg_d, deg_l },
            }
        })
}

/// Same content, different surface: comments, spacing and inline tables.
pub fn noisy(text: &str) -> String {
    let mut out = String::from("# generated\n\n");
    for line in text.lines() {
        if line.starts_with('"') {
            out += &line.replacen(" = ", "   =\t", 1);
        } else {
            out += line;
        }
        if !line.is_empty() && !line.starts_with('[') {
            out += "   # trailing";
        }
        out += "\n";
    }
    out
}

