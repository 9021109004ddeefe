//! Command dispatch.

use lcsk_core::current::{tensor_current, CommutativeAlgebra};
use lcsk_core::solvers::{solve_biderivations, solve_centroid_with, solve_commuting, CentroidSides};
use lcsk_core::verify::{
    verify_centralizer_residual, verify_centroid_form, verify_commuting_in_centroid,
    verify_current_decomposition, verify_polarization, verify_swap_identity,
};
use lcsk_core::{BilinearConfMap, Bounds, Convention, LcsAlgebra, LinearConfMap};
use sha2::{Digest, Sha256};

use crate::report::{CheckResult, CheckStatus, RunReport};
use crate::spec::AlgebraSpecFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Skew-symmetry and Jacobi identity.
    Check,
    /// Degree-bounded center and perfectness.
    Center,
    /// Degree-bounded centroid.
    Centroid,
    /// Skew-symmetric super-biderivations.
    Bider,
    /// Linear super-commuting maps.
    Commuting,
    /// Biderivations of the current algebra L ⊗ A.
    Current,
    /// Every applicable structural check.
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Center => "center",
            Command::Centroid => "centroid",
            Command::Bider => "bider",
            Command::Commuting => "commuting",
            Command::Current => "current",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub deg_d: Option<usize>,
    pub deg_l: Option<usize>,
    pub tensor: Option<usize>,
    pub convention: Convention,
}

pub fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::PartialCommuting => "partial",
        Convention::LambdaShifted => "shifted",
    }
}

pub fn digest(input: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(input)))
}

fn render_linear(m: &LinearConfMap, names: &[String]) -> String {
    let parts: Vec<String> = (0..m.rank())
        .map(|i| format!("{} -> {}", names[i], m.image_of_generator(i).display(names)))
        .collect();
    parts.join(", ")
}

fn render_bilinear(m: &BilinearConfMap, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, row) in m.tensor().iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() {
                parts.push(format!("({}, {}) -> {}", names[i], names[j], e.display(names)));
            }
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

struct Runner {
    report: RunReport,
    bounds: Bounds,
    convention: Convention,
}

impl Runner {
    fn push(&mut self, r: CheckResult) {
        self.report.push(r);
    }

    /// Axiom checks; `false` means later solvers must not run.
    fn axioms(&mut self, alg: &LcsAlgebra) -> bool {
        let names = alg.generator_names();
        let skew = CheckResult::from_axiom(&alg.check_skew(), alg.name(), names);
        let jacobi = CheckResult::from_axiom(&alg.check_jacobi(), alg.name(), names);
        let ok = skew.ok() && jacobi.ok();
        self.push(skew);
        self.push(jacobi);
        ok
    }

    fn gate(&mut self, alg: &LcsAlgebra) -> bool {
        if self.axioms(alg) {
            return true;
        }
        let mut r = CheckResult::new("solvers", alg.name());
        r.status = CheckStatus::Failed;
        r.notes.push("refused: solvers need a Lie conformal superalgebra, and the axioms above fail".into());
        self.push(r);
        false
    }

    fn center(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let z = alg.center(self.bounds.deg_d);
        let mut r = CheckResult::new("center", alg.name());
        r.notes.push(format!("dimension {} at deg_d = {}", z.dimension(), self.bounds.deg_d));
        r.items = z.basis.iter().map(|x| x.display(names)).collect();
        self.push(r);
        let p = alg.is_perfect(self.bounds.deg_d);
        let mut r = CheckResult::new("perfect", alg.name());
        r.notes.push(match p.witness {
            None => "perfect".to_string(),
            Some(w) => format!("not perfect: {} is outside the derived submodule", names[w]),
        });
        self.push(r);
    }

    fn centroid(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let c = solve_centroid_with(alg, self.bounds, self.convention, CentroidSides::Both);
        let mut r = CheckResult::new("centroid", alg.name());
        r.notes.push(format!("dimension {} (even {}, odd {})", c.dimension(), c.even.len(), c.odd.len()));
        for (label, maps) in [("even", &c.even), ("odd", &c.odd)] {
            for (k, m) in maps.iter().enumerate() {
                r.items.push(format!("{label} {k}: {}", render_linear(m, names)));
            }
        }
        self.push(r);
    }

    fn bider(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let b = solve_biderivations(alg, self.bounds);
        let mut r = CheckResult::new("biderivations", alg.name());
        r.notes.push(format!("dimension {} (even {}, odd {})", b.dimension(), b.even.len(), b.odd.len()));
        for (label, maps) in [("even", &b.even), ("odd", &b.odd)] {
            for (k, m) in maps.iter().enumerate() {
                r.items.push(format!("{label} {k}: {}", render_bilinear(m, names)));
            }
        }
        for v in &b.second_leibniz_violations {
            r.status = CheckStatus::Failed;
            r.residuals.push(crate::report::RenderedResidual {
                context: format!("second Leibniz rule, {}", v.context),
                value: v.value.display(names),
            });
        }
        self.push(r);
    }

    fn commuting(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let c = solve_commuting(alg, self.bounds, self.convention);
        let mut r = CheckResult::new("commuting-maps", alg.name());
        r.notes.push(format!("dimension {}", c.dimension()));
        r.items = c
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| format!("{k}: {}", render_linear(m, names)))
            .collect();
        self.push(r);
    }

    /// Biderivation-level checks: swap identity and centralizer residual for
    /// every basis biderivation.
    fn bider_checks(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let b = solve_biderivations(alg, self.bounds);
        let z = alg.center(self.bounds.deg_d);
        for (label, maps) in [("even", &b.even), ("odd", &b.odd)] {
            for (k, phi) in maps.iter().enumerate() {
                let tag = format!("{label} biderivation {k}");
                let swap = verify_swap_identity(alg, phi);
                self.push(CheckResult::from_verifier(&swap, Some(&tag), alg.name(), names));
                let res = verify_centralizer_residual(alg, phi, &z);
                self.push(CheckResult::from_verifier(&res, Some(&tag), alg.name(), names));
            }
        }
    }

    fn commuting_checks(&mut self, alg: &LcsAlgebra) {
        let names = alg.generator_names();
        let c = solve_commuting(alg, self.bounds, self.convention);
        for (k, psi) in c.maps.iter().enumerate() {
            let r = verify_polarization(alg, psi);
            self.push(CheckResult::from_verifier(&r, Some(&format!("commuting map {k}")), alg.name(), names));
        }
        let r = verify_commuting_in_centroid(alg, self.bounds, self.convention);
        self.push(CheckResult::from_verifier(&r, None, alg.name(), names));
    }

    fn structure_checks(&mut self, alg: &LcsAlgebra) {
        self.center(alg);
        let names = alg.generator_names();
        let r = verify_centroid_form(alg, self.bounds);
        self.push(CheckResult::from_verifier(&r, None, alg.name(), names));
        self.bider_checks(alg);
        self.commuting_checks(alg);
    }

    /// Returns the current algebra if it passed the axiom gate.
    fn current(&mut self, l: &LcsAlgebra, a: &CommutativeAlgebra) -> Option<LcsAlgebra> {
        let la = tensor_current(l, a);
        if !self.gate(&la) {
            return None;
        }
        let r = verify_current_decomposition(l, a, self.bounds);
        self.push(CheckResult::from_verifier(&r, None, la.name(), la.generator_names()));
        Some(la)
    }
}

/// Run `command` on a parsed spec. `input` is the raw file, for the digest.
/// Returns a usage message when the command cannot run at all.
pub fn run(command: Command, spec: &AlgebraSpecFile, input: &[u8], opts: &Options) -> Result<RunReport, String> {
    let bounds = Bounds::new(
        opts.deg_d.or(spec.bounds.deg_d).unwrap_or(3),
        opts.deg_l.or(spec.bounds.deg_l).unwrap_or(3),
    );
    let coefficients = match opts.tensor {
        Some(0) => return Err("--tensor needs N ≥ 1".into()),
        Some(n) => Some(CommutativeAlgebra::quotient_poly(n).map_err(|e| e.to_string())?),
        None => spec.coefficient_algebra(),
    };
    if command == Command::Current && coefficients.is_none() {
        return Err("current needs a coefficient algebra: add a [coefficients] section or pass --tensor N".into());
    }
    let alg = spec.algebra();
    let mut runner = Runner {
        report: RunReport::new(command.name(), alg.name(), digest(input), bounds, convention_name(opts.convention)),
        bounds,
        convention: opts.convention,
    };
    match command {
        Command::Check => {
            runner.axioms(&alg);
            if let Some(a) = &coefficients {
                runner.axioms(&tensor_current(&alg, a));
            }
        }
        Command::Center => {
            if runner.gate(&alg) {
                runner.center(&alg);
            }
        }
        Command::Centroid => {
            if runner.gate(&alg) {
                runner.centroid(&alg);
            }
        }
        Command::Bider => {
            if runner.gate(&alg) {
                runner.bider(&alg);
            }
        }
        Command::Commuting => {
            if runner.gate(&alg) {
                runner.commuting(&alg);
            }
        }
        Command::Current => {
            let a = coefficients.as_ref().expect("checked above");
            if runner.gate(&alg) {
                runner.current(&alg, a);
            }
        }
        Command::VerifyAll => {
            if runner.gate(&alg) {
                runner.structure_checks(&alg);
                if let Some(la) = coefficients.as_ref().and_then(|a| runner.current(&alg, a)) {
                    runner.structure_checks(&la);
                }
            }
        }
    }
    Ok(runner.report)
}
