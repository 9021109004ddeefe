//! Run reports and their text and JSON renderings.

use lcsk_core::report::{AxiomReport, Decomposition, Residual, Status, VerifierReport};
use lcsk_core::Bounds;
use serde::Serialize;

/// Identifies the layout described by `schema/report.schema.json`.
pub const FORMAT: &str = "lcsk-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub format: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub algebra: String,
    /// `sha256:` followed by the hex digest of the spec file bytes.
    pub input_digest: String,
    pub bounds: ReportBounds,
    pub results: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBounds {
    pub deg_d: usize,
    pub deg_l: usize,
    pub convention: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Passed,
    Failed,
    NotApplicable,
}

impl From<Status> for CheckStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Passed => CheckStatus::Passed,
            Status::Failed => CheckStatus::Failed,
            Status::NotApplicable => CheckStatus::NotApplicable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Algebra the check ran on.
    pub subject: String,
    pub status: CheckStatus,
    pub residuals: Vec<RenderedResidual>,
    pub decompositions: Vec<RenderedDecomposition>,
    /// Solution bases and similar listings, one canonical line each.
    pub items: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedResidual {
    pub context: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedDecomposition {
    pub subject: String,
    pub coefficients: Vec<RenderedCoefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedCoefficient {
    pub label: String,
    /// Exact rational, e.g. `-3/2`.
    pub value: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, subject: &str) -> Self {
        CheckResult {
            name: name.into(),
            subject: subject.to_string(),
            status: CheckStatus::Passed,
            residuals: Vec::new(),
            decompositions: Vec::new(),
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.status != CheckStatus::Failed
    }

    pub fn from_axiom(r: &AxiomReport, subject: &str, names: &[String]) -> Self {
        let mut out = CheckResult::new(r.axiom, subject);
        out.residuals = render_residuals(&r.residuals, names);
        if !r.passed() {
            out.status = CheckStatus::Failed;
        }
        out
    }

    pub fn from_verifier(r: &VerifierReport, label: Option<&str>, subject: &str, names: &[String]) -> Self {
        let name = match label {
            Some(l) => format!("{} [{l}]", r.name),
            None => r.name.to_string(),
        };
        CheckResult {
            name,
            subject: subject.to_string(),
            status: r.status.into(),
            residuals: render_residuals(&r.residuals, names),
            decompositions: r.decompositions.iter().map(render_decomposition).collect(),
            items: Vec::new(),
            notes: r.notes.clone(),
        }
    }
}

fn render_residuals(rs: &[Residual], names: &[String]) -> Vec<RenderedResidual> {
    rs.iter()
        .map(|r| RenderedResidual {
            context: r.context.clone(),
            value: r.value.display(names),
        })
        .collect()
}

fn render_decomposition(d: &Decomposition) -> RenderedDecomposition {
    RenderedDecomposition {
        subject: d.subject.clone(),
        coefficients: d
            .coefficients
            .iter()
            .map(|(k, v)| RenderedCoefficient {
                label: k.clone(),
                value: v.to_string(),
            })
            .collect(),
    }
}

impl RunReport {
    pub fn new(command: &str, algebra: &str, digest: String, bounds: Bounds, convention: &'static str) -> Self {
        RunReport {
            format: FORMAT,
            tool: "lcsk",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            algebra: algebra.to_string(),
            input_digest: digest,
            bounds: ReportBounds {
                deg_d: bounds.deg_d,
                deg_l: bounds.deg_l,
                convention,
            },
            results: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, r: CheckResult) {
        self.passed &= r.ok();
        self.results.push(r);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}  {}  {}\ninput {}\nbounds deg_d={} deg_l={} convention={}\n\n",
            self.tool,
            self.version,
            self.command,
            self.algebra,
            self.input_digest,
            self.bounds.deg_d,
            self.bounds.deg_l,
            self.bounds.convention
        );
        for r in &self.results {
            let tag = match r.status {
                CheckStatus::Passed => "PASS",
                CheckStatus::Failed => "FAIL",
                CheckStatus::NotApplicable => "N/A ",
            };
            out += &format!("{tag}  {}  ({})\n", r.name, r.subject);
            for n in &r.notes {
                out += &format!("      {n}\n");
            }
            for i in &r.items {
                out += &format!("      {i}\n");
            }
            for d in &r.decompositions {
                let terms: Vec<String> = d.coefficients.iter().map(|c| format!("{} * {}", c.value, c.label)).collect();
                out += &format!("      {} = {}\n", d.subject, terms.join(" + "));
            }
            for res in &r.residuals {
                out += &format!("      residual {}: {}\n", res.context, res.value);
            }
        }
        out += &format!("\noverall: {}\n", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
