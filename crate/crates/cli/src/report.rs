//! The report document shared by the text and JSON outputs.

use std::fmt::Write as _;

use kahler_core::binomial2;
use kahler_core::lie2::Lie2Analysis;
use kahler_core::obstructions::{ObstructionReport, Verdict};
use kahler_core::scalar::format_fraction;
use kahler_core::Presentation;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalModelDoc {
    #[serde(rename = "dimV1")]
    pub dim_v1: usize,
    #[serde(rename = "dimV2")]
    pub dim_v2: usize,
    /// `d(y_a)` for each degree-two generator, in `x_i ^ x_j` coordinates.
    pub differential: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub code: String,
    pub theorem: String,
    pub detail: String,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        VerdictDoc {
            code: v.code.as_str().to_string(),
            theorem: v.citation.label().to_string(),
            detail: v.detail.clone(),
        }
    }
}

/// Field order here is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub presentation: String,
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub q: usize,
    pub dim_ker_d0: usize,
    pub dim_ker_d1: usize,
    #[serde(rename = "dim_W")]
    pub dim_w: usize,
    pub dim_gamma2_gamma3: usize,
    pub grl_free: bool,
    pub surface_genus: Option<usize>,
    pub m_max: usize,
    pub excluded_genera: Vec<usize>,
    pub minimal_model: MinimalModelDoc,
    pub verdicts: Vec<VerdictDoc>,
    pub overall: String,
}

impl ReportDocument {
    pub fn build(p: &Presentation, a: &Lie2Analysis, r: &ObstructionReport) -> Self {
        let inv = &r.invariants;
        ReportDocument {
            schema: SCHEMA_VERSION,
            presentation: p.to_string(),
            n: inv.n,
            s: inv.s,
            k: inv.k,
            q: inv.q,
            dim_ker_d0: inv.dim_ker_d0,
            dim_ker_d1: inv.dim_ker_d1,
            dim_w: inv.dim_w,
            dim_gamma2_gamma3: inv.dim2,
            grl_free: inv.grl_free,
            surface_genus: inv.surface_genus,
            m_max: r.m_max,
            excluded_genera: r.fibered.excluded.clone(),
            minimal_model: MinimalModelDoc {
                dim_v1: a.model.dim_v1,
                dim_v2: a.model.dim_v2,
                differential: a
                    .model
                    .generator_images()
                    .iter()
                    .map(|row| row.iter().map(format_fraction).collect())
                    .collect(),
            },
            verdicts: r.verdicts.iter().map(VerdictDoc::from).collect(),
            overall: r.overall.as_str().to_string(),
        }
    }

    /// Re-checks the dimension identities between the fields.
    pub fn check_identities(&self) -> Result<(), String> {
        let checks = [
            ("q = n - k", self.q + self.k == self.n),
            ("dim ker d0 = s - k", self.dim_ker_d0 + self.k == self.s),
            (
                "dim W + dim ker d1 = dim ker d0",
                self.dim_w + self.dim_ker_d1 == self.dim_ker_d0,
            ),
            (
                "dim Gamma_2/Gamma_3 = C(q,2) - dim ker d0 + dim ker d1",
                self.dim_gamma2_gamma3 + self.dim_ker_d0 == binomial2(self.q) + self.dim_ker_d1,
            ),
            ("grl free iff dim W = 0", self.grl_free == (self.dim_w == 0)),
            ("dimV1 = q", self.minimal_model.dim_v1 == self.q),
            (
                "dimV2 = dim Gamma_2/Gamma_3",
                self.minimal_model.dim_v2 == self.dim_gamma2_gamma3,
            ),
            (
                "differential shape",
                self.minimal_model.differential.len() == self.minimal_model.dim_v2
                    && self
                        .minimal_model
                        .differential
                        .iter()
                        .all(|row| row.len() == binomial2(self.q)),
            ),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(format!("report identity violated: {name}")),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self, explain: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "presentation:");
        for line in self.presentation.lines() {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "s: {}", self.s);
        let _ = writeln!(out, "k: {}", self.k);
        let _ = writeln!(out, "q (dim Gamma_1/Gamma_2): {}", self.q);
        let _ = writeln!(out, "dim ker d0: {}", self.dim_ker_d0);
        let _ = writeln!(out, "dim ker d1: {}", self.dim_ker_d1);
        let _ = writeln!(out, "dim W: {}", self.dim_w);
        let _ = writeln!(out, "dim Gamma_2/Gamma_3: {}", self.dim_gamma2_gamma3);
        let _ = writeln!(out, "grl free: {}", self.grl_free);
        let genus = self
            .surface_genus
            .map_or_else(|| "none".to_string(), |g| g.to_string());
        let _ = writeln!(out, "surface genus: {genus}");
        let _ = writeln!(out, "m_max: {}", self.m_max);
        let _ = writeln!(out, "excluded genera: {}", join(&self.excluded_genera));
        let _ = writeln!(
            out,
            "minimal model: dimV1 = {}, dimV2 = {}",
            self.minimal_model.dim_v1, self.minimal_model.dim_v2
        );
        for (a, row) in self.minimal_model.differential.iter().enumerate() {
            let _ = writeln!(out, "  d(y{}) = [{}]", a + 1, row.join(", "));
        }
        let _ = writeln!(out, "verdicts:");
        if self.verdicts.is_empty() {
            let _ = writeln!(out, "  (none)");
        }
        for v in &self.verdicts {
            if explain {
                let _ = writeln!(out, "  {} [{}]: {}", v.code, v.theorem, v.detail);
            } else {
                let _ = writeln!(out, "  {}", v.code);
            }
        }
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}

fn join(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "none".to_string();
    }
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
