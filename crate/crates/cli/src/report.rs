//! Machine-readable reports.

use serde::Serialize;
use std::collections::BTreeMap;

/// Report for one model run. Deterministic for a given input file and
/// configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub variant: String,
    /// Number of stage snapshots, the initial interpretation included.
    pub stages: usize,
    /// Stage index at which the sequence became stationary.
    pub fixed_point: usize,
    /// Classification per named sentence.
    pub classifications: BTreeMap<String, String>,
    /// Paradoxicality rank per named sentence that has one.
    pub ranks: BTreeMap<String, usize>,
    pub invariants: Vec<InvariantResult>,
    pub proofs: Vec<ProofResult>,
    pub config: ReportConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofResult {
    pub name: String,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub defs: String,
    pub defs_sha256: String,
    pub domain: u64,
    pub variant: String,
    pub universe_size: usize,
    pub named_sentences: usize,
    /// Length of the named iterated-ascription chain, when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcgee_chain: Option<usize>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.invariants.iter().all(|i| i.pass)
            && self
                .proofs
                .iter()
                .all(|p| p.accepted && p.cross_valid.unwrap_or(true))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "variant {}  stages {}  fixed point at {}\n",
            self.variant, self.stages, self.fixed_point
        ));
        out.push_str(&format!(
            "universe {} sentences ({} named), domain bound {}\n",
            self.config.universe_size, self.config.named_sentences, self.config.domain
        ));
        out.push_str("\nclassifications:\n");
        for (name, class) in &self.classifications {
            match self.ranks.get(name) {
                Some(r) => out.push_str(&format!("  {name:<14} {class} (rank {r})\n")),
                None => out.push_str(&format!("  {name:<14} {class}\n")),
            }
        }
        if !self.invariants.is_empty() {
            out.push_str("\ninvariants:\n");
            for inv in &self.invariants {
                let mark = if inv.pass { "pass" } else { "FAIL" };
                match &inv.detail {
                    Some(d) => out.push_str(&format!("  [{mark}] {} — {d}\n", inv.name)),
                    None => out.push_str(&format!("  [{mark}] {}\n", inv.name)),
                }
            }
        }
        if !self.proofs.is_empty() {
            out.push_str("\nproofs:\n");
            for p in &self.proofs {
                let mark = if p.accepted { "accepted" } else { "rejected" };
                let cross = match p.cross_valid {
                    Some(true) => ", cross-valid",
                    Some(false) => ", cross-validation FAILED",
                    None => "",
                };
                match &p.error {
                    Some(e) => out.push_str(&format!("  {}: {mark}{cross} ({e})\n", p.name)),
                    None => out.push_str(&format!("  {}: {mark}{cross}\n", p.name)),
                }
            }
        }
        out
    }
}

/// Report for a side-by-side run of both variants.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub tp: Report,
    pub tp_plus: Report,
    /// Named sentences whose classification differs between variants.
    pub differences: BTreeMap<String, (String, String)>,
}

impl CompareReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("== tp ==\n");
        out.push_str(&self.tp.render_text());
        out.push_str("\n== tp-plus ==\n");
        out.push_str(&self.tp_plus.render_text());
        out.push_str("\n== classification differences ==\n");
        if self.differences.is_empty() {
            out.push_str("  none\n");
        }
        for (name, (a, b)) in &self.differences {
            out.push_str(&format!("  {name}: tp {a} / tp-plus {b}\n"));
        }
        out
    }
}
