//! Command implementations behind the thin argument parser.

use crate::report::{CompareReport, InvariantResult, ProofResult, Report, ReportConfig};
use anyhow::{anyhow, Context, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;
use tp_core::calculus::{
    audit_fixed_point, check_proof, cross_validate, from_script, parse_script, CheckOptions,
    SystemId,
};
use tp_core::jump::{classify, lfp, Classification, StageSequence, Variant};
use tp_core::semantics::{value, TruthValue};
use tp_core::syntax::{
    is_base_paradoxical, negate, parse_defs_with_domain, pi, CloseLimits, Formula, Nat, Term,
    Universe,
};
use tp_core::zoo;

/// Load, close, and iterate a definition file.
pub fn build_model(
    defs_text: &str,
    domain: Option<Nat>,
    variant: Variant,
) -> Result<(Universe, StageSequence)> {
    let env = parse_defs_with_domain(defs_text, domain).context("parsing definitions")?;
    let uni = Universe::close(env, CloseLimits::default()).context("closing the universe")?;
    let seq = lfp(&uni, variant).context("iterating to the fixed point")?;
    Ok((uni, seq))
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn named_classifications(
    uni: &Universe,
    seq: &StageSequence,
) -> (BTreeMap<String, String>, BTreeMap<String, usize>) {
    let mut classes = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for name in uni.env().names() {
        let code = uni.env().code_of_name(name).expect("named code");
        let class = classify(uni, seq, code).expect("named codes are in the universe");
        let label = match class {
            Classification::True => "true".to_string(),
            Classification::False => "false".to_string(),
            Classification::Paradoxical(r) => {
                ranks.insert(name.clone(), r);
                "paradoxical".to_string()
            }
            Classification::Independent => "independent".to_string(),
        };
        classes.insert(name.clone(), label);
    }
    (classes, ranks)
}

/// The named invariant battery checked on every model run.
pub fn run_invariants(uni: &Universe, seq: &StageSequence) -> Result<Vec<InvariantResult>> {
    let mut out = Vec::new();
    let mut push = |name: &str, pass: bool, detail: Option<String>| {
        out.push(InvariantResult {
            name: name.to_string(),
            pass,
            detail,
        });
    };
    let stages = seq.stages();
    let fp = seq.fixed_point();

    let consistent = stages.iter().all(tp_core::semantics::is_consistent);
    push("stage_consistency", consistent, None);

    let mut sound = true;
    for m in stages {
        if !tp_core::semantics::is_sound(uni, m)? {
            sound = false;
        }
    }
    push("stage_soundness", sound, None);

    let mut increasing = true;
    for pair in stages.windows(2) {
        if !pair[0].le(&pair[1]) {
            increasing = false;
        }
    }
    push("weakly_increasing", increasing, None);

    // P⁻ is the classical region: equal to T⁺ ∪ T⁻ for the plain jump,
    // a superset under the starred one.
    let seed = tp_core::jump::star_seed(uni);
    let mut p_minus_law = true;
    for m in &stages[1..] {
        let union: std::collections::BTreeSet<_> = m.t_plus.union(&m.t_minus).copied().collect();
        match seq.variant() {
            Variant::Tp => {
                if m.p_minus != union {
                    p_minus_law = false;
                }
            }
            Variant::TpPlus => {
                let expected: std::collections::BTreeSet<_> = union.union(&seed).copied().collect();
                if m.p_minus != expected {
                    p_minus_law = false;
                }
            }
        }
    }
    push("p_minus_law", p_minus_law, None);

    let mut anti_ext = true;
    for m in &stages[1..] {
        for (code, phi) in uni.members() {
            let neg_in = uni
                .code_of(&negate(phi))
                .map(|c| m.t_plus.contains(&c))
                .unwrap_or(false);
            if m.t_minus.contains(&code) != neg_in {
                anti_ext = false;
            }
        }
    }
    push("anti_extension_law", anti_ext, None);

    let mut disjoint = true;
    for m in stages {
        if m.t_plus.iter().any(|c| m.p_plus.contains(c))
            || m.t_minus.iter().any(|c| m.p_plus.contains(c))
        {
            disjoint = false;
        }
    }
    push("classical_disjoint_from_paradoxical", disjoint, None);

    let mut symmetric = true;
    for (code, phi) in uni.members() {
        let neg = uni.code_of(&negate(phi)).expect("negation closure");
        if fp.p_plus.contains(&code) != fp.p_plus.contains(&neg) {
            symmetric = false;
        }
    }
    push("negation_symmetry_at_fixed_point", symmetric, None);

    let mut no_p_literal = true;
    for (code, phi) in uni.members() {
        if matches!(phi, Formula::Par(_) | Formula::NotPar(_)) && fp.p_plus.contains(&code) {
            no_p_literal = false;
        }
    }
    push("no_p_literal_paradox", no_p_literal, None);

    let mut base_never_classical = true;
    for m in stages {
        for (code, _) in uni.members() {
            if pi(uni, code) && (m.t_plus.contains(&code) || m.t_minus.contains(&code)) {
                base_never_classical = false;
            }
        }
    }
    push(
        "base_paradoxicals_never_classical",
        base_never_classical,
        None,
    );

    let mut transparent = true;
    for (code, phi) in uni.members() {
        let direct = value(uni, fp, phi)?;
        let ascribed = value(uni, fp, &Formula::Tr(Term::Num(code)))?;
        if direct != ascribed {
            transparent = false;
        }
        let p_value = value(uni, fp, &Formula::Par(Term::Num(code)))?;
        let expected = if fp.p_plus.contains(&code) {
            TruthValue::True
        } else if fp.p_minus.contains(&code) {
            TruthValue::False
        } else {
            TruthValue::Undefined
        };
        if p_value != expected {
            transparent = false;
        }
    }
    push("transparency_at_fixed_point", transparent, None);

    let mut base_recognizer_sound = true;
    for (code, phi) in uni.members() {
        if is_base_paradoxical(uni, code) {
            let as_liar = Formula::NotTr(Term::Num(code));
            if value(uni, fp, phi)? != value(uni, fp, &as_liar)? {
                base_recognizer_sound = false;
            }
        }
    }
    push(
        "base_recognizer_sound_at_fixed_point",
        base_recognizer_sound,
        None,
    );

    let audit = audit_fixed_point(uni, seq)?;
    push(
        "axiom_audit",
        audit.passed(),
        Some(format!(
            "{} instances checked, {} skipped as non-instantiable{}",
            audit.checked,
            audit.skipped,
            if audit.failures.is_empty() {
                String::new()
            } else {
                format!("; first failure {:?}", audit.failures[0])
            }
        )),
    );

    Ok(out)
}

fn make_config(
    defs_label: &str,
    defs_text: &str,
    uni: &Universe,
    variant: Variant,
) -> ReportConfig {
    // The iterated-ascription chain over the McGee sentence, when the
    // definitions carry one.
    let mcgee_chain = uni
        .env()
        .names()
        .iter()
        .filter(|n| {
            n.strip_prefix("tmcgee")
                .is_some_and(|rest| rest.parse::<u32>().is_ok())
        })
        .count();
    ReportConfig {
        defs: defs_label.to_string(),
        defs_sha256: sha256_hex(defs_text),
        domain: uni.domain_bound(),
        variant: variant.as_str().to_string(),
        universe_size: uni.len(),
        named_sentences: uni.env().names().len(),
        mcgee_chain: (mcgee_chain > 0).then_some(mcgee_chain),
    }
}

/// Build a model and report classifications plus the invariant battery.
pub fn cmd_model(
    defs_label: &str,
    defs_text: &str,
    domain: Option<Nat>,
    variant: Variant,
    with_invariants: bool,
) -> Result<Report> {
    let (uni, seq) = build_model(defs_text, domain, variant)?;
    let (classifications, ranks) = named_classifications(&uni, &seq);
    let invariants = if with_invariants {
        run_invariants(&uni, &seq)?
    } else {
        Vec::new()
    };
    Ok(Report {
        variant: variant.as_str().to_string(),
        stages: seq.stages().len(),
        fixed_point: seq.fixed_point_index(),
        classifications,
        ranks,
        invariants,
        proofs: Vec::new(),
        config: make_config(defs_label, defs_text, &uni, variant),
    })
}

/// Check proof scripts against a system and cross-validate their
/// endsequents at the fixed point of the definitions' model.
pub fn cmd_check(
    defs_label: &str,
    defs_text: &str,
    domain: Option<Nat>,
    variant: Variant,
    system: SystemId,
    allow_extra_axiom: bool,
    proofs: &[(String, String)],
) -> Result<Report> {
    let (uni, seq) = build_model(defs_text, domain, variant)?;
    let opts = CheckOptions {
        system,
        allow_contrapositive: allow_extra_axiom,
    };
    let mut results = Vec::new();
    for (name, text) in proofs {
        let script = match parse_script(text) {
            Ok(s) => s,
            Err(e) => {
                results.push(ProofResult {
                    name: name.clone(),
                    accepted: false,
                    cross_valid: None,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        let tree = match from_script(uni.env(), &script) {
            Ok(t) => t,
            Err(e) => {
                results.push(ProofResult {
                    name: name.clone(),
                    accepted: false,
                    cross_valid: None,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        match check_proof(&uni, &tree, opts) {
            Ok(()) => {
                let cross = cross_validate(&uni, &seq, &tree.conclusion)
                    .map(Some)
                    .unwrap_or(None);
                results.push(ProofResult {
                    name: name.clone(),
                    accepted: true,
                    cross_valid: cross,
                    error: None,
                });
            }
            Err(e) => {
                results.push(ProofResult {
                    name: name.clone(),
                    accepted: false,
                    cross_valid: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    let (classifications, ranks) = named_classifications(&uni, &seq);
    Ok(Report {
        variant: variant.as_str().to_string(),
        stages: seq.stages().len(),
        fixed_point: seq.fixed_point_index(),
        classifications,
        ranks,
        invariants: Vec::new(),
        proofs: results,
        config: make_config(defs_label, defs_text, &uni, variant),
    })
}

/// Run both variants and collect classification differences.
pub fn cmd_compare(
    defs_label: &str,
    defs_text: &str,
    domain: Option<Nat>,
) -> Result<CompareReport> {
    let tp = cmd_model(defs_label, defs_text, domain, Variant::Tp, true)?;
    let tp_plus = cmd_model(defs_label, defs_text, domain, Variant::TpPlus, true)?;
    let mut differences = BTreeMap::new();
    for (name, a) in &tp.classifications {
        if let Some(b) = tp_plus.classifications.get(name) {
            if a != b {
                differences.insert(name.clone(), (a.clone(), b.clone()));
            }
        }
    }
    Ok(CompareReport {
        tp,
        tp_plus,
        differences,
    })
}

/// Write the bundled zoo: the definition file and the proof corpus.
pub fn cmd_zoo(out_dir: &Path, spec: &zoo::ZooSpec) -> Result<Vec<String>> {
    let defs = zoo::defs_text(spec)?;
    let uni = zoo::build(spec)?;
    std::fs::create_dir_all(out_dir.join("proofs"))
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = Vec::new();
    let defs_path = out_dir.join("zoo.defs");
    std::fs::write(&defs_path, &defs)?;
    written.push(defs_path.display().to_string());
    for proof in zoo::proof_corpus(&uni)? {
        let path = out_dir.join("proofs").join(format!("{}.json", proof.name));
        let script = tp_core::calculus::to_script(&proof.tree);
        std::fs::write(&path, tp_core::calculus::print_script(&script))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

/// The embedded zoo definition text used when `check` is given no
/// definitions file.
pub fn default_defs() -> Result<String> {
    zoo::defs_text(&zoo::ZooSpec::default()).map_err(|e| anyhow!(e))
}
