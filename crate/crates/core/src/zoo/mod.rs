//! The canonical case-study universe and its proof corpus.
//!
//! The definition file assembles the paradigmatic self-referential
//! sentences — liar, truth-teller, Curry, McGee (with an explicit chain of
//! iterated truth ascriptions), Gupta, revenge — next to grounded
//! compounds and the excluded-middle/ascription helpers the proof corpus
//! cuts against.

use crate::calculus::macros::{cut, derive_pt_not_ppt};
use crate::calculus::{
    expand_macro, instantiate_axiom, AxiomSchema, Dir, Macro, MacroError, ProofTree, RuleApp,
    Sequent,
};
use crate::syntax::{
    parse_defs, CloseError, CloseLimits, Code, DslError, Formula, Nat, Term, Universe,
};
use thiserror::Error;

/// Which sentences to generate and at what scale.
#[derive(Debug, Clone)]
pub struct ZooSpec {
    /// Bound on the named chain of iterated truth ascriptions over the
    /// McGee sentence.
    pub mcgee_iterations: u32,
    /// Quantifier bound.
    pub domain_bound: Nat,
}

impl Default for ZooSpec {
    fn default() -> Self {
        ZooSpec {
            mcgee_iterations: 5,
            domain_bound: 400,
        }
    }
}

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("mcgee iteration bound must be at least 1")]
    BoundTooSmall,
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Close(#[from] CloseError),
    #[error("proof corpus: {0}")]
    Macro(#[from] MacroError),
    #[error("proof corpus: sentence not coded: {0}")]
    NotCoded(String),
}

/// `liar := ¬T(quote(liar))`.
pub fn make_liar() -> (&'static str, &'static str) {
    ("liar", "~T(quote(liar))")
}

/// `truthteller := T(quote(truthteller))`.
pub fn make_truthteller() -> (&'static str, &'static str) {
    ("truthteller", "T(quote(truthteller))")
}

/// `curry := ¬T(quote(curry)) ∨ 0 = 1`.
pub fn make_curry() -> (&'static str, &'static str) {
    ("curry", "~T(quote(curry)) | 0 = 1")
}

/// The McGee sentence and its named chain of iterated ascriptions
/// `T^1 … T^k` over it.
pub fn make_mcgee(k: u32) -> Result<Vec<(String, String)>, ZooError> {
    if k < 1 {
        return Err(ZooError::BoundTooSmall);
    }
    let mut defs = vec![(
        "mcgee".to_string(),
        "ex x. ~T(iterT(x, quote(mcgee)))".to_string(),
    )];
    let mut prev = "mcgee".to_string();
    for i in 1..=k {
        let name = format!("tmcgee{i}");
        defs.push((name.clone(), format!("T(quote({prev}))")));
        prev = name;
    }
    Ok(defs)
}

/// `gupta := ∀x (T x ∨ ¬T x)`.
pub fn make_gupta() -> (&'static str, &'static str) {
    ("gupta", "all x. (T(x) | ~T(x))")
}

/// `revenge := ¬T(quote(revenge)) ∨ P(quote(revenge))`.
pub fn make_revenge() -> (&'static str, &'static str) {
    ("revenge", "~T(quote(revenge)) | P(quote(revenge))")
}

/// Render the definition file for a zoo specification.
pub fn defs_text(spec: &ZooSpec) -> Result<String, ZooError> {
    let mut out = String::new();
    out.push_str(&format!("#domain {}\n\n", spec.domain_bound));
    out.push_str("// paradigmatic self-referential sentences\n");
    for (name, body) in [make_liar(), make_truthteller(), make_curry()] {
        out.push_str(&format!("{name} := {body}\n"));
    }
    for (name, body) in make_mcgee(spec.mcgee_iterations)? {
        out.push_str(&format!("{name} := {body}\n"));
    }
    for (name, body) in [make_gupta(), make_revenge()] {
        out.push_str(&format!("{name} := {body}\n"));
    }
    out.push_str(
        "\n// the negated liar, named so it appears in reports\n\
         liarneg := T(quote(liar))\n\
         \n// grounded compounds\n\
         zero := 0 = 0\n\
         conj_grounded := ~T(quote(liar)) & 0 = 0\n\
         conj_false := ~T(quote(liar)) & 0 = 1\n\
         \n// ascriptions and excluded-middle helpers for the proof corpus\n\
         p_liar := P(quote(liar))\n\
         p_zero := P(quote(zero))\n\
         np_zero := ~P(quote(zero))\n\
         lem_liar := ~T(quote(liar)) | T(quote(liar))\n\
         con_liar := T(quote(liar)) & ~T(quote(liar))\n\
         lem_p_liar := P(quote(liar)) | ~P(quote(liar))\n\
         lem_np_zero := ~P(quote(zero)) | P(quote(zero))\n\
         lem_zero := 0 = 0 | 0 != 0\n\
         \n// a true universal, so the quantified truth principle is\n\
         // exercised non-vacuously at the fixed point\n\
         all_eq := all x. x = x\n",
    );
    Ok(out)
}

/// Build and close the zoo universe.
pub fn build(spec: &ZooSpec) -> Result<Universe, ZooError> {
    let env = parse_defs(&defs_text(spec)?)?;
    Ok(Universe::close(env, CloseLimits::default())?)
}

/// The committed copy of the default zoo definition file.
pub fn bundled_defs() -> &'static str {
    include_str!("../../assets/zoo.defs")
}

/// The committed proof corpus, as `(file stem, script JSON)` pairs.
pub fn bundled_proofs() -> [(&'static str, &'static str); 6] {
    [
        (
            "pt_not_ppt",
            include_str!("../../assets/proofs/pt_not_ppt.json"),
        ),
        (
            "npt_not_pnpt",
            include_str!("../../assets/proofs/npt_not_pnpt.json"),
        ),
        (
            "tlem_refutes_p_liar",
            include_str!("../../assets/proofs/tlem_refutes_p_liar.json"),
        ),
        (
            "p_neg_equiv_atomic",
            include_str!("../../assets/proofs/p_neg_equiv_atomic.json"),
        ),
        (
            "negative_control",
            include_str!("../../assets/proofs/negative_control.json"),
        ),
        (
            "broken_eigenvariable",
            include_str!("../../assets/proofs/broken_eigenvariable.json"),
        ),
    ]
}

/// A bundled proof with its expected outcomes.
#[derive(Debug, Clone)]
pub struct CorpusProof {
    /// File stem of the bundled script.
    pub name: &'static str,
    pub tree: ProofTree,
    /// Accepted only with the contrapositive interaction schema admitted.
    pub needs_extra_axiom: bool,
    /// Whether the endsequent holds at the fixed point.
    pub expect_cross_valid: bool,
    /// Whether checking should fail even in the strongest system.
    pub expect_reject: bool,
}

fn code_of_name(uni: &Universe, name: &str) -> Result<Code, ZooError> {
    uni.env()
        .code_of_name(name)
        .ok_or_else(|| ZooError::NotCoded(name.to_string()))
}

/// The machine-readable derivations bundled with the zoo: the two
/// derived sequents about iterated paradoxicality ascriptions, the
/// excluded-middle refutation rule at the liar, the atomic negation
/// equivalence, the negative control from the contrapositive interaction
/// schema, and a broken eigenvariable application.
pub fn proof_corpus(uni: &Universe) -> Result<Vec<CorpusProof>, ZooError> {
    let liar = code_of_name(uni, "liar")?;
    let liarneg = code_of_name(uni, "liarneg")?;
    let zero = code_of_name(uni, "zero")?;
    let lem_liar = code_of_name(uni, "lem_liar")?;
    let con_liar = code_of_name(uni, "con_liar")?;

    Ok(vec![
        // P(liar) ⇒ ¬P(P liar).
        CorpusProof {
            name: "pt_not_ppt",
            tree: derive_pt_not_ppt(uni, &Term::Num(liar))?,
            needs_extra_axiom: false,
            expect_cross_valid: true,
            expect_reject: false,
        },
        // ¬P(zero) ⇒ ¬P(¬P zero); non-vacuous at the fixed point since
        // 0 = 0 is classical there.
        CorpusProof {
            name: "npt_not_pnpt",
            tree: expand_macro(
                uni,
                &Macro::NotPNotPP {
                    term: Term::Num(zero),
                },
            )?,
            needs_extra_axiom: false,
            expect_cross_valid: true,
            expect_reject: false,
        },
        // T(liar ∨ ¬liar), P(liar) ⇒ ∅.
        CorpusProof {
            name: "tlem_refutes_p_liar",
            tree: expand_macro(
                uni,
                &Macro::PImpliesNotTlem {
                    formula: uni.decode(liar).expect("liar decodes").clone(),
                    premise: None,
                },
            )?,
            needs_extra_axiom: false,
            expect_cross_valid: true,
            expect_reject: false,
        },
        // P(T liar) ⇒ P(¬T liar): the atomic case of the negation
        // equivalence, a single transparency instance.
        CorpusProof {
            name: "p_neg_equiv_atomic",
            tree: expand_macro(
                uni,
                &Macro::PNegEquiv {
                    formula: Formula::Tr(Term::Num(liar)),
                },
            )?,
            needs_extra_axiom: false,
            expect_cross_valid: true,
            expect_reject: false,
        },
        // Negative control: with the contrapositive of the interaction
        // principle, ∅ ⇒ T(liar) ∧ ¬T(liar) becomes derivable; the fixed
        // point refutes it.
        CorpusProof {
            name: "negative_control",
            tree: negative_control(uni, liar, liarneg, lem_liar, con_liar)?,
            needs_extra_axiom: true,
            expect_cross_valid: false,
            expect_reject: false,
        },
        // A universal introduced on an eigenvariable that stays free in
        // the conclusion; rejected at the offending node.
        CorpusProof {
            name: "broken_eigenvariable",
            tree: broken_eigenvariable(),
            needs_extra_axiom: false,
            expect_cross_valid: false,
            expect_reject: true,
        },
    ])
}

fn axiom_node(uni: &Universe, schema: AxiomSchema) -> Result<ProofTree, ZooError> {
    let conclusion = instantiate_axiom(uni, &schema).map_err(MacroError::Axiom)?;
    Ok(ProofTree::leaf(conclusion, RuleApp::Axiom(schema)))
}

/// Derive `∅ ⇒ T(liar) ∧ ¬T(liar)` from the contrapositive interaction
/// schema: descend from Π(liar) to P(liar), flip the excluded middle
/// under T into the contradiction, and split it.
fn negative_control(
    uni: &Universe,
    liar: Code,
    liarneg: Code,
    lem_liar: Code,
    con_liar: Code,
) -> Result<ProofTree, ZooError> {
    let t_liar = Formula::Tr(Term::Num(liar));
    let not_t_liar = Formula::NotTr(Term::Num(liar));

    // ∅ ⇒ P(liar), via Π(liar) and reflexivity.
    let p1 = axiom_node(uni, AxiomSchema::P1 { code: liar })?;
    let refl = axiom_node(uni, AxiomSchema::Ref { term: Term::Num(0) })?;
    let p_liar = cut(Formula::Eq(Term::Num(0), Term::Num(0)), refl, p1);

    // ∅ ⇒ ¬T(liar ∨ ¬liar).
    let contra = axiom_node(uni, AxiomSchema::I1Contra { code: liar })?;
    let not_t_lem = cut(Formula::Par(Term::Num(liar)), p_liar, contra);

    // ∅ ⇒ T(¬(liar ∨ ¬liar)), i.e. T of the contradiction.
    let t3 = axiom_node(
        uni,
        AxiomSchema::T3Neg {
            dir: Dir::Rtl,
            term: Term::Num(lem_liar),
        },
    )?;
    let t_con = cut(Formula::NotTr(Term::Num(lem_liar)), not_t_lem, t3);

    // ∅ ⇒ T(¬liar) ∧ T(liar).
    let t4 = axiom_node(
        uni,
        AxiomSchema::T4 {
            or: false,
            dir: Dir::Rtl,
            code: con_liar,
        },
    )?;
    let pair = cut(Formula::Tr(Term::Num(con_liar)), t_con, t4);
    let pair_formula = Formula::And(
        Box::new(Formula::Tr(Term::Num(liarneg))),
        Box::new(Formula::Tr(Term::Num(liar))),
    );

    // Rebuild the conjunction as T(liar) ∧ ¬T(liar): descend the T of
    // the negated liar, keep the T of the liar.
    let target = Formula::And(Box::new(t_liar.clone()), Box::new(not_t_liar.clone()));
    let left_init = ProofTree::leaf(
        Sequent::new([t_liar.clone()], [t_liar.clone()]),
        RuleApp::Initial,
    );
    let left = ProofTree::node(
        Sequent::new(
            [t_liar.clone(), Formula::Tr(Term::Num(liarneg))],
            [t_liar.clone()],
        ),
        RuleApp::Lw {
            formula: Formula::Tr(Term::Num(liarneg)),
        },
        vec![left_init],
    );
    let t3_descend = axiom_node(
        uni,
        AxiomSchema::T3Neg {
            dir: Dir::Ltr,
            term: Term::Num(liar),
        },
    )?;
    let right = ProofTree::node(
        Sequent::new(
            [t_liar.clone(), Formula::Tr(Term::Num(liarneg))],
            [not_t_liar.clone()],
        ),
        RuleApp::Lw {
            formula: t_liar.clone(),
        },
        vec![t3_descend],
    );
    let joined = ProofTree::node(
        Sequent::new(
            [t_liar.clone(), Formula::Tr(Term::Num(liarneg))],
            [target.clone()],
        ),
        RuleApp::RAnd {
            formula: target.clone(),
        },
        vec![left, right],
    );
    let packed = ProofTree::node(
        Sequent::new([pair_formula.clone()], [target.clone()]),
        RuleApp::LAnd {
            formula: pair_formula.clone(),
        },
        vec![joined],
    );
    Ok(cut(pair_formula, pair, packed))
}

fn broken_eigenvariable() -> ProofTree {
    let matrix = Formula::Eq(Term::var("x"), Term::var("u"));
    let quantified = Formula::All("x".into(), Box::new(matrix));
    let premise = ProofTree::leaf(
        Sequent::new([], [Formula::Eq(Term::var("u"), Term::var("u"))]),
        RuleApp::Axiom(AxiomSchema::Ref {
            term: Term::var("u"),
        }),
    );
    ProofTree::node(
        Sequent::new([], [quantified.clone()]),
        RuleApp::RAll {
            formula: quantified,
            eigen: "u".into(),
        },
        vec![premise],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, cross_validate, CheckOptions, SystemId};
    use crate::jump::{classify, lfp, Classification, Variant};

    fn small_spec() -> ZooSpec {
        ZooSpec {
            mcgee_iterations: 3,
            domain_bound: 60,
        }
    }

    #[test]
    fn zoo_universe_closes() {
        let uni = build(&small_spec()).unwrap();
        assert!(uni.len() > 20);
        for name in ["liar", "curry", "mcgee", "gupta", "revenge"] {
            assert!(uni.env().code_of_name(name).is_some());
        }
    }

    #[test]
    fn mcgee_needs_a_positive_bound() {
        assert!(matches!(make_mcgee(0), Err(ZooError::BoundTooSmall)));
    }

    #[test]
    fn classifications_at_small_scale() {
        let uni = build(&small_spec()).unwrap();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        let class =
            |name: &str| classify(&uni, &seq, uni.env().code_of_name(name).unwrap()).unwrap();
        assert_eq!(class("liar"), Classification::Paradoxical(1));
        assert_eq!(class("liarneg"), Classification::Paradoxical(1));
        assert_eq!(class("curry"), Classification::Paradoxical(1));
        assert_eq!(class("conj_grounded"), Classification::Paradoxical(2));
        assert_eq!(class("conj_false"), Classification::False);
        assert_eq!(class("truthteller"), Classification::Independent);
        assert_eq!(class("mcgee"), Classification::Independent);
        assert_eq!(class("gupta"), Classification::Independent);
        assert_eq!(class("revenge"), Classification::Independent);
        assert_eq!(class("zero"), Classification::True);
        assert_eq!(class("all_eq"), Classification::True);
    }

    #[test]
    fn corpus_checks_and_cross_validates() {
        let uni = build(&small_spec()).unwrap();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        for proof in proof_corpus(&uni).unwrap() {
            let opts = CheckOptions {
                system: SystemId::Tp,
                allow_contrapositive: proof.needs_extra_axiom,
            };
            let checked = check_proof(&uni, &proof.tree, opts);
            if proof.expect_reject {
                assert!(checked.is_err(), "{} should be rejected", proof.name);
                continue;
            }
            checked.unwrap_or_else(|e| panic!("{} rejected: {e}", proof.name));
            let valid = cross_validate(&uni, &seq, &proof.tree.conclusion).unwrap();
            assert_eq!(valid, proof.expect_cross_valid, "{}", proof.name);
            if proof.needs_extra_axiom {
                // Without the switch the control proof must not check.
                assert!(
                    check_proof(&uni, &proof.tree, CheckOptions::system(SystemId::TpPlus)).is_err()
                );
            }
        }
    }
}
