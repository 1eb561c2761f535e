//! Derived rules expanded into full proof trees.
//!
//! Each macro produces a tree that `check_proof` accepts in the
//! truth/paradoxicality system; the expansion follows the hand
//! derivations: ascend through the `T`-principles, assemble the excluded
//! middle under `T`, and cut against the interaction principle.

use super::axioms::{AxiomSchema, Dir};
use super::{instantiate_axiom, AxiomError, ProofTree, RuleApp, Sequent};
use crate::syntax::{negate, Code, Formula, Term, Universe};
use thiserror::Error;

/// A derived-rule invocation.
#[derive(Debug, Clone)]
pub enum Macro {
    /// `Pφ ⇒ P¬φ` for a literal sentence: a single `P₂` instance.
    PNegEquiv { formula: Formula },
    /// From `Γ ⇒ Δ, Pφ` conclude `T(φ∨¬φ), Γ ⇒ Δ`. Without an explicit
    /// premise, the initial sequent `Pφ ⇒ Pφ` is used, giving the
    /// refutation `T(φ∨¬φ), Pφ ⇒ ∅`.
    PImpliesNotTlem {
        formula: Formula,
        premise: Option<Box<ProofTree>>,
    },
    /// `¬P t ⇒ ¬P(¬P t)`.
    NotPNotPP { term: Term },
}

#[derive(Debug, Error)]
pub enum MacroError {
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
}

fn axiom_node(uni: &Universe, schema: AxiomSchema) -> Result<ProofTree, MacroError> {
    let conclusion = instantiate_axiom(uni, &schema)?;
    Ok(ProofTree::leaf(conclusion, RuleApp::Axiom(schema)))
}

fn code_of(uni: &Universe, phi: &Formula) -> Result<Code, MacroError> {
    uni.code_of(phi)
        .ok_or_else(|| MacroError::Unsupported(format!("sentence not coded: {phi}")))
}

/// Weaken a proof by the given antecedent and succedent formulas, skipping
/// any already present.
pub(crate) fn weaken(tree: ProofTree, ant: &[Formula], suc: &[Formula]) -> ProofTree {
    let mut tree = tree;
    for f in ant {
        if !tree.conclusion.ant.contains(f) {
            let mut c = tree.conclusion.clone();
            c.ant.insert(f.clone());
            tree = ProofTree::node(c, RuleApp::Lw { formula: f.clone() }, vec![tree]);
        }
    }
    for f in suc {
        if !tree.conclusion.suc.contains(f) {
            let mut c = tree.conclusion.clone();
            c.suc.insert(f.clone());
            tree = ProofTree::node(c, RuleApp::Rw { formula: f.clone() }, vec![tree]);
        }
    }
    tree
}

/// Cut two proofs on a formula, weakening both sides into the merged
/// context so the application is exact.
pub(crate) fn cut(formula: Formula, left: ProofTree, right: ProofTree) -> ProofTree {
    let mut gamma: Vec<Formula> = left.conclusion.ant.iter().cloned().collect();
    gamma.extend(
        right
            .conclusion
            .ant
            .iter()
            .filter(|f| **f != formula)
            .cloned(),
    );
    let mut delta: Vec<Formula> = left
        .conclusion
        .suc
        .iter()
        .filter(|f| **f != formula)
        .cloned()
        .collect();
    delta.extend(right.conclusion.suc.iter().cloned());
    let mut delta_plus = delta.clone();
    delta_plus.push(formula.clone());
    let mut gamma_plus = gamma.clone();
    gamma_plus.push(formula.clone());
    let left = weaken(left, &gamma, &delta_plus);
    let right = weaken(right, &gamma_plus, &delta);
    let conclusion = Sequent::new(gamma, delta);
    ProofTree::node(conclusion, RuleApp::Cut { formula }, vec![left, right])
}

/// Ascend from `A t ⇒ T(A t)` to `A t ⇒ T(A t ∨ ¬A t)` and cut with the
/// interaction principle, yielding `A t ⇒ ¬P(A t ∨ …)`-style sequents.
/// `literal` must be a `P`/`¬P` literal; used for both derived sequents.
fn derive_not_p_of(uni: &Universe, literal: Formula) -> Result<ProofTree, MacroError> {
    let term = match &literal {
        Formula::Par(t) | Formula::NotPar(t) => t.clone(),
        other => {
            return Err(MacroError::Unsupported(format!(
                "expected a paradoxicality literal, got {other}"
            )))
        }
    };
    let negated = matches!(literal, Formula::NotPar(_));
    let lit_code = code_of(uni, &literal)?;
    let neg_code = code_of(uni, &negate(&literal))?;
    let lem = Formula::Or(Box::new(literal.clone()), Box::new(negate(&literal)));
    let lem_code = code_of(uni, &lem)?;

    // A t ⇒ T(A t), by the transparency principle for P-literals.
    let ascend = axiom_node(
        uni,
        AxiomSchema::T2 {
            negated,
            dir: Dir::Ltr,
            term,
        },
    )?;
    // Weaken and disjoin: A t ⇒ T(A t) ∨ T(¬A t).
    let with_other = weaken(ascend, &[], &[Formula::Tr(Term::Num(neg_code))]);
    let disjunction = Formula::Or(
        Box::new(Formula::Tr(Term::Num(lit_code))),
        Box::new(Formula::Tr(Term::Num(neg_code))),
    );
    let mut c = with_other.conclusion.clone();
    c.suc.remove(&Formula::Tr(Term::Num(lit_code)));
    c.suc.remove(&Formula::Tr(Term::Num(neg_code)));
    c.suc.insert(disjunction.clone());
    let disjoined = ProofTree::node(
        c,
        RuleApp::ROr {
            formula: disjunction.clone(),
        },
        vec![with_other],
    );
    // T(A t) ∨ T(¬A t) ⇒ T(A t ∨ ¬A t).
    let t4 = axiom_node(
        uni,
        AxiomSchema::T4 {
            or: true,
            dir: Dir::Ltr,
            code: lem_code,
        },
    )?;
    let under_t = cut(disjunction, disjoined, t4);
    // T(A t ∨ ¬A t) ⇒ ¬P(A t), and cut.
    let i1 = axiom_node(uni, AxiomSchema::I1 { code: lit_code })?;
    Ok(cut(Formula::Tr(Term::Num(lem_code)), under_t, i1))
}

/// Expand a derived rule into a checkable proof tree.
pub fn expand_macro(uni: &Universe, call: &Macro) -> Result<ProofTree, MacroError> {
    match call {
        Macro::PNegEquiv { formula } => {
            let (par, dir, term) = match formula {
                Formula::Tr(t) => (false, Dir::Rtl, t.clone()),
                Formula::NotTr(t) => (false, Dir::Ltr, t.clone()),
                Formula::Par(t) => (true, Dir::Rtl, t.clone()),
                Formula::NotPar(t) => (true, Dir::Ltr, t.clone()),
                other => {
                    return Err(MacroError::Unsupported(format!(
                        "negation equivalence is expanded only at predicate literals, got {other}"
                    )))
                }
            };
            axiom_node(uni, AxiomSchema::P2 { par, dir, term })
        }
        Macro::PImpliesNotTlem { formula, premise } => {
            let code = code_of(uni, formula)?;
            let p_lit = Formula::Par(Term::Num(code));
            let not_p = Formula::NotPar(Term::Num(code));
            let premise = match premise {
                Some(p) => (**p).clone(),
                None => ProofTree::leaf(
                    Sequent::new([p_lit.clone()], [p_lit.clone()]),
                    RuleApp::Initial,
                ),
            };
            if !premise.conclusion.suc.contains(&p_lit) {
                return Err(MacroError::Unsupported(format!(
                    "premise must have {p_lit} in the succedent"
                )));
            }
            let gamma: Vec<Formula> = premise.conclusion.ant.iter().cloned().collect();
            let mut delta: Vec<Formula> = premise
                .conclusion
                .suc
                .iter()
                .filter(|f| **f != p_lit)
                .cloned()
                .collect();
            let i1 = axiom_node(uni, AxiomSchema::I1 { code })?;
            let t_lem = i1
                .conclusion
                .ant
                .iter()
                .next()
                .expect("interaction antecedent")
                .clone();
            // T(φ∨¬φ), Γ ⇒ Δ, ¬Pφ.
            delta.push(not_p.clone());
            let weakened = weaken(i1, &gamma, &delta);
            // Pφ, T(φ∨¬φ), Γ ⇒ Δ by L¬ (¬¬Pφ = Pφ).
            let mut c = weakened.conclusion.clone();
            c.suc.remove(&not_p);
            c.ant.insert(p_lit.clone());
            let collapsed = ProofTree::node(
                c,
                RuleApp::LNeg {
                    formula: not_p.clone(),
                },
                vec![weakened],
            );
            // Cut against the premise, first weakening it by T(φ∨¬φ).
            let left = weaken(premise, &[t_lem], &[]);
            Ok(cut(p_lit, left, collapsed))
        }
        Macro::NotPNotPP { term } => derive_not_p_of(uni, Formula::NotPar(term.clone())),
    }
}

/// The sequent `P t ⇒ ¬P(P t)`, derived the same way as its negated
/// sibling; the proof corpus bundles it alongside the macros.
pub(crate) fn derive_pt_not_ppt(uni: &Universe, term: &Term) -> Result<ProofTree, MacroError> {
    derive_not_p_of(uni, Formula::Par(term.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, CheckOptions, SystemId};
    use crate::syntax::{parse_defs, CloseLimits};

    fn universe() -> Universe {
        let env = parse_defs(
            "#domain 32\n\
             liar := ~T(quote(liar))\n\
             zero := 0 = 0\n\
             p_liar := P(quote(liar))\n\
             p_zero := P(quote(zero))\n\
             np_zero := ~P(quote(zero))\n\
             lem_liar := ~T(quote(liar)) | T(quote(liar))\n\
             lem_p_liar := P(quote(liar)) | ~P(quote(liar))\n\
             lem_np_zero := ~P(quote(zero)) | P(quote(zero))\n",
        )
        .unwrap();
        Universe::close(env, CloseLimits::default()).unwrap()
    }

    #[test]
    fn p_neg_equiv_is_a_single_axiom_at_literals() {
        let uni = universe();
        let liar = uni.env().code_of_name("liar").unwrap();
        let tree = expand_macro(
            &uni,
            &Macro::PNegEquiv {
                formula: Formula::Tr(Term::Num(liar)),
            },
        )
        .unwrap();
        assert!(tree.premises.is_empty());
        check_proof(&uni, &tree, CheckOptions::system(SystemId::Tp)).unwrap();

        let err = expand_macro(
            &uni,
            &Macro::PNegEquiv {
                formula: Formula::Eq(Term::num(0), Term::num(0)),
            },
        )
        .unwrap_err();
        assert!(matches!(err, MacroError::Unsupported(_)));
    }

    #[test]
    fn p_implies_not_tlem_at_the_liar() {
        let uni = universe();
        let liar = uni.env().code_of_name("liar").unwrap();
        let lem = uni.env().code_of_name("lem_liar").unwrap();
        let tree = expand_macro(
            &uni,
            &Macro::PImpliesNotTlem {
                formula: uni.decode(liar).unwrap().clone(),
                premise: None,
            },
        )
        .unwrap();
        check_proof(&uni, &tree, CheckOptions::system(SystemId::Tp)).unwrap();
        assert_eq!(
            tree.conclusion,
            Sequent::new(
                [Formula::Tr(Term::Num(lem)), Formula::Par(Term::Num(liar)),],
                [],
            )
        );
    }

    #[test]
    fn not_p_not_pp_ends_in_the_displayed_sequent() {
        let uni = universe();
        let zero = uni.env().code_of_name("zero").unwrap();
        let np_zero = uni.env().code_of_name("np_zero").unwrap();
        let tree = expand_macro(
            &uni,
            &Macro::NotPNotPP {
                term: Term::Num(zero),
            },
        )
        .unwrap();
        check_proof(&uni, &tree, CheckOptions::system(SystemId::Tp)).unwrap();
        assert_eq!(
            tree.conclusion,
            Sequent::new(
                [Formula::NotPar(Term::Num(zero))],
                [Formula::NotPar(Term::Num(np_zero))],
            )
        );
    }

    #[test]
    fn pt_not_ppt_checks_in_tp() {
        let uni = universe();
        let liar = uni.env().code_of_name("liar").unwrap();
        let p_liar = uni.env().code_of_name("p_liar").unwrap();
        let tree = derive_pt_not_ppt(&uni, &Term::Num(liar)).unwrap();
        check_proof(&uni, &tree, CheckOptions::system(SystemId::Tp)).unwrap();
        assert_eq!(
            tree.conclusion,
            Sequent::new(
                [Formula::Par(Term::Num(liar))],
                [Formula::NotPar(Term::Num(p_liar))],
            )
        );
        // The same proof is rejected in the pure logic: the axioms are
        // not available there.
        assert!(check_proof(&uni, &tree, CheckOptions::system(SystemId::Sk)).is_err());
    }
}
