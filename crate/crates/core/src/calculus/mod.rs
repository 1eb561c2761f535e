//! Sequent-calculus proof checking and model cross-validation.
//!
//! Sequents are set-based, so exchange and contraction are implicit;
//! weakening is explicit. A proof is a tree of rule applications; checking
//! is conclusion-driven: each node states its conclusion and the checker
//! verifies the rule recovers it from the premises, including
//! eigenvariable side conditions. Four systems are supported, each
//! extending the previous by initial sequents: the pure logic, its
//! arithmetic extension, the truth/paradoxicality theory, and the latter
//! plus `¬P(P t)`.

mod axioms;
pub(crate) mod macros;
mod script;

pub use crate::semantics::Sequent;
pub use axioms::{
    audit_fixed_point, instantiate_axiom, AuditOutcome, AxiomError, AxiomSchema, Dir,
};
pub use macros::{expand_macro, Macro, MacroError};
pub use script::{from_script, parse_script, print_script, to_script, ScriptError, ScriptNode};

use crate::jump::StageSequence;
use crate::semantics::sat_sequent;
use crate::syntax::{negate, subst_free, EvalError, Formula, Term, Universe};
use std::collections::BTreeSet;
use thiserror::Error;

/// Proof systems, in increasing strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SystemId {
    Sk,
    PaSk,
    Tp,
    TpPlus,
}

impl SystemId {
    pub fn as_str(self) -> &'static str {
        match self {
            SystemId::Sk => "sk",
            SystemId::PaSk => "pa-sk",
            SystemId::Tp => "tp",
            SystemId::TpPlus => "tp-plus",
        }
    }
}

impl std::str::FromStr for SystemId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sk" => Ok(SystemId::Sk),
            "pa-sk" => Ok(SystemId::PaSk),
            "tp" => Ok(SystemId::Tp),
            "tp-plus" => Ok(SystemId::TpPlus),
            other => Err(format!("unknown system {other:?}")),
        }
    }
}

/// Checking options: the system plus the negative-control switch that
/// admits the contrapositive interaction schema.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub system: SystemId,
    pub allow_contrapositive: bool,
}

impl CheckOptions {
    pub fn system(system: SystemId) -> CheckOptions {
        CheckOptions {
            system,
            allow_contrapositive: false,
        }
    }
}

/// A rule application labelling a proof node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleApp {
    /// Initial sequent `φ ⇒ φ`.
    Initial,
    /// An initial sequent from an axiom schema.
    Axiom(AxiomSchema),
    Cut {
        formula: Formula,
    },
    /// From `Γ ⇒ Δ, φ` infer `¬φ, Γ ⇒ Δ`.
    LNeg {
        formula: Formula,
    },
    Lw {
        formula: Formula,
    },
    Rw {
        formula: Formula,
    },
    LOr {
        formula: Formula,
    },
    ROr {
        formula: Formula,
    },
    LAnd {
        formula: Formula,
    },
    RAnd {
        formula: Formula,
    },
    LEx {
        formula: Formula,
        eigen: String,
    },
    REx {
        formula: Formula,
        witness: Term,
    },
    LAll {
        formula: Formula,
        witness: Term,
    },
    RAll {
        formula: Formula,
        eigen: String,
    },
    /// From `Γ ⇒ Δ, φ(t)` infer `Γ ⇒ Δ, s ≠ t, φ(s)`.
    Repl {
        matrix: Formula,
        var: String,
        from: Term,
        to: Term,
    },
    /// From `φ(u), Γ ⇒ Δ, φ(Su)` infer `φ(0), Γ ⇒ Δ, φ(t)`.
    Ind {
        matrix: Formula,
        var: String,
        eigen: String,
        term: Term,
    },
}

/// A derivation: a conclusion, the rule that yields it, and subproofs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleApp,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(conclusion: Sequent, rule: RuleApp) -> ProofTree {
        ProofTree {
            conclusion,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn node(conclusion: Sequent, rule: RuleApp, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            conclusion,
            rule,
            premises,
        }
    }
}

/// A per-node diagnostic: the path from the root (premise indices) and
/// what went wrong there.
#[derive(Debug, Error)]
#[error("node {path:?}: {kind}")]
pub struct ProofError {
    pub path: Vec<usize>,
    pub kind: CheckErrorKind,
}

#[derive(Debug, Error)]
pub enum CheckErrorKind {
    #[error("{rule} expects {expected} premise(s), found {found}")]
    Arity {
        rule: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("initial sequents must have the form φ ⇒ φ")]
    MalformedInitial,
    #[error("principal formula {formula} not in the {side}")]
    PrincipalMissing { side: &'static str, formula: String },
    #[error("principal formula {formula} is not a {expected}")]
    PrincipalShape {
        expected: &'static str,
        formula: String,
    },
    #[error("premise {index} should be `{expected}`, found `{found}`")]
    PremiseMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("eigenvariable {var} occurs free in the conclusion")]
    Eigenvariable { var: String },
    #[error("substitution failed: {0}")]
    Subst(String),
    #[error("schema {schema} is not available in system {system}")]
    SchemaNotInSystem { schema: String, system: String },
    #[error("axiom instantiation failed: {0}")]
    Axiom(#[from] AxiomError),
    #[error("axiom conclusion should be `{expected}`, found `{found}`")]
    AxiomMismatch { expected: String, found: String },
    #[error("induction is not available in system sk")]
    IndNotInSystem,
}

fn plus(s: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut out = s.clone();
    out.insert(f.clone());
    out
}

fn minus(s: &BTreeSet<Formula>, f: &Formula) -> BTreeSet<Formula> {
    let mut out = s.clone();
    out.remove(f);
    out
}

/// Check a derivation in the given system. Returns the first failing
/// node's diagnostic, if any.
pub fn check_proof(
    uni: &Universe,
    proof: &ProofTree,
    opts: CheckOptions,
) -> Result<(), ProofError> {
    let mut path = Vec::new();
    check_node(uni, proof, opts, &mut path)
}

fn err(path: &[usize], kind: CheckErrorKind) -> ProofError {
    ProofError {
        path: path.to_vec(),
        kind,
    }
}

fn expect_arity(
    rule: &'static str,
    node: &ProofTree,
    n: usize,
    path: &[usize],
) -> Result<(), ProofError> {
    if node.premises.len() != n {
        return Err(err(
            path,
            CheckErrorKind::Arity {
                rule,
                expected: n,
                found: node.premises.len(),
            },
        ));
    }
    Ok(())
}

fn expect_premise(
    node: &ProofTree,
    index: usize,
    expected: Sequent,
    path: &[usize],
) -> Result<(), ProofError> {
    let found = &node.premises[index].conclusion;
    if *found != expected {
        return Err(err(
            path,
            CheckErrorKind::PremiseMismatch {
                index,
                expected: expected.to_string(),
                found: found.to_string(),
            },
        ));
    }
    Ok(())
}

fn principal_in(
    set: &BTreeSet<Formula>,
    f: &Formula,
    side: &'static str,
    path: &[usize],
) -> Result<(), ProofError> {
    if !set.contains(f) {
        return Err(err(
            path,
            CheckErrorKind::PrincipalMissing {
                side,
                formula: f.to_string(),
            },
        ));
    }
    Ok(())
}

fn conclusion_fv(s: &Sequent) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in s.ant.iter().chain(s.suc.iter()) {
        out.extend(f.free_vars());
    }
    out
}

fn eigen_fresh(s: &Sequent, var: &str, path: &[usize]) -> Result<(), ProofError> {
    if conclusion_fv(s).contains(var) {
        return Err(err(
            path,
            CheckErrorKind::Eigenvariable {
                var: var.to_string(),
            },
        ));
    }
    Ok(())
}

fn subst_or_err(
    matrix: &Formula,
    var: &str,
    t: &Term,
    path: &[usize],
) -> Result<Formula, ProofError> {
    subst_free(matrix, var, t).map_err(|e| err(path, CheckErrorKind::Subst(e.to_string())))
}

fn check_node(
    uni: &Universe,
    node: &ProofTree,
    opts: CheckOptions,
    path: &mut Vec<usize>,
) -> Result<(), ProofError> {
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(uni, premise, opts, path)?;
        path.pop();
    }
    let c = &node.conclusion;
    match &node.rule {
        RuleApp::Initial => {
            expect_arity("initial", node, 0, path)?;
            if c.ant.len() != 1 || c.ant != c.suc {
                return Err(err(path, CheckErrorKind::MalformedInitial));
            }
            Ok(())
        }
        RuleApp::Axiom(schema) => {
            expect_arity("axiom", node, 0, path)?;
            if !schema_available(schema, opts) {
                return Err(err(
                    path,
                    CheckErrorKind::SchemaNotInSystem {
                        schema: schema.id(),
                        system: opts.system.as_str().to_string(),
                    },
                ));
            }
            let expected =
                instantiate_axiom(uni, schema).map_err(|e| err(path, CheckErrorKind::Axiom(e)))?;
            if *c != expected {
                return Err(err(
                    path,
                    CheckErrorKind::AxiomMismatch {
                        expected: expected.to_string(),
                        found: c.to_string(),
                    },
                ));
            }
            Ok(())
        }
        RuleApp::Cut { formula } => {
            expect_arity("cut", node, 2, path)?;
            expect_premise(
                node,
                0,
                Sequent::new(c.ant.clone(), plus(&c.suc, formula)),
                path,
            )?;
            expect_premise(
                node,
                1,
                Sequent::new(plus(&c.ant, formula), c.suc.clone()),
                path,
            )
        }
        RuleApp::LNeg { formula } => {
            expect_arity("lneg", node, 1, path)?;
            let neg = negate(formula);
            principal_in(&c.ant, &neg, "antecedent", path)?;
            // Checked premise-first: with ¬¬φ = φ the introduced formula
            // may already sit in the premise context and be absorbed.
            let p = &node.premises[0].conclusion;
            if c.ant != plus(&p.ant, &neg) || p.suc != plus(&c.suc, formula) {
                return Err(err(
                    path,
                    CheckErrorKind::PremiseMismatch {
                        index: 0,
                        expected: Sequent::new(minus(&c.ant, &neg), plus(&c.suc, formula))
                            .to_string(),
                        found: p.to_string(),
                    },
                ));
            }
            Ok(())
        }
        RuleApp::Lw { formula } => {
            expect_arity("lw", node, 1, path)?;
            principal_in(&c.ant, formula, "antecedent", path)?;
            let p = &node.premises[0].conclusion;
            if plus(&p.ant, formula) != c.ant || p.suc != c.suc {
                return Err(err(
                    path,
                    CheckErrorKind::PremiseMismatch {
                        index: 0,
                        expected: format!("{c} minus the weakened formula"),
                        found: p.to_string(),
                    },
                ));
            }
            Ok(())
        }
        RuleApp::Rw { formula } => {
            expect_arity("rw", node, 1, path)?;
            principal_in(&c.suc, formula, "succedent", path)?;
            let p = &node.premises[0].conclusion;
            if plus(&p.suc, formula) != c.suc || p.ant != c.ant {
                return Err(err(
                    path,
                    CheckErrorKind::PremiseMismatch {
                        index: 0,
                        expected: format!("{c} minus the weakened formula"),
                        found: p.to_string(),
                    },
                ));
            }
            Ok(())
        }
        RuleApp::LOr { formula } => {
            expect_arity("lor", node, 2, path)?;
            let Formula::Or(a, b) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "disjunction",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.ant, formula, "antecedent", path)?;
            let gamma = minus(&c.ant, formula);
            expect_premise(node, 0, Sequent::new(plus(&gamma, a), c.suc.clone()), path)?;
            expect_premise(node, 1, Sequent::new(plus(&gamma, b), c.suc.clone()), path)
        }
        RuleApp::ROr { formula } => {
            expect_arity("ror", node, 1, path)?;
            let Formula::Or(a, b) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "disjunction",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.suc, formula, "succedent", path)?;
            let delta = minus(&c.suc, formula);
            expect_premise(
                node,
                0,
                Sequent::new(c.ant.clone(), plus(&plus(&delta, a), b)),
                path,
            )
        }
        RuleApp::LAnd { formula } => {
            expect_arity("land", node, 1, path)?;
            let Formula::And(a, b) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "conjunction",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.ant, formula, "antecedent", path)?;
            let gamma = minus(&c.ant, formula);
            expect_premise(
                node,
                0,
                Sequent::new(plus(&plus(&gamma, a), b), c.suc.clone()),
                path,
            )
        }
        RuleApp::RAnd { formula } => {
            expect_arity("rand", node, 2, path)?;
            let Formula::And(a, b) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "conjunction",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.suc, formula, "succedent", path)?;
            let delta = minus(&c.suc, formula);
            expect_premise(node, 0, Sequent::new(c.ant.clone(), plus(&delta, a)), path)?;
            expect_premise(node, 1, Sequent::new(c.ant.clone(), plus(&delta, b)), path)
        }
        RuleApp::LEx { formula, eigen } => {
            expect_arity("lex", node, 1, path)?;
            let Formula::Ex(v, m) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "existential",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.ant, formula, "antecedent", path)?;
            eigen_fresh(c, eigen, path)?;
            let inst = subst_or_err(m, v, &Term::Var(eigen.clone()), path)?;
            let gamma = minus(&c.ant, formula);
            expect_premise(
                node,
                0,
                Sequent::new(plus(&gamma, &inst), c.suc.clone()),
                path,
            )
        }
        RuleApp::REx { formula, witness } => {
            expect_arity("rex", node, 1, path)?;
            let Formula::Ex(v, m) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "existential",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.suc, formula, "succedent", path)?;
            let inst = subst_or_err(m, v, witness, path)?;
            let delta = minus(&c.suc, formula);
            expect_premise(
                node,
                0,
                Sequent::new(c.ant.clone(), plus(&delta, &inst)),
                path,
            )
        }
        RuleApp::LAll { formula, witness } => {
            expect_arity("lall", node, 1, path)?;
            let Formula::All(v, m) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "universal",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.ant, formula, "antecedent", path)?;
            let inst = subst_or_err(m, v, witness, path)?;
            let gamma = minus(&c.ant, formula);
            expect_premise(
                node,
                0,
                Sequent::new(plus(&gamma, &inst), c.suc.clone()),
                path,
            )
        }
        RuleApp::RAll { formula, eigen } => {
            expect_arity("rall", node, 1, path)?;
            let Formula::All(v, m) = formula else {
                return Err(err(
                    path,
                    CheckErrorKind::PrincipalShape {
                        expected: "universal",
                        formula: formula.to_string(),
                    },
                ));
            };
            principal_in(&c.suc, formula, "succedent", path)?;
            eigen_fresh(c, eigen, path)?;
            let inst = subst_or_err(m, v, &Term::Var(eigen.clone()), path)?;
            let delta = minus(&c.suc, formula);
            expect_premise(
                node,
                0,
                Sequent::new(c.ant.clone(), plus(&delta, &inst)),
                path,
            )
        }
        RuleApp::Repl {
            matrix,
            var,
            from,
            to,
        } => {
            expect_arity("repl", node, 1, path)?;
            let with_to = subst_or_err(matrix, var, to, path)?;
            let with_from = subst_or_err(matrix, var, from, path)?;
            let neq = Formula::Neq(to.clone(), from.clone());
            principal_in(&c.suc, &neq, "succedent", path)?;
            principal_in(&c.suc, &with_to, "succedent", path)?;
            let delta = minus(&minus(&c.suc, &neq), &with_to);
            expect_premise(
                node,
                0,
                Sequent::new(c.ant.clone(), plus(&delta, &with_from)),
                path,
            )
        }
        RuleApp::Ind {
            matrix,
            var,
            eigen,
            term,
        } => {
            expect_arity("ind", node, 1, path)?;
            if opts.system < SystemId::PaSk {
                return Err(err(path, CheckErrorKind::IndNotInSystem));
            }
            eigen_fresh(c, eigen, path)?;
            let at_zero = subst_or_err(matrix, var, &Term::Num(0), path)?;
            let at_term = subst_or_err(matrix, var, term, path)?;
            let at_eigen = subst_or_err(matrix, var, &Term::Var(eigen.clone()), path)?;
            let at_suc = subst_or_err(
                matrix,
                var,
                &Term::Suc(Box::new(Term::Var(eigen.clone()))),
                path,
            )?;
            principal_in(&c.ant, &at_zero, "antecedent", path)?;
            principal_in(&c.suc, &at_term, "succedent", path)?;
            let gamma = minus(&c.ant, &at_zero);
            let delta = minus(&c.suc, &at_term);
            expect_premise(
                node,
                0,
                Sequent::new(plus(&gamma, &at_eigen), plus(&delta, &at_suc)),
                path,
            )
        }
    }
}

fn schema_available(schema: &AxiomSchema, opts: CheckOptions) -> bool {
    use AxiomSchema::*;
    match schema {
        Ref { .. } => true,
        Arith { .. } => opts.system >= SystemId::PaSk,
        I1Contra { .. } => opts.system >= SystemId::Tp && opts.allow_contrapositive,
        NotPP { .. } => opts.system >= SystemId::TpPlus,
        _ => opts.system >= SystemId::Tp,
    }
}

#[derive(Debug, Error)]
pub enum CrossValidateError {
    #[error("sequent mentions values outside the universe: {0}")]
    OutsideUniverse(EvalError),
}

/// Evaluate a sequent at the fixed point of the stage sequence — the
/// empirical soundness oracle for accepted proofs.
pub fn cross_validate(
    uni: &Universe,
    seq: &StageSequence,
    sequent: &Sequent,
) -> Result<bool, CrossValidateError> {
    sat_sequent(uni, seq.fixed_point(), sequent).map_err(CrossValidateError::OutsideUniverse)
}
