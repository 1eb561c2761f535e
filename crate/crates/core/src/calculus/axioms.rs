//! Axiom schemas of the four systems and their instantiation.
//!
//! Biconditional principles are stored as two axioms; an instance names
//! its direction explicitly. Instances are emitted with numeral terms for
//! every code computed during instantiation, so that formulas produced by
//! different schemas agree syntactically and can be cut against each
//! other. The guard predicates (sentencehood, coded ascriptions) are
//! checked against the universe at instantiation time; `Π` is decidable
//! and model-independent, so its disjunct is emitted as the arithmetic
//! literal `0 = 0` or `0 = 1`.
//!
//! Arithmetic initial sequents are admitted by an oracle: any sequent of
//! closed arithmetic literals valid in the standard model. The induction
//! rule lives with the other inference rules.

use super::Sequent;
use crate::jump::{StageSequence, Variant};
use crate::semantics::sat_sequent;
use crate::syntax::{negate, pi, Code, EvalError, Formula, Term, Universe};
use thiserror::Error;

/// Direction of a biconditional principle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Ltr,
    Rtl,
}

/// An axiom schema together with its instance parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomSchema {
    /// `∅ ⇒ t = t`.
    Ref { term: Term },
    /// Any sequent of closed arithmetic literals valid in the standard
    /// model. The sequent itself is the instance.
    Arith { sequent: Sequent },
    /// Value equality vs. truth of the (in)equation: at closed terms
    /// `s, t`, relates `s = t` (resp. `s ≠ t`) to `T` of its code.
    T1 {
        neq: bool,
        dir: Dir,
        left: Term,
        right: Term,
    },
    /// `P t ⇔ T(P t)` and (negated) `¬P t ⇔ T(¬P t)`.
    T2 { negated: bool, dir: Dir, term: Term },
    /// `T t ⇔ T(T t)`.
    T3Rep { dir: Dir, term: Term },
    /// `T(¬φ) ⇔ ¬T φ` for the sentence φ coded by the term's value.
    T3Neg { dir: Dir, term: Term },
    /// `Tφ ∧ Tψ ⇔ T(φ∧ψ)` / `Tφ ∨ Tψ ⇔ T(φ∨ψ)` at the compound's code.
    T4 { or: bool, dir: Dir, code: Code },
    /// `∀x Tφ(x) ⇔ T(∀xφ)` / `∃x Tφ(x) ⇔ T(∃xφ)` at the quantified
    /// member's code.
    T5 { ex: bool, dir: Dir, code: Code },
    /// `Π(φ) ⇒ Pφ`.
    P1 { code: Code },
    /// `P(¬Aφ) ⇔ P(Aφ)` for `A` the truth (or paradoxicality) predicate.
    P2 { par: bool, dir: Dir, term: Term },
    /// `P(T t) ⇔ P(val t) ∨ Π(T t)`.
    P3 { dir: Dir, term: Term },
    /// The conjunction clause at the compound's code.
    P4 { dir: Dir, code: Code },
    /// The disjunction clause at the compound's code.
    P5 { dir: Dir, code: Code },
    /// The universal clause at the quantified member's code.
    P6 { dir: Dir, code: Code },
    /// The existential clause at the quantified member's code.
    P7 { dir: Dir, code: Code },
    /// `T(φ∨¬φ) ⇒ ¬Pφ`.
    I1 { code: Code },
    /// The inconsistent contrapositive `Pφ ⇒ ¬T(φ∨¬φ)`; only admitted
    /// behind the negative-control switch.
    I1Contra { code: Code },
    /// `∅ ⇒ ¬P(P t)`.
    NotPP { term: Term },
}

#[derive(Debug, Error)]
pub enum AxiomError {
    #[error("term does not evaluate: {0}")]
    Eval(#[from] EvalError),
    #[error("code {0} is not a sentence of the universe")]
    NotASentence(Code),
    #[error("sentence not coded in this universe: {0}")]
    NotCoded(String),
    #[error("schema expects a {expected}, but {code} codes {found}")]
    WrongShape {
        expected: &'static str,
        code: Code,
        found: String,
    },
    #[error("arithmetic oracle rejects {sequent}: {reason}")]
    ArithRejected { sequent: String, reason: String },
}

fn dir_pair(dir: Dir, lhs: Vec<Formula>, rhs: Vec<Formula>) -> Sequent {
    match dir {
        Dir::Ltr => Sequent::new(lhs, rhs),
        Dir::Rtl => Sequent::new(rhs, lhs),
    }
}

fn coded(uni: &Universe, phi: &Formula) -> Result<Code, AxiomError> {
    uni.code_of(phi)
        .ok_or_else(|| AxiomError::NotCoded(phi.to_string()))
}

fn decoded(uni: &Universe, code: Code) -> Result<Formula, AxiomError> {
    uni.decode(code)
        .cloned()
        .ok_or(AxiomError::NotASentence(code))
}

/// `Π` as an arithmetic literal: `0 = 0` when it holds of the code,
/// `0 = 1` otherwise.
fn pi_literal(uni: &Universe, code: Code) -> Formula {
    if pi(uni, code) {
        Formula::Eq(Term::Num(0), Term::Num(0))
    } else {
        Formula::Eq(Term::Num(0), Term::Num(1))
    }
}

fn tr(c: Code) -> Formula {
    Formula::Tr(Term::Num(c))
}

fn par(c: Code) -> Formula {
    Formula::Par(Term::Num(c))
}

fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

/// A variable distinct from the matrix's bound variable, for the
/// second quantifier in the quantified paradoxicality clauses.
fn fresh_var(avoid: &str) -> String {
    if avoid == "y" {
        "y0".to_string()
    } else {
        "y".to_string()
    }
}

/// Instance term: the code of the matrix instantiated at a variable.
fn inst(matrix: &Formula, var: &str, at: &str) -> Term {
    Term::Inst(
        Box::new(matrix.clone()),
        var.to_string(),
        Box::new(Term::Var(at.to_string())),
    )
}

/// Build the sequent an axiom instance denotes, checking its guards.
pub fn instantiate_axiom(uni: &Universe, schema: &AxiomSchema) -> Result<Sequent, AxiomError> {
    use AxiomSchema::*;
    Ok(match schema {
        Ref { term } => Sequent::new([], [Formula::Eq(term.clone(), term.clone())]),
        Arith { sequent } => {
            validate_arith(uni, sequent)?;
            sequent.clone()
        }
        T1 {
            neq,
            dir,
            left,
            right,
        } => {
            uni.eval_term(left)?;
            uni.eval_term(right)?;
            let equation = if *neq {
                Formula::Neq(left.clone(), right.clone())
            } else {
                Formula::Eq(left.clone(), right.clone())
            };
            let code = coded(uni, &equation)?;
            dir_pair(*dir, vec![equation], vec![tr(code)])
        }
        T2 { negated, dir, term } => {
            uni.eval_term(term)?;
            let literal = if *negated {
                Formula::NotPar(term.clone())
            } else {
                Formula::Par(term.clone())
            };
            let code = coded(uni, &literal)?;
            dir_pair(*dir, vec![literal], vec![tr(code)])
        }
        T3Rep { dir, term } => {
            uni.eval_term(term)?;
            let literal = Formula::Tr(term.clone());
            let code = coded(uni, &literal)?;
            dir_pair(*dir, vec![literal], vec![tr(code)])
        }
        T3Neg { dir, term } => {
            let referent = uni.eval_term(term)?;
            let phi = decoded(uni, referent)?;
            let neg_code = coded(uni, &negate(&phi))?;
            dir_pair(*dir, vec![tr(neg_code)], vec![Formula::NotTr(term.clone())])
        }
        T4 {
            or: is_or,
            dir,
            code,
        } => {
            let phi = decoded(uni, *code)?;
            let (a, b, compose): (_, _, fn(Formula, Formula) -> Formula) = match (&phi, is_or) {
                (Formula::And(a, b), false) => ((**a).clone(), (**b).clone(), and),
                (Formula::Or(a, b), true) => ((**a).clone(), (**b).clone(), or),
                _ => {
                    return Err(AxiomError::WrongShape {
                        expected: if *is_or { "disjunction" } else { "conjunction" },
                        code: *code,
                        found: phi.to_string(),
                    })
                }
            };
            let (ca, cb) = (coded(uni, &a)?, coded(uni, &b)?);
            dir_pair(*dir, vec![compose(tr(ca), tr(cb))], vec![tr(*code)])
        }
        T5 { ex, dir, code } => {
            let phi = decoded(uni, *code)?;
            let ascribed = match (&phi, ex) {
                (Formula::All(v, m), false) => {
                    Formula::All(v.clone(), Box::new(Formula::Tr(inst(m, v, v))))
                }
                (Formula::Ex(v, m), true) => {
                    Formula::Ex(v.clone(), Box::new(Formula::Tr(inst(m, v, v))))
                }
                _ => {
                    return Err(AxiomError::WrongShape {
                        expected: if *ex { "existential" } else { "universal" },
                        code: *code,
                        found: phi.to_string(),
                    })
                }
            };
            dir_pair(*dir, vec![ascribed], vec![tr(*code)])
        }
        P1 { code } => {
            decoded(uni, *code)?;
            Sequent::new([pi_literal(uni, *code)], [par(*code)])
        }
        P2 {
            par: is_par,
            dir,
            term,
        } => {
            uni.eval_term(term)?;
            let (pos, neg) = if *is_par {
                (Formula::Par(term.clone()), Formula::NotPar(term.clone()))
            } else {
                (Formula::Tr(term.clone()), Formula::NotTr(term.clone()))
            };
            let (cpos, cneg) = (coded(uni, &pos)?, coded(uni, &neg)?);
            dir_pair(*dir, vec![par(cneg)], vec![par(cpos)])
        }
        P3 { dir, term } => {
            let referent = uni.eval_term(term)?;
            let literal = Formula::Tr(term.clone());
            let code = coded(uni, &literal)?;
            dir_pair(
                *dir,
                vec![par(code)],
                vec![or(par(referent), pi_literal(uni, code))],
            )
        }
        P4 { dir, code } | P5 { dir, code } => {
            let disj = matches!(schema, P5 { .. });
            let phi = decoded(uni, *code)?;
            let (a, b) = match (&phi, disj) {
                (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                    ((**a).clone(), (**b).clone())
                }
                _ => {
                    return Err(AxiomError::WrongShape {
                        expected: if disj { "disjunction" } else { "conjunction" },
                        code: *code,
                        found: phi.to_string(),
                    })
                }
            };
            let (ca, cb) = (coded(uni, &a)?, coded(uni, &b)?);
            // For a conjunction the grounded clauses use true components;
            // for a disjunction, false ones.
            let side = |c: Code| {
                if disj {
                    Formula::NotTr(Term::Num(c))
                } else {
                    tr(c)
                }
            };
            let rhs = or(
                or(
                    or(and(par(ca), par(cb)), and(side(ca), par(cb))),
                    and(side(cb), par(ca)),
                ),
                pi_literal(uni, *code),
            );
            dir_pair(*dir, vec![par(*code)], vec![rhs])
        }
        P6 { dir, code } | P7 { dir, code } => {
            let ex = matches!(schema, P7 { .. });
            let phi = decoded(uni, *code)?;
            let (v, m) = match (&phi, ex) {
                (Formula::All(v, m), false) | (Formula::Ex(v, m), true) => (v.clone(), m.clone()),
                _ => {
                    return Err(AxiomError::WrongShape {
                        expected: if ex { "existential" } else { "universal" },
                        code: *code,
                        found: phi.to_string(),
                    })
                }
            };
            let y = fresh_var(&v);
            let witness = Formula::Ex(v.clone(), Box::new(Formula::Par(inst(&m, &v, &v))));
            let each = {
                let p_part = Formula::Par(inst(&m, &v, &y));
                let t_part = if ex {
                    Formula::NotTr(inst(&m, &v, &y))
                } else {
                    Formula::Tr(inst(&m, &v, &y))
                };
                Formula::All(y.clone(), Box::new(or(p_part, t_part)))
            };
            let rhs = or(and(witness, each), pi_literal(uni, *code));
            dir_pair(*dir, vec![par(*code)], vec![rhs])
        }
        I1 { code } => {
            let phi = decoded(uni, *code)?;
            let lem = coded(uni, &or(phi.clone(), negate(&phi)))?;
            Sequent::new([tr(lem)], [Formula::NotPar(Term::Num(*code))])
        }
        I1Contra { code } => {
            let phi = decoded(uni, *code)?;
            let lem = coded(uni, &or(phi.clone(), negate(&phi)))?;
            Sequent::new([par(*code)], [Formula::NotTr(Term::Num(lem))])
        }
        NotPP { term } => {
            uni.eval_term(term)?;
            let literal = Formula::Par(term.clone());
            let code = coded(uni, &literal)?;
            Sequent::new([], [Formula::NotPar(Term::Num(code))])
        }
    })
}

fn validate_arith(uni: &Universe, sequent: &Sequent) -> Result<(), AxiomError> {
    let reject = |reason: &str| AxiomError::ArithRejected {
        sequent: sequent.to_string(),
        reason: reason.to_string(),
    };
    let holds = |f: &Formula| -> Result<bool, AxiomError> {
        match f {
            Formula::Eq(a, b) => Ok(uni.eval_term(a).map_err(AxiomError::Eval)?
                == uni.eval_term(b).map_err(AxiomError::Eval)?),
            Formula::Neq(a, b) => Ok(uni.eval_term(a).map_err(AxiomError::Eval)?
                != uni.eval_term(b).map_err(AxiomError::Eval)?),
            _ => Err(reject("only closed arithmetic literals are admitted")),
        }
    };
    let mut all_ant_true = true;
    for f in &sequent.ant {
        if !holds(f)? {
            all_ant_true = false;
        }
    }
    let mut some_suc_true = false;
    for f in &sequent.suc {
        if holds(f)? {
            some_suc_true = true;
        }
    }
    if all_ant_true && !some_suc_true {
        return Err(reject("not valid in the standard model"));
    }
    Ok(())
}

impl AxiomSchema {
    /// Stable identifier used by proof scripts and diagnostics.
    pub fn id(&self) -> String {
        use AxiomSchema::*;
        let d = |dir: &Dir| match dir {
            Dir::Ltr => "ltr",
            Dir::Rtl => "rtl",
        };
        match self {
            Ref { .. } => "ref".into(),
            Arith { .. } => "arith".into(),
            T1 { neq, dir, .. } => {
                format!("t1.{}.{}", if *neq { "neq" } else { "eq" }, d(dir))
            }
            T2 { negated, dir, .. } => {
                format!("t2.{}.{}", if *negated { "np" } else { "p" }, d(dir))
            }
            T3Rep { dir, .. } => format!("t3.rep.{}", d(dir)),
            T3Neg { dir, .. } => format!("t3.neg.{}", d(dir)),
            T4 { or, dir, .. } => format!("t4.{}.{}", if *or { "or" } else { "and" }, d(dir)),
            T5 { ex, dir, .. } => format!("t5.{}.{}", if *ex { "ex" } else { "all" }, d(dir)),
            P1 { .. } => "p1".into(),
            P2 { par, dir, .. } => format!("p2.{}.{}", if *par { "p" } else { "t" }, d(dir)),
            P3 { dir, .. } => format!("p3.{}", d(dir)),
            P4 { dir, .. } => format!("p4.{}", d(dir)),
            P5 { dir, .. } => format!("p5.{}", d(dir)),
            P6 { dir, .. } => format!("p6.{}", d(dir)),
            P7 { dir, .. } => format!("p7.{}", d(dir)),
            I1 { .. } => "i1".into(),
            I1Contra { .. } => "i1.contra".into(),
            NotPP { .. } => "notpp".into(),
        }
    }
}

/// Result of auditing every instantiable axiom instance at a fixed point.
#[derive(Debug, Clone, Default)]
pub struct AuditOutcome {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<(String, String)>,
}

impl AuditOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every instantiable instance of the truth, paradoxicality, and
/// interaction principles against the fixed point; under the starred
/// variant, also every `¬P(P t)` instance. Instances whose guards fail
/// (e.g. an ascription that is not coded) are skipped as non-instantiable.
pub fn audit_fixed_point(uni: &Universe, seq: &StageSequence) -> Result<AuditOutcome, EvalError> {
    let mut out = AuditOutcome::default();
    let fp = seq.fixed_point();
    let both = [Dir::Ltr, Dir::Rtl];
    let run = |schema: AxiomSchema, out: &mut AuditOutcome| -> Result<(), EvalError> {
        match instantiate_axiom(uni, &schema) {
            Ok(sequent) => {
                out.checked += 1;
                if !sat_sequent(uni, fp, &sequent)? {
                    out.failures.push((schema.id(), sequent.to_string()));
                }
            }
            Err(_) => out.skipped += 1,
        }
        Ok(())
    };
    for (code, phi) in uni.members() {
        run(AxiomSchema::P1 { code }, &mut out)?;
        run(AxiomSchema::I1 { code }, &mut out)?;
        for dir in both {
            run(
                AxiomSchema::T3Neg {
                    dir,
                    term: Term::Num(code),
                },
                &mut out,
            )?;
        }
        match phi {
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                let neq = matches!(phi, Formula::Neq(..));
                for dir in both {
                    run(
                        AxiomSchema::T1 {
                            neq,
                            dir,
                            left: a.clone(),
                            right: b.clone(),
                        },
                        &mut out,
                    )?;
                }
            }
            Formula::Tr(t) => {
                for dir in both {
                    run(
                        AxiomSchema::T3Rep {
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                    run(
                        AxiomSchema::P2 {
                            par: false,
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                    run(
                        AxiomSchema::P3 {
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                }
            }
            Formula::Par(t) => {
                for dir in both {
                    run(
                        AxiomSchema::T2 {
                            negated: false,
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                    run(
                        AxiomSchema::P2 {
                            par: true,
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                }
                if seq.variant() == Variant::TpPlus {
                    run(AxiomSchema::NotPP { term: t.clone() }, &mut out)?;
                }
            }
            Formula::NotPar(t) => {
                for dir in both {
                    run(
                        AxiomSchema::T2 {
                            negated: true,
                            dir,
                            term: t.clone(),
                        },
                        &mut out,
                    )?;
                }
            }
            Formula::And(..) => {
                for dir in both {
                    run(
                        AxiomSchema::T4 {
                            or: false,
                            dir,
                            code,
                        },
                        &mut out,
                    )?;
                    run(AxiomSchema::P4 { dir, code }, &mut out)?;
                }
            }
            Formula::Or(..) => {
                for dir in both {
                    run(
                        AxiomSchema::T4 {
                            or: true,
                            dir,
                            code,
                        },
                        &mut out,
                    )?;
                    run(AxiomSchema::P5 { dir, code }, &mut out)?;
                }
            }
            Formula::All(..) => {
                for dir in both {
                    run(
                        AxiomSchema::T5 {
                            ex: false,
                            dir,
                            code,
                        },
                        &mut out,
                    )?;
                    run(AxiomSchema::P6 { dir, code }, &mut out)?;
                }
            }
            Formula::Ex(..) => {
                for dir in both {
                    run(
                        AxiomSchema::T5 {
                            ex: true,
                            dir,
                            code,
                        },
                        &mut out,
                    )?;
                    run(AxiomSchema::P7 { dir, code }, &mut out)?;
                }
            }
            Formula::NotTr(..) => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_defs, CloseLimits};

    fn universe() -> Universe {
        let env = parse_defs(
            "#domain 32\n\
             liar := ~T(quote(liar))\n\
             liarneg := T(quote(liar))\n\
             zero := 0 = 0\n\
             lem_liar := ~T(quote(liar)) | T(quote(liar))\n\
             p_liar := P(quote(liar))\n",
        )
        .unwrap();
        Universe::close(env, CloseLimits::default()).unwrap()
    }

    #[test]
    fn i1_at_the_liar_is_the_displayed_sequent() {
        let uni = universe();
        let liar = uni.env().code_of_name("liar").unwrap();
        let lem = uni.env().code_of_name("lem_liar").unwrap();
        let s = instantiate_axiom(&uni, &AxiomSchema::I1 { code: liar }).unwrap();
        assert_eq!(
            s,
            Sequent::new(
                [Formula::Tr(Term::Num(lem))],
                [Formula::NotPar(Term::Num(liar))],
            )
        );
    }

    #[test]
    fn t1_relates_an_equation_to_its_ascription() {
        let uni = universe();
        let zero = uni.env().code_of_name("zero").unwrap();
        let s = instantiate_axiom(
            &uni,
            &AxiomSchema::T1 {
                neq: false,
                dir: Dir::Ltr,
                left: Term::num(0),
                right: Term::num(0),
            },
        )
        .unwrap();
        assert_eq!(
            s,
            Sequent::new(
                [Formula::Eq(Term::num(0), Term::num(0))],
                [Formula::Tr(Term::Num(zero))],
            )
        );
    }

    #[test]
    fn sk_initial_is_a_plain_initial_sequent() {
        // The φ ⇒ φ case is RuleApp::Initial; Ref covers ⇒ t = t.
        let uni = universe();
        let s = instantiate_axiom(&uni, &AxiomSchema::Ref { term: Term::num(5) }).unwrap();
        assert_eq!(
            s,
            Sequent::new([], [Formula::Eq(Term::num(5), Term::num(5))])
        );
    }

    #[test]
    fn p1_emits_the_pi_guard_as_a_literal() {
        let uni = universe();
        let liar = uni.env().code_of_name("liar").unwrap();
        let zero = uni.env().code_of_name("zero").unwrap();
        let at_liar = instantiate_axiom(&uni, &AxiomSchema::P1 { code: liar }).unwrap();
        assert!(at_liar
            .ant
            .contains(&Formula::Eq(Term::num(0), Term::num(0))));
        let at_zero = instantiate_axiom(&uni, &AxiomSchema::P1 { code: zero }).unwrap();
        assert!(at_zero
            .ant
            .contains(&Formula::Eq(Term::num(0), Term::num(1))));
    }

    #[test]
    fn guards_reject_uncoded_ascriptions() {
        let uni = universe();
        let zero = uni.env().code_of_name("zero").unwrap();
        // No sentence T(zero) is coded in this universe.
        let err = instantiate_axiom(
            &uni,
            &AxiomSchema::T3Rep {
                dir: Dir::Ltr,
                term: Term::Num(zero),
            },
        )
        .unwrap_err();
        assert!(matches!(err, AxiomError::NotCoded(_)));
    }

    #[test]
    fn arith_oracle_checks_standard_validity() {
        let uni = universe();
        let good = Sequent::new(
            [Formula::Eq(Term::num(2), Term::num(2))],
            [Formula::Neq(Term::num(0), Term::num(1))],
        );
        instantiate_axiom(&uni, &AxiomSchema::Arith { sequent: good }).unwrap();

        let bad = Sequent::new([], [Formula::Eq(Term::num(0), Term::num(1))]);
        let err = instantiate_axiom(&uni, &AxiomSchema::Arith { sequent: bad }).unwrap_err();
        assert!(matches!(err, AxiomError::ArithRejected { .. }));

        let non_arith = Sequent::new([], [Formula::Tr(Term::num(1))]);
        assert!(instantiate_axiom(&uni, &AxiomSchema::Arith { sequent: non_arith }).is_err());
    }
}
