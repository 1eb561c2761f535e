//! Tait-style abstract syntax, De Morgan negation, substitution, Gödel
//! coding via definition environments, and universe closure.
//!
//! Negation is not a connective: formulas are built from literals (`=`,
//! `≠`, `T`, `¬T`, `P`, `¬P`) with `∧`, `∨`, `∀`, `∃`, and [`negate`]
//! computes the De Morgan dual, so `negate(negate(f)) == f` holds
//! structurally.

mod base;
mod dsl;
mod env;
mod universe;

pub use base::{is_base_paradoxical, pi};
pub use dsl::{
    parse_defs, parse_defs_with_domain, parse_formula, parse_term, print_formula, print_term,
    DslError,
};
pub use env::{DefEnv, EnvError};
pub use universe::{CloseError, CloseLimits, Provenance, Universe};

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Natural numbers of the object language.
pub type Nat = u64;

/// A Gödel code. Codes share the number space with quantifier domain
/// elements so that quantified sentences can refer to coded sentences.
pub type Code = Nat;

/// Terms of the language: arithmetic, the numeral-of function, and the
/// syntactic builders that compute codes of sentences from codes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// A numeral.
    Num(Nat),
    /// A variable.
    Var(String),
    /// Successor.
    Suc(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// `num(t)`: the code of the numeral of the value of `t`. Numeral
    /// terms carry no codes in this artifact, so evaluation reports the
    /// value as not representable.
    NumOf(Box<Term>),
    /// The numeral of the code assigned to a named sentence. Resolved to
    /// [`Term::Num`] when a definition environment is built.
    Quote(String),
    /// Code of the equation between the numerals of the argument values.
    DotEq(Box<Term>, Box<Term>),
    DotNeq(Box<Term>, Box<Term>),
    /// Code of the conjunction of the two sentences coded by the arguments.
    DotAnd(Box<Term>, Box<Term>),
    DotOr(Box<Term>, Box<Term>),
    /// Code of a universal/existential closure. Open formulas carry no
    /// codes here, so evaluation reports not-representable.
    DotAll(Box<Term>, Box<Term>),
    DotEx(Box<Term>, Box<Term>),
    /// Code of the truth ascription to the sentence coded by the argument.
    DotT(Box<Term>),
    DotP(Box<Term>),
    DotNegT(Box<Term>),
    DotNegP(Box<Term>),
    /// Code of the De Morgan negation of the sentence coded by the argument.
    DotNeg(Box<Term>),
    /// `iterT(n, c)`: code of `n` truth ascriptions stacked onto the
    /// sentence coded by `c`.
    IterT(Box<Term>, Box<Term>),
    /// Code of a quantifier matrix instantiated at the numeral of the
    /// argument value: `inst(x. m, t)` is the code of `m[eval(t)/x]`.
    Inst(Box<Formula>, String, Box<Term>),
}

/// Formulas in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Neq(Term, Term),
    Tr(Term),
    NotTr(Term),
    Par(Term),
    NotPar(Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    All(String, Box<Formula>),
    Ex(String, Box<Formula>),
}

impl Term {
    pub fn num(n: Nat) -> Term {
        Term::Num(n)
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Num(_) => {}
            Term::Var(v) => {
                if !bound.iter().any(|b| b == v) {
                    out.insert(v.clone());
                }
            }
            Term::Suc(t)
            | Term::NumOf(t)
            | Term::DotT(t)
            | Term::DotP(t)
            | Term::DotNegT(t)
            | Term::DotNegP(t)
            | Term::DotNeg(t) => t.collect_free(bound, out),
            Term::Add(a, b)
            | Term::Mul(a, b)
            | Term::DotEq(a, b)
            | Term::DotNeq(a, b)
            | Term::DotAnd(a, b)
            | Term::DotOr(a, b)
            | Term::DotAll(a, b)
            | Term::DotEx(a, b)
            | Term::IterT(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Quote(_) => {}
            // The matrix of an instantiation term is quoted syntax: its
            // distinguished variable is not free in the surrounding term.
            Term::Inst(m, v, t) => {
                bound.push(v.clone());
                m.collect_free(bound, out);
                bound.pop();
                t.collect_free(bound, out);
            }
        }
    }

    /// Free variables of the term.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

impl Formula {
    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Tr(t) | Formula::NotTr(t) | Formula::Par(t) | Formula::NotPar(t) => {
                t.collect_free(bound, out)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::All(v, m) | Formula::Ex(v, m) => {
                bound.push(v.clone());
                m.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables of the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    /// A sentence is a closed formula.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }
}

/// The De Morgan dual: literal polarities swap, `∧`/`∨` and `∀`/`∃`
/// interchange. An involution by construction.
pub fn negate(phi: &Formula) -> Formula {
    match phi {
        Formula::Eq(a, b) => Formula::Neq(a.clone(), b.clone()),
        Formula::Neq(a, b) => Formula::Eq(a.clone(), b.clone()),
        Formula::Tr(t) => Formula::NotTr(t.clone()),
        Formula::NotTr(t) => Formula::Tr(t.clone()),
        Formula::Par(t) => Formula::NotPar(t.clone()),
        Formula::NotPar(t) => Formula::Par(t.clone()),
        Formula::And(a, b) => Formula::Or(Box::new(negate(a)), Box::new(negate(b))),
        Formula::Or(a, b) => Formula::And(Box::new(negate(a)), Box::new(negate(b))),
        Formula::All(v, m) => Formula::Ex(v.clone(), Box::new(negate(m))),
        Formula::Ex(v, m) => Formula::All(v.clone(), Box::new(negate(m))),
    }
}

/// Substitution errors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstError {
    #[error("substituted term is open (free variables {0:?})")]
    OpenTerm(BTreeSet<String>),
    #[error("substitution would capture variable {0}")]
    Capture(String),
}

fn subst_in_term(t: &Term, var: &str, repl: &Term) -> Term {
    match t {
        Term::Num(_) | Term::Quote(_) => t.clone(),
        Term::Var(v) => {
            if v == var {
                repl.clone()
            } else {
                t.clone()
            }
        }
        Term::Suc(a) => Term::Suc(Box::new(subst_in_term(a, var, repl))),
        Term::NumOf(a) => Term::NumOf(Box::new(subst_in_term(a, var, repl))),
        Term::DotT(a) => Term::DotT(Box::new(subst_in_term(a, var, repl))),
        Term::DotP(a) => Term::DotP(Box::new(subst_in_term(a, var, repl))),
        Term::DotNegT(a) => Term::DotNegT(Box::new(subst_in_term(a, var, repl))),
        Term::DotNegP(a) => Term::DotNegP(Box::new(subst_in_term(a, var, repl))),
        Term::DotNeg(a) => Term::DotNeg(Box::new(subst_in_term(a, var, repl))),
        Term::Add(a, b) => Term::Add(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::Mul(a, b) => Term::Mul(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotEq(a, b) => Term::DotEq(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotNeq(a, b) => Term::DotNeq(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotAnd(a, b) => Term::DotAnd(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotOr(a, b) => Term::DotOr(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotAll(a, b) => Term::DotAll(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::DotEx(a, b) => Term::DotEx(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        Term::IterT(a, b) => Term::IterT(
            Box::new(subst_in_term(a, var, repl)),
            Box::new(subst_in_term(b, var, repl)),
        ),
        // The matrix is quoted syntax; only the index term is live.
        Term::Inst(m, v, a) => {
            Term::Inst(m.clone(), v.clone(), Box::new(subst_in_term(a, var, repl)))
        }
    }
}

fn subst_free_rec(
    phi: &Formula,
    var: &str,
    repl: &Term,
    repl_fv: &BTreeSet<String>,
) -> Result<Formula, SubstError> {
    Ok(match phi {
        Formula::Eq(a, b) => Formula::Eq(subst_in_term(a, var, repl), subst_in_term(b, var, repl)),
        Formula::Neq(a, b) => {
            Formula::Neq(subst_in_term(a, var, repl), subst_in_term(b, var, repl))
        }
        Formula::Tr(t) => Formula::Tr(subst_in_term(t, var, repl)),
        Formula::NotTr(t) => Formula::NotTr(subst_in_term(t, var, repl)),
        Formula::Par(t) => Formula::Par(subst_in_term(t, var, repl)),
        Formula::NotPar(t) => Formula::NotPar(subst_in_term(t, var, repl)),
        Formula::And(a, b) => Formula::And(
            Box::new(subst_free_rec(a, var, repl, repl_fv)?),
            Box::new(subst_free_rec(b, var, repl, repl_fv)?),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(subst_free_rec(a, var, repl, repl_fv)?),
            Box::new(subst_free_rec(b, var, repl, repl_fv)?),
        ),
        Formula::All(v, m) | Formula::Ex(v, m) => {
            let rebuild = |m: Formula| -> Formula {
                match phi {
                    Formula::All(..) => Formula::All(v.clone(), Box::new(m)),
                    _ => Formula::Ex(v.clone(), Box::new(m)),
                }
            };
            if v == var {
                // Bound occurrence: substitution stops here.
                rebuild((**m).clone())
            } else {
                if repl_fv.contains(v) && m.free_vars().contains(var) {
                    return Err(SubstError::Capture(v.clone()));
                }
                rebuild(subst_free_rec(m, var, repl, repl_fv)?)
            }
        }
    })
}

/// Replace every free occurrence of `var` by the closed term `repl`.
pub fn substitute(phi: &Formula, var: &str, repl: &Term) -> Result<Formula, SubstError> {
    let fv = repl.free_vars();
    if !fv.is_empty() {
        return Err(SubstError::OpenTerm(fv));
    }
    subst_free_rec(phi, var, repl, &fv)
}

/// Substitution that admits open replacement terms, failing if a free
/// variable of the replacement would be captured. Used by quantifier and
/// induction rules, where eigenvariables appear.
pub fn subst_free(phi: &Formula, var: &str, repl: &Term) -> Result<Formula, SubstError> {
    let fv = repl.free_vars();
    subst_free_rec(phi, var, repl, &fv)
}

/// Term evaluation errors.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum EvalError {
    #[error("term is open: variable {0}")]
    OpenTerm(String),
    #[error("undefined name {0}")]
    UndefinedName(String),
    #[error("value not representable: {0}")]
    NotRepresentable(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&dsl::print_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&dsl::print_formula(self))
    }
}
