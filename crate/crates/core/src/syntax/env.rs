//! Definition environments: named self-referential sentences with assigned
//! Gödel codes.
//!
//! Self-reference is realized by direct fixed-point definitions: a name is
//! assigned a code first, and `quote(name)` occurrences in any definiens
//! then resolve to the numeral of that code. Two definitions with the same
//! resolved definiens would break the coding bijection and are rejected.

use super::{Code, Formula, Nat, Term};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors raised while assembling a definition environment.
#[derive(Debug, Error)]
pub enum EnvError {
    #[error("duplicate definition of {0}")]
    DuplicateName(String),
    #[error("definition of {name} quotes undefined name {quoted}")]
    UndefinedQuote { name: String, quoted: String },
    #[error("definiens of {name} is open (free variables {vars:?})")]
    OpenDefiniens {
        name: String,
        vars: BTreeSet<String>,
    },
    #[error("domain bound {bound} too small for {n} named sentences")]
    DomainTooSmall { bound: Nat, n: usize },
    #[error("definitions of {0} and {1} resolve to the same sentence")]
    DuplicateDefiniens(String, String),
    #[error("#base names undefined sentence {0}")]
    UndefinedBase(String),
}

/// Named sentence definitions with codes, the numeric domain bound, and
/// the user-declared base-paradoxical list.
#[derive(Debug, Clone)]
pub struct DefEnv {
    names: Vec<String>,
    raw: BTreeMap<String, Formula>,
    resolved: BTreeMap<String, Formula>,
    codes: BTreeMap<String, Code>,
    base: BTreeSet<String>,
    domain_bound: Nat,
}

impl DefEnv {
    /// Build an environment from definitions in order. Codes are assigned
    /// densely from 1 in definition order and must stay within the domain
    /// bound so quantifiers can reach them.
    pub fn new(
        defs: Vec<(String, Formula)>,
        base: Vec<String>,
        domain_bound: Nat,
    ) -> Result<DefEnv, EnvError> {
        if (defs.len() as Nat) > domain_bound {
            return Err(EnvError::DomainTooSmall {
                bound: domain_bound,
                n: defs.len(),
            });
        }
        let mut names = Vec::new();
        let mut raw = BTreeMap::new();
        let mut codes = BTreeMap::new();
        for (i, (name, body)) in defs.iter().enumerate() {
            if raw.insert(name.clone(), body.clone()).is_some() {
                return Err(EnvError::DuplicateName(name.clone()));
            }
            names.push(name.clone());
            codes.insert(name.clone(), (i + 1) as Code);
        }
        // Validate quotes and closedness, then resolve quote(name) to the
        // numeral of the assigned code.
        let mut resolved = BTreeMap::new();
        for name in &names {
            let body = &raw[name];
            let fv = body.free_vars();
            if !fv.is_empty() {
                return Err(EnvError::OpenDefiniens {
                    name: name.clone(),
                    vars: fv,
                });
            }
            for quoted in quoted_names(body) {
                if !codes.contains_key(&quoted) {
                    return Err(EnvError::UndefinedQuote {
                        name: name.clone(),
                        quoted,
                    });
                }
            }
            resolved.insert(name.clone(), resolve_formula(body, &codes));
        }
        // The coding table must stay injective on sentences.
        let mut seen: BTreeMap<&Formula, &String> = BTreeMap::new();
        for name in &names {
            if let Some(prev) = seen.insert(&resolved[name], name) {
                return Err(EnvError::DuplicateDefiniens(prev.clone(), name.clone()));
            }
        }
        for b in &base {
            if !codes.contains_key(b) {
                return Err(EnvError::UndefinedBase(b.clone()));
            }
        }
        Ok(DefEnv {
            names,
            raw,
            resolved,
            codes,
            base: base.into_iter().collect(),
            domain_bound,
        })
    }

    /// An environment with no definitions.
    pub fn empty(domain_bound: Nat) -> DefEnv {
        DefEnv::new(Vec::new(), Vec::new(), domain_bound).expect("empty environment")
    }

    pub fn domain_bound(&self) -> Nat {
        self.domain_bound
    }

    /// Definition names in definition order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn code_of_name(&self, name: &str) -> Option<Code> {
        self.codes.get(name).copied()
    }

    pub fn name_of_code(&self, code: Code) -> Option<&str> {
        self.names
            .iter()
            .find(|n| self.codes[*n] == code)
            .map(|s| s.as_str())
    }

    /// The definiens as written, with `quote(..)` intact.
    pub fn raw_definiens(&self, name: &str) -> Option<&Formula> {
        self.raw.get(name)
    }

    /// The definiens with quotes resolved to code numerals.
    pub fn definiens(&self, name: &str) -> Option<&Formula> {
        self.resolved.get(name)
    }

    /// Names declared base-paradoxical via `#base`.
    pub fn declared_base(&self) -> &BTreeSet<String> {
        &self.base
    }

    /// Resolve `quote(..)` occurrences in an externally supplied formula.
    pub fn resolve(&self, phi: &Formula) -> Result<Formula, EnvError> {
        for quoted in quoted_names(phi) {
            if !self.codes.contains_key(&quoted) {
                return Err(EnvError::UndefinedQuote {
                    name: "<input>".into(),
                    quoted,
                });
            }
        }
        Ok(resolve_formula(phi, &self.codes))
    }

    /// Resolve `quote(..)` occurrences in an externally supplied term.
    pub fn resolve_term(&self, t: &Term) -> Result<Term, EnvError> {
        let probe = Formula::Tr(t.clone());
        for quoted in quoted_names(&probe) {
            if !self.codes.contains_key(&quoted) {
                return Err(EnvError::UndefinedQuote {
                    name: "<input>".into(),
                    quoted,
                });
            }
        }
        Ok(resolve_term(t, &self.codes))
    }
}

fn quoted_names_term(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Quote(n) => {
            out.insert(n.clone());
        }
        Term::Num(_) | Term::Var(_) => {}
        Term::Suc(a)
        | Term::NumOf(a)
        | Term::DotT(a)
        | Term::DotP(a)
        | Term::DotNegT(a)
        | Term::DotNegP(a)
        | Term::DotNeg(a) => quoted_names_term(a, out),
        Term::Add(a, b)
        | Term::Mul(a, b)
        | Term::DotEq(a, b)
        | Term::DotNeq(a, b)
        | Term::DotAnd(a, b)
        | Term::DotOr(a, b)
        | Term::DotAll(a, b)
        | Term::DotEx(a, b)
        | Term::IterT(a, b) => {
            quoted_names_term(a, out);
            quoted_names_term(b, out);
        }
        Term::Inst(m, _, a) => {
            out.extend(quoted_names(m));
            quoted_names_term(a, out);
        }
    }
}

/// Names mentioned under `quote(..)` anywhere in the formula.
pub(crate) fn quoted_names(phi: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut stack = vec![phi];
    while let Some(f) = stack.pop() {
        match f {
            Formula::Eq(a, b) | Formula::Neq(a, b) => {
                quoted_names_term(a, &mut out);
                quoted_names_term(b, &mut out);
            }
            Formula::Tr(t) | Formula::NotTr(t) | Formula::Par(t) | Formula::NotPar(t) => {
                quoted_names_term(t, &mut out)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            Formula::All(_, m) | Formula::Ex(_, m) => stack.push(m),
        }
    }
    out
}

fn resolve_term(t: &Term, codes: &BTreeMap<String, Code>) -> Term {
    match t {
        Term::Quote(n) => Term::Num(codes[n]),
        Term::Num(_) | Term::Var(_) => t.clone(),
        Term::Suc(a) => Term::Suc(Box::new(resolve_term(a, codes))),
        Term::NumOf(a) => Term::NumOf(Box::new(resolve_term(a, codes))),
        Term::DotT(a) => Term::DotT(Box::new(resolve_term(a, codes))),
        Term::DotP(a) => Term::DotP(Box::new(resolve_term(a, codes))),
        Term::DotNegT(a) => Term::DotNegT(Box::new(resolve_term(a, codes))),
        Term::DotNegP(a) => Term::DotNegP(Box::new(resolve_term(a, codes))),
        Term::DotNeg(a) => Term::DotNeg(Box::new(resolve_term(a, codes))),
        Term::Add(a, b) => Term::Add(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::Mul(a, b) => Term::Mul(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotEq(a, b) => Term::DotEq(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotNeq(a, b) => Term::DotNeq(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotAnd(a, b) => Term::DotAnd(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotOr(a, b) => Term::DotOr(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotAll(a, b) => Term::DotAll(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::DotEx(a, b) => Term::DotEx(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::IterT(a, b) => Term::IterT(
            Box::new(resolve_term(a, codes)),
            Box::new(resolve_term(b, codes)),
        ),
        Term::Inst(m, v, a) => Term::Inst(
            Box::new(resolve_formula(m, codes)),
            v.clone(),
            Box::new(resolve_term(a, codes)),
        ),
    }
}

/// Replace `quote(name)` by the numeral of the name's code throughout.
pub(crate) fn resolve_formula(phi: &Formula, codes: &BTreeMap<String, Code>) -> Formula {
    match phi {
        Formula::Eq(a, b) => Formula::Eq(resolve_term(a, codes), resolve_term(b, codes)),
        Formula::Neq(a, b) => Formula::Neq(resolve_term(a, codes), resolve_term(b, codes)),
        Formula::Tr(t) => Formula::Tr(resolve_term(t, codes)),
        Formula::NotTr(t) => Formula::NotTr(resolve_term(t, codes)),
        Formula::Par(t) => Formula::Par(resolve_term(t, codes)),
        Formula::NotPar(t) => Formula::NotPar(resolve_term(t, codes)),
        Formula::And(a, b) => Formula::And(
            Box::new(resolve_formula(a, codes)),
            Box::new(resolve_formula(b, codes)),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(resolve_formula(a, codes)),
            Box::new(resolve_formula(b, codes)),
        ),
        Formula::All(v, m) => Formula::All(v.clone(), Box::new(resolve_formula(m, codes))),
        Formula::Ex(v, m) => Formula::Ex(v.clone(), Box::new(resolve_formula(m, codes))),
    }
}
