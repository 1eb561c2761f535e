//! Strong Kleene satisfaction over partial models.
//!
//! A partial model interprets `T` and `P` by extension/anti-extension
//! pairs over the universe's codes. Arithmetic literals are classical;
//! `T`/`P` applied to a number that codes no sentence is undefined, since
//! the jump only ever populates the four sets with sentence codes.
//! Quantifiers range over `{0, …, N_dom}`.

use crate::jump;
use crate::syntax::{negate, substitute, Code, EvalError, Formula, Term, Universe};
use std::collections::BTreeSet;

/// Three-valued truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthValue {
    True,
    False,
    Undefined,
}

impl TruthValue {
    pub fn negated(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
        }
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (TruthValue::False, _) | (_, TruthValue::False) => TruthValue::False,
            (TruthValue::True, TruthValue::True) => TruthValue::True,
            _ => TruthValue::Undefined,
        }
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        match (self, other) {
            (TruthValue::True, _) | (_, TruthValue::True) => TruthValue::True,
            (TruthValue::False, TruthValue::False) => TruthValue::False,
            _ => TruthValue::Undefined,
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

/// A stage snapshot: extension/anti-extension pairs for `T` and `P`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialModel {
    pub t_plus: BTreeSet<Code>,
    pub t_minus: BTreeSet<Code>,
    pub p_plus: BTreeSet<Code>,
    pub p_minus: BTreeSet<Code>,
}

impl PartialModel {
    pub fn empty() -> PartialModel {
        PartialModel::default()
    }

    /// Componentwise inclusion.
    pub fn le(&self, other: &PartialModel) -> bool {
        self.t_plus.is_subset(&other.t_plus)
            && self.t_minus.is_subset(&other.t_minus)
            && self.p_plus.is_subset(&other.p_plus)
            && self.p_minus.is_subset(&other.p_minus)
    }
}

/// `T⁺ ∩ T⁻ = ∅` and `P⁺ ∩ P⁻ = ∅`.
pub fn is_consistent(m: &PartialModel) -> bool {
    m.t_plus.is_disjoint(&m.t_minus) && m.p_plus.is_disjoint(&m.p_minus)
}

/// Three-valued evaluation of a closed formula.
pub fn value(uni: &Universe, m: &PartialModel, phi: &Formula) -> Result<TruthValue, EvalError> {
    match phi {
        Formula::Eq(a, b) => Ok((uni.eval_term(a)? == uni.eval_term(b)?).into()),
        Formula::Neq(a, b) => Ok((uni.eval_term(a)? != uni.eval_term(b)?).into()),
        Formula::Tr(t) => {
            let c = uni.eval_term(t)?;
            Ok(lookup(&m.t_plus, &m.t_minus, c))
        }
        Formula::NotTr(t) => {
            let c = uni.eval_term(t)?;
            Ok(lookup(&m.t_minus, &m.t_plus, c))
        }
        Formula::Par(t) => {
            let c = uni.eval_term(t)?;
            Ok(lookup(&m.p_plus, &m.p_minus, c))
        }
        Formula::NotPar(t) => {
            let c = uni.eval_term(t)?;
            Ok(lookup(&m.p_minus, &m.p_plus, c))
        }
        Formula::And(a, b) => Ok(value(uni, m, a)?.and(value(uni, m, b)?)),
        Formula::Or(a, b) => Ok(value(uni, m, a)?.or(value(uni, m, b)?)),
        Formula::All(v, matrix) => {
            let mut acc = TruthValue::True;
            for d in 0..=uni.domain_bound() {
                let inst = substitute(matrix, v, &Term::Num(d)).expect("closed numeral");
                match value(uni, m, &inst)? {
                    TruthValue::False => return Ok(TruthValue::False),
                    TruthValue::Undefined => acc = TruthValue::Undefined,
                    TruthValue::True => {}
                }
            }
            Ok(acc)
        }
        Formula::Ex(v, matrix) => {
            let mut acc = TruthValue::False;
            for d in 0..=uni.domain_bound() {
                let inst = substitute(matrix, v, &Term::Num(d)).expect("closed numeral");
                match value(uni, m, &inst)? {
                    TruthValue::True => return Ok(TruthValue::True),
                    TruthValue::Undefined => acc = TruthValue::Undefined,
                    TruthValue::False => {}
                }
            }
            Ok(acc)
        }
    }
}

fn lookup(pos: &BTreeSet<Code>, neg: &BTreeSet<Code>, c: Code) -> TruthValue {
    if pos.contains(&c) {
        TruthValue::True
    } else if neg.contains(&c) {
        TruthValue::False
    } else {
        TruthValue::Undefined
    }
}

/// A two-sided sequent over finite sets of formulas.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sequent {
    pub ant: BTreeSet<Formula>,
    pub suc: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new<A, S>(ant: A, suc: S) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent {
            ant: ant.into_iter().collect(),
            suc: suc.into_iter().collect(),
        }
    }
}

impl std::fmt::Display for Sequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |fs: &BTreeSet<Formula>| {
            fs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{} => {}", side(&self.ant), side(&self.suc))
    }
}

/// Sequent satisfaction: if every antecedent is true, some succedent is.
pub fn sat_sequent(uni: &Universe, m: &PartialModel, s: &Sequent) -> Result<bool, EvalError> {
    for gamma in &s.ant {
        if value(uni, m, gamma)? != TruthValue::True {
            return Ok(true);
        }
    }
    for delta in &s.suc {
        if value(uni, m, delta)? == TruthValue::True {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Soundness of a stage: no sentence both satisfies the paradoxicality
/// closure condition and has a true excluded middle.
pub fn is_sound(uni: &Universe, m: &PartialModel) -> Result<bool, EvalError> {
    for (code, phi) in uni.members() {
        let lem = Formula::Or(Box::new(phi.clone()), Box::new(negate(phi)));
        if value(uni, m, &lem)? == TruthValue::True && jump::p_condition(uni, m, code)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search a fixed family of consistent standard structures for one in
/// which the two sentences receive different values. Finding none proves
/// nothing; the family mirrors the ad-hoc structures used to refute
/// equivalences.
pub fn search_countermodel(
    uni: &Universe,
    lhs: &Formula,
    rhs: &Formula,
) -> Result<Option<PartialModel>, EvalError> {
    let all: BTreeSet<Code> = uni.codes().collect();
    let mut family: Vec<PartialModel> = vec![
        PartialModel::empty(),
        PartialModel {
            p_plus: all.clone(),
            ..Default::default()
        },
        PartialModel {
            p_minus: all.clone(),
            ..Default::default()
        },
        PartialModel {
            t_plus: all.clone(),
            ..Default::default()
        },
        PartialModel {
            t_minus: all.clone(),
            ..Default::default()
        },
    ];
    for c in &all {
        for field in 0..4 {
            let mut m = PartialModel::empty();
            match field {
                0 => {
                    m.t_plus.insert(*c);
                }
                1 => {
                    m.t_minus.insert(*c);
                }
                2 => {
                    m.p_plus.insert(*c);
                }
                _ => {
                    m.p_minus.insert(*c);
                }
            }
            family.push(m);
        }
    }
    for m in family {
        if value(uni, &m, lhs)? != value(uni, &m, rhs)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
