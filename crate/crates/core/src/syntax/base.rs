//! The base-paradoxicality recognizer `B` and its symmetric closure `Π`.
//!
//! `B` is a sound, deliberately partial syntactic test: a sentence is base
//! paradoxical when its normalized form is literally a negated truth
//! ascription to its own code. Normalization evaluates closed arithmetic
//! literals and drops boolean units, which is exactly enough to recognize
//! Boolean Curry sentences such as `¬T(me) ∨ 0 = 1`. Users may extend the
//! recognized set with `#base` declarations.

use super::{Code, Formula, Universe};

/// Outcome of literal-level normalization.
enum Norm {
    Truth,
    Falsity,
    Other(Formula),
}

fn normalize(uni: &Universe, phi: &Formula) -> Norm {
    match phi {
        Formula::Eq(a, b) => match (uni.eval_term(a), uni.eval_term(b)) {
            (Ok(x), Ok(y)) if x == y => Norm::Truth,
            (Ok(_), Ok(_)) => Norm::Falsity,
            _ => Norm::Other(phi.clone()),
        },
        Formula::Neq(a, b) => match (uni.eval_term(a), uni.eval_term(b)) {
            (Ok(x), Ok(y)) if x != y => Norm::Truth,
            (Ok(_), Ok(_)) => Norm::Falsity,
            _ => Norm::Other(phi.clone()),
        },
        Formula::Tr(_) | Formula::NotTr(_) | Formula::Par(_) | Formula::NotPar(_) => {
            Norm::Other(phi.clone())
        }
        Formula::And(a, b) => match (normalize(uni, a), normalize(uni, b)) {
            (Norm::Falsity, _) | (_, Norm::Falsity) => Norm::Falsity,
            (Norm::Truth, n) | (n, Norm::Truth) => n,
            (Norm::Other(x), Norm::Other(y)) => Norm::Other(Formula::And(Box::new(x), Box::new(y))),
        },
        Formula::Or(a, b) => match (normalize(uni, a), normalize(uni, b)) {
            (Norm::Truth, _) | (_, Norm::Truth) => Norm::Truth,
            (Norm::Falsity, n) | (n, Norm::Falsity) => n,
            (Norm::Other(x), Norm::Other(y)) => Norm::Other(Formula::Or(Box::new(x), Box::new(y))),
        },
        Formula::All(v, m) => match normalize(uni, m) {
            Norm::Truth => Norm::Truth,
            Norm::Falsity => Norm::Falsity,
            Norm::Other(x) => Norm::Other(Formula::All(v.clone(), Box::new(x))),
        },
        Formula::Ex(v, m) => match normalize(uni, m) {
            Norm::Truth => Norm::Truth,
            Norm::Falsity => Norm::Falsity,
            Norm::Other(x) => Norm::Other(Formula::Ex(v.clone(), Box::new(x))),
        },
    }
}

/// The predicate `B`: does the sentence coded by `code` say of itself that
/// it is not true? Non-sentences map to false.
pub fn is_base_paradoxical(uni: &Universe, code: Code) -> bool {
    if let Some(name) = uni.env().name_of_code(code) {
        if uni.env().declared_base().contains(name) {
            return true;
        }
    }
    let Some(phi) = uni.decode(code) else {
        return false;
    };
    match normalize(uni, phi) {
        Norm::Other(Formula::NotTr(t)) => uni.eval_term(&t) == Ok(code),
        _ => false,
    }
}

/// The predicate `Π`: base paradoxicality of the sentence or of its
/// De Morgan negation.
pub fn pi(uni: &Universe, code: Code) -> bool {
    if is_base_paradoxical(uni, code) {
        return true;
    }
    let Some(phi) = uni.decode(code) else {
        return false;
    };
    match uni.code_of(&super::negate(phi)) {
        Some(neg) => is_base_paradoxical(uni, neg),
        None => false,
    }
}
