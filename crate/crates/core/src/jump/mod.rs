//! The double jump: truth and paradoxicality operators, fixed-point
//! iteration, paradoxicality ranks, and classification.
//!
//! One application sends a stage `(T, P)` to
//!
//! * `T⁺' = {φ : φ true}`, `T⁻' = {φ : ¬φ true}` — the Kripke jump, and
//! * `P⁺' = {φ : 𝒫(φ)}`, `P⁻' = {φ : φ∨¬φ true}` — the paradoxicality
//!   jump,
//!
//! both halves reading the same input snapshot. `𝒫` is the disjunction of
//! seven closure conditions: the base case via `Π` and quasi-compositional
//! clauses for truth ascriptions, conjunction, disjunction, and the
//! quantifiers. The sequence from the empty interpretation is weakly
//! increasing and reaches its least fixed point at a finite stage.
//!
//! The starred variant keeps every `P`-literal sentence in the
//! anti-extension of `P` from stage zero on, which makes `¬P(P t)` hold at
//! the resulting fixed point.

use crate::semantics::{is_consistent, is_sound, value, PartialModel, TruthValue};
use crate::syntax::{negate, pi, substitute, Code, EvalError, Formula, Term, Universe};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Which jump drives the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Tp,
    TpPlus,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Tp => "tp",
            Variant::TpPlus => "tp-plus",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tp" => Ok(Variant::Tp),
            "tp-plus" => Ok(Variant::TpPlus),
            other => Err(format!(
                "unknown variant {other:?} (expected tp or tp-plus)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum JumpError {
    #[error("jump applied to an inconsistent interpretation")]
    Inconsistent,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Error)]
pub enum LfpError {
    #[error("stage {stage} is inconsistent; this contradicts the main lemma and indicates a bug")]
    StageInconsistent { stage: usize },
    #[error("stage {stage} is unsound; this contradicts the main lemma and indicates a bug")]
    StageUnsound { stage: usize },
    #[error("no fixed point within the stage budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error(transparent)]
    Jump(#[from] JumpError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The paradoxicality closure condition `𝒫(φ)` at a stage.
pub fn p_condition(uni: &Universe, m: &PartialModel, code: Code) -> Result<bool, EvalError> {
    let Some(phi) = uni.decode(code) else {
        return Ok(false);
    };
    // Base clause: Π is arithmetic and stage-independent.
    if pi(uni, code) {
        return Ok(true);
    }
    let in_p = |c: Option<Code>| c.is_some_and(|c| m.p_plus.contains(&c));
    let in_t_plus = |c: Option<Code>| c.is_some_and(|c| m.t_plus.contains(&c));
    let in_t_minus = |c: Option<Code>| c.is_some_and(|c| m.t_minus.contains(&c));
    match phi {
        // Truth ascription whose referent is paradoxical.
        Formula::Tr(t) | Formula::NotTr(t) => {
            let referent = uni.eval_term(t)?;
            Ok(m.p_plus.contains(&referent))
        }
        // Conjunction: both conjuncts paradoxical, or one true and the
        // other paradoxical.
        Formula::And(a, b) => {
            let (ca, cb) = (uni.code_of(a), uni.code_of(b));
            Ok(
                (in_p(ca) && in_p(cb))
                    || (in_t_plus(ca) && in_p(cb))
                    || (in_t_plus(cb) && in_p(ca)),
            )
        }
        // Disjunction: both paradoxical, or one false and the other
        // paradoxical.
        Formula::Or(a, b) => {
            let (ca, cb) = (uni.code_of(a), uni.code_of(b));
            Ok((in_p(ca) && in_p(cb))
                || (in_t_minus(ca) && in_p(cb))
                || (in_t_minus(cb) && in_p(ca)))
        }
        // Universal: some instance paradoxical and every instance
        // paradoxical or true.
        Formula::All(v, matrix) => {
            let mut some_p = false;
            for d in 0..=uni.domain_bound() {
                let inst = substitute(matrix, v, &Term::Num(d)).expect("closed numeral");
                let c = uni.code_of(&inst);
                if in_p(c) {
                    some_p = true;
                } else if !in_t_plus(c) {
                    return Ok(false);
                }
            }
            Ok(some_p)
        }
        // Existential: some instance paradoxical and every instance
        // paradoxical or false.
        Formula::Ex(v, matrix) => {
            let mut some_p = false;
            for d in 0..=uni.domain_bound() {
                let inst = substitute(matrix, v, &Term::Num(d)).expect("closed numeral");
                let c = uni.code_of(&inst);
                if in_p(c) {
                    some_p = true;
                } else if !in_t_minus(c) {
                    return Ok(false);
                }
            }
            Ok(some_p)
        }
        Formula::Eq(..) | Formula::Neq(..) | Formula::Par(..) | Formula::NotPar(..) => Ok(false),
    }
}

fn jump_inner(
    uni: &Universe,
    m: &PartialModel,
    seed: Option<&BTreeSet<Code>>,
) -> Result<PartialModel, JumpError> {
    if !is_consistent(m) {
        return Err(JumpError::Inconsistent);
    }
    let mut out = PartialModel::empty();
    if let Some(seed) = seed {
        out.p_minus.extend(seed.iter().copied());
    }
    for (code, phi) in uni.members() {
        let v = value(uni, m, phi)?;
        let nv = value(uni, m, &negate(phi))?;
        if v == TruthValue::True {
            out.t_plus.insert(code);
        }
        if nv == TruthValue::True {
            out.t_minus.insert(code);
        }
        if v == TruthValue::True || nv == TruthValue::True {
            out.p_minus.insert(code);
        }
        if p_condition(uni, m, code)? {
            out.p_plus.insert(code);
        }
    }
    Ok(out)
}

/// One application of the double jump.
pub fn jump(uni: &Universe, m: &PartialModel) -> Result<PartialModel, JumpError> {
    jump_inner(uni, m, None)
}

/// The seed `{P t : P t ∈ U}` that the starred jump keeps in `P⁻`.
pub fn star_seed(uni: &Universe) -> BTreeSet<Code> {
    uni.members()
        .filter(|(_, phi)| matches!(phi, Formula::Par(_)))
        .map(|(c, _)| c)
        .collect()
}

/// The starred jump: as [`jump`], with the `P`-literal seed kept in the
/// anti-extension.
pub fn jump_star(uni: &Universe, m: &PartialModel) -> Result<PartialModel, JumpError> {
    let seed = star_seed(uni);
    jump_inner(uni, m, Some(&seed))
}

/// The weakly increasing stage sequence up to its fixed point.
#[derive(Debug, Clone)]
pub struct StageSequence {
    variant: Variant,
    stages: Vec<PartialModel>,
    ranks: BTreeMap<Code, usize>,
    fixed_point: usize,
}

impl StageSequence {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// All snapshots, stage 0 first. The last two are equal.
    pub fn stages(&self) -> &[PartialModel] {
        &self.stages
    }

    /// Index of the first stage equal to its successor.
    pub fn fixed_point_index(&self) -> usize {
        self.fixed_point
    }

    pub fn fixed_point(&self) -> &PartialModel {
        &self.stages[self.fixed_point]
    }

    /// Least stage at which the sentence entered `P⁺`.
    pub fn rank(&self, code: Code) -> Option<usize> {
        self.ranks.get(&code).copied()
    }

    pub fn ranks(&self) -> &BTreeMap<Code, usize> {
        &self.ranks
    }
}

/// Iterate the jump from the variant's initial interpretation until two
/// consecutive stages coincide, recording ranks and checking consistency
/// and soundness of every stage.
pub fn lfp(uni: &Universe, variant: Variant) -> Result<StageSequence, LfpError> {
    let seed = match variant {
        Variant::Tp => None,
        Variant::TpPlus => Some(star_seed(uni)),
    };
    let mut initial = PartialModel::empty();
    if let Some(seed) = &seed {
        initial.p_minus.extend(seed.iter().copied());
    }
    let budget = 4 * uni.len() + 1;
    let mut stages = vec![initial];
    let mut ranks: BTreeMap<Code, usize> = BTreeMap::new();
    loop {
        let stage_idx = stages.len() - 1;
        let cur = stages.last().expect("nonempty");
        if !is_consistent(cur) {
            return Err(LfpError::StageInconsistent { stage: stage_idx });
        }
        if !is_sound(uni, cur)? {
            return Err(LfpError::StageUnsound { stage: stage_idx });
        }
        let next = jump_inner(uni, cur, seed.as_ref())?;
        for &c in &next.p_plus {
            ranks.entry(c).or_insert(stage_idx + 1);
        }
        let fixed = next == *cur;
        stages.push(next);
        if fixed {
            let fixed_point = stages.len() - 2;
            return Ok(StageSequence {
                variant,
                stages,
                ranks,
                fixed_point,
            });
        }
        if stages.len() - 1 > budget {
            return Err(LfpError::BudgetExceeded { budget });
        }
    }
}

/// Verdict on a sentence at the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    True,
    False,
    Paradoxical(usize),
    Independent,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::True => write!(f, "true"),
            Classification::False => write!(f, "false"),
            Classification::Paradoxical(r) => write!(f, "paradoxical(rank {r})"),
            Classification::Independent => write!(f, "independent"),
        }
    }
}

#[derive(Debug, Error)]
#[error("code {0} is not in the universe")]
pub struct UnknownCode(pub Code);

/// Classify a universe member at the fixed point of the sequence.
pub fn classify(
    uni: &Universe,
    seq: &StageSequence,
    code: Code,
) -> Result<Classification, UnknownCode> {
    if !uni.contains(code) {
        return Err(UnknownCode(code));
    }
    let fp = seq.fixed_point();
    Ok(if fp.t_plus.contains(&code) {
        Classification::True
    } else if fp.t_minus.contains(&code) {
        Classification::False
    } else if fp.p_plus.contains(&code) {
        Classification::Paradoxical(seq.rank(code).expect("rank recorded for P-plus members"))
    } else {
        Classification::Independent
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_defs, CloseLimits};

    fn universe(text: &str) -> Universe {
        let env = parse_defs(text).unwrap();
        Universe::close(env, CloseLimits::default()).unwrap()
    }

    fn tiny() -> Universe {
        universe(
            "#domain 8\n\
             zero := 0 = 0\n\
             nzero := 0 != 0\n\
             liar := ~T(quote(liar))\n\
             liarneg := T(quote(liar))\n",
        )
    }

    #[test]
    fn first_jump_from_the_empty_interpretation() {
        let uni = tiny();
        let code = |n: &str| uni.env().code_of_name(n).unwrap();
        let m = jump(&uni, &PartialModel::empty()).unwrap();
        assert_eq!(m.t_plus, [code("zero")].into());
        assert_eq!(m.t_minus, [code("nzero")].into());
        assert_eq!(m.p_plus, [code("liar"), code("liarneg")].into());
        assert_eq!(m.p_minus, [code("zero"), code("nzero")].into());
    }

    #[test]
    fn fixed_point_is_a_fixed_point() {
        let uni = tiny();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        let fp = seq.fixed_point();
        assert_eq!(&jump(&uni, fp).unwrap(), fp);
    }

    #[test]
    fn p_minus_equals_classical_sentences() {
        let uni = tiny();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        for m in &seq.stages()[1..] {
            let union: BTreeSet<Code> = m.t_plus.union(&m.t_minus).copied().collect();
            assert_eq!(m.p_minus, union);
        }
    }

    #[test]
    fn arithmetic_universe_fixes_at_stage_one() {
        let uni = universe("#domain 8\nzero := 0 = 0\nsum := 1 + 1 = 2\n");
        let seq = lfp(&uni, Variant::Tp).unwrap();
        assert_eq!(seq.fixed_point_index(), 1);
        assert!(seq.fixed_point().p_plus.is_empty());
    }

    #[test]
    fn ranks_by_hand_iteration() {
        // Stage 1 captures the liar; the conjunction with a true arithmetic
        // conjunct needs the stage-1 information and lands at stage 2.
        let uni = universe(
            "#domain 8\n\
             liar := ~T(quote(liar))\n\
             both := ~T(quote(liar)) & 0 = 0\n",
        );
        let seq = lfp(&uni, Variant::Tp).unwrap();
        let liar = uni.env().code_of_name("liar").unwrap();
        let both = uni.env().code_of_name("both").unwrap();
        assert_eq!(seq.rank(liar), Some(1));
        assert_eq!(seq.rank(both), Some(2));
        assert_eq!(
            classify(&uni, &seq, both).unwrap(),
            Classification::Paradoxical(2)
        );
    }

    #[test]
    fn ranks_cover_exactly_the_final_p_plus() {
        let uni = tiny();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        let ranked: BTreeSet<Code> = seq.ranks().keys().copied().collect();
        assert_eq!(ranked, seq.fixed_point().p_plus);
    }

    #[test]
    fn stages_weakly_increase() {
        let uni = tiny();
        for variant in [Variant::Tp, Variant::TpPlus] {
            let seq = lfp(&uni, variant).unwrap();
            for pair in seq.stages().windows(2) {
                assert!(pair[0].le(&pair[1]));
            }
        }
    }

    #[test]
    fn star_seed_stays_in_the_anti_extension() {
        let uni = universe(
            "#domain 8\n\
             zero := 0 = 0\n\
             pz := P(quote(zero))\n\
             liar := ~T(quote(liar))\n\
             pl := P(quote(liar))\n",
        );
        let seed = star_seed(&uni);
        assert!(!seed.is_empty());
        let seq = lfp(&uni, Variant::TpPlus).unwrap();
        for m in seq.stages() {
            assert!(seed.is_subset(&m.p_minus));
        }
        // On universes without P-literals the starred jump is the plain one.
        let plain = tiny();
        let m = PartialModel::empty();
        assert_eq!(jump(&plain, &m).unwrap(), jump_star(&plain, &m).unwrap());
    }

    #[test]
    fn closure_condition_clause_by_clause() {
        let uni = universe(
            "#domain 8\n\
             liar := ~T(quote(liar))\n\
             liarneg := T(quote(liar))\n\
             zero := 0 = 0\n\
             both := ~T(quote(liar)) & 0 = 0\n\
             either := ~T(quote(liar)) | 0 != 0\n\
             t_both := T(quote(both))\n",
        );
        let code = |n: &str| uni.env().code_of_name(n).unwrap();

        // Base clause, independent of the stage.
        assert!(p_condition(&uni, &PartialModel::empty(), code("liar")).unwrap());

        // Ascription clause: T(both) is paradoxical exactly when the
        // conjunction it quotes is. (The ascriptions to the liar itself
        // fall under the base clause already.)
        let mut stage = PartialModel::empty();
        assert!(!p_condition(&uni, &stage, code("t_both")).unwrap());
        stage.p_plus.insert(code("both"));
        assert!(p_condition(&uni, &stage, code("t_both")).unwrap());

        // Conjunction clause needs the grounded side true, not just
        // paradoxical-adjacent.
        let mut stage = PartialModel::empty();
        stage.p_plus.insert(code("liar"));
        assert!(!p_condition(&uni, &stage, code("both")).unwrap());
        stage.t_plus.insert(code("zero"));
        assert!(p_condition(&uni, &stage, code("both")).unwrap());

        // Disjunction clause needs the grounded side false.
        let mut stage = PartialModel::empty();
        stage.p_plus.insert(code("liar"));
        assert!(!p_condition(&uni, &stage, code("either")).unwrap());
        let neq = uni
            .code_of(&Formula::Neq(Term::Num(0), Term::Num(0)))
            .unwrap();
        stage.t_minus.insert(neq);
        assert!(p_condition(&uni, &stage, code("either")).unwrap());
    }

    #[test]
    fn quantified_closure_conditions_need_every_instance() {
        // all x. (liar & x = x): every instance is a conjunction with a
        // true side and the liar, so the universal clause fires once the
        // instances are paradoxical and true-side-grounded.
        let uni = universe(
            "#domain 4\n\
             liar := ~T(quote(liar))\n\
             univ := all x. (~T(quote(liar)) & x = x)\n",
        );
        let seq = lfp(&uni, Variant::Tp).unwrap();
        let univ = uni.env().code_of_name("univ").unwrap();
        assert_eq!(
            classify(&uni, &seq, univ).unwrap(),
            Classification::Paradoxical(3)
        );
        // Its negation, an existential, follows by the dual clause.
        let neg = uni
            .code_of(&crate::syntax::negate(uni.decode(univ).unwrap()))
            .unwrap();
        assert!(seq.fixed_point().p_plus.contains(&neg));
    }

    #[test]
    fn jump_rejects_inconsistent_input() {
        let uni = tiny();
        let mut m = PartialModel::empty();
        m.t_plus.insert(1);
        m.t_minus.insert(1);
        assert!(matches!(jump(&uni, &m), Err(JumpError::Inconsistent)));
    }

    #[test]
    fn classify_rejects_unknown_codes() {
        let uni = tiny();
        let seq = lfp(&uni, Variant::Tp).unwrap();
        assert!(classify(&uni, &seq, 9999).is_err());
    }
}
