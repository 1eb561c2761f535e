//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. The zoo universe is built once and shared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use tp_core::calculus::{
    audit_fixed_point, check_proof, cross_validate, from_script, parse_script, print_script,
    CheckOptions, SystemId,
};
use tp_core::jump::{classify, jump, lfp, Classification, StageSequence, Variant};
use tp_core::semantics::{is_consistent, value, PartialModel, TruthValue};
use tp_core::syntax::{
    negate, substitute, CloseLimits, Code, DefEnv, Formula, Nat, Term, Universe,
};
use tp_core::zoo::{self, ZooSpec};

struct Zoo {
    uni: Universe,
    tp: StageSequence,
    tp_plus: StageSequence,
}

static ZOO: OnceLock<Zoo> = OnceLock::new();

fn zoo() -> &'static Zoo {
    ZOO.get_or_init(|| {
        let uni = zoo::build(&ZooSpec::default()).expect("zoo universe closes");
        let tp = lfp(&uni, Variant::Tp).expect("tp fixed point");
        let tp_plus = lfp(&uni, Variant::TpPlus).expect("tp-plus fixed point");
        Zoo { uni, tp, tp_plus }
    })
}

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "pass" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} ({detail})");
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_zoo_classification_table() {
    let z = zoo();
    let expected: &[(&str, Classification)] = &[
        ("liar", Classification::Paradoxical(1)),
        ("liarneg", Classification::Paradoxical(1)),
        ("curry", Classification::Paradoxical(1)),
        ("conj_grounded", Classification::Paradoxical(2)),
        ("conj_false", Classification::False),
        ("truthteller", Classification::Independent),
        ("mcgee", Classification::Independent),
        ("gupta", Classification::Independent),
        ("revenge", Classification::Independent),
    ];
    let mut failures = Vec::new();
    for (name, want) in expected {
        let code = z.uni.env().code_of_name(name).expect("named");
        let got = classify(&z.uni, &z.tp, code).expect("classify");
        if got != *want {
            failures.push(format!("{name}: expected {want:?}, got {got:?}"));
        }
    }
    // The Gupta sentence additionally has an undefined excluded middle.
    let gupta = z.uni.env().code_of_name("gupta").unwrap();
    let g = z.uni.decode(gupta).unwrap().clone();
    let lem = Formula::Or(Box::new(g.clone()), Box::new(negate(&g)));
    let v = value(&z.uni, z.tp.fixed_point(), &lem).unwrap();
    if v != TruthValue::Undefined {
        failures.push(format!(
            "gupta excluded middle: expected Undefined, got {v:?}"
        ));
    }
    report(
        "criterion 1 (zoo classification table)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("{} sentences as expected", expected.len())
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_2_stage_invariants() {
    let z = zoo();
    let seed = tp_core::jump::star_seed(&z.uni);
    let mut failures = Vec::new();
    for (label, seq) in [("tp", &z.tp), ("tp-plus", &z.tp_plus)] {
        for (alpha, m) in seq.stages().iter().enumerate() {
            if !m.t_plus.is_disjoint(&m.t_minus) {
                failures.push(format!("{label} stage {alpha}: T+ meets T-"));
            }
            if !m.p_plus.is_disjoint(&m.p_minus) {
                failures.push(format!("{label} stage {alpha}: P+ meets P-"));
            }
            let classical: BTreeSet<Code> = m.t_plus.union(&m.t_minus).copied().collect();
            if !classical.is_disjoint(&m.p_plus) {
                failures.push(format!("{label} stage {alpha}: classical meets P+"));
            }
            if alpha > 0 {
                match label {
                    "tp" => {
                        if m.p_minus != classical {
                            failures.push(format!("{label} stage {alpha}: P- law"));
                        }
                    }
                    _ => {
                        let with_seed: BTreeSet<Code> = classical.union(&seed).copied().collect();
                        if m.p_minus != with_seed || !m.p_minus.is_superset(&classical) {
                            failures.push(format!("{label} stage {alpha}: seeded P- law"));
                        }
                    }
                }
                let anti: BTreeSet<Code> = z
                    .uni
                    .members()
                    .filter(|(_, phi)| {
                        z.uni
                            .code_of(&negate(phi))
                            .map(|c| m.t_plus.contains(&c))
                            .unwrap_or(false)
                    })
                    .map(|(c, _)| c)
                    .collect();
                if m.t_minus != anti {
                    failures.push(format!("{label} stage {alpha}: anti-extension law"));
                }
            }
        }
    }
    report(
        "criterion 2 (stage invariants)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!(
                "{} + {} stages checked",
                z.tp.stages().len(),
                z.tp_plus.stages().len()
            )
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_3_fixed_point_axiom_audit() {
    let z = zoo();
    let audit_tp = audit_fixed_point(&z.uni, &z.tp).unwrap();
    let audit_plus = audit_fixed_point(&z.uni, &z.tp_plus).unwrap();
    let pass = audit_tp.passed()
        && audit_plus.passed()
        && audit_tp.checked > 10_000
        && audit_plus.checked > audit_tp.checked;
    report(
        "criterion 3 (fixed-point axiom audit)",
        pass,
        &format!(
            "tp {} checked / {} skipped, tp-plus {} checked / {} skipped, failures {}",
            audit_tp.checked,
            audit_tp.skipped,
            audit_plus.checked,
            audit_plus.skipped,
            audit_tp.failures.len() + audit_plus.failures.len()
        ),
    );
}

// ---------------------------------------------------------------------
// Random universes and models, shared by criteria 4 and 8.

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn term(&mut self, names: &[String], domain: Nat) -> Term {
        match self.rng.gen_range(0..5u8) {
            0 => Term::Num(self.rng.gen_range(0..=domain)),
            1 => Term::Suc(Box::new(Term::Num(self.rng.gen_range(0..domain.max(1))))),
            2 | 3 => Term::Quote(names[self.rng.gen_range(0..names.len())].clone()),
            _ => Term::Num(self.rng.gen_range(0..=domain)),
        }
    }

    fn literal(&mut self, names: &[String], domain: Nat) -> Formula {
        let t = self.term(names, domain);
        match self.rng.gen_range(0..6u8) {
            0 => Formula::Eq(t, self.term(names, domain)),
            1 => Formula::Neq(t, self.term(names, domain)),
            2 => Formula::Tr(t),
            3 => Formula::NotTr(t),
            4 => Formula::Par(t),
            _ => Formula::NotPar(t),
        }
    }

    fn formula(&mut self, names: &[String], domain: Nat, depth: u32) -> Formula {
        if depth == 0 {
            return self.literal(names, domain);
        }
        match self.rng.gen_range(0..8u8) {
            0 | 1 => Formula::And(
                Box::new(self.formula(names, domain, depth - 1)),
                Box::new(self.formula(names, domain, depth - 1)),
            ),
            2 | 3 => Formula::Or(
                Box::new(self.formula(names, domain, depth - 1)),
                Box::new(self.formula(names, domain, depth - 1)),
            ),
            4 => {
                let matrix = match self.rng.gen_range(0..4u8) {
                    0 => Formula::Tr(Term::var("x")),
                    1 => Formula::NotTr(Term::var("x")),
                    2 => Formula::Par(Term::var("x")),
                    _ => Formula::Eq(Term::var("x"), Term::Num(self.rng.gen_range(0..=domain))),
                };
                if self.rng.gen_bool(0.5) {
                    Formula::All("x".into(), Box::new(matrix))
                } else {
                    Formula::Ex("x".into(), Box::new(matrix))
                }
            }
            _ => self.literal(names, domain),
        }
    }

    /// A closed universe with at most `max_members` sentences.
    fn universe(&mut self, max_members: usize, max_domain: Nat) -> Option<Universe> {
        let domain = self.rng.gen_range(3..=max_domain);
        let n = self.rng.gen_range(1..=3usize);
        let names: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
        let defs: Vec<(String, Formula)> = names
            .iter()
            .map(|name| (name.clone(), self.formula(&names, domain, 2)))
            .collect();
        let env = DefEnv::new(defs, Vec::new(), domain).ok()?;
        let uni = Universe::close(
            env,
            CloseLimits {
                max_sentences: max_members,
            },
        )
        .ok()?;
        (uni.len() <= max_members).then_some(uni)
    }

    /// A consistent model over the universe's codes.
    fn model(&mut self, uni: &Universe) -> PartialModel {
        let mut m = PartialModel::empty();
        for code in uni.codes() {
            match self.rng.gen_range(0..4u8) {
                0 => {
                    m.t_plus.insert(code);
                }
                1 => {
                    m.t_minus.insert(code);
                }
                _ => {}
            }
            match self.rng.gen_range(0..4u8) {
                0 => {
                    m.p_plus.insert(code);
                }
                1 => {
                    m.p_minus.insert(code);
                }
                _ => {}
            }
        }
        m
    }

    /// A random componentwise subset.
    fn submodel(&mut self, m: &PartialModel) -> PartialModel {
        let mut out = PartialModel::empty();
        for &c in &m.t_plus {
            if self.rng.gen_bool(0.5) {
                out.t_plus.insert(c);
            }
        }
        for &c in &m.t_minus {
            if self.rng.gen_bool(0.5) {
                out.t_minus.insert(c);
            }
        }
        for &c in &m.p_plus {
            if self.rng.gen_bool(0.5) {
                out.p_plus.insert(c);
            }
        }
        for &c in &m.p_minus {
            if self.rng.gen_bool(0.5) {
                out.p_minus.insert(c);
            }
        }
        out
    }
}

#[test]
fn criterion_4_monotonicity_suite() {
    let mut gen = Gen::new(0x7090_2024);
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    while pairs < 1000 {
        let Some(uni) = gen.universe(20, 10) else {
            continue;
        };
        let probes: Vec<Formula> = uni
            .members()
            .map(|(_, f)| f.clone())
            .chain([
                Formula::All("x".into(), Box::new(Formula::Tr(Term::var("x")))),
                Formula::Ex("x".into(), Box::new(Formula::NotTr(Term::var("x")))),
            ])
            .collect();
        for _ in 0..10 {
            let larger = gen.model(&uni);
            let smaller = gen.submodel(&larger);
            assert!(is_consistent(&larger) && is_consistent(&smaller));
            pairs += 1;
            for phi in &probes {
                let v = value(&uni, &smaller, phi).unwrap();
                if v != TruthValue::Undefined && value(&uni, &larger, phi).unwrap() != v {
                    failures.push(format!("value persistence broke at {phi}"));
                }
            }
            let j_small = jump(&uni, &smaller).unwrap();
            let j_large = jump(&uni, &larger).unwrap();
            if !j_small.le(&j_large) {
                failures.push("jump monotonicity broke".to_string());
            }
            if failures.len() > 3 {
                break;
            }
        }
        if failures.len() > 3 {
            break;
        }
    }
    report(
        "criterion 4 (monotonicity suite)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("{pairs} model pairs verified")
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_5_negation_symmetry_at_fixed_point() {
    let z = zoo();
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (label, seq) in [("tp", &z.tp), ("tp-plus", &z.tp_plus)] {
        let fp = seq.fixed_point();
        for (code, phi) in z.uni.members() {
            let neg = z.uni.code_of(&negate(phi)).expect("negation closure");
            checked += 1;
            if fp.p_plus.contains(&code) != fp.p_plus.contains(&neg) {
                failures += 1;
                println!("symmetry failure under {label} at {phi}");
            }
        }
    }
    report(
        "criterion 5 (paradoxicality negation symmetry)",
        failures == 0,
        &format!("{checked} sentences checked, {failures} failures"),
    );
}

#[test]
fn criterion_6_no_p_literal_is_paradoxical() {
    let z = zoo();
    let mut failures = 0usize;
    let mut p_literals = 0usize;
    for (label, seq) in [("tp", &z.tp), ("tp-plus", &z.tp_plus)] {
        let fp = seq.fixed_point();
        for (code, phi) in z.uni.members() {
            if matches!(phi, Formula::Par(_) | Formula::NotPar(_)) {
                p_literals += 1;
                if fp.p_plus.contains(&code) {
                    failures += 1;
                    println!("paradoxical P-literal under {label}: {phi}");
                }
            }
        }
    }
    report(
        "criterion 6 (no P-literal paradox)",
        failures == 0 && p_literals > 0,
        &format!("{p_literals} P-literals checked, {failures} failures"),
    );
}

#[test]
fn criterion_7_proof_corpus() {
    let z = zoo();
    let mut failures = Vec::new();

    // The committed corpus matches what the generators produce.
    if zoo::bundled_defs() != zoo::defs_text(&ZooSpec::default()).unwrap() {
        failures.push("bundled zoo.defs is stale".to_string());
    }
    let generated = zoo::proof_corpus(&z.uni).unwrap();
    for proof in &generated {
        let bundled = zoo::bundled_proofs()
            .into_iter()
            .find(|(name, _)| *name == proof.name);
        let Some((_, text)) = bundled else {
            failures.push(format!("{} is not bundled", proof.name));
            continue;
        };
        // Bit-exact round trip between parse and print.
        let script = parse_script(text).unwrap();
        if print_script(&script) != text {
            failures.push(format!(
                "{}: print(parse(file)) differs from file",
                proof.name
            ));
        }
        let tree = from_script(z.uni.env(), &script).unwrap();
        if tree != proof.tree {
            failures.push(format!("{}: bundled file is stale", proof.name));
        }

        let plain = CheckOptions::system(SystemId::Tp);
        let permissive = CheckOptions {
            system: SystemId::Tp,
            allow_contrapositive: true,
        };
        if proof.expect_reject {
            if check_proof(&z.uni, &tree, permissive).is_ok() {
                failures.push(format!("{} should be rejected", proof.name));
            }
            continue;
        }
        if proof.needs_extra_axiom {
            if check_proof(&z.uni, &tree, plain).is_ok() {
                failures.push(format!(
                    "{} must not check without the extra axiom",
                    proof.name
                ));
            }
            if let Err(e) = check_proof(&z.uni, &tree, permissive) {
                failures.push(format!("{} rejected under the flag: {e}", proof.name));
            }
        } else {
            if let Err(e) = check_proof(&z.uni, &tree, plain) {
                failures.push(format!("{} rejected: {e}", proof.name));
                continue;
            }
            // Monotone systems: anything accepted in tp checks in tp-plus.
            if check_proof(&z.uni, &tree, CheckOptions::system(SystemId::TpPlus)).is_err() {
                failures.push(format!(
                    "{} not accepted in the stronger system",
                    proof.name
                ));
            }
        }
        match cross_validate(&z.uni, &z.tp, &tree.conclusion) {
            Ok(v) => {
                if v != proof.expect_cross_valid {
                    failures.push(format!(
                        "{}: cross-validation {v}, expected {}",
                        proof.name, proof.expect_cross_valid
                    ));
                }
            }
            Err(e) => failures.push(format!("{}: cross-validation error {e}", proof.name)),
        }
    }
    report(
        "criterion 7 (proof corpus)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("{} bundled proofs behave as expected", generated.len())
        } else {
            failures.join("; ")
        },
    );
}

// ---------------------------------------------------------------------
// Criterion 8: an independent naive evaluator and jump.

mod oracle {
    use super::*;

    /// Satisfaction, paper-style: a positive recursion only; falsity of a
    /// formula is satisfaction of its De Morgan dual.
    pub fn sat(uni: &Universe, m: &PartialModel, phi: &Formula) -> bool {
        match phi {
            Formula::Eq(a, b) => uni.eval_term(a).unwrap() == uni.eval_term(b).unwrap(),
            Formula::Neq(a, b) => uni.eval_term(a).unwrap() != uni.eval_term(b).unwrap(),
            Formula::Tr(t) => m.t_plus.contains(&uni.eval_term(t).unwrap()),
            Formula::NotTr(t) => m.t_minus.contains(&uni.eval_term(t).unwrap()),
            Formula::Par(t) => m.p_plus.contains(&uni.eval_term(t).unwrap()),
            Formula::NotPar(t) => m.p_minus.contains(&uni.eval_term(t).unwrap()),
            Formula::And(a, b) => sat(uni, m, a) && sat(uni, m, b),
            Formula::Or(a, b) => sat(uni, m, a) || sat(uni, m, b),
            Formula::All(v, matrix) => (0..=uni.domain_bound()).all(|d| {
                let inst = substitute(matrix, v, &Term::Num(d)).unwrap();
                sat(uni, m, &inst)
            }),
            Formula::Ex(v, matrix) => (0..=uni.domain_bound()).any(|d| {
                let inst = substitute(matrix, v, &Term::Num(d)).unwrap();
                sat(uni, m, &inst)
            }),
        }
    }

    pub fn value3(uni: &Universe, m: &PartialModel, phi: &Formula) -> TruthValue {
        if sat(uni, m, phi) {
            TruthValue::True
        } else if sat(uni, m, &negate(phi)) {
            TruthValue::False
        } else {
            TruthValue::Undefined
        }
    }

    /// The closure condition, re-derived clause by clause through
    /// satisfaction of the corresponding literals.
    fn paradoxical(uni: &Universe, m: &PartialModel, code: Code) -> bool {
        if tp_core::syntax::pi(uni, code) {
            return true;
        }
        let Some(phi) = uni.decode(code) else {
            return false;
        };
        let p_of = |c: Option<Code>| -> Formula { Formula::Par(Term::Num(c.unwrap_or(u64::MAX))) };
        let t_of = |c: Option<Code>| -> Formula { Formula::Tr(Term::Num(c.unwrap_or(u64::MAX))) };
        match phi {
            Formula::Tr(t) | Formula::NotTr(t) => sat(uni, m, &Formula::Par(t.clone())),
            Formula::And(a, b) => {
                let (ca, cb) = (uni.code_of(a), uni.code_of(b));
                (sat(uni, m, &p_of(ca)) && sat(uni, m, &p_of(cb)))
                    || (sat(uni, m, &t_of(ca)) && sat(uni, m, &p_of(cb)))
                    || (sat(uni, m, &t_of(cb)) && sat(uni, m, &p_of(ca)))
            }
            Formula::Or(a, b) => {
                let (ca, cb) = (uni.code_of(a), uni.code_of(b));
                let false_of = |c: Option<Code>| Formula::NotTr(Term::Num(c.unwrap_or(u64::MAX)));
                (sat(uni, m, &p_of(ca)) && sat(uni, m, &p_of(cb)))
                    || (sat(uni, m, &false_of(ca)) && sat(uni, m, &p_of(cb)))
                    || (sat(uni, m, &false_of(cb)) && sat(uni, m, &p_of(ca)))
            }
            Formula::All(v, matrix) => {
                let insts: Vec<Option<Code>> = (0..=uni.domain_bound())
                    .map(|d| {
                        let inst = substitute(matrix, v, &Term::Num(d)).unwrap();
                        uni.code_of(&inst)
                    })
                    .collect();
                insts.iter().any(|c| sat(uni, m, &p_of(*c)))
                    && insts
                        .iter()
                        .all(|c| sat(uni, m, &p_of(*c)) || sat(uni, m, &t_of(*c)))
            }
            Formula::Ex(v, matrix) => {
                let insts: Vec<Option<Code>> = (0..=uni.domain_bound())
                    .map(|d| {
                        let inst = substitute(matrix, v, &Term::Num(d)).unwrap();
                        uni.code_of(&inst)
                    })
                    .collect();
                insts.iter().any(|c| sat(uni, m, &p_of(*c)))
                    && insts.iter().all(|c| {
                        sat(uni, m, &p_of(*c))
                            || sat(uni, m, &Formula::NotTr(Term::Num(c.unwrap_or(u64::MAX))))
                    })
            }
            _ => false,
        }
    }

    /// Set-building jump: four independent passes.
    pub fn jump(uni: &Universe, m: &PartialModel, seed: &BTreeSet<Code>) -> PartialModel {
        let mut out = PartialModel::empty();
        for (c, phi) in uni.members() {
            if sat(uni, m, phi) {
                out.t_plus.insert(c);
            }
        }
        for (c, phi) in uni.members() {
            if sat(uni, m, &negate(phi)) {
                out.t_minus.insert(c);
            }
        }
        for (c, _) in uni.members() {
            if paradoxical(uni, m, c) {
                out.p_plus.insert(c);
            }
        }
        for (c, phi) in uni.members() {
            let lem = Formula::Or(Box::new(phi.clone()), Box::new(negate(phi)));
            if sat(uni, m, &lem) {
                out.p_minus.insert(c);
            }
        }
        out.p_minus.extend(seed.iter().copied());
        out
    }

    /// Naive iteration: recompute from scratch until nothing changes.
    pub fn lfp(uni: &Universe, variant: Variant) -> PartialModel {
        let seed = match variant {
            Variant::Tp => BTreeSet::new(),
            Variant::TpPlus => uni
                .members()
                .filter(|(_, phi)| matches!(phi, Formula::Par(_)))
                .map(|(c, _)| c)
                .collect(),
        };
        let mut current = PartialModel::empty();
        current.p_minus.extend(seed.iter().copied());
        loop {
            let next = jump(uni, &current, &seed);
            if next == current {
                return current;
            }
            current = next;
        }
    }
}

#[test]
fn criterion_8_brute_force_oracle_equivalence() {
    let mut gen = Gen::new(0x5EED_CAFE);
    let mut universes = 0usize;
    let mut failures = Vec::new();
    let mut model_probe = Gen::new(0x00DD_BA11);
    while universes < 100 {
        let Some(uni) = gen.universe(12, 12) else {
            continue;
        };
        universes += 1;
        // The evaluators agree on random models.
        let m = model_probe.model(&uni);
        for (_, phi) in uni.members() {
            let fast = value(&uni, &m, phi).unwrap();
            let slow = oracle::value3(&uni, &m, phi);
            if fast != slow {
                failures.push(format!("evaluators disagree on {phi}"));
            }
        }
        // The fixed points coincide for both variants.
        for variant in [Variant::Tp, Variant::TpPlus] {
            let engine = lfp(&uni, variant).unwrap();
            let naive = oracle::lfp(&uni, variant);
            if *engine.fixed_point() != naive {
                failures.push(format!(
                    "fixed points differ under {} on a {}-sentence universe",
                    variant.as_str(),
                    uni.len()
                ));
            }
        }
        if !failures.is_empty() {
            break;
        }
    }
    report(
        "criterion 8 (brute-force oracle equivalence)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("{universes} random universes, both variants")
        } else {
            failures.join("; ")
        },
    );
}
