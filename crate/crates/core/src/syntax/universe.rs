//! Finite sentence universes: the Gödel coding table and its closure.
//!
//! A universe starts from the named definitions and closes under
//! subformulas, De Morgan negation, instantiation of quantifier matrices
//! at every domain element, and dereferencing of closed terms under `T`/`P`
//! literals (which materializes the sentences that syntactic-builder terms
//! denote, e.g. the iterated truth ascriptions the McGee sentence
//! quantifies over). Named codes stay within the domain bound; sentences
//! added by closure take the next free codes above the named block.

use super::{negate, substitute, Code, DefEnv, EvalError, Formula, Nat, Term};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

/// Why a sentence is in the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// A named definition.
    Named(String),
    /// Subformula of the given member.
    Subformula(Code),
    /// De Morgan negation of the given member.
    Negation(Code),
    /// Instance of the given quantified member at a domain element.
    Instance(Code, Nat),
    /// Referent of a closed term under a `T`/`P` literal of the member.
    Dereference(Code),
}

/// Caps on universe closure.
#[derive(Debug, Clone, Copy)]
pub struct CloseLimits {
    /// Maximum number of sentences the table may hold.
    pub max_sentences: usize,
}

impl Default for CloseLimits {
    fn default() -> Self {
        CloseLimits {
            max_sentences: 200_000,
        }
    }
}

#[derive(Debug, Error)]
pub enum CloseError {
    #[error("universe closure exceeded {limit} sentences; the domain bound is too large for this definition set")]
    TooLarge { limit: usize },
    #[error("closure failed to evaluate a term in {member}: {source}")]
    Eval { member: Code, source: EvalError },
}

/// A closed sentence universe: the coding table plus closure metadata.
#[derive(Debug, Clone)]
pub struct Universe {
    env: DefEnv,
    by_code: BTreeMap<Code, Formula>,
    by_formula: HashMap<Formula, Code>,
    provenance: BTreeMap<Code, Provenance>,
    next_code: Code,
}

impl Universe {
    /// Close the universe generated by the environment's definitions.
    pub fn close(env: DefEnv, limits: CloseLimits) -> Result<Universe, CloseError> {
        let mut uni = Universe {
            by_code: BTreeMap::new(),
            by_formula: HashMap::new(),
            provenance: BTreeMap::new(),
            next_code: env.names().len() as Code + 1,
            env,
        };
        let mut queue = VecDeque::new();
        for name in uni.env.names().to_vec() {
            let code = uni.env.code_of_name(&name).expect("named code");
            let body = uni.env.definiens(&name).expect("definiens").clone();
            uni.by_code.insert(code, body.clone());
            uni.by_formula.insert(body, code);
            uni.provenance.insert(code, Provenance::Named(name));
            queue.push_back(code);
        }
        uni.run_closure(queue, limits)?;
        Ok(uni)
    }

    /// Re-run closure over the whole table; a closed universe gains nothing.
    pub fn reclose(&mut self, limits: CloseLimits) -> Result<usize, CloseError> {
        let before = self.by_code.len();
        let queue: VecDeque<Code> = self.by_code.keys().copied().collect();
        self.run_closure(queue, limits)?;
        Ok(self.by_code.len() - before)
    }

    fn run_closure(
        &mut self,
        mut queue: VecDeque<Code>,
        limits: CloseLimits,
    ) -> Result<(), CloseError> {
        while let Some(code) = queue.pop_front() {
            let phi = self.by_code[&code].clone();

            // De Morgan negation.
            self.add(negate(&phi), Provenance::Negation(code), &mut queue, limits)?;

            match &phi {
                Formula::And(a, b) | Formula::Or(a, b) => {
                    for sub in [a, b] {
                        self.add(
                            (**sub).clone(),
                            Provenance::Subformula(code),
                            &mut queue,
                            limits,
                        )?;
                    }
                }
                Formula::All(v, m) | Formula::Ex(v, m) => {
                    for d in 0..=self.env.domain_bound() {
                        let inst = substitute(m, v, &Term::Num(d)).expect("closed numeral");
                        self.add(inst, Provenance::Instance(code, d), &mut queue, limits)?;
                    }
                }
                Formula::Tr(t) | Formula::NotTr(t) | Formula::Par(t) | Formula::NotPar(t) => {
                    self.deref_term(code, t, &mut queue, limits)?;
                }
                Formula::Eq(..) | Formula::Neq(..) => {}
            }
        }
        Ok(())
    }

    /// Insert a sentence if new; returns its code.
    fn add(
        &mut self,
        phi: Formula,
        why: Provenance,
        queue: &mut VecDeque<Code>,
        limits: CloseLimits,
    ) -> Result<Code, CloseError> {
        debug_assert!(phi.is_sentence(), "universe members must be sentences");
        if let Some(&c) = self.by_formula.get(&phi) {
            return Ok(c);
        }
        if self.by_code.len() >= limits.max_sentences {
            return Err(CloseError::TooLarge {
                limit: limits.max_sentences,
            });
        }
        let c = self.next_code;
        self.next_code += 1;
        self.by_code.insert(c, phi.clone());
        self.by_formula.insert(phi, c);
        self.provenance.insert(c, why);
        queue.push_back(c);
        Ok(c)
    }

    /// Evaluate a closed term during closure, materializing the sentences
    /// builder terms denote when they are not yet coded.
    fn deref_term(
        &mut self,
        member: Code,
        t: &Term,
        queue: &mut VecDeque<Code>,
        limits: CloseLimits,
    ) -> Result<Nat, CloseError> {
        let mut build = |uni: &mut Universe, phi: Formula| -> Result<Code, CloseError> {
            uni.add(phi, Provenance::Dereference(member), queue, limits)
        };
        // Inline evaluator mirroring eval_term, but allowed to extend the
        // table at builder misses.
        self.eval_extending(t, &mut build)
            .map_err(|source| CloseError::Eval { member, source })
    }

    fn eval_extending(
        &mut self,
        t: &Term,
        build: &mut dyn FnMut(&mut Universe, Formula) -> Result<Code, CloseError>,
    ) -> Result<Nat, EvalError> {
        let arith = |r: Option<Nat>| {
            r.ok_or_else(|| EvalError::NotRepresentable("arithmetic overflow".into()))
        };
        match t {
            Term::Num(n) => Ok(*n),
            Term::Var(v) => Err(EvalError::OpenTerm(v.clone())),
            Term::Quote(name) => self
                .env
                .code_of_name(name)
                .ok_or_else(|| EvalError::UndefinedName(name.clone())),
            Term::Suc(a) => arith(self.eval_extending(a, build)?.checked_add(1)),
            Term::Add(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                arith(x.checked_add(y))
            }
            Term::Mul(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                arith(x.checked_mul(y))
            }
            Term::NumOf(_) => Err(EvalError::NotRepresentable(
                "numeral terms carry no codes".into(),
            )),
            Term::DotAll(..) | Term::DotEx(..) => Err(EvalError::NotRepresentable(
                "open formulas carry no codes".into(),
            )),
            Term::DotEq(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                self.build_code(Formula::Eq(Term::Num(x), Term::Num(y)), build)
            }
            Term::DotNeq(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                self.build_code(Formula::Neq(Term::Num(x), Term::Num(y)), build)
            }
            Term::DotAnd(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                let (fa, fb) = (self.decode_or_err(x)?, self.decode_or_err(y)?);
                self.build_code(Formula::And(Box::new(fa), Box::new(fb)), build)
            }
            Term::DotOr(a, b) => {
                let (x, y) = (
                    self.eval_extending(a, build)?,
                    self.eval_extending(b, build)?,
                );
                let (fa, fb) = (self.decode_or_err(x)?, self.decode_or_err(y)?);
                self.build_code(Formula::Or(Box::new(fa), Box::new(fb)), build)
            }
            Term::DotT(a) => {
                let x = self.eval_extending(a, build)?;
                self.decode_or_err(x)?;
                self.build_code(Formula::Tr(Term::Num(x)), build)
            }
            Term::DotP(a) => {
                let x = self.eval_extending(a, build)?;
                self.decode_or_err(x)?;
                self.build_code(Formula::Par(Term::Num(x)), build)
            }
            Term::DotNegT(a) => {
                let x = self.eval_extending(a, build)?;
                self.decode_or_err(x)?;
                self.build_code(Formula::NotTr(Term::Num(x)), build)
            }
            Term::DotNegP(a) => {
                let x = self.eval_extending(a, build)?;
                self.decode_or_err(x)?;
                self.build_code(Formula::NotPar(Term::Num(x)), build)
            }
            Term::DotNeg(a) => {
                let x = self.eval_extending(a, build)?;
                let f = self.decode_or_err(x)?;
                self.build_code(negate(&f), build)
            }
            Term::IterT(n, c) => {
                let k = self.eval_extending(n, build)?;
                let mut v = self.eval_extending(c, build)?;
                self.decode_or_err(v)?;
                for _ in 0..k {
                    v = self.build_code(Formula::Tr(Term::Num(v)), build)?;
                }
                Ok(v)
            }
            Term::Inst(m, v, a) => {
                let d = self.eval_extending(a, build)?;
                let inst = substitute(m, v, &Term::Num(d))
                    .map_err(|e| EvalError::NotRepresentable(format!("instantiation: {e}")))?;
                self.build_code(inst, build)
            }
        }
    }

    fn build_code(
        &mut self,
        phi: Formula,
        build: &mut dyn FnMut(&mut Universe, Formula) -> Result<Code, CloseError>,
    ) -> Result<Nat, EvalError> {
        if !phi.is_sentence() {
            return Err(EvalError::NotRepresentable(
                "open formulas carry no codes".into(),
            ));
        }
        build(self, phi).map_err(|e| EvalError::NotRepresentable(e.to_string()))
    }

    fn decode_or_err(&self, code: Nat) -> Result<Formula, EvalError> {
        self.decode(code)
            .cloned()
            .ok_or_else(|| EvalError::NotRepresentable(format!("{code} codes no sentence")))
    }

    pub fn env(&self) -> &DefEnv {
        &self.env
    }

    pub fn domain_bound(&self) -> Nat {
        self.env.domain_bound()
    }

    pub fn len(&self) -> usize {
        self.by_code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_code.is_empty()
    }

    pub fn contains(&self, code: Code) -> bool {
        self.by_code.contains_key(&code)
    }

    pub fn decode(&self, code: Code) -> Option<&Formula> {
        self.by_code.get(&code)
    }

    /// Code of a sentence already in quote-resolved form.
    pub fn code_of(&self, phi: &Formula) -> Option<Code> {
        self.by_formula.get(phi).copied()
    }

    pub fn provenance(&self, code: Code) -> Option<&Provenance> {
        self.provenance.get(&code)
    }

    /// All codes in ascending order.
    pub fn codes(&self) -> impl Iterator<Item = Code> + '_ {
        self.by_code.keys().copied()
    }

    pub fn members(&self) -> impl Iterator<Item = (Code, &Formula)> + '_ {
        self.by_code.iter().map(|(c, f)| (*c, f))
    }

    /// Evaluate a closed term against the coding table. Unlike closure,
    /// evaluation never extends the table; a builder result that is not
    /// coded is not representable.
    pub fn eval_term(&self, t: &Term) -> Result<Nat, EvalError> {
        let arith = |r: Option<Nat>| {
            r.ok_or_else(|| EvalError::NotRepresentable("arithmetic overflow".into()))
        };
        match t {
            Term::Num(n) => Ok(*n),
            Term::Var(v) => Err(EvalError::OpenTerm(v.clone())),
            Term::Quote(name) => self
                .env
                .code_of_name(name)
                .ok_or_else(|| EvalError::UndefinedName(name.clone())),
            Term::Suc(a) => arith(self.eval_term(a)?.checked_add(1)),
            Term::Add(a, b) => arith(self.eval_term(a)?.checked_add(self.eval_term(b)?)),
            Term::Mul(a, b) => arith(self.eval_term(a)?.checked_mul(self.eval_term(b)?)),
            Term::NumOf(_) => Err(EvalError::NotRepresentable(
                "numeral terms carry no codes".into(),
            )),
            Term::DotAll(..) | Term::DotEx(..) => Err(EvalError::NotRepresentable(
                "open formulas carry no codes".into(),
            )),
            Term::DotEq(a, b) => {
                let phi = Formula::Eq(Term::Num(self.eval_term(a)?), Term::Num(self.eval_term(b)?));
                self.lookup(phi)
            }
            Term::DotNeq(a, b) => {
                let phi =
                    Formula::Neq(Term::Num(self.eval_term(a)?), Term::Num(self.eval_term(b)?));
                self.lookup(phi)
            }
            Term::DotAnd(a, b) => {
                let fa = self.decode_or_err(self.eval_term(a)?)?;
                let fb = self.decode_or_err(self.eval_term(b)?)?;
                self.lookup(Formula::And(Box::new(fa), Box::new(fb)))
            }
            Term::DotOr(a, b) => {
                let fa = self.decode_or_err(self.eval_term(a)?)?;
                let fb = self.decode_or_err(self.eval_term(b)?)?;
                self.lookup(Formula::Or(Box::new(fa), Box::new(fb)))
            }
            Term::DotT(a) => {
                let c = self.eval_term(a)?;
                self.decode_or_err(c)?;
                self.lookup(Formula::Tr(Term::Num(c)))
            }
            Term::DotP(a) => {
                let c = self.eval_term(a)?;
                self.decode_or_err(c)?;
                self.lookup(Formula::Par(Term::Num(c)))
            }
            Term::DotNegT(a) => {
                let c = self.eval_term(a)?;
                self.decode_or_err(c)?;
                self.lookup(Formula::NotTr(Term::Num(c)))
            }
            Term::DotNegP(a) => {
                let c = self.eval_term(a)?;
                self.decode_or_err(c)?;
                self.lookup(Formula::NotPar(Term::Num(c)))
            }
            Term::DotNeg(a) => {
                let f = self.decode_or_err(self.eval_term(a)?)?;
                self.lookup(negate(&f))
            }
            Term::IterT(n, c) => {
                let k = self.eval_term(n)?;
                let mut v = self.eval_term(c)?;
                self.decode_or_err(v)?;
                for _ in 0..k {
                    v = self.lookup(Formula::Tr(Term::Num(v)))?;
                }
                Ok(v)
            }
            Term::Inst(m, v, a) => {
                let d = self.eval_term(a)?;
                let inst = substitute(m, v, &Term::Num(d))
                    .map_err(|e| EvalError::NotRepresentable(format!("instantiation: {e}")))?;
                self.lookup(inst)
            }
        }
    }

    fn lookup(&self, phi: Formula) -> Result<Nat, EvalError> {
        self.code_of(&phi)
            .ok_or_else(|| EvalError::NotRepresentable(format!("sentence not coded: {phi}")))
    }
}
