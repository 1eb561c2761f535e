//! Machine-readable proof scripts.
//!
//! A proof file is a JSON tree. Each node carries `rule`, optional
//! `params` (formulas and terms in the definition DSL's text syntax),
//! `premises`, and its `conclusion` as `{"ant": [...], "suc": [...]}`.
//! Printing is deterministic — fixed key order, sorted sequent sides,
//! canonical formula text — and parsing inverts it exactly.

use super::axioms::{AxiomSchema, Dir};
use super::{ProofTree, RuleApp, Sequent};
use crate::syntax::{
    parse_formula, parse_term, print_formula, print_term, Code, DefEnv, DslError, EnvError,
    Formula, Term,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
pub struct ScriptParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<Code>,
}

impl ScriptParams {
    pub fn is_empty(&self) -> bool {
        *self == ScriptParams::default()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScriptSequent {
    pub ant: Vec<String>,
    pub suc: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScriptNode {
    pub rule: String,
    #[serde(default, skip_serializing_if = "ScriptParams::is_empty")]
    pub params: ScriptParams,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<ScriptNode>,
    pub conclusion: ScriptSequent,
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("invalid proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node {path:?}: {source}")]
    Formula { path: Vec<usize>, source: DslError },
    #[error("node {path:?}: {source}")]
    Resolve { path: Vec<usize>, source: EnvError },
    #[error("node {path:?}: unknown rule {rule:?}")]
    UnknownRule { path: Vec<usize>, rule: String },
    #[error("node {path:?}: unknown axiom schema {schema:?}")]
    UnknownSchema { path: Vec<usize>, schema: String },
    #[error("node {path:?}: rule {rule} needs parameter {param}")]
    MissingParam {
        path: Vec<usize>,
        rule: String,
        param: &'static str,
    },
}

/// Parse script JSON.
pub fn parse_script(text: &str) -> Result<ScriptNode, ScriptError> {
    Ok(serde_json::from_str(text)?)
}

/// Deterministic pretty form with a trailing newline.
pub fn print_script(node: &ScriptNode) -> String {
    let mut s = serde_json::to_string_pretty(node).expect("script serialization");
    s.push('\n');
    s
}

/// Serialize a proof tree. Quote-free by construction: all formulas are
/// printed in their code-resolved form.
pub fn to_script(tree: &ProofTree) -> ScriptNode {
    let seq = |s: &Sequent| ScriptSequent {
        ant: s.ant.iter().map(print_formula).collect(),
        suc: s.suc.iter().map(print_formula).collect(),
    };
    let mut params = ScriptParams::default();
    let rule = match &tree.rule {
        RuleApp::Initial => "init",
        RuleApp::Axiom(schema) => {
            params.schema = Some(schema.id());
            match schema {
                AxiomSchema::Ref { term } => params.term = Some(print_term(term)),
                AxiomSchema::Arith { .. } => {}
                AxiomSchema::T1 { left, right, .. } => {
                    params.term = Some(print_term(left));
                    params.term2 = Some(print_term(right));
                }
                AxiomSchema::T2 { term, .. }
                | AxiomSchema::T3Rep { term, .. }
                | AxiomSchema::T3Neg { term, .. }
                | AxiomSchema::P2 { term, .. }
                | AxiomSchema::P3 { term, .. }
                | AxiomSchema::NotPP { term } => params.term = Some(print_term(term)),
                AxiomSchema::T4 { code, .. }
                | AxiomSchema::T5 { code, .. }
                | AxiomSchema::P1 { code }
                | AxiomSchema::P4 { code, .. }
                | AxiomSchema::P5 { code, .. }
                | AxiomSchema::P6 { code, .. }
                | AxiomSchema::P7 { code, .. }
                | AxiomSchema::I1 { code }
                | AxiomSchema::I1Contra { code } => params.code = Some(*code),
            }
            "axiom"
        }
        RuleApp::Cut { formula } => {
            params.formula = Some(print_formula(formula));
            "cut"
        }
        RuleApp::LNeg { formula } => {
            params.formula = Some(print_formula(formula));
            "lneg"
        }
        RuleApp::Lw { formula } => {
            params.formula = Some(print_formula(formula));
            "lw"
        }
        RuleApp::Rw { formula } => {
            params.formula = Some(print_formula(formula));
            "rw"
        }
        RuleApp::LOr { formula } => {
            params.formula = Some(print_formula(formula));
            "lor"
        }
        RuleApp::ROr { formula } => {
            params.formula = Some(print_formula(formula));
            "ror"
        }
        RuleApp::LAnd { formula } => {
            params.formula = Some(print_formula(formula));
            "land"
        }
        RuleApp::RAnd { formula } => {
            params.formula = Some(print_formula(formula));
            "rand"
        }
        RuleApp::LEx { formula, eigen } => {
            params.formula = Some(print_formula(formula));
            params.eigen = Some(eigen.clone());
            "lex"
        }
        RuleApp::REx { formula, witness } => {
            params.formula = Some(print_formula(formula));
            params.term = Some(print_term(witness));
            "rex"
        }
        RuleApp::LAll { formula, witness } => {
            params.formula = Some(print_formula(formula));
            params.term = Some(print_term(witness));
            "lall"
        }
        RuleApp::RAll { formula, eigen } => {
            params.formula = Some(print_formula(formula));
            params.eigen = Some(eigen.clone());
            "rall"
        }
        RuleApp::Repl {
            matrix,
            var,
            from,
            to,
        } => {
            params.matrix = Some(print_formula(matrix));
            params.var = Some(var.clone());
            params.term = Some(print_term(from));
            params.term2 = Some(print_term(to));
            "repl"
        }
        RuleApp::Ind {
            matrix,
            var,
            eigen,
            term,
        } => {
            params.matrix = Some(print_formula(matrix));
            params.var = Some(var.clone());
            params.eigen = Some(eigen.clone());
            params.term = Some(print_term(term));
            "ind"
        }
    };
    ScriptNode {
        rule: rule.to_string(),
        params,
        premises: tree.premises.iter().map(to_script).collect(),
        conclusion: seq(&tree.conclusion),
    }
}

struct Loader<'a> {
    env: &'a DefEnv,
}

impl<'a> Loader<'a> {
    fn formula(&self, text: &str, path: &[usize]) -> Result<Formula, ScriptError> {
        let raw = parse_formula(text).map_err(|source| ScriptError::Formula {
            path: path.to_vec(),
            source,
        })?;
        self.env
            .resolve(&raw)
            .map_err(|source| ScriptError::Resolve {
                path: path.to_vec(),
                source,
            })
    }

    fn term(&self, text: &str, path: &[usize]) -> Result<Term, ScriptError> {
        let raw = parse_term(text).map_err(|source| ScriptError::Formula {
            path: path.to_vec(),
            source,
        })?;
        self.env
            .resolve_term(&raw)
            .map_err(|source| ScriptError::Resolve {
                path: path.to_vec(),
                source,
            })
    }

    fn sequent(&self, s: &ScriptSequent, path: &[usize]) -> Result<Sequent, ScriptError> {
        let mut ant = Vec::new();
        for f in &s.ant {
            ant.push(self.formula(f, path)?);
        }
        let mut suc = Vec::new();
        for f in &s.suc {
            suc.push(self.formula(f, path)?);
        }
        Ok(Sequent::new(ant, suc))
    }

    fn node(&self, node: &ScriptNode, path: &mut Vec<usize>) -> Result<ProofTree, ScriptError> {
        let mut premises = Vec::new();
        for (i, p) in node.premises.iter().enumerate() {
            path.push(i);
            premises.push(self.node(p, path)?);
            path.pop();
        }
        let here: Vec<usize> = path.clone();
        let conclusion = self.sequent(&node.conclusion, &here)?;
        let missing = |param: &'static str| ScriptError::MissingParam {
            path: here.clone(),
            rule: node.rule.clone(),
            param,
        };
        macro_rules! formula_param {
            ($field:ident) => {
                self.formula(
                    node.params
                        .$field
                        .as_deref()
                        .ok_or_else(|| missing(stringify!($field)))?,
                    &here,
                )?
            };
        }
        macro_rules! term_param {
            ($field:ident) => {
                self.term(
                    node.params
                        .$field
                        .as_deref()
                        .ok_or_else(|| missing(stringify!($field)))?,
                    &here,
                )?
            };
        }
        let rule = match node.rule.as_str() {
            "init" => RuleApp::Initial,
            "axiom" => {
                let id = node
                    .params
                    .schema
                    .as_deref()
                    .ok_or_else(|| missing("schema"))?;
                RuleApp::Axiom(self.schema(id, node, &conclusion, &here)?)
            }
            "cut" => RuleApp::Cut {
                formula: formula_param!(formula),
            },
            "lneg" => RuleApp::LNeg {
                formula: formula_param!(formula),
            },
            "lw" => RuleApp::Lw {
                formula: formula_param!(formula),
            },
            "rw" => RuleApp::Rw {
                formula: formula_param!(formula),
            },
            "lor" => RuleApp::LOr {
                formula: formula_param!(formula),
            },
            "ror" => RuleApp::ROr {
                formula: formula_param!(formula),
            },
            "land" => RuleApp::LAnd {
                formula: formula_param!(formula),
            },
            "rand" => RuleApp::RAnd {
                formula: formula_param!(formula),
            },
            "lex" => RuleApp::LEx {
                formula: formula_param!(formula),
                eigen: node.params.eigen.clone().ok_or_else(|| missing("eigen"))?,
            },
            "rex" => RuleApp::REx {
                formula: formula_param!(formula),
                witness: term_param!(term),
            },
            "lall" => RuleApp::LAll {
                formula: formula_param!(formula),
                witness: term_param!(term),
            },
            "rall" => RuleApp::RAll {
                formula: formula_param!(formula),
                eigen: node.params.eigen.clone().ok_or_else(|| missing("eigen"))?,
            },
            "repl" => RuleApp::Repl {
                matrix: formula_param!(matrix),
                var: node.params.var.clone().ok_or_else(|| missing("var"))?,
                from: term_param!(term),
                to: term_param!(term2),
            },
            "ind" => RuleApp::Ind {
                matrix: formula_param!(matrix),
                var: node.params.var.clone().ok_or_else(|| missing("var"))?,
                eigen: node.params.eigen.clone().ok_or_else(|| missing("eigen"))?,
                term: term_param!(term),
            },
            other => {
                return Err(ScriptError::UnknownRule {
                    path: here,
                    rule: other.to_string(),
                })
            }
        };
        Ok(ProofTree {
            conclusion,
            rule,
            premises,
        })
    }

    fn schema(
        &self,
        id: &str,
        node: &ScriptNode,
        conclusion: &Sequent,
        path: &[usize],
    ) -> Result<AxiomSchema, ScriptError> {
        let missing = |param: &'static str| ScriptError::MissingParam {
            path: path.to_vec(),
            rule: format!("axiom {id}"),
            param,
        };
        let term = || -> Result<Term, ScriptError> {
            self.term(
                node.params.term.as_deref().ok_or_else(|| missing("term"))?,
                path,
            )
        };
        let term2 = || -> Result<Term, ScriptError> {
            self.term(
                node.params
                    .term2
                    .as_deref()
                    .ok_or_else(|| missing("term2"))?,
                path,
            )
        };
        let code =
            || -> Result<Code, ScriptError> { node.params.code.ok_or_else(|| missing("code")) };
        let dir = |s: &str| {
            if s.ends_with("rtl") {
                Dir::Rtl
            } else {
                Dir::Ltr
            }
        };
        Ok(match id {
            "ref" => AxiomSchema::Ref { term: term()? },
            "arith" => AxiomSchema::Arith {
                sequent: conclusion.clone(),
            },
            "p1" => AxiomSchema::P1 { code: code()? },
            "i1" => AxiomSchema::I1 { code: code()? },
            "i1.contra" => AxiomSchema::I1Contra { code: code()? },
            "notpp" => AxiomSchema::NotPP { term: term()? },
            _ if id.starts_with("t1.") => AxiomSchema::T1 {
                neq: id.contains(".neq."),
                dir: dir(id),
                left: term()?,
                right: term2()?,
            },
            _ if id.starts_with("t2.") => AxiomSchema::T2 {
                negated: id.contains(".np."),
                dir: dir(id),
                term: term()?,
            },
            _ if id.starts_with("t3.rep") => AxiomSchema::T3Rep {
                dir: dir(id),
                term: term()?,
            },
            _ if id.starts_with("t3.neg") => AxiomSchema::T3Neg {
                dir: dir(id),
                term: term()?,
            },
            _ if id.starts_with("t4.") => AxiomSchema::T4 {
                or: id.contains(".or."),
                dir: dir(id),
                code: code()?,
            },
            _ if id.starts_with("t5.") => AxiomSchema::T5 {
                ex: id.contains(".ex."),
                dir: dir(id),
                code: code()?,
            },
            _ if id.starts_with("p2.") => AxiomSchema::P2 {
                par: id.contains(".p."),
                dir: dir(id),
                term: term()?,
            },
            _ if id.starts_with("p3.") => AxiomSchema::P3 {
                dir: dir(id),
                term: term()?,
            },
            _ if id.starts_with("p4.") => AxiomSchema::P4 {
                dir: dir(id),
                code: code()?,
            },
            _ if id.starts_with("p5.") => AxiomSchema::P5 {
                dir: dir(id),
                code: code()?,
            },
            _ if id.starts_with("p6.") => AxiomSchema::P6 {
                dir: dir(id),
                code: code()?,
            },
            _ if id.starts_with("p7.") => AxiomSchema::P7 {
                dir: dir(id),
                code: code()?,
            },
            other => {
                return Err(ScriptError::UnknownSchema {
                    path: path.to_vec(),
                    schema: other.to_string(),
                })
            }
        })
    }
}

/// Reconstruct a proof tree from a script, resolving `quote(..)` against
/// the environment.
pub fn from_script(env: &DefEnv, node: &ScriptNode) -> Result<ProofTree, ScriptError> {
    Loader { env }.node(node, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_defs;

    fn env() -> DefEnv {
        parse_defs("#domain 16\nzero := 0 = 0\n").unwrap()
    }

    fn simple_tree() -> ProofTree {
        let phi = parse_formula("T(1)").unwrap();
        let init = ProofTree::leaf(Sequent::new([phi.clone()], [phi.clone()]), RuleApp::Initial);
        ProofTree::node(
            Sequent::new([phi.clone(), parse_formula("P(2)").unwrap()], [phi.clone()]),
            RuleApp::Lw {
                formula: parse_formula("P(2)").unwrap(),
            },
            vec![init],
        )
    }

    #[test]
    fn script_round_trip_is_exact() {
        let env = env();
        let tree = simple_tree();
        let script = to_script(&tree);
        let text = print_script(&script);
        let reparsed = parse_script(&text).unwrap();
        assert_eq!(reparsed, script);
        let rebuilt = from_script(&env, &reparsed).unwrap();
        assert_eq!(rebuilt, tree);
        // Printing is idempotent on its own output.
        assert_eq!(print_script(&reparsed), text);
    }

    #[test]
    fn quotes_resolve_against_the_environment() {
        let env = env();
        let text = r#"{
  "rule": "init",
  "conclusion": { "ant": ["T(quote(zero))"], "suc": ["T(quote(zero))"] }
}"#;
        let node = parse_script(text).unwrap();
        let tree = from_script(&env, &node).unwrap();
        let expected = parse_formula("T(1)").unwrap();
        assert!(tree.conclusion.ant.contains(&expected));
    }

    #[test]
    fn unknown_rules_are_reported_with_a_path() {
        let env = env();
        let text = r#"{
  "rule": "lw",
  "params": { "formula": "P(2)" },
  "premises": [ { "rule": "frobnicate", "conclusion": { "ant": [], "suc": [] } } ],
  "conclusion": { "ant": [], "suc": [] }
}"#;
        let node = parse_script(text).unwrap();
        let err = from_script(&env, &node).unwrap_err();
        match err {
            ScriptError::UnknownRule { path, rule } => {
                assert_eq!(path, vec![0]);
                assert_eq!(rule, "frobnicate");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
