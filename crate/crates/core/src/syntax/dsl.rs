//! The sentence-definition DSL and the shared formula/term text syntax.
//!
//! A definition file is line based:
//!
//! ```text
//! #domain 400
//! liar  := ~T(quote(liar))
//! curry := ~T(quote(curry)) | 0 = 1
//! gupta := all x. (T(x) | ~T(x))
//! #base some_name        // declare a base paradoxical by fiat
//! ```
//!
//! `~` is general negation and is normalized away at parse time via the
//! De Morgan dual. `&` binds tighter than `|`; quantifiers scope maximally
//! to the right and must be parenthesized when embedded in a binary
//! connective. Comments run from `//` to end of line.

use super::{negate, DefEnv, EnvError, Formula, Nat, Term};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DslError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate #domain directive")]
    DuplicateDomain { line: usize },
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// Default quantifier bound when a file has no `#domain` directive.
pub const DEFAULT_DOMAIN: Nat = 16;

/// Parse a whole definition file into an environment.
pub fn parse_defs(text: &str) -> Result<DefEnv, DslError> {
    parse_defs_with_domain(text, None)
}

/// As [`parse_defs`], with the quantifier bound overridden when given.
pub fn parse_defs_with_domain(text: &str, bound: Option<Nat>) -> Result<DefEnv, DslError> {
    let mut defs: Vec<(String, Formula)> = Vec::new();
    let mut base: Vec<String> = Vec::new();
    let mut domain: Option<Nat> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find("//") {
            Some(p) => &raw_line[..p],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#domain") {
            if domain.is_some() {
                return Err(DslError::DuplicateDomain { line: line_no });
            }
            let n: Nat = rest.trim().parse().map_err(|_| DslError::Parse {
                line: line_no,
                msg: format!("bad #domain argument {:?}", rest.trim()),
            })?;
            domain = Some(n);
            continue;
        }
        if let Some(rest) = line.strip_prefix("#base") {
            let name = rest.trim();
            if name.is_empty() || !is_ident(name) {
                return Err(DslError::Parse {
                    line: line_no,
                    msg: "expected a name after #base".into(),
                });
            }
            base.push(name.to_string());
            continue;
        }
        let (name, body) = line.split_once(":=").ok_or_else(|| DslError::Parse {
            line: line_no,
            msg: "expected `name := formula`".into(),
        })?;
        let name = name.trim();
        if !is_ident(name) {
            return Err(DslError::Parse {
                line: line_no,
                msg: format!("bad definition name {name:?}"),
            });
        }
        let formula = parse_formula(body).map_err(|e| match e {
            DslError::Parse { msg, .. } => DslError::Parse { line: line_no, msg },
            other => other,
        })?;
        defs.push((name.to_string(), formula));
    }
    let domain = bound.or(domain).unwrap_or(DEFAULT_DOMAIN);
    Ok(DefEnv::new(defs, base, domain)?)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const KEYWORDS: &[&str] = &[
    "all", "ex", "T", "P", "S", "quote", "num", "inst", "iterT", "dot_T", "dot_P", "dot_negT",
    "dot_negP", "dot_neg", "dot_and", "dot_or", "dot_eq", "dot_neq", "dot_all", "dot_ex",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(Nat),
    LParen,
    RParen,
    Dot,
    Comma,
    Eq,
    Neq,
    Tilde,
    Amp,
    Pipe,
    Plus,
    Star,
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '.' => {
                toks.push(Tok::Dot);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '=' => {
                toks.push(Tok::Eq);
                i += 1;
            }
            '~' => {
                toks.push(Tok::Tilde);
                i += 1;
            }
            '&' => {
                toks.push(Tok::Amp);
                i += 1;
            }
            '|' => {
                toks.push(Tok::Pipe);
                i += 1;
            }
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    toks.push(Tok::Neq);
                    i += 2;
                } else {
                    return Err("stray `!` (expected `!=`)".into());
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: Nat = s[start..i]
                    .parse()
                    .map_err(|_| format!("numeral out of range: {}", &s[start..i]))?;
                toks.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push(Tok::Ident(s[start..i].to_string()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            got => Err(format!("expected identifier, found {got:?}")),
        }
    }

    fn at_ident(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn formula(&mut self) -> Result<Formula, String> {
        if self.at_ident("all") || self.at_ident("ex") {
            return self.quantified();
        }
        self.disjunction()
    }

    fn quantified(&mut self) -> Result<Formula, String> {
        let kw = self.ident()?;
        let var = self.ident()?;
        if KEYWORDS.contains(&var.as_str()) {
            return Err(format!("{var:?} is reserved and cannot bind a variable"));
        }
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match kw.as_str() {
            "all" => Formula::All(var, Box::new(body)),
            _ => Formula::Ex(var, Box::new(body)),
        })
    }

    fn disjunction(&mut self) -> Result<Formula, String> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.next();
            let rhs = self.conjunction()?;
            acc = Formula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, String> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.next();
            let rhs = self.unary()?;
            acc = Formula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, String> {
        if self.peek() == Some(&Tok::Tilde) {
            self.next();
            let inner = if self.at_ident("all") || self.at_ident("ex") {
                self.quantified()?
            } else {
                self.unary()?
            };
            return Ok(negate(&inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, String> {
        if self.at_ident("T") || self.at_ident("P") {
            let kw = self.ident()?;
            self.expect(Tok::LParen)?;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(if kw == "T" {
                Formula::Tr(t)
            } else {
                Formula::Par(t)
            });
        }
        // A parenthesis may open a formula or the left term of a relation;
        // try the relation reading first and backtrack.
        let save = self.pos;
        match self.relation() {
            Ok(f) => return Ok(f),
            Err(_) => self.pos = save,
        }
        self.expect(Tok::LParen)?;
        let f = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(f)
    }

    fn relation(&mut self) -> Result<Formula, String> {
        let lhs = self.term()?;
        match self.next() {
            Some(Tok::Eq) => Ok(Formula::Eq(lhs, self.term()?)),
            Some(Tok::Neq) => Ok(Formula::Neq(lhs, self.term()?)),
            got => Err(format!("expected `=` or `!=`, found {got:?}")),
        }
    }

    fn term(&mut self) -> Result<Term, String> {
        let mut acc = self.summand()?;
        while self.peek() == Some(&Tok::Plus) {
            self.next();
            let rhs = self.summand()?;
            acc = Term::Add(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn summand(&mut self) -> Result<Term, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            let rhs = self.factor()?;
            acc = Term::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary_builder(&mut self, name: &str) -> Result<Term, String> {
        self.expect(Tok::LParen)?;
        let a = self.term()?;
        self.expect(Tok::RParen)?;
        let a = Box::new(a);
        Ok(match name {
            "S" => Term::Suc(a),
            "num" => Term::NumOf(a),
            "dot_T" => Term::DotT(a),
            "dot_P" => Term::DotP(a),
            "dot_negT" => Term::DotNegT(a),
            "dot_negP" => Term::DotNegP(a),
            _ => Term::DotNeg(a),
        })
    }

    fn binary_builder(&mut self, name: &str) -> Result<Term, String> {
        self.expect(Tok::LParen)?;
        let a = Box::new(self.term()?);
        self.expect(Tok::Comma)?;
        let b = Box::new(self.term()?);
        self.expect(Tok::RParen)?;
        Ok(match name {
            "dot_eq" => Term::DotEq(a, b),
            "dot_neq" => Term::DotNeq(a, b),
            "dot_and" => Term::DotAnd(a, b),
            "dot_or" => Term::DotOr(a, b),
            "dot_all" => Term::DotAll(a, b),
            "dot_ex" => Term::DotEx(a, b),
            _ => Term::IterT(a, b),
        })
    }

    fn factor(&mut self) -> Result<Term, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.next();
                Ok(Term::Num(n))
            }
            Some(Tok::LParen) => {
                self.next();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "S" | "num" | "dot_T" | "dot_P" | "dot_negT" | "dot_negP" | "dot_neg" => {
                    self.next();
                    self.unary_builder(&name)
                }
                "dot_eq" | "dot_neq" | "dot_and" | "dot_or" | "dot_all" | "dot_ex" | "iterT" => {
                    self.next();
                    self.binary_builder(&name)
                }
                "quote" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let n = self.ident()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::Quote(n))
                }
                "inst" => {
                    self.next();
                    self.expect(Tok::LParen)?;
                    let var = self.ident()?;
                    self.expect(Tok::Dot)?;
                    let matrix = self.formula()?;
                    self.expect(Tok::Comma)?;
                    let at = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::Inst(Box::new(matrix), var, Box::new(at)))
                }
                kw if KEYWORDS.contains(&kw) => Err(format!("{kw:?} cannot start a term")),
                _ => {
                    self.next();
                    Ok(Term::Var(name))
                }
            },
            got => Err(format!("expected a term, found {got:?}")),
        }
    }
}

/// Parse a single formula from text.
pub fn parse_formula(text: &str) -> Result<Formula, DslError> {
    let toks = lex(text).map_err(|msg| DslError::Parse { line: 0, msg })?;
    let mut p = Parser { toks, pos: 0 };
    let f = p
        .formula()
        .map_err(|msg| DslError::Parse { line: 0, msg })?;
    if p.peek().is_some() {
        return Err(DslError::Parse {
            line: 0,
            msg: format!("trailing input after formula: {:?}", p.peek()),
        });
    }
    Ok(f)
}

/// Parse a single term from text.
pub fn parse_term(text: &str) -> Result<Term, DslError> {
    let toks = lex(text).map_err(|msg| DslError::Parse { line: 0, msg })?;
    let mut p = Parser { toks, pos: 0 };
    let t = p.term().map_err(|msg| DslError::Parse { line: 0, msg })?;
    if p.peek().is_some() {
        return Err(DslError::Parse {
            line: 0,
            msg: format!("trailing input after term: {:?}", p.peek()),
        });
    }
    Ok(t)
}

fn fprec(f: &Formula) -> u8 {
    match f {
        Formula::All(..) | Formula::Ex(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn fmt_formula(f: &Formula, min: u8, out: &mut String) {
    let p = fprec(f);
    if p < min {
        out.push('(');
        fmt_formula(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Eq(a, b) => {
            fmt_term(a, 1, out);
            out.push_str(" = ");
            fmt_term(b, 1, out);
        }
        Formula::Neq(a, b) => {
            fmt_term(a, 1, out);
            out.push_str(" != ");
            fmt_term(b, 1, out);
        }
        Formula::Tr(t) => {
            out.push_str("T(");
            fmt_term(t, 1, out);
            out.push(')');
        }
        Formula::NotTr(t) => {
            out.push_str("~T(");
            fmt_term(t, 1, out);
            out.push(')');
        }
        Formula::Par(t) => {
            out.push_str("P(");
            fmt_term(t, 1, out);
            out.push(')');
        }
        Formula::NotPar(t) => {
            out.push_str("~P(");
            fmt_term(t, 1, out);
            out.push(')');
        }
        Formula::Or(a, b) => {
            fmt_formula(a, 1, out);
            out.push_str(" | ");
            fmt_formula(b, 2, out);
        }
        Formula::And(a, b) => {
            fmt_formula(a, 2, out);
            out.push_str(" & ");
            fmt_formula(b, 3, out);
        }
        Formula::All(v, m) => {
            out.push_str("all ");
            out.push_str(v);
            out.push_str(". ");
            fmt_formula(m, 0, out);
        }
        Formula::Ex(v, m) => {
            out.push_str("ex ");
            out.push_str(v);
            out.push_str(". ");
            fmt_formula(m, 0, out);
        }
    }
}

fn tprec(t: &Term) -> u8 {
    match t {
        Term::Add(..) => 1,
        Term::Mul(..) => 2,
        _ => 3,
    }
}

fn fmt_term(t: &Term, min: u8, out: &mut String) {
    let p = tprec(t);
    if p < min {
        out.push('(');
        fmt_term(t, 1, out);
        out.push(')');
        return;
    }
    let unary = |out: &mut String, name: &str, a: &Term| {
        out.push_str(name);
        out.push('(');
        fmt_term(a, 1, out);
        out.push(')');
    };
    let binary = |out: &mut String, name: &str, a: &Term, b: &Term| {
        out.push_str(name);
        out.push('(');
        fmt_term(a, 1, out);
        out.push_str(", ");
        fmt_term(b, 1, out);
        out.push(')');
    };
    match t {
        Term::Num(n) => out.push_str(&n.to_string()),
        Term::Var(v) => out.push_str(v),
        Term::Add(a, b) => {
            fmt_term(a, 1, out);
            out.push_str(" + ");
            fmt_term(b, 2, out);
        }
        Term::Mul(a, b) => {
            fmt_term(a, 2, out);
            out.push_str(" * ");
            fmt_term(b, 3, out);
        }
        Term::Suc(a) => unary(out, "S", a),
        Term::NumOf(a) => unary(out, "num", a),
        Term::Quote(n) => {
            out.push_str("quote(");
            out.push_str(n);
            out.push(')');
        }
        Term::DotT(a) => unary(out, "dot_T", a),
        Term::DotP(a) => unary(out, "dot_P", a),
        Term::DotNegT(a) => unary(out, "dot_negT", a),
        Term::DotNegP(a) => unary(out, "dot_negP", a),
        Term::DotNeg(a) => unary(out, "dot_neg", a),
        Term::DotEq(a, b) => binary(out, "dot_eq", a, b),
        Term::DotNeq(a, b) => binary(out, "dot_neq", a, b),
        Term::DotAnd(a, b) => binary(out, "dot_and", a, b),
        Term::DotOr(a, b) => binary(out, "dot_or", a, b),
        Term::DotAll(a, b) => binary(out, "dot_all", a, b),
        Term::DotEx(a, b) => binary(out, "dot_ex", a, b),
        Term::IterT(a, b) => binary(out, "iterT", a, b),
        Term::Inst(m, v, a) => {
            out.push_str("inst(");
            out.push_str(v);
            out.push_str(". ");
            fmt_formula(m, 0, out);
            out.push_str(", ");
            fmt_term(a, 1, out);
            out.push(')');
        }
    }
}

/// Deterministic text form; `parse_formula` inverts it.
pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    fmt_formula(f, 0, &mut s);
    s
}

/// Deterministic text form; `parse_term` inverts it.
pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    fmt_term(t, 1, &mut s);
    s
}
