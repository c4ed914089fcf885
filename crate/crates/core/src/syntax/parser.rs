//! Hand-written lexer and recursive-descent parser for types, terms and formulas.
//!
//! Source and translated formulas share one surface grammar; the parser builds
//! a raw tree and the caller decides which constructs are admissible.

use crate::error::{Error, Pos, Result};
use crate::syntax::ast::{Formula, TargetFormula, Term};
use crate::types::FiniteType;

const MAX_DEPTH: usize = 64;

const KEYWORDS: &[&str] = &["forall", "exists", "st", "bot", "succ", "fun", "in", "u"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Sym(&'static str),
    FunTable,
    Eof,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i + 1;
            while j < src.len() {
                let b = bytes[j];
                if b.is_ascii_alphanumeric() || b == b'_' || b == b'\'' || b == b'#' {
                    j += 1;
                } else {
                    break;
                }
            }
            let word = &src[i..j];
            if word == "fun" && src[j..].starts_with("-table") {
                out.push((Tok::FunTable, start));
                i = j + "-table".len();
            } else {
                out.push((Tok::Ident(word.to_string()), start));
                i = j;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < src.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let n: u64 = src[i..j].parse().map_err(|_| Error::Parse {
                pos: Pos::locate(src, i),
                msg: "numeral out of range".into(),
            })?;
            out.push((Tok::Nat(n), start));
            i = j;
            continue;
        }
        let two = src.get(i..i + 2).unwrap_or("");
        let sym2 = match two {
            "->" => Some("->"),
            "=>" => Some("=>"),
            "/\\" => Some("/\\"),
            "\\/" => Some("\\/"),
            _ => None,
        };
        if let Some(s) = sym2 {
            out.push((Tok::Sym(s), start));
            i += 2;
            continue;
        }
        let tok = match c {
            '(' => Tok::Sym("("),
            ')' => Tok::Sym(")"),
            '[' => Tok::Sym("["),
            ']' => Tok::Sym("]"),
            '{' => Tok::Sym("{"),
            '}' => Tok::Sym("}"),
            ',' => Tok::Sym(","),
            '.' => Tok::Sym("."),
            ':' => Tok::Sym(":"),
            '=' => Tok::Sym("="),
            '~' | '¬' => Tok::Sym("~"),
            '*' => Tok::Sym("*"),
            '^' => Tok::Sym("^"),
            '→' => Tok::Sym("->"),
            '∧' => Tok::Sym("/\\"),
            '∨' => Tok::Sym("\\/"),
            '∈' => Tok::Ident("in".into()),
            '∪' => Tok::Ident("u".into()),
            'ℕ' => Tok::Ident("N".into()),
            '⊥' => Tok::Ident("bot".into()),
            '∀' => Tok::Ident("forall".into()),
            '∃' => Tok::Ident("exists".into()),
            _ => {
                return Err(Error::Parse {
                    pos: Pos::locate(src, i),
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, start));
        i += c.len_utf8();
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    Forall,
    Exists,
    ForallSt,
    ExistsSt,
}

#[derive(Debug, Clone)]
enum Raw {
    Eq(Term, Term),
    False,
    Mem(Term, Term),
    St(FiniteType, Term, usize),
    And(Box<Raw>, Box<Raw>),
    Implies(Box<Raw>, Box<Raw>),
    Quant(Quant, String, FiniteType, Box<Raw>, usize),
    Bounded(bool, String, Term, Box<Raw>, usize),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: Pos::locate(self.src, self.offset()),
            msg: msg.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::FunTable => "`fun-table`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_kw(&mut self, s: &str) -> Result<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.err(format!("expected identifier, found {}", self.describe())),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("nesting too deep");
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn expect_eof(&self) -> Result<()> {
        if matches!(self.peek(), Tok::Eof) {
            Ok(())
        } else {
            self.err(format!("unexpected {} after end of input", self.describe()))
        }
    }

    // ---- types ----

    fn ty(&mut self) -> Result<FiniteType> {
        self.enter()?;
        let r = self.ty_inner();
        self.leave();
        r
    }

    fn ty_inner(&mut self) -> Result<FiniteType> {
        let dom = self.ty_postfix()?;
        if self.eat_sym("->") {
            let cod = self.ty()?;
            Ok(FiniteType::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn ty_postfix(&mut self) -> Result<FiniteType> {
        let mut t = if self.eat_sym("(") {
            let t = self.ty()?;
            self.expect_sym(")")?;
            t
        } else if self.is_kw("N") {
            self.bump();
            FiniteType::Nat
        } else {
            return self.err(format!("expected a type, found {}", self.describe()));
        };
        while self.eat_sym("*") {
            t = FiniteType::star(t);
        }
        Ok(t)
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term> {
        self.enter()?;
        let r = self.term_inner();
        self.leave();
        r
    }

    fn term_inner(&mut self) -> Result<Term> {
        if self.is_kw("fun") {
            return self.lambda();
        }
        let mut t = self.app()?;
        while self.is_kw("u") {
            self.bump();
            let rhs = if self.is_kw("fun") { self.lambda()? } else { self.app()? };
            t = Term::union(t, rhs);
        }
        Ok(t)
    }

    fn lambda(&mut self) -> Result<Term> {
        self.expect_kw("fun")?;
        let x = self.ident()?;
        self.expect_sym(":")?;
        let sort = self.ty()?;
        self.expect_sym("=>")?;
        let body = self.term()?;
        Ok(Term::lambda(x, sort, body))
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()),
            Tok::Nat(_) | Tok::FunTable => true,
            Tok::Sym(s) => *s == "(" || *s == "{",
            Tok::Eof => false,
        }
    }

    fn app(&mut self) -> Result<Term> {
        let mut t = self.prefix()?;
        loop {
            if self.starts_atom() {
                let arg = self.postfix()?;
                t = Term::app(t, arg);
            } else if self.is_kw("fun") {
                let arg = self.lambda()?;
                t = Term::app(t, arg);
                break;
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn prefix(&mut self) -> Result<Term> {
        if self.is_kw("succ") {
            self.bump();
            self.enter()?;
            let r = self.prefix();
            self.leave();
            Ok(Term::succ(r?))
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.eat_sym("[") {
            let mut args = Vec::new();
            if !self.is_sym("]") {
                args.push(self.term()?);
                while self.eat_sym(",") {
                    args.push(self.term()?);
                }
            }
            self.expect_sym("]")?;
            t = Term::set_app(t, args);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(Term::Var(s))
            }
            Tok::Nat(n) => {
                self.bump();
                Ok(Term::Nat(n))
            }
            Tok::Sym("(") => {
                self.bump();
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Tok::Sym("{") => {
                self.bump();
                if self.is_sym("}") {
                    return Err(Error::EmptySetLiteral);
                }
                let first = self.term()?;
                if self.eat_sym(":") {
                    let x = self.ident()?;
                    self.expect_kw("in")?;
                    let over = self.term()?;
                    self.expect_sym("}")?;
                    return Ok(Term::set_map(x, over, first));
                }
                let mut elems = vec![first];
                while self.eat_sym(",") {
                    elems.push(self.term()?);
                }
                self.expect_sym("}")?;
                Ok(Term::SetLit(elems))
            }
            Tok::FunTable => {
                self.bump();
                self.expect_sym("[")?;
                let mut rows = Vec::new();
                loop {
                    let k = self.term()?;
                    self.expect_sym("=>")?;
                    let v = self.term()?;
                    rows.push((k, v));
                    if !self.eat_sym(",") {
                        break;
                    }
                }
                self.expect_sym("]")?;
                Ok(Term::Table(rows))
            }
            _ => self.err(format!("expected a term, found {}", self.describe())),
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Raw> {
        self.enter()?;
        let r = if self.is_kw("forall") || self.is_kw("exists") {
            self.quant()
        } else {
            self.implication()
        };
        self.leave();
        r
    }

    fn quant(&mut self) -> Result<Raw> {
        let at = self.offset();
        let universal = self.is_kw("forall");
        self.bump();
        let standard = if self.eat_sym("^") {
            self.expect_kw("st")?;
            true
        } else {
            false
        };
        let x = self.ident()?;
        if !standard && self.is_kw("in") {
            self.bump();
            let set = self.term()?;
            self.expect_sym(".")?;
            let body = self.formula()?;
            return Ok(Raw::Bounded(!universal, x, set, Box::new(body), at));
        }
        self.expect_sym(":")?;
        let sort = self.ty()?;
        self.expect_sym(".")?;
        let body = self.formula()?;
        let q = match (universal, standard) {
            (true, false) => Quant::Forall,
            (false, false) => Quant::Exists,
            (true, true) => Quant::ForallSt,
            (false, true) => Quant::ExistsSt,
        };
        Ok(Raw::Quant(q, x, sort, Box::new(body), at))
    }

    fn implication(&mut self) -> Result<Raw> {
        let lhs = self.conjunction()?;
        if self.is_sym("\\/") {
            return Err(Error::UnsupportedConnective {
                pos: Pos::locate(self.src, self.offset()),
            });
        }
        if self.eat_sym("->") {
            let rhs = self.formula()?;
            Ok(Raw::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn conjunction(&mut self) -> Result<Raw> {
        let lhs = self.unary()?;
        if self.eat_sym("/\\") {
            self.enter()?;
            let rhs = if self.is_kw("forall") || self.is_kw("exists") {
                self.quant()
            } else {
                self.conjunction()
            };
            self.leave();
            Ok(Raw::And(Box::new(lhs), Box::new(rhs?)))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Raw> {
        if self.eat_sym("~") {
            self.enter()?;
            let inner = if self.is_kw("forall") || self.is_kw("exists") {
                self.quant()
            } else {
                self.unary()
            };
            self.leave();
            return Ok(Raw::Implies(Box::new(inner?), Box::new(Raw::False)));
        }
        self.atomic()
    }

    fn atomic(&mut self) -> Result<Raw> {
        if self.is_kw("bot") {
            self.bump();
            return Ok(Raw::False);
        }
        if self.is_kw("st") && matches!(self.peek_at(1), Tok::Sym("[")) {
            let at = self.offset();
            self.bump();
            self.bump();
            let sort = self.ty()?;
            self.expect_sym("]")?;
            self.expect_sym("(")?;
            let t = self.term()?;
            self.expect_sym(")")?;
            return Ok(Raw::St(sort, t, at));
        }
        if self.is_sym("(") {
            let save = self.pos;
            let depth = self.depth;
            self.bump();
            let attempt = self.formula().and_then(|f| {
                self.expect_sym(")")?;
                Ok(f)
            });
            match attempt {
                Ok(f) if !self.is_sym("=") && !self.is_kw("in") && !self.is_sym("[") => {
                    return Ok(f)
                }
                Err(e @ Error::UnsupportedConnective { .. }) => return Err(e),
                _ => {
                    self.pos = save;
                    self.depth = depth;
                }
            }
        }
        let lhs = self.term()?;
        if self.eat_sym("=") {
            let rhs = self.term()?;
            Ok(Raw::Eq(lhs, rhs))
        } else if self.is_kw("in") {
            self.bump();
            let rhs = self.term()?;
            Ok(Raw::Mem(lhs, rhs))
        } else {
            self.err(format!(
                "expected `=` or `in` after term, found {}",
                self.describe()
            ))
        }
    }
}

fn reserved(name: &str) -> bool {
    name.contains('#')
}

fn check_source_term(src: &str, t: &Term, at: usize) -> Result<()> {
    for v in t.free_vars() {
        if reserved(&v) {
            return Err(Error::Scope {
                pos: Pos::locate(src, at),
                msg: format!("`{v}` uses the reserved `#` marker"),
            });
        }
    }
    Ok(())
}

fn to_source(src: &str, raw: Raw) -> Result<Formula> {
    Ok(match raw {
        Raw::Eq(a, b) => {
            check_source_term(src, &a, 0)?;
            check_source_term(src, &b, 0)?;
            Formula::Eq(a, b)
        }
        Raw::Mem(a, b) => {
            check_source_term(src, &a, 0)?;
            check_source_term(src, &b, 0)?;
            Formula::Mem(a, b)
        }
        Raw::False => Formula::False,
        Raw::St(s, t, at) => {
            check_source_term(src, &t, at)?;
            Formula::St(s, t)
        }
        Raw::And(a, b) => Formula::and(to_source(src, *a)?, to_source(src, *b)?),
        Raw::Implies(a, b) => Formula::implies(to_source(src, *a)?, to_source(src, *b)?),
        Raw::Quant(q, x, s, body, at) => {
            if reserved(&x) {
                return Err(Error::Scope {
                    pos: Pos::locate(src, at),
                    msg: format!("`{x}` uses the reserved `#` marker"),
                });
            }
            let body = Box::new(to_source(src, *body)?);
            match q {
                Quant::Forall => Formula::Forall(x, s, body),
                Quant::Exists => Formula::Exists(x, s, body),
                Quant::ForallSt => Formula::ForallSt(x, s, body),
                Quant::ExistsSt => Formula::ExistsSt(x, s, body),
            }
        }
        Raw::Bounded(_, _, _, _, at) => {
            return Err(Error::Parse {
                pos: Pos::locate(src, at),
                msg: "bounded quantifiers belong to translated formulas; write `exists x:T. x in s /\\ ...`".into(),
            })
        }
    })
}

fn to_target(src: &str, raw: Raw) -> Result<TargetFormula> {
    Ok(match raw {
        Raw::Eq(a, b) => TargetFormula::Eq(a, b),
        Raw::Mem(a, b) => TargetFormula::Mem(a, b),
        Raw::False => TargetFormula::False,
        Raw::St(_, _, at) => {
            return Err(Error::Parse {
                pos: Pos::locate(src, at),
                msg: "translated formulas contain no standardness predicate".into(),
            })
        }
        Raw::And(a, b) => TargetFormula::and(to_target(src, *a)?, to_target(src, *b)?),
        Raw::Implies(a, b) => TargetFormula::implies(to_target(src, *a)?, to_target(src, *b)?),
        Raw::Quant(q, x, s, body, at) => {
            let body = Box::new(to_target(src, *body)?);
            match q {
                Quant::Forall => TargetFormula::Forall(x, s, body),
                Quant::Exists => TargetFormula::Exists(x, s, body),
                Quant::ForallSt | Quant::ExistsSt => {
                    return Err(Error::Parse {
                        pos: Pos::locate(src, at),
                        msg: "translated formulas contain no standard quantifiers".into(),
                    })
                }
            }
        }
        Raw::Bounded(exists, x, set, body, _) => {
            let body = Box::new(to_target(src, *body)?);
            if exists {
                TargetFormula::BoundedExists(x, set, body)
            } else {
                TargetFormula::BoundedForall(x, set, body)
            }
        }
    })
}

pub(crate) fn parse_type_str(src: &str) -> Result<FiniteType> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

pub(crate) fn parse_term_str(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Zero or more comma-separated terms, optionally wrapped in one pair of
/// parentheses. A lone parenthesised term counts as one component.
pub(crate) fn parse_term_tuple_str(src: &str) -> Result<Vec<Term>> {
    let mut p = Parser::new(src)?;
    if matches!(p.peek(), Tok::Eof) {
        return Ok(Vec::new());
    }
    if p.is_sym("(") && matches!(p.peek_at(1), Tok::Sym(")")) {
        p.bump();
        p.bump();
        p.expect_eof()?;
        return Ok(Vec::new());
    }
    // Try `( t1, t2, ... )` first.
    if p.is_sym("(") {
        let save = p.pos;
        p.bump();
        let attempt: Result<Vec<Term>> = (|| {
            let mut items = vec![p.term()?];
            while p.eat_sym(",") {
                items.push(p.term()?);
            }
            p.expect_sym(")")?;
            p.expect_eof()?;
            Ok(items)
        })();
        match attempt {
            Ok(items) => return Ok(items),
            Err(Error::EmptySetLiteral) => return Err(Error::EmptySetLiteral),
            Err(_) => {
                p.pos = save;
                p.depth = 0;
            }
        }
    }
    let mut items = vec![p.term()?];
    while p.eat_sym(",") {
        items.push(p.term()?);
    }
    p.expect_eof()?;
    Ok(items)
}

pub(crate) fn parse_source_str(src: &str) -> Result<Formula> {
    let mut p = Parser::new(src)?;
    let raw = p.formula()?;
    p.expect_eof()?;
    to_source(src, raw)
}

pub(crate) fn parse_target_str(src: &str) -> Result<TargetFormula> {
    let mut p = Parser::new(src)?;
    let raw = p.formula()?;
    p.expect_eof()?;
    to_target(src, raw)
}
