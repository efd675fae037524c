//! Recursive-descent parser for `.ck` sessions.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::ast::{Command, Expr, OrderSpec, RingDecl, Session, Stmt, Tuple};
use super::lexer::{tokenize, Pos, Tok, Token};
use super::ParseError;
use crate::scalar::Field;

#[derive(Debug, Clone)]
enum Sym {
    Ring { vars: Vec<String> },
    Ideal { ring: String },
    Poly { ring: String },
    Pair { ring: String, len: usize },
}

const COMMANDS: &[&str] = &[
    "member",
    "radical-member",
    "radical-equal",
    "equal",
    "nzd",
    "regular",
    "koszul-exact",
    "syzygies",
    "dimension",
    "lci",
    "resolution",
    "ext",
    "mod-square",
    "regularize",
    "ci",
    "stci",
    "stci-search",
];

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
    syms: HashMap<String, Sym>,
    active_ring: Option<String>,
    /// Names seen while parsing the current expression, for deferred resolution.
    pending: Vec<(String, Pos)>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub(crate) fn new(text: &str) -> PResult<Self> {
        Ok(Parser { toks: tokenize(text)?, at: 0, syms: HashMap::new(), active_ring: None, pending: Vec::new() })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError::Syntax {
            pos: t.pos,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(&[&format!("`{c}`")])
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(&[&format!("`{kw}`")])
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => self.err(&["identifier"]),
        }
    }

    fn small_int(&mut self) -> PResult<u64> {
        match &self.peek().tok {
            Tok::Int(i) => {
                let v = i.to_u64();
                let pos = self.peek().pos;
                self.bump();
                v.ok_or(ParseError::Semantic { pos, message: "integer out of range".into() })
            }
            _ => self.err(&["integer"]),
        }
    }

    fn declare(&mut self, name: &str, pos: Pos, sym: Sym) -> PResult<()> {
        if self.syms.contains_key(name) {
            return Err(ParseError::Duplicate { pos, name: name.to_string() });
        }
        if let Some(ring) = &self.active_ring {
            if let Some(Sym::Ring { vars }) = self.syms.get(ring) {
                if vars.iter().any(|v| v == name) {
                    return Err(ParseError::Duplicate { pos, name: name.to_string() });
                }
            }
        }
        self.syms.insert(name.to_string(), sym);
        Ok(())
    }

    fn active_ring(&self, pos: Pos) -> PResult<String> {
        self.active_ring.clone().ok_or(ParseError::Undeclared { pos, name: "ring".into() })
    }

    fn ideal_ring(&self, name: &str, pos: Pos) -> PResult<String> {
        match self.syms.get(name) {
            Some(Sym::Ideal { ring }) => Ok(ring.clone()),
            Some(_) => Err(ParseError::Semantic { pos, message: format!("{name} is not an ideal") }),
            None => Err(ParseError::Undeclared { pos, name: name.to_string() }),
        }
    }

    /// Resolve the pending expression names against `ring`.
    fn resolve_pending(&mut self, ring: &str) -> PResult<()> {
        let vars = match self.syms.get(ring) {
            Some(Sym::Ring { vars }) => vars.clone(),
            _ => unreachable!("ring names are validated before use"),
        };
        for (name, pos) in std::mem::take(&mut self.pending) {
            if vars.contains(&name) {
                continue;
            }
            match self.syms.get(&name) {
                Some(Sym::Poly { ring: r }) if r == ring => {}
                Some(Sym::Poly { .. }) => {
                    return Err(ParseError::Semantic { pos, message: format!("{name} lives in another ring") })
                }
                Some(_) => {
                    return Err(ParseError::Semantic { pos, message: format!("{name} is not a polynomial") })
                }
                None => return Err(ParseError::Undeclared { pos, name }),
            }
        }
        Ok(())
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let e = self.small_int()?;
            let e = u32::try_from(e).map_err(|_| ParseError::Semantic {
                pos: self.peek().pos,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(Expr::Int(i))
            }
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                self.pending.push((s.clone(), pos));
                Ok(Expr::Name(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => self.err(&["integer", "identifier", "`(`"]),
        }
    }

    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.expect_sym('(')?;
        let mut out = Vec::new();
        if self.eat_sym(')') {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat_sym(')') {
                return Ok(out);
            }
            if !self.eat_sym(',') {
                return self.err(&["`,`", "`)`"]);
            }
        }
    }

    /// A standalone expression, for `PolyRing::parse`.
    pub(crate) fn standalone_expr(mut self) -> PResult<(Expr, Vec<(String, Pos)>)> {
        let e = self.expr()?;
        if self.peek().tok != Tok::Eof {
            return self.err(&["end of input"]);
        }
        Ok((e, self.pending))
    }

    fn ring_decl(&mut self) -> PResult<Stmt> {
        self.expect_kw("ring")?;
        let (name, pos) = self.ident()?;
        self.expect_sym('=')?;
        let field = match self.ident()? {
            (f, _) if f == "QQ" => Field::Rational,
            (f, fpos) if f == "Fp" => {
                self.expect_sym('(')?;
                let p = self.small_int()?;
                self.expect_sym(')')?;
                Field::prime(p).map_err(|e| ParseError::Semantic { pos: fpos, message: e.to_string() })?
            }
            (_, fpos) => {
                return Err(ParseError::Syntax {
                    pos: fpos,
                    found: "field name".into(),
                    expected: vec!["`QQ`".into(), "`Fp`".into()],
                })
            }
        };
        self.expect_sym('[')?;
        let mut vars = Vec::new();
        loop {
            let (v, vpos) = self.ident()?;
            if vars.contains(&v) || self.syms.contains_key(&v) {
                return Err(ParseError::Duplicate { pos: vpos, name: v });
            }
            vars.push(v);
            if self.eat_sym(']') {
                break;
            }
            if !self.eat_sym(',') {
                return self.err(&["`,`", "`]`"]);
            }
        }
        if self.syms.contains_key(&name) || vars.contains(&name) {
            return Err(ParseError::Duplicate { pos, name });
        }
        self.syms.insert(name.clone(), Sym::Ring { vars: vars.clone() });
        let mut base = Vec::new();
        if self.eat_sym('/') {
            base = self.expr_list()?;
            self.resolve_pending(&name)?;
        }
        let mut order = OrderSpec::Grevlex;
        if self.is_kw("order") {
            self.bump();
            let (o, opos) = self.ident()?;
            order = match o.as_str() {
                "lex" => OrderSpec::Lex,
                "grevlex" => OrderSpec::Grevlex,
                "elim" => {
                    self.expect_sym('(')?;
                    let k = self.small_int()? as usize;
                    self.expect_sym(')')?;
                    OrderSpec::Elim(k)
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos: opos,
                        found: format!("`{o}`"),
                        expected: vec!["`lex`".into(), "`grevlex`".into(), "`elim`".into()],
                    })
                }
            };
        }
        self.expect_sym(';')?;
        self.active_ring = Some(name.clone());
        Ok(Stmt::Ring(RingDecl { name, field, vars, base, order }))
    }

    /// Parse a tuple without resolving names; the ring may only be known later.
    fn tuple_raw(&mut self) -> PResult<(Tuple, usize, Option<(String, Pos)>)> {
        if self.peek().tok == Tok::Sym('(') {
            let items = self.expr_list()?;
            let n = items.len();
            return Ok((Tuple::Inline(items), n, None));
        }
        let (name, pos) = self.ident()?;
        let len = match self.syms.get(&name) {
            Some(Sym::Pair { len, .. }) => *len,
            Some(_) => return Err(ParseError::Semantic { pos, message: format!("{name} is not a pair") }),
            None => return Err(ParseError::Undeclared { pos, name }),
        };
        Ok((Tuple::Named(name.clone()), len, Some((name, pos))))
    }

    fn finish_tuple(&mut self, ring: &str, named: Option<(String, Pos)>) -> PResult<()> {
        match named {
            None => self.resolve_pending(ring),
            Some((name, pos)) => match self.syms.get(&name) {
                Some(Sym::Pair { ring: r, .. }) if r == ring => Ok(()),
                _ => Err(ParseError::Semantic { pos, message: format!("{name} lives in another ring") }),
            },
        }
    }

    fn tuple(&mut self, ring: &str) -> PResult<(Tuple, usize)> {
        let (t, n, named) = self.tuple_raw()?;
        self.finish_tuple(ring, named)?;
        Ok((t, n))
    }

    fn arity(pos: Pos, found: usize, expected: usize) -> PResult<()> {
        if found != expected {
            return Err(ParseError::Arity { pos, expected: expected.to_string(), found });
        }
        Ok(())
    }

    fn command_name(&mut self) -> PResult<(String, Pos)> {
        let (mut name, pos) = self.ident()?;
        while self.peek().tok == Tok::Sym('-') {
            let Tok::Ident(next) = self.peek_at(1).clone() else { break };
            let joined = format!("{name}-{next}");
            if !COMMANDS.iter().any(|c| *c == joined || c.starts_with(&format!("{joined}-"))) {
                break;
            }
            self.bump();
            self.bump();
            name = joined;
        }
        if !COMMANDS.contains(&name.as_str()) {
            return Err(ParseError::Syntax { pos, found: format!("`{name}`"), expected: vec!["check command".into()] });
        }
        Ok((name, pos))
    }

    fn check(&mut self) -> PResult<Stmt> {
        self.expect_kw("check")?;
        let (name, pos) = self.command_name()?;
        let ideal_arg = |p: &mut Parser| -> PResult<(String, String)> {
            let (i, ipos) = p.ident()?;
            let ring = p.ideal_ring(&i, ipos)?;
            Ok((i, ring))
        };
        let (command, ring) = match name.as_str() {
            "member" | "radical-member" | "nzd" => {
                let f = self.expr()?;
                self.expect_kw(if name == "nzd" { "mod" } else { "in" })?;
                let (ideal, ring) = ideal_arg(self)?;
                self.resolve_pending(&ring)?;
                let cmd = match name.as_str() {
                    "member" => Command::Member { f, ideal },
                    "radical-member" => Command::RadicalMember { f, ideal },
                    _ => Command::Nzd { f, ideal },
                };
                (cmd, ring)
            }
            "radical-equal" | "equal" => {
                let (left, ring) = ideal_arg(self)?;
                let (right, rpos) = self.ident()?;
                if self.ideal_ring(&right, rpos)? != ring {
                    return Err(ParseError::Semantic { pos: rpos, message: "ideals live in different rings".into() });
                }
                let cmd = if name == "equal" {
                    Command::Equal { left, right }
                } else {
                    Command::RadicalEqual { left, right }
                };
                (cmd, ring)
            }
            "regular" => {
                let (seq, n, named) = self.tuple_raw()?;
                if n == 0 {
                    return Err(ParseError::Arity { pos, expected: "at least 1".into(), found: 0 });
                }
                let modulo = if self.is_kw("mod") {
                    self.bump();
                    Some(self.ident()?)
                } else {
                    None
                };
                let ring = match &modulo {
                    Some((m, mpos)) => self.ideal_ring(m, *mpos)?,
                    None => self.active_ring(pos)?,
                };
                self.finish_tuple(&ring, named)?;
                (Command::Regular { seq, modulo: modulo.map(|m| m.0) }, ring)
            }
            "koszul-exact" | "syzygies" => {
                let ring = self.active_ring(pos)?;
                let (seq, n) = self.tuple(&ring)?;
                if name == "koszul-exact" {
                    Self::arity(pos, n, 2)?;
                    (Command::KoszulExact { pair: seq }, ring)
                } else {
                    if n == 0 {
                        return Err(ParseError::Arity { pos, expected: "at least 1".into(), found: 0 });
                    }
                    (Command::Syzygies { seq }, ring)
                }
            }
            "dimension" | "lci" => {
                let (ideal, ring) = ideal_arg(self)?;
                let cmd = if name == "lci" { Command::Lci { ideal } } else { Command::Dimension { ideal } };
                (cmd, ring)
            }
            "resolution" | "ext" => {
                let (ideal, ring) = ideal_arg(self)?;
                let n = self.small_int()? as usize;
                let cmd = if name == "ext" {
                    Command::Ext { ideal, index: n }
                } else {
                    if n > 4 {
                        return Err(ParseError::Semantic { pos, message: "resolution length is capped at 4".into() });
                    }
                    Command::Resolution { ideal, length: n }
                };
                (cmd, ring)
            }
            "mod-square" | "regularize" | "ci" | "stci" => {
                let (ideal, ring) = ideal_arg(self)?;
                self.expect_kw("with")?;
                let (with, n) = self.tuple(&ring)?;
                match name.as_str() {
                    "ci" | "stci" => Self::arity(pos, n, 2)?,
                    _ if n == 0 => {
                        return Err(ParseError::Arity { pos, expected: "at least 1".into(), found: 0 })
                    }
                    _ => {}
                }
                let cmd = match name.as_str() {
                    "mod-square" => Command::ModSquare { ideal, with },
                    "regularize" => Command::Regularize { ideal, with },
                    "ci" => Command::Ci { ideal, with },
                    _ => Command::Stci { ideal, with },
                };
                (cmd, ring)
            }
            "stci-search" => {
                let (ideal, ring) = ideal_arg(self)?;
                let hint = if self.is_kw("with") {
                    self.bump();
                    let (t, n) = self.tuple(&ring)?;
                    Self::arity(pos, n, 2)?;
                    Some(t)
                } else {
                    None
                };
                (Command::StciSearch { ideal, hint }, ring)
            }
            _ => unreachable!("command_name only returns known commands"),
        };
        self.expect_sym(';')?;
        Ok(Stmt::Check { command, ring, pos })
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.err(&["`ring`", "`ideal`", "`poly`", "`pair`", "`check`"]),
        };
        match kw.as_str() {
            "ring" => self.ring_decl(),
            "check" => self.check(),
            "ideal" | "poly" | "pair" => {
                let kw_pos = self.bump().pos;
                let (name, pos) = self.ident()?;
                let ring = self.active_ring(kw_pos)?;
                self.expect_sym('=')?;
                let stmt = match kw.as_str() {
                    "ideal" => {
                        let gens = self.expr_list()?;
                        self.resolve_pending(&ring)?;
                        self.declare(&name, pos, Sym::Ideal { ring: ring.clone() })?;
                        Stmt::Ideal { name, ring, gens }
                    }
                    "poly" => {
                        let expr = self.expr()?;
                        self.resolve_pending(&ring)?;
                        self.declare(&name, pos, Sym::Poly { ring: ring.clone() })?;
                        Stmt::Poly { name, ring, expr }
                    }
                    _ => {
                        let elems = self.expr_list()?;
                        self.resolve_pending(&ring)?;
                        self.declare(&name, pos, Sym::Pair { ring: ring.clone(), len: elems.len() })?;
                        Stmt::Pair { name, ring, elems }
                    }
                };
                self.expect_sym(';')?;
                Ok(stmt)
            }
            _ => self.err(&["`ring`", "`ideal`", "`poly`", "`pair`", "`check`"]),
        }
    }

    pub(crate) fn session(mut self) -> PResult<Session> {
        let mut stmts = Vec::new();
        while self.peek().tok != Tok::Eof {
            stmts.push(self.stmt()?);
        }
        Ok(Session { stmts })
    }
}
