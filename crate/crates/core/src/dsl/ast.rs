//! Session syntax tree and its canonical printer.

use std::fmt;

use num_bigint::BigInt;

use super::lexer::Pos;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Name(_) => 5,
        }
    }

    fn fmt_at(&self, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.fmt_at(0, f)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(i) => write!(f, "{i}"),
            Expr::Name(n) => f.write_str(n),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_at(3, f)
            }
            Expr::Add(a, b) => {
                a.fmt_at(1, f)?;
                f.write_str(" + ")?;
                b.fmt_at(2, f)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(1, f)?;
                f.write_str(" - ")?;
                b.fmt_at(2, f)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(2, f)?;
                f.write_str("*")?;
                b.fmt_at(3, f)
            }
            Expr::Div(a, b) => {
                a.fmt_at(2, f)?;
                f.write_str("/")?;
                b.fmt_at(3, f)
            }
            Expr::Pow(b, e) => {
                b.fmt_at(5, f)?;
                write!(f, "^{e}")
            }
        }
    }

    /// Names referenced anywhere in the expression.
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Name(n) => out.push(n.clone()),
            Expr::Neg(e) | Expr::Pow(e, _) => e.names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

fn fmt_list(items: &[Expr], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("(")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSpec {
    Lex,
    Grevlex,
    Elim(usize),
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Lex => f.write_str("lex"),
            OrderSpec::Grevlex => f.write_str("grevlex"),
            OrderSpec::Elim(k) => write!(f, "elim({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub field: Field,
    pub vars: Vec<String>,
    pub base: Vec<Expr>,
    pub order: OrderSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tuple {
    Named(String),
    Inline(Vec<Expr>),
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tuple::Named(n) => f.write_str(n),
            Tuple::Inline(items) => fmt_list(items, f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Member { f: Expr, ideal: String },
    RadicalMember { f: Expr, ideal: String },
    RadicalEqual { left: String, right: String },
    Equal { left: String, right: String },
    Nzd { f: Expr, ideal: String },
    Regular { seq: Tuple, modulo: Option<String> },
    KoszulExact { pair: Tuple },
    Syzygies { seq: Tuple },
    Dimension { ideal: String },
    Lci { ideal: String },
    Resolution { ideal: String, length: usize },
    Ext { ideal: String, index: usize },
    ModSquare { ideal: String, with: Tuple },
    Regularize { ideal: String, with: Tuple },
    Ci { ideal: String, with: Tuple },
    Stci { ideal: String, with: Tuple },
    StciSearch { ideal: String, hint: Option<Tuple> },
}

impl Command {
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Member { .. } => "member",
            Command::RadicalMember { .. } => "radical-member",
            Command::RadicalEqual { .. } => "radical-equal",
            Command::Equal { .. } => "equal",
            Command::Nzd { .. } => "nzd",
            Command::Regular { .. } => "regular",
            Command::KoszulExact { .. } => "koszul-exact",
            Command::Syzygies { .. } => "syzygies",
            Command::Dimension { .. } => "dimension",
            Command::Lci { .. } => "lci",
            Command::Resolution { .. } => "resolution",
            Command::Ext { .. } => "ext",
            Command::ModSquare { .. } => "mod-square",
            Command::Regularize { .. } => "regularize",
            Command::Ci { .. } => "ci",
            Command::Stci { .. } => "stci",
            Command::StciSearch { .. } => "stci-search",
        }
    }

    /// The ideal the command is about, if any; it fixes the ring used to read expressions.
    pub fn primary_ideal(&self) -> Option<&str> {
        match self {
            Command::Member { ideal, .. }
            | Command::RadicalMember { ideal, .. }
            | Command::Nzd { ideal, .. }
            | Command::Dimension { ideal }
            | Command::Lci { ideal }
            | Command::Resolution { ideal, .. }
            | Command::Ext { ideal, .. }
            | Command::ModSquare { ideal, .. }
            | Command::Regularize { ideal, .. }
            | Command::Ci { ideal, .. }
            | Command::Stci { ideal, .. }
            | Command::StciSearch { ideal, .. } => Some(ideal),
            Command::RadicalEqual { left, .. } | Command::Equal { left, .. } => Some(left),
            Command::Regular { modulo, .. } => modulo.as_deref(),
            Command::KoszulExact { .. } | Command::Syzygies { .. } => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.keyword())?;
        match self {
            Command::Member { f: e, ideal } | Command::RadicalMember { f: e, ideal } => {
                write!(f, " {e} in {ideal}")
            }
            Command::Nzd { f: e, ideal } => write!(f, " {e} mod {ideal}"),
            Command::RadicalEqual { left, right } | Command::Equal { left, right } => {
                write!(f, " {left} {right}")
            }
            Command::Regular { seq, modulo } => {
                write!(f, " {seq}")?;
                if let Some(m) = modulo {
                    write!(f, " mod {m}")?;
                }
                Ok(())
            }
            Command::KoszulExact { pair } => write!(f, " {pair}"),
            Command::Syzygies { seq } => write!(f, " {seq}"),
            Command::Dimension { ideal } | Command::Lci { ideal } => write!(f, " {ideal}"),
            Command::Resolution { ideal, length } => write!(f, " {ideal} {length}"),
            Command::Ext { ideal, index } => write!(f, " {ideal} {index}"),
            Command::ModSquare { ideal, with }
            | Command::Regularize { ideal, with }
            | Command::Ci { ideal, with }
            | Command::Stci { ideal, with } => write!(f, " {ideal} with {with}"),
            Command::StciSearch { ideal, hint } => {
                write!(f, " {ideal}")?;
                if let Some(h) = hint {
                    write!(f, " with {h}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ring(RingDecl),
    Ideal { name: String, ring: String, gens: Vec<Expr> },
    Poly { name: String, ring: String, expr: Expr },
    Pair { name: String, ring: String, elems: Vec<Expr> },
    Check { command: Command, ring: String, pos: Pos },
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring(r) => {
                write!(f, "ring {} = {}[{}]", r.name, r.field, r.vars.join(","))?;
                if !r.base.is_empty() {
                    f.write_str(" / ")?;
                    fmt_list(&r.base, f)?;
                }
                write!(f, " order {};", r.order)
            }
            Stmt::Ideal { name, gens, .. } => {
                write!(f, "ideal {name} = ")?;
                fmt_list(gens, f)?;
                f.write_str(";")
            }
            Stmt::Poly { name, expr, .. } => write!(f, "poly {name} = {expr};"),
            Stmt::Pair { name, elems, .. } => {
                write!(f, "pair {name} = ")?;
                fmt_list(elems, f)?;
                f.write_str(";")
            }
            Stmt::Check { command, .. } => write!(f, "check {command};"),
        }
    }
}

/// A parsed `.ck` file: declarations and checks in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}

impl Session {
    pub fn declarations(&self) -> impl Iterator<Item = &Stmt> {
        self.stmts.iter().filter(|s| !matches!(s, Stmt::Check { .. }))
    }

    pub fn checks(&self) -> impl Iterator<Item = (usize, &Stmt)> {
        self.stmts.iter().enumerate().filter(|(_, s)| matches!(s, Stmt::Check { .. }))
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
