//! The `.ck` session language: declarations of rings, ideals, polynomials
//! and pairs, followed by `check` commands.
//!
//! ```text
//! ring R = QQ[x,y,z] order grevlex;
//! ideal I = (x^2 - x, x*z, x*y - y, y*z);
//! pair p = (x^2 - x, (1 - x)*y + x*z);
//! check stci I with p;
//! ```

mod ast;
mod lexer;
mod parser;
mod run;

use std::collections::HashMap;

use thiserror::Error;

pub use ast::{Command, Expr, OrderSpec, RingDecl, Session, Stmt, Tuple};
pub use lexer::Pos;
pub use run::{
    aggregate_exit_code, replay, replay_json, run_command, run_session, with_field, Budgets, CertificateFile, CommandRun,
    ReplayError, Timings, Verdict, Workspace, EXIT_INPUT_ERROR, SCHEMA,
};

use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: syntax error: found {found}, expected {}", expected.join(" or "))]
    Syntax { pos: Pos, found: String, expected: Vec<String> },
    #[error("{pos}: undeclared name `{name}`")]
    Undeclared { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already declared")]
    Duplicate { pos: Pos, name: String },
    #[error("{pos}: arity mismatch: expected {expected} elements, found {found}")]
    Arity { pos: Pos, expected: String, found: usize },
    #[error("{pos}: {message}")]
    Semantic { pos: Pos, message: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Undeclared { pos, .. }
            | ParseError::Duplicate { pos, .. }
            | ParseError::Arity { pos, .. }
            | ParseError::Semantic { pos, .. } => *pos,
        }
    }
}

/// Parse and name-check a session.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    parser::Parser::new(text)?.session()
}

/// Evaluate an expression in `ring`; names are variables or entries of `bound`.
pub fn eval_expr(
    ring: &PolyRing,
    expr: &Expr,
    bound: &HashMap<String, Polynomial>,
) -> Result<Polynomial, AlgebraError> {
    Ok(match expr {
        Expr::Int(i) => Polynomial::from_terms(
            ring,
            vec![(crate::monomial::Monomial::one(ring.nvars()), ring.field().from_bigint(i))],
        ),
        Expr::Name(n) => match ring.var_index(n) {
            Some(_) => ring.var(n)?,
            None => bound
                .get(n)
                .cloned()
                .ok_or_else(|| AlgebraError::InvalidInput(format!("unknown name {n}")))?,
        },
        Expr::Neg(e) => -&eval_expr(ring, e, bound)?,
        Expr::Add(a, b) => &eval_expr(ring, a, bound)? + &eval_expr(ring, b, bound)?,
        Expr::Sub(a, b) => &eval_expr(ring, a, bound)? - &eval_expr(ring, b, bound)?,
        Expr::Mul(a, b) => &eval_expr(ring, a, bound)? * &eval_expr(ring, b, bound)?,
        Expr::Div(a, b) => {
            let num = eval_expr(ring, a, bound)?;
            let den = eval_expr(ring, b, bound)?;
            if !den.is_unit() {
                return Err(AlgebraError::InvalidInput(format!("division by non-constant or zero {den}")));
            }
            num.scalar_mul(&den.leading_coeff().expect("unit").inv())
        }
        Expr::Pow(b, e) => eval_expr(ring, b, bound)?.pow(*e),
    })
}

pub(crate) fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial, AlgebraError> {
    let (expr, names) = parser::Parser::new(text)
        .and_then(|p| p.standalone_expr())
        .map_err(|e| AlgebraError::InvalidInput(e.to_string()))?;
    for (n, pos) in names {
        if ring.var_index(&n).is_none() {
            return Err(AlgebraError::InvalidInput(format!("{pos}: unknown variable {n}")));
        }
    }
    eval_expr(ring, &expr, &HashMap::new())
}
