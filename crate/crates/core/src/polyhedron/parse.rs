// Tiny parser for rows like "2 x1 - 5/2 x2 + x3 >= -4".

use num::Zero;

use super::{LinearConstraint, Relation, VarSpace};
use crate::error::{Error, Result};
use crate::numeric::{parse_rational, Rational};

pub(super) fn parse_constraint(space: &VarSpace, text: &str) -> Result<LinearConstraint> {
    let (lhs, rel, rhs) = split_relation(text)
        .ok_or_else(|| Error::Parse(format!("no relation (<=, =, >=) in {text:?}")))?;
    let rhs = parse_rational(rhs)?;
    let mut coeffs = vec![Rational::zero(); space.len()];
    for (coef, var) in terms(lhs)? {
        let i = space
            .index_of(&var)
            .ok_or_else(|| Error::Parse(format!("unknown variable {var:?} in {text:?}")))?;
        coeffs[i] += coef;
    }
    Ok(LinearConstraint::new(coeffs, rel, rhs))
}

fn split_relation(text: &str) -> Option<(&str, Relation, &str)> {
    for (op, rel) in [("<=", Relation::Le), (">=", Relation::Ge), ("=", Relation::Eq)] {
        if let Some((l, r)) = text.split_once(op) {
            return Some((l, rel, r));
        }
    }
    None
}

fn terms(expr: &str) -> Result<Vec<(Rational, String)>> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut pending_coef: Option<Rational> = None;
    let mut saw_term = false;
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
        } else if c == '+' || c == '-' {
            if pending_coef.is_some() {
                return Err(Error::Parse(format!("dangling coefficient in {expr:?}")));
            }
            if c == '-' {
                sign = -sign;
            }
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/')
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            pending_coef = Some(parse_rational(&s)?);
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let coef = pending_coef.take().unwrap_or_else(|| Rational::from_integer(1.into()));
            out.push((coef * Rational::from_integer(sign.into()), name));
            sign = 1;
            saw_term = true;
        } else {
            return Err(Error::Parse(format!("unexpected {c:?} in {expr:?}")));
        }
    }
    if pending_coef.is_some() {
        return Err(Error::Parse(format!(
            "constant terms belong on the right-hand side: {expr:?}"
        )));
    }
    if !saw_term && !expr.trim().is_empty() && expr.trim() != "0" {
        return Err(Error::Parse(format!("no variables in {expr:?}")));
    }
    Ok(out)
}
