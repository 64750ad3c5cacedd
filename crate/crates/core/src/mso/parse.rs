use std::str::FromStr;

use crate::error::{Error, Result};

use super::Formula;

#[derive(Debug, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for line in s.lines() {
        let line = line.split(';').next().unwrap_or("");
        for c in line.chars() {
            match c {
                '(' | ')' => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                    out.push(c.to_string());
                }
                c if c.is_whitespace() => {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                }
                c => cur.push(c),
            }
        }
        if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let t = tokens.get(*pos).ok_or_else(|| Error::parse("unexpected end of formula"))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(Error::parse("unclosed parenthesis")),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    _ => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::parse("unexpected )")),
        a => Ok(Sexp::Atom(a.to_string())),
    }
}

fn ident(s: &Sexp) -> Result<String> {
    match s {
        Sexp::Atom(a) if a.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') => {
            if a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                Ok(a.clone())
            } else {
                Err(Error::parse(format!("bad variable name {a:?}")))
            }
        }
        other => Err(Error::parse(format!("expected a variable, got {other:?}"))),
    }
}

fn formula(s: &Sexp) -> Result<Formula> {
    let items = match s {
        Sexp::Atom(a) if a == "true" => return Ok(Formula::True),
        Sexp::Atom(a) if a == "false" => return Ok(Formula::False),
        Sexp::Atom(a) => return Err(Error::parse(format!("unexpected atom {a:?}"))),
        Sexp::List(items) => items,
    };
    let (head, rest) = match items.split_first() {
        Some((Sexp::Atom(h), rest)) => (h.as_str(), rest),
        _ => return Err(Error::parse("a formula list must start with an operator")),
    };
    let arity = |n: usize| {
        if rest.len() == n {
            Ok(())
        } else {
            Err(Error::parse(format!("{head} takes {n} arguments, got {}", rest.len())))
        }
    };
    let sub = |i: usize| formula(&rest[i]).map(Box::new);
    Ok(match head {
        "<" => {
            arity(2)?;
            Formula::Less(ident(&rest[0])?, ident(&rest[1])?)
        }
        "=" => {
            arity(2)?;
            Formula::Equal(ident(&rest[0])?, ident(&rest[1])?)
        }
        "in" => {
            arity(2)?;
            Formula::In(ident(&rest[0])?, ident(&rest[1])?)
        }
        "letter" => {
            arity(2)?;
            let c = match &rest[1] {
                Sexp::Atom(a) if a.chars().count() == 1 => a.chars().next().expect("one char"),
                other => return Err(Error::parse(format!("expected a letter, got {other:?}"))),
            };
            Formula::Letter(ident(&rest[0])?, c)
        }
        "lang" => {
            if rest.is_empty() {
                return Err(Error::parse("lang needs a symbol"));
            }
            Formula::Lang { symbol: ident(&rest[0])?, args: rest[1..].iter().map(ident).collect::<Result<_>>()? }
        }
        "not" => {
            arity(1)?;
            Formula::Not(sub(0)?)
        }
        "and" => Formula::And(rest.iter().map(formula).collect::<Result<_>>()?),
        "or" => Formula::Or(rest.iter().map(formula).collect::<Result<_>>()?),
        "implies" => {
            arity(2)?;
            Formula::Implies(sub(0)?, sub(1)?)
        }
        "iff" => {
            arity(2)?;
            Formula::Iff(sub(0)?, sub(1)?)
        }
        "exists1" | "forall1" | "exists2" | "forall2" => {
            arity(2)?;
            let x = ident(&rest[0])?;
            let body = sub(1)?;
            match head {
                "exists1" => Formula::Exists1(x, body),
                "forall1" => Formula::Forall1(x, body),
                "exists2" => Formula::Exists2(x, body),
                _ => Formula::Forall2(x, body),
            }
        }
        other => return Err(Error::parse(format!("unknown operator {other:?}"))),
    })
}

/// Parenthesized prefix syntax; `;` starts a comment.
///
/// ```text
/// (forall1 x (exists1 y (and (< x y) (letter y a))))
/// ```
impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let sexp = read(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::parse("trailing input after formula"));
        }
        let f = formula(&sexp)?;
        f.free_vars()?;
        Ok(f)
    }
}
