use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// MSO[<] formulas with language predicates.
///
/// First-order variables range over positions, set variables over sets of
/// positions. The sort of a variable comes from its binder, or from where it
/// occurs when free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// `x < y`
    Less(String, String),
    /// `x = y`
    Equal(String, String),
    /// `x ∈ X`
    In(String, String),
    /// The letter at position `x` is the given one.
    Letter(String, char),
    /// `L(X₁,…,X_k)`: the sets partition the positions and the word that
    /// labels each position with the letter of its set is in `L`.
    Lang { symbol: String, args: Vec<String> },
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists1(String, Box<Formula>),
    Forall1(String, Box<Formula>),
    Exists2(String, Box<Formula>),
    Forall2(String, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Position,
    Set,
}

/// A variable with its sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn position(name: impl Into<String>) -> Self {
        Var { name: name.into(), sort: Sort::Position }
    }

    pub fn set(name: impl Into<String>) -> Self {
        Var { name: name.into(), sort: Sort::Set }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists1(x: &str, f: Formula) -> Formula {
        Formula::Exists1(x.into(), Box::new(f))
    }

    pub fn forall1(x: &str, f: Formula) -> Formula {
        Formula::Forall1(x.into(), Box::new(f))
    }

    pub fn exists2(x: &str, f: Formula) -> Formula {
        Formula::Exists2(x.into(), Box::new(f))
    }

    pub fn forall2(x: &str, f: Formula) -> Formula {
        Formula::Forall2(x.into(), Box::new(f))
    }

    pub fn less(x: &str, y: &str) -> Formula {
        Formula::Less(x.into(), y.into())
    }

    pub fn equal(x: &str, y: &str) -> Formula {
        Formula::Equal(x.into(), y.into())
    }

    pub fn member(x: &str, set: &str) -> Formula {
        Formula::In(x.into(), set.into())
    }

    pub fn letter(x: &str, c: char) -> Formula {
        Formula::Letter(x.into(), c)
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Less(..) | Equal(..) | In(..) | Letter(..) | Lang { .. } => vec![],
            Not(f) | Exists1(_, f) | Forall1(_, f) | Exists2(_, f) | Forall2(_, f) => vec![f],
            And(fs) | Or(fs) => fs.iter().collect(),
            Implies(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Height of the syntax tree, atoms having depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Formula::depth).max().unwrap_or(0)
    }

    /// Nesting depth of first-order quantifiers.
    pub fn position_rank(&self) -> usize {
        let inner = self.children().into_iter().map(Formula::position_rank).max().unwrap_or(0);
        match self {
            Formula::Exists1(..) | Formula::Forall1(..) => inner + 1,
            _ => inner,
        }
    }

    pub fn count_lang_atoms(&self) -> usize {
        let own = usize::from(matches!(self, Formula::Lang { .. }));
        own + self.children().into_iter().map(Formula::count_lang_atoms).sum::<usize>()
    }

    pub fn has_lang_atoms(&self) -> bool {
        self.count_lang_atoms() > 0
    }

    pub fn has_set_quantifiers(&self) -> bool {
        matches!(self, Formula::Exists2(..) | Formula::Forall2(..))
            || self.children().into_iter().any(Formula::has_set_quantifiers)
    }

    /// Letters mentioned by letter atoms.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Letter(_, c) = f {
                out.insert(*c);
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Free variables with their sorts; fails if a name is used with both sorts.
    pub fn free_vars(&self) -> Result<BTreeSet<Var>> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        check_sorts(&out)?;
        Ok(out)
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        use Formula::*;
        let mut add = |v: Var, bound: &Vec<Var>| {
            if !bound.contains(&v) {
                out.insert(v);
            }
        };
        match self {
            True | False => {}
            Less(x, y) | Equal(x, y) => {
                add(Var::position(x), bound);
                add(Var::position(y), bound);
            }
            In(x, s) => {
                add(Var::position(x), bound);
                add(Var::set(s), bound);
            }
            Letter(x, _) => add(Var::position(x), bound),
            Lang { args, .. } => args.iter().for_each(|s| add(Var::set(s), bound)),
            Exists1(x, f) | Forall1(x, f) => {
                bound.push(Var::position(x));
                f.collect_free(bound, out);
                bound.pop();
            }
            Exists2(x, f) | Forall2(x, f) => {
                bound.push(Var::set(x));
                f.collect_free(bound, out);
                bound.pop();
            }
            _ => self.children().into_iter().for_each(|c| c.collect_free(bound, out)),
        }
    }

    /// Scoping rules: sorts are consistent, no variable is rebound along a
    /// path, and every language atom has the arity of its alphabet.
    pub fn check_well_scoped(&self, arity: &dyn Fn(&str) -> Option<usize>) -> Result<()> {
        self.free_vars()?;
        self.check_scope(&mut Vec::new(), arity)
    }

    fn check_scope(&self, bound: &mut Vec<String>, arity: &dyn Fn(&str) -> Option<usize>) -> Result<()> {
        use Formula::*;
        match self {
            Exists1(x, f) | Forall1(x, f) | Exists2(x, f) | Forall2(x, f) => {
                if bound.contains(x) {
                    return Err(Error::invalid(format!("variable {x} is bound twice along one path")));
                }
                bound.push(x.clone());
                let r = f.check_scope(bound, arity);
                bound.pop();
                r
            }
            Lang { symbol, args } => match arity(symbol) {
                Some(k) if k == args.len() => Ok(()),
                Some(k) => Err(Error::invalid(format!("{symbol} takes {k} sets, got {}", args.len()))),
                None => Err(Error::invalid(format!("unknown language symbol {symbol}"))),
            },
            _ => self.children().into_iter().try_for_each(|c| c.check_scope(bound, arity)),
        }
    }

    /// Conventional mathematical notation, for documentation.
    pub fn to_math(&self) -> String {
        use Formula::*;
        let join = |fs: &[Formula], op: &str| fs.iter().map(|f| f.to_math()).collect::<Vec<_>>().join(op);
        match self {
            True => "⊤".into(),
            False => "⊥".into(),
            Less(x, y) => format!("{x} < {y}"),
            Equal(x, y) => format!("{x} = {y}"),
            In(x, s) => format!("{x} ∈ {s}"),
            Letter(x, c) => format!("{c}({x})"),
            Lang { symbol, args } => format!("{symbol}({})", args.join(", ")),
            Not(f) => format!("¬{}", f.to_math()),
            And(fs) if fs.is_empty() => "⊤".into(),
            Or(fs) if fs.is_empty() => "⊥".into(),
            And(fs) => format!("({})", join(fs, " ∧ ")),
            Or(fs) => format!("({})", join(fs, " ∨ ")),
            Implies(a, b) => format!("({} ⇒ {})", a.to_math(), b.to_math()),
            Iff(a, b) => format!("({} ⇔ {})", a.to_math(), b.to_math()),
            Exists1(x, f) | Exists2(x, f) => format!("∃{x} {}", f.to_math()),
            Forall1(x, f) | Forall2(x, f) => format!("∀{x} {}", f.to_math()),
        }
    }
}

fn check_sorts(vars: &BTreeSet<Var>) -> Result<()> {
    let mut names = BTreeSet::new();
    for v in vars {
        if !names.insert(&v.name) {
            return Err(Error::invalid(format!("variable {} is used both as a position and as a set", v.name)));
        }
    }
    Ok(())
}

/// The prefix syntax read by [`Formula::from_str`](std::str::FromStr).
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let list = |f: &mut fmt::Formatter<'_>, head: &str, fs: &[Formula]| {
            write!(f, "({head}")?;
            for x in fs {
                write!(f, " {x}")?;
            }
            write!(f, ")")
        };
        match self {
            True => write!(f, "true"),
            False => write!(f, "false"),
            Less(x, y) => write!(f, "(< {x} {y})"),
            Equal(x, y) => write!(f, "(= {x} {y})"),
            In(x, s) => write!(f, "(in {x} {s})"),
            Letter(x, c) => write!(f, "(letter {x} {c})"),
            Lang { symbol, args } => write!(f, "(lang {symbol} {})", args.join(" ")),
            Not(a) => write!(f, "(not {a})"),
            And(fs) => list(f, "and", fs),
            Or(fs) => list(f, "or", fs),
            Implies(a, b) => write!(f, "(implies {a} {b})"),
            Iff(a, b) => write!(f, "(iff {a} {b})"),
            Exists1(x, a) => write!(f, "(exists1 {x} {a})"),
            Forall1(x, a) => write!(f, "(forall1 {x} {a})"),
            Exists2(x, a) => write!(f, "(exists2 {x} {a})"),
            Forall2(x, a) => write!(f, "(forall2 {x} {a})"),
        }
    }
}
