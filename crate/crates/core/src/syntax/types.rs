use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Type {
    Ground(String),
    Nat,
    Arrow(Box<Type>, Box<Type>),
    /// `!n A -o B`
    Graded(u32, Box<Type>, Box<Type>),
}

impl Type {
    pub fn o() -> Self {
        Type::Ground("o".into())
    }

    pub fn arrow(a: Type, b: Type) -> Self {
        Type::Arrow(Box::new(a), Box::new(b))
    }

    pub fn graded(n: u32, a: Type, b: Type) -> Self {
        Type::Graded(n, Box::new(a), Box::new(b))
    }

    /// Argument and result of an arrow, graded or not.
    pub fn split_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) | Type::Graded(_, a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Grade subsumption: `!m A -o B ≤ !n A' -o B'` when `m ≤ n`, `A' ≤ A`, `B ≤ B'`.
    pub fn is_subtype(&self, other: &Type) -> bool {
        match (self, other) {
            (Type::Graded(m, a, b), Type::Graded(n, a2, b2)) => m <= n && a2.is_subtype(a) && b.is_subtype(b2),
            (Type::Arrow(a, b), Type::Arrow(a2, b2)) => a2.is_subtype(a) && b.is_subtype(b2),
            _ => self == other,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, atom: bool) -> fmt::Result {
        match self {
            Type::Ground(g) => write!(f, "{g}"),
            Type::Nat => write!(f, "Nat"),
            _ if atom => {
                write!(f, "(")?;
                self.fmt_prec(f, false)?;
                write!(f, ")")
            }
            Type::Arrow(a, b) => {
                a.fmt_prec(f, true)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, false)
            }
            Type::Graded(n, a, b) => {
                write!(f, "!{n} ")?;
                a.fmt_prec(f, true)?;
                write!(f, " -o ")?;
                b.fmt_prec(f, false)
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}
