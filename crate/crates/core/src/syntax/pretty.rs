use std::fmt;

use super::Term;

const SUM: u8 = 0;
const UNARY: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

/// Whether the printed form ends in a binder body that would swallow a
/// following `+`.
fn ends_open(t: &Term) -> bool {
    match t {
        Term::Lam(..) => true,
        Term::Scalar(_, b) => ends_open(b),
        _ => false,
    }
}

fn prec(t: &Term) -> u8 {
    match t {
        Term::Sum(_) | Term::NDSum(..) | Term::Choice(..) => SUM,
        Term::Lam(..) | Term::Scalar(..) => UNARY,
        Term::App(..) | Term::Succ(_) | Term::Pred(_) | Term::Fix(_) => APP,
        _ => ATOM,
    }
}

struct Printer;

impl Printer {
    fn at(&self, t: &Term, min: u8) -> String {
        let s = self.go(t);
        if prec(t) < min {
            format!("({s})")
        } else {
            s
        }
    }

    fn summand(&self, t: &Term, last: bool) -> String {
        if !last && ends_open(t) {
            format!("({})", self.go(t))
        } else {
            self.at(t, UNARY)
        }
    }

    fn left_of_binary(&self, t: &Term) -> String {
        match t {
            Term::NDSum(..) | Term::Choice(..) => self.go(t),
            _ => self.summand(t, false),
        }
    }

    fn go(&self, t: &Term) -> String {
        match t {
            Term::Var(x) => x.clone(),
            Term::Num(n) => n.to_string(),
            Term::Zero => "0".into(),
            Term::Lam(x, ty, b) => format!("\\{x}:{ty}. {}", self.at(b, SUM)),
            Term::App(f, a) => format!("{} {}", self.at(f, APP), self.at(a, ATOM)),
            Term::DApp(f, a) => format!("D[{}, {}]", self.go(f), self.go(a)),
            Term::Sum(ts) => {
                let n = ts.len();
                ts.iter().enumerate().map(|(i, s)| self.summand(s, i + 1 == n)).collect::<Vec<_>>().join(" + ")
            }
            Term::Scalar(w, b) => format!("{w} . {}", self.at(b, UNARY)),
            Term::NDSum(l, r) => format!("{} + {}", self.left_of_binary(l), self.summand(r, true)),
            Term::Choice(p, l, r) => format!("{} (+{p}) {}", self.left_of_binary(l), self.summand(r, true)),
            Term::Succ(a) => format!("succ {}", self.at(a, ATOM)),
            Term::Pred(a) => format!("pred {}", self.at(a, ATOM)),
            Term::Fix(a) => format!("Y {}", self.at(a, ATOM)),
            Term::Ifz(c, a, b) => format!("ifz({}, {}, {})", self.go(c), self.go(a), self.go(b)),
        }
    }
}

/// Concrete syntax accepted back by [`super::parse`] in the term's dialect.
pub fn pretty(t: &Term) -> String {
    Printer.go(t)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", pretty(self))
    }
}
