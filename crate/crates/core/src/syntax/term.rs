use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Type;
use crate::tropical::{MultiDegree, Rational, TropSeries, TropValue};

/// A scalar weight: a constant of `[0, ∞]` or a named parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Weight {
    Const(TropValue),
    Param(String),
}

impl Weight {
    pub fn as_series(&self) -> TropSeries {
        match self {
            Weight::Const(c) => TropSeries::constant(c.clone()),
            Weight::Param(p) => TropSeries::monomial(MultiDegree::var(p, 1), TropValue::zero()),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Const(c) => write!(f, "{c}"),
            Weight::Param(p) => write!(f, "{p}"),
        }
    }
}

/// How the two weights of a biased choice are read off its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reading {
    /// `p ↦ (-log p, -log(1-p))`
    #[default]
    Tropical,
    /// `p ↦ (p, 1-p)`
    Literal,
}

/// Label of `M (+…) N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bias {
    /// `(+p)`: parameters `p` and `p'`.
    Param(String),
    /// `(+a,b)`: explicit left and right weights.
    Weights(Weight, Weight),
    /// `(+1/3)`: a numeric probability.
    Prob(Rational),
}

fn neg_log(q: &Rational) -> TropValue {
    if q.is_zero() {
        TropValue::Inf
    } else if q.is_one() {
        TropValue::zero()
    } else {
        TropValue::from_f64(-q.to_f64().unwrap_or(0.0).ln()).unwrap_or(TropValue::Inf)
    }
}

impl Bias {
    pub fn weights(&self, reading: Reading) -> (Weight, Weight) {
        match (self, reading) {
            (Bias::Param(p), _) => (Weight::Param(p.clone()), Weight::Param(format!("{p}'"))),
            (Bias::Weights(a, b), _) => (a.clone(), b.clone()),
            (Bias::Prob(q), Reading::Tropical) => {
                (Weight::Const(neg_log(q)), Weight::Const(neg_log(&(Rational::one() - q))))
            }
            (Bias::Prob(q), Reading::Literal) => (
                Weight::Const(TropValue::Rat(q.clone())),
                Weight::Const(TropValue::Rat(Rational::one() - q)),
            ),
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bias::Param(p) => write!(f, "{p}"),
            Bias::Weights(a, b) => write!(f, "{a},{b}"),
            Bias::Prob(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Lam(String, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `D[M, N]`
    DApp(Box<Term>, Box<Term>),
    /// The empty sum of the differential calculus.
    Zero,
    /// Flattened, sorted, deduplicated, at least two summands.
    Sum(Vec<Term>),
    Scalar(Weight, Box<Term>),
    Choice(Bias, Box<Term>, Box<Term>),
    /// Binary nondeterministic sum of PCF; kept binary so addresses survive.
    NDSum(Box<Term>, Box<Term>),
    Num(u32),
    Succ(Box<Term>),
    Pred(Box<Term>),
    Ifz(Box<Term>, Box<Term>, Box<Term>),
    /// `Y M`
    Fix(Box<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn lam(x: &str, ty: Type, body: Term) -> Term {
        Term::Lam(x.to_string(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn dapp(f: Term, a: Term) -> Term {
        Term::DApp(Box::new(f), Box::new(a))
    }

    pub fn scalar(w: Weight, body: Term) -> Term {
        Term::Scalar(w, Box::new(body))
    }

    pub fn choice(b: Bias, l: Term, r: Term) -> Term {
        Term::Choice(b, Box::new(l), Box::new(r))
    }

    pub fn nd(l: Term, r: Term) -> Term {
        Term::NDSum(Box::new(l), Box::new(r))
    }

    pub fn fix(m: Term) -> Term {
        Term::Fix(Box::new(m))
    }

    /// Idempotent commutative sum: flattens, drops `0`, sorts, deduplicates.
    pub fn sum(terms: impl IntoIterator<Item = Term>) -> Term {
        let mut flat = BTreeSet::new();
        for t in terms {
            match t {
                Term::Sum(ts) => flat.extend(ts),
                Term::Zero => {}
                t => {
                    flat.insert(t);
                }
            }
        }
        let mut v: Vec<Term> = flat.into_iter().collect();
        match v.len() {
            0 => Term::Zero,
            1 => v.pop().unwrap_or(Term::Zero),
            _ => Term::Sum(v),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            _ => self.children().into_iter().for_each(|c| c.collect_free(bound, out)),
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero | Term::Num(_) => vec![],
            Term::Lam(_, _, b) | Term::Scalar(_, b) | Term::Succ(b) | Term::Pred(b) | Term::Fix(b) => vec![b],
            Term::App(a, b) | Term::DApp(a, b) | Term::Choice(_, a, b) | Term::NDSum(a, b) => vec![a, b],
            Term::Ifz(a, b, c) => vec![a, b, c],
            Term::Sum(ts) => ts.iter().collect(),
        }
    }

    /// Rebuilds the node with every child mapped through `f`; binders untouched.
    pub fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        let b = |t: &Term, f: &mut dyn FnMut(&Term) -> Term| Box::new(f(t));
        match self {
            Term::Var(_) | Term::Zero | Term::Num(_) => self.clone(),
            Term::Lam(x, ty, body) => Term::Lam(x.clone(), ty.clone(), b(body, &mut f)),
            Term::App(m, n) => Term::App(b(m, &mut f), b(n, &mut f)),
            Term::DApp(m, n) => Term::DApp(b(m, &mut f), b(n, &mut f)),
            Term::Sum(ts) => Term::sum(ts.iter().map(&mut f)),
            Term::Scalar(w, m) => Term::Scalar(w.clone(), b(m, &mut f)),
            Term::Choice(p, m, n) => Term::Choice(p.clone(), b(m, &mut f), b(n, &mut f)),
            Term::NDSum(m, n) => Term::NDSum(b(m, &mut f), b(n, &mut f)),
            Term::Succ(m) => Term::Succ(b(m, &mut f)),
            Term::Pred(m) => Term::Pred(b(m, &mut f)),
            Term::Ifz(m, n, p) => Term::Ifz(b(m, &mut f), b(n, &mut f), b(p, &mut f)),
            Term::Fix(m) => Term::Fix(b(m, &mut f)),
        }
    }

    /// Capture-avoiding `self[n/x]`.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => n.clone(),
            Term::Var(_) => self.clone(),
            Term::Lam(y, _, _) if y == x => self.clone(),
            Term::Lam(y, ty, body) => {
                let fv = n.free_vars();
                if fv.contains(y) {
                    let mut avoid = fv;
                    avoid.extend(body.free_vars());
                    avoid.insert(x.to_string());
                    let z = fresh(y, &avoid);
                    let body = body.subst(y, &Term::Var(z.clone()));
                    Term::Lam(z, ty.clone(), Box::new(body.subst(x, n)))
                } else {
                    Term::Lam(y.clone(), ty.clone(), Box::new(body.subst(x, n)))
                }
            }
            _ => self.map_children(|c| c.subst(x, n)),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Parameter names occurring in scalar weights and choice labels.
    pub fn params(&self, reading: Reading) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut add = |w: &Weight| {
            if let Weight::Param(p) = w {
                out.insert(p.clone());
            }
        };
        self.walk(&mut |t| match t {
            Term::Scalar(w, _) => add(w),
            Term::Choice(b, _, _) => {
                let (l, r) = b.weights(reading);
                add(&l);
                add(&r);
            }
            _ => {}
        });
        out
    }

    pub fn walk(&self, f: &mut dyn FnMut(&Term)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }
}

/// A variant of `base` not in `avoid`.
pub fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    (0..).map(|i| format!("{stem}{i}")).find(|c| !avoid.contains(c)).unwrap_or_else(|| base.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_normalizes() {
        let a = Term::var("a");
        let b = Term::var("b");
        let s1 = Term::sum([b.clone(), Term::sum([a.clone(), b.clone()]), Term::Zero]);
        let s2 = Term::sum([a.clone(), b.clone()]);
        assert_eq!(s1, s2);
        assert_eq!(Term::sum([a.clone(), a.clone()]), a);
        assert_eq!(Term::sum([Term::Zero, Term::Zero]), Term::Zero);
        assert_eq!(Term::sum([s2.clone(), s2.clone()]), s2);
    }

    #[test]
    fn subst_avoids_capture() {
        // (\y. x y)[y/x] = \y0. y y0
        let t = Term::lam("y", Type::o(), Term::app(Term::var("x"), Term::var("y")));
        let r = t.subst("x", &Term::var("y"));
        match &r {
            Term::Lam(z, _, body) => {
                assert_ne!(z, "y");
                assert_eq!(**body, Term::app(Term::var("y"), Term::var(z)));
            }
            _ => panic!("expected a lambda"),
        }
        assert_eq!(r.free_vars(), BTreeSet::from(["y".to_string()]));
    }

    #[test]
    fn bias_readings() {
        let (l, r) = Bias::Param("p".into()).weights(Reading::Tropical);
        assert_eq!((l, r), (Weight::Param("p".into()), Weight::Param("p'".into())));
        let half = Rational::new(1.into(), 2.into());
        let (l, _) = Bias::Prob(half.clone()).weights(Reading::Literal);
        assert_eq!(l, Weight::Const(TropValue::Rat(half)));
    }
}
