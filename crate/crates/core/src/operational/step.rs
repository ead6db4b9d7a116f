use std::fmt;

use crate::syntax::{Reading, Term, Weight};
use crate::tropical::{TropSeries, TropValue};

/// One reduction step: where it fired, which rule, and its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedStep {
    /// Child indices from the root to the redex.
    pub address: Vec<usize>,
    pub rule: &'static str,
    pub weight: Weight,
    /// `Some('l')` or `Some('r')` when the step resolves a choice.
    pub choice: Option<char>,
}

impl WeightedStep {
    fn new(rule: &'static str, weight: Weight) -> Self {
        WeightedStep { address: Vec::new(), rule, weight, choice: None }
    }

    fn unit(rule: &'static str) -> Self {
        WeightedStep::new(rule, Weight::Const(TropValue::zero()))
    }

    pub fn weight_series(&self) -> TropSeries {
        self.weight.as_series()
    }
}

impl fmt::Display for WeightedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let addr: Vec<String> = self.address.iter().map(|i| i.to_string()).collect();
        write!(f, "{}@[{}]:{}", self.rule, addr.join("."), self.weight)
    }
}

fn is_value(t: &Term) -> bool {
    matches!(t, Term::Num(_) | Term::Lam(..))
}

fn root_steps(t: &Term, reading: Reading) -> Option<Vec<(Term, WeightedStep)>> {
    let out = match t {
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, b) => vec![(b.subst(x, a), WeightedStep::unit("beta"))],
            _ => return None,
        },
        Term::Scalar(w, m) => vec![((**m).clone(), WeightedStep::new("scalar", w.clone()))],
        Term::NDSum(l, r) => vec![
            ((**l).clone(), WeightedStep { choice: Some('l'), ..WeightedStep::unit("sum") }),
            ((**r).clone(), WeightedStep { choice: Some('r'), ..WeightedStep::unit("sum") }),
        ],
        Term::Choice(bias, l, r) => {
            let (wl, wr) = bias.weights(reading);
            vec![
                (Term::scalar(wl, (**l).clone()), WeightedStep { choice: Some('l'), ..WeightedStep::unit("choice") }),
                (Term::scalar(wr, (**r).clone()), WeightedStep { choice: Some('r'), ..WeightedStep::unit("choice") }),
            ]
        }
        Term::Fix(m) => vec![(Term::app((**m).clone(), t.clone()), WeightedStep::unit("fix"))],
        Term::Succ(m) => match &**m {
            Term::Num(n) => vec![(Term::Num(n + 1), WeightedStep::unit("succ"))],
            _ => return None,
        },
        Term::Pred(m) => match &**m {
            Term::Num(n) => vec![(Term::Num(n.saturating_sub(1)), WeightedStep::unit("pred"))],
            _ => return None,
        },
        Term::Ifz(c, a, b) => match &**c {
            Term::Num(0) => vec![((**a).clone(), WeightedStep::unit("ifz-zero"))],
            Term::Num(_) => vec![((**b).clone(), WeightedStep::unit("ifz-succ"))],
            _ => return None,
        },
        _ => return None,
    };
    Some(out)
}

/// All one-step weak-head reducts, call-by-name, leftmost-outermost.
pub fn step(t: &Term) -> Vec<(Term, WeightedStep)> {
    step_with(t, Reading::Tropical)
}

pub fn step_with(t: &Term, reading: Reading) -> Vec<(Term, WeightedStep)> {
    if let Some(out) = root_steps(t, reading) {
        return out;
    }
    if is_value(t) {
        return Vec::new();
    }
    let (i, inner) = match t {
        Term::App(f, _) => (0, f),
        Term::Succ(m) | Term::Pred(m) => (0, m),
        Term::Ifz(c, _, _) => (0, c),
        _ => return Vec::new(),
    };
    step_with(inner, reading)
        .into_iter()
        .map(|(r, mut s)| {
            s.address.insert(0, i);
            let rebuilt = match t {
                Term::App(_, a) => Term::App(Box::new(r), a.clone()),
                Term::Succ(_) => Term::Succ(Box::new(r)),
                Term::Pred(_) => Term::Pred(Box::new(r)),
                Term::Ifz(_, a, b) => Term::Ifz(Box::new(r), a.clone(), b.clone()),
                _ => unreachable!("context positions are handled above"),
            };
            (rebuilt, s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Dialect};

    fn p(s: &str) -> Term {
        parse(s, Dialect::Pcfl).unwrap()
    }

    #[test]
    fn basic_steps() {
        let s = step(&p("a.3"));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].0, Term::Num(3));
        assert_eq!(s[0].1.weight, Weight::Param("a".into()));

        let s = step(&p("3 + 5"));
        assert_eq!(s.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>(), vec![Term::Num(3), Term::Num(5)]);
        assert!(s.iter().all(|(_, w)| w.weight == Weight::Const(TropValue::zero())));

        assert!(step(&Term::Num(4)).is_empty());
    }

    #[test]
    fn congruence_and_addresses() {
        let s = step(&p("succ ((\\x:Nat. x) 2)"));
        assert_eq!(s[0].0, p("succ 2"));
        assert_eq!(s[0].1.address, vec![0]);
        assert_eq!(s[0].1.rule, "beta");
        let s = step(&p("ifz(0, 1, 2)"));
        assert_eq!(s[0].0, Term::Num(1));
    }
}
