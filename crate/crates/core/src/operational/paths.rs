use std::collections::HashMap;

use thiserror::Error;

use super::step::step_with;
use crate::semantics::{interpret, Caps, InterpretOptions, SemError, SemPoint};
use crate::syntax::{Dialect, Reading, Term};
use crate::tropical::{epsilon_support, SeriesError, TropSeries, TropValue, TruncationPolicy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("address `{0}` does not lead to a leaf")]
    BadAddress(String),
    #[error("no normal form within {0} steps")]
    DepthExceeded(u32),
    #[error(transparent)]
    Sem(#[from] SemError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Result of the best-case search; `previous` is the value one depth earlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestCase {
    pub series: TropSeries,
    pub previous: TropSeries,
    pub depth_cap: u32,
    pub policy: TruncationPolicy,
}

impl BestCase {
    /// The `ε`-truncated support did not change between the last two depths.
    pub fn stabilized(&self, eps: &TropValue) -> Result<bool, SeriesError> {
        Ok(epsilon_support(&self.series, eps)? == epsilon_support(&self.previous, eps)?)
    }
}

fn best(term: &Term, depth: u32, target: u32, reading: Reading, memo: &mut HashMap<(Term, u32), TropSeries>) -> TropSeries {
    if let Term::Num(n) = term {
        return if *n == target { TropSeries::unit() } else { TropSeries::inf() };
    }
    if depth == 0 {
        return TropSeries::inf();
    }
    let key = (term.clone(), depth);
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let mut acc = TropSeries::inf();
    for (next, st) in step_with(term, reading) {
        let rest = best(&next, depth - 1, target, reading, memo);
        if !rest.is_empty() {
            acc = acc.min(&st.weight_series().mul(&rest));
        }
    }
    let acc = acc.prune_dominated();
    memo.insert(key, acc.clone());
    acc
}

/// `min { w(ω) | ω : t →* target, |ω| ≤ depth_cap }`, dominated monomials pruned.
pub fn best_case(term: &Term, target: u32, depth_cap: u32) -> BestCase {
    best_case_with(term, target, depth_cap, Reading::Tropical)
}

pub fn best_case_with(term: &Term, target: u32, depth_cap: u32, reading: Reading) -> BestCase {
    let mut memo = HashMap::new();
    let series = best(term, depth_cap, target, reading, &mut memo);
    let previous = best(term, depth_cap.saturating_sub(1), target, reading, &mut memo);
    BestCase { series, previous, depth_cap, policy: TruncationPolicy::DepthCap(depth_cap) }
}

/// A maximal reduction sequence ending in a numeral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    /// Choice resolutions, `l`/`r`.
    pub omega: String,
    pub outcome: u32,
    pub monomial: TropSeries,
    pub steps: usize,
}

/// Every path of at most `depth` steps reaching a numeral.
pub fn enumerate_paths(term: &Term, depth: u32, reading: Reading) -> Vec<PathRecord> {
    let mut out = Vec::new();
    let mut stack = vec![(term.clone(), String::new(), TropSeries::unit(), 0usize)];
    while let Some((t, omega, w, n)) = stack.pop() {
        if let Term::Num(k) = t {
            out.push(PathRecord { omega, outcome: k, monomial: w, steps: n });
            continue;
        }
        if n as u32 >= depth {
            continue;
        }
        let next = step_with(&t, reading);
        for (t2, st) in next.into_iter().rev() {
            let mut o = omega.clone();
            if let Some(c) = st.choice {
                o.push(c);
            }
            stack.push((t2, o, w.mul(&st.weight_series()), n + 1));
        }
    }
    out
}

/// Weight of the path selected by the choice word `omega`.
pub fn path_likelihood(term: &Term, omega: &str) -> Result<TropSeries, OpError> {
    const MAX_STEPS: u32 = 100_000;
    let bad = || OpError::BadAddress(omega.to_string());
    let mut letters = omega.chars();
    let mut t = term.clone();
    let mut w = TropSeries::unit();
    for _ in 0..MAX_STEPS {
        let next = step_with(&t, Reading::Tropical);
        let chosen = match next.len() {
            0 => {
                return if letters.next().is_none() && matches!(t, Term::Num(_)) { Ok(w) } else { Err(bad()) };
            }
            1 => next.into_iter().next(),
            _ => {
                let c = letters.next().ok_or_else(bad)?;
                next.into_iter().find(|(_, s)| s.choice == Some(c))
            }
        };
        let (t2, st) = chosen.ok_or_else(bad)?;
        w = w.mul(&st.weight_series());
        t = t2;
    }
    Err(OpError::DepthExceeded(MAX_STEPS))
}

/// `min_ω P_ω` over the paths of at most `depth` steps ending in `outcome`;
/// no cross-degree pruning.
pub fn outcome_series(term: &Term, outcome: u32, depth: u32) -> TropSeries {
    enumerate_paths(term, depth, Reading::Tropical)
        .into_iter()
        .filter(|p| p.outcome == outcome)
        .fold(TropSeries::inf(), |acc, p| acc.min(&p.monomial))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adequacy {
    pub denotational: TropSeries,
    pub operational: TropSeries,
    pub equal: bool,
}

/// Compares `⟦⊢ t : Nat⟧_target` with the best case of reaching `target`.
pub fn adequacy_check(term: &Term, target: u32, caps: Caps, depth: u32) -> Result<Adequacy, OpError> {
    let opts = InterpretOptions { caps, ..Default::default() };
    let den = interpret(Dialect::Pcfl, &Vec::new(), term, &opts)?;
    let denotational = den.matrix.get(&Vec::new(), &SemPoint::Nat(target)).prune_dominated();
    let operational = best_case(term, target, depth).series.prune_dominated();
    let equal = denotational.approx_eq(&operational);
    Ok(Adequacy { denotational, operational, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use crate::tropical::MultiDegree;

    fn p(s: &str) -> Term {
        parse(s, Dialect::Pcfl).unwrap()
    }

    fn series(s: &str) -> TropSeries {
        s.parse().unwrap()
    }

    const PROB: &str = "(True (+a,b) False) (+a,b) ((True (+a,b) False) (+a,b) (False (+a,b) True))";
    const NONDET: &str = "a.((Y (\\g:Nat. b.(a.(True + g)))) + a.(a.(True + True) + (Y (\\g:Nat. b.(a.(True + g))))))";

    #[test]
    fn two_path_best_case() {
        let t = p("2.3 + 1.5");
        assert_eq!(best_case(&t, 3, 5).series, series("2"));
        assert_eq!(best_case(&t, 5, 5).series, series("1"));
        assert_eq!(best_case(&Term::Num(4), 4, 0).series, TropSeries::unit());
        assert!(best_case(&t, 7, 5).series.is_empty());
    }

    #[test]
    fn nondeterministic_best_case() {
        let t = p(NONDET);
        let bc = best_case(&t, 0, 12);
        let eps = TropValue::ratio(1, 100);
        assert_eq!(crate::tropical::truncate(&bc.series, &eps).unwrap(), series("min{2a+b, 3a}"));
        assert!(bc.stabilized(&eps).unwrap());
        let shallow = best_case(&t, 0, 6);
        assert_eq!(shallow.series, series("3a"));
        assert!(bc.series.eval(&[("a".to_string(), TropValue::int(1)), ("b".to_string(), TropValue::int(1))].into()).unwrap() <= shallow.series.eval(&[("a".to_string(), TropValue::int(1)), ("b".to_string(), TropValue::int(1))].into()).unwrap());
    }

    #[test]
    fn likelihood_monomials() {
        let t = p(PROB);
        assert_eq!(path_likelihood(&t, "rll").unwrap(), series("2a+b"));
        assert_eq!(path_likelihood(&t, "rrr").unwrap(), series("3b"));
        assert_eq!(path_likelihood(&Term::Num(1), "").unwrap(), TropSeries::unit());
        assert!(matches!(path_likelihood(&t, "r"), Err(OpError::BadAddress(_))));
        assert!(matches!(path_likelihood(&t, "llr"), Err(OpError::BadAddress(_))));
    }

    #[test]
    fn outcome_series_of_the_choice_tree() {
        let t = p(PROB);
        assert_eq!(outcome_series(&t, 0, 50), series("min{2a, 2a+b, 3b}"));
        assert_eq!(outcome_series(&t, 1, 50), series("min{a+b, a+2b}"));
        assert_eq!(enumerate_paths(&t, 50, Reading::Tropical).len(), 6);
        let y = p("Y (\\x:Nat. True (+a,b) x)");
        let s = outcome_series(&y, 0, 20).prune_dominated();
        assert_eq!(s, TropSeries::monomial(MultiDegree::var("a", 1), TropValue::zero()));
    }

    #[test]
    fn adequacy_examples() {
        let caps = Caps::default();
        let a = adequacy_check(&p("(\\x:Nat. x) 3"), 3, caps, 10).unwrap();
        assert!(a.equal);
        assert_eq!(a.denotational, TropSeries::unit());
        let a = adequacy_check(&p("2.3 + 1.5"), 3, caps, 10).unwrap();
        assert_eq!((a.denotational.clone(), a.equal), (series("2"), true));
        let caps4 = Caps { f_max: 4, ..caps };
        let a = adequacy_check(&p("Y (\\x:Nat. True (+a,b) x)"), 0, caps4, 4).unwrap();
        assert!(a.equal, "{} vs {}", a.denotational, a.operational);
        assert_eq!(a.operational, series("a"));
    }
}
