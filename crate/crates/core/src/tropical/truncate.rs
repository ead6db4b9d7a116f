use std::collections::BTreeSet;

use super::{MultiDegree, SeriesError, TropSeries, TropValue};

fn check_eps(eps: &TropValue) -> Result<(), SeriesError> {
    if eps.is_zero() || eps.is_inf() {
        return Err(SeriesError::BadEpsilon(eps.to_string()));
    }
    Ok(())
}

/// Degrees `n` with `f(m) > f(n) + ε` for every `m ≺ n`.
pub fn epsilon_support(f: &TropSeries, eps: &TropValue) -> Result<BTreeSet<MultiDegree>, SeriesError> {
    check_eps(eps)?;
    Ok(f.iter()
        .filter(|(n, cn)| {
            let bound = cn.plus(eps);
            f.iter().all(|(m, cm)| !m.lt(n) || *cm > bound)
        })
        .map(|(n, _)| n.clone())
        .collect())
}

/// Restriction of `f` to its ε-support; agrees with `f` on `[ε, ∞]^k`.
pub fn truncate(f: &TropSeries, eps: &TropValue) -> Result<TropSeries, SeriesError> {
    let keep = epsilon_support(f, eps)?;
    let mut out = TropSeries::empty(f.vars().iter());
    for (d, c) in f.iter() {
        if keep.contains(d) {
            out.insert(d.clone(), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::Point;

    fn phi(n: u32) -> TropSeries {
        TropSeries::univariate("x", (0..=n).map(|i| (i, TropValue::ratio(1, 1 << i))))
    }

    #[test]
    fn phi_quarter() {
        let s = epsilon_support(&phi(20), &TropValue::ratio(1, 4)).unwrap();
        assert_eq!(s, BTreeSet::from([MultiDegree::one(), MultiDegree::var("x", 1)]));
        let t = truncate(&phi(20), &TropValue::ratio(1, 4)).unwrap();
        assert_eq!(t.to_string(), "min{1, x+1/2}");
    }

    #[test]
    fn small_cases() {
        let f = TropSeries::univariate("x", [(0, TropValue::int(1)), (1, TropValue::int(5))]);
        assert_eq!(epsilon_support(&f, &TropValue::int(1)).unwrap(), BTreeSet::from([MultiDegree::one()]));
        let m = TropSeries::univariate("x", [(3, TropValue::int(7))]);
        assert_eq!(truncate(&m, &TropValue::ratio(1, 100)).unwrap(), m);
        assert!(truncate(&TropSeries::empty(["x"]), &TropValue::int(1)).unwrap().is_empty());
        assert!(truncate(&m, &TropValue::zero()).is_err());
        assert!(truncate(&m, &TropValue::Inf).is_err());
    }

    #[test]
    fn agrees_above_eps() {
        let f = phi(20);
        let eps = TropValue::ratio(1, 8);
        let t = truncate(&f, &eps).unwrap();
        for k in 0..100 {
            let x = eps.plus(&TropValue::ratio(k, 10));
            let p = Point::from([("x".to_string(), x)]);
            assert_eq!(t.eval(&p), f.eval(&p));
        }
    }
}
