use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use super::{MultiDegree, Rational, SeriesError, TropSeries, TropValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// `a ↦ -log a`; exact 0 at `a = 1`.
    NegLog,
    /// Every nonzero coefficient goes to 0.
    Trivial,
}

impl Valuation {
    pub fn apply(self, a: &Rational) -> Result<TropValue, SeriesError> {
        if a.is_zero() {
            return Ok(TropValue::Inf);
        }
        match self {
            Valuation::Trivial => Ok(TropValue::zero()),
            Valuation::NegLog if a.is_one() => Ok(TropValue::zero()),
            Valuation::NegLog => {
                let x = a.to_f64().ok_or_else(|| SeriesError::OutOfDomain(a.to_string()))?;
                TropValue::from_f64(-x.ln()).map_err(|_| SeriesError::OutOfDomain(format!("-log {a}")))
            }
        }
    }
}

/// Coefficient-wise valuation of a classical polynomial. Under `NegLog`,
/// coefficients above 1 would land below 0 and are rejected.
pub fn tropicalize(
    classical: &BTreeMap<MultiDegree, Rational>,
    val: Valuation,
) -> Result<TropSeries, SeriesError> {
    let mut out = TropSeries::inf();
    for (d, a) in classical {
        out.insert(d.clone(), val.apply(a)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(monos: &[&[(&'static str, u32)]]) -> BTreeMap<MultiDegree, Rational> {
        monos.iter().map(|m| (MultiDegree::from_pairs(m.iter().copied()), Rational::one())).collect()
    }

    #[test]
    fn trivial_valuation() {
        let p = poly(&[&[("x", 2)], &[("x", 1), ("y", 2)], &[("y", 3)]]);
        let t = tropicalize(&p, Valuation::Trivial).unwrap();
        assert_eq!(t, "min{2x, x+2y, 3y}".parse().unwrap());
    }

    #[test]
    fn neg_log_unit_coefficients() {
        let p = poly(&[&[("a", 2)], &[("a", 2), ("b", 1)], &[("b", 3)]]);
        let t = tropicalize(&p, Valuation::NegLog).unwrap();
        assert_eq!(t, "min{2a, 2a+b, 3b}".parse().unwrap());
    }

    #[test]
    fn zero_and_out_of_range() {
        let mut p = BTreeMap::new();
        p.insert(MultiDegree::one(), Rational::zero());
        assert!(tropicalize(&p, Valuation::NegLog).unwrap().is_empty());
        p.insert(MultiDegree::one(), Rational::from_integer(2.into()));
        assert!(tropicalize(&p, Valuation::NegLog).is_err());
        let half = Valuation::NegLog.apply(&Rational::new(1.into(), 2.into())).unwrap();
        assert!(half.approx_eq(&TropValue::from_f64(std::f64::consts::LN_2).unwrap()));
    }
}
