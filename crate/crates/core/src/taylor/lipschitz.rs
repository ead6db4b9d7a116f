use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tropical::{Point, Rational, SeriesError, TropSeries, TropValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LipschitzError {
    #[error("delta must lie strictly between 0 and inf, got {0}")]
    BadDelta(String),
    #[error("series is infinite at the corner of the ball ({0})")]
    InfiniteAtBall(String),
    #[error("bad sampling box: {0}")]
    BadBox(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Radius multiplier of the enclosing ball whose corner bounds the constant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Radius {
    #[default]
    Three,
    Two,
}

impl Radius {
    fn factor(self) -> u64 {
        match self {
            Radius::Three => 3,
            Radius::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzEstimate {
    pub k: TropValue,
    /// `center + mδ`, where the series is largest on the enclosing ball.
    pub corner: Point,
    pub value: TropValue,
    /// The enclosing ball lies in the open positive orthant, where the bound
    /// is guaranteed. Outside it the constant is only a heuristic.
    pub interior: bool,
}

/// `K = f(center + mδ) / δ`, a Lipschitz constant of `f` on the closed
/// `δ`-ball around `center` (sup norm), with `m = 3` by default.
pub fn lipschitz_estimate(
    f: &TropSeries,
    center: &Point,
    delta: &TropValue,
    radius: Radius,
) -> Result<LipschitzEstimate, LipschitzError> {
    if delta.is_zero() || delta.is_inf() {
        return Err(LipschitzError::BadDelta(delta.to_string()));
    }
    let shift = delta.times_nat(radius.factor());
    let corner: Point = center.iter().map(|(v, c)| (v.clone(), c.plus(&shift))).collect();
    let value = f.eval(&corner)?;
    if value.is_inf() {
        return Err(LipschitzError::InfiniteAtBall(
            corner.iter().map(|(v, c)| format!("{v}={c}")).collect::<Vec<_>>().join(", "),
        ));
    }
    let interior = center.values().all(|c| *c > shift);
    Ok(LipschitzEstimate { k: value.div(delta)?, corner, value, interior })
}

/// Per-variable sampling intervals `[lo, hi]`.
pub type Bounds = BTreeMap<String, (TropValue, TropValue)>;

/// The closed `δ`-ball around `center`, cut to `[0, ∞)`.
pub fn ball(center: &Point, delta: &TropValue) -> Bounds {
    center.iter().map(|(v, c)| (v.clone(), (c.monus(delta), c.plus(delta)))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Empirical {
    pub ratio: TropValue,
    pub witness: Option<(Point, Point)>,
}

const GRID: i64 = 1 << 12;

fn sample(rng: &mut ChaCha8Rng, bounds: &Bounds) -> Point {
    bounds
        .iter()
        .map(|(v, (lo, hi))| {
            let k = rng.gen_range(0..=GRID);
            let t = TropValue::Rat(Rational::new(BigInt::from(k), BigInt::from(GRID)));
            let width = hi.monus(lo);
            let x = match (&width, &t) {
                (TropValue::Rat(w), TropValue::Rat(t)) => TropValue::Rat(w * t),
                _ => TropValue::Real(width.to_f64() * t.to_f64()),
            };
            (v.clone(), lo.plus(&x))
        })
        .collect()
}

fn sup_dist(u: &Point, v: &Point) -> TropValue {
    u.iter().fold(TropValue::zero(), |acc, (k, a)| {
        let d = a.dist(&v[k]);
        if d > acc {
            d
        } else {
            acc
        }
    })
}

/// Largest `|f(u) - f(v)| / ‖u - v‖_∞` over `samples` random pairs in the box.
pub fn empirical_lipschitz(
    f: &TropSeries,
    bounds: &Bounds,
    samples: usize,
    seed: u64,
) -> Result<Empirical, LipschitzError> {
    for (v, (lo, hi)) in bounds {
        if lo.is_inf() || hi.is_inf() || lo > hi {
            return Err(LipschitzError::BadBox(format!("{v} in [{lo}, {hi}]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Empirical { ratio: TropValue::zero(), witness: None };
    for _ in 0..samples {
        let u = sample(&mut rng, bounds);
        let v = sample(&mut rng, bounds);
        let d = sup_dist(&u, &v);
        if d.is_zero() {
            continue;
        }
        let num = f.eval(&u)?.dist(&f.eval(&v)?);
        let r = num.div(&d)?;
        if best.witness.is_none() || r > best.ratio {
            best = Empirical { ratio: r, witness: Some((u, v)) };
        }
    }
    Ok(best)
}
