use crate::tropical::{MultiDegree, Point, TropSeries, TropValue};

/// Maximum-likelihood parameter of a two-parameter likelihood series.
#[derive(Clone, Debug, PartialEq)]
pub struct Mle {
    pub p: f64,
    /// Minimal negative log-likelihood at `p`.
    pub value: f64,
    pub active: Option<MultiDegree>,
    /// The optimum sits at the edge of `(0, 1)`: `p` is only a supremum.
    pub boundary: bool,
}

fn nll(series: &TropSeries, alpha: &str, beta: &str, p: f64) -> f64 {
    let mut pt = Point::new();
    pt.insert(alpha.to_string(), TropValue::Real(-p.ln()));
    pt.insert(beta.to_string(), TropValue::Real(-(1.0 - p).ln()));
    series.eval(&pt).map(|v| v.to_f64()).unwrap_or(f64::INFINITY)
}

/// Monomial attaining the minimum at `point` (first in degree order on ties).
pub fn active_monomial(series: &TropSeries, point: &Point) -> Option<MultiDegree> {
    let mut best: Option<(f64, &MultiDegree)> = None;
    for (d, c) in series.iter() {
        let mut v = c.to_f64();
        for (x, k) in d.iter() {
            v += k as f64 * point.get(x).map_or(f64::INFINITY, TropValue::to_f64);
        }
        if best.is_none_or(|(b, _)| v < b - 1e-12) {
            best = Some((v, d));
        }
    }
    best.map(|(_, d)| d.clone())
}

/// Minimises `series(-log p, -log(1-p))` over `p ∈ (0, 1)`: a uniform grid,
/// then golden-section search around the best cell down to `1e-6`.
pub fn mle(series: &TropSeries, alpha: &str, beta: &str, grid: usize) -> Mle {
    let grid = grid.max(2);
    let at = |i: usize| i as f64 / (grid + 1) as f64;
    let (mut bi, mut bv) = (1, f64::INFINITY);
    for i in 1..=grid {
        let v = nll(series, alpha, beta, at(i));
        if v < bv {
            (bi, bv) = (i, v);
        }
    }
    let (mut lo, mut hi) = (at(bi - 1), at(bi + 1));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let f = |p: f64| nll(series, alpha, beta, p);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    while hi - lo > 1e-6 {
        if f(c) <= f(d) {
            hi = d;
        } else {
            lo = c;
        }
        c = hi - g * (hi - lo);
        d = lo + g * (hi - lo);
    }
    let p = (lo + hi) / 2.0;
    let mut pt = Point::new();
    pt.insert(alpha.to_string(), TropValue::Real(-p.ln()));
    pt.insert(beta.to_string(), TropValue::Real(-(1.0 - p).ln()));
    Mle { p, value: f(p), active: active_monomial(series, &pt), boundary: bi == 1 || bi == grid }
}
