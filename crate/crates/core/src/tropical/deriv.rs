use super::{Point, SeriesError, TropSeries, TropValue};

/// `D_! f(x, y) = min { f(μ + a) + x_a + μ·y }`: one occurrence of a variable
/// is read at `x`, the remaining ones at `y`.
pub fn deriv_eval(f: &TropSeries, x: &Point, y: &Point) -> Result<TropValue, SeriesError> {
    let get = |p: &Point, v: &str| p.get(v).cloned().ok_or_else(|| SeriesError::MissingAssignment(v.to_string()));
    let mut best = TropValue::Inf;
    for (m, c) in f.iter() {
        for (a, k) in m.iter() {
            let mut acc = c.plus(&get(x, a)?);
            for (b, j) in m.iter() {
                let j = if b == a { k - 1 } else { j };
                acc = acc.plus(&get(y, b)?.times_nat(j as u64));
            }
            best = best.min_with(&acc);
        }
    }
    Ok(best)
}
