//! Tropical roots of univariate polynomials via the lower convex hull of
//! the points `(degree, coefficient)`.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;

use super::{Rational, SeriesError, TropSeries, TropValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: TropValue,
    pub multiplicity: u32,
}

fn univariate_points(f: &TropSeries) -> Result<Vec<(u32, TropValue)>, SeriesError> {
    if f.vars().len() > 1 {
        return Err(SeriesError::NotUnivariate(f.vars().iter().cloned().collect::<Vec<_>>().join(",")));
    }
    if f.is_empty() {
        return Err(SeriesError::EmptySeries);
    }
    Ok(f.iter().map(|(d, c)| (d.total(), c.clone())).collect())
}

fn lower_hull<T>(pts: &[(u32, T)], lift: impl Fn(u32) -> T) -> Vec<usize>
where
    T: Clone + PartialOrd + Sub<Output = T> + Mul<Output = T>,
{
    let mut hull: Vec<usize> = Vec::new();
    for (k, (x, y)) in pts.iter().enumerate() {
        while hull.len() >= 2 {
            let (ax, ay) = &pts[hull[hull.len() - 2]];
            let (bx, by) = &pts[hull[hull.len() - 1]];
            let cross = lift(bx - ax) * (y.clone() - ay.clone()) - (by.clone() - ay.clone()) * lift(x - ax);
            if cross <= lift(0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    hull
}

/// Hull vertices `(degree, coefficient)` whose edges have a slope break in `[0, ∞)`.
fn hull_vertices(f: &TropSeries) -> Result<Vec<(u32, TropValue)>, SeriesError> {
    let pts = univariate_points(f)?;
    let exact: Option<Vec<(u32, Rational)>> =
        pts.iter().map(|(d, c)| c.as_rational().map(|r| (*d, r.clone()))).collect();
    let idx = match &exact {
        Some(q) => lower_hull(q, |n| Rational::from_integer(BigInt::from(n))),
        None => {
            let fl: Vec<(u32, f64)> = pts.iter().map(|(d, c)| (*d, c.to_f64())).collect();
            lower_hull(&fl, |n| n as f64)
        }
    };
    let mut verts: Vec<(u32, TropValue)> = idx.into_iter().map(|i| pts[i].clone()).collect();
    // edges whose coefficient rises give negative break points, outside [0, ∞]
    while verts.len() >= 2 && verts[verts.len() - 1].1 > verts[verts.len() - 2].1 {
        verts.pop();
    }
    Ok(verts)
}

/// Roots sorted in decreasing order, multiplicity being the horizontal
/// length of the hull edge.
pub fn univariate_roots(f: &TropSeries) -> Result<Vec<Root>, SeriesError> {
    let verts = hull_vertices(f)?;
    let mut roots = Vec::new();
    for w in verts.windows(2) {
        let ((i, ci), (j, cj)) = (&w[0], &w[1]);
        let len = j - i;
        let root = ci.monus(cj).div(&TropValue::int(len as u64)).unwrap_or(TropValue::zero());
        roots.push(Root { root, multiplicity: len });
    }
    roots.sort_by(|a, b| b.root.cmp(&a.root));
    Ok(roots)
}

/// Evaluation through the hull alone: `min` over hull vertices only.
pub fn hull_eval(f: &TropSeries, x: &TropValue) -> Result<TropValue, SeriesError> {
    let verts = hull_vertices(f)?;
    Ok(verts
        .iter()
        .map(|(d, c)| c.plus(&x.times_nat(*d as u64)))
        .min()
        .unwrap_or(TropValue::Inf))
}
