use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use super::{MultiDegree, SeriesError, TropValue};

/// Assignment of variables to points of `[0, ∞]`.
pub type Point = BTreeMap<String, TropValue>;

/// How a finite series was cut out of an infinite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruncationPolicy {
    Exact,
    DegreeCap(u32),
    FixCap(u32),
    DepthCap(u32),
}

/// Finite tropical series `min_n { n·x + f(n) }`.
///
/// Equality and hashing look at the monomials only; `vars` is metadata.
#[derive(Clone, Debug, Default)]
pub struct TropSeries {
    coeffs: BTreeMap<MultiDegree, TropValue>,
    vars: BTreeSet<String>,
}

impl PartialEq for TropSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for TropSeries {}

impl std::hash::Hash for TropSeries {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl TropSeries {
    /// The constant-∞ series over `vars`.
    pub fn empty<S: AsRef<str>>(vars: impl IntoIterator<Item = S>) -> Self {
        TropSeries {
            coeffs: BTreeMap::new(),
            vars: vars.into_iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn inf() -> Self {
        TropSeries::default()
    }

    pub fn constant(c: TropValue) -> Self {
        TropSeries::monomial(MultiDegree::one(), c)
    }

    /// The tropical unit: the constant-0 series.
    pub fn unit() -> Self {
        TropSeries::constant(TropValue::zero())
    }

    pub fn monomial(deg: MultiDegree, coeff: TropValue) -> Self {
        let mut s = TropSeries::empty(deg.vars());
        s.insert(deg, coeff);
        s
    }

    /// The monomial `1·v` with coefficient 0.
    pub fn var(v: &str) -> Self {
        TropSeries::monomial(MultiDegree::var(v, 1), TropValue::zero())
    }

    pub fn from_monomials(vars: &[&str], monos: impl IntoIterator<Item = (MultiDegree, TropValue)>) -> Self {
        let mut s = TropSeries::empty(vars.iter().copied());
        for (d, c) in monos {
            s.insert(d, c);
        }
        s
    }

    /// Univariate series `min_i { i·v + c_i }`.
    pub fn univariate(v: &str, coeffs: impl IntoIterator<Item = (u32, TropValue)>) -> Self {
        let mut s = TropSeries::empty([v]);
        for (i, c) in coeffs {
            s.insert(MultiDegree::var(v, i), c);
        }
        s
    }

    /// Adds a monomial, keeping the smaller coefficient on a shared degree.
    pub fn insert(&mut self, deg: MultiDegree, coeff: TropValue) {
        if coeff.is_inf() {
            return;
        }
        for v in deg.vars() {
            if !self.vars.contains(v) {
                self.vars.insert(v.to_string());
            }
        }
        match self.coeffs.get_mut(&deg) {
            Some(c) if *c <= coeff => {}
            Some(c) => *c = coeff,
            None => {
                self.coeffs.insert(deg, coeff);
            }
        }
    }

    pub fn with_vars<S: AsRef<str>>(mut self, vars: impl IntoIterator<Item = S>) -> Self {
        self.vars.extend(vars.into_iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn vars(&self) -> &BTreeSet<String> {
        &self.vars
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, deg: &MultiDegree) -> TropValue {
        self.coeffs.get(deg).cloned().unwrap_or(TropValue::Inf)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiDegree, &TropValue)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> BTreeSet<MultiDegree> {
        self.coeffs.keys().cloned().collect()
    }

    /// Maximal total degree; 0 for constants and the empty series.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(MultiDegree::total).max().unwrap_or(0)
    }

    pub fn has_float(&self) -> bool {
        self.coeffs.values().any(TropValue::is_float)
    }

    /// True iff the series is exactly the constant 0.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs.iter().all(|(d, c)| d.is_one() && c.is_zero())
    }

    /// Value of a constant series (`∞` for the empty one).
    pub fn as_constant(&self) -> Option<TropValue> {
        match self.coeffs.len() {
            0 => Some(TropValue::Inf),
            1 => self.coeffs.iter().find(|(d, _)| d.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn eval(&self, point: &Point) -> Result<TropValue, SeriesError> {
        let mut best = TropValue::Inf;
        for (deg, c) in &self.coeffs {
            let mut acc = c.clone();
            for (v, d) in deg.iter() {
                let x = point.get(v).ok_or_else(|| SeriesError::MissingAssignment(v.to_string()))?;
                acc = acc.plus(&x.times_nat(d as u64));
            }
            best = best.min_with(&acc);
        }
        Ok(best)
    }

    pub fn min(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.vars.extend(other.vars.iter().cloned());
        for (d, c) in &other.coeffs {
            out.insert(d.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TropSeries::empty(self.vars.union(&other.vars));
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                out.insert(d1.add(d2), c1.plus(c2));
            }
        }
        out
    }

    pub fn shift(&self, c: &TropValue) -> Self {
        let mut out = TropSeries::empty(self.vars.iter());
        for (d, v) in &self.coeffs {
            out.insert(d.clone(), v.plus(c));
        }
        out
    }

    /// `n`-fold tropical power (`n = 0` gives the unit).
    pub fn pow(&self, n: u32) -> Self {
        let mut out = TropSeries::unit().with_vars(self.vars.iter());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Drops every monomial `n` for which some `m ≼ n, m ≠ n` has
    /// `f(m) ≤ f(n)`. The result agrees with `self` on all of `[0, ∞]^k`.
    pub fn prune_dominated(&self) -> Self {
        let mut out = TropSeries::empty(self.vars.iter());
        for (n, cn) in &self.coeffs {
            let dominated = self.coeffs.iter().any(|(m, cm)| m.lt(n) && cm <= cn);
            if !dominated {
                out.coeffs.insert(n.clone(), cn.clone());
            }
        }
        out
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let vars: BTreeSet<String> =
            self.vars.iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect();
        let mut out = TropSeries::empty(vars.iter());
        for (d, c) in &self.coeffs {
            out.insert(d.rename(map), c.clone());
        }
        out
    }

    /// Substitutes values for some variables, leaving the rest symbolic.
    pub fn partial_eval(&self, point: &Point) -> Self {
        let rest: Vec<&String> = self.vars.iter().filter(|v| !point.contains_key(*v)).collect();
        let mut out = TropSeries::empty(rest);
        for (d, c) in &self.coeffs {
            let mut acc = c.clone();
            let mut keep = MultiDegree::one();
            for (v, k) in d.iter() {
                match point.get(v) {
                    Some(x) => acc = acc.plus(&x.times_nat(k as u64)),
                    None => keep.set(v, k),
                }
            }
            out.insert(keep, acc);
        }
        out
    }

    /// Same support, coefficients equal up to float tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .all(|(d, c)| other.coeffs.get(d).is_some_and(|o| c.approx_eq(o)))
    }

    pub fn to_json(&self) -> Value {
        let monos: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| {
                let deg: serde_json::Map<String, Value> =
                    d.iter().map(|(v, k)| (v.to_string(), json!(k))).collect();
                json!({ "deg": deg, "coeff": value_json(c) })
            })
            .collect();
        json!({ "vars": self.vars, "monomials": monos })
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Parse(format!("series json: {m}"));
        let vars: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("var name")))
            .collect::<Result<_, _>>()?;
        let mut s = TropSeries::empty(vars.iter());
        for m in v.get("monomials").and_then(Value::as_array).ok_or_else(|| bad("missing monomials"))? {
            let mut deg = MultiDegree::one();
            for (k, d) in m.get("deg").and_then(Value::as_object).ok_or_else(|| bad("deg"))? {
                let d = d.as_u64().ok_or_else(|| bad("degree"))?;
                deg.set(k, d as u32);
            }
            let coeff = match m.get("coeff").ok_or_else(|| bad("coeff"))? {
                Value::String(s) => s.parse()?,
                Value::Number(n) => TropValue::from_f64(n.as_f64().ok_or_else(|| bad("coeff"))?)?,
                _ => return Err(bad("coeff")),
            };
            s.insert(deg, coeff);
        }
        Ok(s)
    }
}

/// JSON encoding of a scalar: rationals and `inf` as strings, floats as numbers.
pub fn value_json(c: &TropValue) -> Value {
    match c {
        TropValue::Real(x) => json!(x),
        other => json!(other.to_string()),
    }
}

impl fmt::Display for TropSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| match (d.is_one(), c.is_zero()) {
                (true, _) => c.to_string(),
                (false, true) => d.to_string(),
                (false, false) => format!("{d}+{c}"),
            })
            .collect();
        match monos.len() {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", monos[0]),
            _ => write!(f, "min{{{}}}", monos.join(", ")),
        }
    }
}

pub fn series_eval(f: &TropSeries, point: &Point) -> Result<TropValue, SeriesError> {
    f.eval(point)
}

pub fn series_min(f: &TropSeries, g: &TropSeries) -> TropSeries {
    f.min(g)
}

pub fn series_mul(f: &TropSeries, g: &TropSeries) -> TropSeries {
    f.mul(g)
}

pub fn series_shift(f: &TropSeries, c: &TropValue) -> TropSeries {
    f.shift(c)
}

/// Tab-separated `(x, f(x))` rows for a univariate series on `lo, lo+step, …, ≤ hi`.
pub fn plot_tsv(f: &TropSeries, lo: &TropValue, hi: &TropValue, step: &TropValue) -> Result<String, SeriesError> {
    let var = match f.vars.len() {
        0 => "x".to_string(),
        1 => f.vars.iter().next().cloned().unwrap_or_default(),
        _ => return Err(SeriesError::NotUnivariate(f.vars.iter().cloned().collect::<Vec<_>>().join(","))),
    };
    if step.is_zero() || step.is_inf() || lo.is_inf() || hi.is_inf() {
        return Err(SeriesError::BadEpsilon(step.to_string()));
    }
    let mut out = String::new();
    let mut x = lo.clone();
    while x <= *hi {
        let y = f.eval(&Point::from([(var.clone(), x.clone())]))?;
        out.push_str(&format!("{x}\t{y}\n"));
        x = x.plus(step);
    }
    Ok(out)
}
