use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use super::{Caps, Mset, Obj, SemError, SemPoint};
use crate::tropical::{MultiDegree, Point, TropSeries, TropValue};

/// One multiset per domain component.
pub type Row = Vec<Mset>;

pub fn row_add(a: &Row, b: &Row) -> Row {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn empty_row(n: usize) -> Row {
    vec![Mset::empty(); n]
}

/// Row with `[p]` in component `i` of `n`.
pub fn unit_row(n: usize, i: usize, p: SemPoint) -> Row {
    let mut r = empty_row(n);
    r[i] = Mset::singleton(p);
    r
}

pub fn row_size(r: &Row) -> u32 {
    r.iter().map(Mset::size).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Warning {
    /// Some multiset exceeded `k_max` and the corresponding entries were dropped.
    CapTooSmall(String),
    /// A numeral above `N_max` was dropped.
    NumeralAboveCap(u32),
    /// A grade larger than `k_max` was clipped.
    GradeAboveCap(u32),
    /// Fixpoint iteration stopped at `F_max` before stabilizing.
    FixNotStable(u32),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::CapTooSmall(what) => write!(f, "CapTooSmall: multiset above k_max dropped in {what}"),
            Warning::NumeralAboveCap(n) => write!(f, "CapTooSmall: numeral {n} above N_max dropped"),
            Warning::GradeAboveCap(n) => write!(f, "CapTooSmall: grade {n} clipped to k_max"),
            Warning::FixNotStable(n) => write!(f, "fixpoint not stable after {n} iterations"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    pub warnings: BTreeSet<Warning>,
}

impl Diagnostics {
    pub fn warn(&mut self, w: Warning) {
        self.warnings.insert(w);
    }
}

/// Sparse coKleisli matrix `!(X1 & … & Xn) → Y` with parametric entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropMatrix {
    pub dom: Vec<(String, Obj)>,
    pub cod: Obj,
    entries: BTreeMap<(Row, SemPoint), TropSeries>,
}

impl TropMatrix {
    pub fn new(dom: Vec<(String, Obj)>, cod: Obj) -> Self {
        TropMatrix { dom, cod, entries: BTreeMap::new() }
    }

    /// Matrix with unnamed domain components `x0, x1, …`.
    pub fn anon(dom: Vec<Obj>, cod: Obj) -> Self {
        let dom = dom.into_iter().enumerate().map(|(i, o)| (format!("x{i}"), o)).collect();
        TropMatrix::new(dom, cod)
    }

    pub fn arity(&self) -> usize {
        self.dom.len()
    }

    pub fn dom_objs(&self) -> Vec<Obj> {
        self.dom.iter().map(|(_, o)| o.clone()).collect()
    }

    /// Min-merges an entry; empty series are not stored.
    pub fn insert(&mut self, row: Row, b: SemPoint, s: TropSeries) {
        debug_assert_eq!(row.len(), self.dom.len());
        if s.is_empty() {
            return;
        }
        match self.entries.get_mut(&(row.clone(), b.clone())) {
            Some(old) => *old = old.min(&s),
            None => {
                self.entries.insert((row, b), s);
            }
        }
    }

    pub fn get(&self, row: &Row, b: &SemPoint) -> TropSeries {
        self.entries.get(&(row.clone(), b.clone())).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Row, &SemPoint, &TropSeries)> {
        self.entries.iter().map(|((r, b), s)| (r, b, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn same_shape(&self, other: &TropMatrix) -> bool {
        self.dom_objs() == other.dom_objs() && self.cod == other.cod
    }

    /// Entrywise tropical sum.
    pub fn min(&self, other: &TropMatrix) -> Result<TropMatrix, SemError> {
        if !self.same_shape(other) {
            return Err(SemError::Shape(format!("min of {} and {}", self.shape(), other.shape())));
        }
        let mut out = self.clone();
        for (r, b, s) in other.iter() {
            out.insert(r.clone(), b.clone(), s.clone());
        }
        Ok(out)
    }

    /// Tropical scalar multiplication of every entry.
    pub fn shift(&self, w: &TropSeries) -> TropMatrix {
        let mut out = TropMatrix::new(self.dom.clone(), self.cod.clone());
        for (r, b, s) in self.iter() {
            out.insert(r.clone(), b.clone(), s.mul(w));
        }
        out
    }

    /// Drops monomials dominated on all of `[0, ∞]^k` in every entry.
    pub fn prune(&self) -> TropMatrix {
        let mut out = TropMatrix::new(self.dom.clone(), self.cod.clone());
        for (r, b, s) in self.iter() {
            out.insert(r.clone(), b.clone(), s.prune_dominated());
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&TropSeries) -> TropSeries) -> TropMatrix {
        let mut out = TropMatrix::new(self.dom.clone(), self.cod.clone());
        for (r, b, s) in self.iter() {
            out.insert(r.clone(), b.clone(), f(s));
        }
        out
    }

    /// Keeps the entries satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Row, &SemPoint) -> bool) -> TropMatrix {
        let mut out = TropMatrix::new(self.dom.clone(), self.cod.clone());
        for (r, b, s) in self.iter() {
            if keep(r, b) {
                out.insert(r.clone(), b.clone(), s.clone());
            }
        }
        out
    }

    /// Equality of entries up to float tolerance.
    pub fn approx_eq(&self, other: &TropMatrix) -> bool {
        self.len() == other.len()
            && self.entries.iter().all(|(k, s)| other.entries.get(k).is_some_and(|o| s.approx_eq(o)))
    }

    /// Parameter symbols occurring in entries.
    pub fn params(&self) -> BTreeSet<String> {
        self.entries.values().flat_map(|s| s.iter().flat_map(|(d, _)| d.vars().map(str::to_string))).collect()
    }

    pub fn shape(&self) -> String {
        let dom: Vec<String> = self.dom.iter().map(|(n, o)| format!("{n}:{o}")).collect();
        format!("!({}) -> {}", dom.join(" & "), self.cod)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(r, b, s)| {
                json!({
                    "mset": r.iter().map(Mset::to_json).collect::<Vec<_>>(),
                    "point": b.to_json(),
                    "series": s.to_json(),
                })
            })
            .collect();
        json!({
            "domain": self.dom.iter().map(|(n, o)| json!({"name": n, "obj": o.to_string()})).collect::<Vec<_>>(),
            "codomain": self.cod.to_string(),
            "entries": entries,
        })
    }

    /// Name of the input coordinate `(component i, point a)`.
    pub fn coord_name(&self, i: usize, a: &SemPoint) -> String {
        let (name, obj) = &self.dom[i];
        match obj {
            Obj::Finite(ps) if ps.len() == 1 => name.clone(),
            _ => format!("{name}{a}"),
        }
    }

    /// `t^!(x)_b` as a tropical series in the input coordinates and the
    /// parameters: `min_μ { μ·x + t_{μ,b} }`.
    pub fn applied_series(&self, b: &SemPoint) -> TropSeries {
        let mut out = TropSeries::inf();
        for (r, bb, s) in self.iter() {
            if bb != b {
                continue;
            }
            let mut deg = MultiDegree::one();
            for (i, m) in r.iter().enumerate() {
                for (a, k) in m.iter() {
                    let v = self.coord_name(i, a);
                    deg.set(&v, deg.get(&v) + k);
                }
            }
            out = out.min(&s.mul(&TropSeries::monomial(deg, TropValue::zero())));
        }
        out
    }
}

/// Input vector for [`matrix_apply`]: coordinates `(component, point)`.
pub type InputVector = BTreeMap<(usize, SemPoint), TropValue>;

/// `t^!(x)_b = min_μ { μ·x + t_{μ,b} }`; missing coordinates read as `∞`,
/// parameters are substituted from `params`.
pub fn matrix_apply(
    t: &TropMatrix,
    x: &InputVector,
    params: &Point,
) -> Result<BTreeMap<SemPoint, TropValue>, SemError> {
    let mut out: BTreeMap<SemPoint, TropValue> = BTreeMap::new();
    for (r, b, s) in t.iter() {
        let mut acc = s.eval(params)?;
        for (i, m) in r.iter().enumerate() {
            for (a, k) in m.iter() {
                let xa = x.get(&(i, a.clone())).cloned().unwrap_or(TropValue::Inf);
                acc = acc.plus(&xa.times_nat(k as u64));
            }
        }
        let e = out.entry(b.clone()).or_insert(TropValue::Inf);
        *e = e.min_with(&acc);
    }
    out.retain(|_, v| v.is_finite());
    Ok(out)
}

/// True iff every stored entry is the constant-0 series.
pub fn check_boolean(t: &TropMatrix) -> bool {
    t.iter().all(|(_, _, s)| s.is_unit())
}

pub fn rows_within(r: &Row, caps: &Caps) -> bool {
    r.iter().all(|m| m.size() <= caps.k_max)
}
