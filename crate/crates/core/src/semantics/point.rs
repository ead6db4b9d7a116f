use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

use super::SemError;
use crate::syntax::Type;

/// Points of the sets interpreting types and of the structural objects.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemPoint {
    Star,
    Nat(u32),
    Atom(String),
    /// `(μ, b)`, a point of an exponential object.
    Pair(Mset, Box<SemPoint>),
    /// Component `i` of a cartesian product (a disjoint union).
    Tag(u32, Box<SemPoint>),
    /// A point of a tensor product.
    Tuple(Vec<SemPoint>),
    /// A multiset used as a point of `!_n X`.
    Bag(Mset),
}

impl SemPoint {
    pub fn pair(mu: Mset, b: SemPoint) -> SemPoint {
        SemPoint::Pair(mu, Box::new(b))
    }

    pub fn tag(i: u32, p: SemPoint) -> SemPoint {
        SemPoint::Tag(i, Box::new(p))
    }

    pub fn atom(s: &str) -> SemPoint {
        SemPoint::Atom(s.to_string())
    }

    pub fn to_json(&self) -> Value {
        match self {
            SemPoint::Star => json!("*"),
            SemPoint::Nat(n) => json!(n),
            SemPoint::Atom(a) => json!({ "atom": a }),
            SemPoint::Pair(m, b) => json!({ "mset": m.to_json(), "out": b.to_json() }),
            SemPoint::Tag(i, p) => json!({ "tag": i, "point": p.to_json() }),
            SemPoint::Tuple(ps) => json!({ "tuple": ps.iter().map(SemPoint::to_json).collect::<Vec<_>>() }),
            SemPoint::Bag(m) => json!({ "bag": m.to_json() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<SemPoint, SemError> {
        let bad = || SemError::Shape(format!("not a semantic point: {v}"));
        match v {
            Value::String(s) if s == "*" => Ok(SemPoint::Star),
            Value::Number(n) => n.as_u64().map(|n| SemPoint::Nat(n as u32)).ok_or_else(bad),
            Value::Object(o) => {
                if let Some(a) = o.get("atom").and_then(Value::as_str) {
                    Ok(SemPoint::atom(a))
                } else if let (Some(m), Some(b)) = (o.get("mset"), o.get("out")) {
                    Ok(SemPoint::pair(Mset::from_json(m)?, SemPoint::from_json(b)?))
                } else if let (Some(i), Some(p)) = (o.get("tag").and_then(Value::as_u64), o.get("point")) {
                    Ok(SemPoint::tag(i as u32, SemPoint::from_json(p)?))
                } else if let Some(ps) = o.get("tuple").and_then(Value::as_array) {
                    Ok(SemPoint::Tuple(ps.iter().map(SemPoint::from_json).collect::<Result<_, _>>()?))
                } else if let Some(m) = o.get("bag") {
                    Ok(SemPoint::Bag(Mset::from_json(m)?))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SemPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemPoint::Star => write!(f, "*"),
            SemPoint::Nat(n) => write!(f, "{n}"),
            SemPoint::Atom(a) => write!(f, "{a}"),
            SemPoint::Pair(m, b) => write!(f, "({m}, {b})"),
            SemPoint::Tag(i, p) => write!(f, "{i}:{p}"),
            SemPoint::Tuple(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "<{}>", parts.join(", "))
            }
            SemPoint::Bag(m) => write!(f, "{m}"),
        }
    }
}

/// Finite multiset of points.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mset(BTreeMap<SemPoint, u32>);

impl Mset {
    pub fn empty() -> Self {
        Mset::default()
    }

    pub fn singleton(p: SemPoint) -> Self {
        Mset(BTreeMap::from([(p, 1)]))
    }

    pub fn repeat(p: SemPoint, n: u32) -> Self {
        let mut m = Mset::empty();
        m.insert(p, n);
        m
    }

    pub fn insert(&mut self, p: SemPoint, n: u32) {
        if n > 0 {
            *self.0.entry(p).or_insert(0) += n;
        }
    }

    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, p: &SemPoint) -> u32 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Mset) -> Mset {
        let mut out = self.clone();
        for (p, n) in &other.0 {
            out.insert(p.clone(), *n);
        }
        out
    }

    /// `self - [p]` when `p ∈ self`.
    pub fn remove_one(&self, p: &SemPoint) -> Option<Mset> {
        let mut out = self.clone();
        match out.0.get_mut(p) {
            Some(1) => {
                out.0.remove(p);
            }
            Some(n) => *n -= 1,
            None => return None,
        }
        Some(out)
    }

    /// `self - other` when `other ⊆ self`.
    pub fn checked_sub(&self, other: &Mset) -> Option<Mset> {
        let mut out = self.clone();
        for (p, n) in &other.0 {
            let have = out.count(p);
            if have < *n {
                return None;
            }
            out.0.remove(p);
            if have > *n {
                out.0.insert(p.clone(), have - n);
            }
        }
        Some(out)
    }

    /// Distinct elements with multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&SemPoint, u32)> {
        self.0.iter().map(|(p, n)| (p, *n))
    }

    /// Elements listed with repetition, in order.
    pub fn elements(&self) -> Vec<&SemPoint> {
        self.0.iter().flat_map(|(p, n)| std::iter::repeat_n(p, *n as usize)).collect()
    }

    pub fn map(&self, f: impl Fn(&SemPoint) -> SemPoint) -> Mset {
        let mut out = Mset::empty();
        for (p, n) in &self.0 {
            out.insert(f(p), *n);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.elements().into_iter().map(SemPoint::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Mset, SemError> {
        let arr = v.as_array().ok_or_else(|| SemError::Shape(format!("not a multiset: {v}")))?;
        let mut m = Mset::empty();
        for p in arr {
            m.insert(SemPoint::from_json(p)?, 1);
        }
        Ok(m)
    }
}

impl FromIterator<SemPoint> for Mset {
    fn from_iter<I: IntoIterator<Item = SemPoint>>(iter: I) -> Self {
        let mut m = Mset::empty();
        for p in iter {
            m.insert(p, 1);
        }
        m
    }
}

impl fmt::Display for Mset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest multiset in any enumerated point or matrix row.
    pub k_max: u32,
    /// Largest numeral.
    pub n_max: u32,
    /// Number of fixpoint iterations.
    pub f_max: u32,
    /// Largest point set the enumerator will build.
    pub enum_limit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { k_max: 4, n_max: 8, f_max: 16, enum_limit: 250_000 }
    }
}

/// Finite sets standing for objects of the model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    Finite(Vec<SemPoint>),
    /// `{0, …, N_max}`
    Nat,
    /// `!X × Y`, multisets bounded by the grade when present.
    Arrow(Box<Obj>, Box<Obj>, Option<u32>),
    /// Cartesian product: tagged disjoint union.
    With(Vec<Obj>),
}

impl Obj {
    pub fn unit() -> Obj {
        Obj::Finite(vec![SemPoint::Star])
    }

    pub fn atoms(names: &[&str]) -> Obj {
        Obj::Finite(names.iter().map(|n| SemPoint::atom(n)).collect())
    }

    pub fn arrow(a: Obj, b: Obj) -> Obj {
        Obj::Arrow(Box::new(a), Box::new(b), None)
    }

    pub fn from_type(t: &Type) -> Obj {
        match t {
            Type::Ground(_) => Obj::unit(),
            Type::Nat => Obj::Nat,
            Type::Arrow(a, b) => Obj::arrow(Obj::from_type(a), Obj::from_type(b)),
            Type::Graded(n, a, b) => Obj::Arrow(Box::new(Obj::from_type(a)), Box::new(Obj::from_type(b)), Some(*n)),
        }
    }

    /// Multiset bound for `!` of this object's argument, if an arrow.
    pub fn bound(&self, caps: &Caps) -> u32 {
        match self {
            Obj::Arrow(_, _, Some(n)) => (*n).min(caps.k_max),
            _ => caps.k_max,
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Finite(ps) if ps == &[SemPoint::Star] => write!(f, "1"),
            Obj::Finite(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Obj::Nat => write!(f, "N"),
            Obj::Arrow(a, b, None) => write!(f, "(!{a} => {b})"),
            Obj::Arrow(a, b, Some(n)) => write!(f, "(!{n} {a} => {b})"),
            Obj::With(os) => {
                let parts: Vec<String> = os.iter().map(|o| o.to_string()).collect();
                write!(f, "({})", parts.join(" & "))
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// All multisets of size `≤ k` over `points`, by nondecreasing size.
pub fn msets_upto(points: &[SemPoint], k: u32) -> Vec<Mset> {
    let mut out = vec![Mset::empty()];
    let mut layer: Vec<(Mset, usize)> = vec![(Mset::empty(), 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (i, p) in points.iter().enumerate().skip(*start) {
                let mut m2 = m.clone();
                m2.insert(p.clone(), 1);
                next.push((m2, i));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// Number of multisets of size `≤ k` over `n` points.
pub fn count_msets(n: usize, k: u32) -> u64 {
    binomial(n as u64 + k as u64, k as u64)
}

/// Memoised enumeration of objects under fixed caps.
#[derive(Debug, Default)]
pub struct Enumerator {
    cache: HashMap<Obj, std::rc::Rc<Vec<SemPoint>>>,
}

impl Enumerator {
    pub fn points(&mut self, obj: &Obj, caps: &Caps) -> Result<std::rc::Rc<Vec<SemPoint>>, SemError> {
        if let Some(p) = self.cache.get(obj) {
            return Ok(p.clone());
        }
        let pts: Vec<SemPoint> = match obj {
            Obj::Finite(ps) => ps.clone(),
            Obj::Nat => (0..=caps.n_max).map(SemPoint::Nat).collect(),
            Obj::Arrow(a, b, _) => {
                let pa = self.points(a, caps)?;
                let pb = self.points(b, caps)?;
                let k = obj.bound(caps);
                let total = count_msets(pa.len(), k).saturating_mul(pb.len() as u64);
                if total > caps.enum_limit as u64 {
                    return Err(SemError::EnumerationTooLarge { obj: obj.to_string(), count: total });
                }
                let mut out = Vec::with_capacity(total as usize);
                for mu in msets_upto(&pa, k) {
                    for b in pb.iter() {
                        out.push(SemPoint::pair(mu.clone(), b.clone()));
                    }
                }
                out
            }
            Obj::With(os) => {
                let mut out = Vec::new();
                for (i, o) in os.iter().enumerate() {
                    out.extend(self.points(o, caps)?.iter().map(|p| SemPoint::tag(i as u32, p.clone())));
                }
                out
            }
        };
        let rc = std::rc::Rc::new(pts);
        self.cache.insert(obj.clone(), rc.clone());
        Ok(rc)
    }
}
