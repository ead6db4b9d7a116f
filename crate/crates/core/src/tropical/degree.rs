use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with only positive entries stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(BTreeMap<String, u32>);

impl MultiDegree {
    pub fn one() -> Self {
        MultiDegree(BTreeMap::new())
    }

    pub fn var(name: &str, d: u32) -> Self {
        let mut m = MultiDegree::one();
        m.set(name, d);
        m
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut m = MultiDegree::one();
        for (v, d) in pairs {
            m.set(v, m.get(v) + d);
        }
        m
    }

    pub fn get(&self, v: &str) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: &str, d: u32) {
        if d == 0 {
            self.0.remove(v);
        } else {
            self.0.insert(v.to_string(), d);
        }
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, d) in other.iter() {
            out.set(v, out.get(v) + d);
        }
        out
    }

    /// `self - other` when `other ≼ self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (v, d) in other.iter() {
            let have = out.get(v);
            if have < d {
                return None;
            }
            out.set(v, have - d);
        }
        Some(out)
    }

    /// Product order `self ≼ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.iter().all(|(v, d)| d <= other.get(v))
    }

    /// Strict product order `self ≺ other`.
    pub fn lt(&self, other: &Self) -> bool {
        self != other && self.le(other)
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let mut out = MultiDegree::one();
        for (v, d) in self.iter() {
            let to = map.get(v).map(|s| s.as_str()).unwrap_or(v);
            out.set(to, out.get(to) + d);
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, d) in self.iter() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if d == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{d}{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_degrees_are_absent() {
        let mut m = MultiDegree::var("x", 2);
        m.set("x", 0);
        assert!(m.is_one());
        assert_eq!(MultiDegree::from_pairs([("a", 0)]), MultiDegree::one());
    }

    #[test]
    fn product_order() {
        let a = MultiDegree::from_pairs([("x", 1)]);
        let b = MultiDegree::from_pairs([("x", 1), ("y", 2)]);
        assert!(a.lt(&b));
        assert!(!b.le(&a));
        assert_eq!(b.checked_sub(&a), Some(MultiDegree::var("y", 2)));
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(b.total(), 3);
    }
}
