//! Linear relational matrices over explicit finite point sets, and the
//! bounded-multiset graded comonad `!_n` with its structure maps.

use std::collections::{BTreeMap, BTreeSet};

use super::{msets_upto, Mset, SemPoint};
use crate::tropical::TropValue;

/// A matrix `X × Y → [0, ∞]`; absent entries are `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelMatrix {
    pub src: Vec<SemPoint>,
    pub tgt: Vec<SemPoint>,
    entries: BTreeMap<(SemPoint, SemPoint), TropValue>,
}

fn canon(mut v: Vec<SemPoint>) -> Vec<SemPoint> {
    v.sort();
    v.dedup();
    v
}

/// Points of `!_n X` as bags.
pub fn bag_points(xs: &[SemPoint], n: u32) -> Vec<SemPoint> {
    canon(msets_upto(xs, n).into_iter().map(SemPoint::Bag).collect())
}

/// Points of `X ⊗ Y`.
pub fn tensor_points(xs: &[SemPoint], ys: &[SemPoint]) -> Vec<SemPoint> {
    canon(xs.iter().flat_map(|x| ys.iter().map(move |y| SemPoint::Tuple(vec![x.clone(), y.clone()]))).collect())
}

fn as_bag(p: &SemPoint) -> Option<&Mset> {
    match p {
        SemPoint::Bag(m) => Some(m),
        _ => None,
    }
}

fn as_pair(p: &SemPoint) -> Option<(&SemPoint, &SemPoint)> {
    match p {
        SemPoint::Tuple(v) if v.len() == 2 => Some((&v[0], &v[1])),
        _ => None,
    }
}

impl RelMatrix {
    pub fn new(src: Vec<SemPoint>, tgt: Vec<SemPoint>) -> Self {
        RelMatrix { src: canon(src), tgt: canon(tgt), entries: BTreeMap::new() }
    }

    /// The 0/∞ matrix of a relation given as a predicate.
    pub fn relation(src: Vec<SemPoint>, tgt: Vec<SemPoint>, rel: impl Fn(&SemPoint, &SemPoint) -> bool) -> Self {
        let mut m = RelMatrix::new(src, tgt);
        for a in m.src.clone() {
            for b in m.tgt.clone() {
                if rel(&a, &b) {
                    m.set(a.clone(), b, TropValue::zero());
                }
            }
        }
        m
    }

    pub fn set(&mut self, a: SemPoint, b: SemPoint, v: TropValue) {
        if v.is_finite() {
            self.entries.insert((a, b), v);
        } else {
            self.entries.remove(&(a, b));
        }
    }

    pub fn get(&self, a: &SemPoint, b: &SemPoint) -> TropValue {
        self.entries.get(&(a.clone(), b.clone())).cloned().unwrap_or(TropValue::Inf)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SemPoint, &SemPoint, &TropValue)> {
        self.entries.iter().map(|((a, b), v)| (a, b, v))
    }

    pub fn identity(xs: Vec<SemPoint>) -> Self {
        RelMatrix::relation(xs.clone(), xs, |a, b| a == b)
    }

    /// `self ∘ f`: `(self ∘ f)_{a,c} = min_b f_{a,b} + self_{b,c}`.
    pub fn after(&self, f: &RelMatrix) -> RelMatrix {
        assert_eq!(f.tgt, self.src, "composition of incompatible matrices");
        let mut by_src: BTreeMap<&SemPoint, Vec<(&SemPoint, &TropValue)>> = BTreeMap::new();
        for (b, c, v) in self.iter() {
            by_src.entry(b).or_default().push((c, v));
        }
        let mut out = RelMatrix::new(f.src.clone(), self.tgt.clone());
        for (a, b, v) in f.iter() {
            for (c, w) in by_src.get(b).into_iter().flatten() {
                let s = v.plus(w);
                let cur = out.get(a, c);
                out.set(a.clone(), (*c).clone(), cur.min_with(&s));
            }
        }
        out
    }

    pub fn tensor(&self, g: &RelMatrix) -> RelMatrix {
        let mut out = RelMatrix::new(tensor_points(&self.src, &g.src), tensor_points(&self.tgt, &g.tgt));
        for (a, b, v) in self.iter() {
            for (a2, b2, w) in g.iter() {
                out.set(
                    SemPoint::Tuple(vec![a.clone(), a2.clone()]),
                    SemPoint::Tuple(vec![b.clone(), b2.clone()]),
                    v.plus(w),
                );
            }
        }
        out
    }

    /// `!_n f`: minimum over bijections between the two bags.
    pub fn bang(&self, n: u32) -> RelMatrix {
        let src = bag_points(&self.src, n);
        let tgt = bag_points(&self.tgt, n);
        let mut out = RelMatrix::new(src.clone(), tgt.clone());
        for a in &src {
            let xs = as_bag(a).map(Mset::elements).unwrap_or_default();
            for b in &tgt {
                let ys = as_bag(b).map(Mset::elements).unwrap_or_default();
                if xs.len() == ys.len() {
                    let v = best_matching(self, &xs, &ys);
                    out.set(a.clone(), b.clone(), v);
                }
            }
        }
        out
    }
}

fn best_matching(f: &RelMatrix, xs: &[&SemPoint], ys: &[&SemPoint]) -> TropValue {
    fn go(f: &RelMatrix, xs: &[&SemPoint], ys: &[&SemPoint], used: &mut Vec<bool>) -> TropValue {
        let Some((x, rest)) = xs.split_first() else {
            return TropValue::zero();
        };
        let mut best = TropValue::Inf;
        for j in 0..ys.len() {
            if used[j] {
                continue;
            }
            let v = f.get(x, ys[j]);
            if v.is_inf() {
                continue;
            }
            used[j] = true;
            best = best.min_with(&v.plus(&go(f, rest, ys, used)));
            used[j] = false;
        }
        best
    }
    go(f, xs, ys, &mut vec![false; ys.len()])
}

pub fn unit_points() -> Vec<SemPoint> {
    vec![SemPoint::Star]
}

/// `w_A : !_0 A → {⋆}`.
pub fn weakening(xs: &[SemPoint]) -> RelMatrix {
    RelMatrix::relation(bag_points(xs, 0), unit_points(), |_, _| true)
}

/// `c_{r,s,A} : !_{r+s} A → !_r A ⊗ !_s A`, zero when `α = β + γ`.
pub fn contraction(r: u32, s: u32, xs: &[SemPoint]) -> RelMatrix {
    let tgt = tensor_points(&bag_points(xs, r), &bag_points(xs, s));
    RelMatrix::relation(bag_points(xs, r + s), tgt, |a, bc| match (as_bag(a), as_pair(bc)) {
        (Some(a), Some((SemPoint::Bag(b), SemPoint::Bag(c)))) => *a == b.add(c),
        _ => false,
    })
}

/// `ε_A : !_1 A → A`.
pub fn dereliction(xs: &[SemPoint]) -> RelMatrix {
    RelMatrix::relation(bag_points(xs, 1), xs.to_vec(), |a, x| as_bag(a) == Some(&Mset::singleton(x.clone())))
}

/// `δ_{r,s,A} : !_{rs} A → !_r !_s A`, zero when `α = ΣB`.
pub fn digging(r: u32, s: u32, xs: &[SemPoint]) -> RelMatrix {
    let inner = bag_points(xs, s);
    RelMatrix::relation(bag_points(xs, r * s), bag_points(&inner, r), |a, bb| {
        let (Some(a), Some(bb)) = (as_bag(a), as_bag(bb)) else { return false };
        let mut sum = Mset::empty();
        for p in bb.elements() {
            match as_bag(p) {
                Some(m) => sum = sum.add(m),
                None => return false,
            }
        }
        *a == sum
    })
}

/// `m_r : {⋆} → !_r {⋆}` with only `[⋆]` in its support.
pub fn monoidal_unit_literal(r: u32) -> RelMatrix {
    RelMatrix::relation(unit_points(), bag_points(&unit_points(), r), |_, b| {
        as_bag(b) == Some(&Mset::singleton(SemPoint::Star))
    })
}

/// `m_r : {⋆} → !_r {⋆}` supported on every `[⋆, …, ⋆]`.
pub fn monoidal_unit(r: u32) -> RelMatrix {
    RelMatrix::relation(unit_points(), bag_points(&unit_points(), r), |_, _| true)
}

/// `m_{r,A,B} : !_r A ⊗ !_r B → !_r (A ⊗ B)`, zero when `γ` zips `α` with `β`.
pub fn monoidal_product(r: u32, xs: &[SemPoint], ys: &[SemPoint]) -> RelMatrix {
    let src = tensor_points(&bag_points(xs, r), &bag_points(ys, r));
    let tgt = bag_points(&tensor_points(xs, ys), r);
    RelMatrix::relation(src, tgt, |ab, g| {
        let (Some((SemPoint::Bag(a), SemPoint::Bag(b))), Some(g)) = (as_pair(ab), as_bag(g)) else { return false };
        let mut left = Mset::empty();
        let mut right = Mset::empty();
        for p in g.elements() {
            let Some((x, y)) = as_pair(p) else { return false };
            left.insert(x.clone(), 1);
            right.insert(y.clone(), 1);
        }
        left == *a && right == *b
    })
}

/// `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`.
pub fn associator(xs: &[SemPoint], ys: &[SemPoint], zs: &[SemPoint]) -> RelMatrix {
    let src = tensor_points(&tensor_points(xs, ys), zs);
    let tgt = tensor_points(xs, &tensor_points(ys, zs));
    RelMatrix::relation(src, tgt, |l, r| {
        let (Some((ab, c)), Some((a, bc))) = (as_pair(l), as_pair(r)) else { return false };
        let (Some((a1, b1)), Some((b2, c2))) = (as_pair(ab), as_pair(bc)) else { return false };
        a1 == a && b1 == b2 && c == c2
    })
}

/// `A → A ⊗ {⋆}`.
pub fn right_unitor_inv(xs: &[SemPoint]) -> RelMatrix {
    RelMatrix::relation(xs.to_vec(), tensor_points(xs, &unit_points()), |a, t| {
        as_pair(t).is_some_and(|(x, _)| x == a)
    })
}

/// `{⋆} ⊗ A → A`.
pub fn left_unitor(xs: &[SemPoint]) -> RelMatrix {
    RelMatrix::relation(tensor_points(&unit_points(), xs), xs.to_vec(), |t, a| {
        as_pair(t).is_some_and(|(_, y)| y == a)
    })
}

/// Points of the support of a row.
pub fn support_of(m: &RelMatrix, a: &SemPoint) -> BTreeSet<SemPoint> {
    m.iter().filter(|(x, _, _)| *x == a).map(|(_, b, _)| b.clone()).collect()
}
