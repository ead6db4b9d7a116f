use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::matrix::{empty_row, row_add, rows_within, unit_row, Diagnostics, Row, TropMatrix, Warning};
use super::{Caps, Enumerator, Mset, Obj, SemError, SemPoint};
use crate::tropical::TropSeries;

/// Caps, the point enumerator and collected warnings.
#[derive(Debug, Default)]
pub struct Model {
    pub caps: Caps,
    pub diag: Diagnostics,
    en: Enumerator,
}

impl Model {
    pub fn new(caps: Caps) -> Self {
        Model { caps, diag: Diagnostics::default(), en: Enumerator::default() }
    }

    pub fn points(&mut self, obj: &Obj) -> Result<Rc<Vec<SemPoint>>, SemError> {
        self.en.points(obj, &self.caps)
    }

    fn warn(&mut self, w: Warning) {
        self.diag.warn(w);
    }
}

type ByPoint = HashMap<SemPoint, Vec<(Row, TropSeries)>>;

fn by_codomain(t: &TropMatrix) -> ByPoint {
    let mut out: ByPoint = HashMap::new();
    for (r, b, s) in t.iter() {
        out.entry(b.clone()).or_default().push((r.clone(), s.clone()));
    }
    out
}

/// All ways of choosing, for every point of `elems`, an entry of the argument
/// with that codomain point; rows are summed and weights multiplied.
fn extend(
    start: &Row,
    w: &TropSeries,
    elems: &[SemPoint],
    by: &ByPoint,
    model: &mut Model,
    what: &str,
) -> BTreeMap<Row, TropSeries> {
    let mut acc: BTreeMap<Row, TropSeries> = BTreeMap::from([(start.clone(), w.clone())]);
    for e in elems {
        let Some(choices) = by.get(e) else {
            return BTreeMap::new();
        };
        let mut next: BTreeMap<Row, TropSeries> = BTreeMap::new();
        let mut dropped = false;
        for (r, s) in &acc {
            for (r2, s2) in choices {
                let row = row_add(r, r2);
                if !rows_within(&row, &model.caps) {
                    dropped = true;
                    continue;
                }
                let v = s.mul(s2);
                match next.get_mut(&row) {
                    Some(old) => *old = old.min(&v),
                    None => {
                        next.insert(row, v);
                    }
                }
            }
        }
        if dropped {
            model.warn(Warning::CapTooSmall(what.to_string()));
        }
        acc = next;
    }
    acc
}

/// `s ∘_! t`. When `s` has several domain components, `t` must land in their
/// cartesian product.
pub fn kleisli_compose(s: &TropMatrix, t: &TropMatrix, model: &mut Model) -> Result<TropMatrix, SemError> {
    let tagged = match s.arity() {
        1 if s.dom[0].1 == t.cod => false,
        k if k > 1 && t.cod == Obj::With(s.dom_objs()) => true,
        _ => return Err(SemError::Shape(format!("cannot compose {} after {}", s.shape(), t.shape()))),
    };
    let by = by_codomain(t);
    let mut out = TropMatrix::new(t.dom.clone(), s.cod.clone());
    let start = empty_row(t.arity());
    for (r, c, w) in s.iter() {
        let elems: Vec<SemPoint> = r
            .iter()
            .enumerate()
            .flat_map(|(i, m)| {
                m.elements().into_iter().map(move |p| if tagged { SemPoint::tag(i as u32, p.clone()) } else { p.clone() })
            })
            .collect();
        for (row, v) in extend(&start, w, &elems, &by, model, "composition") {
            out.insert(row, c.clone(), v);
        }
    }
    Ok(out)
}

/// `ev ∘_! ⟨m, n⟩` computed directly: the interpretation of an application.
pub fn combine_app(m: &TropMatrix, n: &TropMatrix, model: &mut Model) -> Result<TropMatrix, SemError> {
    let Obj::Arrow(_, b, _) = &m.cod else {
        return Err(SemError::Shape(format!("{} is not a function matrix", m.shape())));
    };
    if m.dom_objs() != n.dom_objs() {
        return Err(SemError::Shape(format!("apply {} to {}", m.shape(), n.shape())));
    }
    let by = by_codomain(n);
    let mut out = TropMatrix::new(m.dom.clone(), (**b).clone());
    for (r, p, w) in m.iter() {
        let SemPoint::Pair(mu, y) = p else { continue };
        let elems: Vec<SemPoint> = mu.elements().into_iter().cloned().collect();
        for (row, v) in extend(r, w, &elems, &by, model, "application") {
            out.insert(row, (**y).clone(), v);
        }
    }
    Ok(out)
}

/// Interpretation of `D[M, N]`: `(ρ, b) ↦ min_{a} M_{(ρ+[a], b)} + N_a`.
pub fn dapp_combine(m: &TropMatrix, n: &TropMatrix, model: &mut Model) -> Result<TropMatrix, SemError> {
    if !matches!(m.cod, Obj::Arrow(..)) || m.dom_objs() != n.dom_objs() {
        return Err(SemError::Shape(format!("D[{}, {}]", m.shape(), n.shape())));
    }
    let by = by_codomain(n);
    let mut out = TropMatrix::new(m.dom.clone(), m.cod.clone());
    let mut dropped = false;
    for (r, p, w) in m.iter() {
        let SemPoint::Pair(rho, y) = p else { continue };
        for (a, _) in rho.iter() {
            let Some(rest) = rho.remove_one(a) else { continue };
            for (r2, s2) in by.get(a).into_iter().flatten() {
                let row = row_add(r, r2);
                if rows_within(&row, &model.caps) {
                    out.insert(row, SemPoint::pair(rest.clone(), (**y).clone()), w.mul(s2));
                } else {
                    dropped = true;
                }
            }
        }
    }
    if dropped {
        model.warn(Warning::CapTooSmall("differential application".into()));
    }
    Ok(out)
}

/// Projection onto component `i`: entry `0` at `(e_i[a], a)`.
pub fn proj(dom: Vec<(String, Obj)>, i: usize, model: &mut Model) -> Result<TropMatrix, SemError> {
    let obj = dom.get(i).map(|(_, o)| o.clone()).ok_or_else(|| SemError::Shape(format!("no component {i}")))?;
    let n = dom.len();
    let mut out = TropMatrix::new(dom, obj.clone());
    for a in model.points(&obj)?.iter() {
        out.insert(unit_row(n, i, a.clone()), a.clone(), TropSeries::unit());
    }
    Ok(out)
}

/// Dereliction: the coKleisli identity.
pub fn identity(x: &Obj, model: &mut Model) -> Result<TropMatrix, SemError> {
    proj(vec![("x".into(), x.clone())], 0, model)
}

/// `⟨f₁, …, f_k⟩` into the cartesian product of the codomains.
pub fn pairing(fs: &[TropMatrix]) -> Result<TropMatrix, SemError> {
    let first = fs.first().ok_or_else(|| SemError::Shape("empty pairing".into()))?;
    if fs.iter().any(|f| f.dom_objs() != first.dom_objs()) {
        return Err(SemError::Shape("pairing of matrices with different domains".into()));
    }
    let cod = Obj::With(fs.iter().map(|f| f.cod.clone()).collect());
    let mut out = TropMatrix::new(first.dom.clone(), cod);
    for (i, f) in fs.iter().enumerate() {
        for (r, b, s) in f.iter() {
            out.insert(r.clone(), SemPoint::tag(i as u32, b.clone()), s.clone());
        }
    }
    Ok(out)
}

/// `ev : !((A ⇒ B) & A) → B`, entry `0` at `([(ρ, y)] ⊕ ρ, y)`.
pub fn ev(a: &Obj, b: &Obj, grade: Option<u32>, model: &mut Model) -> Result<TropMatrix, SemError> {
    let arrow = Obj::Arrow(Box::new(a.clone()), Box::new(b.clone()), grade);
    let mut out = TropMatrix::new(vec![("f".into(), arrow.clone()), ("x".into(), a.clone())], b.clone());
    for p in model.points(&arrow)?.iter() {
        if let SemPoint::Pair(rho, y) = p {
            out.insert(vec![Mset::singleton(p.clone()), rho.clone()], (**y).clone(), TropSeries::unit());
        }
    }
    Ok(out)
}

/// `Λ`: moves the last domain component into the codomain.
pub fn curry(f: &TropMatrix, grade: Option<u32>, model: &mut Model) -> Result<TropMatrix, SemError> {
    let (last, rest) = f.dom.split_last().ok_or_else(|| SemError::Shape("curry of a closed matrix".into()))?;
    let cod = Obj::Arrow(Box::new(last.1.clone()), Box::new(f.cod.clone()), grade);
    let bound = cod.bound(&model.caps);
    let mut out = TropMatrix::new(rest.to_vec(), cod);
    let mut dropped = false;
    for (r, b, s) in f.iter() {
        let (mu, gamma) = r.split_last().expect("row arity");
        if mu.size() > bound {
            dropped = true;
            continue;
        }
        out.insert(gamma.to_vec(), SemPoint::pair(mu.clone(), b.clone()), s.clone());
    }
    if dropped {
        model.warn(Warning::CapTooSmall("abstraction".into()));
    }
    Ok(out)
}

/// `Λ⁻`: exposes the argument of a function matrix as a new last component.
pub fn uncurry(f: &TropMatrix, name: &str) -> Result<TropMatrix, SemError> {
    let Obj::Arrow(a, b, _) = &f.cod else {
        return Err(SemError::Shape(format!("{} is not a function matrix", f.shape())));
    };
    let mut dom = f.dom.clone();
    dom.push((name.to_string(), (**a).clone()));
    let mut out = TropMatrix::new(dom, (**b).clone());
    for (r, p, s) in f.iter() {
        if let SemPoint::Pair(mu, y) = p {
            let mut row = r.clone();
            row.push(mu.clone());
            out.insert(row, (**y).clone(), s.clone());
        }
    }
    Ok(out)
}

/// `(Dt)_{[a] ⊕ ρ, b} = t_{ρ+[a], b}`; the first component of the result is
/// the linear one.
pub fn diff_op(t: &TropMatrix) -> Result<TropMatrix, SemError> {
    if t.arity() != 1 {
        return Err(SemError::Shape(format!("D expects a single input, got {}", t.shape())));
    }
    let (name, x) = t.dom[0].clone();
    let mut out = TropMatrix::new(vec![(format!("d{name}"), x.clone()), (name, x)], t.cod.clone());
    for (r, b, s) in t.iter() {
        for (a, _) in r[0].iter() {
            if let Some(rest) = r[0].remove_one(a) {
                out.insert(vec![Mset::singleton(a.clone()), rest], b.clone(), s.clone());
            }
        }
    }
    Ok(out)
}
