use std::collections::BTreeSet;
use std::fmt;

use crate::semantics::{interpret, matrix_apply, Caps, InputVector, InterpretOptions, SemError, SemPoint, TropMatrix};
use crate::syntax::{Context, Dialect, Term, Type, TypeError};
use crate::tropical::{Point, TropValue};

/// Resource λ-terms: applications carry finite bags of arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResourceTerm {
    Var(String),
    Lam(String, Type, Box<ResourceTerm>),
    /// `t⟨u₁, …, u_k⟩`; the bag is kept sorted.
    App(Box<ResourceTerm>, Vec<ResourceTerm>),
}

impl ResourceTerm {
    pub fn var(x: &str) -> Self {
        ResourceTerm::Var(x.to_string())
    }

    pub fn lam(x: &str, ty: Type, body: ResourceTerm) -> Self {
        ResourceTerm::Lam(x.to_string(), ty, Box::new(body))
    }

    pub fn app(head: ResourceTerm, mut bag: Vec<ResourceTerm>) -> Self {
        bag.sort();
        ResourceTerm::App(Box::new(head), bag)
    }

    /// Number of free occurrences of `x`.
    pub fn degree(&self, x: &str) -> usize {
        match self {
            ResourceTerm::Var(y) => usize::from(y == x),
            ResourceTerm::Lam(y, _, _) if y == x => 0,
            ResourceTerm::Lam(_, _, b) => b.degree(x),
            ResourceTerm::App(h, bag) => h.degree(x) + bag.iter().map(|u| u.degree(x)).sum::<usize>(),
        }
    }

    /// Largest bag anywhere in the term.
    pub fn max_bag(&self) -> usize {
        match self {
            ResourceTerm::Var(_) => 0,
            ResourceTerm::Lam(_, _, b) => b.max_bag(),
            ResourceTerm::App(h, bag) => bag.iter().map(|u| u.max_bag()).chain([bag.len(), h.max_bag()]).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for ResourceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceTerm::Var(x) => write!(f, "{x}"),
            ResourceTerm::Lam(x, ty, b) => write!(f, "(\\{x}:{ty}. {b})"),
            ResourceTerm::App(h, bag) => {
                let parts: Vec<String> = bag.iter().map(|u| u.to_string()).collect();
                write!(f, "{h}<{}>", parts.join(", "))
            }
        }
    }
}

/// Index multisets of size exactly `k` over `0..n`, in lexicographic order.
fn index_bags(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Elements of `T(t)` whose bags have at most `cap` elements, bags by
/// nondecreasing size.
pub fn taylor_expand(t: &Term, cap: usize) -> Result<Vec<ResourceTerm>, SemError> {
    let out = match t {
        Term::Var(x) => vec![ResourceTerm::var(x)],
        Term::Lam(x, ty, b) => taylor_expand(b, cap)?.into_iter().map(|u| ResourceTerm::lam(x, ty.clone(), u)).collect(),
        Term::App(m, n) => {
            let heads = taylor_expand(m, cap)?;
            let args = taylor_expand(n, cap)?;
            let mut out = Vec::new();
            let mut seen = BTreeSet::new();
            for k in 0..=cap {
                for h in &heads {
                    for idx in index_bags(args.len(), k) {
                        let r = ResourceTerm::app(h.clone(), idx.iter().map(|&i| args[i].clone()).collect());
                        if seen.insert(r.clone()) {
                            out.push(r);
                        }
                    }
                }
            }
            out
        }
        other => {
            return Err(SemError::Type(TypeError::Rule {
                rule: "taylor",
                msg: format!("`{other}` is not a simply typed term"),
            }))
        }
    };
    Ok(out)
}

/// `t⟨u₁, …, u_k⟩ ↦ D[…D[t, u₁]…, u_k] 0`.
pub fn elaborate(r: &ResourceTerm) -> Term {
    match r {
        ResourceTerm::Var(x) => Term::var(x),
        ResourceTerm::Lam(x, ty, b) => Term::lam(x, ty.clone(), elaborate(b)),
        ResourceTerm::App(h, bag) => {
            let d = bag.iter().fold(elaborate(h), |acc, u| Term::dapp(acc, elaborate(u)));
            Term::app(d, Term::Zero)
        }
    }
}

pub fn interpret_resource(r: &ResourceTerm, ctx: &Context, caps: Caps) -> Result<TropMatrix, SemError> {
    let opts = InterpretOptions { caps, ..Default::default() };
    Ok(interpret(Dialect::Stdlc, ctx, &elaborate(r), &opts)?.matrix)
}

/// `(⟦t⟧^!(x)_b, min_{u ∈ T(t), bags ≤ cap} ⟦u⟧^!(x)_b)`.
pub fn taylor_gap(
    t: &Term,
    ctx: &Context,
    x: &InputVector,
    b: &SemPoint,
    degree_cap: usize,
    caps: Caps,
) -> Result<(TropValue, TropValue), SemError> {
    let opts = InterpretOptions { caps, ..Default::default() };
    let params = Point::new();
    let direct = interpret(Dialect::Stlc, ctx, t, &opts)?.matrix;
    let direct = matrix_apply(&direct, x, &params)?.remove(b).unwrap_or(TropValue::Inf);
    let mut expanded = TropValue::Inf;
    for r in taylor_expand(t, degree_cap)? {
        let m = interpret_resource(&r, ctx, caps)?;
        if let Some(v) = matrix_apply(&m, x, &params)?.remove(b) {
            expanded = expanded.min_with(&v);
        }
    }
    Ok((direct, expanded))
}
