use crate::semantics::{row_add, rows_within, uncurry, Caps, Mset, SemError, TropMatrix};

/// `(f ⋆ g)_{ρ⊕μ, y} = min { g_{ρ',x} + f_{ρ''⊕(μ+x), y} | x, ρ = ρ' + ρ'' }`
/// for `f : !(C & A) → B` (last component `A`) and `g : !C → A`.
pub fn star(f: &TropMatrix, g: &TropMatrix, caps: &Caps) -> Result<TropMatrix, SemError> {
    let Some(((_, a), c)) = f.dom.split_last() else {
        return Err(SemError::Shape("star needs a matrix with an argument slot".into()));
    };
    let c_objs: Vec<_> = c.iter().map(|(_, o)| o.clone()).collect();
    if g.dom_objs() != c_objs || &g.cod != a {
        return Err(SemError::Shape(format!("star of {} with {}", f.shape(), g.shape())));
    }
    let mut out = TropMatrix::new(f.dom.clone(), f.cod.clone());
    for (r, y, s) in f.iter() {
        let (nu, rho2) = r.split_last().expect("row arity");
        for (x, _) in nu.iter() {
            let Some(mu) = nu.remove_one(x) else { continue };
            for (rho1, x2, s2) in g.iter() {
                if x2 != x {
                    continue;
                }
                let mut row = row_add(&rho2.to_vec(), rho1);
                row.push(mu.clone());
                if rows_within(&row, caps) {
                    out.insert(row, y.clone(), s.mul(s2));
                }
            }
        }
    }
    Ok(out)
}

/// `(((Λ⁻t) ⋆ s) ⋯ ⋆ s) ∘ ⟨id, ∞⟩` with `n` stars.
pub fn taylor_term(t: &TropMatrix, s: &TropMatrix, n: usize, caps: &Caps) -> Result<TropMatrix, SemError> {
    let mut u = uncurry(t, "arg")?;
    for _ in 0..n {
        u = star(&u, s, caps)?;
    }
    let mut out = TropMatrix::new(t.dom.clone(), u.cod.clone());
    for (r, y, w) in u.iter() {
        let (mu, gamma) = r.split_last().expect("row arity");
        if *mu == Mset::empty() {
            out.insert(gamma.to_vec(), y.clone(), w.clone());
        }
    }
    Ok(out)
}
