use super::{Reading, Term, Weight};

/// Replaces every biased choice `M (+p) N` by `w_l . M + w_r . N`.
pub fn translate_prob(t: &Term, reading: Reading) -> Term {
    match t {
        Term::Choice(b, m, n) => {
            let (wl, wr) = b.weights(reading);
            Term::nd(
                Term::scalar(wl, translate_prob(m, reading)),
                Term::scalar(wr, translate_prob(n, reading)),
            )
        }
        _ => t.map_children(|c| translate_prob(c, reading)),
    }
}

/// Charges `cost` for every abstraction body and every fixpoint unfolding.
pub fn translate_nondet(t: &Term, cost: &Weight) -> Term {
    match t {
        Term::Lam(x, ty, body) => Term::lam(x, ty.clone(), Term::scalar(cost.clone(), translate_nondet(body, cost))),
        Term::Fix(m) => Term::fix(Term::scalar(cost.clone(), translate_nondet(m, cost))),
        _ => t.map_children(|c| translate_nondet(c, cost)),
    }
}
