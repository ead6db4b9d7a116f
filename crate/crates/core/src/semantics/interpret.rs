use super::ccc::{combine_app, curry, dapp_combine, proj, Model};
use super::matrix::{row_add, rows_within, TropMatrix, Warning};
use super::{Caps, Obj, SemError, SemPoint};
use crate::syntax::{infer_graded, typecheck, Context, Dialect, Reading, Term, Type};
use crate::tropical::TropSeries;

#[derive(Clone, Copy, Debug, Default)]
pub struct InterpretOptions {
    pub caps: Caps,
    pub reading: Reading,
}

#[derive(Clone, Debug)]
pub struct Interpretation {
    pub matrix: TropMatrix,
    pub ty: Type,
    pub warnings: Vec<Warning>,
    /// Every fixpoint iteration reached a matrix it could not improve.
    pub stabilized: bool,
}

/// `⟦Γ ⊢ t : A⟧`, computed bottom-up over the typing derivation.
pub fn interpret(dialect: Dialect, ctx: &Context, t: &Term, opts: &InterpretOptions) -> Result<Interpretation, SemError> {
    let ty = match dialect {
        Dialect::Bstlc => infer_graded(ctx, t)?.1,
        d => typecheck(d, ctx, t)?,
    };
    let mut it = Interp { dialect, reading: opts.reading, model: Model::new(opts.caps), stabilized: true };
    let mut scope = ctx.clone();
    let (matrix, _) = it.go(&mut scope, t, Some(&ty))?;
    Ok(Interpretation {
        matrix,
        ty,
        warnings: it.model.diag.warnings.into_iter().collect(),
        stabilized: it.stabilized,
    })
}

struct Interp {
    dialect: Dialect,
    reading: Reading,
    model: Model,
    stabilized: bool,
}

fn domain(ctx: &[(String, Type)]) -> Vec<(String, Obj)> {
    ctx.iter().map(|(x, t)| (x.clone(), Obj::from_type(t))).collect()
}

fn shape(msg: String) -> SemError {
    SemError::Shape(msg)
}

impl Interp {
    fn go(&mut self, ctx: &mut Context, t: &Term, want: Option<&Type>) -> Result<(TropMatrix, Type), SemError> {
        match t {
            Term::Var(x) => {
                let i = ctx.iter().rposition(|(y, _)| y == x).ok_or_else(|| shape(format!("unbound `{x}`")))?;
                Ok((proj(domain(ctx), i, &mut self.model)?, ctx[i].1.clone()))
            }
            Term::Lam(x, a, body) => {
                let graded = match self.dialect {
                    Dialect::Bstlc => Some(infer_graded(ctx, t)?.1),
                    _ => None,
                };
                ctx.push((x.clone(), a.clone()));
                let inner = self.go(ctx, body, None);
                ctx.pop();
                let (m, b) = inner?;
                let (grade, ty) = match graded {
                    Some(ty @ Type::Graded(n, _, _)) => {
                        if n > self.model.caps.k_max {
                            self.model.diag.warn(Warning::GradeAboveCap(n));
                        }
                        (Some(n), ty)
                    }
                    _ => (None, Type::arrow(a.clone(), b)),
                };
                Ok((curry(&m, grade, &mut self.model)?, ty))
            }
            Term::App(m, n) => {
                let (fm, fty) = self.go(ctx, m, None)?;
                let (a, b) = fty.split_arrow().ok_or_else(|| shape(format!("`{m}` is not a function")))?;
                let (a, b) = (a.clone(), b.clone());
                let (nm, _) = self.go(ctx, n, Some(&a))?;
                Ok((combine_app(&fm, &nm, &mut self.model)?, b))
            }
            Term::DApp(m, n) => {
                let (fm, fty) = self.go(ctx, m, None)?;
                let a = fty.split_arrow().ok_or_else(|| shape(format!("`{m}` is not a function")))?.0.clone();
                let (nm, _) = self.go(ctx, n, Some(&a))?;
                Ok((dapp_combine(&fm, &nm, &mut self.model)?, fty))
            }
            Term::Zero => {
                let ty = want.ok_or_else(|| shape("cannot interpret 0 without a type".into()))?;
                Ok((TropMatrix::new(domain(ctx), Obj::from_type(ty)), ty.clone()))
            }
            Term::Sum(ts) => {
                let (mut acc, ty) = self.go(ctx, &ts[0], want)?;
                for s in &ts[1..] {
                    acc = acc.min(&self.go(ctx, s, Some(&ty))?.0)?;
                }
                Ok((acc, ty))
            }
            Term::NDSum(l, r) => {
                let (ml, ty) = self.go(ctx, l, want)?;
                let (mr, _) = self.go(ctx, r, Some(&ty))?;
                Ok((ml.min(&mr)?, ty))
            }
            Term::Scalar(w, m) => {
                let (mm, ty) = self.go(ctx, m, want)?;
                Ok((mm.shift(&w.as_series()), ty))
            }
            Term::Choice(bias, l, r) => {
                let (wl, wr) = bias.weights(self.reading);
                let (ml, ty) = self.go(ctx, l, want)?;
                let (mr, _) = self.go(ctx, r, Some(&ty))?;
                Ok((ml.shift(&wl.as_series()).min(&mr.shift(&wr.as_series()))?, ty))
            }
            Term::Num(n) => {
                let mut out = TropMatrix::new(domain(ctx), Obj::Nat);
                if *n > self.model.caps.n_max {
                    self.model.diag.warn(Warning::NumeralAboveCap(*n));
                } else {
                    out.insert(vec![Default::default(); ctx.len()], SemPoint::Nat(*n), TropSeries::unit());
                }
                Ok((out, Type::Nat))
            }
            Term::Succ(m) | Term::Pred(m) => {
                let succ = matches!(t, Term::Succ(_));
                let (mm, _) = self.go(ctx, m, Some(&Type::Nat))?;
                let mut out = TropMatrix::new(mm.dom.clone(), Obj::Nat);
                for (r, p, s) in mm.iter() {
                    let SemPoint::Nat(k) = p else { continue };
                    let k2 = if succ { k + 1 } else { k.saturating_sub(1) };
                    if k2 > self.model.caps.n_max {
                        self.model.diag.warn(Warning::NumeralAboveCap(k2));
                        continue;
                    }
                    out.insert(r.clone(), SemPoint::Nat(k2), s.clone());
                }
                Ok((out, Type::Nat))
            }
            Term::Ifz(c, m, n) => {
                let (mc, _) = self.go(ctx, c, Some(&Type::Nat))?;
                let (mm, ty) = self.go(ctx, m, want)?;
                let (mn, _) = self.go(ctx, n, Some(&ty))?;
                let mut out = TropMatrix::new(mm.dom.clone(), mm.cod.clone());
                let mut dropped = false;
                for (r0, p, s0) in mc.iter() {
                    let branch = if *p == SemPoint::Nat(0) { &mm } else { &mn };
                    for (r1, b, s1) in branch.iter() {
                        let row = row_add(r0, r1);
                        if rows_within(&row, &self.model.caps) {
                            out.insert(row, b.clone(), s0.mul(s1));
                        } else {
                            dropped = true;
                        }
                    }
                }
                if dropped {
                    self.model.diag.warn(Warning::CapTooSmall("conditional".into()));
                }
                Ok((out, ty))
            }
            Term::Fix(m) => {
                let (fm, fty) = self.go(ctx, m, None)?;
                let a = fty.split_arrow().ok_or_else(|| shape(format!("`{m}` is not a function")))?.0.clone();
                let mut cur = TropMatrix::new(domain(ctx), Obj::from_type(&a));
                let mut stable = false;
                for _ in 0..self.model.caps.f_max {
                    let next = combine_app(&fm, &cur, &mut self.model)?.min(&cur)?.prune();
                    if next == cur {
                        stable = true;
                        break;
                    }
                    cur = next;
                }
                if !stable {
                    self.stabilized = false;
                    self.model.diag.warn(Warning::FixNotStable(self.model.caps.f_max));
                }
                Ok((cur, a))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{check_boolean, matrix_apply, InputVector, Mset};
    use crate::syntax::{parse, parse_context};
    use crate::tropical::{MultiDegree, Point, TropValue};

    fn run(d: Dialect, ctx: &str, src: &str) -> Interpretation {
        let ctx = parse_context(ctx).unwrap();
        interpret(d, &ctx, &parse(src, d).unwrap(), &InterpretOptions::default()).unwrap()
    }

    fn stars(n: u32) -> Mset {
        Mset::repeat(SemPoint::Star, n)
    }

    #[test]
    fn identity_has_one_entry() {
        let i = run(Dialect::Stlc, "", "\\x:o. x");
        let p = SemPoint::pair(stars(1), SemPoint::Star);
        assert_eq!(i.matrix.len(), 1);
        assert_eq!(i.matrix.get(&vec![], &p), TropSeries::unit());
    }

    #[test]
    fn zxx_entries() {
        let i = run(Dialect::Stlc, "x: o, z: o -> o -> o", "z x x");
        assert!(check_boolean(&i.matrix));
        let mut expected = 0;
        for n in 0..=4u32 {
            for n2 in 0..=(4 - n) {
                let zp = SemPoint::pair(stars(n), SemPoint::pair(stars(n2), SemPoint::Star));
                let row = vec![stars(n + n2), Mset::singleton(zp)];
                assert_eq!(i.matrix.get(&row, &SemPoint::Star), TropSeries::unit(), "n={n} n'={n2}");
                expected += 1;
            }
        }
        assert_eq!(i.matrix.len(), expected);

        let zp = SemPoint::pair(stars(1), SemPoint::pair(stars(1), SemPoint::Star));
        let x: InputVector = [((0, SemPoint::Star), TropValue::int(1)), ((1, zp), TropValue::zero())].into();
        let out = matrix_apply(&i.matrix, &x, &Point::new()).unwrap();
        assert_eq!(out[&SemPoint::Star], TropValue::int(2));
    }

    #[test]
    fn scalars_break_discreteness() {
        let i = run(Dialect::Pcfl, "", "2.3");
        assert!(!check_boolean(&i.matrix));
        assert_eq!(i.matrix.get(&vec![], &SemPoint::Nat(3)), TropSeries::constant(TropValue::int(2)));
        let j = run(Dialect::Pcfl, "", "2.3 + 1.5");
        assert_eq!(j.matrix.get(&vec![], &SemPoint::Nat(5)), TropSeries::constant(TropValue::int(1)));
    }

    #[test]
    fn recursive_choice_collapses() {
        let i = run(Dialect::Pcfl, "", "Y (\\x:Nat. True (+a,b) x)");
        assert!(i.stabilized);
        assert_eq!(i.matrix.get(&vec![], &SemPoint::Nat(0)), TropSeries::monomial(MultiDegree::var("a", 1), TropValue::zero()));
        assert!(i.matrix.get(&vec![], &SemPoint::Nat(1)).is_empty());
    }

    #[test]
    fn pcf_arithmetic() {
        let i = run(Dialect::Pcfl, "", "ifz(pred 1, succ 2, 7)");
        assert_eq!(i.matrix.len(), 1);
        assert_eq!(i.matrix.get(&vec![], &SemPoint::Nat(3)), TropSeries::unit());
        let r = run(
            Dialect::Pcfl,
            "",
            "Y (\\f:Nat -> Nat. \\n:Nat. ifz(n, 0, succ (succ (f (pred n))))) 3",
        );
        assert!(r.stabilized);
        assert_eq!(r.matrix.get(&vec![], &SemPoint::Nat(6)), TropSeries::unit());
        assert_eq!(r.matrix.len(), 1);
    }

    #[test]
    fn differential_application() {
        let i = run(Dialect::Stdlc, "f: o -> o, a: o", "D[f, a] 0");
        let fp = Mset::singleton(SemPoint::pair(stars(1), SemPoint::Star));
        assert_eq!(i.matrix.get(&vec![fp, stars(1)], &SemPoint::Star), TropSeries::unit());
        assert_eq!(i.matrix.len(), 1);
        let j = run(Dialect::Stdlc, "a: o", "D[\\x:o. x, a]");
        let p = SemPoint::pair(Mset::empty(), SemPoint::Star);
        assert_eq!(j.matrix.get(&vec![stars(1)], &p), TropSeries::unit());
        assert_eq!(j.matrix.len(), 1);
    }

    #[test]
    fn graded_arrows_bound_multisets() {
        let i = run(Dialect::Bstlc, "z: !1 o -o !1 o -o o", "\\x:o. z x x");
        assert_eq!(i.ty.to_string(), "!2 o -o o");
        assert!(check_boolean(&i.matrix));
        assert!(i.matrix.iter().all(|(r, p, _)| r[0].size() == 1 && matches!(p, SemPoint::Pair(m, _) if m.size() <= 2)));
        assert!(i.matrix.iter().any(|(_, p, _)| matches!(p, SemPoint::Pair(m, _) if m.size() == 2)));
    }
}
