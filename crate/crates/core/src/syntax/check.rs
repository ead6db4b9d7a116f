use std::collections::BTreeMap;
use std::fmt;

use super::{Dialect, Term, Type};

pub type Context = Vec<(String, Type)>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("[{rule}] {msg}")]
    Rule { rule: &'static str, msg: String },
    #[error("grade mismatch for `{var}`: used {used} times, declared {declared}")]
    GradeMismatch { var: String, used: u32, declared: u32 },
}

fn fail<T>(rule: &'static str, msg: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::Rule { rule, msg: msg.into() })
}

fn lookup<'a>(ctx: &'a Context, x: &str) -> Option<&'a Type> {
    ctx.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
}

fn type_ok(ty: &Type, d: Dialect) -> bool {
    match ty {
        Type::Ground(_) => true,
        Type::Nat => d == Dialect::Pcfl,
        Type::Arrow(a, b) => d != Dialect::Bstlc && type_ok(a, d) && type_ok(b, d),
        Type::Graded(_, a, b) => d == Dialect::Bstlc && type_ok(a, d) && type_ok(b, d),
    }
}

struct Checker {
    dialect: Dialect,
}

impl Checker {
    fn allowed(&self, t: &Term) -> Result<(), TypeError> {
        let d = self.dialect;
        let ok = match t {
            Term::Var(_) | Term::Lam(..) | Term::App(..) => true,
            Term::DApp(..) | Term::Zero | Term::Sum(_) => d == Dialect::Stdlc,
            _ => d == Dialect::Pcfl,
        };
        if ok {
            Ok(())
        } else {
            fail("syntax", format!("`{t}` is not a {d} term"))
        }
    }

    fn check(&self, ctx: &mut Context, t: &Term, want: &Type) -> Result<(), TypeError> {
        match t {
            Term::Zero => {
                self.allowed(t)?;
                if type_ok(want, self.dialect) {
                    Ok(())
                } else {
                    fail("zero", format!("type {want} is not a {} type", self.dialect))
                }
            }
            Term::Sum(ts) => {
                self.allowed(t)?;
                ts.iter().try_for_each(|s| self.check(ctx, s, want))
            }
            Term::Lam(x, a, body) if matches!(want, Type::Arrow(wa, _) if **wa == *a) => {
                self.allowed(t)?;
                let Type::Arrow(_, b) = want else { unreachable!() };
                ctx.push((x.clone(), a.clone()));
                let r = self.check(ctx, body, b);
                ctx.pop();
                r
            }
            Term::App(m, n) if self.synth(ctx, m).is_err() => {
                let a = self.synth(ctx, n)?;
                self.check(ctx, m, &Type::arrow(a, want.clone()))
            }
            Term::DApp(m, n) if self.dialect == Dialect::Stdlc => match want {
                Type::Arrow(a, _) => {
                    self.check(ctx, m, want)?;
                    self.check(ctx, n, a)
                }
                _ => fail("dapp", format!("`{t}` cannot have type {want}")),
            },
            _ => {
                let got = self.synth(ctx, t)?;
                if &got == want {
                    Ok(())
                } else {
                    fail("conv", format!("`{t}` has type {got}, expected {want}"))
                }
            }
        }
    }

    fn synth(&self, ctx: &mut Context, t: &Term) -> Result<Type, TypeError> {
        self.allowed(t)?;
        match t {
            Term::Var(x) => lookup(ctx, x).cloned().map_or_else(|| fail("var", format!("unbound variable `{x}`")), Ok),
            Term::Lam(x, a, body) => {
                if !type_ok(a, self.dialect) {
                    return fail("abs", format!("type {a} is not a {} type", self.dialect));
                }
                ctx.push((x.clone(), a.clone()));
                let b = self.synth(ctx, body);
                ctx.pop();
                Ok(Type::arrow(a.clone(), b?))
            }
            Term::App(m, n) => match self.synth(ctx, m)? {
                Type::Arrow(a, b) => {
                    self.check(ctx, n, &a)?;
                    Ok(*b)
                }
                other => fail("app", format!("`{m}` has type {other}, not a function type")),
            },
            Term::DApp(m, n) => match self.synth(ctx, m)? {
                Type::Arrow(a, b) => {
                    self.check(ctx, n, &a)?;
                    Ok(Type::Arrow(a, b))
                }
                other => fail("dapp", format!("`{m}` has type {other}, not a function type")),
            },
            Term::Zero => fail("zero", "cannot infer the type of 0 without context"),
            Term::Sum(ts) => {
                let ty = self.synth(ctx, &ts[0])?;
                ts[1..].iter().try_for_each(|s| self.check(ctx, s, &ty))?;
                Ok(ty)
            }
            Term::Scalar(_, m) => self.synth(ctx, m),
            Term::Choice(_, m, n) | Term::NDSum(m, n) => {
                let ty = self.synth(ctx, m)?;
                self.check(ctx, n, &ty)?;
                Ok(ty)
            }
            Term::Num(_) => Ok(Type::Nat),
            Term::Succ(m) | Term::Pred(m) => {
                self.check(ctx, m, &Type::Nat)?;
                Ok(Type::Nat)
            }
            Term::Ifz(c, m, n) => {
                self.check(ctx, c, &Type::Nat)?;
                let ty = self.synth(ctx, m)?;
                self.check(ctx, n, &ty)?;
                Ok(ty)
            }
            Term::Fix(m) => match self.synth(ctx, m)? {
                Type::Arrow(a, b) if a == b => Ok(*a),
                other => fail("fix", format!("`{m}` has type {other}, expected A -> A")),
            },
        }
    }
}

pub fn typecheck(dialect: Dialect, ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    if dialect == Dialect::Bstlc {
        let g = GradedContext(ctx.iter().map(|(x, ty)| (x.clone(), u32::MAX, ty.clone())).collect());
        return typecheck_bstlc(&g, t).map(|j| j.ty);
    }
    for (x, ty) in ctx {
        if !type_ok(ty, dialect) {
            return fail("ctx", format!("`{x}: {ty}` is not a {dialect} declaration"));
        }
    }
    Checker { dialect }.synth(&mut ctx.clone(), t)
}

pub fn typecheck_stlc(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    typecheck(Dialect::Stlc, ctx, t)
}

pub fn typecheck_stdlc(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    typecheck(Dialect::Stdlc, ctx, t)
}

pub fn typecheck_pcfl(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    typecheck(Dialect::Pcfl, ctx, t)
}

/// Checks `t` against a declared type in a given dialect (needed for `0`).
pub fn check_against(dialect: Dialect, ctx: &Context, t: &Term, ty: &Type) -> Result<(), TypeError> {
    Checker { dialect }.check(&mut ctx.clone(), t, ty)
}

/// `x1 :_{n1} A1, …`; a variable appears at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedContext(pub Vec<(String, u32, Type)>);

impl GradedContext {
    pub fn grade(&self, x: &str) -> u32 {
        self.0.iter().find(|(y, _, _)| y == x).map_or(0, |(_, n, _)| *n)
    }

    pub fn lookup(&self, x: &str) -> Option<&Type> {
        self.0.iter().find(|(y, _, _)| y == x).map(|(_, _, t)| t)
    }

    /// `Γ + Δ`: grades of shared variables add up.
    pub fn add(&self, other: &GradedContext) -> GradedContext {
        let mut out = self.clone();
        for (x, n, ty) in &other.0 {
            match out.0.iter_mut().find(|(y, _, _)| y == x) {
                Some(e) => e.1 = e.1.saturating_add(*n),
                None => out.0.push((x.clone(), *n, ty.clone())),
            }
        }
        out
    }

    /// `nΓ`
    pub fn scale(&self, n: u32) -> GradedContext {
        GradedContext(self.0.iter().map(|(x, m, t)| (x.clone(), m.saturating_mul(n), t.clone())).collect())
    }
}

impl fmt::Display for GradedContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(x, n, t)| format!("{x} :{n} {t}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Result of grade inference: the least usage of every free variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BJudgement {
    pub ty: Type,
    pub usage: GradedContext,
}

pub(crate) fn infer_graded(ctx: &[(String, Type)], t: &Term) -> Result<(BTreeMap<String, u32>, Type), TypeError> {
    match t {
        Term::Var(x) => match ctx.iter().rev().find(|(y, _)| y == x) {
            Some((_, ty)) => Ok((BTreeMap::from([(x.clone(), 1)]), ty.clone())),
            None => fail("var", format!("unbound variable `{x}`")),
        },
        Term::Lam(x, a, body) => {
            if !type_ok(a, Dialect::Bstlc) {
                return fail("abs", format!("type {a} is not a bstlc type"));
            }
            let mut inner = ctx.to_vec();
            inner.push((x.clone(), a.clone()));
            let (mut usage, b) = infer_graded(&inner, body)?;
            let n = usage.remove(x).unwrap_or(0);
            Ok((usage, Type::graded(n, a.clone(), b)))
        }
        Term::App(m, n) => {
            let (gm, fty) = infer_graded(ctx, m)?;
            let (k, a, b) = match fty {
                Type::Graded(k, a, b) => (k, a, b),
                other => return fail("app", format!("`{m}` has type {other}, not a graded arrow")),
            };
            let (gn, aty) = infer_graded(ctx, n)?;
            if !aty.is_subtype(&a) {
                return fail("app", format!("argument `{n}` has type {aty}, expected {a}"));
            }
            let mut usage = gm;
            for (x, u) in gn {
                *usage.entry(x).or_insert(0) += k * u;
            }
            Ok((usage, *b))
        }
        other => fail("syntax", format!("`{other}` is not a bstlc term")),
    }
}

/// Infers least grades bottom-up and checks them against the declared ones.
pub fn typecheck_bstlc(ctx: &GradedContext, t: &Term) -> Result<BJudgement, TypeError> {
    let plain: Vec<(String, Type)> = ctx.0.iter().map(|(x, _, ty)| (x.clone(), ty.clone())).collect();
    for (x, ty) in &plain {
        if !type_ok(ty, Dialect::Bstlc) {
            return fail("ctx", format!("`{x}: {ty}` is not a bstlc declaration"));
        }
    }
    let (usage, ty) = infer_graded(&plain, t)?;
    let mut out = GradedContext::default();
    for (x, declared, xty) in &ctx.0 {
        let used = usage.get(x).copied().unwrap_or(0);
        if used > *declared {
            return Err(TypeError::GradeMismatch { var: x.clone(), used, declared: *declared });
        }
        out.0.push((x.clone(), used, xty.clone()));
    }
    Ok(BJudgement { ty, usage: out })
}
