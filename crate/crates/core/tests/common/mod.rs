#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tropcalc_core::syntax::{Bias, Term, Type, Weight};
use tropcalc_core::tropical::{Rational, TropValue};

pub fn o() -> Type {
    Type::o()
}

pub fn arr(a: Type, b: Type) -> Type {
    Type::arrow(a, b)
}

/// `c : o, f : o -> o, g : o -> o -> o`
pub fn base_ctx() -> Vec<(String, Type)> {
    vec![("c".into(), o()), ("f".into(), arr(o(), o())), ("g".into(), arr(o(), arr(o(), o())))]
}

pub struct Gen<'a> {
    pub rng: &'a mut ChaCha8Rng,
    pub differential: bool,
    fresh: usize,
}

impl<'a> Gen<'a> {
    pub fn new(rng: &'a mut ChaCha8Rng, differential: bool) -> Self {
        Gen { rng, differential, fresh: 0 }
    }

    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("v{}", self.fresh)
    }

    /// A term of type `ty` over `ctx` built from `o` and arrows.
    pub fn stlc(&mut self, ctx: &mut Vec<(String, Type)>, ty: &Type, depth: u32) -> Term {
        let vars: Vec<String> = ctx.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
        let roll = self.rng.gen_range(0..10);
        if self.differential && depth > 0 && roll == 0 {
            let n = self.rng.gen_range(0..=2);
            let parts: Vec<Term> = (0..n).map(|_| self.stlc(ctx, ty, depth - 1)).collect();
            return Term::sum(parts);
        }
        if let Type::Arrow(a, b) = ty {
            if self.differential && depth > 0 && roll == 1 {
                let m = self.head(ctx, ty, depth - 1);
                let n = self.stlc(ctx, a, depth - 1);
                return Term::dapp(m, n);
            }
            let pick_var = !vars.is_empty() && (roll < 4 || depth == 0 && roll < 7);
            if !pick_var && (depth == 0 || roll < 8) {
                let x = self.name();
                ctx.push((x.clone(), (**a).clone()));
                let body = self.stlc(ctx, b, depth.saturating_sub(1));
                ctx.pop();
                return Term::lam(&x, (**a).clone(), body);
            }
        }
        if depth == 0 || roll < 4 {
            if let Some(x) = vars.choose(self.rng) {
                return Term::var(x);
            }
        }
        let arg_ty = if self.rng.gen_bool(0.75) { o() } else { arr(o(), o()) };
        let f = self.head(ctx, &arr(arg_ty.clone(), ty.clone()), depth.saturating_sub(1));
        let a = self.stlc(ctx, &arg_ty, depth.saturating_sub(1));
        Term::app(f, a)
    }

    /// Like [`Gen::stlc`] but never the bare `0`, whose type cannot be synthesized.
    fn head(&mut self, ctx: &mut Vec<(String, Type)>, ty: &Type, depth: u32) -> Term {
        loop {
            let t = self.stlc(ctx, ty, depth);
            if t != Term::Zero {
                return t;
            }
        }
    }

    fn weight(&mut self) -> Weight {
        match self.rng.gen_range(0..3) {
            0 => Weight::Param(["a", "b"].choose(self.rng).unwrap().to_string()),
            1 => Weight::Const(TropValue::int(self.rng.gen_range(0..4))),
            _ => Weight::Const(TropValue::Rat(Rational::new(self.rng.gen_range(1..5).into(), 2.into()))),
        }
    }

    fn bias(&mut self) -> Bias {
        match self.rng.gen_range(0..3) {
            0 => Bias::Weights(Weight::Param("a".into()), Weight::Param("b".into())),
            1 => Bias::Param("p".into()),
            _ => Bias::Prob(Rational::new(self.rng.gen_range(1..4).into(), 4.into())),
        }
    }

    /// A PCF term of type `Nat` or `Nat -> Nat`. Recursion only with `fix`.
    pub fn pcf(&mut self, ctx: &mut Vec<(String, Type)>, ty: &Type, depth: u32, fix: bool) -> Term {
        let nat = Type::Nat;
        if let Type::Arrow(a, b) = ty {
            let x = self.name();
            ctx.push((x.clone(), (**a).clone()));
            let body = self.pcf(ctx, b, depth.saturating_sub(1), fix);
            ctx.pop();
            return Term::lam(&x, (**a).clone(), body);
        }
        let vars: Vec<String> = ctx.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
        if depth == 0 {
            return match vars.choose(self.rng) {
                Some(x) if self.rng.gen_bool(0.5) => Term::var(x),
                _ => Term::Num(self.rng.gen_range(0..4)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => Term::Succ(Box::new(self.pcf(ctx, &nat, d, fix))),
            1 => Term::Pred(Box::new(self.pcf(ctx, &nat, d, fix))),
            2 => Term::Ifz(
                Box::new(self.pcf(ctx, &nat, d, fix)),
                Box::new(self.pcf(ctx, &nat, d, fix)),
                Box::new(self.pcf(ctx, &nat, d, fix)),
            ),
            3 => {
                let w = self.weight();
                Term::scalar(w, self.pcf(ctx, &nat, d, fix))
            }
            4 => {
                let b = self.bias();
                Term::choice(b, self.pcf(ctx, &nat, d, fix), self.pcf(ctx, &nat, d, fix))
            }
            5 => Term::nd(self.pcf(ctx, &nat, d, fix), self.pcf(ctx, &nat, d, fix)),
            6 => {
                let f = self.pcf(ctx, &arr(nat.clone(), nat.clone()), d, fix);
                Term::app(f, self.pcf(ctx, &nat, d, fix))
            }
            7 if fix => {
                let x = self.name();
                ctx.push((x.clone(), nat.clone()));
                let body = self.pcf(ctx, &nat, d, fix);
                ctx.pop();
                Term::fix(Term::lam(&x, nat, body))
            }
            _ => match vars.choose(self.rng) {
                Some(x) => Term::var(x),
                None => Term::Num(self.rng.gen_range(0..4)),
            },
        }
    }

    /// A finite choice tree over `True`/`False` with `(+a,b)` labels.
    pub fn choice_tree(&mut self, depth: u32) -> Term {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return Term::Num(self.rng.gen_range(0..2));
        }
        let bias = Bias::Weights(Weight::Param("a".into()), Weight::Param("b".into()));
        Term::choice(bias, self.choice_tree(depth - 1), self.choice_tree(depth - 1))
    }
}
