mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{arr, base_ctx, o, Gen};
use tropcalc_core::syntax::{
    parse, pretty, typecheck, typecheck_bstlc, Dialect, GradedContext, Term, Type, TypeError,
};

fn stlc_type(rng: &mut ChaCha8Rng) -> Type {
    match rng.gen_range(0..4) {
        0 | 1 => o(),
        2 => arr(o(), o()),
        _ => arr(arr(o(), o()), o()),
    }
}

fn round_trips(t: &Term, d: Dialect) -> Result<(), TestCaseError> {
    let shown = pretty(t);
    let back = parse(&shown, d).map_err(|e| TestCaseError::fail(format!("`{shown}`: {e}")))?;
    prop_assert_eq!(&back, t, "{}", shown);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn stlc_pretty_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ty = stlc_type(&mut rng);
        let depth = rng.gen_range(0..5);
        let t = Gen::new(&mut rng, false).stlc(&mut base_ctx(), &ty, depth);
        prop_assert_eq!(typecheck(Dialect::Stlc, &base_ctx(), &t), Ok(ty));
        round_trips(&t, Dialect::Stlc)?;
    }

    #[test]
    fn stdlc_pretty_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ty = stlc_type(&mut rng);
        let depth = rng.gen_range(0..5);
        let t = Gen::new(&mut rng, true).stlc(&mut base_ctx(), &ty, depth);
        prop_assert!(tropcalc_core::syntax::check_against(Dialect::Stdlc, &base_ctx(), &t, &ty).is_ok(), "{}", t);
        round_trips(&t, Dialect::Stdlc)?;
    }

    #[test]
    fn pcfl_pretty_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ty = if rng.gen_bool(0.7) { Type::Nat } else { arr(Type::Nat, Type::Nat) };
        let depth = rng.gen_range(0..5);
        let t = Gen::new(&mut rng, false).pcf(&mut Vec::new(), &ty, depth, true);
        prop_assert_eq!(typecheck(Dialect::Pcfl, &Vec::new(), &t), Ok(ty));
        round_trips(&t, Dialect::Pcfl)?;
    }

    #[test]
    fn bstlc_pretty_parse_and_grades(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grades = BTreeMap::from([
            ("f".to_string(), vec![rng.gen_range(0..3)]),
            ("g".to_string(), vec![rng.gen_range(0..3), rng.gen_range(0..3)]),
            ("c".to_string(), vec![]),
        ]);
        let depth = rng.gen_range(0..5);
        let t = ground_term(&mut rng, &mut vec!["c".into()], depth, &mut 0);
        round_trips(&t, Dialect::Bstlc)?;

        let (ty, usage) = oracle(&t, &grades);
        prop_assert!(ty.is_empty());
        let ctx = |declared: &BTreeMap<String, u32>| {
            GradedContext(grades.iter().map(|(x, g)| (x.clone(), declared.get(x).copied().unwrap_or(0), graded(g))).collect())
        };
        let j = typecheck_bstlc(&ctx(&usage), &t).map_err(|e| TestCaseError::fail(format!("{t}: {e}")))?;
        prop_assert_eq!(j.ty, o());
        for (x, used) in &usage {
            prop_assert_eq!(j.usage.grade(x), *used);
            if *used > 0 {
                let mut tight = usage.clone();
                tight.insert(x.clone(), used - 1);
                let err = typecheck_bstlc(&ctx(&tight), &t);
                let is_mismatch = matches!(err, Err(TypeError::GradeMismatch { .. }));
                prop_assert!(is_mismatch, "{}", t);
            }
        }
    }

    #[test]
    fn sums_are_idempotent_and_unordered(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ts: Vec<Term> = (0..3).map(|_| Gen::new(&mut rng, true).stlc(&mut base_ctx(), &o(), 2)).collect();
        let s = Term::sum(ts.clone());
        let mut rev = ts.clone();
        rev.reverse();
        prop_assert_eq!(&Term::sum(rev), &s);
        prop_assert_eq!(&Term::sum([s.clone(), s.clone()]), &s);
        prop_assert_eq!(&Term::sum([s.clone(), ts[0].clone(), Term::Zero]), &s);
        prop_assert_eq!(&Term::sum([Term::sum(ts[..2].to_vec()), ts[2].clone()]), &s);
    }
}

fn graded(gs: &[u32]) -> Type {
    gs.iter().rev().fold(o(), |b, &g| Type::graded(g, o(), b))
}

/// A bSTLC term of type `o` whose binders all have type `o`.
fn ground_term(rng: &mut ChaCha8Rng, vars: &mut Vec<String>, depth: u32, fresh: &mut u32) -> Term {
    let leaf = |rng: &mut ChaCha8Rng, vars: &Vec<String>| Term::var(&vars[rng.gen_range(0..vars.len())]);
    if depth == 0 {
        return leaf(rng, vars);
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => leaf(rng, vars),
        1 => Term::app(Term::var("f"), ground_term(rng, vars, d, fresh)),
        2 => Term::apps(Term::var("g"), [ground_term(rng, vars, d, fresh), ground_term(rng, vars, d, fresh)]),
        _ => {
            *fresh += 1;
            let x = format!("y{fresh}");
            vars.push(x.clone());
            let body = ground_term(rng, vars, d, fresh);
            vars.pop();
            Term::app(Term::lam(&x, o(), body), ground_term(rng, vars, d, fresh))
        }
    }
}

/// Usage counting straight from the rules: axiom uses once, application
/// scales the argument's context by the grade of the function.
fn oracle(t: &Term, ctx: &BTreeMap<String, Vec<u32>>) -> (Vec<u32>, BTreeMap<String, u32>) {
    match t {
        Term::Var(x) => (ctx.get(x).cloned().unwrap_or_default(), BTreeMap::from([(x.clone(), 1)])),
        Term::Lam(x, _, b) => {
            let mut inner = ctx.clone();
            inner.insert(x.clone(), vec![]);
            let (tb, mut ub) = oracle(b, &inner);
            let n = ub.remove(x).unwrap_or(0);
            (std::iter::once(n).chain(tb).collect(), ub)
        }
        Term::App(m, n) => {
            let (tm, mut um) = oracle(m, ctx);
            let (_, un) = oracle(n, ctx);
            for (x, u) in un {
                *um.entry(x).or_insert(0) += tm[0] * u;
            }
            (tm[1..].to_vec(), um)
        }
        other => panic!("unexpected {other}"),
    }
}
