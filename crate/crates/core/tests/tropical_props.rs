use proptest::prelude::*;

use tropcalc_core::tropical::{
    hull_eval, trop_add, trop_dist, trop_mul, truncate, MultiDegree, Point, TropSeries, TropValue,
};

fn value() -> impl Strategy<Value = TropValue> {
    prop_oneof![
        9 => (0i64..64, 1i64..9).prop_map(|(n, d)| TropValue::ratio(n, d)),
        1 => Just(TropValue::Inf),
    ]
}

fn finite() -> impl Strategy<Value = TropValue> {
    (0i64..64, 1i64..9).prop_map(|(n, d)| TropValue::ratio(n, d))
}

fn poly(max_terms: usize) -> impl Strategy<Value = TropSeries> {
    prop::collection::vec(((0u32..4, 0u32..4), finite()), 1..=max_terms).prop_map(|ms| {
        let mut f = TropSeries::empty(["x", "y"]);
        for ((i, j), c) in ms {
            f.insert(MultiDegree::from_pairs([("x", i), ("y", j)]), c);
        }
        f
    })
}

fn point() -> impl Strategy<Value = Point> {
    (finite(), finite()).prop_map(|(x, y)| [("x".to_string(), x), ("y".to_string(), y)].into())
}

fn univariate() -> impl Strategy<Value = TropSeries> {
    prop::collection::vec((0u32..8, finite()), 1..6).prop_map(|cs| TropSeries::univariate("x", cs))
}

fn half(v: &TropValue) -> TropValue {
    v.div(&TropValue::int(2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn semiring_laws(a in value(), b in value(), c in value()) {
        let zero = TropValue::Inf;
        let one = TropValue::zero();
        prop_assert_eq!(trop_add(&a, &b), trop_add(&b, &a));
        prop_assert_eq!(trop_add(&trop_add(&a, &b), &c), trop_add(&a, &trop_add(&b, &c)));
        prop_assert_eq!(trop_add(&a, &zero), a.clone());
        prop_assert_eq!(trop_add(&a, &a), a.clone());
        prop_assert_eq!(trop_mul(&a, &b), trop_mul(&b, &a));
        prop_assert_eq!(trop_mul(&trop_mul(&a, &b), &c), trop_mul(&a, &trop_mul(&b, &c)));
        prop_assert_eq!(trop_mul(&a, &one), a.clone());
        prop_assert_eq!(trop_mul(&a, &zero), zero.clone());
        prop_assert_eq!(trop_mul(&a, &trop_add(&b, &c)), trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c)));
    }

    #[test]
    fn monotone_and_concave(f in poly(8), u in point(), du in (finite(), finite())) {
        let v: Point = [("x".to_string(), u["x"].plus(&du.0)), ("y".to_string(), u["y"].plus(&du.1))].into();
        let (fu, fv) = (f.eval(&u).unwrap(), f.eval(&v).unwrap());
        prop_assert!(fu <= fv);
        let mid: Point = u.iter().map(|(k, a)| (k.clone(), half(&a.plus(&v[k])))).collect();
        prop_assert!(f.eval(&mid).unwrap() >= half(&fu.plus(&fv)));
    }

    #[test]
    fn truncation_agrees_above_eps(f in poly(8), eps in (1i64..8, 1i64..8), x in point()) {
        let eps = TropValue::ratio(eps.0, eps.1);
        let t = truncate(&f, &eps).unwrap();
        let above: Point = x.iter().map(|(k, v)| (k.clone(), v.plus(&eps))).collect();
        prop_assert_eq!(t.eval(&above).unwrap(), f.eval(&above).unwrap());
        prop_assert!(t.len() <= f.len());
    }

    #[test]
    fn degree_lipschitz(f in poly(8), u in point(), v in point()) {
        let lhs = trop_dist(&f.eval(&u).unwrap(), &f.eval(&v).unwrap());
        let d = trop_dist(&u["x"], &v["x"]).max(trop_dist(&u["y"], &v["y"]));
        prop_assert!(lhs <= d.times_nat(f.degree() as u64));
    }

    #[test]
    fn hull_evaluation(f in univariate(), xs in prop::collection::vec(finite(), 100)) {
        for x in xs {
            let p: Point = [("x".to_string(), x.clone())].into();
            prop_assert_eq!(hull_eval(&f, &x).unwrap(), f.eval(&p).unwrap());
        }
    }

    #[test]
    fn increasing_chains_reach_the_top(f in poly(6), base in point(), steps in prop::collection::vec((finite(), finite()), 1..8)) {
        let mut chain = vec![base];
        for (dx, dy) in steps {
            let last = chain.last().unwrap();
            chain.push([("x".to_string(), last["x"].plus(&dx)), ("y".to_string(), last["y"].plus(&dy))].into());
        }
        let values: Vec<TropValue> = chain.iter().map(|p| f.eval(p).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let top = chain.last().unwrap();
        let sup = values.iter().max().unwrap();
        prop_assert_eq!(&f.eval(top).unwrap(), sup);
    }
}
