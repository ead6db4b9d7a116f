use proptest::prelude::*;

use tropcalc_core::semantics::{matrix_apply, Caps, InputVector, Mset, SemPoint};
use tropcalc_core::syntax::{parse, parse_context, Dialect};
use tropcalc_core::taylor::{
    ball, empirical_lipschitz, interpret_resource, lipschitz_estimate, taylor_gap, Radius, ResourceTerm,
};
use tropcalc_core::tropical::{MultiDegree, Point, TropSeries, TropValue};

fn stars(n: u32) -> Mset {
    Mset::repeat(SemPoint::Star, n)
}

fn z_point(n: u32, m: u32) -> SemPoint {
    SemPoint::pair(stars(n), SemPoint::pair(stars(m), SemPoint::Star))
}

fn quarter(k: u64) -> TropValue {
    TropValue::ratio(k as i64, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_over_approximates(x in 0u64..12, zs in prop::collection::vec(prop::option::of(0u64..24), 16)) {
        let ctx = parse_context("x: o, z: o -> o -> o").unwrap();
        let zxx = parse("z x x", Dialect::Stlc).unwrap();
        let mut input: InputVector = [((0, SemPoint::Star), quarter(x))].into();
        let mut table = Vec::new();
        for n in 0..4u32 {
            for m in 0..4u32 {
                if let Some(c) = zs[(4 * n + m) as usize] {
                    input.insert((1, z_point(n, m)), quarter(c));
                    if n + m > Caps::default().k_max {
                        continue;
                    }
                    table.push((n.max(m), quarter(c).plus(&quarter(x).times_nat((n + m) as u64))));
                }
            }
        }
        // min over entries whose bags fit the cap and whose x-row fits k_max
        let oracle = |cap: u32| table.iter().filter(|(s, _)| *s <= cap).map(|(_, v)| v.clone()).min().unwrap_or(TropValue::Inf);
        let mut previous = TropValue::Inf;
        let mut direct = None;
        for cap in 0..=4usize {
            let (d, e) = taylor_gap(&zxx, &ctx, &input, &SemPoint::Star, cap, Caps::default()).unwrap();
            prop_assert!(e >= d);
            prop_assert!(e <= previous);
            prop_assert_eq!(&e, &oracle(cap as u32));
            direct = Some(d);
            previous = e;
        }
        prop_assert_eq!(previous, direct.unwrap());
    }

    #[test]
    fn single_bags_are_lipschitz_in_their_size(n in 1u32..4, k in 0u32..4, c in 0u64..16, xs in prop::collection::vec(0u64..40, 20)) {
        let k = k.min(n);
        let ctx = parse_context("x: o, f: o -> o").unwrap();
        let r = ResourceTerm::app(ResourceTerm::var("f"), vec![ResourceTerm::var("x"); k as usize]);
        let m = interpret_resource(&r, &ctx, Caps::default()).unwrap();
        let f = SemPoint::pair(stars(k), SemPoint::Star);
        let at = |x: u64| {
            let input: InputVector = [((0, SemPoint::Star), quarter(x)), ((1, f.clone()), quarter(c))].into();
            matrix_apply(&m, &input, &Point::new()).unwrap().remove(&SemPoint::Star).unwrap()
        };
        for w in xs.windows(2) {
            if w[0] == w[1] {
                continue;
            }
            let ratio = at(w[0]).dist(&at(w[1])).div(&quarter(w[0]).dist(&quarter(w[1]))).unwrap();
            prop_assert!(ratio <= TropValue::int(n as u64));
            prop_assert_eq!(ratio, TropValue::int(k as u64));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn estimate_dominates_sampling(
        monos in prop::collection::vec(((0u32..4, 0u32..4), 0u64..20), 1..6),
        cx in 0u64..60, cy in 0u64..60, delta_q in 1u64..8, seed in any::<u64>(),
    ) {
        let f = TropSeries::from_monomials(&["x", "y"], monos.into_iter().map(|((i, j), c)| {
            (MultiDegree::from_pairs([("x", i), ("y", j)]), quarter(c))
        }));
        let center: Point = [("x".to_string(), quarter(cx)), ("y".to_string(), quarter(cy))].into();
        let delta = quarter(delta_q);
        let est = lipschitz_estimate(&f, &center, &delta, Radius::Three).unwrap();
        let emp = empirical_lipschitz(&f, &ball(&center, &delta), 200, seed).unwrap();
        prop_assert_eq!(est.interior, cx > 3 * delta_q && cy > 3 * delta_q);
        if est.interior {
            prop_assert!(emp.ratio <= est.k, "{} > {}", emp.ratio, est.k);
        }
        prop_assert!(emp.ratio <= TropValue::int(f.degree() as u64));
    }
}
