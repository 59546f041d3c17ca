use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use symgraph::numerics::parse_algebraic;
use symgraph::transforms::{
    abel, abel_inv, abel_inv_rearranged, dual_abel, dual_abel_inv, dual_abel_inv_recurrence,
    even_pairing, radial_pairing, EvenSeq, RadialSeq,
};
use symgraph::wave::{wave_closed, wave_direct, CauchyData};
use symgraph::{AlgebraicValue, GraphParams, ReducedWord, VertexFun};

type A = AlgebraicValue;

fn params() -> impl Strategy<Value = GraphParams> {
    (2u32..=4, 2u32..=4).prop_map(|(k, r)| GraphParams::new(k, r).unwrap())
}

fn value(q: u64) -> impl Strategy<Value = A> {
    (-9i64..=9, 1i64..=5, -4i64..=4, 1i64..=3).prop_map(move |(a, b, c, d)| {
        A::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
            q,
        )
    })
}

fn with_values(
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (GraphParams, Vec<A>)> {
    params().prop_flat_map(move |p| (Just(p), prop::collection::vec(value(p.q()), len.clone())))
}

/// A word built from `(generator, exponent)` choices, reduced by the group law.
fn word(p: GraphParams, max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec((0..p.r(), 1..p.k()), 0..=max_len).prop_map(move |sy| {
        sy.into_iter().fold(ReducedWord::identity(), |acc, (g, e)| {
            p.mul(&acc, &ReducedWord::from_pairs(&[(g as u8, e as u8)]))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abel_inverses_round_trip((p, v) in with_values(1..=7)) {
        let f = RadialSeq::new(p, v);
        let af = abel(&f);
        prop_assert!(abel_inv(&af).same_function(&f));
        prop_assert!(abel_inv_rearranged(&af).same_function(&f));
        let g = EvenSeq::new(p, f.values().to_vec());
        prop_assert!(abel(&abel_inv(&g)).same_function(&g));
    }

    #[test]
    fn dual_abel_is_the_adjoint((p, v) in with_values(2..=8)) {
        let half = v.len() / 2;
        let f = RadialSeq::new(p, v[..half].to_vec());
        let g = EvenSeq::new(p, v[half..].to_vec());
        let dg = dual_abel(&g, f.len().max(g.len()));
        prop_assert_eq!(radial_pairing(&dg, &f), even_pairing(&g, &abel(&f)));
        let back = dual_abel_inv(&dg);
        prop_assert!(back.same_function(&g));
        prop_assert_eq!(back, dual_abel_inv_recurrence(&dg));
    }

    #[test]
    fn support_radius_is_preserved((p, v) in with_values(1..=7)) {
        let f = RadialSeq::new(p, v);
        prop_assert_eq!(abel(&f).support_radius(), f.support_radius());
    }

    #[test]
    fn metric_axioms((p, x, y, z) in params().prop_flat_map(|p| (Just(p), word(p, 4), word(p, 4), word(p, 4)))) {
        prop_assert!(x.is_reduced() && y.is_reduced());
        prop_assert_eq!(p.distance(&x, &y), p.distance(&y, &x));
        prop_assert!(p.distance(&x, &z) <= p.distance(&x, &y) + p.distance(&y, &z));
        prop_assert_eq!(p.distance(&p.mul(&z, &x), &p.mul(&z, &y)), p.distance(&x, &y));
    }

    #[test]
    fn algebraic_values_print_and_parse(p in params(), a in -50i64..50, b in 1i64..9, c in -50i64..50, d in 1i64..9) {
        let v = A::from_ratios((a, b), (c, d), p.q());
        prop_assert_eq!(parse_algebraic(&v.to_string(), Some(p.q())).unwrap(), v);
    }

    #[test]
    fn closed_wave_solution_matches_stepping(
        (p, fv, gv) in params().prop_flat_map(|p| {
            (Just(p), prop::collection::vec(value(p.q()), 3), prop::collection::vec(value(p.q()), 3))
        }),
        n in -5i64..=5,
    ) {
        let spots: Vec<ReducedWord> = p.ball(2).step_by(3).take(3).collect();
        let mut f = VertexFun::new(p);
        let mut g = VertexFun::new(p);
        for (i, x) in spots.iter().enumerate() {
            f.insert(x.clone(), fv[i].clone());
            g.insert(p.mul(x, &ReducedWord::from_pairs(&[(0, 1)])), gv[i].clone());
        }
        let data = CauchyData::new(f, g);
        let x = ReducedWord::from_pairs(&[(0, 1)]);
        let field = wave_direct(&data, &x, 0, n.unsigned_abs() as usize);
        prop_assert_eq!(field.get(&x, n).unwrap(), wave_closed(&data, &x, n));
    }
}
