use proptest::prelude::*;
use regz_exact::modp::{add_mod, mul_mod};
use regz_exact::{ModPoint, Poly, RatFunc, Sym};

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0usize..3, 0usize..2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, i, j)| {
            let t = Poly::monomial(Sym::q(), i, Poly::monomial(Sym::new("a"), j, Poly::int(c)));
            acc.add(&t)
        })
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), poly_strategy(), -2i32..=2).prop_map(|(n, d, s)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        RatFunc::from_poly(n).div(&RatFunc::from_poly(d)).unwrap().mul(&RatFunc::q_pow(s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn associativity(x in ratfunc_strategy(), y in ratfunc_strategy(), z in ratfunc_strategy()) {
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn distributivity(x in ratfunc_strategy(), y in ratfunc_strategy(), z in ratfunc_strategy()) {
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn inverses(x in ratfunc_strategy()) {
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_reduced(x in ratfunc_strategy()) {
        let n = x.numer();
        let d = x.denom();
        prop_assert!(Poly::gcd(&n, &d).as_int().is_some_and(|g| g.is_unit()));
        prop_assert!(d.grlex_lead_sign() > 0);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in ratfunc_strategy(), y in ratfunc_strategy(), seed in 0u64..1000) {
        let pt = ModPoint::new(seed);
        let p = pt.prime();
        if let (Some(a), Some(b)) = (x.eval_mod(&pt), y.eval_mod(&pt)) {
            prop_assert_eq!(x.mul(&y).eval_mod(&pt), Some(mul_mod(a, b, p)));
            prop_assert_eq!(x.add(&y).eval_mod(&pt), Some(add_mod(a, b, p)));
        }
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(), b in poly_strategy(), g in poly_strategy()) {
        prop_assume!(!g.is_zero());
        let x = a.mul(&g);
        let y = b.mul(&g);
        let h = Poly::gcd(&x, &y);
        if !x.is_zero() || !y.is_zero() {
            prop_assert!(x.div_exact(&h).is_some());
            prop_assert!(y.div_exact(&h).is_some());
            prop_assert!(h.div_exact(&g).is_some());
        }
    }

    #[test]
    fn text_round_trip(x in ratfunc_strategy()) {
        prop_assert_eq!(regz_exact::parse_scalar(&x.to_expr()).unwrap(), x);
    }
}
