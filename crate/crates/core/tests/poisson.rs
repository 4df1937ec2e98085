use std::time::Instant;

use proptest::prelude::*;
use regz_core::hecke::HeckeSymmetry;
use regz_core::poisson::*;
use regz_exact::{parse_scalar, ExactMatrix, RatFunc};

fn p(s: &str) -> RatFunc {
    parse_scalar(s).unwrap()
}

fn glued_pair(c: i32) -> HeckeSymmetry {
    HeckeSymmetry::glue(&HeckeSymmetry::even_block(), &HeckeSymmetry::even_block(), &RatFunc::q_pow(c)).unwrap()
}

fn glued_triple(c: i32) -> HeckeSymmetry {
    HeckeSymmetry::glue(&glued_pair(c), &HeckeSymmetry::even_block(), &RatFunc::q_pow(c)).unwrap()
}

#[test]
fn extracted_r_matrices() {
    let dj = ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap();
    let mut expect = ExactMatrix::zeros(4);
    for (i, j, v) in [(0, 0, 1), (3, 3, 1), (2, 1, 2)] {
        expect.set(i, j, RatFunc::int(v));
    }
    assert_eq!(dj.r, expect);
    for c in 0..=2 {
        let r = ClassicalR::from_symmetry(&glued_pair(c)).unwrap();
        assert_eq!(r.r, gl2_example_r(&RatFunc::int(c as i64)), "alpha={c}");
    }
    assert!(ClassicalR::from_symmetry(&HeckeSymmetry::dj(3)).is_ok());
    assert!(ClassicalR::from_symmetry(&glued_triple(1)).is_ok());
}

#[test]
fn super_flip_deformation_is_rejected() {
    let odd = HeckeSymmetry::glue(&HeckeSymmetry::even_block(), &HeckeSymmetry::odd_block(), &RatFunc::one()).unwrap();
    assert!(matches!(ClassicalR::from_symmetry(&odd), Err(regz_core::CoreError::AxiomFailure(_))));
}

#[test]
fn symbolic_example_satisfies_both_axioms() {
    let r = ClassicalR::unchecked(gl2_example_r(&RatFunc::var("alpha"))).unwrap();
    assert!(r.unitarity_residual().is_zero());
    assert!(r.cybe_residual().is_zero());
}

#[test]
fn gl2_table_is_reproduced_for_every_alpha() {
    let expect = [
        ("{a,b}", "-2*a*b"),
        ("{a,c}", "2*a*c"),
        ("{a,d}", "0"),
        ("{b,c}", "2*a*(d - a)"),
        ("{b,d}", "-2*a*b"),
        ("{c,d}", "2*a*c"),
    ];
    for alpha in ["0", "1", "2", "alpha"] {
        let r = ClassicalR::new(gl2_example_r(&p(alpha))).unwrap();
        let table = gl2_table(&bracket_r(&r)).unwrap();
        for ((name, value), (ename, evalue)) in table.iter().zip(expect) {
            assert_eq!(name, ename);
            assert_eq!(value, &p(evalue), "alpha={alpha} {name}");
        }
    }
}

#[test]
fn brackets_are_poisson_and_compatible() {
    let mut cases: Vec<(&str, ClassicalR)> = vec![("dj2", ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap())];
    for c in 0..=2 {
        cases.push(("glue2", ClassicalR::from_symmetry(&glued_pair(c)).unwrap()));
    }
    cases.push(("dj3", ClassicalR::from_symmetry(&HeckeSymmetry::dj(3)).unwrap()));
    cases.push(("glue3", ClassicalR::from_symmetry(&glued_triple(2)).unwrap()));
    for (name, r) in cases {
        let t = Instant::now();
        let br = bracket_r(&r);
        let lin = bracket_lin(r.n);
        assert!(br.is_antisymmetric(), "{name}");
        assert!(jacobi_check(&br).passed(), "{name}");
        assert!(jacobi_check(&lin).passed(), "{name}");
        assert!(pencil_check(&br, &lin).passed(), "{name}");
        assert!(casimir_check(&br, 3).passed(), "{name}");
        assert!(gz_poisson_check(&br, 2).passed(), "{name}");
        eprintln!("{name}: {:?}", t.elapsed());
    }
}

#[test]
fn triple_count_for_two_by_two() {
    let r = ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap();
    assert_eq!(jacobi_check(&bracket_r(&r)).checked, 20);
}

#[test]
fn linear_bracket_is_degenerate_pencil() {
    let lin = bracket_lin(3);
    assert!(jacobi_check(&lin).passed());
    assert!(pencil_check(&lin, &lin).passed());
}

#[test]
fn corrupted_r_breaks_jacobi() {
    let mut m = gl2_example_r(&RatFunc::zero());
    m.set(0, 1, RatFunc::one());
    let bad = ClassicalR::unchecked(m.clone()).unwrap();
    assert!(!bad.cybe_residual().is_zero());
    assert!(ClassicalR::new(m).is_err());
    let rep = jacobi_check(&bracket_r(&bad));
    let w = rep.witness.expect("a failing triple");
    assert!(!w.value.is_zero());
}

#[test]
fn gz_generators_for_gl2() {
    let r = ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap();
    let br = bracket_r(&r);
    let lin = bracket_lin(2);
    let a = gen(0, 0);
    let t1 = trace_power(2, 1);
    let t2 = trace_power(2, 2);
    assert_eq!(gl2_names(&t2).unwrap(), p("a^2 + d^2 + 2*b*c"));
    for (x, y) in [(&a, &t1), (&a, &t2), (&t1, &t2)] {
        assert!(br.apply(x, y).is_zero());
        assert!(lin.apply(x, y).is_zero());
    }
    assert!(br.apply(&a, &a).is_zero());
}

fn poly_strategy() -> impl Strategy<Value = RatFunc> {
    proptest::collection::vec((0usize..4, 0usize..4, -3i64..4), 1..4).prop_map(|terms| {
        terms.into_iter().fold(RatFunc::zero(), |acc, (x, y, c)| acc.add(&gen(x / 2, x % 2).mul(&gen(y / 2, y % 2)).scale_int(c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let r = ClassicalR::new(gl2_example_r(&RatFunc::int(1))).unwrap();
        let br = bracket_r(&r);
        prop_assert!(br.apply(&f, &f).is_zero());
        prop_assert_eq!(br.apply(&f, &g), br.apply(&g, &f).neg());
        let lhs = br.apply(&f, &g.mul(&h));
        let rhs = br.apply(&f, &g).mul(&h).add(&g.mul(&br.apply(&f, &h)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pencil_members_satisfy_jacobi(s in -3i64..4, t in -3i64..4) {
        let r = ClassicalR::from_symmetry(&HeckeSymmetry::dj(2)).unwrap();
        let member = bracket_r(&r).scale(&RatFunc::int(s)).add(&bracket_lin(2).scale(&RatFunc::int(t)));
        prop_assert!(jacobi_check(&member).passed());
    }
}
