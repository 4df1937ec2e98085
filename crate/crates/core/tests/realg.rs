use std::time::Instant;

use proptest::prelude::*;
use regz_core::hecke::HeckeSymmetry;
use regz_core::realg::*;
use regz_exact::{parse_scalar, ExactMatrix, RatFunc};

fn glued(blocks: &[bool], alpha: &str) -> HeckeSymmetry {
    let a = parse_scalar(alpha).unwrap();
    let block = |even: bool| if even { HeckeSymmetry::even_block() } else { HeckeSymmetry::odd_block() };
    let mut r = block(blocks[0]);
    for &b in &blocks[1..] {
        r = HeckeSymmetry::glue(&r, &block(b), &a).unwrap();
    }
    r
}

#[test]
fn power_sums_are_central_n2() {
    for (name, r) in [("dj2", HeckeSymmetry::dj(2)), ("glue++", glued(&[true, true], "q^2")), ("glue+-", glued(&[true, false], "1"))] {
        for k in 1..=3 {
            let t = Instant::now();
            let rep = centrality_certificate(&r, &power_sum(&r, k), 4);
            assert!(rep.all_certified(), "{name} p_{k}");
            for (_, m) in &rep.entries {
                if let Membership::Certified(terms) = m {
                    assert!(terms.iter().all(|t| t.left.len() + t.right.len() + 2 <= 4));
                }
            }
            eprintln!("{name} p_{k}: {:?}", t.elapsed());
        }
    }
}

#[test]
fn power_sums_are_central_n3() {
    for (name, r) in [("dj3", HeckeSymmetry::dj(3)), ("glue+++", glued(&[true, true, true], "q"))] {
        for k in 1..=2 {
            let t = Instant::now();
            let rep = centrality_certificate(&r, &power_sum(&r, k), 3);
            assert!(rep.all_certified(), "{name} p_{k}");
            eprintln!("{name} p_{k}: {:?}", t.elapsed());
        }
    }
}

#[test]
fn certificate_recombines_to_target() {
    let r = HeckeSymmetry::dj(2);
    let ideal = re_relations(&r);
    let x = ideal.relations()[5].clone();
    let lx = NCPoly::gen(2, 0, 0).mul(&x);
    for (target, deg) in [(x, 2), (lx, 3)] {
        match ideal_membership(&target, &ideal, deg) {
            Membership::Certified(terms) => assert_eq!(certificate_value(&ideal, &terms), target),
            m => panic!("{m:?}"),
        }
    }
}

#[test]
fn non_central_generator_is_refuted() {
    let r = HeckeSymmetry::dj(2);
    let rep = centrality_certificate(&r, &NCPoly::gen(2, 0, 1), 4);
    assert!(!rep.all_certified());
    assert!(rep.refuted().is_some());
}

#[test]
fn cayley_hamilton_rank_two() {
    for r in [HeckeSymmetry::dj(2), glued(&[true, true], "q")] {
        let rep = cayley_hamilton_check(&r, 2, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.entries);
    }
    // The (1|1) symmetry has no rank-two even identity.
    let rep = cayley_hamilton_check(&glued(&[true, false], "1"), 2, 2).unwrap();
    assert!(!rep.rank_probe);
}

#[test]
fn scalar_cayley_hamilton_vanishes_identically() {
    let r = HeckeSymmetry::dj(1);
    assert!(cayley_hamilton_matrix(&r, 1).unwrap().is_zero());
}

#[test]
fn relation_span_dimension_is_classical() {
    // For symmetries deforming the flip the degree-two span has dimension N^2(N^2-1)/2.
    assert_eq!(re_relations(&HeckeSymmetry::dj(2)).span_rank(), 6);
    assert_eq!(re_relations(&HeckeSymmetry::dj(3)).span_rank(), 36);
    assert_eq!(re_relations(&glued(&[true, true], "q^3")).span_rank(), 6);
}

#[test]
fn relation_span_independent_of_glue_parameter() {
    let a = re_relations(&glued(&[true, true], "q"));
    let b = re_relations(&glued(&[true, true], "q^-2"));
    assert!(same_span(a.relations(), b.relations()));
    let c = re_relations(&glued(&[true, true], "x"));
    assert!(same_span(a.relations(), c.relations()));
}

#[test]
fn shift_and_limit_for_several_symmetries() {
    for r in [HeckeSymmetry::dj(2), HeckeSymmetry::dj(3), glued(&[true, true], "q^2")] {
        assert!(shift_check(&r));
        assert!(classical_limit_check(&r).unwrap());
    }
}

#[test]
fn lbar_two_matches_recursion() {
    let r = HeckeSymmetry::dj(2);
    let l1 = lbar(&r, 1, 2);
    let l2 = lbar(&r, 2, 2);
    let back = l2.lmul_scalar(r.r_inv()).rmul_scalar(r.r());
    assert_eq!(back, l1);
    assert!(l2.entries().iter().all(|e| e.is_zero() || e.degree() == Some(1)));
}

#[test]
fn cyclic_invariance_small() {
    for r in [HeckeSymmetry::dj(1), HeckeSymmetry::dj(2), glued(&[true, false], "q")] {
        for k in 1..=2 {
            assert!(cyclic_invariance_check(&r, k).unwrap());
        }
    }
}

#[test]
fn power_sum_one_is_trace_against_c() {
    let r = HeckeSymmetry::cremmer_gervais3(&RatFunc::var("a"), &RatFunc::var("b")).unwrap();
    let p1 = power_sum(&r, 1);
    let c = r.c_matrix();
    let mut expect = NCPoly::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            expect = expect.add(&NCPoly::gen(3, i, j).scale(c.get(j, i)));
        }
    }
    assert_eq!(p1, expect);
    assert_eq!(power_sum_via_chain(&r, 2), power_sum(&r, 2));
}

#[test]
fn wronski_through_determinants() {
    for r in [HeckeSymmetry::dj(2), glued(&[true, false], "1")] {
        assert!(wronski_elements(&r, 4).unwrap().iter().all(NCPoly::is_zero));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn both_trace_orders_agree(word in proptest::collection::vec(prop_oneof![Just(1i32), Just(2), Just(-1), Just(-2)], 0..4)) {
        let r = HeckeSymmetry::dj(2);
        let f = r_word(&r, &word, 3);
        let (a, b) = char_element_both(&r, &f, 3);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn relations_lie_in_their_ideal(idx in 0usize..16, left in 0usize..4) {
        let r = HeckeSymmetry::dj(2);
        let ideal = re_relations(&r);
        let x = NCPoly::gen(2, left / 2, left % 2).mul(&ideal.relations()[idx]);
        prop_assert!(ideal_membership(&x, &ideal, 3).is_certified());
    }
}

#[test]
fn identity_substitution_kills_relations() {
    let r = glued(&[true, false], "q");
    let images: Vec<ExactMatrix> = (0..4).map(|a| ExactMatrix::scalar(1, &RatFunc::int((a % 3 == 0) as i64))).collect();
    for rel in re_relations(&r).relations() {
        assert!(rel.eval_matrix(&images, 1).is_zero());
    }
}
