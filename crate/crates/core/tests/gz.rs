use std::time::Instant;

use proptest::prelude::*;
use regz_core::gz::*;
use regz_core::hecke::HeckeSymmetry;
use regz_core::projector::{spectral_idempotents, standard_tableaux};
use regz_core::realg::{cyclic_invariance_check, ideal_membership, re_relations, Membership};
use regz_exact::{parse_scalar, RatFunc};

fn chain(blocks: &[Block], alpha: &str) -> ChainData {
    let a = parse_scalar(alpha).unwrap();
    let steps: Vec<GlueStep> = blocks.iter().map(|&block| GlueStep { block, alpha: a.clone() }).collect();
    chain_build(&steps).unwrap()
}

/// Interlacing count by brute force over all candidate rows.
fn brute_count(top: &[usize]) -> usize {
    if top.len() == 1 {
        return 1;
    }
    let k = top.len() - 1;
    let mut count = 0;
    let mut row = vec![0usize; k];
    loop {
        if (0..k).all(|i| top[i] >= row[i] && row[i] >= top[i + 1]) {
            count += brute_count(&row);
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            row[i] += 1;
            if row[i] <= top[0] {
                break;
            }
            row[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn pattern_counts_match_brute_force_and_projector_ranks() {
    for top in [vec![1, 0], vec![2, 0], vec![1, 0, 0], vec![2, 1, 0], vec![3, 1, 0], vec![2, 2, 1, 0]] {
        let t: Vec<i64> = top.iter().map(|&x| x as i64).collect();
        let pats = enumerate_patterns(&t).unwrap();
        assert_eq!(pats.len(), brute_count(&top), "{top:?}");
        assert!(pats.iter().all(GZPattern::is_interlacing));
        assert!(pats.iter().all(|p| exponents_interlace(p).unwrap()));
    }
    // Pattern count = rank of the isotypic projector / number of tableaux.
    for big_n in 2..=3 {
        let r = HeckeSymmetry::dj(big_n);
        for n in 1..=3 {
            let id = spectral_idempotents(&r, n).unwrap();
            for (shape, rank) in id.shape_ranks() {
                if shape.len() > big_n {
                    assert_eq!(rank, 0);
                    continue;
                }
                let mut top: Vec<i64> = shape.iter().map(|&x| x as i64).collect();
                top.resize(big_n, 0);
                let d = standard_tableaux(&shape).len();
                assert_eq!(enumerate_patterns(&top).unwrap().len() * d, rank, "N={big_n} {shape:?}");
            }
        }
    }
}

#[test]
fn chains_are_closed_and_typed() {
    let c = chain(&[Block::Even, Block::Even], "q");
    assert_eq!(c.top().n(), 2);
    assert!(c.top().sub_closure_check(1));
    let s = chain(&[Block::Even, Block::Odd], "q");
    assert!(!s.is_standard());
    let t = chain(&[Block::Even, Block::Even, Block::Even], "q^2");
    assert!(t.top().sub_closure_check(1) && t.top().sub_closure_check(2));
    assert_eq!(t.symmetries[1].r(), &t.top().block(2));
    assert!(chain_build(&[]).is_err());
}

#[test]
fn level_families_commute() {
    for (blocks, expect) in [(vec![Block::Even], 2), (vec![Block::Even; 2], 4), (vec![Block::Even; 3], 6), (vec![Block::Even, Block::Odd], 4)] {
        let c = chain(&blocks, "q");
        let t = Instant::now();
        let rep = gz_family_check(&c, 2, 2).unwrap();
        assert_eq!(rep.operators.len(), expect);
        assert!(rep.passed(), "{:?}", rep.failures);
        eprintln!("family {} levels: {:?}", blocks.len(), t.elapsed());
    }
}

#[test]
fn joint_spectrum_is_multiplicity_free() {
    for len in 2..=3 {
        let c = chain(&vec![Block::Even; len], "q");
        for shape in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
            if shape.len() > len {
                continue;
            }
            let t = Instant::now();
            let rep = joint_spectrum_check(&c, &shape, 2, Labelling::Module).unwrap();
            assert!(rep.passed(), "len={len} {shape:?} {:?}", rep.rows.iter().map(|r| r.rank).collect::<Vec<_>>());
            let mut top: Vec<i64> = shape.iter().map(|&x| x as i64).collect();
            top.resize(len, 0);
            assert_eq!(rep.rows.len(), enumerate_patterns(&top).unwrap().len());
            eprintln!("joint len={len} {shape:?}: {:?}", t.elapsed());
        }
    }
}

#[test]
fn literal_labelling_misses_the_spectrum() {
    let c = chain(&[Block::Even, Block::Even], "q");
    let rep = joint_spectrum_check(&c, &[1], 2, Labelling::Literal).unwrap();
    assert!(!rep.passed());
    assert!(!rep.complete);
}

#[test]
fn mixed_chains_have_no_prediction() {
    let c = chain(&[Block::Even, Block::Odd], "q");
    assert!(joint_spectrum_check(&c, &[1], 2, Labelling::Module).is_err());
}

#[test]
fn orbit_points() {
    assert!(orbit_check(&[RatFunc::one(), RatFunc::q_pow(2)]).is_err());
    assert!(orbit_check(&[RatFunc::int(5), RatFunc::int(5)]).is_err());
    let o = orbit_check(&[RatFunc::one(), RatFunc::int(2)]).unwrap();
    assert_eq!(o.alphas[0], parse_scalar("3/q").unwrap());
    let r = HeckeSymmetry::dj(2);
    let gens = orbit_generators(&r, &o);
    assert_eq!(gens.len(), 2);
    // The generators are not consequences of the RE relations.
    assert!(matches!(ideal_membership(&gens[0], &re_relations(&r), 2), Membership::NotFound { .. }));
}

#[test]
fn cyclic_invariance_up_to_rank_two() {
    for r in [HeckeSymmetry::dj(1), HeckeSymmetry::dj(2), chain(&[Block::Even, Block::Odd], "q").top().clone()] {
        for k in 1..=2 {
            assert!(cyclic_invariance_check(&r, k).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn patterns_interlace(a in 0i64..4, b in 0i64..4, c in 0i64..4) {
        let mut top = vec![a, b, c];
        top.sort_unstable_by(|x, y| y.cmp(x));
        let pats = enumerate_patterns(&top).unwrap();
        prop_assert!(pats.iter().all(GZPattern::is_interlacing));
        prop_assert!(pats.iter().all(|p| exponents_interlace(p).unwrap()));
        let distinct: std::collections::BTreeSet<_> = pats.iter().collect();
        prop_assert_eq!(distinct.len(), pats.len());
    }

    #[test]
    fn coinciding_points_are_rejected(i in -3i32..4) {
        let x = RatFunc::q_pow(i);
        prop_assert!(orbit_check(&[x.clone(), x.mul(&RatFunc::q_pow(2))]).is_err());
        prop_assert!(orbit_check(&[x.clone(), x.mul(&RatFunc::q_pow(3))]).is_ok());
    }
}
