use std::time::Instant;

use proptest::prelude::*;
use regz_core::spectral::*;
use regz_exact::{parse_scalar, RatFunc};

fn s(x: &str) -> RatFunc {
    parse_scalar(x).unwrap()
}

#[test]
fn newton_up_to_three_eigenvalues() {
    for m in 1..=3 {
        let t = Instant::now();
        let rep = newton_consistency(m, 4);
        assert!(rep.passed(), "m={m}: {:?}", rep.rows);
        eprintln!("newton m={m}: {:?}", t.elapsed());
    }
}

#[test]
fn two_eigenvalue_power_sum_matches_first_determinant() {
    // With m = 2 the spectral p_1 equals 1_q e_1.
    assert_eq!(p_spectral(2, 1), e_from_mu(2, 1));
    // p_2 = q e_1^2 - 2_q e_2 by expanding the 2x2 determinant.
    let e1 = e_from_mu(2, 1);
    let e2 = e_from_mu(2, 2);
    let expect = s("q").mul(&e1).mul(&e1).sub(&s("q + 1/q").mul(&e2));
    assert_eq!(p_spectral(2, 2), expect);
}

#[test]
fn product_formula_ratio_is_global_power() {
    // Ratio of the spectral character to the q-number product formula is q^(2-m).
    for m in 1..=3 {
        for lam in [vec![], vec![1], vec![2], vec![1, 1], vec![2, 1]] {
            if lam.len() > m {
                continue;
            }
            for k in 1..=3 {
                let v = char_power_sum(&lam, m, k).unwrap();
                assert_eq!(v.ratio, RatFunc::q_pow(2 - m as i32), "m={m} lam={lam:?} k={k}");
            }
        }
    }
}

#[test]
fn single_eigenvalue_characters() {
    for n in 0..4usize {
        for k in 1..4usize {
            let v = char_power_sum(&[n], 1, k).unwrap();
            assert_eq!(v.derived, RatFunc::q_pow(-1 - 2 * (k * n) as i32));
            assert_eq!(v.product_formula, RatFunc::q_pow(-2 - 2 * (k * n) as i32));
        }
    }
}

#[test]
fn exponents_interlace_along_patterns() {
    // Rows (2,1,0) and (2,0): exponents (4,2,0) and (3,0) interlace.
    let top = exponents(&[2, 1, 0], 3).unwrap();
    let below = exponents(&[2, 0], 2).unwrap();
    assert!(top[0] >= below[0] && below[0] >= top[1] && top[1] >= below[1] && below[1] >= top[2]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn shifted_eigenvalue_limits(a in 0usize..6, b in 0usize..6) {
        let (l1, l2) = (a.max(b), a.min(b));
        let lam = vec![l1, l2];
        for i in 1..=2 {
            let v = modified_eigen(&lam, 2, i).unwrap();
            let expect = (lam[i - 1] + 2 - i) as i64;
            prop_assert_eq!(v.value_at_one().unwrap(), regz_exact::BigRational::from_integer(expect.into()));
            let mu = char_mu(&lam, 2, i).unwrap();
            prop_assert_eq!(RatFunc::one().sub(&mu), v.mul(&regz_exact::lambda()));
        }
    }

    #[test]
    fn spectral_power_sums_are_symmetric(k in 1usize..4) {
        let p = p_spectral(3, k);
        let swapped = p
            .subs(&regz_exact::Sym::new("mu1"), &s("t"))
            .unwrap()
            .subs(&regz_exact::Sym::new("mu2"), &s("mu1"))
            .unwrap()
            .subs(&regz_exact::Sym::new("t"), &s("mu2"))
            .unwrap();
        prop_assert_eq!(p, swapped);
    }
}
