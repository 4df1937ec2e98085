use proptest::prelude::*;
use regz_cli::checks::{braid_prescreen, validate};
use regz_cli::suite::q_pow_steps;
use regz_core::gz::{chain_build, Block};
use regz_core::hecke::{classify_symmetry, Classification};
use regz_exact::{ExactMatrix, RatFunc};

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn prescreen_rejection_implies_not_braiding(entries in proptest::collection::vec(-1i64..2, 16), seed in 0u64..1000) {
        let m = ExactMatrix::from_fn(4, |i, j| RatFunc::int(entries[i * 4 + j]));
        if braid_prescreen(&m, 2, seed).is_some() {
            prop_assert_eq!(classify_symmetry(&m).unwrap(), Classification::NotBraiding);
        }
    }

    #[test]
    fn glued_chains_validate_and_reports_repeat(bits in proptest::collection::vec(any::<bool>(), 1..4), seed in 0u64..1000) {
        let blocks: Vec<Block> = bits.iter().map(|&b| if b { Block::Even } else { Block::Odd }).collect();
        let chain = chain_build(&q_pow_steps(&blocks)).unwrap();
        let r = chain.top().r();
        prop_assert!(braid_prescreen(r, 2, seed).is_none());
        let a = validate("chain", r, 2, seed);
        prop_assert!(a.passed());
        prop_assert_eq!(a.to_json_line(), validate("chain", r, 2, seed).to_json_line());
    }
}
