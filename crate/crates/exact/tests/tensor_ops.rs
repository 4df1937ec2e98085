use proptest::prelude::*;
use regz_exact::{parse_scalar, ExactMatrix, RatFunc};

fn small_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec((-2i64..=2, -1i32..=1), n * n).prop_map(move |v| {
        ExactMatrix::from_fn(n, |i, j| {
            let (c, e) = v[i * n + j];
            RatFunc::int(c).mul(&RatFunc::q_pow(e))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn partial_trace_of_kron(a in small_matrix(2), b in small_matrix(3)) {
        let ab = a.kron(&b);
        prop_assert_eq!(ab.partial_trace(2).unwrap(), a.scale(&b.trace()));
        prop_assert_eq!(ab.partial_trace(1).unwrap(), b.scale(&a.trace()));
    }

    #[test]
    fn disjoint_embeddings_commute(a in small_matrix(2), b in small_matrix(4)) {
        let x = ExactMatrix::kron_embed(&a, 1, 3, 2).unwrap();
        let y = ExactMatrix::kron_embed(&b, 2, 3, 2).unwrap();
        prop_assert_eq!(y.dim(), 8);
        let z = ExactMatrix::kron_embed(&a, 3, 3, 2).unwrap();
        prop_assert!(x.commutator(&z).is_zero());
        let w = ExactMatrix::kron_embed(&b, 1, 4, 2).unwrap();
        let v = ExactMatrix::kron_embed(&b, 3, 4, 2).unwrap();
        prop_assert!(w.commutator(&v).is_zero());
    }

    #[test]
    fn inverse_round_trip(a in small_matrix(3)) {
        match a.inverse() {
            Ok(ai) => prop_assert!(a.mul(&ai).is_identity() && ai.mul(&a).is_identity()),
            Err(_) => prop_assert!(a.rank() < 3),
        }
    }
}

#[test]
fn mixed_product() {
    let a = ExactMatrix::from_fn(2, |i, j| parse_scalar(&format!("q^{} + {}", i, j)).unwrap());
    let b = ExactMatrix::from_fn(2, |i, j| parse_scalar(&format!("{} - q^-{}", i + 1, j)).unwrap());
    let c = a.transpose();
    let d = b.transpose();
    assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
}

#[test]
fn zero_row_is_singular() {
    let a = ExactMatrix::from_fn(3, |i, j| if i == 1 { RatFunc::zero() } else { RatFunc::int((i + j) as i64 + 1) });
    assert_eq!(a.inverse(), Err(regz_exact::ExactError::Singular));
}
