use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{dense_mul, dense_rank, random_dense};
use qdcss::gf2::{mat_mul, nullspace_basis, rank, solve_membership, RowEchelon};
use qdcss::{catalog, BitMatrix, BitVector, Error};

fn matrix_strategy(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(0u8..2, c), r))
}

#[test]
fn identity_times_m_is_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = BitMatrix::from_dense(&random_dense(&mut rng, 3, 7, 0.5));
    assert_eq!(mat_mul(&BitMatrix::identity(3), &m).unwrap(), m);
}

#[test]
fn one_one_times_column_of_ones_is_zero() {
    let a = BitMatrix::from_dense(&[vec![1, 1]]);
    let b = BitMatrix::from_dense(&[vec![1], vec![1]]);
    assert_eq!(mat_mul(&a, &b).unwrap().to_dense(), vec![vec![0]]);
}

#[test]
fn random_8x8_product_matches_dot_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let a = random_dense(&mut rng, 8, 8, 0.5);
        let b = random_dense(&mut rng, 8, 8, 0.5);
        let got = mat_mul(&BitMatrix::from_dense(&a), &BitMatrix::from_dense(&b)).unwrap();
        assert_eq!(got.to_dense(), dense_mul(&a, &b));
    }
}

#[test]
fn product_shape_mismatch_names_both_shapes() {
    let err = mat_mul(&BitMatrix::zeros(2, 3), &BitMatrix::zeros(4, 5)).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { left: (2, 3), right: (4, 5), .. }));
    let text = err.to_string();
    assert!(text.contains("2x3") && text.contains("4x5"), "{text}");
}

#[test]
fn rank_of_zero_and_identity() {
    assert_eq!(rank(&BitMatrix::zeros(5, 9)), 0);
    assert_eq!(rank(&BitMatrix::identity(13)), 13);
}

#[test]
fn construction_a_256_rank_matches_dense_elimination() {
    let h = catalog::a_256().build().unwrap().h;
    let oracle = dense_rank(&h.to_dense());
    assert_eq!(rank(&h), oracle);
    // Frozen from the dense oracle; also below the 3·32 − 2 bound.
    assert_eq!(oracle, 84);
    assert!(oracle <= 94);
}

#[test]
fn membership_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let basis = BitMatrix::from_dense(&random_dense(&mut rng, 6, 20, 0.3));
    assert!(solve_membership(&basis, &BitVector::zeros(20)).unwrap());
    assert!(solve_membership(&basis, &basis.row(4)).unwrap());
    assert!(solve_membership(&basis, &basis.row(1).xor(&basis.row(5))).unwrap());
    let base_rank = rank(&basis);
    let mut outside = 0;
    for _ in 0..50 {
        let v = BitVector::from_bits(&(0..20).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
        let grows = rank(&basis.vstack(&BitMatrix::from_rows(20, &[v.clone()]).unwrap()).unwrap()) > base_rank;
        assert_eq!(solve_membership(&basis, &v).unwrap(), !grows);
        outside += grows as usize;
    }
    assert!(outside > 0);
}

#[test]
fn membership_length_mismatch_is_an_error() {
    assert!(solve_membership(&BitMatrix::zeros(2, 5), &BitVector::zeros(4)).is_err());
}

#[test]
fn nullspace_examples() {
    assert_eq!(nullspace_basis(&BitMatrix::identity(6)).rows(), 0);
    let n = nullspace_basis(&BitMatrix::zeros(3, 5));
    assert_eq!(rank(&n), 5);
    assert_eq!(n.rows(), 5);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let m = BitMatrix::from_dense(&random_dense(&mut rng, 6, 10, 0.5));
    let ns = nullspace_basis(&m);
    assert_eq!(ns.rows(), 10 - rank(&m));
    for r in 0..ns.rows() {
        assert!(m.mul_vec(&ns.row(r)).unwrap().is_zero());
    }
}

#[test]
fn echelon_pivots_are_increasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = BitMatrix::from_dense(&random_dense(&mut rng, 12, 30, 0.2));
    let e = RowEchelon::new(&m);
    assert!(e.pivots().windows(2).all(|w| w[0] < w[1]));
    assert_eq!(e.rank(), rank(&m));
    assert_eq!(rank(&e.basis()), e.rank());
}

proptest! {
    #[test]
    fn rank_matches_dense_oracle(m in matrix_strategy(12, 70)) {
        prop_assert_eq!(rank(&BitMatrix::from_dense(&m)), dense_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in matrix_strategy(10, 80)) {
        let b = BitMatrix::from_dense(&m);
        prop_assert_eq!(rank(&b), rank(&b.transpose()));
        prop_assert_eq!(b.transpose().transpose(), b);
    }

    #[test]
    fn product_is_associative(seed in any::<u64>(), r in 1usize..8, k in 1usize..70, l in 1usize..8, c in 1usize..70) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = BitMatrix::from_dense(&random_dense(&mut rng, r, k, 0.5));
        let b = BitMatrix::from_dense(&random_dense(&mut rng, k, l, 0.5));
        let m = BitMatrix::from_dense(&random_dense(&mut rng, l, c, 0.5));
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &m).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &m).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_matches_dense_oracle(seed in any::<u64>(), r in 1usize..9, k in 1usize..70, c in 1usize..70) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_dense(&mut rng, r, k, 0.5);
        let b = random_dense(&mut rng, k, c, 0.5);
        let got = mat_mul(&BitMatrix::from_dense(&a), &BitMatrix::from_dense(&b)).unwrap();
        prop_assert_eq!(got.to_dense(), dense_mul(&a, &b));
    }

    #[test]
    fn nullspace_completes_rank(m in matrix_strategy(10, 75)) {
        let b = BitMatrix::from_dense(&m);
        let ns = nullspace_basis(&b);
        prop_assert_eq!(rank(&b) + ns.rows(), b.cols());
        prop_assert_eq!(rank(&ns), ns.rows());
        for r in 0..ns.rows() {
            prop_assert!(b.mul_vec(&ns.row(r)).unwrap().is_zero());
        }
    }

    #[test]
    fn xor_weight_parity(a in proptest::collection::vec(0u8..2, 1..200), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<u8> = (0..a.len()).map(|_| rng.gen_range(0..2)).collect();
        let (va, vb) = (BitVector::from_bits(&a), BitVector::from_bits(&b));
        prop_assert_eq!(va.xor(&vb).weight() % 2, (va.weight() + vb.weight()) % 2);
    }

    #[test]
    fn membership_agrees_with_rank_growth(m in matrix_strategy(8, 20), v in proptest::collection::vec(0u8..2, 20)) {
        let cols = m[0].len();
        let v = BitVector::from_bits(&v[..cols]);
        let b = BitMatrix::from_dense(&m);
        let grows = rank(&b.vstack(&BitMatrix::from_rows(cols, &[v.clone()]).unwrap()).unwrap()) > rank(&b);
        prop_assert_eq!(solve_membership(&b, &v).unwrap(), !grows);
    }
}
