use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadop_core::dong::dong_verdict;
use quadop_core::free3::{free3_action, is_s3_stable, s3_closure};
use quadop_core::koszul::{dual_operad, pairing_matrix};
use quadop_core::linalg::{q, rref_canonical, MatrixQ, SubspaceQ};
use quadop_core::operad::change_basis;
use quadop_core::parse::{parse_relation, pretty_print};
use quadop_core::random::{random_equivariant, random_free3_vector, random_generator_space, random_operad};
use quadop_core::PermS3;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixQ> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
        MatrixQ::from_rows(cols, xs.chunks(cols).map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subspace_dimension_formula(a in small_matrix(3, 6), b in small_matrix(4, 6)) {
        let (u, w) = (SubspaceQ::row_space(&a), SubspaceQ::row_space(&b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(u.dim() + w.dim(), sum.dim() + meet.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&w).unwrap());
    }

    #[test]
    fn rref_is_idempotent(a in small_matrix(4, 5)) {
        let r = rref_canonical(&a);
        prop_assert_eq!(rref_canonical(&r), r.clone());
        prop_assert_eq!(r.rank(), a.rank());
    }

    #[test]
    fn parser_round_trip(seed in any::<u64>(), d in 1usize..=3, structured in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, structured);
        let v = random_free3_vector(&mut rng, &g, 5);
        let text = pretty_print(&v, &g);
        prop_assert_eq!(parse_relation(&text, &g).unwrap(), v);
    }

    #[test]
    fn pairing_is_sign_equivariant(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, false);
        prop_assert!(pairing_matrix(&g).is_ok());
    }

    #[test]
    fn closure_is_stable_and_idempotent(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, seed % 2 == 0);
        let v = random_free3_vector(&mut rng, &g, 3);
        let c = s3_closure(&g, [v]);
        prop_assert!(is_s3_stable(&g, &c));
        prop_assert_eq!(s3_closure(&g, c.basis_vectors()), c);
    }

    #[test]
    fn action_is_a_representation(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, false);
        for a in PermS3::ALL {
            for b in PermS3::ALL {
                let lhs = free3_action(&g, a.compose(b));
                prop_assert_eq!(lhs, free3_action(&g, a).mul(&free3_action(&g, b)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_is_involutive(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, seed % 3 != 0);
        let p = random_operad(&mut rng, g, 2);
        let dual = dual_operad(&p).unwrap();
        prop_assert_eq!(dual.relations().dim() + p.relations().dim(), 3 * d * d);
        let back = dual_operad(&dual).unwrap();
        prop_assert_eq!(back.relations(), p.relations());
    }

    #[test]
    fn verdict_is_basis_invariant(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_generator_space(&mut rng, d, true);
        let p = random_operad(&mut rng, g, 2);
        let t = random_equivariant(&mut rng, p.gens().swap());
        let moved = change_basis(&p, &t).unwrap();
        prop_assert_eq!(dong_verdict(&moved).unwrap().verdict, dong_verdict(&p).unwrap().verdict);
    }
}
