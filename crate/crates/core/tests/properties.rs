mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tbtrellis::oracle;
use tbtrellis::reduction::{plan_forward_reduction, reduce_error_trellis, Direction, Shift};
use tbtrellis::trellis::{build_error_trellis, enumerate_paths, labels_of};
use tbtrellis::{PolyMatrix, SymbolSequence, SyndromeFormer};

/// A canonical `H` and a matching received word, both derived from `seed`.
fn instance(seed: u64, delay: bool, len: usize) -> (PolyMatrix, SymbolSequence) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n) = common::random_shape(&mut rng);
    let h = common::random_canonical(&mut rng, m, n, delay);
    let z = common::random_sequence(&mut rng, n, len.max(h.memory_length()));
    (h, z)
}

fn sequence(width: usize) -> impl Strategy<Value = SymbolSequence> {
    proptest::collection::vec(0u32..(1 << width), 1..12)
        .prop_map(move |s| SymbolSequence::new(width, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syndrome_is_linear(seed in any::<u64>(), other in any::<u64>()) {
        let (h, a) = instance(seed, false, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(other);
        let b = common::random_sequence(&mut rng, h.cols(), a.len());
        let former = SyndromeFormer::new(&h).unwrap();
        let sa = former.tailbiting_syndrome(&a).unwrap();
        let sb = former.tailbiting_syndrome(&b).unwrap();
        let sab = former.tailbiting_syndrome(&a.xor(&b).unwrap()).unwrap();
        prop_assert_eq!(sab.syndrome, sa.syndrome.xor(&sb.syndrome).unwrap());
        prop_assert_eq!(sab.sigma_fin, sa.sigma_fin.add(&sb.sigma_fin).unwrap());
    }

    #[test]
    fn second_pass_ends_where_history_says(seed in any::<u64>()) {
        let (h, z) = instance(seed, true, 7);
        let former = SyndromeFormer::new(&h).unwrap();
        let tb = former.tailbiting_syndrome(&z).unwrap();
        let mem = former.memory();
        let tail = &z.symbols()[z.len() - mem..];
        prop_assert_eq!(former.state_from_history(tail).unwrap(), tb.sigma_fin);
    }

    #[test]
    fn syndrome_commutes_with_rotation(seed in any::<u64>(), r in 0i64..6) {
        let (h, z) = instance(seed, false, 6);
        let former = SyndromeFormer::new(&h).unwrap();
        let zeta = former.tailbiting_syndrome(&z).unwrap().syndrome;
        let rotated = former.tailbiting_syndrome(&z.rotate(r)).unwrap().syndrome;
        prop_assert_eq!(rotated, zeta.rotate(r));
    }

    #[test]
    fn shift_restore_round_trip(x in sequence(4), amounts in proptest::collection::vec(0u32..9, 4), fwd in any::<bool>()) {
        let dir = if fwd { Direction::Forward } else { Direction::Backward };
        let s = Shift::new(dir, amounts);
        prop_assert_eq!(s.restore(&s.apply(&x).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(s.inverse().apply(&s.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn plan_text_round_trip(amounts in proptest::collection::vec(0u32..5, 1..5), fwd in any::<bool>()) {
        let dir = if fwd { Direction::Forward } else { Direction::Backward };
        let s = Shift::new(dir, amounts.clone());
        let back: Shift = s.to_string().parse().unwrap();
        prop_assert!((0..amounts.len()).all(|j| back.amount(j) == s.amount(j)));
        if !s.is_identity() {
            prop_assert_eq!(back.direction(), dir);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trellis_and_reduction_match_oracle(seed in any::<u64>(), len in 4usize..=5) {
        let (h, z) = instance(seed, true, len);
        let expected = oracle::coset_paths(&h, &z).unwrap();
        let t = build_error_trellis(&h, &z).unwrap();
        prop_assert_eq!(labels_of(&enumerate_paths(&t).unwrap()), expected.clone());
        if let Ok(plan) = plan_forward_reduction(&h) {
            if 2 * plan.shift.max_amount() as usize <= z.len() {
                let r = reduce_error_trellis(&h, &z, &plan).unwrap();
                prop_assert_eq!(r.reduced.syndrome(), r.original.syndrome());
                let restored: oracle::PathSet = enumerate_paths(&r.reduced)
                    .unwrap()
                    .iter()
                    .map(|p| r.restore(&p.labels).unwrap())
                    .collect();
                prop_assert_eq!(restored, expected);
            }
        }
    }
}
