use delshadow_core::seq::decode_index;
use delshadow_core::{
    canonicalize_traced, compress, delta, delta_r, initial_segment_leq, CanonStepKind, Family,
    ReducedWord, ReducedWords, Sequence, ShadowRadius,
};
use proptest::prelude::*;

fn arb_space() -> impl Strategy<Value = (usize, u8)> {
    (1usize..=5, 1u8..=3).prop_filter("small cube", |(n, k)| (u64::from(*k) + 1).pow(*n as u32) <= 1024)
}

fn family_from(n: usize, k: u8, picks: &[u64]) -> Family {
    let size = (u64::from(k) + 1).pow(n as u32);
    Family::from_sequences(n, k, picks.iter().map(|p| decode_index(n, k, p % size))).unwrap()
}

fn arb_family() -> impl Strategy<Value = Family> {
    (arb_space(), prop::collection::vec(any::<u64>(), 0..60)).prop_map(|((n, k), picks)| family_from(n, k, &picks))
}

fn arb_family_pair() -> impl Strategy<Value = (Family, Family)> {
    (
        arb_space(),
        prop::collection::vec(any::<u64>(), 0..40),
        prop::collection::vec(any::<u64>(), 0..40),
    )
        .prop_map(|((n, k), a, b)| (family_from(n, k, &a), family_from(n, k, &b)))
}

/// Every valid `(s, t)` pair for compressions in `{0,…,k}^n`.
fn valid_pairs(n: usize, k: u8) -> Vec<(ReducedWord, ReducedWord)> {
    let mut pairs = Vec::new();
    for len in 0..=n {
        let same: Vec<ReducedWord> = ReducedWords::new(len, k).unwrap().collect();
        for s in &same {
            for t in &same {
                if s != t {
                    pairs.push((s.clone(), t.clone()));
                }
            }
            if len >= 1 {
                for t in ReducedWords::new(len - 1, k).unwrap() {
                    pairs.push((s.clone(), t));
                }
            }
        }
    }
    pairs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn shadow_is_a_union_and_monotone((a, b) in arb_family_pair(), r in 0u8..=3) {
        let r = ShadowRadius::new(r.min(a.k()), a.k()).unwrap();
        let u = a.union(&b).unwrap();
        let da = delta_r(&a, r).unwrap();
        let db = delta_r(&b, r).unwrap();
        let du = delta_r(&u, r).unwrap();
        prop_assert_eq!(&du, &da.union(&db).unwrap());
        prop_assert!(da.is_subset(&du));
    }

    #[test]
    fn shadow_nests_in_radius(a in arb_family()) {
        for r in 0..a.k() {
            let lo = delta_r(&a, ShadowRadius::new(r, a.k()).unwrap()).unwrap();
            let hi = delta_r(&a, ShadowRadius::new(r + 1, a.k()).unwrap()).unwrap();
            prop_assert!(lo.is_subset(&hi));
        }
    }

    #[test]
    fn delta_keeps_reduced_word_and_moves_down_a_level(a in arb_family()) {
        for x in a.iter() {
            let single = Family::from_sequences(a.n(), a.k(), [x.clone()]).unwrap();
            for y in delta(&single).unwrap().iter() {
                prop_assert_eq!(y.reduced(), x.reduced());
                prop_assert_eq!(y.zero_count() + 1, x.zero_count());
            }
            for r in 0..=a.k() {
                let s = x.low_count(r);
                for y in delta_r(&single, ShadowRadius::new(r, a.k()).unwrap()).unwrap().iter() {
                    prop_assert_eq!(y.low_count(r) + 1, s);
                }
            }
        }
    }

    #[test]
    fn compress_keeps_size_and_never_grows_the_shadow(a in arb_family(), pick in any::<prop::sample::Index>()) {
        let pairs = valid_pairs(a.n(), a.k());
        let (s, t) = pick.get(&pairs);
        let b = compress(&a, s, t).unwrap();
        prop_assert_eq!(b.len(), a.len());
        prop_assert!(delta(&b).unwrap().len() <= delta(&a).unwrap().len());
        // untouched outside C_s ∪ C_t
        let outside = |f: &Family| -> Vec<Sequence> {
            f.iter().filter(|x| x.reduced() != *s && x.reduced() != *t).cloned().collect()
        };
        prop_assert_eq!(outside(&a), outside(&b));
        // idempotent
        prop_assert_eq!(compress(&b, s, t).unwrap(), b);
    }

    #[test]
    fn canonicalize_reaches_the_initial_segment(a in arb_family()) {
        let (out, trace) = canonicalize_traced(&a).unwrap();
        prop_assert_eq!(&out, &initial_segment_leq(a.n(), a.k(), a.len() as u64).unwrap());
        prop_assert!(delta(&out).unwrap().len() <= delta(&a).unwrap().len());
        for step in trace {
            match step.kind {
                CanonStepKind::Colex => prop_assert_eq!(step.before.v, step.after.v),
                CanonStepKind::CrossLevel => prop_assert!(step.after.v < step.before.v),
                CanonStepKind::SameLevel => prop_assert!(step.after.w < step.before.w),
            }
        }
    }
}
