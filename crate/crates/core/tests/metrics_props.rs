mod common;

use proptest::prelude::*;
use volseg_core::{similarity, BinaryMask, Dims};

fn pair() -> impl Strategy<Value = (BinaryMask, BinaryMask)> {
    let dims = Dims::cube(8).unwrap();
    (
        prop::collection::vec(any::<bool>(), dims.len()),
        prop::collection::vec(any::<bool>(), dims.len()),
    )
        .prop_filter("non-empty masks", |(a, b)| {
            a.iter().any(|&v| v) && b.iter().any(|&v| v)
        })
        .prop_map(move |(a, b)| {
            (
                BinaryMask::new(dims, a).unwrap(),
                BinaryMask::new(dims, b).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn identities_hold((r, s) in pair()) {
        let m = similarity(&r, &s).unwrap();
        let overlap = r.bits().iter().zip(s.bits()).filter(|(a, b)| **a && **b).count();
        prop_assert_eq!(m.n_ref, r.count());
        prop_assert_eq!(m.n_seg, s.count());
        prop_assert_eq!(m.n_overlap, overlap);
        prop_assert!((m.si - 2.0 * m.ov / (1.0 + m.ov)).abs() < 1e-12);
        prop_assert!((m.of + m.ef - m.n_seg as f64 / m.n_ref as f64).abs() < 1e-12);
        for v in [m.si, m.of, m.ov] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        prop_assert!(m.ef >= 0.0);
    }

    #[test]
    fn si_and_ov_are_symmetric((r, s) in pair()) {
        let a = similarity(&r, &s).unwrap();
        let b = similarity(&s, &r).unwrap();
        prop_assert_eq!(a.si, b.si);
        prop_assert_eq!(a.ov, b.ov);
        prop_assert_eq!(a.n_overlap, b.n_overlap);
    }

    #[test]
    fn self_comparison_is_perfect((r, _s) in pair()) {
        let m = similarity(&r, &r).unwrap();
        prop_assert_eq!((m.si, m.of, m.ov, m.ef), (1.0, 1.0, 1.0, 0.0));
    }
}
