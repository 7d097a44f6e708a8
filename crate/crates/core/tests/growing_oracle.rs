mod common;

use proptest::prelude::*;
use volseg_core::{region_grow, Acceptance, Dims, GrowParams, SeedPoint, VoxelVolume};

fn random_volume(seed: u64, n: usize, levels: u32) -> VoxelVolume {
    use rand::Rng;
    let mut rng = common::rng(seed);
    VoxelVolume::from_fn(Dims::cube(n).unwrap(), |_, _, _| {
        rng.random_range(0..levels) as f64
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn seed_fixed_matches_fixpoint(seed in any::<u64>(), t in 0.5f64..8.0, sx in 0usize..12, sy in 0usize..12, sz in 0usize..12) {
        let vol = random_volume(seed, 12, 16);
        let s = SeedPoint::new(sx, sy, sz);
        let got = region_grow(&vol, s, GrowParams::new(t, Acceptance::SeedFixed)).unwrap();
        prop_assert_eq!(got, common::grow_fixpoint(&vol, s, t));
    }

    #[test]
    fn seed_fixed_is_monotone_in_threshold(seed in any::<u64>(), t in 0.5f64..6.0, dt in 0.0f64..4.0) {
        let vol = random_volume(seed, 10, 16);
        let s = SeedPoint::new(5, 5, 5);
        let small = region_grow(&vol, s, GrowParams::new(t, Acceptance::SeedFixed)).unwrap();
        let large = region_grow(&vol, s, GrowParams::new(t + dt, Acceptance::SeedFixed)).unwrap();
        for (a, b) in small.bits().iter().zip(large.bits()) {
            prop_assert!(!a || *b);
        }
    }

    #[test]
    fn grown_region_is_connected_and_seeded(seed in any::<u64>(), t in 0.0f64..8.0, mean in any::<bool>()) {
        let vol = random_volume(seed, 10, 12);
        let mode = if mean { Acceptance::RunningMean } else { Acceptance::SeedFixed };
        let s = SeedPoint::new(3, 4, 5);
        let got = region_grow(&vol, s, GrowParams::new(t, mode)).unwrap();
        prop_assert!(got.get(3, 4, 5));
        prop_assert!(common::is_six_connected(&got));
        prop_assert_eq!(region_grow(&vol, s, GrowParams::new(t, mode)).unwrap(), got);
    }
}
