mod common;

use proptest::prelude::*;
use volseg_core::filters::{gaussian_blur3d_ordered, gaussian_kernel};
use volseg_core::{
    close_mask, gaussian_blur3d, Axis, BinaryMask, Dims, StructuringElement, VoxelVolume,
};

fn sparse_mask(seed: u64, dims: Dims) -> BinaryMask {
    use rand::Rng;
    let mut rng = common::rng(seed);
    let density = rng.random_range(0.01..0.2);
    common::random_mask(&mut rng, dims, density)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn closing_is_idempotent_and_extensive(seed in any::<u64>(), width in prop::sample::select(vec![3usize, 5, 7, 21])) {
        let mask = sparse_mask(seed, Dims::cube(32).unwrap());
        let se = StructuringElement::new(width).unwrap();
        let once = close_mask(&mask, se);
        let twice = close_mask(&once, se);
        prop_assert_eq!(&twice, &once);
        // away from the volume border, closing never removes a voxel
        let h = se.half();
        let dims = mask.dims();
        for z in 0..dims.nz {
            for y in h..dims.ny - h {
                for x in h..dims.nx - h {
                    if mask.get(x, y, z) {
                        prop_assert!(once.get(x, y, z), "lost ({x},{y},{z})");
                    }
                }
            }
        }
    }

    #[test]
    fn blur_is_order_invariant_and_bounded(values in prop::collection::vec(0.0f64..255.0, 10 * 9 * 8), sigma in 0.3f64..2.5) {
        let vol = VoxelVolume::new(Dims::new(10, 9, 8).unwrap(), [1.0; 3], values).unwrap();
        let a = gaussian_blur3d_ordered(&vol, sigma, [Axis::X, Axis::Y, Axis::Z]).unwrap();
        let b = gaussian_blur3d_ordered(&vol, sigma, [Axis::Z, Axis::Y, Axis::X]).unwrap();
        let (lo, hi) = vol.min_max();
        for (p, q) in a.voxels().iter().zip(b.voxels()) {
            prop_assert!((p - q).abs() <= 1e-9);
            prop_assert!(*p >= lo - 1e-9 && *p <= hi + 1e-9);
        }
        let default_order = gaussian_blur3d(&vol, sigma).unwrap();
        prop_assert_eq!(default_order.voxels(), a.voxels());
    }
}

#[test]
fn closing_fills_a_small_hole() {
    let dims = Dims::new(40, 40, 3).unwrap();
    let mask = BinaryMask::from_fn(dims, |x, y, _| {
        let square = (12..27).contains(&x) && (12..27).contains(&y);
        let hole = (18..21).contains(&x) && (18..21).contains(&y);
        square && !hole
    });
    let closed = close_mask(&mask, StructuringElement::new(21).unwrap());
    let filled = BinaryMask::from_fn(dims, |x, y, _| {
        (12..27).contains(&x) && (12..27).contains(&y)
    });
    assert_eq!(closed, filled);
}

#[test]
fn kernel_matches_sampled_gaussian() {
    for &sigma in &[0.5, 1.0, 1.5, 3.0] {
        let k = gaussian_kernel(sigma).unwrap();
        let r = (3.0 * sigma).ceil() as i64;
        assert_eq!(k.len() as i64, 2 * r + 1);
        let raw: Vec<f64> = (-r..=r)
            .map(|t| (-(t * t) as f64 / (2.0 * sigma * sigma)).exp())
            .collect();
        let total: f64 = raw.iter().sum();
        for (got, want) in k.iter().zip(&raw) {
            assert!((got - want / total).abs() < 1e-15);
        }
    }
}
