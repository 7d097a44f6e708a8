//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use volseg_core::{BinaryMask, Dims, SeedPoint, VoxelVolume};

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn random_mask(rng: &mut impl Rng, dims: Dims, density: f64) -> BinaryMask {
    BinaryMask::from_fn(dims, |_, _, _| rng.random_bool(density))
}

fn face_neighbours(dims: Dims, i: usize) -> Vec<usize> {
    let (x, y, z) = dims.coords(i);
    let mut out = Vec::with_capacity(6);
    if x > 0 {
        out.push(dims.index(x - 1, y, z));
    }
    if x + 1 < dims.nx {
        out.push(dims.index(x + 1, y, z));
    }
    if y > 0 {
        out.push(dims.index(x, y - 1, z));
    }
    if y + 1 < dims.ny {
        out.push(dims.index(x, y + 1, z));
    }
    if z > 0 {
        out.push(dims.index(x, y, z - 1));
    }
    if z + 1 < dims.nz {
        out.push(dims.index(x, y, z + 1));
    }
    out
}

/// Least fixpoint of "seed is in; an accepted voxel with an in-region face
/// neighbour is in", found by sweeping the whole volume until nothing changes.
pub fn grow_fixpoint(vol: &VoxelVolume, seed: SeedPoint, threshold: f64) -> BinaryMask {
    let dims = vol.dims();
    let reference = vol.get(seed.x, seed.y, seed.z);
    let accepted: Vec<bool> = vol
        .voxels()
        .iter()
        .map(|v| (v - reference).abs() < threshold)
        .collect();
    let mut inside = vec![false; dims.len()];
    inside[dims.index(seed.x, seed.y, seed.z)] = true;
    loop {
        let mut changed = false;
        for i in 0..dims.len() {
            if !inside[i] && accepted[i] && face_neighbours(dims, i).iter().any(|&j| inside[j]) {
                inside[i] = true;
                changed = true;
            }
        }
        if !changed {
            return BinaryMask::new(dims, inside).unwrap();
        }
    }
}

/// True when every voxel of the mask reaches `start` through 6-connected true voxels.
pub fn is_six_connected(mask: &BinaryMask) -> bool {
    let dims = mask.dims();
    let bits = mask.bits();
    let Some(start) = bits.iter().position(|&b| b) else {
        return true;
    };
    let mut seen = vec![false; dims.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut reached = 0;
    while let Some(i) = stack.pop() {
        reached += 1;
        for j in face_neighbours(dims, i) {
            if bits[j] && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    reached == mask.count()
}

/// Two-phase nearer-mean partition reached by alternating "compute both means"
/// and "move every voxel to the phase whose mean is strictly nearer".
pub fn nearer_mean_partition(vol: &VoxelVolume, initial: &BinaryMask) -> BinaryMask {
    let mut inside = initial.bits().to_vec();
    loop {
        let (mut s_in, mut n_in, mut s_out, mut n_out) = (0.0, 0usize, 0.0, 0usize);
        for (&u, &b) in vol.voxels().iter().zip(&inside) {
            if b {
                s_in += u;
                n_in += 1;
            } else {
                s_out += u;
                n_out += 1;
            }
        }
        assert!(n_in > 0 && n_out > 0, "oracle lost a phase");
        let (c_in, c_out) = (s_in / n_in as f64, s_out / n_out as f64);
        let mut changed = false;
        for (&u, b) in vol.voxels().iter().zip(inside.iter_mut()) {
            let d_in = (u - c_in).powi(2);
            let d_out = (u - c_out).powi(2);
            let want = if d_in < d_out {
                true
            } else if d_out < d_in {
                false
            } else {
                *b
            };
            if want != *b {
                *b = want;
                changed = true;
            }
        }
        if !changed {
            return BinaryMask::new(vol.dims(), inside).unwrap();
        }
    }
}

/// Exact signed Euclidean distance by scanning every opposite-phase voxel:
/// outside voxels get the distance to the nearest inside voxel, inside voxels
/// minus the distance to the nearest outside voxel.
pub fn brute_sdf(mask: &BinaryMask) -> Vec<f64> {
    let dims = mask.dims();
    let bits = mask.bits();
    (0..dims.len())
        .map(|i| {
            let (x, y, z) = dims.coords(i);
            let best = (0..dims.len())
                .filter(|&j| bits[j] != bits[i])
                .map(|j| {
                    let (a, b, c) = dims.coords(j);
                    let d = |p: usize, q: usize| (p as f64 - q as f64).powi(2);
                    d(x, a) + d(y, b) + d(z, c)
                })
                .fold(f64::INFINITY, f64::min)
                .sqrt();
            if bits[i] {
                -best
            } else {
                best
            }
        })
        .collect()
}

/// Random two-valued cube of side `n`: a union of random boxes holds the value
/// `hi`, the rest `lo`. The initial mask is the bright set's bounding box
/// shifted by a few voxels, a rough but overlapping first guess.
pub fn two_valued_case(rng: &mut impl Rng, n: usize) -> (VoxelVolume, BinaryMask) {
    let dims = Dims::cube(n).unwrap();
    let lo = rng.random_range(0.0..60.0_f64).round();
    let hi = rng.random_range(140.0..255.0_f64).round();
    let boxes: Vec<[(usize, usize); 3]> = (0..rng.random_range(1..=3))
        .map(|_| {
            let mut b = [(0, 0); 3];
            for axis in &mut b {
                let start = rng.random_range(n / 4..n / 2);
                let len = rng.random_range(n / 6..n / 3);
                *axis = (start, start + len);
            }
            b
        })
        .collect();
    let bright = |x: usize, y: usize, z: usize| {
        boxes.iter().any(|b| {
            (b[0].0..b[0].1).contains(&x)
                && (b[1].0..b[1].1).contains(&y)
                && (b[2].0..b[2].1).contains(&z)
        })
    };
    let vol = VoxelVolume::from_fn(dims, |x, y, z| if bright(x, y, z) { hi } else { lo }).unwrap();
    let mut bbox = [(usize::MAX, 0usize); 3];
    for b in &boxes {
        for k in 0..3 {
            bbox[k].0 = bbox[k].0.min(b[k].0);
            bbox[k].1 = bbox[k].1.max(b[k].1);
        }
    }
    let shift: Vec<isize> = (0..3)
        .map(|_| rng.random_range(-3i64..=3) as isize)
        .collect();
    let initial = BinaryMask::from_fn(dims, |x, y, z| {
        [x, y, z].iter().enumerate().all(|(k, &c)| {
            let c = c as isize - shift[k];
            c >= bbox[k].0 as isize && c < bbox[k].1 as isize
        })
    });
    (vol, initial)
}
