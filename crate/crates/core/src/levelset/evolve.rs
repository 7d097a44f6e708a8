use std::f64::consts::PI;

use rayon::prelude::*;

use super::curvature::curvature_at;
use super::{ChanVeseParams, CvState, CvTrace, TraceEntry};
use crate::error::{Error, Result};
use crate::volume::{mask_to_sdf, BinaryMask, Dims, LevelSetField, VoxelVolume};

/// Regularized Dirac `eps / (pi * (eps^2 + phi^2))`.
#[inline]
pub fn dirac(phi: f64, epsilon: f64) -> f64 {
    epsilon / (PI * (epsilon * epsilon + phi * phi))
}

/// Per-z-slice partial results combined in slice order, so the total does not
/// depend on how rayon schedules the slices.
fn reduce_slices<T, F, G>(dims: Dims, init: T, per_slice: F, combine: G) -> T
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
    G: Fn(T, T) -> T,
{
    let partial: Vec<T> = (0..dims.nz).into_par_iter().map(per_slice).collect();
    partial.into_iter().fold(init, combine)
}

#[derive(Clone, Copy, Default)]
struct Sums {
    out_sum: f64,
    out_n: usize,
    in_sum: f64,
    in_n: usize,
}

fn phase_sums(u: &[f64], phi: &[f64], dims: Dims) -> Sums {
    let plane = dims.slice_len();
    reduce_slices(
        dims,
        Sums::default(),
        |z| {
            let mut s = Sums::default();
            for i in z * plane..(z + 1) * plane {
                if phi[i] < 0.0 {
                    s.in_sum += u[i];
                    s.in_n += 1;
                } else {
                    s.out_sum += u[i];
                    s.out_n += 1;
                }
            }
            s
        },
        |a, b| Sums {
            out_sum: a.out_sum + b.out_sum,
            out_n: a.out_n + b.out_n,
            in_sum: a.in_sum + b.in_sum,
            in_n: a.in_n + b.in_n,
        },
    )
}

/// Sharp region means `(c1, c2)`: `c1` over `phi >= 0`, `c2` over `phi < 0`.
///
/// An empty region is reported as [`Error::PhaseCollapse`] at iteration 0.
pub fn region_means(vol: &VoxelVolume, phi: &LevelSetField) -> Result<(f64, f64)> {
    vol.dims().ensure_same(&phi.dims())?;
    means(vol.voxels(), phi.values(), vol.dims()).ok_or(Error::PhaseCollapse { iter: 0 })
}

fn means(u: &[f64], phi: &[f64], dims: Dims) -> Option<(f64, f64)> {
    let s = phase_sums(u, phi, dims);
    if s.in_n == 0 || s.out_n == 0 {
        return None;
    }
    Some((s.out_sum / s.out_n as f64, s.in_sum / s.in_n as f64))
}

/// One explicit Euler step. Region means are taken from the incoming field.
pub fn cv_step(vol: &VoxelVolume, state: &CvState, params: &ChanVeseParams) -> Result<CvState> {
    let dims = vol.dims();
    dims.ensure_same(&state.phi.dims())?;
    let u = vol.voxels();
    let phi = state.phi.values();
    let (c1, c2) = means(u, phi, dims).ok_or(Error::PhaseCollapse { iter: state.iter })?;

    let p = *params;
    let next: Vec<f64> = (0..dims.len())
        .into_par_iter()
        .map(|i| {
            let v = phi[i];
            let mut force =
                -p.lambda1 * (u[i] - c1).powi(2) + p.lambda2 * (u[i] - c2).powi(2) + p.nu;
            if p.mu != 0.0 {
                let (x, y, z) = dims.coords(i);
                force += p.mu * curvature_at(phi, dims, x, y, z);
            }
            v + p.dt * dirac(v, p.epsilon) * force
        })
        .collect();

    let flips = phi
        .par_iter()
        .zip(next.par_iter())
        .filter(|(a, b)| (**a < 0.0) != (**b < 0.0))
        .count();

    Ok(CvState {
        phi: LevelSetField::new(dims, next)?,
        c1,
        c2,
        iter: state.iter + 1,
        last_change: flips as f64 / dims.len() as f64,
    })
}

impl CvState {
    /// Fresh state for `phi` with its current region means.
    pub fn new(vol: &VoxelVolume, phi: LevelSetField) -> Result<Self> {
        let (c1, c2) = region_means(vol, &phi)?;
        Ok(CvState {
            phi,
            c1,
            c2,
            iter: 0,
            last_change: 0.0,
        })
    }
}

/// Replaces `phi` by the signed distance field of `{phi < 0}`.
pub fn redistance(state: &CvState) -> Result<CvState> {
    let mask = state.phi.inside_mask();
    let phi = mask_to_sdf(&mask).map_err(|_| Error::PhaseCollapse { iter: state.iter })?;
    Ok(CvState {
        phi,
        ..state.clone()
    })
}

/// Chan–Vese energy of `phi`: `mu * sum(delta*|grad phi|) + nu * |inside|`
/// plus the two fit terms around the sharp region means.
pub fn cv_energy(vol: &VoxelVolume, phi: &LevelSetField, params: &ChanVeseParams) -> f64 {
    let dims = vol.dims();
    let u = vol.voxels();
    let f = phi.values();
    let (c1, c2) = means(u, f, dims).unwrap_or_else(|| {
        // one phase is empty; its fit term vanishes
        let s = phase_sums(u, f, dims);
        let mean = (s.in_sum + s.out_sum) / dims.len() as f64;
        (mean, mean)
    });
    let plane = dims.slice_len();
    let p = *params;
    reduce_slices(
        dims,
        0.0,
        |z| {
            let zm = z.saturating_sub(1);
            let zp = (z + 1).min(dims.nz - 1);
            let mut e = 0.0;
            for i in z * plane..(z + 1) * plane {
                let (x, y, _) = dims.coords(i);
                let v = f[i];
                if v < 0.0 {
                    e += p.lambda2 * (u[i] - c2).powi(2) + p.nu;
                } else {
                    e += p.lambda1 * (u[i] - c1).powi(2);
                }
                if p.mu != 0.0 {
                    let gx = (f[dims.index((x + 1).min(dims.nx - 1), y, z)]
                        - f[dims.index(x.saturating_sub(1), y, z)])
                        * 0.5;
                    let gy = (f[dims.index(x, (y + 1).min(dims.ny - 1), z)]
                        - f[dims.index(x, y.saturating_sub(1), z)])
                        * 0.5;
                    let gz = (f[dims.index(x, y, zp)] - f[dims.index(x, y, zm)]) * 0.5;
                    e += p.mu * dirac(v, p.epsilon) * (gx * gx + gy * gy + gz * gz).sqrt();
                }
            }
            e
        },
        |a, b| a + b,
    )
}

/// Result of a full evolution.
#[derive(Debug, Clone)]
pub struct CvRun {
    pub mask: BinaryMask,
    pub trace: CvTrace,
    pub iterations: usize,
    /// True when the sign-change fraction fell below `stop_tol`.
    pub converged: bool,
}

/// Evolves the signed distance field of `initial` until the sign-change
/// fraction drops below `stop_tol` or `max_iters` is reached, redistancing
/// every `redistance_every` steps.
pub fn cv_run(vol: &VoxelVolume, initial: &BinaryMask, params: &ChanVeseParams) -> Result<CvRun> {
    params.validate()?;
    vol.dims().ensure_same(&initial.dims())?;
    if params.max_iters == 0 {
        return Ok(CvRun {
            mask: initial.clone(),
            trace: CvTrace::default(),
            iterations: 0,
            converged: false,
        });
    }
    let phi = mask_to_sdf(initial).map_err(|_| Error::PhaseCollapse { iter: 0 })?;
    let mut state = CvState::new(vol, phi)?;
    let mut trace = CvTrace::default();
    trace.entries.push(TraceEntry {
        iter: 0,
        c1: state.c1,
        c2: state.c2,
        last_change: 0.0,
        energy: cv_energy(vol, &state.phi, params),
    });

    let mut converged = false;
    while state.iter < params.max_iters {
        state = cv_step(vol, &state, params)?;
        if params.redistance_every > 0 && state.iter % params.redistance_every == 0 {
            state = redistance(&state)?;
        }
        trace.entries.push(TraceEntry {
            iter: state.iter,
            c1: state.c1,
            c2: state.c2,
            last_change: state.last_change,
            energy: cv_energy(vol, &state.phi, params),
        });
        if state.last_change < params.stop_tol {
            converged = true;
            break;
        }
    }

    let mask = state.phi.inside_mask();
    if !mask.has_both_phases() {
        return Err(Error::PhaseCollapse { iter: state.iter });
    }
    Ok(CvRun {
        mask,
        trace,
        iterations: state.iter,
        converged,
    })
}
