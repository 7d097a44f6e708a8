use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use volseg_core::vocal::{default_axis, vocal_contours};
use volseg_core::{
    export_overlay, generate_phantom, load_mask, load_volume, save_mask, save_volume,
    segment_pipeline, similarity, Acceptance, Axis, ChanVeseParams, Dims, GrowParams, PhantomSpec,
    PipelineConfig, PlanarContour, SeedPoint, SimilarityReport, StageTimings,
};

use crate::{
    EvaluateArgs, Failure, OverlayArgs, PhantomArgs, SegmentArgs, VocalReconstructArgs,
    VocalSliceArgs,
};

type CmdResult = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new("IO", format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::new("IO", format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CmdResult {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::new("JSON", e.to_string()))?;
    write_text(path, &text)
}

fn ensure_dir(path: &Path) -> CmdResult {
    fs::create_dir_all(path).map_err(|e| Failure::new("IO", format!("{}: {e}", path.display())))
}

fn dims_of(d: [usize; 3]) -> Result<Dims, Failure> {
    Ok(Dims::new(d[0], d[1], d[2])?)
}

pub fn phantom(args: PhantomArgs) -> CmdResult {
    let text = read_text(Path::new(&args.spec))?;
    let spec: PhantomSpec =
        serde_json::from_str(&text).map_err(|e| Failure::new("JSON", e.to_string()))?;
    let (vol, gt) = generate_phantom(dims_of(args.dims)?, &spec)?;
    save_volume(&vol, &args.out)?;
    save_mask(&gt, format!("{}_gt", args.out))?;
    Ok(())
}

#[derive(Serialize)]
struct SegmentSummary {
    dims: [usize; 3],
    seed: [usize; 3],
    iterations: usize,
    converged: bool,
    initial_voxels: usize,
    closed_voxels: usize,
    final_voxels: usize,
    c1: Option<f64>,
    c2: Option<f64>,
    timings: StageTimings,
}

pub fn segment(args: SegmentArgs) -> CmdResult {
    let vol = load_volume(&args.input)?;
    let acceptance: Acceptance = args.acceptance.parse()?;
    let [x, y, z] = args.seed;
    let config = PipelineConfig {
        seed: SeedPoint::new(x, y, z),
        grow: GrowParams::new(args.threshold, acceptance),
        se_width: args.se_width,
        sigma: args.sigma,
        cv: ChanVeseParams {
            mu: args.mu,
            nu: args.nu,
            lambda1: args.lambda1,
            lambda2: args.lambda2,
            dt: args.dt,
            epsilon: args.epsilon,
            max_iters: args.max_iters,
            redistance_every: args.redistance_every,
            stop_tol: args.stop_tol,
        },
        blur_before_grow: args.blur_before_grow,
    };
    let out = segment_pipeline(&vol, &config)?;

    save_mask(&out.mask, &args.out)?;
    if let Some(path) = &args.trace {
        let file =
            fs::File::create(path).map_err(|e| Failure::new("IO", format!("{path}: {e}")))?;
        out.trace.write_csv(file)?;
    }
    if let Some(dir) = &args.debug_dir {
        let dir = PathBuf::from(dir);
        ensure_dir(&dir)?;
        save_mask(&out.initial, dir.join("initial"))?;
        save_mask(&out.closed, dir.join("closed"))?;
    }
    if let Some(path) = &args.json {
        let last = out.trace.last();
        let summary = SegmentSummary {
            dims: vol.dims().as_array(),
            seed: args.seed,
            iterations: out.iterations,
            converged: out.converged,
            initial_voxels: out.initial.count(),
            closed_voxels: out.closed.count(),
            final_voxels: out.mask.count(),
            c1: last.map(|e| e.c1),
            c2: last.map(|e| e.c2),
            timings: out.timings,
        };
        write_json(Path::new(path), &summary)?;
    }
    Ok(())
}

pub fn evaluate(args: EvaluateArgs) -> CmdResult {
    let reference = load_mask(&args.reference)?;
    let seg = load_mask(&args.seg)?;
    let report: SimilarityReport = similarity(&reference, &seg)?;
    let text = serde_json::to_string(&report).map_err(|e| Failure::new("JSON", e.to_string()))?;
    println!("{text}");
    if let Some(path) = &args.json {
        write_json(Path::new(path), &report)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SliceSummary {
    axis: [f64; 2],
    files: Vec<String>,
}

pub fn vocal_slice(args: VocalSliceArgs) -> CmdResult {
    let mask = load_mask(&args.input)?;
    let axis = match args.axis {
        Some(a) => a,
        None => default_axis(&mask)
            .ok_or_else(|| Failure::new("EMPTY_MASK", "mask has no foreground voxels"))?,
    };
    let mut contours = vocal_contours(&mask, axis)?;
    if args.envelope {
        contours = contours
            .iter()
            .map(PlanarContour::radial_envelope)
            .collect::<Result<Vec<_>, _>>()?;
    }
    let dir = PathBuf::from(&args.out);
    ensure_dir(&dir)?;
    let mut files = Vec::new();
    for c in &contours {
        let name = format!("contour_{:03}.json", c.angle.round() as i64);
        write_json(&dir.join(&name), c)?;
        files.push(name);
    }
    let summary = SliceSummary { axis, files };
    println!(
        "{}",
        serde_json::to_string(&summary).map_err(|e| Failure::new("JSON", e.to_string()))?
    );
    if let Some(path) = &args.json {
        write_json(Path::new(path), &summary)?;
    }
    Ok(())
}

fn contour_paths(inputs: &[String]) -> Result<Vec<PathBuf>, Failure> {
    if let [single] = inputs {
        let p = PathBuf::from(single);
        if p.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(&p)
                .map_err(|e| Failure::new("IO", format!("{}: {e}", p.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            return Ok(files);
        }
    }
    Ok(inputs.iter().map(PathBuf::from).collect())
}

pub fn vocal_reconstruct(args: VocalReconstructArgs) -> CmdResult {
    let mut contours = Vec::new();
    for path in contour_paths(&args.contours)? {
        let text = read_text(&path)?;
        let c: PlanarContour = serde_json::from_str(&text)
            .map_err(|e| Failure::new("JSON", format!("{}: {e}", path.display())))?;
        contours.push(c);
    }
    let mask = volseg_core::vocal_reconstruct(&contours, dims_of(args.dims)?, args.axis)?;
    save_mask(&mask, &args.out)?;
    Ok(())
}

pub fn overlay(args: OverlayArgs) -> CmdResult {
    let vol = load_volume(&args.input)?;
    let mask = load_mask(&args.mask)?;
    let axis: Axis = args.axis.parse()?;
    export_overlay(&vol, &mask, axis, args.index, &args.out)?;
    Ok(())
}
