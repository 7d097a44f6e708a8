use volseg_core::vocal::{default_axis, vocal_contours};
use volseg_core::{
    generate_phantom, similarity, slice_at_angle, vocal_approximation, vocal_reconstruct,
    BinaryMask, Dims, PhantomSpec,
};

fn sphere(dims: Dims, c: [f64; 3], r: f64) -> BinaryMask {
    BinaryMask::from_fn(dims, |x, y, z| {
        (x as f64 - c[0]).powi(2) + (y as f64 - c[1]).powi(2) + (z as f64 - c[2]).powi(2) <= r * r
    })
}

#[test]
fn sphere_slices_stay_near_the_circle() {
    let dims = Dims::cube(48).unwrap();
    let mask = sphere(dims, [24.0, 24.0, 24.0], 12.0);
    for c in vocal_contours(&mask, [24.0, 24.0]).unwrap() {
        c.validate().unwrap();
        for &[a, r] in &c.polygon {
            let d = ((a - 24.0).powi(2) + r * r).sqrt();
            assert!(
                (d - 12.0).abs() <= 1.0,
                "angle {} point ({a},{r}) at {d}",
                c.angle
            );
        }
    }
}

#[test]
fn ellipsoid_semi_axes_on_principal_planes() {
    let dims = Dims::cube(64).unwrap();
    let spec = PhantomSpec::ellipsoid([32.0, 32.0, 32.0], [14.0, 9.0, 11.0]);
    let (_, mask) = generate_phantom(dims, &spec).unwrap();
    let extent = |angle: f64| {
        let c = slice_at_angle(&mask, [32.0, 32.0], angle).unwrap();
        let r = c.polygon.iter().map(|p| p[1].abs()).fold(0.0, f64::max);
        let a = c
            .polygon
            .iter()
            .map(|p| (p[0] - 32.0).abs())
            .fold(0.0, f64::max);
        (r, a)
    };
    let (rx, az) = extent(0.0);
    assert!(
        (rx - 14.0).abs() <= 1.0 && (az - 11.0).abs() <= 1.0,
        "{rx} {az}"
    );
    let (ry, az) = extent(90.0);
    assert!(
        (ry - 9.0).abs() <= 1.0 && (az - 11.0).abs() <= 1.0,
        "{ry} {az}"
    );
}

#[test]
fn identical_circles_give_sphere_volume() {
    let dims = Dims::cube(64).unwrap();
    let mask = sphere(dims, [32.0, 32.0, 32.0], 12.0);
    let contours = vocal_contours(&mask, [32.0, 32.0]).unwrap();
    let rebuilt = vocal_reconstruct(&contours, dims, [32.0, 32.0]).unwrap();
    let analytic = 4.0 / 3.0 * std::f64::consts::PI * 12.0f64.powi(3);
    let rel = (rebuilt.count() as f64 - analytic).abs() / analytic;
    assert!(rel < 0.05, "volume {} vs {analytic}", rebuilt.count());
    assert!(similarity(&mask, &rebuilt).unwrap().si >= 0.97);
}

#[test]
fn ellipsoid_reconstruction_is_close() {
    let dims = Dims::cube(64).unwrap();
    let spec = PhantomSpec::ellipsoid([31.0, 33.0, 32.0], [15.0, 10.0, 12.0]);
    let (_, mask) = generate_phantom(dims, &spec).unwrap();
    let axis = default_axis(&mask).unwrap();
    let contours = vocal_contours(&mask, axis).unwrap();
    let rebuilt = vocal_reconstruct(&contours, dims, axis).unwrap();
    assert!(similarity(&mask, &rebuilt).unwrap().si >= 0.90);
}

#[test]
fn lobulation_hurts_the_rotational_approximation() {
    let dims = Dims::cube(64).unwrap();
    let smooth = PhantomSpec::ellipsoid([32.0, 32.0, 32.0], [16.0, 14.0, 12.0]);
    let lobed = PhantomSpec::lobulated([32.0, 32.0, 32.0], [16.0, 14.0, 12.0], 8, 0.3);
    let score = |spec: &PhantomSpec| {
        let (_, mask) = generate_phantom(dims, spec).unwrap();
        let axis = default_axis(&mask).unwrap();
        similarity(&mask, &vocal_approximation(&mask, axis).unwrap())
            .unwrap()
            .si
    };
    assert!(score(&lobed) < score(&smooth));
}
