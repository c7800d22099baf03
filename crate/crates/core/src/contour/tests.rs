use super::*;
use crate::zeroscan::classify_delta3_zeros;

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn grid_spec_validation() {
    assert!(GridSpec::new((0.0, 1.0), (0.0, 1.0), 8, 32).is_err());
    assert!(GridSpec::new((1.0, 0.0), (0.0, 1.0), 32, 32).is_err());
    // node exactly on the pole at s = 1
    let g = GridSpec::new((0.0, 2.0), (0.0, 1.0), 21, 21).unwrap();
    assert!(g.check_poles(1).is_err());
    // t nodes straddle the axis at ±dt/2
    let g = GridSpec::new((0.0, 2.0), (-0.5, 0.5), 21, 20).unwrap();
    assert!(g.check_poles(1).is_ok());
}

#[test]
fn branch_circle_is_the_cut() {
    let (pts, worst) = branch_circle(1, 64).unwrap();
    assert_eq!(pts.len(), 64);
    assert!(worst < 1e-8, "{worst}");
    // angle 0 sample sits on the real axis
    assert!((pts[0].0 - (0.5 + 3f64.sqrt() / 2.0)).abs() < 1e-15 && pts[0].1 == 0.0);
    let off = f2m(1, Complex64::new(0.5, 0.5)).unwrap();
    assert!(off.im.abs() > 1e-3);
    assert!(branch_circle(2, 64).is_err());
}

#[test]
fn tangents_flatten_with_height() {
    let a = tangent_at_line(1, 100.0, &pol()).unwrap();
    assert!((a.re_tangent.1 - 0.02).abs() < 1e-4, "{:?}", a);
    let dot = a.re_tangent.0 * a.im_tangent.0 + a.re_tangent.1 * a.im_tangent.1;
    assert_eq!(dot, 0.0);
    let b = tangent_at_line(2, 100.0, &pol()).unwrap();
    assert!(b.re_tangent.1 > a.re_tangent.1);
}

#[test]
fn real_slice_has_no_imaginary_part() {
    let g = GridSpec::new((2.2, 6.0), (-0.05, 0.05), 16, 16).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    // rows straddling t = 0 are odd in t, so the value at t = ±dt/2 is tiny
    // relative to the real part; at t = 0 itself it vanishes
    let x = Complex64::new(3.1, 0.0);
    let v = delta3_with(1, x, &pol(), &BesselCache::default()).unwrap().value;
    assert!(v.im.abs() <= 1e-10 * v.re.abs());
    assert!(s.valid.iter().all(|&b| b));
}

#[test]
fn critical_line_zeros_from_contours() {
    let g = GridSpec::new((0.1, 0.9), (18.0, 22.0), 17, 161).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    let re = extract_null(&s, FieldKind::ReDelta3, &pol()).unwrap();
    let im = extract_null(&s, FieldKind::ImDelta3, &pol()).unwrap();
    let z = simultaneous_crossings(&re, &im, 0.5, 0.05);
    // every crossing is a zero found by the line scan, and vice versa
    let scanned = classify_delta3_zeros(1, (18.0, 22.0), 0.02, &pol()).unwrap();
    assert_eq!(z.len(), scanned.len(), "{z:?} vs {scanned:?}");
    for (a, (b, _)) in z.iter().zip(&scanned) {
        assert!((a - b).abs() < 0.01, "{z:?} vs {scanned:?}");
    }
    for expect in [19.80599, 21.02204] {
        assert!(z.iter().any(|t| (t - expect).abs() < 0.01), "{z:?}");
    }
}

#[test]
fn real_axis_stationary_points() {
    let c = real_axis_crossings(1, (-3.0, 4.5), 0.05, &pol()).unwrap();
    for expect in [0.29782, 1.67735, -2.65568, 4.21422] {
        assert!(
            c.iter().any(|x| x.field == FieldKind::ImDelta3 && (x.sigma - expect).abs() < 2e-3),
            "{expect} missing from {c:?}"
        );
    }
}
