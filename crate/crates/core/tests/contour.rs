use anglat_core::angsum::{BesselCache, TruncationPolicy};
use anglat_core::contour::{
    extract_null, null_intersections, sample_grid, sample_prefactor_grid, simultaneous_crossings, FieldKind, GridSpec,
};
use anglat_core::delta3::delta3_with;
use anglat_core::zeroscan::classify_delta3_zeros;
use anglat_core::Complex64;

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn vertices_lie_on_the_null_set() {
    // a window away from the poles, sampled coarsely
    let g = GridSpec::new((-2.0, 3.0), (2.0, 12.0), 41, 81).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    let cache = BesselCache::default();
    for (field, pick) in [(FieldKind::ReDelta3, 0), (FieldKind::ImDelta3, 1)] {
        let lines = extract_null(&s, field, &pol()).unwrap();
        assert!(!lines.is_empty());
        for l in &lines {
            for &(x, t) in &l.vertices {
                let v = delta3_with(1, Complex64::new(x, t), &pol(), &cache).unwrap().value;
                let part = if pick == 0 { v.re } else { v.im };
                // linear interpolation along an edge: the field is small next to
                // |Δ₃| one cell away
                let (ds, dt) = (g.d_sigma(), g.d_t());
                let scale = [(ds, 0.0), (-ds, 0.0), (0.0, dt), (0.0, -dt)]
                    .iter()
                    .map(|&(a, b)| delta3_with(1, Complex64::new(x + a, t + b), &pol(), &cache).unwrap().value.norm())
                    .fold(v.norm(), f64::max);
                assert!(part.abs() < 0.05 * scale, "{field:?} at ({x}, {t}): {v}");
            }
            if l.closed {
                assert_eq!(l.vertices.first(), l.vertices.last());
            }
        }
    }
}

#[test]
fn poles_are_masked() {
    let g = GridSpec::new((-0.5, 2.5), (-0.5, 0.5), 31, 20).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    for field in [FieldKind::ReDelta3, FieldKind::ImDelta3] {
        for l in extract_null(&s, field, &pol()).unwrap() {
            for &(x, t) in &l.vertices {
                for k in 0..=2 {
                    assert!((x - k as f64).abs() > 0.1 || t.abs() > 0.05, "vertex ({x}, {t}) at pole {k}");
                }
            }
        }
    }
}

#[test]
fn wrong_field_for_grid_is_rejected() {
    let g = GridSpec::new((4.0, 8.0), (0.1, 5.0), 16, 16).unwrap();
    let s = sample_prefactor_grid(g).unwrap();
    assert!(extract_null(&s, FieldKind::ReDelta3, &pol()).is_err());
    assert!(extract_null(&s, FieldKind::PrefactorIm, &pol()).is_ok());
    let low = GridSpec::new((1.0, 8.0), (0.1, 5.0), 16, 16).unwrap();
    assert!(sample_prefactor_grid(low).is_err());
}

#[test]
fn polylines_serialise() {
    let g = GridSpec::new((0.1, 0.9), (13.0, 15.0), 16, 41).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    let lines = extract_null(&s, FieldKind::ImDelta3, &pol()).unwrap();
    let json = serde_json::to_string(&lines).unwrap();
    let back: Vec<anglat_core::contour::ContourPolyline> = serde_json::from_str(&json).unwrap();
    assert_eq!(lines, back);
}

#[test]
fn null_set_is_mirrored_across_the_real_axis() {
    let upper = sample_grid(1, GridSpec::new((-1.0, 2.0), (3.0, 9.0), 25, 49).unwrap(), &pol()).unwrap();
    let lower = sample_grid(1, GridSpec::new((-1.0, 2.0), (-9.0, -3.0), 25, 49).unwrap(), &pol()).unwrap();
    for field in [FieldKind::ReDelta3, FieldKind::ImDelta3] {
        let mut a: Vec<(f64, f64)> = extract_null(&upper, field, &pol())
            .unwrap()
            .into_iter()
            .flat_map(|l| l.vertices)
            .collect();
        let mut b: Vec<(f64, f64)> = extract_null(&lower, field, &pol())
            .unwrap()
            .into_iter()
            .flat_map(|l| l.vertices)
            .map(|(x, t)| (x, -t))
            .collect();
        for v in [&mut a, &mut b] {
            v.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
            v.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
        }
        assert_eq!(a.len(), b.len(), "{field:?}");
        for (p, q) in a.iter().zip(&b) {
            assert!((p.0 - q.0).abs() < 1e-7 && (p.1 - q.1).abs() < 1e-7, "{field:?}: {p:?} vs {q:?}");
        }
    }
}

#[test]
fn contour_zeros_below_twenty_match_the_line_scan() {
    let g = GridSpec::new((0.1, 0.9), (1.0, 20.0), 17, 761).unwrap();
    let s = sample_grid(1, g, &pol()).unwrap();
    let re = extract_null(&s, FieldKind::ReDelta3, &pol()).unwrap();
    let im = extract_null(&s, FieldKind::ImDelta3, &pol()).unwrap();
    let on_line = simultaneous_crossings(&re, &im, 0.5, 0.05);
    let scanned = classify_delta3_zeros(1, (0.0, 20.0), 0.02, &pol()).unwrap();
    assert_eq!(scanned.len(), 13);
    assert_eq!(on_line.len(), 13, "{on_line:?}");
    for (a, (b, _)) in on_line.iter().zip(&scanned) {
        assert!((a - b).abs() < 0.01, "{a} vs {b}");
    }
    // and nothing off the critical line in this strip
    let all = null_intersections(&re, &im);
    assert!(all.iter().all(|&(x, _)| (x - 0.5).abs() < 0.05), "{all:?}");
}
