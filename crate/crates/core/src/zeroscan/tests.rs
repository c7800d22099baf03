use super::*;

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn family_names_round_trip() {
    for f in [Family::Zeta, Family::Beta4, Family::C01, Family::C14m(1), Family::C14m(3)] {
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }
    assert_eq!("c112".parse::<Family>().unwrap(), Family::C14m(3));
    assert!("c13".parse::<Family>().is_err());
    assert!(Family::c14m(0).is_err());
}

#[test]
fn hardy_function_changes_sign_at_first_zeta_zero() {
    let a = completed_real(Family::Zeta, 14.1, &pol()).unwrap();
    let b = completed_real(Family::Zeta, 14.2, &pol()).unwrap();
    assert!(a * b < 0.0);
}

#[test]
fn zeta_zeros_below_fifty() {
    // Odlyzko's table
    let known = [
        14.134725141734693,
        21.022039638771555,
        25.010857580145688,
        30.424876125859513,
        32.935061587739189,
        37.586178158825671,
        40.918719012147495,
        43.327073280914999,
        48.005150881167159,
        49.773832477672302,
    ];
    let zs = scan(Family::Zeta, (0.0, 50.0), DEFAULT_STEP, &pol()).unwrap();
    assert_eq!(zs.len(), known.len());
    for (z, k) in zs.iter().zip(known) {
        assert!((z.t - k).abs() < 1e-8, "{} vs {k}", z.t);
        assert!(z.bracket.0 <= z.t && z.t <= z.bracket.1);
        assert!(z.refined_tol <= 1e-6);
    }
}

#[test]
fn c01_zeros_are_the_union_of_its_factors() {
    let lists = scan_families(&[Family::Zeta, Family::Beta4, Family::C01], (0.0, 30.0), DEFAULT_STEP, &pol()).unwrap();
    let mut union: Vec<f64> = lists[0].iter().chain(&lists[1]).map(|z| z.t).collect();
    union.sort_by(f64::total_cmp);
    let c01: Vec<f64> = lists[2].iter().map(|z| z.t).collect();
    assert_eq!(union.len(), c01.len());
    for (a, b) in union.iter().zip(&c01) {
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }
    // first zero of L₋₄
    assert!((lists[1][0].t - 6.020948904697597).abs() < 1e-8);
}

#[test]
fn scan_rejects_coarse_step() {
    assert!(scan(Family::Zeta, (0.0, 10.0), 0.1, &pol()).is_err());
    assert!(scan(Family::Zeta, (5.0, 1.0), 0.02, &pol()).is_err());
}

#[test]
fn predicted_rows() {
    let r = |f, t| predicted_count(f, t).round();
    assert_eq!(r(Family::Zeta, 100.0), 28.0);
    assert_eq!(r(Family::Beta4, 100.0), 50.0);
    assert_eq!(r(Family::C14m(1), 100.0), 78.0);
    assert_eq!(r(Family::Zeta, 300.0), 137.0);
    assert_eq!(r(Family::Beta4, 300.0), 203.0);
    assert_eq!(r(Family::C14m(1), 300.0), 340.0);
}

#[test]
fn counting_functions_add_up() {
    for t in [10.0, 57.3, 300.0] {
        let z = predicted_count(Family::Zeta, t) + predicted_count(Family::Beta4, t);
        assert!((z - predicted_count(Family::C01, t)).abs() < 1e-10 * z.abs().max(1.0));
        let d = predicted_count(Family::C01, t) + predicted_count(Family::C14m(1), t);
        assert!((d - predicted_delta3(0.5, t)).abs() < 1e-10 * d);
    }
}

#[test]
fn wigner_normalisation() {
    assert_eq!(wigner_surmise(0.0), 0.0);
    let (m0, m1) = wigner_moments();
    assert!((m0 - 1.0).abs() < 1e-9 && (m1 - 1.0).abs() < 1e-9, "{m0} {m1}");
}

#[test]
fn spacing_needs_enough_zeros() {
    let few: Vec<ZeroRecord> = (0..10)
        .map(|i| ZeroRecord {
            family: Family::Zeta,
            t: i as f64,
            bracket: (i as f64, i as f64),
            refined_tol: 0.0,
        })
        .collect();
    assert!(matches!(spacing_stats(&few), Err(Error::InsufficientData { needed: 50, got: 10 })));
}

#[test]
fn spacing_histogram_is_normalised() {
    // jittered lattice with a slowly growing density
    let zs: Vec<ZeroRecord> = (1..200)
        .map(|i| {
            let x = i as f64;
            ZeroRecord {
                family: Family::C01,
                t: x + 0.001 * x * x + 0.3 * (x * 1.7).sin(),
                bracket: (0.0, 0.0),
                refined_tol: 0.0,
            }
        })
        .collect();
    let h = spacing_stats(&zs).unwrap();
    assert!((h.mean() - 1.0).abs() < 1e-9);
    assert!((h.total_mass() - 1.0).abs() < 1e-9);
    assert_eq!(h.densities.len() + 1, h.bin_edges.len());
}

#[test]
fn delta3_labels_up_to_twenty() {
    use ZeroLabel::*;
    let got = classify_delta3_zeros(1, (0.0, 20.0), DEFAULT_STEP, &pol()).unwrap();
    let labels: Vec<ZeroLabel> = got.iter().map(|z| z.1).collect();
    let expect = [Beta4, C14m, C14m, Beta4, C14m, Beta4, Zeta, C14m, Beta4, C14m, Beta4, C14m, C14m];
    assert_eq!(labels, expect);
    let last = got.last().unwrap().0;
    assert!((last - 19.80599).abs() < 1e-4, "{last}");
}
