use anglat_core::angsum::TruncationPolicy;
use anglat_core::zeroscan::{
    classify_delta3_zeros, completed_real, count_table, predicted_count, scan, scan_families, spacing_stats, Family,
    ZeroLabel, ZeroRecord,
};

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn halving_the_step_keeps_the_zeros() {
    let fams = [Family::Zeta, Family::Beta4, Family::C14m(1), Family::C01];
    let coarse = scan_families(&fams, (0.0, 60.0), 0.04, &pol()).unwrap();
    let fine = scan_families(&fams, (0.0, 60.0), 0.02, &pol()).unwrap();
    for (a, b) in coarse.iter().zip(&fine) {
        assert_eq!(a.len(), b.len(), "{}", a[0].family);
        for (x, y) in a.iter().zip(b) {
            assert!((x.t - y.t).abs() < 1e-8);
        }
    }
}

#[test]
fn product_zeros_are_the_union_of_factor_zeros() {
    let z = scan_families(&[Family::Zeta, Family::Beta4, Family::C01], (0.0, 120.0), 0.02, &pol()).unwrap();
    let mut union: Vec<f64> = z[0].iter().chain(&z[1]).map(|r| r.t).collect();
    union.sort_by(f64::total_cmp);
    assert_eq!(union.len(), z[2].len());
    for (a, b) in union.iter().zip(&z[2]) {
        assert!((a - b.t).abs() < 1e-7, "{a} vs {}", b.t);
    }
}

#[test]
fn zeros_are_sign_changes_of_the_completed_function() {
    for z in scan(Family::C14m(2), (0.0, 40.0), 0.02, &pol()).unwrap() {
        let a = completed_real(z.family, z.t - 1e-6, &pol()).unwrap();
        let b = completed_real(z.family, z.t + 1e-6, &pol()).unwrap();
        assert!(a * b < 0.0, "no sign change at {}", z.t);
        assert!(z.bracket.0 <= z.t && z.t <= z.bracket.1);
    }
}

#[test]
fn counts_track_the_smooth_prediction() {
    let (table, zeros) = count_table(100.0, 10.0, &[Family::Zeta, Family::Beta4, Family::C14m(1)], 0.02, &pol()).unwrap();
    let total = table.cumulative_rows().last().unwrap();
    assert_eq!(total.counts, vec![29, 50, 79]);
    for (fam, zs) in [Family::Zeta, Family::Beta4, Family::C14m(1)].iter().zip(&zeros) {
        assert!((zs.len() as f64 - predicted_count(*fam, 100.0)).abs() < 3.0);
    }
    assert_eq!(total.sum_zeta_beta_c14(&table), Some(158));
    assert!(count_table(500.0, 10.0, &[Family::Zeta], 0.02, &pol()).is_err());
}

#[test]
fn delta3_zero_labels_come_from_the_factors() {
    let labelled = classify_delta3_zeros(1, (0.0, 40.0), 0.02, &pol()).unwrap();
    let fz = scan_families(&[Family::Zeta, Family::Beta4, Family::C14m(1)], (0.0, 40.0), 0.02, &pol()).unwrap();
    assert_eq!(labelled.len(), fz.iter().map(Vec::len).sum::<usize>());
    for (t, label) in labelled {
        let idx = match label {
            ZeroLabel::Zeta => 0,
            ZeroLabel::Beta4 => 1,
            ZeroLabel::C14m => 2,
        };
        assert!(fz[idx].iter().any(|z| (z.t - t).abs() < 1e-9));
    }
}

#[test]
fn records_serialise() {
    let z = scan(Family::Zeta, (10.0, 30.0), 0.02, &pol()).unwrap();
    let json = serde_json::to_string(&z).unwrap();
    let back: Vec<ZeroRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(z, back);
}

#[test]
fn spacing_rejects_mixed_families() {
    let z = scan_families(&[Family::Zeta, Family::C14m(1)], (0.0, 100.0), 0.02, &pol()).unwrap();
    let mixed: Vec<ZeroRecord> = z.concat();
    assert!(spacing_stats(&mixed).is_err());
    let h = spacing_stats(&z[1]).unwrap();
    assert!((h.mean() - 1.0).abs() < 1e-12);
}
