use torifan_core::{int, rat};

use super::*;
use crate::catalog::Catalog;

fn entry(name: &str) -> Arc<ToricVariety> {
    Catalog::bundled().get(name).unwrap().variety.clone()
}

#[test]
fn resolution_one_on_p2() {
    let s = sweep_ample_cone(&entry("P2"), 1).unwrap();
    assert_eq!(
        s.grid,
        GridSpec {
            resolution: 1,
            rays: 3,
            points: 1
        }
    );
    assert_eq!(s.samples.len(), 1);
    assert_eq!(s.max_score, int(9));
    assert_eq!(s.gap, int(0));
}

#[test]
fn p2_has_one_class_at_every_resolution() {
    let s = sweep_ample_cone(&entry("P2"), 4).unwrap();
    assert_eq!(s.ample_points, 64);
    assert_eq!(s.samples.len(), 1);
    assert_eq!(s.samples[0].multiplicity, 64);
}

#[test]
fn f1_at_resolution_eight() {
    let s = sweep_ample_cone(&entry("F1"), 8).unwrap();
    assert!(s.max_score < int(9));
    assert!(s.max_score >= rat(288, 49));
    assert!(s.gap > int(0));
    assert!(s.samples.iter().any(|x| x.report.score == rat(288, 49)));
}

#[test]
fn p1xp1_maximum_is_symmetric() {
    let s = sweep_ample_cone(&entry("P1xP1"), 8).unwrap();
    assert_eq!(s.max_score, int(8));
    let c = &s.argmax_sample().coeffs;
    assert_eq!(&c[0] + &c[2], &c[1] + &c[3]);
}

#[test]
fn resolution_zero_rejected() {
    assert!(matches!(
        sweep_ample_cone(&entry("P2"), 0),
        Err(HarnessError::InvalidResolution)
    ));
}

#[test]
fn grid_without_ample_points() {
    // The resolution-1 grid is the single class -K, which is not ample on F3.
    let bad = torifan_core::Fan::new(
        "F3",
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .validate()
    .unwrap();
    assert!(matches!(
        sweep_ample_cone(&Arc::new(bad), 1),
        Err(HarnessError::EmptyGrid { .. })
    ));
}

#[test]
fn class_keys_identify_linear_equivalence_and_scaling() {
    let x = entry("F1");
    let a = class_key(&x, &[1, 1, 1, 1]);
    assert_eq!(a, class_key(&x, &[2, 2, 2, 2]));
    // shift by m = (1, 0): a_rho + <m, u_rho>
    assert_eq!(a, class_key(&x, &[2, 1, 0, 1]));
    assert_ne!(a, class_key(&x, &[1, 2, 1, 1]));
}

#[test]
fn refinement_never_lowers_the_maximum() {
    for name in ["F1", "P1xP1", "Bl2P2"] {
        let coarse = sweep_ample_cone(&entry(name), 3).unwrap();
        let fine = sweep_ample_cone(&entry(name), 6).unwrap();
        assert!(fine.max_score >= coarse.max_score, "{name}");
    }
}

#[test]
fn sample_order_is_deterministic() {
    let a = sweep_ample_cone(&entry("Bl2P2"), 4).unwrap();
    let b = sweep_ample_cone(&entry("Bl2P2"), 4).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(a.samples.windows(2).all(|w| w[0].index < w[1].index));
    assert_eq!(
        a.samples.iter().map(|s| s.multiplicity).sum::<u64>(),
        a.ample_points
    );
}
