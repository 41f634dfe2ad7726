//! Small fans shared by the unit tests.

use std::sync::Arc;

use crate::linalg::combinations;
use crate::toric::{Fan, ToricVariety};

/// Smooth complete surface with rays in counterclockwise order.
pub fn polygon(name: &str, rays: &[[i64; 2]]) -> Arc<ToricVariety> {
    let k = rays.len();
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Arc::new(
        Fan::new(name, 2, rays.iter().map(|r| r.to_vec()).collect(), cones)
            .validate()
            .unwrap(),
    )
}

pub fn p2() -> Arc<ToricVariety> {
    polygon("P2", &[[1, 0], [0, 1], [-1, -1]])
}

pub fn p1xp1() -> Arc<ToricVariety> {
    polygon("P1xP1", &[[1, 0], [0, 1], [-1, 0], [0, -1]])
}

pub fn f1() -> Arc<ToricVariety> {
    polygon("F1", &[[1, 0], [0, 1], [-1, 1], [0, -1]])
}

pub fn bl2() -> Arc<ToricVariety> {
    polygon("Bl2P2", &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1]])
}

pub fn bl3() -> Arc<ToricVariety> {
    polygon(
        "Bl3P2",
        &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
    )
}

pub fn surfaces() -> Vec<Arc<ToricVariety>> {
    vec![p2(), p1xp1(), f1(), bl2(), bl3()]
}

pub fn projective_space(n: usize) -> Arc<ToricVariety> {
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    let cones = combinations(n + 1, n).collect();
    Arc::new(
        Fan::new(format!("P{n}"), n, rays, cones)
            .validate()
            .unwrap(),
    )
}
