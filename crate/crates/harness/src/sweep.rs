//! Grid sweeps over a cross-section of the ample cone.
//!
//! Samples are integer vectors `j` in `{1..k}^rays` standing for the classes
//! `sum (j_rho / k) D_rho`. The score is invariant under linear equivalence
//! and positive scaling, so each ample sample is reduced to a class key (the
//! representative vanishing on cone 0, divided by its content) and every
//! class is scored once, at its first sample in grid order.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use torifan_core::invariants::{projective_bound, score, InvariantReport};
use torifan_core::linalg::gcd_i64;
use torifan_core::rational::{serde_exact, serde_rational_vec};
use torifan_core::{rat, Error as CoreError, Rational, TDivisor, ToricVariety};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub resolution: u32,
    pub rays: usize,
    pub points: u64,
}

/// One ample class of the grid.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSample {
    /// Position of the first grid point in this class (row-major, last ray fastest).
    pub index: u64,
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
    /// Number of grid points in the class.
    pub multiplicity: u64,
    pub report: InvariantReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub variety_name: String,
    pub dim: usize,
    pub is_projective_space: bool,
    pub grid: GridSpec,
    pub ample_points: u64,
    pub samples: Vec<SweepSample>,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub max_score: Rational,
    /// Index into `samples`.
    pub argmax: usize,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub max_delta_score: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub bound: Rational,
    #[serde(serialize_with = "serde_exact::serialize")]
    pub gap: Rational,
}

impl SweepResult {
    pub fn argmax_sample(&self) -> &SweepSample {
        &self.samples[self.argmax]
    }
}

struct Grid {
    k: i64,
    point: Vec<i64>,
    done: bool,
}

impl Grid {
    fn new(k: i64, len: usize) -> Self {
        Grid {
            k,
            point: vec![1; len],
            done: len == 0,
        }
    }

    /// Advances to the next point; false once exhausted.
    fn advance(&mut self) -> bool {
        for c in self.point.iter_mut().rev() {
            if *c < self.k {
                *c += 1;
                return true;
            }
            *c = 1;
        }
        self.done = true;
        false
    }
}

fn class_key(x: &ToricVariety, j: &[i64]) -> Vec<i64> {
    let inv = x.cone_inverse(0);
    let cone = &x.cones()[0];
    let m: Vec<i64> = (0..x.dim())
        .map(|k| {
            -cone
                .iter()
                .enumerate()
                .map(|(i, &r)| j[r] * inv[k][i])
                .sum::<i64>()
        })
        .collect();
    let mut key: Vec<i64> = x
        .rays()
        .iter()
        .zip(j)
        .map(|(u, a)| a + u.iter().zip(&m).map(|(p, q)| p * q).sum::<i64>())
        .collect();
    let content = key.iter().fold(0, |g, &c| gcd_i64(g, c));
    if content > 1 {
        key.iter_mut().for_each(|c| *c /= content);
    }
    key
}

/// Scores every ample class on the resolution-`k` grid. Any sample with
/// `beta^n Vol` or `delta^n Vol` above `(n+1)^n` is reported as an assertion
/// failure naming the sample.
pub fn sweep_ample_cone(x: &Arc<ToricVariety>, resolution: u32) -> Result<SweepResult> {
    if resolution == 0 {
        return Err(HarnessError::InvalidResolution);
    }
    let k = i64::from(resolution);
    let rays = x.num_rays();
    let walls = x.walls();

    let mut classes: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut reps: Vec<(u64, Vec<i64>, u64)> = Vec::new();
    let mut ample_points = 0u64;
    let mut grid = Grid::new(k, rays);
    let mut index = 0u64;
    while !grid.done {
        let j = &grid.point;
        if walls.iter().all(|w| w.pair_i64(j) > 0) {
            ample_points += 1;
            let key = class_key(x, j);
            match classes.get(&key) {
                Some(&c) => reps[c].2 += 1,
                None => {
                    classes.insert(key, reps.len());
                    reps.push((index, j.clone(), 1));
                }
            }
        }
        index += 1;
        grid.advance();
    }
    let points = index;
    if reps.is_empty() {
        return Err(HarnessError::EmptyGrid {
            variety: x.name().to_string(),
            resolution,
        });
    }

    let samples = reps
        .into_par_iter()
        .map(|(index, j, multiplicity)| {
            let coeffs: Vec<Rational> = j.iter().map(|&c| rat(c, k)).collect();
            let xi = TDivisor::new(x.clone(), coeffs.clone())?;
            let report = score(&xi).map_err(|e| match e {
                CoreError::BoundViolated { score, bound } => HarnessError::Assertion(format!(
                    "{}: sample #{index} {:?} at resolution {resolution} has normalized volume {score} > {bound}",
                    x.name(),
                    j
                )),
                e => e.into(),
            })?;
            Ok(SweepSample { index, coeffs, multiplicity, report })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut argmax = 0;
    for (i, s) in samples.iter().enumerate() {
        if s.report.score > samples[argmax].report.score {
            argmax = i;
        }
    }
    let max_score = samples[argmax].report.score.clone();
    let max_delta_score = samples
        .iter()
        .map(|s| &s.report.delta_score)
        .max()
        .expect("nonempty")
        .clone();
    let bound = projective_bound(x.dim());
    Ok(SweepResult {
        variety_name: x.name().to_string(),
        dim: x.dim(),
        is_projective_space: x.is_projective_space(),
        grid: GridSpec {
            resolution,
            rays,
            points,
        },
        ample_points,
        gap: &bound - &max_score,
        samples,
        max_score,
        argmax,
        max_delta_score,
        bound,
    })
}

#[cfg(test)]
mod tests;
