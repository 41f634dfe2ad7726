//! Exact piecewise-polynomial volume profiles of slices and cuts.

use std::collections::BTreeSet;

use super::{HalfSpace, Polytope};
use crate::error::Result;
use crate::poly::PiecewisePolynomial;
use crate::rational::{Point, Rational};

impl Polytope {
    /// `r -> vol_{dim-1}(P ∩ {x_axis = r})`, polynomial of degree `< dim`
    /// between consecutive vertex coordinates.
    pub fn slice_area_profile(&self, axis: usize) -> Result<PiecewisePolynomial> {
        let levels: BTreeSet<Rational> = self.vertices()?.iter().map(|v| v[axis].clone()).collect();
        let breakpoints: Vec<Rational> = levels.into_iter().collect();
        let degree = self.dim.saturating_sub(1);
        let mut err = None;
        let profile = PiecewisePolynomial::interpolate(breakpoints, degree, |r| {
            self.slice(axis, r).volume().unwrap_or_else(|e| {
                err = Some(e);
                Rational::from_integer(0.into())
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(profile),
        }
    }

    /// `x -> vol(P ∩ {<normal, m> + offset >= x})` for `x >= from`, up to the
    /// largest level attained on `P`. Degree at most `dim` between vertex levels.
    pub fn cut_volume_profile(
        &self,
        normal: &Point,
        offset: &Rational,
        from: &Rational,
    ) -> Result<PiecewisePolynomial> {
        let levels: BTreeSet<Rational> = self
            .vertices()?
            .iter()
            .map(|v| normal.dot(v) + offset)
            .collect();
        let Some(top) = levels.iter().next_back().cloned() else {
            return Ok(PiecewisePolynomial::new(Vec::new(), Vec::new()));
        };
        if &top <= from {
            return Ok(PiecewisePolynomial::new(vec![from.clone()], Vec::new()));
        }
        let mut breakpoints = vec![from.clone()];
        breakpoints.extend(levels.into_iter().filter(|l| l > from));
        let mut err = None;
        let profile = PiecewisePolynomial::interpolate(breakpoints, self.dim, |x| {
            let cut = HalfSpace {
                normal: normal.clone(),
                offset: offset - x,
            };
            self.intersect(cut).volume().unwrap_or_else(|e| {
                err = Some(e);
                Rational::from_integer(0.into())
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(profile),
        }
    }
}
