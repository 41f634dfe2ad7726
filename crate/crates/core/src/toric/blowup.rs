use std::sync::Arc;

use super::divisor::same_variety;
use super::{Fan, TDivisor, ToricVariety};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Blow-up of a torus-fixed point by star subdivision of its maximal cone.
///
/// Rays of the base keep their indices; the exceptional ray `u_E` (the sum of
/// the cone's rays) is appended last.
#[derive(Clone, Debug)]
pub struct Blowup {
    base: Arc<ToricVariety>,
    blown_up: Arc<ToricVariety>,
    cone: usize,
}

impl Blowup {
    pub fn new(base: &Arc<ToricVariety>, cone: usize) -> Result<Self> {
        let cones = base.cones();
        let Some(star) = cones.get(cone) else {
            return Err(Error::IndexOutOfRange {
                index: cone,
                limit: cones.len(),
            });
        };
        let n = base.dim();
        let mut rays = base.rays().to_vec();
        let mut u_e = vec![0i64; n];
        for &r in star {
            for (e, x) in u_e.iter_mut().zip(&rays[r]) {
                *e += x;
            }
        }
        let e = rays.len();
        rays.push(u_e);
        let mut max_cones: Vec<Vec<usize>> = cones
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != cone)
            .map(|(_, c)| c.clone())
            .collect();
        for drop in 0..n {
            let mut c: Vec<usize> = star
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &r)| r)
                .collect();
            c.push(e);
            max_cones.push(c);
        }
        let name = format!("Bl[{}]({})", cone, base.name());
        let blown_up = Fan::new(name, n, rays, max_cones).validate()?;
        Ok(Blowup {
            base: base.clone(),
            blown_up: Arc::new(blown_up),
            cone,
        })
    }

    pub fn base(&self) -> &Arc<ToricVariety> {
        &self.base
    }

    pub fn variety(&self) -> &Arc<ToricVariety> {
        &self.blown_up
    }

    pub fn cone(&self) -> usize {
        self.cone
    }

    pub fn exceptional_ray(&self) -> usize {
        self.base.num_rays()
    }

    /// Index of the first of the `n` new cones; new cone `base + i` omits the
    /// `i`-th ray of the subdivided cone.
    pub fn first_new_cone(&self) -> usize {
        self.base.cones().len() - 1
    }

    /// `sigma^* D`: coefficients unchanged, `a_E = sum of a_rho over the cone`.
    pub fn pullback(&self, d: &TDivisor) -> Result<TDivisor> {
        if !same_variety(d.variety(), &self.base) {
            return Err(Error::VarietyMismatch);
        }
        let mut coeffs = d.coeffs().to_vec();
        let a_e: Rational = self.base.cones()[self.cone]
            .iter()
            .map(|&r| d.coeffs()[r].clone())
            .sum();
        coeffs.push(a_e);
        TDivisor::new(self.blown_up.clone(), coeffs)
    }

    /// `E` as a divisor on the blow-up.
    pub fn exceptional(&self) -> TDivisor {
        TDivisor::prime(&self.blown_up, self.exceptional_ray()).expect("exceptional ray exists")
    }
}
