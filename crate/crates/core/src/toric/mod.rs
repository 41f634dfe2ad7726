//! Smooth complete fans, torus-invariant divisors and point blow-ups.
//!
//! A [`Fan`] is plain data; [`Fan::validate`] certifies it as a
//! [`ToricVariety`] (primitive distinct rays, unimodular maximal cones, every
//! wall shared by exactly two cones on opposite sides, connected, covering
//! `R^n` once) and precomputes the wall relations used for intersection numbers.

mod blowup;
mod divisor;
mod fan;

pub use blowup::Blowup;
pub(crate) use divisor::same_variety;
pub use divisor::{DivisorFile, TDivisor};
pub use fan::{Fan, ToricVariety, Wall};

#[cfg(test)]
mod tests;
