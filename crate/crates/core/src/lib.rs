//! Exact computational kernel for smooth complete toric Fano varieties.
//!
//! * [`ratgeom`]: rational polytopes (vertex enumeration, volume, barycenter,
//!   slicing, truncation).
//! * [`toric`]: fans, torus-invariant divisors, wall intersection numbers and
//!   point blow-ups by star subdivision.
//! * [`invariants`]: Seshadri constants, expected vanishing orders, the toric
//!   stability threshold, the greatest Ricci lower bound and the normalized
//!   volume score `beta^n * Vol`, plus blow-up volume profiles.
//! * [`okounkov`]: Newton–Okounkov bodies of torus-invariant flags and their
//!   slice geometry.
//!
//! All arithmetic is exact ([`Rational`]); floats only appear in display strings.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod okounkov;
pub mod poly;
pub mod ratgeom;
pub mod rational;
pub mod toric;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use poly::{PiecewisePolynomial, Polynomial};
pub use ratgeom::{HalfSpace, Polytope};
pub use rational::{int, rat, Point, Rational};
pub use toric::{Blowup, Fan, TDivisor, ToricVariety, Wall};
