//! Exact p-norm maximization over halfspace-presented polytopes.
//!
//! Everything here works over arbitrary-precision rationals; no decision ever
//! depends on floating point. The crate provides
//!
//! * [`geometry`]: vectors, H/V-presentations, `||x||_p^p`, polarity, vertex
//!   enumeration and the text file format,
//! * [`lp`]: an exact simplex solver,
//! * [`normmax`]: brute-force and per-facet LP norm maximization, `p = 1`,
//!   parallelotopes and the decision wrapper,
//! * [`ball`]: rational polytopes sandwiched around the p-norm ball and the
//!   resulting approximation algorithm,
//! * [`gadget`]: the Clique-to-norm-maximization instance generator,
//! * [`approx_decider`]: deciding Clique through the approximation algorithm,
//! * [`radii`]: circumradius, diameter, inradius and width of symmetric
//!   polytopes.

pub mod approx_decider;
pub mod ball;
pub mod config;
pub mod error;
pub mod gadget;
pub mod geometry;
pub mod lp;
pub mod normmax;
pub mod radii;
pub mod rational;

pub use error::{Error, Result};
pub use geometry::{HPolytope, Halfspace, PNormExponent, RationalVector, VPolytope};
pub use rational::Rational;
