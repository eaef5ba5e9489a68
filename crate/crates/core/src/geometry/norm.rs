use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::RationalVector;
use crate::rational::{pow, Rational};

/// Integer exponent `p >= 1` of a p-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PNormExponent(u32);

impl PNormExponent {
    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("p must be at least 1".into()));
        }
        Ok(PNormExponent(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for PNormExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `sum_i |x_i|^p`, i.e. the p-th power of the p-norm (never the norm itself).
pub fn pnorm_pow(x: &RationalVector, p: PNormExponent) -> Rational {
    x.iter()
        .filter(|c| !c.is_zero())
        .fold(Rational::zero(), |acc, c| acc + pow(&c.abs(), p.get()))
}
