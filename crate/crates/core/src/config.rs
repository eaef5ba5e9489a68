/// Caps on the exponential enumerations. These are configuration, not
/// algorithmic limits: raise them when you know the instance is small enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum dimension for `2^d` and `n^d` style enumerations.
    pub dim_cap: usize,
    /// Maximum dimension in which ball outer containment is proved by
    /// enumerating the ball's vertices.
    pub exact_outer_dim_cap: usize,
    /// Maximum number of grid directions a ball construction may emit.
    pub facet_budget: u128,
}

pub const DIM_CAP_ENV: &str = "NORMMAX_DIM_CAP";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 8,
            exact_outer_dim_cap: 3,
            facet_budget: 200_000,
        }
    }
}

impl Limits {
    /// Defaults, with `dim_cap` overridden by `NORMMAX_DIM_CAP` when set to a
    /// valid integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(DIM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.dim_cap = cap;
        }
        limits
    }

    pub fn with_dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self
    }

    pub(crate) fn check_dim(&self, dim: usize) -> crate::Result<()> {
        if dim > self.dim_cap {
            Err(crate::Error::DimensionCapExceeded {
                dim,
                cap: self.dim_cap,
            })
        } else {
            Ok(())
        }
    }
}
