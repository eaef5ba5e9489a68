use num_traits::{Signed, Zero};
use serde::Serialize;

use super::instance::{eps_bar_of, eps_lower_bound, grid_unit};
use super::sphere::{normal_of, sphere_points_bracketed};
use crate::error::Result;
use crate::geometry::{pnorm_pow, PNormExponent, RationalVector};
use crate::rational::{int, pow, to_fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Empty on success, otherwise the failing indices or values.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub p: PNormExponent,
    pub u: Rational,
    pub eps_bar: Rational,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, failures: Vec<String>) -> BoundCheck {
    BoundCheck {
        name,
        passed: failures.is_empty(),
        detail: failures.join("; "),
    }
}

fn signed_power(c: &Rational, e: u32) -> Rational {
    let m = pow(&c.abs(), e);
    if c.is_negative() {
        -m
    } else {
        m
    }
}

/// Largest distance from `value` to a point of `[lo, hi]`.
fn worst(value: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    (value - lo).abs().max((value - hi).abs())
}

/// Checks the rounded sphere points for `n` (with `U` taken for `k = 2`):
///
/// * `distance`: `||pbar_v - pbar_{v+1}||_2^2` within `[8/n^2, 16/n^2]`
///   widened by `16U/n + 4U^2`;
/// * `eps_lower_bound`: `eps_bar >= 2^(p-1)/(p n^p) - 3pU`;
/// * `eps_positive`: `eps_bar > 0`;
/// * `normal_identity`: `qbar_v^T pbar_v = ||pbar_v||_p^p`;
/// * `norm_rounding`: `(1-U)^p <= ||pbar_v||_p^p <= (1+U)^p`;
/// * `point_rounding`: `||pbar_v - p_v||_1 <= U`;
/// * `normal_rounding`: `||qbar_v - q_v||_1 <= (p-1)U`.
///
/// The last two compare against the exact sphere point through the interval
/// left by bisection, so they are certified without knowing `p_v` itself.
pub fn verify_gadget_bounds(n: usize, p: PNormExponent) -> Result<BoundsReport> {
    let u = grid_unit(n, 2, p);
    let pts = sphere_points_bracketed(n, p, &u)?;
    let bars: Vec<RationalVector> = pts.iter().map(|s| s.bar.clone()).collect();
    let normals: Vec<RationalVector> = bars.iter().map(|x| normal_of(x, p)).collect();
    let eps_bar = eps_bar_of(&bars, &normals);
    let m = bars.len();
    let e = p.get();
    let nn = int(n as i64);

    let slack = int(16) * &u / &nn + int(4) * &u * &u;
    let lo = int(8) / (&nn * &nn) - &slack;
    let hi = int(16) / (&nn * &nn) + &slack;
    let mut distance = Vec::new();
    for v in 0..m {
        let diff = bars[v].sub(&bars[(v + 1) % m]);
        let d2 = diff.dot(&diff);
        if d2 < lo || d2 > hi {
            distance.push(format!("v={v}: {}", to_fraction_string(&d2)));
        }
    }

    let bound = eps_lower_bound(n, p) - int(3 * e as i64) * &u;
    let eps_lb = if eps_bar >= bound {
        vec![]
    } else {
        vec![format!("{} < {}", to_fraction_string(&eps_bar), to_fraction_string(&bound))]
    };
    let eps_pos = if eps_bar.is_positive() {
        vec![]
    } else {
        vec![to_fraction_string(&eps_bar)]
    };

    let mut identity = Vec::new();
    let mut norms = Vec::new();
    let norm_lo = pow(&(int(1) - &u), e);
    let norm_hi = pow(&(int(1) + &u), e);
    for v in 0..m {
        let np = pnorm_pow(&bars[v], p);
        if normals[v].dot(&bars[v]) != np {
            identity.push(format!("v={v}"));
        }
        if np < norm_lo || np > norm_hi {
            norms.push(format!("v={v}: {}", to_fraction_string(&np)));
        }
    }

    let mut point_rounding = Vec::new();
    let mut normal_rounding = Vec::new();
    let normal_budget = int(e as i64 - 1) * &u;
    for (v, s) in pts.iter().enumerate() {
        let mut dp = Rational::zero();
        let mut dq = Rational::zero();
        for i in 0..2 {
            dp += worst(&s.bar[i], &s.lower[i], &s.upper[i]);
            // c -> sgn(c)|c|^(p-1) is increasing, so the interval maps to an interval
            dq += worst(
                &normals[v][i],
                &signed_power(&s.lower[i], e - 1),
                &signed_power(&s.upper[i], e - 1),
            );
        }
        if dp > u {
            point_rounding.push(format!("v={v}"));
        }
        if dq > normal_budget {
            normal_rounding.push(format!("v={v}"));
        }
    }

    Ok(BoundsReport {
        n,
        p,
        u,
        eps_bar,
        checks: vec![
            check("distance", distance),
            check("eps_lower_bound", eps_lb),
            check("eps_positive", eps_pos),
            check("normal_identity", identity),
            check("norm_rounding", norms),
            check("point_rounding", point_rounding),
            check("normal_rounding", normal_rounding),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n8_p2_passes() {
        let r = verify_gadget_bounds(8, PNormExponent::new(2).unwrap()).unwrap();
        assert!(r.all_passed(), "{:?}", r.checks);
        assert_eq!(r.u, Rational::new(1.into(), (8u64.pow(4) * 4).into()));
    }

    #[test]
    fn odd_n_is_rejected() {
        assert!(verify_gadget_bounds(7, PNormExponent::new(2).unwrap()).is_err());
    }
}
