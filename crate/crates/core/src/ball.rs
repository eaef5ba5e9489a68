//! Rational polytopes `B` with `B_p^d ⊆ B ⊆ β/(β-1) B_p^d`, and the
//! β-approximation of `max ||x||_p` over a polytope through the gauge of `B`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::vertices::{vertices, VertexMethod};
use crate::geometry::{pnorm_pow, HPolytope, Halfspace, PNormExponent, RationalVector};
use crate::lp::solve_lp_max;
use crate::normmax::max_phi;
use crate::rational::{ceil_root, int, make_primitive, pow, Rational};

/// One halfspace `q(z)^T x <= beta_z` before normalization, where
/// `q(z)_i = sgn(z_i) |z_i|^(p-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallFacet {
    pub z: Vec<i64>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxBall {
    /// Rows `q(z)/beta_z`, all with right-hand side 1.
    pub polytope: HPolytope,
    pub p: PNormExponent,
    pub beta: u64,
    /// Grid radius: directions range over `{-m..m}^d`.
    pub m: u64,
    pub facets: Vec<BallFacet>,
}

/// Outcome of an outer-containment check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    /// Every vertex was checked exactly.
    Proved,
    /// Every sampled LP maximizer passed; not a proof.
    SampledPass,
    Failed,
}

impl Containment {
    pub fn passed(self) -> bool {
        self != Containment::Failed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OuterMode {
    Exact,
    Sampled,
}

pub fn q_of(z: &[i64], p: PNormExponent) -> Vec<BigInt> {
    z.iter()
        .map(|&c| {
            let m = num_traits::pow(BigInt::from(c.unsigned_abs()), (p.get() - 1) as usize);
            if c < 0 {
                -m
            } else {
                m
            }
        })
        .collect()
}

fn z_norm_pow(z: &[i64], p: PNormExponent) -> BigInt {
    z.iter()
        .map(|&c| num_traits::pow(BigInt::from(c.unsigned_abs()), p.get() as usize))
        .sum()
}

/// `(sum |z_i|^p)^(p-1) <= rhs^p`, i.e. `||q(z)||_q <= rhs`, exactly.
pub fn facet_is_inner(facet: &BallFacet, p: PNormExponent) -> bool {
    if !facet.rhs.is_positive() {
        return false;
    }
    let lhs = Rational::from_integer(num_traits::pow(z_norm_pow(&facet.z, p), (p.get() - 1) as usize));
    lhs <= pow(&facet.rhs, p.get())
}

/// Smallest multiple of `2^-prec` that is at least `S^((p-1)/p)`.
fn rounded_rhs(s: &BigInt, p: PNormExponent, prec: u32) -> Rational {
    let e = p.get();
    let scaled = num_traits::pow(s.clone(), (e - 1) as usize) << (prec as usize * e as usize);
    Rational::new(ceil_root(&scaled, e), BigInt::one() << prec as usize)
}

impl ApproxBall {
    /// Assembles a ball from explicit facets, normalizing each row to
    /// right-hand side 1. The facets are not checked here.
    pub fn from_facets(p: PNormExponent, beta: u64, m: u64, d: usize, facets: Vec<BallFacet>) -> Result<Self> {
        let mut rows = Vec::with_capacity(facets.len());
        for f in &facets {
            if f.z.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: f.z.len(),
                });
            }
            if !f.rhs.is_positive() {
                return Err(Error::InvalidArgument("facet right-hand sides must be positive".into()));
            }
            let normal = RationalVector::new(
                q_of(&f.z, p)
                    .into_iter()
                    .map(|c| Rational::from_integer(c) / &f.rhs)
                    .collect(),
            );
            rows.push(Halfspace::new(normal, Rational::one()));
        }
        Ok(ApproxBall {
            polytope: HPolytope::new(d, rows)?,
            p,
            beta,
            m,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// `(beta / (beta - 1))^p`
    pub fn blowup_pow(&self) -> Rational {
        blowup_pow(self.beta, self.p)
    }
}

pub fn blowup_pow(beta: u64, p: PNormExponent) -> Rational {
    pow(&Rational::new(BigInt::from(beta), BigInt::from(beta - 1)), p.get())
}

/// Number of nonzero grid directions for radius `m` in dimension `d`.
pub fn grid_size(m: u64, d: usize) -> u128 {
    (2 * m as u128 + 1).saturating_pow(d as u32) - 1
}

/// Facets for all nonzero `z` in `{-m..m}^d`, parallel duplicates removed
/// (the tightest survives), in a canonical order.
fn grid_facets(p: PNormExponent, beta: u64, m: u64, d: usize) -> Vec<BallFacet> {
    let prec = {
        let target = BigInt::from(beta) * num_traits::pow(BigInt::from(m), p.get() as usize);
        // ceil(log2(target)) + 4
        let bits = (&target - 1u32).bits() as u32;
        bits + 4
    };
    let side = 2 * m as i64 + 1;
    let total = (side as u128).pow(d as u32) as u64;
    let zs: Vec<Vec<i64>> = (0..total)
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let c = (idx % side as u64) as i64 - m as i64;
                    idx /= side as u64;
                    c
                })
                .collect()
        })
        .filter(|z: &Vec<i64>| z.iter().any(|&c| c != 0))
        .collect();
    let built: Vec<(Vec<BigInt>, Rational, BallFacet)> = zs
        .into_par_iter()
        .map(|z| {
            let q = q_of(&z, p);
            let prim = make_primitive(q.clone());
            let nz = q.iter().position(|c| !c.is_zero()).unwrap();
            let scale = Rational::new(q[nz].clone(), prim[nz].clone());
            let rhs = rounded_rhs(&z_norm_pow(&z, p), p, prec);
            let normalized = &rhs / scale;
            (prim, normalized, BallFacet { z, rhs })
        })
        .collect();
    let mut best: BTreeMap<Vec<BigInt>, (Rational, BallFacet)> = BTreeMap::new();
    for (key, normalized, facet) in built {
        match best.get(&key) {
            Some((r, _)) if *r <= normalized => {}
            _ => {
                best.insert(key, (normalized, facet));
            }
        }
    }
    best.into_values().map(|(_, f)| f).collect()
}

/// Builds a ball approximation by growing the grid radius from 1 until
/// outer containment holds (proved by vertex enumeration up to
/// `limits.exact_outer_dim_cap`, sampled beyond).
pub fn build_ball_approx(p: PNormExponent, beta: u64, d: usize) -> Result<ApproxBall> {
    build_ball_approx_with(p, beta, d, &Limits::from_env())
}

pub fn build_ball_approx_with(p: PNormExponent, beta: u64, d: usize, limits: &Limits) -> Result<ApproxBall> {
    if p.get() < 2 {
        return Err(Error::InvalidArgument("ball approximation needs p >= 2".into()));
    }
    if beta < 2 {
        return Err(Error::InvalidArgument(format!("need beta >= 2, got {beta}")));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mode = if d <= limits.exact_outer_dim_cap {
        OuterMode::Exact
    } else {
        OuterMode::Sampled
    };
    let mut m = 1;
    loop {
        let size = grid_size(m, d);
        if size > limits.facet_budget {
            return Err(Error::FacetBudgetExceeded {
                facets: size,
                budget: limits.facet_budget,
            });
        }
        let ball = ApproxBall::from_facets(p, beta, m, d, grid_facets(p, beta, m, d))?;
        if verify_outer_containment_with(&ball, mode, limits)?.passed() {
            return Ok(ball);
        }
        m += 1;
    }
}

/// Every facet satisfies its exact inner certificate and the stored row is
/// the normalization of that facet.
pub fn verify_inner_containment(ball: &ApproxBall) -> bool {
    ball.facets.len() == ball.polytope.len()
        && ball.facets.par_iter().zip(ball.polytope.rows()).all(|(f, row)| {
            facet_is_inner(f, ball.p)
                && row.rhs.is_one()
                && row
                    .normal
                    .iter()
                    .zip(q_of(&f.z, ball.p))
                    .all(|(a, q)| *a == Rational::from_integer(q) / &f.rhs)
        })
}

pub fn verify_outer_containment(ball: &ApproxBall, mode: OuterMode) -> Result<Containment> {
    verify_outer_containment_with(ball, mode, &Limits::from_env())
}

pub fn verify_outer_containment_with(ball: &ApproxBall, mode: OuterMode, limits: &Limits) -> Result<Containment> {
    let bound = ball.blowup_pow();
    let d = ball.dim();
    match mode {
        OuterMode::Exact => {
            if d > limits.exact_outer_dim_cap {
                return Err(Error::DimensionCapExceeded {
                    dim: d,
                    cap: limits.exact_outer_dim_cap,
                });
            }
            let verts = match vertices(&ball.polytope, VertexMethod::Auto) {
                Ok(v) => v,
                Err(Error::UnboundedPolytope) => return Ok(Containment::Failed),
                Err(e) => return Err(e),
            };
            let ok = verts.par_iter().all(|v| pnorm_pow(v, ball.p) <= bound);
            Ok(if ok { Containment::Proved } else { Containment::Failed })
        }
        OuterMode::Sampled => {
            let dirs = sample_directions(d);
            let approx = approx_rows(&ball.polytope);
            let first_miss = dirs
                .par_iter()
                .map(|c| direction_within(c, &ball.polytope, &approx, ball.p, &bound))
                .find_any(|r| !matches!(r, Ok(true)));
            match first_miss {
                None => Ok(Containment::SampledPass),
                Some(Ok(_)) => Ok(Containment::Failed),
                Some(Err(e)) => Err(e),
            }
        }
    }
}

fn to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn approx_rows(poly: &HPolytope) -> Vec<Vec<f64>> {
    poly.rows().iter().map(|r| r.normal.iter().map(to_f64).collect()).collect()
}

/// Does the optimum of `max c^T x` over the ball polytope (rows with rhs 1)
/// satisfy `||x||_p^p <= bound`?
///
/// Constraint generation: solve over a few rows, add the rows the optimum
/// violates, repeat; the final point is feasible for every row, hence
/// optimal. Each intermediate optimum `x`, divided by its largest row value,
/// is a point of the ball, so one of those exceeding `bound` settles the
/// answer early.
fn direction_within(
    c: &RationalVector,
    ball: &HPolytope,
    approx: &[Vec<f64>],
    p: PNormExponent,
    bound: &Rational,
) -> Result<bool> {
    let d = ball.dim();
    let rows = ball.rows();
    let cf: Vec<f64> = c.iter().map(to_f64).collect();
    let cos = |a: &[f64]| {
        let dot: f64 = a.iter().zip(&cf).map(|(x, y)| x * y).sum();
        dot / a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE)
    };
    let mut chosen: Vec<usize> = (0..rows.len())
        .filter(|&i| rows[i].normal.iter().filter(|a| !a.is_zero()).count() == 1)
        .collect();
    let mut by_angle: Vec<usize> = (0..rows.len()).collect();
    by_angle.sort_by(|&i, &j| cos(&approx[j]).total_cmp(&cos(&approx[i])));
    chosen.extend(by_angle.into_iter().take(2 * d));
    chosen.sort_unstable();
    chosen.dedup();
    loop {
        let sub = HPolytope::new(d, chosen.iter().map(|&i| rows[i].clone()).collect())?;
        let Some(x) = solve_lp_max(c, &sub)?.point else {
            return Ok(match solve_lp_max(c, ball)?.point {
                Some(x) => pnorm_pow(&x, p) <= *bound,
                None => false,
            });
        };
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        let mut violated: Vec<(f64, usize, Rational)> = (0..rows.len())
            .into_par_iter()
            .filter_map(|i| {
                let (mut dot, mut scale) = (0.0, 0.0);
                for (a, b) in approx[i].iter().zip(&xf) {
                    dot += a * b;
                    scale += (a * b).abs();
                }
                if dot <= 1.0 - 1e-9 * (scale + 1.0) {
                    return None;
                }
                let exact = rows[i].normal.dot(&x);
                (exact > rows[i].rhs).then_some((dot, i, exact))
            })
            .collect();
        let Some(gauge) = violated.iter().map(|v| &v.2).max().cloned() else {
            return Ok(pnorm_pow(&x, p) <= *bound);
        };
        if pnorm_pow(&x, p) > bound * pow(&gauge, p.get()) {
            return Ok(false);
        }
        violated.sort_by(|a, b| b.0.total_cmp(&a.0));
        chosen.extend(violated.into_iter().take(4 * d).map(|(_, i, _)| i));
        chosen.sort_unstable();
        chosen.dedup();
    }
}

/// Directions in `{-1, 0, 1}^d \ {0}` when there are at most a few thousand,
/// otherwise the `2d` axes and the `2^d` sign vectors.
fn sample_directions(d: usize) -> Vec<RationalVector> {
    if d <= 7 {
        let total = 3u64.pow(d as u32);
        (0..total)
            .map(|mut idx| {
                RationalVector::new(
                    (0..d)
                        .map(|_| {
                            let c = (idx % 3) as i64 - 1;
                            idx /= 3;
                            int(c)
                        })
                        .collect(),
                )
            })
            .filter(|v| !v.is_zero())
            .collect()
    } else {
        let mut out: Vec<RationalVector> = (0..d)
            .flat_map(|i| [RationalVector::unit(d, i, 1), RationalVector::unit(d, i, -1)])
            .collect();
        out.extend(crate::geometry::sign_vectors(d));
        out
    }
}

/// Result of the β-approximation: `lower <= OPT <= upper` where
/// `lower = ||witness||_B^p` and `upper = (β/(β-1))^p lower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub witness: RationalVector,
    /// `||witness||_B`
    pub gauge: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl ApproxResult {
    /// `((β-1)/β)^p · upper`, which equals `lower`.
    pub fn guarantee(&self) -> &Rational {
        &self.lower
    }
}

pub fn beta_approx_normmax(poly: &HPolytope, p: PNormExponent, beta: u64) -> Result<ApproxResult> {
    let ball = build_ball_approx(p, beta, poly.dim())?;
    beta_approx_with_ball(poly, &ball)
}

/// Maximizes the gauge of `ball` over the 0-symmetric polytope `poly`.
pub fn beta_approx_with_ball(poly: &HPolytope, ball: &ApproxBall) -> Result<ApproxResult> {
    if !poly.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let r = max_phi(poly, &ball.polytope)?;
    let lower = pow(&r.value, ball.p.get());
    let upper = &lower * ball.blowup_pow();
    Ok(ApproxResult {
        witness: r.witness,
        gauge: r.value,
        lower,
        upper,
    })
}
