//! Norm maximization: brute force over vertices, per-facet LPs for polytopal
//! gauges, `p = 1`, parallelotopes, and the decision wrapper.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::linalg::rank;
use crate::geometry::vertices::{dd_homogeneous, ensure_bounded, uses_dd, vertices, HomogeneousVertex, VertexMethod};
use crate::geometry::{pnorm_pow, HPolytope, PNormExponent, RationalVector};
use crate::lp::solve_lp_max;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    MaxPhi,
    Parmax,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormmaxResult {
    /// `max ||x||_p^p` for brute force and Parmax; `max phi(x)` for Max-Phi.
    pub value: Rational,
    pub witness: RationalVector,
    pub method: Method,
}

/// Keeps the larger value; on ties the lexicographically smaller witness.
fn better(a: (Rational, RationalVector), b: (Rational, RationalVector)) -> (Rational, RationalVector) {
    match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

/// `max ||x||_p^p` over the vertices of a bounded polytope, exactly.
pub fn exact_normmax(poly: &HPolytope, p: PNormExponent) -> Result<NormmaxResult> {
    exact_normmax_with(poly, p, &Limits::from_env(), VertexMethod::Auto)
}

pub fn exact_normmax_with(
    poly: &HPolytope,
    p: PNormExponent,
    limits: &Limits,
    method: VertexMethod,
) -> Result<NormmaxResult> {
    limits.check_dim(poly.dim())?;
    if uses_dd(poly, method) {
        return normmax_homogeneous(dd_homogeneous(poly)?, p);
    }
    let verts = vertices(poly, method)?;
    let (value, witness) = verts
        .into_par_iter()
        .map(|v| (pnorm_pow(&v, p), v))
        .reduce_with(better)
        .ok_or(Error::EmptyPolytope)?;
    Ok(NormmaxResult {
        value,
        witness,
        method: Method::BruteForce,
    })
}

/// Same maximum over integer vertices `x / t`: each value is `N / t^p` with
/// `N = sum |x_i|^p`, compared by cross-multiplication so that only the
/// winners are ever reduced to rationals.
fn normmax_homogeneous(verts: Vec<HomogeneousVertex>, p: PNormExponent) -> Result<NormmaxResult> {
    let e = p.get() as usize;
    let scored: Vec<(BigInt, BigInt, HomogeneousVertex)> = verts
        .into_iter()
        .map(|v| {
            let num = v.x.iter().fold(BigInt::zero(), |acc, c| acc + num_traits::pow(c.abs(), e));
            (num, num_traits::pow(v.t.clone(), e), v)
        })
        .collect();
    let mut best: Option<(BigInt, BigInt, RationalVector)> = None;
    for (num, den, v) in scored {
        let replace = match &best {
            None => true,
            Some((bn, bd, bw)) => match (&num * bd).cmp(&(bn * &den)) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => v.to_rational() < *bw,
            },
        };
        if replace {
            let w = v.to_rational();
            best = Some((num, den, w));
        }
    }
    let (num, den, witness) = best.ok_or(Error::EmptyPolytope)?;
    Ok(NormmaxResult {
        value: Rational::new(num, den),
        witness,
        method: Method::BruteForce,
    })
}

/// Maximizes the gauge `phi(x) = max_i a_i^T x` of `ball = {a_i^T x <= 1}`
/// over `poly` with one LP per ball row.
///
/// The ball is expected to be bounded with the origin in its interior; only
/// the normalization `rhs = 1` is checked here. For a 0-symmetric `poly` the
/// LP for `-a` is answered from the one for `a`.
pub fn max_phi(poly: &HPolytope, ball: &HPolytope) -> Result<NormmaxResult> {
    if ball.dim() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            found: ball.dim(),
        });
    }
    if let Some((i, r)) = ball.rows().iter().enumerate().find(|(_, r)| !r.rhs.is_one()) {
        return Err(Error::BallNotNormalized {
            row: i,
            rhs: crate::rational::to_fraction_string(&r.rhs),
        });
    }
    if !ensure_bounded(poly)? {
        return Err(Error::EmptyPolytope);
    }
    let symmetric = poly.is_symmetric();
    let normals: Vec<&RationalVector> = if symmetric {
        let all: std::collections::BTreeSet<&RationalVector> =
            ball.rows().iter().map(|r| &r.normal).collect();
        // keep one of each ±a pair
        all.iter().copied().filter(|a| {
            let neg = -*a;
            !all.contains(&neg) || *a <= &neg
        }).collect()
    } else {
        ball.rows().iter().map(|r| &r.normal).collect()
    };

    let best = normals
        .par_iter()
        .map(|a| -> Result<(Rational, RationalVector)> {
            let r = solve_lp_max(a, poly)?;
            let (value, x) = (r.value.ok_or(Error::UnboundedPolytope)?, r.point.unwrap());
            if symmetric {
                let neg = -&x;
                Ok((value, if neg < x { neg } else { x }))
            } else {
                Ok((value, x))
            }
        })
        .try_reduce_with(|a, b| Ok(better(a, b)))
        .ok_or_else(|| Error::InvalidArgument("ball has no rows".into()))??;
    Ok(NormmaxResult {
        value: best.0,
        witness: best.1,
        method: Method::MaxPhi,
    })
}

/// `max ||x||_1` through [`max_phi`] with the `2^d` rows of the cross-polytope.
pub fn normmax1(poly: &HPolytope) -> Result<NormmaxResult> {
    normmax1_with(poly, &Limits::from_env())
}

pub fn normmax1_with(poly: &HPolytope, limits: &Limits) -> Result<NormmaxResult> {
    limits.check_dim(poly.dim())?;
    max_phi(poly, &HPolytope::cross_polytope(poly.dim())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParmaxMode {
    /// `sum [0, 1] v_i`
    ZeroOne,
    /// `sum [-1, 1] v_i`
    Sym,
}

/// Parmax result; `coefficients` is the maximizing choice of lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParmaxResult {
    pub result: NormmaxResult,
    pub coefficients: Vec<i8>,
}

/// `max ||x||_p^p` over the parallelotope `sum_i I v_i` (`I = [0,1]` or
/// `[-1,1]`) by evaluating all `2^d` extreme choices of the coefficients.
pub fn parmax(generators: &[RationalVector], mode: ParmaxMode, p: PNormExponent) -> Result<ParmaxResult> {
    parmax_with(generators, mode, p, &Limits::from_env())
}

pub fn parmax_with(
    generators: &[RationalVector],
    mode: ParmaxMode,
    p: PNormExponent,
    limits: &Limits,
) -> Result<ParmaxResult> {
    let d = generators.first().map_or(0, RationalVector::dim);
    if d == 0 {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    if let Some(g) = generators.iter().find(|g| g.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: g.dim(),
        });
    }
    if generators.len() != d {
        return Err(Error::GeneratorCount {
            expected: d,
            found: generators.len(),
        });
    }
    limits.check_dim(d)?;
    let rows: Vec<Vec<Rational>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    if rank(&rows) < d {
        return Err(Error::DependentGenerators);
    }

    let low: i8 = match mode {
        ParmaxMode::ZeroOne => 0,
        ParmaxMode::Sym => -1,
    };
    let mut best: Option<(Rational, RationalVector, Vec<i8>)> = None;
    for mask in 0..1u64 << d {
        let lambda: Vec<i8> = (0..d).map(|i| if mask >> i & 1 == 1 { 1 } else { low }).collect();
        let mut x = RationalVector::zeros(d);
        for (g, &l) in generators.iter().zip(&lambda) {
            match l {
                1 => x = x.add(g),
                -1 => x = x.sub(g),
                _ => {}
            }
        }
        let value = pnorm_pow(&x, p);
        let replace = match &best {
            None => true,
            Some((bv, bx, _)) => value > *bv || (value == *bv && x < *bx),
        };
        if replace {
            best = Some((value, x, lambda));
        }
    }
    let (value, witness, coefficients) = best.expect("at least one coefficient choice");
    Ok(ParmaxResult {
        result: NormmaxResult {
            value,
            witness,
            method: Method::Parmax,
        },
        coefficients,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solver {
    /// Brute-force vertex maximum of `||x||_p^p`.
    Exact,
    /// [`normmax1`]; only valid for `p = 1`.
    L1,
}

/// Is `max{||x||_p^p : x in P} >= gamma`? The comparison is exact and
/// inclusive.
pub fn decide_normmax(poly: &HPolytope, p: PNormExponent, gamma: &Rational, solver: Solver) -> Result<bool> {
    let value = match solver {
        Solver::Exact => exact_normmax(poly, p)?.value,
        Solver::L1 => {
            if p.get() != 1 {
                return Err(Error::InvalidArgument(
                    "the l1 solver only decides p = 1".into(),
                ));
            }
            normmax1(poly)?.value
        }
    };
    Ok(value >= *gamma)
}

/// Convenience: the zero-one / sign coefficient vector as rationals.
pub fn coefficients_as_vector(c: &[i8]) -> RationalVector {
    RationalVector::new(
        c.iter()
            .map(|&v| match v {
                0 => Rational::zero(),
                1 => Rational::one(),
                _ => -Rational::one(),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(v: u32) -> PNormExponent {
        PNormExponent::new(v).unwrap()
    }

    fn box31() -> HPolytope {
        HPolytope::bounding_box(&[int(3), int(1)]).unwrap()
    }

    #[test]
    fn exact_examples() {
        let sq = HPolytope::unit_cube(2).unwrap();
        let r = exact_normmax(&sq, p(2)).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(r.witness, RationalVector::from_ints(&[-1, -1]));
        assert_eq!(r.method, Method::BruteForce);

        let cross = HPolytope::cross_polytope(2).unwrap();
        assert_eq!(exact_normmax(&cross, p(2)).unwrap().value, int(1));
        assert_eq!(exact_normmax(&box31(), p(1)).unwrap().value, int(4));
    }

    #[test]
    fn exact_errors() {
        let sq = HPolytope::unit_cube(3).unwrap();
        let limits = Limits::default().with_dim_cap(2);
        assert_eq!(
            exact_normmax_with(&sq, p(2), &limits, VertexMethod::Auto),
            Err(Error::DimensionCapExceeded { dim: 3, cap: 2 })
        );
        let half = HPolytope::from_int_rows(1, &[(&[1], 1)]).unwrap();
        assert_eq!(exact_normmax(&half, p(2)), Err(Error::UnboundedPolytope));
    }

    #[test]
    fn max_phi_examples() {
        let sq = HPolytope::unit_cube(2).unwrap();
        let b1 = HPolytope::cross_polytope(2).unwrap();
        assert_eq!(max_phi(&sq, &b1).unwrap().value, int(2));
        assert_eq!(max_phi(&box31(), &b1).unwrap().value, int(4));
        assert_eq!(max_phi(&sq, &sq).unwrap().value, int(1));
    }

    #[test]
    fn max_phi_rejects_unnormalized_ball() {
        let sq = HPolytope::unit_cube(2).unwrap();
        let ball = HPolytope::bounding_box(&[int(2), int(1)]).unwrap();
        assert!(matches!(max_phi(&sq, &ball), Err(Error::BallNotNormalized { row: 0, .. })));
    }

    #[test]
    fn max_phi_on_asymmetric_polytope() {
        let simplex =
            HPolytope::from_int_rows(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap();
        let b1 = HPolytope::cross_polytope(2).unwrap();
        let r = max_phi(&simplex, &b1).unwrap();
        assert_eq!(r.value, int(1));
        assert!(simplex.contains(&r.witness));
    }

    #[test]
    fn normmax1_examples() {
        assert_eq!(normmax1(&HPolytope::unit_cube(2).unwrap()).unwrap().value, int(2));
        assert_eq!(normmax1(&HPolytope::cross_polytope(2).unwrap()).unwrap().value, int(1));
        assert_eq!(normmax1(&box31()).unwrap().value, int(4));
    }

    #[test]
    fn parmax_examples() {
        let e: Vec<RationalVector> = (0..3).map(|i| RationalVector::unit(3, i, 1)).collect();
        let r = parmax(&e, ParmaxMode::ZeroOne, p(2)).unwrap();
        assert_eq!(r.result.value, int(3));
        assert_eq!(r.coefficients, vec![1, 1, 1]);
        assert_eq!(parmax(&e, ParmaxMode::Sym, p(2)).unwrap().result.value, int(3));

        let g = vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[1, 1])];
        let r = parmax(&g, ParmaxMode::ZeroOne, p(2)).unwrap();
        assert_eq!(r.result.value, int(5));
        assert_eq!(r.coefficients, vec![1, 1]);
        assert_eq!(r.result.witness, RationalVector::from_ints(&[2, 1]));
    }

    #[test]
    fn parmax_errors() {
        let g = vec![RationalVector::from_ints(&[1, 2]), RationalVector::from_ints(&[2, 4])];
        assert_eq!(parmax(&g, ParmaxMode::Sym, p(2)), Err(Error::DependentGenerators));
        let g = vec![RationalVector::from_ints(&[1, 2])];
        assert!(matches!(
            parmax(&g, ParmaxMode::Sym, p(2)),
            Err(Error::GeneratorCount { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn decide_examples() {
        let sq = HPolytope::unit_cube(2).unwrap();
        assert!(decide_normmax(&sq, p(2), &int(2), Solver::Exact).unwrap());
        assert!(!decide_normmax(&sq, p(2), &(int(2) + ratio(1, 1000)), Solver::Exact).unwrap());
        let cross = HPolytope::cross_polytope(2).unwrap();
        assert!(decide_normmax(&cross, p(1), &int(1), Solver::L1).unwrap());
        assert!(decide_normmax(&cross, p(2), &int(1), Solver::L1).is_err());
    }
}
