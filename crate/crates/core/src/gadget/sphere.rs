use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{pnorm_pow, HPolytope, Halfspace, PNormExponent, RationalVector};
use crate::rational::{int, ratio, Rational};

/// A rounded sphere point together with a box known to contain the exact one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SpherePoint {
    pub bar: RationalVector,
    /// Coordinatewise lower and upper bounds on the exact point.
    pub lower: RationalVector,
    pub upper: RationalVector,
}

/// Start point and direction of the ray for the `v`-th point, `v` in `0..n`.
fn ray(n: usize, v: usize) -> (RationalVector, RationalVector) {
    let nn = n as i64;
    if v < n / 2 {
        let s = ratio(2 * v as i64, nn);
        (
            RationalVector::new(vec![int(1) - &s, s]),
            RationalVector::from_ints(&[1, 1]),
        )
    } else {
        let s = ratio(2 * (v as i64 + 1) - (nn + 2), nn);
        (
            RationalVector::new(vec![-s.clone(), int(1) - s]),
            RationalVector::from_ints(&[-1, 1]),
        )
    }
}

fn snap(x: &Rational, step: &Rational) -> Rational {
    (x / step).round() * step
}

pub(crate) fn sphere_points_bracketed(n: usize, p: PNormExponent, u: &Rational) -> Result<Vec<SpherePoint>> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need n >= 4, got {n}")));
    }
    if p.get() < 2 {
        return Err(Error::InvalidArgument("sphere points need p >= 2".into()));
    }
    let tol = u / int(8);
    let step = u / int(2);
    let mut half = Vec::with_capacity(n);
    for v in 0..n {
        let (start, dir) = ray(n, v);
        let at = |t: &Rational| start.add(&dir.scale(t));
        // t -> ||start + t dir||_p^p is increasing on [0, 1] and brackets 1 there
        let (mut lo, mut hi) = (Rational::zero(), Rational::one());
        while &hi - &lo > tol {
            let mid = (&lo + &hi) / int(2);
            if pnorm_pow(&at(&mid), p) <= Rational::one() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mid = at(&((&lo + &hi) / int(2)));
        let bar = RationalVector::new(mid.iter().map(|c| snap(c, &step)).collect());
        let (a, b) = (at(&lo), at(&hi));
        let lower = RationalVector::new(a.iter().zip(b.iter()).map(|(x, y)| x.min(y).clone()).collect());
        let upper = RationalVector::new(a.iter().zip(b.iter()).map(|(x, y)| x.max(y).clone()).collect());
        half.push(SpherePoint { bar, lower, upper });
    }
    let mirrored: Vec<SpherePoint> = half
        .iter()
        .map(|s| SpherePoint {
            bar: -&s.bar,
            lower: -&s.upper,
            upper: -&s.lower,
        })
        .collect();
    half.extend(mirrored);
    Ok(half)
}

/// The `2n` rounded points on the unit `p`-sphere in counterclockwise order,
/// starting at `(1, 0)`; point `v + n` is the negation of point `v`.
///
/// Each exact point is located by bisection along its ray to within `U/8`
/// per coordinate and then rounded to the grid `(U/2) Z^2`, so it moves by at
/// most `U` in every `p'`-norm.
pub fn sphere_points(n: usize, p: PNormExponent, u: &Rational) -> Result<Vec<RationalVector>> {
    Ok(sphere_points_bracketed(n, p, u)?.into_iter().map(|s| s.bar).collect())
}

/// `(sgn(x) |x|^(p-1), sgn(y) |y|^(p-1))`
pub fn normal_of(point: &RationalVector, p: PNormExponent) -> RationalVector {
    RationalVector::new(
        point
            .iter()
            .map(|c| {
                let m = crate::rational::pow(&c.abs(), p.get() - 1);
                if c.is_negative() {
                    -m
                } else {
                    m
                }
            })
            .collect(),
    )
}

fn cross(o: &RationalVector, a: &RationalVector, b: &RationalVector) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Edge inequalities `a_v^T x <= 1` of the polygon with the given vertices,
/// which must be listed counterclockwise and strictly convex around the
/// origin. Row `v` passes through points `v` and `v + 1`.
pub fn polygon_hrep(points: &[RationalVector]) -> Result<HPolytope> {
    let m = points.len();
    if m < 3 {
        return Err(Error::InvalidArgument(format!("a polygon needs 3 points, got {m}")));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    for v in 0..m {
        let prev = &points[(v + m - 1) % m];
        let next = &points[(v + 1) % m];
        if !cross(prev, &points[v], next).is_positive() {
            return Err(Error::NotInConvexPosition { index: v });
        }
    }
    let mut rows = Vec::with_capacity(m);
    for v in 0..m {
        let (a, b) = (&points[v], &points[(v + 1) % m]);
        let normal = RationalVector::new(vec![&b[1] - &a[1], &a[0] - &b[0]]);
        let rhs = normal.dot(a);
        if !rhs.is_positive() {
            return Err(Error::OriginNotInterior);
        }
        let row = Halfspace::new(normal.scale(&rhs.recip()), Rational::one());
        // left turns alone allow a polygon that winds around twice
        for (w, pt) in points.iter().enumerate() {
            let tight = w == v || w == (v + 1) % m;
            let value = row.normal.dot(pt);
            if (tight && !value.is_one()) || (!tight && value >= Rational::one()) {
                return Err(Error::NotInConvexPosition { index: w });
            }
        }
        rows.push(row);
    }
    HPolytope::new(2, rows)
}
