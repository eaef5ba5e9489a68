use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::RationalVector;
use crate::rational::Rational;

/// The halfspace `normal^T x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: RationalVector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: RationalVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.normal.dot(x) <= self.rhs
    }

    pub fn is_tight(&self, x: &RationalVector) -> bool {
        self.normal.dot(x) == self.rhs
    }

    pub fn negated(&self) -> Halfspace {
        Halfspace::new(-&self.normal, self.rhs.clone())
    }

    /// Positive rescaling that identifies equal halfspaces: divide by `|rhs|`
    /// when it is nonzero, otherwise by the first nonzero `|normal_i|`.
    pub fn canonical(&self) -> Halfspace {
        let scale = if !self.rhs.is_zero() {
            self.rhs.abs()
        } else {
            match self.normal.iter().find(|c| !c.is_zero()) {
                Some(c) => c.abs(),
                None => Rational::one(),
            }
        };
        let inv = scale.recip();
        Halfspace::new(self.normal.scale(&inv), &self.rhs * &inv)
    }
}

/// A polytope given as `{x : a_i^T x <= b_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    rows: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, rows: Vec<Halfspace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.normal.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.normal.dim(),
            });
        }
        Ok(HPolytope { dim, rows })
    }

    /// Convenience constructor from `(normal, rhs)` integer rows.
    pub fn from_int_rows(dim: usize, rows: &[(&[i64], i64)]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|(a, b)| Halfspace::new(RationalVector::from_ints(a), crate::rational::int(*b)))
            .collect();
        Self::new(dim, rows)
    }

    /// `{x : |x_i| <= bound_i}`.
    pub fn bounding_box(bounds: &[Rational]) -> Result<Self> {
        let dim = bounds.len();
        let mut rows = Vec::with_capacity(2 * dim);
        for (i, b) in bounds.iter().enumerate() {
            rows.push(Halfspace::new(RationalVector::unit(dim, i, 1), b.clone()));
            rows.push(Halfspace::new(RationalVector::unit(dim, i, -1), b.clone()));
        }
        Self::new(dim, rows)
    }

    /// The cube `[-1, 1]^d`.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::bounding_box(&vec![Rational::one(); dim])
    }

    /// The cross-polytope `{x : sigma^T x <= 1, sigma in {-1,1}^d}`.
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        let rows = sign_vectors(dim)
            .into_iter()
            .map(|s| Halfspace::new(s, Rational::one()))
            .collect();
        Self::new(dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Halfspace] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.dim && self.rows.iter().all(|r| r.contains(x))
    }

    /// `lambda * P` for `lambda > 0`.
    pub fn scaled(&self, lambda: &Rational) -> Result<HPolytope> {
        if !lambda.is_positive() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| Halfspace::new(r.normal.clone(), &r.rhs * lambda))
            .collect();
        HPolytope::new(self.dim, rows)
    }

    /// Whether the row set is closed under negation up to positive rescaling,
    /// which makes the polytope 0-symmetric.
    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<Halfspace> = self.rows.iter().map(Halfspace::canonical).collect();
        set.iter().all(|r| set.contains(&r.negated()))
    }

    /// Drops exact duplicate rows (after canonical rescaling), keeping the
    /// first occurrence.
    pub fn dedup_rows(&self) -> HPolytope {
        let mut seen = BTreeSet::new();
        let rows = self
            .rows
            .iter()
            .filter(|r| seen.insert(r.canonical()))
            .cloned()
            .collect();
        HPolytope {
            dim: self.dim,
            rows,
        }
    }
}

/// The convex hull of finitely many points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    points: Vec<RationalVector>,
}

impl VPolytope {
    pub fn new(dim: usize, points: Vec<RationalVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidArgument("V-polytope needs at least one point".into()));
        }
        if let Some(bad) = points.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(VPolytope { dim, points })
    }

    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| RationalVector::from_ints(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RationalVector] {
        &self.points
    }

    /// Whether the point set is closed under negation.
    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<&RationalVector> = self.points.iter().collect();
        self.points.iter().all(|v| set.contains(&-v))
    }
}

/// All `2^d` vectors in `{-1, 1}^d`, in binary counting order with bit `i`
/// set meaning coordinate `i` is `-1`.
pub fn sign_vectors(dim: usize) -> Vec<RationalVector> {
    (0..1u64 << dim)
        .map(|mask| {
            RationalVector::new(
                (0..dim)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            -Rational::one()
                        } else {
                            Rational::one()
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn symmetry_is_up_to_scaling() {
        let p = HPolytope::from_int_rows(1, &[(&[1], 1), (&[-2], 2)]).unwrap();
        assert!(p.is_symmetric());
        let q = HPolytope::from_int_rows(1, &[(&[1], 1), (&[-1], 2)]).unwrap();
        assert!(!q.is_symmetric());
    }

    #[test]
    fn rejects_mismatched_rows() {
        let r = vec![Halfspace::new(RationalVector::from_ints(&[1, 2, 3]), int(1))];
        assert!(matches!(
            HPolytope::new(2, r),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn cross_polytope_has_all_sign_rows() {
        let c = HPolytope::cross_polytope(3).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.is_symmetric());
        assert!(c.contains(&RationalVector::from_ints(&[1, 0, 0])));
        assert!(!c.contains(&RationalVector::from_ints(&[1, 1, 0])));
    }

    #[test]
    fn v_symmetry() {
        let v = VPolytope::from_int_points(2, &[&[1, 0], &[-1, 0]]).unwrap();
        assert!(v.is_symmetric());
        let w = VPolytope::from_int_points(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(!w.is_symmetric());
    }
}
