use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::vertices::{boundedness, Boundedness};
use crate::geometry::{Halfspace, HPolytope, VPolytope};
use crate::rational::Rational;

/// `{x : v^T x <= 1 for every point v}`, the polar of `conv(points)`.
///
/// The polar is bounded exactly when the origin is an interior point of the
/// hull, so the precondition is certified by the `2d` boundedness LPs on the
/// result.
pub fn polar_of_vpoly(poly: &VPolytope) -> Result<HPolytope> {
    let rows = poly
        .points()
        .iter()
        .map(|v| Halfspace::new(v.clone(), Rational::one()))
        .collect();
    let polar = HPolytope::new(poly.dim(), rows)?;
    match boundedness(&polar)? {
        Boundedness::Bounded => Ok(polar),
        // The polar always contains the origin, so it is never empty.
        Boundedness::Unbounded | Boundedness::Empty => Err(Error::OriginNotInterior),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vertices::enumerate_vertices;
    use crate::geometry::RationalVector;
    use crate::rational::ratio;

    fn row_set(p: &HPolytope) -> std::collections::BTreeSet<Halfspace> {
        p.rows().iter().map(Halfspace::canonical).collect()
    }

    #[test]
    fn polar_of_cross_polytope_is_the_cube() {
        let v = VPolytope::from_int_points(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        let polar = polar_of_vpoly(&v).unwrap();
        assert_eq!(row_set(&polar), row_set(&HPolytope::unit_cube(2).unwrap()));
    }

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        let v = VPolytope::from_int_points(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let polar = polar_of_vpoly(&v).unwrap();
        assert_eq!(row_set(&polar), row_set(&HPolytope::cross_polytope(2).unwrap()));
    }

    #[test]
    fn scaling_inverts() {
        let v = VPolytope::from_int_points(2, &[&[2, 0], &[-2, 0], &[0, 2], &[0, -2]]).unwrap();
        let polar = polar_of_vpoly(&v).unwrap();
        let half = ratio(1, 2);
        let want = HPolytope::bounding_box(&[half.clone(), half]).unwrap();
        assert_eq!(row_set(&polar), row_set(&want));
        let verts = enumerate_vertices(&polar).unwrap();
        assert!(verts.contains(&RationalVector::new(vec![ratio(1, 2), ratio(1, 2)])));
    }

    #[test]
    fn segment_is_not_full_dimensional() {
        let v = VPolytope::from_int_points(2, &[&[1, 0], &[-1, 0]]).unwrap();
        assert_eq!(polar_of_vpoly(&v), Err(Error::OriginNotInterior));
    }

    #[test]
    fn origin_on_boundary_is_rejected() {
        let v = VPolytope::from_int_points(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(polar_of_vpoly(&v), Err(Error::OriginNotInterior));
    }
}
