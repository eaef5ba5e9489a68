//! Radii of 0-symmetric polytopes, kept in `p`-th powers so that everything
//! stays rational.
//!
//! For symmetric `P` the circumradius and half the diameter both equal
//! `max{||x||_p : x in P}`. The inradius and half the width of `P` with
//! respect to the dual norm are the reciprocal of the circumradius of the
//! polar `P°` with respect to `||.||_p`.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::vertices::VertexMethod;
use crate::geometry::{polar_of_vpoly, HPolytope, PNormExponent, RationalVector, VPolytope};
use crate::normmax::exact_normmax_with;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusKind {
    Circumradius,
    HalfDiameter,
    Inradius,
    Width,
}

impl RadiusKind {
    /// Circumradius and half-diameter take H-presentations; inradius and
    /// width take V-presentations.
    pub fn needs_h(self) -> bool {
        matches!(self, RadiusKind::Circumradius | RadiusKind::HalfDiameter)
    }
}

/// `R(P, B_p)^p`, which for symmetric `P` is also `(D(P, B_p)/2)^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterRadius {
    pub value: Rational,
    pub witness: RationalVector,
}

impl OuterRadius {
    /// Is `R^p >= gamma`?
    pub fn decide(&self, gamma: &Rational) -> bool {
        self.value >= *gamma
    }
}

/// `v = R(P°, B_p)^p`, so that `r(P, B_q)^p = 1/v` (likewise half the width).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerRadius {
    pub polar_value: Rational,
    pub witness: RationalVector,
}

impl InnerRadius {
    /// `r^p = 1/v`
    pub fn value(&self) -> Rational {
        self.polar_value.recip()
    }

    /// Is `r^p <= gamma`? Answered as `v * gamma >= 1`.
    pub fn decide(&self, gamma: &Rational) -> bool {
        &self.polar_value * gamma >= Rational::from_integer(1.into())
    }
}

pub fn radius_h(poly: &HPolytope, p: PNormExponent, which: RadiusKind) -> Result<OuterRadius> {
    radius_h_with(poly, p, which, &Limits::from_env())
}

pub fn radius_h_with(poly: &HPolytope, p: PNormExponent, which: RadiusKind, limits: &Limits) -> Result<OuterRadius> {
    if !which.needs_h() {
        return Err(Error::InvalidArgument(format!("{which:?} takes a V-presentation")));
    }
    if !poly.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let r = exact_normmax_with(poly, p, limits, VertexMethod::Auto)?;
    Ok(OuterRadius {
        value: r.value,
        witness: r.witness,
    })
}

pub fn radius_v(poly: &VPolytope, p: PNormExponent, which: RadiusKind) -> Result<InnerRadius> {
    radius_v_with(poly, p, which, &Limits::from_env())
}

pub fn radius_v_with(poly: &VPolytope, p: PNormExponent, which: RadiusKind, limits: &Limits) -> Result<InnerRadius> {
    if which.needs_h() {
        return Err(Error::InvalidArgument(format!("{which:?} takes an H-presentation")));
    }
    if !poly.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let polar = polar_of_vpoly(poly)?;
    let r = exact_normmax_with(&polar, p, limits, VertexMethod::Auto)?;
    Ok(InnerRadius {
        polar_value: r.value,
        witness: r.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(v: u32) -> PNormExponent {
        PNormExponent::new(v).unwrap()
    }

    #[test]
    fn outer_examples() {
        let sq = HPolytope::unit_cube(2).unwrap();
        assert_eq!(radius_h(&sq, p(2), RadiusKind::Circumradius).unwrap().value, int(2));
        assert_eq!(radius_h(&sq, p(1), RadiusKind::HalfDiameter).unwrap().value, int(2));
        let cross = HPolytope::cross_polytope(2).unwrap();
        assert_eq!(radius_h(&cross, p(2), RadiusKind::Circumradius).unwrap().value, int(1));
    }

    #[test]
    fn inner_examples() {
        let cube = VPolytope::from_int_points(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let r = radius_v(&cube, p(2), RadiusKind::Inradius).unwrap();
        assert_eq!(r.value(), int(1));
        assert!(r.decide(&int(1)));
        assert!(!r.decide(&ratio(99, 100)));

        let oct = VPolytope::from_int_points(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        )
        .unwrap();
        assert_eq!(radius_v(&oct, p(2), RadiusKind::Width).unwrap().value(), ratio(1, 3));
    }

    #[test]
    fn errors() {
        let seg = VPolytope::from_int_points(2, &[&[1, 0], &[-1, 0]]).unwrap();
        assert_eq!(radius_v(&seg, p(2), RadiusKind::Inradius), Err(Error::OriginNotInterior));
        let tri = VPolytope::from_int_points(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(radius_v(&tri, p(2), RadiusKind::Inradius), Err(Error::NotSymmetric));
        let simplex = HPolytope::from_int_rows(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).unwrap();
        assert_eq!(radius_h(&simplex, p(2), RadiusKind::Circumradius), Err(Error::NotSymmetric));
    }

    #[test]
    fn scaling() {
        let sq = HPolytope::unit_cube(3).unwrap();
        let base = radius_h(&sq, p(3), RadiusKind::Circumradius).unwrap().value;
        let scaled = radius_h(&sq.scaled(&ratio(3, 2)).unwrap(), p(3), RadiusKind::Circumradius)
            .unwrap()
            .value;
        assert_eq!(scaled, base * ratio(27, 8));
    }
}
