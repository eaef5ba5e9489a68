//! Exact rational vectors, polytope presentations, p-norm powers, polarity,
//! vertex enumeration and the polytope file format.

mod format;
pub mod linalg;
mod norm;
mod polar;
mod polytope;
mod vector;
pub mod vertices;

pub use format::{
    parse_hpolytope, parse_polytope, parse_vpolytope, serialize_hpolytope, serialize_polytope,
    serialize_vpolytope, Polytope,
};
pub use norm::{pnorm_pow, PNormExponent};
pub use polar::polar_of_vpoly;
pub use polytope::{sign_vectors, HPolytope, Halfspace, VPolytope};
pub use vector::RationalVector;
pub use vertices::{
    boundedness, enumerate_vertices, enumerate_vertices_dd, vertices, Boundedness, VertexMethod,
};
