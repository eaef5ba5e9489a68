//! The Clique-to-norm-maximization reduction: rounded points on the unit
//! `p`-sphere, the polygon they span, its `k`-fold product cut by one pair
//! of slabs per non-edge, and the thresholds separating YES from NO.

mod bounds;
mod graph;
mod instance;
mod sphere;

pub use bounds::{verify_gadget_bounds, BoundCheck, BoundsReport};
pub use graph::{clique_number, clique_oracle, Graph};
pub use instance::{
    block_indices, build_gadget, decide_clique_via_normmax, eps_bar_of, eps_lower_bound,
    far_deficit, grid_unit, nearest_vertex_index, no_threshold, solve_gadget, yes_threshold,
    GadgetInstance, GadgetSidecar, GadgetSolution, MAX_PADDED_N,
};
pub use sphere::{normal_of, polygon_hrep, sphere_points};
