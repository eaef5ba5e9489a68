use num_traits::{Signed, Zero};
use serde::Serialize;

use super::graph::Graph;
use super::sphere::{normal_of, polygon_hrep, sphere_points};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::geometry::vertices::VertexMethod;
use crate::geometry::{pnorm_pow, HPolytope, Halfspace, PNormExponent, RationalVector};
use crate::normmax::exact_normmax_with;
use crate::rational::{int, pow, to_fraction_string, Rational};

/// Padding gives up beyond this many vertices.
pub const MAX_PADDED_N: usize = 4096;

/// The rational reduction polytope for a Clique instance `(G, k)`.
///
/// Vertex indices are 0-based: `vertices_bar[v + n] = -vertices_bar[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub polytope: HPolytope,
    pub p: PNormExponent,
    /// The input graph with isolated vertices appended.
    pub graph: Graph,
    pub n_padded: usize,
    pub k: usize,
    pub u: Rational,
    /// `1 - max_{u != v} qbar_u^T pbar_v`
    pub eps_bar: Rational,
    /// Slack used on the right-hand side `2 - cut_eps` of the pair cuts:
    /// `eps_bar` minus the amount by which some `||pbar_v||_p^p` exceeds 1.
    pub cut_eps: Rational,
    pub vertices_bar: Vec<RationalVector>,
    pub normals_bar: Vec<RationalVector>,
    pub yes_threshold: Rational,
    pub no_threshold: Rational,
}

/// JSON sidecar written next to a serialized gadget. Every number is a
/// `num/den` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetSidecar {
    pub n_padded: String,
    pub k: String,
    pub p: String,
    #[serde(rename = "U")]
    pub u: String,
    pub eps_bar: String,
    pub cut_eps: String,
    pub yes_threshold: String,
    pub no_threshold: String,
}

impl GadgetInstance {
    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn sidecar(&self) -> GadgetSidecar {
        let n = |v: usize| to_fraction_string(&int(v as i64));
        GadgetSidecar {
            n_padded: n(self.n_padded),
            k: n(self.k),
            p: n(self.p.get() as usize),
            u: to_fraction_string(&self.u),
            eps_bar: to_fraction_string(&self.eps_bar),
            cut_eps: to_fraction_string(&self.cut_eps),
            yes_threshold: to_fraction_string(&self.yes_threshold),
            no_threshold: to_fraction_string(&self.no_threshold),
        }
    }

    /// The point `(pbar_{v_1}, ..., pbar_{v_k})`.
    pub fn clique_vertex(&self, indices: &[usize]) -> RationalVector {
        let blocks: Vec<RationalVector> = indices.iter().map(|&v| self.vertices_bar[v].clone()).collect();
        RationalVector::concat(&blocks)
    }
}

/// `U = 1 / (n^(2p) k^2)`
pub fn grid_unit(n: usize, k: usize, p: PNormExponent) -> Rational {
    let den = pow(&int(n as i64), 2 * p.get()) * int((k * k) as i64);
    den.recip()
}

/// `2^(p-3) / (p n^p)`, the deficit of a vertex that is far from every
/// rounded sphere point.
pub fn far_deficit(n: usize, p: PNormExponent) -> Rational {
    pow(&int(2), p.get()) / int(8) / (int(p.get() as i64) * pow(&int(n as i64), p.get()))
}

/// `2^(p-1) / (p n^p)`
pub fn eps_lower_bound(n: usize, p: PNormExponent) -> Rational {
    far_deficit(n, p) * int(4)
}

pub fn yes_threshold(k: usize, p: PNormExponent, u: &Rational) -> Rational {
    int(k as i64) * pow(&(int(1) - u), p.get())
}

pub fn no_threshold(n: usize, k: usize, p: PNormExponent, u: &Rational) -> Rational {
    int(k as i64 - 1) * pow(&(int(1) + u), p.get()) + int(1) - far_deficit(n, p)
}

/// `1 - max_{u != v} qbar_u^T pbar_v`
pub fn eps_bar_of(points: &[RationalVector], normals: &[RationalVector]) -> Rational {
    let mut max: Option<Rational> = None;
    for (u, q) in normals.iter().enumerate() {
        for (v, x) in points.iter().enumerate() {
            if u != v {
                let d = q.dot(x);
                if max.as_ref().is_none_or(|m| d > *m) {
                    max = Some(d);
                }
            }
        }
    }
    int(1) - max.unwrap_or_else(Rational::zero)
}

struct Rounded {
    u: Rational,
    points: Vec<RationalVector>,
    normals: Vec<RationalVector>,
    eps_bar: Rational,
    cut_eps: Rational,
    yes: Rational,
    no: Rational,
}

/// Computes the rounded data for `n` and returns it only if every
/// certificate the reduction relies on holds exactly.
fn certified(n: usize, k: usize, p: PNormExponent) -> Result<Option<Rounded>> {
    let u = grid_unit(n, k, p);
    let points = sphere_points(n, p, &u)?;
    let normals: Vec<RationalVector> = points.iter().map(|x| normal_of(x, p)).collect();
    let eps_bar = eps_bar_of(&points, &normals);
    let norms: Vec<Rational> = points.iter().map(|x| pnorm_pow(x, p)).collect();
    let max_norm = norms.iter().max().unwrap().clone();
    let min_norm = norms.iter().min().unwrap().clone();
    let excess = (max_norm - int(1)).max(Rational::zero());
    let cut_eps = &eps_bar - excess;
    let yes = yes_threshold(k, p, &u);
    let no = no_threshold(n, k, p, &u);
    let pp = int(p.get() as i64);

    let gap = no < yes;
    let eps_ok = eps_bar >= eps_lower_bound(n, p) - int(3) * &pp * &u && cut_eps.is_positive();
    // two near-tight blocks on a forbidden pair violate its cut
    let excludes = int(2) * min_norm > int(2) - &cut_eps;
    let half = &cut_eps / int(2);
    let far = int(1) - &half
        + pow(&(&half * (int(2) / int(n as i64) + &u)), p.get())
        <= int(1) - far_deficit(n, p);
    if !(gap && eps_ok && excludes && far) {
        return Ok(None);
    }
    Ok(Some(Rounded {
        u,
        points,
        normals,
        eps_bar,
        cut_eps,
        yes,
        no,
    }))
}

fn embed(block: &RationalVector, i: usize, k: usize) -> RationalVector {
    let mut coords = vec![Rational::zero(); 2 * k];
    coords[2 * i] = block[0].clone();
    coords[2 * i + 1] = block[1].clone();
    RationalVector::new(coords)
}

/// Builds the reduction polytope in dimension `2k`.
///
/// The graph is padded with isolated vertices to the smallest even
/// `n >= max(4, |V|)` for which the threshold gap, the `eps_bar` bounds and
/// the far-vertex estimate all hold as exact inequalities.
pub fn build_gadget(graph: &Graph, k: usize, p: PNormExponent) -> Result<GadgetInstance> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2, got {k}")));
    }
    if p.get() < 2 {
        return Err(Error::InvalidArgument("the reduction needs p >= 2".into()));
    }
    let mut n = graph.n().max(4);
    n += n % 2;
    let data = loop {
        if n > MAX_PADDED_N {
            return Err(Error::InvalidArgument(format!(
                "no certified padding up to n = {MAX_PADDED_N}"
            )));
        }
        if let Some(d) = certified(n, k, p)? {
            break d;
        }
        n += 2;
    };
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let padded = graph.padded(n);

    let polygon = polygon_hrep(&data.points)?;
    let mut rows = Vec::new();
    for i in 0..k {
        for r in polygon.rows() {
            rows.push(Halfspace::new(embed(&r.normal, i, k), r.rhs.clone()));
        }
    }
    let rhs = int(2) - &data.cut_eps;
    let mut pairs = padded.non_edges();
    pairs.extend((0..n).map(|v| (v, v)));
    for &(a, b) in &pairs {
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let left = embed(&data.normals[a], i, k);
                let right = embed(&data.normals[b], j, k);
                for combo in [left.add(&right), left.sub(&right)] {
                    rows.push(Halfspace::new(-&combo, rhs.clone()));
                    rows.push(Halfspace::new(combo, rhs.clone()));
                }
            }
        }
    }
    let polytope = HPolytope::new(2 * k, rows)?.dedup_rows();

    Ok(GadgetInstance {
        polytope,
        p,
        graph: padded,
        n_padded: n,
        k,
        u: data.u,
        eps_bar: data.eps_bar,
        cut_eps: data.cut_eps,
        vertices_bar: data.points,
        normals_bar: data.normals,
        yes_threshold: data.yes,
        no_threshold: data.no,
    })
}

/// Lowest index `v` maximizing `qbar_v^T x_block`.
pub fn nearest_vertex_index(x_block: &RationalVector, normals_bar: &[RationalVector]) -> usize {
    let mut best = 0;
    let mut best_val: Option<Rational> = None;
    for (v, q) in normals_bar.iter().enumerate() {
        let val = q.dot(x_block);
        if best_val.as_ref().is_none_or(|b| val > *b) {
            best = v;
            best_val = Some(val);
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSolution {
    pub value: Rational,
    pub witness: RationalVector,
    pub decision: bool,
}

/// Exact norm maximum of the gadget, classified against the thresholds.
/// A maximum strictly inside `(no_threshold, yes_threshold)` is reported as
/// [`Error::GapViolation`].
pub fn solve_gadget(inst: &GadgetInstance, limits: &Limits) -> Result<GadgetSolution> {
    let r = exact_normmax_with(&inst.polytope, inst.p, limits, VertexMethod::Auto)?;
    if r.value > inst.no_threshold && r.value < inst.yes_threshold {
        return Err(Error::GapViolation {
            value: to_fraction_string(&r.value),
            no: to_fraction_string(&inst.no_threshold),
            yes: to_fraction_string(&inst.yes_threshold),
        });
    }
    let decision = r.value >= inst.yes_threshold;
    Ok(GadgetSolution {
        value: r.value,
        witness: r.witness,
        decision,
    })
}

/// Does the graph have a clique of size `k`, decided through the exact norm
/// maximum of its gadget?
pub fn decide_clique_via_normmax(inst: &GadgetInstance) -> Result<bool> {
    Ok(solve_gadget(inst, &Limits::from_env())?.decision)
}

/// If every 2-D block of `x` is exactly some `pbar_v`, the block indices
/// reduced modulo `n` (that is, up to sign).
pub fn block_indices(inst: &GadgetInstance, x: &RationalVector) -> Option<Vec<usize>> {
    (0..inst.k)
        .map(|i| {
            let block = x.block(2 * i, 2);
            inst.vertices_bar
                .iter()
                .position(|p| *p == block)
                .map(|v| v % inst.n_padded)
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::graph::clique_oracle;
    use crate::rational::ratio;

    fn p(v: u32) -> PNormExponent {
        PNormExponent::new(v).unwrap()
    }

    #[test]
    fn grid_unit_example() {
        assert_eq!(grid_unit(4, 2, p(2)), ratio(1, 1024));
    }

    #[test]
    fn thresholds_are_separated() {
        for k in 2..4 {
            for e in 2..4 {
                let inst = build_gadget(&Graph::new(3), k, p(e)).unwrap();
                assert!(inst.no_threshold < inst.yes_threshold);
                assert!(inst.cut_eps.is_positive());
                assert!(inst.cut_eps <= inst.eps_bar);
                assert_eq!(inst.n_padded % 2, 0);
                assert!(inst.polytope.is_symmetric());
                assert_eq!(inst.dim(), 2 * k);
            }
        }
    }

    #[test]
    fn clique_vertex_membership_matches_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let inst = build_gadget(&g, 3, p(2)).unwrap();
        assert!(inst.polytope.contains(&inst.clique_vertex(&[0, 1, 2])));
        assert!(inst.polytope.contains(&inst.clique_vertex(&[2, 1 + inst.n_padded, 0])));
        assert!(!inst.polytope.contains(&inst.clique_vertex(&[0, 1, 3])));
        assert!(!inst.polytope.contains(&inst.clique_vertex(&[0, 0, 1])));
        assert!(!inst.polytope.contains(&inst.clique_vertex(&[0, inst.n_padded, 1])));
    }

    #[test]
    fn nearest_vertex_examples() {
        let inst = build_gadget(&Graph::new(4), 2, p(2)).unwrap();
        let n = inst.n_padded;
        assert_eq!(nearest_vertex_index(&inst.vertices_bar[0], &inst.normals_bar), 0);
        assert_eq!(nearest_vertex_index(&inst.vertices_bar[n], &inst.normals_bar), n);
        assert_eq!(nearest_vertex_index(&RationalVector::zeros(2), &inst.normals_bar), 0);
    }

    #[test]
    fn small_decisions() {
        let k3 = build_gadget(&Graph::complete(3), 3, p(2)).unwrap();
        let sol = solve_gadget(&k3, &Limits::default()).unwrap();
        assert!(sol.decision);
        assert!(sol.value >= k3.yes_threshold);
        let idx = block_indices(&k3, &sol.witness).unwrap();
        assert!(k3.graph.is_clique(&idx));

        let empty = build_gadget(&Graph::new(4), 2, p(2)).unwrap();
        let sol = solve_gadget(&empty, &Limits::default()).unwrap();
        assert!(!sol.decision);
        assert!(sol.value <= empty.no_threshold);
        assert!(!clique_oracle(&empty.graph, 2));

        let k4 = build_gadget(&Graph::complete(4), 2, p(2)).unwrap();
        assert!(decide_clique_via_normmax(&k4).unwrap());
    }

    #[test]
    fn k_too_large() {
        assert!(matches!(
            build_gadget(&Graph::new(2), 5, p(2)),
            Err(Error::KTooLarge { k: 5, .. })
        ));
    }
}
