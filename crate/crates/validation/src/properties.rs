//! Property tests of the library against the reference oracles.

use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate as common;
use crate::{q, qpow, qr, Q};
use normmax_core::ball::{beta_approx_with_ball, build_ball_approx, ApproxBall};
use normmax_core::gadget::{build_gadget, Graph};
use normmax_core::geometry::vertices::{enumerate_vertices, enumerate_vertices_dd};
use normmax_core::lp::{solve_lp_max, LpStatus};
use normmax_core::normmax::exact_normmax;
use normmax_core::radii::{radius_h, RadiusKind};
use normmax_core::{PNormExponent, RationalVector};

fn pe(p: u32) -> PNormExponent {
    PNormExponent::new(p).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lp_optimum_is_best_vertex(seed in any::<u64>(), d in 2usize..=3, c in proptest::collection::vec(-7i64..=7, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = common::random_symmetric_rows(&mut rng, d, 10);
        let c: Vec<Q> = c[..d].iter().map(|&v| q(v)).collect();
        let r = solve_lp_max(&RationalVector::new(c.clone()), &common::to_hpoly(&rows, d)).unwrap();
        prop_assert_eq!(r.status, LpStatus::Optimal);
        let best = common::vertices(&rows, d).iter().map(|v| common::dot(&c, v)).max().unwrap();
        prop_assert_eq!(r.value.unwrap(), best.clone());
        prop_assert_eq!(common::dot(&c, &common::coords(&r.point.unwrap())), best);
    }

    #[test]
    fn both_vertex_routes_agree_with_reference(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = common::random_symmetric_rows(&mut rng, d, 12);
        let poly = common::to_hpoly(&rows, d);
        let want = common::vertices(&rows, d);
        let brute: Vec<Vec<Q>> = enumerate_vertices(&poly).unwrap().iter().map(common::coords).collect();
        let dd: Vec<Vec<Q>> = enumerate_vertices_dd(&poly).unwrap().iter().map(common::coords).collect();
        prop_assert_eq!(&brute, &want);
        prop_assert_eq!(&dd, &want);
    }

    #[test]
    fn normmax_witness_is_symmetric_and_scales(seed in any::<u64>(), d in 2usize..=3, p in 1u32..=3, num in 1i64..=9, den in 1i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = common::random_symmetric_rows(&mut rng, d, 10);
        let poly = common::to_hpoly(&rows, d);
        let r = exact_normmax(&poly, pe(p)).unwrap();
        let neg = RationalVector::new(r.witness.iter().map(|c| -c).collect());
        prop_assert!(poly.contains(&r.witness) && poly.contains(&neg));
        prop_assert_eq!(common::norm_pow(&common::coords(&r.witness), p), r.value.clone());

        let lambda = qr(num, den);
        let scaled = poly.scaled(&lambda).unwrap();
        let expected = qpow(&lambda, p) * &r.value;
        prop_assert_eq!(exact_normmax(&scaled, pe(p)).unwrap().value, expected.clone());
        prop_assert_eq!(radius_h(&scaled, pe(p), RadiusKind::Circumradius).unwrap().value, expected);
    }

    #[test]
    fn approximation_brackets_the_optimum(seed in any::<u64>(), d in 2usize..=3, p in 2u32..=3, beta_log in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = common::random_symmetric_rows(&mut rng, d, 10);
        let poly = common::to_hpoly(&rows, d);
        let ball = build_ball_approx(pe(p), 1 << beta_log, d).unwrap();
        let r = beta_approx_with_ball(&poly, &ball).unwrap();
        let opt = exact_normmax(&poly, pe(p)).unwrap().value;
        prop_assert!(r.lower <= opt && opt <= r.upper);
        prop_assert!(r.lower <= common::norm_pow(&common::coords(&r.witness), p));
    }
}

/// Rational points of the Euclidean unit sphere (inverse stereographic
/// projection) lie in every ball approximation for `p = 2`.
#[test]
fn unit_sphere_points_lie_in_the_ball() {
    let balls: Vec<ApproxBall> = [(2usize, 2u64), (2, 8), (3, 4)]
        .iter()
        .map(|&(d, beta)| build_ball_approx(pe(2), beta, d).unwrap())
        .collect();
    for u in -6..=6 {
        for v in -6..=6 {
            let (u, v) = (qr(u, 3), qr(v, 2));
            let s = &u * &u + &v * &v;
            let den = &s + Q::one();
            let circle = vec![(Q::one() - &u * &u) / (Q::one() + &u * &u), q(2) * &u / (Q::one() + &u * &u)];
            let sphere = vec![q(2) * &u / &den, q(2) * &v / &den, (&s - Q::one()) / &den];
            assert!(common::norm_pow(&circle, 2).is_one() && common::norm_pow(&sphere, 2).is_one());
            for ball in &balls {
                let x = if ball.dim() == 2 { &circle } else { &sphere };
                assert!(ball.polytope.contains(&RationalVector::new(x.clone())), "{x:?} outside beta={}", ball.beta);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// The gadget is 0-symmetric; a choice of block points survives the pair
    /// cuts exactly when the chosen vertices are distinct and pairwise
    /// adjacent.
    #[test]
    fn gadget_blocks_encode_cliques(n in 2usize..=4, mask in 0u64..64, picks in proptest::collection::vec((0usize..4, any::<bool>()), 2)) {
        let edges = common::edges_from_mask(n, mask & ((1 << (n * (n - 1) / 2)) - 1));
        let graph = Graph::from_edges(n, &edges.iter().copied().collect::<Vec<_>>()).unwrap();
        let inst = build_gadget(&graph, 2, pe(2)).unwrap();
        prop_assert!(inst.polytope.is_symmetric());
        prop_assert_eq!(inst.vertices_bar.len(), 2 * inst.n_padded);
        for v in 0..inst.n_padded {
            let neg = RationalVector::new(inst.vertices_bar[v].iter().map(|c| -c).collect());
            prop_assert_eq!(&inst.vertices_bar[v + inst.n_padded], &neg);
        }

        let vs: Vec<usize> = picks.iter().map(|&(v, _)| v % n).collect();
        let idx: Vec<usize> = picks.iter().zip(&vs).map(|(&(_, flip), &v)| if flip { v + inst.n_padded } else { v }).collect();
        let point = inst.clique_vertex(&idx);
        let (a, b) = (vs[0].min(vs[1]), vs[0].max(vs[1]));
        let is_clique = a != b && edges.contains(&(a, b));
        prop_assert_eq!(inst.polytope.contains(&point), is_clique);
        if is_clique {
            prop_assert!(common::norm_pow(&common::coords(&point), 2) >= inst.yes_threshold);
        }
    }
}
