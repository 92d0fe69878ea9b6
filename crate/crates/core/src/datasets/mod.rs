//! Builtin experiment complexes.
//!
//! Two datasets drive the experiments: a small hand-picked complex (7 nodes,
//! 10 edges, 2 filled triangles, 2 independent holes) and a procedurally
//! generated Delaunay lattice with two disk-shaped holes punched out.

pub mod delaunay;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::oracle::connected_components;
use crate::rng::rng_from_seed;
use crate::spectral::matrix_rank;
use delaunay::{circumcenter, DelaunayError};
use rand::Rng;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Delaunay(#[from] DelaunayError),
    #[error("hole {index} does not fit inside the bounding box")]
    HoleOutsideBox { index: usize },
    #[error("hole radius must be nonnegative, got {0}")]
    NegativeRadius(f64),
    #[error("generated complex is disconnected ({components} components); adjust seed or radii")]
    Disconnected { components: usize },
    #[error("generated complex has {found} holes, expected {expected}; adjust seed or radii")]
    WrongHoleCount { found: usize, expected: usize },
}

/// The canonical small complex: two filled triangles `(0,1,2)` and `(3,4,5)`
/// joined through node 3 and node 6 by unfilled cycles, giving two
/// independent harmonic flows.
pub fn small_complex() -> SimplicialComplex {
    SimplicialComplex::new(
        7,
        vec![
            [0, 1],
            [0, 2],
            [1, 2],
            [1, 3],
            [2, 3],
            [3, 4],
            [3, 5],
            [4, 5],
            [4, 6],
            [5, 6],
        ],
        vec![[0, 1, 2], [3, 4, 5]],
    )
    .expect("builtin complex is valid")
}

/// Configuration for the procedural two-hole Delaunay complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TwoHoleConfig {
    pub num_points: usize,
    pub seed: u64,
    pub hole_centers: [[f64; 2]; 2],
    pub hole_radii: [f64; 2],
    /// `[[min_x, min_y], [max_x, max_y]]`.
    pub bounding_box: [[f64; 2]; 2],
}

impl Default for TwoHoleConfig {
    fn default() -> Self {
        Self {
            num_points: 300,
            seed: 0,
            hole_centers: [[0.3, 0.5], [0.7, 0.5]],
            hole_radii: [0.12, 0.12],
            bounding_box: [[0.0, 0.0], [1.0, 1.0]],
        }
    }
}

/// A generated complex together with the node coordinates (for plotting and
/// export).
#[derive(Debug, Clone)]
pub struct TwoHoleComplex {
    pub complex: SimplicialComplex,
    pub points: Vec<[f64; 2]>,
}

/// Builds a triangulated lattice with holes punched out of it.
///
/// Points are sampled uniformly in the box and Delaunay-triangulated. A
/// triangle is dropped when its circumcenter or any vertex lies inside a
/// hole disk; an edge is dropped when it borders no surviving triangle and
/// either touches a hole (midpoint or an endpoint inside the disk) or
/// belonged to a dropped triangle — otherwise leftover chords would cut the
/// carved cavity into several cycles. Nodes left without any edge are
/// dropped and the rest reindexed. The result must come out connected with
/// exactly one independent cycle per positive-radius hole, otherwise
/// construction fails and the caller should adjust the seed or radii.
pub fn two_hole_complex(cfg: &TwoHoleConfig) -> Result<TwoHoleComplex, DatasetError> {
    let [[min_x, min_y], [max_x, max_y]] = cfg.bounding_box;
    for (index, (center, &radius)) in cfg
        .hole_centers
        .iter()
        .zip(cfg.hole_radii.iter())
        .enumerate()
    {
        if radius < 0.0 {
            return Err(DatasetError::NegativeRadius(radius));
        }
        if center[0] - radius < min_x
            || center[0] + radius > max_x
            || center[1] - radius < min_y
            || center[1] + radius > max_y
        {
            return Err(DatasetError::HoleOutsideBox { index });
        }
    }

    let mut rng = rng_from_seed(cfg.seed);
    let points: Vec<[f64; 2]> = (0..cfg.num_points)
        .map(|_| {
            [
                rng.random_range(min_x..max_x),
                rng.random_range(min_y..max_y),
            ]
        })
        .collect();

    let in_hole = |p: [f64; 2]| -> bool {
        cfg.hole_centers
            .iter()
            .zip(cfg.hole_radii.iter())
            .any(|(c, &r)| r > 0.0 && (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) < r * r)
    };

    let all_triangles = delaunay::triangulate(&points)?;
    let kept_triangles: Vec<[usize; 3]> = all_triangles
        .iter()
        .copied()
        .filter(|t| {
            let verts = [points[t[0]], points[t[1]], points[t[2]]];
            let cc = circumcenter(verts[0], verts[1], verts[2]);
            !verts.iter().any(|&v| in_hole(v)) && !in_hole(cc)
        })
        .collect();

    let mut tri_edges = std::collections::BTreeSet::new();
    for t in &kept_triangles {
        for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            tri_edges.insert([u, v]);
        }
    }
    let mut all_edges = std::collections::BTreeSet::new();
    let mut removed_tri_edges = std::collections::BTreeSet::new();
    for t in &all_triangles {
        let kept = kept_triangles.binary_search(t).is_ok();
        for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            all_edges.insert([u, v]);
            if !kept {
                removed_tri_edges.insert([u, v]);
            }
        }
    }

    let edge_touches_hole = |e: &[usize; 2]| -> bool {
        let (a, b) = (points[e[0]], points[e[1]]);
        let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        in_hole(a) || in_hole(b) || in_hole(mid)
    };
    let kept_edges: Vec<[usize; 2]> = all_edges
        .iter()
        .copied()
        .filter(|e| {
            tri_edges.contains(e) || (!edge_touches_hole(e) && !removed_tri_edges.contains(e))
        })
        .collect();

    // Drop nodes without incident edges and reindex everything else.
    let mut used = vec![false; cfg.num_points];
    for e in &kept_edges {
        used[e[0]] = true;
        used[e[1]] = true;
    }
    let mut remap = vec![usize::MAX; cfg.num_points];
    let mut kept_points = Vec::new();
    for (old, &keep) in used.iter().enumerate() {
        if keep {
            remap[old] = kept_points.len();
            kept_points.push(points[old]);
        }
    }
    let edges: Vec<[usize; 2]> = kept_edges
        .iter()
        .map(|e| [remap[e[0]], remap[e[1]]])
        .collect();
    let triangles: Vec<[usize; 3]> = kept_triangles
        .iter()
        .map(|t| [remap[t[0]], remap[t[1]], remap[t[2]]])
        .collect();

    let complex = SimplicialComplex::new(kept_points.len(), edges, triangles)?;

    let components = connected_components(complex.num_nodes(), complex.edges());
    if components != 1 {
        return Err(DatasetError::Disconnected { components });
    }
    let beta1 = complex.num_edges() - matrix_rank(complex.b1()) - matrix_rank(complex.b2());
    let expected = cfg.hole_radii.iter().filter(|&&r| r > 0.0).count();
    if beta1 != expected {
        return Err(DatasetError::WrongHoleCount {
            found: beta1,
            expected,
        });
    }

    Ok(TwoHoleComplex {
        complex,
        points: kept_points,
    })
}

/// First Betti number computed from incidence ranks:
/// `N1 - rank(B1) - rank(B2)`.
pub fn betti1(c: &SimplicialComplex) -> usize {
    c.num_edges() - matrix_rank(c.b1()) - matrix_rank(c.b2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::HodgeLaplacians;
    use crate::spectral::{eigendecompose_symmetric, split_spectrum, DEFAULT_ZERO_TOL};

    #[test]
    fn small_complex_structure() {
        let c = small_complex();
        assert_eq!(c.num_nodes(), 7);
        assert_eq!(c.num_edges(), 10);
        assert_eq!(c.num_triangles(), 2);

        let l = HodgeLaplacians::new(&c);
        let es1 = eigendecompose_symmetric(l.l1()).unwrap();
        let (null1, _) = split_spectrum(&es1, DEFAULT_ZERO_TOL);
        assert_eq!(null1.len(), 2, "two independent harmonic flows");

        let es0 = eigendecompose_symmetric(l.l0()).unwrap();
        let (null0, _) = split_spectrum(&es0, DEFAULT_ZERO_TOL);
        assert_eq!(null0.len(), 1, "connected");

        assert_eq!(
            matrix_rank(c.b2()),
            2,
            "both triangle boundaries independent"
        );
        assert_eq!(betti1(&c), 2);
    }

    #[test]
    fn two_hole_complex_has_two_holes() {
        let cfg = TwoHoleConfig {
            num_points: 120,
            seed: 1,
            ..TwoHoleConfig::default()
        };
        let out = two_hole_complex(&cfg).unwrap();
        assert_eq!(betti1(&out.complex), 2);
        assert_eq!(
            connected_components(out.complex.num_nodes(), out.complex.edges()),
            1
        );

        let l = HodgeLaplacians::new(&out.complex);
        let es1 = eigendecompose_symmetric(l.l1()).unwrap();
        let (null1, _) = split_spectrum(&es1, DEFAULT_ZERO_TOL);
        assert_eq!(null1.len(), 2);
    }

    #[test]
    fn two_hole_is_deterministic() {
        let cfg = TwoHoleConfig {
            num_points: 80,
            seed: 2,
            ..TwoHoleConfig::default()
        };
        let a = two_hole_complex(&cfg).unwrap();
        let b = two_hole_complex(&cfg).unwrap();
        assert_eq!(a.complex, b.complex);
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn zero_radius_holes_give_plain_disk() {
        let cfg = TwoHoleConfig {
            num_points: 60,
            seed: 3,
            hole_radii: [0.0, 0.0],
            ..TwoHoleConfig::default()
        };
        let out = two_hole_complex(&cfg).unwrap();
        assert_eq!(betti1(&out.complex), 0);
    }

    #[test]
    fn euler_characteristic_consistency() {
        for (cfg, name) in [
            (
                TwoHoleConfig {
                    num_points: 100,
                    seed: 2,
                    ..TwoHoleConfig::default()
                },
                "holes",
            ),
            (
                TwoHoleConfig {
                    num_points: 100,
                    seed: 2,
                    hole_radii: [0.0, 0.0],
                    ..TwoHoleConfig::default()
                },
                "disk",
            ),
        ] {
            let out = two_hole_complex(&cfg).unwrap();
            let c = &out.complex;
            let beta0 = connected_components(c.num_nodes(), c.edges()) as i64;
            let beta1 = betti1(c) as i64;
            let beta2 = (c.num_triangles() - matrix_rank(c.b2())) as i64;
            let euler = c.num_nodes() as i64 - c.num_edges() as i64 + c.num_triangles() as i64;
            assert_eq!(euler, beta0 - beta1 + beta2, "{name}");
            assert_eq!(beta2, 0, "{name}");
        }
    }

    #[test]
    fn scale_tracks_requested_point_count() {
        let cfg = TwoHoleConfig {
            num_points: 150,
            seed: 1,
            ..TwoHoleConfig::default()
        };
        let out = two_hole_complex(&cfg).unwrap();
        let n0 = out.complex.num_nodes();
        assert!(n0 > 100 && n0 <= 150, "kept {n0} of 150 points");
        assert!(
            out.complex.num_triangles() > n0,
            "triangles scale with nodes"
        );
    }

    #[test]
    fn bad_configs_rejected() {
        let cfg = TwoHoleConfig {
            hole_centers: [[0.05, 0.5], [0.7, 0.5]],
            hole_radii: [0.2, 0.1],
            ..TwoHoleConfig::default()
        };
        assert!(matches!(
            two_hole_complex(&cfg),
            Err(DatasetError::HoleOutsideBox { index: 0 })
        ));
        let cfg = TwoHoleConfig {
            hole_radii: [-0.1, 0.1],
            ..TwoHoleConfig::default()
        };
        assert!(matches!(
            two_hole_complex(&cfg),
            Err(DatasetError::NegativeRadius(_))
        ));
    }
}
