//! Incremental Bowyer-Watson Delaunay triangulation in the plane.
//!
//! Points are inserted one at a time into a super-triangle bootstrap: every
//! triangle whose circumcircle strictly contains the new point is deleted,
//! and the boundary of the deleted cavity is re-fanned to the point. The
//! in-circle predicate is a 3x3 determinant with a relative epsilon guard
//! (1e-12), so near-cocircular quadruples resolve deterministically by
//! insertion order. Points drawn from a continuous distribution stay far
//! from the guard band in practice.

use thiserror::Error;

const INCIRCLE_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum DelaunayError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points are degenerate (no valid triangle found)")]
    Degenerate,
}

/// `> 0` when `d` is strictly inside the circumcircle of the CCW triangle
/// `(a, b, c)`, with the guard band counted as outside.
fn in_circumcircle(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let ax = a[0] - d[0];
    let ay = a[1] - d[1];
    let bx = b[0] - d[0];
    let by = b[1] - d[1];
    let cx = c[0] - d[0];
    let cy = c[1] - d[1];
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
    let scale =
        (ax.abs() + ay.abs() + a2) * (bx.abs() + by.abs() + b2) * (cx.abs() + cy.abs() + c2);
    det > INCIRCLE_EPS * scale
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Circumcenter of a triangle; falls back to the centroid for (numerically)
/// collinear vertices, which cannot occur for triangles the triangulation
/// actually emits.
pub fn circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-300 {
        return [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0];
    }
    let a2 = a[0] * a[0] + a[1] * a[1];
    let b2 = b[0] * b[0] + b[1] * b[1];
    let c2 = c[0] * c[0] + c[1] * c[1];
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    [ux, uy]
}

/// Triangulates a point set; returns canonical vertex triples (each sorted
/// ascending, the list sorted lexicographically).
pub fn triangulate(points: &[[f64; 2]]) -> Result<Vec<[usize; 3]>, DelaunayError> {
    let n = points.len();
    if n < 3 {
        return Err(DelaunayError::TooFewPoints(n));
    }

    // Super-triangle comfortably containing every point.
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p[0]);
        min_y = min_y.min(p[1]);
        max_x = max_x.max(p[0]);
        max_y = max_y.max(p[1]);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    let mut verts: Vec<[f64; 2]> = points.to_vec();
    verts.push([cx - 30.0 * span, cy - 10.0 * span]);
    verts.push([cx + 30.0 * span, cy - 10.0 * span]);
    verts.push([cx, cy + 30.0 * span]);

    // Triangles kept CCW so the in-circle sign is meaningful.
    let ccw = |t: [usize; 3]| -> [usize; 3] {
        if orient(verts[t[0]], verts[t[1]], verts[t[2]]) < 0.0 {
            [t[0], t[2], t[1]]
        } else {
            t
        }
    };
    let mut triangles: Vec<[usize; 3]> = vec![ccw([n, n + 1, n + 2])];

    for p in 0..n {
        let point = verts[p];
        let mut bad = Vec::new();
        for (idx, t) in triangles.iter().enumerate() {
            if in_circumcircle(verts[t[0]], verts[t[1]], verts[t[2]], point) {
                bad.push(idx);
            }
        }
        if bad.is_empty() {
            // With the guard band the point may sit on a shared circumcircle
            // boundary; assign it to the triangle that contains it.
            for (idx, t) in triangles.iter().enumerate() {
                let (a, b, c) = (verts[t[0]], verts[t[1]], verts[t[2]]);
                if orient(a, b, point) >= 0.0
                    && orient(b, c, point) >= 0.0
                    && orient(c, a, point) >= 0.0
                {
                    bad.push(idx);
                    break;
                }
            }
        }
        if bad.is_empty() {
            return Err(DelaunayError::Degenerate);
        }

        // Cavity boundary: edges of deleted triangles seen exactly once.
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        for &idx in &bad {
            let t = triangles[idx];
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (u.min(v), u.max(v));
                if let Some(pos) = boundary.iter().position(|&e| e == key) {
                    boundary.swap_remove(pos);
                } else {
                    boundary.push(key);
                }
            }
        }

        for &idx in bad.iter().rev() {
            triangles.swap_remove(idx);
        }
        for (u, v) in boundary {
            triangles.push(ccw([u, v, p]));
        }
    }

    let mut out: Vec<[usize; 3]> = triangles
        .into_iter()
        .filter(|t| t.iter().all(|&v| v < n))
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    if out.is_empty() {
        return Err(DelaunayError::Degenerate);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn random_points(seed: u64, n: usize) -> Vec<[f64; 2]> {
        let mut rng = rng_from_seed(seed);
        (0..n)
            .map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
            .collect()
    }

    #[test]
    fn triangle_of_three_points() {
        let pts = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        assert_eq!(triangulate(&pts).unwrap(), vec![[0, 1, 2]]);
        assert!(matches!(
            triangulate(&pts[..2]),
            Err(DelaunayError::TooFewPoints(2))
        ));
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let pts = vec![[0.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.25, 0.25]];
        assert!(matches!(triangulate(&pts), Err(DelaunayError::Degenerate)));
    }

    #[test]
    fn square_gives_two_triangles() {
        let pts = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let tris = triangulate(&pts).unwrap();
        assert_eq!(tris.len(), 2);
    }

    #[test]
    fn empty_circumcircle_property() {
        for seed in 0..10u64 {
            let pts = random_points(seed, 60);
            let tris = triangulate(&pts).unwrap();
            for t in &tris {
                let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
                // Orient CCW for the predicate.
                let (a, b, c) = if orient(a, b, c) < 0.0 {
                    (a, c, b)
                } else {
                    (a, b, c)
                };
                for (i, p) in pts.iter().enumerate() {
                    if t.contains(&i) {
                        continue;
                    }
                    assert!(
                        !in_circumcircle(a, b, c, *p),
                        "seed {seed}: point {i} inside circumcircle of {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_count_matches_euler_for_hull_points() {
        // For a triangulation of n points with h hull vertices:
        // triangles = 2n - h - 2.
        for seed in 0..5u64 {
            let pts = random_points(seed + 100, 40);
            let tris = triangulate(&pts).unwrap();
            let mut edges = std::collections::BTreeSet::new();
            let mut edge_count = std::collections::BTreeMap::new();
            for t in &tris {
                for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                    edges.insert((u, v));
                    *edge_count.entry((u, v)).or_insert(0usize) += 1;
                }
            }
            let hull_edges = edge_count.values().filter(|&&c| c == 1).count();
            assert_eq!(tris.len(), 2 * pts.len() - hull_edges - 2);
            // Euler: V - E + F = 1 (triangles only, outer face excluded).
            assert_eq!(pts.len() as i64 - edges.len() as i64 + tris.len() as i64, 1);
        }
    }

    #[test]
    fn deterministic_output() {
        let pts = random_points(7, 120);
        assert_eq!(triangulate(&pts).unwrap(), triangulate(&pts).unwrap());
    }

    #[test]
    fn circumcenter_equidistant() {
        let (a, b, c) = ([0.0, 0.0], [2.0, 0.0], [0.5, 1.5]);
        let cc = circumcenter(a, b, c);
        let d = |p: [f64; 2]| ((p[0] - cc[0]).powi(2) + (p[1] - cc[1]).powi(2)).sqrt();
        assert!((d(a) - d(b)).abs() < 1e-12);
        assert!((d(a) - d(c)).abs() < 1e-12);
    }
}
