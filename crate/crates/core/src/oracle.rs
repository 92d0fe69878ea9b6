//! Brute-force reference implementations for the test suite.
//!
//! Everything here is written in the slowest, most literal form available —
//! explicit nested loops, re-materialized matrix powers, union-find counting —
//! so agreement with the main path is evidence rather than tautology. Nothing
//! in this module is used by the library's own computations.

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::Rng;

use crate::complex::SimplicialComplex;
use crate::rng::rng_from_seed;

/// Khatri-Rao product by definition: column `j` of the result is the
/// Kronecker product of column `j` of `a` with column `j` of `b`.
///
/// Panics if the column counts differ.
pub fn khatri_rao_bruteforce(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(
        a.ncols(),
        b.ncols(),
        "Khatri-Rao factors need equal column counts"
    );
    let (m, n, k) = (a.nrows(), b.nrows(), a.ncols());
    let mut out = DMatrix::zeros(m * n, k);
    for j in 0..k {
        for p in 0..m {
            for q in 0..n {
                out[(p * n + q, j)] = a[(p, j)] * b[(q, j)];
            }
        }
    }
    out
}

/// Max absolute deviation of `vec(A diag(b) C)` from `(C^T (kr) A) b`,
/// with `vec` stacking columns.
pub fn vec_identity_check(a: &DMatrix<f64>, b: &DVector<f64>, c: &DMatrix<f64>) -> f64 {
    assert_eq!(a.ncols(), b.len(), "A columns must match diag(b)");
    assert_eq!(b.len(), c.nrows(), "diag(b) must match C rows");
    let lhs_mat = a * DMatrix::from_diagonal(b) * c;
    let lhs = DVector::from_column_slice(lhs_mat.as_slice());
    let rhs = khatri_rao_bruteforce(&c.transpose(), a) * b;
    (lhs - rhs).amax()
}

/// Applies `m^p` to `x` after materializing the full power matrix.
pub fn matrix_power_apply(m: &DMatrix<f64>, x: &DVector<f64>, p: usize) -> DVector<f64> {
    assert_eq!(m.nrows(), m.ncols());
    assert_eq!(m.ncols(), x.len());
    let mut power = DMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..p {
        power = &power * m;
    }
    power * x
}

/// Number of connected components counted by union-find over the edge list.
pub fn connected_components(num_nodes: usize, edges: &[[usize; 2]]) -> usize {
    let mut parent: Vec<usize> = (0..num_nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &[i, j] in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    (0..num_nodes)
        .filter(|&x| find(&mut parent, x) == x)
        .count()
}

/// Seeded random complex for test corpora: up to 30 nodes, Erdos-Renyi
/// edges, and each edge-closed triangle kept with probability 1/2. Triangle
/// closure holds by construction, so the result always passes validation.
pub fn random_complex(seed: u64) -> SimplicialComplex {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(4..=30usize);
    let p_edge: f64 = rng.random_range(0.25..0.6);

    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p_edge {
                edges.push([i, j]);
            }
        }
    }
    // Guarantee at least one edge so downstream dimensions are nonzero.
    if edges.is_empty() {
        edges.push([0, 1]);
    }

    let has = |edges: &[[usize; 2]], a: usize, b: usize| edges.contains(&[a, b]);
    let mut triangles = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !has(&edges, i, j) {
                continue;
            }
            for k in (j + 1)..n {
                if has(&edges, j, k) && has(&edges, i, k) && rng.random::<f64>() < 0.5 {
                    triangles.push([i, j, k]);
                }
            }
        }
    }

    SimplicialComplex::new(n, edges, triangles).expect("random complex is valid by construction")
}

/// Random subset of `0..n` of the given size, for tests that need
/// reproducible index draws outside the sampling module.
pub fn random_subset(seed: u64, n: usize, size: usize) -> Vec<usize> {
    let mut rng = rng_from_seed(seed);
    let mut idx = index::sample(&mut rng, n, size).into_vec();
    idx.sort_unstable();
    idx
}
