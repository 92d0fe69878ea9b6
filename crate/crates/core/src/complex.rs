//! Oriented simplicial complexes up to order 2.
//!
//! A complex is stored as its node count plus canonical edge and triangle
//! lists. Edges `(i, j)` require `i < j` and are oriented from `i` to `j`;
//! triangles `(i, j, k)` require `i < j < k` and carry the cyclic orientation
//! `i -> j -> k`. The signed incidence matrices `B1` (nodes x edges) and `B2`
//! (edges x triangles) are built at construction with integer-valued entries,
//! so the chain-complex identity `B1 * B2 = 0` can be checked exactly.

use std::collections::HashMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("node index {index} out of range for {num_nodes} nodes")]
    NodeOutOfRange { index: usize, num_nodes: usize },
    #[error("edge ({i}, {j}) is not in canonical order (need i < j)")]
    EdgeNotCanonical { i: usize, j: usize },
    #[error("triangle ({i}, {j}, {k}) is not in canonical order (need i < j < k)")]
    TriangleNotCanonical { i: usize, j: usize, k: usize },
    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("duplicate triangle ({i}, {j}, {k})")]
    DuplicateTriangle { i: usize, j: usize, k: usize },
    #[error("triangle ({i}, {j}, {k}) needs edge ({ei}, {ej}) which is not in the edge list")]
    MissingTriangleEdge {
        i: usize,
        j: usize,
        k: usize,
        ei: usize,
        ej: usize,
    },
    #[error("invalid complex JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// An oriented simplicial complex truncated at order 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    num_nodes: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    b1: DMatrix<f64>,
    b2: DMatrix<f64>,
    edge_index: HashMap<[usize; 2], usize>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    num_nodes: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl SimplicialComplex {
    /// Builds a complex from canonical edge and triangle lists.
    ///
    /// Edges must satisfy `i < j` and triangles `i < j < k`; duplicates are
    /// rejected, and every triangle's three boundary edges must appear in the
    /// edge list. The incidence matrices use the convention `b1[i, e] = -1`
    /// at the tail node and `+1` at the head, and a triangle `(i, j, k)`
    /// takes its boundary edges `(i, j)` and `(j, k)` with sign `+1` and
    /// `(i, k)` with sign `-1`.
    pub fn new(
        num_nodes: usize,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, ComplexError> {
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &[i, j]) in edges.iter().enumerate() {
            if i >= j {
                return Err(ComplexError::EdgeNotCanonical { i, j });
            }
            if j >= num_nodes {
                return Err(ComplexError::NodeOutOfRange {
                    index: j,
                    num_nodes,
                });
            }
            if edge_index.insert([i, j], e).is_some() {
                return Err(ComplexError::DuplicateEdge { i, j });
            }
        }

        let mut seen_triangles = HashMap::with_capacity(triangles.len());
        for (t, &[i, j, k]) in triangles.iter().enumerate() {
            if !(i < j && j < k) {
                return Err(ComplexError::TriangleNotCanonical { i, j, k });
            }
            if k >= num_nodes {
                return Err(ComplexError::NodeOutOfRange {
                    index: k,
                    num_nodes,
                });
            }
            if seen_triangles.insert([i, j, k], t).is_some() {
                return Err(ComplexError::DuplicateTriangle { i, j, k });
            }
            for [ei, ej] in [[i, j], [j, k], [i, k]] {
                if !edge_index.contains_key(&[ei, ej]) {
                    return Err(ComplexError::MissingTriangleEdge { i, j, k, ei, ej });
                }
            }
        }

        let mut b1 = DMatrix::zeros(num_nodes, edges.len());
        for (e, &[i, j]) in edges.iter().enumerate() {
            b1[(i, e)] = -1.0;
            b1[(j, e)] = 1.0;
        }

        let mut b2 = DMatrix::zeros(edges.len(), triangles.len());
        for (t, &[i, j, k]) in triangles.iter().enumerate() {
            b2[(edge_index[&[i, j]], t)] = 1.0;
            b2[(edge_index[&[j, k]], t)] = 1.0;
            b2[(edge_index[&[i, k]], t)] = -1.0;
        }

        let c = Self {
            num_nodes,
            edges,
            triangles,
            b1,
            b2,
            edge_index,
        };
        debug_assert!(c.boundary_product_is_zero());
        Ok(c)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Node-to-edge incidence matrix, `num_nodes x num_edges`.
    pub fn b1(&self) -> &DMatrix<f64> {
        &self.b1
    }

    /// Edge-to-triangle incidence matrix, `num_edges x num_triangles`.
    pub fn b2(&self) -> &DMatrix<f64> {
        &self.b2
    }

    /// Position of edge `(i, j)` in the edge list, if present.
    pub fn edge_position(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_index.get(&[i.min(j), i.max(j)]).copied()
    }

    /// `B1 * B2 == 0` checked in exact integer arithmetic.
    pub fn boundary_product_is_zero(&self) -> bool {
        let prod = &self.b1 * &self.b2;
        prod.iter().all(|&v| v == 0.0)
    }

    /// Serializes the combinatorial data (incidence matrices are derived,
    /// never stored).
    pub fn to_json(&self) -> String {
        let doc = ComplexJson {
            num_nodes: self.num_nodes,
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("complex serialization cannot fail")
    }

    /// Parses and fully revalidates a complex written by [`Self::to_json`].
    pub fn from_json(s: &str) -> Result<Self, ComplexError> {
        let doc: ComplexJson = serde_json::from_str(s)?;
        Self::new(doc.num_nodes, doc.edges, doc.triangles)
    }

    /// FNV-1a hash of the canonical combinatorial data. Stable across runs;
    /// used to stamp signal sidecars with the complex they belong to.
    pub fn content_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.num_nodes as u64);
        eat(self.edges.len() as u64);
        for &[i, j] in &self.edges {
            eat(i as u64);
            eat(j as u64);
        }
        eat(self.triangles.len() as u64);
        for &[i, j, k] in &self.triangles {
            eat(i as u64);
            eat(j as u64);
            eat(k as u64);
        }
        h
    }
}

/// The five Laplacians of a complex: `L0 = B1 B1^T`, `L2 = B2^T B2`, and the
/// edge Laplacian `L1 = L_low + L_up` with `L_low = B1^T B1`, `L_up = B2 B2^T`.
#[derive(Debug, Clone)]
pub struct HodgeLaplacians {
    l0: DMatrix<f64>,
    l1: DMatrix<f64>,
    l2: DMatrix<f64>,
    l_low: DMatrix<f64>,
    l_up: DMatrix<f64>,
}

impl HodgeLaplacians {
    pub fn new(c: &SimplicialComplex) -> Self {
        let b1t = c.b1().transpose();
        let l0 = c.b1() * &b1t;
        let l_low = &b1t * c.b1();
        let l_up = c.b2() * c.b2().transpose();
        let l2 = c.b2().transpose() * c.b2();
        let l1 = &l_low + &l_up;
        Self {
            l0,
            l1,
            l2,
            l_low,
            l_up,
        }
    }

    /// Node Laplacian, `num_nodes` square.
    pub fn l0(&self) -> &DMatrix<f64> {
        &self.l0
    }

    /// Edge (Hodge) Laplacian, `num_edges` square.
    pub fn l1(&self) -> &DMatrix<f64> {
        &self.l1
    }

    /// Triangle Laplacian, `num_triangles` square.
    pub fn l2(&self) -> &DMatrix<f64> {
        &self.l2
    }

    /// Lower edge Laplacian `B1^T B1`.
    pub fn l_low(&self) -> &DMatrix<f64> {
        &self.l_low
    }

    /// Upper edge Laplacian `B2 B2^T`.
    pub fn l_up(&self) -> &DMatrix<f64> {
        &self.l_up
    }
}
