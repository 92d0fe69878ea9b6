//! Spectral decompositions of the Hodge Laplacians.
//!
//! Every Laplacian here is symmetric positive semidefinite, so the spectrum
//! is real and the eigenvectors orthonormal. Eigenvalues are kept sorted
//! ascending and each eigenvector is sign-normalized (largest-magnitude entry
//! positive) so repeated runs produce the same basis. The range/null split
//! and the lifted edge-space bases `U_low = B1^T Q0`, `U_up = B2 Q2` feed the
//! sampling and recovery pipeline.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::complex::{HodgeLaplacians, SimplicialComplex};

/// Relative eigenvalue tolerance separating the null space from the range.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

/// Absolute floor under the null/range threshold.
pub const ZERO_TOL_FLOOR: f64 = 1e-12;

/// Relative singular-value cutoff used for all numerical rank decisions.
pub const RANK_CUTOFF_REL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (relative asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("column {index} pairs with a numerically zero eigenvalue {value:.3e}")]
    ZeroEigenvalueLift { index: usize, value: f64 },
    #[error("requested bandwidth {requested} exceeds available dimension {available} for {what}")]
    BandwidthExceeded {
        what: &'static str,
        requested: usize,
        available: usize,
    },
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues paired
/// with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl EigenSystem {
    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    /// Largest eigenvalue, or 0 for an empty system.
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Symmetric eigendecomposition with deterministic ordering.
///
/// The input is symmetrized as `(M + M^T) / 2` before decomposing; inputs
/// with relative asymmetry above `1e-12` are rejected.
pub fn eigendecompose_symmetric(m: &DMatrix<f64>) -> Result<EigenSystem, SpectralError> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(SpectralError::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Ok(EigenSystem {
            values: DVector::zeros(0),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let scale = m.amax();
    let asymmetry = (m - m.transpose()).amax();
    if asymmetry > 1e-12 * (1.0 + scale) {
        return Err(SpectralError::NotSymmetric {
            asymmetry: asymmetry / (1.0 + scale),
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = DVector::from_fn(rows, |r, _| eig.eigenvalues[order[r]]);
    let mut vectors = DMatrix::zeros(rows, rows);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).clone_owned();
        // Sign convention: largest-magnitude entry made positive.
        let mut pivot = 0;
        for r in 1..rows {
            if col[r].abs() > col[pivot].abs() {
                pivot = r;
            }
        }
        if col[pivot] < 0.0 {
            col.neg_mut();
        }
        vectors.set_column(dst, &col);
    }
    Ok(EigenSystem { values, vectors })
}

/// Splits an eigensystem into `(null, range)` parts.
///
/// An eigenvalue is classified as null iff it is at most
/// `max(zero_tol * max(lambda_max, 1), 1e-12)`.
pub fn split_spectrum(es: &EigenSystem, zero_tol: f64) -> (EigenSystem, EigenSystem) {
    let threshold = (zero_tol * es.max_value().max(1.0)).max(ZERO_TOL_FLOOR);
    let null_idx: Vec<usize> = (0..es.len())
        .filter(|&i| es.values[i] <= threshold)
        .collect();
    let range_idx: Vec<usize> = (0..es.len())
        .filter(|&i| es.values[i] > threshold)
        .collect();
    (
        select_columns(es, &null_idx),
        select_columns(es, &range_idx),
    )
}

fn select_columns(es: &EigenSystem, idx: &[usize]) -> EigenSystem {
    let n = es.vectors.nrows();
    let values = DVector::from_fn(idx.len(), |r, _| es.values[idx[r]]);
    let mut vectors = DMatrix::zeros(n, idx.len());
    for (dst, &src) in idx.iter().enumerate() {
        vectors.set_column(dst, &es.vectors.column(src));
    }
    EigenSystem { values, vectors }
}

/// Numerical rank from singular values with the crate-wide relative cutoff.
pub fn matrix_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > RANK_CUTOFF_REL * smax)
        .count()
}

/// Edge-space bases lifted from node and triangle eigenvectors.
#[derive(Debug, Clone)]
pub struct LiftedBases {
    pub u_low: DMatrix<f64>,
    pub u_up: DMatrix<f64>,
    pub lambda_low: DVector<f64>,
    pub lambda_up: DVector<f64>,
}

/// Lifts range eigenvectors of `L0` and `L2` into the edge space.
///
/// For an eigenpair `(lambda, q)` of `L0` with `lambda > 0`, `B1^T q` is an
/// eigenvector of `L_low` with the same eigenvalue; symmetrically `B2 q` for
/// `L2`/`L_up`. Columns are *not* renormalized: a lifted column has norm
/// `sqrt(lambda)`, which is exactly what the recovery system expects.
pub fn lift_bases(
    c: &SimplicialComplex,
    q0: &DMatrix<f64>,
    q2: &DMatrix<f64>,
    lambda0: &DVector<f64>,
    lambda2: &DVector<f64>,
) -> Result<LiftedBases, SpectralError> {
    if q0.nrows() != c.num_nodes() || q0.ncols() != lambda0.len() {
        return Err(SpectralError::DimensionMismatch(format!(
            "q0 is {}x{} but complex has {} nodes and {} eigenvalues supplied",
            q0.nrows(),
            q0.ncols(),
            c.num_nodes(),
            lambda0.len()
        )));
    }
    if q2.nrows() != c.num_triangles() || q2.ncols() != lambda2.len() {
        return Err(SpectralError::DimensionMismatch(format!(
            "q2 is {}x{} but complex has {} triangles and {} eigenvalues supplied",
            q2.nrows(),
            q2.ncols(),
            c.num_triangles(),
            lambda2.len()
        )));
    }
    let check_positive = |vals: &DVector<f64>| -> Result<(), SpectralError> {
        let scale = vals.iter().copied().fold(1.0, f64::max);
        let threshold = (DEFAULT_ZERO_TOL * scale).max(ZERO_TOL_FLOOR);
        for (i, &v) in vals.iter().enumerate() {
            if v <= threshold {
                return Err(SpectralError::ZeroEigenvalueLift { index: i, value: v });
            }
        }
        Ok(())
    };
    check_positive(lambda0)?;
    check_positive(lambda2)?;
    Ok(LiftedBases {
        u_low: c.b1().transpose() * q0,
        u_up: c.b2() * q2,
        lambda_low: lambda0.clone(),
        lambda_up: lambda2.clone(),
    })
}

/// Truncated spectral bases of a complex: range eigenvectors of `L0` and
/// `L2`, the harmonic basis of `N(L1)`, and the lifted edge bases with their
/// eigenvalues.
#[derive(Debug, Clone)]
pub struct SpectralBases {
    q0: DMatrix<f64>,
    q2: DMatrix<f64>,
    q1_harmonic: DMatrix<f64>,
    u_low: DMatrix<f64>,
    u_up: DMatrix<f64>,
    lambda_low: DVector<f64>,
    lambda_up: DVector<f64>,
    lambda1_max: f64,
}

impl SpectralBases {
    /// Builds full-dimension bases: all nonzero eigenpairs of `L0` and `L2`
    /// (ascending) and the whole null space of `L1`.
    pub fn new(
        c: &SimplicialComplex,
        l: &HodgeLaplacians,
        zero_tol: f64,
    ) -> Result<Self, SpectralError> {
        let es0 = eigendecompose_symmetric(l.l0())?;
        let (_, range0) = split_spectrum(&es0, zero_tol);
        let es2 = eigendecompose_symmetric(l.l2())?;
        let (_, range2) = split_spectrum(&es2, zero_tol);
        let es1 = eigendecompose_symmetric(l.l1())?;
        let (null1, _) = split_spectrum(&es1, zero_tol);

        let lifted = lift_bases(
            c,
            range0.vectors(),
            range2.vectors(),
            range0.values(),
            range2.values(),
        )?;
        Ok(Self {
            q0: range0.vectors,
            q2: range2.vectors,
            q1_harmonic: null1.vectors,
            u_low: lifted.u_low,
            u_up: lifted.u_up,
            lambda_low: lifted.lambda_low,
            lambda_up: lifted.lambda_up,
            lambda1_max: es1.max_value(),
        })
    }

    /// Keeps the first `w0`/`w2` range columns and the first `r1_dim`
    /// harmonic columns.
    pub fn truncate(&self, w0: usize, w2: usize, r1_dim: usize) -> Result<Self, SpectralError> {
        if w0 > self.w0() {
            return Err(SpectralError::BandwidthExceeded {
                what: "node bandwidth",
                requested: w0,
                available: self.w0(),
            });
        }
        if w2 > self.w2() {
            return Err(SpectralError::BandwidthExceeded {
                what: "triangle bandwidth",
                requested: w2,
                available: self.w2(),
            });
        }
        if r1_dim > self.r1_dim() {
            return Err(SpectralError::BandwidthExceeded {
                what: "harmonic bandwidth",
                requested: r1_dim,
                available: self.r1_dim(),
            });
        }
        Ok(Self {
            q0: self.q0.columns(0, w0).clone_owned(),
            q2: self.q2.columns(0, w2).clone_owned(),
            q1_harmonic: self.q1_harmonic.columns(0, r1_dim).clone_owned(),
            u_low: self.u_low.columns(0, w0).clone_owned(),
            u_up: self.u_up.columns(0, w2).clone_owned(),
            lambda_low: self.lambda_low.rows(0, w0).clone_owned(),
            lambda_up: self.lambda_up.rows(0, w2).clone_owned(),
            lambda1_max: self.lambda1_max,
        })
    }

    /// Node-space basis `Q0` (range of `L0`), one column per kept eigenpair.
    pub fn q0(&self) -> &DMatrix<f64> {
        &self.q0
    }

    /// Triangle-space basis `Q2` (range of `L2`).
    pub fn q2(&self) -> &DMatrix<f64> {
        &self.q2
    }

    /// Orthonormal harmonic basis of `N(L1)`.
    pub fn q1_harmonic(&self) -> &DMatrix<f64> {
        &self.q1_harmonic
    }

    /// Lifted basis `B1^T Q0` (columns have norm `sqrt(lambda)`).
    pub fn u_low(&self) -> &DMatrix<f64> {
        &self.u_low
    }

    /// Lifted basis `B2 Q2`.
    pub fn u_up(&self) -> &DMatrix<f64> {
        &self.u_up
    }

    /// Eigenvalues paired with `u_low` columns (nonzero spectrum of `L_low`).
    pub fn lambda_low(&self) -> &DVector<f64> {
        &self.lambda_low
    }

    /// Eigenvalues paired with `u_up` columns (nonzero spectrum of `L_up`).
    pub fn lambda_up(&self) -> &DVector<f64> {
        &self.lambda_up
    }

    /// Largest eigenvalue of `L1`; the scale for spectral normalization.
    pub fn lambda1_max(&self) -> f64 {
        self.lambda1_max
    }

    pub fn w0(&self) -> usize {
        self.u_low.ncols()
    }

    pub fn w2(&self) -> usize {
        self.u_up.ncols()
    }

    pub fn r1_dim(&self) -> usize {
        self.q1_harmonic.ncols()
    }

    /// Total edge-space bandwidth `W1 = W0 + W2 + R1`.
    pub fn w1(&self) -> usize {
        self.w0() + self.w2() + self.r1_dim()
    }

    /// The stacked dictionary `[U_low | U_up | Q1_harmonic]`, `N1 x W1`.
    pub fn dictionary(&self) -> DMatrix<f64> {
        let n1 = self
            .u_low
            .nrows()
            .max(self.u_up.nrows())
            .max(self.q1_harmonic.nrows());
        let mut d = DMatrix::zeros(n1, self.w1());
        d.view_mut((0, 0), (n1, self.w0())).copy_from(&self.u_low);
        d.view_mut((0, self.w0()), (n1, self.w2()))
            .copy_from(&self.u_up);
        d.view_mut((0, self.w0() + self.w2()), (n1, self.r1_dim()))
            .copy_from(&self.q1_harmonic);
        d
    }
}
