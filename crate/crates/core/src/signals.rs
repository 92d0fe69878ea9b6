//! Multi-order bandlimited signals and the Helmholtz decomposition.
//!
//! A synthesized signal carries a node potential `x0`, a triangle potential
//! `x2`, and a harmonic residual `r1`, each bandlimited in its own spectral
//! basis, together with the composed edge flow
//! `x1 = B1^T x0 + B2 x2 + r1`.

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::complex::{HodgeLaplacians, SimplicialComplex};
use crate::rng::rng_from_seed;
use crate::spectral::{SpectralBases, SpectralError, RANK_CUTOFF_REL};

#[derive(Debug, Error)]
pub enum SignalError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("noise variance must be nonnegative, got {0}")]
    NegativeVariance(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A bandlimited multi-order signal and its spectral coefficients.
#[derive(Debug, Clone)]
pub struct MultiOrderSignal {
    pub x0: DVector<f64>,
    pub x2: DVector<f64>,
    pub r1: DVector<f64>,
    pub x_hat0: DVector<f64>,
    pub x_hat2: DVector<f64>,
    pub r_hat1: DVector<f64>,
    /// Composed edge flow `B1^T x0 + B2 x2 + r1`.
    pub x1: DVector<f64>,
}

/// Draws i.i.d. standard normal spectral coefficients over the first
/// `w0`/`w2` range basis vectors and the first `r1_dim` harmonic basis
/// vectors, then composes the edge flow.
///
/// Coefficients are drawn in a fixed order (node block, triangle block,
/// harmonic block) so a seed fully determines the signal.
pub fn synthesize_bandlimited(
    c: &SimplicialComplex,
    bases: &SpectralBases,
    w0: usize,
    w2: usize,
    r1_dim: usize,
    seed: u64,
) -> Result<MultiOrderSignal, SignalError> {
    let truncated = bases.truncate(w0, w2, r1_dim)?;
    let mut rng = rng_from_seed(seed);
    let mut draw =
        |n: usize| DVector::from_iterator(n, (0..n).map(|_| StandardNormal.sample(&mut rng)));
    let x_hat0 = draw(w0);
    let x_hat2 = draw(w2);
    let r_hat1 = draw(r1_dim);

    let x0 = truncated.q0() * &x_hat0;
    let x2 = truncated.q2() * &x_hat2;
    let r1 = truncated.q1_harmonic() * &r_hat1;
    let x1 = helmholtz_compose(c, &x0, &x2, &r1)?;
    Ok(MultiOrderSignal {
        x0,
        x2,
        r1,
        x_hat0,
        x_hat2,
        r_hat1,
        x1,
    })
}

/// Composes an edge flow from its Helmholtz components:
/// `x1 = B1^T x0 + B2 x2 + r1`.
pub fn helmholtz_compose(
    c: &SimplicialComplex,
    x0: &DVector<f64>,
    x2: &DVector<f64>,
    r1: &DVector<f64>,
) -> Result<DVector<f64>, SignalError> {
    if x0.len() != c.num_nodes() || x2.len() != c.num_triangles() || r1.len() != c.num_edges() {
        return Err(SignalError::DimensionMismatch(format!(
            "got |x0|={}, |x2|={}, |r1|={} for a complex with {} nodes, {} edges, {} triangles",
            x0.len(),
            x2.len(),
            r1.len(),
            c.num_nodes(),
            c.num_edges(),
            c.num_triangles()
        )));
    }
    Ok(c.b1().transpose() * x0 + c.b2() * x2 + r1)
}

/// The three orthogonal components of an edge flow.
#[derive(Debug, Clone)]
pub struct HelmholtzParts {
    /// Projection onto the gradient subspace `R(B1^T)`.
    pub gradient: DVector<f64>,
    /// Projection onto the curl subspace `R(B2)`.
    pub curl: DVector<f64>,
    /// Remainder in `N(L1)`.
    pub harmonic: DVector<f64>,
}

/// Splits an edge flow into gradient, curl, and harmonic parts using
/// pseudoinverse-based orthogonal projectors
/// (`P_grad = B1^T L0^+ B1`, `P_curl = B2 L2^+ B2^T`).
pub fn helmholtz_project(
    c: &SimplicialComplex,
    laplacians: &HodgeLaplacians,
    x1: &DVector<f64>,
) -> Result<HelmholtzParts, SignalError> {
    if x1.len() != c.num_edges() {
        return Err(SignalError::DimensionMismatch(format!(
            "edge flow has length {} but the complex has {} edges",
            x1.len(),
            c.num_edges()
        )));
    }
    let gradient = c.b1().transpose() * pinv_apply(laplacians.l0(), &(c.b1() * x1));
    let curl = c.b2() * pinv_apply(laplacians.l2(), &(c.b2().transpose() * x1));
    let harmonic = x1 - &gradient - &curl;
    Ok(HelmholtzParts {
        gradient,
        curl,
        harmonic,
    })
}

fn pinv_apply(m: &DMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    if m.nrows() == 0 {
        return DVector::zeros(0);
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.solve(x, RANK_CUTOFF_REL * smax)
        .expect("SVD computed both factors")
}

/// Adds i.i.d. Gaussian noise of the given variance. Variance zero returns
/// the input unchanged, bit for bit.
pub fn add_noise(x: &DVector<f64>, variance: f64, seed: u64) -> Result<DVector<f64>, SignalError> {
    if variance < 0.0 {
        return Err(SignalError::NegativeVariance(variance));
    }
    if variance == 0.0 {
        return Ok(x.clone());
    }
    let sigma = variance.sqrt();
    let mut rng = rng_from_seed(seed);
    Ok(DVector::from_iterator(
        x.len(),
        x.iter().map(|&v| {
            let n: f64 = StandardNormal.sample(&mut rng);
            v + sigma * n
        }),
    ))
}
