//! Sampling and recovery of multi-order bandlimited signals on simplicial
//! complexes.
//!
//! An edge flow on an oriented simplicial complex of order 2 admits the
//! Helmholtz decomposition `x1 = B1^T x0 + B2 x2 + r1`: a gradient of a node
//! potential, a curl of a triangle potential, and a harmonic residual in the
//! null space of the Hodge Laplacian `L1`. This crate synthesizes such
//! signals, observes a handful of edges across repeated `L1`-aggregations
//! (`y^(p) = L1^p x1`), and recovers the node, triangle, and harmonic
//! components from those few observations by solving a Khatri-Rao structured
//! least-squares system built from the Laplacian spectra.
//!
//! Modules follow the pipeline:
//!
//! * [`complex`] — oriented complexes, incidence matrices, Hodge Laplacians
//! * [`spectral`] — eigendecompositions, range/null splits, lifted edge bases
//! * [`signals`] — bandlimited synthesis, Helmholtz compose/project, noise
//! * [`sampling`] — aggregation operator, sampling-set selection, observation
//! * [`recovery`] — Vandermonde/Khatri-Rao system, least squares, feasibility
//! * [`datasets`] — builtin experiment complexes (small, two-hole Delaunay)
//! * [`experiment`] — reproducible noiseless runs and MSE sweeps
//! * [`oracle`] — brute-force reference implementations for the test suite

pub mod complex;
pub mod datasets;
pub mod experiment;
pub mod io;
pub mod oracle;
pub mod recovery;
pub mod rng;
pub mod sampling;
pub mod signals;
pub mod spectral;

pub use complex::{HodgeLaplacians, SimplicialComplex};
pub use recovery::{FeasibilityReport, RecoveryResult, RecoverySystem};
pub use sampling::{Observations, SamplingPlan};
pub use signals::MultiOrderSignal;
pub use spectral::{EigenSystem, SpectralBases};
