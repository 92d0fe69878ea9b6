//! Least-squares recovery of multi-order signals from subsampled
//! aggregations.
//!
//! Stacking the shifted observations gives
//! `z1 = (V^T (kr) Phi [U_low | U_up | Q1_harmonic]) x_hat`, where `V` holds
//! geometric progressions of the lifted eigenvalues plus indicator rows for
//! the harmonic coefficients (which survive only at shift zero), and `(kr)`
//! is the column-wise Kronecker (Khatri-Rao) product. The system is solved
//! by an SVD pseudoinverse; full column rank makes the solution unique, and
//! the rank report says so either way.
//!
//! Perfect recovery needs `P >= W0 + W2 + 1` shifts, `|S| >= R1` observed
//! edges, pairwise-distinct lifted eigenvalues, and a selection whose rows of
//! the dictionary are independent. The feasibility checker evaluates exactly
//! those conditions.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::sampling::Observations;
use crate::spectral::{SpectralBases, RANK_CUTOFF_REL};

/// Relative eigenvalue-gap threshold for the distinctness condition.
pub const EIGENVALUE_GAP_REL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum RecoveryError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sample index {index} out of range for {n_edges} edges")]
    IndexOutOfRange { index: usize, n_edges: usize },
}

/// Singular-value diagnostics of an assembled system.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    /// Number of singular values above the relative cutoff.
    pub rank: usize,
    /// Number of columns, i.e. the rank needed for a unique solution.
    pub full_rank: usize,
    pub sigma_max: f64,
    pub sigma_min: f64,
    /// `sigma_max / sigma_min`; infinite when `sigma_min` underflows to zero.
    pub condition: f64,
}

impl RankReport {
    fn from_matrix(m: &DMatrix<f64>) -> Self {
        let cols = m.ncols();
        if m.nrows() == 0 || cols == 0 {
            return Self {
                rank: 0,
                full_rank: cols,
                sigma_max: 0.0,
                sigma_min: 0.0,
                condition: 0.0,
            };
        }
        let svd = m.clone().svd(false, false);
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let sigma_min = svd
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > RANK_CUTOFF_REL * sigma_max)
            .count();
        let condition = if sigma_min > 0.0 {
            sigma_max / sigma_min
        } else {
            f64::INFINITY
        };
        Self {
            rank,
            full_rank: cols,
            sigma_max,
            sigma_min,
            condition,
        }
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.full_rank
    }
}

/// The assembled Khatri-Rao recovery system.
#[derive(Debug, Clone)]
pub struct RecoverySystem {
    vandermonde: DMatrix<f64>,
    dictionary: DMatrix<f64>,
    sample_set: Vec<usize>,
    system: DMatrix<f64>,
    rank_report: RankReport,
}

impl RecoverySystem {
    /// `W1 x P` eigenvalue-power matrix.
    pub fn vandermonde(&self) -> &DMatrix<f64> {
        &self.vandermonde
    }

    /// `N1 x W1` dictionary `[U_low | U_up | Q1_harmonic]`.
    pub fn dictionary(&self) -> &DMatrix<f64> {
        &self.dictionary
    }

    pub fn sample_set(&self) -> &[usize] {
        &self.sample_set
    }

    /// `(P * |S|) x W1` least-squares matrix.
    pub fn system(&self) -> &DMatrix<f64> {
        &self.system
    }

    pub fn rank_report(&self) -> &RankReport {
        &self.rank_report
    }

    pub fn w1(&self) -> usize {
        self.system.ncols()
    }
}

/// Recovered spectral coefficients and reconstructed domain signals.
#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub x_hat0: DVector<f64>,
    pub x_hat2: DVector<f64>,
    pub r_hat1: DVector<f64>,
    pub x0_ls: DVector<f64>,
    pub x2_ls: DVector<f64>,
    pub r1_ls: DVector<f64>,
    pub residual_norm: f64,
    pub rank_report: RankReport,
}

/// JSON view of a [`RecoveryResult`], with relative errors against ground
/// truth when available.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryResultJson {
    pub x_hat0: Vec<f64>,
    pub x_hat2: Vec<f64>,
    pub r_hat1: Vec<f64>,
    pub residual_norm: f64,
    pub rank: RankReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_errors: Option<[f64; 3]>,
}

impl RecoveryResult {
    pub fn to_json(&self, truth: Option<&crate::signals::MultiOrderSignal>) -> String {
        let rel = |got: &DVector<f64>, want: &DVector<f64>| {
            let d = want.norm();
            if d == 0.0 {
                got.norm()
            } else {
                (got - want).norm() / d
            }
        };
        let view = RecoveryResultJson {
            x_hat0: self.x_hat0.iter().copied().collect(),
            x_hat2: self.x_hat2.iter().copied().collect(),
            r_hat1: self.r_hat1.iter().copied().collect(),
            residual_norm: self.residual_norm,
            rank: self.rank_report.clone(),
            relative_errors: truth.map(|t| {
                [
                    rel(&self.x0_ls, &t.x0),
                    rel(&self.x2_ls, &t.x2),
                    rel(&self.r1_ls, &t.r1),
                ]
            }),
        };
        serde_json::to_string_pretty(&view).expect("recovery result serialization cannot fail")
    }
}

/// Theorem-style feasibility conditions evaluated against supplied
/// parameters.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    /// Required shifts: `W0 + W2 + 1`.
    pub p_required: usize,
    pub p_supplied: usize,
    /// Required sampling-set size: `R1`.
    pub s_required: usize,
    pub s_supplied: usize,
    /// All lifted eigenvalues pairwise distinct (relative gap above 1e-8).
    pub eigenvalues_distinct: bool,
    /// Smallest pairwise gap in the concatenated eigenvalue list; infinite
    /// when fewer than two eigenvalues are present.
    pub min_eigenvalue_gap: f64,
    /// Selected dictionary rows span at least `R1` dimensions.
    pub phi_rows_full_rank: bool,
    pub overall: bool,
}

/// Builds the `W1 x P` Vandermonde matrix: one geometric-progression row per
/// lifted eigenvalue, then `r1_dim` indicator rows `(1, 0, ..., 0)`.
pub fn build_vandermonde(
    lambda_low: &[f64],
    lambda_up: &[f64],
    r1_dim: usize,
    p_shifts: usize,
) -> DMatrix<f64> {
    let w1 = lambda_low.len() + lambda_up.len() + r1_dim;
    let mut v = DMatrix::zeros(w1, p_shifts);
    for (row, &lam) in lambda_low.iter().chain(lambda_up.iter()).enumerate() {
        let mut power = 1.0;
        for p in 0..p_shifts {
            v[(row, p)] = power;
            power *= lam;
        }
    }
    for row in (w1 - r1_dim)..w1 {
        v[(row, 0)] = 1.0;
    }
    v
}

/// Assembles the Khatri-Rao system `V^T (kr) Phi D` for a sampling set.
///
/// Entry `(p * |S| + i, j)` is `V[j, p] * D[sample_set[i], j]`, matching the
/// column-major stacking of the observation matrix.
pub fn assemble_system(
    vandermonde: DMatrix<f64>,
    dictionary: &DMatrix<f64>,
    sample_set: &[usize],
) -> Result<RecoverySystem, RecoveryError> {
    let w1 = vandermonde.nrows();
    let p_shifts = vandermonde.ncols();
    if dictionary.ncols() != w1 {
        return Err(RecoveryError::DimensionMismatch(format!(
            "Vandermonde has {} rows but the dictionary has {} columns",
            w1,
            dictionary.ncols()
        )));
    }
    for &i in sample_set {
        if i >= dictionary.nrows() {
            return Err(RecoveryError::IndexOutOfRange {
                index: i,
                n_edges: dictionary.nrows(),
            });
        }
    }
    let s = sample_set.len();
    let mut system = DMatrix::zeros(p_shifts * s, w1);
    for j in 0..w1 {
        for p in 0..p_shifts {
            for (i, &row) in sample_set.iter().enumerate() {
                system[(p * s + i, j)] = vandermonde[(j, p)] * dictionary[(row, j)];
            }
        }
    }
    let rank_report = RankReport::from_matrix(&system);
    Ok(RecoverySystem {
        vandermonde,
        dictionary: dictionary.clone(),
        sample_set: sample_set.to_vec(),
        system,
        rank_report,
    })
}

/// Minimum-norm least-squares recovery through the SVD pseudoinverse.
///
/// Rank deficiency is not an error: the minimum-norm solution is returned and
/// the rank report carries the diagnosis. The bases must be the truncated
/// bases the system was assembled from.
pub fn recover(sys: &RecoverySystem, obs: &Observations, bases: &SpectralBases) -> RecoveryResult {
    let z = obs.z1_vec();
    assert_eq!(
        z.len(),
        sys.system().nrows(),
        "observations do not match the assembled system"
    );
    assert_eq!(
        bases.w1(),
        sys.w1(),
        "bases do not match the assembled system"
    );

    let svd = sys.system().clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let x_hat = svd
        .solve(&z, RANK_CUTOFF_REL * sigma_max)
        .expect("SVD computed both factors");
    let residual_norm = (sys.system() * &x_hat - &z).norm();

    let (w0, w2, r1) = (bases.w0(), bases.w2(), bases.r1_dim());
    let x_hat0 = x_hat.rows(0, w0).clone_owned();
    let x_hat2 = x_hat.rows(w0, w2).clone_owned();
    let r_hat1 = x_hat.rows(w0 + w2, r1).clone_owned();

    RecoveryResult {
        x0_ls: bases.q0() * &x_hat0,
        x2_ls: bases.q2() * &x_hat2,
        r1_ls: bases.q1_harmonic() * &r_hat1,
        x_hat0,
        x_hat2,
        r_hat1,
        residual_norm,
        rank_report: sys.rank_report().clone(),
    }
}

/// Evaluates the perfect-recovery conditions for the supplied parameters.
///
/// The Kruskal-rank inequality behind the recovery guarantee is not checked
/// directly (it is combinatorial); its checkable sufficient pieces are:
/// enough shifts, a large enough sampling set, pairwise-distinct lifted
/// eigenvalues, and full row rank of the sampled dictionary.
#[allow(clippy::too_many_arguments)]
pub fn check_feasibility(
    w0: usize,
    w2: usize,
    r1_dim: usize,
    lambda_low: &[f64],
    lambda_up: &[f64],
    p_shifts: usize,
    sample_set: &[usize],
    dictionary: &DMatrix<f64>,
) -> FeasibilityReport {
    let p_required = w0 + w2 + 1;
    let s_required = r1_dim;

    let all: Vec<f64> = lambda_low.iter().chain(lambda_up.iter()).copied().collect();
    let lambda_max = all.iter().copied().fold(0.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            min_gap = min_gap.min((all[i] - all[j]).abs());
        }
    }
    let eigenvalues_distinct = min_gap > EIGENVALUE_GAP_REL * lambda_max;

    let rows = DMatrix::from_fn(sample_set.len(), dictionary.ncols(), |i, j| {
        dictionary[(sample_set[i], j)]
    });
    let phi_rows_full_rank = crate::spectral::matrix_rank(&rows) >= r1_dim;

    let overall = p_shifts >= p_required
        && sample_set.len() >= s_required
        && eigenvalues_distinct
        && phi_rows_full_rank;

    FeasibilityReport {
        p_required,
        p_supplied: p_shifts,
        s_required,
        s_supplied: sample_set.len(),
        eigenvalues_distinct,
        min_eigenvalue_gap: min_gap,
        phi_rows_full_rank,
        overall,
    }
}
