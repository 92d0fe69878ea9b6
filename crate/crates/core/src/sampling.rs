//! Aggregation sampling of edge flows.
//!
//! The aggregation operator stacks the shifted signals `y^(p) = L1^p x1`
//! for `p = 0..P-1` into an `N1 x P` matrix; an observation keeps only the
//! rows indexed by the sampling set. Powers are applied iteratively — the
//! sampling path never touches the spectral machinery, so recovery tests can
//! compare two genuinely independent computation routes.

use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::rng_from_seed;
use crate::spectral::matrix_rank;

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("need at least one shift")]
    NoShifts,
    #[error("sampling set must be nonempty")]
    EmptySampleSet,
    #[error("sample index {index} out of range for {n_edges} edges")]
    IndexOutOfRange { index: usize, n_edges: usize },
    #[error("sample indices must be strictly increasing and unique")]
    NotStrictlyIncreasing,
    #[error("sample size {size} out of range for {n_edges} edges")]
    BadSampleSize { size: usize, n_edges: usize },
    #[error("no rank-sufficient sampling set found in {attempts} attempts")]
    RetriesExhausted { attempts: usize },
}

/// Number of shifts and the observed edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingPlan {
    num_shifts: usize,
    sample_set: Vec<usize>,
    seed: Option<u64>,
}

impl SamplingPlan {
    /// Validates `P >= 1`, a nonempty strictly increasing sample set.
    pub fn new(
        num_shifts: usize,
        sample_set: Vec<usize>,
        seed: Option<u64>,
    ) -> Result<Self, SamplingError> {
        if num_shifts == 0 {
            return Err(SamplingError::NoShifts);
        }
        if sample_set.is_empty() {
            return Err(SamplingError::EmptySampleSet);
        }
        if !sample_set.windows(2).all(|w| w[0] < w[1]) {
            return Err(SamplingError::NotStrictlyIncreasing);
        }
        Ok(Self {
            num_shifts,
            sample_set,
            seed,
        })
    }

    pub fn num_shifts(&self) -> usize {
        self.num_shifts
    }

    pub fn sample_set(&self) -> &[usize] {
        &self.sample_set
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// Subsampled aggregation matrix `Z1` (rows: sampling set, columns: shifts).
#[derive(Debug, Clone, PartialEq)]
pub struct Observations {
    z1: DMatrix<f64>,
}

impl Observations {
    /// Wraps an already-subsampled matrix (rows: sampling set, columns:
    /// shifts).
    pub fn from_matrix(z1: DMatrix<f64>) -> Self {
        Self { z1 }
    }

    pub fn z1_matrix(&self) -> &DMatrix<f64> {
        &self.z1
    }

    /// Column-major stacking of `Z1`: entry `p * |S| + i` is `Z1[i, p]`.
    pub fn z1_vec(&self) -> DVector<f64> {
        DVector::from_column_slice(self.z1.as_slice())
    }

    pub fn sample_size(&self) -> usize {
        self.z1.nrows()
    }

    pub fn num_shifts(&self) -> usize {
        self.z1.ncols()
    }
}

/// Stacks `[x1, L1 x1, ..., L1^(P-1) x1]` column by column.
pub fn aggregate(
    l1: &DMatrix<f64>,
    x1: &DVector<f64>,
    p_shifts: usize,
) -> Result<DMatrix<f64>, SamplingError> {
    if p_shifts == 0 {
        return Err(SamplingError::NoShifts);
    }
    if l1.nrows() != l1.ncols() || l1.ncols() != x1.len() {
        return Err(SamplingError::DimensionMismatch(format!(
            "operator is {}x{}, flow has length {}",
            l1.nrows(),
            l1.ncols(),
            x1.len()
        )));
    }
    let mut y = DMatrix::zeros(x1.len(), p_shifts);
    let mut current = x1.clone();
    y.set_column(0, &current);
    for p in 1..p_shifts {
        current = l1 * &current;
        y.set_column(p, &current);
    }
    Ok(y)
}

/// Draws a uniform random edge subset, optionally redrawing until the
/// selected rows of `rank_guard` have full rank `min(size, columns)`.
///
/// The guard exists because recovery needs the selection to hit linearly
/// independent rows of the spectral dictionary; a plain uniform draw can
/// miss that on structured complexes.
pub fn choose_sampling_set(
    n_edges: usize,
    size: usize,
    seed: u64,
    rank_guard: Option<&DMatrix<f64>>,
    max_retries: usize,
) -> Result<Vec<usize>, SamplingError> {
    if size == 0 || size > n_edges {
        return Err(SamplingError::BadSampleSize { size, n_edges });
    }
    let mut rng = rng_from_seed(seed);
    let attempts = max_retries.max(1);
    for _ in 0..attempts {
        let mut set = index::sample(&mut rng, n_edges, size).into_vec();
        set.sort_unstable();
        match rank_guard {
            None => return Ok(set),
            Some(guard) => {
                let rows = select_rows(guard, &set);
                if matrix_rank(&rows) == size.min(guard.ncols()) {
                    return Ok(set);
                }
            }
        }
    }
    Err(SamplingError::RetriesExhausted { attempts })
}

/// Keeps the rows of `y1` indexed by the plan's sampling set.
pub fn observe(y1: &DMatrix<f64>, plan: &SamplingPlan) -> Result<Observations, SamplingError> {
    if plan.num_shifts() != y1.ncols() {
        return Err(SamplingError::DimensionMismatch(format!(
            "plan has {} shifts but the aggregation matrix has {} columns",
            plan.num_shifts(),
            y1.ncols()
        )));
    }
    for &i in plan.sample_set() {
        if i >= y1.nrows() {
            return Err(SamplingError::IndexOutOfRange {
                index: i,
                n_edges: y1.nrows(),
            });
        }
    }
    Ok(Observations {
        z1: select_rows(y1, plan.sample_set()),
    })
}

fn select_rows(m: &DMatrix<f64>, rows: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), m.ncols(), |i, j| m[(rows[i], j)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::HodgeLaplacians;
    use crate::datasets::small_complex;
    use crate::oracle;
    use crate::rng::rng_from_seed;
    use crate::signals::synthesize_bandlimited;
    use crate::spectral::{SpectralBases, DEFAULT_ZERO_TOL};
    use rand::Rng;

    #[test]
    fn single_shift_is_the_flow_itself() {
        let c = small_complex();
        let l = HodgeLaplacians::new(&c);
        let x = DVector::from_fn(c.num_edges(), |i, _| (i + 1) as f64);
        let y = aggregate(l.l1(), &x, 1).unwrap();
        assert_eq!(y.ncols(), 1);
        assert_eq!(y.column(0).clone_owned(), x);
    }

    #[test]
    fn harmonic_flow_dies_after_one_shift() {
        let c = small_complex();
        let l = HodgeLaplacians::new(&c);
        let bases = SpectralBases::new(&c, &l, DEFAULT_ZERO_TOL).unwrap();
        let r1 = bases.q1_harmonic().column(0).clone_owned();
        let y = aggregate(l.l1(), &r1, 4).unwrap();
        for p in 1..4 {
            assert!(
                y.column(p).amax() <= 1e-8 * r1.norm(),
                "shift {p} did not vanish"
            );
        }
    }

    #[test]
    fn aggregation_matches_materialized_powers() {
        let mut rng = rng_from_seed(11);
        for seed in 0..100u64 {
            let n = rng.random_range(3..=8usize);
            let half = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let m = &half + half.transpose();
            let x = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            let y = aggregate(&m, &x, 4).unwrap();
            let want = oracle::matrix_power_apply(&m, &x, 3);
            let got = y.column(3).clone_owned();
            assert!(
                (got - &want).norm() <= 1e-10 * (1.0 + want.norm()),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn aggregation_splits_by_subspace() {
        // L1^p x1 = L_low^p (B1^T x0) + L_up^p (B2 x2) + L1^p r1 for p <= 5.
        for seed in 0..10u64 {
            let c = oracle::random_complex(seed);
            let l = HodgeLaplacians::new(&c);
            let bases = SpectralBases::new(&c, &l, DEFAULT_ZERO_TOL).unwrap();
            let s =
                synthesize_bandlimited(&c, &bases, bases.w0(), bases.w2(), bases.r1_dim(), seed)
                    .unwrap();
            let grad = c.b1().transpose() * &s.x0;
            let curl = c.b2() * &s.x2;
            let scale = (1.0 + bases.lambda1_max()).powi(5) * (1.0 + s.x1.norm());
            for p in 0..=5usize {
                let whole = oracle::matrix_power_apply(l.l1(), &s.x1, p);
                let split = oracle::matrix_power_apply(l.l_low(), &grad, p)
                    + oracle::matrix_power_apply(l.l_up(), &curl, p)
                    + oracle::matrix_power_apply(l.l1(), &s.r1, p);
                assert!((whole - split).norm() <= 1e-9 * scale, "seed {seed}, p {p}");
            }
        }
    }

    #[test]
    fn full_size_draw_returns_everything() {
        let set = choose_sampling_set(10, 10, 999, None, 5).unwrap();
        assert_eq!(set, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn draws_are_seed_deterministic() {
        let a = choose_sampling_set(10, 2, 42, None, 5).unwrap();
        let b = choose_sampling_set(10, 2, 42, None, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert!(a[0] < a[1]);
    }

    #[test]
    fn rank_guard_enforces_submatrix_rank() {
        let c = small_complex();
        let l = HodgeLaplacians::new(&c);
        let bases = SpectralBases::new(&c, &l, DEFAULT_ZERO_TOL).unwrap();
        let truncated = bases.truncate(4, 1, 2).unwrap();

        // Guarding against the full dictionary: the selected rows of it span
        // min(size, W1) dimensions.
        let d = truncated.dictionary();
        let set = choose_sampling_set(c.num_edges(), 2, 7, Some(&d), 200).unwrap();
        let rows = DMatrix::from_fn(2, d.ncols(), |i, j| d[(set[i], j)]);
        assert_eq!(matrix_rank(&rows), 2);

        // Guarding against the harmonic basis alone pins down independent
        // harmonic rows, the condition recovery actually needs from R1 edges.
        let set =
            choose_sampling_set(c.num_edges(), 2, 7, Some(truncated.q1_harmonic()), 200).unwrap();
        let harm_rows = DMatrix::from_fn(2, 2, |i, j| truncated.q1_harmonic()[(set[i], j)]);
        assert_eq!(matrix_rank(&harm_rows), 2);
    }

    #[test]
    fn rank_guard_reports_exhaustion() {
        let guard = DMatrix::<f64>::zeros(6, 3);
        let err = choose_sampling_set(6, 2, 1, Some(&guard), 10).unwrap_err();
        assert!(matches!(
            err,
            SamplingError::RetriesExhausted { attempts: 10 }
        ));
    }

    #[test]
    fn observe_selects_rows_and_stacks_columns() {
        let y = DMatrix::from_fn(4, 6, |i, j| (10 * i + j) as f64);
        let plan = SamplingPlan::new(6, vec![3], None).unwrap();
        let obs = observe(&y, &plan).unwrap();
        assert_eq!(obs.z1_matrix().nrows(), 1);
        for p in 0..6 {
            assert_eq!(obs.z1_matrix()[(0, p)], (30 + p) as f64);
        }

        let plan = SamplingPlan::new(6, vec![0, 1, 2, 3], None).unwrap();
        let obs = observe(&y, &plan).unwrap();
        assert_eq!(obs.z1_matrix(), &y);
        let v = obs.z1_vec();
        for p in 0..obs.num_shifts() {
            for i in 0..obs.sample_size() {
                assert_eq!(v[p * obs.sample_size() + i], obs.z1_matrix()[(i, p)]);
            }
        }
    }

    #[test]
    fn observe_rejects_bad_plans() {
        let y = DMatrix::<f64>::zeros(4, 3);
        let plan = SamplingPlan::new(3, vec![9], None).unwrap();
        assert!(matches!(
            observe(&y, &plan),
            Err(SamplingError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            SamplingPlan::new(0, vec![0], None),
            Err(SamplingError::NoShifts)
        ));
        assert!(matches!(
            SamplingPlan::new(3, vec![2, 1], None),
            Err(SamplingError::NotStrictlyIncreasing)
        ));
        assert!(matches!(
            SamplingPlan::new(3, vec![], None),
            Err(SamplingError::EmptySampleSet)
        ));
    }

    #[test]
    fn observe_after_aggregate_is_linear() {
        let c = small_complex();
        let l = HodgeLaplacians::new(&c);
        let mut rng = rng_from_seed(3);
        let plan = SamplingPlan::new(5, vec![1, 4, 7], None).unwrap();
        for _ in 0..20 {
            let a = DVector::from_fn(c.num_edges(), |_, _| rng.random_range(-1.0..1.0));
            let b = DVector::from_fn(c.num_edges(), |_, _| rng.random_range(-1.0..1.0));
            let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let combined = &a * alpha + &b * beta;

            let za = observe(&aggregate(l.l1(), &a, 5).unwrap(), &plan)
                .unwrap()
                .z1_vec();
            let zb = observe(&aggregate(l.l1(), &b, 5).unwrap(), &plan)
                .unwrap()
                .z1_vec();
            let zc = observe(&aggregate(l.l1(), &combined, 5).unwrap(), &plan)
                .unwrap()
                .z1_vec();
            assert!((za * alpha + zb * beta - zc).amax() <= 1e-9);
        }
    }
}
