//! Hub and authority weights.
//!
//! Authority and hub vectors are refined alternately:
//!
//! ```text
//! a <- A^T h,  a <- a / |a|
//! h <- A a,    h <- h / |h|
//! ```
//!
//! starting from the uniform vector `1/sqrt(n)`. Each full sweep is one step
//! of power iteration on `A^T A` (authorities) and `A A^T` (hubs), so the
//! fixed point is the pair of principal eigenvectors of those Gram matrices.
//! Both vectors stay non-negative because `A` is.
//!
//! For league graphs an edge points from the team that dropped points to the
//! team that took them, so a high authority weight means "beat good losers"
//! and a low hub weight means "rarely lost, and only to weak sides".

use thiserror::Error;

use crate::graph::AdjacencyMatrix;
use crate::linalg::{distance2, dot, norm2, DenseMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HitsError {
    #[error("degenerate graph: the adjacency matrix has no edges, so no normalized weights exist")]
    DegenerateGraph,
    #[error("cannot normalize an all-zero vector")]
    ZeroVector,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("power iteration needs a symmetric non-negative matrix: {0}")]
    InvalidMatrix(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    tolerance: f64,
    max_iterations: usize,
}

impl SolverConfig {
    /// `tolerance` bounds the L2 change of each normalized vector between sweeps.
    pub fn new(tolerance: f64, max_iterations: usize) -> Result<Self, HitsError> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(HitsError::InvalidConfig(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if max_iterations == 0 {
            return Err(HitsError::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(Self {
            tolerance,
            max_iterations,
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Authority,
    Hub,
}

/// Non-negative per-team weights with unit L2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<f64>,
    kind: WeightKind,
}

impl WeightVector {
    /// Normalizes `values` before wrapping them.
    pub fn new(values: Vec<f64>, kind: WeightKind) -> Result<Self, HitsError> {
        Ok(Self {
            values: normalize_l2(&values)?,
            kind,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub authority: WeightVector,
    pub hub: WeightVector,
    /// Rayleigh quotient of `A^T A` at the authority vector.
    pub authority_eigenvalue: f64,
    /// Rayleigh quotient of `A A^T` at the hub vector.
    pub hub_eigenvalue: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Set when the iteration ran out of sweeps while the eigenvalue estimate
    /// had already settled, which points at a repeated top eigenvalue.
    pub degenerate_suspected: bool,
}

/// Scales a non-negative vector to unit Euclidean length.
pub fn normalize_l2(v: &[f64]) -> Result<Vec<f64>, HitsError> {
    let norm = norm2(v);
    if norm == 0.0 || !norm.is_finite() {
        return Err(HitsError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / norm).collect())
}

fn normalize_in_place(v: &mut [f64]) -> f64 {
    let norm = norm2(v);
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Stopping rule shared by both iterations.
///
/// The step must be below `tol`, and so must the geometric-series estimate
/// `step * rho / (1 - rho)` of the distance still to travel, where `rho` is
/// the observed contraction `step / prev_step`. Steps at rounding level are
/// accepted outright since `rho` is meaningless there.
fn within_tolerance(step: f64, prev_step: f64, tol: f64, n: usize) -> bool {
    if step >= tol {
        return false;
    }
    if step <= 4.0 * f64::EPSILON * (n as f64).sqrt() {
        return true;
    }
    let rho = step / prev_step;
    rho < 1.0 && step * rho / (1.0 - rho) < tol
}

/// `A^T A`.
pub fn authority_gram(m: &AdjacencyMatrix) -> DenseMatrix {
    m.weights().gram_columns()
}

/// `A A^T`.
pub fn hub_gram(m: &AdjacencyMatrix) -> DenseMatrix {
    m.weights().gram_rows()
}

/// Runs the alternating hub/authority iteration on `m`.
///
/// When `max_iterations` is hit first the last iterate is returned with
/// `converged == false`.
pub fn hits(m: &AdjacencyMatrix, cfg: &SolverConfig) -> Result<HitsResult, HitsError> {
    let a_mat = m.weights();
    if a_mat.is_zero() {
        return Err(HitsError::DegenerateGraph);
    }
    let n = a_mat.dim();
    let tol = cfg.tolerance;

    let start = 1.0 / (n as f64).sqrt();
    let mut auth = vec![start; n];
    let mut hub = vec![start; n];
    let mut next_auth = vec![0.0; n];
    let mut next_hub = vec![0.0; n];

    let mut iterations = 0;
    let mut converged = false;
    let mut rayleigh = f64::NAN;
    let mut rayleigh_settled = false;
    let mut prev_step = f64::INFINITY;

    while iterations < cfg.max_iterations {
        iterations += 1;

        a_mat.tr_mul_vec_into(&hub, &mut next_auth);
        if normalize_in_place(&mut next_auth) == 0.0 {
            return Err(HitsError::DegenerateGraph);
        }
        a_mat.mul_vec_into(&next_auth, &mut next_hub);
        let hub_norm = normalize_in_place(&mut next_hub);
        if hub_norm == 0.0 {
            return Err(HitsError::DegenerateGraph);
        }

        // |A a|^2 is the Rayleigh quotient of A^T A at the new authority vector.
        let next_rayleigh = hub_norm * hub_norm;
        rayleigh_settled = (next_rayleigh - rayleigh).abs() <= tol * next_rayleigh;
        rayleigh = next_rayleigh;

        let auth_change = distance2(&auth, &next_auth);
        let hub_change = distance2(&hub, &next_hub);
        std::mem::swap(&mut auth, &mut next_auth);
        std::mem::swap(&mut hub, &mut next_hub);

        let step = auth_change.max(hub_change);
        if within_tolerance(step, prev_step, tol, n) {
            converged = true;
            break;
        }
        prev_step = step;
    }

    let authority_eigenvalue = {
        let ah = a_mat.mul_vec(&auth);
        dot(&ah, &ah)
    };
    let hub_eigenvalue = {
        let mut ath = vec![0.0; n];
        a_mat.tr_mul_vec_into(&hub, &mut ath);
        dot(&ath, &ath)
    };

    Ok(HitsResult {
        authority: WeightVector {
            values: auth,
            kind: WeightKind::Authority,
        },
        hub: WeightVector {
            values: hub,
            kind: WeightKind::Hub,
        },
        authority_eigenvalue,
        hub_eigenvalue,
        iterations,
        converged,
        degenerate_suspected: !converged && rayleigh_settled,
    })
}

/// Principal eigenpair of a symmetric non-negative matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Plain power iteration from the uniform vector.
///
/// Intended for positive semidefinite inputs such as the Gram matrices; for
/// indefinite symmetric matrices whose spectrum has `-rho` as well as `rho`
/// the iterate can oscillate and `converged` stays false.
pub fn power_iteration(g: &DenseMatrix, cfg: &SolverConfig) -> Result<Eigenpair, HitsError> {
    let n = g.dim();
    if let Some((i, j)) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !(g.get(i, j) >= 0.0 && g.get(i, j).is_finite()))
    {
        return Err(HitsError::InvalidMatrix(format!(
            "entry ({i}, {j}) is {}",
            g.get(i, j)
        )));
    }
    if !g.is_symmetric() {
        return Err(HitsError::InvalidMatrix("matrix is not symmetric".into()));
    }
    if g.is_zero() {
        return Err(HitsError::ZeroVector);
    }

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let mut prev_step = f64::INFINITY;
    while iterations < cfg.max_iterations {
        iterations += 1;
        g.mul_vec_into(&v, &mut next);
        if normalize_in_place(&mut next) == 0.0 {
            return Err(HitsError::ZeroVector);
        }
        let change = distance2(&v, &next);
        std::mem::swap(&mut v, &mut next);
        if within_tolerance(change, prev_step, cfg.tolerance, n) {
            converged = true;
            break;
        }
        prev_step = change;
    }
    let eigenvalue = dot(&v, &g.mul_vec(&v));
    Ok(Eigenpair {
        eigenvalue,
        eigenvector: v,
        converged,
        iterations,
    })
}
