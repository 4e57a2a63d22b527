//! Shared fixtures and the independent eigensolver oracle.
#![allow(dead_code)]

use std::path::PathBuf;

use league_hits::{from_named_matrix, AdjacencyMatrix, DenseMatrix, MatchRecord, Outcome};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

fn numbered(rows: &[[f64; 4]]) -> AdjacencyMatrix {
    from_named_matrix(&["1", "2", "3", "4"], rows).unwrap()
}

pub fn four_node() -> AdjacencyMatrix {
    numbered(&[
        [0.0, 0.0, 1.0, 0.0],
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 0.0],
    ])
}

pub fn four_node_extra_link() -> AdjacencyMatrix {
    numbered(&[
        [0.0, 0.0, 1.0, 1.0],
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 0.0],
    ])
}

pub const MINI_LEAGUE_MATRIX: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, 3.0],
    [3.0, 0.0, 0.0, 3.0],
    [3.0, 3.0, 0.0, 0.0],
    [0.0, 0.0, 3.0, 0.0],
];

/// The six mini-league fixtures, listed so teams first appear as A, B, C, D.
pub fn mini_league_matches() -> Vec<MatchRecord> {
    [
        ("A", "B"),
        ("A", "C"),
        ("B", "C"),
        ("D", "A"),
        ("D", "B"),
        ("C", "D"),
    ]
    .iter()
    .map(|(w, l)| MatchRecord::new(w, l, Outcome::AWins).unwrap())
    .collect()
}

/// Principal eigenpair of a symmetric matrix from nalgebra's dense solver,
/// with the sign fixed so the vector sums non-negative, and the gap to the
/// second eigenvalue.
pub struct OraclePair {
    pub eigenvalue: f64,
    pub second: f64,
    pub vector: Vec<f64>,
}

pub fn oracle_principal(g: &DenseMatrix) -> OraclePair {
    let n = g.dim();
    let m = DMatrix::from_fn(n, n, |i, j| g.get(i, j));
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let top = order[0];
    let mut vector: Vec<f64> = eig.eigenvectors.column(top).iter().copied().collect();
    if vector.iter().sum::<f64>() < 0.0 {
        vector.iter_mut().for_each(|x| *x = -*x);
    }
    OraclePair {
        eigenvalue: eig.eigenvalues[top],
        second: order.get(1).map_or(0.0, |&i| eig.eigenvalues[i]),
        vector,
    }
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("T{i}")).collect()
}

/// Non-negative zero-diagonal matrix with roughly `density` of the
/// off-diagonal entries drawn uniformly from (0, 3].
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, density: f64) -> AdjacencyMatrix {
    loop {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i != j && rng.gen_bool(density) {
                            3.0 - rng.gen_range(0.0..3.0)
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        let m = from_named_matrix(&names(n), &rows).unwrap();
        if !m.weights().is_zero() {
            return m;
        }
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
