//! Result graph: match records, team indexing and the weighted adjacency matrix.
//!
//! Edges run from the team that dropped points to the team that took them.
//! A loss adds the win weight to `w[loser, winner]`; a draw adds the draw
//! weight in both directions. Column `j` therefore accumulates the points
//! team `j` earned, and row `i` the points team `i` handed out.

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::DenseMatrix;

pub const DEFAULT_WIN_WEIGHT: f64 = 3.0;
pub const DEFAULT_DRAW_WEIGHT: f64 = 1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("team name is empty")]
    EmptyTeamName,
    #[error("team `{0}` cannot play itself")]
    SelfMatch(String),
    #[error("{which} weight must be a finite non-negative number, got {value}")]
    InvalidWeight { which: &'static str, value: f64 },
    #[error("duplicate team name `{0}`")]
    DuplicateTeam(String),
    #[error("matrix is {rows}x{cols} but {names} team names were given")]
    DimensionMismatch {
        names: usize,
        rows: usize,
        cols: usize,
    },
    #[error("entry ({row}, {col}) is {value}; entries must be finite and non-negative")]
    InvalidEntry { row: usize, col: usize, value: f64 },
    #[error("diagonal entry for `{team}` is {value}; a team never plays itself")]
    NonZeroDiagonal { team: String, value: f64 },
}

/// Result of one fixture, seen from `team_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    AWins,
    BWins,
    Draw,
}

/// One fixture between two distinct, non-empty team names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchRecord {
    team_a: String,
    team_b: String,
    outcome: Outcome,
}

impl MatchRecord {
    /// Names are trimmed; the trimmed names must be non-empty and different.
    pub fn new(
        team_a: impl AsRef<str>,
        team_b: impl AsRef<str>,
        outcome: Outcome,
    ) -> Result<Self, GraphError> {
        let team_a = team_a.as_ref().trim();
        let team_b = team_b.as_ref().trim();
        if team_a.is_empty() || team_b.is_empty() {
            return Err(GraphError::EmptyTeamName);
        }
        if team_a == team_b {
            return Err(GraphError::SelfMatch(team_a.to_owned()));
        }
        Ok(Self {
            team_a: team_a.to_owned(),
            team_b: team_b.to_owned(),
            outcome,
        })
    }

    pub fn team_a(&self) -> &str {
        &self.team_a
    }

    pub fn team_b(&self) -> &str {
        &self.team_b
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    /// `(winner, loser)`, or `None` for a draw.
    pub fn winner_loser(&self) -> Option<(&str, &str)> {
        match self.outcome {
            Outcome::AWins => Some((&self.team_a, &self.team_b)),
            Outcome::BWins => Some((&self.team_b, &self.team_a)),
            Outcome::Draw => None,
        }
    }
}

/// Bijection between team names and `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TeamIndex {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl TeamIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index = Self::new();
        for name in names {
            let name = name.as_ref().trim();
            if name.is_empty() {
                return Err(GraphError::EmptyTeamName);
            }
            if index.lookup.contains_key(name) {
                return Err(GraphError::DuplicateTeam(name.to_owned()));
            }
            index.insert(name);
        }
        Ok(index)
    }

    /// Returns the index of `name`, adding it at the end if unseen.
    pub fn insert(&mut self, name: &str) -> usize {
        if let Some(&i) = self.lookup.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.lookup.insert(name.to_owned(), i);
        i
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name.trim()).copied()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Square non-negative weight matrix with zero diagonal, labelled by a [`TeamIndex`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    index: TeamIndex,
    weights: DenseMatrix,
}

impl AdjacencyMatrix {
    pub fn index(&self) -> &TeamIndex {
        &self.index
    }

    pub fn weights(&self) -> &DenseMatrix {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.weights.get(from, to)
    }

    /// Lookup by team names; `None` if either name is unknown.
    pub fn get_by_name(&self, from: &str, to: &str) -> Option<f64> {
        Some(self.get(self.index.index_of(from)?, self.index.index_of(to)?))
    }

    /// Points earned by each team (column sums).
    pub fn column_sums(&self) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Points handed out by each team (row sums).
    pub fn row_sums(&self) -> Vec<f64> {
        self.weights.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self {
            index: self.index.clone(),
            weights: self.weights.transpose(),
        }
    }

    /// Multiplies every entry by `factor`, which must be finite and positive.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(
            factor.is_finite() && factor > 0.0,
            "scale factor must be positive"
        );
        Self {
            index: self.index.clone(),
            weights: self.weights.scale(factor),
        }
    }

    /// Relabels rows and columns so that new index `k` holds old index `order[k]`.
    ///
    /// # Panics
    /// If `order` is not a permutation of `0..n`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(order.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for &o in order {
            assert!(o < n && !seen[o], "not a permutation");
            seen[o] = true;
        }
        let index = TeamIndex::from_names(order.iter().map(|&o| &self.index.names[o]))
            .expect("names were already unique");
        let mut weights = DenseMatrix::zeros(n);
        for (new_i, &old_i) in order.iter().enumerate() {
            for (new_j, &old_j) in order.iter().enumerate() {
                weights.set(new_i, new_j, self.get(old_i, old_j));
            }
        }
        Self { index, weights }
    }

    /// Same matrix with teams in lexicographic name order.
    pub fn sorted_by_name(&self) -> Self {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| self.index.names[a].cmp(&self.index.names[b]));
        self.permuted(&order)
    }
}

fn check_weight(which: &'static str, value: f64) -> Result<(), GraphError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(GraphError::InvalidWeight { which, value })
    }
}

/// Builds the result graph. Teams are indexed in order of first appearance and
/// repeated fixtures between the same pair accumulate.
pub fn build_adjacency(
    matches: &[MatchRecord],
    win_weight: f64,
    draw_weight: f64,
) -> Result<AdjacencyMatrix, GraphError> {
    check_weight("win", win_weight)?;
    check_weight("draw", draw_weight)?;

    let mut index = TeamIndex::new();
    let pairs: Vec<(usize, usize)> = matches
        .iter()
        .map(|m| (index.insert(&m.team_a), index.insert(&m.team_b)))
        .collect();

    let mut weights = DenseMatrix::zeros(index.len());
    for (m, &(a, b)) in matches.iter().zip(&pairs) {
        match m.outcome {
            Outcome::AWins => weights.add(b, a, win_weight),
            Outcome::BWins => weights.add(a, b, win_weight),
            Outcome::Draw => {
                weights.add(a, b, draw_weight);
                weights.add(b, a, draw_weight);
            }
        }
    }
    Ok(AdjacencyMatrix { index, weights })
}

/// Wraps an explicit matrix, validating shape, sign and the zero diagonal.
pub fn from_named_matrix<S, R>(names: &[S], values: &[R]) -> Result<AdjacencyMatrix, GraphError>
where
    S: AsRef<str>,
    R: AsRef<[f64]>,
{
    let index = TeamIndex::from_names(names)?;
    let n = index.len();
    if let Some(bad) = values.iter().find(|r| r.as_ref().len() != n) {
        return Err(GraphError::DimensionMismatch {
            names: n,
            rows: values.len(),
            cols: bad.as_ref().len(),
        });
    }
    if values.len() != n {
        return Err(GraphError::DimensionMismatch {
            names: n,
            rows: values.len(),
            cols: n,
        });
    }
    for (i, row) in values.iter().enumerate() {
        for (j, &value) in row.as_ref().iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(GraphError::InvalidEntry {
                    row: i,
                    col: j,
                    value,
                });
            }
            if i == j && value != 0.0 {
                return Err(GraphError::NonZeroDiagonal {
                    team: index.names[i].clone(),
                    value,
                });
            }
        }
    }
    let weights = DenseMatrix::from_rows(values).expect("shape checked above");
    Ok(AdjacencyMatrix { index, weights })
}

/// `m` with rows and columns swapped; the team index is unchanged.
pub fn transpose(m: &AdjacencyMatrix) -> AdjacencyMatrix {
    m.transpose()
}
