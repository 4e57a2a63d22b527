//! Ranking tables and rank comparison.
//!
//! Every table uses competition ranking (tied scores share the smaller rank,
//! the next rank skips: 1, 2, 2, 4) and breaks ties in display order by team
//! name so output is deterministic.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{MatchRecord, TeamIndex};
use crate::hits::WeightVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankError {
    #[error("{weights} weights given for {teams} teams")]
    LengthMismatch { weights: usize, teams: usize },
    #[error("tables cover different teams (only in first: {only_in_a:?}; only in second: {only_in_b:?})")]
    TeamSetMismatch {
        only_in_a: Vec<String>,
        only_in_b: Vec<String>,
    },
    #[error("team `{0}` appears more than once")]
    DuplicateTeam(String),
    #[error("rank {rank} for `{team}` is invalid")]
    InvalidRank { team: String, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Authority,
    Hub,
    Points,
    /// Loaded from a file that does not record what its scores mean.
    Imported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreOrdering {
    DescScore,
    AscScore,
}

/// How to order a hub table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HubOrder {
    /// Ascending hub weight: the team that reinforced nobody comes first.
    #[default]
    BestTeamFirst,
    RawDesc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub rank: usize,
    pub team: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub kind: TableKind,
    pub ordering: ScoreOrdering,
    pub rows: Vec<RankRow>,
}

impl RankTable {
    /// Sorts `(team, score)` pairs and assigns competition ranks.
    pub fn from_scores<S: Into<String>>(
        kind: TableKind,
        ordering: ScoreOrdering,
        scores: impl IntoIterator<Item = (S, f64)>,
    ) -> Self {
        let mut entries: Vec<(String, f64)> =
            scores.into_iter().map(|(t, s)| (t.into(), s)).collect();
        entries.sort_by(|(ta, sa), (tb, sb)| {
            let by_score = match ordering {
                ScoreOrdering::DescScore => sb.total_cmp(sa),
                ScoreOrdering::AscScore => sa.total_cmp(sb),
            };
            by_score.then_with(|| ta.cmp(tb))
        });

        let mut rows: Vec<RankRow> = Vec::with_capacity(entries.len());
        for (pos, (team, score)) in entries.into_iter().enumerate() {
            let rank = match rows.last() {
                Some(prev) if prev.score == score => prev.rank,
                _ => pos + 1,
            };
            rows.push(RankRow { rank, team, score });
        }
        Self {
            kind,
            ordering,
            rows,
        }
    }

    /// Wraps rows read from elsewhere, keeping their ranks as given.
    pub fn from_rows(
        kind: TableKind,
        ordering: ScoreOrdering,
        rows: Vec<RankRow>,
    ) -> Result<Self, RankError> {
        let mut seen = HashSet::new();
        for row in &rows {
            if row.rank == 0 {
                return Err(RankError::InvalidRank {
                    team: row.team.clone(),
                    rank: row.rank,
                });
            }
            if !seen.insert(row.team.as_str()) {
                return Err(RankError::DuplicateTeam(row.team.clone()));
            }
        }
        Ok(Self {
            kind,
            ordering,
            rows,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn teams(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().map(|r| r.team.as_str())
    }

    pub fn rank_of(&self, team: &str) -> Option<usize> {
        self.rows.iter().find(|r| r.team == team).map(|r| r.rank)
    }

    pub fn score_of(&self, team: &str) -> Option<f64> {
        self.rows.iter().find(|r| r.team == team).map(|r| r.score)
    }
}

fn check_len(w: &WeightVector, idx: &TeamIndex) -> Result<(), RankError> {
    if w.len() != idx.len() {
        return Err(RankError::LengthMismatch {
            weights: w.len(),
            teams: idx.len(),
        });
    }
    Ok(())
}

fn labelled<'a>(w: &'a WeightVector, idx: &'a TeamIndex) -> impl Iterator<Item = (&'a str, f64)> {
    idx.names()
        .iter()
        .map(String::as_str)
        .zip(w.values().iter().copied())
}

/// Highest authority weight first.
pub fn rank_authority(w: &WeightVector, idx: &TeamIndex) -> Result<RankTable, RankError> {
    check_len(w, idx)?;
    Ok(RankTable::from_scores(
        TableKind::Authority,
        ScoreOrdering::DescScore,
        labelled(w, idx),
    ))
}

pub fn rank_hub(
    w: &WeightVector,
    idx: &TeamIndex,
    order: HubOrder,
) -> Result<RankTable, RankError> {
    check_len(w, idx)?;
    let ordering = match order {
        HubOrder::BestTeamFirst => ScoreOrdering::AscScore,
        HubOrder::RawDesc => ScoreOrdering::DescScore,
    };
    Ok(RankTable::from_scores(
        TableKind::Hub,
        ordering,
        labelled(w, idx),
    ))
}

/// Conventional league table. Losses score nothing.
pub fn points_table(matches: &[MatchRecord], win_points: f64, draw_points: f64) -> RankTable {
    let mut index = TeamIndex::new();
    let mut points: Vec<f64> = Vec::new();
    let mut credit = |team: &str, pts: f64, index: &mut TeamIndex| {
        let i = index.insert(team);
        if i == points.len() {
            points.push(0.0);
        }
        points[i] += pts;
    };
    for m in matches {
        match m.winner_loser() {
            Some((winner, loser)) => {
                credit(winner, win_points, &mut index);
                credit(loser, 0.0, &mut index);
            }
            None => {
                credit(m.team_a(), draw_points, &mut index);
                credit(m.team_b(), draw_points, &mut index);
            }
        }
    }
    RankTable::from_scores(
        TableKind::Points,
        ScoreOrdering::DescScore,
        index.names().iter().cloned().zip(points),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Displacement {
    pub team: String,
    pub rank_a: usize,
    pub rank_b: usize,
    /// `rank_b - rank_a`: positive when the team sits lower in the second table.
    pub displacement: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// In the row order of the first table.
    pub displacements: Vec<Displacement>,
    /// `None` when undefined (fewer than two teams, or one table is all ties).
    pub kendall_tau_b: Option<f64>,
}

impl ComparisonReport {
    pub fn displacement_of(&self, team: &str) -> Option<i64> {
        self.displacements
            .iter()
            .find(|d| d.team == team)
            .map(|d| d.displacement)
    }
}

pub fn compare_rankings(a: &RankTable, b: &RankTable) -> Result<ComparisonReport, RankError> {
    let b_ranks: HashMap<&str, usize> = b.rows.iter().map(|r| (r.team.as_str(), r.rank)).collect();
    let a_teams: HashSet<&str> = a.teams().collect();

    let mut only_in_a: Vec<String> = a
        .teams()
        .filter(|t| !b_ranks.contains_key(t))
        .map(str::to_owned)
        .collect();
    let mut only_in_b: Vec<String> = b
        .teams()
        .filter(|t| !a_teams.contains(t))
        .map(str::to_owned)
        .collect();
    if !only_in_a.is_empty() || !only_in_b.is_empty() {
        only_in_a.sort();
        only_in_b.sort();
        return Err(RankError::TeamSetMismatch {
            only_in_a,
            only_in_b,
        });
    }

    let displacements: Vec<Displacement> = a
        .rows
        .iter()
        .map(|r| {
            let rank_b = b_ranks[r.team.as_str()];
            Displacement {
                team: r.team.clone(),
                rank_a: r.rank,
                rank_b,
                displacement: rank_b as i64 - r.rank as i64,
            }
        })
        .collect();

    let xs: Vec<usize> = displacements.iter().map(|d| d.rank_a).collect();
    let ys: Vec<usize> = displacements.iter().map(|d| d.rank_b).collect();
    Ok(ComparisonReport {
        displacements,
        kendall_tau_b: kendall_tau_b(&xs, &ys),
    })
}

/// Tie-adjusted Kendall rank correlation by pair enumeration.
///
/// `tau_b = (C - D) / sqrt((C + D + Tx) (C + D + Ty))`, where `Tx` counts pairs
/// tied only in `x` and `Ty` pairs tied only in `y`. Returns `None` if the
/// denominator vanishes.
pub fn kendall_tau_b<T: PartialOrd>(x: &[T], y: &[T]) -> Option<f64> {
    assert_eq!(x.len(), y.len(), "kendall_tau_b: length mismatch");
    let n = x.len();
    let (mut concordant, mut discordant, mut tied_x, mut tied_y) = (0u64, 0u64, 0u64, 0u64);
    for i in 0..n {
        for j in (i + 1)..n {
            let ox = x[i].partial_cmp(&x[j]).unwrap_or(Ordering::Equal);
            let oy = y[i].partial_cmp(&y[j]).unwrap_or(Ordering::Equal);
            match (ox, oy) {
                (Ordering::Equal, Ordering::Equal) => {}
                (Ordering::Equal, _) => tied_x += 1,
                (_, Ordering::Equal) => tied_y += 1,
                _ if ox == oy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let untied = (concordant + discordant) as f64;
    let denom = ((untied + tied_x as f64) * (untied + tied_y as f64)).sqrt();
    if denom == 0.0 {
        return None;
    }
    Some((concordant as f64 - discordant as f64) / denom)
}
