//! Reading match and matrix files, writing tables and matrices.
//!
//! File formats (comma separated, LF or CRLF, fields trimmed):
//!
//! * matches: header `home,away,outcome`, then one fixture per line with
//!   outcome `H` (home win), `A` (away win) or `D` (draw);
//! * matrix: a header of `n` team names, then `n` lines each holding the row
//!   team's name followed by its `n` entries, rows in header order;
//! * rank table: header `rank,team,score` (CSV), or the JSON object written by
//!   [`emit_table`].

use std::fmt::Write as _;

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};
use thiserror::Error;

use crate::graph::{from_named_matrix, AdjacencyMatrix, GraphError, MatchRecord, Outcome};
use crate::rank::{RankError, RankRow, RankTable, ScoreOrdering, TableKind};

pub const MATCH_HEADER: [&str; 3] = ["home", "away", "outcome"];
pub const TABLE_HEADER: [&str; 3] = ["rank", "team", "score"];
pub const DEFAULT_DECIMALS: usize = 3;

/// Every variant carries the 1-based line it refers to, and a 1-based
/// field number where one applies.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected header `{expected}`, found `{found}`")]
    BadHeader {
        line: u64,
        expected: String,
        found: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unknown outcome `{value}` (expected H, A or D)")]
    UnknownOutcome { line: u64, value: String },
    #[error("line {line}: {source}")]
    InvalidRecord {
        line: u64,
        #[source]
        source: GraphError,
    },
    #[error("line {line}, field {field}: `{value}` is not a finite number")]
    NotANumber {
        line: u64,
        field: usize,
        value: String,
    },
    #[error("line {line}, field {field}: entry {value} is negative")]
    NegativeEntry { line: u64, field: usize, value: f64 },
    #[error("line {line}, field {field}: diagonal entry for `{team}` is {value}, expected 0")]
    NonZeroDiagonal {
        line: u64,
        field: usize,
        team: String,
        value: f64,
    },
    #[error("line {line}: row is labelled `{found}` but header position {row} is `{expected}`")]
    RowNameMismatch {
        line: u64,
        row: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: expected {expected} matrix rows, found {found}")]
    RowCount {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Syntax { line: u64, message: String },
    #[error("line {line}: {source}")]
    InvalidTable {
        line: u64,
        #[source]
        source: RankError,
    },
}

impl ParseError {
    pub fn line(&self) -> u64 {
        match self {
            Self::BadHeader { line, .. }
            | Self::FieldCount { line, .. }
            | Self::UnknownOutcome { line, .. }
            | Self::InvalidRecord { line, .. }
            | Self::NotANumber { line, .. }
            | Self::NegativeEntry { line, .. }
            | Self::NonZeroDiagonal { line, .. }
            | Self::RowNameMismatch { line, .. }
            | Self::RowCount { line, .. }
            | Self::Syntax { line, .. }
            | Self::InvalidTable { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

/// Non-empty records with their 1-based line numbers.
fn records(text: &str) -> Result<Vec<(u64, StringRecord)>, ParseError> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| ParseError::Syntax {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, record));
    }
    Ok(out)
}

fn expect_header(rows: &[(u64, StringRecord)], expected: &[&str]) -> Result<(), ParseError> {
    let want = expected.join(",");
    match rows.first() {
        Some((_, rec)) if rec.iter().eq(expected.iter().copied()) => Ok(()),
        Some((line, rec)) => Err(ParseError::BadHeader {
            line: *line,
            expected: want,
            found: rec.iter().collect::<Vec<_>>().join(","),
        }),
        None => Err(ParseError::BadHeader {
            line: 1,
            expected: want,
            found: String::new(),
        }),
    }
}

fn field_count(line: u64, rec: &StringRecord, expected: usize) -> Result<(), ParseError> {
    if rec.len() != expected {
        return Err(ParseError::FieldCount {
            line,
            expected,
            found: rec.len(),
        });
    }
    Ok(())
}

/// Parses a matches file into records, in file order. `home` becomes team A.
pub fn parse_matches(text: &str) -> Result<Vec<MatchRecord>, ParseError> {
    let rows = records(text)?;
    expect_header(&rows, &MATCH_HEADER)?;
    rows[1..]
        .iter()
        .map(|(line, rec)| {
            let line = *line;
            field_count(line, rec, 3)?;
            let outcome = match &rec[2] {
                "H" => Outcome::AWins,
                "A" => Outcome::BWins,
                "D" => Outcome::Draw,
                other => {
                    return Err(ParseError::UnknownOutcome {
                        line,
                        value: other.to_owned(),
                    })
                }
            };
            MatchRecord::new(&rec[0], &rec[1], outcome)
                .map_err(|source| ParseError::InvalidRecord { line, source })
        })
        .collect()
}

fn parse_number(line: u64, field: usize, raw: &str) -> Result<f64, ParseError> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::NotANumber {
            line,
            field,
            value: raw.to_owned(),
        }),
    }
}

/// Parses a named square matrix. Empty input is the 0x0 matrix.
pub fn parse_matrix(text: &str) -> Result<AdjacencyMatrix, ParseError> {
    let rows = records(text)?;
    let Some((header_line, header)) = rows.first() else {
        return Ok(from_named_matrix::<&str, [f64; 0]>(&[], &[]).expect("empty matrix is valid"));
    };
    let names: Vec<&str> = header.iter().collect();
    let n = names.len();
    if let Some(pos) = names.iter().position(|s| s.is_empty()) {
        return Err(ParseError::Syntax {
            line: *header_line,
            message: format!("header field {} is empty", pos + 1),
        });
    }

    let body = &rows[1..];
    if body.len() != n {
        let line = body
            .get(n)
            .map(|(l, _)| *l)
            .or_else(|| body.last().map(|(l, _)| *l + 1))
            .unwrap_or(*header_line + 1);
        return Err(ParseError::RowCount {
            line,
            expected: n,
            found: body.len(),
        });
    }

    let mut values = Vec::with_capacity(n);
    for (i, (line, rec)) in body.iter().enumerate() {
        let line = *line;
        field_count(line, rec, n + 1)?;
        if &rec[0] != names[i] {
            return Err(ParseError::RowNameMismatch {
                line,
                row: i + 1,
                expected: names[i].to_owned(),
                found: rec[0].to_owned(),
            });
        }
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let field = j + 2;
            let value = parse_number(line, field, &rec[j + 1])?;
            if value < 0.0 {
                return Err(ParseError::NegativeEntry { line, field, value });
            }
            if i == j && value != 0.0 {
                return Err(ParseError::NonZeroDiagonal {
                    line,
                    field,
                    team: names[i].to_owned(),
                    value,
                });
            }
            row.push(value);
        }
        values.push(row);
    }
    from_named_matrix(&names, &values).map_err(|source| ParseError::InvalidRecord {
        line: *header_line,
        source,
    })
}

/// Reads a rank table written as CSV or JSON.
///
/// CSV carries no metadata, so those tables are tagged [`TableKind::Imported`]
/// and their ordering is inferred from the score column.
pub fn parse_table(text: &str) -> Result<RankTable, ParseError> {
    if text.trim_start().starts_with('{') {
        let table: RankTable = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line() as u64,
            message: e.to_string(),
        })?;
        return RankTable::from_rows(table.kind, table.ordering, table.rows)
            .map_err(|source| ParseError::InvalidTable { line: 1, source });
    }

    let rows = records(text)?;
    expect_header(&rows, &TABLE_HEADER)?;
    let mut parsed = Vec::with_capacity(rows.len().saturating_sub(1));
    for (line, rec) in &rows[1..] {
        let line = *line;
        field_count(line, rec, 3)?;
        let rank = rec[0]
            .parse::<usize>()
            .map_err(|_| ParseError::NotANumber {
                line,
                field: 1,
                value: rec[0].to_owned(),
            })?;
        if rec[1].is_empty() {
            return Err(ParseError::InvalidRecord {
                line,
                source: GraphError::EmptyTeamName,
            });
        }
        let score = parse_number(line, 3, &rec[2])?;
        parsed.push((
            line,
            RankRow {
                rank,
                team: rec[1].to_owned(),
                score,
            },
        ));
    }

    let ascending = parsed.windows(2).any(|w| w[0].1.score < w[1].1.score)
        && !parsed.windows(2).any(|w| w[0].1.score > w[1].1.score);
    let ordering = if ascending {
        ScoreOrdering::AscScore
    } else {
        ScoreOrdering::DescScore
    };
    let first_line = parsed.first().map_or(1, |(l, _)| *l);
    RankTable::from_rows(
        TableKind::Imported,
        ordering,
        parsed.into_iter().map(|(_, r)| r).collect(),
    )
    .map_err(|source| ParseError::InvalidTable {
        line: first_line,
        source,
    })
}

fn format_score(table: &RankTable, score: f64, decimals: usize) -> String {
    let whole_points =
        table.kind == TableKind::Points && table.rows.iter().all(|r| r.score.fract() == 0.0);
    if whole_points {
        format!("{score:.0}")
    } else {
        format!("{score:.decimals$}")
    }
}

fn table_title(table: &RankTable) -> String {
    let kind = match table.kind {
        TableKind::Authority => "authority weights",
        TableKind::Hub => "hub weights",
        TableKind::Points => "points",
        TableKind::Imported => "imported scores",
    };
    let order = match (table.kind, table.ordering) {
        (TableKind::Hub, ScoreOrdering::AscScore) => "ascending, best team first",
        (_, ScoreOrdering::AscScore) => "ascending",
        (_, ScoreOrdering::DescScore) => "descending",
    };
    format!("# {kind} ({order}); tied scores share the smaller rank")
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    write(&mut w).expect("writing to memory cannot fail");
    let bytes = w.into_inner().expect("flushing to memory cannot fail");
    String::from_utf8(bytes).expect("csv writer emits the UTF-8 it was given")
}

/// Renders a table. `decimals` applies to TEXT and CSV; JSON keeps full precision.
pub fn emit_table(table: &RankTable, format: OutputFormat, decimals: usize) -> String {
    match format {
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(TABLE_HEADER)?;
            for row in &table.rows {
                w.write_record([
                    row.rank.to_string(),
                    row.team.clone(),
                    format_score(table, row.score, decimals),
                ])?;
            }
            Ok(())
        }),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("rank tables serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let scores: Vec<String> = table
                .rows
                .iter()
                .map(|r| format_score(table, r.score, decimals))
                .collect();
            let team_w = table
                .teams()
                .map(|t| t.chars().count())
                .max()
                .unwrap_or(0)
                .max(4);
            let rank_w = table
                .rows
                .iter()
                .map(|r| r.rank.to_string().len())
                .max()
                .unwrap_or(0)
                .max(4);
            let score_w = scores.iter().map(String::len).max().unwrap_or(0).max(5);

            let mut out = table_title(table);
            out.push('\n');
            let _ = writeln!(
                out,
                "{:>rank_w$}  {:<team_w$}  {:>score_w$}",
                "rank", "team", "score"
            );
            for (row, score) in table.rows.iter().zip(&scores) {
                let _ = writeln!(
                    out,
                    "{:>rank_w$}  {:<team_w$}  {:>score_w$}",
                    row.rank, row.team, score
                );
            }
            out
        }
    }
}

/// Matrix CSV at full precision; `parse_matrix` reads it back exactly.
pub fn emit_matrix(m: &AdjacencyMatrix) -> String {
    let names = m.index().names();
    if names.is_empty() {
        return "\n".to_owned();
    }
    csv_string(|w| {
        w.write_record(names)?;
        for (name, row) in names.iter().zip(m.weights().rows()) {
            let mut rec = Vec::with_capacity(row.len() + 1);
            rec.push(name.clone());
            rec.extend(row.iter().map(f64::to_string));
            w.write_record(&rec)?;
        }
        Ok(())
    })
}
