//! Per-author alignment with a reference author (usually the teacher).
//!
//! The weight of author `a` is the row co-occurrence entry between `a` and
//! the reference. Tables rank by weight descending, then author id in
//! numeric-aware order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::natural_cmp;
use crate::error::{Error, Result};
use crate::matrix::{CooccurKind, CooccurMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentRow {
    pub author: String,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentTable {
    pub reference: String,
    pub phase: String,
    pub rows: Vec<AlignmentRow>,
}

impl AlignmentTable {
    /// 1-based rank of `author`, if present.
    pub fn rank_of(&self, author: &str) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.author == author)
            .map(|i| i + 1)
    }

    pub fn weight_of(&self, author: &str) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.author == author)
            .map(|r| r.weight)
    }

    pub fn authors(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().map(|r| r.author.as_str())
    }
}

fn ranked(reference: &str, phase: &str, mut rows: Vec<AlignmentRow>) -> AlignmentTable {
    rows.retain(|r| r.author != reference);
    rows.sort_by(|x, y| {
        y.weight
            .cmp(&x.weight)
            .then_with(|| natural_cmp(&x.author, &y.author))
    });
    AlignmentTable {
        reference: reference.to_string(),
        phase: phase.to_string(),
        rows,
    }
}

/// Reads the reference row of a row co-occurrence matrix and ranks it.
pub fn alignment(m: &CooccurMatrix, reference: &str, phase: &str) -> Result<AlignmentTable> {
    if m.kind() != CooccurKind::RowCooccurrence {
        return Err(Error::Mismatch(
            "alignment needs a row co-occurrence matrix".into(),
        ));
    }
    let r = m
        .index_of(reference)
        .ok_or_else(|| Error::ReferenceNotFound(reference.to_string()))?;
    let rows = m
        .keys()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(i, k)| AlignmentRow {
            author: k.clone(),
            weight: m.get(r, i),
        })
        .collect();
    Ok(ranked(reference, phase, rows))
}

/// Ranks an externally supplied weight map. The reference, if present, is dropped.
pub fn rank_table(weights: &BTreeMap<String, i64>, reference: &str) -> Result<AlignmentTable> {
    let rows = weights
        .iter()
        .map(|(author, &weight)| {
            u64::try_from(weight)
                .map(|weight| AlignmentRow {
                    author: author.clone(),
                    weight,
                })
                .map_err(|_| Error::NegativeWeight {
                    author: author.clone(),
                    weight,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ranked(reference, "", rows))
}

/// Parses `author,weight` CSV. A leading header row whose weight column is
/// not an integer is skipped.
pub fn parse_weights_csv(input: &str) -> Result<BTreeMap<String, i64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input.as_bytes());
    let mut weights = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        // The reader's own line counter ignores skipped blank lines, and a
        // record's offset points at the blank lines before it.
        let line = record.position().map_or(i + 1, |p| {
            let bytes = input.as_bytes();
            let mut start = p.byte() as usize;
            while matches!(bytes.get(start), Some(b'\n' | b'\r')) {
                start += 1;
            }
            bytes[..start].iter().filter(|&&b| b == b'\n').count() + 1
        });
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "line {line}: expected 2 fields, found {}",
                record.len()
            )));
        }
        let author = record[0].to_string();
        let weight = match record[1].parse::<i64>() {
            Ok(w) => w,
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(Error::Parse(format!(
                    "line {line}: weight {:?} is not an integer",
                    &record[1]
                )))
            }
        };
        if author.is_empty() {
            return Err(Error::Parse(format!("line {line}: empty author")));
        }
        if weights.insert(author.clone(), weight).is_some() {
            return Err(Error::Parse(format!(
                "line {line}: duplicate author {author:?}"
            )));
        }
    }
    Ok(weights)
}
