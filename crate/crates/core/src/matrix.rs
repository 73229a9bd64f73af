//! Term-document matrices and their co-occurrence products.
//!
//! All storage is sparse and integer-valued. `X` has one row per document
//! (or per author) and one column per vocabulary term; `XᵀX` is the
//! term×term co-occurrence matrix and `XXᵀ` the row×row one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::textprep::TokenSeq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    Frequency,
    #[default]
    Presence,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Frequency => "frequency",
            CountMode::Presence => "presence",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RowGrouping {
    PerDocument,
    #[default]
    PerAuthor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CooccurKind {
    TermCooccurrence,
    RowCooccurrence,
}

/// Sorted, duplicate-free term list with its inverse index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = terms.into_iter().map(Into::into).collect();
        let terms: Vec<String> = set.into_iter().collect();
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary { terms, index }
    }

    /// Union of all tokens in `seqs`.
    pub fn from_seqs(seqs: &[TokenSeq]) -> Self {
        Self::from_terms(seqs.iter().flat_map(|s| s.tokens.iter().cloned()))
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Sparse row: column -> nonzero count.
pub type SparseRow = BTreeMap<usize, u64>;

/// The matrix `X`: rows are documents or authors, columns vocabulary terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocMatrix {
    rows: Vec<String>,
    vocab: Vocabulary,
    entries: Vec<SparseRow>,
    mode: CountMode,
}

impl TermDocMatrix {
    /// Builds from explicit parts. Zero entries are dropped and presence mode
    /// clamps every count to 1.
    pub fn from_parts(
        rows: Vec<String>,
        vocab: Vocabulary,
        entries: Vec<SparseRow>,
        mode: CountMode,
    ) -> Result<Self> {
        if rows.len() != entries.len() {
            return Err(Error::Mismatch(format!(
                "{} row keys for {} rows",
                rows.len(),
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter(|&(_, v)| v > 0)
                    .map(|(c, v)| {
                        if c >= vocab.len() {
                            Err(Error::Mismatch(format!("column {c} outside vocabulary")))
                        } else if mode == CountMode::Presence {
                            Ok((c, 1))
                        } else {
                            Ok((c, v))
                        }
                    })
                    .collect::<Result<SparseRow>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TermDocMatrix {
            rows,
            vocab,
            entries,
            mode,
        })
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.entries[r]
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r].get(&c).copied().unwrap_or(0)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.vocab.len()
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|row| {
                let mut dense = vec![0; self.n_cols()];
                for (&c, &v) in row {
                    dense[c] = v;
                }
                dense
            })
            .collect()
    }
}

/// Builds `X` from token sequences aligned with the corpus documents.
///
/// The vocabulary is the sorted union of all tokens.
pub fn build_term_doc(
    seqs: &[TokenSeq],
    mode: CountMode,
    grouping: RowGrouping,
    corpus: &Corpus,
) -> Result<TermDocMatrix> {
    build_term_doc_with_vocab(seqs, mode, grouping, corpus, Vocabulary::from_seqs(seqs))
}

/// Like [`build_term_doc`] but against a fixed vocabulary, which must contain
/// every token in `seqs`.
pub fn build_term_doc_with_vocab(
    seqs: &[TokenSeq],
    mode: CountMode,
    grouping: RowGrouping,
    corpus: &Corpus,
    vocab: Vocabulary,
) -> Result<TermDocMatrix> {
    if seqs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let docs = corpus.documents();
    if seqs.len() != docs.len() {
        return Err(Error::Mismatch(format!(
            "{} token sequences for {} documents",
            seqs.len(),
            docs.len()
        )));
    }
    for (s, d) in seqs.iter().zip(docs) {
        if s.doc_id != d.doc_id {
            return Err(Error::Mismatch(format!(
                "sequence {:?} aligned with document {:?}",
                s.doc_id, d.doc_id
            )));
        }
    }

    let mut rows: Vec<String> = Vec::new();
    let mut row_of_doc = Vec::with_capacity(docs.len());
    match grouping {
        RowGrouping::PerDocument => {
            for d in docs {
                row_of_doc.push(rows.len());
                rows.push(d.doc_id.clone());
            }
        }
        RowGrouping::PerAuthor => {
            let authors: Vec<_> = corpus.authors().iter().collect();
            rows = authors.iter().map(|a| a.to_string()).collect();
            let pos: HashMap<&str, usize> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| (r.as_str(), i))
                .collect();
            for d in docs {
                row_of_doc.push(pos[d.author.as_str()]);
            }
        }
    }

    let mut entries = vec![SparseRow::new(); rows.len()];
    for (seq, &r) in seqs.iter().zip(&row_of_doc) {
        for t in &seq.tokens {
            let c = vocab
                .index_of(t)
                .ok_or_else(|| Error::Mismatch(format!("token {t:?} not in vocabulary")))?;
            *entries[r].entry(c).or_insert(0) += 1;
        }
    }
    TermDocMatrix::from_parts(rows, vocab, entries, mode)
}

/// Symmetric sparse co-occurrence matrix (`XᵀX` or `XXᵀ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurMatrix {
    keys: Vec<String>,
    entries: Vec<SparseRow>,
    kind: CooccurKind,
    mode: CountMode,
}

impl CooccurMatrix {
    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn kind(&self) -> CooccurKind {
        self.kind
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i].get(&j).copied().unwrap_or(0)
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    pub fn entry(&self, a: &str, b: &str) -> Option<u64> {
        Some(self.get(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.entries[i]
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Builds a matrix from a dense symmetric grid. Fails on asymmetry or a
    /// shape mismatch.
    pub fn from_dense(
        keys: Vec<String>,
        dense: &[Vec<u64>],
        kind: CooccurKind,
        mode: CountMode,
    ) -> Result<Self> {
        let n = keys.len();
        if dense.len() != n || dense.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch(format!("expected a {n}x{n} grid")));
        }
        let mut entries = vec![SparseRow::new(); n];
        for (i, (row, out)) in dense.iter().zip(&mut entries).enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != dense[j][i] {
                    return Err(Error::Mismatch(format!("asymmetric at ({i}, {j})")));
                }
                if v != 0 {
                    out.insert(j, v);
                }
            }
        }
        Ok(CooccurMatrix {
            keys,
            entries,
            kind,
            mode,
        })
    }
}

/// `XᵀX`, accumulated as the sum of each row's outer product.
pub fn term_cooccurrence(x: &TermDocMatrix) -> CooccurMatrix {
    let mut entries = vec![SparseRow::new(); x.n_cols()];
    for row in &x.entries {
        let nz: Vec<(usize, u64)> = row.iter().map(|(&c, &v)| (c, v)).collect();
        for &(s, vs) in &nz {
            for &(t, vt) in &nz {
                *entries[s].entry(t).or_insert(0) += vs * vt;
            }
        }
    }
    CooccurMatrix {
        keys: x.vocab.terms.clone(),
        entries,
        kind: CooccurKind::TermCooccurrence,
        mode: x.mode,
    }
}

/// `XXᵀ`, one sparse row intersection per pair of rows.
pub fn row_cooccurrence(x: &TermDocMatrix) -> CooccurMatrix {
    let n = x.n_rows();
    let mut entries = vec![SparseRow::new(); n];
    for i in 0..n {
        for j in i..n {
            let dot = sparse_dot(&x.entries[i], &x.entries[j]);
            if dot > 0 {
                entries[i].insert(j, dot);
                entries[j].insert(i, dot);
            }
        }
    }
    CooccurMatrix {
        keys: x.rows.clone(),
        entries,
        kind: CooccurKind::RowCooccurrence,
        mode: x.mode,
    }
}

fn sparse_dot(a: &SparseRow, b: &SparseRow) -> u64 {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter_map(|(c, v)| large.get(c).map(|w| v * w))
        .sum()
}
