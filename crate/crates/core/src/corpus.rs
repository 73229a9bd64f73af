//! Phase- and author-labeled document corpora.
//!
//! A [`Corpus`] is loaded from JSONL (one document object per line) and kept
//! in a canonical order: `(phase, author, doc_id)`, where authors compare with
//! a numeric-aware ordering so that `"2"` sorts before `"10"`. Every later
//! stage of the pipeline relies on that order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric-aware string comparison: runs of ASCII digits compare by value.
///
/// Falls back to plain code-point comparison when two strings are equal under
/// the numeric rule (`"01"` vs `"1"`), so the result is a total order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut xs = a.as_bytes();
    let mut ys = b.as_bytes();
    loop {
        match (xs.first(), ys.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let (dx, rx) = split_digits(xs);
                let (dy, ry) = split_digits(ys);
                let nx = trim_zeros(dx);
                let ny = trim_zeros(dy);
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                xs = rx;
                ys = ry;
            }
            (Some(_), Some(_)) => {
                // Compare one full char so multi-byte sequences order by code point.
                let cx = first_char_len(xs);
                let cy = first_char_len(ys);
                let ord = xs[..cx].cmp(&ys[..cy]);
                if ord != Ordering::Equal {
                    return ord;
                }
                xs = &xs[cx..];
                ys = &ys[cy..];
            }
        }
    }
}

fn split_digits(s: &[u8]) -> (&[u8], &[u8]) {
    let n = s.iter().take_while(|b| b.is_ascii_digit()).count();
    s.split_at(n)
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let n = s.iter().take_while(|&&b| b == b'0').count();
    &s[n..]
}

fn first_char_len(s: &[u8]) -> usize {
    match s[0] {
        b if b < 0x80 => 1,
        b if b >= 0xF0 => 4,
        b if b >= 0xE0 => 3,
        _ => 2,
    }
}

/// Author identifier. Non-empty, no surrounding whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AuthorId(String);

impl AuthorId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidAuthor("author id is empty".into()));
        }
        if id.trim() != id {
            return Err(Error::InvalidAuthor(format!(
                "author id {id:?} has surrounding whitespace"
            )));
        }
        Ok(AuthorId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for AuthorId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        AuthorId::new(s)
    }
}

impl From<AuthorId> for String {
    fn from(a: AuthorId) -> String {
        a.0
    }
}

impl fmt::Display for AuthorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Ord for AuthorId {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for AuthorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub author: AuthorId,
    pub phase: String,
    pub text: String,
}

impl Document {
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.phase
            .cmp(&other.phase)
            .then_with(|| self.author.cmp(&other.author))
            .then_with(|| self.doc_id.cmp(&other.doc_id))
    }
}

/// An immutable, canonically ordered set of documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    phases: BTreeSet<String>,
    authors: BTreeSet<AuthorId>,
}

const KNOWN_KEYS: [&str; 4] = ["doc_id", "author", "phase", "text"];

impl Corpus {
    /// Builds a corpus from documents in any order.
    ///
    /// Fails on duplicate `doc_id`s or empty phase labels.
    pub fn from_documents(documents: Vec<Document>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(documents.len());
        for (i, doc) in documents.iter().enumerate() {
            if doc.phase.is_empty() {
                return Err(Error::InvalidDocument {
                    line: i + 1,
                    reason: "empty phase".into(),
                });
            }
            if seen.insert(doc.doc_id.as_str(), i).is_some() {
                return Err(Error::DuplicateDocId {
                    doc_id: doc.doc_id.clone(),
                    line: i + 1,
                });
            }
        }
        Ok(Self::from_unique(documents))
    }

    fn from_unique(mut documents: Vec<Document>) -> Self {
        documents.sort_by(Document::canonical_cmp);
        let phases = documents.iter().map(|d| d.phase.clone()).collect();
        let authors = documents.iter().map(|d| d.author.clone()).collect();
        Corpus {
            documents,
            phases,
            authors,
        }
    }

    /// Parses JSONL text. Blank lines are skipped; line numbers in errors are 1-based.
    pub fn from_jsonl_str(input: &str) -> Result<Self> {
        let mut documents = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let value: serde_json::Value =
                serde_json::from_str(raw).map_err(|e| Error::MalformedLine {
                    line,
                    reason: e.to_string(),
                })?;
            let obj = value.as_object().ok_or_else(|| Error::MalformedLine {
                line,
                reason: "expected a JSON object".into(),
            })?;
            for key in obj.keys() {
                if !KNOWN_KEYS.contains(&key.as_str()) {
                    log::warn!("line {line}: ignoring unknown key {key:?}");
                }
            }
            let field = |name: &str| -> Result<String> {
                match obj.get(name) {
                    Some(serde_json::Value::String(s)) => Ok(s.clone()),
                    Some(_) => Err(Error::MalformedLine {
                        line,
                        reason: format!("field {name:?} must be a string"),
                    }),
                    None => Err(Error::MalformedLine {
                        line,
                        reason: format!("missing field {name:?}"),
                    }),
                }
            };
            let doc_id = field("doc_id")?;
            let author = field("author")?;
            let phase = field("phase")?;
            let text = field("text")?;
            if author.is_empty() {
                return Err(Error::InvalidDocument {
                    line,
                    reason: "empty author".into(),
                });
            }
            let author = AuthorId::new(author).map_err(|e| Error::InvalidDocument {
                line,
                reason: e.to_string(),
            })?;
            if phase.is_empty() {
                return Err(Error::InvalidDocument {
                    line,
                    reason: "empty phase".into(),
                });
            }
            if seen.insert(doc_id.clone(), line).is_some() {
                return Err(Error::DuplicateDocId { doc_id, line });
            }
            documents.push(Document {
                doc_id,
                author,
                phase,
                text,
            });
        }
        Ok(Self::from_unique(documents))
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn phases(&self) -> &BTreeSet<String> {
        &self.phases
    }

    pub fn authors(&self) -> &BTreeSet<AuthorId> {
        &self.authors
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Sub-corpus holding exactly the documents labeled `phase`.
    pub fn filter_phase(&self, phase: &str) -> Result<Corpus> {
        if !self.phases.contains(phase) {
            return Err(Error::UnknownPhase(phase.to_string()));
        }
        let documents = self
            .documents
            .iter()
            .filter(|d| d.phase == phase)
            .cloned()
            .collect();
        Ok(Self::from_unique(documents))
    }

    /// Sub-corpus holding the documents of any of the given phases.
    pub fn filter_phases(&self, phases: &[&str]) -> Result<Corpus> {
        for p in phases {
            if !self.phases.contains(*p) {
                return Err(Error::UnknownPhase(p.to_string()));
            }
        }
        let documents = self
            .documents
            .iter()
            .filter(|d| phases.contains(&d.phase.as_str()))
            .cloned()
            .collect();
        Ok(Self::from_unique(documents))
    }
}

/// Reads and parses a JSONL corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Corpus::from_jsonl_str(&text)
}
