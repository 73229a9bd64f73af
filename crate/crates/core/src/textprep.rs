//! Text normalization and tokenization.
//!
//! Tokenization scans normalized text left to right. At the start of every
//! word (or at every character inside a CJK run) the longest dictionary phrase
//! that matches there is emitted as one token. Otherwise spaced scripts are
//! split on whitespace, punctuation and symbols, and CJK ideographs and kana
//! become single-character tokens. Punctuation is never emitted.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_general_category::{get_general_category, GeneralCategory};
use unicode_normalization::UnicodeNormalization;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

/// Stopwords used when no list is supplied.
pub const DEFAULT_ENGLISH_STOPWORDS: &[&str] = &[
    "a", "about", "after", "all", "also", "an", "and", "any", "are", "as", "at", "be", "because",
    "been", "but", "by", "can", "could", "did", "do", "does", "for", "from", "had", "has", "have",
    "how", "i", "if", "in", "into", "is", "it", "its", "more", "my", "no", "not", "of", "on", "or",
    "our", "so", "such", "than", "that", "the", "their", "them", "then", "there", "these", "they",
    "this", "those", "to", "too", "very", "was", "were", "what", "when", "which", "while", "who",
    "will", "with", "would", "you", "your",
];

/// Normalized preprocessing settings.
///
/// Stopwords and keyword phrases are stored in the same normalized form that
/// [`normalize`] produces for text.
#[derive(Debug, Clone)]
pub struct PrepConfig {
    stopwords: BTreeSet<String>,
    keywords: Vec<String>,
    lowercase: bool,
    min_term_frequency: usize,
    min_term_length: usize,
    // first char -> keyword indices, longest phrase first
    keyword_index: HashMap<char, Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct PrepConfigBuilder {
    stopwords: Vec<String>,
    keywords: Vec<String>,
    lowercase: bool,
    min_term_frequency: usize,
    min_term_length: usize,
}

impl Default for PrepConfigBuilder {
    fn default() -> Self {
        PrepConfigBuilder {
            stopwords: DEFAULT_ENGLISH_STOPWORDS
                .iter()
                .map(|s| s.to_string())
                .collect(),
            keywords: Vec::new(),
            lowercase: true,
            min_term_frequency: 1,
            min_term_length: 1,
        }
    }
}

impl PrepConfigBuilder {
    /// Replaces the stopword list.
    pub fn stopwords<I, S>(mut self, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stopwords = words.into_iter().map(Into::into).collect();
        self
    }

    pub fn keywords<I, S>(mut self, phrases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.keywords = phrases.into_iter().map(Into::into).collect();
        self
    }

    pub fn lowercase(mut self, on: bool) -> Self {
        self.lowercase = on;
        self
    }

    pub fn min_term_frequency(mut self, n: usize) -> Self {
        self.min_term_frequency = n;
        self
    }

    pub fn min_term_length(mut self, n: usize) -> Self {
        self.min_term_length = n;
        self
    }

    pub fn build(self) -> Result<PrepConfig> {
        if self.min_term_frequency < 1 {
            return Err(Error::Config(
                "min_term_frequency must be at least 1".into(),
            ));
        }
        if self.min_term_length < 1 {
            return Err(Error::Config("min_term_length must be at least 1".into()));
        }
        let norm = |s: &str| normalize_with(s, self.lowercase);
        let stopwords = self
            .stopwords
            .iter()
            .map(|s| norm(s))
            .filter(|s| !s.is_empty())
            .collect();
        let mut keywords: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for phrase in &self.keywords {
            let p = norm(phrase);
            if !p.is_empty() && seen.insert(p.clone()) {
                keywords.push(p);
            }
        }
        let mut keyword_index: HashMap<char, Vec<usize>> = HashMap::new();
        for (i, k) in keywords.iter().enumerate() {
            let first = k.chars().next().expect("non-empty keyword");
            keyword_index.entry(first).or_default().push(i);
        }
        for list in keyword_index.values_mut() {
            list.sort_by_key(|&i| std::cmp::Reverse(keywords[i].chars().count()));
        }
        Ok(PrepConfig {
            stopwords,
            keywords,
            lowercase: self.lowercase,
            min_term_frequency: self.min_term_frequency,
            min_term_length: self.min_term_length,
            keyword_index,
        })
    }
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfigBuilder::default()
            .build()
            .expect("default config is valid")
    }
}

impl PrepConfig {
    pub fn builder() -> PrepConfigBuilder {
        PrepConfigBuilder::default()
    }

    pub fn stopwords(&self) -> &BTreeSet<String> {
        &self.stopwords
    }

    pub fn keywords(&self) -> &[String] {
        &self.keywords
    }

    pub fn lowercase(&self) -> bool {
        self.lowercase
    }

    pub fn min_term_frequency(&self) -> usize {
        self.min_term_frequency
    }

    pub fn min_term_length(&self) -> usize {
        self.min_term_length
    }
}

/// The tokens of one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSeq {
    pub doc_id: String,
    pub tokens: Vec<String>,
}

/// NFKC, optional lowercasing, whitespace collapsed to single spaces and trimmed.
pub fn normalize(text: &str, config: &PrepConfig) -> String {
    normalize_with(text, config.lowercase)
}

fn normalize_with(text: &str, lowercase: bool) -> String {
    let nfkc: String = text.nfkc().collect();
    let cased = if lowercase { nfkc.to_lowercase() } else { nfkc };
    let mut out = String::with_capacity(cased.len());
    for word in cased.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

fn is_separator(c: char) -> bool {
    if c.is_whitespace() || c.is_control() {
        return true;
    }
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
            | MathSymbol
            | CurrencySymbol
            | ModifierSymbol
            | OtherSymbol
            | Format
    )
}

/// Characters from scripts written without word separators.
pub fn is_cjk(c: char) -> bool {
    matches!(c as u32,
        0x3005 | 0x3007
        | 0x3040..=0x309F   // Hiragana
        | 0x30A0..=0x30FF   // Katakana
        | 0x31F0..=0x31FF
        | 0x3400..=0x4DBF   // CJK Extension A
        | 0x4E00..=0x9FFF   // CJK Unified Ideographs
        | 0xF900..=0xFAFF
        | 0xFF66..=0xFF9F
        | 0x20000..=0x2FA1F
        | 0x30000..=0x323AF)
}

fn is_word_char(c: char) -> bool {
    !is_separator(c) && !is_cjk(c)
}

/// Splits text into tokens, applying the keyword dictionary, stopwords and
/// the minimum token length. The text is normalized first.
pub fn tokenize(text: &str, config: &PrepConfig) -> Vec<String> {
    let normalized = normalize(text, config);
    let chars: Vec<(usize, char)> = normalized.char_indices().collect();
    let n = chars.len();
    let byte_at = |i: usize| chars.get(i).map_or(normalized.len(), |&(b, _)| b);

    let mut raw = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i].1;
        if is_separator(c) {
            i += 1;
            continue;
        }
        if let Some((phrase, len)) = match_keyword(&normalized, &chars, i, config) {
            raw.push(phrase.to_string());
            i += len;
            continue;
        }
        if is_cjk(c) {
            raw.push(c.to_string());
            i += 1;
            continue;
        }
        let start = i;
        while i < n && is_word_char(chars[i].1) {
            i += 1;
        }
        raw.push(normalized[byte_at(start)..byte_at(i)].to_string());
    }

    raw.retain(|t| !config.stopwords.contains(t) && t.chars().count() >= config.min_term_length);
    raw
}

// Longest keyword starting at char position `i` that ends on a token boundary.
fn match_keyword<'c>(
    text: &str,
    chars: &[(usize, char)],
    i: usize,
    config: &'c PrepConfig,
) -> Option<(&'c str, usize)> {
    let candidates = config.keyword_index.get(&chars[i].1)?;
    let rest = &text[chars[i].0..];
    for &k in candidates {
        let phrase = config.keywords[k].as_str();
        if !rest.starts_with(phrase) {
            continue;
        }
        let len = phrase.chars().count();
        let last = phrase.chars().next_back().expect("non-empty keyword");
        let boundary = match chars.get(i + len) {
            None => true,
            Some(&(_, next)) => !is_word_char(next) || !is_word_char(last),
        };
        if boundary {
            return Some((phrase, len));
        }
    }
    None
}

/// Tokenizes every document in canonical order, then drops terms whose
/// corpus-wide frequency is below `min_term_frequency`.
pub fn prep_corpus(corpus: &Corpus, config: &PrepConfig) -> Vec<TokenSeq> {
    let mut seqs: Vec<TokenSeq> = corpus
        .documents()
        .iter()
        .map(|d| TokenSeq {
            doc_id: d.doc_id.clone(),
            tokens: tokenize(&d.text, config),
        })
        .collect();
    if config.min_term_frequency > 1 {
        let mut freq: HashMap<&str, usize> = HashMap::new();
        for s in &seqs {
            for t in &s.tokens {
                *freq.entry(t.as_str()).or_default() += 1;
            }
        }
        let rare: BTreeSet<String> = freq
            .into_iter()
            .filter(|&(_, f)| f < config.min_term_frequency)
            .map(|(t, _)| t.to_string())
            .collect();
        for s in &mut seqs {
            s.tokens.retain(|t| !rare.contains(t));
        }
    }
    seqs
}

/// Stopword list: one token per line, `#` starts a comment line.
pub fn parse_stopwords(input: &str) -> Vec<String> {
    input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Keyword dictionary: one phrase per line, `#` starts a comment line.
pub fn parse_keywords(input: &str) -> Vec<String> {
    input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

pub fn read_stopwords(path: impl AsRef<Path>) -> Result<Vec<String>> {
    read(path.as_ref()).map(|s| parse_stopwords(&s))
}

pub fn read_keywords(path: impl AsRef<Path>) -> Result<Vec<String>> {
    read(path.as_ref()).map(|s| parse_keywords(&s))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
