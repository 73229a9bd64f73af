//! End-to-end analysis of one slice of a corpus: matrices, graphs, central
//! nodes, communities and teacher alignment.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::align::{alignment, AlignmentTable};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, central_nodes, communities, CoGraph, CommunityMethod, CommunitySet,
};
use crate::matrix::{
    build_term_doc_with_vocab, row_cooccurrence, term_cooccurrence, CooccurMatrix, CountMode,
    RowGrouping, TermDocMatrix, Vocabulary,
};
use crate::textprep::{PrepConfig, TokenSeq};

/// Label of the whole-corpus slice in [`analyze_corpus`].
pub const UNION_LABEL: &str = "_all";

/// Everything downstream of tokenization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    /// Count mode for the term-document matrix and both products.
    pub mode: CountMode,
    pub row_grouping: RowGrouping,
    /// Count mode for the per-author matrix behind alignment.
    pub alignment_mode: CountMode,
    pub min_weight: u64,
    pub keep_isolated: bool,
    pub teacher: String,
    pub central_k: usize,
    pub community_method: CommunityMethod,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            mode: CountMode::Presence,
            row_grouping: RowGrouping::PerAuthor,
            alignment_mode: CountMode::Frequency,
            min_weight: 1,
            keep_isolated: false,
            teacher: "0".into(),
            central_k: 3,
            community_method: CommunityMethod::Components,
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if self.min_weight < 1 {
            return Err(Error::InvalidMinWeight(self.min_weight));
        }
        if self.central_k < 1 {
            return Err(Error::Config("central_k must be at least 1".into()));
        }
        if self.teacher.is_empty() || self.teacher.trim() != self.teacher {
            return Err(Error::Config(format!(
                "invalid teacher id {:?}",
                self.teacher
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PhaseAnalysis {
    pub label: String,
    pub term_doc: TermDocMatrix,
    pub term_matrix: CooccurMatrix,
    pub row_matrix: CooccurMatrix,
    pub term_graph: CoGraph,
    pub row_graph: CoGraph,
    pub central_terms: Vec<String>,
    pub central_rows: Vec<String>,
    pub term_communities: CommunitySet,
    pub row_communities: CommunitySet,
    /// `None` when the teacher wrote nothing in this slice.
    pub alignment: Option<AlignmentTable>,
}

/// Picks the sequences belonging to `sub`, in its canonical order.
pub fn select_seqs(sub: &Corpus, all: &[TokenSeq]) -> Result<Vec<TokenSeq>> {
    let by_id: HashMap<&str, &TokenSeq> = all.iter().map(|s| (s.doc_id.as_str(), s)).collect();
    sub.documents()
        .iter()
        .map(|d| {
            by_id
                .get(d.doc_id.as_str())
                .map(|s| (*s).clone())
                .ok_or_else(|| Error::Mismatch(format!("no tokens for document {:?}", d.doc_id)))
        })
        .collect()
}

/// Runs the matrix, graph and alignment stages over `sub` with a fixed vocabulary.
pub fn analyze_slice(
    label: &str,
    sub: &Corpus,
    seqs: &[TokenSeq],
    vocab: &Vocabulary,
    opts: &AnalysisOptions,
) -> Result<PhaseAnalysis> {
    opts.validate()?;
    let term_doc =
        build_term_doc_with_vocab(seqs, opts.mode, opts.row_grouping, sub, vocab.clone())?;
    let term_matrix = term_cooccurrence(&term_doc);
    let row_matrix = row_cooccurrence(&term_doc);
    let term_graph = build_graph(&term_matrix, opts.min_weight, opts.keep_isolated)?;
    let row_graph = build_graph(&row_matrix, opts.min_weight, opts.keep_isolated)?;

    let author_x = build_term_doc_with_vocab(
        seqs,
        opts.alignment_mode,
        RowGrouping::PerAuthor,
        sub,
        vocab.clone(),
    )?;
    let alignment = match alignment(&row_cooccurrence(&author_x), &opts.teacher, label) {
        Ok(t) => Some(t),
        Err(Error::ReferenceNotFound(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(PhaseAnalysis {
        label: label.to_string(),
        central_terms: central_nodes(&term_graph, opts.central_k),
        central_rows: central_nodes(&row_graph, opts.central_k),
        term_communities: communities(&term_graph, opts.community_method),
        row_communities: communities(&row_graph, opts.community_method),
        term_doc,
        term_matrix,
        row_matrix,
        term_graph,
        row_graph,
        alignment,
    })
}

/// Tokenizes the whole corpus once, then analyzes it as a whole and per phase.
///
/// Each phase is vectorized against its own vocabulary; the frequency
/// filter runs once over the whole corpus.
pub fn analyze_corpus(
    corpus: &Corpus,
    prep: &PrepConfig,
    opts: &AnalysisOptions,
) -> Result<CorpusAnalysis> {
    if corpus.is_empty() {
        return Err(Error::EmptyInput);
    }
    let seqs = crate::textprep::prep_corpus(corpus, prep);
    let union = analyze_slice(
        UNION_LABEL,
        corpus,
        &seqs,
        &Vocabulary::from_seqs(&seqs),
        opts,
    )?;
    let phases = corpus
        .phases()
        .iter()
        .map(|p| {
            let sub = corpus.filter_phase(p)?;
            let sub_seqs = select_seqs(&sub, &seqs)?;
            let vocab = Vocabulary::from_seqs(&sub_seqs);
            analyze_slice(p, &sub, &sub_seqs, &vocab, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusAnalysis {
        seqs,
        union,
        phases,
    })
}

#[derive(Debug, Clone)]
pub struct CorpusAnalysis {
    pub seqs: Vec<TokenSeq>,
    pub union: PhaseAnalysis,
    pub phases: Vec<PhaseAnalysis>,
}
