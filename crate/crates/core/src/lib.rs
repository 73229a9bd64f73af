//! Co-occurrence analytics for author- and phase-labeled text corpora.
//!
//! The pipeline runs in five stages:
//!
//! 1. [`textprep`] normalizes and tokenizes each document (stopwords,
//!    keyword phrases, CJK per-character segmentation).
//! 2. [`matrix`] builds the term-document matrix `X`.
//! 3. [`matrix`] derives the term co-occurrence matrix `XᵀX` and the
//!    row (document or author) co-occurrence matrix `XXᵀ`.
//! 4. [`graph`] thresholds either matrix into a weighted graph, ranks
//!    central nodes by strength and finds communities.
//! 5. [`align`] ranks authors by their co-occurrence weight with a
//!    reference author, and [`phasediff`] compares two phases.
//!
//! [`export`] writes every intermediate in CSV, JSON, DOT, GraphML or SVG.

pub mod align;
pub mod corpus;
pub mod error;
pub mod export;
pub mod graph;
pub mod matrix;
pub mod phasediff;
pub mod pipeline;
pub mod textprep;

pub use align::{alignment, rank_table, AlignmentRow, AlignmentTable};
pub use corpus::{load_corpus, natural_cmp, AuthorId, Corpus, Document};
pub use error::{Error, Result};
pub use export::{export_graph, export_table, ExportConfig, ExportFormat, Table};
pub use graph::{build_graph, central_nodes, communities, CoGraph, CommunityMethod, CommunitySet};
pub use matrix::{
    build_term_doc, row_cooccurrence, term_cooccurrence, CooccurKind, CooccurMatrix, CountMode,
    RowGrouping, TermDocMatrix, Vocabulary,
};
pub use phasediff::{diff_phases, PhaseDiff};
pub use pipeline::{analyze_corpus, AnalysisOptions};
pub use textprep::{normalize, prep_corpus, tokenize, PrepConfig, TokenSeq};
