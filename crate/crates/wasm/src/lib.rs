//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<String, String>`, so the logic is testable without a JS runtime.

use cooccur::export::{export_graph, export_table, ExportConfig, ExportFormat, Table};
use cooccur::pipeline::{analyze_corpus, AnalysisOptions, UNION_LABEL};
use cooccur::textprep::{parse_keywords, parse_stopwords, tokenize, PrepConfig};
use cooccur::{align, Corpus};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn prep(stopwords: &str, keywords: &str, min_term_frequency: usize) -> Result<PrepConfig, String> {
    PrepConfig::builder()
        .stopwords(parse_stopwords(stopwords))
        .keywords(parse_keywords(keywords))
        .min_term_frequency(min_term_frequency.max(1))
        .build()
        .map_err(|e| e.to_string())
}

/// Tokens of `text` as a JSON array.
pub fn tokenize_text(text: &str, stopwords: &str, keywords: &str) -> Result<String, String> {
    let cfg = prep(stopwords, keywords, 1)?;
    serde_json::to_string(&tokenize(text, &cfg)).map_err(|e| e.to_string())
}

/// Analyzes a JSONL corpus and returns `{"svg", "central", "nodes", "edges", "alignment"}`
/// for one phase (or the whole corpus when `phase` is empty).
///
/// `graph` picks the term graph (`"terms"`) or the author graph (`"authors"`).
#[allow(clippy::too_many_arguments)]
pub fn graph_report(
    corpus_jsonl: &str,
    stopwords: &str,
    keywords: &str,
    phase: &str,
    graph: &str,
    min_weight: u64,
    min_term_frequency: usize,
    teacher: &str,
) -> Result<String, String> {
    let corpus = Corpus::from_jsonl_str(corpus_jsonl).map_err(|e| e.to_string())?;
    let opts = AnalysisOptions {
        min_weight,
        teacher: teacher.to_string(),
        ..AnalysisOptions::default()
    };
    let analysis = analyze_corpus(
        &corpus,
        &prep(stopwords, keywords, min_term_frequency)?,
        &opts,
    )
    .map_err(|e| e.to_string())?;
    let label = if phase.is_empty() { UNION_LABEL } else { phase };
    let slice = std::iter::once(&analysis.union)
        .chain(&analysis.phases)
        .find(|s| s.label == label)
        .ok_or_else(|| format!("unknown phase {phase:?}"))?;
    let (g, central) = match graph {
        "terms" => (&slice.term_graph, &slice.central_terms),
        "authors" => (&slice.row_graph, &slice.central_rows),
        other => {
            return Err(format!(
                "unknown graph {other:?}, expected terms or authors"
            ))
        }
    };
    let svg = export_graph(g, &ExportConfig::new(ExportFormat::Svg)).map_err(|e| e.to_string())?;
    let alignment: Vec<_> = slice
        .alignment
        .iter()
        .flat_map(|t| &t.rows)
        .map(|r| json!([r.author, r.weight]))
        .collect();
    Ok(json!({
        "svg": String::from_utf8(svg).map_err(|e| e.to_string())?,
        "central": central,
        "nodes": g.nodes().len(),
        "edges": g.edges().len(),
        "phases": corpus.phases(),
        "alignment": alignment,
    })
    .to_string())
}

/// Ranks an `author,weight` CSV against `teacher` and returns the ranked CSV.
pub fn rank_weights(csv: &str, teacher: &str) -> Result<String, String> {
    let weights = align::parse_weights_csv(csv).map_err(|e| e.to_string())?;
    let table = align::rank_table(&weights, teacher).map_err(|e| e.to_string())?;
    let bytes =
        export_table(Table::Alignment(&table), ExportFormat::Csv).map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = tokenizeText)]
pub fn tokenize_text_js(text: &str, stopwords: &str, keywords: &str) -> Result<String, JsError> {
    tokenize_text(text, stopwords, keywords).map_err(|e| JsError::new(&e))
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen(js_name = graphReport)]
pub fn graph_report_js(
    corpus_jsonl: &str,
    stopwords: &str,
    keywords: &str,
    phase: &str,
    graph: &str,
    min_weight: u32,
    min_term_frequency: u32,
    teacher: &str,
) -> Result<String, JsError> {
    graph_report(
        corpus_jsonl,
        stopwords,
        keywords,
        phase,
        graph,
        u64::from(min_weight),
        min_term_frequency as usize,
        teacher,
    )
    .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = rankWeights)]
pub fn rank_weights_js(csv: &str, teacher: &str) -> Result<String, JsError> {
    rank_weights(csv, teacher).map_err(|e| JsError::new(&e))
}
