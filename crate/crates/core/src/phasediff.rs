//! Structural comparison of two corpus phases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::align::AlignmentTable;
use crate::corpus::{natural_cmp, Corpus};
use crate::error::Result;
use crate::graph::CoGraph;
use crate::matrix::Vocabulary;
use crate::pipeline::{analyze_slice, select_seqs, AnalysisOptions};
use crate::textprep::{prep_corpus, PrepConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralDelta {
    pub added: BTreeSet<String>,
    pub removed: BTreeSet<String>,
    pub retained: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDelta {
    pub a: String,
    pub b: String,
    pub weight_a: u64,
    pub weight_b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentDelta {
    pub author: String,
    pub weight_a: u64,
    pub weight_b: u64,
    /// 1-based; `None` when the author is absent from that phase.
    pub rank_a: Option<usize>,
    pub rank_b: Option<usize>,
}

impl AlignmentDelta {
    /// `rank_a - rank_b`: positive means the author moved up.
    pub fn rank_change(&self) -> Option<i64> {
        Some(self.rank_a? as i64 - self.rank_b? as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseDiff {
    pub phase_a: String,
    pub phase_b: String,
    pub central: CentralDelta,
    pub edges: Vec<EdgeDelta>,
    pub alignment: Vec<AlignmentDelta>,
}

impl PhaseDiff {
    /// Compares precomputed per-phase results.
    #[allow(clippy::too_many_arguments)]
    pub fn compare(
        phase_a: &str,
        phase_b: &str,
        central_a: &[String],
        central_b: &[String],
        graph_a: &CoGraph,
        graph_b: &CoGraph,
        align_a: Option<&AlignmentTable>,
        align_b: Option<&AlignmentTable>,
    ) -> PhaseDiff {
        let set_a: BTreeSet<String> = central_a.iter().cloned().collect();
        let set_b: BTreeSet<String> = central_b.iter().cloned().collect();
        let central = CentralDelta {
            added: set_b.difference(&set_a).cloned().collect(),
            removed: set_a.difference(&set_b).cloned().collect(),
            retained: set_a.intersection(&set_b).cloned().collect(),
        };

        let mut edge_map: BTreeMap<(String, String), (u64, u64)> = BTreeMap::new();
        for e in graph_a.edges() {
            edge_map.entry((e.a.clone(), e.b.clone())).or_default().0 = e.weight;
        }
        for e in graph_b.edges() {
            edge_map.entry((e.a.clone(), e.b.clone())).or_default().1 = e.weight;
        }
        let mut edges: Vec<EdgeDelta> = edge_map
            .into_iter()
            .map(|((a, b), (weight_a, weight_b))| EdgeDelta {
                a,
                b,
                weight_a,
                weight_b,
            })
            .collect();
        edges.sort_by(|x, y| natural_cmp(&x.a, &y.a).then_with(|| natural_cmp(&x.b, &y.b)));

        let mut authors: Vec<&str> = align_a
            .into_iter()
            .chain(align_b)
            .flat_map(|t| t.authors())
            .collect();
        authors.sort_by(|x, y| natural_cmp(x, y));
        authors.dedup();
        let alignment = authors
            .into_iter()
            .map(|author| AlignmentDelta {
                author: author.to_string(),
                weight_a: align_a.and_then(|t| t.weight_of(author)).unwrap_or(0),
                weight_b: align_b.and_then(|t| t.weight_of(author)).unwrap_or(0),
                rank_a: align_a.and_then(|t| t.rank_of(author)),
                rank_b: align_b.and_then(|t| t.rank_of(author)),
            })
            .collect();

        PhaseDiff {
            phase_a: phase_a.to_string(),
            phase_b: phase_b.to_string(),
            central,
            edges,
            alignment,
        }
    }

    /// True when nothing changed between the two sides.
    pub fn is_empty(&self) -> bool {
        self.central.added.is_empty()
            && self.central.removed.is_empty()
            && self.edges.iter().all(|e| e.weight_a == e.weight_b)
            && self
                .alignment
                .iter()
                .all(|d| d.weight_a == d.weight_b && d.rank_a == d.rank_b)
    }

    /// The same diff seen from the other side.
    pub fn reversed(&self) -> PhaseDiff {
        PhaseDiff {
            phase_a: self.phase_b.clone(),
            phase_b: self.phase_a.clone(),
            central: CentralDelta {
                added: self.central.removed.clone(),
                removed: self.central.added.clone(),
                retained: self.central.retained.clone(),
            },
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDelta {
                    a: e.a.clone(),
                    b: e.b.clone(),
                    weight_a: e.weight_b,
                    weight_b: e.weight_a,
                })
                .collect(),
            alignment: self
                .alignment
                .iter()
                .map(|d| AlignmentDelta {
                    author: d.author.clone(),
                    weight_a: d.weight_b,
                    weight_b: d.weight_a,
                    rank_a: d.rank_b,
                    rank_b: d.rank_a,
                })
                .collect(),
        }
    }

    /// Up to `n` authors with the largest absolute rank change, biggest first.
    pub fn top_movers(&self, n: usize) -> Vec<&AlignmentDelta> {
        let mut movers: Vec<&AlignmentDelta> = self
            .alignment
            .iter()
            .filter(|d| d.rank_change().is_some_and(|c| c != 0))
            .collect();
        movers.sort_by(|x, y| {
            let cx = x.rank_change().unwrap().abs();
            let cy = y.rank_change().unwrap().abs();
            cy.cmp(&cx).then_with(|| natural_cmp(&x.author, &y.author))
        });
        movers.truncate(n);
        movers
    }

    /// Plain-text report.
    pub fn summary_text(&self) -> String {
        let join = |s: &BTreeSet<String>| {
            if s.is_empty() {
                "(none)".to_string()
            } else {
                s.iter().cloned().collect::<Vec<_>>().join(", ")
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "phases: {} -> {}", self.phase_a, self.phase_b);
        let _ = writeln!(out, "central added: {}", join(&self.central.added));
        let _ = writeln!(out, "central removed: {}", join(&self.central.removed));
        let _ = writeln!(out, "central retained: {}", join(&self.central.retained));
        let changed = self
            .edges
            .iter()
            .filter(|e| e.weight_a != e.weight_b)
            .count();
        let _ = writeln!(
            out,
            "edges: {} total, {} changed",
            self.edges.len(),
            changed
        );
        let _ = writeln!(out, "top alignment movers:");
        let movers = self.top_movers(5);
        if movers.is_empty() {
            let _ = writeln!(out, "  (none)");
        }
        for d in movers {
            let _ = writeln!(
                out,
                "  {}: rank {} -> {} ({:+}), weight {} -> {}",
                d.author,
                d.rank_a.unwrap(),
                d.rank_b.unwrap(),
                d.rank_change().unwrap(),
                d.weight_a,
                d.weight_b
            );
        }
        out
    }
}

/// Runs the pipeline on both phases against their shared vocabulary and
/// compares term graphs, central terms and teacher alignment.
///
/// The frequency filter is applied to the two phases together before they
/// are split.
pub fn diff_phases(
    corpus: &Corpus,
    phase_a: &str,
    phase_b: &str,
    prep: &PrepConfig,
    opts: &AnalysisOptions,
) -> Result<PhaseDiff> {
    opts.validate()?;
    let joint = corpus.filter_phases(&[phase_a, phase_b])?;
    let seqs = prep_corpus(&joint, prep);
    let vocab = Vocabulary::from_seqs(&seqs);
    let run = |phase: &str| {
        let sub = joint.filter_phase(phase)?;
        let sub_seqs = select_seqs(&sub, &seqs)?;
        analyze_slice(phase, &sub, &sub_seqs, &vocab, opts)
    };
    let a = run(phase_a)?;
    let b = if phase_a == phase_b {
        a.clone()
    } else {
        run(phase_b)?
    };
    Ok(PhaseDiff::compare(
        phase_a,
        phase_b,
        &a.central_terms,
        &b.central_terms,
        &a.term_graph,
        &b.term_graph,
        a.alignment.as_ref(),
        b.alignment.as_ref(),
    ))
}
