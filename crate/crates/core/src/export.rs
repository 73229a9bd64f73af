//! Serialization of matrices, graphs, alignment tables and phase diffs.
//!
//! Every writer is byte-deterministic: no timestamps, fixed key order,
//! `\n` line endings, fixed-precision numbers.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::align::AlignmentTable;
use crate::error::{Error, Result};
use crate::graph::{CoGraph, Edge, Node};
use crate::matrix::{CooccurMatrix, TermDocMatrix};
use crate::phasediff::PhaseDiff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Dot,
    Graphml,
    Json,
    Svg,
}

impl ExportFormat {
    pub const GRAPH_FORMATS: [ExportFormat; 4] = [
        ExportFormat::Dot,
        ExportFormat::Graphml,
        ExportFormat::Json,
        ExportFormat::Svg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExportFormat::Csv => "csv",
            ExportFormat::Dot => "dot",
            ExportFormat::Graphml => "graphml",
            ExportFormat::Json => "json",
            ExportFormat::Svg => "svg",
        }
    }

    pub fn extension(self) -> &'static str {
        self.name()
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::Graphml),
            "json" => Ok(ExportFormat::Json),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExportConfig {
    pub format: ExportFormat,
    /// Stroke width per unit of edge weight.
    pub edge_width_scale: f64,
    /// Node radius per square root of strength, so circle area tracks strength.
    pub node_size_scale: f64,
}

impl ExportConfig {
    pub fn new(format: ExportFormat) -> Self {
        ExportConfig {
            format,
            edge_width_scale: 1.0,
            node_size_scale: 4.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("edge_width_scale", self.edge_width_scale),
            ("node_size_scale", self.node_size_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

pub fn export_graph(g: &CoGraph, cfg: &ExportConfig) -> Result<Vec<u8>> {
    cfg.validate()?;
    let text = match cfg.format {
        ExportFormat::Dot => graph_to_dot(g, cfg),
        ExportFormat::Graphml => graph_to_graphml(g),
        ExportFormat::Json => graph_to_json(g),
        ExportFormat::Svg => graph_to_svg(g, cfg),
        ExportFormat::Csv => {
            return Err(Error::UnsupportedFormat {
                object: "graph",
                format: "csv",
            })
        }
    };
    Ok(text.into_bytes())
}

/// Objects with a tabular or JSON form.
#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Alignment(&'a AlignmentTable),
    Diff(&'a PhaseDiff),
    Cooccur(&'a CooccurMatrix),
    TermDoc(&'a TermDocMatrix),
}

impl Table<'_> {
    fn name(&self) -> &'static str {
        match self {
            Table::Alignment(_) => "alignment table",
            Table::Diff(_) => "phase diff",
            Table::Cooccur(_) => "co-occurrence matrix",
            Table::TermDoc(_) => "term-document matrix",
        }
    }
}

pub fn export_table(t: Table<'_>, format: ExportFormat) -> Result<Vec<u8>> {
    let unsupported = || Error::UnsupportedFormat {
        object: t.name(),
        format: format.name(),
    };
    match (format, t) {
        (ExportFormat::Csv, Table::Alignment(a)) => alignment_csv(a),
        (ExportFormat::Csv, Table::Cooccur(m)) => dense_csv(m.keys(), m.keys(), &m.to_dense()),
        (ExportFormat::Csv, Table::TermDoc(x)) => {
            dense_csv(x.rows(), x.vocab().terms(), &x.to_dense())
        }
        (ExportFormat::Json, Table::Alignment(a)) => sorted_json(a),
        (ExportFormat::Json, Table::Diff(d)) => sorted_json(d),
        (ExportFormat::Json, Table::Cooccur(m)) => sorted_json(&serde_json::json!({
            "keys": m.keys(),
            "kind": m.kind(),
            "mode": m.mode(),
            "entries": m.to_dense(),
        })),
        (ExportFormat::Json, Table::TermDoc(x)) => sorted_json(&serde_json::json!({
            "rows": x.rows(),
            "terms": x.vocab().terms(),
            "mode": x.mode(),
            "entries": x.to_dense(),
        })),
        _ => Err(unsupported()),
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner().map_err(|e| Error::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn alignment_csv(t: &AlignmentTable) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    w.write_record(["rank", "author", "weight"])
        .map_err(csv_err)?;
    for (i, r) in t.rows.iter().enumerate() {
        w.write_record([(i + 1).to_string(), r.author.clone(), r.weight.to_string()])
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

fn dense_csv(rows: &[String], cols: &[String], dense: &[Vec<u64>]) -> Result<Vec<u8>> {
    let mut w = csv_writer();
    let header: Vec<&str> = std::iter::once("")
        .chain(cols.iter().map(String::as_str))
        .collect();
    w.write_record(&header).map_err(csv_err)?;
    for (key, row) in rows.iter().zip(dense) {
        let record: Vec<String> = std::iter::once(key.clone())
            .chain(row.iter().map(u64::to_string))
            .collect();
        w.write_record(&record).map_err(csv_err)?;
    }
    finish_csv(w)
}

// Round-tripping through `Value` sorts object keys.
fn sorted_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = serde_json::to_vec_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    // avoid "-0.000"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000".to_string()
    } else {
        s
    }
}

fn dot_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn graph_to_dot(g: &CoGraph, cfg: &ExportConfig) -> String {
    let mut out = String::from("graph \"cooccurrence\" {\n");
    let _ = writeln!(out, "  graph [min_weight={}];", g.min_weight());
    for n in g.nodes() {
        let _ = writeln!(out, "  {} [strength={}];", dot_id(&n.label), n.strength);
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [weight={}, penwidth={}];",
            dot_id(&e.a),
            dot_id(&e.b),
            e.weight,
            num(e.weight as f64 * cfg.edge_width_scale)
        );
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn graph_to_graphml(g: &CoGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
    );
    out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
    out.push_str(
        "  <key id=\"strength\" for=\"node\" attr.name=\"strength\" attr.type=\"long\"/>\n",
    );
    out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n");
    out.push_str("  <graph id=\"cooccurrence\" edgedefault=\"undirected\">\n");
    for n in g.nodes() {
        let id = xml_escape(&n.label);
        let _ = writeln!(
            out,
            "    <node id=\"{id}\"><data key=\"label\">{id}</data><data key=\"strength\">{}</data></node>",
            n.strength
        );
    }
    for (i, e) in g.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"{}\" target=\"{}\"><data key=\"weight\">{}</data></edge>",
            xml_escape(&e.a),
            xml_escape(&e.b),
            e.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

fn graph_to_json(g: &CoGraph) -> String {
    let doc = GraphJson {
        nodes: g.nodes().to_vec(),
        edges: g.edges().to_vec(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

/// Parses the JSON graph form. The threshold is not part of that form and
/// must be supplied.
pub fn graph_from_json(bytes: &[u8], min_weight: u64) -> Result<CoGraph> {
    let doc: GraphJson = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let isolated: Vec<String> = doc.nodes.iter().map(|n| n.label.clone()).collect();
    let g = CoGraph::from_edges(doc.edges, isolated, min_weight)?;
    if g.nodes() != doc.nodes.as_slice() {
        return Err(Error::Parse(
            "node strengths or order disagree with the edge list".into(),
        ));
    }
    Ok(g)
}

pub const SVG_SIZE: f64 = 800.0;
const SVG_LAYOUT_RADIUS: f64 = 300.0;

/// Position of the `i`-th of `n` nodes: clockwise from the top.
pub fn circular_position(i: usize, n: usize) -> (f64, f64) {
    let c = SVG_SIZE / 2.0;
    if n <= 1 {
        return (c, c);
    }
    let theta = 2.0 * PI * i as f64 / n as f64;
    (
        c + SVG_LAYOUT_RADIUS * theta.sin(),
        c - SVG_LAYOUT_RADIUS * theta.cos(),
    )
}

fn graph_to_svg(g: &CoGraph, cfg: &ExportConfig) -> String {
    let n = g.nodes().len();
    let pos: std::collections::HashMap<&str, (f64, f64)> = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, node)| (node.label.as_str(), circular_position(i, n)))
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">",
        s = SVG_SIZE
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str("<g stroke=\"#4a6fa5\" stroke-opacity=\"0.6\">\n");
    for e in g.edges() {
        let (x1, y1) = pos[e.a.as_str()];
        let (x2, y2) = pos[e.b.as_str()];
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\"><title>{} -- {}: {}</title></line>",
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(e.weight as f64 * cfg.edge_width_scale),
            xml_escape(&e.a),
            xml_escape(&e.b),
            e.weight
        );
    }
    out.push_str("</g>\n<g fill=\"#e07a5f\" stroke=\"#3d405b\" stroke-width=\"1\">\n");
    for node in g.nodes() {
        let (x, y) = pos[node.label.as_str()];
        let r = cfg.node_size_scale * (node.strength as f64).sqrt();
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"><title>{}: {}</title></circle>",
            num(x),
            num(y),
            num(r),
            xml_escape(&node.label),
            node.strength
        );
    }
    out.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222\">\n");
    for node in g.nodes() {
        let (x, y) = pos[node.label.as_str()];
        let r = cfg.node_size_scale * (node.strength as f64).sqrt();
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            num(x),
            num(y - r - 4.0),
            xml_escape(&node.label)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
