//! Pipeline configuration: defaults, then the JSON config file, then flags.

use std::path::{Path, PathBuf};

use clap::Args;
use cooccur::graph::CommunityMethod;
use cooccur::matrix::{CountMode, RowGrouping};
use cooccur::textprep::{read_keywords, read_stopwords, PrepConfig};
use cooccur::{AnalysisOptions, ExportConfig, ExportFormat};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::Failure;

fn parse_enum<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<ExportFormat, String> {
    s.trim().parse::<ExportFormat>().map_err(|e| e.to_string())
}

/// Config file contents. Every field is optional; relative paths resolve
/// against the file's directory.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub corpus_path: Option<PathBuf>,
    pub stopwords_path: Option<PathBuf>,
    pub keywords_path: Option<PathBuf>,
    pub mode: Option<CountMode>,
    pub row_grouping: Option<RowGrouping>,
    pub alignment_mode: Option<CountMode>,
    pub min_weight: Option<u64>,
    pub min_term_frequency: Option<usize>,
    pub min_term_length: Option<usize>,
    pub lowercase: Option<bool>,
    pub teacher: Option<String>,
    pub central_k: Option<usize>,
    pub community_method: Option<CommunityMethod>,
    pub keep_isolated: Option<bool>,
    pub output_dir: Option<PathBuf>,
    pub formats: Option<Vec<ExportFormat>>,
    pub edge_width_scale: Option<f64>,
    pub node_size_scale: Option<f64>,
}

/// Flags shared by the pipeline subcommands. Names mirror the config keys.
#[derive(Debug, Default, Args)]
pub struct PipelineArgs {
    /// JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSONL corpus (doc_id, author, phase, text per line)
    #[arg(long)]
    pub corpus_path: Option<PathBuf>,
    /// Stopword list, one token per line; defaults to a small English list
    #[arg(long)]
    pub stopwords_path: Option<PathBuf>,
    /// Keyword phrases, one per line
    #[arg(long)]
    pub keywords_path: Option<PathBuf>,
    /// frequency | presence
    #[arg(long, value_parser = parse_enum::<CountMode>)]
    pub mode: Option<CountMode>,
    /// per_document | per_author
    #[arg(long, value_parser = parse_enum::<RowGrouping>)]
    pub row_grouping: Option<RowGrouping>,
    /// Count mode of the author matrix used for teacher alignment
    #[arg(long, value_parser = parse_enum::<CountMode>)]
    pub alignment_mode: Option<CountMode>,
    /// Drop graph edges lighter than this
    #[arg(long)]
    pub min_weight: Option<u64>,
    /// Drop terms seen fewer times across the corpus
    #[arg(long)]
    pub min_term_frequency: Option<usize>,
    /// Drop tokens shorter than this many characters
    #[arg(long)]
    pub min_term_length: Option<usize>,
    /// Lowercase text before tokenizing (default true)
    #[arg(long)]
    pub lowercase: Option<bool>,
    /// Author id that alignment tables rank against
    #[arg(long)]
    pub teacher: Option<String>,
    /// How many top-strength nodes to report as central
    #[arg(long)]
    pub central_k: Option<usize>,
    /// components | label_propagation
    #[arg(long, value_parser = parse_enum::<CommunityMethod>)]
    pub community_method: Option<CommunityMethod>,
    /// Keep nodes that lose all their edges to the threshold
    #[arg(long)]
    pub keep_isolated: Option<bool>,
    /// Where artifacts are written (default "out")
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Comma-separated graph formats (dot,graphml,json,svg)
    #[arg(long, value_delimiter = ',', value_parser = parse_format)]
    pub formats: Option<Vec<ExportFormat>>,
    /// Multiplier for edge stroke width in DOT and SVG
    #[arg(long)]
    pub edge_width_scale: Option<f64>,
    /// Multiplier for node radius in SVG
    #[arg(long)]
    pub node_size_scale: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub corpus_path: PathBuf,
    pub stopwords_path: Option<PathBuf>,
    pub keywords_path: Option<PathBuf>,
    pub min_term_frequency: usize,
    pub min_term_length: usize,
    pub lowercase: bool,
    pub analysis: AnalysisOptions,
    pub output_dir: PathBuf,
    pub formats: Vec<ExportFormat>,
    pub edge_width_scale: f64,
    pub node_size_scale: f64,
}

fn resolve(base: Option<&Path>, p: PathBuf) -> PathBuf {
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p,
    }
}

impl PipelineConfig {
    pub fn load(args: PipelineArgs) -> Result<Self, Failure> {
        let (file, base) = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                let file: ConfigFile = serde_json::from_str(&text)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                (file, path.parent().map(Path::to_path_buf))
            }
            None => (ConfigFile::default(), None),
        };
        let base = base.as_deref();
        let from_file = |p: Option<PathBuf>| p.map(|p| resolve(base, p));

        let defaults = AnalysisOptions::default();
        let corpus_path = args
            .corpus_path
            .or_else(|| from_file(file.corpus_path))
            .ok_or_else(|| Failure::usage("no corpus given (--corpus-path or config)"))?;
        let cfg = PipelineConfig {
            corpus_path,
            stopwords_path: args
                .stopwords_path
                .or_else(|| from_file(file.stopwords_path)),
            keywords_path: args.keywords_path.or_else(|| from_file(file.keywords_path)),
            min_term_frequency: args
                .min_term_frequency
                .or(file.min_term_frequency)
                .unwrap_or(1),
            min_term_length: args.min_term_length.or(file.min_term_length).unwrap_or(1),
            lowercase: args.lowercase.or(file.lowercase).unwrap_or(true),
            analysis: AnalysisOptions {
                mode: args.mode.or(file.mode).unwrap_or(defaults.mode),
                row_grouping: args
                    .row_grouping
                    .or(file.row_grouping)
                    .unwrap_or(defaults.row_grouping),
                alignment_mode: args
                    .alignment_mode
                    .or(file.alignment_mode)
                    .unwrap_or(defaults.alignment_mode),
                min_weight: args
                    .min_weight
                    .or(file.min_weight)
                    .unwrap_or(defaults.min_weight),
                keep_isolated: args
                    .keep_isolated
                    .or(file.keep_isolated)
                    .unwrap_or(defaults.keep_isolated),
                teacher: args.teacher.or(file.teacher).unwrap_or(defaults.teacher),
                central_k: args
                    .central_k
                    .or(file.central_k)
                    .unwrap_or(defaults.central_k),
                community_method: args
                    .community_method
                    .or(file.community_method)
                    .unwrap_or(defaults.community_method),
            },
            output_dir: args
                .output_dir
                .or_else(|| from_file(file.output_dir))
                .unwrap_or_else(|| PathBuf::from("out")),
            formats: args
                .formats
                .or(file.formats)
                .unwrap_or_else(|| ExportFormat::GRAPH_FORMATS.to_vec()),
            edge_width_scale: args
                .edge_width_scale
                .or(file.edge_width_scale)
                .unwrap_or(1.0),
            node_size_scale: args.node_size_scale.or(file.node_size_scale).unwrap_or(4.0),
        };
        cfg.analysis.validate().map_err(Failure::from_input)?;
        if cfg.formats.contains(&ExportFormat::Csv) {
            return Err(Failure::input("graphs cannot be exported as csv"));
        }
        for f in &cfg.formats {
            cfg.export_config(*f)
                .validate()
                .map_err(Failure::from_input)?;
        }
        Ok(cfg)
    }

    pub fn export_config(&self, format: ExportFormat) -> ExportConfig {
        ExportConfig {
            format,
            edge_width_scale: self.edge_width_scale,
            node_size_scale: self.node_size_scale,
        }
    }

    pub fn prep_config(&self) -> Result<PrepConfig, Failure> {
        let mut builder = PrepConfig::builder()
            .lowercase(self.lowercase)
            .min_term_frequency(self.min_term_frequency)
            .min_term_length(self.min_term_length);
        if let Some(p) = &self.stopwords_path {
            builder = builder.stopwords(read_stopwords(p).map_err(Failure::from_input)?);
        }
        if let Some(p) = &self.keywords_path {
            builder = builder.keywords(read_keywords(p).map_err(Failure::from_input)?);
        }
        builder.build().map_err(Failure::from_input)
    }
}
