use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use cooccur::export::{export_graph, export_table, write_atomic, ExportFormat, Table};
use cooccur::pipeline::{analyze_corpus, PhaseAnalysis};
use cooccur::textprep::prep_corpus;
use cooccur::{align, diff_phases, load_corpus, AlignmentTable, Corpus};
use serde_json::json;

use crate::config::{PipelineArgs, PipelineConfig};
use crate::Failure;

type Artifacts = BTreeMap<PathBuf, Vec<u8>>;

fn load_inputs(args: PipelineArgs) -> Result<(PipelineConfig, Corpus), Failure> {
    let cfg = PipelineConfig::load(args)?;
    let corpus = load_corpus(&cfg.corpus_path).map_err(Failure::from_input)?;
    if corpus.is_empty() {
        return Err(Failure::input(format!(
            "{}: corpus has no documents",
            cfg.corpus_path.display()
        )));
    }
    Ok((cfg, corpus))
}

fn check_dir_name(phase: &str) -> Result<(), Failure> {
    let bad = phase == "."
        || phase == ".."
        || phase == cooccur::pipeline::UNION_LABEL
        || phase.contains(['/', '\\', '\0']);
    if bad {
        return Err(Failure::input(format!(
            "phase label {phase:?} cannot be used as a directory name"
        )));
    }
    Ok(())
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("json value serializes");
    out.push(b'\n');
    out
}

fn empty_alignment(cfg: &PipelineConfig, phase: &str) -> AlignmentTable {
    AlignmentTable {
        reference: cfg.analysis.teacher.clone(),
        phase: phase.to_string(),
        rows: Vec::new(),
    }
}

fn slice_artifacts(
    cfg: &PipelineConfig,
    slice: &PhaseAnalysis,
    docs: usize,
    out: &mut Artifacts,
) -> Result<(), Failure> {
    let dir = PathBuf::from(&slice.label);
    let mut put = |name: String, bytes: Vec<u8>| {
        out.insert(dir.join(name), bytes);
    };
    let table = |t: Table<'_>, f| export_table(t, f).map_err(Failure::from_input);

    put(
        "term_doc.csv".into(),
        table(Table::TermDoc(&slice.term_doc), ExportFormat::Csv)?,
    );
    put(
        "term_cooccurrence.csv".into(),
        table(Table::Cooccur(&slice.term_matrix), ExportFormat::Csv)?,
    );
    put(
        "row_cooccurrence.csv".into(),
        table(Table::Cooccur(&slice.row_matrix), ExportFormat::Csv)?,
    );
    for &format in &cfg.formats {
        let ec = cfg.export_config(format);
        put(
            format!("term_graph.{}", format.extension()),
            export_graph(&slice.term_graph, &ec).map_err(Failure::from_input)?,
        );
        put(
            format!("row_graph.{}", format.extension()),
            export_graph(&slice.row_graph, &ec).map_err(Failure::from_input)?,
        );
    }
    let fallback = empty_alignment(cfg, &slice.label);
    let alignment = slice.alignment.as_ref().unwrap_or(&fallback);
    put(
        "alignment.csv".into(),
        table(Table::Alignment(alignment), ExportFormat::Csv)?,
    );

    let summary = json!({
        "label": slice.label,
        "documents": docs,
        "rows": slice.term_doc.n_rows(),
        "vocabulary_size": slice.term_doc.n_cols(),
        "mode": slice.term_doc.mode(),
        "row_grouping": cfg.analysis.row_grouping,
        "min_weight": cfg.analysis.min_weight,
        "central_k": cfg.analysis.central_k,
        "central_terms": slice.central_terms,
        "central_rows": slice.central_rows,
        "community_method": slice.term_communities.method,
        "term_communities": slice.term_communities.communities,
        "row_communities": slice.row_communities.communities,
        "term_graph": {"nodes": slice.term_graph.nodes().len(), "edges": slice.term_graph.edges().len()},
        "row_graph": {"nodes": slice.row_graph.nodes().len(), "edges": slice.row_graph.edges().len()},
        "teacher": cfg.analysis.teacher,
        "alignment_mode": cfg.analysis.alignment_mode,
        "teacher_present": slice.alignment.is_some(),
    });
    put("summary.json".into(), json_bytes(&summary));
    Ok(())
}

fn write_all(root: &Path, artifacts: &Artifacts) -> Result<(), Failure> {
    for (rel, bytes) in artifacts {
        write_atomic(&root.join(rel), bytes).map_err(Failure::from_output)?;
    }
    Ok(())
}

pub fn analyze(args: PipelineArgs) -> Result<(), Failure> {
    let (cfg, corpus) = load_inputs(args)?;
    for p in corpus.phases() {
        check_dir_name(p)?;
    }
    let prep = cfg.prep_config()?;
    let analysis = analyze_corpus(&corpus, &prep, &cfg.analysis).map_err(Failure::from_input)?;

    let mut artifacts = Artifacts::new();
    slice_artifacts(&cfg, &analysis.union, corpus.len(), &mut artifacts)?;
    for slice in &analysis.phases {
        let docs = corpus
            .documents()
            .iter()
            .filter(|d| d.phase == slice.label)
            .count();
        slice_artifacts(&cfg, slice, docs, &mut artifacts)?;
    }
    write_all(&cfg.output_dir, &artifacts)?;
    eprintln!(
        "wrote {} files for {} phase(s) to {}",
        artifacts.len(),
        analysis.phases.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

pub fn diff(args: PipelineArgs, phase_a: &str, phase_b: &str) -> Result<(), Failure> {
    let (cfg, corpus) = load_inputs(args)?;
    let prep = cfg.prep_config()?;
    let d = diff_phases(&corpus, phase_a, phase_b, &prep, &cfg.analysis)
        .map_err(Failure::from_input)?;
    let json = export_table(Table::Diff(&d), ExportFormat::Json).map_err(Failure::from_input)?;
    let text = d.summary_text();
    let stem = format!("diff_{phase_a}_{phase_b}");
    check_dir_name(&stem)?;
    let mut artifacts = Artifacts::new();
    artifacts.insert(PathBuf::from(format!("{stem}.json")), json);
    artifacts.insert(
        PathBuf::from(format!("{stem}.txt")),
        text.clone().into_bytes(),
    );
    write_all(&cfg.output_dir, &artifacts)?;
    print!("{text}");
    Ok(())
}

pub fn rank(path: &Path, teacher: &str) -> Result<(), Failure> {
    let input = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let weights = align::parse_weights_csv(&input)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let table = align::rank_table(&weights, teacher).map_err(Failure::from_input)?;
    let csv =
        export_table(Table::Alignment(&table), ExportFormat::Csv).map_err(Failure::from_input)?;
    std::io::stdout()
        .write_all(&csv)
        .map_err(|e| Failure::output(e.to_string()))
}

pub fn tokenize(args: PipelineArgs) -> Result<(), Failure> {
    let (cfg, corpus) = load_inputs(args)?;
    let prep = cfg.prep_config()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for seq in prep_corpus(&corpus, &prep) {
        let line = serde_json::to_string(&seq).expect("token sequence serializes");
        writeln!(out, "{line}").map_err(|e| Failure::output(e.to_string()))?;
    }
    Ok(())
}
