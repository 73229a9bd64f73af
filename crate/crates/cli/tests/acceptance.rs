//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Run with `cargo test -p cooccur-cli --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cooccur::export::graph_from_json;
use cooccur::matrix::{
    build_term_doc, row_cooccurrence, term_cooccurrence, CooccurMatrix, CountMode, RowGrouping,
};
use cooccur::pipeline::{analyze_corpus, analyze_slice, select_seqs, AnalysisOptions};
use cooccur::textprep::{parse_keywords, parse_stopwords, prep_corpus, PrepConfig, TokenSeq};
use cooccur::{
    alignment, build_graph, central_nodes, diff_phases, AuthorId, Corpus, Document, Vocabulary,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const BIN: &str = env!("CARGO_BIN_EXE_cooccur");

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

// ---------------------------------------------------------------- 1

fn published_column(csv: &str, published: &str) -> Result<(), String> {
    let out = Command::new(BIN)
        .args(["rank", fixture(csv).to_str().unwrap(), "--teacher", "0"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "rank exited with {:?}",
        out.status.code()
    );
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = stdout.lines();
    ensure!(lines.next() == Some("rank,author,weight"), "bad header");
    let ranked: Vec<(usize, String, u64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].to_string(),
                f[2].parse().unwrap(),
            )
        })
        .collect();

    let weights: BTreeMap<String, u64> = std::fs::read_to_string(fixture(csv))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let (a, w) = l.split_once(',').unwrap();
            (a.to_string(), w.parse().unwrap())
        })
        .collect();
    let published_rows: Vec<String> = std::fs::read_to_string(fixture(published))
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    ensure!(
        ranked.len() == published_rows.len(),
        "{} rows vs {}",
        ranked.len(),
        published_rows.len()
    );
    for (i, (rank, _, _)) in ranked.iter().enumerate() {
        ensure!(*rank == i + 1, "rank column not 1..n");
    }

    // Same weight sequence, and identical author sets inside each weight group.
    let ours_w: Vec<u64> = ranked.iter().map(|r| r.2).collect();
    let published_w: Vec<u64> = published_rows.iter().map(|a| weights[a]).collect();
    ensure!(ours_w == published_w, "weight sequence differs");
    let mut i = 0;
    while i < ranked.len() {
        let j = (i..ranked.len())
            .find(|&j| ours_w[j] != ours_w[i])
            .unwrap_or(ranked.len());
        let a: BTreeSet<&str> = ranked[i..j].iter().map(|r| r.1.as_str()).collect();
        let b: BTreeSet<&str> = published_rows[i..j].iter().map(String::as_str).collect();
        ensure!(
            a == b,
            "tie group at rank {} differs: {a:?} vs {b:?}",
            i + 1
        );
        i = j;
    }
    let ours: Vec<&str> = ranked.iter().map(|r| r.1.as_str()).collect();
    let n = ours.len();
    ensure!(
        ours[..3] == published_rows[..3],
        "top-3 {:?} vs {:?}",
        &ours[..3],
        &published_rows[..3]
    );
    ensure!(ours[n - 3..] == published_rows[n - 3..], "bottom-3 differs");
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    published_column(
        "alignment_initial.csv",
        "alignment_initial_published_order.txt",
    )?;
    published_column("alignment_group.csv", "alignment_group_published_order.txt")?;
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "both columns reproduce the published order ({took:?})"
    ))
}

// ---------------------------------------------------------------- 2-4

struct RandomCorpus {
    corpus: Corpus,
    seqs: Vec<TokenSeq>,
    /// per canonical document: term -> count
    counts: Vec<BTreeMap<String, u64>>,
}

fn random_corpus(seed: u64) -> RandomCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_docs = rng.gen_range(1..=10);
    let n_terms = rng.gen_range(1..=30);
    let mut docs = Vec::new();
    let mut raw = BTreeMap::new();
    for i in 0..n_docs {
        let id = format!("d{i}");
        let mut counts = BTreeMap::new();
        for t in 0..n_terms {
            if rng.gen_bool(0.3) {
                counts.insert(format!("term{t}"), rng.gen_range(1..=5u64));
            }
        }
        docs.push(Document {
            doc_id: id.clone(),
            author: AuthorId::new(rng.gen_range(0..6u32).to_string()).unwrap(),
            phase: "p".into(),
            text: String::new(),
        });
        raw.insert(id, counts);
    }
    let corpus = Corpus::from_documents(docs).unwrap();
    let mut seqs = Vec::new();
    let mut counts = Vec::new();
    for d in corpus.documents() {
        let c: BTreeMap<String, u64> = raw[&d.doc_id].clone();
        let mut tokens: Vec<String> = c
            .iter()
            .flat_map(|(t, &n)| std::iter::repeat_n(t.clone(), n as usize))
            .collect();
        // interleave so counting cannot rely on adjacency
        tokens.sort_by_key(|t| (t.len() * 7919 + t.bytes().map(usize::from).sum::<usize>()) % 13);
        seqs.push(TokenSeq {
            doc_id: d.doc_id.clone(),
            tokens,
        });
        counts.push(c);
    }
    RandomCorpus {
        corpus,
        seqs,
        counts,
    }
}

const MODES: [CountMode; 2] = [CountMode::Presence, CountMode::Frequency];

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for seed in 0..200 {
        let rc = random_corpus(seed);
        for mode in MODES {
            let presence = mode == CountMode::Presence;
            let x = build_term_doc(&rc.seqs, mode, RowGrouping::PerDocument, &rc.corpus)
                .map_err(|e| e.to_string())?;
            let tt = term_cooccurrence(&x);
            // pairwise document scan
            for (i, s) in tt.keys().iter().enumerate() {
                for (j, t) in tt.keys().iter().enumerate() {
                    let mut expect = 0;
                    for doc in &rc.counts {
                        if let (Some(a), Some(b)) = (doc.get(s), doc.get(t)) {
                            expect += if presence { 1 } else { a * b };
                        }
                    }
                    ensure!(tt.get(i, j) == expect, "seed {seed} {mode}: XᵀX[{s},{t}]");
                    checked += 1;
                }
            }
            // explicit dot products
            let rr = row_cooccurrence(&x);
            for i in 0..rc.counts.len() {
                for j in 0..rc.counts.len() {
                    let expect: u64 = rc.counts[i]
                        .iter()
                        .filter_map(|(t, a)| {
                            rc.counts[j]
                                .get(t)
                                .map(|b| if presence { 1 } else { a * b })
                        })
                        .sum();
                    ensure!(rr.get(i, j) == expect, "seed {seed} {mode}: XXᵀ[{i},{j}]");
                    checked += 1;
                }
            }
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("200 corpora, {checked} entries exact ({took:?})"))
}

fn quad_form(m: &CooccurMatrix, v: &[i64]) -> i128 {
    let mut total = 0i128;
    for i in 0..m.len() {
        for (&j, &w) in m.row(i) {
            total += v[i] as i128 * w as i128 * v[j] as i128;
        }
    }
    total
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut vectors = 0usize;
    for seed in 0..200 {
        let rc = random_corpus(seed);
        for mode in MODES {
            let x = build_term_doc(&rc.seqs, mode, RowGrouping::PerDocument, &rc.corpus)
                .map_err(|e| e.to_string())?;
            let tt = term_cooccurrence(&x);
            let rr = row_cooccurrence(&x);
            for m in [&tt, &rr] {
                for i in 0..m.len() {
                    for j in 0..m.len() {
                        ensure!(
                            m.get(i, j) == m.get(j, i),
                            "seed {seed}: asymmetric at ({i},{j})"
                        );
                    }
                }
                for _ in 0..100 {
                    let v: Vec<i64> = (0..m.len()).map(|_| rng.gen_range(-20..=20)).collect();
                    ensure!(quad_form(m, &v) >= 0, "seed {seed}: negative vᵀMv");
                    vectors += 1;
                }
            }
            if mode == CountMode::Presence {
                for (c, term) in tt.keys().iter().enumerate() {
                    let df = rc.counts.iter().filter(|d| d.contains_key(term)).count() as u64;
                    ensure!(tt.get(c, c) == df, "seed {seed}: df({term})");
                }
                for (r, doc) in rc.counts.iter().enumerate() {
                    ensure!(
                        rr.get(r, r) == doc.len() as u64,
                        "seed {seed}: distinct terms of row {r}"
                    );
                }
            }
        }
    }
    Ok(format!(
        "symmetry, {vectors} quadratic forms, diagonal identities"
    ))
}

fn criterion_4() -> Outcome {
    for seed in 0..200 {
        let rc = random_corpus(seed);
        for mode in MODES {
            let x = build_term_doc(&rc.seqs, mode, RowGrouping::PerDocument, &rc.corpus)
                .map_err(|e| e.to_string())?;
            for m in [term_cooccurrence(&x), row_cooccurrence(&x)] {
                let mut prev: Option<BTreeSet<(String, String, u64)>> = None;
                for w in 1..=5 {
                    let g = build_graph(&m, w, false).map_err(|e| e.to_string())?;
                    let edges: BTreeSet<_> = g
                        .edges()
                        .iter()
                        .map(|e| (e.a.clone(), e.b.clone(), e.weight))
                        .collect();
                    if let Some(p) = &prev {
                        ensure!(edges.is_subset(p), "seed {seed}: threshold {w} adds edges");
                    }
                    ensure!(
                        edges.iter().all(|e| e.2 >= w),
                        "seed {seed}: light edge kept"
                    );
                    for n in g.nodes() {
                        let s: u64 = edges
                            .iter()
                            .filter(|e| e.0 == n.label || e.1 == n.label)
                            .map(|e| e.2)
                            .sum();
                        ensure!(s == n.strength, "seed {seed}: strength of {}", n.label);
                    }
                    prev = Some(edges);
                }
            }
        }
    }
    Ok("edge sets shrink monotonically for min_weight 1..5".into())
}

// ---------------------------------------------------------------- 5

fn two_phase_corpus(seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = [
        "us",
        "metaverse",
        "value",
        "experience",
        "blockchain",
        "token",
        "learning",
        "group",
    ];
    let mut lines = Vec::new();
    for (phase, n) in [
        ("initial", rng.gen_range(2..=8)),
        ("group", rng.gen_range(2..=8)),
    ] {
        for i in 0..n {
            let len = rng.gen_range(0..=8);
            let text: Vec<&str> = (0..len)
                .map(|_| words[rng.gen_range(0..words.len())])
                .collect();
            let author = if i == 0 { 0 } else { rng.gen_range(0..6) };
            lines.push(
                serde_json::json!({
                    "doc_id": format!("{phase}-{i}"),
                    "author": author.to_string(),
                    "phase": phase,
                    "text": text.join(" "),
                })
                .to_string(),
            );
        }
    }
    Corpus::from_jsonl_str(&lines.join("\n")).unwrap()
}

fn criterion_5() -> Outcome {
    let prep = PrepConfig::builder()
        .stopwords(Vec::<String>::new())
        .build()
        .unwrap();
    for seed in 0..50 {
        let corpus = two_phase_corpus(seed);
        let opts = AnalysisOptions {
            min_weight: 1 + seed % 2,
            ..AnalysisOptions::default()
        };
        let ab =
            diff_phases(&corpus, "initial", "group", &prep, &opts).map_err(|e| e.to_string())?;
        let ba =
            diff_phases(&corpus, "group", "initial", &prep, &opts).map_err(|e| e.to_string())?;
        ensure!(
            ab.reversed() == ba,
            "seed {seed}: diff(a,b) and diff(b,a) are not mirrors"
        );
        let aa =
            diff_phases(&corpus, "initial", "initial", &prep, &opts).map_err(|e| e.to_string())?;
        ensure!(aa.is_empty(), "seed {seed}: self-diff not empty");
        ensure!(
            aa.central.added.is_empty() && aa.central.removed.is_empty(),
            "seed {seed}"
        );

        // Central sets recomputed per phase on the shared vocabulary.
        let joint = corpus.filter_phases(&["initial", "group"]).unwrap();
        let seqs = prep_corpus(&joint, &prep);
        let vocab = Vocabulary::from_seqs(&seqs);
        let central = |p: &str| -> BTreeSet<String> {
            let sub = joint.filter_phase(p).unwrap();
            let s = select_seqs(&sub, &seqs).unwrap();
            let a = analyze_slice(p, &sub, &s, &vocab, &opts).unwrap();
            a.central_terms.into_iter().collect()
        };
        let (ca, cb) = (central("initial"), central("group"));
        let c = &ab.central;
        ensure!(
            c.added.is_disjoint(&c.removed),
            "seed {seed}: added ∩ removed"
        );
        ensure!(
            c.retained.is_disjoint(&c.added),
            "seed {seed}: retained ∩ added"
        );
        ensure!(
            c.retained.is_disjoint(&c.removed),
            "seed {seed}: retained ∩ removed"
        );
        let b_side: BTreeSet<String> = c.added.union(&c.retained).cloned().collect();
        let a_side: BTreeSet<String> = c.removed.union(&c.retained).cloned().collect();
        ensure!(b_side == cb, "seed {seed}: added ∪ retained ≠ central(b)");
        ensure!(a_side == ca, "seed {seed}: removed ∪ retained ≠ central(a)");
        let pairs: BTreeSet<(&str, &str)> = ab
            .edges
            .iter()
            .map(|e| (e.a.as_str(), e.b.as_str()))
            .collect();
        ensure!(
            pairs.len() == ab.edges.len(),
            "seed {seed}: duplicate edge delta"
        );
    }
    Ok("50 two-phase corpora: mirror, self-diff, partition".into())
}

// ---------------------------------------------------------------- 6

fn read_tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                out.insert(
                    p.strip_prefix(root).unwrap().to_path_buf(),
                    std::fs::read(&p).unwrap(),
                );
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

fn run_demo(out: &Path) -> Result<(), String> {
    let status = Command::new(BIN)
        .arg("analyze")
        .arg("--config")
        .arg(repo_path("data/demo/config.json"))
        .arg("--output-dir")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        status.status.success(),
        "analyze failed: {}",
        String::from_utf8_lossy(&status.stderr)
    );
    Ok(())
}

fn check_graphml(text: &str, json_nodes: usize, json_edges: usize) -> Result<(), String> {
    let doc = roxmltree::Document::parse(text).map_err(|e| e.to_string())?;
    let ns = "http://graphml.graphdrawing.org/xmlns";
    let root = doc.root_element();
    ensure!(root.has_tag_name((ns, "graphml")), "root is not graphml");
    let keys: BTreeSet<&str> = root
        .children()
        .filter(|n| n.has_tag_name((ns, "key")))
        .filter_map(|n| n.attribute("id"))
        .collect();
    let graphs: Vec<_> = root
        .children()
        .filter(|n| n.has_tag_name((ns, "graph")))
        .collect();
    ensure!(graphs.len() == 1, "expected one graph element");
    let g = graphs[0];
    ensure!(
        g.attribute("edgedefault") == Some("undirected"),
        "edgedefault"
    );
    let mut ids = BTreeSet::new();
    let mut edges = 0;
    for child in g.children().filter(|n| n.is_element()) {
        for data in child.children().filter(|n| n.has_tag_name((ns, "data"))) {
            let key = data.attribute("key").unwrap_or("");
            ensure!(keys.contains(key), "data references undeclared key {key:?}");
        }
        if child.has_tag_name((ns, "node")) {
            ensure!(
                ids.insert(child.attribute("id").unwrap_or("").to_string()),
                "duplicate node id"
            );
        } else if child.has_tag_name((ns, "edge")) {
            for end in ["source", "target"] {
                let id = child.attribute(end).unwrap_or("");
                ensure!(ids.contains(id), "edge {end} {id:?} is not a declared node");
            }
            edges += 1;
        } else {
            return Err(format!("unexpected element {:?}", child.tag_name()));
        }
    }
    ensure!(
        ids.len() == json_nodes && edges == json_edges,
        "graphml and json disagree"
    );
    Ok(())
}

fn criterion_6() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_demo(&a)?;
    run_demo(&b)?;
    let (ta, tb) = (read_tree(&a), read_tree(&b));
    ensure!(!ta.is_empty(), "no output");
    ensure!(ta == tb, "output trees differ");

    // Library run with the demo configuration.
    let cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(repo_path("data/demo/config.json")).unwrap())
            .unwrap();
    let demo = |k: &str| {
        std::fs::read_to_string(repo_path(&format!(
            "data/demo/{}",
            cfg[k].as_str().unwrap()
        )))
        .unwrap()
    };
    let corpus = Corpus::from_jsonl_str(&demo("corpus_path")).map_err(|e| e.to_string())?;
    let prep = PrepConfig::builder()
        .stopwords(parse_stopwords(&demo("stopwords_path")))
        .keywords(parse_keywords(&demo("keywords_path")))
        .min_term_frequency(cfg["min_term_frequency"].as_u64().unwrap() as usize)
        .build()
        .unwrap();
    let min_weight = cfg["min_weight"].as_u64().unwrap();
    let opts = AnalysisOptions {
        min_weight,
        central_k: cfg["central_k"].as_u64().unwrap() as usize,
        teacher: cfg["teacher"].as_str().unwrap().to_string(),
        ..AnalysisOptions::default()
    };
    let lib = analyze_corpus(&corpus, &prep, &opts).map_err(|e| e.to_string())?;
    let slices: BTreeMap<&str, _> = std::iter::once(&lib.union)
        .chain(&lib.phases)
        .map(|s| (s.label.as_str(), s))
        .collect();

    let (mut dots, mut graphmls, mut jsons) = (0, 0, 0);
    for (rel, bytes) in &ta {
        let text = std::str::from_utf8(bytes).map_err(|e| format!("{}: {e}", rel.display()))?;
        ensure!(!text.contains('\r'), "{}: CRLF", rel.display());
        let slice = rel.parent().unwrap().to_str().unwrap();
        let stem = rel.file_stem().unwrap().to_str().unwrap();
        match rel.extension().and_then(|e| e.to_str()) {
            Some("dot") => {
                graphviz_rust::parse(text).map_err(|e| format!("{}: {e}", rel.display()))?;
                dots += 1;
            }
            Some("graphml") => {
                let json = &ta[&rel.with_extension("json")];
                let v: serde_json::Value = serde_json::from_slice(json).unwrap();
                check_graphml(
                    text,
                    v["nodes"].as_array().unwrap().len(),
                    v["edges"].as_array().unwrap().len(),
                )
                .map_err(|e| format!("{}: {e}", rel.display()))?;
                graphmls += 1;
            }
            Some("json") if stem.ends_with("_graph") => {
                let g = graph_from_json(bytes, min_weight).map_err(|e| e.to_string())?;
                let s = slices.get(slice).ok_or(format!("unknown slice {slice}"))?;
                let expect = if stem == "term_graph" {
                    &s.term_graph
                } else {
                    &s.row_graph
                };
                ensure!(
                    &g == expect,
                    "{}: differs from the library graph",
                    rel.display()
                );
                jsons += 1;
            }
            _ => {}
        }
    }
    ensure!(
        dots == 8 && graphmls == 8 && jsons == 8,
        "expected 8 graphs of each format"
    );
    Ok(format!(
        "{} files identical across runs; DOT/GraphML valid; JSON round-trips",
        ta.len()
    ))
}

// ---------------------------------------------------------------- 7

const THREE_DOCS: &str = r#"{"doc_id":"A","author":"1","phase":"initial","text":"metaverse value exchange"}
{"doc_id":"B","author":"2","phase":"initial","text":"metaverse experience"}
{"doc_id":"T","author":"0","phase":"initial","text":"metaverse value blockchain"}
"#;

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let corpus = Corpus::from_jsonl_str(THREE_DOCS).map_err(|e| e.to_string())?;
    let prep = PrepConfig::builder()
        .stopwords(Vec::<String>::new())
        .build()
        .unwrap();
    let seqs = prep_corpus(&corpus, &prep);
    let x = build_term_doc(
        &seqs,
        CountMode::Presence,
        RowGrouping::PerDocument,
        &corpus,
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        x.vocab().terms() == ["blockchain", "exchange", "experience", "metaverse", "value"],
        "vocabulary {:?}",
        x.vocab().terms()
    );
    let row = |id: &str| x.to_dense()[x.rows().iter().position(|r| r == id).unwrap()].clone();
    ensure!(row("A") == [0, 1, 0, 1, 1], "row A");
    ensure!(row("B") == [0, 0, 1, 1, 0], "row B");
    ensure!(row("T") == [1, 0, 0, 1, 1], "row T");

    let xtx = term_cooccurrence(&x);
    let expect_xtx = vec![
        vec![1, 0, 0, 1, 1],
        vec![0, 1, 0, 1, 1],
        vec![0, 0, 1, 1, 0],
        vec![1, 1, 1, 3, 2],
        vec![1, 1, 0, 2, 2],
    ];
    ensure!(xtx.to_dense() == expect_xtx, "XᵀX {:?}", xtx.to_dense());
    let xxt = row_cooccurrence(&x);
    for (a, b, w) in [
        ("A", "B", 1),
        ("A", "T", 2),
        ("B", "T", 1),
        ("A", "A", 3),
        ("B", "B", 2),
        ("T", "T", 3),
    ] {
        ensure!(xxt.entry(a, b) == Some(w), "XXᵀ[{a},{b}]");
    }

    let g1 = build_graph(&xtx, 1, false).map_err(|e| e.to_string())?;
    let strengths: Vec<(&str, u64)> = g1
        .nodes()
        .iter()
        .map(|n| (n.label.as_str(), n.strength))
        .collect();
    ensure!(g1.edges().len() == 6, "edges at min_weight 1");
    ensure!(
        strengths
            == [
                ("metaverse", 5),
                ("value", 4),
                ("blockchain", 2),
                ("exchange", 2),
                ("experience", 1)
            ],
        "strengths {strengths:?}"
    );
    ensure!(
        central_nodes(&g1, 2) == ["metaverse", "value"],
        "central nodes"
    );
    let g2 = build_graph(&xtx, 2, false).map_err(|e| e.to_string())?;
    ensure!(
        g2.edges().len() == 1
            && g2.edges()[0].a == "metaverse"
            && g2.edges()[0].b == "value"
            && g2.edges()[0].weight == 2,
        "graph at min_weight 2"
    );

    let ax = build_term_doc(&seqs, CountMode::Frequency, RowGrouping::PerAuthor, &corpus)
        .map_err(|e| e.to_string())?;
    let table = alignment(&row_cooccurrence(&ax), "0", "initial").map_err(|e| e.to_string())?;
    let rows: Vec<(&str, u64)> = table
        .rows
        .iter()
        .map(|r| (r.author.as_str(), r.weight))
        .collect();
    ensure!(rows == [("1", 2), ("2", 1)], "alignment {rows:?}");
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "X, XᵀX, XXᵀ, graph, central nodes, alignment ({took:?})"
    ))
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 7] = [
        ("published ranking replay", criterion_1),
        ("oracle equivalence", criterion_2),
        ("Gram properties", criterion_3),
        ("threshold monotonicity", criterion_4),
        ("diff algebra", criterion_5),
        ("determinism and formats", criterion_6),
        ("three-document example end to end", criterion_7),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(why) => {
                println!("[FAIL] {}. {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
