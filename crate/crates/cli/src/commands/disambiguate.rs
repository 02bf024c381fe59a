use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use scsmm_core::corpus::{document_contexts, parse_dataset, write_key_file, DocumentContext};
use scsmm_core::engine::{
    mfs_document, pedersen_document, wn1st_document, DocumentResult, Engine, EngineConfig, Provenance,
};
use scsmm_core::heuristics::{load_key_file_counts, HeuristicSource, HeuristicStore};
use scsmm_core::similarity::{CrossPosStrategy, Measure, Similarity, SimilarityConfig};
use scsmm_core::PosSet;

use super::{ic_table, load_graph, semcor_store, wordnet_dir, IcSource};
use crate::config::{ConfigFile, Switch};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    None,
    Wn1st,
    Mfs,
    Pedersen,
}

impl FromStr for Baseline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Baseline::None),
            "wn1st" => Ok(Baseline::Wn1st),
            "mfs" => Ok(Baseline::Mfs),
            "pedersen" => Ok(Baseline::Pedersen),
            _ => Err(format!("expected none, wn1st, mfs or pedersen, got `{s}`")),
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Baseline::None => "none",
            Baseline::Wn1st => "wn1st",
            Baseline::Mfs => "mfs",
            Baseline::Pedersen => "pedersen",
        })
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Dataset XML in the unified evaluation format.
    #[arg(long)]
    dataset: PathBuf,
    /// WordNet 3.0 database directory [env: WSD_WORDNET_DIR]
    #[arg(long)]
    wordnet: Option<PathBuf>,
    /// Settings file with `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sense-frequency heuristics: s (SemCor), so (SemCor + OMSTI) or off [default: s]
    #[arg(long)]
    heuristics: Option<HeuristicSource>,
    /// SemCor cntlist [default: <wordnet>/cntlist, else index.sense tag counts]
    #[arg(long)]
    semcor_cntlist: Option<PathBuf>,
    /// OMSTI key file, required by `--heuristics so`.
    #[arg(long)]
    omsti_keys: Option<PathBuf>,
    /// Information-content file, or `compute` to derive it from SemCor counts [default: compute]
    #[arg(long)]
    ic: Option<IcSource>,
    /// Similarity measure: path, lch, wup or jcn [default: jcn]
    #[arg(long)]
    sim: Option<Measure>,
    /// Cross-POS pairs: full-graph-path or zero [default: full-graph-path]
    #[arg(long)]
    cross_pos: Option<CrossPosStrategy>,
    /// JCN value for zero distance [default: 1e6]
    #[arg(long)]
    jcn_cap: Option<f64>,
    /// Divide every weighted matrix by its largest cell [default: on]
    #[arg(long)]
    normalize: Option<Switch>,
    /// Weight senses by similarity to the document context [default: on]
    #[arg(long)]
    doc_ctx: Option<Switch>,
    /// Resolve context-less terms once the whole document is done [default: on]
    #[arg(long)]
    doc_cf: Option<Switch>,
    /// Parts of speech to disambiguate [default: n,v,a,r]
    #[arg(long)]
    pos: Option<PosSet>,
    /// Parts of speech of document-context terms [default: n,v]
    #[arg(long)]
    doc_ctx_pos: Option<PosSet>,
    /// Run a reference system instead: none, wn1st, mfs or pedersen [default: none]
    #[arg(long)]
    baseline: Option<Baseline>,
    /// Minimum similarity counted by the pedersen baseline [default: 0]
    #[arg(long)]
    threshold: Option<f64>,
    /// Prediction file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; documents are processed in parallel [default: 1]
    #[arg(long)]
    jobs: Option<usize>,
}

/// Every setting after merging flags, config file and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub wordnet: PathBuf,
    pub heuristics: HeuristicSource,
    pub semcor_cntlist: Option<PathBuf>,
    pub omsti_keys: Option<PathBuf>,
    pub ic: IcSource,
    pub baseline: Baseline,
    pub threshold: f64,
    pub jobs: usize,
    pub engine: EngineConfig,
}

impl Settings {
    pub fn resolve(args: &Args, cfg: &ConfigFile) -> Result<Settings> {
        let defaults = EngineConfig::default();
        let similarity = SimilarityConfig {
            measure: cfg.resolve(args.sim, "sim", defaults.similarity.measure)?,
            jcn_cap: cfg.resolve(args.jcn_cap, "jcn-cap", defaults.similarity.jcn_cap)?,
            cross_pos: cfg.resolve(args.cross_pos, "cross-pos", defaults.similarity.cross_pos)?,
            normalize_per_matrix: cfg
                .resolve(args.normalize, "normalize", Switch(defaults.similarity.normalize_per_matrix))?
                .0,
        };
        let heuristics = cfg.resolve(args.heuristics, "heuristics", defaults.heuristic_source)?;
        let engine = EngineConfig {
            similarity,
            heuristic_source: heuristics,
            doc_ctx: cfg.resolve(args.doc_ctx, "doc-ctx", Switch(defaults.doc_ctx))?.0,
            doc_cf: cfg.resolve(args.doc_cf, "doc-cf", Switch(defaults.doc_cf))?.0,
            pos_of_interest: cfg.resolve(args.pos, "pos", defaults.pos_of_interest)?,
            doc_ctx_pos: cfg.resolve(args.doc_ctx_pos, "doc-ctx-pos", defaults.doc_ctx_pos)?,
        };
        let jobs = cfg.resolve(args.jobs, "jobs", 1)?;
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        Ok(Settings {
            wordnet: wordnet_dir(args.wordnet.clone(), cfg)?,
            heuristics,
            semcor_cntlist: args.semcor_cntlist.clone().or_else(|| cfg.get("semcor-cntlist").map(PathBuf::from)),
            omsti_keys: args.omsti_keys.clone().or_else(|| cfg.get("omsti-keys").map(PathBuf::from)),
            ic: cfg.resolve(args.ic.clone(), "ic", IcSource::Compute)?,
            baseline: cfg.resolve(args.baseline, "baseline", Baseline::None)?,
            threshold: cfg.resolve(args.threshold, "threshold", 0.0)?,
            jobs,
            engine,
        })
    }
}

fn write_summary(results: &DocumentResult, n_targets: usize, mut out: impl Write) -> io::Result<()> {
    let mut by_tag: BTreeMap<Provenance, usize> = BTreeMap::new();
    for p in &results.predictions {
        *by_tag.entry(p.provenance).or_default() += 1;
    }
    writeln!(out, "targets\t{n_targets}")?;
    writeln!(out, "predicted\t{}", results.predictions.len())?;
    for (tag, n) in by_tag {
        writeln!(out, "  {tag}\t{n}")?;
    }
    writeln!(out, "skipped\t{}", results.skipped.len())?;
    for id in &results.skipped {
        log::debug!("skipped {id}: lemma not in WordNet");
    }
    Ok(())
}

pub fn run(args: Args) -> Result<()> {
    let cfg = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let settings = Settings::resolve(&args, &cfg)?;
    log::info!("settings: {settings:?}");
    let graph = load_graph(&settings.wordnet)?;
    let docs = parse_dataset(&args.dataset)?;
    let n_targets = docs
        .iter()
        .flat_map(|d| d.targets())
        .filter(|t| t.pos.is_some_and(|p| settings.engine.pos_of_interest.contains(p)))
        .count();

    let measure = settings.engine.similarity.measure;
    let needs_heuristics = match settings.baseline {
        Baseline::None => settings.heuristics != HeuristicSource::Off,
        Baseline::Mfs => true,
        Baseline::Wn1st | Baseline::Pedersen => false,
    };
    let needs_ic = measure == Measure::Jcn && matches!(settings.baseline, Baseline::None | Baseline::Pedersen);
    let semcor = if needs_heuristics || (needs_ic && settings.ic == IcSource::Compute) {
        Some(semcor_store(&graph, &settings.wordnet, settings.semcor_cntlist.as_deref())?)
    } else {
        None
    };
    let mut store = semcor.clone();
    if settings.heuristics == HeuristicSource::SemCorOmsti && needs_heuristics {
        let Some(path) = &settings.omsti_keys else {
            bail!("--heuristics so needs --omsti-keys");
        };
        let omsti = load_key_file_counts(path)?;
        store.get_or_insert_with(HeuristicStore::new).merge(&omsti);
    }
    let ic = if needs_ic {
        Some(ic_table(&settings.ic, &graph, semcor.as_ref().unwrap_or(&HeuristicStore::new()))?)
    } else {
        None
    };
    let contexts = if settings.engine.doc_ctx && settings.baseline == Baseline::None {
        document_contexts(&docs, &graph, settings.engine.doc_ctx_pos)
    } else {
        vec![DocumentContext::default(); docs.len()]
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .context("starting worker threads")?;
    let pos = settings.engine.pos_of_interest;
    let per_doc: Vec<DocumentResult> = match settings.baseline {
        Baseline::None => {
            let engine = Engine::new(&graph, ic.as_ref(), store.as_ref(), settings.engine)?;
            pool.install(|| {
                docs.par_iter()
                    .zip(&contexts)
                    .map(|(doc, ctx)| engine.disambiguate_document(doc, ctx))
                    .collect()
            })
        }
        Baseline::Wn1st => docs.iter().map(|d| wn1st_document(&graph, d, pos)).collect(),
        Baseline::Mfs => {
            let store = store.as_ref().expect("loaded above");
            docs.iter().map(|d| mfs_document(&graph, store, d, pos)).collect()
        }
        Baseline::Pedersen => {
            let sim = Similarity::new(&graph, ic.as_ref(), settings.engine.similarity)?;
            pool.install(|| {
                docs.par_iter()
                    .map(|d| pedersen_document(&sim, d, pos, settings.threshold))
                    .collect()
            })
        }
    };
    let mut all = DocumentResult::default();
    for r in per_doc {
        all.predictions.extend(r.predictions);
        all.skipped.extend(r.skipped);
    }
    all.predictions.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    all.skipped.sort();

    let pairs = all.predictions.iter().map(|p| (p.instance_id.as_str(), p.sense_key.as_str()));
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| scsmm_core::Error::Write {
                path: path.clone(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            write_key_file(pairs, &mut w)
                .and_then(|_| w.flush())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = io::stdout();
            write_key_file(pairs, stdout.lock()).context("writing predictions")?;
        }
    }
    write_summary(&all, n_targets, io::stderr().lock())?;
    Ok(())
}
