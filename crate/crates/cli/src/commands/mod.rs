pub mod disambiguate;
pub mod score;
pub mod sim;
pub mod stats;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use scsmm_core::heuristics::{load_semcor_cntlist, HeuristicStore};
use scsmm_core::ic::{compute_ic, load_ic_file, IcTable};
use scsmm_core::wordnet::{load_wordnet, WordNetGraph};

use crate::config::ConfigFile;

pub const WORDNET_ENV: &str = "WSD_WORDNET_DIR";

/// `--wordnet`, then the config file, then `WSD_WORDNET_DIR`.
pub fn wordnet_dir(flag: Option<PathBuf>, cfg: &ConfigFile) -> Result<PathBuf> {
    if let Some(dir) = flag.or_else(|| cfg.get("wordnet").map(PathBuf::from)) {
        return Ok(dir);
    }
    match std::env::var_os(WORDNET_ENV) {
        Some(dir) if !dir.is_empty() => Ok(PathBuf::from(dir)),
        _ => bail!("no WordNet directory: pass --wordnet or set {WORDNET_ENV}"),
    }
}

pub fn load_graph(dir: &Path) -> Result<WordNetGraph> {
    let start = Instant::now();
    let graph = load_wordnet(dir).with_context(|| format!("loading WordNet from {}", dir.display()))?;
    log::info!("loaded {} synsets in {:.2?}", graph.len(), start.elapsed());
    Ok(graph)
}

/// SemCor counts from an explicit cntlist, else `<wordnet>/cntlist`, else
/// the tag counts of `index.sense`.
pub fn semcor_store(graph: &WordNetGraph, wordnet: &Path, cntlist: Option<&Path>) -> Result<HeuristicStore> {
    let bundled = wordnet.join("cntlist");
    let path = match cntlist {
        Some(p) => Some(p.to_path_buf()),
        None => bundled.is_file().then_some(bundled),
    };
    match path {
        Some(p) => {
            let store = load_semcor_cntlist(&p)?;
            log::info!("{} sense counts from {}", store.len(), p.display());
            Ok(store)
        }
        None => {
            log::info!("no cntlist found; using index.sense tag counts");
            Ok(HeuristicStore::from_tag_counts(graph))
        }
    }
}

/// Where information content comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IcSource {
    Compute,
    File(PathBuf),
}

impl FromStr for IcSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "" => Err("empty IC source".into()),
            "compute" => Ok(IcSource::Compute),
            path => Ok(IcSource::File(PathBuf::from(path))),
        }
    }
}

impl fmt::Display for IcSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IcSource::Compute => f.write_str("compute"),
            IcSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

pub fn ic_table(source: &IcSource, graph: &WordNetGraph, semcor: &HeuristicStore) -> Result<IcTable> {
    match source {
        IcSource::File(path) => Ok(load_ic_file(path)?),
        IcSource::Compute => {
            let computed = compute_ic(graph, semcor.sense_counts());
            log::info!("computed information content for {} synsets", computed.table.len());
            Ok(computed.table)
        }
    }
}
