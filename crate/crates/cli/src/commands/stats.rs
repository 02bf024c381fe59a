use std::path::PathBuf;

use anyhow::Result;
use scsmm_core::corpus::{dataset_stats, parse_dataset};

use super::score::Format;
use super::{load_graph, wordnet_dir};
use crate::config::ConfigFile;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Dataset XML in the unified evaluation format.
    #[arg(long)]
    dataset: PathBuf,
    /// WordNet 3.0 database directory [env: WSD_WORDNET_DIR]
    #[arg(long)]
    wordnet: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn run(args: Args) -> Result<()> {
    let graph = load_graph(&wordnet_dir(args.wordnet, &ConfigFile::default())?)?;
    let docs = parse_dataset(&args.dataset)?;
    let rows = dataset_stats(&docs, &graph).rows();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (name, value) in rows {
        match args.format {
            Format::Tsv => println!("{name}\t{value}"),
            Format::Text => println!("{name:<width$}  {value}"),
        }
    }
    Ok(())
}
