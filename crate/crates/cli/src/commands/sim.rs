use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use scsmm_core::similarity::{CrossPosStrategy, Measure, Similarity, SimilarityConfig};
use scsmm_core::wordnet::{SenseEntry, WordNetGraph};
use scsmm_core::Pos;

use super::{ic_table, load_graph, semcor_store, wordnet_dir, IcSource};
use crate::config::ConfigFile;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// WordNet 3.0 database directory [env: WSD_WORDNET_DIR]
    #[arg(long)]
    wordnet: Option<PathBuf>,
    /// First lemma; its senses become the rows.
    #[arg(long, requires_all = ["p1", "l2", "p2"], conflicts_with_all = ["key1", "key2"])]
    l1: Option<String>,
    /// Part of speech of the first lemma: n, v, a or r.
    #[arg(long)]
    p1: Option<Pos>,
    /// Second lemma; its senses become the columns.
    #[arg(long)]
    l2: Option<String>,
    /// Part of speech of the second lemma.
    #[arg(long)]
    p2: Option<Pos>,
    /// First sense key, e.g. `walk%2:38:00::`.
    #[arg(long, requires = "key2")]
    key1: Option<String>,
    /// Second sense key.
    #[arg(long)]
    key2: Option<String>,
    /// Similarity measure: path, lch, wup or jcn.
    #[arg(long, default_value_t = Measure::Jcn)]
    measure: Measure,
    /// Pairs without a shared taxonomy: full-graph-path or zero.
    #[arg(long, default_value = "full-graph-path")]
    cross_pos: CrossPosStrategy,
    /// Information-content file, or `compute` to derive it from SemCor counts.
    #[arg(long, default_value = "compute")]
    ic: IcSource,
    /// SemCor cntlist used to compute IC.
    #[arg(long)]
    semcor_cntlist: Option<PathBuf>,
    /// Decimal places in the output.
    #[arg(long, default_value_t = 3)]
    precision: usize,
}

fn senses<'g>(graph: &'g WordNetGraph, lemma: &str, pos: Pos) -> Result<&'g [SenseEntry]> {
    let found = graph.senses_of(&lemma.to_lowercase().replace(' ', "_"), pos);
    if found.is_empty() {
        bail!("`{lemma}` ({pos}) is not in WordNet");
    }
    Ok(found)
}

pub fn run(args: Args) -> Result<()> {
    let dir = wordnet_dir(args.wordnet.clone(), &ConfigFile::default())?;
    let graph = load_graph(&dir)?;
    let ic = if args.measure == Measure::Jcn {
        let semcor = match args.ic {
            IcSource::Compute => semcor_store(&graph, &dir, args.semcor_cntlist.as_deref())?,
            IcSource::File(_) => Default::default(),
        };
        Some(ic_table(&args.ic, &graph, &semcor)?)
    } else {
        None
    };
    let cfg = SimilarityConfig {
        measure: args.measure,
        cross_pos: args.cross_pos,
        ..SimilarityConfig::default()
    };
    let sim = Similarity::new(&graph, ic.as_ref(), cfg)?;
    let prec = args.precision;

    if let (Some(k1), Some(k2)) = (&args.key1, &args.key2) {
        let lookup = |k: &str| graph.sense_by_key(k).ok_or_else(|| anyhow!("unknown sense key `{k}`"));
        let (a, b) = (lookup(k1)?, lookup(k2)?);
        println!("{:.prec$}", sim.similarity(a.synset, b.synset));
        return Ok(());
    }
    let (Some(l1), Some(p1), Some(l2), Some(p2)) = (&args.l1, args.p1, &args.l2, args.p2) else {
        bail!("give either --l1 --p1 --l2 --p2 or --key1 --key2");
    };
    let rows = senses(&graph, l1, p1)?;
    let cols = senses(&graph, l2, p2)?;
    let m = sim.matrix(
        &rows.iter().map(|s| s.synset).collect::<Vec<_>>(),
        &cols.iter().map(|s| s.synset).collect::<Vec<_>>(),
    );
    let header: Vec<String> = cols.iter().map(|s| format!("{l2}{}", s.sense_number)).collect();
    println!("\t{}", header.join("\t"));
    let mut best = ((0, 0), f64::NEG_INFINITY);
    for (i, row) in m.rows().into_iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.prec$}")).collect();
        println!("{l1}{}\t{}", rows[i].sense_number, cells.join("\t"));
        for (j, &v) in row.iter().enumerate() {
            if v > best.1 {
                best = ((i, j), v);
            }
        }
    }
    let ((i, j), v) = best;
    println!("argmax\t{l1}{}\t{l2}{}\t{v:.prec$}", rows[i].sense_number, cols[j].sense_number);
    Ok(())
}
