use std::path::PathBuf;

use anyhow::Result;
use clap::ValueEnum;
use scsmm_core::corpus::{parse_gold_keys, parse_predictions};
use scsmm_core::eval::{f_alpha, score, ScoreFilter, Slice};
use scsmm_core::PosSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Gold key file.
    #[arg(long)]
    gold: PathBuf,
    /// Prediction key file.
    #[arg(long)]
    pred: PathBuf,
    /// Score only these parts of speech, e.g. `n` or `n,v`.
    #[arg(long)]
    pos: Option<PosSet>,
    /// Score only one dataset (the instance-id prefix).
    #[arg(long)]
    dataset: Option<String>,
    /// Add one row per dataset.
    #[arg(long)]
    by_dataset: bool,
    /// Add one row per part of speech.
    #[arg(long)]
    by_pos: bool,
    /// Also report F-alpha with this weight on precision.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn run(args: Args) -> Result<()> {
    let gold = parse_gold_keys(&args.gold)?;
    let preds = parse_predictions(&args.pred)?;
    let filter = ScoreFilter {
        pos: args.pos.unwrap_or(PosSet::ALL),
        dataset: args.dataset.clone(),
    };
    let mut report = score(&gold, &preds, &filter)?;
    report.breakdowns.retain(|slice, _| match slice {
        Slice::Dataset(_) => args.by_dataset,
        Slice::Pos(_) => args.by_pos,
    });
    let mut out = match args.format {
        Format::Text => report.to_text(true),
        Format::Tsv => report.to_tsv(true),
    };
    if let Some(alpha) = args.alpha {
        let value = f_alpha(report.precision, report.recall, alpha)?;
        out.push_str(&match args.format {
            Format::Text => format!("F(alpha={alpha}) {:.1}\n", 100.0 * value),
            Format::Tsv => format!("f_alpha_{alpha}\tAll\t{value:.6}\n"),
        });
    }
    print!("{out}");
    Ok(())
}
