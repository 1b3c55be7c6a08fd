//! The whole pipeline: write a cohort to disk, read it back, extract
//! features, run every experiment and write all artifacts.
//!
//! `cargo run --release --example reproduce -- [out_dir] [seed]`

use std::path::PathBuf;

use skyselect::experiments::{reproduce, summary_markdown};
use skyselect::synth::CohortSpec;

fn main() -> skyselect::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/example-reproduce".into()));
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let (_, run) = reproduce(&CohortSpec { seed, ..CohortSpec::default() }, &out, false)?;
    print!("{}", summary_markdown(&run));
    println!("\nartifacts in {}", out.display());
    Ok(())
}
