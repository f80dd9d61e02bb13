//! Regenerates the fixture curves under `crates/core/fixtures`.
//!
//! Usage: `cargo run -p frechet-core --example regen_fixtures [DIR]`

use std::path::PathBuf;

use frechet_core::bench::synth::{synth_dataset, zigzag_pair, SynthParams, WalkParams};
use frechet_core::curves::write_dataset;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));

    let params = SynthParams {
        clusters: 4,
        per_cluster: 5,
        walk: WalkParams {
            min_vertices: 4,
            max_vertices: 60,
            ..Default::default()
        },
        ..Default::default()
    };
    let small = synth_dataset(&params, 2024);
    let index = write_dataset(&dir.join("small"), "dataset.txt", &small)?;
    println!("{}", index.display());

    let (a, b) = zigzag_pair(12);
    let index = write_dataset(&dir.join("zigzag"), "dataset.txt", &[a, b])?;
    println!("{}", index.display());
    Ok(())
}
