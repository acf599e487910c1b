//! Damage a ground-truth cover with the three perturbation strategies and
//! watch the scoring metrics respond. A useful metric decays as the
//! structure deteriorates.
//!
//! Run with `cargo run --example perturbation_robustness`.

use genperm::experiments::{robustness_sweep, PerturbStrategy};
use genperm::synth;

fn main() -> genperm::Result<()> {
    let planted = synth::gen_planted_overlap(&[25, 25, 25, 25], 0.08, 0.3, 0.01, 7)?;
    println!(
        "planted graph: {} nodes, {} edges, {} communities",
        planted.graph.node_count(),
        planted.graph.edge_count(),
        planted.cover.community_count()
    );

    let grid = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5];
    let cells = robustness_sweep(
        &planted.graph,
        &planted.cover,
        &PerturbStrategy::ALL,
        &grid,
        20,
        99,
    )?;

    println!("\nmean normalized scores over 20 trials:");
    println!(
        "{:<10} {:>6} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "strategy", "p", "genperm", "eq", "qov", "cc", "oc"
    );
    for strategy in PerturbStrategy::ALL {
        for &p in &grid {
            let row: Vec<f64> = ["genperm", "eq", "qov", "cc", "oc"]
                .iter()
                .map(|metric| {
                    cells
                        .iter()
                        .find(|c| {
                            c.strategy == strategy.name() && c.intensity == p && &c.metric == metric
                        })
                        .map(|c| c.value)
                        .unwrap()
                })
                .collect();
            println!(
                "{:<10} {:>6} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
                strategy.name(),
                p,
                row[0],
                row[1],
                row[2],
                row[3],
                row[4]
            );
        }
    }
    Ok(())
}
