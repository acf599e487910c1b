//! Compare initiator selection policies for push-based message spreading:
//! random nodes, highest-degree nodes, and nodes with the highest community
//! score.
//!
//! Run with `cargo run --example message_spreading`.

use genperm::experiments::{select_initiators, spread, InitiatorPolicy};
use genperm::{derive_seed, synth};

fn main() -> genperm::Result<()> {
    let planted = synth::gen_planted_overlap(&[50; 6], 0.05, 0.25, 0.01, 5)?;
    let graph = &planted.graph;
    println!(
        "planted graph: {} nodes, {} edges",
        graph.node_count(),
        graph.edge_count()
    );

    let k = 8;
    let runs = 100;
    for policy in [
        InitiatorPolicy::Random,
        InitiatorPolicy::Degree,
        InitiatorPolicy::Genperm,
    ] {
        let initiators = select_initiators(graph, &planted.cover, policy, k, 17)?;
        let steps: Vec<usize> = (0..runs)
            .map(|r| spread(graph, &initiators, derive_seed(33, r)).map(|t| t.steps()))
            .collect::<genperm::Result<_>>()?;
        let mean = steps.iter().sum::<usize>() as f64 / runs as f64;
        let worst = steps.iter().max().unwrap();
        println!(
            "{:<8} k={k}: mean {mean:.2} steps over {runs} runs (worst {worst})",
            policy.name()
        );
    }

    // One full trace for a single run.
    let initiators = select_initiators(graph, &planted.cover, InitiatorPolicy::Genperm, k, 17)?;
    let trace = spread(graph, &initiators, 1)?;
    println!(
        "\nsample informed-count trace: {:?}",
        trace.informed_per_step
    );
    Ok(())
}
