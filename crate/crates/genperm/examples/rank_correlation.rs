//! How well do the scoring metrics agree with ground-truth validation? Rank
//! a set of candidate covers by each scoring metric and by each validation
//! metric, then correlate the rankings.
//!
//! Run with `cargo run --example rank_correlation`.

use genperm::cover::Cover;
use genperm::detect::{max_genperm, DetectConfig, VertexOrdering};
use genperm::experiments::{perturb, PerturbStrategy, PerturbationSpec};
use genperm::synth;
use genperm::validate::rank_correlation_protocol;

fn main() -> genperm::Result<()> {
    let planted = synth::gen_planted_overlap(&[25, 25, 25], 0.08, 0.35, 0.02, 3)?;
    let graph = &planted.graph;
    let truth = &planted.cover;

    // Candidates standing in for the outputs of different algorithms: the
    // truth itself, increasingly damaged versions of it, a detection run,
    // and a deliberately coarse cover.
    let mut candidates: Vec<(String, Cover)> = vec![("truth".into(), truth.clone())];
    for (i, p) in [0.1, 0.25, 0.5].iter().enumerate() {
        let spec = PerturbationSpec::new(PerturbStrategy::Random, *p, 40 + i as u64)?;
        candidates.push((format!("perturbed-{p}"), perturb(graph, truth, &spec)?));
    }
    let config = DetectConfig {
        per_component: true,
        ordering: VertexOrdering::SeededShuffle(1),
        ..DetectConfig::default()
    };
    candidates.push(("detected".into(), max_genperm(graph, &config)?.cover));
    candidates.push((
        "all-in-one".into(),
        Cover::build(graph, vec![(0..graph.node_count()).collect()])?.0,
    ));
    // A shattered cover of pairs keeps every ranked column from being
    // constant (its coverage of non-trivial communities is zero).
    let pairs: Vec<Vec<usize>> = (0..graph.node_count() / 2)
        .map(|i| vec![2 * i, 2 * i + 1])
        .collect();
    candidates.push(("pairs".into(), Cover::build(graph, pairs)?.0));

    let result = rank_correlation_protocol(graph, truth, &candidates)?;
    println!("candidates: {:?}\n", result.candidates);
    println!(
        "{:<8} {:>8} {:>8} {:>8}",
        "",
        result.validation_metrics[0],
        result.validation_metrics[1],
        result.validation_metrics[2]
    );
    for (i, name) in result.scoring_metrics.iter().enumerate() {
        println!(
            "{:<8} {:>8.3} {:>8.3} {:>8.3}",
            name, result.matrix[i][0], result.matrix[i][1], result.matrix[i][2]
        );
    }
    Ok(())
}
