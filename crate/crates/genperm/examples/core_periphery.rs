//! Core-periphery structure through the vertex lens: farness centrality
//! against the community score, score assortativity across internal edges,
//! and the 20-bin score profile.
//!
//! Run with `cargo run --example core_periphery`.

use genperm::experiments::{binned_profile, farness_profile, genperm_assortativity};
use genperm::synth;

fn main() -> genperm::Result<()> {
    let planted = synth::gen_planted_overlap(&[30, 30, 30], 0.1, 0.35, 0.01, 11)?;
    let (graph, cover) = (&planted.graph, &planted.cover);

    println!("farness vs score in community 0 (lower farness = closer to core):");
    let mut entries = farness_profile(graph, cover, 0, true)?;
    entries.sort_by(|a, b| a.farness.partial_cmp(&b.farness).unwrap());
    for e in entries.iter().take(5) {
        println!(
            "  node {:>3}: farness {:.3}, score {:+.4}",
            e.node, e.farness, e.genperm
        );
    }
    println!("  ...");
    for e in entries
        .iter()
        .rev()
        .take(3)
        .collect::<Vec<_>>()
        .iter()
        .rev()
    {
        println!(
            "  node {:>3}: farness {:.3}, score {:+.4}",
            e.node, e.farness, e.genperm
        );
    }

    println!("\nscore assortativity per community:");
    for c in 0..cover.community_count() {
        match genperm_assortativity(graph, cover, c)? {
            Some(r) => println!("  community {c}: r = {r:+.4}"),
            None => println!("  community {c}: degenerate (single score bin)"),
        }
    }

    println!("\nscore distribution over 20 bins:");
    let profile = binned_profile(graph, cover)?;
    for (i, bin) in profile.bins.iter().enumerate() {
        if bin.count == 0 {
            continue;
        }
        let bar = "#".repeat((bin.fraction * 200.0).round() as usize);
        println!(
            "  bin {:>2} [{:+.1}, {:+.1}): {:>5.1}% {bar}",
            i + 1,
            -1.0 + i as f64 * 0.1,
            -1.0 + (i + 1) as f64 * 0.1,
            bin.fraction * 100.0
        );
    }
    Ok(())
}
