//! File formats: write and reread an edge list (both directions accepted,
//! as benchmark generators emit them) and the two community layouts — one
//! community per line, and per-node membership lines with 1-based ids.
//!
//! Run with `cargo run --example benchmark_files`.

use genperm::cover::{self, CommunityFormat, Cover};
use genperm::graph::{self};
use genperm::synth;

fn main() -> genperm::Result<()> {
    let dir = std::env::temp_dir().join("genperm_files_example");
    std::fs::create_dir_all(&dir)?;

    let star = synth::gen_clique_star(4, &[4, 4, 4, 4])?;

    // Edge list, 1-based like typical benchmark output.
    let graph_path = dir.join("network.dat");
    let mut buf = Vec::new();
    graph::write_edge_list(&mut buf, &star.graph, true)?;
    std::fs::write(&graph_path, &buf)?;
    let reread = graph::read_edge_list(&graph_path, true)?;
    println!(
        "edge list round trip: {} nodes, {} edges, {} duplicates dropped",
        reread.graph.node_count(),
        reread.graph.edge_count(),
        reread.report.duplicate_edges_dropped
    );

    // Membership layout: node<TAB>community ids.
    let membership_path = dir.join("community.dat");
    let mut lines = String::new();
    for v in 0..star.graph.node_count() {
        let comms: Vec<String> = star
            .cover
            .memberships_of(v)
            .iter()
            .map(|c| (c + 1).to_string())
            .collect();
        lines.push_str(&format!("{}\t{}\n", v + 1, comms.join(" ")));
    }
    std::fs::write(&membership_path, lines)?;

    let parsed = cover::read_communities(&membership_path, CommunityFormat::Auto, true)?;
    println!(
        "membership file: detected as {:?}, {} communities",
        parsed.detected_format,
        parsed.communities.len()
    );
    let (cover, report) = Cover::build(&reread.graph, parsed.communities)?;
    println!(
        "rebuilt cover matches: {} (implicit singletons: {})",
        cover.communities() == star.cover.communities(),
        report.implicit_singletons
    );

    // Community-per-line layout.
    let lines_path = dir.join("communities.txt");
    let mut buf = Vec::new();
    cover::write_communities(&mut buf, &cover, false)?;
    std::fs::write(&lines_path, &buf)?;
    let parsed = cover::read_communities(&lines_path, CommunityFormat::Auto, false)?;
    println!(
        "community-per-line file: detected as {:?}, {} communities",
        parsed.detected_format,
        parsed.communities.len()
    );
    println!("\nfiles left in {}", dir.display());
    Ok(())
}
