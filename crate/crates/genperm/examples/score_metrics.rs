//! Score an overlapping cover with all five community scoring metrics and
//! inspect the per-(vertex, community) values that drive the network score.
//!
//! Run with `cargo run --example score_metrics`.

use genperm::cover::Cover;
use genperm::graph::Graph;
use genperm::metrics;

fn main() -> genperm::Result<()> {
    // Two K4s sharing the edge (3, 4): vertices 3 and 4 belong to both.
    let pairs: Vec<(usize, usize)> = vec![
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 4),
        (3, 5),
        (3, 6),
        (4, 5),
        (4, 6),
        (5, 6),
    ];
    let (graph, _) = Graph::build(&pairs, None);
    let (cover, _) = Cover::build(&graph, vec![vec![0, 1, 2, 3, 4], vec![3, 4, 5, 6]])?;

    let [genperm, eq, qov, cc, oc] = metrics::score_all(&graph, &cover)?;
    println!("network GenPerm : {genperm:.6}");
    println!("EQ modularity   : {eq:.6}");
    println!("Q_ov modularity : {qov:.6}");
    println!("community cover : {cc:.6}");
    println!("overlap coverage: {oc:.6}");
    println!();

    println!("per-vertex breakdown:");
    for v in 0..graph.node_count() {
        let total = metrics::genperm_vertex(&graph, &cover, v)?;
        let terms: Vec<String> = cover
            .memberships_of(v)
            .iter()
            .map(|&c| {
                let value = metrics::genperm_vc(&graph, &cover, v, c).unwrap();
                format!("c{c}={value:.4}")
            })
            .collect();
        println!("  v{v}: total {total:.4}  [{}]", terms.join(", "));
    }
    Ok(())
}
