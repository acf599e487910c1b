//! Community scoring metrics: permanence, GenPerm (per vertex-community
//! pair, per vertex, and network-wide), the two overlapping modularity
//! variants EQ and Q_ov, and the coverage counts CC and OC.
//!
//! Conventions shared by permanence and GenPerm, chosen so that the closed
//! forms of the clique constructions hold exactly and the two metrics agree
//! on disjoint partitions:
//!
//! * `E_max(v)` counts, per community, the neighbors of `v` that share no
//!   community with `v`; the maximum over communities is floored to 1.
//!   Neighbors inside `v`'s super-community never count as external pull,
//!   even when they also belong to communities `v` is not in.
//! * The internal clustering coefficient over `k` qualifying neighbors is
//!   the raw edge fraction for `k >= 2`, 0 for `k == 1` (no pair exists, no
//!   cohesion evidence), and 1 for `k == 0` (the term is vacuous there and
//!   this keeps isolated-in-community vertices at score 0).
//! * A vertex with `I(v) == 0` has every community term equal to 0, so a
//!   singleton community contributes nothing.

use crate::cover::{count_common, Cover};
use crate::graph::Graph;
use crate::{Error, Result};

/// The per-(vertex, community) quantities behind one GenPerm term.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexContext {
    pub vertex: usize,
    pub community: usize,
    /// `D(v)`.
    pub degree: usize,
    /// `I(v)`: neighbors sharing at least one community with `v`.
    pub internal_neighbors: usize,
    /// `I^c(v)`: internal edges in `c`, each weighted by `1/x_e`.
    pub effective_internal: f64,
    /// `E_max(v)`, floored to 1.
    pub max_external: usize,
    /// `c_in^c(v)`.
    pub internal_clustering: f64,
}

/// The GenPerm formula applied to precomputed ingredients.
pub(crate) fn genperm_from_parts(
    degree: usize,
    internal_neighbors: usize,
    effective_internal: f64,
    max_external: usize,
    internal_clustering: f64,
) -> f64 {
    let pull = effective_internal / (max_external as f64 * degree as f64);
    let share = if internal_neighbors == 0 {
        0.0
    } else {
        effective_internal / internal_neighbors as f64
    };
    pull - (1.0 - internal_clustering) * share
}

/// Clustering-coefficient convention shared by permanence and GenPerm.
pub(crate) fn clustering_value(edges_among: usize, k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => 0.0,
        _ => edges_among as f64 / (k * (k - 1) / 2) as f64,
    }
}

/// `E_max` and `I` for vertex `v` given its membership list: neighbors that
/// share no community with `v` are grouped per community they belong to.
fn external_pull_and_internal(
    graph: &Graph,
    cover: &Cover,
    v: usize,
    membership: &[usize],
) -> (usize, usize) {
    let mut internal = 0usize;
    let mut per_community: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::new();
    for &u in graph.neighbors(v) {
        if count_common(membership, cover.memberships_of(u)) > 0 {
            internal += 1;
        } else {
            for &c in cover.memberships_of(u) {
                *per_community.entry(c).or_insert(0) += 1;
            }
        }
    }
    let e_max = per_community.values().copied().max().unwrap_or(0).max(1);
    (e_max, internal)
}

fn edges_among(graph: &Graph, nodes: &[usize]) -> usize {
    let mut count = 0;
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            if graph.has_edge(a, b) {
                count += 1;
            }
        }
    }
    count
}

/// Computes every ingredient of `P_g^c(v)`.
pub fn vertex_context(graph: &Graph, cover: &Cover, v: usize, c: usize) -> Result<VertexContext> {
    let degree = graph.degree(v);
    if degree == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    if !cover.contains(c, v) {
        return Err(Error::NotInCommunity {
            vertex: v,
            community: c,
        });
    }
    let membership = cover.memberships_of(v);
    let (max_external, internal_neighbors) =
        external_pull_and_internal(graph, cover, v, membership);

    let mut effective_internal = 0.0;
    let mut in_c: Vec<usize> = Vec::new();
    for &u in graph.neighbors(v) {
        if cover.contains(c, u) {
            in_c.push(u);
            let x_e = count_common(membership, cover.memberships_of(u));
            effective_internal += 1.0 / x_e as f64;
        }
    }
    let internal_clustering = clustering_value(edges_among(graph, &in_c), in_c.len());

    Ok(VertexContext {
        vertex: v,
        community: c,
        degree,
        internal_neighbors,
        effective_internal,
        max_external,
        internal_clustering,
    })
}

impl VertexContext {
    pub fn genperm(&self) -> f64 {
        genperm_from_parts(
            self.degree,
            self.internal_neighbors,
            self.effective_internal,
            self.max_external,
            self.internal_clustering,
        )
    }
}

/// `P_g^c(v)`, the GenPerm of `v` in one of its communities.
pub fn genperm_vc(graph: &Graph, cover: &Cover, v: usize, c: usize) -> Result<f64> {
    Ok(vertex_context(graph, cover, v, c)?.genperm())
}

/// `P_g(v)`: sum of `P_g^c(v)` over the communities containing `v`.
pub fn genperm_vertex(graph: &Graph, cover: &Cover, v: usize) -> Result<f64> {
    let mut total = 0.0;
    for &c in cover.memberships_of(v) {
        total += genperm_vc(graph, cover, v, c)?;
    }
    Ok(total)
}

/// `P_g(G)`: mean vertex GenPerm, summed in ascending vertex id so repeated
/// evaluations are bit-identical.
pub fn genperm_network(graph: &Graph, cover: &Cover) -> Result<f64> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut total = 0.0;
    for v in 0..n {
        total += genperm_vertex(graph, cover, v)?;
    }
    Ok(total / n as f64)
}

/// Permanence of `v` in a disjoint partition.
pub fn permanence(graph: &Graph, partition: &Cover, v: usize) -> Result<f64> {
    if !partition.is_partition() {
        return Err(Error::OverlappingCover);
    }
    let degree = graph.degree(v);
    if degree == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    let own = partition.memberships_of(v)[0];
    let membership = partition.memberships_of(v);
    let (e_max, _) = external_pull_and_internal(graph, partition, v, membership);
    let in_own: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| partition.contains(own, u))
        .collect();
    let internal = in_own.len();
    let c_in = clustering_value(edges_among(graph, &in_own), internal);
    Ok(internal as f64 / (e_max as f64 * degree as f64) - (1.0 - c_in))
}

/// EQ, the membership-weighted modularity adaptation. The `i == j` diagonal
/// is included as the double sum states.
pub fn eq_modularity(graph: &Graph, cover: &Cover) -> Result<f64> {
    let m = graph.edge_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let two_m = 2.0 * m as f64;
    let mut total = 0.0;
    for c in 0..cover.community_count() {
        let members = cover.members(c);
        let mut adjacency_part = 0.0;
        let mut degree_part = 0.0;
        for &u in members {
            let o_u = cover.membership_count(u) as f64;
            degree_part += graph.degree(u) as f64 / o_u;
            for &w in graph.neighbors(u) {
                if cover.contains(c, w) {
                    adjacency_part += 1.0 / (o_u * cover.membership_count(w) as f64);
                }
            }
        }
        total += adjacency_part - degree_part * degree_part / two_m;
    }
    Ok(total / two_m)
}

/// Q_ov, the per-community density-weighted modularity. Communities with
/// fewer than two nodes contribute 0 (their pair count is 0) but still count
/// toward the `1/|C|` average.
pub fn qov_modularity(graph: &Graph, cover: &Cover) -> Result<f64> {
    let comm_count = cover.community_count();
    if comm_count == 0 {
        return Err(Error::EmptyCover);
    }
    let mut total = 0.0;
    for c in 0..comm_count {
        let members = cover.members(c);
        let n_c = members.len();
        if n_c < 2 {
            continue;
        }
        let mut inner = 0.0;
        let mut internal_edges = 0usize;
        for &u in members {
            let d = graph.degree(u);
            if d == 0 {
                return Err(Error::IsolatedVertex(u));
            }
            let in_c = graph
                .neighbors(u)
                .iter()
                .filter(|&&w| cover.contains(c, w))
                .count();
            internal_edges += in_c;
            let numerator = in_c as f64 - (d - in_c) as f64;
            inner += numerator / (d as f64 * cover.membership_count(u) as f64);
        }
        let internal_edges = internal_edges / 2;
        let pairs = (n_c * (n_c - 1) / 2) as f64;
        total += inner / n_c as f64 * internal_edges as f64 / pairs;
    }
    Ok(total / comm_count as f64)
}

const NON_TRIVIAL_SIZE: usize = 3;

/// CC: fraction of nodes in at least one community of three or more nodes.
pub fn community_coverage(cover: &Cover) -> f64 {
    let n = cover.node_count();
    if n == 0 {
        return 0.0;
    }
    let covered = (0..n)
        .filter(|&v| {
            cover
                .memberships_of(v)
                .iter()
                .any(|&c| cover.members(c).len() >= NON_TRIVIAL_SIZE)
        })
        .count();
    covered as f64 / n as f64
}

/// OC: mean number of non-trivial (size >= 3) community memberships per node.
pub fn overlap_coverage(cover: &Cover) -> f64 {
    let n = cover.node_count();
    if n == 0 {
        return 0.0;
    }
    let total: usize = (0..n)
        .map(|v| {
            cover
                .memberships_of(v)
                .iter()
                .filter(|&&c| cover.members(c).len() >= NON_TRIVIAL_SIZE)
                .count()
        })
        .sum();
    total as f64 / n as f64
}

/// The five community scoring metrics in one pass, in the order
/// (P_g, EQ, Q_ov, CC, OC).
pub fn score_all(graph: &Graph, cover: &Cover) -> Result<[f64; 5]> {
    Ok([
        genperm_network(graph, cover)?,
        eq_modularity(graph, cover)?,
        qov_modularity(graph, cover)?,
        community_coverage(cover),
        overlap_coverage(cover),
    ])
}

pub const SCORING_METRIC_NAMES: [&str; 5] = ["genperm", "eq", "qov", "cc", "oc"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Cover;
    use crate::graph::Graph;

    fn k_n(n: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::build(&pairs, None).0
    }

    fn cover(g: &Graph, sets: Vec<Vec<usize>>) -> Cover {
        Cover::build(g, sets).unwrap().0
    }

    #[test]
    fn permanence_inside_isolated_clique_is_one() {
        let g = k_n(5);
        let cover = cover(&g, vec![vec![0, 1, 2, 3, 4]]);
        for v in 0..5 {
            assert!((permanence(&g, &cover, v).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn permanence_worked_example() {
        // v = 0 with degree 4: internal neighbors {1, 2} non-adjacent, two
        // external edges into the community {3, 4}.
        let (g, _) = Graph::build(&[(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)], None);
        let cover = cover(&g, vec![vec![0, 1, 2], vec![3, 4]]);
        let p = permanence(&g, &cover, 0).unwrap();
        assert!((p - (2.0 / (2.0 * 4.0) - 1.0)).abs() < 1e-12, "got {p}");
    }

    #[test]
    fn permanence_rejects_overlapping_cover() {
        let g = k_n(4);
        let cover = cover(&g, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(matches!(
            permanence(&g, &cover, 0),
            Err(Error::OverlappingCover)
        ));
    }

    #[test]
    fn genperm_errors_on_degree_zero_and_non_membership() {
        let (g, _) = Graph::build(&[(0, 1)], Some(3));
        let cover = cover(&g, vec![vec![0, 1], vec![2]]);
        assert!(matches!(
            genperm_vertex(&g, &cover, 2),
            Err(Error::IsolatedVertex(2))
        ));
        assert!(matches!(
            genperm_vc(&g, &cover, 0, 1),
            Err(Error::NotInCommunity { .. })
        ));
    }

    #[test]
    fn disjoint_cliques_score_network_one() {
        // Two disjoint K4s, each its own community.
        let mut pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        pairs.extend((4..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))));
        let (g, _) = Graph::build(&pairs, None);
        let cover = cover(&g, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert!((genperm_network(&g, &cover).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn genperm_equals_permanence_on_disjoint_cover() {
        let (g, _) = Graph::build(
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (3, 4),
                (3, 5),
                (4, 5),
                (1, 4),
            ],
            None,
        );
        let cover = cover(&g, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        for v in 0..6 {
            let p = permanence(&g, &cover, v).unwrap();
            let gp = genperm_vertex(&g, &cover, v).unwrap();
            assert!((p - gp).abs() < 1e-12, "vertex {v}: {p} vs {gp}");
        }
    }

    #[test]
    fn eq_is_zero_for_whole_graph_community() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], None);
        let cover = cover(&g, vec![vec![0, 1, 2, 3]]);
        assert!(eq_modularity(&g, &cover).unwrap().abs() < 1e-12);
    }

    #[test]
    fn eq_reduces_to_newman_girvan_on_partitions() {
        let mut pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        pairs.extend((4..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))));
        pairs.push((0, 4));
        let (g, _) = Graph::build(&pairs, None);
        let cover = cover(&g, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);

        // Newman–Girvan modularity by the matrix definition.
        let two_m = 2.0 * g.edge_count() as f64;
        let mut q = 0.0;
        for comm in cover.communities() {
            for &i in comm {
                for &j in comm {
                    let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                    q += a - g.degree(i) as f64 * g.degree(j) as f64 / two_m;
                }
            }
        }
        q /= two_m;
        assert!((eq_modularity(&g, &cover).unwrap() - q).abs() < 1e-12);
        assert!(q > 0.0);
    }

    #[test]
    fn qov_of_triangle_community_is_one() {
        let g = k_n(3);
        let cover = cover(&g, vec![vec![0, 1, 2]]);
        assert!((qov_modularity(&g, &cover).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qov_of_whole_graph_equals_global_density() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], None);
        let cover = cover(&g, vec![vec![0, 1, 2, 3]]);
        let density = g.edge_count() as f64 / 6.0;
        assert!((qov_modularity(&g, &cover).unwrap() - density).abs() < 1e-12);
    }

    #[test]
    fn coverage_counts() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (3, 4), (0, 3), (2, 4)], None);
        let c = cover(&g, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!((community_coverage(&c) - 0.6).abs() < 1e-12);
        assert!((overlap_coverage(&c) - 0.6).abs() < 1e-12);

        let c = cover(&g, vec![vec![0, 1, 2], vec![0, 1, 3], vec![4]]);
        assert!((community_coverage(&c) - 0.8).abs() < 1e-12);
        assert!((overlap_coverage(&c) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn effective_internal_conserves_internal_neighbors() {
        let g = k_n(5);
        let c = cover(&g, vec![vec![0, 1, 2, 3], vec![1, 2, 4], vec![0, 3, 4]]);
        for v in 0..5 {
            let mut eff = 0.0;
            let mut internal = None;
            for &cid in c.memberships_of(v) {
                let ctx = vertex_context(&g, &c, v, cid).unwrap();
                eff += ctx.effective_internal;
                internal = Some(ctx.internal_neighbors);
            }
            assert!((eff - internal.unwrap() as f64).abs() < 1e-12);
        }
    }
}
