//! Deterministic generators for the analytic clique constructions and a
//! seeded planted-overlap generator for desk-scale benchmarks.
//!
//! Bridge endpoints are always the lowest-id vertices of each clique: the
//! closed forms are invariant to the choice, determinism requires one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::graph::Graph;
use crate::{Error, Result};

/// Clique-construction topologies exposed by the `generate` CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueTopology {
    Chain,
    Ring,
    Star,
    BridgePair,
}

fn clique_pairs(nodes: &[usize], pairs: &mut Vec<(usize, usize)>) {
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            pairs.push((a, b));
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidParameter(format!(
            "clique size must be at least 3, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Three cliques X–Y–Z joined by single edges (u_x, v_x) and (u_z, v_z);
/// X and Z are not connected.
#[derive(Debug)]
pub struct CliqueChain {
    pub graph: Graph,
    /// Three-community ground truth: X, Y, Z disjoint.
    pub cover: Cover,
    pub clique_x: Vec<usize>,
    pub clique_y: Vec<usize>,
    pub clique_z: Vec<usize>,
    pub u_x: usize,
    pub v_x: usize,
    pub u_z: usize,
    pub v_z: usize,
}

pub fn gen_clique_chain(n_x: usize, n_y: usize, n_z: usize) -> Result<CliqueChain> {
    check_size(n_x)?;
    check_size(n_y)?;
    check_size(n_z)?;
    let clique_x: Vec<usize> = (0..n_x).collect();
    let clique_y: Vec<usize> = (n_x..n_x + n_y).collect();
    let clique_z: Vec<usize> = (n_x + n_y..n_x + n_y + n_z).collect();
    let (u_x, v_x) = (clique_x[0], clique_y[0]);
    // Y hosts both bridge endpoints; they must be distinct vertices.
    let (u_z, v_z) = (clique_z[0], clique_y[1]);

    let mut pairs = Vec::new();
    clique_pairs(&clique_x, &mut pairs);
    clique_pairs(&clique_y, &mut pairs);
    clique_pairs(&clique_z, &mut pairs);
    pairs.push((u_x, v_x));
    pairs.push((u_z, v_z));
    let (graph, _) = Graph::build(&pairs, None);
    let (cover, _) = Cover::build(
        &graph,
        vec![clique_x.clone(), clique_y.clone(), clique_z.clone()],
    )?;
    Ok(CliqueChain {
        graph,
        cover,
        clique_x,
        clique_y,
        clique_z,
        u_x,
        v_x,
        u_z,
        v_z,
    })
}

/// A circle of `k` cliques of size `s` where consecutive cliques are joined
/// through a degree-2 bridging vertex.
#[derive(Debug)]
pub struct CliqueRing {
    pub graph: Graph,
    /// Ground truth: each clique a community, each bridge a singleton.
    pub cover: Cover,
    pub cliques: Vec<Vec<usize>>,
    pub bridges: Vec<usize>,
}

pub fn gen_clique_ring(k: usize, s: usize) -> Result<CliqueRing> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "ring needs at least 3 cliques, got {k}"
        )));
    }
    check_size(s)?;
    let cliques: Vec<Vec<usize>> = (0..k).map(|i| (i * s..(i + 1) * s).collect()).collect();
    let bridges: Vec<usize> = (k * s..k * s + k).collect();
    let mut pairs = Vec::new();
    for clique in &cliques {
        clique_pairs(clique, &mut pairs);
    }
    for i in 0..k {
        // Bridge i sits between clique i (attached at its lowest vertex) and
        // clique i+1 (attached at its second-lowest), so the two bridges of a
        // clique land on distinct vertices.
        pairs.push((bridges[i], cliques[i][0]));
        pairs.push((bridges[i], cliques[(i + 1) % k][1]));
    }
    let (graph, _) = Graph::build(&pairs, None);
    let mut sets = cliques.clone();
    sets.extend(bridges.iter().map(|&b| vec![b]));
    let (cover, _) = Cover::build(&graph, sets)?;
    Ok(CliqueRing {
        graph,
        cover,
        cliques,
        bridges,
    })
}

/// Expected network GenPerm of the ring ground truth: interior clique
/// vertices score 1, each clique's two attachment vertices score (s-1)/s,
/// bridges are singletons scoring 0.
pub fn clique_ring_expected_genperm(k: usize, s: usize) -> f64 {
    let total = k as f64 * ((s - 2) as f64 + 2.0 * (s - 1) as f64 / s as f64);
    total / (k * (s + 1)) as f64
}

/// A central clique with surrounding cliques, each sharing one distinct edge
/// of the center's canonical cycle.
#[derive(Debug)]
pub struct CliqueStar {
    pub graph: Graph,
    /// Ground truth: the center plus every surrounding clique (n+1
    /// communities when the cycle is fully used), overlapping on the shared
    /// edges.
    pub cover: Cover,
    pub center: Vec<usize>,
    pub surround: Vec<Vec<usize>>,
    /// Center vertices that belong to more than one community.
    pub overlap: Vec<usize>,
}

pub fn gen_clique_star(center_size: usize, surround_sizes: &[usize]) -> Result<CliqueStar> {
    check_size(center_size)?;
    if surround_sizes.len() > center_size {
        return Err(Error::InvalidParameter(format!(
            "{} surrounding cliques exceed the {} edges of the center cycle",
            surround_sizes.len(),
            center_size
        )));
    }
    for &s in surround_sizes {
        check_size(s)?;
    }
    let center: Vec<usize> = (0..center_size).collect();
    let mut pairs = Vec::new();
    clique_pairs(&center, &mut pairs);

    let mut next_id = center_size;
    let mut surround = Vec::with_capacity(surround_sizes.len());
    for (i, &s) in surround_sizes.iter().enumerate() {
        // Surrounding clique i shares the cycle edge (x_i, x_{i+1}).
        let mut members = vec![center[i], center[(i + 1) % center_size]];
        members.extend(next_id..next_id + (s - 2));
        next_id += s - 2;
        members.sort_unstable();
        clique_pairs(&members, &mut pairs);
        surround.push(members);
    }
    let (graph, _) = Graph::build(&pairs, Some(next_id));
    let mut sets = vec![center.clone()];
    sets.extend(surround.iter().cloned());
    let (cover, _) = Cover::build(&graph, sets)?;
    let overlap = center
        .iter()
        .copied()
        .filter(|&v| cover.membership_count(v) > 1)
        .collect();
    Ok(CliqueStar {
        graph,
        cover,
        center,
        surround,
        overlap,
    })
}

/// Two cliques joined by a single bridge edge between their lowest vertices.
#[derive(Debug)]
pub struct BridgePair {
    pub graph: Graph,
    pub cover: Cover,
    pub clique_a: Vec<usize>,
    pub clique_b: Vec<usize>,
}

pub fn gen_bridge_pair(n_a: usize, n_b: usize) -> Result<BridgePair> {
    check_size(n_a)?;
    check_size(n_b)?;
    let clique_a: Vec<usize> = (0..n_a).collect();
    let clique_b: Vec<usize> = (n_a..n_a + n_b).collect();
    let mut pairs = Vec::new();
    clique_pairs(&clique_a, &mut pairs);
    clique_pairs(&clique_b, &mut pairs);
    pairs.push((clique_a[0], clique_b[0]));
    let (graph, _) = Graph::build(&pairs, None);
    let (cover, _) = Cover::build(&graph, vec![clique_a.clone(), clique_b.clone()])?;
    Ok(BridgePair {
        graph,
        cover,
        clique_a,
        clique_b,
    })
}

/// Seeded planted-overlap benchmark: consecutive node blocks form the
/// communities, a fraction of each block also joins the next block
/// (cyclically), and edges are sampled independently at `p_in` within a
/// shared community and `p_out` otherwise.
#[derive(Debug)]
pub struct Planted {
    pub graph: Graph,
    pub cover: Cover,
}

pub fn gen_planted_overlap(
    block_sizes: &[usize],
    overlap_fraction: f64,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<Planted> {
    if block_sizes.len() < 2 || block_sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "need at least two non-empty blocks".to_string(),
        ));
    }
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) || p_in <= p_out {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= p_out < p_in <= 1, got p_in={p_in} p_out={p_out}"
        )));
    }
    if !(0.0..=1.0).contains(&overlap_fraction) {
        return Err(Error::InvalidParameter(format!(
            "overlap fraction must be in [0,1], got {overlap_fraction}"
        )));
    }

    let k = block_sizes.len();
    let n: usize = block_sizes.iter().sum();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut start = 0;
    for &size in block_sizes {
        blocks.push((start..start + size).collect());
        start += size;
    }
    // The first floor(f * size) nodes of each block also join the next block.
    let mut sets = blocks.clone();
    for i in 0..k {
        let extra = (overlap_fraction * block_sizes[i] as f64).floor() as usize;
        let next = (i + 1) % k;
        for &v in blocks[i].iter().take(extra) {
            sets[next].push(v);
        }
    }

    let mut membership = vec![Vec::new(); n];
    for (c, set) in sets.iter().enumerate() {
        for &v in set {
            membership[v].push(c);
        }
    }
    for m in &mut membership {
        m.sort_unstable();
    }

    let expected_external = p_out * (n.saturating_sub(*block_sizes.iter().max().unwrap())) as f64;
    if expected_external < 1.0 {
        log::warn!(
            "planted graph may disconnect: expected external degree {expected_external:.2} < 1"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if crate::cover::count_common(&membership[u], &membership[v]) > 0 {
                p_in
            } else {
                p_out
            };
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    let (graph, _) = Graph::build(&pairs, Some(n));
    let (cover, _) = Cover::build(&graph, sets)?;
    Ok(Planted { graph, cover })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics;

    #[test]
    fn chain_shape_matches_counting() {
        let chain = gen_clique_chain(4, 4, 4).unwrap();
        assert_eq!(chain.graph.node_count(), 12);
        assert_eq!(chain.graph.edge_count(), 3 * 6 + 2);
        assert!(chain.graph.has_edge(chain.u_x, chain.v_x));
        assert!(chain.graph.has_edge(chain.u_z, chain.v_z));
        assert_ne!(chain.v_x, chain.v_z);
        assert!(!chain.graph.has_edge(chain.u_x, chain.u_z));
    }

    #[test]
    fn chain_rejects_small_cliques() {
        assert!(gen_clique_chain(2, 4, 4).is_err());
    }

    #[test]
    fn ring_shape_and_ground_truth_score() {
        let ring = gen_clique_ring(3, 4).unwrap();
        assert_eq!(ring.graph.node_count(), 15);
        assert_eq!(ring.graph.edge_count(), 3 * 6 + 6);
        for &b in &ring.bridges {
            assert_eq!(ring.graph.degree(b), 2);
        }
        assert_eq!(ring.graph.component_count(), 1);

        let got = metrics::genperm_network(&ring.graph, &ring.cover).unwrap();
        let expected = clique_ring_expected_genperm(3, 4);
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        // Bridges are singletons scoring exactly zero.
        for &b in &ring.bridges {
            assert_eq!(
                metrics::genperm_vertex(&ring.graph, &ring.cover, b).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn merging_a_bridge_into_a_clique_scores_lower() {
        let ring = gen_clique_ring(3, 4).unwrap();
        let mut sets: Vec<Vec<usize>> = ring.cliques.clone();
        // Merge bridge 0 into clique 0; keep the other bridges singleton.
        sets[0].push(ring.bridges[0]);
        sets.extend(ring.bridges[1..].iter().map(|&b| vec![b]));
        let (merged, _) = Cover::build(&ring.graph, sets).unwrap();
        let merged_score = metrics::genperm_network(&ring.graph, &merged).unwrap();
        let truth_score = metrics::genperm_network(&ring.graph, &ring.cover).unwrap();
        assert!(merged_score < truth_score);
    }

    #[test]
    fn star_shape_and_overlap_vertices() {
        let star = gen_clique_star(4, &[4, 4, 4, 4]).unwrap();
        assert_eq!(star.graph.node_count(), 12);
        assert_eq!(star.overlap, vec![0, 1, 2, 3]);
        for &v in &star.overlap {
            assert_eq!(star.cover.membership_count(v), 3);
        }
    }

    #[test]
    fn star_ground_truth_gives_overlap_vertices_total_one() {
        for sizes in [[4, 4, 4, 4], [5, 3, 6, 4]] {
            let star = gen_clique_star(4, &sizes).unwrap();
            for &v in &star.overlap {
                let total = metrics::genperm_vertex(&star.graph, &star.cover, v).unwrap();
                assert!((total - 1.0).abs() < 1e-12, "vertex {v}: {total}");
            }
        }
    }

    #[test]
    fn star_rejects_too_many_surrounds() {
        assert!(gen_clique_star(3, &[3, 3, 3, 3]).is_err());
    }

    #[test]
    fn planted_is_deterministic_under_seed() {
        let a = gen_planted_overlap(&[20, 20, 20], 0.1, 0.6, 0.05, 9).unwrap();
        let b = gen_planted_overlap(&[20, 20, 20], 0.1, 0.6, 0.05, 9).unwrap();
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.cover.communities(), b.cover.communities());
    }

    #[test]
    fn planted_extremes() {
        let disjoint = gen_planted_overlap(&[10, 10], 0.0, 1.0, 0.0, 1).unwrap();
        assert!(disjoint.cover.is_partition());
        // p_in = 1, p_out = 0 gives exactly the disjoint cliques.
        assert_eq!(disjoint.graph.edge_count(), 2 * (10 * 9 / 2));
        let score = metrics::genperm_network(&disjoint.graph, &disjoint.cover).unwrap();
        assert!((score - 1.0).abs() < 1e-12);
    }
}
