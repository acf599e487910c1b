//! Community detection by iterative per-vertex GenPerm maximization, plus
//! the constant-community stability analysis across vertex orderings.
//!
//! The sweep starts from one community per edge, then repeatedly lets each
//! vertex re-pick the set of neighboring communities in which its GenPerm
//! term is positive, adopting the new set when the sum of those candidate
//! terms beats its current total. Candidate terms are each scored under the
//! hypothesis "current memberships plus this community"; the adoption test
//! compares their plain sum against the current total, which matches the
//! accumulation order of the published procedure. A vertex whose candidates
//! all score non-positive falls back to a fresh singleton community.
//! Singleton communities are kept, never merged away.
//!
//! The global objective is re-evaluated from scratch on the deduplicated
//! cover at the end of every iteration; the loop stops when it repeats
//! (within `objective_tolerance`), when no vertex moved, or at `max_iter`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{count_common, Cover};
use crate::graph::Graph;
use crate::metrics::{self, clustering_value, genperm_from_parts};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrdering {
    AscendingId,
    /// One seeded permutation drawn per run and reused across iterations.
    SeededShuffle(u64),
}

#[derive(Debug, Clone)]
pub struct DetectConfig {
    pub max_iter: usize,
    pub ordering: VertexOrdering,
    /// Stop once the end-of-iteration objective repeats within this
    /// tolerance; 0 demands exact repetition.
    pub objective_tolerance: f64,
    /// Allow disconnected input by running each component independently and
    /// merging the covers.
    pub per_component: bool,
}

impl Default for DetectConfig {
    fn default() -> Self {
        DetectConfig {
            max_iter: 15,
            ordering: VertexOrdering::AscendingId,
            objective_tolerance: 0.0,
            per_component: false,
        }
    }
}

#[derive(Debug)]
pub struct DetectionResult {
    pub cover: Cover,
    pub per_vertex_genperm: Vec<f64>,
    /// Network GenPerm recomputed from scratch after each iteration. In
    /// per-component mode components iterate independently, so only the
    /// final merged value is recorded.
    pub objective_history: Vec<f64>,
    pub iterations_used: usize,
    pub converged: bool,
}

/// MaxGenPerm. Errors on disconnected input unless `per_component` is set,
/// and on any degree-0 vertex (the objective is undefined there).
pub fn max_genperm(graph: &Graph, config: &DetectConfig) -> Result<DetectionResult> {
    if let Some(v) = (0..graph.node_count()).find(|&v| graph.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = graph.component_count();
    if components > 1 {
        if !config.per_component {
            return Err(Error::Disconnected { components });
        }
        return detect_per_component(graph, config);
    }

    let mut state = SweepState::new(graph);
    let order = vertex_order(graph.node_count(), config.ordering);

    let mut history: Vec<f64> = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        iterations += 1;
        let moved = state.sweep(graph, &order);
        let cover = state.to_cover(graph)?;
        let objective = metrics::genperm_network(graph, &cover)?;
        if let Some(&prev) = history.last() {
            if objective < prev {
                log::warn!(
                    "objective regressed from {prev} to {objective} at iteration {iterations}"
                );
            }
            if (objective - prev).abs() <= config.objective_tolerance {
                history.push(objective);
                converged = true;
                break;
            }
        }
        history.push(objective);
        if moved == 0 {
            converged = true;
            break;
        }
    }

    let cover = state.to_cover(graph)?;
    let per_vertex_genperm = (0..graph.node_count())
        .map(|v| metrics::genperm_vertex(graph, &cover, v))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DetectionResult {
        cover,
        per_vertex_genperm,
        objective_history: history,
        iterations_used: iterations,
        converged,
    })
}

fn vertex_order(n: usize, ordering: VertexOrdering) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    if let VertexOrdering::SeededShuffle(seed) = ordering {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }
    order
}

fn detect_per_component(graph: &Graph, config: &DetectConfig) -> Result<DetectionResult> {
    let labels = graph.connected_components();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut iterations_used = 0;
    let mut converged = true;
    let sub_config = DetectConfig {
        per_component: false,
        ..config.clone()
    };
    for comp in 0..count {
        let nodes: Vec<usize> = (0..graph.node_count())
            .filter(|&v| labels[v] == comp)
            .collect();
        let (sub, map) = graph.induced_subgraph(&nodes)?;
        let result = max_genperm(&sub, &sub_config)?;
        for set in result.cover.communities() {
            sets.push(set.iter().map(|&v| map.new_to_old[v]).collect());
        }
        iterations_used = iterations_used.max(result.iterations_used);
        converged &= result.converged;
    }
    let (cover, _) = Cover::build(graph, sets)?;
    let objective = metrics::genperm_network(graph, &cover)?;
    let per_vertex_genperm = (0..graph.node_count())
        .map(|v| metrics::genperm_vertex(graph, &cover, v))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DetectionResult {
        cover,
        per_vertex_genperm,
        objective_history: vec![objective],
        iterations_used,
        converged,
    })
}

/// Mutable working structure for one run. Community ids grow monotonically
/// and are never reused; emptied communities become `None`.
struct SweepState {
    /// Community id -> sorted member list.
    communities: Vec<Option<Vec<usize>>>,
    /// Node -> sorted community ids.
    membership: Vec<Vec<usize>>,
}

impl SweepState {
    /// Edge-per-community initialization: both endpoints of every edge form
    /// a two-node community.
    fn new(graph: &Graph) -> SweepState {
        let mut communities = Vec::with_capacity(graph.edge_count());
        let mut membership = vec![Vec::new(); graph.node_count()];
        for (idx, &(u, v)) in graph.edges().iter().enumerate() {
            communities.push(Some(vec![u, v]));
            membership[u].push(idx);
            membership[v].push(idx);
        }
        SweepState {
            communities,
            membership,
        }
    }

    fn members(&self, c: usize) -> &[usize] {
        self.communities[c].as_deref().unwrap_or(&[])
    }

    /// One full pass over the vertices; returns how many changed membership.
    fn sweep(&mut self, graph: &Graph, order: &[usize]) -> usize {
        let mut moved = 0;
        for &v in order {
            if self.update_vertex(graph, v) {
                moved += 1;
            }
        }
        moved
    }

    fn update_vertex(&mut self, graph: &Graph, v: usize) -> bool {
        let mut changed = false;
        // Per-candidate counts of v's neighbors inside each neighboring
        // community. A community reachable through a single neighbor can
        // never score positive (its clustering term is 0 and the pull never
        // beats the share), so k >= 2 is an exact pre-filter for joins.
        let mut neighbor_counts: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        for &u in graph.neighbors(v) {
            for &c in &self.membership[u] {
                *neighbor_counts.entry(c).or_insert(0) += 1;
            }
        }
        let mut joins: Vec<usize> = neighbor_counts
            .iter()
            .filter(|&(&c, &k)| k >= 2 && self.membership[v].binary_search(&c).is_err())
            .map(|(&c, _)| c)
            .collect();
        joins.sort_unstable();
        let mut own_total = self.vertex_total(graph, v);
        // Neighbor totals stay valid until one of v's moves commits.
        let mut neighbor_totals: std::collections::HashMap<usize, f64> =
            std::collections::HashMap::new();
        for c in joins {
            let mut hypothesis = self.membership[v].clone();
            if let Err(pos) = hypothesis.binary_search(&c) {
                hypothesis.insert(pos, c);
            }
            if self.score_in_community(graph, v, &hypothesis, c) > 0.0 {
                if let Some(total) =
                    self.try_move(graph, v, c, true, own_total, &mut neighbor_totals)
                {
                    own_total = total;
                    changed = true;
                }
            }
        }

        // Drop communities where v's term has fallen to zero or below.
        let current = self.membership[v].clone();
        for c in current {
            if self.membership[v].len() == 1 && self.members(c) == [v] {
                continue; // lone singleton; dropping it would just recreate it
            }
            if self.score_in_community(graph, v, &self.membership[v], c) <= 0.0 {
                if let Some(total) =
                    self.try_move(graph, v, c, false, own_total, &mut neighbor_totals)
                {
                    own_total = total;
                    changed = true;
                }
            }
        }

        // Nothing holds v at all: retreat to a fresh singleton community.
        if self.membership[v].is_empty() {
            let id = self.communities.len();
            self.communities.push(Some(vec![v]));
            self.membership[v] = vec![id];
            changed = true;
        }
        changed
    }

    /// Applies a single join/drop of community `c` by `v` given v's current
    /// total; returns the new total when the move is kept. A move must never
    /// decrease v's own total. Joins additionally must not decrease the
    /// summed total over the affected part of v's neighborhood, so a vertex
    /// cannot buy membership at its neighbors' expense; drops stay selfish,
    /// which is what lets a bridging vertex retreat to a singleton even
    /// though the community it leaves loses value. Value-neutral moves are
    /// adopted: they consolidate redundant partial communities into
    /// duplicates that the final cover build collapses.
    fn try_move(
        &mut self,
        graph: &Graph,
        v: usize,
        c: usize,
        join: bool,
        own_before: f64,
        neighbor_totals: &mut std::collections::HashMap<usize, f64>,
    ) -> Option<f64> {
        const TIE: f64 = 1e-12;
        let old = self.membership[v].clone();
        let mut new = old.clone();
        if join {
            if let Err(pos) = new.binary_search(&c) {
                new.insert(pos, c);
            }
        } else if let Ok(pos) = new.binary_search(&c) {
            new.remove(pos);
        }

        // Only two kinds of neighbors can change value: members of `c`
        // (their edge to v changes sharing or community content) and
        // strangers sharing nothing with v (their best-external-pull may
        // shift because v's community list changes). Everyone else keeps
        // every ingredient of every term.
        let members_affected: Vec<usize> = if join {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| self.membership[u].binary_search(&c).is_ok())
                .collect()
        } else {
            Vec::new()
        };
        let strangers: Vec<usize> = if join {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| count_common(&old, &self.membership[u]) == 0)
                .filter(|&u| self.membership[u].binary_search(&c).is_err())
                .collect()
        } else {
            Vec::new()
        };

        let members_before: f64 = members_affected
            .iter()
            .map(|&u| match neighbor_totals.get(&u) {
                Some(&total) => total,
                None => {
                    let total = self.vertex_total(graph, u);
                    neighbor_totals.insert(u, total);
                    total
                }
            })
            .sum();
        let stranger_delta: f64 = strangers
            .iter()
            .map(|&u| self.stranger_pull_delta(graph, u, c, join))
            .sum();

        self.apply_membership(v, &old, new);
        let own_after = self.vertex_total(graph, v);
        let members_after: f64 = members_affected
            .iter()
            .map(|&u| self.vertex_total(graph, u))
            .sum();

        let own_delta = own_after - own_before;
        let total_delta = own_delta + (members_after - members_before) + stranger_delta;
        let rejected = own_delta < -TIE || (join && total_delta < -TIE);
        if rejected {
            let adopted = self.membership[v].clone();
            self.apply_membership(v, &adopted, old);
            return None;
        }
        // The commit changed x-sharing around v; cached neighbor totals are
        // stale from here on.
        neighbor_totals.clear();
        log::trace!(
            "vertex {v}: {} community {c} (own {own_before:.4} -> {own_after:.4}, delta {total_delta:.4})",
            if join { "joined" } else { "left" }
        );
        Some(own_after)
    }

    /// Value change of stranger `u` (no community shared with `v`) when v
    /// joins or leaves `c`: only its maximum external pull can move, and by
    /// conservation the pull terms sum to I(u), so the change is
    /// I(u)/D(u) * (1/E_new - 1/E_old).
    fn stranger_pull_delta(&self, graph: &Graph, u: usize, c: usize, join: bool) -> f64 {
        let mut counts: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut internal = 0usize;
        for &w in graph.neighbors(u) {
            if count_common(&self.membership[u], &self.membership[w]) > 0 {
                internal += 1;
            } else {
                for &cw in &self.membership[w] {
                    *counts.entry(cw).or_insert(0) += 1;
                }
            }
        }
        let e_old = counts.values().copied().max().unwrap_or(0).max(1);
        let entry = counts.entry(c).or_insert(0);
        if join {
            *entry += 1;
        } else {
            *entry = entry.saturating_sub(1);
        }
        let e_new = counts.values().copied().max().unwrap_or(0).max(1);
        if e_new == e_old {
            return 0.0;
        }
        internal as f64 / graph.degree(u) as f64 * (1.0 / e_new as f64 - 1.0 / e_old as f64)
    }

    /// Sum of w's terms over its current communities. Equivalent to scoring
    /// each community separately, but the per-neighbor sharing counts and
    /// the external pull are computed once and reused across terms.
    fn vertex_total(&self, graph: &Graph, w: usize) -> f64 {
        let membership = &self.membership[w];
        if membership.is_empty() {
            return 0.0;
        }
        let degree = graph.degree(w);
        let neighbors = graph.neighbors(w);
        let mut shared: Vec<usize> = Vec::with_capacity(neighbors.len());
        let mut internal = 0usize;
        let mut strangers: Vec<usize> = Vec::new();
        for &u in neighbors {
            let s = count_common(membership, &self.membership[u]);
            shared.push(s);
            if s > 0 {
                internal += 1;
            } else {
                strangers.push(u);
            }
        }
        let e_max = self.max_pull(&strangers);

        let mut total = 0.0;
        let mut in_c: Vec<usize> = Vec::new();
        for &c in membership {
            in_c.clear();
            let mut effective = 0.0;
            for (&u, &s) in neighbors.iter().zip(&shared) {
                if s > 0 && self.membership[u].binary_search(&c).is_ok() {
                    effective += 1.0 / s as f64;
                    in_c.push(u);
                }
            }
            let mut edges_among = 0usize;
            for (i, &a) in in_c.iter().enumerate() {
                for &b in &in_c[i + 1..] {
                    if graph.has_edge(a, b) {
                        edges_among += 1;
                    }
                }
            }
            let c_in = clustering_value(edges_among, in_c.len());
            total += genperm_from_parts(degree, internal, effective, e_max, c_in);
        }
        total
    }

    /// P_g^c(v) with v's membership replaced by `hypothesis` (which must
    /// contain `c`). Other vertices keep their real memberships.
    fn score_in_community(&self, graph: &Graph, v: usize, hypothesis: &[usize], c: usize) -> f64 {
        let degree = graph.degree(v);
        let mut internal_neighbors = 0usize;
        let mut effective_internal = 0.0;
        let mut in_c: Vec<usize> = Vec::new();
        let mut strangers: Vec<usize> = Vec::new();
        for &u in graph.neighbors(v) {
            let shared = count_common(hypothesis, &self.membership[u]);
            if shared > 0 {
                internal_neighbors += 1;
                if self.membership[u].binary_search(&c).is_ok() {
                    effective_internal += 1.0 / shared as f64;
                    in_c.push(u);
                }
            } else {
                strangers.push(u);
            }
        }
        let e_max = self.max_pull(&strangers);
        let mut edges_among = 0usize;
        for (i, &a) in in_c.iter().enumerate() {
            for &b in &in_c[i + 1..] {
                if graph.has_edge(a, b) {
                    edges_among += 1;
                }
            }
        }
        let c_in = clustering_value(edges_among, in_c.len());
        genperm_from_parts(degree, internal_neighbors, effective_internal, e_max, c_in)
    }

    /// Largest per-community count over the given stranger neighbors,
    /// floored to 1. Stranger sets are small, so a flat counter beats a map.
    fn max_pull(&self, strangers: &[usize]) -> usize {
        if strangers.is_empty() {
            return 1;
        }
        let mut counts: Vec<(usize, usize)> = Vec::with_capacity(strangers.len());
        for &u in strangers {
            for &cu in &self.membership[u] {
                match counts.iter_mut().find(|(comm, _)| *comm == cu) {
                    Some((_, n)) => *n += 1,
                    None => counts.push((cu, 1)),
                }
            }
        }
        counts.iter().map(|&(_, n)| n).max().unwrap_or(0).max(1)
    }

    fn apply_membership(&mut self, v: usize, old: &[usize], new: Vec<usize>) {
        for &c in old {
            if new.binary_search(&c).is_err() {
                let set = self.communities[c]
                    .as_mut()
                    .expect("member of live community");
                if let Ok(pos) = set.binary_search(&v) {
                    set.remove(pos);
                }
                if set.is_empty() {
                    self.communities[c] = None;
                }
            }
        }
        for &c in &new {
            if old.binary_search(&c).is_err() {
                // A rejected move can revert into a community the attempt
                // had emptied; revive it under its old id.
                let set = self.communities[c].get_or_insert_with(Vec::new);
                if let Err(pos) = set.binary_search(&v) {
                    set.insert(pos, v);
                }
            }
        }
        self.membership[v] = new;
    }

    fn to_cover(&self, graph: &Graph) -> Result<Cover> {
        let sets: Vec<Vec<usize>> = self.communities.iter().flatten().cloned().collect();
        Ok(Cover::build(graph, sets)?.0)
    }
}

/// Groups of vertices that share at least one community in every run, and
/// the ratio of group count to node count. The co-membership relation is
/// intersected across runs and its connected components are the groups.
pub fn constant_communities(runs: &[Cover]) -> Result<(Vec<Vec<usize>>, f64)> {
    if runs.len() < 2 {
        return Err(Error::InvalidParameter(
            "constant communities need at least two runs".to_string(),
        ));
    }
    let n = runs[0].node_count();
    if let Some(other) = runs.iter().find(|c| c.node_count() != n) {
        return Err(Error::NodeUniverseMismatch {
            left: n,
            right: other.node_count(),
        });
    }

    // Union-find over pairs co-placed in every run; candidate pairs come
    // from the first run's communities.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for set in runs[0].communities() {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if runs[1..].iter().all(|run| run.shared_communities(u, v) > 0) {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru.max(rv)] = ru.min(rv);
                    }
                }
            }
        }
    }

    let mut groups_by_root: std::collections::BTreeMap<usize, Vec<usize>> =
        std::collections::BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups_by_root.entry(root).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = groups_by_root.into_values().collect();
    let phi = groups.len() as f64 / n as f64;
    Ok((groups, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn bridge_pair_recovers_the_two_cliques() {
        let toy = synth::gen_bridge_pair(4, 4).unwrap();
        let result = max_genperm(&toy.graph, &DetectConfig::default()).unwrap();
        assert_eq!(result.cover.communities(), toy.cover.communities());
        assert!(result.converged);
    }

    #[test]
    fn detection_is_deterministic() {
        let planted = synth::gen_planted_overlap(&[12, 12, 12], 0.1, 0.45, 0.04, 3).unwrap();
        let a = max_genperm(&planted.graph, &DetectConfig::default()).unwrap();
        let b = max_genperm(&planted.graph, &DetectConfig::default()).unwrap();
        assert_eq!(a.cover.communities(), b.cover.communities());
        assert_eq!(a.objective_history, b.objective_history);

        let cfg = DetectConfig {
            ordering: VertexOrdering::SeededShuffle(11),
            ..DetectConfig::default()
        };
        let c = max_genperm(&planted.graph, &cfg).unwrap();
        let d = max_genperm(&planted.graph, &cfg).unwrap();
        assert_eq!(c.cover.communities(), d.cover.communities());
    }

    #[test]
    fn disconnected_input_needs_the_flag() {
        let mut pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        pairs.extend((4..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))));
        let (g, _) = crate::graph::Graph::build(&pairs, None);

        assert!(matches!(
            max_genperm(&g, &DetectConfig::default()),
            Err(Error::Disconnected { components: 2 })
        ));
        let cfg = DetectConfig {
            per_component: true,
            ..DetectConfig::default()
        };
        let result = max_genperm(&g, &cfg).unwrap();
        assert_eq!(result.cover.community_count(), 2);
        assert!((result.objective_history.last().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_vertex_is_covered_in_the_output() {
        let planted = synth::gen_planted_overlap(&[12, 12], 0.2, 0.5, 0.08, 5).unwrap();
        let result = max_genperm(&planted.graph, &DetectConfig::default()).unwrap();
        for v in 0..planted.graph.node_count() {
            assert!(result.cover.membership_count(v) >= 1);
        }
        assert!(result.iterations_used <= 15);
    }

    #[test]
    fn objective_history_is_self_consistent() {
        let ring = synth::gen_clique_ring(3, 4).unwrap();
        let result = max_genperm(&ring.graph, &DetectConfig::default()).unwrap();
        let recomputed = metrics::genperm_network(&ring.graph, &result.cover).unwrap();
        let last = *result.objective_history.last().unwrap();
        assert!((last - recomputed).abs() < 1e-12);
    }

    #[test]
    fn constant_groups_on_identical_partitions() {
        let toy = synth::gen_bridge_pair(4, 4).unwrap();
        let runs = vec![toy.cover.clone(), toy.cover.clone()];
        let (groups, phi) = constant_communities(&runs).unwrap();
        assert_eq!(groups.len(), 2);
        assert!((phi - 2.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn constant_groups_all_singletons_when_never_coplaced() {
        let (g, _) = crate::graph::Graph::build(&[(0, 1), (1, 2), (2, 3)], None);
        let (a, _) = Cover::build(&g, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let (b, _) = Cover::build(&g, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let (groups, phi) = constant_communities(&[a, b]).unwrap();
        assert_eq!(groups.len(), 4);
        assert!((phi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_groups_hand_example() {
        // Three runs on 6 nodes with exactly one stable pair (0, 1).
        let (g, _) =
            crate::graph::Graph::build(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], None);
        let (r1, _) = Cover::build(&g, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let (r2, _) = Cover::build(&g, vec![vec![0, 1, 3], vec![2, 4], vec![5]]).unwrap();
        let (r3, _) = Cover::build(&g, vec![vec![0, 1], vec![2, 5], vec![3], vec![4]]).unwrap();
        let (groups, phi) = constant_communities(&[r1, r2, r3]).unwrap();
        assert!(groups.contains(&vec![0, 1]));
        assert_eq!(groups.len(), 5);
        assert!((phi - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn constant_groups_reject_single_run_and_mismatch() {
        let toy = synth::gen_bridge_pair(3, 3).unwrap();
        assert!(constant_communities(std::slice::from_ref(&toy.cover)).is_err());
        let other = synth::gen_bridge_pair(3, 4).unwrap();
        assert!(matches!(
            constant_communities(&[toy.cover.clone(), other.cover.clone()]),
            Err(Error::NodeUniverseMismatch { .. })
        ));
    }
}
