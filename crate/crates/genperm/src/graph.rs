//! Immutable undirected simple graph with dense 0-based node ids.
//!
//! Construction collapses duplicate edges and drops self-loops (the counts
//! are reported rather than treated as errors, because real edge lists —
//! LFR `network.dat` in particular — contain both). After construction a
//! `Graph` is never mutated; node removal is expressed as an induced
//! subgraph, which keeps concurrent read-only evaluation safe.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::{Error, Result};

/// Distance sentinel returned by [`Graph::bfs_distances`] for unreachable nodes.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Graph {
    node_count: usize,
    /// Canonical edge list, each pair stored as (min, max), sorted.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor list per node.
    adjacency: Vec<Vec<usize>>,
}

/// What `build` had to clean up from the raw pair list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub duplicate_edges_dropped: usize,
    pub self_loops_dropped: usize,
}

impl Graph {
    /// Builds a graph from raw, possibly messy edge pairs. `node_count_hint`
    /// can extend the id space past the largest endpoint (isolated trailing
    /// nodes).
    pub fn build(pairs: &[(usize, usize)], node_count_hint: Option<usize>) -> (Graph, BuildReport) {
        let mut report = BuildReport::default();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
        // Ids seen anywhere in the raw input count toward the node space,
        // including endpoints of dropped self-loops.
        let mut max_id = 0;
        for &(u, v) in pairs {
            max_id = max_id.max(u.max(v) + 1);
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        report.duplicate_edges_dropped = before - edges.len();

        let node_count = max_id.max(node_count_hint.unwrap_or(0));

        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        (
            Graph {
                node_count,
                edges,
                adjacency,
            },
            report,
        )
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical (min, max)-ordered edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `nodes`, with ids remapped contiguously in the
    /// iteration order of the (deduplicated, sorted) node set. Returns the
    /// graph together with the old→new id map.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<(Graph, IdMap)> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut sorted: Vec<usize> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&n| n >= self.node_count) {
            return Err(Error::NodeOutOfRange {
                node: bad,
                node_count: self.node_count,
            });
        }
        let old_to_new: HashMap<usize, usize> = sorted
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut pairs = Vec::new();
        for &u in &sorted {
            for &w in self.neighbors(u) {
                if w > u {
                    if let Some(&nw) = old_to_new.get(&w) {
                        pairs.push((old_to_new[&u], nw));
                    }
                }
            }
        }
        let (sub, _) = Graph::build(&pairs, Some(sorted.len()));
        Ok((
            sub,
            IdMap {
                old_to_new,
                new_to_old: sorted,
            },
        ))
    }

    /// Exact unweighted shortest-path distances from `source`; unreachable
    /// nodes get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>> {
        if source >= self.node_count {
            return Err(Error::NodeOutOfRange {
                node: source,
                node_count: self.node_count,
            });
        }
        let mut dist = vec![UNREACHABLE; self.node_count];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Component label per node; labels are assigned in ascending order of
    /// each component's smallest node id.
    pub fn connected_components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.node_count];
        let mut next = 0;
        for start in 0..self.node_count {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.connected_components()
            .iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count <= 1 || self.component_count() == 1
    }
}

/// Id remapping produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone)]
pub struct IdMap {
    pub old_to_new: HashMap<usize, usize>,
    /// Inverse map; `new_to_old[new_id] = old_id`.
    pub new_to_old: Vec<usize>,
}

/// Parse outcome for an edge-list file.
#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub report: BuildReport,
}

/// Reads the text edge-list format: one edge per line, two whitespace
/// separated integer ids, `#` lines ignored. Both `(u,v)` and `(v,u)` lines
/// are accepted and deduplicated, matching LFR `network.dat` which emits both
/// directions. With `one_indexed`, external ids are shifted down by one.
pub fn read_edge_list(path: impl AsRef<Path>, one_indexed: bool) -> Result<ParsedGraph> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })?;
    parse_edge_list(
        BufReader::new(file),
        &path.display().to_string(),
        one_indexed,
    )
}

pub fn parse_edge_list<R: BufRead>(
    reader: R,
    source_name: &str,
    one_indexed: bool,
) -> Result<ParsedGraph> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (a, b) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Parse {
                    path: source_name.to_string(),
                    line: idx + 1,
                    message: "expected two node ids".to_string(),
                })
            }
        };
        let u = parse_node_id(a, one_indexed, source_name, idx + 1)?;
        let v = parse_node_id(b, one_indexed, source_name, idx + 1)?;
        pairs.push((u, v));
    }
    let (graph, report) = Graph::build(&pairs, None);
    Ok(ParsedGraph { graph, report })
}

pub(crate) fn parse_node_id(
    token: &str,
    one_indexed: bool,
    path: &str,
    line: usize,
) -> Result<usize> {
    let raw: usize = token.parse().map_err(|_| Error::Parse {
        path: path.to_string(),
        line,
        message: format!("invalid node id {token:?}"),
    })?;
    if one_indexed {
        raw.checked_sub(1).ok_or_else(|| Error::Parse {
            path: path.to_string(),
            line,
            message: "node id 0 in a one-indexed file".to_string(),
        })
    } else {
        Ok(raw)
    }
}

/// Writes the canonical edge list, one `u v` line per edge.
pub fn write_edge_list<W: Write>(mut out: W, graph: &Graph, one_indexed: bool) -> Result<()> {
    let shift = usize::from(one_indexed);
    for &(u, v) in graph.edges() {
        writeln!(out, "{} {}", u + shift, v + shift)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_builds_clean() {
        let (g, report) = Graph::build(&[(0, 1), (1, 2), (2, 0)], None);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(report, BuildReport::default());
    }

    #[test]
    fn duplicates_and_self_loops_are_dropped_with_counts() {
        let (g, report) = Graph::build(&[(0, 1), (1, 0), (2, 2)], None);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.duplicate_edges_dropped, 1);
        assert_eq!(report.self_loops_dropped, 1);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], None);
        let degree_sum: usize = (0..g.node_count()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn induced_k4_minus_node_is_k3() {
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let (k4, _) = Graph::build(&pairs, None);
        let (sub, map) = k4.induced_subgraph(&[0, 1, 3]).unwrap();
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(map.new_to_old, vec![0, 1, 3]);
    }

    #[test]
    fn induced_nonadjacent_pair_has_no_edges() {
        let (path, _) = Graph::build(&[(0, 1), (1, 2)], None);
        let (sub, _) = path.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(sub.node_count(), 2);
        assert_eq!(sub.edge_count(), 0);
    }

    #[test]
    fn induced_empty_set_errors() {
        let (g, _) = Graph::build(&[(0, 1)], None);
        assert!(matches!(g.induced_subgraph(&[]), Err(Error::EmptyNodeSet)));
    }

    #[test]
    fn bfs_on_clique_and_path() {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let (k5, _) = Graph::build(&pairs, None);
        let d = k5.bfs_distances(2).unwrap();
        assert_eq!(d.iter().filter(|&&x| x == 1).count(), 4);

        let (path, _) = Graph::build(&[(0, 1), (1, 2), (2, 3)], None);
        assert_eq!(path.bfs_distances(0).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn bfs_marks_other_component_unreachable() {
        let (g, _) = Graph::build(&[(0, 1), (2, 3)], None);
        let d = g.bfs_distances(0).unwrap();
        assert_eq!(d[2], UNREACHABLE);
        assert_eq!(d[3], UNREACHABLE);
    }

    #[test]
    fn components_of_two_triangles() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], None);
        let labels = g.connected_components();
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn edge_list_round_trip() {
        let (g, _) = Graph::build(&[(0, 3), (3, 7), (7, 0), (2, 5)], None);
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g, false).unwrap();
        let parsed = parse_edge_list(&buf[..], "mem", false).unwrap();
        assert_eq!(parsed.graph.edges(), g.edges());
    }

    #[test]
    fn one_indexed_parsing_shifts_ids() {
        let text = b"# comment\n1 2\n2 3\n3 1\n" as &[u8];
        let parsed = parse_edge_list(text, "mem", true).unwrap();
        assert_eq!(parsed.graph.node_count(), 3);
        assert_eq!(parsed.graph.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn both_directions_dedup_like_lfr_files() {
        let text = b"0 1\n1 0\n1 2\n2 1\n" as &[u8];
        let parsed = parse_edge_list(text, "mem", false).unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(parsed.report.duplicate_edges_dropped, 2);
    }
}
