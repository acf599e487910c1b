//! Overlapping community structure (a cover) over a fixed graph.
//!
//! A `Cover` owns three mutually consistent indices: the community node
//! sets, a per-node membership list, and the per-edge sharing count `x_e`
//! (how many communities contain both endpoints of an edge; 0 is allowed).
//! Nodes the input leaves uncovered become implicit singleton communities —
//! ground-truth files for real networks routinely leave nodes unassigned and
//! failing hard on them would be hostile — and the count is surfaced so
//! callers can filter. Duplicate community node sets are collapsed, since
//! they would double-count `x_e` and memberships invisibly.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::graph::{parse_node_id, Graph};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Cover {
    /// Community node sets, each sorted ascending.
    communities: Vec<Vec<usize>>,
    /// Per-node sorted list of community ids.
    membership: Vec<Vec<usize>>,
    /// Per-edge sharing count, aligned with `Graph::edges`.
    edge_sharing: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CoverReport {
    pub implicit_singletons: usize,
    pub duplicates_collapsed: usize,
    pub empty_communities_dropped: usize,
}

impl Cover {
    /// Builds the cover and its indices. Uncovered nodes are wrapped into
    /// implicit singletons; duplicate and empty communities are dropped, with
    /// counts reported.
    pub fn build(graph: &Graph, communities: Vec<Vec<usize>>) -> Result<(Cover, CoverReport)> {
        let n = graph.node_count();
        let mut report = CoverReport::default();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(communities.len());
        for mut set in communities {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                report.empty_communities_dropped += 1;
                continue;
            }
            if let Some(&bad) = set.iter().find(|&&v| v >= n) {
                return Err(Error::NodeOutOfRange {
                    node: bad,
                    node_count: n,
                });
            }
            if seen.insert(set.clone(), ()).is_some() {
                report.duplicates_collapsed += 1;
                continue;
            }
            sets.push(set);
        }

        let mut covered = vec![false; n];
        for set in &sets {
            for &v in set {
                covered[v] = true;
            }
        }
        for (v, is_covered) in covered.iter().enumerate() {
            if !is_covered {
                sets.push(vec![v]);
                report.implicit_singletons += 1;
            }
        }

        let mut membership = vec![Vec::new(); n];
        for (c, set) in sets.iter().enumerate() {
            for &v in set {
                membership[v].push(c);
            }
        }
        let edge_sharing = graph
            .edges()
            .iter()
            .map(|&(u, v)| count_common(&membership[u], &membership[v]))
            .collect();

        Ok((
            Cover {
                communities: sets,
                membership,
                edge_sharing,
            },
            report,
        ))
    }

    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    pub fn node_count(&self) -> usize {
        self.membership.len()
    }

    /// Sorted node set of community `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.communities[c]
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.communities
    }

    /// Sorted community ids of node `v`.
    pub fn memberships_of(&self, v: usize) -> &[usize] {
        &self.membership[v]
    }

    /// Number of communities containing `v` (`O_v`).
    pub fn membership_count(&self, v: usize) -> usize {
        self.membership[v].len()
    }

    pub fn contains(&self, c: usize, v: usize) -> bool {
        self.membership[v].binary_search(&c).is_ok()
    }

    /// `x_e` for the edge at `edge_index` in the graph's canonical edge list.
    pub fn edge_sharing(&self, edge_index: usize) -> usize {
        self.edge_sharing[edge_index]
    }

    /// Number of communities shared by the endpoints of an arbitrary pair.
    pub fn shared_communities(&self, u: usize, v: usize) -> usize {
        count_common(&self.membership[u], &self.membership[v])
    }

    /// Maximum `x_e` over all edges (`R`); 0 when no edge is internal anywhere.
    pub fn max_edge_sharing(&self) -> usize {
        self.edge_sharing.iter().copied().max().unwrap_or(0)
    }

    /// True when every node belongs to exactly one community.
    pub fn is_partition(&self) -> bool {
        self.membership.iter().all(|m| m.len() == 1)
    }

    /// (n_c, n_c^e, edge density). Density of a singleton community is 0.
    pub fn community_stats(&self, graph: &Graph, c: usize) -> (usize, usize, f64) {
        let set = &self.communities[c];
        let n_c = set.len();
        let mut internal = 0usize;
        for &u in set {
            for &w in graph.neighbors(u) {
                if w > u && self.contains(c, w) {
                    internal += 1;
                }
            }
        }
        let pairs = n_c * n_c.saturating_sub(1) / 2;
        let density = if pairs == 0 {
            0.0
        } else {
            internal as f64 / pairs as f64
        };
        (n_c, internal, density)
    }
}

/// Two-pointer intersection size of sorted slices.
pub(crate) fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// On-disk community formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommunityFormat {
    /// One community per line, whitespace-separated node ids.
    CommunityPerLine,
    /// `node c1 c2 ...` per line (LFR `community.dat` convention).
    NodeMembership,
    /// Guess: a file whose first column holds a distinct id on every line is
    /// treated as a membership file, otherwise as community-per-line.
    Auto,
}

pub struct ParsedCommunities {
    pub communities: Vec<Vec<usize>>,
    pub detected_format: CommunityFormat,
}

pub fn read_communities(
    path: impl AsRef<Path>,
    format: CommunityFormat,
    one_indexed: bool,
) -> Result<ParsedCommunities> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })?;
    parse_communities(
        BufReader::new(file),
        &path.display().to_string(),
        format,
        one_indexed,
    )
}

pub fn parse_communities<R: BufRead>(
    reader: R,
    source_name: &str,
    format: CommunityFormat,
    one_indexed: bool,
) -> Result<ParsedCommunities> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ids = trimmed
            .split_whitespace()
            .map(|tok| parse_node_id(tok, one_indexed, source_name, idx + 1))
            .collect::<Result<Vec<usize>>>()?;
        rows.push((idx + 1, ids));
    }
    if rows.is_empty() {
        return Err(Error::EmptyCover);
    }

    let format = match format {
        CommunityFormat::Auto => detect_format(&rows),
        explicit => explicit,
    };

    let communities = match format {
        CommunityFormat::CommunityPerLine => rows.into_iter().map(|(_, ids)| ids).collect(),
        CommunityFormat::NodeMembership => {
            let mut by_comm: HashMap<usize, Vec<usize>> = HashMap::new();
            for (line, ids) in rows {
                if ids.len() < 2 {
                    return Err(Error::Parse {
                        path: source_name.to_string(),
                        line,
                        message: "membership line needs a node id and at least one community id"
                            .to_string(),
                    });
                }
                let node = ids[0];
                for &comm in &ids[1..] {
                    by_comm.entry(comm).or_default().push(node);
                }
            }
            let mut keys: Vec<usize> = by_comm.keys().copied().collect();
            keys.sort_unstable();
            keys.into_iter()
                .map(|k| by_comm.remove(&k).unwrap())
                .collect()
        }
        CommunityFormat::Auto => unreachable!(),
    };
    Ok(ParsedCommunities {
        communities,
        detected_format: format,
    })
}

/// Membership files have one row per node, so the first column is distinct
/// across all rows; community files repeat member ids freely.
fn detect_format(rows: &[(usize, Vec<usize>)]) -> CommunityFormat {
    let mut firsts: Vec<usize> = rows
        .iter()
        .filter_map(|(_, ids)| ids.first().copied())
        .collect();
    let total = firsts.len();
    firsts.sort_unstable();
    firsts.dedup();
    if firsts.len() == total && rows.iter().all(|(_, ids)| ids.len() >= 2) && total > 1 {
        CommunityFormat::NodeMembership
    } else {
        CommunityFormat::CommunityPerLine
    }
}

/// Writes format A: one community per line.
pub fn write_communities<W: Write>(mut out: W, cover: &Cover, one_indexed: bool) -> Result<()> {
    let shift = usize::from(one_indexed);
    for set in cover.communities() {
        let line = set
            .iter()
            .map(|&v| (v + shift).to_string())
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_n(n: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::build(&pairs, None).0
    }

    #[test]
    fn single_community_on_triangle() {
        let g = k_n(3);
        let (cover, report) = Cover::build(&g, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(report, CoverReport::default());
        for v in 0..3 {
            assert_eq!(cover.membership_count(v), 1);
        }
        for e in 0..g.edge_count() {
            assert_eq!(cover.edge_sharing(e), 1);
        }
    }

    #[test]
    fn overlapping_pair_on_k4() {
        let g = k_n(4);
        let (cover, _) = Cover::build(&g, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let idx_12 = g.edges().iter().position(|&e| e == (1, 2)).unwrap();
        let idx_03 = g.edges().iter().position(|&e| e == (0, 3)).unwrap();
        assert_eq!(cover.edge_sharing(idx_12), 2);
        assert_eq!(cover.edge_sharing(idx_03), 0);
        assert_eq!(cover.membership_count(1), 2);
        assert_eq!(cover.max_edge_sharing(), 2);
    }

    #[test]
    fn edge_per_community_gives_degree_memberships() {
        // A star center of degree 3 assigned one community per incident edge.
        let (g, _) = Graph::build(&[(0, 1), (0, 2), (0, 3)], None);
        let comms: Vec<Vec<usize>> = g.edges().iter().map(|&(u, v)| vec![u, v]).collect();
        let (cover, _) = Cover::build(&g, comms).unwrap();
        assert_eq!(cover.membership_count(0), 3);
        assert_eq!(cover.max_edge_sharing(), 1);
    }

    #[test]
    fn uncovered_nodes_become_reported_singletons() {
        let (g, _) = Graph::build(&[(0, 1), (1, 2), (3, 4)], None);
        let (cover, report) = Cover::build(&g, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(report.implicit_singletons, 2);
        assert_eq!(cover.community_count(), 3);
        assert_eq!(cover.membership_count(3), 1);
    }

    #[test]
    fn duplicates_collapse() {
        let g = k_n(3);
        let (cover, report) = Cover::build(&g, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(report.duplicates_collapsed, 1);
        assert_eq!(cover.community_count(), 1);
    }

    #[test]
    fn out_of_range_node_rejected() {
        let g = k_n(3);
        assert!(matches!(
            Cover::build(&g, vec![vec![0, 7]]),
            Err(Error::NodeOutOfRange { node: 7, .. })
        ));
    }

    #[test]
    fn membership_sum_equals_size_sum() {
        let g = k_n(5);
        let (cover, _) =
            Cover::build(&g, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 4]]).unwrap();
        let o_sum: usize = (0..5).map(|v| cover.membership_count(v)).sum();
        let n_sum: usize = cover.communities().iter().map(|c| c.len()).sum();
        assert_eq!(o_sum, n_sum);
    }

    #[test]
    fn stats_on_clique_path_and_independent_set() {
        let g = k_n(4);
        let (cover, _) = Cover::build(&g, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(cover.community_stats(&g, 0), (4, 6, 1.0));

        let (p4, _) = Graph::build(&[(0, 1), (1, 2), (2, 3)], None);
        let (cover, _) = Cover::build(&p4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(cover.community_stats(&p4, 0), (4, 3, 0.5));

        let (empty3, _) = Graph::build(&[(0, 3), (1, 3), (2, 3)], None);
        let (cover, _) = Cover::build(&empty3, vec![vec![0, 1, 2], vec![3]]).unwrap();
        assert_eq!(cover.community_stats(&empty3, 0), (3, 0, 0.0));
    }

    #[test]
    fn disjoint_partition_has_r_one() {
        let g = k_n(4);
        let (cover, _) = Cover::build(&g, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(cover.max_edge_sharing(), 1);
        assert!(cover.is_partition());
    }

    #[test]
    fn community_file_round_trip() {
        let g = k_n(5);
        let (cover, _) = Cover::build(&g, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let mut buf = Vec::new();
        write_communities(&mut buf, &cover, false).unwrap();
        let parsed =
            parse_communities(&buf[..], "mem", CommunityFormat::CommunityPerLine, false).unwrap();
        let (rebuilt, _) = Cover::build(&g, parsed.communities).unwrap();
        assert_eq!(rebuilt.communities(), cover.communities());
    }

    #[test]
    fn membership_format_parses_lfr_style() {
        let text = b"1\t1 2\n2\t1\n3\t2\n" as &[u8];
        let parsed = parse_communities(text, "mem", CommunityFormat::Auto, true).unwrap();
        assert_eq!(parsed.detected_format, CommunityFormat::NodeMembership);
        // community ids are one-indexed in the file too; they come back densely.
        assert_eq!(parsed.communities.len(), 2);
        assert_eq!(parsed.communities[0], vec![0, 1]);
        assert_eq!(parsed.communities[1], vec![0, 2]);
    }

    #[test]
    fn auto_detect_prefers_community_lines_on_repeats() {
        let text = b"0 1 2\n0 3\n" as &[u8];
        let parsed = parse_communities(text, "mem", CommunityFormat::Auto, false).unwrap();
        assert_eq!(parsed.detected_format, CommunityFormat::CommunityPerLine);
    }
}
