//! Experiment procedures built on the metrics: cover perturbation and the
//! robustness sweep, community-centric subnetwork sampling, the binned
//! score profile, farness and assortativity within communities, layered
//! node-removal, and push-based message spreading.
//!
//! All randomness flows from explicit seeds; trials derive per-index seeds
//! so they can run concurrently without changing results.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::Cover;
use crate::graph::Graph;
use crate::metrics::{self, vertex_context};
use crate::validate;
use crate::{derive_seed, Error, Result};

/// How a ground-truth cover gets damaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbStrategy {
    /// Pick an edge whose endpoints have different membership lists and
    /// swap the lists; `floor(p * |E|)` times.
    Edge,
    /// Same swap on random node pairs with different lists; `floor(p * |V|)`
    /// times.
    Random,
    /// Each community exchanges `floor(p * |s|)` members with uniformly
    /// chosen non-members.
    Community,
}

impl PerturbStrategy {
    pub const ALL: [PerturbStrategy; 3] = [
        PerturbStrategy::Edge,
        PerturbStrategy::Random,
        PerturbStrategy::Community,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PerturbStrategy::Edge => "edge",
            PerturbStrategy::Random => "random",
            PerturbStrategy::Community => "community",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PerturbationSpec {
    pub strategy: PerturbStrategy,
    /// Perturbation intensity in [0, 0.5]; 0 keeps the cover untouched and
    /// anchors sweep grids.
    pub intensity: f64,
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn new(strategy: PerturbStrategy, intensity: f64, seed: u64) -> Result<Self> {
        if !(0.0..=0.5).contains(&intensity) {
            return Err(Error::InvalidParameter(format!(
                "perturbation intensity must lie in [0, 0.5], got {intensity}"
            )));
        }
        Ok(PerturbationSpec {
            strategy,
            intensity,
            seed,
        })
    }
}

/// Returns a new, perturbed cover; the input is untouched. Eligible swap
/// pairs are nodes with different membership lists; sampling retries are
/// bounded at 100 per requested swap.
pub fn perturb(graph: &Graph, truth: &Cover, spec: &PerturbationSpec) -> Result<Cover> {
    let n = graph.node_count();
    let mut membership: Vec<Vec<usize>> =
        (0..n).map(|v| truth.memberships_of(v).to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    match spec.strategy {
        PerturbStrategy::Edge => {
            let target = (spec.intensity * graph.edge_count() as f64).floor() as usize;
            swap_loop(target, &mut membership, &mut rng, |rng, membership| {
                let &(u, v) = graph
                    .edges()
                    .get(rng.gen_range(0..graph.edge_count()))
                    .expect("non-empty edge list");
                (membership[u] != membership[v]).then_some((u, v))
            })?;
        }
        PerturbStrategy::Random => {
            let target = (spec.intensity * n as f64).floor() as usize;
            swap_loop(target, &mut membership, &mut rng, |rng, membership| {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                (u != v && membership[u] != membership[v]).then_some((u, v))
            })?;
        }
        PerturbStrategy::Community => {
            for c in 0..truth.community_count() {
                let members = truth.members(c);
                let count = (spec.intensity * members.len() as f64).floor() as usize;
                if count == 0 {
                    continue;
                }
                let outsiders: Vec<usize> = (0..n).filter(|&v| !truth.contains(c, v)).collect();
                if outsiders.len() < count {
                    return Err(Error::NoEligiblePair {
                        attempts: outsiders.len(),
                    });
                }
                let mut leaving = members.to_vec();
                leaving.shuffle(&mut rng);
                leaving.truncate(count);
                let mut joining = outsiders;
                joining.shuffle(&mut rng);
                joining.truncate(count);
                for &v in &leaving {
                    membership[v].retain(|&m| m != c);
                }
                for &v in &joining {
                    membership[v].push(c);
                }
            }
        }
    }

    let mut sets = vec![Vec::new(); truth.community_count()];
    for (v, comms) in membership.iter().enumerate() {
        for &c in comms {
            sets[c].push(v);
        }
    }
    Ok(Cover::build(graph, sets)?.0)
}

fn swap_loop<R: Rng>(
    target: usize,
    membership: &mut [Vec<usize>],
    rng: &mut R,
    mut pick: impl FnMut(&mut R, &[Vec<usize>]) -> Option<(usize, usize)>,
) -> Result<()> {
    let mut done = 0;
    let mut attempts = 0;
    let budget = target.saturating_mul(100);
    while done < target {
        attempts += 1;
        if attempts > budget {
            return Err(Error::NoEligiblePair { attempts });
        }
        if let Some((u, v)) = pick(rng, membership) {
            membership.swap(u, v);
            done += 1;
        }
    }
    Ok(())
}

/// One row of the robustness sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub strategy: &'static str,
    pub intensity: f64,
    pub metric: &'static str,
    /// Mean over trials, normalized by the metric's maximum over this
    /// strategy's whole intensity grid.
    pub value: f64,
}

/// Perturbs the truth across a grid of intensities and strategies, scoring
/// every perturbed cover with the five scoring metrics. Values are averaged
/// over `trials` seeded runs and normalized per (strategy, metric) by the
/// maximum over the grid.
pub fn robustness_sweep(
    graph: &Graph,
    truth: &Cover,
    strategies: &[PerturbStrategy],
    intensities: &[f64],
    trials: usize,
    base_seed: u64,
) -> Result<Vec<SweepCell>> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "need at least one trial".to_string(),
        ));
    }
    let mut cells = Vec::new();
    for &strategy in strategies {
        // means[grid][metric]
        let mut means = vec![[0.0f64; 5]; intensities.len()];
        for (gi, &p) in intensities.iter().enumerate() {
            // Collect per trial and sum in index order so results do not
            // depend on the thread count.
            let per_trial: Vec<[f64; 5]> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(base_seed, (gi * trials + t) as u64);
                    let spec = PerturbationSpec::new(strategy, p, seed)?;
                    let cover = perturb(graph, truth, &spec)?;
                    metrics::score_all(graph, &cover)
                })
                .collect::<Result<_>>()?;
            for scores in per_trial {
                for (m, s) in scores.iter().enumerate() {
                    means[gi][m] += s;
                }
            }
            for mean in &mut means[gi] {
                *mean /= trials as f64;
            }
        }
        for m in 0..5 {
            let max = means
                .iter()
                .map(|row| row[m])
                .fold(f64::NEG_INFINITY, f64::max);
            for (gi, &p) in intensities.iter().enumerate() {
                let value = if max > 0.0 {
                    means[gi][m] / max
                } else {
                    means[gi][m]
                };
                cells.push(SweepCell {
                    strategy: strategy.name(),
                    intensity: p,
                    metric: metrics::SCORING_METRIC_NAMES[m],
                    value,
                });
            }
        }
    }
    Ok(cells)
}

/// A community-centric subnetwork sample.
#[derive(Debug)]
pub struct Subnetwork {
    pub graph: Graph,
    pub cover: Cover,
    /// Anchor node id in the subnetwork's id space.
    pub anchor: usize,
    /// Anchor node id in the original graph.
    pub anchor_original: usize,
    /// Subnetwork id -> original id.
    pub node_map: Vec<usize>,
}

/// Draws an anchor uniformly among nodes with two or more memberships and
/// induces the subgraph of everyone sharing at least one community with it.
/// Communities are intersected with the sample; emptied ones vanish.
pub fn sample_subnetwork(graph: &Graph, truth: &Cover, seed: u64) -> Result<Subnetwork> {
    let candidates: Vec<usize> = (0..graph.node_count())
        .filter(|&v| truth.membership_count(v) >= 2)
        .collect();
    if candidates.is_empty() {
        return Err(Error::NoOverlappingNode);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchor = candidates[rng.gen_range(0..candidates.len())];

    let mut nodes: Vec<usize> = truth
        .memberships_of(anchor)
        .iter()
        .flat_map(|&c| truth.members(c).iter().copied())
        .collect();
    nodes.sort_unstable();
    nodes.dedup();

    let (sub, map) = graph.induced_subgraph(&nodes)?;
    let sets: Vec<Vec<usize>> = truth
        .communities()
        .iter()
        .map(|set| {
            set.iter()
                .filter_map(|v| map.old_to_new.get(v).copied())
                .collect::<Vec<usize>>()
        })
        .filter(|set: &Vec<usize>| !set.is_empty())
        .collect();
    let (cover, _) = Cover::build(&sub, sets)?;
    Ok(Subnetwork {
        graph: sub,
        cover,
        anchor: map.old_to_new[&anchor],
        anchor_original: anchor,
        node_map: map.new_to_old,
    })
}

pub const PROFILE_BINS: usize = 20;

/// Aggregates for one score bin.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct BinAggregate {
    pub count: usize,
    /// Fraction of all (vertex, community) pairs landing in this bin.
    pub fraction: f64,
    pub mean_memberships: f64,
    /// Mean effective internal connections, normalized by the maximum over
    /// the whole input.
    pub mean_internal: f64,
    pub mean_clustering: f64,
    pub mean_degree: f64,
}

/// Per-pair score distribution over 20 equal bins spanning [-1, 1]; the
/// last bin is closed at 1.
#[derive(Debug, Clone, Serialize)]
pub struct BinnedProfile {
    pub bins: Vec<BinAggregate>,
}

pub fn score_bin(value: f64) -> usize {
    (((value + 1.0) / 0.1).floor() as isize).clamp(0, PROFILE_BINS as isize - 1) as usize
}

pub fn binned_profile(graph: &Graph, cover: &Cover) -> Result<BinnedProfile> {
    let mut rows: Vec<(usize, f64, f64, f64, usize, usize)> = Vec::new();
    let mut max_internal = 0.0f64;
    for v in 0..graph.node_count() {
        for &c in cover.memberships_of(v) {
            let ctx = vertex_context(graph, cover, v, c)?;
            let score = ctx.genperm();
            max_internal = max_internal.max(ctx.effective_internal);
            rows.push((
                score_bin(score),
                ctx.effective_internal,
                ctx.internal_clustering,
                cover.membership_count(v) as f64,
                ctx.degree,
                v,
            ));
        }
    }
    let total = rows.len();
    let mut bins = vec![BinAggregate::default(); PROFILE_BINS];
    for (bin, internal, clustering, memberships, degree, _) in rows {
        let agg = &mut bins[bin];
        agg.count += 1;
        agg.mean_internal += if max_internal > 0.0 {
            internal / max_internal
        } else {
            0.0
        };
        agg.mean_clustering += clustering;
        agg.mean_memberships += memberships;
        agg.mean_degree += degree as f64;
    }
    for agg in &mut bins {
        if agg.count > 0 {
            let k = agg.count as f64;
            agg.fraction = k / total as f64;
            agg.mean_internal /= k;
            agg.mean_clustering /= k;
            agg.mean_memberships /= k;
            agg.mean_degree /= k;
        }
    }
    Ok(BinnedProfile { bins })
}

/// Farness (mean shortest-path distance to the other members, within the
/// community's induced subgraph) paired with the member's community score.
#[derive(Debug, Clone, Serialize)]
pub struct FarnessEntry {
    pub node: usize,
    pub farness: f64,
    pub genperm: f64,
}

/// Farness profile of one community. A disconnected induced subgraph is an
/// error unless `per_component` is set, in which case distances are taken
/// within each member's component.
pub fn farness_profile(
    graph: &Graph,
    cover: &Cover,
    c: usize,
    per_component: bool,
) -> Result<Vec<FarnessEntry>> {
    let members = cover.members(c);
    let (sub, map) = graph.induced_subgraph(members)?;
    if !per_component && !sub.is_connected() {
        return Err(Error::Disconnected {
            components: sub.component_count(),
        });
    }
    let mut entries = Vec::with_capacity(members.len());
    for (new_id, &old_id) in map.new_to_old.iter().enumerate() {
        let distances = sub.bfs_distances(new_id)?;
        let reachable: Vec<usize> = distances
            .iter()
            .enumerate()
            .filter(|&(other, &d)| other != new_id && d != crate::graph::UNREACHABLE)
            .map(|(_, &d)| d)
            .collect();
        let farness = if reachable.is_empty() {
            0.0
        } else {
            reachable.iter().sum::<usize>() as f64 / reachable.len() as f64
        };
        entries.push(FarnessEntry {
            node: old_id,
            farness,
            genperm: metrics::genperm_vc(graph, cover, old_id, c)?,
        });
    }
    Ok(entries)
}

/// Pearson correlation of an attribute across edge endpoints, both
/// orientations. `None` when either marginal has zero variance.
pub fn endpoint_assortativity(edges: &[(usize, usize)], values: &[f64]) -> Option<f64> {
    if edges.is_empty() {
        return None;
    }
    let pairs: Vec<(f64, f64)> = edges
        .iter()
        .flat_map(|&(u, v)| [(values[u], values[v]), (values[v], values[u])])
        .collect();
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (x, y) in pairs {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x).powi(2);
        var_y += (y - mean_y).powi(2);
    }
    if var_x <= 0.0 || var_y <= 0.0 {
        return None;
    }
    Some(cov / (var_x * var_y).sqrt())
}

/// Assortativity of the binned community score across the community's
/// internal edges. `Ok(None)` marks the degenerate zero-variance case.
pub fn genperm_assortativity(graph: &Graph, cover: &Cover, c: usize) -> Result<Option<f64>> {
    let members = cover.members(c);
    let internal_edges: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&u| {
            graph
                .neighbors(u)
                .iter()
                .copied()
                .filter(move |&w| w > u)
                .map(move |w| (u, w))
        })
        .filter(|&(_, w)| cover.contains(c, w))
        .collect();
    if internal_edges.is_empty() {
        return Err(Error::Degenerate(format!(
            "community {c} has no internal edge"
        )));
    }
    let mut bins = vec![0.0; graph.node_count()];
    for &v in members {
        bins[v] = score_bin(metrics::genperm_vc(graph, cover, v, c)?) as f64;
    }
    Ok(endpoint_assortativity(&internal_edges, &bins))
}

/// Splits each community's score range into four equal layers; layer 1 is
/// the outermost (lowest scores), layer 4 the innermost. Members of a
/// zero-range community all land in layer 4.
pub fn community_layers(graph: &Graph, cover: &Cover) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut layers = Vec::with_capacity(cover.community_count());
    for c in 0..cover.community_count() {
        let members = cover.members(c);
        let scores: Vec<f64> = members
            .iter()
            .map(|&v| metrics::genperm_vc(graph, cover, v, c))
            .collect::<Result<_>>()?;
        let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut community_layers = vec![Vec::new(); 4];
        for (&v, &s) in members.iter().zip(&scores) {
            let layer = if max - min <= f64::EPSILON {
                3
            } else {
                (((s - min) / (max - min) * 4.0).floor() as usize).min(3)
            };
            community_layers[layer].push(v);
        }
        layers.push(community_layers);
    }
    Ok(layers)
}

/// Mean agreement (ONMI) between the detector's baseline output restricted
/// to surviving nodes and its output on the graph with `x`-fractions of one
/// layer removed network-wide.
pub fn removal_impact<D>(
    graph: &Graph,
    truth: &Cover,
    detector: &D,
    layer: usize,
    x: f64,
    trials: usize,
    base_seed: u64,
) -> Result<f64>
where
    D: Fn(&Graph) -> Result<Cover> + Sync,
{
    if layer == 0 || layer > 4 {
        return Err(Error::InvalidParameter(format!(
            "layer must be 1..=4, got {layer}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "removal fraction must be in [0,1], got {x}"
        )));
    }
    let layers = community_layers(graph, truth)?;
    let layer_population: usize = layers.iter().map(|l| l[layer - 1].len()).sum();
    if x > 0.0 && layer_population == 0 {
        return Err(Error::EmptyLayer { layer, x });
    }
    let baseline = detector(graph)?;

    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(base_seed, t as u64));
            let mut removed: Vec<usize> = Vec::new();
            for community_layers in &layers {
                let pool = &community_layers[layer - 1];
                let take = (x * pool.len() as f64).floor() as usize;
                let mut pool = pool.clone();
                pool.shuffle(&mut rng);
                removed.extend(pool.into_iter().take(take));
            }
            removed.sort_unstable();
            removed.dedup();
            let survivors: Vec<usize> = (0..graph.node_count())
                .filter(|v| removed.binary_search(v).is_err())
                .collect();
            let (reduced, map) = graph.induced_subgraph(&survivors)?;
            let reduced_detection = detector(&reduced)?;
            let restricted_sets: Vec<Vec<usize>> = baseline
                .communities()
                .iter()
                .map(|set| {
                    set.iter()
                        .filter_map(|v| map.old_to_new.get(v).copied())
                        .collect::<Vec<usize>>()
                })
                .filter(|set: &Vec<usize>| !set.is_empty())
                .collect();
            let (restricted, _) = Cover::build(&reduced, restricted_sets)?;
            validate::onmi(&restricted, &reduced_detection)
        })
        .collect::<Result<_>>()?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// The full 4-by-grid layered-removal table; `result[layer-1][i]` is the
/// mean ONMI at `x_grid[i]`.
pub fn layered_removal<D>(
    graph: &Graph,
    truth: &Cover,
    detector: &D,
    x_grid: &[f64],
    trials: usize,
    base_seed: u64,
) -> Result<Vec<Vec<f64>>>
where
    D: Fn(&Graph) -> Result<Cover> + Sync,
{
    let mut table = Vec::with_capacity(4);
    for layer in 1..=4 {
        let row: Vec<f64> = x_grid
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                removal_impact(
                    graph,
                    truth,
                    detector,
                    layer,
                    x,
                    trials,
                    derive_seed(base_seed, (layer * 1000 + i) as u64),
                )
            })
            .collect::<Result<_>>()?;
        table.push(row);
    }
    Ok(table)
}

/// Trace of one push-based spreading simulation.
#[derive(Debug, Clone, Serialize)]
pub struct SpreadTrace {
    pub initiators: Vec<usize>,
    /// Informed-node counts, starting with the initiator count and then one
    /// entry per synchronous round.
    pub informed_per_step: Vec<usize>,
}

impl SpreadTrace {
    pub fn steps(&self) -> usize {
        self.informed_per_step.len() - 1
    }
}

/// Synchronous push spreading: every informed vertex picks one of its
/// uninformed neighbors uniformly (idling when it has none) and all pushes
/// land simultaneously; rounds repeat until everyone is informed.
pub fn spread(graph: &Graph, initiators: &[usize], seed: u64) -> Result<SpreadTrace> {
    if initiators.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected {
            components: graph.component_count(),
        });
    }
    let n = graph.node_count();
    let mut informed = vec![false; n];
    for &v in initiators {
        if v >= n {
            return Err(Error::NodeOutOfRange {
                node: v,
                node_count: n,
            });
        }
        informed[v] = true;
    }
    let mut informed_count = informed.iter().filter(|&&b| b).count();
    let mut trace = vec![informed_count];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut frontier: Vec<usize> = Vec::new();
    while informed_count < n {
        frontier.clear();
        for v in 0..n {
            if !informed[v] {
                continue;
            }
            let uninformed: Vec<usize> = graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| !informed[u])
                .collect();
            if let Some(&target) = uninformed.as_slice().choose(&mut rng) {
                frontier.push(target);
            }
        }
        for &u in &frontier {
            if !informed[u] {
                informed[u] = true;
                informed_count += 1;
            }
        }
        trace.push(informed_count);
    }
    Ok(SpreadTrace {
        initiators: initiators.to_vec(),
        informed_per_step: trace,
    })
}

/// Initiator selection policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitiatorPolicy {
    Random,
    Degree,
    /// Top-k by the maximum community score of each vertex.
    Genperm,
}

impl InitiatorPolicy {
    pub fn name(self) -> &'static str {
        match self {
            InitiatorPolicy::Random => "random",
            InitiatorPolicy::Degree => "degree",
            InitiatorPolicy::Genperm => "genperm",
        }
    }
}

/// Selects `k` spreading initiators. Ties break toward higher degree, then
/// lower id; the random policy samples without replacement.
pub fn select_initiators(
    graph: &Graph,
    cover: &Cover,
    policy: InitiatorPolicy,
    k: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    let n = graph.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "initiator count must lie in 1..={n}, got {k}"
        )));
    }
    let mut picked: Vec<usize> = match policy {
        InitiatorPolicy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut nodes: Vec<usize> = (0..n).collect();
            nodes.shuffle(&mut rng);
            nodes.truncate(k);
            nodes
        }
        InitiatorPolicy::Degree => top_k(n, k, |v| graph.degree(v) as f64, graph),
        InitiatorPolicy::Genperm => {
            let mut best = vec![f64::NEG_INFINITY; n];
            for (v, slot) in best.iter_mut().enumerate() {
                for &c in cover.memberships_of(v) {
                    *slot = slot.max(metrics::genperm_vc(graph, cover, v, c)?);
                }
            }
            top_k(n, k, |v| best[v], graph)
        }
    };
    picked.sort_unstable();
    Ok(picked)
}

fn top_k(n: usize, k: usize, score: impl Fn(usize) -> f64, graph: &Graph) -> Vec<usize> {
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.sort_by(|&a, &b| {
        score(b)
            .partial_cmp(&score(a))
            .unwrap()
            .then(graph.degree(b).cmp(&graph.degree(a)))
            .then(a.cmp(&b))
    });
    nodes.truncate(k);
    nodes
}
