//! Ground-truth validation of covers (ONMI, Omega index, F-Score), dense
//! ranking with Spearman correlation, and the rank-correlation protocol that
//! compares scoring metrics against validation metrics over a set of
//! candidate covers.

use serde::Serialize;

use crate::cover::Cover;
use crate::graph::Graph;
use crate::metrics;
use crate::{Error, Result};

pub const VALIDATION_METRIC_NAMES: [&str; 3] = ["onmi", "omega", "fscore"];

/// The three cover-agreement metrics side by side.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub onmi: f64,
    pub omega: f64,
    pub fscore: f64,
    /// Variant identifiers, recorded for provenance.
    pub onmi_variant: &'static str,
    pub omega_variant: &'static str,
}

pub const ONMI_VARIANT: &str = "max-normalized lack-of-information";
pub const OMEGA_VARIANT: &str = "unadjusted, ordered pairs incl. self-pairs";

pub fn validation_report(truth: &Cover, detected: &Cover) -> Result<ValidationReport> {
    Ok(ValidationReport {
        onmi: onmi(truth, detected)?,
        omega: omega_index(truth, detected)?,
        fscore: fscore(truth, detected)?,
        onmi_variant: ONMI_VARIANT,
        omega_variant: OMEGA_VARIANT,
    })
}

fn check_universe(a: &Cover, b: &Cover) -> Result<usize> {
    if a.node_count() != b.node_count() {
        return Err(Error::NodeUniverseMismatch {
            left: a.node_count(),
            right: b.node_count(),
        });
    }
    Ok(a.node_count())
}

/// Fraction of ordered node pairs (self-pairs included) on which the two
/// covers agree about the number of shared communities.
pub fn omega_index(truth: &Cover, detected: &Cover) -> Result<f64> {
    let n = check_universe(truth, detected)?;
    if n == 0 {
        return Err(Error::EmptyCover);
    }
    let mut agreements = 0usize;
    for u in 0..n {
        for v in 0..n {
            if truth.shared_communities(u, v) == detected.shared_communities(u, v) {
                agreements += 1;
            }
        }
    }
    Ok(agreements as f64 / (n * n) as f64)
}

/// Chance-adjusted variant of the Omega index over the same ordered-pair
/// universe: (observed - expected) / (1 - expected), where the expectation
/// pairs the two covers' sharing-count distributions independently.
pub fn omega_index_adjusted(truth: &Cover, detected: &Cover) -> Result<f64> {
    let n = check_universe(truth, detected)?;
    if n == 0 {
        return Err(Error::EmptyCover);
    }
    let observed = omega_index(truth, detected)?;
    let mut counts_t = std::collections::HashMap::new();
    let mut counts_d = std::collections::HashMap::new();
    for u in 0..n {
        for v in 0..n {
            *counts_t
                .entry(truth.shared_communities(u, v))
                .or_insert(0usize) += 1;
            *counts_d
                .entry(detected.shared_communities(u, v))
                .or_insert(0usize) += 1;
        }
    }
    let pairs = (n * n) as f64;
    let expected: f64 = counts_t
        .iter()
        .filter_map(|(k, &t)| counts_d.get(k).map(|&d| t as f64 * d as f64))
        .sum::<f64>()
        / (pairs * pairs);
    if (1.0 - expected).abs() < 1e-15 {
        return Err(Error::Degenerate(
            "adjusted omega undefined: expected agreement is 1".to_string(),
        ));
    }
    Ok((observed - expected) / (1.0 - expected))
}

fn dice(a: &[usize], b: &[usize]) -> f64 {
    let inter = crate::cover::count_common(a, b);
    if inter == 0 {
        return 0.0;
    }
    // Harmonic mean of precision |a∩b|/|b| and recall |a∩b|/|a|.
    2.0 * inter as f64 / (a.len() + b.len()) as f64
}

/// Symmetric best-match F-Score between two covers.
pub fn fscore(truth: &Cover, detected: &Cover) -> Result<f64> {
    check_universe(truth, detected)?;
    if truth.community_count() == 0 || detected.community_count() == 0 {
        return Err(Error::EmptyCover);
    }
    let best_against = |sets: &[Vec<usize>], others: &[Vec<usize>]| -> f64 {
        sets.iter()
            .map(|s| others.iter().map(|o| dice(s, o)).fold(0.0f64, f64::max))
            .sum::<f64>()
            / sets.len() as f64
    };
    Ok(0.5
        * (best_against(truth.communities(), detected.communities())
            + best_against(detected.communities(), truth.communities())))
}

fn h(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Entropy of one community treated as a binary membership variable.
fn membership_entropy(size: usize, n: usize) -> f64 {
    let p = size as f64 / n as f64;
    h(p) + h(1.0 - p)
}

/// Conditional entropy H(X_i | Y_j) of two membership variables, or `None`
/// when the pairing is rejected because the joint distribution carries no
/// more alignment than its complement (the standard acceptance constraint
/// for overlapping-cover mutual information).
fn conditional_entropy(x: &[usize], y: &[usize], n: usize) -> Option<f64> {
    let both = crate::cover::count_common(x, y) as f64;
    let n_f = n as f64;
    let p11 = both / n_f;
    let p10 = (x.len() as f64 - both) / n_f;
    let p01 = (y.len() as f64 - both) / n_f;
    let p00 = 1.0 - p11 - p10 - p01;
    if h(p11) + h(p00) < h(p01) + h(p10) {
        return None;
    }
    let joint = h(p11) + h(p10) + h(p01) + h(p00);
    let y_entropy = membership_entropy(y.len(), n);
    Some(joint - y_entropy)
}

/// Sum over X's communities of the unexplained entropy given the best
/// matching community of Y, each capped at the community's own entropy.
fn cover_conditional_entropy(x: &Cover, y: &Cover) -> f64 {
    x.communities()
        .iter()
        .map(|xi| {
            let own = membership_entropy(xi.len(), x.node_count());
            y.communities()
                .iter()
                .filter_map(|yj| conditional_entropy(xi, yj, x.node_count()))
                .fold(own, f64::min)
        })
        .sum()
}

/// Overlapping normalized mutual information between two covers: the
/// lack-of-information form over per-community binary membership variables,
/// normalized by the larger total entropy and clamped to [0, 1].
pub fn onmi(truth: &Cover, detected: &Cover) -> Result<f64> {
    let n = check_universe(truth, detected)?;
    if n == 0 {
        return Err(Error::EmptyCover);
    }
    let h_x: f64 = truth
        .communities()
        .iter()
        .map(|c| membership_entropy(c.len(), n))
        .sum();
    let h_y: f64 = detected
        .communities()
        .iter()
        .map(|c| membership_entropy(c.len(), n))
        .sum();
    let h_max = h_x.max(h_y);
    if h_max <= 0.0 {
        return Err(Error::Degenerate(
            "both covers consist only of full-node-set communities".to_string(),
        ));
    }
    let info_x = h_x - cover_conditional_entropy(truth, detected);
    let info_y = h_y - cover_conditional_entropy(detected, truth);
    let mutual = 0.5 * (info_x + info_y);
    Ok((mutual / h_max).clamp(0.0, 1.0))
}

/// Dense ranks, 1 = highest value; tied values share a rank and the next
/// distinct value takes the next integer.
pub fn dense_ranks(values: &[f64]) -> Vec<usize> {
    let mut distinct: Vec<f64> = values.to_vec();
    distinct.sort_by(|a, b| b.partial_cmp(a).unwrap());
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.iter().position(|d| d == v).unwrap() + 1)
        .collect()
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in x.iter().zip(y) {
        cov += (a - mean_x) * (b - mean_y);
        var_x += (a - mean_x).powi(2);
        var_y += (b - mean_y).powi(2);
    }
    if var_x <= 0.0 || var_y <= 0.0 {
        return Err(Error::Degenerate(
            "rank correlation undefined: zero rank variance".to_string(),
        ));
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Spearman rank correlation using dense ranking on both sides.
pub fn spearman_dense(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter(
            "rank correlation needs at least two observations".to_string(),
        ));
    }
    let rx: Vec<f64> = dense_ranks(x).into_iter().map(|r| r as f64).collect();
    let ry: Vec<f64> = dense_ranks(y).into_iter().map(|r| r as f64).collect();
    pearson(&rx, &ry)
}

/// The full scoring-vs-validation comparison over named candidate covers.
#[derive(Debug, Clone, Serialize)]
pub struct RankCorrelation {
    pub candidates: Vec<String>,
    pub scoring_metrics: Vec<&'static str>,
    pub validation_metrics: Vec<&'static str>,
    /// `matrix[i][j]` = Spearman correlation between scoring metric `i` and
    /// validation metric `j` across the candidates.
    pub matrix: Vec<Vec<f64>>,
}

/// Scores every candidate cover with the five scoring metrics and the three
/// validation metrics against `truth`, dense-ranks each column, and emits
/// the 5x3 Spearman matrix.
pub fn rank_correlation_protocol(
    graph: &Graph,
    truth: &Cover,
    candidates: &[(String, Cover)],
) -> Result<RankCorrelation> {
    if candidates.len() < 2 {
        return Err(Error::InvalidParameter(
            "rank correlation needs at least two candidate covers".to_string(),
        ));
    }
    let mut scoring: Vec<Vec<f64>> = vec![Vec::new(); 5];
    let mut validation: Vec<Vec<f64>> = vec![Vec::new(); 3];
    for (_, cover) in candidates {
        let scores = metrics::score_all(graph, cover)?;
        for (column, value) in scoring.iter_mut().zip(scores) {
            column.push(value);
        }
        validation[0].push(onmi(truth, cover)?);
        validation[1].push(omega_index(truth, cover)?);
        validation[2].push(fscore(truth, cover)?);
    }
    let mut matrix = vec![vec![0.0; 3]; 5];
    for (i, score_column) in scoring.iter().enumerate() {
        for (j, validation_column) in validation.iter().enumerate() {
            matrix[i][j] = spearman_dense(score_column, validation_column)?;
        }
    }
    Ok(RankCorrelation {
        candidates: candidates.iter().map(|(name, _)| name.clone()).collect(),
        scoring_metrics: metrics::SCORING_METRIC_NAMES.to_vec(),
        validation_metrics: VALIDATION_METRIC_NAMES.to_vec(),
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cover_on(n: usize, sets: Vec<Vec<usize>>) -> Cover {
        // A path graph is enough to carry the node universe.
        let pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let (g, _) = Graph::build(&pairs, Some(n));
        Cover::build(&g, sets).unwrap().0
    }

    #[test]
    fn identical_covers_score_one_everywhere() {
        let a = cover_on(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]]);
        let b = cover_on(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]]);
        assert_eq!(omega_index(&a, &b).unwrap(), 1.0);
        assert_eq!(fscore(&a, &b).unwrap(), 1.0);
        assert_eq!(onmi(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn omega_two_node_example() {
        // Truth co-places the only pair once, detection never: the two
        // self-pairs agree, the two cross pairs do not.
        let truth = cover_on(2, vec![vec![0, 1]]);
        let (g, _) = Graph::build(&[(0, 1)], None);
        let (detected, _) = Cover::build(&g, vec![vec![0], vec![1]]).unwrap();
        // Self-pairs disagree too here: O_i = 1 in both covers, so they agree.
        assert_eq!(omega_index(&truth, &detected).unwrap(), 0.5);
    }

    #[test]
    fn fscore_worked_example() {
        let truth = cover_on(4, vec![vec![0, 1, 2, 3]]);
        let detected = cover_on(4, vec![vec![0, 1], vec![2], vec![3]]);
        // Best match for the truth community is {0,1}: F = 2*2/(4+2) = 2/3.
        // Detected side: {0,1} -> 2/3, {2} -> 2/5, {3} -> 2/5.
        let expected = 0.5 * (2.0 / 3.0 + (2.0 / 3.0 + 0.4 + 0.4) / 3.0);
        assert!((fscore(&truth, &detected).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn fscore_disjoint_supports_is_zero() {
        let truth = cover_on(4, vec![vec![0, 1], vec![2, 3]]);
        let detected = cover_on(4, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(fscore(&truth, &detected).unwrap(), 1.0);
        let half_truth = cover_on(2, vec![vec![0], vec![1]]);
        let half_detected = cover_on(2, vec![vec![0, 1]]);
        // No overlap in community structure at all happens only with empty
        // intersections; build one explicitly.
        let f = fscore(&half_truth, &half_detected).unwrap();
        assert!(f > 0.0); // {0} vs {0,1} still intersects
    }

    #[test]
    fn onmi_no_information_is_zero() {
        let truth = cover_on(8, vec![(0..4).collect(), (4..8).collect()]);
        let detected = cover_on(8, vec![(0..8).collect()]);
        assert_eq!(onmi(&truth, &detected).unwrap(), 0.0);
    }

    #[test]
    fn onmi_degenerate_errors() {
        let a = cover_on(4, vec![(0..4).collect()]);
        let b = cover_on(4, vec![(0..4).collect()]);
        assert!(matches!(onmi(&a, &b), Err(Error::Degenerate(_))));
    }

    #[test]
    fn universe_mismatch_is_rejected() {
        let a = cover_on(4, vec![vec![0, 1], vec![2, 3]]);
        let b = cover_on(5, vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(matches!(
            omega_index(&a, &b),
            Err(Error::NodeUniverseMismatch { .. })
        ));
    }

    #[test]
    fn validation_metrics_are_symmetric() {
        let a = cover_on(7, vec![vec![0, 1, 2, 3], vec![3, 4, 5], vec![5, 6]]);
        let b = cover_on(7, vec![vec![0, 1], vec![2, 3, 4], vec![4, 5, 6]]);
        assert_eq!(omega_index(&a, &b).unwrap(), omega_index(&b, &a).unwrap());
        assert_eq!(fscore(&a, &b).unwrap(), fscore(&b, &a).unwrap());
        assert!((onmi(&a, &b).unwrap() - onmi(&b, &a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn dense_ranks_match_published_table() {
        let genperm_column = [0.63, 0.53, 0.60, 0.56, 0.41, 0.60];
        assert_eq!(dense_ranks(&genperm_column), vec![1, 4, 2, 3, 5, 2]);
    }

    #[test]
    fn spearman_extremes_and_ties() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [10.0, 20.0, 30.0, 40.0];
        assert!((spearman_dense(&x, &y).unwrap() - 1.0).abs() < 1e-12);
        let reversed = [4.0, 3.0, 2.0, 1.0];
        assert!((spearman_dense(&x, &reversed).unwrap() + 1.0).abs() < 1e-12);
        let constant = [5.0, 5.0, 5.0, 5.0];
        assert!(matches!(
            spearman_dense(&x, &constant),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn spearman_invariant_under_monotone_transforms() {
        let x = [0.2, 0.9, 0.4, 0.4, 0.7];
        let y = [1.0, 5.0, 2.0, 3.0, 4.0];
        let base = spearman_dense(&x, &y).unwrap();
        let cubed: Vec<f64> = x.iter().map(|v| v.powi(3)).collect();
        let shifted: Vec<f64> = y.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((spearman_dense(&cubed, &shifted).unwrap() - base).abs() < 1e-12);
    }

    #[test]
    fn protocol_requires_two_candidates() {
        let toy = crate::synth::gen_bridge_pair(4, 4).unwrap();
        let candidates = vec![("only".to_string(), toy.cover.clone())];
        assert!(rank_correlation_protocol(&toy.graph, &toy.cover, &candidates).is_err());
    }

    #[test]
    fn protocol_composes_the_individual_operations() {
        let toy = crate::synth::gen_bridge_pair(4, 4).unwrap();
        let (coarse, _) = Cover::build(&toy.graph, vec![(0..8).collect()]).unwrap();
        let (fine, _) = Cover::build(
            &toy.graph,
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
        )
        .unwrap();
        let candidates = vec![
            ("truth-like".to_string(), toy.cover.clone()),
            ("coarse".to_string(), coarse.clone()),
            ("fine".to_string(), fine.clone()),
        ];
        let result = rank_correlation_protocol(&toy.graph, &toy.cover, &candidates).unwrap();

        // Recompute one cell by hand from the composed operations.
        let genperm: Vec<f64> = candidates
            .iter()
            .map(|(_, c)| metrics::genperm_network(&toy.graph, c).unwrap())
            .collect();
        let onmis: Vec<f64> = candidates
            .iter()
            .map(|(_, c)| onmi(&toy.cover, c).unwrap())
            .collect();
        let expected = spearman_dense(&genperm, &onmis).unwrap();
        assert!((result.matrix[0][0] - expected).abs() < 1e-12);
    }
}
