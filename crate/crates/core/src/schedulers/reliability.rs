//! Two-stage reliability assessment: syndrome-based unreliability indices,
//! contextual transitions of the posterior beliefs, and the combined metric
//! that selects which variable nodes are worth updating.

use crate::codes::TannerGraph;
use crate::error::{Error, Result};
use crate::kernels::hard_decision;

/// Stage outputs for one iteration of the adaptive decoder.
#[derive(Clone, Debug)]
pub struct ReliabilityState {
    /// Unsatisfied-check count per variable; `0 <= r_v[v] <= deg(v)`.
    pub r_v: Vec<u32>,
    /// Absolute sigmoid transition per variable, in `[0, 1]`.
    pub delta_y: Vec<f64>,
    /// Combined metric `alpha * r_v + beta * delta_y`.
    pub metric: Vec<f64>,
    /// Permutation of variables by descending `r_v`; ties ascending index.
    pub order: Vec<usize>,
    /// Selected subset, in `order` order; at most `ceil(lambda * n)` nodes.
    pub active: Vec<usize>,
}

impl ReliabilityState {
    /// Runs both assessment stages and the subset selection.
    pub fn assess(
        graph: &TannerGraph,
        posterior: &[f64],
        posterior_prev: &[f64],
        alpha: f64,
        beta: f64,
        gamma: f64,
        lambda: f64,
    ) -> Result<Self> {
        let r_v = message_quality_check(graph, posterior)?;
        let delta_y = contextual_transition(posterior, posterior_prev)?;
        let metric = combined_metric(&r_v, &delta_y, alpha, beta)?;
        let order = unreliability_order(&r_v);
        let active = select_active_set(&order, &metric, gamma, lambda);
        Ok(ReliabilityState {
            r_v,
            delta_y,
            metric,
            order,
            active,
        })
    }
}

/// Unreliability index per variable: the plain integer sum (not GF(2)) of
/// unsatisfied syndrome bits over the variable's checks.
pub fn message_quality_check(graph: &TannerGraph, posterior: &[f64]) -> Result<Vec<u32>> {
    let decision = hard_decision(posterior);
    let syndrome = graph.syndrome(&decision)?;
    let mut r_v = vec![0u32; graph.num_vars()];
    for (v, r) in r_v.iter_mut().enumerate() {
        *r = graph
            .var_neighbors(v)
            .iter()
            .map(|&c| u32::from(syndrome.get(c)))
            .sum();
    }
    Ok(r_v)
}

/// `delta_y[v] = |sigmoid(L[v]) - sigmoid(L_prev[v])|`, always in `[0, 1]`.
pub fn contextual_transition(posterior: &[f64], posterior_prev: &[f64]) -> Result<Vec<f64>> {
    if posterior.len() != posterior_prev.len() {
        return Err(Error::Dimension {
            what: "posterior LLRs",
            expected: posterior.len(),
            actual: posterior_prev.len(),
        });
    }
    Ok(posterior
        .iter()
        .zip(posterior_prev.iter())
        .map(|(&l, &l_prev)| (sigmoid(l) - sigmoid(l_prev)).abs())
        .collect())
}

fn sigmoid(l: f64) -> f64 {
    1.0 / (1.0 + (-l).exp())
}

/// Weighted combination `alpha * r_v + beta * delta_y`; requires
/// `alpha + beta = 1` with both weights in `[0, 1]`.
pub fn combined_metric(r_v: &[u32], delta_y: &[f64], alpha: f64, beta: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(Error::Config(format!(
            "metric weights must lie in [0, 1], got alpha={alpha}, beta={beta}"
        )));
    }
    if (alpha + beta - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "metric weights must sum to 1, got alpha={alpha}, beta={beta}"
        )));
    }
    if r_v.len() != delta_y.len() {
        return Err(Error::Dimension {
            what: "combined metric inputs",
            expected: r_v.len(),
            actual: delta_y.len(),
        });
    }
    Ok(r_v
        .iter()
        .zip(delta_y.iter())
        .map(|(&r, &d)| alpha * f64::from(r) + beta * d)
        .collect())
}

/// Permutation of variable indices by descending unreliability; equal
/// indices stay in ascending node order.
pub fn unreliability_order(r_v: &[u32]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..r_v.len()).collect();
    order.sort_by(|&a, &b| r_v[b].cmp(&r_v[a]).then(a.cmp(&b)));
    order
}

/// Intersection of the metric threshold with the top `ceil(lambda * n)`
/// nodes of `order`; result follows `order`.
pub fn select_active_set(
    order: &[usize],
    metric: &[f64],
    gamma: f64,
    lambda: f64,
) -> Vec<usize> {
    let slots = lambda_slots(lambda, order.len());
    order[..slots.min(order.len())]
        .iter()
        .copied()
        .filter(|&v| metric[v] > gamma)
        .collect()
}

/// `ceil(lambda * n)` with a small epsilon so that exact products such as
/// `0.2 * 10` do not round up to an extra slot.
pub fn lambda_slots(lambda: f64, n: usize) -> usize {
    ((lambda * n as f64 - 1e-9).ceil().max(0.0)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::TannerGraph;

    fn toy_graph() -> TannerGraph {
        TannerGraph::from_check_adjacency(3, vec![vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn quality_check_counts_unsatisfied_checks() {
        let g = toy_graph();
        // Posterior decides [1, 1, 0]: syndrome [0, 1].
        let r = message_quality_check(&g, &[-1.0, -2.0, 3.0]).unwrap();
        assert_eq!(r, vec![0, 1, 1]);
        // Valid codeword: all zero.
        let r = message_quality_check(&g, &[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(r, vec![0, 0, 0]);
    }

    #[test]
    fn quality_check_attains_degree_bound() {
        // One variable in three checks, all unsatisfied.
        let g = TannerGraph::from_check_adjacency(
            4,
            vec![vec![0, 1], vec![0, 2], vec![0, 3]],
        )
        .unwrap();
        let r = message_quality_check(&g, &[-4.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r[0], 3);
        assert_eq!(r[0], g.var_degree(0) as u32);
    }

    #[test]
    fn transition_reference_values() {
        let d = contextual_transition(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(d, vec![0.0, 0.0]);

        // sigmoid(ln 3) = 3/4.
        let d = contextual_transition(&[0.0], &[3f64.ln()]).unwrap();
        assert!((d[0] - 0.25).abs() < 1e-12);

        // Clamp-scale swing approaches 1.
        let d = contextual_transition(&[30.0], &[-30.0]).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-9);

        assert!(contextual_transition(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn metric_reference_values() {
        let m = combined_metric(&[1], &[0.2], 0.65, 0.35).unwrap();
        assert!((m[0] - 0.72).abs() < 1e-12);
        let m = combined_metric(&[0], &[0.0], 0.65, 0.35).unwrap();
        assert_eq!(m[0], 0.0);
        // Pure syndrome mode.
        let m = combined_metric(&[3], &[0.9], 1.0, 0.0).unwrap();
        assert_eq!(m[0], 3.0);
        assert!(combined_metric(&[1], &[0.1], 0.7, 0.4).is_err());
    }

    #[test]
    fn ordering_is_descending_with_stable_ties() {
        let order = unreliability_order(&[1, 3, 3, 0, 2]);
        assert_eq!(order, vec![1, 2, 4, 0, 3]);
    }

    #[test]
    fn selection_examples() {
        // All metrics zero: empty set.
        let order = unreliability_order(&[0, 0, 0]);
        assert!(select_active_set(&order, &[0.0, 0.0, 0.0], 0.15, 1.0).is_empty());

        // lambda = 1, gamma = 0: everything with a positive metric.
        let r = [2, 0, 1];
        let order = unreliability_order(&r);
        let metric = combined_metric(&r, &[0.0, 0.0, 0.0], 1.0, 0.0).unwrap();
        assert_eq!(select_active_set(&order, &metric, 0.0, 1.0), vec![0, 2]);

        // n = 10, lambda = 0.2: exactly ceil(2) = 2 slots, stable ties.
        let mut r = vec![0u32; 10];
        r[0] = 3;
        r[1] = 3;
        let order = unreliability_order(&r);
        let metric = combined_metric(&r, &vec![0.0; 10], 0.65, 0.35).unwrap();
        let active = select_active_set(&order, &metric, 0.15, 0.2);
        assert_eq!(active, vec![0, 1]);
    }

    #[test]
    fn slot_rounding() {
        assert_eq!(lambda_slots(0.2, 10), 2);
        assert_eq!(lambda_slots(0.2, 512), 103); // ceil(102.4)
        assert_eq!(lambda_slots(1.0, 7), 7);
        assert_eq!(lambda_slots(0.0, 7), 0);
        assert_eq!(lambda_slots(0.05, 3), 1); // ceil(0.15)
    }

    #[test]
    fn positive_scaling_leaves_decisions_and_indices_unchanged() {
        // Hard decisions, syndromes, and R_v depend only on LLR signs.
        let g = toy_graph();
        let posterior = [-1.3, 0.7, 2.2];
        let scaled: Vec<f64> = posterior.iter().map(|l| l * 37.5).collect();
        assert_eq!(
            crate::kernels::hard_decision(&posterior),
            crate::kernels::hard_decision(&scaled)
        );
        assert_eq!(
            message_quality_check(&g, &posterior).unwrap(),
            message_quality_check(&g, &scaled).unwrap()
        );
    }

    #[test]
    fn assess_bounds_hold() {
        let g = toy_graph();
        let state = ReliabilityState::assess(
            &g,
            &[-1.0, -2.0, 3.0],
            &[0.5, 0.5, 0.5],
            0.65,
            0.35,
            0.15,
            0.2,
        )
        .unwrap();
        for v in 0..3 {
            assert!(state.r_v[v] as usize <= g.var_degree(v));
            assert!((0.0..=1.0).contains(&state.delta_y[v]));
            let bound = 0.65 * g.var_degree(v) as f64 + 0.35;
            assert!(state.metric[v] <= bound + 1e-12);
        }
        assert!(state.active.len() <= lambda_slots(0.2, 3));
    }
}
