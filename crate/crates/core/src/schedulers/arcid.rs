//! Adaptive reliability-driven decoding.
//!
//! Each iteration alternates two stages until the assessment finds nothing
//! left to refine. Stage one checks message quality: unreliability indices
//! from the syndrome, contextual transitions of the posteriors, and their
//! weighted combination `M_v` select at most `ceil(lambda * n)` variable
//! nodes. Stage two is a modified residual belief propagation sweep seeded
//! at the selected nodes: the precomputed message for an edge into `v` is
//! the reliability-weighted blend
//!
//! ```text
//! m_pre = w * m_new + (1 - w) * m_old,   w = clamp(M_v, gamma, 1)
//! ```
//!
//! and edges commit in descending order of the modified residual
//! `|m_pre - m_old| = w * |m_new - m_old|`, so updates into unreliable nodes
//! dominate the schedule while reliable regions move in small, low-priority
//! steps. The damping makes every sweep settle into a fixed point; the next
//! assessment then reruns on the refreshed beliefs so errors exposed by the
//! changed syndrome extend the schedule. The iteration ends when an
//! assessment finds no active node (or a sweep makes no progress), with a
//! commit budget as a safety guard. If the threshold selects nobody while
//! the syndrome still fails, the single worst node is forced in so the
//! iteration always makes progress.

use super::reliability::ReliabilityState;
use super::residual::ResidualQueue;
use super::{DecisionTrace, DecodeLoop, DecoderConfig};
use crate::codes::TannerGraph;
use crate::error::Result;
use crate::kernels::{c2v_message, check_convergence, v2c_message, DecodeResult};

pub(super) fn run(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
    record: bool,
) -> Result<(DecodeResult, Option<DecisionTrace>)> {
    let mut lp = DecodeLoop::new(graph, channel_llrs, record)?;
    if lp.entry_converged() {
        return Ok(lp.finish(true, 0));
    }

    let num_edges = graph.num_edges();
    let mut active_var = vec![false; graph.num_vars()];
    let mut weight = vec![0.0f64; graph.num_vars()];
    let mut candidates = vec![0.0f64; num_edges];

    // Guard against assessment/refinement ping-pong on pathological inputs:
    // a healthy iteration settles in a small multiple of E commits.
    let commit_budget = 4 * num_edges;

    for t in 1..=config.t_max {
        // One iteration alternates the two stages until the assessment finds
        // nothing left to refine: each round confines scheduling to the
        // currently unreliable region, the damped commits settle that region
        // into a fixed point, and the next assessment picks up whatever the
        // refreshed syndrome exposes.
        let mut commits = 0usize;
        while commits < commit_budget {
            // Stage one: message quality checking. On the very first round
            // the stored previous posterior equals the current one, so the
            // contextual transition is zero and selection is purely
            // syndrome-driven.
            let reliability = ReliabilityState::assess(
                graph,
                lp.state.posterior(),
                lp.state.posterior_prev(),
                config.alpha,
                config.beta,
                config.gamma,
                config.lambda,
            )?;
            let mut active = reliability.active.clone();
            if active.is_empty() {
                if check_convergence(graph, lp.state.posterior()) {
                    break;
                }
                active.push(stall_fallback(&reliability));
            }
            active_var.fill(false);
            for &v in &active {
                active_var[v] = true;
            }
            for v in 0..graph.num_vars() {
                // Floor at gamma so low-priority support traffic still
                // flows; cap at 1 (full commit).
                weight[v] = reliability.metric[v].max(config.gamma).min(1.0);
            }

            // Stage two: residual-scheduled refinement. The precomputed
            // message for an edge into `v` is the reliability-weighted blend
            //   m_pre = w * m_new + (1 - w) * m_old,
            // so its residual |m_pre - m_old| = w * |m_new - m_old| already
            // carries the assessment: edges into reliable nodes (w -> 0)
            // never win the schedule and stay frozen, while a maximally
            // unreliable destination behaves like pure RBP.
            let mut queue = ResidualQueue::empty(num_edges);
            for &v in &active {
                for &e in graph.var_edges(v) {
                    let fresh = c2v_message(&lp.state, graph, e);
                    candidates[e] = weight[v] * fresh + (1.0 - weight[v]) * lp.state.c2v(e);
                    lp.ops.precompute_ops += 1;
                    queue.update(e, (candidates[e] - lp.state.c2v(e)).abs());
                }
            }

            let mut progressed = false;
            while commits < commit_budget {
                let Some((edge, residual)) = queue.pop_max() else {
                    break;
                };
                if residual == 0.0 {
                    // The scoped region is at its fixed point.
                    break;
                }
                queue.update(edge, 0.0);
                commits += 1;
                progressed = true;

                let v = graph.edge_var(edge);
                lp.state.set_c2v(edge, candidates[edge]);

                // Refresh the variable's outgoing messages toward its other
                // checks, then recompute the pending candidates that read
                // them.
                let committed_check = graph.edge_check(edge);
                for idx in 0..graph.var_edges(v).len() {
                    let other_check = graph.var_neighbors(v)[idx];
                    if other_check == committed_check {
                        continue;
                    }
                    let out_edge = graph.var_edges(v)[idx];
                    let msg = v2c_message(&lp.state, graph, out_edge);
                    lp.state.set_v2c(out_edge, msg);
                    lp.ops.v2c_ops += 1;
                    for e in graph.check_edges(other_check) {
                        let dest = graph.edge_var(e);
                        // A zero-weight blend cannot change anything; such
                        // edges keep priority zero and are never evaluated.
                        if dest == v || weight[dest] <= 0.0 {
                            continue;
                        }
                        let fresh = c2v_message(&lp.state, graph, e);
                        candidates[e] =
                            weight[dest] * fresh + (1.0 - weight[dest]) * lp.state.c2v(e);
                        lp.ops.precompute_ops += 1;
                        queue.update(e, (candidates[e] - lp.state.c2v(e)).abs());
                    }
                }
            }

            // Keep the belief history aligned with assessment rounds.
            lp.state.save_posterior_prev();
            lp.state.refresh_posteriors(graph);
            if !progressed {
                break;
            }
        }

        if lp.end_iteration() {
            return Ok(lp.finish(true, t));
        }
    }
    let t_max = config.t_max;
    Ok(lp.finish(false, t_max))
}

/// Worst node by metric, then by unreliability index, then lowest index.
fn stall_fallback(reliability: &ReliabilityState) -> usize {
    let mut best = 0usize;
    for v in 1..reliability.metric.len() {
        let better = reliability.metric[v]
            .total_cmp(&reliability.metric[best])
            .then(reliability.r_v[v].cmp(&reliability.r_v[best]));
        if better == std::cmp::Ordering::Greater {
            best = v;
        }
    }
    best
}
