//! Residual belief propagation and its decayed and list variants.
//!
//! Candidate C2V messages are kept for every edge; the edge whose commit
//! would change its message the most is committed first. After a commit the
//! destination variable's outgoing V2C messages are refreshed and only the
//! candidates that depend on them are recomputed. `E` single-edge commits
//! count as one iteration, which keeps iteration counts comparable with the
//! flooding schedule. The three variants share this engine:
//! plain RBP is `decay = 1, list = 1`, rd_rbp decays the priority key of an
//! edge by `decay^commits`, and list_rbp commits the top `list` edges per
//! step.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Algorithm, DecisionTrace, DecodeLoop, DecoderConfig};
use crate::codes::TannerGraph;
use crate::error::Result;
use crate::instrumentation::OpCounts;
use crate::kernels::{c2v_message, v2c_message, DecodeResult, MessageState};

/// Residual of a pending message update: `|candidate - committed|`.
pub fn compute_residual(old_c2v: f64, candidate_c2v: f64) -> f64 {
    (candidate_c2v - old_c2v).abs()
}

/// Max-priority queue over edges with updatable keys.
///
/// Stale heap entries are invalidated by a per-edge generation counter and
/// skipped lazily. Ties break toward the lower edge id, so scheduling order
/// is fully deterministic.
#[derive(Clone, Debug)]
pub struct ResidualQueue {
    heap: BinaryHeap<Entry>,
    /// Per edge: (current key, generation of the live entry).
    live: Vec<(f64, u64)>,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    key: f64,
    edge: usize,
    generation: u64,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| other.edge.cmp(&self.edge))
            .then_with(|| self.generation.cmp(&other.generation))
    }
}

impl ResidualQueue {
    /// Queue over `num_edges` edges, all starting at key 0.
    pub fn new(num_edges: usize) -> Self {
        let mut queue = ResidualQueue::empty(num_edges);
        for edge in 0..num_edges {
            queue.heap.push(Entry {
                key: 0.0,
                edge,
                generation: 0,
            });
        }
        queue
    }

    /// Queue with edge capacity but no entries; only edges later touched by
    /// [`ResidualQueue::update`] become schedulable.
    pub fn empty(num_edges: usize) -> Self {
        ResidualQueue {
            heap: BinaryHeap::with_capacity(2 * num_edges),
            live: vec![(0.0, 0); num_edges],
        }
    }

    /// Sets the priority key of `edge`, superseding its previous entry.
    pub fn update(&mut self, edge: usize, key: f64) {
        debug_assert!(key >= 0.0 && key.is_finite());
        let generation = self.live[edge].1 + 1;
        self.live[edge] = (key, generation);
        self.heap.push(Entry {
            key,
            edge,
            generation,
        });
    }

    /// Current key of `edge`.
    pub fn key(&self, edge: usize) -> f64 {
        self.live[edge].0
    }

    /// Discards stale entries at the top of the heap.
    fn skim(&mut self) {
        while let Some(top) = self.heap.peek() {
            if self.live[top.edge].1 == top.generation {
                return;
            }
            self.heap.pop();
        }
    }

    /// Edge with the maximal key (ties: lowest edge id), without removing it.
    pub fn peek(&mut self) -> Option<(usize, f64)> {
        self.skim();
        self.heap.peek().map(|e| (e.edge, e.key))
    }

    /// Removes and returns the maximal entry.
    pub fn pop_max(&mut self) -> Option<(usize, f64)> {
        self.skim();
        let top = self.heap.pop()?;
        // The edge no longer has a live entry; callers re-insert via update.
        self.live[top.edge].1 += 1;
        Some((top.edge, top.key))
    }
}

pub(super) fn run(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
    record: bool,
) -> Result<(DecodeResult, Option<DecisionTrace>)> {
    let decay = match config.algorithm {
        Algorithm::RdRbp => config.decay,
        _ => 1.0,
    };
    let list_size = match config.algorithm {
        Algorithm::ListRbp => config.list_size,
        _ => 1,
    };

    let mut lp = DecodeLoop::new(graph, channel_llrs, record)?;
    if lp.entry_converged() {
        return Ok(lp.finish(true, 0));
    }

    let mut engine = Engine::new(graph, &lp.state, &mut lp.ops, decay);
    for t in 1..=config.t_max {
        engine.run_one_iteration(graph, &mut lp.state, &mut lp.ops, list_size);
        if lp.end_iteration() {
            return Ok(lp.finish(true, t));
        }
    }
    let t_max = config.t_max;
    Ok(lp.finish(false, t_max))
}

struct Engine {
    candidates: Vec<f64>,
    queue: ResidualQueue,
    commit_counts: Vec<u32>,
    decay: f64,
    batch: Vec<usize>,
}

impl Engine {
    /// Evaluates every candidate from the channel-only V2C state and fills
    /// the queue with the initial residuals.
    fn new(graph: &TannerGraph, state: &MessageState, ops: &mut OpCounts, decay: f64) -> Self {
        let num_edges = graph.num_edges();
        let mut engine = Engine {
            candidates: vec![0.0; num_edges],
            queue: ResidualQueue::new(num_edges),
            commit_counts: vec![0; num_edges],
            decay,
            batch: Vec::new(),
        };
        for e in 0..num_edges {
            engine.candidates[e] = c2v_message(state, graph, e);
            ops.c2v_ops += 1;
            let r = compute_residual(state.c2v(e), engine.candidates[e]);
            engine.queue.update(e, r);
        }
        engine
    }

    fn priority(&self, edge: usize, residual: f64) -> f64 {
        residual * self.decay.powi(self.commit_counts[edge] as i32)
    }

    /// `E` single-edge commits, in steps of up to `list_size` edges.
    fn run_one_iteration(
        &mut self,
        graph: &TannerGraph,
        state: &mut MessageState,
        ops: &mut OpCounts,
        list_size: usize,
    ) {
        let num_edges = graph.num_edges();
        let mut commits = 0;
        while commits < num_edges {
            let take = list_size.min(num_edges - commits);
            self.batch.clear();
            for _ in 0..take {
                let Some((e, _)) = self.queue.pop_max() else {
                    break;
                };
                // Committing zeroes the residual; fresh entry for the edge.
                self.queue.update(e, 0.0);
                self.batch.push(e);
            }
            if self.batch.is_empty() {
                return;
            }

            // Commit the precomputed candidates, then propagate their effect.
            for i in 0..self.batch.len() {
                let e = self.batch[i];
                state.set_c2v(e, self.candidates[e]);
                self.commit_counts[e] = self.commit_counts[e].saturating_add(1);
            }
            for i in 0..self.batch.len() {
                let e = self.batch[i];
                self.propagate_commit(graph, state, ops, e);
            }
            commits += self.batch.len();
        }
    }

    /// Refreshes V2C messages of the committed edge's destination variable
    /// and recomputes exactly the candidates that read them.
    fn propagate_commit(
        &mut self,
        graph: &TannerGraph,
        state: &mut MessageState,
        ops: &mut OpCounts,
        committed: usize,
    ) {
        let v = graph.edge_var(committed);
        let c = graph.edge_check(committed);
        for idx in 0..graph.var_edges(v).len() {
            let out_edge = graph.var_edges(v)[idx];
            let other_check = graph.var_neighbors(v)[idx];
            if other_check == c {
                continue;
            }
            let msg = v2c_message(state, graph, out_edge);
            state.set_v2c(out_edge, msg);
            ops.v2c_ops += 1;
            for e in graph.check_edges(other_check) {
                if graph.edge_var(e) == v {
                    continue;
                }
                self.candidates[e] = c2v_message(state, graph, e);
                ops.c2v_ops += 1;
                let r = compute_residual(state.c2v(e), self.candidates[e]);
                let key = self.priority(e, r);
                self.queue.update(e, key);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use rand::Rng;

    #[test]
    fn residual_values() {
        assert_eq!(compute_residual(1.0, 1.0), 0.0);
        assert_eq!(compute_residual(-2.0, 1.5), 3.5);
        // First update from an all-zero C2V state.
        assert_eq!(compute_residual(0.0, -4.25), 4.25);
    }

    #[test]
    fn queue_returns_max_with_deterministic_ties() {
        let mut q = ResidualQueue::new(4);
        q.update(0, 1.0);
        q.update(1, 3.0);
        q.update(2, 3.0);
        q.update(3, 0.5);
        assert_eq!(q.peek(), Some((1, 3.0)));
        assert_eq!(q.pop_max(), Some((1, 3.0)));
        assert_eq!(q.pop_max(), Some((2, 3.0)));
        q.update(3, 9.0);
        q.update(3, 0.25); // supersedes the 9.0 entry
        assert_eq!(q.pop_max(), Some((0, 1.0)));
        assert_eq!(q.pop_max(), Some((3, 0.25)));
    }

    #[test]
    fn queue_peek_matches_scan_max() {
        let mut q = ResidualQueue::new(32);
        let mut rng = stream_rng(5, 5);
        for _ in 0..500 {
            let e = rng.random_range(0..32);
            let key: f64 = rng.random_range(0.0..10.0);
            q.update(e, key);
            let (top_edge, top_key) = q.peek().unwrap();
            let best = (0..32)
                .map(|i| (i, q.key(i)))
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap();
            assert_eq!(top_key, best.1);
            assert_eq!(top_edge, best.0);
        }
    }

    mod decode {
        use super::super::super::{
            decode_list_rbp, decode_rbp, decode_rd_rbp, Algorithm, DecoderConfig,
        };
        use crate::codes::{construct_regular_code, CodeSpec};
        use crate::rng::stream_rng;
        use rand::Rng;

        #[test]
        fn noiseless_codeword_converges_at_entry() {
            let spec = CodeSpec::new(16, 8, 2, 4).unwrap();
            let g = construct_regular_code(&spec, 2).unwrap();
            let cfg = DecoderConfig::new(Algorithm::Rbp);
            let r = decode_rbp(&g, &vec![7.0; 16], &cfg).unwrap();
            assert!(r.converged);
            assert_eq!(r.iterations_used, 0);
        }

        #[test]
        fn corrects_a_weak_flipped_bit() {
            let spec = CodeSpec::new(32, 16, 3, 6).unwrap();
            let g = construct_regular_code(&spec, 1).unwrap();
            let mut llrs = vec![4.0; 32];
            llrs[5] = -0.8;
            let cfg = DecoderConfig::new(Algorithm::Rbp);
            let r = decode_rbp(&g, &llrs, &cfg).unwrap();
            assert!(r.converged);
            assert!(r.decoded.is_zero());
        }

        #[test]
        fn degenerate_parameters_collapse_to_rbp() {
            let spec = CodeSpec::new(32, 16, 3, 6).unwrap();
            let g = construct_regular_code(&spec, 9).unwrap();
            let mut rng = stream_rng(21, 0);
            for trial in 0..25 {
                let llrs: Vec<f64> = (0..32).map(|_| rng.random_range(-3.0..3.0)).collect();
                let base = DecoderConfig::new(Algorithm::Rbp);
                let rbp = decode_rbp(&g, &llrs, &base).unwrap();
                let rd = decode_rd_rbp(&g, &llrs, &DecoderConfig { decay: 1.0, ..base }).unwrap();
                let list =
                    decode_list_rbp(&g, &llrs, &DecoderConfig { list_size: 1, ..base }).unwrap();
                for (a, b) in [(&rbp, &rd), (&rbp, &list)] {
                    assert_eq!(a.iterations_used, b.iterations_used, "trial {trial}");
                    assert_eq!(a.converged, b.converged);
                    assert_eq!(a.decoded, b.decoded);
                    let same_bits = a
                        .final_posterior
                        .iter()
                        .zip(&b.final_posterior)
                        .all(|(x, y)| x.to_bits() == y.to_bits());
                    assert!(same_bits, "posterior trajectories diverged at trial {trial}");
                }
            }
        }

        #[test]
        fn full_list_step_equals_flooding_c2v_pass() {
            use crate::kernels::{c2v_message, MessageState};
            // With list_size = E the first step commits every initial
            // candidate, i.e. exactly the C2V half of a flooding iteration.
            let spec = CodeSpec::new(16, 8, 3, 6).unwrap();
            let g = construct_regular_code(&spec, 4).unwrap();
            let mut rng = stream_rng(22, 0);
            let llrs: Vec<f64> = (0..16).map(|_| rng.random_range(-2.0..2.0)).collect();

            let expected: Vec<f64> = {
                let state = MessageState::new(&g, &llrs).unwrap();
                (0..g.num_edges()).map(|e| c2v_message(&state, &g, e)).collect()
            };

            let cfg = DecoderConfig {
                list_size: g.num_edges(),
                t_max: 1,
                ..DecoderConfig::new(Algorithm::ListRbp)
            };
            // After one iteration (= one full-list step here), the posterior
            // must equal the one obtained from the expected C2V values.
            let r = decode_list_rbp(&g, &llrs, &cfg).unwrap();
            for v in 0..g.num_vars() {
                let manual: f64 = llrs[v]
                    + g.var_edges(v).iter().map(|&e| expected[e]).sum::<f64>();
                let clamped = manual.clamp(-crate::kernels::L_MAX, crate::kernels::L_MAX);
                assert!(
                    (r.final_posterior[v] - clamped).abs() < 1e-12,
                    "posterior mismatch at v{v}"
                );
            }
        }

        #[test]
        fn first_commit_is_global_max_residual() {
            use super::super::{compute_residual, Engine};
            use crate::instrumentation::OpCounts;
            use crate::kernels::{c2v_message, MessageState};

            let spec = CodeSpec::new(16, 8, 3, 6).unwrap();
            let g = construct_regular_code(&spec, 6).unwrap();
            let mut rng = stream_rng(23, 0);
            let llrs: Vec<f64> = (0..16).map(|_| rng.random_range(-2.0..2.0)).collect();
            let state = MessageState::new(&g, &llrs).unwrap();
            let mut ops = OpCounts::default();
            let mut engine = Engine::new(&g, &state, &mut ops, 1.0);

            let best = (0..g.num_edges())
                .map(|e| {
                    let cand = c2v_message(&state, &g, e);
                    (e, compute_residual(state.c2v(e), cand))
                })
                .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
                .unwrap();
            assert_eq!(engine.queue.pop_max(), Some(best));
        }
    }
}
