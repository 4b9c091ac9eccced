//! Flooding schedule: every V2C message, then every C2V message, each
//! iteration.

use super::{DecisionTrace, DecodeLoop, DecoderConfig};
use crate::codes::TannerGraph;
use crate::error::Result;
use crate::kernels::{c2v_message, v2c_message, DecodeResult};

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

    for t in 1..=config.t_max {
        // Neither pass reads what it writes, so in-place updates keep the
        // simultaneous semantics.
        for e in 0..graph.num_edges() {
            let msg = v2c_message(&lp.state, graph, e);
            lp.state.set_v2c(e, msg);
            lp.ops.v2c_ops += 1;
        }
        for e in 0..graph.num_edges() {
            let msg = c2v_message(&lp.state, graph, e);
            lp.state.set_c2v(e, msg);
            lp.ops.c2v_ops += 1;
        }
        if lp.end_iteration() {
            return Ok(lp.finish(true, t));
        }
    }
    let t_max = config.t_max;
    Ok(lp.finish(false, t_max))
}

#[cfg(test)]
mod tests {
    use super::super::{decode_flooding, Algorithm, DecoderConfig};
    use crate::codes::TannerGraph;

    #[test]
    fn noiseless_codeword_converges_at_entry() {
        let g = TannerGraph::from_check_adjacency(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let cfg = DecoderConfig::new(Algorithm::Flooding);
        let r = decode_flooding(&g, &[6.0, 6.0, 6.0], &cfg).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations_used, 0);
        assert_eq!(r.op_counts.total_ops(), 0);
        assert!(r.decoded.is_zero());
    }

    #[test]
    fn live_counters_match_schedule() {
        // A single flipped bit on the toy code: converges after some
        // iterations, each costing exactly E v2c and E c2v evaluations.
        let g = TannerGraph::from_check_adjacency(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let cfg = DecoderConfig::new(Algorithm::Flooding);
        let r = decode_flooding(&g, &[4.0, -0.5, 4.0], &cfg).unwrap();
        assert!(r.converged);
        assert!(r.iterations_used >= 1);
        let e = g.num_edges() as u64;
        assert_eq!(r.op_counts.v2c_ops, e * r.iterations_used as u64);
        assert_eq!(r.op_counts.c2v_ops, e * r.iterations_used as u64);
        assert_eq!(r.op_counts.precompute_ops, 0);
    }

    #[test]
    fn non_convergence_is_reported() {
        // A 4-cycle with perfectly contradictory LLRs oscillates between the
        // invalid decisions [1,0] and [0,1] forever.
        let g = TannerGraph::from_check_adjacency(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let cfg = DecoderConfig {
            t_max: 4,
            ..DecoderConfig::new(Algorithm::Flooding)
        };
        let r = decode_flooding(&g, &[5.0, -5.0], &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations_used, 4);
        assert!(!g.is_codeword(&r.decoded).unwrap());
    }
}
