//! Layered schedule: serial sweep over check nodes in ascending index.
//!
//! For each check the incoming V2C messages are refreshed from the current
//! C2V state, then its outgoing C2V messages are recomputed and committed at
//! once, so later checks in the same sweep see the update immediately.

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
        for c in 0..graph.num_checks() {
            for e in graph.check_edges(c) {
                let msg = v2c_message(&lp.state, graph, e);
                lp.state.set_v2c(e, msg);
                lp.ops.v2c_ops += 1;
            }
            for e in graph.check_edges(c) {
                let msg = c2v_message(&lp.state, graph, e);
                lp.state.set_c2v(e, msg);
                lp.ops.c2v_ops += 1;
            }
        }
        if lp.end_iteration() {
            return Ok(lp.finish(true, t));
        }
    }
    let t_max = config.t_max;
    Ok(lp.finish(false, t_max))
}
