//! Sum-product message-passing primitives shared by every scheduler.
//!
//! Messages live in the LLR domain. The check update uses the exact
//! tanh-product rule; the product argument is clipped away from +-1 before
//! `atanh` and every stored message is clamped to `+-l_max`, so no finite
//! input can produce a NaN or infinity. `tanh(m/2)` is cached per edge and
//! kept in sync by the state setters, which keeps single-edge recomputation
//! cheap for the residual schedulers.

use crate::bits::BitVector;
use crate::codes::TannerGraph;
use crate::error::{Error, Result};
use crate::instrumentation::OpCounts;

/// Default LLR clamp. `tanh(15)` already rounds to 1 at double precision,
/// so larger magnitudes carry no information.
pub const L_MAX: f64 = 30.0;

/// Margin keeping the tanh product inside the open interval (-1, 1).
const ATANH_CLIP: f64 = 1e-12;

/// Per-decode message storage.
///
/// After [`MessageState::new`]: every edge's V2C message equals its
/// variable's channel LLR, all C2V messages are zero, and both posterior
/// vectors equal the channel LLRs (so the first contextual transition is
/// zero).
#[derive(Clone, Debug)]
pub struct MessageState {
    channel_llrs: Vec<f64>,
    v2c: Vec<f64>,
    tanh_half_v2c: Vec<f64>,
    c2v: Vec<f64>,
    posterior: Vec<f64>,
    posterior_prev: Vec<f64>,
    l_max: f64,
}

impl MessageState {
    /// Initializes message storage for one decode with the default clamp.
    pub fn new(graph: &TannerGraph, channel_llrs: &[f64]) -> Result<Self> {
        Self::with_clamp(graph, channel_llrs, L_MAX)
    }

    /// As [`MessageState::new`] with an explicit clamp bound; pass
    /// `f64::INFINITY` to disable clamping (used by exactness tests).
    pub fn with_clamp(graph: &TannerGraph, channel_llrs: &[f64], l_max: f64) -> Result<Self> {
        if channel_llrs.len() != graph.num_vars() {
            return Err(Error::Dimension {
                what: "channel LLRs",
                expected: graph.num_vars(),
                actual: channel_llrs.len(),
            });
        }
        let e = graph.num_edges();
        let mut state = MessageState {
            channel_llrs: channel_llrs.to_vec(),
            v2c: vec![0.0; e],
            tanh_half_v2c: vec![0.0; e],
            c2v: vec![0.0; e],
            posterior: channel_llrs.to_vec(),
            posterior_prev: channel_llrs.to_vec(),
            l_max,
        };
        for edge in 0..e {
            state.set_v2c(edge, channel_llrs[graph.edge_var(edge)]);
        }
        Ok(state)
    }

    pub fn l_max(&self) -> f64 {
        self.l_max
    }

    pub fn channel_llr(&self, v: usize) -> f64 {
        self.channel_llrs[v]
    }

    pub fn v2c(&self, edge: usize) -> f64 {
        self.v2c[edge]
    }

    pub fn c2v(&self, edge: usize) -> f64 {
        self.c2v[edge]
    }

    pub fn posterior(&self) -> &[f64] {
        &self.posterior
    }

    pub fn posterior_prev(&self) -> &[f64] {
        &self.posterior_prev
    }

    fn clamp(&self, x: f64) -> f64 {
        x.clamp(-self.l_max, self.l_max)
    }

    /// Stores a V2C message (clamped) and refreshes its tanh cache entry.
    /// The cached value is computed as an exactly odd function so global
    /// sign symmetry survives libm rounding.
    pub fn set_v2c(&mut self, edge: usize, value: f64) {
        let v = self.clamp(value);
        self.v2c[edge] = v;
        self.tanh_half_v2c[edge] = (v.abs() * 0.5).tanh().copysign(v);
    }

    /// Stores a C2V message (clamped).
    pub fn set_c2v(&mut self, edge: usize, value: f64) {
        self.c2v[edge] = self.clamp(value);
    }

    /// Saves the current posterior as the previous-iteration reference.
    pub fn save_posterior_prev(&mut self) {
        self.posterior_prev.copy_from_slice(&self.posterior);
    }

    /// Recomputes all posterior LLRs from the channel term and current C2V
    /// messages.
    pub fn refresh_posteriors(&mut self, graph: &TannerGraph) {
        for v in 0..graph.num_vars() {
            self.posterior[v] = posterior_llr(self, graph, v);
        }
    }
}

/// Initializes message storage; see [`MessageState::new`].
pub fn init_state(graph: &TannerGraph, channel_llrs: &[f64]) -> Result<MessageState> {
    MessageState::new(graph, channel_llrs)
}

/// Variable-to-check message for `edge = (v, c)`:
/// the channel LLR of `v` plus all incoming C2V messages except the one from
/// `c`, clamped.
pub fn v2c_message(state: &MessageState, graph: &TannerGraph, edge: usize) -> f64 {
    let v = graph.edge_var(edge);
    let mut acc = state.channel_llr(v);
    for &e in graph.var_edges(v) {
        if e != edge {
            acc += state.c2v(e);
        }
    }
    acc.clamp(-state.l_max(), state.l_max())
}

/// Check-to-variable message for `edge = (c, v)`:
/// `2 atanh( prod_{v' in N(c) \ v} tanh(m_{v'->c} / 2) )`, with the product
/// clipped into the open unit interval, then clamped.
///
/// The sign of the output is the product of the input signs and its
/// magnitude never exceeds the smallest input magnitude.
pub fn c2v_message(state: &MessageState, graph: &TannerGraph, edge: usize) -> f64 {
    let c = graph.edge_check(edge);
    let mut product = 1.0f64;
    for e in graph.check_edges(c) {
        if e != edge {
            product *= state.tanh_half_v2c[e];
        }
    }
    // atanh applied to the magnitude only: |prod(t_i)| = prod(|t_i|) holds
    // exactly in IEEE arithmetic, so negating any input flips the output
    // sign without perturbing its magnitude.
    let magnitude = product.abs().min(1.0 - ATANH_CLIP);
    let out = (2.0 * magnitude.atanh()).copysign(product);
    out.clamp(-state.l_max(), state.l_max())
}

/// Posterior LLR of variable `v`: channel term plus all incoming C2V
/// messages, clamped.
pub fn posterior_llr(state: &MessageState, graph: &TannerGraph, v: usize) -> f64 {
    let mut acc = state.channel_llr(v);
    for &e in graph.var_edges(v) {
        acc += state.c2v(e);
    }
    acc.clamp(-state.l_max(), state.l_max())
}

/// Posterior LLRs for all variables.
pub fn posterior_llrs(state: &MessageState, graph: &TannerGraph) -> Vec<f64> {
    (0..graph.num_vars())
        .map(|v| posterior_llr(state, graph, v))
        .collect()
}

/// Hard decision: LLR < 0 decides bit 1; zero ties decide bit 0.
pub fn hard_decision(llrs: &[f64]) -> BitVector {
    BitVector::from(
        llrs.iter()
            .map(|&l| u8::from(l < 0.0))
            .collect::<Vec<u8>>(),
    )
}

/// True iff the hard decision of `llrs` satisfies every parity check.
pub fn check_convergence(graph: &TannerGraph, llrs: &[f64]) -> bool {
    graph
        .syndrome(&hard_decision(llrs))
        .map(|s| s.is_zero())
        .unwrap_or(false)
}

/// Output of one decode.
#[derive(Clone, Debug)]
pub struct DecodeResult {
    /// Final hard decision.
    pub decoded: BitVector,
    /// True iff the decision satisfies every parity check.
    pub converged: bool,
    /// Iterations consumed; 0 when the entry syndrome check already passed.
    pub iterations_used: usize,
    /// Kernel evaluations executed during the decode.
    pub op_counts: OpCounts,
    /// Posterior LLRs at the final iteration.
    pub final_posterior: Vec<f64>,
}
