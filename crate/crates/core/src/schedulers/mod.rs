//! Decoding schedules: flooding, layered, residual-driven, and the adaptive
//! reliability-driven decoder.
//!
//! Every decoder is a pure function of `(graph, channel LLRs, config)`:
//! identical inputs give bit-identical outputs on every run and under any
//! thread schedule. The syndrome is checked before the first iteration and
//! after every iteration, so a noiseless input converges in zero iterations.

mod arcid;
mod flooding;
mod layered;
mod reliability;
mod residual;

pub use reliability::{
    combined_metric, contextual_transition, lambda_slots, message_quality_check,
    select_active_set, unreliability_order, ReliabilityState,
};
pub use residual::{compute_residual, ResidualQueue};

use crate::bits::BitVector;
use crate::codes::TannerGraph;
use crate::error::{Error, Result};
use crate::instrumentation::OpCounts;
use crate::kernels::{hard_decision, DecodeResult, MessageState};

/// Decoding schedule selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// All messages updated simultaneously each iteration.
    Flooding,
    /// Serial check-by-check sweeps with immediate effect.
    Layered,
    /// Residual belief propagation: largest pending change first.
    Rbp,
    /// RBP with residual decay on repeatedly committed edges.
    RdRbp,
    /// RBP committing a ranked list of edges per step.
    ListRbp,
    /// Two-stage reliability assessment plus weighted residual updates.
    Arcid,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Flooding,
        Algorithm::Layered,
        Algorithm::Rbp,
        Algorithm::RdRbp,
        Algorithm::ListRbp,
        Algorithm::Arcid,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Flooding => "flooding",
            Algorithm::Layered => "layered",
            Algorithm::Rbp => "rbp",
            Algorithm::RdRbp => "rd_rbp",
            Algorithm::ListRbp => "list_rbp",
            Algorithm::Arcid => "arcid",
        }
    }

    /// Parses a decoder name; hyphens and underscores are interchangeable.
    pub fn from_name(name: &str) -> Result<Self> {
        let canon = name.trim().to_ascii_lowercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == canon)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown decoder `{name}`; valid names: {}",
                    Algorithm::ALL.map(|a| a.name()).join(", ")
                ))
            })
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Decoder parameters. Defaults follow the reference operating point:
/// `alpha = 0.65`, `beta = 0.35`, `gamma = 0.15`, `lambda = 0.2`,
/// `t_max = 20`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderConfig {
    pub algorithm: Algorithm,
    /// Maximum iterations.
    pub t_max: usize,
    /// Weight of the syndrome-based unreliability index in the combined
    /// metric; `alpha + beta = 1`.
    pub alpha: f64,
    /// Weight of the contextual transition in the combined metric.
    pub beta: f64,
    /// Activation threshold on the combined metric.
    pub gamma: f64,
    /// Active-subset ratio: at most `ceil(lambda * n)` variables per
    /// iteration.
    pub lambda: f64,
    /// Residual decay factor per commit (rd_rbp).
    pub decay: f64,
    /// Edges committed per scheduling step (list_rbp).
    pub list_size: usize,
}

impl DecoderConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        DecoderConfig {
            algorithm,
            t_max: 20,
            alpha: 0.65,
            beta: 0.35,
            gamma: 0.15,
            lambda: 0.2,
            decay: 0.9,
            list_size: 4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_max < 1 {
            return Err(Error::Config("t_max must be at least 1".into()));
        }
        for (name, value) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Config(format!(
                    "{name} must lie in [0, 1], got {value}"
                )));
            }
        }
        if (self.alpha + self.beta - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "alpha + beta must equal 1, got {} + {}",
                self.alpha, self.beta
            )));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::Config(format!(
                "lambda must lie in [0, 1], got {}",
                self.lambda
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::Config(format!(
                "gamma must be non-negative, got {}",
                self.gamma
            )));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(Error::Config(format!(
                "decay must lie in (0, 1], got {}",
                self.decay
            )));
        }
        if self.list_size < 1 {
            return Err(Error::Config("list_size must be at least 1".into()));
        }
        Ok(())
    }
}

/// Hard decisions recorded at every iteration boundary;
/// `decisions[t]` is the decision after `t` iterations (index 0 = entry).
#[derive(Clone, Debug, Default)]
pub struct DecisionTrace {
    pub decisions: Vec<BitVector>,
}

/// Runs the schedule selected by `config.algorithm`.
pub fn decode(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    Ok(dispatch(graph, channel_llrs, config, false)?.0)
}

/// As [`decode`], also returning the per-iteration decision trace.
pub fn decode_traced(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<(DecodeResult, DecisionTrace)> {
    let (result, trace) = dispatch(graph, channel_llrs, config, true)?;
    Ok((result, trace.expect("trace requested")))
}

fn dispatch(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
    record: bool,
) -> Result<(DecodeResult, Option<DecisionTrace>)> {
    config.validate()?;
    match config.algorithm {
        Algorithm::Flooding => flooding::run(graph, channel_llrs, config, record),
        Algorithm::Layered => layered::run(graph, channel_llrs, config, record),
        Algorithm::Rbp | Algorithm::RdRbp | Algorithm::ListRbp => {
            residual::run(graph, channel_llrs, config, record)
        }
        Algorithm::Arcid => arcid::run(graph, channel_llrs, config, record),
    }
}

/// Flooding schedule with `config` (the algorithm field is ignored).
pub fn decode_flooding(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    config.validate()?;
    Ok(flooding::run(graph, channel_llrs, config, false)?.0)
}

/// Layered schedule.
pub fn decode_layered(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    config.validate()?;
    Ok(layered::run(graph, channel_llrs, config, false)?.0)
}

/// Residual belief propagation (single-edge commits, no decay).
pub fn decode_rbp(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode(graph, channel_llrs, &DecoderConfig { algorithm: Algorithm::Rbp, ..*config })
}

/// Residual-decaying RBP.
pub fn decode_rd_rbp(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode(graph, channel_llrs, &DecoderConfig { algorithm: Algorithm::RdRbp, ..*config })
}

/// List-RBP: commits the top `list_size` residual edges per step.
pub fn decode_list_rbp(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode(graph, channel_llrs, &DecoderConfig { algorithm: Algorithm::ListRbp, ..*config })
}

/// Adaptive two-stage decoder.
pub fn decode_arcid(
    graph: &TannerGraph,
    channel_llrs: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    decode(graph, channel_llrs, &DecoderConfig { algorithm: Algorithm::Arcid, ..*config })
}

/// Shared per-iteration bookkeeping: entry check, posterior refresh, trace
/// recording, and result assembly.
pub(crate) struct DecodeLoop<'g> {
    pub graph: &'g TannerGraph,
    pub state: MessageState,
    pub ops: OpCounts,
    trace: Option<DecisionTrace>,
}

impl<'g> DecodeLoop<'g> {
    pub fn new(graph: &'g TannerGraph, channel_llrs: &[f64], record: bool) -> Result<Self> {
        Ok(DecodeLoop {
            graph,
            state: MessageState::new(graph, channel_llrs)?,
            ops: OpCounts::default(),
            trace: record.then(DecisionTrace::default),
        })
    }

    /// Records the entry decision and reports whether it is already a
    /// codeword.
    pub fn entry_converged(&mut self) -> bool {
        self.record_decision();
        self.current_decision_is_codeword()
    }

    /// Ends one iteration: refreshes posteriors, records the decision, and
    /// reports convergence.
    pub fn end_iteration(&mut self) -> bool {
        self.state.refresh_posteriors(self.graph);
        self.record_decision();
        self.current_decision_is_codeword()
    }

    fn current_decision_is_codeword(&self) -> bool {
        let decision = hard_decision(self.state.posterior());
        self.graph
            .syndrome(&decision)
            .map(|s| s.is_zero())
            .unwrap_or(false)
    }

    fn record_decision(&mut self) {
        if let Some(trace) = &mut self.trace {
            trace
                .decisions
                .push(hard_decision(self.state.posterior()));
        }
    }

    pub fn finish(
        self,
        converged: bool,
        iterations_used: usize,
    ) -> (DecodeResult, Option<DecisionTrace>) {
        let final_posterior = self.state.posterior().to_vec();
        let decoded = hard_decision(&final_posterior);
        (
            DecodeResult {
                decoded,
                converged,
                iterations_used,
                op_counts: self.ops,
                final_posterior,
            },
            self.trace,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(Algorithm::from_name(a.name()).unwrap(), a);
        }
        assert_eq!(Algorithm::from_name("RD-RBP").unwrap(), Algorithm::RdRbp);
        assert!(Algorithm::from_name("urw").is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = DecoderConfig::new(Algorithm::Arcid);
        assert!(cfg.validate().is_ok());
        cfg.alpha = 0.7; // alpha + beta != 1
        assert!(cfg.validate().is_err());
        cfg.alpha = 0.65;
        cfg.lambda = 1.5;
        assert!(cfg.validate().is_err());
        cfg.lambda = 0.2;
        cfg.t_max = 0;
        assert!(cfg.validate().is_err());
        cfg.t_max = 20;
        cfg.decay = 0.0;
        assert!(cfg.validate().is_err());
        cfg.decay = 1.0;
        cfg.list_size = 0;
        assert!(cfg.validate().is_err());
    }
}
