//! Forward-error-correction toolkit for LDPC codes.
//!
//! The crate covers the full simulation pipeline: random regular code
//! construction and ALIST I/O ([`codes`]), a BPSK/AWGN channel model
//! ([`channel`]), sum-product message-passing kernels ([`kernels`]), a family
//! of decoding schedules from flooding BP to adaptive reliability-driven
//! scheduling ([`schedulers`]), analytic complexity/latency/memory models
//! ([`instrumentation`]), and a seeded, schedule-invariant Monte Carlo
//! harness for BER/FER sweeps and convergence profiles ([`harness`]).
//!
//! Everything is deterministic: graphs, noise, and decoders are pure
//! functions of their explicit seeds, and sweep results do not depend on the
//! number of worker threads.

pub mod bits;
pub mod channel;
pub mod codes;
pub mod error;
pub mod harness;
pub mod instrumentation;
pub mod kernels;
pub mod rng;
pub mod schedulers;

pub use bits::BitVector;
pub use error::{Error, Result};
