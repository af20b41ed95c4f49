//! Convolutional network-error-correcting codes over acyclic networks whose
//! edges are independent binary symmetric channels.
//!
//! A convolutional code at the source of a network-coded network protects all
//! sinks against symbol flips on the edges. This crate provides the pieces
//! needed to analyze and simulate that setup end to end:
//!
//! - [`gf2`]: polynomials and matrices over GF(2).
//! - [`network`]: the acyclic network model, per-sink transfer matrices, and
//!   error propagation, including the standard 9-edge butterfly instance.
//! - [`convcode`]: generator-matrix analysis, state graphs, encoding, free
//!   distance, and the slope metric with its `1/(degree+1)` lower bound.
//! - [`spectrum`]: exact sink-error statistics under the BSC edge model,
//!   single-edge dominance bounds, and crossover thresholds.
//! - [`transfer`]: generating-function evaluation and analytical BER bounds
//!   via per-output-vector Bhattacharyya weights.
//! - [`sim`]: reproducible Monte Carlo simulation with hard-decision Viterbi
//!   decoding on either the input or the output code trellis.

pub mod convcode;
pub mod gf2;
pub mod network;
pub mod sim;
pub mod spectrum;
pub mod transfer;

pub use convcode::{free_distance, slope, slope_bound_check, ConvCode, StateGraph};
pub use gf2::{BinMatrix, BinPoly, BinPolyMatrix};
pub use network::{butterfly, compute_transfer, validate, Network, NetworkCode, TransferSet};
pub use sim::{BerCurve, LaneSpec, SimConfig, Simulator, TrellisDecoder};
pub use spectrum::{
    compute_spectrum, empirical_threshold, exact_dist, proposition_threshold, Side, SinkDist,
    SinkSpectrum, ThresholdReport,
};
pub use transfer::{bhattacharyya, ber_bound, BerBound, FlowGraph};
