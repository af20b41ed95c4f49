//! Seedable end-to-end Monte Carlo simulation: encode at the source,
//! transmit one codeword block per network use over i.i.d. BSC edges, and
//! hard-decision Viterbi decode at each sink.
//!
//! A sink decodes either on the input code's trellis after multiplying every
//! received block by the inverse transfer matrix, or directly on its output
//! code's trellis. Both are exposed per sink as independent lanes of one
//! simulation, sharing the channel realizations.
//!
//! Reproducibility: the generator is pinned (ChaCha12), frames are drawn on a
//! per-grid-point stream of the master seed, and sweep results are merged by
//! grid index, so a fixed seed yields identical counts no matter how many
//! threads run the sweep.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::convcode::{CodeError, ConvCode, StateGraph};
use crate::network::{compute_transfer, validate, Network, NetworkCode, NetworkError};
use crate::spectrum::Side;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("network validation failed: {0}")]
    InvalidNetwork(String),
    #[error("code outputs {c}-bit blocks but the network code dimension is {n}")]
    CodeMismatch { c: usize, n: usize },
    #[error("received {found} blocks, expected frame length {frame} plus {tail} termination blocks")]
    LengthMismatch {
        found: usize,
        frame: usize,
        tail: usize,
    },
    #[error("edge error probability must satisfy 0 <= p < 0.5, got {0}")]
    BadProbability(f64),
    #[error("unknown sink {0}")]
    UnknownSink(String),
    #[error("frame length and trial count must be positive")]
    EmptyConfig,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Hard-decision Viterbi decoder on a code's controller-canonical trellis.
/// Branch metric is the Hamming distance between the received block and the
/// branch output; metric ties keep the branch from the smaller (state, input)
/// pair, so decoding is deterministic.
#[derive(Debug, Clone)]
pub struct TrellisDecoder {
    graph: StateGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedFrame {
    /// Estimated information blocks (termination steps stripped).
    pub info: Vec<u32>,
    /// Hamming distance between the received sequence and the decoded path.
    pub metric: u64,
}

impl TrellisDecoder {
    pub fn new(code: &ConvCode) -> TrellisDecoder {
        TrellisDecoder {
            graph: StateGraph::build(code),
        }
    }

    pub fn graph(&self) -> &StateGraph {
        &self.graph
    }

    /// Maximum-likelihood terminated decoding: the path starts and ends at
    /// the zero state and the final `nu_max` inputs are forced to zero.
    /// `received` must hold `info_len + nu_max` blocks.
    pub fn decode(&self, received: &[u32], info_len: usize) -> Result<DecodedFrame, SimError> {
        let g = &self.graph;
        let tail = g.nu_max();
        if received.len() != info_len + tail {
            return Err(SimError::LengthMismatch {
                found: received.len(),
                frame: info_len,
                tail,
            });
        }
        let states = g.num_states();
        let fanout = 1u32 << g.input_size();
        const INF: u64 = u64::MAX;

        let mut metric = vec![INF; states];
        metric[0] = 0;
        let mut survivors: Vec<Vec<(u32, u32)>> = Vec::with_capacity(received.len());
        let mut next_metric = vec![INF; states];
        for (t, &block) in received.iter().enumerate() {
            let inputs = if t >= info_len { 1 } else { fanout };
            next_metric.iter_mut().for_each(|m| *m = INF);
            let mut surv = vec![(0u32, 0u32); states];
            for (s, &ms) in metric.iter().enumerate() {
                if ms == INF {
                    continue;
                }
                for u in 0..inputs {
                    let branch = (g.output(s as u32, u) ^ block).count_ones() as u64;
                    let to = g.next(s as u32, u) as usize;
                    if ms + branch < next_metric[to] {
                        next_metric[to] = ms + branch;
                        surv[to] = (s as u32, u);
                    }
                }
            }
            survivors.push(surv);
            std::mem::swap(&mut metric, &mut next_metric);
        }

        let final_metric = metric[0];
        debug_assert_ne!(final_metric, INF, "zero-terminated path always exists");
        let mut info = vec![0u32; info_len];
        let mut state = 0u32;
        for t in (0..received.len()).rev() {
            let (prev, u) = survivors[t][state as usize];
            if t < info_len {
                info[t] = u;
            }
            state = prev;
        }
        Ok(DecodedFrame {
            info,
            metric: final_metric,
        })
    }
}

/// Simulation parameters shared by every grid point.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub pe_grid: Vec<f64>,
    /// Frame budget per grid point.
    pub trials: u64,
    /// Information blocks per frame (termination blocks come on top).
    pub frame_len: usize,
    pub seed: u64,
    /// A lane stops decoding further frames once it has seen this many bit
    /// errors; channel generation continues while any lane is live.
    pub max_errors: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaneSpec {
    pub sink: String,
    pub side: Side,
}

/// Counts for one lane at one grid point.
#[derive(Debug, Clone)]
pub struct LaneResult {
    pub sink: String,
    pub side: Side,
    pub p_e: f64,
    pub bits: u64,
    pub bit_errors: u64,
    /// Set when an output-side lane decodes on a trellis whose generator is
    /// not minimal-basic.
    pub output_code_caveat: bool,
}

impl LaneResult {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits as f64
        }
    }

    /// Half-width of the 95% normal-approximation confidence interval.
    pub fn ci95(&self) -> f64 {
        if self.bits == 0 {
            return 0.0;
        }
        let p = self.ber();
        1.96 * (p * (1.0 - p) / self.bits as f64).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct BerPoint {
    pub p_e: f64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub ci95: f64,
}

#[derive(Debug, Clone)]
pub struct BerCurve {
    pub sink: String,
    pub side: Side,
    pub points: Vec<BerPoint>,
}

struct SinkCtx {
    name: String,
    /// x -> x * M_T, indexed by the n-bit mask.
    forward: Vec<u32>,
    /// Sink error of each single edge; XOR of a subset gives any w's error.
    reach: Vec<u32>,
}

struct LaneCtx {
    sink_index: usize,
    side: Side,
    decoder: TrellisDecoder,
    /// y -> y * M_T^{-1}, identity for output-side lanes.
    unmix: Vec<u32>,
    caveat: bool,
}

/// A prepared simulation: validated network, derived output codes, lookup
/// tables, and decoders for every requested (sink, side) lane.
pub struct Simulator {
    num_edges: usize,
    n: usize,
    graph: StateGraph,
    sinks: Vec<SinkCtx>,
    lanes: Vec<LaneCtx>,
    cfg: SimConfig,
}

fn mask_table(m: &crate::gf2::BinMatrix) -> Vec<u32> {
    let n = m.rows();
    (0..1u32 << n)
        .map(|x| {
            let mut y = 0u32;
            for row in 0..n {
                if x >> row & 1 == 1 {
                    y ^= m.row_mask(row) as u32;
                }
            }
            y
        })
        .collect()
}

impl Simulator {
    pub fn new(
        net: &Network,
        netcode: &NetworkCode,
        input_code: &ConvCode,
        lanes: &[LaneSpec],
        cfg: SimConfig,
    ) -> Result<Simulator, SimError> {
        if cfg.frame_len == 0 || cfg.trials == 0 || lanes.is_empty() {
            return Err(SimError::EmptyConfig);
        }
        for &p in &cfg.pe_grid {
            if !(0.0..0.5).contains(&p) {
                return Err(SimError::BadProbability(p));
            }
        }
        let diag = validate(net, netcode);
        if !diag.all_pass() {
            let failed: Vec<String> = diag
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(SimError::InvalidNetwork(failed.join("; ")));
        }
        if input_code.output_size() != net.n {
            return Err(SimError::CodeMismatch {
                c: input_code.output_size(),
                n: net.n,
            });
        }
        let tf = compute_transfer(net, netcode)?;

        let mut sinks: Vec<SinkCtx> = Vec::new();
        let mut lane_ctxs = Vec::new();
        for spec in lanes {
            let m = tf
                .transfer_matrix(&spec.sink)
                .ok_or_else(|| SimError::UnknownSink(spec.sink.clone()))?;
            let sink_index = match sinks.iter().position(|s| s.name == spec.sink) {
                Some(i) => i,
                None => {
                    let fb = tf.sink_reach(&spec.sink).expect("sink present");
                    sinks.push(SinkCtx {
                        name: spec.sink.clone(),
                        forward: mask_table(m),
                        reach: (0..net.num_edges()).map(|e| fb.row_mask(e) as u32).collect(),
                    });
                    sinks.len() - 1
                }
            };
            let identity = (0..1u32 << net.n).collect();
            let (decoder, unmix, caveat) = match spec.side {
                Side::Input => {
                    let inverse = m.inverse().map_err(|_| {
                        SimError::InvalidNetwork(format!("transfer matrix at {} singular", spec.sink))
                    })?;
                    (TrellisDecoder::new(input_code), mask_table(&inverse), false)
                }
                Side::Output => {
                    let g_out = input_code.generator().mul_matrix(m).map_err(CodeError::from)?;
                    let out_code = ConvCode::analyze(g_out)?;
                    let caveat = !out_code.is_minimal_basic();
                    (TrellisDecoder::new(&out_code), identity, caveat)
                }
            };
            lane_ctxs.push(LaneCtx {
                sink_index,
                side: spec.side,
                decoder,
                unmix,
                caveat,
            });
        }
        Ok(Simulator {
            num_edges: net.num_edges(),
            n: net.n,
            graph: StateGraph::build(input_code),
            sinks,
            lanes: lane_ctxs,
            cfg,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    /// Runs the frame budget at one `p_e`. The RNG stream is derived from
    /// (seed, stream), so distinct grid points draw independent but
    /// reproducible channel noise.
    pub fn run_point(&self, p_e: f64, stream: u64) -> Result<Vec<LaneResult>, SimError> {
        if !(0.0..0.5).contains(&p_e) {
            return Err(SimError::BadProbability(p_e));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);

        let b = self.graph.input_size();
        let bmask = (1u32 << b) - 1;
        let l = self.cfg.frame_len;
        let blocks = l + self.graph.nu_max();

        let mut bits = vec![0u64; self.lanes.len()];
        let mut errors = vec![0u64; self.lanes.len()];
        let mut live = vec![true; self.lanes.len()];

        let mut info = vec![0u32; l];
        let mut transmitted: Vec<u32>;
        let mut flips_per_use = vec![0u64; blocks];
        let mut sink_errs = vec![vec![0u32; blocks]; self.sinks.len()];
        let mut received = vec![0u32; blocks];

        for _ in 0..self.cfg.trials {
            if live.iter().all(|l| !l) {
                break;
            }
            for slot in info.iter_mut() {
                *slot = rng.random::<u32>() & bmask;
            }
            transmitted = self.graph.encode(&info, true);

            for flips in flips_per_use.iter_mut() {
                *flips = 0;
                for e in 0..self.num_edges {
                    if rng.random_bool(p_e) {
                        *flips |= 1 << e;
                    }
                }
            }
            for (sink, errs) in self.sinks.iter().zip(sink_errs.iter_mut()) {
                for (err, &flips) in errs.iter_mut().zip(&flips_per_use) {
                    let mut y = 0u32;
                    let mut rest = flips;
                    while rest != 0 {
                        let e = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        y ^= sink.reach[e];
                    }
                    *err = y;
                }
            }

            for (li, lane) in self.lanes.iter().enumerate() {
                if !live[li] {
                    continue;
                }
                let sink = &self.sinks[lane.sink_index];
                for t in 0..blocks {
                    let out_symbol = sink.forward[transmitted[t] as usize]
                        ^ sink_errs[lane.sink_index][t];
                    received[t] = lane.unmix[out_symbol as usize];
                }
                let decoded = lane.decoder.decode(&received, l)?;
                let frame_errors: u64 = decoded
                    .info
                    .iter()
                    .zip(&info)
                    .map(|(a, b)| (a ^ b).count_ones() as u64)
                    .sum();
                errors[li] += frame_errors;
                bits[li] += (l * b) as u64;
                if errors[li] >= self.cfg.max_errors {
                    live[li] = false;
                }
            }
        }

        Ok(self
            .lanes
            .iter()
            .enumerate()
            .map(|(li, lane)| LaneResult {
                sink: self.sinks[lane.sink_index].name.clone(),
                side: lane.side,
                p_e,
                bits: bits[li],
                bit_errors: errors[li],
                output_code_caveat: lane.caveat,
            })
            .collect())
    }

    /// Sweeps the whole grid, one RNG stream per point, points in parallel.
    /// Returns one curve per lane with points in grid order.
    pub fn run_sweep(&self) -> Result<Vec<BerCurve>, SimError> {
        let per_point: Vec<Vec<LaneResult>> = self
            .cfg
            .pe_grid
            .par_iter()
            .enumerate()
            .map(|(i, &p_e)| self.run_point(p_e, i as u64))
            .collect::<Result<_, _>>()?;
        Ok(self
            .lanes
            .iter()
            .enumerate()
            .map(|(li, lane)| BerCurve {
                sink: self.sinks[lane.sink_index].name.clone(),
                side: lane.side,
                points: per_point
                    .iter()
                    .map(|results| {
                        let r = &results[li];
                        BerPoint {
                            p_e: r.p_e,
                            bits: r.bits,
                            bit_errors: r.bit_errors,
                            ber: r.ber(),
                            ci95: r.ci95(),
                        }
                    })
                    .collect(),
            })
            .collect())
    }

    /// Injects a deterministic error pattern: `flips[t]` is the edge mask
    /// flipped during network use `t`. Returns per-lane decoded info blocks
    /// for the given information sequence. Test and diagnostic hook; the
    /// Monte Carlo path goes through `run_point`.
    pub fn transmit_with_errors(
        &self,
        info: &[u32],
        flips: &[u64],
    ) -> Result<Vec<Vec<u32>>, SimError> {
        let blocks = info.len() + self.graph.nu_max();
        if flips.len() != blocks {
            return Err(SimError::LengthMismatch {
                found: flips.len(),
                frame: info.len(),
                tail: self.graph.nu_max(),
            });
        }
        let transmitted = self.graph.encode(info, true);
        let mut out = Vec::with_capacity(self.lanes.len());
        for lane in &self.lanes {
            let sink = &self.sinks[lane.sink_index];
            let received: Vec<u32> = (0..blocks)
                .map(|t| {
                    let mut y = 0u32;
                    let mut rest = flips[t];
                    while rest != 0 {
                        let e = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        y ^= sink.reach[e];
                    }
                    lane.unmix[(sink.forward[transmitted[t] as usize] ^ y) as usize]
                })
                .collect();
            out.push(lane.decoder.decode(&received, info.len())?.info);
        }
        Ok(out)
    }

    pub fn lanes(&self) -> Vec<LaneSpec> {
        self.lanes
            .iter()
            .map(|l| LaneSpec {
                sink: self.sinks[l.sink_index].name.clone(),
                side: l.side,
            })
            .collect()
    }

    pub fn network_dimension(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::butterfly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c757() -> ConvCode {
        ConvCode::parse("[[[1,1,1],[1,0,1]]]").unwrap()
    }

    fn c31() -> ConvCode {
        ConvCode::parse("[[[1,1],[1]]]").unwrap()
    }

    fn both_side_lanes(sink: &str) -> Vec<LaneSpec> {
        vec![
            LaneSpec {
                sink: sink.into(),
                side: Side::Input,
            },
            LaneSpec {
                sink: sink.into(),
                side: Side::Output,
            },
        ]
    }

    fn quick_cfg(pe_grid: Vec<f64>, trials: u64, frame_len: usize) -> SimConfig {
        SimConfig {
            pe_grid,
            trials,
            frame_len,
            seed: 99,
            max_errors: u64::MAX,
        }
    }

    #[test]
    fn decoder_recovers_clean_codewords() {
        let code = c757();
        let dec = TrellisDecoder::new(&code);
        for bits in 0u32..64 {
            let info: Vec<u32> = (0..6).map(|t| bits >> t & 1).collect();
            let received = code.encode(&info, true);
            let out = dec.decode(&received, 6).unwrap();
            assert_eq!(out.info, info);
            assert_eq!(out.metric, 0);
        }
    }

    #[test]
    fn decoder_rejects_wrong_length() {
        let dec = TrellisDecoder::new(&c757());
        assert!(matches!(
            dec.decode(&[0; 5], 6),
            Err(SimError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn all_zero_received_decodes_to_zero() {
        let dec = TrellisDecoder::new(&c31());
        let out = dec.decode(&[0u32; 12], 11).unwrap();
        assert!(out.info.iter().all(|&u| u == 0));
    }

    #[test]
    fn corrects_up_to_two_flips_anywhere() {
        // free distance 5 corrects any pattern of one or two channel bit flips
        let code = c757();
        let dec = TrellisDecoder::new(&code);
        let info: Vec<u32> = vec![1, 0, 1, 1, 0, 0];
        let clean = code.encode(&info, true);
        let total_bits = clean.len() * 2;
        for i in 0..total_bits {
            for j in i..total_bits {
                let mut rx = clean.clone();
                rx[i / 2] ^= 1 << (i % 2);
                if j != i {
                    rx[j / 2] ^= 1 << (j % 2);
                }
                let out = dec.decode(&rx, info.len()).unwrap();
                assert_eq!(out.info, info, "flips at bits {i},{j}");
            }
        }
    }

    #[test]
    fn viterbi_matches_exhaustive_ml_search() {
        // every info sequence of kL = 10 bits, a noisy channel, and the
        // brute-force minimum over all codewords
        let code = c757();
        let dec = TrellisDecoder::new(&code);
        let l = 10usize;
        let mut rng = ChaCha12Rng::seed_from_u64(1234);
        for _ in 0..40 {
            let received: Vec<u32> =
                (0..l + 2).map(|_| rng.random::<u32>() & 0b11).collect();
            let out = dec.decode(&received, l).unwrap();
            let mut best_metric = u64::MAX;
            let mut best_count = 0u32;
            let mut best_info = Vec::new();
            for bits in 0u32..1 << l {
                let info: Vec<u32> = (0..l).map(|t| bits >> t & 1).collect();
                let cw = code.encode(&info, true);
                let dist: u64 = cw
                    .iter()
                    .zip(&received)
                    .map(|(a, b)| (a ^ b).count_ones() as u64)
                    .sum();
                if dist < best_metric {
                    best_metric = dist;
                    best_count = 1;
                    best_info = info;
                } else if dist == best_metric {
                    best_count += 1;
                }
            }
            assert_eq!(out.metric, best_metric);
            if best_count == 1 {
                assert_eq!(out.info, best_info);
            }
        }
    }

    #[test]
    fn zero_noise_gives_zero_ber_on_both_sides_and_sinks() {
        let (net, netcode) = butterfly();
        let mut lanes = both_side_lanes("T1");
        lanes.extend(both_side_lanes("T2"));
        let sim = Simulator::new(
            &net,
            &netcode,
            &c757(),
            &lanes,
            quick_cfg(vec![0.0], 50, 40),
        )
        .unwrap();
        for r in sim.run_point(0.0, 0).unwrap() {
            assert_eq!(r.bit_errors, 0, "{} {:?}", r.sink, r.side);
            assert_eq!(r.bits, 50 * 40);
        }
    }

    #[test]
    fn end_to_end_identity_many_random_frames() {
        // zero injected error: decode(encode(u)) == u across lanes
        let (net, netcode) = butterfly();
        let mut lanes = both_side_lanes("T1");
        lanes.extend(both_side_lanes("T2"));
        let sim = Simulator::new(
            &net,
            &netcode,
            &c757(),
            &lanes,
            quick_cfg(vec![0.0], 1, 4),
        )
        .unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let info: Vec<u32> = (0..4).map(|_| rng.random::<u32>() & 1).collect();
            let flips = vec![0u64; info.len() + 2];
            for decoded in sim.transmit_with_errors(&info, &flips).unwrap() {
                assert_eq!(decoded, info);
            }
        }
    }

    #[test]
    fn isolated_single_edge_errors_are_corrected() {
        // one edge flips during one network use; input-side decoding with
        // free distance 5 always corrects the weight <= 2 sink aberration
        // (the derived output codes have smaller free distance, so they get
        // no such guarantee)
        let (net, netcode) = butterfly();
        let lanes = vec![
            LaneSpec {
                sink: "T1".into(),
                side: Side::Input,
            },
            LaneSpec {
                sink: "T2".into(),
                side: Side::Input,
            },
        ];
        let sim = Simulator::new(
            &net,
            &netcode,
            &c757(),
            &lanes,
            quick_cfg(vec![0.0], 1, 8),
        )
        .unwrap();
        let info = vec![1, 0, 1, 1, 0, 1, 0, 0];
        for edge in 0..9u64 {
            for phase in 0..10usize {
                let mut flips = vec![0u64; 10];
                flips[phase] = 1 << edge;
                for (lane, decoded) in sim
                    .lanes()
                    .iter()
                    .zip(sim.transmit_with_errors(&info, &flips).unwrap())
                {
                    assert_eq!(
                        decoded, info,
                        "edge {edge} phase {phase} lane {lane:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn fixed_seed_reproduces_counts() {
        let (net, netcode) = butterfly();
        let cfg = quick_cfg(vec![0.05, 0.1], 60, 50);
        let sim = Simulator::new(&net, &netcode, &c31(), &both_side_lanes("T2"), cfg).unwrap();
        let a = sim.run_sweep().unwrap();
        let b = sim.run_sweep().unwrap();
        for (ca, cb) in a.iter().zip(&b) {
            for (pa, pb) in ca.points.iter().zip(&cb.points) {
                assert_eq!(pa.bit_errors, pb.bit_errors);
                assert_eq!(pa.bits, pb.bits);
            }
        }
    }

    #[test]
    fn doubling_trials_shrinks_confidence_interval() {
        let (net, netcode) = butterfly();
        let lanes = vec![LaneSpec {
            sink: "T1".into(),
            side: Side::Input,
        }];
        let small = Simulator::new(
            &net,
            &netcode,
            &c31(),
            &lanes,
            quick_cfg(vec![0.2], 400, 100),
        )
        .unwrap();
        let big = Simulator::new(
            &net,
            &netcode,
            &c31(),
            &lanes,
            quick_cfg(vec![0.2], 800, 100),
        )
        .unwrap();
        let ci_small = small.run_sweep().unwrap()[0].points[0].ci95;
        let ci_big = big.run_sweep().unwrap()[0].points[0].ci95;
        let ratio = ci_big / ci_small;
        assert!(
            (0.6..0.82).contains(&ratio),
            "expected about 1/sqrt(2), got {ratio}"
        );
    }

    #[test]
    fn early_stop_freezes_lane_counts() {
        let (net, netcode) = butterfly();
        let cfg = SimConfig {
            pe_grid: vec![0.3],
            trials: 500,
            frame_len: 50,
            seed: 5,
            max_errors: 100,
        };
        let sim = Simulator::new(
            &net,
            &netcode,
            &c31(),
            &[LaneSpec {
                sink: "T1".into(),
                side: Side::Input,
            }],
            cfg,
        )
        .unwrap();
        let r = &sim.run_point(0.3, 0).unwrap()[0];
        assert!(r.bit_errors >= 100);
        assert!(r.bits < 500 * 50, "early stop did not trigger");
    }

    #[test]
    fn mismatched_code_dimension_rejected() {
        let (net, netcode) = butterfly();
        let wide = ConvCode::parse("[[[1],[1],[1]]]").unwrap();
        assert!(matches!(
            Simulator::new(
                &net,
                &netcode,
                &wide,
                &both_side_lanes("T1"),
                quick_cfg(vec![0.01], 1, 10),
            ),
            Err(SimError::CodeMismatch { c: 3, n: 2 })
        ));
    }
}
