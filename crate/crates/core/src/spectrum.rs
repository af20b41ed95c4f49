//! Exact sink-error statistics under the i.i.d. BSC edge model.
//!
//! Every edge flips its symbol independently with probability `p_e` per
//! network use. A network error is the 0/1 vector of flipped edges; it
//! reaches a sink as an n-bit error vector through `F*B_T`. This module
//! counts, for each weight `i` and sink error `y`, how many weight-i edge
//! error vectors land on `y`, and turns those counts into exact sink error
//! distributions, single-edge dominance bounds, and the crossover
//! probability below which single-edge errors carry at least `lambda` times
//! the probability mass of all multi-edge errors combined.

use thiserror::Error;

use crate::gf2::BinMatrix;
use crate::network::TransferSet;

/// Hard cap on the number of error vectors enumerated per spectrum.
pub const ENUMERATION_CAP: u64 = 1 << 24;
/// Sink dimension cap; distributions are dense over `2^n` error vectors.
pub const MAX_SINK_DIM: usize = 24;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("unknown sink {0}")]
    UnknownSink(String),
    #[error("enumerating {needed} error vectors exceeds the cap {cap}; lower max_weight")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("sink dimension {0} exceeds the supported maximum {MAX_SINK_DIM}")]
    DimensionTooLarge(usize),
    #[error("max_weight {max_weight} exceeds the number of edges {num_edges}")]
    BadWeight { max_weight: usize, num_edges: usize },
    #[error("edge error probability must satisfy 0 <= p < 0.5, got {0}")]
    BadProbability(f64),
    #[error("operation requires a full-weight spectrum (computed to weight {num_edges}, have {max_weight})")]
    NotFull { max_weight: usize, num_edges: usize },
    #[error("lambda must be nonnegative, got {0}")]
    BadLambda(f64),
    #[error("need at least 2 edges, got {0}")]
    TooFewEdges(usize),
    #[error("transfer matrix is {rows}x{cols}, expected {n}x{n}")]
    BadTransferMatrix { rows: usize, cols: usize, n: usize },
}

/// Counts `a[i][y]`: the number of weight-i edge error vectors whose sink
/// error equals `y`, for `i` up to `max_weight`.
#[derive(Debug, Clone)]
pub struct SinkSpectrum {
    pub sink: String,
    pub num_edges: usize,
    pub n: usize,
    pub max_weight: usize,
    counts: Vec<Vec<u128>>,
}

impl SinkSpectrum {
    pub fn count(&self, weight: usize, y: u32) -> u128 {
        self.counts[weight][y as usize]
    }

    pub fn weight_row(&self, weight: usize) -> &[u128] {
        &self.counts[weight]
    }

    pub fn is_full(&self) -> bool {
        self.max_weight == self.num_edges
    }

    /// Sink errors reachable by a single edge flip, with their multiplicity.
    pub fn single_edge_errors(&self) -> impl Iterator<Item = (u32, u128)> + '_ {
        self.counts[1]
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(y, &c)| (y as u32, c))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact spectrum by enumerating every edge error vector of weight up to
/// `max_weight` and accumulating at its sink error. The enumeration size
/// `sum_i C(|E|, i)` must stay within [`ENUMERATION_CAP`].
pub fn compute_spectrum(
    tf: &TransferSet,
    sink: &str,
    max_weight: usize,
) -> Result<SinkSpectrum, SpectrumError> {
    let fb = tf
        .sink_reach(sink)
        .ok_or_else(|| SpectrumError::UnknownSink(sink.to_string()))?;
    let num_edges = fb.rows();
    let n = fb.cols();
    if n > MAX_SINK_DIM {
        return Err(SpectrumError::DimensionTooLarge(n));
    }
    if max_weight > num_edges {
        return Err(SpectrumError::BadWeight {
            max_weight,
            num_edges,
        });
    }
    let needed: u128 = (0..=max_weight).map(|i| binomial(num_edges, i)).sum();
    if needed > ENUMERATION_CAP as u128 {
        return Err(SpectrumError::CapExceeded {
            needed,
            cap: ENUMERATION_CAP,
        });
    }

    let reach: Vec<u32> = (0..num_edges).map(|e| fb.row_mask(e) as u32).collect();
    let mut counts = vec![vec![0u128; 1 << n]; max_weight + 1];
    counts[0][0] = 1;

    // depth-first walk over combinations, carrying the accumulated sink error
    fn descend(
        reach: &[u32],
        first: usize,
        weight: usize,
        max_weight: usize,
        y: u32,
        counts: &mut [Vec<u128>],
    ) {
        for e in first..reach.len() {
            let y2 = y ^ reach[e];
            counts[weight + 1][y2 as usize] += 1;
            if weight + 1 < max_weight {
                descend(reach, e + 1, weight + 1, max_weight, y2, counts);
            }
        }
    }
    if max_weight > 0 {
        descend(&reach, 0, 0, max_weight, 0, &mut counts);
    }

    Ok(SinkSpectrum {
        sink: sink.to_string(),
        num_edges,
        n,
        max_weight,
        counts,
    })
}

/// Which end of the sink processing chain a distribution describes: the raw
/// sink error (`Output`) or the error seen after multiplying received symbols
/// by the inverse transfer matrix (`Input`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Output,
    Input,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Output => write!(f, "output"),
            Side::Input => write!(f, "input"),
        }
    }
}

/// Exact probability of each sink error vector at a fixed `p_e`.
#[derive(Debug, Clone)]
pub struct SinkDist {
    pub sink: String,
    pub p_e: f64,
    pub side: Side,
    /// Probability of each `y` in `0..2^n`.
    pub probs: Vec<f64>,
}

/// Evaluates `p[y] = sum_i a[i][y] p^i (1-p)^(|E|-i)` from a full-weight
/// spectrum. For the input side, mass at `y` moves to `y * M_T^{-1}`, which
/// is the error the decoder sees after undoing the transfer matrix.
pub fn exact_dist(
    spec: &SinkSpectrum,
    p_e: f64,
    side: Side,
    m_t: &BinMatrix,
) -> Result<SinkDist, SpectrumError> {
    if !spec.is_full() {
        return Err(SpectrumError::NotFull {
            max_weight: spec.max_weight,
            num_edges: spec.num_edges,
        });
    }
    if !(0.0..0.5).contains(&p_e) {
        return Err(SpectrumError::BadProbability(p_e));
    }
    if m_t.rows() != spec.n || m_t.cols() != spec.n {
        return Err(SpectrumError::BadTransferMatrix {
            rows: m_t.rows(),
            cols: m_t.cols(),
            n: spec.n,
        });
    }
    let e = spec.num_edges;
    let pw: Vec<f64> = (0..=e)
        .map(|i| p_e.powi(i as i32) * (1.0 - p_e).powi((e - i) as i32))
        .collect();
    let size = 1usize << spec.n;
    let mut out = vec![0.0f64; size];
    for (y, slot) in out.iter_mut().enumerate() {
        *slot = (0..=e).map(|i| spec.count(i, y as u32) as f64 * pw[i]).sum();
    }
    let probs = match side {
        Side::Output => out,
        Side::Input => {
            // p_in[u] = p_out[u * M_T]
            let mut probs = vec![0.0f64; size];
            for (u, slot) in probs.iter_mut().enumerate() {
                let mut y = 0u32;
                for row in 0..spec.n {
                    if u >> row & 1 == 1 {
                        y ^= m_t.row_mask(row) as u32;
                    }
                }
                *slot = out[y as usize];
            }
            probs
        }
    };
    Ok(SinkDist {
        sink: spec.sink.clone(),
        p_e,
        side,
        probs,
    })
}

/// Upper bounds on the sink error probabilities from single-edge counts
/// alone, valid whenever the lambda-dominance condition holds at this `p_e`.
#[derive(Debug, Clone)]
pub struct SingleEdgeBounds {
    pub sink: String,
    pub p_e: f64,
    pub lambda: f64,
    /// `Some(bound)` for each nonzero `y` with a nonzero single-edge count.
    pub nonzero: Vec<Option<f64>>,
    /// Bound for `y = 0`, independent of lambda.
    pub zero: f64,
}

pub fn single_edge_bounds(
    spec: &SinkSpectrum,
    p_e: f64,
    lambda: f64,
) -> Result<SingleEdgeBounds, SpectrumError> {
    if lambda <= 0.0 {
        return Err(SpectrumError::BadLambda(lambda));
    }
    if !(0.0..0.5).contains(&p_e) {
        return Err(SpectrumError::BadProbability(p_e));
    }
    let e = spec.num_edges;
    let base = p_e * (1.0 - p_e).powi(e as i32 - 1);
    let size = 1usize << spec.n;
    let mut nonzero = vec![None; size];
    let mut covered_mass = 0.0;
    for (y, slot) in nonzero.iter_mut().enumerate().skip(1) {
        let a1 = spec.count(1, y as u32);
        if a1 > 0 {
            *slot = Some(a1 as f64 * (1.0 + 1.0 / lambda) * base);
            covered_mass += a1 as f64 * base;
        }
    }
    Ok(SingleEdgeBounds {
        sink: spec.sink.clone(),
        p_e,
        lambda,
        nonzero,
        zero: 1.0 - covered_mass,
    })
}

/// The crossover bound `1 / ((|E|-1)(lambda*|E| - lambda + 1))`: below this
/// `p_e` the lambda-dominance condition holds on any network with that many
/// edges, regardless of the network code.
pub fn proposition_threshold(num_edges: usize, lambda: f64) -> Result<f64, SpectrumError> {
    if num_edges < 2 {
        return Err(SpectrumError::TooFewEdges(num_edges));
    }
    if lambda < 0.0 {
        return Err(SpectrumError::BadLambda(lambda));
    }
    let e = num_edges as f64;
    Ok(1.0 / ((e - 1.0) * (lambda * e - lambda + 1.0)))
}

/// Whether the single-edge mass at `y` dominates lambda times the multi-edge
/// mass at this `p_e`. Evaluated exactly from the integer counts.
pub fn dominance_holds(spec: &SinkSpectrum, y: u32, p_e: f64, lambda: f64) -> bool {
    let e = spec.num_edges;
    let single = spec.count(1, y) as f64 * p_e * (1.0 - p_e).powi(e as i32 - 1);
    let multi: f64 = (2..=e)
        .map(|i| spec.count(i, y) as f64 * p_e.powi(i as i32) * (1.0 - p_e).powi((e - i) as i32))
        .sum();
    single >= lambda * multi
}

#[derive(Debug, Clone)]
pub struct YThreshold {
    pub y: u32,
    pub single_edge_count: u128,
    pub threshold: f64,
}

/// Per-sink dominance thresholds: for each nonzero `y` reachable by a single
/// edge flip, the largest `p_e` at which that error's single-edge mass still
/// dominates.
#[derive(Debug, Clone)]
pub struct ThresholdReport {
    pub sink: String,
    pub lambda: f64,
    pub proposition_bound: f64,
    pub per_y: Vec<YThreshold>,
    pub min_threshold: Option<f64>,
}

const BISECT_TOL: f64 = 1e-6;
const BISECT_MAX_ITERS: usize = 100;

/// Bisects for each per-y threshold; the dominance condition is monotone in
/// `p_e`, so the boundary is well defined. `y = 0` is excluded, as is any `y`
/// no single edge reaches.
pub fn empirical_threshold(
    spec: &SinkSpectrum,
    lambda: f64,
) -> Result<ThresholdReport, SpectrumError> {
    if !spec.is_full() {
        return Err(SpectrumError::NotFull {
            max_weight: spec.max_weight,
            num_edges: spec.num_edges,
        });
    }
    if lambda < 0.0 {
        return Err(SpectrumError::BadLambda(lambda));
    }
    let mut per_y = Vec::new();
    for (y, a1) in spec.single_edge_errors() {
        if y == 0 {
            continue;
        }
        let upper = 0.5 - f64::EPSILON;
        let threshold = if dominance_holds(spec, y, upper, lambda) {
            0.5
        } else {
            let (mut lo, mut hi) = (0.0f64, upper);
            for _ in 0..BISECT_MAX_ITERS {
                if hi - lo < BISECT_TOL {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if dominance_holds(spec, y, mid, lambda) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        per_y.push(YThreshold {
            y,
            single_edge_count: a1,
            threshold,
        });
    }
    let min_threshold = per_y
        .iter()
        .map(|t| t.threshold)
        .min_by(|a, b| a.total_cmp(b));
    Ok(ThresholdReport {
        sink: spec.sink.clone(),
        lambda,
        proposition_bound: proposition_threshold(spec.num_edges, lambda)?,
        per_y,
        min_threshold,
    })
}

/// One sampled point of the dominance curves: the exact single-edge mass and
/// `lambda` times the exact multi-edge mass for one sink error.
#[derive(Debug, Clone)]
pub struct DominancePoint {
    pub p_e: f64,
    pub y: u32,
    pub single_edge_mass: f64,
    pub lambda_multi_edge_mass: f64,
}

pub fn dominance_curves(
    spec: &SinkSpectrum,
    lambda: f64,
    pe_grid: &[f64],
) -> Result<Vec<DominancePoint>, SpectrumError> {
    if !spec.is_full() {
        return Err(SpectrumError::NotFull {
            max_weight: spec.max_weight,
            num_edges: spec.num_edges,
        });
    }
    let e = spec.num_edges;
    let mut points = Vec::new();
    for &p_e in pe_grid {
        if !(0.0..0.5).contains(&p_e) {
            return Err(SpectrumError::BadProbability(p_e));
        }
        for (y, a1) in spec.single_edge_errors() {
            if y == 0 {
                continue;
            }
            let single = a1 as f64 * p_e * (1.0 - p_e).powi(e as i32 - 1);
            let multi: f64 = (2..=e)
                .map(|i| {
                    spec.count(i, y) as f64
                        * p_e.powi(i as i32)
                        * (1.0 - p_e).powi((e - i) as i32)
                })
                .sum();
            points.push(DominancePoint {
                p_e,
                y,
                single_edge_mass: single,
                lambda_multi_edge_mass: lambda * multi,
            });
        }
    }
    Ok(points)
}

/// Evaluates `(1-p)^m >= 1 - m*p`, the union-bound complement inequality the
/// proposition threshold rests on. Exposed as a property-test target.
pub fn union_bound_complement_holds(m: u32, p: f64) -> bool {
    (1.0 - p).powi(m as i32) >= 1.0 - m as f64 * p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{butterfly, compute_transfer};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn butterfly_spectrum(sink: &str) -> SinkSpectrum {
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        compute_spectrum(&tf, sink, 9).unwrap()
    }

    /// Brute force over all 2^9 edge error vectors, independent of the
    /// combination walk used by `compute_spectrum`.
    fn brute_force_counts(sink: &str) -> Vec<Vec<u128>> {
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let mut counts = vec![vec![0u128; 4]; 10];
        for mask in 0u32..512 {
            let w: Vec<u8> = (0..9).map(|e| (mask >> e & 1) as u8).collect();
            let y = tf.sink_error(sink, &w).unwrap();
            let ymask = (y[0] as u32) | (y[1] as u32) << 1;
            counts[mask.count_ones() as usize][ymask as usize] += 1;
        }
        counts
    }

    #[test]
    fn spectrum_matches_brute_force() {
        for sink in ["T1", "T2"] {
            let spec = butterfly_spectrum(sink);
            let brute = brute_force_counts(sink);
            for (i, row) in brute.iter().enumerate() {
                for (y, want) in row.iter().enumerate() {
                    assert_eq!(spec.count(i, y as u32), *want, "i={i} y={y} {sink}");
                }
            }
        }
    }

    #[test]
    fn spectrum_row_sums_are_binomials() {
        let spec = butterfly_spectrum("T1");
        assert_eq!(spec.count(0, 0), 1);
        for i in 0..=9 {
            let total: u128 = spec.weight_row(i).iter().sum();
            assert_eq!(total, binomial(9, i), "weight {i}");
        }
        // nine single-edge errors in total
        let singles: u128 = spec.weight_row(1).iter().sum();
        assert_eq!(singles, 9);
    }

    #[test]
    fn single_edge_count_for_lowest_threshold_vector() {
        // y = [1,0] at T1 is reached by exactly one edge under the canonical code
        let spec = butterfly_spectrum("T1");
        assert_eq!(spec.count(1, 0b01), 1);
        assert!(spec.count(1, 0b01) > 0);
    }

    #[test]
    fn weight_limited_spectrum_and_cap() {
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let spec = compute_spectrum(&tf, "T1", 2).unwrap();
        assert!(!spec.is_full());
        let full = butterfly_spectrum("T1");
        for i in 0..=2 {
            assert_eq!(spec.weight_row(i), full.weight_row(i));
        }
        assert!(matches!(
            compute_spectrum(&tf, "T1", 10),
            Err(SpectrumError::BadWeight { .. })
        ));
        assert!(matches!(
            compute_spectrum(&tf, "nope", 1),
            Err(SpectrumError::UnknownSink(_))
        ));
    }

    #[test]
    fn exact_dist_degenerate_and_normalized() {
        let spec = butterfly_spectrum("T1");
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let m = tf.transfer_matrix("T1").unwrap();

        let d0 = exact_dist(&spec, 0.0, Side::Output, m).unwrap();
        assert_eq!(d0.probs[0], 1.0);
        assert!(d0.probs[1..].iter().all(|&p| p == 0.0));

        for p_e in [0.001, 0.01, 0.1, 0.3] {
            let d = exact_dist(&spec, p_e, Side::Output, m).unwrap();
            let total: f64 = d.probs.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "p_e={p_e} total={total}");
            assert!(d.probs.iter().all(|&p| (0.0..=1.0).contains(&p)));
        }

        assert!(matches!(
            exact_dist(&spec, 0.5, Side::Output, m),
            Err(SpectrumError::BadProbability(_))
        ));
        let partial = compute_spectrum(&tf, "T1", 2).unwrap();
        assert!(matches!(
            exact_dist(&partial, 0.01, Side::Output, m),
            Err(SpectrumError::NotFull { .. })
        ));
    }

    #[test]
    fn input_side_is_a_permutation_of_output_side() {
        let spec = butterfly_spectrum("T1");
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let m = tf.transfer_matrix("T1").unwrap();
        let out = exact_dist(&spec, 0.05, Side::Output, m).unwrap();
        let inp = exact_dist(&spec, 0.05, Side::Input, m).unwrap();
        let mut a = out.probs.clone();
        let mut b = inp.probs.clone();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a, b);
        // mass moves to y * M^{-1}: position of p_out[y] is y*M^{-1}
        let minv = m.inverse().unwrap();
        for y in 0..4usize {
            let mut u = 0usize;
            for row in 0..2 {
                if y >> row & 1 == 1 {
                    u ^= minv.row_mask(row) as usize;
                }
            }
            assert_eq!(inp.probs[u], out.probs[y]);
        }
    }

    #[test]
    fn exact_dist_matches_monte_carlo_sampling() {
        // independent estimate: sample a million edge error vectors
        let spec = butterfly_spectrum("T1");
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let m = tf.transfer_matrix("T1").unwrap();
        let p_e = 0.01;
        let exact = exact_dist(&spec, p_e, Side::Output, m).unwrap();

        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
        let trials = 1_000_000u32;
        let mut hits = [0u32; 4];
        for _ in 0..trials {
            let mut w = [0u8; 9];
            for slot in w.iter_mut() {
                if rand::Rng::random_bool(&mut rng, p_e) {
                    *slot = 1;
                }
            }
            let y = tf.sink_error("T1", &w).unwrap();
            hits[(y[0] as usize) | (y[1] as usize) << 1] += 1;
        }
        for (y, &h) in hits.iter().enumerate() {
            let freq = h as f64 / trials as f64;
            let p = exact.probs[y];
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            assert!(
                (freq - p).abs() < 3.0 * sigma.max(1e-9),
                "y={y}: freq {freq} vs exact {p}"
            );
        }
    }

    #[test]
    fn single_edge_bounds_behavior() {
        let spec = butterfly_spectrum("T1");

        // at p_e = 0 every nonzero bound vanishes and the zero bound is 1
        let b0 = single_edge_bounds(&spec, 0.0, 10.0).unwrap();
        assert_eq!(b0.zero, 1.0);
        for b in b0.nonzero.iter().flatten() {
            assert_eq!(*b, 0.0);
        }

        // large lambda limit: bound approaches a1 * p (1-p)^(E-1)
        let p_e = 0.001;
        let big = single_edge_bounds(&spec, p_e, 1e12).unwrap();
        for (y, a1) in spec.single_edge_errors() {
            if y == 0 {
                continue;
            }
            let expect = a1 as f64 * p_e * (1.0f64 - p_e).powi(8);
            let got = big.nonzero[y as usize].unwrap();
            assert!((got - expect).abs() < 1e-9 * expect);
        }

        assert!(matches!(
            single_edge_bounds(&spec, 0.01, 0.0),
            Err(SpectrumError::BadLambda(_))
        ));
    }

    #[test]
    fn bounds_dominate_exact_probabilities_below_threshold() {
        let (net, code) = butterfly();
        let tf = compute_transfer(&net, &code).unwrap();
        let lambda = 10.0;
        let p_e = proposition_threshold(9, lambda).unwrap();
        for sink in ["T1", "T2"] {
            let spec = compute_spectrum(&tf, sink, 9).unwrap();
            let m = tf.transfer_matrix(sink).unwrap();
            let exact = exact_dist(&spec, p_e, Side::Output, m).unwrap();
            let bounds = single_edge_bounds(&spec, p_e, lambda).unwrap();
            for (y, bound) in bounds.nonzero.iter().enumerate() {
                if let Some(bound) = bound {
                    assert!(
                        exact.probs[y] <= bound + 1e-15,
                        "{sink} y={y}: {} > {bound}",
                        exact.probs[y]
                    );
                }
            }
            assert!(exact.probs[0] <= bounds.zero + 1e-15);
        }
    }

    #[test]
    fn proposition_threshold_values() {
        let t = proposition_threshold(9, 10.0).unwrap();
        assert!((t - 1.0 / 648.0).abs() < 1e-15);
        assert!((t - 0.0015432).abs() < 1e-7);
        assert_eq!(proposition_threshold(2, 1.0).unwrap(), 0.5);
        // lambda -> 0 limit is 1/(|E|-1)
        assert!((proposition_threshold(9, 0.0).unwrap() - 1.0 / 8.0).abs() < 1e-15);
        assert!(proposition_threshold(1, 1.0).is_err());
    }

    #[test]
    fn empirical_threshold_near_measured_value() {
        let spec = butterfly_spectrum("T1");
        let report = empirical_threshold(&spec, 10.0).unwrap();
        let min = report.min_threshold.unwrap();
        assert!((0.0115..=0.0155).contains(&min), "min threshold {min}");
        // the [1,0] error vector attains the minimum
        let y10 = report.per_y.iter().find(|t| t.y == 0b01).unwrap();
        assert!((y10.threshold - 0.0135).abs() < 0.002);
        assert!((y10.threshold - min).abs() < 1e-9);
        // sufficiency: the proposition bound sits below every threshold
        for t in &report.per_y {
            assert!(report.proposition_bound <= t.threshold);
        }
    }

    #[test]
    fn thresholds_decrease_with_lambda() {
        let spec = butterfly_spectrum("T1");
        let mut last = f64::INFINITY;
        for lambda in [1.0, 5.0, 10.0, 50.0] {
            let min = empirical_threshold(&spec, lambda)
                .unwrap()
                .min_threshold
                .unwrap();
            assert!(min <= last + 1e-12, "lambda={lambda}");
            last = min;
        }
    }

    #[test]
    fn zero_lambda_threshold_hits_boundary() {
        let spec = butterfly_spectrum("T1");
        let report = empirical_threshold(&spec, 0.0).unwrap();
        for t in &report.per_y {
            assert_eq!(t.threshold, 0.5);
        }
    }

    #[test]
    fn union_bound_complement_examples() {
        assert!(union_bound_complement_holds(1, 0.3));
        assert!(union_bound_complement_holds(5, 0.3));
    }

    #[test]
    fn union_bound_complement_random_sweep() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let m = rand::Rng::random_range(&mut rng, 1u32..=50);
            let p = rand::Rng::random_range(&mut rng, 0.0f64..=1.0);
            assert!(union_bound_complement_holds(m, p), "m={m} p={p}");
        }
    }
}
