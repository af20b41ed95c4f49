//! Generating-function analysis of an encoder and the resulting analytical
//! bit-error-rate bound.
//!
//! The encoder's state graph, with the zero state split into a source and a
//! target node and its zero self-loop removed, is a signal flow graph. Each
//! branch carries a distinct placeholder for its c-bit output vector `v`
//! (weighted by `I^(input weight)`), so a vector channel can assign every
//! output block its own pairwise error weight rather than one weight per
//! Hamming distance unit. Evaluating the graph gain at the channel's
//! Bhattacharyya parameters and differencing in `I` yields an upper bound on
//! the decoded bit error probability per information bit.
//!
//! The gain is never computed symbolically: for given branch weights the
//! intermediate-state values satisfy a linear system `x = A x + b`, solved
//! densely. The underlying series diverges when the spectral radius of `A`
//! reaches 1, at which point the bound is meaningless; divergence is detected
//! (power iteration plus solution sanity checks) and reported, never folded
//! into a number.

use thiserror::Error;

use crate::convcode::{CodeError, ConvCode, StateGraph};
use crate::spectrum::{Side, SinkDist};

/// Dense-solve budget: the flow graph has `2^delta - 1` intermediate nodes.
pub const MAX_FLOW_DEGREE: usize = 10;

const RESIDUAL_TOL: f64 = 1e-6;
const SPECTRAL_MARGIN: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("flow graph requires a minimal-basic generator matrix")]
    NotMinimalBasic,
    #[error("degree {delta} exceeds the dense-solve budget {max}")]
    TooLarge { delta: usize, max: usize },
    #[error("generating-function series diverges at these weights")]
    Diverged,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcTo {
    Inner(usize),
    Exit,
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: ArcTo,
    output: u32,
    input_weight: u32,
}

/// The split state graph with symbolic branch labels.
#[derive(Debug, Clone)]
pub struct FlowGraph {
    output_size: usize,
    /// Arcs leaving the split-off zero source (inputs with u != 0).
    source_arcs: Vec<Arc>,
    /// Arcs leaving each nonzero state; index = state - 1.
    inner_arcs: Vec<Vec<Arc>>,
}

impl FlowGraph {
    /// Splits the zero state of the controller-canonical state graph and
    /// drops its self-loop. Arc count is `2^delta * 2^b` minus the loop.
    pub fn build(code: &ConvCode) -> Result<FlowGraph, TransferError> {
        if !code.is_minimal_basic() {
            return Err(TransferError::NotMinimalBasic);
        }
        if code.degree() > MAX_FLOW_DEGREE {
            return Err(TransferError::TooLarge {
                delta: code.degree(),
                max: MAX_FLOW_DEGREE,
            });
        }
        let g = StateGraph::build(code);
        let fanout = 1u32 << g.input_size();
        let to = |state: u32| {
            if state == 0 {
                ArcTo::Exit
            } else {
                ArcTo::Inner(state as usize - 1)
            }
        };
        let source_arcs = (1..fanout)
            .map(|u| Arc {
                to: to(g.next(0, u)),
                output: g.output(0, u),
                input_weight: u.count_ones(),
            })
            .collect();
        let inner_arcs = (1..g.num_states() as u32)
            .map(|s| {
                (0..fanout)
                    .map(|u| Arc {
                        to: to(g.next(s, u)),
                        output: g.output(s, u),
                        input_weight: u.count_ones(),
                    })
                    .collect()
            })
            .collect();
        Ok(FlowGraph {
            output_size: g.output_size(),
            source_arcs,
            inner_arcs,
        })
    }

    pub fn num_inner_nodes(&self) -> usize {
        self.inner_arcs.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.source_arcs.len() + self.inner_arcs.iter().map(Vec::len).sum::<usize>()
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    /// Evaluates the generating function at numeric branch weights:
    /// `weights[v]` for each nonzero output vector `v` (index by the c-bit
    /// mask; entry 0 is ignored, zero-output branches weigh `i_factor^i`
    /// only) and `i_factor >= 1` tracking input weight.
    pub fn eval(&self, weights: &[f64], i_factor: f64) -> Result<f64, TransferError> {
        if weights.len() != 1 << self.output_size {
            return Err(TransferError::InvalidInput(format!(
                "need {} branch weights, got {}",
                1usize << self.output_size,
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(TransferError::InvalidInput(
                "branch weights must be finite and nonnegative".into(),
            ));
        }
        if i_factor < 1.0 || !i_factor.is_finite() {
            return Err(TransferError::InvalidInput(format!(
                "input-weight factor must be >= 1, got {i_factor}"
            )));
        }
        let gain = |arc: &Arc| {
            let base = if arc.output == 0 {
                1.0
            } else {
                weights[arc.output as usize]
            };
            base * i_factor.powi(arc.input_weight as i32)
        };

        let m = self.num_inner_nodes();
        let mut a = vec![0.0f64; m * m];
        let mut b = vec![0.0f64; m];
        let mut t = vec![0.0f64; m];
        let mut direct = 0.0f64;
        for arc in &self.source_arcs {
            match arc.to {
                ArcTo::Inner(j) => b[j] += gain(arc),
                ArcTo::Exit => direct += gain(arc),
            }
        }
        for (i, arcs) in self.inner_arcs.iter().enumerate() {
            for arc in arcs {
                match arc.to {
                    ArcTo::Inner(j) => a[j * m + i] += gain(arc),
                    ArcTo::Exit => t[i] += gain(arc),
                }
            }
        }
        if m == 0 {
            return Ok(direct);
        }

        if spectral_radius_estimate(&a, m) >= 1.0 - SPECTRAL_MARGIN {
            return Err(TransferError::Diverged);
        }

        let x = solve_dense(&a, &b, m).ok_or(TransferError::Diverged)?;
        let scale = b.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        for (j, &xj) in x.iter().enumerate() {
            if !xj.is_finite() || xj < -RESIDUAL_TOL * scale {
                return Err(TransferError::Diverged);
            }
            // residual of row j of (I - A) x = b
            let mut r = xj - b[j];
            for i in 0..m {
                r -= a[j * m + i] * x[i];
            }
            if r.abs() > RESIDUAL_TOL * scale {
                return Err(TransferError::Diverged);
            }
        }
        let total = direct + t.iter().zip(&x).map(|(ti, xi)| ti * xi).sum::<f64>();
        if !total.is_finite() || total < 0.0 {
            return Err(TransferError::Diverged);
        }
        Ok(total)
    }
}

/// Power iteration on the nonnegative gain matrix; converges to its spectral
/// radius from a positive start vector.
fn spectral_radius_estimate(a: &[f64], m: usize) -> f64 {
    let mut x = vec![1.0f64; m];
    let mut rho = 0.0;
    for _ in 0..200 {
        let mut y = vec![0.0f64; m];
        for j in 0..m {
            let row = &a[j * m..(j + 1) * m];
            y[j] = row.iter().zip(&x).map(|(aij, xi)| aij * xi).sum();
        }
        let norm = y.iter().fold(0.0f64, |acc, v| acc.max(*v));
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm;
        for v in &mut y {
            *v /= norm;
        }
        x = y;
        if (next - rho).abs() <= 1e-12 * next.max(1.0) {
            return next;
        }
        rho = next;
    }
    rho
}

/// Solves `(I - A) x = b` by LU with partial pivoting. Returns `None` when a
/// pivot collapses.
fn solve_dense(a: &[f64], b: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut lhs = vec![0.0f64; m * m];
    for j in 0..m {
        for i in 0..m {
            lhs[j * m + i] = (if i == j { 1.0 } else { 0.0 }) - a[j * m + i];
        }
    }
    let mut x = b.to_vec();
    for col in 0..m {
        let pivot_row = (col..m)
            .max_by(|&r1, &r2| lhs[r1 * m + col].abs().total_cmp(&lhs[r2 * m + col].abs()))?;
        if lhs[pivot_row * m + col].abs() < 1e-300 {
            return None;
        }
        if pivot_row != col {
            for k in 0..m {
                lhs.swap(pivot_row * m + k, col * m + k);
            }
            x.swap(pivot_row, col);
        }
        let inv = 1.0 / lhs[col * m + col];
        for r in col + 1..m {
            let factor = lhs[r * m + col] * inv;
            if factor == 0.0 {
                continue;
            }
            for k in col..m {
                lhs[r * m + k] -= factor * lhs[col * m + k];
            }
            x[r] -= factor * x[col];
        }
    }
    for col in (0..m).rev() {
        x[col] /= lhs[col * m + col];
        for r in 0..col {
            x[r] -= lhs[r * m + col] * x[col];
        }
    }
    Some(x)
}

/// Pairwise error weights of a vector channel: `z[v]` bounds the probability
/// of confusing the zero block with `v`.
#[derive(Debug, Clone)]
pub struct BhattacharyyaTable {
    pub sink: String,
    pub side: Side,
    /// `z[v] = sum_y sqrt(p[y] p[y^v])`; `z[0] = 1` for a normalized input.
    pub z: Vec<f64>,
}

pub fn bhattacharyya(dist: &SinkDist) -> BhattacharyyaTable {
    let size = dist.probs.len();
    let z = (0..size)
        .map(|v| {
            (0..size)
                .map(|y| (dist.probs[y] * dist.probs[y ^ v]).sqrt())
                .sum()
        })
        .collect();
    BhattacharyyaTable {
        sink: dist.sink.clone(),
        side: dist.side,
        z,
    }
}

/// An evaluated bit-error-rate bound at one channel point. `bound` is `None`
/// when the generating-function series diverges there.
#[derive(Debug, Clone)]
pub struct BerBound {
    pub sink: String,
    pub side: Side,
    pub p_e: f64,
    pub epsilon: f64,
    pub bound: Option<f64>,
}

impl BerBound {
    pub fn diverged(&self) -> bool {
        self.bound.is_none()
    }
}

/// Bounds the information-bit error rate of maximum-likelihood decoding of
/// `code` on the vector channel described by `dist`: a forward difference in
/// the input-weight factor of the generating function, evaluated at the
/// channel's Bhattacharyya weights, divided by the bits per step.
pub fn ber_bound(
    code: &ConvCode,
    dist: &SinkDist,
    epsilon: f64,
) -> Result<BerBound, TransferError> {
    if !(epsilon > 0.0 && epsilon <= 0.01) {
        return Err(TransferError::InvalidInput(format!(
            "epsilon must be in (0, 0.01], got {epsilon}"
        )));
    }
    if dist.probs.len() != 1 << code.output_size() {
        return Err(TransferError::InvalidInput(format!(
            "distribution over {} vectors does not match output size {}",
            dist.probs.len(),
            code.output_size()
        )));
    }
    let fg = FlowGraph::build(code)?;
    let table = bhattacharyya(dist);
    let at_one = fg.eval(&table.z, 1.0);
    let at_eps = fg.eval(&table.z, 1.0 + epsilon);
    let bound = match (at_one, at_eps) {
        (Ok(t1), Ok(t2)) => Some((t2 - t1) / epsilon / code.input_size() as f64),
        (Err(TransferError::Diverged), _) | (_, Err(TransferError::Diverged)) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    Ok(BerBound {
        sink: dist.sink.clone(),
        side: dist.side,
        p_e: dist.p_e,
        epsilon,
        bound,
    })
}
