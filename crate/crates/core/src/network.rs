//! Acyclic network model with an n-dimensional binary network code.
//!
//! A network is a directed acyclic multigraph with unit-capacity edges. A
//! binary network code is given by three matrices: `A` (n x |E|) mapping the
//! source symbols onto the source's outgoing edges, `K` (|E| x |E|) holding
//! the local coding coefficient from each edge into each adjacent downstream
//! edge, and one `B` matrix (|E| x n) per sink selecting and ordering the
//! symbols the sink reads off its incoming edges.
//!
//! With `F = I + K + K^2 + ...` (a finite sum because `K` is nilpotent on an
//! acyclic graph), a sink `T` observes `x*M_T + w*F*B_T` where `x` is the
//! source input, `w` is the 0/1 vector of edges hit by a symbol flip in this
//! network use, and `M_T = A*F*B_T` is the sink's transfer matrix.
//!
//! # File format
//!
//! Networks are stored as JSON:
//!
//! ```json
//! {
//!   "n": 2,
//!   "edges": [{"id": "e1", "tail": "s", "head": "v1"}, ...],
//!   "source": "s",
//!   "sinks": ["T1", "T2"],
//!   "A": [[1,0,...], ...],
//!   "K": [[0,0,1,...], ...],
//!   "B": {"T1": [[0,0],...], "T2": [[0,0],...]}
//! }
//! ```
//!
//! Edge order in the `edges` array fixes the column order of `A` and the
//! row/column order of `K` and `B`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BinMatrix, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone)]
pub struct Network {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub source: String,
    pub sinks: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct NetworkCode {
    /// n x |E| source matrix.
    pub a: BinMatrix,
    /// |E| x |E| local coding matrix; `k[e][f]` is the coefficient from edge
    /// `e` into edge `f` and may be nonzero only when `head(e) == tail(f)`.
    pub k: BinMatrix,
    /// Per-sink |E| x n output matrices.
    pub b: BTreeMap<String, BinMatrix>,
}

/// The solved network: `F` and the per-sink maps derived from it.
#[derive(Debug, Clone)]
pub struct TransferSet {
    pub f: BinMatrix,
    m: BTreeMap<String, BinMatrix>,
    fb: BTreeMap<String, BinMatrix>,
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("network contains a directed cycle")]
    Cyclic,
    #[error("local coding matrix is not nilpotent")]
    NotNilpotent,
    #[error("unknown sink {0}")]
    UnknownSink(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("{context}: {source}")]
    Algebra {
        context: String,
        source: Gf2Error,
    },
    #[error("invalid network file: {0}")]
    BadFile(String),
}

fn algebra(context: &str) -> impl FnOnce(Gf2Error) -> NetworkError + '_ {
    move |source| NetworkError::Algebra {
        context: context.to_string(),
        source,
    }
}

impl Network {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge indices sorted so each edge appears after every edge feeding it.
    /// Fails if the node graph has a directed cycle.
    pub fn topological_edge_order(&self) -> Result<Vec<usize>, NetworkError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for e in &self.edges {
            for name in [e.tail.as_str(), e.head.as_str()] {
                let next = index.len();
                index.entry(name).or_insert(next);
            }
        }
        let arcs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (index[e.tail.as_str()], index[e.head.as_str()]))
            .collect();
        let num_nodes = index.len();
        let mut indegree = vec![0usize; num_nodes];
        for &(_, h) in &arcs {
            indegree[h] += 1;
        }
        let mut ready: Vec<usize> = (0..num_nodes).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(num_nodes);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(t, h) in &arcs {
                if t == v {
                    indegree[h] -= 1;
                    if indegree[h] == 0 {
                        ready.push(h);
                    }
                }
            }
        }
        if order.len() != num_nodes {
            return Err(NetworkError::Cyclic);
        }
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edge_order: Vec<usize> = (0..self.edges.len()).collect();
        edge_order.sort_by_key(|&e| pos[&arcs[e].0]);
        Ok(edge_order)
    }
}

/// One validation check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
}

impl Diagnostics {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every structural check and reports each outcome. Failures carry the
/// offending edge or sink in the detail string.
pub fn validate(net: &Network, code: &NetworkCode) -> Diagnostics {
    let e = net.num_edges();
    let mut checks = Vec::new();

    let acyclic = net.topological_edge_order().is_ok();
    checks.push(Check {
        name: "acyclic".into(),
        pass: acyclic,
        detail: if acyclic {
            "topological order exists".into()
        } else {
            "directed cycle among nodes".into()
        },
    });

    let mut dim_errors = Vec::new();
    if code.a.rows() != net.n || code.a.cols() != e {
        dim_errors.push(format!(
            "A is {}x{}, expected {}x{}",
            code.a.rows(),
            code.a.cols(),
            net.n,
            e
        ));
    }
    if code.k.rows() != e || code.k.cols() != e {
        dim_errors.push(format!(
            "K is {}x{}, expected {}x{}",
            code.k.rows(),
            code.k.cols(),
            e,
            e
        ));
    }
    for sink in &net.sinks {
        match code.b.get(sink) {
            None => dim_errors.push(format!("sink {sink} has no B matrix")),
            Some(b) => {
                if b.rows() != e || b.cols() != net.n {
                    dim_errors.push(format!(
                        "B[{sink}] is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        e,
                        net.n
                    ));
                }
            }
        }
    }
    for sink in code.b.keys() {
        if !net.sinks.contains(sink) {
            dim_errors.push(format!("B has matrix for unknown sink {sink}"));
        }
    }
    let dims_ok = dim_errors.is_empty();
    checks.push(Check {
        name: "dimensions".into(),
        pass: dims_ok,
        detail: if dims_ok {
            format!("n={}, |E|={e}", net.n)
        } else {
            dim_errors.join("; ")
        },
    });

    let mut adjacency_bad = Vec::new();
    if code.k.rows() == e && code.k.cols() == e {
        for src in 0..e {
            for dst in 0..e {
                if code.k.get(src, dst) && net.edges[src].head != net.edges[dst].tail {
                    adjacency_bad.push(format!(
                        "K[{},{}] set but head({}) = {} != tail({}) = {}",
                        net.edges[src].id,
                        net.edges[dst].id,
                        net.edges[src].id,
                        net.edges[src].head,
                        net.edges[dst].id,
                        net.edges[dst].tail
                    ));
                }
            }
        }
    }
    checks.push(Check {
        name: "adjacency".into(),
        pass: adjacency_bad.is_empty(),
        detail: if adjacency_bad.is_empty() {
            "K respects edge adjacency".into()
        } else {
            adjacency_bad.join("; ")
        },
    });

    let transfer = if dims_ok {
        compute_transfer(net, code).ok()
    } else {
        None
    };

    let nilpotent = transfer.is_some();
    checks.push(Check {
        name: "nilpotent".into(),
        pass: nilpotent,
        detail: if nilpotent {
            format!("K^{e} = 0")
        } else {
            "K is not nilpotent (or dimensions invalid)".into()
        },
    });

    for sink in &net.sinks {
        let (pass, detail) = match &transfer {
            Some(tf) => match tf.transfer_matrix(sink) {
                Some(m) => {
                    let rank = m.rank();
                    (rank == net.n, format!("rank(M) = {rank} of {}", net.n))
                }
                None => (false, "no transfer matrix".into()),
            },
            None => (false, "skipped: transfer not computable".into()),
        };
        checks.push(Check {
            name: format!("full-rank transfer matrix at {sink}"),
            pass,
            detail,
        });
    }

    Diagnostics { checks }
}

/// Computes `F` as the geometric series of the nilpotent `K`, truncated at
/// `K^|E|`, and from it the per-sink transfer matrices `M_T = A*F*B_T`.
/// Rank of `M_T` is not enforced here; `validate` reports it.
pub fn compute_transfer(net: &Network, code: &NetworkCode) -> Result<TransferSet, NetworkError> {
    let e = net.num_edges();
    let mut f = BinMatrix::identity(e);
    let mut power = BinMatrix::identity(e);
    for _ in 0..e {
        power = power.mul(&code.k).map_err(algebra("F series"))?;
        if power.is_zero() {
            break;
        }
        f = f.add(&power).map_err(algebra("F series"))?;
    }
    if !power.is_zero() {
        return Err(NetworkError::NotNilpotent);
    }
    let mut m = BTreeMap::new();
    let mut fb = BTreeMap::new();
    for sink in &net.sinks {
        let b = code
            .b
            .get(sink)
            .ok_or_else(|| NetworkError::UnknownSink(sink.clone()))?;
        let fb_t = f.mul(b).map_err(algebra("F*B"))?;
        let m_t = code.a.mul(&fb_t).map_err(algebra("A*F*B"))?;
        fb.insert(sink.clone(), fb_t);
        m.insert(sink.clone(), m_t);
    }
    Ok(TransferSet { f, m, fb })
}

impl TransferSet {
    pub fn transfer_matrix(&self, sink: &str) -> Option<&BinMatrix> {
        self.m.get(sink)
    }

    /// `F*B_T`: row `e` is the sink error produced by a flip on edge `e`.
    pub fn sink_reach(&self, sink: &str) -> Option<&BinMatrix> {
        self.fb.get(sink)
    }

    pub fn sinks(&self) -> impl Iterator<Item = &String> {
        self.m.keys()
    }

    /// Propagates the network error `w` (one 0/1 entry per edge) to the sink:
    /// `w * F * B_T`.
    pub fn sink_error(&self, sink: &str, w: &[u8]) -> Result<Vec<u8>, NetworkError> {
        let fb = self
            .fb
            .get(sink)
            .ok_or_else(|| NetworkError::UnknownSink(sink.to_string()))?;
        fb.mul_vec_left(w).map_err(algebra("w*F*B"))
    }
}

/// Edge-by-edge reference propagation: walks the edges in topological order,
/// applying local coding and injecting the error on each edge's output, then
/// reads the sink's B matrix. Slower than the transfer-matrix route but
/// independent of it, which is the point.
pub fn propagate(
    net: &Network,
    code: &NetworkCode,
    x: &[u8],
    w: &[u8],
    sink: &str,
) -> Result<Vec<u8>, NetworkError> {
    let e = net.num_edges();
    let order = net.topological_edge_order()?;
    let b = code
        .b
        .get(sink)
        .ok_or_else(|| NetworkError::UnknownSink(sink.to_string()))?;
    let mut sym = vec![0u8; e];
    for &f_idx in &order {
        let mut v = w[f_idx];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 1 && code.a.get(i, f_idx) {
                v ^= 1;
            }
        }
        for (e_idx, &s) in sym.iter().enumerate() {
            if code.k.get(e_idx, f_idx) {
                v ^= s;
            }
        }
        sym[f_idx] = v;
    }
    let mut out = vec![0u8; net.n];
    for (j, o) in out.iter_mut().enumerate() {
        for (e_idx, &s) in sym.iter().enumerate() {
            if s == 1 && b.get(e_idx, j) {
                *o ^= 1;
            }
        }
    }
    Ok(out)
}

/// The 9-edge butterfly network with a 2-dimensional binary network code.
///
/// Edge numbering: e1 s->v1, e2 s->v2, e3 v1->T1, e4 v1->v3, e5 v2->v3,
/// e6 v2->T2, e7 v3->v4, e8 v4->T1, e9 v4->T2. The source process x1 enters
/// on e1 and x2 on e2; v3 combines its inputs onto the bottleneck e7. Sink T1
/// reads (e3, e8) and sink T2 reads (e9, e6), which makes the transfer
/// matrices [[1,1],[0,1]] at T1 and [[1,0],[1,1]] at T2.
pub fn butterfly() -> (Network, NetworkCode) {
    let spec: [(&str, &str, &str); 9] = [
        ("e1", "s", "v1"),
        ("e2", "s", "v2"),
        ("e3", "v1", "T1"),
        ("e4", "v1", "v3"),
        ("e5", "v2", "v3"),
        ("e6", "v2", "T2"),
        ("e7", "v3", "v4"),
        ("e8", "v4", "T1"),
        ("e9", "v4", "T2"),
    ];
    let edges: Vec<Edge> = spec
        .iter()
        .map(|&(id, tail, head)| Edge {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        })
        .collect();
    let net = Network {
        n: 2,
        edges,
        source: "s".into(),
        sinks: vec!["T1".into(), "T2".into()],
    };

    let mut a = BinMatrix::zeros(2, 9);
    a.set(0, 0, true); // x1 -> e1
    a.set(1, 1, true); // x2 -> e2

    let mut k = BinMatrix::zeros(9, 9);
    for &(src, dst) in &[(0, 2), (0, 3), (1, 4), (1, 5), (3, 6), (4, 6), (6, 7), (6, 8)] {
        k.set(src, dst, true);
    }

    let mut b1 = BinMatrix::zeros(9, 2);
    b1.set(2, 0, true); // first symbol at T1 from e3
    b1.set(7, 1, true); // second from e8
    let mut b2 = BinMatrix::zeros(9, 2);
    b2.set(8, 0, true); // first symbol at T2 from e9
    b2.set(5, 1, true); // second from e6

    let mut b = BTreeMap::new();
    b.insert("T1".to_string(), b1);
    b.insert("T2".to_string(), b2);

    (net, NetworkCode { a, k, b })
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    n: usize,
    edges: Vec<Edge>,
    source: String,
    sinks: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<Vec<u8>>,
    #[serde(rename = "K")]
    k: Vec<Vec<u8>>,
    #[serde(rename = "B")]
    b: BTreeMap<String, Vec<Vec<u8>>>,
}

/// Parses a network JSON document into the model types. Matrix dimensions and
/// entry values are checked; structural properties are left to `validate`.
pub fn from_json(text: &str) -> Result<(Network, NetworkCode), NetworkError> {
    let file: NetworkFile =
        serde_json::from_str(text).map_err(|e| NetworkError::BadFile(e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for edge in &file.edges {
        if !seen.insert(edge.id.clone()) {
            return Err(NetworkError::DuplicateEdge(edge.id.clone()));
        }
    }
    let a = BinMatrix::from_rows(&file.a).map_err(algebra("matrix A"))?;
    let k = BinMatrix::from_rows(&file.k).map_err(algebra("matrix K"))?;
    let mut b = BTreeMap::new();
    for (sink, rows) in file.b {
        b.insert(
            sink.clone(),
            BinMatrix::from_rows(&rows).map_err(algebra(&format!("matrix B[{sink}]")))?,
        );
    }
    let net = Network {
        n: file.n,
        edges: file.edges,
        source: file.source,
        sinks: file.sinks,
    };
    Ok((net, NetworkCode { a, k, b }))
}

pub fn to_json(net: &Network, code: &NetworkCode) -> String {
    let file = NetworkFile {
        n: net.n,
        edges: net.edges.clone(),
        source: net.source.clone(),
        sinks: net.sinks.clone(),
        a: code.a.to_rows(),
        k: code.k.to_rows(),
        b: code.b.iter().map(|(s, m)| (s.clone(), m.to_rows())).collect(),
    };
    serde_json::to_string_pretty(&file).expect("network serializes")
}
