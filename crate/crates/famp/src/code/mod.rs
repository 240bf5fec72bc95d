//! LDPC code structures: sparse parity-check matrices as Tanner graphs.

mod alist;
mod peg;

pub use alist::{parse_alist, write_alist};
pub use peg::build_peg_regular;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("alist parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge count n*d_v = {n_edges} is not divisible by d_c = {d_c}")]
    Divisibility { n_edges: usize, d_c: usize },
    #[error("infeasible degree request: {msg}")]
    InfeasibleDegrees { msg: String },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Bipartite graph of a binary parity-check matrix.
///
/// Variable node `n` is adjacent to check node `m` iff `H[m][n] = 1`.
/// Adjacency lists are sorted and free of repeated edges; the structure is
/// immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_vns: usize,
    n_cns: usize,
    vn_adjacency: Vec<Vec<usize>>,
    cn_adjacency: Vec<Vec<usize>>,
    /// Common VN degree, or 0 if the column weights differ.
    d_v: usize,
    /// Common CN degree, or 0 if the row weights differ.
    d_c: usize,
}

impl TannerGraph {
    /// Builds a graph from per-VN neighbor lists. Lists are sorted and
    /// validated (indices in range, no duplicate edges).
    pub fn from_vn_adjacency(
        n_cns: usize,
        mut vn_adjacency: Vec<Vec<usize>>,
    ) -> Result<Self, CodeError> {
        let n_vns = vn_adjacency.len();
        let mut cn_adjacency = vec![Vec::new(); n_cns];
        for (n, neighbors) in vn_adjacency.iter_mut().enumerate() {
            neighbors.sort_unstable();
            for pair in neighbors.windows(2) {
                if pair[0] == pair[1] {
                    return Err(CodeError::InvalidGraph(format!(
                        "duplicate edge between VN {n} and CN {}",
                        pair[0]
                    )));
                }
            }
            for &m in neighbors.iter() {
                if m >= n_cns {
                    return Err(CodeError::InvalidGraph(format!(
                        "CN index {m} out of range for VN {n} (M = {n_cns})"
                    )));
                }
                cn_adjacency[m].push(n);
            }
        }
        // VN lists were scanned in index order, so CN lists come out sorted.
        let d_v = uniform_degree(&vn_adjacency);
        let d_c = uniform_degree(&cn_adjacency);
        Ok(Self {
            n_vns,
            n_cns,
            vn_adjacency,
            cn_adjacency,
            d_v,
            d_c,
        })
    }

    pub fn n_vns(&self) -> usize {
        self.n_vns
    }

    pub fn n_cns(&self) -> usize {
        self.n_cns
    }

    /// Common VN degree, or 0 for an irregular code.
    pub fn d_v(&self) -> usize {
        self.d_v
    }

    /// Common CN degree, or 0 for an irregular code.
    pub fn d_c(&self) -> usize {
        self.d_c
    }

    pub fn is_regular(&self) -> bool {
        self.d_v != 0 && self.d_c != 0
    }

    /// Design rate `(N - M) / N`. Rank deficiency of H is not accounted for.
    pub fn design_rate(&self) -> f64 {
        (self.n_vns as f64 - self.n_cns as f64) / self.n_vns as f64
    }

    pub fn vn_neighbors(&self, n: usize) -> &[usize] {
        &self.vn_adjacency[n]
    }

    pub fn cn_neighbors(&self, m: usize) -> &[usize] {
        &self.cn_adjacency[m]
    }

    pub fn n_edges(&self) -> usize {
        self.vn_adjacency.iter().map(Vec::len).sum()
    }

    /// Modulo-2 syndrome of `bits`: component `m` is the XOR of `bits` over
    /// the neighbors of CN `m`. All-zero iff `bits` is a codeword.
    pub fn syndrome(&self, bits: &[u8]) -> Result<Vec<u8>, CodeError> {
        if bits.len() != self.n_vns {
            return Err(CodeError::LengthMismatch {
                expected: self.n_vns,
                got: bits.len(),
            });
        }
        Ok(self
            .cn_adjacency
            .iter()
            .map(|neighbors| neighbors.iter().fold(0u8, |acc, &n| acc ^ (bits[n] & 1)))
            .collect())
    }

    /// True iff every parity check is satisfied.
    pub fn is_codeword(&self, bits: &[u8]) -> Result<bool, CodeError> {
        Ok(self.syndrome(bits)?.iter().all(|&s| s == 0))
    }

    /// Length of the shortest cycle, found by BFS from every variable node.
    /// `None` for an acyclic graph. Tanner graphs are bipartite, so any
    /// returned girth is even and at least 4.
    pub fn girth(&self) -> Option<usize> {
        let total = self.n_vns + self.n_cns;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = std::collections::VecDeque::new();
        // Node ids: VN n -> n, CN m -> n_vns + m.
        for start in 0..self.n_vns {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            dist[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // No shorter cycle through `start` can be found deeper.
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                let neighbors: &[usize] = if u < self.n_vns {
                    &self.vn_adjacency[u]
                } else {
                    &self.cn_adjacency[u - self.n_vns]
                };
                for &w in neighbors {
                    let v = if u < self.n_vns { w + self.n_vns } else { w };
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }
}

fn uniform_degree(adjacency: &[Vec<usize>]) -> usize {
    match adjacency.first() {
        Some(first) if adjacency.iter().all(|l| l.len() == first.len()) => first.len(),
        _ => 0,
    }
}

/// A length-N bit vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    bits: Vec<u8>,
}

impl Codeword {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}
