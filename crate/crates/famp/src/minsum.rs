//! Flooding-schedule min-sum decoding: floating-point, offset, and
//! fixed-point variants.
//!
//! The variable-node update is the sum of the channel value and the incoming
//! extrinsic messages; the check-node update is the product of signs times
//! the minimum magnitude. `sign(0)` counts as `+1` everywhere and a zero
//! magnitude participates in the minimum. Accumulation order is pinned:
//! channel value first, then incoming messages in neighbor order.

use thiserror::Error;

use crate::code::{Codeword, TannerGraph};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("llr vector length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid decoder configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
}

/// Message number format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arithmetic {
    /// Double-precision messages, no saturation.
    Float,
    /// Sign-magnitude fixed point: channel LLRs are quantized with the given
    /// step and messages saturate to the symmetric alphabet
    /// `-(2^(bits-1)-1) ..= 2^(bits-1)-1`.
    Fixed { bits: u8, step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoderConfig {
    pub max_iters: usize,
    pub early_stop: bool,
    pub arithmetic: Arithmetic,
    /// Check-node output magnitudes are reduced by this offset and floored
    /// at zero. Zero disables the correction (plain min-sum).
    pub oms_offset: f64,
}

impl DecoderConfig {
    pub fn float(max_iters: usize, early_stop: bool) -> Self {
        Self {
            max_iters,
            early_stop,
            arithmetic: Arithmetic::Float,
            oms_offset: 0.0,
        }
    }

    pub fn offset_min_sum(max_iters: usize, early_stop: bool, offset: f64) -> Self {
        Self {
            oms_offset: offset,
            ..Self::float(max_iters, early_stop)
        }
    }

    pub fn fixed(max_iters: usize, early_stop: bool, bits: u8, step: f64) -> Self {
        Self {
            max_iters,
            early_stop,
            arithmetic: Arithmetic::Fixed { bits, step },
            oms_offset: 0.0,
        }
    }

    fn validate(&self) -> Result<(), DecodeError> {
        if self.max_iters == 0 {
            return Err(DecodeError::InvalidConfig(
                "max_iters must be at least 1".into(),
            ));
        }
        if !(self.oms_offset >= 0.0) {
            return Err(DecodeError::InvalidConfig(format!(
                "offset must be non-negative, got {}",
                self.oms_offset
            )));
        }
        if let Arithmetic::Fixed { bits, step } = self.arithmetic {
            if !(2..=16).contains(&bits) {
                return Err(DecodeError::InvalidConfig(format!(
                    "fixed-point bits must be in 2..=16, got {bits}"
                )));
            }
            if !(step > 0.0) {
                return Err(DecodeError::InvalidConfig(format!(
                    "fixed-point step must be positive, got {step}"
                )));
            }
            if self.oms_offset != 0.0 {
                return Err(DecodeError::InvalidConfig(
                    "offset correction is only supported with float arithmetic".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Result of a decoding attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutput {
    pub codeword: Codeword,
    pub iterations: usize,
    pub converged: bool,
}

// ---------------------------------------------------------------------------
// Node update rules
// ---------------------------------------------------------------------------

/// Variable-node update: channel value plus the extrinsic sum.
pub fn vn_update_float(l: f64, incoming: &[f64]) -> f64 {
    incoming.iter().fold(l, |acc, &x| acc + x)
}

/// Fixed-point variable-node update, saturating to `-max_level..=max_level`.
pub fn vn_update_fixed(l: i32, incoming: &[i32], max_level: i32) -> i32 {
    let sum = incoming.iter().fold(i64::from(l), |acc, &x| acc + i64::from(x));
    sum.clamp(-i64::from(max_level), i64::from(max_level)) as i32
}

/// Check-node update: product of signs times the minimum magnitude.
pub fn cn_update_float(incoming: &[f64]) -> f64 {
    oms_cn_update_float(incoming, 0.0)
}

/// Check-node update with offset correction `max(|.| - offset, 0)`.
pub fn oms_cn_update_float(incoming: &[f64], offset: f64) -> f64 {
    let mut mag = f64::INFINITY;
    let mut negative = false;
    for &v in incoming {
        mag = mag.min(v.abs());
        if v < 0.0 {
            negative = !negative;
        }
    }
    let mag = (mag - offset).max(0.0);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Integer check-node update.
pub fn cn_update_fixed(incoming: &[i32]) -> i32 {
    let mut mag = i32::MAX;
    let mut negative = false;
    for &v in incoming {
        mag = mag.min(v.abs());
        if v < 0 {
            negative = !negative;
        }
    }
    if negative {
        -mag
    } else {
        mag
    }
}

/// Hard decision from the channel value and all incoming messages:
/// bit 0 when the posterior sum is non-negative (`sign(0) = +1`).
pub fn decide_float(l: f64, incoming: &[f64]) -> u8 {
    let sum = incoming.iter().fold(l, |acc, &x| acc + x);
    if sum >= 0.0 {
        0
    } else {
        1
    }
}

/// Per-edge extrinsic check-node outputs for one check node: entry `i` is
/// the update over all inputs except `values[i]`. Uses the two-minimum
/// shortcut; bit-identical to applying [`oms_cn_update_float`] per edge.
pub(crate) fn cn_extrinsics_into(values: &[f64], offset: f64, out: &mut [f64]) {
    debug_assert_eq!(values.len(), out.len());
    debug_assert!(values.len() >= 2);
    let mut min1 = f64::INFINITY;
    let mut min2 = f64::INFINITY;
    let mut imin = 0usize;
    let mut negative = false;
    for (i, &v) in values.iter().enumerate() {
        let a = v.abs();
        if a < min1 {
            min2 = min1;
            min1 = a;
            imin = i;
        } else if a < min2 {
            min2 = a;
        }
        if v < 0.0 {
            negative = !negative;
        }
    }
    for (i, &own) in values.iter().enumerate() {
        let raw = if i == imin { min2 } else { min1 };
        let mag = (raw - offset).max(0.0);
        let mut flip = negative;
        if own < 0.0 {
            flip = !flip;
        }
        out[i] = if flip { -mag } else { mag };
    }
}

// ---------------------------------------------------------------------------
// Decoder
// ---------------------------------------------------------------------------

/// Reusable flooding-schedule min-sum decoder bound to one graph.
///
/// Fixed-point runs use integer-valued doubles internally; every quantity is
/// an exactly representable small integer, so the arithmetic is bit-identical
/// to an integer datapath with saturation.
pub struct MinSumDecoder<'g> {
    graph: &'g TannerGraph,
    cfg: DecoderConfig,
    /// Edge `e` belongs to CN `m` iff `cn_edge_start[m] <= e < cn_edge_start[m+1]`.
    cn_edge_start: Vec<usize>,
    /// Per VN: its edge ids, in sorted-CN-neighbor order.
    vn_edges: Vec<Vec<usize>>,
    chan: Vec<f64>,
    vn_to_cn: Vec<f64>,
    cn_to_vn: Vec<f64>,
    bits: Vec<u8>,
}

impl<'g> MinSumDecoder<'g> {
    pub fn new(graph: &'g TannerGraph, cfg: DecoderConfig) -> Result<Self, DecodeError> {
        cfg.validate()?;
        let (cn_edge_start, vn_edges) = edge_layout(graph)?;
        let n_edges = *cn_edge_start.last().unwrap();
        Ok(Self {
            graph,
            cfg,
            cn_edge_start,
            vn_edges,
            chan: vec![0.0; graph.n_vns()],
            vn_to_cn: vec![0.0; n_edges],
            cn_to_vn: vec![0.0; n_edges],
            bits: vec![0; graph.n_vns()],
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    /// Runs up to `max_iters` flooding iterations on the given channel LLRs.
    pub fn decode(&mut self, llrs: &[f64]) -> Result<DecodeOutput, DecodeError> {
        let n = self.graph.n_vns();
        if llrs.len() != n {
            return Err(DecodeError::LengthMismatch {
                expected: n,
                got: llrs.len(),
            });
        }
        let bound = match self.cfg.arithmetic {
            Arithmetic::Float => None,
            Arithmetic::Fixed { bits, step } => {
                let quantizer = crate::channel::UniformQuantizer::new(bits, step)
                    .map_err(|e| DecodeError::InvalidConfig(e.to_string()))?;
                for (c, &l) in self.chan.iter_mut().zip(llrs) {
                    *c = f64::from(quantizer.quantize(l));
                }
                Some(f64::from(quantizer.max_level()))
            }
        };
        if bound.is_none() {
            self.chan.copy_from_slice(llrs);
        }

        // Iteration 1 sees the bare channel values (empty extrinsic sum).
        for (n_idx, edges) in self.vn_edges.iter().enumerate() {
            for &e in edges {
                self.vn_to_cn[e] = self.chan[n_idx];
            }
        }

        let mut iterations = self.cfg.max_iters;
        let mut converged = false;
        for t in 1..=self.cfg.max_iters {
            self.cn_pass();
            if self.cfg.early_stop || t == self.cfg.max_iters {
                self.decide_all();
                let ok = self
                    .graph
                    .syndrome(&self.bits)
                    .expect("bits length matches graph")
                    .iter()
                    .all(|&s| s == 0);
                if ok || t == self.cfg.max_iters {
                    iterations = t;
                    converged = ok;
                    break;
                }
            }
            self.vn_pass(bound);
        }

        Ok(DecodeOutput {
            codeword: Codeword::new(self.bits.clone()),
            iterations,
            converged,
        })
    }

    fn cn_pass(&mut self) {
        let offset = self.cfg.oms_offset;
        for m in 0..self.graph.n_cns() {
            let (s, e) = (self.cn_edge_start[m], self.cn_edge_start[m + 1]);
            cn_extrinsics_into(&self.vn_to_cn[s..e], offset, &mut self.cn_to_vn[s..e]);
        }
    }

    fn vn_pass(&mut self, bound: Option<f64>) {
        for (n, edges) in self.vn_edges.iter().enumerate() {
            for (j, &e) in edges.iter().enumerate() {
                let mut sum = self.chan[n];
                for (j2, &e2) in edges.iter().enumerate() {
                    if j2 != j {
                        sum += self.cn_to_vn[e2];
                    }
                }
                if let Some(b) = bound {
                    sum = sum.clamp(-b, b);
                    debug_assert!(sum.abs() <= b);
                }
                self.vn_to_cn[e] = sum;
            }
        }
    }

    fn decide_all(&mut self) {
        for (n, edges) in self.vn_edges.iter().enumerate() {
            let mut sum = self.chan[n];
            for &e in edges {
                sum += self.cn_to_vn[e];
            }
            self.bits[n] = if sum >= 0.0 { 0 } else { 1 };
        }
    }
}

/// CN-major edge numbering shared by the min-sum and LUT decoders.
pub(crate) fn edge_layout(graph: &TannerGraph) -> Result<(Vec<usize>, Vec<Vec<usize>>), DecodeError> {
    let mut cn_edge_start = Vec::with_capacity(graph.n_cns() + 1);
    cn_edge_start.push(0);
    for m in 0..graph.n_cns() {
        let d = graph.cn_neighbors(m).len();
        if d < 2 {
            return Err(DecodeError::UnsupportedGraph(format!(
                "check node {m} has degree {d}; need at least 2"
            )));
        }
        cn_edge_start.push(cn_edge_start[m] + d);
    }
    let mut vn_edges: Vec<Vec<usize>> = vec![Vec::new(); graph.n_vns()];
    for m in 0..graph.n_cns() {
        for (pos, &n) in graph.cn_neighbors(m).iter().enumerate() {
            vn_edges[n].push(cn_edge_start[m] + pos);
        }
    }
    // CN ids ascend with edge ids, so each VN's list is already in
    // sorted-neighbor order.
    Ok((cn_edge_start, vn_edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::TannerGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn toy_graph() -> TannerGraph {
        TannerGraph::from_vn_adjacency(
            3,
            vec![vec![0, 2], vec![0, 1], vec![1, 2], vec![0], vec![1], vec![2]],
        )
        .unwrap()
    }

    /// Exhaustive maximum-likelihood decision over the 8-word codebook of
    /// the toy code: maximizes the BPSK correlation with the LLRs.
    fn ml_oracle(g: &TannerGraph, llrs: &[f64]) -> Vec<u8> {
        let n = g.n_vns();
        let mut best: Option<(f64, Vec<u8>)> = None;
        for w in 0u32..1 << n {
            let c: Vec<u8> = (0..n).map(|i| ((w >> i) & 1) as u8).collect();
            if !g.is_codeword(&c).unwrap() {
                continue;
            }
            let score: f64 = c
                .iter()
                .zip(llrs)
                .map(|(&b, &l)| (1.0 - 2.0 * f64::from(b)) * l)
                .sum();
            if best.as_ref().map_or(true, |(s, _)| score > *s) {
                best = Some((score, c));
            }
        }
        best.unwrap().1
    }

    #[test]
    fn vn_update_examples() {
        assert_eq!(vn_update_float(2.0, &[-1.0, 3.0]), 4.0);
        assert_eq!(vn_update_float(5.0, &[0.0, 0.0]), 5.0);
        assert_eq!(vn_update_fixed(6, &[5, 5], 7), 7);
        assert_eq!(vn_update_fixed(-6, &[-5, -5], 7), -7);
        assert_eq!(vn_update_fixed(3, &[], 7), 3);
    }

    #[test]
    fn cn_update_examples() {
        assert_eq!(cn_update_float(&[3.0, -1.0, 2.0]), -1.0);
        assert_eq!(cn_update_float(&[-2.0, -5.0]), 2.0);
        assert_eq!(cn_update_float(&[4.0, 0.0, -3.0]), 0.0);
        assert_eq!(cn_update_fixed(&[3, -1, 2]), -1);
        assert_eq!(cn_update_fixed(&[-2, -5]), 2);
        assert_eq!(cn_update_fixed(&[7, 0, -1]), 0);
    }

    #[test]
    fn decide_examples() {
        assert_eq!(decide_float(1.0, &[0.0, 0.0, 0.0]), 0);
        assert_eq!(decide_float(-1.0, &[0.0, 0.0, 0.0]), 1);
        // Exact tie resolves to bit 0.
        assert_eq!(decide_float(2.0, &[-2.0]), 0);
    }

    #[test]
    fn oms_offset_shrinks_magnitude() {
        assert_eq!(oms_cn_update_float(&[3.0, -1.0, 2.0], 0.5), -0.5);
        assert_eq!(oms_cn_update_float(&[0.25, 1.0], 0.5), 0.0);
    }

    #[test]
    fn extrinsics_match_naive_rule() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let d = rng.random_range(2..9usize);
            let values: Vec<f64> = (0..d).map(|_| rng.random_range(-5.0..5.0)).collect();
            let offset = if rng.random_bool(0.5) { 0.0 } else { 0.5 };
            let mut fast = vec![0.0; d];
            cn_extrinsics_into(&values, offset, &mut fast);
            for i in 0..d {
                let others: Vec<f64> = values
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v)
                    .collect();
                assert_eq!(fast[i], oms_cn_update_float(&others, offset), "edge {i}");
            }
        }
    }

    #[test]
    fn noiseless_converges_in_one_iteration() {
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::float(5, true)).unwrap();
        let out = dec.decode(&[4.0; 6]).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 1);
        assert_eq!(out.codeword.bits(), &[0; 6]);
    }

    #[test]
    fn corrects_single_weak_flip_and_matches_ml() {
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::float(5, true)).unwrap();
        for flip in 0..6 {
            let mut llrs = vec![5.0; 6];
            llrs[flip] = -0.5;
            let out = dec.decode(&llrs).unwrap();
            let ml = ml_oracle(&g, &llrs);
            assert_eq!(ml, vec![0u8; 6], "ML should recover all-zero");
            assert_eq!(out.codeword.bits(), ml.as_slice(), "flip at {flip}");
            assert!(out.converged);
        }
    }

    #[test]
    fn fixed_and_float_agree_on_noiseless_input() {
        let g = toy_graph();
        let llrs = vec![3.0; 6];
        let mut float_dec = MinSumDecoder::new(&g, DecoderConfig::float(5, false)).unwrap();
        let mut fixed_dec =
            MinSumDecoder::new(&g, DecoderConfig::fixed(5, false, 5, 0.5)).unwrap();
        let a = float_dec.decode(&llrs).unwrap();
        let b = fixed_dec.decode(&llrs).unwrap();
        assert_eq!(a.codeword, b.codeword);
        assert_eq!(a.iterations, 5);
        assert_eq!(b.iterations, 5);
    }

    #[test]
    fn offset_zero_is_plain_min_sum() {
        let g = toy_graph();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let mut ms = MinSumDecoder::new(&g, DecoderConfig::float(5, true)).unwrap();
        let mut oms =
            MinSumDecoder::new(&g, DecoderConfig::offset_min_sum(5, true, 0.0)).unwrap();
        for _ in 0..100 {
            let llrs: Vec<f64> = (0..6).map(|_| rng.random_range(-4.0..4.0)).collect();
            assert_eq!(ms.decode(&llrs).unwrap(), oms.decode(&llrs).unwrap());
        }
    }

    #[test]
    fn global_negation_flips_all_decisions() {
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::float(5, false)).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..200 {
            let llrs: Vec<f64> = (0..6).map(|_| rng.random_range(-4.0..4.0)).collect();
            let neg: Vec<f64> = llrs.iter().map(|&l| -l).collect();
            let a = dec.decode(&llrs).unwrap();
            let b = dec.decode(&neg).unwrap();
            let flipped: Vec<u8> = a.codeword.bits().iter().map(|&x| 1 - x).collect();
            assert_eq!(b.codeword.bits(), flipped.as_slice());
        }
    }

    #[test]
    fn fixed_point_messages_stay_in_alphabet() {
        // The vn_pass debug assertion enforces the bound; drive it hard.
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::fixed(8, false, 4, 0.25)).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for _ in 0..50 {
            let llrs: Vec<f64> = (0..6).map(|_| rng.random_range(-50.0..50.0)).collect();
            dec.decode(&llrs).unwrap();
        }
    }

    #[test]
    fn runs_exactly_max_iters_without_early_stop() {
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::float(7, false)).unwrap();
        let out = dec.decode(&[4.0; 6]).unwrap();
        assert_eq!(out.iterations, 7);
        assert!(out.converged);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = toy_graph();
        let mut dec = MinSumDecoder::new(&g, DecoderConfig::float(5, true)).unwrap();
        assert!(matches!(
            dec.decode(&[1.0; 5]),
            Err(DecodeError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fixed_with_offset_rejected() {
        let g = toy_graph();
        let cfg = DecoderConfig {
            max_iters: 5,
            early_stop: true,
            arithmetic: Arithmetic::Fixed { bits: 5, step: 0.5 },
            oms_offset: 0.5,
        };
        assert!(MinSumDecoder::new(&g, cfg).is_err());
    }
}
