//! Discrete message distributions for density evolution and
//! mutual-information-maximizing quantizer design.
//!
//! Alphabets are kept in ascending-LLR ("signed label") order with an even
//! number of labels, so negating a label is reversing its index:
//! `neg(z) = K-1-z`. Index `K/2` is `+0`, index `K-1` is the strongest
//! positive label. A [`MessagePmf`] stores `p(z | bit = 0)`; the other
//! conditional follows from channel symmetry as `p(z | 1) = p(-z | 0)`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PmfError {
    #[error("pmf is not normalized: sum = {0}")]
    NotNormalized(f64),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("labels are not sorted by LLR (violation at index {0})")]
    Unsorted(usize),
    #[error("output alphabet size {k_out} outside 1..={k_in}")]
    KOutOfRange { k_out: usize, k_in: usize },
    #[error("check-node degree must be at least 2, got {0}")]
    DegenerateDegree(usize),
}

/// Guard added inside logs so zero-mass labels get a finite LLR of 0 while
/// leaving ordinary probabilities untouched (absorbed below ~1e-304).
const LLR_FLOOR: f64 = 1e-320;

pub(crate) fn label_llr(p0: f64, p1: f64) -> f64 {
    (p0 + LLR_FLOOR).ln() - (p1 + LLR_FLOOR).ln()
}

/// Mutual-information contribution of an output symbol (or label group)
/// holding mass `a` under bit 0 and `b` under bit 1, times 2.
/// `I(X;Z) = 0.5 * sum of these`, with `0 log 0 = 0`.
pub(crate) fn group_weight(a: f64, b: f64) -> f64 {
    let t = a + b;
    if t <= 0.0 {
        return 0.0;
    }
    let mut w = 0.0;
    if a > 0.0 {
        w += a * (2.0 * a / t).log2();
    }
    if b > 0.0 {
        w += b * (2.0 * b / t).log2();
    }
    w
}

// ---------------------------------------------------------------------------
// Symmetric message pmf (the density-evolution state)
// ---------------------------------------------------------------------------

/// Distribution of a sign-magnitude message alphabet conditioned on the
/// transmitted bit being 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MessagePmf {
    p0: Vec<f64>,
}

impl MessagePmf {
    /// Validates and normalizes. The alphabet must have even size at least
    /// 2 and the mass must already sum to 1 within 1e-9 (residual float
    /// drift is divided out so it cannot accumulate across design stages).
    pub fn new(p0: Vec<f64>) -> Result<Self, PmfError> {
        if p0.len() < 2 || p0.len() % 2 != 0 {
            return Err(PmfError::InvalidAlphabet(format!(
                "alphabet size must be even and at least 2, got {}",
                p0.len()
            )));
        }
        if let Some(bad) = p0.iter().find(|&&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(PmfError::InvalidAlphabet(format!(
                "negative or non-finite probability {bad}"
            )));
        }
        let sum: f64 = p0.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(PmfError::NotNormalized(sum));
        }
        let p0 = p0.into_iter().map(|p| p / sum).collect();
        Ok(Self { p0 })
    }

    /// Alphabet size.
    pub fn k(&self) -> usize {
        self.p0.len()
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p_given_0(&self, z: usize) -> f64 {
        self.p0[z]
    }

    /// `p(z | 1) = p(-z | 0)` by symmetry.
    pub fn p_given_1(&self, z: usize) -> f64 {
        self.p0[self.k() - 1 - z]
    }

    pub fn neg(&self, z: usize) -> usize {
        self.k() - 1 - z
    }

    /// Magnitude rank of a label; `K/2 - 1` is the strongest magnitude.
    pub fn magnitude(&self, z: usize) -> usize {
        let half = self.k() / 2;
        if z >= half {
            z - half
        } else {
            half - 1 - z
        }
    }

    pub fn is_positive(&self, z: usize) -> bool {
        z >= self.k() / 2
    }

    pub fn llr(&self, z: usize) -> f64 {
        label_llr(self.p_given_0(z), self.p_given_1(z))
    }

    /// True when label LLRs are non-decreasing in signed label order.
    pub fn is_llr_sorted(&self) -> bool {
        let llrs: Vec<f64> = (0..self.k()).map(|z| self.llr(z)).collect();
        llrs.windows(2).all(|w| w[1] >= w[0] - 1e-9)
    }

    /// `I(X;Z)` in bits for an equiprobable input bit.
    pub fn mutual_information(&self) -> f64 {
        0.5 * (0..self.k())
            .map(|z| group_weight(self.p_given_0(z), self.p_given_1(z)))
            .sum::<f64>()
    }
}

// ---------------------------------------------------------------------------
// General binary-input joint distribution (DP quantizer input)
// ---------------------------------------------------------------------------

/// Conditionals `p(z|0)` and `p(z|1)` of a composite label alphabet under an
/// equiprobable input bit. Unlike [`MessagePmf`] no symmetry is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
}

impl JointPmf {
    pub fn new(p0: Vec<f64>, p1: Vec<f64>) -> Result<Self, PmfError> {
        if p0.len() != p1.len() || p0.is_empty() {
            return Err(PmfError::InvalidAlphabet(format!(
                "conditional lengths {} and {} must match and be non-empty",
                p0.len(),
                p1.len()
            )));
        }
        for p in p0.iter().chain(p1.iter()) {
            if !(*p >= 0.0) || !p.is_finite() {
                return Err(PmfError::InvalidAlphabet(format!(
                    "negative or non-finite probability {p}"
                )));
            }
        }
        for sum in [p0.iter().sum::<f64>(), p1.iter().sum::<f64>()] {
            if (sum - 1.0).abs() > 1e-9 {
                return Err(PmfError::NotNormalized(sum));
            }
        }
        Ok(Self { p0, p1 })
    }

    pub fn k(&self) -> usize {
        self.p0.len()
    }

    pub fn llr(&self, z: usize) -> f64 {
        label_llr(self.p0[z], self.p1[z])
    }

    pub fn mutual_information(&self) -> f64 {
        0.5 * (0..self.k())
            .map(|z| group_weight(self.p0[z], self.p1[z]))
            .sum::<f64>()
    }

    fn check_sorted(&self) -> Result<(), PmfError> {
        for z in 1..self.k() {
            if self.llr(z) < self.llr(z - 1) - 1e-9 {
                return Err(PmfError::Unsorted(z));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// MI-maximizing quantizer (dynamic program over contiguous partitions)
// ---------------------------------------------------------------------------

/// Result of quantizing a sorted composite alphabet down to `k_out` labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantization {
    /// `mapping[z]` is the output label of input label `z`; non-decreasing.
    pub mapping: Vec<u16>,
    /// Interior group boundaries: group `g` covers `boundaries[g-1]..boundaries[g]`
    /// with the implicit outer bounds 0 and K.
    pub boundaries: Vec<usize>,
    /// Pushforward of the input joint through the mapping.
    pub output: JointPmf,
    /// Achieved `I(X; Z_out)` in bits.
    pub mi: f64,
}

/// Objective value of a partition: mutual information (doubled), with a
/// balance score as an exact tie-breaker. Larger is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Score {
    pub w2: f64,
    pub balance: f64,
}

impl Score {
    pub const ZERO: Score = Score {
        w2: 0.0,
        balance: 0.0,
    };

    pub fn better_than(self, other: Score) -> bool {
        self.w2 > other.w2 || (self.w2 == other.w2 && self.balance < other.balance)
    }

    pub fn plus(self, other: Score) -> Score {
        Score {
            w2: self.w2 + other.w2,
            balance: self.balance + other.balance,
        }
    }
}

/// Prefix sums over both conditionals, for O(1) group masses.
pub(crate) struct PrefixMass {
    acc0: Vec<f64>,
    acc1: Vec<f64>,
}

impl PrefixMass {
    pub fn new(p0: &[f64], p1: &[f64]) -> Self {
        let mut acc0 = Vec::with_capacity(p0.len() + 1);
        let mut acc1 = Vec::with_capacity(p1.len() + 1);
        acc0.push(0.0);
        acc1.push(0.0);
        for i in 0..p0.len() {
            acc0.push(acc0[i] + p0[i]);
            acc1.push(acc1[i] + p1[i]);
        }
        Self { acc0, acc1 }
    }

    /// Score of merging labels `a..b` into one output symbol.
    pub fn group_score(&self, a: usize, b: usize) -> Score {
        let m0 = self.acc0[b] - self.acc0[a];
        let m1 = self.acc1[b] - self.acc1[a];
        let p = 0.5 * (m0 + m1);
        Score {
            w2: group_weight(m0, m1),
            balance: p * p,
        }
    }
}

/// Optimal contiguous partition of LLR-sorted labels into `k` groups.
///
/// Maximizes mutual information; exact ties prefer the most balanced group
/// masses (smallest sum of squared group probabilities) and then the
/// lexicographically smallest boundary vector. Scores of partial suffixes
/// accumulate right-to-left, so a separately computed right-folded total of
/// the same group scores is bitwise comparable.
pub(crate) fn best_partition(mass: &PrefixMass, k_in: usize, k: usize) -> (Vec<usize>, Score) {
    debug_assert!(k >= 1 && k <= k_in);
    // table[m-1][j]: best score partitioning suffix j..k_in into m groups.
    let mut table: Vec<Vec<Score>> = Vec::with_capacity(k);
    let mut base = vec![Score::ZERO; k_in + 1];
    for (j, slot) in base.iter_mut().enumerate().take(k_in) {
        *slot = mass.group_score(j, k_in);
    }
    table.push(base);
    for m in 2..=k {
        let prev = &table[m - 2];
        let mut row = vec![Score::ZERO; k_in + 1];
        // Suffix j..k_in splits into a first group j..b and m-1 more.
        for j in 0..=(k_in - m) {
            let mut best: Option<Score> = None;
            for b in (j + 1)..=(k_in - (m - 1)) {
                let cand = mass.group_score(j, b).plus(prev[b]);
                if best.map_or(true, |s| cand.better_than(s)) {
                    best = Some(cand);
                }
            }
            row[j] = best.expect("non-empty split range");
        }
        table.push(row);
    }

    // Walk left to right choosing the smallest boundary that reproduces the
    // stored optimum; this realizes the lexicographic tie-break globally.
    let total = table[k - 1][0];
    let mut boundaries = Vec::with_capacity(k - 1);
    let mut pos = 0usize;
    for remaining in (2..=k).rev() {
        let target = table[remaining - 1][pos];
        let prev = &table[remaining - 2];
        let mut chosen = None;
        for b in (pos + 1)..=(k_in - (remaining - 1)) {
            let cand = mass.group_score(pos, b).plus(prev[b]);
            if cand == target {
                chosen = Some(b);
                break;
            }
        }
        let b = chosen.expect("stored optimum must be reproducible");
        boundaries.push(b);
        pos = b;
    }
    (boundaries, total)
}

/// MI-optimal deterministic quantizer for a binary-input source whose
/// composite labels are sorted by LLR: a dynamic program over contiguous
/// partitions into `k_out` groups.
pub fn quantize_mi_optimal(joint: &JointPmf, k_out: usize) -> Result<Quantization, PmfError> {
    let k_in = joint.k();
    if k_out < 1 || k_out > k_in {
        return Err(PmfError::KOutOfRange { k_out, k_in });
    }
    joint.check_sorted()?;
    let mass = PrefixMass::new(&joint.p0, &joint.p1);
    let (boundaries, score) = best_partition(&mass, k_in, k_out);

    let mut mapping = vec![0u16; k_in];
    let mut out0 = vec![0.0; k_out];
    let mut out1 = vec![0.0; k_out];
    let mut group = 0usize;
    for z in 0..k_in {
        while group < boundaries.len() && z >= boundaries[group] {
            group += 1;
        }
        mapping[z] = group as u16;
        out0[group] += joint.p0[z];
        out1[group] += joint.p1[z];
    }
    let output = JointPmf::new(out0, out1)?;
    Ok(Quantization {
        mapping,
        boundaries,
        output,
        mi: 0.5 * score.w2,
    })
}

// ---------------------------------------------------------------------------
// Check-node density evolution
// ---------------------------------------------------------------------------

/// Distribution of the min-sum check-node output (sign product, minimum
/// magnitude) over `d_c - 1` i.i.d. inputs drawn from `pmf`, in closed form
/// from magnitude tail sums and sign parity.
pub fn cn_min_sum_pmf(pmf: &MessagePmf, d_c: usize) -> Result<MessagePmf, PmfError> {
    if d_c < 2 {
        return Err(PmfError::DegenerateDegree(d_c));
    }
    let r = (d_c - 1) as i32;
    let k = pmf.k();
    let half = k / 2;
    // a[m]: mass of +m, b[m]: mass of -m.
    let a = |m: usize| pmf.p0()[half + m];
    let b = |m: usize| pmf.p0()[half - 1 - m];

    // tail[m] = P(|Z| >= m), signed_tail[m] = sum over |Z| >= m of (a - b).
    let mut tail = vec![0.0; half + 1];
    let mut signed_tail = vec![0.0; half + 1];
    for m in (0..half).rev() {
        tail[m] = tail[m + 1] + (a(m) + b(m));
        signed_tail[m] = signed_tail[m + 1] + (a(m) - b(m));
    }

    // P(all inputs >= m in magnitude, sign product positive) =
    // (tail^r + signed_tail^r)/2; the minimum-equals-m mass is the
    // difference between consecutive thresholds.
    let even = |m: usize| 0.5 * (tail[m].powi(r) + signed_tail[m].powi(r));
    let odd = |m: usize| 0.5 * (tail[m].powi(r) - signed_tail[m].powi(r));

    let mut out = vec![0.0; k];
    for m in 0..half {
        out[half + m] = (even(m) - even(m + 1)).max(0.0);
        out[half - 1 - m] = (odd(m) - odd(m + 1)).max(0.0);
    }
    MessagePmf::new(out)
}
