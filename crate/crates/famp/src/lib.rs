//! Finite-alphabet message passing toolkit for LDPC decoding studies.
//!
//! The crate bundles everything needed to compare a conventional min-sum
//! LDPC decoder against a finite-alphabet (LUT-based) decoder at desk scale:
//!
//! - [`code`]: sparse Tanner graph structures, alist file I/O, and
//!   progressive-edge-growth construction of regular codes.
//! - [`channel`]: BPSK-over-AWGN transmission, LLR computation, and uniform
//!   channel quantization for fixed-point decoding.
//! - [`minsum`]: flooding-schedule min-sum, offset-min-sum, and fixed-point
//!   min-sum decoders.
//! - [`pmf`]: discrete message distributions, mutual information, the
//!   dynamic-programming MI-maximizing quantizer, and the check-node
//!   density-evolution update.
//! - [`lut`]: offline design of the per-iteration variable-node lookup
//!   tables, their file format, and the run-time LUT decoder.
//! - [`arch`]: analytical throughput/latency/register/energy model of the
//!   unrolled serial message-transfer architecture.

pub mod arch;
pub mod channel;
pub mod code;
pub mod lut;
pub mod minsum;
pub mod pmf;

pub use code::{Codeword, TannerGraph};
pub use minsum::{Arithmetic, DecodeOutput, DecoderConfig, MinSumDecoder};
