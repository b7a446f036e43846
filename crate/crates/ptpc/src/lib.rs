//! Exact minimum-weight codeword counting for pre-transformed polar codes.
//!
//! A pre-transformed polar code maps a length-K message through three stages:
//! rate-profiling (scatter onto an information set `I`, zeros elsewhere), an
//! upper-triangular pre-transform `T` (identity for plain polar, Toeplitz for
//! convolutional PAC, or arbitrary), and the polar transform `G_N`. This crate
//! computes the exact number of codewords at the profile-induced minimum weight
//! `wmin = min_{i ∈ I} 2^{w(i)}` without enumerating the code, by walking the
//! intersection of the per-coset minimum-weight message tree with the tree of
//! messages that satisfy the dynamic frozen-bit constraints.
//!
//! Modules, bottom-up:
//!
//! - [`bitops`]: word-level arithmetic on row indices (row weights, core-row
//!   tests, balancing-row positions, the polar partial order).
//! - [`code_model`]: rate profiles, pre-transforms, systematization, encoding.
//! - [`enumerator`]: the per-coset tree-intersection count and its aggregation.
//! - [`bounds`]: union bound on the frame error rate, coset classification,
//!   closed-form and summation lower bounds on the count.
//! - [`oracle`]: brute-force weight spectra for small codes, used as ground
//!   truth by tests and the `verify` command, never by the main algorithm.
//! - [`polysearch`]: exhaustive convolution-polynomial search minimizing the
//!   minimum-weight codeword count.

pub mod bitops;
pub mod bounds;
pub mod code_model;
pub mod enumerator;
pub mod oracle;
pub mod polysearch;
