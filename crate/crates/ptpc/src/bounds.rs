//! Analytic companions to the exact count: the union bound on the frame
//! error rate, the classification of minimum-weight cosets by whether a
//! pre-transform can thin them, and two lower bounds on the minimum-weight
//! codeword count.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::bitops::BitIndex;
use crate::code_model::CodeSpec;
use crate::enumerator::{compute_coset_context, wmin_and_coset_indices};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("spectrum weights must be strictly increasing (entry {index})")]
    UnsortedSpectrum { index: usize },
    #[error("spectrum counts must be positive (entry {index})")]
    ZeroCount { index: usize },
}

/// A sparse slice of a weight spectrum: pairs `(w, A_w)` with strictly
/// increasing weights and positive counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrumSlice {
    entries: Vec<(u64, BigUint)>,
}

impl WeightSpectrumSlice {
    pub fn new(entries: Vec<(u64, BigUint)>) -> Result<Self, BoundsError> {
        for (index, pair) in entries.windows(2).enumerate() {
            if pair[0].0 >= pair[1].0 {
                return Err(BoundsError::UnsortedSpectrum { index: index + 1 });
            }
        }
        for (index, (_, count)) in entries.iter().enumerate() {
            if count.is_zero() {
                return Err(BoundsError::ZeroCount { index });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(u64, BigUint)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The count at weight `w`, zero if absent.
    pub fn count_at(&self, w: u64) -> BigUint {
        match self.entries.binary_search_by_key(&w, |e| e.0) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => BigUint::zero(),
        }
    }
}

/// The Gaussian tail probability `Q(x) = erfc(x / sqrt(2)) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Union bound on the frame error rate over the binary-input AWGN channel at
/// the given `Eb/N0` in decibels: `Σ_w A_w Q(sqrt(2 w R 10^{ebn0_db/10}))`.
///
/// The slice is whatever truncation the caller chose; at high SNR the first
/// nonzero term dominates.
///
/// # Panics
/// If the rate is outside `(0, 1]` or the slice is empty.
pub fn union_bound_fer(spectrum: &WeightSpectrumSlice, rate: f64, ebn0_db: f64) -> f64 {
    assert!(rate > 0.0 && rate <= 1.0, "rate {rate} outside (0, 1]");
    assert!(!spectrum.is_empty(), "union bound needs at least one term");
    let es_per_n0 = rate * 10f64.powf(ebn0_db / 10.0);
    spectrum
        .entries()
        .iter()
        .map(|(w, count)| {
            let coefficient = count.to_f64().unwrap_or(f64::INFINITY);
            coefficient * q_function((2.0 * *w as f64 * es_per_n0).sqrt())
        })
        .sum()
}

/// The minimum-weight coset leaders split by whether a pre-transform can
/// reduce the coset's minimum-weight codeword count.
///
/// A coset is reducible exactly when some frozen non-core position above its
/// leader exists: only there can a dynamic frozen constraint kill a subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClassification {
    /// Leaders whose count a pre-transform can reduce, ascending.
    pub pre_transformable: Vec<u32>,
    /// Leaders whose count is fixed at `2^{|I ∩ K_i|}` for every
    /// upper-triangular pre-transform, ascending.
    pub non_pre_transformable: Vec<u32>,
}

/// Classifies every minimum-weight coset of the profile.
pub fn classify_cosets(spec: &CodeSpec) -> CosetClassification {
    let (_, leaders) = wmin_and_coset_indices(spec);
    let mut pre_transformable = Vec::new();
    let mut non_pre_transformable = Vec::new();
    for i in leaders {
        let ctx = compute_coset_context(spec, BitIndex::new(i, spec.n()));
        if ctx.f_star == ctx.leader {
            non_pre_transformable.push(i);
        } else {
            pre_transformable.push(i);
        }
    }
    CosetClassification {
        pre_transformable,
        non_pre_transformable,
    }
}

/// Lower bound on the minimum-weight codeword count, valid for every
/// upper-triangular pre-transform: the sum of `2^{|I ∩ K_i|}` over the
/// non-pre-transformable cosets, whose counts no pre-transform can change.
pub fn lb_locked_cosets(spec: &CodeSpec) -> BigUint {
    let classification = classify_cosets(spec);
    let mut sum = BigUint::zero();
    for i in classification.non_pre_transformable {
        let ctx = compute_coset_context(spec, BitIndex::new(i, spec.n()));
        let info_cores = ctx
            .core_rows
            .iter()
            .filter(|&&k| spec.is_info(k))
            .count();
        sum += BigUint::from(1u8) << info_cores;
    }
    sum
}

/// Closed-form lower bound on the minimum-weight codeword count of a
/// pre-transformed code with the Reed-Muller profile of order `r`:
/// `(8·2^{3r} - 6·2^{2r} + 2^r) / 3`.
///
/// It is attained exactly (for every pre-transform) when `r = n - 2`.
pub fn lb_rm_closed_form(r: u32) -> BigUint {
    let numerator = (BigUint::from(8u8) << (3 * r)) - (BigUint::from(6u8) << (2 * r))
        + (BigUint::from(1u8) << r);
    assert!(
        (&numerator % 3u32).is_zero(),
        "closed-form numerator not divisible by 3"
    );
    numerator / 3u32
}

/// What the profile alone says about the minimum distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDistanceStatement {
    /// The profile-induced weight `min_{i ∈ I} 2^{w(i)}`, always a lower
    /// bound on the minimum distance under any upper-triangular unit-diagonal
    /// pre-transform.
    pub wmin: u64,
    /// True for decreasing profiles: the minimum distance then equals `wmin`
    /// for every such pre-transform.
    pub guaranteed_exact: bool,
}

/// States the minimum-distance guarantee carried by the profile.
pub fn dmin_statement(spec: &CodeSpec) -> MinDistanceStatement {
    let (wmin, _) = wmin_and_coset_indices(spec);
    MinDistanceStatement {
        wmin,
        guaranteed_exact: spec.is_decreasing_profile(),
    }
}
