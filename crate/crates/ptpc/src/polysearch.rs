//! Exhaustive search over convolution polynomials for the one minimizing the
//! minimum-weight codeword count of a fixed rate profile.
//!
//! The search space for a degree cap `Q` is every polynomial with constant
//! and leading coefficient one and degree at most `Q`; these are exactly the
//! odd values below `2^{Q+1}`, each value encoding one polynomial. Candidates
//! are totally ordered by the tie-break key (count, degree, number of nonzero
//! coefficients, numeric value), so the winner is independent of evaluation
//! order and thread count.

use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::bitops::BitIndex;
use crate::code_model::{CodeModelError, CodeSpec, PacPolynomial, PreTransform};
use crate::enumerator::{
    compute_coset_context, enumerate_coset, wmin_and_coset_indices, CosetContext,
    EnumerationOptions,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("degree cap {max_degree} out of range (supported: 0..=63, below block length {block})")]
    DegreeCapOutOfRange { max_degree: u32, block: u64 },
    #[error(transparent)]
    Model(#[from] CodeModelError),
}

/// One evaluated candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialScore {
    pub polynomial: PacPolynomial,
    pub awmin: BigUint,
}

/// The outcome of a search.
#[derive(Clone, Debug)]
pub struct SearchReport {
    /// The minimizer under the tie-break key.
    pub best_polynomial: PacPolynomial,
    /// Its minimum-weight codeword count.
    pub best_awmin: BigUint,
    /// How many candidates attained `best_awmin`.
    pub ties_considered: u64,
    /// The searched degree range, inclusive.
    pub min_degree: u32,
    pub max_degree: u32,
    /// Fully evaluated candidates sorted by the tie-break key, truncated to
    /// the requested length. With early abort enabled, candidates proven
    /// strictly worse than the winner may be missing.
    pub ranked: Vec<PolynomialScore>,
}

/// Search knobs beyond the degree cap.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Inclusive cap on the polynomial degree.
    pub max_degree: u32,
    /// How many ranked rows to keep in the report.
    pub top: usize,
    /// Abort a candidate once its running per-coset sum strictly exceeds the
    /// best finished count. The winner and the tie count are unaffected: a
    /// candidate at or below the incumbent never trips the strict test.
    pub early_abort: bool,
    /// Work distribution; `threads` drives the candidate-level parallelism,
    /// while each candidate walks its cosets sequentially.
    pub enumeration: EnumerationOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_degree: 0,
            top: 10,
            early_abort: false,
            enumeration: EnumerationOptions::default(),
        }
    }
}

/// Searches all polynomials of degree at most `max_degree` with default
/// options and returns the minimizer of the minimum-weight codeword count.
pub fn search_optimal_polynomial(
    spec: &CodeSpec,
    max_degree: u32,
) -> Result<SearchReport, SearchError> {
    search_with(
        spec,
        &SearchOptions {
            max_degree,
            ..SearchOptions::default()
        },
    )
}

/// Tie-break key: smaller count, then lower degree, then fewer nonzero
/// coefficients, then smaller numeric value.
fn candidate_key(score: &PolynomialScore) -> (&BigUint, u32, u32, u64) {
    (
        &score.awmin,
        score.polynomial.degree(),
        score.polynomial.nonzero_coeffs(),
        score.polynomial.coeff_bits(),
    )
}

/// Searches all polynomials of degree at most `options.max_degree`.
///
/// The profile's coset contexts are computed once and shared across
/// candidates; each candidate builds its transform, systematizes it and sums
/// the per-coset counts.
pub fn search_with(spec: &CodeSpec, options: &SearchOptions) -> Result<SearchReport, SearchError> {
    let block = spec.block_len() as u64;
    if options.max_degree > 63 || u64::from(options.max_degree) >= block {
        return Err(SearchError::DegreeCapOutOfRange {
            max_degree: options.max_degree,
            block,
        });
    }
    let (_, leaders) = wmin_and_coset_indices(spec);
    let contexts: Vec<CosetContext> = leaders
        .iter()
        .map(|&i| compute_coset_context(spec, BitIndex::new(i, spec.n())))
        .collect();
    let coset_options = EnumerationOptions {
        shortcircuit: options.enumeration.shortcircuit,
        threads: None,
    };
    let incumbent: Mutex<Option<BigUint>> = Mutex::new(None);

    let evaluate = |coeffs: u64| -> Result<Option<PolynomialScore>, SearchError> {
        let polynomial = PacPolynomial::new(coeffs).expect("odd values are valid polynomials");
        let transform = PreTransform::pac_transform(spec, polynomial)?.systematize(spec)?;
        let mut awmin = BigUint::from(0u8);
        for ctx in &contexts {
            let (count, _) = enumerate_coset(spec, &transform, ctx, &coset_options);
            awmin += count;
            if options.early_abort {
                let best = incumbent.lock().expect("incumbent lock poisoned");
                if best.as_ref().is_some_and(|b| awmin > *b) {
                    return Ok(None);
                }
            }
        }
        {
            let mut best = incumbent.lock().expect("incumbent lock poisoned");
            if best.as_ref().map_or(true, |b| awmin < *b) {
                *best = Some(awmin.clone());
            }
        }
        Ok(Some(PolynomialScore { polynomial, awmin }))
    };

    // Every odd value below 2^{max_degree + 1} is one candidate; ascending
    // value order is also ascending degree order.
    let candidate_count = 1u64 << options.max_degree;
    let evaluated: Vec<Option<PolynomialScore>> = match options.enumeration.threads {
        Some(1) => (0..candidate_count)
            .map(|v| evaluate(2 * v + 1))
            .collect::<Result<_, _>>()?,
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build worker thread pool")
            .install(|| {
                (0..candidate_count)
                    .into_par_iter()
                    .map(|v| evaluate(2 * v + 1))
                    .collect::<Result<_, _>>()
            })?,
        None => (0..candidate_count)
            .into_par_iter()
            .map(|v| evaluate(2 * v + 1))
            .collect::<Result<_, _>>()?,
    };

    let mut finished: Vec<PolynomialScore> = evaluated.into_iter().flatten().collect();
    finished.sort_by(|a, b| candidate_key(a).cmp(&candidate_key(b)));
    let best = finished.first().cloned().expect("the search space is nonempty");
    let ties_considered = finished
        .iter()
        .take_while(|s| s.awmin == best.awmin)
        .count() as u64;
    finished.truncate(options.top);
    Ok(SearchReport {
        best_polynomial: best.polynomial,
        best_awmin: best.awmin,
        ties_considered,
        min_degree: 0,
        max_degree: options.max_degree,
        ranked: finished,
    })
}
