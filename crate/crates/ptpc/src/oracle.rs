//! Brute-force ground truth: the exhaustive weight spectrum of a code at
//! desk scale. Used by tests and the `verify` command, never by the main
//! counting algorithm, so the two routes stay independent.

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::WeightSpectrumSlice;
use crate::code_model::{encode, BitVector, CodeModelError, CodeSpec, PreTransform};

/// Default cap on the code dimension; `2^K` codewords are enumerated.
pub const DEFAULT_DIMENSION_LIMIT: usize = 24;

/// Hard cap on the block length.
pub const MAX_ORACLE_BLOCK: usize = 1 << 16;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("dimension {dimension} exceeds the oracle limit {limit}")]
    DimensionTooLarge { dimension: usize, limit: usize },
    #[error("block length {block} exceeds the oracle limit {limit}")]
    BlockTooLarge { block: usize, limit: usize },
    #[error(transparent)]
    Model(#[from] CodeModelError),
}

/// The full weight spectrum of a code's nonzero codewords.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// All weights with nonzero count, excluding the zero codeword.
    pub spectrum: WeightSpectrumSlice,
    /// The minimum nonzero weight.
    pub dmin: u64,
    /// The number of codewords at `dmin`.
    pub a_dmin: BigUint,
}

/// Tallies the weights of all `2^K` codewords by walking the message space
/// in Gray-code order, so each step XORs exactly one basis codeword into the
/// running word.
///
/// The message space is partitioned by high-order message bits into chunks
/// processed independently; tallies merge by addition, so the result does not
/// depend on the worker count.
pub fn brute_force_spectrum(
    spec: &CodeSpec,
    transform: &PreTransform,
    k_limit: usize,
) -> Result<SpectrumResult, OracleError> {
    let dimension = spec.dimension();
    if dimension > k_limit {
        return Err(OracleError::DimensionTooLarge {
            dimension,
            limit: k_limit,
        });
    }
    let block = spec.block_len();
    if block > MAX_ORACLE_BLOCK {
        return Err(OracleError::BlockTooLarge {
            block,
            limit: MAX_ORACLE_BLOCK,
        });
    }

    // Basis codewords: the images of the unit messages.
    let mut basis: Vec<Vec<u64>> = Vec::with_capacity(dimension);
    for idx in 0..dimension {
        let mut message = BitVector::zeros(dimension);
        message.set(idx, true);
        let codeword = encode(spec, transform, &message)?;
        basis.push(codeword.words().to_vec());
    }

    // Split off the high message bits as the chunk index.
    let high_bits = dimension.min(8);
    let low_bits = dimension - high_bits;
    let histogram = (0u64..1 << high_bits)
        .into_par_iter()
        .map(|chunk| walk_chunk(&basis, block, chunk, low_bits))
        .reduce(
            || vec![0u64; block + 1],
            |mut acc, part| {
                for (a, p) in acc.iter_mut().zip(part) {
                    *a += p;
                }
                acc
            },
        );

    let entries: Vec<(u64, BigUint)> = histogram
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &count)| count > 0)
        .map(|(w, &count)| (w as u64, BigUint::from(count)))
        .collect();
    let (dmin, a_dmin) = entries
        .first()
        .map(|(w, c)| (*w, c.clone()))
        .expect("a nonzero code has a nonzero codeword");
    let spectrum = WeightSpectrumSlice::new(entries).expect("histogram entries are sorted");
    Ok(SpectrumResult {
        spectrum,
        dmin,
        a_dmin,
    })
}

/// Walks the `2^low_bits` messages whose high bits equal `chunk`, returning
/// the weight histogram of their codewords.
fn walk_chunk(basis: &[Vec<u64>], block: usize, chunk: u64, low_bits: usize) -> Vec<u64> {
    let words = block.div_ceil(64);
    let mut histogram = vec![0u64; block + 1];
    let mut codeword = vec![0u64; words];
    for bit in 0..64 - chunk.leading_zeros() as usize {
        if (chunk >> bit) & 1 == 1 {
            xor_into(&mut codeword, &basis[low_bits + bit]);
        }
    }
    histogram[weight_of(&codeword)] += 1;
    for t in 1u64..1 << low_bits {
        xor_into(&mut codeword, &basis[t.trailing_zeros() as usize]);
        histogram[weight_of(&codeword)] += 1;
    }
    histogram
}

fn xor_into(acc: &mut [u64], rhs: &[u64]) {
    for (a, b) in acc.iter_mut().zip(rhs) {
        *a ^= b;
    }
}

fn weight_of(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// The number of codewords of weight exactly `w` among the nonzero messages.
pub fn brute_force_count_at(
    spec: &CodeSpec,
    transform: &PreTransform,
    w: u64,
    k_limit: usize,
) -> Result<BigUint, OracleError> {
    let result = brute_force_spectrum(spec, transform, k_limit)?;
    Ok(result.spectrum.count_at(w))
}
