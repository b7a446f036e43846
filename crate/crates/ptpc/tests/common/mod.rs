//! Helpers shared by the integration test binaries.
#![allow(dead_code)]

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptpc::code_model::{CodeSpec, PacPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(value: u64) -> BigUint {
    BigUint::from(value)
}

/// Closes a seed set upward under the polar partial order by saturating the
/// two generator moves (single bit raise, single adjacent left swap).
pub fn upward_closure(n: u32, seeds: &[u32]) -> Vec<u32> {
    let block = 1usize << n;
    let mut member = vec![false; block];
    let mut queue: Vec<u32> = Vec::new();
    for &s in seeds {
        if !member[s as usize] {
            member[s as usize] = true;
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for l in 0..n {
            let bit = 1u32 << l;
            let next = if v & bit == 0 {
                v | bit
            } else if l + 1 < n && v & (bit << 1) == 0 {
                v + bit
            } else {
                continue;
            };
            if !member[next as usize] {
                member[next as usize] = true;
                queue.push(next);
            }
        }
    }
    (0..block as u32).filter(|&i| member[i as usize]).collect()
}

/// A random decreasing profile with at most `max_dimension` information
/// indices: the upward closure of one or two random seed indices, resampled
/// until it is small enough.
pub fn random_decreasing_profile(
    n: u32,
    max_dimension: usize,
    rng: &mut ChaCha8Rng,
) -> CodeSpec {
    let block = 1u32 << n;
    for _ in 0..300 {
        let mut seeds = vec![rng.gen_range(block / 2..block)];
        if rng.gen_bool(0.5) {
            seeds.push(rng.gen_range(block / 2..block));
        }
        let info = upward_closure(n, &seeds);
        if info.len() <= max_dimension {
            return CodeSpec::new(n, info).expect("closure is a valid profile");
        }
    }
    CodeSpec::new(n, vec![block - 1]).expect("single-index profile is valid")
}

/// A uniformly random nonempty profile (no structure guaranteed).
pub fn random_profile(n: u32, rng: &mut ChaCha8Rng) -> CodeSpec {
    let block = 1u32 << n;
    loop {
        let info: Vec<u32> = (0..block).filter(|_| rng.gen_bool(0.5)).collect();
        if !info.is_empty() {
            return CodeSpec::new(n, info).expect("sampled profile is valid");
        }
    }
}

/// A random convolution polynomial of degree exactly `degree`, or of a random
/// degree up to `max_degree` when sampled through [`random_pac_up_to`].
pub fn random_pac_of_degree(degree: u32, rng: &mut ChaCha8Rng) -> PacPolynomial {
    assert!(degree < 64);
    let middle_mask = if degree < 2 {
        0
    } else {
        ((1u64 << degree) - 1) & !1
    };
    let coeffs = 1 | (1u64 << degree) | (rng.gen::<u64>() & middle_mask);
    PacPolynomial::new(coeffs).expect("constructed coefficients are valid")
}

pub fn random_pac_up_to(max_degree: u32, rng: &mut ChaCha8Rng) -> PacPolynomial {
    let degree = rng.gen_range(0..=max_degree);
    random_pac_of_degree(degree, rng)
}
