mod common;

use common::{big, random_pac_up_to, random_profile, rng};
use num_bigint::BigUint;
use ptpc::code_model::{encode, BitVector, CodeSpec, PreTransform};
use ptpc::oracle::{
    brute_force_count_at, brute_force_spectrum, OracleError, DEFAULT_DIMENSION_LIMIT,
};
use rand::Rng;

/// Reference tally that encodes every message directly, with none of the
/// incremental walking the production oracle uses.
fn naive_spectrum(spec: &CodeSpec, transform: &PreTransform) -> Vec<(u64, BigUint)> {
    let k = spec.dimension();
    let mut counts = std::collections::BTreeMap::new();
    for bits in 1u64..1 << k {
        let mut m = BitVector::zeros(k);
        for idx in 0..k {
            if bits >> idx & 1 == 1 {
                m.set(idx, true);
            }
        }
        let w = encode(spec, transform, &m).unwrap().count_ones();
        *counts.entry(w).or_insert_with(BigUint::default) += 1u32;
    }
    counts.into_iter().collect()
}

#[test]
fn first_order_length_8_spectrum() {
    let spec = CodeSpec::rm_profile(1, 3).unwrap();
    let t = PreTransform::identity(3);
    let result = brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT).unwrap();
    assert_eq!(result.dmin, 4);
    assert_eq!(result.a_dmin, big(14));
    assert_eq!(
        result.spectrum.entries(),
        &[(4, big(14)), (8, big(1))],
        "full spectrum"
    );
}

#[test]
fn single_row_code_spectrum() {
    for (n, i) in [(3u32, 5u32), (4, 7), (5, 21)] {
        let spec = CodeSpec::new(n, vec![i]).unwrap();
        let t = PreTransform::identity(n);
        let result = brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT).unwrap();
        let expected_weight = 1u64 << i.count_ones();
        assert_eq!(result.spectrum.entries(), &[(expected_weight, big(1))]);
    }
}

#[test]
fn spectrum_totals_count_every_nonzero_message() {
    let mut r = rng(810);
    for _ in 0..20 {
        let n = r.gen_range(2..=5);
        let spec = random_profile(n, &mut r);
        let t = PreTransform::random_transform(&spec, r.gen());
        let result = brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT).unwrap();
        let total: BigUint = result
            .spectrum
            .entries()
            .iter()
            .map(|(_, c)| c.clone())
            .sum();
        let expected = (BigUint::from(1u8) << spec.dimension()) - 1u32;
        assert_eq!(total, expected);
    }
}

#[test]
fn chunked_walk_matches_naive_enumeration() {
    let mut r = rng(811);
    // Dimension 11 exercises the chunked path; tiny dimensions the direct one.
    for _ in 0..8 {
        let spec = loop {
            let candidate = random_profile(4, &mut r);
            if candidate.dimension() >= 10 {
                break candidate;
            }
        };
        let t = PreTransform::random_transform(&spec, r.gen());
        let result = brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT).unwrap();
        let naive = naive_spectrum(&spec, &t);
        assert_eq!(result.spectrum.entries(), naive.as_slice());
    }
    for _ in 0..8 {
        let spec = loop {
            let candidate = random_profile(3, &mut r);
            if candidate.dimension() <= 4 {
                break candidate;
            }
        };
        let p = random_pac_up_to(5, &mut r);
        let t = PreTransform::pac_transform(&spec, p).unwrap();
        let result = brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT).unwrap();
        let naive = naive_spectrum(&spec, &t);
        assert_eq!(result.spectrum.entries(), naive.as_slice());
    }
}

#[test]
fn spectrum_is_invariant_under_systematization() {
    let mut r = rng(812);
    for _ in 0..15 {
        let n = r.gen_range(3..=5);
        let spec = random_profile(n, &mut r);
        let raw = PreTransform::random_transform(&spec, r.gen());
        let sys = raw.systematize(&spec).unwrap();
        let a = brute_force_spectrum(&spec, &raw, DEFAULT_DIMENSION_LIMIT).unwrap();
        let b = brute_force_spectrum(&spec, &sys, DEFAULT_DIMENSION_LIMIT).unwrap();
        assert_eq!(a.spectrum.entries(), b.spectrum.entries());
    }
}

#[test]
fn count_at_agrees_with_spectrum() {
    let spec = CodeSpec::rm_profile(1, 3).unwrap();
    let t = PreTransform::identity(3);
    assert_eq!(
        brute_force_count_at(&spec, &t, 4, DEFAULT_DIMENSION_LIMIT).unwrap(),
        big(14)
    );
    assert_eq!(
        brute_force_count_at(&spec, &t, 8, DEFAULT_DIMENSION_LIMIT).unwrap(),
        big(1)
    );
    assert_eq!(
        brute_force_count_at(&spec, &t, 6, DEFAULT_DIMENSION_LIMIT).unwrap(),
        BigUint::default()
    );
    assert_eq!(
        brute_force_count_at(&spec, &t, 0, DEFAULT_DIMENSION_LIMIT).unwrap(),
        BigUint::default()
    );
}

#[test]
fn dimension_and_block_limits() {
    let spec = CodeSpec::rm_profile(1, 3).unwrap();
    let t = PreTransform::identity(3);
    assert!(matches!(
        brute_force_spectrum(&spec, &t, 3),
        Err(OracleError::DimensionTooLarge { .. })
    ));

    let wide = CodeSpec::new(17, vec![0]).unwrap();
    let tw = PreTransform::identity(17);
    assert!(matches!(
        brute_force_spectrum(&wide, &tw, DEFAULT_DIMENSION_LIMIT),
        Err(OracleError::BlockTooLarge { .. })
    ));
}

#[test]
fn explicit_limit_extends_past_the_default() {
    // Order n-2 at n=5 has dimension 26; the closed-form count 1240 at
    // weight 4 is confirmed by exhausting all 2^26 messages.
    let spec = CodeSpec::rm_profile(3, 5).unwrap();
    assert_eq!(spec.dimension(), 26);
    let t = PreTransform::identity(5);
    assert!(matches!(
        brute_force_spectrum(&spec, &t, DEFAULT_DIMENSION_LIMIT),
        Err(OracleError::DimensionTooLarge { .. })
    ));
    let result = brute_force_spectrum(&spec, &t, 26).unwrap();
    assert_eq!(result.dmin, 4);
    assert_eq!(result.a_dmin, big(1240));
}
