mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use common::{big, random_decreasing_profile, random_pac_up_to, rng};
use ptpc::bitops::BitIndex;
use ptpc::code_model::{
    polar_transform_in_place, BitVector, CodeSpec, PacPolynomial, PreTransform,
};
use ptpc::enumerator::{
    compute_coset_context, count_min_weight, count_min_weight_with, enumerate_coset,
    update_message, wmin_and_coset_indices, EnumerationOptions,
};
use ptpc::oracle::{brute_force_count_at, brute_force_spectrum, DEFAULT_DIMENSION_LIMIT};
use rand::Rng;

fn sequential(shortcircuit: bool) -> EnumerationOptions {
    EnumerationOptions {
        shortcircuit,
        threads: Some(1),
    }
}

fn rm(r: u32, n: u32) -> CodeSpec {
    CodeSpec::rm_profile(r, n).expect("valid profile")
}

fn pac(spec: &CodeSpec, octal: &str) -> PreTransform {
    let poly = PacPolynomial::from_octal(octal).expect("valid octal");
    PreTransform::pac_transform(spec, poly).expect("valid transform")
}

#[test]
fn wmin_and_leaders_follow_the_lightest_information_indices() {
    let spec = rm(2, 5);
    let (wmin, leaders) = wmin_and_coset_indices(&spec);
    assert_eq!(wmin, 8);
    assert_eq!(leaders.len(), 10);
    assert!(leaders.iter().all(|i| i.count_ones() == 3));
    assert!(leaders.windows(2).all(|p| p[0] < p[1]));

    let spec = CodeSpec::new(4, vec![10, 11, 14, 15]).expect("valid profile");
    let (wmin, leaders) = wmin_and_coset_indices(&spec);
    assert_eq!(wmin, 4);
    assert_eq!(leaders, vec![10]);
}

#[test]
fn sixteen_bit_example_profile_coset_structure_and_count() {
    let spec = CodeSpec::new(4, vec![10, 11, 14, 15]).expect("valid profile");
    let ctx = compute_coset_context(&spec, BitIndex::new(10, 4));
    assert_eq!(ctx.core_rows, vec![11, 12, 14]);
    assert_eq!(ctx.f_star.value(), 13);
    assert_eq!(ctx.core_rows_above_f_star, vec![14]);
    assert_eq!(ctx.free_count, 1);

    let transform = PreTransform::identity(4).systematize(&spec).expect("systematize");
    for shortcircuit in [false, true] {
        let (count, _) = enumerate_coset(&spec, &transform, &ctx, &sequential(shortcircuit));
        assert_eq!(count, big(4));
    }

    let result = count_min_weight(&spec, &PreTransform::identity(4)).expect("count");
    assert_eq!(result.wmin, 4);
    assert_eq!(result.awmin, big(4));
    assert_eq!(result.per_coset, vec![(10, big(4))]);
    assert!(!result.dmin_exceeds_wmin);

    let oracle = brute_force_count_at(&spec, &PreTransform::identity(4), 4, DEFAULT_DIMENSION_LIMIT)
        .expect("oracle");
    assert_eq!(oracle, big(4));
}

#[test]
fn minimum_weight_messages_of_the_example_coset_encode_to_weight_four() {
    // Walk the surviving choice sets of the example coset by hand through the
    // public update helper and check each final message encodes to weight 4.
    let i = BitIndex::new(10, 4);
    let u0 = update_message(i, i, &BitVector::zeros(16));
    // Choice {11}: no earlier support, no balancing.
    let u1 = update_message(i, BitIndex::new(11, 4), &u0);
    assert_eq!(u1.iter_ones().collect::<Vec<_>>(), vec![10, 11]);
    // Choice {11, 14}: support at 11 balances through row 15.
    let u2 = update_message(i, BitIndex::new(14, 4), &u1);
    assert_eq!(u2.iter_ones().collect::<Vec<_>>(), vec![10, 11, 14, 15]);
    for u in [u0, u1, u2] {
        let mut codeword = u.clone();
        polar_transform_in_place(&mut codeword);
        assert_eq!(codeword.count_ones(), 4);
    }
}

#[test]
fn plain_code_count_agrees_between_walk_closed_form_and_oracle() {
    let spec = rm(2, 5);
    let identity = PreTransform::identity(5);
    let walked = count_min_weight_with(&spec, &identity, &sequential(false)).expect("count");
    let closed = count_min_weight_with(&spec, &identity, &sequential(true)).expect("count");
    assert_eq!(walked.awmin, big(620));
    assert_eq!(closed.awmin, big(620));
    assert_eq!(walked.per_coset, closed.per_coset);

    let oracle = brute_force_count_at(&spec, &identity, 8, DEFAULT_DIMENSION_LIMIT).expect("oracle");
    assert_eq!(oracle, big(620));
}

#[test]
fn plain_code_closed_form_matches_full_walk_at_block_length_128() {
    let spec = rm(3, 7);
    let identity = PreTransform::identity(7);
    let walked = count_min_weight_with(&spec, &identity, &sequential(false)).expect("count");
    let closed = count_min_weight_with(&spec, &identity, &sequential(true)).expect("count");
    assert_eq!(walked.awmin, big(94488));
    assert_eq!(closed.awmin, big(94488));
    assert_eq!(walked.per_coset, closed.per_coset);
}

// The walk visits every surviving leaf, so this runs for about a minute;
// the short-circuit equality it re-proves is already covered at smaller
// sizes. Kept for manual deep checks.
#[test]
#[ignore]
fn plain_code_closed_form_matches_full_walk_at_block_length_512() {
    let spec = rm(4, 9);
    let identity = PreTransform::identity(9);
    let walked = count_min_weight_with(&spec, &identity, &sequential(false)).expect("count");
    let closed = count_min_weight_with(&spec, &identity, &sequential(true)).expect("count");
    assert_eq!(walked.awmin, big(52955952));
    assert_eq!(closed.awmin, big(52955952));
    assert_eq!(walked.per_coset, closed.per_coset);
}

#[test]
fn known_convolutional_counts() {
    let cases: &[(u32, u32, &str, u64)] = &[
        (3, 7, "155", 3120),
        (2, 5, "1027", 236),
        (2, 5, "1", 620),
        (3, 7, "5767471", 2136),
        (2, 5, "5767471", 236),
    ];
    for &(r, n, octal, expected) in cases {
        let spec = rm(r, n);
        let result = count_min_weight(&spec, &pac(&spec, octal)).expect("count");
        assert_eq!(
            result.awmin,
            big(expected),
            "rm({r},{n}) with polynomial {octal}"
        );
        assert!(!result.dmin_exceeds_wmin);
        let sum: BigUint = result.per_coset.iter().map(|(_, c)| c).sum();
        assert_eq!(sum, result.awmin);
    }
}

#[test]
fn convolutional_count_matches_oracle_at_dimension_16() {
    let spec = rm(2, 5);
    let transform = pac(&spec, "1027");
    let result = count_min_weight(&spec, &transform).expect("count");
    let oracle = brute_force_spectrum(&spec, &transform, DEFAULT_DIMENSION_LIMIT).expect("oracle");
    assert_eq!(oracle.dmin, result.wmin);
    assert_eq!(oracle.a_dmin, result.awmin);
}

#[test]
fn work_counters_stay_near_the_reference_run_at_block_length_32() {
    let spec = rm(2, 5);
    let transform = pac(&spec, "5767471");
    let result =
        count_min_weight_with(&spec, &transform, &sequential(false)).expect("count");
    let stats = result.stats;
    eprintln!(
        "n=5 counters: visited={} updates={} checks={}",
        stats.visited_subtrees, stats.message_updates, stats.pretransform_checks
    );
    for (actual, reference) in [
        (stats.visited_subtrees, 284),
        (stats.message_updates, 345),
        (stats.pretransform_checks, 398),
    ] {
        assert!(
            actual * 4 >= reference && actual <= reference * 4,
            "counter {actual} outside factor-4 window of {reference}"
        );
    }
}

#[test]
fn unsatisfiable_constraints_raise_the_minimum_distance_flag() {
    // Profile {3, 15} at N=16: the only minimum-weight coset leader is 3, and
    // a transform feeding frozen position 12 (not a core row of 3) forces a
    // parity no minimum-weight message can satisfy.
    let spec = CodeSpec::new(4, vec![3, 15]).expect("valid profile");
    let mut rows = BTreeMap::new();
    let mut row = BitVector::zeros(16);
    row.set(3, true);
    row.set(12, true);
    rows.insert(3, row);
    let transform = PreTransform::from_rows(4, rows).expect("valid rows");

    let result = count_min_weight(&spec, &transform).expect("count");
    assert_eq!(result.wmin, 4);
    assert!(result.awmin.is_zero());
    assert!(result.dmin_exceeds_wmin);

    let oracle = brute_force_spectrum(&spec, &transform, DEFAULT_DIMENSION_LIMIT).expect("oracle");
    assert!(oracle.dmin > 4);
}

#[test]
fn shortcircuit_toggle_never_changes_counts_only_counters() {
    let mut rng = rng(0x5eed_0001);
    for trial in 0..40 {
        let n = rng.gen_range(3..=5);
        let spec = random_decreasing_profile(n, 16, &mut rng);
        let transform = match trial % 3 {
            0 => PreTransform::identity(n),
            1 => {
                let poly = random_pac_up_to(6.min((1 << n) - 1), &mut rng);
                PreTransform::pac_transform(&spec, poly).expect("valid transform")
            }
            _ => PreTransform::random_transform(&spec, rng.gen()),
        };
        let on = count_min_weight_with(&spec, &transform, &sequential(true)).expect("count");
        let off = count_min_weight_with(&spec, &transform, &sequential(false)).expect("count");
        assert_eq!(on.awmin, off.awmin, "trial {trial}");
        assert_eq!(on.per_coset, off.per_coset, "trial {trial}");
    }
}

#[test]
fn enumerator_agrees_with_oracle_on_random_instances() {
    let mut rng = rng(0x5eed_0002);
    for trial in 0..60 {
        let n = rng.gen_range(3..=6);
        let spec = if trial % 2 == 0 {
            let r = rng.gen_range(0..=n);
            rm(r, n)
        } else {
            random_decreasing_profile(n, 18, &mut rng)
        };
        if spec.dimension() > 18 {
            continue;
        }
        let transform = match trial % 3 {
            0 => PreTransform::identity(n),
            1 => {
                let poly = random_pac_up_to(8.min((1 << n) - 1), &mut rng);
                PreTransform::pac_transform(&spec, poly).expect("valid transform")
            }
            _ => PreTransform::random_transform(&spec, rng.gen()),
        };
        let result = count_min_weight(&spec, &transform).expect("count");
        let oracle = brute_force_spectrum(&spec, &transform, 18).expect("oracle");
        assert_eq!(
            result.awmin,
            oracle.spectrum.count_at(result.wmin),
            "trial {trial}: count mismatch at wmin={}",
            result.wmin
        );
        assert_eq!(
            result.dmin_exceeds_wmin,
            oracle.dmin > result.wmin,
            "trial {trial}: flag mismatch (oracle dmin={})",
            oracle.dmin
        );
        assert!(oracle.dmin >= result.wmin, "trial {trial}: bound violated");
    }
}

#[test]
fn parallel_and_sequential_runs_agree_exactly() {
    let spec = rm(3, 7);
    let transform = pac(&spec, "155");
    let sequential_run =
        count_min_weight_with(&spec, &transform, &sequential(true)).expect("count");
    let parallel_run = count_min_weight_with(
        &spec,
        &transform,
        &EnumerationOptions {
            shortcircuit: true,
            threads: Some(3),
        },
    )
    .expect("count");
    assert_eq!(sequential_run.awmin, parallel_run.awmin);
    assert_eq!(sequential_run.per_coset, parallel_run.per_coset);
    assert_eq!(sequential_run.stats, parallel_run.stats);
}

#[test]
fn every_core_choice_set_balances_to_a_minimum_weight_word() {
    // On a plain decreasing code every choice of information core rows
    // survives, so the chained update must always land on a weight-wmin
    // codeword; this exercises the balancing-row mechanics directly.
    let mut rng = rng(0x5eed_0003);
    let spec = rm(2, 5);
    let (wmin, leaders) = wmin_and_coset_indices(&spec);
    for trial in 0..100 {
        let leader = leaders[rng.gen_range(0..leaders.len())];
        let i = BitIndex::new(leader, spec.n());
        let ctx = compute_coset_context(&spec, i);
        let info_cores: Vec<u32> = ctx
            .core_rows
            .iter()
            .copied()
            .filter(|&k| spec.is_info(k))
            .collect();
        let mut u = update_message(i, i, &BitVector::zeros(spec.block_len()));
        for &row in &info_cores {
            if rng.gen_bool(0.5) {
                u = update_message(i, BitIndex::new(row, spec.n()), &u);
            }
        }
        let mut codeword = u;
        polar_transform_in_place(&mut codeword);
        assert_eq!(codeword.count_ones(), wmin, "trial {trial} leader {leader}");
    }
}
