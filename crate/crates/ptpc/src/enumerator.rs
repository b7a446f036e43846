//! Exact counting of minimum-weight codewords by per-coset tree enumeration.
//!
//! Every codeword is `u G_N` for a transform input `u = v T` whose leading
//! information position `i` (the coset leader) fixes most of its structure: a
//! word of weight `wmin = 2^{w(i)}` can only be the XOR of `g_i`, core rows
//! (rows `j > i` whose support outside `i` is a single bit) and the balancing
//! rows each chosen pair of core rows forces. The enumeration walks the tree
//! of core-row choices in index order and prunes it against the frozen-input
//! constraints of the systematized pre-transform:
//!
//! - a frozen position that is a core row and misses its forced parity is
//!   repaired in place by adding that core row (no branching);
//! - a frozen position that is not a core row and misses its forced parity
//!   kills the current subtree, keeping completed earlier branches.
//!
//! Positions above `f* = max({i} ∪ {frozen non-core rows})` can no longer
//! kill anything, so the walk stops there and every information core row
//! above `f*` contributes an unconstrained factor of two.
//!
//! Two short-circuits (both on by default) skip the walk where its outcome
//! is known: a coset with `f* = i` has no constraints below any core row, and
//! a decreasing profile with a constraint-free transform (a plain polar code)
//! admits `2^{|I ∩ K_i|}` minimum-weight words per coset.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bitops::{self, BitIndex};
use crate::code_model::{BitVector, CodeModelError, CodeSpec, PreTransform};

/// Everything the walk needs to know about one coset leader `i`.
#[derive(Clone, Debug)]
pub struct CosetContext {
    /// The coset leader: an information index of minimal weight.
    pub leader: BitIndex,
    /// The core rows `K_i`, ascending: rows `j > i` with `w(NOT i AND j) = 1`.
    pub core_rows: Vec<u32>,
    /// The last position whose constraint can kill a subtree:
    /// `max({i} ∪ {frozen non-core rows above i})`.
    pub f_star: BitIndex,
    /// Core rows above `f_star`, ascending.
    pub core_rows_above_f_star: Vec<u32>,
    /// Information core rows above `f_star`; each doubles the coset count.
    pub free_count: usize,
}

/// Work counters for one enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Subtrees entered, counting one per short-circuited coset.
    pub visited_subtrees: u64,
    /// Message updates applied: one per subtree entry plus one per repaired
    /// frozen core position.
    pub message_updates: u64,
    /// Frozen-position parity evaluations.
    pub pretransform_checks: u64,
}

impl std::ops::AddAssign for EnumerationStats {
    fn add_assign(&mut self, rhs: Self) {
        self.visited_subtrees += rhs.visited_subtrees;
        self.message_updates += rhs.message_updates;
        self.pretransform_checks += rhs.pretransform_checks;
    }
}

/// Knobs for an enumeration run.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Replace walks with known outcomes by their closed forms. Off, every
    /// coset is walked; the counts are identical, the counters are not.
    pub shortcircuit: bool,
    /// Worker threads for the per-coset parallelism. `None` uses the global
    /// pool's default; `Some(1)` runs strictly sequentially.
    pub threads: Option<usize>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            shortcircuit: true,
            threads: None,
        }
    }
}

/// The outcome of a full count.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    /// The profile-induced minimum weight `min_{i ∈ I} 2^{w(i)}`.
    pub wmin: u64,
    /// The exact number of codewords of weight `wmin`.
    pub awmin: BigUint,
    /// Per coset leader, ascending: the number of weight-`wmin` codewords
    /// whose transform input leads at that index.
    pub per_coset: Vec<(u32, BigUint)>,
    /// Work counters summed over all cosets.
    pub stats: EnumerationStats,
    /// True when `awmin` is zero: no codeword attains `wmin`, so the true
    /// minimum distance strictly exceeds it.
    pub dmin_exceeds_wmin: bool,
}

/// The minimum weight over the information set and the leaders attaining it,
/// ascending.
pub fn wmin_and_coset_indices(spec: &CodeSpec) -> (u64, Vec<u32>) {
    let min_exp = spec
        .info_set()
        .iter()
        .map(|i| i.count_ones())
        .min()
        .expect("information set is nonempty");
    let leaders = spec
        .info_set()
        .iter()
        .copied()
        .filter(|i| i.count_ones() == min_exp)
        .collect();
    (1u64 << min_exp, leaders)
}

/// Computes the coset structure for leader `i`.
///
/// # Panics
/// If `i` is not an information index of `spec` or the widths differ.
pub fn compute_coset_context(spec: &CodeSpec, i: BitIndex) -> CosetContext {
    assert!(i.bits() == spec.n(), "width mismatch");
    assert!(spec.is_info(i.value()), "coset leader must be an information index");
    let block = spec.block_len() as u32;
    let comp = i.complement();
    let mut core_rows = Vec::new();
    let mut f_star = i.value();
    for k in i.value() + 1..block {
        if (comp & k).count_ones() == 1 {
            core_rows.push(k);
        } else if spec.is_frozen(k) {
            f_star = k;
        }
    }
    let core_rows_above_f_star: Vec<u32> = core_rows
        .iter()
        .copied()
        .filter(|&k| k > f_star)
        .collect();
    let free_count = core_rows_above_f_star
        .iter()
        .filter(|&&k| spec.is_info(k))
        .count();
    CosetContext {
        leader: i,
        core_rows,
        f_star: BitIndex::new(f_star, spec.n()),
        core_rows_above_f_star,
        free_count,
    }
}

/// The message update that accompanies adding core row `j` to the running
/// XOR: every earlier set position `k` strictly between `i` and `j` that
/// shares no support with `j` outside `i` forces the balancing row
/// `mu_i(j, k)`, whose bit is toggled; then bit `j` is set.
///
/// Balancing rows always land strictly above `j`, so repeated updates never
/// disturb positions already scanned.
pub fn update_message(i: BitIndex, j: BitIndex, u: &BitVector) -> BitVector {
    assert!(i.bits() == j.bits(), "width mismatch");
    assert!(j.value() >= i.value(), "update position below the leader");
    assert!(u.len() == i.block_len() as usize, "message length mismatch");
    let mut out = u.clone();
    let comp = i.complement();
    for k in u.iter_ones() {
        let k = k as u32;
        if k <= i.value() || k >= j.value() {
            continue;
        }
        if comp & j.value() & k == 0 {
            let m = bitops::mu(i, j, BitIndex::new(k, i.bits()));
            out.toggle(m.value() as usize);
        }
    }
    out.set(j.value() as usize, true);
    out
}

/// Recursive walk state for one coset. Message buffers are indexed by
/// recursion depth and reused across sibling subtrees; each holds the words
/// covering positions `0..=f_star` only, since nothing above `f_star` is ever
/// read and balancing toggles beyond it cannot matter.
struct CosetWalk<'a> {
    leader: usize,
    comp: u32,
    f_star: usize,
    words: usize,
    base_word: usize,
    info_mask: &'a BitVector,
    is_core: Vec<bool>,
    transform: &'a PreTransform,
    stats: EnumerationStats,
    bufs: Vec<Vec<u64>>,
}

impl<'a> CosetWalk<'a> {
    fn new(spec: &'a CodeSpec, transform: &'a PreTransform, ctx: &CosetContext) -> Self {
        let leader = ctx.leader.value() as usize;
        let f_star = ctx.f_star.value() as usize;
        let mut is_core = vec![false; f_star + 1];
        for &k in &ctx.core_rows {
            if (k as usize) <= f_star {
                is_core[k as usize] = true;
            }
        }
        Self {
            leader,
            comp: ctx.leader.complement(),
            f_star,
            words: (f_star >> 6) + 1,
            base_word: leader >> 6,
            info_mask: spec.info_mask(),
            is_core,
            transform,
            stats: EnumerationStats::default(),
            bufs: Vec::new(),
        }
    }

    fn bit(words: &[u64], k: usize) -> bool {
        (words[k >> 6] >> (k & 63)) & 1 == 1
    }

    /// Applies the message update for adding row `j` to the buffer at `depth`.
    /// Scanned words are snapshotted, so the balancing toggles (which always
    /// land above `j`) cannot feed back into the scan.
    fn apply_update(&mut self, depth: usize, j: usize) {
        self.stats.message_updates += 1;
        if j > self.leader + 1 {
            let lo = self.leader + 1;
            let hi = j - 1;
            for wi in (lo >> 6)..=(hi >> 6) {
                let mut w = self.bufs[depth][wi];
                if wi == lo >> 6 {
                    w &= !0u64 << (lo & 63);
                }
                if wi == hi >> 6 {
                    w &= !0u64 >> (63 - (hi & 63));
                }
                while w != 0 {
                    let k = (wi << 6) + w.trailing_zeros() as usize;
                    w &= w - 1;
                    if self.comp & j as u32 & k as u32 == 0 {
                        let m = ((self.comp & (j as u32 | k as u32)) | (j as u32 & k as u32))
                            as usize;
                        debug_assert!(m > j);
                        if m <= self.f_star {
                            self.bufs[depth][m >> 6] ^= 1u64 << (m & 63);
                        }
                    }
                }
            }
        }
        debug_assert!(!Self::bit(&self.bufs[depth], j));
        self.bufs[depth][j >> 6] |= 1u64 << (j & 63);
    }

    /// The parity forced on frozen position `k` by the buffer at `depth`.
    /// Folding the ANDed words with XOR preserves the popcount parity, so a
    /// single popcount at the end suffices. Words below the leader hold no
    /// set bits and are skipped.
    fn frozen_parity(&mut self, depth: usize, k: usize) -> bool {
        self.stats.pretransform_checks += 1;
        match self.transform.frozen_column(k as u32) {
            None => false,
            Some(col) => {
                debug_assert!(col.len() <= self.words);
                let u = &self.bufs[depth];
                let mut acc = 0u64;
                for wi in self.base_word..col.len() {
                    acc ^= col[wi] & u[wi];
                }
                acc.count_ones() & 1 == 1
            }
        }
    }

    /// Counts the surviving leaves of the subtree rooted at adding row `j`
    /// (the coset leader itself at the root). The scan resumes at `j + 1` and
    /// runs to `f_star`; reaching the end means the current choice set is
    /// consistent and contributes one leaf on top of its extensions.
    fn count_leaves(&mut self, depth: usize, j: usize) -> u128 {
        self.stats.visited_subtrees += 1;
        if self.bufs.len() == depth {
            self.bufs.push(vec![0u64; self.words]);
        }
        if depth == 0 {
            self.bufs[0].fill(0);
        } else {
            let (head, tail) = self.bufs.split_at_mut(depth);
            tail[0].copy_from_slice(&head[depth - 1]);
        }
        self.apply_update(depth, j);

        let mut leaves: u128 = 0;
        for k in j + 1..=self.f_star {
            if self.info_mask.get(k) {
                if self.is_core[k] {
                    let below = self.count_leaves(depth + 1, k);
                    leaves = leaves
                        .checked_add(below)
                        .expect("leaf count exceeds 128 bits");
                }
            } else {
                let held = Self::bit(&self.bufs[depth], k);
                let forced = self.frozen_parity(depth, k);
                if held != forced {
                    if self.is_core[k] {
                        // The mismatch is repaired by adding this core row;
                        // the walk continues with the updated message.
                        debug_assert!(!held);
                        self.apply_update(depth, k);
                    } else {
                        // Unsatisfiable below this point; completed earlier
                        // branches stand.
                        return leaves;
                    }
                }
            }
        }
        leaves.checked_add(1).expect("leaf count exceeds 128 bits")
    }
}

/// Counts the minimum-weight codewords of one coset against a systematized
/// transform, together with the work counters of the run.
///
/// # Panics
/// If the transform is not systematized against `spec`.
pub fn enumerate_coset(
    spec: &CodeSpec,
    transform: &PreTransform,
    ctx: &CosetContext,
    options: &EnumerationOptions,
) -> (BigUint, EnumerationStats) {
    assert!(
        transform.is_systematized_for(spec),
        "enumeration requires a transform systematized against the profile"
    );
    let mut stats = EnumerationStats::default();
    let info_core_count = ctx
        .core_rows
        .iter()
        .filter(|&&k| spec.is_info(k))
        .count();
    if options.shortcircuit {
        let unconstrained = ctx.f_star == ctx.leader;
        let plain_decreasing =
            !transform.has_dynamic_constraints() && spec.is_decreasing_profile();
        if unconstrained || plain_decreasing {
            debug_assert!(!unconstrained || info_core_count == ctx.free_count);
            stats.visited_subtrees += 1;
            return (BigUint::from(1u8) << info_core_count, stats);
        }
    }
    let mut walk = CosetWalk::new(spec, transform, ctx);
    let leaves = walk.count_leaves(0, ctx.leader.value() as usize);
    stats = walk.stats;
    (BigUint::from(leaves) << ctx.free_count, stats)
}

/// Counts all minimum-weight codewords of the code with default options.
pub fn count_min_weight(
    spec: &CodeSpec,
    transform: &PreTransform,
) -> Result<EnumerationResult, CodeModelError> {
    count_min_weight_with(spec, transform, &EnumerationOptions::default())
}

/// Counts all minimum-weight codewords of the code.
///
/// Accepts a raw or systematized transform; a raw one is systematized first.
/// Cosets are independent and run in parallel; the per-coset results are
/// assembled in leader order, so the output is deterministic regardless of
/// thread count.
pub fn count_min_weight_with(
    spec: &CodeSpec,
    transform: &PreTransform,
    options: &EnumerationOptions,
) -> Result<EnumerationResult, CodeModelError> {
    let systematized;
    let transform = if transform.is_systematized_for(spec) {
        transform
    } else {
        systematized = transform.systematize(spec)?;
        &systematized
    };
    let (wmin, leaders) = wmin_and_coset_indices(spec);
    let run_one = |&i: &u32| {
        let ctx = compute_coset_context(spec, BitIndex::new(i, spec.n()));
        let (count, stats) = enumerate_coset(spec, transform, &ctx, options);
        (i, count, stats)
    };
    let rows: Vec<(u32, BigUint, EnumerationStats)> = match options.threads {
        Some(1) => leaders.iter().map(run_one).collect(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("failed to build worker thread pool")
            .install(|| leaders.par_iter().map(run_one).collect()),
        None => leaders.par_iter().map(run_one).collect(),
    };
    let mut awmin = BigUint::from(0u8);
    let mut stats = EnumerationStats::default();
    let mut per_coset = Vec::with_capacity(rows.len());
    for (i, count, coset_stats) in rows {
        awmin += &count;
        stats += coset_stats;
        per_coset.push((i, count));
    }
    let dmin_exceeds_wmin = num_traits::Zero::is_zero(&awmin);
    Ok(EnumerationResult {
        wmin,
        awmin,
        per_coset,
        stats,
        dmin_exceeds_wmin,
    })
}
