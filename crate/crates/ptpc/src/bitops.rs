//! Word-level arithmetic on row indices of the polar transform.
//!
//! Row `i` of `G_N = [[1,0],[1,1]]^{⊗n}` has support `{j : supp(j) ⊇ supp(i)}`
//! when indices are read as length-`n` bit strings, so row weights, XOR-sum
//! weights, core-row membership and the polar partial order all reduce to
//! popcounts and masks on the indices. No rows are materialized here.

use std::collections::HashSet;

/// Largest supported bit width. Keeps every index, mask and weight comfortably
/// inside `u32`/`u64` arithmetic; block lengths beyond `2^24` are far outside
/// the reach of the enumeration anyway.
pub const MAX_BITS: u32 = 24;

/// A row index of `G_N` carrying its bit width `n` (block length `N = 2^n`).
///
/// Mixing indices of different widths is a caller bug and every binary
/// operation asserts against it: the complement of an index, and therefore
/// most derived quantities, depend on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitIndex {
    value: u32,
    n: u32,
}

impl BitIndex {
    /// Wraps `value` as an index into the `2^n` rows of `G_N`.
    ///
    /// # Panics
    /// If `n` is zero, exceeds [`MAX_BITS`], or `value >= 2^n`.
    pub fn new(value: u32, n: u32) -> Self {
        assert!((1..=MAX_BITS).contains(&n), "bit width {n} out of range");
        assert!(
            value < (1u32 << n),
            "index {value} out of range for n = {n}"
        );
        Self { value, n }
    }

    /// The numeric index value.
    pub fn value(self) -> u32 {
        self.value
    }

    /// The bit width `n`.
    pub fn bits(self) -> u32 {
        self.n
    }

    /// The block length `N = 2^n`.
    pub fn block_len(self) -> u32 {
        1 << self.n
    }

    /// Hamming weight of the index, `w(i) = |supp(i)|`.
    pub fn weight(self) -> u32 {
        self.value.count_ones()
    }

    /// The complement of the index within `n` bits.
    pub fn complement(self) -> u32 {
        !self.value & ((1u32 << self.n) - 1)
    }

    fn assert_same_width(self, other: Self) {
        assert!(
            self.n == other.n,
            "mixed bit widths {} and {}",
            self.n,
            other.n
        );
    }
}

/// Weight of row `i` of `G_N`: `2^{w(i)}`.
pub fn row_weight(i: BitIndex) -> u64 {
    1u64 << i.weight()
}

/// Weight of the XOR of two distinct rows of `G_N`:
/// `2^{w(i)} + 2^{w(j)} - 2^{w(i AND j) + 1}`.
///
/// A row's support is the set of submasks of its index, so the supports of
/// `g_i` and `g_j` intersect in the `2^{w(i AND j)}` submasks of `i AND j`;
/// those positions cancel in the XOR and are subtracted from each row's
/// weight once.
///
/// # Panics
/// If `i == j` (the XOR would be the zero word, which no caller should ask
/// about) or the widths differ.
pub fn merged_row_weight(i: BitIndex, j: BitIndex) -> u64 {
    i.assert_same_width(j);
    assert!(i.value != j.value, "merged weight of a row with itself");
    let overlap = (i.value & j.value).count_ones();
    (1u64 << i.weight()) + (1u64 << j.weight()) - (1u64 << (overlap + 1))
}

/// Whether `j` is a core row of the coset led by `i`: `j > i` and the support
/// of `j` outside `i` is a single bit, `w(NOT i AND j) = 1`.
///
/// Adding a core row to `g_i` keeps the merged weight at `2^{w(i)}`; all
/// minimum-weight words of the coset are sums of `g_i` with rows drawn from
/// core rows and the balancing rows they force.
///
/// # Panics
/// If `j <= i` (core rows are defined only above the leader) or widths differ.
pub fn is_core(i: BitIndex, j: BitIndex) -> bool {
    i.assert_same_width(j);
    assert!(j.value > i.value, "core test requires j > i");
    (i.complement() & j.value).count_ones() == 1
}

/// The balancing row forced by the core pair: for `i < min(j, k)` with
/// `NOT i AND j AND k = 0`,
/// `mu_i(j, k) = (NOT i AND (j OR k)) OR (j AND k)`.
///
/// Including rows `j` and `k` alongside `g_i` pushes weight onto positions
/// outside the minimum-weight support unless row `mu_i(j, k)` is included too.
/// The result always exceeds `max(j, k)`, which keeps the enumeration's
/// forward scan stable: updates only ever touch positions not yet visited.
///
/// # Panics
/// If the widths differ, `i >= min(j, k)`, or `NOT i AND j AND k != 0`.
pub fn mu(i: BitIndex, j: BitIndex, k: BitIndex) -> BitIndex {
    i.assert_same_width(j);
    i.assert_same_width(k);
    assert!(
        i.value < j.value.min(k.value),
        "mu requires i < min(j, k)"
    );
    assert!(
        i.complement() & j.value & k.value == 0,
        "mu requires j and k to agree with i on their shared support"
    );
    let value = (i.complement() & (j.value | k.value)) | (j.value & k.value);
    debug_assert!(value > j.value.max(k.value));
    BitIndex::new(value, i.n)
}

/// Whether `i` precedes `j` in the polar partial order.
///
/// The order is generated by two moves and their transitive closure: raising a
/// single zero bit to one, and swapping an adjacent pair `(1, 0)` at positions
/// `(l, l+1)` into `(0, 1)`. Both moves strictly increase the value, so the
/// reachability search below always terminates.
pub fn partial_order_leq(i: BitIndex, j: BitIndex) -> bool {
    i.assert_same_width(j);
    let (a, b) = (i.value, j.value);
    let n = i.n;
    if a == b {
        return true;
    }
    // Both generators increase the value, and only bit raises increase the
    // weight, so these two prunes are sound.
    if a > b || a.count_ones() > b.count_ones() {
        return false;
    }
    // Binary domination is reachable by bit raises alone.
    if a & !b == 0 {
        return true;
    }
    let mut seen = HashSet::new();
    let mut queue = vec![a];
    seen.insert(a);
    while let Some(v) = queue.pop() {
        for l in 0..n {
            let bit = 1u32 << l;
            let mut next = 0u32;
            if v & bit == 0 {
                next = v | bit;
            } else if l + 1 < n && v & (bit << 1) == 0 {
                next = v + bit;
            }
            if next == 0 || next > b {
                continue;
            }
            if next == b || next & !b == 0 {
                return true;
            }
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    false
}
