//! Code construction: rate profiles, pre-transforms, systematization and
//! encoding.
//!
//! A code instance is a pair of a [`CodeSpec`] (bit width `n` plus the
//! information set `I ⊆ Z_{2^n}`) and an upper-triangular [`PreTransform`]
//! `T` with unit diagonal on `I`. Encoding scatters the message onto `I`,
//! multiplies by `T`, then applies the polar transform `G_N`.
//!
//! [`PreTransform::systematize`] rewrites `T` so that its restriction to the
//! information rows carries an identity on the information columns and all
//! frozen rows are zero. This leaves the code unchanged (row operations within
//! the spanning set, and frozen rows never receive a nonzero input) but makes
//! every frozen transform input an explicit parity of earlier information
//! bits, which is the form the enumeration consumes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitops::MAX_BITS;

/// Errors produced while building or combining code components.
#[derive(Debug, Error)]
pub enum CodeModelError {
    #[error("bit width {n} out of range (supported: 1..={MAX_BITS})")]
    BitWidthOutOfRange { n: u32 },
    #[error("information set is empty")]
    EmptyInformationSet,
    #[error("information index {index} out of range for n = {n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("duplicate information index {index}")]
    DuplicateIndex { index: u32 },
    #[error("order r = {r} exceeds bit width n = {n}")]
    OrderOutOfRange { r: u32, n: u32 },
    #[error("polynomial must be nonzero")]
    PolynomialZero,
    #[error("polynomial must have constant coefficient 1")]
    PolynomialConstantTerm,
    #[error("polynomial degree {degree} must be below the block length {block}")]
    PolynomialDegreeTooLarge { degree: u32, block: u64 },
    #[error("invalid octal literal {literal:?}")]
    InvalidOctalLiteral { literal: String },
    #[error("octal literal {literal:?} overflows 64 bits")]
    OctalOverflow { literal: String },
    #[error("transform width n = {transform} does not match profile width n = {profile}")]
    WidthMismatch { transform: u32, profile: u32 },
    #[error("transform row {row} lacks its unit diagonal entry")]
    MissingDiagonal { row: u32 },
    #[error("message has {got} bits, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> CodeModelError {
    CodeModelError::Parse {
        line,
        message: message.into(),
    }
}

/// A packed bit vector with all unused high bits held at zero, so equality
/// and popcounts work directly on the backing words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The all-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// A vector with ones exactly at `indices`.
    ///
    /// # Panics
    /// If any index is out of range.
    pub fn from_indices(len: usize, indices: &[u32]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i as usize, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    /// If `index >= len`.
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit {index} out of range ({})", self.len);
        (self.words[index >> 6] >> (index & 63)) & 1 == 1
    }

    /// # Panics
    /// If `index >= len`.
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit {index} out of range ({})", self.len);
        let mask = 1u64 << (index & 63);
        if value {
            self.words[index >> 6] |= mask;
        } else {
            self.words[index >> 6] &= !mask;
        }
    }

    /// # Panics
    /// If `index >= len`.
    pub fn toggle(&mut self, index: usize) {
        assert!(index < self.len, "bit {index} out of range ({})", self.len);
        self.words[index >> 6] ^= 1u64 << (index & 63);
    }

    /// XORs `rhs` into `self`.
    ///
    /// # Panics
    /// If the lengths differ.
    pub fn xor_assign(&mut self, rhs: &BitVector) {
        assert!(self.len == rhs.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |rest| {
                    let rest = rest & (rest - 1);
                    if rest == 0 {
                        None
                    } else {
                        Some(rest)
                    }
                },
            )
            .map(move |rest| (wi << 6) + rest.trailing_zeros() as usize)
        })
    }

    /// The backing words, least significant bit first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}; ", self.len)?;
        let mut first = true;
        for i in self.iter_ones() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "]")
    }
}

/// A rate profile: the bit width `n` and the sorted information set `I`.
#[derive(Debug)]
pub struct CodeSpec {
    n: u32,
    info: Vec<u32>,
    info_mask: BitVector,
    decreasing: OnceLock<bool>,
}

impl Clone for CodeSpec {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            info: self.info.clone(),
            info_mask: self.info_mask.clone(),
            decreasing: self.decreasing.clone(),
        }
    }
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.info == other.info
    }
}

impl Eq for CodeSpec {}

impl CodeSpec {
    /// Builds a profile from an arbitrary information set. The indices are
    /// sorted and checked for range and duplicates.
    pub fn new(n: u32, mut info: Vec<u32>) -> Result<Self, CodeModelError> {
        if !(1..=MAX_BITS).contains(&n) {
            return Err(CodeModelError::BitWidthOutOfRange { n });
        }
        if info.is_empty() {
            return Err(CodeModelError::EmptyInformationSet);
        }
        info.sort_unstable();
        let block = 1u32 << n;
        for pair in info.windows(2) {
            if pair[0] == pair[1] {
                return Err(CodeModelError::DuplicateIndex { index: pair[0] });
            }
        }
        if let Some(&last) = info.last() {
            if last >= block {
                return Err(CodeModelError::IndexOutOfRange { index: last, n });
            }
        }
        let info_mask = BitVector::from_indices(block as usize, &info);
        Ok(Self {
            n,
            info,
            info_mask,
            decreasing: OnceLock::new(),
        })
    }

    /// The Reed-Muller profile of order `r`: all indices of weight at least
    /// `n - r`.
    pub fn rm_profile(r: u32, n: u32) -> Result<Self, CodeModelError> {
        if !(1..=MAX_BITS).contains(&n) {
            return Err(CodeModelError::BitWidthOutOfRange { n });
        }
        if r > n {
            return Err(CodeModelError::OrderOutOfRange { r, n });
        }
        let info = (0..1u32 << n)
            .filter(|i| i.count_ones() >= n - r)
            .collect();
        Self::new(n, info)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The block length `N = 2^n`.
    pub fn block_len(&self) -> usize {
        1usize << self.n
    }

    /// The code dimension `K = |I|`.
    pub fn dimension(&self) -> usize {
        self.info.len()
    }

    /// The code rate `K / N`.
    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.block_len() as f64
    }

    /// The information set, sorted ascending.
    pub fn info_set(&self) -> &[u32] {
        &self.info
    }

    /// Membership mask over `Z_N`: bit `i` is set iff `i ∈ I`.
    pub fn info_mask(&self) -> &BitVector {
        &self.info_mask
    }

    pub fn is_info(&self, index: u32) -> bool {
        self.info_mask.get(index as usize)
    }

    pub fn is_frozen(&self, index: u32) -> bool {
        !self.is_info(index)
    }

    /// Whether the profile is decreasing: the information set is closed
    /// upward under the polar partial order, so every index that dominates an
    /// information index is itself an information index.
    ///
    /// The result is cached; profiles are immutable.
    pub fn is_decreasing_profile(&self) -> bool {
        *self.decreasing.get_or_init(|| self.compute_decreasing())
    }

    fn compute_decreasing(&self) -> bool {
        // The order is generated by single bit raises and single adjacent
        // left swaps, so closure under those two moves implies closure under
        // the full order.
        for &i in &self.info {
            for l in 0..self.n {
                let bit = 1u32 << l;
                if i & bit == 0 {
                    // Dropping a bit of a successor is raising a bit of i.
                    if !self.is_info(i | bit) {
                        return false;
                    }
                } else if l + 1 < self.n && i & (bit << 1) == 0 && !self.is_info(i + bit) {
                    return false;
                }
            }
        }
        true
    }

    /// Parses the profile file format: `#` starts a comment, the first
    /// significant line is `n=<int>`, and every following significant line is
    /// one decimal information index.
    pub fn from_profile_text(text: &str) -> Result<Self, CodeModelError> {
        let mut n: Option<u32> = None;
        let mut info: Vec<u32> = Vec::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let value = line
                        .strip_prefix('n')
                        .map(str::trim_start)
                        .and_then(|rest| rest.strip_prefix('='))
                        .map(str::trim)
                        .ok_or_else(|| parse_err(line_no, "expected header n=<int>"))?;
                    let parsed: u32 = value
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("invalid bit width {value:?}")))?;
                    if !(1..=MAX_BITS).contains(&parsed) {
                        return Err(parse_err(
                            line_no,
                            format!("bit width {parsed} out of range (supported: 1..={MAX_BITS})"),
                        ));
                    }
                    n = Some(parsed);
                }
                Some(width) => {
                    let index: u32 = line.parse().map_err(|_| {
                        parse_err(line_no, format!("invalid information index {line:?}"))
                    })?;
                    if index >= 1u32 << width {
                        return Err(parse_err(
                            line_no,
                            format!("information index {index} out of range for n = {width}"),
                        ));
                    }
                    if info.contains(&index) {
                        return Err(parse_err(
                            line_no,
                            format!("duplicate information index {index}"),
                        ));
                    }
                    info.push(index);
                }
            }
        }
        let n = n.ok_or_else(|| parse_err(1, "missing header n=<int>"))?;
        if info.is_empty() {
            return Err(parse_err(1, "profile lists no information indices"));
        }
        Self::new(n, info)
    }

    /// Renders the profile in the format accepted by
    /// [`CodeSpec::from_profile_text`].
    pub fn to_profile_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &i in &self.info {
            out.push_str(&format!("{i}\n"));
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// A binary convolution polynomial `p(x) = Σ p_d x^d` with `p_0 = 1`, stored
/// with coefficient `p_d` in bit `d`. The degree is the position of the most
/// significant set bit, so the leading coefficient is one by construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PacPolynomial {
    coeffs: u64,
}

impl PacPolynomial {
    /// Builds a polynomial from packed coefficients.
    pub fn new(coeffs: u64) -> Result<Self, CodeModelError> {
        if coeffs == 0 {
            return Err(CodeModelError::PolynomialZero);
        }
        if coeffs & 1 == 0 {
            return Err(CodeModelError::PolynomialConstantTerm);
        }
        Ok(Self { coeffs })
    }

    /// Parses the conventional octal rendering, with or without the `_8`
    /// suffix: `155` and `155_8` both denote `x^6 + x^5 + x^3 + x^2 + 1`.
    pub fn from_octal(literal: &str) -> Result<Self, CodeModelError> {
        let digits = literal.strip_suffix("_8").unwrap_or(literal);
        if digits.is_empty() || !digits.bytes().all(|b| (b'0'..=b'7').contains(&b)) {
            return Err(CodeModelError::InvalidOctalLiteral {
                literal: literal.to_string(),
            });
        }
        let coeffs = u64::from_str_radix(digits, 8).map_err(|_| CodeModelError::OctalOverflow {
            literal: literal.to_string(),
        })?;
        Self::new(coeffs)
    }

    /// The packed coefficients, `p_d` in bit `d`.
    pub fn coeff_bits(self) -> u64 {
        self.coeffs
    }

    /// The degree `q` (position of the leading coefficient).
    pub fn degree(self) -> u32 {
        63 - self.coeffs.leading_zeros()
    }

    /// Coefficient `p_d`.
    pub fn coeff(self, d: u32) -> bool {
        d < 64 && (self.coeffs >> d) & 1 == 1
    }

    /// Number of nonzero coefficients.
    pub fn nonzero_coeffs(self) -> u32 {
        self.coeffs.count_ones()
    }

    /// The conventional octal rendering with the `_8` suffix.
    pub fn to_octal_string(self) -> String {
        format!("{:o}_8", self.coeffs)
    }
}

impl fmt::Display for PacPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_octal_string())
    }
}

impl fmt::Debug for PacPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PacPolynomial({})", self.to_octal_string())
    }
}

/// How a pre-transform was constructed; echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// The identity: a plain polar code.
    Identity,
    /// Upper-triangular Toeplitz from a convolution polynomial (a PAC code).
    Convolution(PacPolynomial),
    /// Seeded random strictly-upper fill on the information rows.
    Random { seed: u64 },
    /// Explicit rows, typically loaded from a file.
    Explicit,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformKind::Identity => f.write_str("identity"),
            TransformKind::Convolution(p) => write!(f, "convolution {p}"),
            TransformKind::Random { seed } => write!(f, "random seed={seed}"),
            TransformKind::Explicit => f.write_str("explicit"),
        }
    }
}

#[derive(Clone)]
enum RowStorage {
    /// Every row is a unit row.
    Identity,
    /// Row `h` holds coefficient `p_d` at column `h + d`, for every row.
    Toeplitz(PacPolynomial),
    /// Explicit rows; a missing row is a unit row before systematization and
    /// a zero row after it.
    Rows(BTreeMap<u32, BitVector>),
}

/// Systematized structure: per frozen column `f`, the set of information rows
/// `h` with `t_{h,f} = 1`, packed over absolute row positions. `None` marks an
/// all-zero column. The parity of a transform input `u` against column `f`
/// is the forced value of `u_f`.
#[derive(Clone)]
struct Systematized {
    info: Vec<u32>,
    columns: Vec<Option<Box<[u64]>>>,
    dynamic: bool,
}

/// An upper-triangular pre-transform over `F_2^{N}` with unit diagonal on the
/// information rows. Frozen rows never receive a nonzero input, so they are
/// irrelevant before systematization and zero after it.
#[derive(Clone)]
pub struct PreTransform {
    n: u32,
    kind: TransformKind,
    rows: RowStorage,
    systematized: Option<Systematized>,
}

impl PreTransform {
    /// The identity pre-transform: a plain polar code.
    pub fn identity(n: u32) -> Self {
        Self {
            n,
            kind: TransformKind::Identity,
            rows: RowStorage::Identity,
            systematized: None,
        }
    }

    /// The upper-triangular Toeplitz pre-transform of a convolution
    /// polynomial: `t_{h, h+d} = p_d` for every row `h`.
    pub fn pac_transform(spec: &CodeSpec, poly: PacPolynomial) -> Result<Self, CodeModelError> {
        let block = spec.block_len() as u64;
        if u64::from(poly.degree()) >= block {
            return Err(CodeModelError::PolynomialDegreeTooLarge {
                degree: poly.degree(),
                block,
            });
        }
        Ok(Self {
            n: spec.n(),
            kind: TransformKind::Convolution(poly),
            rows: RowStorage::Toeplitz(poly),
            systematized: None,
        })
    }

    /// A seeded random pre-transform: each information row keeps its unit
    /// diagonal and fills the entries strictly above it with independent fair
    /// bits; frozen rows are left unstored (they multiply message coordinates
    /// that are always zero).
    ///
    /// The fill is reproducible across platforms: rows are processed in
    /// ascending order, each drawing `ceil(span / 8)` bytes from a ChaCha
    /// stream seeded with `seed`, and bit `d` of the span (column `h + 1 + d`)
    /// is bit `d % 8` of byte `d / 8`.
    pub fn random_transform(spec: &CodeSpec, seed: u64) -> Self {
        let block = spec.block_len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = BTreeMap::new();
        let mut buf = Vec::new();
        for &h in spec.info_set() {
            let mut row = BitVector::zeros(block);
            row.set(h as usize, true);
            let span = block - h as usize - 1;
            buf.clear();
            buf.resize(span.div_ceil(8), 0u8);
            rng.fill_bytes(&mut buf);
            for d in 0..span {
                if (buf[d >> 3] >> (d & 7)) & 1 == 1 {
                    row.set(h as usize + 1 + d, true);
                }
            }
            rows.insert(h, row);
        }
        Self {
            n: spec.n(),
            kind: TransformKind::Random { seed },
            rows: RowStorage::Rows(rows),
            systematized: None,
        }
    }

    /// Builds a pre-transform from explicit rows. Rows not present are unit
    /// rows. Every stored row must be upper-triangular.
    pub fn from_rows(n: u32, rows: BTreeMap<u32, BitVector>) -> Result<Self, CodeModelError> {
        if !(1..=MAX_BITS).contains(&n) {
            return Err(CodeModelError::BitWidthOutOfRange { n });
        }
        let block = 1usize << n;
        for (&h, row) in &rows {
            assert!(
                row.len() == block,
                "row {h} has length {}, expected {block}",
                row.len()
            );
            if let Some(first) = row.iter_ones().next() {
                assert!(
                    first >= h as usize,
                    "row {h} has an entry below the diagonal"
                );
            }
        }
        Ok(Self {
            n,
            kind: TransformKind::Explicit,
            rows: RowStorage::Rows(rows),
            systematized: None,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> &TransformKind {
        &self.kind
    }

    /// Whether [`PreTransform::systematize`] produced this transform.
    pub fn is_systematized(&self) -> bool {
        self.systematized.is_some()
    }

    /// Whether this transform is systematized against exactly this profile.
    pub fn is_systematized_for(&self, spec: &CodeSpec) -> bool {
        self.systematized
            .as_ref()
            .is_some_and(|s| s.info == spec.info_set())
    }

    /// Whether any frozen transform input depends on information bits. False
    /// means the code equals the plain polar code of the profile.
    ///
    /// # Panics
    /// If the transform is not systematized.
    pub fn has_dynamic_constraints(&self) -> bool {
        self.systematized
            .as_ref()
            .expect("dynamic constraints are defined on systematized transforms")
            .dynamic
    }

    /// Row `h` as a materialized bit vector.
    pub fn row(&self, h: u32) -> BitVector {
        let block = 1usize << self.n;
        assert!((h as usize) < block, "row {h} out of range");
        match &self.rows {
            RowStorage::Identity => {
                let mut row = BitVector::zeros(block);
                row.set(h as usize, true);
                row
            }
            RowStorage::Toeplitz(p) => {
                let mut row = BitVector::zeros(block);
                for d in 0..=p.degree() {
                    let col = h as usize + d as usize;
                    if p.coeff(d) && col < block {
                        row.set(col, true);
                    }
                }
                row
            }
            RowStorage::Rows(rows) => rows.get(&h).cloned().unwrap_or_else(|| {
                let mut row = BitVector::zeros(block);
                if self.systematized.is_none() {
                    row.set(h as usize, true);
                }
                row
            }),
        }
    }

    /// The systematized column of frozen index `f` as a packed set of
    /// absolute information-row positions, or `None` if no information row
    /// feeds it.
    ///
    /// # Panics
    /// If the transform is not systematized or `f` is an information index.
    pub(crate) fn frozen_column(&self, f: u32) -> Option<&[u64]> {
        let sys = self
            .systematized
            .as_ref()
            .expect("frozen columns are defined on systematized transforms");
        debug_assert!(sys.info.binary_search(&f).is_err());
        sys.columns[f as usize].as_deref()
    }

    /// Rewrites the transform so that the information rows carry an identity
    /// on the information columns and the frozen rows are zero, leaving the
    /// code unchanged.
    ///
    /// Because `T` is upper-triangular with unit diagonal on `I` and the
    /// information indices are processed in ascending order, reduction only
    /// ever eliminates entries of earlier rows (columns grow to the right),
    /// and a single upward sweep yields the reduced form.
    pub fn systematize(&self, spec: &CodeSpec) -> Result<PreTransform, CodeModelError> {
        if self.n != spec.n() {
            return Err(CodeModelError::WidthMismatch {
                transform: self.n,
                profile: spec.n(),
            });
        }
        let block = spec.block_len();
        let info = spec.info_set();

        // Materialize the information rows and check the diagonal invariant.
        let mut rows: Vec<BitVector> = Vec::with_capacity(info.len());
        for &h in info {
            let row = self.row(h);
            if !row.get(h as usize) {
                return Err(CodeModelError::MissingDiagonal { row: h });
            }
            rows.push(row);
        }

        // Upward elimination: clearing column i touches only rows above it,
        // and row i has no entries in earlier pivot columns, so cleared
        // columns stay clear.
        for (idx, &col) in info.iter().enumerate() {
            let col = col as usize;
            let (head, tail) = rows.split_at_mut(idx);
            let pivot = &tail[0];
            for row in head.iter_mut() {
                if row.get(col) {
                    row.xor_assign(pivot);
                }
            }
        }

        // Column view of the frozen entries, packed over absolute rows.
        let mut columns: Vec<Option<Box<[u64]>>> = vec![None; block];
        for (idx, row) in rows.iter().enumerate() {
            let h = info[idx];
            for c in row.iter_ones() {
                if c == h as usize {
                    continue;
                }
                debug_assert!(spec.is_frozen(c as u32));
                let col = columns[c].get_or_insert_with(|| {
                    vec![0u64; (c >> 6) + 1].into_boxed_slice()
                });
                col[(h >> 6) as usize] |= 1u64 << (h & 63);
            }
        }
        let dynamic = columns.iter().any(Option::is_some);

        let mut stored = BTreeMap::new();
        for (idx, row) in rows.into_iter().enumerate() {
            stored.insert(info[idx], row);
        }
        Ok(PreTransform {
            n: self.n,
            kind: self.kind.clone(),
            rows: RowStorage::Rows(stored),
            systematized: Some(Systematized {
                info: info.to_vec(),
                columns,
                dynamic,
            }),
        })
    }

    /// The value forced on frozen transform input `f` by the earlier
    /// information bits of `u`: the parity of `u` against column `f`.
    ///
    /// # Panics
    /// If the transform is not systematized against a profile containing all
    /// rows feeding `f`, or `f` is out of range.
    pub fn dynamic_frozen_value(&self, u: &BitVector, f: u32) -> bool {
        assert!((f as usize) < 1usize << self.n, "index {f} out of range");
        match self.frozen_column(f) {
            None => false,
            Some(col) => {
                let parity: u64 = col
                    .iter()
                    .zip(u.words())
                    .map(|(c, w)| (c & w).count_ones() as u64)
                    .sum();
                parity & 1 == 1
            }
        }
    }

    /// Parses the transform file format: `#` starts a comment, the first
    /// significant line is `n=<int>`, and every following significant line is
    /// `<row>: <col> <col> ...` listing the nonzero columns of one row. Rows
    /// not listed are unit rows.
    pub fn from_transform_text(text: &str) -> Result<Self, CodeModelError> {
        let mut n: Option<u32> = None;
        let mut rows: BTreeMap<u32, BitVector> = BTreeMap::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let value = line
                        .strip_prefix('n')
                        .map(str::trim_start)
                        .and_then(|rest| rest.strip_prefix('='))
                        .map(str::trim)
                        .ok_or_else(|| parse_err(line_no, "expected header n=<int>"))?;
                    let parsed: u32 = value
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("invalid bit width {value:?}")))?;
                    if !(1..=MAX_BITS).contains(&parsed) {
                        return Err(parse_err(
                            line_no,
                            format!("bit width {parsed} out of range (supported: 1..={MAX_BITS})"),
                        ));
                    }
                    n = Some(parsed);
                }
                Some(width) => {
                    let block = 1usize << width;
                    let (row_part, cols_part) = line.split_once(':').ok_or_else(|| {
                        parse_err(line_no, "expected <row>: <col> <col> ...")
                    })?;
                    let row: u32 = row_part.trim().parse().map_err(|_| {
                        parse_err(line_no, format!("invalid row index {:?}", row_part.trim()))
                    })?;
                    if row as usize >= block {
                        return Err(parse_err(
                            line_no,
                            format!("row index {row} out of range for n = {width}"),
                        ));
                    }
                    if rows.contains_key(&row) {
                        return Err(parse_err(line_no, format!("duplicate row {row}")));
                    }
                    let mut bits = BitVector::zeros(block);
                    for token in cols_part.split_whitespace() {
                        let col: u32 = token.parse().map_err(|_| {
                            parse_err(line_no, format!("invalid column index {token:?}"))
                        })?;
                        if col as usize >= block {
                            return Err(parse_err(
                                line_no,
                                format!("column index {col} out of range for n = {width}"),
                            ));
                        }
                        if col < row {
                            return Err(parse_err(
                                line_no,
                                format!("entry ({row}, {col}) below the diagonal"),
                            ));
                        }
                        if bits.get(col as usize) {
                            return Err(parse_err(
                                line_no,
                                format!("duplicate column {col} in row {row}"),
                            ));
                        }
                        bits.set(col as usize, true);
                    }
                    rows.insert(row, bits);
                }
            }
        }
        let n = n.ok_or_else(|| parse_err(1, "missing header n=<int>"))?;
        Self::from_rows(n, rows)
    }

    /// Renders the nonzero rows in the format accepted by
    /// [`PreTransform::from_transform_text`].
    pub fn to_transform_text(&self) -> String {
        let block = 1u32 << self.n;
        let mut out = format!("n={}\n", self.n);
        for h in 0..block {
            let row = self.row(h);
            if row.is_zero() {
                continue;
            }
            out.push_str(&format!("{h}:"));
            for c in row.iter_ones() {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for PreTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PreTransform(n={}, kind={}, systematized={})",
            self.n,
            self.kind,
            self.systematized.is_some()
        )
    }
}

/// Applies the polar transform `G_N` in place: for every bit level `l`, each
/// position with bit `l` clear absorbs its partner with bit `l` set.
///
/// # Panics
/// If the length is not a power of two.
pub fn polar_transform_in_place(x: &mut BitVector) {
    let len = x.len();
    assert!(len.is_power_of_two(), "length {len} is not a power of two");
    let n = len.trailing_zeros();
    for l in 0..n {
        let half = 1usize << l;
        let mut base = 0;
        while base < len {
            for j in base..base + half {
                if x.get(j + half) {
                    x.toggle(j);
                }
            }
            base += 2 * half;
        }
    }
}

/// Encodes a message: scatter onto the information set, multiply by the
/// pre-transform, apply the polar transform.
///
/// Accepts both raw and systematized transforms; the two describe the same
/// code but generally map a given message to different codewords.
pub fn encode(
    spec: &CodeSpec,
    transform: &PreTransform,
    message: &BitVector,
) -> Result<BitVector, CodeModelError> {
    if transform.n() != spec.n() {
        return Err(CodeModelError::WidthMismatch {
            transform: transform.n(),
            profile: spec.n(),
        });
    }
    if message.len() != spec.dimension() {
        return Err(CodeModelError::MessageLength {
            got: message.len(),
            expected: spec.dimension(),
        });
    }
    let block = spec.block_len();
    let mut v = BitVector::zeros(block);
    for (idx, &i) in spec.info_set().iter().enumerate() {
        if message.get(idx) {
            v.set(i as usize, true);
        }
    }
    let mut u = match (&transform.systematized, &transform.rows) {
        (Some(sys), _) => {
            // The information part passes through unchanged; each frozen input
            // is the parity of the message against its column.
            let mut u = v.clone();
            for (f, col) in sys.columns.iter().enumerate() {
                if let Some(col) = col {
                    let parity: u64 = col
                        .iter()
                        .zip(v.words())
                        .map(|(c, w)| (c & w).count_ones() as u64)
                        .sum();
                    if parity & 1 == 1 {
                        u.set(f, true);
                    }
                }
            }
            u
        }
        (None, RowStorage::Identity) => v,
        (None, RowStorage::Toeplitz(p)) => {
            let mut u = BitVector::zeros(block);
            for h in v.iter_ones() {
                for d in 0..=p.degree() {
                    let col = h + d as usize;
                    if p.coeff(d) && col < block {
                        u.toggle(col);
                    }
                }
            }
            u
        }
        (None, RowStorage::Rows(rows)) => {
            let mut u = BitVector::zeros(block);
            for h in v.iter_ones() {
                match rows.get(&(h as u32)) {
                    Some(row) => u.xor_assign(row),
                    None => u.toggle(h),
                }
            }
            u
        }
    };
    polar_transform_in_place(&mut u);
    Ok(u)
}
