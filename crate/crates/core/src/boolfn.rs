//! Truth-table boolean functions and the structural operators used throughout
//! the crate.
//!
//! A function on `n` variables is stored as a `2^n`-bit table. The point
//! `x = (x_1, ..., x_n)` lives at code `Σ x_i 2^(i-1)`, so `x_1` is the least
//! significant bit. In the API variables are indexed from zero: variable `i`
//! is bit `i` of the code.

use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Largest supported arity. Guards the `2^n` allocations.
pub const ARITY_MAX: usize = 12;

/// Bit masks selecting the codes with `x_i = 1` inside a 64-bit word.
pub(crate) const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn check_arity(arity: usize) -> Result<()> {
    if arity > ARITY_MAX {
        return Err(Error::Arity(format!(
            "arity {arity} exceeds the maximum of {ARITY_MAX}"
        )));
    }
    Ok(())
}

/// A point of the cube `{0,1}^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    arity: usize,
    code: usize,
}

impl Point {
    pub fn new(arity: usize, code: usize) -> Result<Self> {
        check_arity(arity)?;
        if code >= 1 << arity {
            return Err(Error::Arity(format!(
                "code {code} is outside the {arity}-cube"
            )));
        }
        Ok(Point { arity, code })
    }

    pub fn from_coordinates(coordinates: &[bool]) -> Result<Self> {
        let code = coordinates
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i));
        Point::new(coordinates.len(), code)
    }

    /// The unit vector `ê_i`.
    pub fn unit(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::Index { index: i, arity });
        }
        Point::new(arity, 1 << i)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn code(&self) -> usize {
        self.code
    }

    pub fn coordinate(&self, i: usize) -> bool {
        self.code >> i & 1 == 1
    }

    pub fn coordinates(&self) -> Vec<bool> {
        (0..self.arity).map(|i| self.coordinate(i)).collect()
    }

    /// The complementary point `x̄`.
    pub fn negation(&self) -> Point {
        Point {
            arity: self.arity,
            code: ((1 << self.arity) - 1) ^ self.code,
        }
    }

    pub fn weight(&self) -> u32 {
        self.code.count_ones()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Point) -> bool {
        self.arity == other.arity && self.code & !other.code == 0
    }
}

/// Coordinates written `x_1 x_2 ... x_n`, e.g. `(1,0)` is `"10"`.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.arity {
            f.write_str(if self.coordinate(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A permutation of the variable indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &j in &images {
            if j >= images.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Permutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::Permutation(format!(
                "({i} {j}) out of range for {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `j ↦ other(self(j))`.
    ///
    /// With this convention `f.permute(σ).permute(τ) == f.permute(σ.then(τ))`.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Permutation("length mismatch".into()));
        }
        Ok(Permutation(self.0.iter().map(|&j| other.0[j]).collect()))
    }
}

/// A boolean function `{0,1}^n → {0,1}` stored as a truth table.
///
/// Bits of the last word beyond `2^n` are always zero, so equality and hashing
/// are bitwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    arity: usize,
    words: SmallVec<[u64; 2]>,
}

impl BooleanFunction {
    /// The constant-false function.
    pub fn zero(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        let len = (1usize << arity).div_ceil(64);
        Ok(BooleanFunction {
            arity,
            words: smallvec![0; len],
        })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        if value {
            for w in f.words.iter_mut() {
                *w = u64::MAX;
            }
            f.clear_padding();
        }
        Ok(f)
    }

    /// Builds a function from its values, `value(code)`.
    pub fn from_fn(arity: usize, mut value: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        for code in 0..f.num_points() {
            if value(code) {
                f.words[code >> 6] |= 1 << (code & 63);
            }
        }
        Ok(f)
    }

    /// Builds a function on at most six variables from a packed table.
    pub fn from_u64(arity: usize, table: u64) -> Result<Self> {
        if arity > 6 {
            return Err(Error::Arity(format!(
                "arity {arity} does not fit a u64 table"
            )));
        }
        let mut f = Self::zero(arity)?;
        f.words[0] = table;
        f.clear_padding();
        Ok(f)
    }

    /// The packed table for functions on at most six variables.
    pub fn to_u64(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    /// The function `x ↦ x_i`.
    pub fn dictator(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::Index { index: i, arity });
        }
        Self::from_fn(arity, |c| c >> i & 1 == 1)
    }

    /// Concatenates two tables on `n` variables into one on `n + 1`
    /// variables, with the new variable at index `n`: `low` is the slice
    /// `x_n = 0` and `high` the slice `x_n = 1`.
    pub fn from_slices(low: &BooleanFunction, high: &BooleanFunction) -> Result<Self> {
        if low.arity != high.arity {
            return Err(Error::Arity("slice arities differ".into()));
        }
        let n = low.arity;
        check_arity(n + 1)?;
        if n >= 6 {
            let mut words = low.words.clone();
            words.extend_from_slice(&high.words);
            return Ok(BooleanFunction {
                arity: n + 1,
                words,
            });
        }
        let half = 1 << n;
        let mut f = Self::zero(n + 1)?;
        f.words[0] = low.words[0] | high.words[0] << half;
        Ok(f)
    }

    fn clear_padding(&mut self) {
        let len = self.num_points();
        if len < 64 {
            self.words[0] &= (1u64 << len) - 1;
        }
    }

    fn full_mask(&self) -> u64 {
        let len = self.num_points();
        if len < 64 {
            (1u64 << len) - 1
        } else {
            u64::MAX
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2^n`.
    pub fn num_points(&self) -> usize {
        1 << self.arity
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value at the point with the given code. Panics if `code ≥ 2^n`.
    #[inline]
    pub fn get(&self, code: usize) -> bool {
        assert!(code < self.num_points(), "code {code} out of range");
        self.words[code >> 6] >> (code & 63) & 1 == 1
    }

    pub fn evaluate(&self, x: &Point) -> Result<bool> {
        if x.arity != self.arity {
            return Err(Error::Arity(format!(
                "point of arity {} for a function of arity {}",
                x.arity, self.arity
            )));
        }
        Ok(self.get(x.code))
    }

    /// `|T_f|`.
    pub fn true_count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Codes of the true points in increasing order.
    pub fn true_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_points()).filter(|&c| self.get(c))
    }

    /// Codes of the false points in increasing order.
    pub fn false_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_points()).filter(|&c| !self.get(c))
    }

    /// Table with bit `k` holding `f(2^n - 1 - k)`, i.e. `x ↦ f(x̄)`.
    fn reversed(&self) -> BooleanFunction {
        let len = self.num_points();
        let mut out = self.clone();
        if len <= 64 {
            out.words[0] = self.words[0].reverse_bits() >> (64 - len);
        } else {
            let count = self.words.len();
            for (i, w) in self.words.iter().enumerate() {
                out.words[count - 1 - i] = w.reverse_bits();
            }
        }
        out
    }

    /// `f^d(x) = ¬f(x̄)`.
    pub fn dual(&self) -> BooleanFunction {
        let mut out = self.reversed();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// The function on `n + 1` variables whose `x_0 = 0` slice is `f` and
    /// whose `x_0 = 1` slice is `f^d`. The new variable takes index 0 and
    /// the old variables shift up by one.
    pub fn self_dualize(&self) -> Result<BooleanFunction> {
        check_arity(self.arity + 1)?;
        let dual = self.dual();
        BooleanFunction::from_fn(self.arity + 1, |c| {
            if c & 1 == 0 {
                self.get(c >> 1)
            } else {
                dual.get(c >> 1)
            }
        })
    }

    /// Inverse of [`self_dualize`](Self::self_dualize): the `x_0 = 0` slice of
    /// a self-dual function.
    pub fn anti_self_dualize(&self) -> Result<BooleanFunction> {
        if self.arity == 0 || !self.is_self_dual() {
            return Err(Error::NotSelfDual);
        }
        BooleanFunction::from_fn(self.arity - 1, |c| self.get(c << 1))
    }

    /// `x ↦ f(γ_u(x))`, negating the variables set in the mask `u`.
    pub fn u_complement(&self, u: usize) -> Result<BooleanFunction> {
        if u >= self.num_points() {
            return Err(Error::Arity(format!(
                "complementation mask {u:#b} exceeds arity {}",
                self.arity
            )));
        }
        BooleanFunction::from_fn(self.arity, |c| self.get(c ^ u))
    }

    /// `x ↦ f(x_σ(1), ..., x_σ(n))`.
    pub fn permute(&self, sigma: &Permutation) -> Result<BooleanFunction> {
        if sigma.len() != self.arity {
            return Err(Error::Permutation(format!(
                "permutation of {} points for arity {}",
                sigma.len(),
                self.arity
            )));
        }
        let images = sigma.images();
        BooleanFunction::from_fn(self.arity, |c| {
            let y = images
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &s)| acc | ((c >> s & 1) << j));
            self.get(y)
        })
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_variables(&self, i: usize, j: usize) -> Result<BooleanFunction> {
        if i >= self.arity || j >= self.arity {
            return Err(Error::Index {
                index: i.max(j),
                arity: self.arity,
            });
        }
        if let Some(t) = self.to_u64() {
            return BooleanFunction::from_u64(self.arity, swap_vars_u64(t, i, j));
        }
        BooleanFunction::from_fn(self.arity, |c| {
            let bi = c >> i & 1;
            let bj = c >> j & 1;
            let y = (c & !(1 << i) & !(1 << j)) | bi << j | bj << i;
            self.get(y)
        })
    }

    /// The `i`-reduction `f_{x_i = s}` on `n - 1` variables; the remaining
    /// variables keep their relative order.
    pub fn reduce(&self, i: usize, s: bool) -> Result<BooleanFunction> {
        if i >= self.arity {
            return Err(Error::Index {
                index: i,
                arity: self.arity,
            });
        }
        let low = (1usize << i) - 1;
        let bit = usize::from(s) << i;
        BooleanFunction::from_fn(self.arity - 1, |y| {
            self.get((y & low) | bit | (y & !low) << 1)
        })
    }

    /// Pointwise `self ≤ other`. False when the arities differ.
    pub fn is_below(&self, other: &BooleanFunction) -> bool {
        self.arity == other.arity
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Monotone nondecreasing in every coordinate.
    pub fn is_positive(&self) -> bool {
        (0..self.arity).all(|i| self.is_increasing_in(i))
    }

    /// `f(x) ≤ f(x ∨ ê_i)` for every `x`.
    pub fn is_increasing_in(&self, i: usize) -> bool {
        if i < 6 {
            let mask = VAR_MASKS[i];
            let shift = 1 << i;
            self.words
                .iter()
                .all(|&w| (w & !mask) & !((w & mask) >> shift) == 0)
        } else {
            let stride = 1 << (i - 6);
            (0..self.words.len())
                .filter(|j| j & stride == 0)
                .all(|j| self.words[j] & !self.words[j | stride] == 0)
        }
    }

    /// Every singleton `ê_i` is false.
    pub fn is_small(&self) -> bool {
        (0..self.arity).all(|i| !self.get(1 << i))
    }

    /// No negation pair is doubly false.
    pub fn is_ample(&self) -> bool {
        let rev = self.reversed();
        let full = self.full_mask();
        self.words
            .iter()
            .zip(&rev.words)
            .all(|(a, b)| (a | b) & full == full)
    }

    /// Hexadecimal form: big-endian nibbles, zero-padded to `⌈2^n / 4⌉`
    /// digits, prefixed with `0x`.
    pub fn to_hex(&self) -> String {
        let digits = self.num_points().div_ceil(4);
        let mut s = String::with_capacity(digits + 2);
        s.push_str("0x");
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> (4 * (d % 16))) & 0xF;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Parses a binary or `0x` hexadecimal truth table. The hexadecimal form
    /// determines the arity only up to padding, so the arity may be given
    /// explicitly; without it the largest arity matching the digit count is
    /// used.
    pub fn parse_with_arity(text: &str, arity: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            return parse_hex(hex, arity);
        }
        let len = text.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Parse(format!(
                "truth table length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if let Some(a) = arity {
            if a != n {
                return Err(Error::Parse(format!(
                    "truth table of length {len} does not have arity {a}"
                )));
            }
        }
        let bytes = text.as_bytes();
        if let Some(bad) = bytes.iter().find(|&&b| b != b'0' && b != b'1') {
            return Err(Error::Parse(format!(
                "invalid character {:?}",
                *bad as char
            )));
        }
        BooleanFunction::from_fn(n, |c| bytes[c] == b'1')
    }
}

fn parse_hex(hex: &str, arity: Option<usize>) -> Result<BooleanFunction> {
    let digits = hex.len();
    if digits == 0 {
        return Err(Error::Parse("empty hexadecimal table".into()));
    }
    let n = match arity {
        Some(a) => {
            if (1usize << a.min(ARITY_MAX + 1)).div_ceil(4) != digits {
                return Err(Error::Parse(format!(
                    "{digits} hex digits do not match arity {a}"
                )));
            }
            a
        }
        None => {
            let bits = digits * 4;
            if !bits.is_power_of_two() {
                return Err(Error::Parse(format!(
                    "{digits} hex digits do not encode a full truth table"
                )));
            }
            bits.trailing_zeros() as usize
        }
    };
    let mut f = BooleanFunction::zero(n)?;
    for (pos, ch) in hex.chars().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?
            as u64;
        let d = digits - 1 - pos;
        for b in 0..4 {
            let code = 4 * d + b;
            if nibble >> b & 1 == 1 {
                if code >= f.num_points() {
                    return Err(Error::Parse("hex table has bits beyond 2^n".into()));
                }
                f.words[code >> 6] |= 1 << (code & 63);
            }
        }
    }
    Ok(f)
}

impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BooleanFunction::parse_with_arity(s, None)
    }
}

/// Binary form: character `k` is the value at code `k`.
impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.num_points() {
            f.write_str(if self.get(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({}: {})", self.arity, self)
    }
}

impl serde::Serialize for BooleanFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exchanges variables `i` and `j` of a packed table on at most six variables.
#[inline]
pub(crate) fn swap_vars_u64(t: u64, i: usize, j: usize) -> u64 {
    if i == j {
        return t;
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let shift = (1 << j) - (1 << i);
    let mask = VAR_MASKS[i] & !VAR_MASKS[j];
    (t & !(mask | mask << shift)) | (t & mask) << shift | (t >> shift) & mask
}
