//! Bit-level linear algebra over GF(2).
//!
//! [`BitVec`] and [`BitMatrix`] pack symbols into 64-bit words; every public
//! contract is index based, so the word width never leaks out. Index 0 is the
//! first symbol of a vector and the top-left entry of a matrix.
//!
//! The text format shared by the whole crate writes one matrix row per line
//! using the characters `0` and `1`, with no separators and a trailing newline.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{check_len, Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// The vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    /// Builds a vector from 0/1 bytes; any nonzero byte counts as a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i] != 0)
    }

    /// Low `len` bits of `mask`, bit `i` of the mask becoming symbol `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask vectors hold at most 64 symbols");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == WORD { mask } else { mask & ((1 << len) - 1) };
        }
        v
    }

    /// Inverse of [`BitVec::from_mask`]; `None` when longer than 64 symbols.
    pub fn to_mask(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "index {index} out of bounds for length {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, bit: bool) {
        assert!(index < self.len, "index {index} out of bounds for length {}", self.len);
        let mask = 1u64 << (index % WORD);
        if bit {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "index {index} out of bounds for length {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors of unequal length");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Bitwise complement.
    pub fn complement(&self) -> BitVec {
        let mut v = BitVec {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.clear_tail();
        v
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the nonzero symbols in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVec> for BitVec {
    fn bitxor_assign(&mut self, rhs: &BitVec) {
        assert_eq!(self.len, rhs.len, "xor of vectors of unequal length");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVec> for &BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{self}]")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(v)
    }
}

/// Binary representation of `x` in `width` symbols, most significant first.
pub fn t_bin(x: u64, width: usize) -> Result<BitVec> {
    if width == 0 || (width < WORD && x >> width != 0) {
        return Err(Error::Range { value: x, width });
    }
    Ok(BitVec::from_fn(width, |j| {
        let shift = width - 1 - j;
        shift < WORD && (x >> shift) & 1 == 1
    }))
}

/// Binary-reflected Gray code, `i ^ (i >> 1)`.
#[inline]
pub fn brgc(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Stacks `rows`, each of which must have `cols` symbols.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Places `columns` side by side, each of which must have `rows` symbols.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for i in c.iter_ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        BitMatrix {
            cols,
            rows: (0..rows).map(|i| BitVec::from_fn(cols, |j| f(i, j))).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        self.rows[row].set(col, bit)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter()
    }

    pub fn column(&self, j: usize) -> BitVec {
        assert!(j < self.cols, "column {j} out of bounds for {} columns", self.cols);
        BitVec::from_fn(self.rows(), |i| self.rows[i].get(j))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        check_len(self.cols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    /// `self` on top of `below`.
    pub fn vstack(&self, below: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, below.cols)?;
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Ok(BitMatrix { cols: self.cols, rows })
    }

    /// `M v` for a column vector `v`.
    pub fn mat_vec_mul(&self, v: &BitVec) -> Result<BitVec> {
        check_len(self.cols, v.len())?;
        Ok(BitVec::from_fn(self.rows(), |i| self.rows[i].dot(v)))
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mat_mul(&self, v: &BitVec) -> Result<BitVec> {
        check_len(self.rows(), v.len())?;
        let mut out = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            out ^= &self.rows[i];
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, rhs.rows())?;
        let rows = self
            .rows
            .iter()
            .map(|r| rhs.vec_mat_mul(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { cols: rhs.cols, rows })
    }

    /// Renders the matrix in the line-per-row text format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows() * (self.cols + 1));
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the line-per-row text format. An empty input is a 0x0 matrix.
    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let lines: Vec<&str> = text.lines().collect();
        let rows = lines
            .iter()
            .map(|l| l.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, BitVec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("rows of unequal length".into()));
        }
        Ok(BitMatrix { cols, rows })
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        f.write_str(&self.to_text())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMatrix::from_text(s)
    }
}
