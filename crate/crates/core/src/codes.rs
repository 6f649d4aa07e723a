//! Generator and parity-check matrices for the Hadamard and Hamming families.
//!
//! Conventions shared with [`crate::encoders`]:
//!
//! * Hamming codewords have length `2^k - 1`; symbol `q - 1` holds position
//!   `q` of the `2^k`-slot layout, parities sit at positions `2^b`.
//! * Extended Hamming codewords keep all `2^k` slots, slot 0 holding the
//!   overall parity.
//! * Shortened Hamming codewords are the `2^r` message bits followed by the
//!   `r + 1` parities in check-matrix column order, `p_r` first and `p_0` last.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::gf2::{brgc, t_bin, BitMatrix, BitVec};

/// Largest family parameter accepted by the constructors.
pub const MAX_ORDER: usize = 30;

/// Largest number of generator rows [`min_distance`] will enumerate.
pub const MAX_DISTANCE_ROWS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeFamily {
    /// `[2^k, k]`, generator `G_k`.
    Hadamard,
    /// `[2^k, k+1]`, generator `G'_k`.
    PuncturedHadamard,
    /// `[2^k, k+1]`, generator `G''_k`.
    SystematicPuncturedHadamard,
    /// `[2^k - 1, 2^k - k - 1]`.
    Hamming,
    /// `[2^k, 2^k - k - 1]`.
    ExtendedHamming,
    /// `[2^r + r + 1, 2^r]`; the parameter is `r`.
    ShortenedHamming,
}

impl CodeFamily {
    pub const ALL: [CodeFamily; 6] = [
        CodeFamily::Hadamard,
        CodeFamily::PuncturedHadamard,
        CodeFamily::SystematicPuncturedHadamard,
        CodeFamily::Hamming,
        CodeFamily::ExtendedHamming,
        CodeFamily::ShortenedHamming,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CodeFamily::Hadamard => "hadamard",
            CodeFamily::PuncturedHadamard => "punct-hadamard",
            CodeFamily::SystematicPuncturedHadamard => "sys-punct-hadamard",
            CodeFamily::Hamming => "hamming",
            CodeFamily::ExtendedHamming => "ext-hamming",
            CodeFamily::ShortenedHamming => "shortened-hamming",
        }
    }

    /// Message length for parameter `k`.
    pub fn message_len(self, k: usize) -> usize {
        match self {
            CodeFamily::Hadamard => k,
            CodeFamily::PuncturedHadamard | CodeFamily::SystematicPuncturedHadamard => k + 1,
            CodeFamily::Hamming | CodeFamily::ExtendedHamming => (1 << k) - k - 1,
            CodeFamily::ShortenedHamming => 1 << k,
        }
    }

    /// Codeword length for parameter `k`.
    pub fn block_len(self, k: usize) -> usize {
        match self {
            CodeFamily::Hamming => (1 << k) - 1,
            CodeFamily::ShortenedHamming => (1 << k) + k + 1,
            _ => 1 << k,
        }
    }

    /// Smallest accepted parameter.
    pub fn min_order(self) -> usize {
        match self {
            CodeFamily::Hadamard | CodeFamily::PuncturedHadamard | CodeFamily::SystematicPuncturedHadamard => 1,
            _ => 2,
        }
    }

    pub fn check_order(self, k: usize) -> Result<()> {
        check_order(k, self.min_order(), self.name())
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CodeFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown code family {s:?}")))
    }
}

pub(crate) fn check_order(k: usize, min: usize, what: &str) -> Result<()> {
    if k < min {
        Err(Error::Parameter(format!("{what} needs k >= {min}, got {k}")))
    } else if k > MAX_ORDER {
        Err(Error::Parameter(format!("{what} needs k <= {MAX_ORDER}, got {k}")))
    } else {
        Ok(())
    }
}

#[inline]
fn msb_first_bit(value: usize, row: usize, width: usize) -> bool {
    (value >> (width - 1 - row)) & 1 == 1
}

/// `G_k`: column `j` is `t_bin(j, k)`.
pub fn gen_hadamard(k: usize) -> Result<BitMatrix> {
    check_order(k, 1, "hadamard generator")?;
    Ok(BitMatrix::from_fn(k, 1 << k, |i, j| msb_first_bit(j, i, k)))
}

/// `G'_k`: `G_k` with an all-ones row appended.
pub fn gen_punctured(k: usize) -> Result<BitMatrix> {
    let mut g = gen_hadamard(k)?;
    g.push_row(BitVec::ones(1 << k))?;
    Ok(g)
}

/// `V_{k+1}`: identity with the last row replaced by all ones.
pub fn systematic_transform(k: usize) -> BitMatrix {
    let mut v = BitMatrix::identity(k + 1);
    for j in 0..k {
        v.set(k, j, true);
    }
    v
}

/// `E_k`: symbol `j` is one exactly when `j` has even popcount.
pub fn e_vector(k: usize) -> Result<BitVec> {
    if k > MAX_ORDER {
        return Err(Error::Parameter(format!("e_vector needs k <= {MAX_ORDER}, got {k}")));
    }
    Ok(BitVec::from_fn(1 << k, |j| j.count_ones() % 2 == 0))
}

/// `G''_k = V_{k+1} G'_k`; every column has odd weight.
pub fn gen_systematic_punctured(k: usize) -> Result<BitMatrix> {
    systematic_transform(k).mul(&gen_punctured(k)?)
}

/// `H_k`: column `j` is `t_bin(j + 1, k)`.
pub fn pcm_hamming(k: usize) -> Result<BitMatrix> {
    check_order(k, 2, "hamming check matrix")?;
    Ok(BitMatrix::from_fn(k, (1 << k) - 1, |i, j| msb_first_bit(j + 1, i, k)))
}

/// `H'_k`: a zero column in front of `H_k`, then an all-ones row.
pub fn pcm_ext_hamming(k: usize) -> Result<BitMatrix> {
    let h = pcm_hamming(k)?;
    let n = 1 << k;
    let mut rows: Vec<BitVec> = h
        .row_iter()
        .map(|r| BitVec::zeros(1).concat(r))
        .collect();
    rows.push(BitVec::ones(n));
    BitMatrix::from_rows(n, rows)
}

/// `H''_k = V_{k+1} H'_k`.
pub fn pcm_systematic_ext_hamming(k: usize) -> Result<BitMatrix> {
    systematic_transform(k).mul(&pcm_ext_hamming(k)?)
}

/// Check matrix of the shortened code with `2^r` message bits and `r + 1`
/// parities.
///
/// Message column 0 is `t_bin(2^r - 1)`, message column `i >= 1` is
/// `t_bin(2^r + i)`. The parity block is the identity, so parity column `c`
/// carries `p_{r-c}` (the parity of bit position `r - c`).
pub fn pcm_shortened(r: usize) -> Result<BitMatrix> {
    check_order(r, 2, "shortened hamming check matrix")?;
    let width = r + 1;
    let m = 1usize << r;
    let mut columns = Vec::with_capacity(m + width);
    columns.push(t_bin((m - 1) as u64, width)?);
    for i in 1..m {
        columns.push(t_bin((m + i) as u64, width)?);
    }
    for c in 0..width {
        columns.push(BitVec::unit(width, c));
    }
    BitMatrix::from_columns(width, &columns)
}

/// Message positions checked by parity `p_j` of the shortened code.
pub fn shortened_checked_positions(r: usize, j: usize) -> Result<Vec<usize>> {
    if j > r {
        return Err(Error::Parameter(format!("parity index {j} exceeds {r}")));
    }
    let h = pcm_shortened(r)?;
    let row = h.row(r - j);
    Ok(row.iter_ones().take_while(|&c| c < (1 << r)).collect())
}

/// `G_k` with columns in binary-reflected Gray order.
pub fn gray_gen(k: usize) -> Result<BitMatrix> {
    check_order(k, 2, "gray generator")?;
    Ok(BitMatrix::from_fn(k, 1 << k, |i, j| {
        msb_first_bit(brgc(j as u64) as usize, i, k)
    }))
}

/// [`gray_gen`] with the alternating row `1010...` appended; a column
/// permutation of `G''_k`.
pub fn gray_systematic_gen(k: usize) -> Result<BitMatrix> {
    let mut g = gray_gen(k)?;
    g.push_row(BitVec::from_fn(1 << k, |j| j % 2 == 0))?;
    Ok(g)
}

/// Message positions of the `2^k`-slot Hamming layout: every index that is
/// neither zero nor a power of two, ascending.
pub fn hamming_message_positions(k: usize) -> Vec<usize> {
    (3..(1usize << k)).filter(|q| !q.is_power_of_two()).collect()
}

/// Generator of the Hamming code in the layout produced by
/// [`crate::encoders::hamming_codeword`].
pub fn gen_hamming(k: usize) -> Result<BitMatrix> {
    check_order(k, 2, "hamming generator")?;
    let n = (1 << k) - 1;
    let rows = hamming_message_positions(k)
        .into_iter()
        .map(|q| {
            let mut row = BitVec::unit(n, q - 1);
            for b in 0..k {
                if (q >> b) & 1 == 1 {
                    row.set((1 << b) - 1, true);
                }
            }
            row
        })
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// Generator of the extended Hamming code in the layout produced by
/// [`crate::encoders::ext_hamming_codeword`].
pub fn gen_ext_hamming(k: usize) -> Result<BitMatrix> {
    check_order(k, 2, "extended hamming generator")?;
    let n = 1 << k;
    let rows = hamming_message_positions(k)
        .into_iter()
        .map(|q| {
            let mut row = BitVec::unit(n, q);
            for b in 0..k {
                if (q >> b) & 1 == 1 {
                    row.set(1 << b, true);
                }
            }
            if row.weight() % 2 == 1 {
                row.set(0, true);
            }
            row
        })
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// Systematic generator `[I | P]` of the shortened code, parities in
/// [`pcm_shortened`] column order.
pub fn gen_shortened(r: usize) -> Result<BitMatrix> {
    check_order(r, 2, "shortened hamming generator")?;
    let m = 1usize << r;
    let n = m + r + 1;
    let rows = (0..m)
        .map(|i| {
            let mut row = BitVec::unit(n, i);
            for j in 0..=r {
                let checked = if j == r { i != 0 } else { i == 0 || (i >> j) & 1 == 1 };
                if checked {
                    row.set(m + (r - j), true);
                }
            }
            row
        })
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// Generator matrix of `family` in the codeword layout of its encoder.
pub fn generator(family: CodeFamily, k: usize) -> Result<BitMatrix> {
    match family {
        CodeFamily::Hadamard => gen_hadamard(k),
        CodeFamily::PuncturedHadamard => gen_punctured(k),
        CodeFamily::SystematicPuncturedHadamard => gen_systematic_punctured(k),
        CodeFamily::Hamming => gen_hamming(k),
        CodeFamily::ExtendedHamming => gen_ext_hamming(k),
        CodeFamily::ShortenedHamming => gen_shortened(k),
    }
}

/// A matrix whose rows span the dual of `family`, so `H y = 0` for every
/// codeword `y`.
pub fn parity_check(family: CodeFamily, k: usize) -> Result<BitMatrix> {
    match family {
        // the dual of the Hadamard code also contains the unit word on the
        // zero column
        CodeFamily::Hadamard => {
            family.check_order(k)?;
            let dual = if k >= 2 {
                gen_ext_hamming(k)?
            } else {
                BitMatrix::zeros(0, 2)
            };
            let mut e0 = BitMatrix::zeros(0, 1 << k);
            e0.push_row(BitVec::unit(1 << k, 0))?;
            dual.vstack(&e0)
        }
        CodeFamily::PuncturedHadamard | CodeFamily::SystematicPuncturedHadamard => {
            family.check_order(k)?;
            if k == 1 {
                // [2, 2] code, the dual is trivial
                Ok(BitMatrix::zeros(0, 2))
            } else {
                gen_ext_hamming(k)
            }
        }
        CodeFamily::Hamming => pcm_hamming(k),
        CodeFamily::ExtendedHamming => pcm_ext_hamming(k),
        CodeFamily::ShortenedHamming => pcm_shortened(k),
    }
}

/// `x G`, the reference encoder every specialized encoder is checked against.
pub fn naive_encode(g: &BitMatrix, x: &BitVec) -> Result<BitVec> {
    g.vec_mat_mul(x)
}

/// Minimum weight over all codewords of nonzero messages, by enumerating
/// every message in Gray order.
pub fn min_distance(g: &BitMatrix) -> Result<usize> {
    let rows = g.rows();
    if rows > MAX_DISTANCE_ROWS {
        return Err(Error::Budget(format!(
            "{rows} generator rows exceed the enumeration limit of {MAX_DISTANCE_ROWS}"
        )));
    }
    if rows == 0 {
        return Err(Error::Precondition("code has no nonzero message".into()));
    }
    let mut word = BitVec::zeros(g.cols());
    let mut best = usize::MAX;
    for i in 1u64..(1 << rows) {
        word ^= g.row(i.trailing_zeros() as usize);
        best = best.min(word.weight());
    }
    Ok(best)
}

/// Checks `H y = 0`.
pub fn syndrome_is_zero(h: &BitMatrix, y: &BitVec) -> Result<bool> {
    check_len(h.cols(), y.len())?;
    Ok(h.mat_vec_mul(y)?.is_zero())
}
