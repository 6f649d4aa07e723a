//! Recursive and Gray-ordered encoders for the Hadamard and Hamming families.
//!
//! Every algorithm is written once against [`XorSink`] and runs either on
//! plain bits ([`Direct`]) or symbolically ([`Tracer`]), in which case each
//! XOR it performs becomes one gate and each copy becomes an alias. The
//! recursions are unrolled into loops over halves so large orders do not
//! consume stack.
//!
//! Parity outputs keep the order the recursions produce them in:
//! `[p_1, ..., p_k]` for Hamming codes (`p_j` checks the positions whose index
//! has bit `k - j` set), `[p_1, ..., p_k, p_{k+1}]` for extended Hamming codes
//! and `[p_0, ..., p_r]` for the shortened code.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, CircuitBuilder, NodeId};
use crate::codes::{self, check_order, hamming_message_positions, CodeFamily};
use crate::error::{check_len, Error, Result};
use crate::gf2::{brgc, BitMatrix, BitVec};

/// The operations an encoder may perform on symbols.
pub trait XorSink {
    type Bit: Copy;
    fn zero(&mut self) -> Self::Bit;
    fn xor(&mut self, a: Self::Bit, b: Self::Bit) -> Self::Bit;
}

/// Computes on bits and counts the XORs performed.
#[derive(Debug, Default, Clone, Copy)]
pub struct Direct {
    pub xors: usize,
}

impl XorSink for Direct {
    type Bit = bool;

    fn zero(&mut self) -> bool {
        false
    }

    fn xor(&mut self, a: bool, b: bool) -> bool {
        self.xors += 1;
        a ^ b
    }
}

/// Records the computation as a circuit.
#[derive(Debug, Clone)]
pub struct Tracer {
    builder: CircuitBuilder,
}

impl Tracer {
    pub fn new(inputs: usize) -> Self {
        Tracer {
            builder: CircuitBuilder::new(inputs),
        }
    }

    pub fn inputs(&self, n: usize) -> Vec<NodeId> {
        (0..n).map(|i| self.builder.input(i)).collect()
    }

    pub fn finish(mut self, outputs: &[NodeId], label: impl Fn(usize) -> String) -> Circuit {
        for (t, &node) in outputs.iter().enumerate() {
            self.builder.output(node, label(t));
        }
        self.builder.finish()
    }
}

impl XorSink for Tracer {
    type Bit = NodeId;

    fn zero(&mut self) -> NodeId {
        self.builder.zero()
    }

    fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.builder.xor(a, b)
    }
}

/// XOR of `terms` over a balanced tree; `len - 1` XORs, depth
/// `ceil(log2(len))`.
fn tree_sum<S: XorSink>(s: &mut S, terms: &[S::Bit]) -> S::Bit {
    let mut level = terms.to_vec();
    if level.is_empty() {
        return s.zero();
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            next.push(match *pair {
                [a, b] => s.xor(a, b),
                [a] => a,
                _ => unreachable!(),
            });
        }
        level = next;
    }
    level[0]
}

/// Hadamard codeword: doubles `[0, x_{k-1}]` once per remaining message bit,
/// the upper half being the lower half plus that bit.
fn hadamard<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let k = x.len();
    let mut y = Vec::with_capacity(1 << k);
    y.push(s.zero());
    y.push(x[k - 1]);
    for l in (0..k - 1).rev() {
        let n = y.len();
        // y[0] is the zero symbol, so the first upper entry is a copy
        y.push(x[l]);
        for i in 1..n {
            let v = s.xor(y[i], x[l]);
            y.push(v);
        }
    }
    y
}

/// Systematic punctured Hadamard codeword; `x[k]` multiplies the
/// even-weight indicator row.
fn systematic_punctured<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let k = x.len() - 1;
    let mut y = Vec::with_capacity(1 << k);
    y.push(x[k]);
    y.push(x[k - 1]);
    for l in (0..k - 1).rev() {
        let t = s.xor(x[l], x[k]);
        let n = y.len();
        y.push(x[l]);
        for i in 1..n {
            let v = s.xor(y[i], t);
            y.push(v);
        }
    }
    y
}

/// Punctured Hadamard codeword; `x[k]` multiplies the all-ones row.
fn punctured<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let k = x.len() - 1;
    let mut y = Vec::with_capacity(1 << k);
    y.push(x[k]);
    let v = s.xor(x[k], x[k - 1]);
    y.push(v);
    for l in (0..k - 1).rev() {
        let n = y.len();
        for i in 0..n {
            let v = s.xor(y[i], x[l]);
            y.push(v);
        }
    }
    y
}

/// `[0 | H_k] x`, most significant check first.
fn hamming_parities<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let mut cur = x.to_vec();
    let mut p = Vec::new();
    while cur.len() > 2 {
        let half = cur.len() / 2;
        p.push(tree_sum(s, &cur[half..]));
        let mut next = Vec::with_capacity(half);
        for i in 0..half {
            next.push(s.xor(cur[i], cur[half + i]));
        }
        cur = next;
    }
    p.push(cur[1]);
    p
}

/// Hamming checks followed by the overall parity, which accumulates in slot 0.
fn ext_hamming_parities<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let mut cur = x.to_vec();
    let mut p = Vec::new();
    while cur.len() > 2 {
        let half = cur.len() / 2;
        let alpha = tree_sum(s, &cur[half + 1..]);
        p.push(s.xor(cur[half], alpha));
        let mut next = Vec::with_capacity(half);
        next.push(s.xor(cur[0], alpha));
        for i in 1..half {
            next.push(s.xor(cur[i], cur[half + i]));
        }
        cur = next;
    }
    p.push(cur[1]);
    p.push(cur[0]);
    p
}

/// Hadamard codeword in Gray column order: each symbol is its predecessor
/// plus one message bit, except the unit columns, which are copies.
fn gray_hadamard<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let k = x.len();
    let mut y = Vec::with_capacity(1 << k);
    y.push(s.zero());
    for i in 1u64..(1 << k) {
        let v = if (i + 1).is_power_of_two() {
            x[k - 1 - brgc(i).trailing_zeros() as usize]
        } else {
            let flip = (brgc(i) ^ brgc(i - 1)).trailing_zeros() as usize;
            let prev = y[i as usize - 1];
            s.xor(prev, x[k - 1 - flip])
        };
        y.push(v);
    }
    y
}

/// Systematic punctured codeword in Gray column order. The alternating row
/// flips at every step, so it is folded into the message bits up front.
fn gray_punctured<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let k = x.len() - 1;
    let shifted: Vec<S::Bit> = (0..k).map(|r| s.xor(x[r], x[k])).collect();
    let mut y = Vec::with_capacity(1 << k);
    y.push(x[k]);
    for i in 1u64..(1 << k) {
        let v = if (i + 1).is_power_of_two() {
            x[k - 1 - brgc(i).trailing_zeros() as usize]
        } else {
            let flip = (brgc(i) ^ brgc(i - 1)).trailing_zeros() as usize;
            let prev = y[i as usize - 1];
            s.xor(prev, shifted[k - 1 - flip])
        };
        y.push(v);
    }
    y
}

/// Shortened-code parities `[p_0, ..., p_r]` from one complete binary tree
/// over the message. Level `j` of the tree holds the sums of aligned blocks of
/// `2^j` bits; `p_j` combines the odd-numbered blocks of level `j`, `p_r` is
/// the root, and every parity is finally corrected by `x_0`.
fn shortened<S: XorSink>(s: &mut S, x: &[S::Bit]) -> Vec<S::Bit> {
    let r = x.len().trailing_zeros() as usize;
    let mut levels = vec![x.to_vec()];
    for j in 0..r {
        let next = levels[j].chunks(2).map(|pair| s.xor(pair[0], pair[1])).collect();
        levels.push(next);
    }
    let mut partial: Vec<S::Bit> = (0..r)
        .map(|j| {
            let odd: Vec<S::Bit> = levels[j].iter().skip(1).step_by(2).copied().collect();
            tree_sum(s, &odd)
        })
        .collect();
    partial.push(levels[r][0]);
    partial.into_iter().map(|q| s.xor(q, x[0])).collect()
}

/// The encoding algorithms, each paired with the map it computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoder {
    /// Recursive Hadamard encoder; `k` inputs, `2^k` outputs.
    Hadamard,
    /// Recursive systematic punctured Hadamard encoder; `k + 1` inputs.
    SystematicPunctured,
    /// Recursive punctured Hadamard encoder for `G'_k`; `k + 1` inputs.
    Punctured,
    /// Hamming parities from the message; outputs `[p_1, ..., p_k]`.
    Hamming,
    /// Extended Hamming parities from the message; outputs
    /// `[p_1, ..., p_k, p_{k+1}]`.
    ExtendedHamming,
    /// Gray-ordered Hadamard encoder.
    GrayHadamard,
    /// Gray-ordered systematic punctured Hadamard encoder.
    GrayPunctured,
    /// Shortened Hamming parities `[p_0, ..., p_r]`; the parameter is `r`.
    Shortened,
}

impl Encoder {
    pub const ALL: [Encoder; 8] = [
        Encoder::Hadamard,
        Encoder::SystematicPunctured,
        Encoder::Punctured,
        Encoder::Hamming,
        Encoder::ExtendedHamming,
        Encoder::GrayHadamard,
        Encoder::GrayPunctured,
        Encoder::Shortened,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Encoder::Hadamard => "hadamard",
            Encoder::SystematicPunctured => "sys-punctured",
            Encoder::Punctured => "punctured",
            Encoder::Hamming => "hamming",
            Encoder::ExtendedHamming => "ext-hamming",
            Encoder::GrayHadamard => "gray-hadamard",
            Encoder::GrayPunctured => "gray-punctured",
            Encoder::Shortened => "shortened",
        }
    }

    /// The encoder used for `family` by the command-line tool.
    pub fn for_family(family: CodeFamily) -> Encoder {
        match family {
            CodeFamily::Hadamard => Encoder::Hadamard,
            CodeFamily::PuncturedHadamard => Encoder::Punctured,
            CodeFamily::SystematicPuncturedHadamard => Encoder::SystematicPunctured,
            CodeFamily::Hamming => Encoder::Hamming,
            CodeFamily::ExtendedHamming => Encoder::ExtendedHamming,
            CodeFamily::ShortenedHamming => Encoder::Shortened,
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            Encoder::Hadamard | Encoder::SystematicPunctured | Encoder::Punctured => 1,
            _ => 2,
        }
    }

    pub fn check_order(self, k: usize) -> Result<()> {
        check_order(k, self.min_order(), self.name())
    }

    pub fn input_len(self, k: usize) -> usize {
        match self {
            Encoder::Hadamard | Encoder::GrayHadamard => k,
            Encoder::SystematicPunctured | Encoder::Punctured | Encoder::GrayPunctured => k + 1,
            Encoder::Hamming | Encoder::ExtendedHamming => (1 << k) - k - 1,
            Encoder::Shortened => 1 << k,
        }
    }

    pub fn output_len(self, k: usize) -> usize {
        match self {
            Encoder::Hamming => k,
            Encoder::ExtendedHamming | Encoder::Shortened => k + 1,
            _ => 1 << k,
        }
    }

    /// The matrix `M` this encoder multiplies by: output `= x M`.
    pub fn reference_matrix(self, k: usize) -> Result<BitMatrix> {
        self.check_order(k)?;
        let pick = |g: BitMatrix, cols: Vec<usize>| {
            let c: Vec<BitVec> = cols.into_iter().map(|j| g.column(j)).collect();
            BitMatrix::from_columns(g.rows(), &c)
        };
        match self {
            Encoder::Hadamard => codes::gen_hadamard(k),
            Encoder::SystematicPunctured => codes::gen_systematic_punctured(k),
            Encoder::Punctured => codes::gen_punctured(k),
            Encoder::GrayHadamard => codes::gray_gen(k),
            Encoder::GrayPunctured => codes::gray_systematic_gen(k),
            Encoder::Hamming => pick(
                codes::gen_hamming(k)?,
                (1..=k).map(|j| (1 << (k - j)) - 1).collect(),
            ),
            Encoder::ExtendedHamming => pick(
                codes::gen_ext_hamming(k)?,
                (1..=k).map(|j| 1 << (k - j)).chain([0]).collect(),
            ),
            Encoder::Shortened => {
                let m = 1 << k;
                pick(codes::gen_shortened(k)?, (0..=k).map(|j| m + k - j).collect())
            }
        }
    }

    fn run<S: XorSink>(self, s: &mut S, k: usize, input: &[S::Bit]) -> Vec<S::Bit> {
        match self {
            Encoder::Hadamard => hadamard(s, input),
            Encoder::SystematicPunctured => systematic_punctured(s, input),
            Encoder::Punctured => punctured(s, input),
            Encoder::GrayHadamard => gray_hadamard(s, input),
            Encoder::GrayPunctured => gray_punctured(s, input),
            Encoder::Shortened => shortened(s, input),
            Encoder::Hamming => {
                let x = spread_message(s, k, input);
                hamming_parities(s, &x)
            }
            Encoder::ExtendedHamming => {
                let x = spread_message(s, k, input);
                ext_hamming_parities(s, &x)
            }
        }
    }

    /// Runs the encoder on bits.
    pub fn encode(self, k: usize, x: &BitVec) -> Result<BitVec> {
        Ok(self.encode_counted(k, x)?.0)
    }

    /// Runs the encoder on bits and reports the number of XORs performed.
    pub fn encode_counted(self, k: usize, x: &BitVec) -> Result<(BitVec, usize)> {
        self.check_order(k)?;
        check_len(self.input_len(k), x.len())?;
        let bits: Vec<bool> = x.iter().collect();
        let mut d = Direct::default();
        let out = self.run(&mut d, k, &bits);
        Ok((BitVec::from_bools(&out), d.xors))
    }

    /// Runs the encoder symbolically. Message slots that the Hamming layouts
    /// pin to zero become constant-zero nodes.
    pub fn trace(self, k: usize) -> Result<Circuit> {
        self.check_order(k)?;
        let n = self.input_len(k);
        let mut t = Tracer::new(n);
        let inputs = t.inputs(n);
        let out = self.run(&mut t, k, &inputs);
        let label: fn(usize) -> String = match self {
            Encoder::Hamming | Encoder::ExtendedHamming => |i| format!("p{}", i + 1),
            Encoder::Shortened => |i| format!("p{i}"),
            _ => |i| format!("y{i}"),
        };
        Ok(t.finish(&out, label))
    }
}

impl fmt::Display for Encoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Encoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Encoder::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown encoder {s:?}")))
    }
}

/// Symbolic version of [`assemble_hamming_input`].
fn spread_message<S: XorSink>(s: &mut S, k: usize, msg: &[S::Bit]) -> Vec<S::Bit> {
    let zero = s.zero();
    let mut x = vec![zero; 1 << k];
    for (&q, &m) in hamming_message_positions(k).iter().zip(msg) {
        x[q] = m;
    }
    x
}

fn bits(v: &BitVec) -> Vec<bool> {
    v.iter().collect()
}

fn direct(f: fn(&mut Direct, &[bool]) -> Vec<bool>, x: &BitVec) -> BitVec {
    BitVec::from_bools(&f(&mut Direct::default(), &bits(x)))
}

/// Hadamard codeword `x G_k`.
pub fn p1_encode(x: &BitVec, k: usize) -> Result<BitVec> {
    Encoder::Hadamard.encode(k, x)
}

/// Systematic punctured Hadamard codeword `x G''_k`; `x[k]` multiplies the
/// even-weight row.
pub fn p2_encode(x: &BitVec, k: usize) -> Result<BitVec> {
    Encoder::SystematicPunctured.encode(k, x)
}

/// Punctured Hadamard codeword `x G'_k`; `x[k]` multiplies the all-ones row.
pub fn p2_nonsys_encode(x: &BitVec, k: usize) -> Result<BitVec> {
    Encoder::Punctured.encode(k, x)
}

/// `[p_1, ..., p_k]` with `p_j` the XOR of the `x_i` whose index has bit
/// `k - j` set. `x` need not respect the codeword layout.
pub fn p3_parities(x: &BitVec, k: usize) -> Result<BitVec> {
    check_order(k, 1, "hamming parities")?;
    check_len(1 << k, x.len())?;
    Ok(direct(hamming_parities, x))
}

/// [`p3_parities`] followed by `p_{k+1} = sum(x) + sum(p_1..p_k)`.
pub fn p4_parities(x: &BitVec, k: usize) -> Result<BitVec> {
    check_order(k, 1, "extended hamming parities")?;
    check_len(1 << k, x.len())?;
    Ok(direct(ext_hamming_parities, x))
}

/// Places the message in the `2^k`-slot layout: slot 0 and the power-of-two
/// slots are zero, the message fills the rest in ascending order.
pub fn assemble_hamming_input(msg: &BitVec, k: usize) -> Result<BitVec> {
    check_order(k, 2, "hamming layout")?;
    check_len((1 << k) - k - 1, msg.len())?;
    let mut x = BitVec::zeros(1 << k);
    for (t, q) in hamming_message_positions(k).into_iter().enumerate() {
        x.set(q, msg.get(t));
    }
    Ok(x)
}

/// Hamming codeword of length `2^k - 1`: slot `2^i` receives `p_{k-i}` and
/// slot 0 is dropped.
pub fn hamming_codeword(msg: &BitVec, k: usize) -> Result<BitVec> {
    let mut x = assemble_hamming_input(msg, k)?;
    let p = p3_parities(&x, k)?;
    for i in 0..k {
        x.set(1 << i, p.get(k - i - 1));
    }
    Ok(BitVec::from_fn((1 << k) - 1, |q| x.get(q + 1)))
}

/// Extended Hamming codeword of length `2^k`: as [`hamming_codeword`], with
/// slot 0 holding `p_{k+1}`.
pub fn ext_hamming_codeword(msg: &BitVec, k: usize) -> Result<BitVec> {
    let mut x = assemble_hamming_input(msg, k)?;
    let p = p4_parities(&x, k)?;
    for i in 0..k {
        x.set(1 << i, p.get(k - i - 1));
    }
    x.set(0, p.get(k));
    Ok(x)
}

/// Hadamard codeword in Gray column order, `x` times [`codes::gray_gen`].
pub fn gray_hadamard_encode(x: &BitVec, k: usize) -> Result<BitVec> {
    Encoder::GrayHadamard.encode(k, x)
}

/// `x` times [`codes::gray_systematic_gen`].
pub fn gray_punctured_encode(x: &BitVec, k: usize) -> Result<BitVec> {
    Encoder::GrayPunctured.encode(k, x)
}

/// Shortened-code parities `[p_0, ..., p_r]` of a `2^r`-bit message.
pub fn shortened_encode(msg: &BitVec, r: usize) -> Result<BitVec> {
    Encoder::Shortened.encode(r, msg)
}

/// The message followed by its parities in check-matrix column order,
/// `p_r` first.
pub fn shortened_codeword(msg: &BitVec, r: usize) -> Result<BitVec> {
    let p = shortened_encode(msg, r)?;
    let tail = BitVec::from_fn(r + 1, |c| p.get(r - c));
    Ok(msg.concat(&tail))
}

/// Full codeword of `family` as produced by its encoder, laid out like
/// [`codes::generator`].
pub fn codeword(family: CodeFamily, k: usize, msg: &BitVec) -> Result<BitVec> {
    family.check_order(k)?;
    match family {
        CodeFamily::Hamming => hamming_codeword(msg, k),
        CodeFamily::ExtendedHamming => ext_hamming_codeword(msg, k),
        CodeFamily::ShortenedHamming => shortened_codeword(msg, k),
        _ => Encoder::for_family(family).encode(k, msg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{optimize, Gate};
    use crate::codes::{gen_hadamard, gen_punctured, gen_systematic_punctured, naive_encode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn random(rng: &mut ChaCha8Rng, len: usize) -> BitVec {
        BitVec::from_fn(len, |_| rng.random())
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(p1_encode(&bv("1"), 1).unwrap(), bv("01"));
        assert_eq!(p1_encode(&bv("100"), 3).unwrap(), bv("00001111"));
        let g = gen_hadamard(3).unwrap();
        assert_eq!(p1_encode(&bv("111"), 3).unwrap(), naive_encode(&g, &bv("111")).unwrap());
        assert_eq!(p1_encode(&bv("111"), 3).unwrap(), bv("01101001"));
        assert!(p1_encode(&BitVec::zeros(0), 0).is_err());
    }

    #[test]
    fn systematic_punctured_examples() {
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let x = BitVec::from_bools(&[a, b]);
            assert_eq!(p2_encode(&x, 1).unwrap(), BitVec::from_bools(&[b, a]));
        }
        assert_eq!(p2_encode(&bv("0001"), 3).unwrap(), bv("10010110"));
        let g = gen_systematic_punctured(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = random(&mut rng, 4);
            assert_eq!(p2_encode(&x, 3).unwrap(), naive_encode(&g, &x).unwrap());
        }
    }

    #[test]
    fn punctured_examples() {
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let x = BitVec::from_bools(&[a, b]);
            assert_eq!(p2_nonsys_encode(&x, 1).unwrap(), BitVec::from_bools(&[b, a ^ b]));
        }
        assert!(p2_nonsys_encode(&BitVec::zeros(4), 3).unwrap().is_zero());
        let g = gen_punctured(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let x = random(&mut rng, 4);
            assert_eq!(p2_nonsys_encode(&x, 3).unwrap(), naive_encode(&g, &x).unwrap());
        }
    }

    /// Independent definition: `p_j` sums the `x_i` with bit `k - j` of `i` set.
    fn parity_oracle(x: &BitVec, k: usize) -> BitVec {
        BitVec::from_fn(k, |j| {
            (0..x.len())
                .filter(|i| (i >> (k - 1 - j)) & 1 == 1)
                .fold(false, |acc, i| acc ^ x.get(i))
        })
    }

    #[test]
    fn hamming_parity_examples() {
        assert!(p3_parities(&BitVec::zeros(8), 3).unwrap().is_zero());
        assert_eq!(p3_parities(&bv("00010000"), 3).unwrap(), bv("011"));
        assert_eq!(p3_parities(&bv("01"), 1).unwrap(), bv("1"));
        assert_eq!(p3_parities(&bv("00"), 1).unwrap(), bv("0"));
        assert!(p3_parities(&BitVec::zeros(7), 3).is_err());
    }

    #[test]
    fn hamming_parities_match_oracle_on_arbitrary_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=9 {
            for _ in 0..30 {
                let x = random(&mut rng, 1 << k);
                assert_eq!(p3_parities(&x, k).unwrap(), parity_oracle(&x, k));
            }
        }
    }

    #[test]
    fn extended_parities_extend_hamming_parities() {
        assert!(p4_parities(&BitVec::zeros(8), 3).unwrap().is_zero());
        assert_eq!(p4_parities(&bv("01"), 1).unwrap(), bv("10"));
        assert_eq!(p4_parities(&bv("10"), 1).unwrap(), bv("01"));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 1..=9 {
            for _ in 0..30 {
                let x = random(&mut rng, 1 << k);
                let p = p4_parities(&x, k).unwrap();
                let p3 = p3_parities(&x, k).unwrap();
                for j in 0..k {
                    assert_eq!(p.get(j), p3.get(j));
                }
                let overall = (x.weight() + p3.weight()) % 2 == 1;
                assert_eq!(p.get(k), overall);
            }
        }
    }

    #[test]
    fn layout_examples() {
        let x = assemble_hamming_input(&bv("1011"), 3).unwrap();
        assert_eq!(x, bv("00010011"));
        assert!(assemble_hamming_input(&BitVec::zeros(4), 3).unwrap().is_zero());
        let ones = assemble_hamming_input(&BitVec::ones(4), 3).unwrap();
        let zeros: Vec<usize> = (0..8).filter(|&i| !ones.get(i)).collect();
        assert_eq!(zeros, vec![0, 1, 2, 4]);
        assert!(assemble_hamming_input(&BitVec::zeros(3), 3).is_err());
    }

    #[test]
    fn hamming_codewords_check_out() {
        let h = codes::pcm_hamming(3).unwrap();
        assert!(hamming_codeword(&BitVec::zeros(4), 3).unwrap().is_zero());
        let y = hamming_codeword(&bv("1000"), 3).unwrap();
        assert!(codes::syndrome_is_zero(&h, &y).unwrap());
        for k in 3..=5 {
            let h = codes::pcm_hamming(k).unwrap();
            let m = (1 << k) - k - 1;
            for t in 0..m {
                let y = hamming_codeword(&BitVec::unit(m, t), k).unwrap();
                assert!(y.weight() >= 3);
                assert!(codes::syndrome_is_zero(&h, &y).unwrap());
            }
        }
    }

    #[test]
    fn extended_codewords_check_out() {
        let h = codes::pcm_ext_hamming(3).unwrap();
        assert!(ext_hamming_codeword(&BitVec::zeros(4), 3).unwrap().is_zero());
        let y = ext_hamming_codeword(&bv("1100"), 3).unwrap();
        assert!(codes::syndrome_is_zero(&h, &y).unwrap());
        for m in 0u64..16 {
            let y = ext_hamming_codeword(&BitVec::from_mask(4, m), 3).unwrap();
            assert_eq!(y.weight() % 2, 0);
            assert!(codes::syndrome_is_zero(&h, &y).unwrap());
        }
    }

    #[test]
    fn gray_hadamard_examples() {
        let c = Encoder::GrayHadamard.trace(3).unwrap();
        let node = |t: usize| c.gate(c.outputs()[t].node);
        assert_eq!(node(1), Gate::Input(2));
        assert_eq!(node(3), Gate::Input(1));
        assert_eq!(node(7), Gate::Input(0));
        assert_eq!(node(4), Gate::Xor(c.outputs()[3].node, NodeId(0)));
        assert_eq!(c.size(), 4);
        let g = codes::gray_gen(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random(&mut rng, 4);
            assert_eq!(gray_hadamard_encode(&x, 4).unwrap(), naive_encode(&g, &x).unwrap());
        }
        assert!(gray_hadamard_encode(&bv("1"), 1).is_err());
    }

    #[test]
    fn gray_punctured_examples() {
        let c = Encoder::GrayPunctured.trace(3).unwrap();
        // x'_0 = x_0 ^ x_3 is the first precomputed gate
        let shifted0 = NodeId(4);
        assert_eq!(c.gate(shifted0), Gate::Xor(NodeId(0), NodeId(3)));
        assert_eq!(c.gate(c.outputs()[4].node), Gate::Xor(c.outputs()[3].node, shifted0));
        assert_eq!(c.size(), 7);
        assert!(gray_punctured_encode(&BitVec::zeros(5), 4).unwrap().is_zero());
        let g = codes::gray_systematic_gen(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let x = random(&mut rng, 5);
            assert_eq!(gray_punctured_encode(&x, 4).unwrap(), naive_encode(&g, &x).unwrap());
        }
    }

    #[test]
    fn shortened_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random(&mut rng, 32);
            let p = shortened_encode(&x, 5).unwrap();
            let odd = (1..32).step_by(2).fold(false, |acc, i| acc ^ x.get(i));
            assert_eq!(p.get(0), x.get(0) ^ odd);
            let h = codes::pcm_shortened(5).unwrap();
            assert!(codes::syndrome_is_zero(&h, &shortened_codeword(&x, 5).unwrap()).unwrap());
        }
        assert!(shortened_encode(&BitVec::zeros(32), 5).unwrap().is_zero());
        assert_eq!(Encoder::Shortened.trace(3).unwrap().size(), 15);
        assert!(shortened_encode(&BitVec::zeros(31), 5).is_err());
        assert!(shortened_encode(&BitVec::zeros(2), 1).is_err());
    }

    #[test]
    fn trace_size_examples() {
        assert_eq!(Encoder::Hamming.trace(3).unwrap().size(), 10);
        assert_eq!(Encoder::Hadamard.trace(3).unwrap().size(), 4);
        assert_eq!(Encoder::SystematicPunctured.trace(3).unwrap().size(), 6);
    }

    #[test]
    fn encoders_match_reference_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for e in Encoder::ALL {
            for k in e.min_order()..=8 {
                let m = e.reference_matrix(k).unwrap();
                assert_eq!(m.rows(), e.input_len(k));
                assert_eq!(m.cols(), e.output_len(k));
                for _ in 0..40 {
                    let x = random(&mut rng, e.input_len(k));
                    assert_eq!(e.encode(k, &x).unwrap(), naive_encode(&m, &x).unwrap(), "{e} k={k}");
                }
            }
        }
    }

    #[test]
    fn trace_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for e in Encoder::ALL {
            for k in e.min_order()..=8 {
                let c = e.trace(k).unwrap();
                for _ in 0..100 {
                    let x = random(&mut rng, e.input_len(k));
                    assert_eq!(c.evaluate(&x).unwrap(), e.encode(k, &x).unwrap(), "{e} k={k}");
                }
            }
        }
    }

    #[test]
    fn direct_counts_match_trace_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for e in Encoder::ALL {
            for k in e.min_order()..=10 {
                let x = random(&mut rng, e.input_len(k));
                let (_, n) = e.encode_counted(k, &x).unwrap();
                assert_eq!(n, e.trace(k).unwrap().size(), "{e} k={k}");
            }
        }
    }

    fn raw_size(e: Encoder, k: usize) -> usize {
        let p = 1usize << k;
        match e {
            Encoder::Hadamard | Encoder::GrayHadamard => p - k - 1,
            Encoder::SystematicPunctured => p - 2,
            Encoder::Punctured | Encoder::GrayPunctured => p - 1,
            Encoder::Hamming | Encoder::ExtendedHamming => 2 * p - k - 3,
            Encoder::Shortened => 2 * p - 1,
        }
    }

    #[test]
    fn raw_sizes_follow_recurrences() {
        for e in Encoder::ALL {
            for k in 2..=14 {
                assert_eq!(e.trace(k).unwrap().size(), raw_size(e, k), "{e} k={k}");
            }
        }
    }

    #[test]
    fn optimized_hamming_sizes() {
        for k in 2..=12 {
            let p = 1usize << k;
            assert_eq!(optimize(&Encoder::Hamming.trace(k).unwrap()).size(), 2 * p - 3 * k - 2);
            assert_eq!(
                optimize(&Encoder::ExtendedHamming.trace(k).unwrap()).size(),
                2 * p - 2 * k - 4
            );
        }
    }

    #[test]
    fn depths() {
        for k in 2..=12 {
            assert_eq!(Encoder::Hadamard.trace(k).unwrap().depth(), k - 1);
            assert_eq!(Encoder::SystematicPunctured.trace(k).unwrap().depth(), k);
            assert!(Encoder::Shortened.trace(k).unwrap().depth() <= k + 1);
            let gray = Encoder::GrayHadamard.trace(k).unwrap().depth();
            assert!(gray + 1 >= ((1 << k) - 1usize).div_ceil(k));
        }
        for k in 3..=12 {
            assert_eq!(optimize(&Encoder::Hamming.trace(k).unwrap()).depth(), k - 1);
        }
    }

    #[test]
    fn codeword_dispatch_is_a_codeword() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in CodeFamily::ALL {
            for k in f.min_order().max(2)..=6 {
                let h = codes::parity_check(f, k).unwrap();
                let g = codes::generator(f, k).unwrap();
                for _ in 0..10 {
                    let m = random(&mut rng, f.message_len(k));
                    let y = codeword(f, k, &m).unwrap();
                    assert_eq!(y, naive_encode(&g, &m).unwrap(), "{f} k={k}");
                    assert!(codes::syndrome_is_zero(&h, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for e in Encoder::ALL {
            assert_eq!(e.name().parse::<Encoder>().unwrap(), e);
        }
    }
}
