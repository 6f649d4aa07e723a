//! Command-line front end. [`run`] does all the work and returns what should
//! be printed, so it can be exercised without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{verify_tightness, SearchBudget, Searched};
use crate::circuit::optimize;
use crate::codes::{self, CodeFamily};
use crate::encoders::{self, Encoder};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

const DEFAULT_SEED: u64 = 2024;

const FAMILIES: &str =
    "hadamard, punct-hadamard, sys-punct-hadamard, hamming, ext-hamming, shortened-hamming";

#[derive(Debug, Parser)]
#[command(name = "xorlin", version, about = "XOR-count-minimal encoders for Hamming and Hadamard codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a generator or parity-check matrix, one row per line.
    Matrix {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
        /// Systematic form (punct-hadamard, or ext-hamming with --pcm).
        #[arg(long)]
        systematic: bool,
        /// Parity-check matrix instead of the generator.
        #[arg(long)]
        pcm: bool,
    },
    /// Encode a message and print the codeword.
    Encode {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
        /// Message as a 0/1 string, or hex with a 0x prefix (most significant
        /// bit first).
        #[arg(long)]
        msg: String,
    },
    /// Trace the family's encoder into a circuit.
    Circuit {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
        /// Fold constants, merge duplicates and drop dead gates.
        #[arg(long)]
        optimize: bool,
        /// Write the circuit in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print only `size=.. depth=..`.
        #[arg(long)]
        stats: bool,
    },
    /// Check bounds or code properties.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Time the family's encoder on random messages.
    Bench {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Compare the lower bound, the optimized encoder and an exact search.
    Bounds {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
        /// Run the exhaustive minimum-circuit search.
        #[arg(long)]
        search: bool,
        /// Largest circuit the search considers [default: encoder size].
        #[arg(long, requires = "search")]
        max_gates: Option<usize>,
        /// Search time limit in seconds.
        #[arg(long, default_value_t = 60.0, requires = "search")]
        timeout: f64,
    },
    /// Minimum distance by enumerating every codeword.
    Distance {
        #[arg(help = FAMILIES)]
        family: CodeFamily,
        k: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and executes the command. Exit code 2
/// means the arguments did not parse, 1 that a check or operation failed.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Outcome::default();
    match execute(cli.command, &mut out.stdout) {
        Ok(true) => {}
        Ok(false) => out.code = 1,
        Err(e) => {
            out.code = 1;
            out.stderr = format!("error: {e}\n");
        }
    }
    out
}

/// Returns whether every check passed.
fn execute(command: Command, out: &mut String) -> Result<bool> {
    match command {
        Command::Matrix { family, k, systematic, pcm } => {
            out.push_str(&select_matrix(family, k, systematic, pcm)?.to_text());
            Ok(true)
        }
        Command::Encode { family, k, msg } => {
            family.check_order(k)?;
            let m = parse_message(&msg, family.message_len(k))?;
            let y = encoders::codeword(family, k, &m)?;
            if !codes::syndrome_is_zero(&codes::parity_check(family, k)?, &y)? {
                return Err(Error::Precondition(format!("codeword {y} fails the parity check")));
            }
            let _ = writeln!(out, "{y}");
            Ok(true)
        }
        Command::Circuit { family, k, optimize: opt, dot, stats } => {
            let mut c = Encoder::for_family(family).trace(k)?;
            if opt {
                c = optimize(&c);
            }
            if let Some(path) = dot {
                std::fs::write(&path, c.to_dot())
                    .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))?;
            }
            if !stats {
                out.push_str(&c.to_string());
            }
            let _ = writeln!(out, "{}", c.stats());
            Ok(true)
        }
        Command::Verify { check: Check::Bounds { family, k, search, max_gates, timeout } } => {
            let budget = if search {
                let cap = match max_gates {
                    Some(g) => g,
                    None => optimize(&Encoder::for_family(family).trace(k)?).size(),
                };
                Some(SearchBudget::new(cap, timeout)?)
            } else {
                None
            };
            let report = verify_tightness(family, k, budget)?;
            let _ = writeln!(out, "{report}");
            if report.searched == Searched::TimedOut {
                let _ = writeln!(out, "search timed out after {timeout} s");
                return Ok(false);
            }
            Ok(report.consistent())
        }
        Command::Verify { check: Check::Distance { family, k } } => {
            let d = codes::min_distance(&codes::generator(family, k)?)?;
            let _ = writeln!(out, "distance={d}");
            Ok(true)
        }
        Command::Bench { family, k, iters, seed } => {
            let enc = Encoder::for_family(family);
            enc.check_order(k)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let len = enc.input_len(k);
            let msgs: Vec<BitVec> = (0..iters.clamp(1, 64))
                .map(|_| BitVec::from_fn(len, |_| rng.random()))
                .collect();
            let mut xors = 0;
            let mut sink = 0usize;
            let start = Instant::now();
            for i in 0..iters {
                let (y, n) = enc.encode_counted(k, &msgs[(i % msgs.len() as u64) as usize])?;
                xors = n;
                sink ^= y.weight();
            }
            let secs = start.elapsed().as_secs_f64().max(1e-9);
            std::hint::black_box(sink);
            let _ = writeln!(out, "encodes_per_sec={:.1} xors={xors}", iters as f64 / secs);
            Ok(true)
        }
    }
}

fn select_matrix(family: CodeFamily, k: usize, systematic: bool, pcm: bool) -> Result<BitMatrix> {
    use CodeFamily::*;
    match (family, systematic, pcm) {
        (_, false, false) => codes::generator(family, k),
        (_, false, true) => codes::parity_check(family, k),
        (PuncturedHadamard | SystematicPuncturedHadamard, true, false) => codes::gen_systematic_punctured(k),
        (ExtendedHamming, true, true) => codes::pcm_systematic_ext_hamming(k),
        // the generators of these families are systematic already
        (Hamming | ExtendedHamming | ShortenedHamming, true, false) => codes::generator(family, k),
        (ShortenedHamming, true, true) => codes::parity_check(family, k),
        _ => Err(Error::Parameter(format!(
            "no systematic {} for {family}",
            if pcm { "parity-check matrix" } else { "generator" }
        ))),
    }
}

/// A 0/1 string of exactly `len` symbols, or `0x` hex whose value fits in
/// `len` bits, expanded most significant bit first.
fn parse_message(text: &str, len: usize) -> Result<BitVec> {
    if let Some(hex) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        if hex.is_empty() {
            return Err(Error::Parse("empty hex message".into()));
        }
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for c in hex.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in hex message")))?;
            bits.extend((0..4).rev().map(|b| (d >> b) & 1 == 1));
        }
        let excess = bits.len().saturating_sub(len);
        if bits[..excess].iter().any(|&b| b) {
            return Err(Error::Parse(format!("hex message {text} does not fit in {len} bits")));
        }
        let pad = len.saturating_sub(bits.len());
        return Ok(BitVec::from_fn(len, |i| i >= pad && bits[excess + i - pad]));
    }
    let v: BitVec = text.parse()?;
    if v.len() != len {
        return Err(Error::Parse(format!("message has {} bits, expected {len}", v.len())));
    }
    Ok(v)
}
