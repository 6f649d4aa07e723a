//! Lower bounds on encoder size, the exact search used to cross-check them,
//! and the report comparing both with the traced encoders.

mod search;

use std::fmt;

use crate::circuit::optimize;
use crate::codes::{self, check_order, CodeFamily};
use crate::encoders::Encoder;
use crate::error::Result;
use crate::gf2::BitVec;

pub use search::{
    search_threads, slp_min_search, slp_min_search_with, SearchBudget, SearchOutcome, SearchResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBound {
    Known(usize),
    /// No bound has been proven for the family.
    Unknown,
}

impl LowerBound {
    pub fn value(self) -> Option<usize> {
        match self {
            LowerBound::Known(v) => Some(v),
            LowerBound::Unknown => None,
        }
    }
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerBound::Known(v) => write!(f, "{v}"),
            LowerBound::Unknown => f.write_str("unknown"),
        }
    }
}

/// Fewest XORs any circuit for the family's encoding map can use.
pub fn lower_bound(family: CodeFamily, k: usize) -> Result<LowerBound> {
    check_order(k, 2, "lower bound")?;
    let p = 1usize << k;
    Ok(match family {
        CodeFamily::Hadamard => LowerBound::Known(p - k - 1),
        CodeFamily::SystematicPuncturedHadamard => LowerBound::Known(p - 2),
        CodeFamily::PuncturedHadamard => LowerBound::Known(p - 1),
        CodeFamily::Hamming => LowerBound::Known(2 * p - 3 * k - 2),
        CodeFamily::ExtendedHamming => LowerBound::Known(2 * p - 2 * k - 4),
        CodeFamily::ShortenedHamming => LowerBound::Unknown,
    })
}

/// Distinct generator columns that cost at least one XOR: nonzero and not a
/// unit vector, in order of first appearance.
pub fn target_columns(family: CodeFamily, k: usize) -> Result<Vec<BitVec>> {
    let g = codes::generator(family, k)?;
    let mut out: Vec<BitVec> = Vec::new();
    for c in g.columns() {
        if c.weight() > 1 && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Searched {
    NotRun,
    Minimum(usize),
    /// Nothing with at most this many gates exists.
    Above(usize),
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    pub family: CodeFamily,
    pub k: usize,
    pub lower: LowerBound,
    /// Size of the optimized traced encoder.
    pub achieved: usize,
    pub searched: Searched,
}

impl TightnessReport {
    /// `lower <= searched <= achieved` wherever the quantities are known.
    pub fn consistent(&self) -> bool {
        let lower = self.lower.value().unwrap_or(0);
        if lower > self.achieved {
            return false;
        }
        match self.searched {
            Searched::Minimum(s) => lower <= s && s <= self.achieved,
            Searched::Above(g) => g < self.achieved,
            Searched::NotRun | Searched::TimedOut => true,
        }
    }

    /// The bound is met by the encoder (and by the search, when it ran).
    pub fn tight(&self) -> Option<bool> {
        let lower = self.lower.value()?;
        Some(match self.searched {
            Searched::Minimum(s) => lower == s && s == self.achieved,
            _ => lower == self.achieved,
        })
    }
}

impl fmt::Display for TightnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lower={} achieved={} searched=", self.lower, self.achieved)?;
        match self.searched {
            Searched::NotRun => f.write_str("skipped")?,
            Searched::Minimum(s) => write!(f, "{s}")?,
            Searched::Above(g) => write!(f, ">{g}")?,
            Searched::TimedOut => f.write_str("timeout")?,
        }
        let tight = match self.tight() {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        write!(f, " tight={tight}")
    }
}

/// Compares the bound, the optimized encoder and, when `budget` is given, the
/// exact search minimum.
pub fn verify_tightness(family: CodeFamily, k: usize, budget: Option<SearchBudget>) -> Result<TightnessReport> {
    let lower = lower_bound(family, k)?;
    let achieved = optimize(&Encoder::for_family(family).trace(k)?).size();
    let searched = match budget {
        None => Searched::NotRun,
        Some(b) => match slp_min_search(&target_columns(family, k)?, b)?.outcome {
            SearchOutcome::Found(c) => Searched::Minimum(c.size()),
            SearchOutcome::ProvenAbove(g) => Searched::Above(g),
            SearchOutcome::TimedOut => Searched::TimedOut,
        },
    };
    Ok(TightnessReport {
        family,
        k,
        lower,
        achieved,
        searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn known(f: CodeFamily, k: usize) -> usize {
        lower_bound(f, k).unwrap().value().unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(known(CodeFamily::Hamming, 3), 5);
        assert_eq!(known(CodeFamily::Hamming, 2), 0);
        assert_eq!(known(CodeFamily::SystematicPuncturedHadamard, 3), 6);
        assert_eq!(known(CodeFamily::Hadamard, 2), 1);
        assert_eq!(known(CodeFamily::PuncturedHadamard, 3), 7);
        assert_eq!(known(CodeFamily::ExtendedHamming, 3), 6);
        assert_eq!(lower_bound(CodeFamily::ShortenedHamming, 5).unwrap(), LowerBound::Unknown);
        assert!(lower_bound(CodeFamily::Hamming, 1).is_err());
    }

    #[test]
    fn target_column_counts() {
        assert_eq!(target_columns(CodeFamily::Hadamard, 2).unwrap().len(), 1);
        assert_eq!(target_columns(CodeFamily::PuncturedHadamard, 2).unwrap().len(), 3);
        assert_eq!(target_columns(CodeFamily::SystematicPuncturedHadamard, 2).unwrap().len(), 1);
        assert_eq!(target_columns(CodeFamily::Hamming, 2).unwrap().len(), 0);
        assert_eq!(target_columns(CodeFamily::Hamming, 3).unwrap().len(), 3);
    }

    #[test]
    fn report_examples() {
        let b = Some(SearchBudget::new(12, 30.0).unwrap());
        let r = verify_tightness(CodeFamily::SystematicPuncturedHadamard, 2, b).unwrap();
        assert_eq!(r.to_string(), "lower=2 achieved=2 searched=2 tight=yes");
        let r = verify_tightness(CodeFamily::Hamming, 2, b).unwrap();
        assert_eq!(r.to_string(), "lower=0 achieved=0 searched=0 tight=yes");
        let r = verify_tightness(CodeFamily::PuncturedHadamard, 2, b).unwrap();
        assert_eq!(r.to_string(), "lower=3 achieved=3 searched=3 tight=yes");
        assert!(r.consistent());
        let r = verify_tightness(CodeFamily::ShortenedHamming, 2, None).unwrap();
        assert_eq!(r.to_string(), "lower=unknown achieved=7 searched=skipped tight=unknown");
    }

    #[test]
    fn encoders_meet_bounds() {
        for f in CodeFamily::ALL {
            if f == CodeFamily::ShortenedHamming {
                continue;
            }
            for k in 2..=10 {
                let r = verify_tightness(f, k, None).unwrap();
                assert_eq!(r.tight(), Some(true), "{f} k={k}: {r}");
            }
        }
    }

    #[test]
    fn search_agrees_at_order_three() {
        let b = Some(SearchBudget::new(12, 60.0).unwrap());
        for f in CodeFamily::ALL {
            if f == CodeFamily::ShortenedHamming {
                continue;
            }
            let r = verify_tightness(f, 3, b).unwrap();
            assert!(r.consistent(), "{r}");
            assert_eq!(r.tight(), Some(true), "{f}: {r}");
        }
    }
}
