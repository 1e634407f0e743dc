use std::fmt;
use std::str::FromStr;

/// Inclusive degree range written `LO..HI`, `LO..=HI` or a single `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl DegreeRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        DegreeRange { lo, hi }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid degree {t:?} in {s:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty degree range {s:?}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}
