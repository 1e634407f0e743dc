//! Integer compositions and their descent-set encoding.
//!
//! A composition `L = (j_1, ..., j_m)` of `n` corresponds to the subset
//! `Des L = {j_1, j_1 + j_2, ..., j_1 + ... + j_{m-1}}` of `[n-1]`. Subsets are
//! stored as `u32` bitmasks with bit `i - 1` standing for the element `i`, and
//! that bitmask doubles as the index of the composition among the `2^(n-1)`
//! compositions of `n`. Vectors in `QSym_n` are keyed by this index.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Largest degree whose descent subsets fit the `u32` encoding.
pub const ENCODING_LIMIT: usize = 32;

pub const DEFAULT_MAX_DEGREE: usize = 16;

static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

/// Current bound on the degrees that enumerating operations accept.
pub fn max_degree() -> usize {
    MAX_DEGREE.load(Ordering::Relaxed)
}

/// Changes the enumeration bound. Values above [`ENCODING_LIMIT`] are refused.
pub fn set_max_degree(degree: usize) -> Result<()> {
    if degree > ENCODING_LIMIT {
        return Err(Error::DegreeTooLarge {
            degree,
            max: ENCODING_LIMIT,
        });
    }
    MAX_DEGREE.store(degree, Ordering::Relaxed);
    Ok(())
}

/// Fails unless `n` is within the configured maximum degree.
pub fn check_degree(n: usize) -> Result<()> {
    let max = max_degree();
    if n > max {
        Err(Error::DegreeTooLarge { degree: n, max })
    } else {
        Ok(())
    }
}

fn check_encodable(n: usize) -> Result<()> {
    if n > ENCODING_LIMIT {
        Err(Error::DegreeTooLarge {
            degree: n,
            max: ENCODING_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Number of compositions of `n`.
pub fn num_compositions(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        1usize << (n - 1)
    }
}

/// Bitmask of `[n-1]`.
pub fn full_mask(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        (((1u64) << (n - 1)) - 1) as u32
    }
}

/// A degree together with a subset of `[n-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSetN {
    n: usize,
    mask: u32,
}

impl DescentSetN {
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        check_encodable(n)?;
        let mut mask = 0u32;
        for &e in elements {
            if e == 0 || e >= n {
                return Err(Error::InvalidSubset {
                    degree: n,
                    element: e,
                    bound: n.saturating_sub(1),
                });
            }
            mask |= 1 << (e - 1);
        }
        Ok(DescentSetN { n, mask })
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        check_encodable(n)?;
        let stray = mask & !full_mask(n);
        if stray != 0 {
            return Err(Error::InvalidSubset {
                degree: n,
                element: stray.trailing_zeros() as usize + 1,
                bound: n.saturating_sub(1),
            });
        }
        Ok(DescentSetN { n, mask })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }

    pub fn composition(&self) -> Composition {
        composition_from_mask(self.n, self.mask)
    }
}

impl fmt::Display for DescentSetN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Elements of a subset mask in increasing order (bit `i - 1` is element `i`).
pub fn mask_elements(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    n: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(parts));
        }
        let n = parts.iter().sum();
        check_encodable(n)?;
        Ok(Composition { parts, n })
    }

    pub fn empty() -> Self {
        Composition {
            parts: Vec::new(),
            n: 0,
        }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        let n = parts.iter().sum();
        Composition { parts, n }
    }

    /// The composition of `n` whose descent set has the given bitmask.
    pub fn from_index(n: usize, index: u32) -> Result<Self> {
        Ok(DescentSetN::from_mask(n, index)?.composition())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|L|`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.n
    }

    /// `ℓ(L)`, the number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn descent_set(&self) -> DescentSetN {
        DescentSetN {
            n: self.n,
            mask: self.index(),
        }
    }

    /// Position of this composition among the compositions of its size.
    pub fn index(&self) -> u32 {
        let mut mask = 0u32;
        let mut partial = 0;
        if let Some((_, init)) = self.parts.split_last() {
            for &p in init {
                partial += p;
                mask |= 1 << (partial - 1);
            }
        }
        mask
    }

    pub fn refines(&self, coarser: &Composition) -> bool {
        refines(self, coarser)
    }

    pub fn complement(&self) -> Composition {
        complement(self)
    }

    pub fn reverse(&self) -> Composition {
        reverse(self)
    }

    pub fn inversions(&self) -> usize {
        inversions(self)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then by index.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.index()).cmp(&(other.n, other.index()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                Error::Parse(format!("expected a parenthesised composition, got {s:?}"))
            })?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

pub(crate) fn composition_from_mask(n: usize, mask: u32) -> Composition {
    if n == 0 {
        return Composition::empty();
    }
    let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
    let mut prev = 0;
    for e in mask_elements(mask) {
        parts.push(e - prev);
        prev = e;
    }
    parts.push(n - prev);
    Composition { parts, n }
}

/// `Des L` as a degree-tagged subset.
pub fn descent_set(l: &Composition) -> DescentSetN {
    l.descent_set()
}

/// `Comp C` for `C ⊆ [n-1]`.
pub fn composition_of(n: usize, subset: &[usize]) -> Result<Composition> {
    Ok(DescentSetN::new(n, subset)?.composition())
}

/// All compositions of `n`, ordered by the bitmask of their descent sets.
pub fn compositions_of(n: usize) -> Result<Vec<Composition>> {
    check_degree(n)?;
    check_encodable(n)?;
    Ok((0..num_compositions(n) as u64)
        .map(|m| composition_from_mask(n, m as u32))
        .collect())
}

/// Whether `fine` refines `coarse`, i.e. `Des coarse ⊆ Des fine`.
pub fn refines(fine: &Composition, coarse: &Composition) -> bool {
    fine.size() == coarse.size() && coarse.index() & !fine.index() == 0
}

/// `L^c = Comp([n-1] \ Des L)`.
pub fn complement(l: &Composition) -> Composition {
    let n = l.size();
    composition_from_mask(n, full_mask(n) & !l.index())
}

/// Descent mask of `L^r`: `[n-1] \ (n - Des L)`.
pub(crate) fn reverse_mask(n: usize, mask: u32) -> u32 {
    if n <= 1 {
        return 0;
    }
    // i -> n - i maps bit (i - 1) to bit (n - i - 1), which is a bit reversal
    // within the low n - 1 bits.
    let mirrored = mask.reverse_bits() >> (32 - (n - 1));
    full_mask(n) & !mirrored
}

/// `L^r = Comp([n-1] \ (n - Des L))`, the descent composition of the reversed
/// permutation. Its parts are those of `L^c` read right to left.
pub fn reverse(l: &Composition) -> Composition {
    let n = l.size();
    composition_from_mask(n, reverse_mask(n, l.index()))
}

/// Number of pairs `k < l` with `j_k > j_l`.
pub fn inversions(l: &Composition) -> usize {
    let p = l.parts();
    let mut count = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                count += 1;
            }
        }
    }
    count
}
