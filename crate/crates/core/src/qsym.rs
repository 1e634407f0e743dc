//! Homogeneous quasisymmetric functions in the monomial and fundamental bases.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{
    check_degree, composition_from_mask, full_mask, reverse_mask, Composition,
};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVector};
use crate::statistics::{for_each_position_subset, shuffles, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Monomial basis `M_L`.
    M,
    /// Fundamental basis `F_L`.
    F,
}

impl Basis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A homogeneous element of degree `n`, stored as composition index →
/// nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymElement {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<u32, Rational>,
}

impl QSymElement {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        QSymElement {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, l: &Composition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(l.index(), Rational::one());
        QSymElement {
            degree: l.size(),
            basis,
            coeffs,
        }
    }

    /// `F_L`.
    pub fn f(l: &Composition) -> Self {
        Self::basis_element(Basis::F, l)
    }

    /// `M_L`.
    pub fn m(l: &Composition) -> Self {
        Self::basis_element(Basis::M, l)
    }

    /// Basis element indexed by the subset with bitmask `mask` of `[n-1]`.
    pub fn from_mask(degree: usize, basis: Basis, mask: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(mask, Rational::one());
        QSymElement {
            degree,
            basis,
            coeffs,
        }
    }

    pub fn from_terms(
        degree: usize,
        basis: Basis,
        terms: impl IntoIterator<Item = (Composition, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(degree, basis);
        for (l, c) in terms {
            if l.size() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: l.size(),
                });
            }
            out.add_term(l.index(), &c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, index: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(index).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the basis element indexed by `l`.
    pub fn coeff(&self, l: &Composition) -> Rational {
        if l.size() != self.degree {
            return Rational::zero();
        }
        self.coeffs.get(&l.index()).cloned().unwrap_or_default()
    }

    /// Terms in increasing composition index.
    pub fn terms(&self) -> impl Iterator<Item = (Composition, &Rational)> + '_ {
        self.coeffs
            .iter()
            .map(|(&i, c)| (composition_from_mask(self.degree, i), c))
    }

    pub fn coefficients_by_index(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (&i, c) in &self.coeffs {
            out.add_term(i, &(c * factor));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Sum; mixed bases are both expressed in `F` first.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (a, b) = if self.basis == other.basis {
            (self.clone(), other.clone())
        } else {
            (self.to_f(), other.to_f())
        };
        let mut out = a;
        for (&i, c) in &b.coeffs {
            out.add_term(i, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// This element in the `F` basis.
    pub fn to_f(&self) -> Self {
        match self.basis {
            Basis::F => self.clone(),
            Basis::M => m_to_f_unchecked(self),
        }
    }

    /// This element in the `M` basis.
    pub fn to_m(&self) -> Self {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => f_to_m_unchecked(self),
        }
    }

    /// Coordinates in the `F` basis as a sparse vector.
    pub fn to_f_vector(&self) -> SparseVector {
        let f = self.to_f();
        SparseVector::from_entries(f.degree, f.coeffs)
            .expect("indices are in range by construction")
    }

    pub fn from_f_vector(v: &SparseVector) -> Self {
        let mut out = Self::zero(v.degree(), Basis::F);
        for (i, c) in v.entries() {
            out.add_term(*i, c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ElementJson::from(self)).expect("element JSON is always valid")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: ElementJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("bad element JSON: {e}")))?;
        let mut terms = Vec::with_capacity(parsed.terms.len());
        for t in parsed.terms {
            let l: Composition = t.composition.parse()?;
            terms.push((l, t.coeff.parse::<Rational>()?));
        }
        QSymElement::from_terms(parsed.degree, parsed.basis, terms)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (l, c)) in self.terms().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}_{l}", self.basis)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    composition: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    degree: usize,
    basis: Basis,
    terms: Vec<TermJson>,
}

impl From<&QSymElement> for ElementJson {
    fn from(e: &QSymElement) -> Self {
        ElementJson {
            degree: e.degree,
            basis: e.basis,
            terms: e
                .terms()
                .map(|(l, c)| TermJson {
                    composition: l.to_string(),
                    coeff: c.to_fraction_string(),
                })
                .collect(),
        }
    }
}

fn require_basis(e: &QSymElement, basis: Basis) -> Result<()> {
    if e.basis != basis {
        return Err(Error::BasisMismatch {
            expected: basis.as_str(),
            found: e.basis.as_str(),
        });
    }
    Ok(())
}

/// Calls `f` with every mask `B` with `lower ⊆ B ⊆ upper`.
fn for_each_between(lower: u32, upper: u32, mut f: impl FnMut(u32)) {
    debug_assert_eq!(lower & !upper, 0);
    let free = upper & !lower;
    let mut sub = free;
    loop {
        f(lower | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

fn sign(bits: u32) -> Rational {
    if bits.count_ones().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn f_to_m_unchecked(e: &QSymElement) -> QSymElement {
    let full = full_mask(e.degree);
    let mut out = QSymElement::zero(e.degree, Basis::M);
    for (&c_mask, coef) in &e.coeffs {
        for_each_between(c_mask, full, |b| out.add_term(b, coef));
    }
    out
}

fn m_to_f_unchecked(e: &QSymElement) -> QSymElement {
    let full = full_mask(e.degree);
    let mut out = QSymElement::zero(e.degree, Basis::F);
    for (&c_mask, coef) in &e.coeffs {
        for_each_between(c_mask, full, |b| {
            out.add_term(b, &(coef * &sign(b & !c_mask)));
        });
    }
    out
}

/// Expands each `F_L` as the sum of `M_K` over all `K` refining `L`.
pub fn f_to_m(e: &QSymElement) -> Result<QSymElement> {
    require_basis(e, Basis::F)?;
    Ok(f_to_m_unchecked(e))
}

/// Expands each `M_{n,C}` as `Σ_{B ⊇ C} (-1)^{|B∖C|} F_{n,B}`.
pub fn m_to_f(e: &QSymElement) -> Result<QSymElement> {
    require_basis(e, Basis::M)?;
    Ok(m_to_f_unchecked(e))
}

/// A permutation of `{offset+1, …, offset+|L|}` with descent composition `L`.
///
/// Each block of consecutive letters is increasing, and every block sits
/// immediately above the blocks to its right, so descents occur exactly
/// between blocks.
pub fn realize_permutation(l: &Composition, offset: u32) -> Permutation {
    let mut letters = Vec::with_capacity(l.size());
    let mut above = offset + l.size() as u32;
    for &part in l.parts() {
        let start = above - part as u32;
        letters.extend(start + 1..=above);
        above = start;
    }
    Permutation::from_letters_unchecked(letters)
}

/// Multiplicities of `Comp τ` over the shuffles `τ` of a permutation with
/// descent set `a_mask` (degree `a`) and one with descent set `b_mask`
/// (degree `b`), all letters of the first below all letters of the second.
fn shuffle_descent_counts(a: usize, a_mask: u32, b: usize, b_mask: u32) -> BTreeMap<u32, u64> {
    let total = a + b;
    let mut counts = BTreeMap::new();
    for_each_position_subset(total, a, |positions| {
        let mut mask = 0u32;
        let (mut i, mut j) = (0usize, 0usize);
        // (word, index within word) of the previous letter
        let mut prev: Option<(bool, usize)> = None;
        for pos in 0..total {
            let in_first = positions & (1 << pos) != 0;
            let here = if in_first {
                i += 1;
                (true, i - 1)
            } else {
                j += 1;
                (false, j - 1)
            };
            if let Some((prev_first, prev_idx)) = prev {
                let descent = match (prev_first, in_first) {
                    (true, true) => a_mask & (1 << prev_idx) != 0,
                    (false, false) => b_mask & (1 << prev_idx) != 0,
                    (true, false) => false,
                    (false, true) => true,
                };
                if descent {
                    mask |= 1 << (pos - 1);
                }
            }
            prev = Some(here);
        }
        *counts.entry(mask).or_insert(0) += 1;
    });
    counts
}

/// The shuffle product of two elements in the `F` basis.
pub fn multiply_f(x: &QSymElement, y: &QSymElement) -> Result<QSymElement> {
    require_basis(x, Basis::F)?;
    require_basis(y, Basis::F)?;
    let total = x.degree + y.degree;
    check_degree(total)?;
    let mut out = QSymElement::zero(total, Basis::F);
    for (&lm, lc) in &x.coeffs {
        for (&km, kc) in &y.coeffs {
            let coef = lc * kc;
            for (mask, count) in shuffle_descent_counts(x.degree, lm, y.degree, km) {
                out.add_term(mask, &(&coef * &Rational::from_integer(count as i64)));
            }
        }
    }
    Ok(out)
}

/// Product of arbitrary elements, returned in the `F` basis.
pub fn multiply(x: &QSymElement, y: &QSymElement) -> Result<QSymElement> {
    multiply_f(&x.to_f(), &y.to_f())
}

/// `F_L F_K` computed by materialising the shuffles of realised
/// permutations with letters offset by `offset`.
pub fn multiply_f_via_permutations(
    l: &Composition,
    k: &Composition,
    offset: u32,
) -> Result<QSymElement> {
    let p = realize_permutation(l, offset);
    let q = realize_permutation(k, offset + l.size() as u32);
    let total = l.size() + k.size();
    check_degree(total)?;
    let mut out = QSymElement::zero(total, Basis::F);
    for t in shuffles(&p, &q)? {
        out.add_term(t.descent_mask(), &Rational::one());
    }
    Ok(out)
}

/// `ψ(M_L) = (-1)^{n-ℓ(L)} Σ_{L ≤ K} M_K`, the sum over all coarsenings `K`
/// of `L`.
pub fn psi_monomial(l: &Composition) -> QSymElement {
    let n = l.size();
    let mut out = QSymElement::zero(n, Basis::M);
    let sgn = if (n - l.num_parts()).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    for_each_between(0, l.index(), |k| out.add_term(k, &sgn));
    out
}

/// The involution `F_L ↦ F_{L^c}`, extended linearly; the result stays in
/// the basis of the input.
pub fn psi(e: &QSymElement) -> QSymElement {
    let mut out = QSymElement::zero(e.degree, e.basis);
    match e.basis {
        Basis::F => {
            let full = full_mask(e.degree);
            for (&i, c) in &e.coeffs {
                out.add_term(full & !i, c);
            }
        }
        Basis::M => {
            for (&i, c) in &e.coeffs {
                let image = psi_monomial(&composition_from_mask(e.degree, i));
                for (&k, s) in &image.coeffs {
                    out.add_term(k, &(c * s));
                }
            }
        }
    }
    out
}

/// The involution `F_L ↦ F_{L^r}`, extended linearly; `M` inputs are routed
/// through `F` and converted back.
pub fn rho(e: &QSymElement) -> QSymElement {
    match e.basis {
        Basis::F => {
            let mut out = QSymElement::zero(e.degree, Basis::F);
            for (&i, c) in &e.coeffs {
                out.add_term(reverse_mask(e.degree, i), c);
            }
            out
        }
        Basis::M => rho(&e.to_f()).to_m(),
    }
}

fn check_subset_and_k(n: usize, c: u32, k: usize) -> Result<()> {
    check_degree(n)?;
    if n < 2 || k == 0 || k > n - 1 {
        return Err(Error::Precondition(format!(
            "k = {k} is not in [{}]",
            n.saturating_sub(1)
        )));
    }
    if c & !full_mask(n) != 0 {
        return Err(Error::Precondition(format!(
            "subset {c:#b} is not inside [{}]",
            n - 1
        )));
    }
    if c & (1 << (k - 1)) != 0 {
        return Err(Error::Precondition(format!("k = {k} lies in C")));
    }
    Ok(())
}

/// `Σ_{C ⊆ B ⊆ [n-1], k ∉ B} (-1)^{|B∖C|} F_{n,B}`, which equals
/// `M_{n,C} + M_{n,C∪{k}}`. `c` is the bitmask of `C`.
pub fn monomial_pair_in_f(n: usize, c: u32, k: usize) -> Result<QSymElement> {
    check_subset_and_k(n, c, k)?;
    let upper = full_mask(n) & !(1 << (k - 1));
    let mut out = QSymElement::zero(n, Basis::F);
    for_each_between(c, upper, |b| out.add_term(b, &sign(b & !c)));
    Ok(out)
}

/// `Σ_{C ⊆ B ⊆ [n-1], k, k-1 ∉ B} (-1)^{|B∖C|} (F_{n,B} - F_{n,B∪{k-1}})`,
/// valid when `k-1 ∉ C ∪ {0}`.
pub fn monomial_pair_as_differences(n: usize, c: u32, k: usize) -> Result<QSymElement> {
    check_subset_and_k(n, c, k)?;
    if k < 2 || c & (1 << (k - 2)) != 0 {
        return Err(Error::Precondition(format!(
            "k - 1 = {} lies in C ∪ {{0}}",
            k - 1
        )));
    }
    let below = 1u32 << (k - 2);
    let upper = full_mask(n) & !(1 << (k - 1)) & !below;
    let mut out = QSymElement::zero(n, Basis::F);
    for_each_between(c, upper, |b| {
        let s = sign(b & !c);
        out.add_term(b, &s);
        out.add_term(b | below, &-s);
    });
    Ok(out)
}
