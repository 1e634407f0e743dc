//! Index sets `Ω_{n,1..4}` of pairs `(C, k)` with `C ⊆ [n-1]` and
//! `k ∈ [n-1]`, and the families `f_{C,k}`, `m_{C,k}` indexed by them.
//!
//! Subsets are bitmasks with bit `i - 1` standing for element `i`. The
//! membership predicates follow the set definitions literally, with `0` as
//! an extra element where `C ∪ {0}` appears.

use std::fmt;

use serde::Serialize;

use crate::composition::{check_degree, compositions_of, full_mask, mask_elements};
use crate::error::{Error, Result};
use crate::linalg::{spans_equal, SparseVector};
use crate::qsym::{Basis, QSymElement};
use crate::statistics::StatisticId;

use super::checks::{monomial_span_vectors, relation_difference_vectors};
use super::graph::relation_edges;
use super::relations::{successors, RelationId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    Omega1,
    Omega2,
    Omega3,
    Omega4,
}

impl Region {
    pub const ALL: [Region; 4] = [
        Region::Omega1,
        Region::Omega2,
        Region::Omega3,
        Region::Omega4,
    ];
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Region::Omega1 => 1,
            Region::Omega2 => 2,
            Region::Omega3 => 3,
            Region::Omega4 => 4,
        };
        write!(f, "Omega_{i}")
    }
}

// `i ∈ C` for i >= 1; i = 0 and out-of-range i are never members.
fn has(c: u32, i: i64) -> bool {
    (1..=32).contains(&i) && c & (1 << (i - 1)) != 0
}

// `i ∈ C ∪ {0}`.
fn has0(c: u32, i: i64) -> bool {
    i == 0 || has(c, i)
}

/// Literal membership test for `(C, k)` in the given region at degree `n`.
pub fn in_region(region: Region, n: usize, c: u32, k: usize) -> bool {
    if n < 2 || k == 0 || k > n - 1 || c & !full_mask(n) != 0 {
        return false;
    }
    let (n, k) = (n as i64, k as i64);
    let full = full_mask(n as usize);
    match region {
        Region::Omega1 => c != full && !has(c, k) && !has(c, k - 1) && has0(c, k - 2),
        Region::Omega2 => {
            let below = full_mask((n - 1) as usize); // [n-2]
            c & !below == 0
                && c != below
                && has(c, n - 2)
                && !has(c, k)
                && has(c, k + 1)
                && has0(c, k - 1)
        }
        Region::Omega3 => c == full_mask((n - 1) as usize) && k == n - 1,
        Region::Omega4 => {
            has(c, n - 1)
                && has0(c, k - 1)
                && has(c, k)
                && !has(c, k + 1)
                && has(c, k + 2)
                && std::iter::once(0)
                    .chain(mask_elements(c).into_iter().map(|i| i as i64))
                    .filter(|&j| j != n - 1)
                    .all(|j| has(c, j + 1) || has(c, j + 2))
        }
    }
}

/// The four regions at degree `n`, each sorted by `(C, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSets {
    pub degree: usize,
    pub omega1: Vec<(u32, usize)>,
    pub omega2: Vec<(u32, usize)>,
    pub omega3: Vec<(u32, usize)>,
    pub omega4: Vec<(u32, usize)>,
}

impl OmegaSets {
    pub fn region(&self, region: Region) -> &[(u32, usize)] {
        match region {
            Region::Omega1 => &self.omega1,
            Region::Omega2 => &self.omega2,
            Region::Omega3 => &self.omega3,
            Region::Omega4 => &self.omega4,
        }
    }

    /// `Ω_n = Ω_{n,1} ⊔ Ω_{n,2} ⊔ Ω_{n,3}` with region tags.
    pub fn omega(&self) -> Vec<(Region, u32, usize)> {
        self.tagged(&[Region::Omega1, Region::Omega2, Region::Omega3])
    }

    /// `Θ_n = Ω_n ⊔ Ω_{n,4}` with region tags.
    pub fn theta(&self) -> Vec<(Region, u32, usize)> {
        self.tagged(&Region::ALL)
    }

    fn tagged(&self, regions: &[Region]) -> Vec<(Region, u32, usize)> {
        regions
            .iter()
            .flat_map(|&r| self.region(r).iter().map(move |&(c, k)| (r, c, k)))
            .collect()
    }
}

pub fn omega_sets(n: usize) -> Result<OmegaSets> {
    check_degree(n)?;
    let mut sets = OmegaSets {
        degree: n,
        omega1: Vec::new(),
        omega2: Vec::new(),
        omega3: Vec::new(),
        omega4: Vec::new(),
    };
    if n < 2 {
        return Ok(sets);
    }
    for c in 0..=full_mask(n) {
        for k in 1..n {
            for region in Region::ALL {
                if in_region(region, n, c, k) {
                    let target = match region {
                        Region::Omega1 => &mut sets.omega1,
                        Region::Omega2 => &mut sets.omega2,
                        Region::Omega3 => &mut sets.omega3,
                        Region::Omega4 => &mut sets.omega4,
                    };
                    target.push((c, k));
                }
            }
        }
    }
    Ok(sets)
}

fn require_region(region: Region, n: usize, c: u32, k: usize) -> Result<()> {
    if !in_region(region, n, c, k) {
        let elems: Vec<String> = mask_elements(c & full_mask(n.max(1)))
            .iter()
            .map(|i| i.to_string())
            .collect();
        return Err(Error::NotInRegion {
            region: region.to_string(),
            subset: format!("{{{}}}", elems.join(",")),
            k,
            degree: n,
        });
    }
    Ok(())
}

fn two_terms(n: usize, basis: Basis, first: u32, second: u32, sign: i64) -> QSymElement {
    let a = QSymElement::from_mask(n, basis, first);
    let b = QSymElement::from_mask(n, basis, second);
    if sign > 0 {
        a.add(&b).expect("same degree")
    } else {
        a.sub(&b).expect("same degree")
    }
}

fn bit(i: usize) -> u32 {
    1 << (i - 1)
}

/// `f_{C,k}` in the `F` basis.
pub fn f_family(region: Region, c: u32, k: usize, n: usize) -> Result<QSymElement> {
    require_region(region, n, c, k)?;
    let other = match region {
        Region::Omega1 => c | bit(k - 1),
        Region::Omega2 | Region::Omega3 => c | bit(n - 1),
        Region::Omega4 => (c | bit(k + 1)) & !bit(k),
    };
    Ok(two_terms(n, Basis::F, c, other, -1))
}

/// `m_{C,k}` in the `M` basis.
pub fn m_family(region: Region, c: u32, k: usize, n: usize) -> Result<QSymElement> {
    require_region(region, n, c, k)?;
    Ok(match region {
        Region::Omega1 | Region::Omega2 => two_terms(n, Basis::M, c, c | bit(k), 1),
        Region::Omega3 => QSymElement::from_mask(n, Basis::M, c),
        Region::Omega4 => two_terms(n, Basis::M, c, (c | bit(k + 1)) & !bit(k), -1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaFamilyReport {
    pub degree: usize,
    pub region_sizes: [usize; 4],
    /// `Span f(Ω) = Span{F_J - F_K : J →₁ K or J →₂ K}`.
    pub f_omega_matches_arrows: bool,
    /// `Span m(Ω) = Span` of the peak-set monomial set.
    pub m_omega_matches_monomials: bool,
    /// `Span f(Ω) = Span m(Ω)`.
    pub f_omega_matches_m_omega: bool,
    /// `Span f(Θ) = Span{F_J - F_K : J →₁, →₂ or →₃ K}`.
    pub f_theta_matches_arrows: bool,
    /// `Span m(Θ) = Span` of the peak-number monomial set.
    pub m_theta_matches_monomials: bool,
    /// `Span f(Θ) = Span m(Θ)`.
    pub f_theta_matches_m_theta: bool,
    /// `J →₃ K` exactly when `Des K = (Des J ∪ {k+1}) ∖ {k}` for some
    /// `(Des J, k) ∈ Ω_{n,4}`.
    pub arrow3_matches_omega4: bool,
}

impl OmegaFamilyReport {
    pub fn pass(&self) -> bool {
        self.f_omega_matches_arrows
            && self.m_omega_matches_monomials
            && self.f_omega_matches_m_omega
            && self.f_theta_matches_arrows
            && self.m_theta_matches_monomials
            && self.f_theta_matches_m_theta
            && self.arrow3_matches_omega4
    }
}

fn family_vectors(
    members: &[(Region, u32, usize)],
    n: usize,
    family: fn(Region, u32, usize, usize) -> Result<QSymElement>,
) -> Result<Vec<SparseVector>> {
    members
        .iter()
        .map(|&(r, c, k)| Ok(family(r, c, k, n)?.to_f_vector()))
        .collect()
}

/// `J →₃ K` iff some `k` has `(Des J, k) ∈ Ω_{n,4}` and
/// `Des K = (Des J ∪ {k+1}) ∖ {k}`, checked over all pairs of compositions.
pub fn arrow3_matches_omega4(n: usize) -> Result<bool> {
    let comps = compositions_of(n)?;
    for j in &comps {
        let forward = successors(RelationId::Arrow3, j);
        for k in &comps {
            let related = forward.contains(k);
            let (dj, dk) = (j.index(), k.index());
            // membership forces k + 2 <= n - 1, so bit(k + 1) is in range
            let witnessed = (1..n).any(|kk| {
                in_region(Region::Omega4, n, dj, kk) && dk == (dj | bit(kk + 1)) & !bit(kk)
            });
            if related != witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies the six span equalities between the `Ω`/`Θ` families and the
/// relation and monomial spanning sets, plus the `→₃`/`Ω_{n,4}` criterion.
pub fn check_omega_families(n: usize) -> Result<OmegaFamilyReport> {
    let sets = omega_sets(n)?;
    let omega = sets.omega();
    let theta = sets.theta();
    let f_omega = family_vectors(&omega, n, f_family)?;
    let m_omega = family_vectors(&omega, n, m_family)?;
    let f_theta = family_vectors(&theta, n, f_family)?;
    let m_theta = family_vectors(&theta, n, m_family)?;

    use RelationId::*;
    let f_pk = relation_difference_vectors(&relation_edges(&[Arrow1, Arrow2], n)?);
    let f_pknum = relation_difference_vectors(&relation_edges(&[Arrow1, Arrow2, Arrow3], n)?);
    let m_pk = monomial_span_vectors(StatisticId::Pk, n)?;
    let m_pknum = monomial_span_vectors(StatisticId::PkNum, n)?;

    Ok(OmegaFamilyReport {
        degree: n,
        region_sizes: [
            sets.omega1.len(),
            sets.omega2.len(),
            sets.omega3.len(),
            sets.omega4.len(),
        ],
        f_omega_matches_arrows: spans_equal(&f_omega, &f_pk)?,
        m_omega_matches_monomials: spans_equal(&m_omega, &m_pk)?,
        f_omega_matches_m_omega: spans_equal(&f_omega, &m_omega)?,
        f_theta_matches_arrows: spans_equal(&f_theta, &f_pknum)?,
        m_theta_matches_monomials: spans_equal(&m_theta, &m_pknum)?,
        f_theta_matches_m_theta: spans_equal(&f_theta, &m_theta)?,
        arrow3_matches_omega4: arrow3_matches_omega4(n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        let s2 = omega_sets(2).unwrap();
        assert_eq!(s2.omega3, vec![(0, 1)]);
        assert!(s2.omega1.is_empty() && s2.omega2.is_empty() && s2.omega4.is_empty());
        for n in 0..=3 {
            let s = omega_sets(n).unwrap();
            assert!(s.omega2.is_empty(), "n = {n}");
            assert!(s.omega4.is_empty(), "n = {n}");
            if n <= 2 {
                assert!(s.omega1.is_empty());
            }
            if n <= 1 {
                assert!(s.omega3.is_empty());
            }
        }
    }

    #[test]
    fn regions_are_disjoint() {
        for n in 0..=8 {
            let theta = omega_sets(n).unwrap().theta();
            let mut keys: Vec<(u32, usize)> = theta.iter().map(|&(_, c, k)| (c, k)).collect();
            let len = keys.len();
            keys.sort_unstable();
            keys.dedup();
            assert_eq!(keys.len(), len, "n = {n}");
        }
    }

    #[test]
    fn family_examples() {
        let f = f_family(Region::Omega3, 0, 1, 2).unwrap();
        assert_eq!(f.to_string(), "F_(2) - F_(1,1)");
        let m = m_family(Region::Omega3, 0, 1, 2).unwrap();
        assert_eq!(m.to_string(), "M_(2)");
        assert_eq!(m.to_f(), f);
        // C = {1}, k = 3 adds k - 1 = 2; C = {} needs k - 2 = 0
        let f = f_family(Region::Omega1, 0b1, 3, 4).unwrap();
        assert_eq!(f.to_string(), "F_(1,3) - F_(1,1,2)");
        let f = f_family(Region::Omega1, 0, 2, 4).unwrap();
        assert_eq!(f.to_string(), "F_(4) - F_(1,3)");
        assert!(f_family(Region::Omega1, 0, 3, 4).is_err());
        assert!(matches!(
            f_family(Region::Omega1, 0b1, 2, 4),
            Err(Error::NotInRegion { .. })
        ));
        let s6 = omega_sets(6).unwrap();
        let &(c, k) = s6.omega4.first().expect("Omega_4 is nonempty at n = 6");
        let m = m_family(Region::Omega4, c, k, 6).unwrap();
        let want = QSymElement::from_mask(6, Basis::M, c)
            .sub(&QSymElement::from_mask(
                6,
                Basis::M,
                (c | bit(k + 1)) & !bit(k),
            ))
            .unwrap();
        assert_eq!(m, want);
    }

    #[test]
    fn omega_families_small() {
        for n in 0..=6 {
            let r = check_omega_families(n).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }
}
