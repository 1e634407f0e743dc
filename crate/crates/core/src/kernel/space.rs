use crate::composition::{check_degree, num_compositions};
use crate::error::Result;
use crate::linalg::{reduce_in_degree, RowBasis, SparseVector};
use crate::statistics::{class_labels, DescentStatistic};

/// The degree-`n` component of `K^st` in `F` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSpace {
    pub stat: String,
    pub degree: usize,
    pub basis: RowBasis,
    pub dim: usize,
}

impl KernelSpace {
    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        self.basis.contains(v)
    }
}

/// `F_rep - F_other` for every composition `other` whose class has the
/// smaller-indexed representative `rep`.
pub fn kernel_generators<S: DescentStatistic + ?Sized>(
    stat: &S,
    n: usize,
) -> Result<Vec<SparseVector>> {
    let labels = class_labels(stat, n)?;
    let mut rep: Vec<Option<u32>> = vec![None; labels.len()];
    let mut out = Vec::new();
    for (index, &label) in labels.iter().enumerate() {
        match rep[label] {
            None => rep[label] = Some(index as u32),
            Some(r) => out.push(SparseVector::difference(n, r, index as u32)),
        }
    }
    Ok(out)
}

pub fn kernel_space<S: DescentStatistic + ?Sized>(stat: &S, n: usize) -> Result<KernelSpace> {
    check_degree(n)?;
    let basis = reduce_in_degree(n, &kernel_generators(stat, n)?)?;
    Ok(KernelSpace {
        stat: stat.name(),
        degree: n,
        dim: basis.rank(),
        basis,
    })
}

/// The number of `st`-equivalence classes of compositions of `n`, which is
/// the dimension of the degree-`n` part of the shuffle algebra.
pub fn quotient_dimension<S: DescentStatistic + ?Sized>(stat: &S, n: usize) -> Result<usize> {
    let labels = class_labels(stat, n)?;
    Ok(labels.iter().max().map_or(0, |m| m + 1))
}

/// `2^{n-1}`, the dimension of the degree-`n` component for `n >= 1`.
pub fn component_dimension(n: usize) -> usize {
    num_compositions(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistics::StatisticId;

    #[test]
    fn small_dimensions() {
        assert_eq!(kernel_space(&StatisticId::Pk, 4).unwrap().dim, 5);
        assert_eq!(kernel_space(&StatisticId::Pk, 5).unwrap().dim, 11);
        assert_eq!(kernel_space(&StatisticId::PkNum, 5).unwrap().dim, 13);
        for n in 0..=8 {
            assert_eq!(kernel_space(&StatisticId::Des, n).unwrap().dim, 0);
        }
        assert_eq!(quotient_dimension(&StatisticId::Pk, 4).unwrap(), 3);
        assert_eq!(quotient_dimension(&StatisticId::Pk, 5).unwrap(), 5);
        for n in 1..=10 {
            assert_eq!(
                quotient_dimension(&StatisticId::PkNum, n).unwrap(),
                (n - 1) / 2 + 1
            );
        }
    }

    #[test]
    fn basis_is_reduced() {
        let k = kernel_space(&StatisticId::Maj, 6).unwrap();
        for (p, row) in k.basis.pivots().iter().zip(k.basis.rows()) {
            assert_eq!(row.leading_index(), Some(*p));
            assert!(row.get(*p).is_one());
        }
    }
}
