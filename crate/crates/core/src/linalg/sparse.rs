use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::composition::{composition_from_mask, num_compositions};
use crate::error::{Error, Result};

use super::Rational;

/// A vector in the degree-`n` component, keyed by composition index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector {
    degree: usize,
    /// Sorted by index, no zero coefficients.
    entries: Vec<(u32, Rational)>,
}

impl SparseVector {
    pub fn zero(degree: usize) -> Self {
        SparseVector {
            degree,
            entries: Vec::new(),
        }
    }

    /// The coordinate vector with a single 1 at `index`.
    pub fn unit(degree: usize, index: u32) -> Self {
        SparseVector {
            degree,
            entries: vec![(index, Rational::one())],
        }
    }

    /// Builds a vector from `(index, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_entries(
        degree: usize,
        entries: impl IntoIterator<Item = (u32, Rational)>,
    ) -> Result<Self> {
        let bound = num_compositions(degree) as u64;
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, c) in entries {
            if i as u64 >= bound {
                return Err(Error::Precondition(format!(
                    "index {i} is out of range for degree {degree}"
                )));
            }
            *acc.entry(i).or_default() += &c;
        }
        Ok(Self::from_map(degree, acc))
    }

    pub(crate) fn from_map(degree: usize, map: BTreeMap<u32, Rational>) -> Self {
        SparseVector {
            degree,
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `e_plus - e_minus`, or zero when the indices coincide.
    pub fn difference(degree: usize, plus: u32, minus: u32) -> Self {
        if plus == minus {
            return Self::zero(degree);
        }
        let mut entries = vec![(plus, Rational::one()), (minus, -Rational::one())];
        entries.sort_by_key(|e| e.0);
        SparseVector { degree, entries }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[(u32, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> Rational {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading_index(&self) -> Option<u32> {
        self.entries.first().map(|e| e.0)
    }

    pub fn scale(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return Self::zero(self.degree);
        }
        SparseVector {
            degree: self.degree,
            entries: self.entries.iter().map(|(i, c)| (*i, c * factor)).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &SparseVector, factor: &Rational) -> Result<SparseVector> {
        check_same_degree(self.degree, other.degree)?;
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let v = x + &(y * factor);
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (Some(_), Some((j, y))) | (None, Some((j, y))) => {
                    let v = y * factor;
                    if !v.is_zero() {
                        out.push((*j, v));
                    }
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, None) => break,
            }
        }
        Ok(SparseVector {
            degree: self.degree,
            entries: out,
        })
    }
}

fn check_same_degree(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DegreeMismatch { expected, found });
    }
    Ok(())
}

fn common_degree(vectors: &[SparseVector]) -> Result<Option<usize>> {
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    for v in vectors {
        check_same_degree(first.degree, v.degree)?;
    }
    Ok(Some(first.degree))
}

/// Incremental row echelon form with unit pivots.
///
/// Stored rows are echelon but not reduced; [`Eliminator::finish`]
/// back-substitutes to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Eliminator {
    degree: usize,
    /// column -> position in `rows` of the row pivoting there
    pivot_of: Vec<Option<u32>>,
    rows: Vec<(u32, SparseVector)>,
}

impl Eliminator {
    pub fn new(degree: usize) -> Self {
        Eliminator {
            degree,
            pivot_of: vec![None; num_compositions(degree)],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn pivot_row(&self, col: u32) -> Option<&SparseVector> {
        self.pivot_of[col as usize].map(|r| &self.rows[r as usize].1)
    }

    /// Reduces `v` against the stored rows; the result has zeros in every
    /// pivot column.
    pub fn residue(&self, v: &SparseVector) -> Result<SparseVector> {
        check_same_degree(self.degree, v.degree)?;
        let Some(start) = v.leading_index() else {
            return Ok(v.clone());
        };
        let mut work = vec![Rational::zero(); self.pivot_of.len()];
        for (i, c) in &v.entries {
            work[*i as usize] = c.clone();
        }
        let mut out = Vec::new();
        for col in start as usize..work.len() {
            if work[col].is_zero() {
                continue;
            }
            match self.pivot_row(col as u32) {
                Some(row) => {
                    let factor = std::mem::take(&mut work[col]);
                    for (i, x) in &row.entries[1..] {
                        work[*i as usize] -= &(x * &factor);
                    }
                }
                None => out.push((col as u32, std::mem::take(&mut work[col]))),
            }
        }
        Ok(SparseVector {
            degree: self.degree,
            entries: out,
        })
    }

    /// Adds `v` to the row space. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool> {
        let r = self.residue(v)?;
        let Some(lead) = r.leading_index() else {
            return Ok(false);
        };
        let inv = r.entries[0].1.recip().expect("leading entries are nonzero");
        let row = if inv.is_one() { r } else { r.scale(&inv) };
        self.pivot_of[lead as usize] = Some(self.rows.len() as u32);
        self.rows.push((lead, row));
        Ok(true)
    }

    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        Ok(self.residue(v)?.is_zero())
    }

    /// Back-substitutes to reduced row echelon form.
    pub fn finish(mut self) -> RowBasis {
        let degree = self.degree;
        self.rows.sort_by_key(|(p, _)| *p);
        let dim = self.pivot_of.len();
        let mut reduced: Vec<Option<SparseVector>> = vec![None; dim];
        // Later pivots first, so every row used for substitution is final.
        for (pivot, row) in self.rows.iter().rev() {
            let needs_work = row.entries[1..]
                .iter()
                .any(|(i, _)| reduced[*i as usize].is_some());
            if !needs_work {
                reduced[*pivot as usize] = Some(row.clone());
                continue;
            }
            let mut work = vec![Rational::zero(); dim];
            for (i, c) in &row.entries {
                work[*i as usize] = c.clone();
            }
            let mut out = Vec::new();
            for col in *pivot as usize..dim {
                if work[col].is_zero() {
                    continue;
                }
                match (&reduced[col], col == *pivot as usize) {
                    (Some(r), false) => {
                        let factor = std::mem::take(&mut work[col]);
                        for (i, x) in &r.entries[1..] {
                            work[*i as usize] -= &(x * &factor);
                        }
                    }
                    _ => out.push((col as u32, std::mem::take(&mut work[col]))),
                }
            }
            reduced[*pivot as usize] = Some(SparseVector {
                degree,
                entries: out,
            });
        }
        let mut pivots = Vec::with_capacity(self.rows.len());
        let mut rows = Vec::with_capacity(self.rows.len());
        for (col, r) in reduced.into_iter().enumerate() {
            if let Some(r) = r {
                pivots.push(col as u32);
                rows.push(r);
            }
        }
        RowBasis {
            degree,
            pivots,
            rows,
        }
    }
}

/// Reduced row echelon basis of a row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBasis {
    degree: usize,
    pivots: Vec<u32>,
    rows: Vec<SparseVector>,
}

impl RowBasis {
    pub fn empty(degree: usize) -> Self {
        RowBasis {
            degree,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Membership test. In reduced form `v` lies in the row space exactly
    /// when `v = Σ_p v[p]·row_p` over the pivot columns `p`.
    pub fn contains(&self, v: &SparseVector) -> Result<bool> {
        check_same_degree(self.degree, v.degree)?;
        let mut combo: BTreeMap<u32, Rational> = BTreeMap::new();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            let c = v.get(*p);
            if c.is_zero() {
                continue;
            }
            for (i, x) in &row.entries {
                *combo.entry(*i).or_default() += &(x * &c);
            }
        }
        Ok(SparseVector::from_map(self.degree, combo) == *v)
    }

    pub fn to_eliminator(&self) -> Eliminator {
        let mut e = Eliminator::new(self.degree);
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            e.pivot_of[*p as usize] = Some(e.rows.len() as u32);
            e.rows.push((*p, row.clone()));
        }
        e
    }

    /// CSV with header `row_id,composition,coefficient`, one line per nonzero
    /// entry, coefficients as `p/q`.
    pub fn to_csv(&self) -> String {
        rows_to_csv(self.degree, &self.rows)
    }
}

pub fn rows_to_csv(degree: usize, rows: &[SparseVector]) -> String {
    let mut out = String::from("row_id,composition,coefficient\n");
    for (r, row) in rows.iter().enumerate() {
        for (i, c) in &row.entries {
            let comp = composition_from_mask(degree, *i);
            let _ = writeln!(out, "{r},\"{comp}\",{}", c.to_fraction_string());
        }
    }
    out
}

// Pivot order: smallest leading column first, ties broken by fewer nonzeros.
fn pivot_order(vectors: &[SparseVector]) -> Vec<&SparseVector> {
    let mut order: Vec<&SparseVector> = vectors.iter().filter(|v| !v.is_zero()).collect();
    order.sort_by_key(|v| (v.leading_index(), v.nnz()));
    order
}

fn eliminate(degree: usize, vectors: &[SparseVector]) -> Result<Eliminator> {
    let mut e = Eliminator::new(degree);
    for v in pivot_order(vectors) {
        e.insert(v)?;
    }
    Ok(e)
}

/// Row-reduces `vectors` of degree `degree`.
pub fn reduce_in_degree(degree: usize, vectors: &[SparseVector]) -> Result<RowBasis> {
    if let Some(d) = common_degree(vectors)? {
        check_same_degree(degree, d)?;
    }
    Ok(eliminate(degree, vectors)?.finish())
}

/// Row-reduces `vectors`; they must share one degree. An empty input gives
/// the zero basis of degree 0.
pub fn reduce(vectors: &[SparseVector]) -> Result<RowBasis> {
    let degree = common_degree(vectors)?.unwrap_or(0);
    reduce_in_degree(degree, vectors)
}

pub fn in_span(v: &SparseVector, basis: &RowBasis) -> Result<bool> {
    check_same_degree(basis.degree, v.degree)?;
    basis.contains(v)
}

pub fn rank(vectors: &[SparseVector]) -> Result<usize> {
    let degree = common_degree(vectors)?.unwrap_or(0);
    Ok(eliminate(degree, vectors)?.rank())
}

pub fn is_independent(vectors: &[SparseVector]) -> Result<bool> {
    Ok(rank(vectors)? == vectors.len())
}

/// Whether `a` and `b` span the same space.
pub fn spans_equal(a: &[SparseVector], b: &[SparseVector]) -> Result<bool> {
    let da = common_degree(a)?;
    let db = common_degree(b)?;
    if let (Some(x), Some(y)) = (da, db) {
        check_same_degree(x, y)?;
    }
    let degree = da.or(db).unwrap_or(0);
    let eb = eliminate(degree, b)?;
    let mut ra = Eliminator::new(degree);
    for v in pivot_order(a) {
        if !eb.contains(v)? {
            return Ok(false);
        }
        ra.insert(v)?;
    }
    Ok(ra.rank() == eb.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn vec_of(degree: usize, coords: &[(u32, i64)]) -> SparseVector {
        SparseVector::from_entries(degree, coords.iter().map(|&(i, c)| (i, q(c)))).unwrap()
    }

    #[test]
    fn construction_drops_zeros() {
        let v = vec_of(3, &[(2, 1), (0, 3), (2, -1)]);
        assert_eq!(v.entries(), &[(0, q(3))]);
        assert!(SparseVector::from_entries(3, [(4, q(1))]).is_err());
        assert!(SparseVector::difference(3, 1, 1).is_zero());
    }

    #[test]
    fn reduce_examples() {
        let b = reduce(&[vec_of(3, &[(1, 1), (2, 1)]), vec_of(3, &[(2, 1)])]).unwrap();
        assert_eq!(b.rank(), 2);
        assert_eq!(b.rows(), &[vec_of(3, &[(1, 1)]), vec_of(3, &[(2, 1)])]);

        let v = vec_of(4, &[(0, 2), (5, -3)]);
        assert_eq!(reduce(&[v.clone(), v.scale(&q(2))]).unwrap().rank(), 1);

        let units: Vec<_> = (0..32).map(|i| SparseVector::unit(6, i)).collect();
        assert_eq!(reduce(&units).unwrap().rank(), 32);

        assert!(matches!(
            reduce(&[vec_of(2, &[(0, 1)]), vec_of(3, &[(0, 1)])]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rref_shape() {
        let b = reduce(&[
            vec_of(3, &[(0, 2), (1, 4), (3, 2)]),
            vec_of(3, &[(0, 1), (1, 1)]),
            vec_of(3, &[(1, 1), (2, 1), (3, 5)]),
        ])
        .unwrap();
        let pivots = b.pivots();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (r, row) in b.rows().iter().enumerate() {
            assert_eq!(row.leading_index(), Some(pivots[r]));
            assert!(row.get(pivots[r]).is_one());
            for (s, other) in b.rows().iter().enumerate() {
                if s != r {
                    assert!(other.get(pivots[r]).is_zero());
                }
            }
        }
    }

    #[test]
    fn span_queries() {
        let b = reduce(&[vec_of(2, &[(1, 1)])]).unwrap();
        assert!(in_span(&SparseVector::zero(2), &b).unwrap());
        assert!(!in_span(&vec_of(2, &[(0, 1)]), &b).unwrap());
        assert!(in_span(&vec_of(2, &[(1, -7)]), &b).unwrap());

        let e1 = vec_of(2, &[(0, 1)]);
        let e2 = vec_of(2, &[(1, 1)]);
        assert!(spans_equal(std::slice::from_ref(&e1), std::slice::from_ref(&e1)).unwrap());
        assert!(spans_equal(std::slice::from_ref(&e1), &[e1.scale(&q(2))]).unwrap());
        assert!(!spans_equal(std::slice::from_ref(&e1), &[e1.clone(), e2.clone()]).unwrap());
        assert!(!spans_equal(&[e1.clone(), e2.clone()], std::slice::from_ref(&e1)).unwrap());
        assert!(spans_equal(&[], &[SparseVector::zero(3)]).unwrap());

        assert!(is_independent(&[]).unwrap());
        assert!(!is_independent(&[e1.clone(), e1.clone()]).unwrap());
        assert!(is_independent(&[e1, e2]).unwrap());
    }

    #[test]
    fn csv_export() {
        let b = reduce(&[vec_of(3, &[(0, 2), (3, 1)])]).unwrap();
        let csv = b.to_csv();
        assert_eq!(
            csv,
            "row_id,composition,coefficient\n0,\"(3)\",1/1\n0,\"(1,1,1)\",1/2\n"
        );
    }
}
