use serde::Serialize;

use crate::composition::{check_degree, compositions_of, full_mask, Composition};
use crate::error::{Error, Result};
use crate::linalg::{is_independent, spans_equal, Rational, SparseVector};
use crate::qsym::{
    f_to_m, m_to_f, monomial_pair_as_differences, monomial_pair_in_f, multiply_f, psi, rho, Basis,
    QSymElement,
};
use crate::statistics::{class_labels, equivalence_classes, DescentStatistic, StatisticId};

use super::graph::{connected_components, is_forest, relation_edges, RelationGraph};
use super::relations::{successors, RelationId};
use super::space::{kernel_space, KernelSpace};

/// `F_J - F_K` for every edge `J → K`.
pub fn relation_difference_vectors(g: &RelationGraph) -> Vec<SparseVector> {
    g.edges()
        .iter()
        .map(|e| SparseVector::difference(g.degree(), e.from.index(), e.to.index()))
        .collect()
}

/// Fails with [`Error::RelationUnsound`] on the first edge joining two
/// compositions with different statistic values.
pub fn check_relation_soundness<S: DescentStatistic + ?Sized>(
    stat: &S,
    g: &RelationGraph,
) -> Result<()> {
    for e in g.edges() {
        if stat.on_composition(&e.from) != stat.on_composition(&e.to) {
            return Err(Error::RelationUnsound {
                relation: e.relation.name().to_string(),
                statistic: stat.name(),
                from: e.from.to_string(),
                to: e.to.to_string(),
            });
        }
    }
    Ok(())
}

fn relation_names(rels: &[RelationId]) -> Vec<String> {
    rels.iter().map(|r| r.name().to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningReport {
    pub statistic: String,
    pub degree: usize,
    pub relations: Vec<String>,
    pub components: usize,
    pub classes: usize,
    /// Components of the relation graph are exactly the equivalence classes.
    pub graph_verdict: bool,
    /// The edge differences span the kernel, by exact rank comparison.
    pub rank_verdict: bool,
}

impl SpanningReport {
    pub fn verdicts_agree(&self) -> bool {
        self.graph_verdict == self.rank_verdict
    }

    pub fn spans(&self) -> bool {
        self.graph_verdict && self.rank_verdict
    }
}

/// Whether `{F_J - F_K : J rel K}` spans the degree-`n` kernel, decided both
/// by comparing graph components with equivalence classes and by exact
/// linear algebra.
pub fn check_spanning_f<S: DescentStatistic + ?Sized>(
    stat: &S,
    n: usize,
    rels: &[RelationId],
) -> Result<SpanningReport> {
    let g = relation_edges(rels, n)?;
    check_relation_soundness(stat, &g)?;
    let kernel = kernel_space(stat, n)?;
    spanning_report(stat, n, rels, &g, &kernel)
}

fn spanning_report<S: DescentStatistic + ?Sized>(
    stat: &S,
    n: usize,
    rels: &[RelationId],
    g: &RelationGraph,
    kernel: &KernelSpace,
) -> Result<SpanningReport> {
    let components = connected_components(g);
    let classes = equivalence_classes(stat, n)?;
    let rank_verdict = spans_equal(&relation_difference_vectors(g), kernel.basis.rows())?;
    Ok(SpanningReport {
        statistic: stat.name(),
        degree: n,
        relations: relation_names(rels),
        components: components.len(),
        classes: classes.len(),
        graph_verdict: components == classes,
        rank_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub statistic: String,
    pub degree: usize,
    pub relations: Vec<String>,
    pub edge_count: usize,
    pub dim: usize,
    pub forest: bool,
    pub independent: bool,
    pub spanning: SpanningReport,
}

impl BasisReport {
    pub fn is_basis(&self) -> bool {
        self.forest && self.independent && self.spanning.spans() && self.edge_count == self.dim
    }
}

/// Whether `{F_J - F_K : J rel K}` is a basis of the degree-`n` kernel.
pub fn check_basis_f<S: DescentStatistic + ?Sized>(
    stat: &S,
    n: usize,
    rels: &[RelationId],
) -> Result<BasisReport> {
    let g = relation_edges(rels, n)?;
    check_relation_soundness(stat, &g)?;
    let kernel = kernel_space(stat, n)?;
    let spanning = spanning_report(stat, n, rels, &g, &kernel)?;
    Ok(BasisReport {
        statistic: stat.name(),
        degree: n,
        relations: relation_names(rels),
        edge_count: g.edges().len(),
        dim: kernel.dim,
        forest: is_forest(&g),
        independent: is_independent(&relation_difference_vectors(&g))?,
        spanning,
    })
}

// `M_J + sign·M_K` over the edges of the given relations.
fn monomial_edge_sums(rels: &[RelationId], n: usize, sign: i64) -> Result<Vec<QSymElement>> {
    let sign = Rational::from_integer(sign);
    Ok(relation_edges(rels, n)?
        .edges()
        .iter()
        .map(|e| {
            QSymElement::m(&e.from)
                .add(&QSymElement::m(&e.to).scale(&sign))
                .expect("edges join compositions of one size")
        })
        .collect())
}

/// The monomial spanning set for `Pk`, `pk` or `Epk` in degree `n`, as
/// elements of the `M` basis.
pub fn monomial_span_elements(stat: StatisticId, n: usize) -> Result<Vec<QSymElement>> {
    check_degree(n)?;
    let mut out;
    match stat {
        StatisticId::Pk | StatisticId::PkNum => {
            out = monomial_edge_sums(&[RelationId::Tri1, RelationId::Tri2], n, 1)?;
            if n >= 2 {
                let mut parts = vec![1; n - 2];
                parts.push(2);
                out.push(QSymElement::m(&Composition::new(parts)?));
            }
            if stat == StatisticId::PkNum {
                out.extend(monomial_edge_sums(&[RelationId::Arrow3], n, -1)?);
            }
        }
        StatisticId::Epk => out = monomial_edge_sums(&[RelationId::EpkTri], n, 1)?,
        other => return Err(Error::UnsupportedStatistic(other.to_string())),
    }
    Ok(out)
}

/// [`monomial_span_elements`] in `F` coordinates.
pub fn monomial_span_vectors(stat: StatisticId, n: usize) -> Result<Vec<SparseVector>> {
    Ok(monomial_span_elements(stat, n)?
        .iter()
        .map(QSymElement::to_f_vector)
        .collect())
}

/// Whether the monomial spanning set has exactly the kernel's span.
pub fn check_spanning_m(stat: StatisticId, n: usize) -> Result<bool> {
    let vectors = monomial_span_vectors(stat, n)?;
    let kernel = kernel_space(&stat, n)?;
    spans_equal(&vectors, kernel.basis.rows())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub kernel_element: String,
    pub factor: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub statistic: String,
    pub total_degree: usize,
    pub ideal: bool,
    pub products_checked: usize,
    pub witness: Option<IdealWitness>,
}

/// Checks that `r · F_K` lies in the kernel for every kernel basis row `r` of
/// degree `a` and every `K ⊨ b` with `a + b = total`.
pub fn is_ideal_at<S: DescentStatistic + ?Sized>(stat: &S, total: usize) -> Result<IdealReport> {
    check_degree(total)?;
    let target = kernel_space(stat, total)?;
    let mut products_checked = 0;
    for a in 1..=total {
        let b = total - a;
        let source = kernel_space(stat, a)?;
        let factors = compositions_of(b)?;
        for row in source.basis.rows() {
            let r = QSymElement::from_f_vector(row);
            for k in &factors {
                let product = multiply_f(&r, &QSymElement::f(k))?;
                products_checked += 1;
                if !target.contains(&product.to_f_vector())? {
                    return Ok(IdealReport {
                        statistic: stat.name(),
                        total_degree: total,
                        ideal: false,
                        products_checked,
                        witness: Some(IdealWitness {
                            kernel_element: r.to_string(),
                            factor: format!("F_{k}"),
                            product: product.to_string(),
                        }),
                    });
                }
            }
        }
    }
    Ok(IdealReport {
        statistic: stat.name(),
        total_degree: total,
        ideal: true,
        products_checked,
        witness: None,
    })
}

/// [`is_ideal_at`] for every total degree up to `total_degree`.
pub fn is_ideal_upto<S: DescentStatistic + ?Sized>(
    stat: &S,
    total_degree: usize,
) -> Result<IdealReport> {
    let mut products_checked = 0;
    for total in 0..=total_degree {
        let report = is_ideal_at(stat, total)?;
        products_checked += report.products_checked;
        if !report.ideal {
            return Ok(IdealReport {
                total_degree,
                products_checked,
                ..report
            });
        }
    }
    Ok(IdealReport {
        statistic: stat.name(),
        total_degree,
        ideal: true,
        products_checked,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub degree: usize,
    /// Complements of peak edges are valley edges.
    pub complement_edges: bool,
    pub epk_equals_val: bool,
    pub psi_pk_to_val: bool,
    pub psi_pknum_to_valnum: bool,
    pub rho_lpk_to_rpk: bool,
    pub rho_lpknum_to_rpknum: bool,
    pub witness: Option<String>,
}

impl BridgeReport {
    pub fn pass(&self) -> bool {
        self.complement_edges
            && self.epk_equals_val
            && self.psi_pk_to_val
            && self.psi_pknum_to_valnum
            && self.rho_lpk_to_rpk
            && self.rho_lpknum_to_rpknum
    }
}

fn image_spans(
    map: impl Fn(&QSymElement) -> QSymElement,
    from: StatisticId,
    to: StatisticId,
    n: usize,
) -> Result<bool> {
    let source = kernel_space(&from, n)?;
    let image: Vec<SparseVector> = source
        .basis
        .rows()
        .iter()
        .map(|r| map(&QSymElement::from_f_vector(r)).to_f_vector())
        .collect();
    spans_equal(&image, kernel_space(&to, n)?.basis.rows())
}

/// Peak/valley and left/right peak symmetries in degree `n`.
pub fn check_symmetry_bridges(n: usize) -> Result<BridgeReport> {
    check_degree(n)?;
    use RelationId::*;
    let mut witness = None;
    let mut complement_edges = true;
    for (rels, targets) in [
        (&[Arrow1, Arrow2][..], &[ValArrow1, ValArrow2][..]),
        (
            &[Arrow1, Arrow2, Arrow3][..],
            &[ValArrow1, ValArrow2, ValArrow3][..],
        ),
    ] {
        for e in relation_edges(rels, n)?.edges() {
            let (jc, kc) = (e.from.complement(), e.to.complement());
            if !targets.iter().any(|&t| successors(t, &jc).contains(&kc)) {
                complement_edges = false;
                witness.get_or_insert_with(|| {
                    format!("{} -> {} complements to {jc} -> {kc}", e.from, e.to)
                });
            }
        }
    }
    let epk_equals_val = spans_equal(
        kernel_space(&StatisticId::EpkNum, n)?.basis.rows(),
        kernel_space(&StatisticId::ValNum, n)?.basis.rows(),
    )?;
    Ok(BridgeReport {
        degree: n,
        complement_edges,
        epk_equals_val,
        psi_pk_to_val: image_spans(psi, StatisticId::Pk, StatisticId::Val, n)?,
        psi_pknum_to_valnum: image_spans(psi, StatisticId::PkNum, StatisticId::ValNum, n)?,
        rho_lpk_to_rpk: image_spans(rho, StatisticId::Lpk, StatisticId::Rpk, n)?,
        rho_lpknum_to_rpknum: image_spans(rho, StatisticId::LpkNum, StatisticId::RpkNum, n)?,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisChangeReport {
    pub degree: usize,
    /// Signed expansion of each `M_C` in the `F` basis.
    pub signed_expansion: bool,
    pub pair_expansion: bool,
    pub pair_difference_expansion: bool,
    pub round_trip: bool,
    pub pair_cases: usize,
    pub difference_cases: usize,
}

impl BasisChangeReport {
    pub fn pass(&self) -> bool {
        self.signed_expansion
            && self.pair_expansion
            && self.pair_difference_expansion
            && self.round_trip
    }
}

/// The change-of-basis identities between `M` and `F` in degree `n`.
pub fn check_basis_change(n: usize) -> Result<BasisChangeReport> {
    check_degree(n)?;
    let full = full_mask(n);
    let mut signed_expansion = true;
    let mut round_trip = true;
    for l in compositions_of(n)? {
        let m = QSymElement::m(&l);
        let f = m_to_f(&m)?;
        // coefficient of F_B is (-1)^{ℓ(B) - ℓ(L)} when B refines L
        for b in compositions_of(n)? {
            let want = if b.refines(&l) {
                let diff = b.num_parts() - l.num_parts();
                Rational::from_integer(if diff % 2 == 0 { 1 } else { -1 })
            } else {
                Rational::zero()
            };
            signed_expansion &= f.coeff(&b) == want;
        }
        round_trip &= f_to_m(&f)? == m;
        round_trip &= m_to_f(&f_to_m(&QSymElement::f(&l))?)? == QSymElement::f(&l);
    }
    let (mut pair_expansion, mut pair_difference_expansion) = (true, true);
    let (mut pair_cases, mut difference_cases) = (0, 0);
    for c in 0..=full {
        for k in 1..n {
            if c & (1 << (k - 1)) != 0 {
                continue;
            }
            let pair = QSymElement::from_mask(n, Basis::M, c).add(&QSymElement::from_mask(
                n,
                Basis::M,
                c | (1 << (k - 1)),
            ))?;
            let direct = m_to_f(&pair)?;
            let b = monomial_pair_in_f(n, c, k)?;
            pair_expansion &= b == direct;
            pair_cases += 1;
            if k >= 2 && c & (1 << (k - 2)) == 0 {
                pair_difference_expansion &= monomial_pair_as_differences(n, c, k)? == direct;
                difference_cases += 1;
            }
        }
    }
    Ok(BasisChangeReport {
        degree: n,
        signed_expansion,
        pair_expansion,
        pair_difference_expansion,
        round_trip,
        pair_cases,
        difference_cases,
    })
}

/// Dimension bookkeeping for one statistic and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub statistic: String,
    pub degree: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    pub compositions: usize,
}

impl DimensionRow {
    pub fn law_holds(&self) -> bool {
        self.kernel_dim + self.quotient_dim == self.compositions
    }
}

pub fn dimension_row<S: DescentStatistic + ?Sized>(stat: &S, n: usize) -> Result<DimensionRow> {
    let kernel = kernel_space(stat, n)?;
    let labels = class_labels(stat, n)?;
    Ok(DimensionRow {
        statistic: stat.name(),
        degree: n,
        kernel_dim: kernel.dim,
        quotient_dim: labels.iter().max().map_or(0, |m| m + 1),
        compositions: compositions_of(n)?.len(),
    })
}
