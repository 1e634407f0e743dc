use proptest::prelude::*;

use qsymk_core::composition::{compositions_of, descent_set, num_compositions};
use qsymk_core::kernel::{
    check_relation_soundness, default_relations, dimension_row, is_forest,
    relation_difference_vectors, relation_edges, successors, RelationId,
};
use qsymk_core::linalg::{is_independent, rank, reduce_in_degree};
use qsymk_core::qsym::{
    f_to_m, m_to_f, multiply, multiply_f, multiply_f_via_permutations, psi, psi_monomial, rho,
};
use qsymk_core::statistics::{
    eval_on_composition, eval_on_permutation, standardize, DescentStatistic,
};
use qsymk_core::{
    Composition, DescentSetN, Permutation, QSymElement, Rational, SparseVector, StatValue,
    StatisticId,
};

fn composition(max_n: usize) -> impl Strategy<Value = Composition> {
    (0..=max_n).prop_flat_map(|n| {
        (0..num_compositions(n) as u32).prop_map(move |i| Composition::from_index(n, i).unwrap())
    })
}

fn composition_of_size(n: usize) -> impl Strategy<Value = Composition> {
    (0..num_compositions(n) as u32).prop_map(move |i| Composition::from_index(n, i).unwrap())
}

fn sparse_vectors(n: usize) -> impl Strategy<Value = Vec<SparseVector>> {
    let dim = num_compositions(n) as u32;
    prop::collection::vec(
        prop::collection::btree_map(0..dim, -3i64..=3, 0..5).prop_map(move |m| {
            let entries: Vec<(u32, Rational)> = m
                .into_iter()
                .map(|(i, c)| (i, Rational::from_integer(c)))
                .collect();
            SparseVector::from_entries(n, entries).unwrap()
        }),
        0..8,
    )
}

/// Permutations of length at most 6 on letters drawn from `1..=12`.
fn word() -> impl Strategy<Value = Permutation> {
    (0usize..=6)
        .prop_flat_map(|len| prop::sample::subsequence((1u32..=12).collect::<Vec<_>>(), len))
        .prop_flat_map(|letters| Just(letters).prop_shuffle())
        .prop_map(|letters| Permutation::new(letters).unwrap())
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n as u32).collect(), &mut out);
    out
}

fn int(v: StatValue) -> i64 {
    match v {
        StatValue::Integer(i) => i,
        other => panic!("expected an integer, got {other:?}"),
    }
}

fn set(v: StatValue) -> Vec<usize> {
    v.positions().expect("expected a position set")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn statistics_only_see_relative_order(p in word()) {
        let st = standardize(&p);
        for stat in StatisticId::ALL {
            prop_assert_eq!(eval_on_permutation(stat, &p), eval_on_permutation(stat, &st));
        }
    }

    #[test]
    fn complement_and_reverse_are_involutions(l in composition(12)) {
        prop_assert_eq!(l.complement().complement(), l.clone());
        prop_assert_eq!(l.reverse().reverse(), l.clone());
        prop_assert_eq!(l.complement().size(), l.size());
    }

    #[test]
    fn descent_set_round_trip(l in composition(12)) {
        let d = descent_set(&l);
        prop_assert_eq!(d.composition(), l.clone());
        let again = DescentSetN::new(l.size(), &d.elements()).unwrap();
        prop_assert_eq!(again, d);
    }

    #[test]
    fn reduce_is_idempotent(rows in sparse_vectors(4)) {
        let once = reduce_in_degree(4, &rows).unwrap();
        let twice = reduce_in_degree(4, once.rows()).unwrap();
        prop_assert_eq!(once.rows(), twice.rows());
        prop_assert_eq!(once.pivots(), twice.pivots());
    }

    #[test]
    fn rank_is_bounded_and_stable(
        rows in sparse_vectors(4),
        seed in any::<u64>(),
        factor in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let r = rank(&rows).unwrap();
        prop_assert!(r <= rows.len().min(num_compositions(4)));
        let mut permuted = rows.clone();
        if !permuted.is_empty() {
            let len = permuted.len();
            permuted.rotate_left(seed as usize % len);
        }
        prop_assert_eq!(rank(&permuted).unwrap(), r);
        let scale = Rational::new(factor, 7).unwrap();
        let scaled: Vec<SparseVector> = rows.iter().map(|v| v.scale(&scale)).collect();
        prop_assert_eq!(rank(&scaled).unwrap(), r);
    }

    #[test]
    fn product_is_associative_and_commutative(
        a in composition(3),
        b in composition(3),
        c in composition(2),
    ) {
        let (fa, fb, fc) = (QSymElement::f(&a), QSymElement::f(&b), QSymElement::f(&c));
        let ab = multiply_f(&fa, &fb).unwrap();
        prop_assert_eq!(&ab, &multiply_f(&fb, &fa).unwrap());
        let left = multiply_f(&ab, &fc).unwrap();
        let right = multiply_f(&fa, &multiply_f(&fb, &fc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_ignores_letter_offset(a in composition(4), b in composition(4), offset in 1u32..20) {
        let direct = multiply_f(&QSymElement::f(&a), &QSymElement::f(&b)).unwrap();
        prop_assert_eq!(&multiply_f_via_permutations(&a, &b, 0).unwrap(), &direct);
        prop_assert_eq!(&multiply_f_via_permutations(&a, &b, offset).unwrap(), &direct);
    }

    #[test]
    fn psi_and_rho_are_multiplicative(a in composition(4), b in composition(3), m in any::<bool>()) {
        let (x, y) = if m {
            (QSymElement::m(&a), QSymElement::m(&b))
        } else {
            (QSymElement::f(&a), QSymElement::f(&b))
        };
        let xy = multiply(&x, &y).unwrap();
        prop_assert_eq!(psi(&xy), multiply(&psi(&x), &psi(&y)).unwrap());
        prop_assert_eq!(rho(&xy), multiply(&rho(&x), &rho(&y)).unwrap());
    }

    #[test]
    fn refinement_is_a_partial_order(
        (a, b, c) in (0usize..=7).prop_flat_map(|n| {
            (composition_of_size(n), composition_of_size(n), composition_of_size(n))
        })
    ) {
        prop_assert!(a.refines(&a));
        if a.refines(&b) && b.refines(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.refines(&b) && b.refines(&c) {
            prop_assert!(a.refines(&c));
        }
    }
}

#[test]
fn composition_counts() {
    assert_eq!(compositions_of(0).unwrap().len(), 1);
    for n in 1..=16 {
        assert_eq!(compositions_of(n).unwrap().len(), 1 << (n - 1));
    }
}

#[test]
fn descent_sets_biject_exhaustively() {
    for n in 0..=12 {
        for (i, l) in compositions_of(n).unwrap().into_iter().enumerate() {
            assert_eq!(l.index(), i as u32);
            assert_eq!(descent_set(&l).composition(), l);
        }
    }
}

// Walking the ribbon of L cell by cell, a row break stays in the same column.
// Column lengths in walking order give L^c, and read backwards give L^r.
#[test]
fn complement_matches_ribbon_columns() {
    for n in 1..=8 {
        for l in compositions_of(n).unwrap() {
            let mut cols: Vec<usize> = Vec::new();
            for (i, &part) in l.parts().iter().enumerate() {
                if i == 0 {
                    cols.push(1);
                } else {
                    *cols.last_mut().unwrap() += 1;
                }
                cols.extend(std::iter::repeat_n(1, part - 1));
            }
            assert_eq!(l.complement().parts(), &cols[..], "{l}");
            cols.reverse();
            assert_eq!(l.reverse().parts(), &cols[..], "{l}");
        }
    }
}

#[test]
fn refinement_is_a_partial_order_exhaustively() {
    for n in 0..=7 {
        let all = compositions_of(n).unwrap();
        for a in &all {
            assert!(a.refines(a));
            for b in &all {
                if a.refines(b) && b.refines(a) {
                    assert_eq!(a, b);
                }
                if !a.refines(b) {
                    continue;
                }
                for c in &all {
                    if b.refines(c) {
                        assert!(a.refines(c));
                    }
                }
            }
        }
    }
}

#[test]
fn arrow3_adds_one_inversion() {
    for n in 0..=9 {
        for j in compositions_of(n).unwrap() {
            for k in successors(RelationId::Arrow3, &j) {
                assert_eq!(k.inversions(), j.inversions() + 1, "{j} -> {k}");
            }
        }
    }
}

#[test]
fn composition_and_permutation_evaluations_agree() {
    for n in 0..=7 {
        for p in all_permutations(n) {
            let l = p.descent_composition();
            for stat in StatisticId::ALL {
                assert_eq!(eval_on_composition(stat, &l), eval_on_permutation(stat, &p));
                assert_eq!(stat.on_composition(&l), eval_on_permutation(stat, &p));
            }
        }
    }
}

#[test]
fn peaks_of_complement_are_valleys() {
    for n in 0..=7 {
        for p in all_permutations(n) {
            let c = p.complement();
            assert_eq!(
                set(eval_on_permutation(StatisticId::Pk, &p)),
                set(eval_on_permutation(StatisticId::Val, &c))
            );
            assert_eq!(
                int(eval_on_permutation(StatisticId::PkNum, &p)),
                int(eval_on_permutation(StatisticId::ValNum, &c))
            );
        }
    }
}

#[test]
fn left_peaks_of_reversal_are_right_peaks() {
    for n in 0..=7 {
        for p in all_permutations(n) {
            let r = p.reversed();
            let mut mirrored: Vec<usize> = set(eval_on_permutation(StatisticId::Rpk, &r))
                .into_iter()
                .map(|i| n + 1 - i)
                .collect();
            mirrored.sort_unstable();
            assert_eq!(set(eval_on_permutation(StatisticId::Lpk, &p)), mirrored);
            assert_eq!(
                int(eval_on_permutation(StatisticId::LpkNum, &p)),
                int(eval_on_permutation(StatisticId::RpkNum, &r))
            );
        }
    }
}

#[test]
fn exterior_peaks_exceed_valleys_by_one() {
    for n in 1..=10 {
        for l in compositions_of(n).unwrap() {
            let epk = int(eval_on_composition(StatisticId::EpkNum, &l));
            let val = int(eval_on_composition(StatisticId::ValNum, &l));
            assert_eq!(epk, val + 1, "{l}");
        }
    }
}

#[test]
fn basis_change_round_trips() {
    for n in 0..=10 {
        for l in compositions_of(n).unwrap() {
            let f = QSymElement::f(&l);
            assert_eq!(m_to_f(&f_to_m(&f).unwrap()).unwrap(), f);
            let m = QSymElement::m(&l);
            assert_eq!(f_to_m(&m_to_f(&m).unwrap()).unwrap(), m);
        }
    }
}

#[test]
fn coarsening_formula_matches_fundamental_route() {
    for n in 0..=8 {
        for l in compositions_of(n).unwrap() {
            let via_f = f_to_m(&psi(&m_to_f(&QSymElement::m(&l)).unwrap())).unwrap();
            assert_eq!(psi_monomial(&l), via_f, "{l}");
        }
    }
}

#[test]
fn relations_are_sound() {
    use RelationId::*;
    let pairs: [(&dyn DescentStatistic, &[RelationId]); 6] = [
        (&StatisticId::Pk, &[Arrow1, Arrow2, PkBasisArrow]),
        (
            &StatisticId::PkNum,
            &[Arrow1, Arrow2, Arrow3, PkNumBasisArrow],
        ),
        (&StatisticId::Val, &[ValArrow1, ValArrow2]),
        (&StatisticId::ValNum, &[ValArrow1, ValArrow2, ValArrow3]),
        (&StatisticId::Epk, &[EpkArrow]),
        (&StatisticId::EpkNum, &[EpkArrow]),
    ];
    for n in 0..=10 {
        for (stat, rels) in pairs {
            let g = relation_edges(rels, n).unwrap();
            check_relation_soundness(stat, &g).unwrap();
        }
    }
}

#[test]
fn graph_and_linear_verdicts_agree() {
    use RelationId::*;
    let mut cases: Vec<(StatisticId, Vec<RelationId>)> = StatisticId::ALL
        .iter()
        .filter_map(|&s| default_relations(s).map(|r| (s, r)))
        .collect();
    cases.push((StatisticId::PkNum, vec![Arrow1, Arrow2]));
    cases.push((StatisticId::PkNum, vec![Arrow3]));
    cases.push((StatisticId::Pk, vec![PkBasisArrow]));
    cases.push((StatisticId::EpkNum, vec![EpkArrow]));
    for n in 0..=8 {
        for (stat, rels) in &cases {
            let r = qsymk_core::kernel::check_spanning_f(stat, n, rels).unwrap();
            assert!(r.verdicts_agree(), "{r:?}");
            let g = relation_edges(rels, n).unwrap();
            let independent = is_independent(&relation_difference_vectors(&g)).unwrap();
            assert_eq!(is_forest(&g), independent, "{stat} {rels:?} at {n}");
        }
    }
}

#[test]
fn dimension_law() {
    for n in 1..=10 {
        for stat in StatisticId::ALL {
            let row = dimension_row(&stat, n).unwrap();
            assert!(row.law_holds(), "{row:?}");
            assert_eq!(row.compositions, 1 << (n - 1));
        }
    }
}

#[test]
fn trimmed_relations_have_out_degree_at_most_one() {
    for n in 0..=10 {
        for rel in [RelationId::PkBasisArrow, RelationId::PkNumBasisArrow] {
            for j in compositions_of(n).unwrap() {
                assert!(successors(rel, &j).len() <= 1, "{rel} from {j}");
            }
        }
    }
}

#[test]
fn trimmed_relation_counts_equal_kernel_dimensions() {
    for n in 0..=10 {
        for (stat, rel) in [
            (StatisticId::Pk, RelationId::PkBasisArrow),
            (StatisticId::PkNum, RelationId::PkNumBasisArrow),
        ] {
            let edges = relation_edges(&[rel], n).unwrap().edges().len();
            assert_eq!(
                edges,
                dimension_row(&stat, n).unwrap().kernel_dim,
                "{stat} at {n}"
            );
        }
    }
}
