//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every check is exact.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{load_golden, render_relations};
use qsymk_core::composition::{compositions_of, num_compositions};
use qsymk_core::kernel::{
    check_basis_change, check_basis_f, check_omega_families, check_spanning_f, check_spanning_m,
    check_symmetry_bridges, dimension_row, is_ideal_upto, kernel_space, parse_relation_set,
    relation_edges, RelationId,
};
use qsymk_core::linalg::spans_equal;
use qsymk_core::qsym::{f_to_m, m_to_f, multiply, psi, psi_monomial, rho};
use qsymk_core::statistics::{check_shuffle_compatible, StdFirstLetter};
use qsymk_core::{Basis, QSymElement, StatisticId};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn dimension_law() -> Outcome {
    for n in 1..=12 {
        let count = compositions_of(n).map_err(e)?.len();
        ensure(count == 1 << (n - 1), || {
            format!("{count} compositions of {n}")
        })?;
        for stat in StatisticId::ALL {
            let row = dimension_row(&stat, n).map_err(e)?;
            ensure(row.law_holds() && row.compositions == count, || {
                format!("{row:?}")
            })?;
        }
    }
    Ok(())
}

fn fundamental_spanning() -> Outcome {
    use RelationId::*;
    for n in 0..=10 {
        for (stat, rels) in [
            (StatisticId::Pk, &[Arrow1, Arrow2][..]),
            (StatisticId::PkNum, &[Arrow1, Arrow2, Arrow3][..]),
        ] {
            let r = check_spanning_f(&stat, n, rels).map_err(e)?;
            ensure(r.graph_verdict && r.rank_verdict, || format!("{r:?}"))?;
        }
    }
    Ok(())
}

fn bases() -> Outcome {
    for n in 0..=10 {
        for (stat, rel) in [
            (StatisticId::Pk, RelationId::PkBasisArrow),
            (StatisticId::PkNum, RelationId::PkNumBasisArrow),
        ] {
            let r = check_basis_f(&stat, n, &[rel]).map_err(e)?;
            ensure(r.is_basis(), || format!("{r:?}"))?;
            let g = relation_edges(&[rel], n).map_err(e)?;
            let mut tails: Vec<u32> = g.edges().iter().map(|e| e.from.index()).collect();
            let len = tails.len();
            tails.sort_unstable();
            tails.dedup();
            ensure(tails.len() == len, || {
                format!("{rel} has a vertex of out-degree > 1 at {n}")
            })?;
        }
    }
    let d4 = kernel_space(&StatisticId::Pk, 4).map_err(e)?.dim;
    let d5 = kernel_space(&StatisticId::Pk, 5).map_err(e)?.dim;
    ensure(d4 == 5 && d5 == 11, || format!("Pk kernel dims {d4}, {d5}"))
}

fn monomial_spanning() -> Outcome {
    for n in 0..=10 {
        for stat in [StatisticId::Pk, StatisticId::PkNum, StatisticId::Epk] {
            ensure(check_spanning_m(stat, n).map_err(e)?, || {
                format!("{stat} at {n}")
            })?;
        }
        let r = check_spanning_f(&StatisticId::Epk, n, &[RelationId::EpkArrow]).map_err(e)?;
        ensure(r.spans(), || format!("{r:?}"))?;
    }
    Ok(())
}

fn valley_spanning() -> Outcome {
    for n in 0..=10 {
        for (stat, set) in [(StatisticId::Val, "val12"), (StatisticId::ValNum, "val123")] {
            let rels = parse_relation_set(set).map_err(e)?;
            let r = check_spanning_f(&stat, n, &rels).map_err(e)?;
            ensure(r.spans(), || format!("{r:?}"))?;
        }
        let epk = kernel_space(&StatisticId::EpkNum, n).map_err(e)?;
        let val = kernel_space(&StatisticId::ValNum, n).map_err(e)?;
        ensure(
            spans_equal(epk.basis.rows(), val.basis.rows()).map_err(e)?,
            || format!("epk and val kernels differ at {n}"),
        )?;
    }
    Ok(())
}

fn omega_families() -> Outcome {
    for n in 0..=9 {
        let r = check_omega_families(n).map_err(e)?;
        ensure(r.pass(), || format!("{r:?}"))?;
    }
    Ok(())
}

fn basis_change() -> Outcome {
    for n in 0..=8 {
        let r = check_basis_change(n).map_err(e)?;
        ensure(r.pass(), || format!("{r:?}"))?;
    }
    for n in 0..=10 {
        for l in compositions_of(n).map_err(e)? {
            let f = QSymElement::f(&l);
            let m = QSymElement::m(&l);
            ensure(m_to_f(&f_to_m(&f).map_err(e)?).map_err(e)? == f, || {
                format!("F_{l}")
            })?;
            ensure(f_to_m(&m_to_f(&m).map_err(e)?).map_err(e)? == m, || {
                format!("M_{l}")
            })?;
        }
    }
    Ok(())
}

fn ideals() -> Outcome {
    for stat in StatisticId::ALL {
        let r = is_ideal_upto(&stat, 8).map_err(e)?;
        ensure(r.ideal, || format!("{r:?}"))?;
    }
    Ok(())
}

fn shuffle_oracle() -> Outcome {
    use StatisticId::*;
    for stat in [Pk, PkNum, Val, ValNum, Epk, Des, DesNum, Maj] {
        let r = check_shuffle_compatible(&stat, 8).map_err(e)?;
        ensure(r.compatible, || format!("{r:?}"))?;
    }
    let r = check_shuffle_compatible(&StdFirstLetter, 8).map_err(e)?;
    ensure(!r.compatible && r.witness.is_some(), || {
        "control statistic was not rejected".to_string()
    })
}

fn basis_elements(n: usize) -> Vec<QSymElement> {
    compositions_of(n)
        .unwrap()
        .iter()
        .flat_map(|l| [QSymElement::f(l), QSymElement::m(l)])
        .collect()
}

fn involutions() -> Outcome {
    for n in 0..=10 {
        for x in basis_elements(n) {
            ensure(psi(&psi(&x)) == x, || format!("psi twice on {x}"))?;
            ensure(rho(&rho(&x)) == x, || format!("rho twice on {x}"))?;
        }
    }
    for a in 0..=7 {
        for b in 0..=7 - a {
            for x in basis_elements(a) {
                for y in basis_elements(b) {
                    if x.basis() != y.basis() {
                        continue;
                    }
                    let xy = multiply(&x, &y).map_err(e)?;
                    let psi_xy = multiply(&psi(&x), &psi(&y)).map_err(e)?;
                    let rho_xy = multiply(&rho(&x), &rho(&y)).map_err(e)?;
                    ensure(psi(&xy).to_f() == psi_xy.to_f(), || {
                        format!("psi on {x} * {y}")
                    })?;
                    ensure(rho(&xy).to_f() == rho_xy.to_f(), || {
                        format!("rho on {x} * {y}")
                    })?;
                }
            }
        }
    }
    for n in 0..=8 {
        for l in compositions_of(n).map_err(e)? {
            let via_f = f_to_m(&psi(&m_to_f(&QSymElement::m(&l)).map_err(e)?)).map_err(e)?;
            let direct = psi_monomial(&l);
            ensure(direct.basis() == Basis::M && direct == via_f, || {
                format!("psi(M_{l})")
            })?;
        }
    }
    for n in 0..=9 {
        let r = check_symmetry_bridges(n).map_err(e)?;
        ensure(r.psi_pk_to_val && r.rho_lpk_to_rpk, || format!("{r:?}"))?;
    }
    Ok(())
}

fn golden_graphs() -> Outcome {
    for (set, golden) in [("arrow123", "arrows.txt"), ("tri12ctilde", "triangles.txt")] {
        let got = render_relations(&parse_relation_set(set).map_err(e)?, 5);
        let want = load_golden(golden);
        ensure(got == want, || {
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            format!("{set}: extra {extra:?}, missing {missing:?}")
        })?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // libtest-style flags such as --nocapture are accepted and ignored
    assert!(num_compositions(12) == 2048);
    let criteria = [
        Criterion {
            name: "dimension law, n <= 12",
            limit: Some(Duration::from_secs(10)),
            run: dimension_law,
        },
        Criterion {
            name: "fundamental spanning sets for Pk and pk, n <= 10",
            limit: Some(Duration::from_secs(120)),
            run: fundamental_spanning,
        },
        Criterion {
            name: "Pk and pk bases from trimmed relations, n <= 10",
            limit: None,
            run: bases,
        },
        Criterion {
            name: "monomial spanning sets for Pk, pk and Epk, n <= 10",
            limit: None,
            run: monomial_spanning,
        },
        Criterion {
            name: "valley spanning sets and epk = val kernels, n <= 10",
            limit: None,
            run: valley_spanning,
        },
        Criterion {
            name: "Omega and Theta family span equalities, n <= 9",
            limit: None,
            run: omega_families,
        },
        Criterion {
            name: "M/F change of basis identities and round trips",
            limit: None,
            run: basis_change,
        },
        Criterion {
            name: "kernels are ideals for all statistics, total degree <= 8",
            limit: Some(Duration::from_secs(300)),
            run: ideals,
        },
        Criterion {
            name: "shuffle-compatibility oracle with rejected control",
            limit: None,
            run: shuffle_oracle,
        },
        Criterion {
            name: "psi and rho involutions, automorphisms and kernel maps",
            limit: None,
            run: involutions,
        },
        Criterion {
            name: "relation graphs match the golden edge lists, n <= 5",
            limit: None,
            run: golden_graphs,
        },
    ];
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({elapsed:.2?})", i + 1, c.name),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {why}", i + 1, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
