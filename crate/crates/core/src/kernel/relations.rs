use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::composition::Composition;
use crate::error::{Error, Result};

/// The relations on compositions used to generate kernel spanning sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationId {
    /// Split a part `j_l > 2` into `1, j_l - 1`.
    Arrow1,
    /// Split a final part 2 into `1, 1`.
    Arrow2,
    /// In a composition of 1s and 2s ending in 1, swap a `1, 2` into `2, 1`.
    Arrow3,
    /// Split a part `j_l > 2` into `2, j_l - 2`.
    Tri1,
    /// With final part 2, split an earlier part 2 into `1, 1`.
    Tri2,
    /// Membership in `{(1^{m-1}, 2)}`; has no edges.
    CTilde,
    /// `Arrow1`/`Arrow2` restricted to the first splittable part.
    PkBasisArrow,
    /// `PkBasisArrow`, or when nothing splits, the first `1, 2` swap.
    PkNumBasisArrow,
    /// Merge a part `j_l >= 2` with a following 1.
    ValArrow1,
    /// Merge two leading 1s into a 2.
    ValArrow2,
    /// Move one unit from part `l` to part `l + 1`.
    ValArrow3,
    /// `Arrow1` restricted to parts other than the first.
    EpkArrow,
    /// `Tri1` restricted to parts other than the first.
    EpkTri,
}

impl RelationId {
    pub const ALL: [RelationId; 13] = [
        RelationId::Arrow1,
        RelationId::Arrow2,
        RelationId::Arrow3,
        RelationId::Tri1,
        RelationId::Tri2,
        RelationId::CTilde,
        RelationId::PkBasisArrow,
        RelationId::PkNumBasisArrow,
        RelationId::ValArrow1,
        RelationId::ValArrow2,
        RelationId::ValArrow3,
        RelationId::EpkArrow,
        RelationId::EpkTri,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationId::Arrow1 => "arrow1",
            RelationId::Arrow2 => "arrow2",
            RelationId::Arrow3 => "arrow3",
            RelationId::Tri1 => "tri1",
            RelationId::Tri2 => "tri2",
            RelationId::CTilde => "ctilde",
            RelationId::PkBasisArrow => "pkbasis",
            RelationId::PkNumBasisArrow => "pknumbasis",
            RelationId::ValArrow1 => "val1",
            RelationId::ValArrow2 => "val2",
            RelationId::ValArrow3 => "val3",
            RelationId::EpkArrow => "epkarrow",
            RelationId::EpkTri => "epktri",
        }
    }

    /// Edge label used in graph exports.
    pub fn label(&self) -> &'static str {
        match self {
            RelationId::Arrow1 | RelationId::Tri1 | RelationId::ValArrow1 => "1",
            RelationId::Arrow2 | RelationId::Tri2 | RelationId::ValArrow2 => "2",
            RelationId::Arrow3 | RelationId::ValArrow3 => "3",
            RelationId::CTilde => "c",
            RelationId::PkBasisArrow => "Pk",
            RelationId::PkNumBasisArrow => "pk",
            RelationId::EpkArrow | RelationId::EpkTri => "E",
        }
    }

    pub fn is_binary(&self) -> bool {
        *self != RelationId::CTilde
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

/// Named relation sets, or a comma-separated list of relation names.
pub fn parse_relation_set(name: &str) -> Result<Vec<RelationId>> {
    use RelationId::*;
    let set = match name {
        "arrow12" => vec![Arrow1, Arrow2],
        "arrow123" => vec![Arrow1, Arrow2, Arrow3],
        "tri12" => vec![Tri1, Tri2],
        "tri12ctilde" => vec![Tri1, Tri2, CTilde],
        "pkbasis" => vec![PkBasisArrow],
        "pknumbasis" => vec![PkNumBasisArrow],
        "val12" => vec![ValArrow1, ValArrow2],
        "val123" => vec![ValArrow1, ValArrow2, ValArrow3],
        "epk" => vec![EpkArrow],
        "epktri" => vec![EpkTri],
        other => other
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(set)
}

pub const RELATION_SET_NAMES: [&str; 10] = [
    "arrow12",
    "arrow123",
    "tri12",
    "tri12ctilde",
    "pkbasis",
    "pknumbasis",
    "val12",
    "val123",
    "epk",
    "epktri",
];

fn splice(parts: &[usize], at: usize, replacement: &[usize]) -> Composition {
    let mut out = Vec::with_capacity(parts.len() + 1);
    out.extend_from_slice(&parts[..at]);
    out.extend_from_slice(replacement);
    out.extend_from_slice(&parts[at + 1..]);
    Composition::from_parts_unchecked(out)
}

fn swapped(parts: &[usize], at: usize) -> Composition {
    let mut out = parts.to_vec();
    out.swap(at, at + 1);
    Composition::from_parts_unchecked(out)
}

/// `J = (1^{m-1}, 2)`, including `(2)`.
pub fn is_ctilde(j: &Composition) -> bool {
    match j.parts().split_last() {
        Some((&2, rest)) => rest.iter().all(|&p| p == 1),
        _ => false,
    }
}

fn pk_basis_position(p: &[usize]) -> Option<usize> {
    let m = p.len();
    (0..m).find(|&i| p[i] > 2 || (i + 1 == m && p[i] == 2))
}

/// All `K` with `J rel K`, sorted and without repeats.
pub fn successors(rel: RelationId, j: &Composition) -> Vec<Composition> {
    let p = j.parts();
    let m = p.len();
    let mut out = Vec::new();
    match rel {
        RelationId::Arrow1 => {
            for l in 0..m {
                if p[l] > 2 {
                    out.push(splice(p, l, &[1, p[l] - 1]));
                }
            }
        }
        RelationId::Arrow2 => {
            if m >= 1 && p[m - 1] == 2 {
                out.push(splice(p, m - 1, &[1, 1]));
            }
        }
        RelationId::Arrow3 => {
            if m >= 1 && p.iter().all(|&x| x <= 2) && p[m - 1] == 1 {
                for l in 0..m.saturating_sub(2) {
                    if p[l] == 1 && p[l + 1] == 2 {
                        out.push(swapped(p, l));
                    }
                }
            }
        }
        RelationId::Tri1 => {
            for l in 0..m {
                if p[l] > 2 {
                    out.push(splice(p, l, &[2, p[l] - 2]));
                }
            }
        }
        RelationId::Tri2 => {
            if m >= 1 && p[m - 1] == 2 {
                for l in 0..m - 1 {
                    if p[l] == 2 {
                        out.push(splice(p, l, &[1, 1]));
                    }
                }
            }
        }
        RelationId::CTilde => {}
        RelationId::PkBasisArrow => {
            if let Some(l) = pk_basis_position(p) {
                out.push(splice(p, l, &[1, p[l] - 1]));
            }
        }
        RelationId::PkNumBasisArrow => {
            if let Some(l) = pk_basis_position(p) {
                out.push(splice(p, l, &[1, p[l] - 1]));
            } else if let Some(k) = (0..m.saturating_sub(1)).find(|&i| p[i] == 1 && p[i + 1] == 2) {
                out.push(swapped(p, k));
            }
        }
        RelationId::ValArrow1 => {
            for l in 0..m.saturating_sub(1) {
                if p[l] >= 2 && p[l + 1] == 1 {
                    let mut parts = p[..l].to_vec();
                    parts.push(p[l] + 1);
                    parts.extend_from_slice(&p[l + 2..]);
                    out.push(Composition::from_parts_unchecked(parts));
                }
            }
        }
        RelationId::ValArrow2 => {
            if m >= 2 && p[0] == 1 && p[1] == 1 {
                let mut parts = vec![2];
                parts.extend_from_slice(&p[2..]);
                out.push(Composition::from_parts_unchecked(parts));
            }
        }
        RelationId::ValArrow3 => {
            if p.iter().skip(1).all(|&x| x >= 2) {
                for l in 0..m.saturating_sub(1) {
                    if p[l] >= 2 && (l == 0 || p[l] > 2) {
                        let mut parts = p.to_vec();
                        parts[l] -= 1;
                        parts[l + 1] += 1;
                        out.push(Composition::from_parts_unchecked(parts));
                    }
                }
            }
        }
        RelationId::EpkArrow => {
            for l in 1..m {
                if p[l] > 2 {
                    out.push(splice(p, l, &[1, p[l] - 1]));
                }
            }
        }
        RelationId::EpkTri => {
            for l in 1..m {
                if p[l] > 2 {
                    out.push(splice(p, l, &[2, p[l] - 2]));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
