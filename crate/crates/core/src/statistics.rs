//! Permutations, descent statistics and the brute-force shuffle oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::composition::{
    check_degree, composition_from_mask, compositions_of, num_compositions, Composition,
};
use crate::error::{Error, Result};

/// A sequence of distinct positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<u32>,
}

impl Permutation {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(letters.len());
        for &l in &letters {
            if l == 0 {
                return Err(Error::Parse("permutation letters must be positive".into()));
            }
            if !seen.insert(l) {
                return Err(Error::RepeatedLetter(l));
            }
        }
        Ok(Permutation { letters })
    }

    pub fn empty() -> Self {
        Permutation {
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u32>) -> Self {
        Permutation { letters }
    }

    /// The increasing word `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            letters: (1..=n as u32).collect(),
        }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Bitmask of `Des π` (bit `i - 1` for descent `i`).
    pub fn descent_mask(&self) -> u32 {
        let mut mask = 0;
        for (i, w) in self.letters.windows(2).enumerate() {
            if w[0] > w[1] {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn descent_composition(&self) -> Composition {
        perm_descent_composition(self)
    }

    /// `π^c`: the i-th smallest letter is replaced by the i-th largest.
    pub fn complement(&self) -> Permutation {
        let mut sorted = self.letters.clone();
        sorted.sort_unstable();
        let n = sorted.len();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let rank = sorted.binary_search(l).unwrap();
                sorted[n - 1 - rank]
            })
            .collect();
        Permutation { letters }
    }

    /// `π^r`, the letters read right to left.
    pub fn reversed(&self) -> Permutation {
        let mut letters = self.letters.clone();
        letters.reverse();
        Permutation { letters }
    }

    pub fn is_disjoint_from(&self, other: &Permutation) -> bool {
        first_common_letter(self, other).is_none()
    }
}

fn first_common_letter(p: &Permutation, q: &Permutation) -> Option<u32> {
    let ps: std::collections::HashSet<u32> = p.letters.iter().copied().collect();
    q.letters.iter().copied().find(|l| ps.contains(l))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.letters.iter().all(|&l| l <= 9) {
            ""
        } else {
            ","
        };
        let text: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", text.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::empty());
        }
        let letters = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad letter {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad letter {ch:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(letters)
    }
}

/// Replaces the smallest letter by 1, the next by 2, and so on.
pub fn standardize(p: &Permutation) -> Permutation {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| p.letters[i]);
    let mut letters = vec![0u32; p.len()];
    for (rank, &i) in order.iter().enumerate() {
        letters[i] = rank as u32 + 1;
    }
    Permutation { letters }
}

/// Lengths of the maximal increasing runs.
pub fn perm_descent_composition(p: &Permutation) -> Composition {
    composition_from_mask(p.len(), p.descent_mask())
}

/// Value of a statistic: a number or a set of positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatValue {
    Integer(i64),
    /// Bit `i` is set when position `i` belongs to the set.
    PositionSet(u64),
}

impl StatValue {
    pub fn from_positions(positions: &[usize]) -> StatValue {
        StatValue::PositionSet(positions.iter().fold(0u64, |m, &i| m | (1 << i)))
    }

    pub fn positions(&self) -> Option<Vec<usize>> {
        match *self {
            StatValue::PositionSet(mut m) => {
                let mut out = Vec::new();
                while m != 0 {
                    out.push(m.trailing_zeros() as usize);
                    m &= m - 1;
                }
                Some(out)
            }
            StatValue::Integer(_) => None,
        }
    }
}

impl fmt::Display for StatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatValue::Integer(k) => write!(f, "{k}"),
            StatValue::PositionSet(_) => {
                let text: Vec<String> = self
                    .positions()
                    .unwrap()
                    .iter()
                    .map(|i| i.to_string())
                    .collect();
                write!(f, "{{{}}}", text.join(","))
            }
        }
    }
}

/// A statistic that is a function of the descent composition.
pub trait DescentStatistic: Sync {
    fn name(&self) -> String;
    fn on_composition(&self, l: &Composition) -> StatValue;
}

/// A statistic evaluated directly on permutations.
pub trait PermutationStatistic: Sync {
    fn name(&self) -> String;
    fn on_permutation(&self, p: &Permutation) -> StatValue;
}

/// The descent statistics studied here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StatisticId {
    Des,
    #[serde(rename = "des")]
    DesNum,
    #[serde(rename = "maj")]
    Maj,
    Pk,
    #[serde(rename = "pk")]
    PkNum,
    Epk,
    #[serde(rename = "epk")]
    EpkNum,
    Lpk,
    #[serde(rename = "lpk")]
    LpkNum,
    Rpk,
    #[serde(rename = "rpk")]
    RpkNum,
    Val,
    #[serde(rename = "val")]
    ValNum,
}

impl StatisticId {
    pub const ALL: [StatisticId; 13] = [
        StatisticId::Des,
        StatisticId::DesNum,
        StatisticId::Maj,
        StatisticId::Pk,
        StatisticId::PkNum,
        StatisticId::Epk,
        StatisticId::EpkNum,
        StatisticId::Lpk,
        StatisticId::LpkNum,
        StatisticId::Rpk,
        StatisticId::RpkNum,
        StatisticId::Val,
        StatisticId::ValNum,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StatisticId::Des => "Des",
            StatisticId::DesNum => "des",
            StatisticId::Maj => "maj",
            StatisticId::Pk => "Pk",
            StatisticId::PkNum => "pk",
            StatisticId::Epk => "Epk",
            StatisticId::EpkNum => "epk",
            StatisticId::Lpk => "Lpk",
            StatisticId::LpkNum => "lpk",
            StatisticId::Rpk => "Rpk",
            StatisticId::RpkNum => "rpk",
            StatisticId::Val => "Val",
            StatisticId::ValNum => "val",
        }
    }

    /// The set-valued statistic a counting statistic is the size of.
    fn set_version(&self) -> Option<StatisticId> {
        match self {
            StatisticId::DesNum => Some(StatisticId::Des),
            StatisticId::PkNum => Some(StatisticId::Pk),
            StatisticId::EpkNum => Some(StatisticId::Epk),
            StatisticId::LpkNum => Some(StatisticId::Lpk),
            StatisticId::RpkNum => Some(StatisticId::Rpk),
            StatisticId::ValNum => Some(StatisticId::Val),
            _ => None,
        }
    }

    /// Evaluates on the descent set `D ⊆ [n-1]` of a composition of `n`.
    pub fn eval_descents(&self, n: usize, descents: u32) -> StatValue {
        if let Some(set_stat) = self.set_version() {
            let set = set_stat.position_mask(n, descents);
            return StatValue::Integer(set.count_ones() as i64);
        }
        match self {
            StatisticId::Maj => {
                let mut m = descents;
                let mut sum = 0i64;
                while m != 0 {
                    sum += m.trailing_zeros() as i64 + 1;
                    m &= m - 1;
                }
                StatValue::Integer(sum)
            }
            _ => StatValue::PositionSet(self.position_mask(n, descents)),
        }
    }

    // Position masks use bit i for position i; `descents` uses bit i - 1.
    fn position_mask(&self, n: usize, descents: u32) -> u64 {
        let des = (descents as u64) << 1;
        let interior = if n >= 3 { ((1u64 << n) - 1) & !0b11 } else { 0 };
        let prev = des << 1;
        match self {
            StatisticId::Des => des,
            // i in D and i-1 not in D, for 2 <= i <= n-1
            StatisticId::Pk => des & !prev & interior,
            // i not in D and i-1 in D, for 2 <= i <= n-1
            StatisticId::Val => !des & prev & interior,
            StatisticId::Lpk => {
                let mut m = StatisticId::Pk.position_mask(n, descents);
                if n >= 2 && descents & 1 != 0 {
                    m |= 1 << 1;
                }
                m
            }
            StatisticId::Rpk => {
                let mut m = StatisticId::Pk.position_mask(n, descents);
                if n >= 2 && descents & (1 << (n - 2)) == 0 {
                    m |= 1 << n;
                }
                m
            }
            StatisticId::Epk => {
                if n == 1 {
                    1 << 1
                } else {
                    StatisticId::Lpk.position_mask(n, descents)
                        | StatisticId::Rpk.position_mask(n, descents)
                }
            }
            _ => unreachable!("counting statistics are handled by their set versions"),
        }
    }
}

impl fmt::Display for StatisticId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatisticId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatisticId::ALL
            .iter()
            .copied()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic {s:?}")))
    }
}

impl DescentStatistic for StatisticId {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn on_composition(&self, l: &Composition) -> StatValue {
        self.eval_descents(l.size(), l.index())
    }
}

impl PermutationStatistic for StatisticId {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn on_permutation(&self, p: &Permutation) -> StatValue {
        eval_on_permutation(*self, p)
    }
}

/// Evaluates a statistic straight from its definition on the letters of `p`.
pub fn eval_on_permutation(stat: StatisticId, p: &Permutation) -> StatValue {
    let w = p.letters();
    let n = w.len();
    let descents: Vec<usize> = (1..n).filter(|&i| w[i - 1] > w[i]).collect();
    let peaks: Vec<usize> = (2..n)
        .filter(|&i| w[i - 2] < w[i - 1] && w[i - 1] > w[i])
        .collect();
    let valleys: Vec<usize> = (2..n)
        .filter(|&i| w[i - 2] > w[i - 1] && w[i - 1] < w[i])
        .collect();
    let left_peaks = || {
        let mut s = peaks.clone();
        if n >= 2 && w[0] > w[1] {
            s.push(1);
        }
        s.sort_unstable();
        s
    };
    let right_peaks = || {
        let mut s = peaks.clone();
        if n >= 2 && w[n - 2] < w[n - 1] {
            s.push(n);
        }
        s
    };
    let exterior_peaks = || {
        let mut s = left_peaks();
        if n >= 2 && w[n - 2] < w[n - 1] {
            s.push(n);
        }
        if n == 1 {
            s.push(1);
        }
        s
    };
    let count = |v: Vec<usize>| StatValue::Integer(v.len() as i64);
    match stat {
        StatisticId::Des => StatValue::from_positions(&descents),
        StatisticId::DesNum => count(descents),
        StatisticId::Maj => StatValue::Integer(descents.iter().sum::<usize>() as i64),
        StatisticId::Pk => StatValue::from_positions(&peaks),
        StatisticId::PkNum => count(peaks),
        StatisticId::Epk => StatValue::from_positions(&exterior_peaks()),
        StatisticId::EpkNum => count(exterior_peaks()),
        StatisticId::Lpk => StatValue::from_positions(&left_peaks()),
        StatisticId::LpkNum => count(left_peaks()),
        StatisticId::Rpk => StatValue::from_positions(&right_peaks()),
        StatisticId::RpkNum => count(right_peaks()),
        StatisticId::Val => StatValue::from_positions(&valleys),
        StatisticId::ValNum => count(valleys),
    }
}

pub fn eval_on_composition(stat: StatisticId, l: &Composition) -> StatValue {
    stat.on_composition(l)
}

/// Evaluates a descent statistic on a permutation through its descent composition.
pub struct ViaComposition<S>(pub S);

impl<S: DescentStatistic> PermutationStatistic for ViaComposition<S> {
    fn name(&self) -> String {
        self.0.name()
    }

    fn on_permutation(&self, p: &Permutation) -> StatValue {
        self.0.on_composition(&perm_descent_composition(p))
    }
}

/// First letter of `std π`. A permutation statistic that is not a descent
/// statistic and not shuffle-compatible; used as a negative control.
pub struct StdFirstLetter;

impl PermutationStatistic for StdFirstLetter {
    fn name(&self) -> String {
        "std-first-letter".into()
    }

    fn on_permutation(&self, p: &Permutation) -> StatValue {
        match p.letters().first() {
            None => StatValue::Integer(0),
            Some(first) => {
                StatValue::Integer(p.letters().iter().filter(|&&l| l <= *first).count() as i64)
            }
        }
    }
}

/// Smallest part of the descent composition. A descent statistic that is not
/// shuffle-compatible; used as a negative control.
pub struct SmallestPart;

impl DescentStatistic for SmallestPart {
    fn name(&self) -> String {
        "smallest-part".into()
    }

    fn on_composition(&self, l: &Composition) -> StatValue {
        StatValue::Integer(l.parts().iter().copied().min().unwrap_or(0) as i64)
    }
}

/// Per composition of `n`, the index of its equivalence class. Classes are
/// numbered in order of their smallest member.
pub fn class_labels<S: DescentStatistic + ?Sized>(stat: &S, n: usize) -> Result<Vec<usize>> {
    check_degree(n)?;
    let mut seen: HashMap<StatValue, usize> = HashMap::new();
    let mut labels = Vec::with_capacity(num_compositions(n));
    for mask in 0..num_compositions(n) as u64 {
        let value = stat.on_composition(&composition_from_mask(n, mask as u32));
        let next = seen.len();
        labels.push(*seen.entry(value).or_insert(next));
    }
    Ok(labels)
}

/// Blocks of compositions of `n` sharing a statistic value, each sorted by
/// index and ordered by their smallest member.
pub fn equivalence_classes<S: DescentStatistic + ?Sized>(
    stat: &S,
    n: usize,
) -> Result<Vec<Vec<Composition>>> {
    let labels = class_labels(stat, n)?;
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (mask, &label) in labels.iter().enumerate() {
        blocks[label].push(composition_from_mask(n, mask as u32));
    }
    Ok(blocks)
}

/// Every interleaving of `p` and `q`, in lexicographic order of the chosen
/// positions for `p`.
pub fn shuffles(p: &Permutation, q: &Permutation) -> Result<Vec<Permutation>> {
    if let Some(l) = first_common_letter(p, q) {
        return Err(Error::NotDisjoint(l));
    }
    let (a, b) = (p.len(), q.len());
    let mut out = Vec::new();
    for_each_position_subset(a + b, a, |positions| {
        let (mut i, mut j) = (0, 0);
        let mut letters = Vec::with_capacity(a + b);
        for pos in 0..a + b {
            if positions & (1 << pos) != 0 {
                letters.push(p.letters[i]);
                i += 1;
            } else {
                letters.push(q.letters[j]);
                j += 1;
            }
        }
        out.push(Permutation { letters });
    });
    Ok(out)
}

/// Calls `f` with each `k`-element subset of `{0, .., total-1}` as a bitmask,
/// in increasing numeric order.
pub(crate) fn for_each_position_subset(total: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > total {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << total;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        f(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// The multiset `{st τ : τ ∈ p ⧢ q}` as value → multiplicity.
pub fn shuffle_distribution<S: PermutationStatistic + ?Sized>(
    stat: &S,
    p: &Permutation,
    q: &Permutation,
) -> Result<BTreeMap<StatValue, usize>> {
    let mut dist = BTreeMap::new();
    for t in shuffles(p, q)? {
        *dist.entry(stat.on_permutation(&t)).or_insert(0) += 1;
    }
    Ok(dist)
}

/// Two representative pairs with equal statistics and lengths whose shuffle
/// distributions differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleWitness {
    pub first: (String, String),
    pub second: (String, String),
    pub first_distribution: String,
    pub second_distribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleCheckReport {
    pub statistic: String,
    pub max_total_len: usize,
    pub compatible: bool,
    pub pairs_checked: usize,
    pub witness: Option<ShuffleWitness>,
}

fn format_distribution(d: &BTreeMap<StatValue, usize>) -> String {
    let items: Vec<String> = d.iter().map(|(v, m)| format!("{v}:{m}")).collect();
    format!("[{}]", items.join(", "))
}

// All permutations of [n], grouped by descent composition index.
fn standard_permutations_by_composition(n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut groups = vec![Vec::new(); num_compositions(n)];
    let mut current: Vec<u32> = (1..=n as u32).collect();
    loop {
        let p = Permutation::from_letters_unchecked(current.clone());
        groups[p.descent_mask() as usize].push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            break;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    groups
}

/// Brute-force test of shuffle-compatibility for all length pairs with
/// `a + b <= max_total_len`.
///
/// Every pair of descent compositions gets two representative pairs of
/// disjoint permutations: the block construction of
/// [`crate::qsym::realize_permutation`] on adjacent letter ranges, and a
/// uniformly random standard permutation with that composition placed on a
/// random disjoint alphabet (fixed seed). Representatives are grouped by
/// `(|π|, |σ|, st π, st σ)`; the statistic passes when every group has a
/// single shuffle distribution.
pub fn check_shuffle_compatible<S: PermutationStatistic + ?Sized>(
    stat: &S,
    max_total_len: usize,
) -> Result<ShuffleCheckReport> {
    if max_total_len > 12 {
        return Err(Error::Precondition(format!(
            "max_total_len {max_total_len} is too large for brute-force shuffling"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f50_ff1e);
    let by_comp: Vec<Vec<Vec<Vec<u32>>>> = (0..=max_total_len)
        .map(standard_permutations_by_composition)
        .collect();

    type Key = (usize, usize, StatValue, StatValue);
    let mut groups: HashMap<Key, (Permutation, Permutation, BTreeMap<StatValue, usize>)> =
        HashMap::new();
    let mut pairs_checked = 0;

    for total in 0..=max_total_len {
        for a in 0..=total {
            let b = total - a;
            for left in compositions_of(a)? {
                for right in compositions_of(b)? {
                    let canonical = (
                        crate::qsym::realize_permutation(&left, 0),
                        crate::qsym::realize_permutation(&right, a as u32),
                    );
                    let random = random_representatives(
                        &by_comp[a][left.index() as usize],
                        &by_comp[b][right.index() as usize],
                        &mut rng,
                    );
                    for (p, q) in [canonical, random] {
                        pairs_checked += 1;
                        let key = (a, b, stat.on_permutation(&p), stat.on_permutation(&q));
                        let dist = shuffle_distribution(stat, &p, &q)?;
                        match groups.get(&key) {
                            None => {
                                groups.insert(key, (p, q, dist));
                            }
                            Some((p0, q0, d0)) if *d0 != dist => {
                                return Ok(ShuffleCheckReport {
                                    statistic: stat.name(),
                                    max_total_len,
                                    compatible: false,
                                    pairs_checked,
                                    witness: Some(ShuffleWitness {
                                        first: (p0.to_string(), q0.to_string()),
                                        second: (p.to_string(), q.to_string()),
                                        first_distribution: format_distribution(d0),
                                        second_distribution: format_distribution(&dist),
                                    }),
                                });
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
    }
    Ok(ShuffleCheckReport {
        statistic: stat.name(),
        max_total_len,
        compatible: true,
        pairs_checked,
        witness: None,
    })
}

fn random_representatives(
    left_pool: &[Vec<u32>],
    right_pool: &[Vec<u32>],
    rng: &mut ChaCha8Rng,
) -> (Permutation, Permutation) {
    let left = left_pool
        .choose(rng)
        .expect("every composition is realised");
    let right = right_pool
        .choose(rng)
        .expect("every composition is realised");
    let total = left.len() + right.len();
    let mut alphabet: Vec<u32> = (1..=(3 * total as u32).max(1)).collect();
    alphabet.shuffle(rng);
    alphabet.truncate(total);
    let (mut left_letters, mut right_letters) = {
        let (l, r) = alphabet.split_at(left.len());
        (l.to_vec(), r.to_vec())
    };
    left_letters.sort_unstable();
    right_letters.sort_unstable();
    let place = |std: &[u32], letters: &[u32]| {
        Permutation::from_letters_unchecked(std.iter().map(|&r| letters[r as usize - 1]).collect())
    };
    (place(left, &left_letters), place(right, &right_letters))
}
