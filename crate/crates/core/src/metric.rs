//! The DNA-distance, bottleneck matchings, balls and the index-distance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::indexcodes::IndexTuple;
use crate::message::{Message, Strand};

/// Default cap on the number of candidate messages [`ball`] may enumerate.
pub const DEFAULT_BALL_CAP: u128 = 10_000_000;

/// A bijection between two equal-size index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(BitVector, BitVector)>,
    pub weight: u32,
}

impl Matching {
    fn from_pairs(pairs: Vec<(BitVector, BitVector)>) -> Self {
        let weight = pairs.iter().map(|(a, b)| a.hamming(b)).max().unwrap_or(0);
        Self { pairs, weight }
    }
}

/// Either a finite distance or infinity. `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DnaDistance {
    Finite(u32),
    Infinite,
}

impl DnaDistance {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Self::Finite(d) => Some(*d),
            Self::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }

    /// Saturating sum; infinity absorbs.
    pub fn saturating_add(self, other: Self) -> Self {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.saturating_add(b)),
            _ => Self::Infinite,
        }
    }

    /// Strict comparison against an integer threshold: `self > t`.
    pub fn exceeds(&self, t: u32) -> bool {
        match self {
            Self::Finite(d) => *d > t,
            Self::Infinite => true,
        }
    }
}

impl fmt::Display for DnaDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(d) => write!(f, "{d}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for DnaDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(d) => s.serialize_u32(*d),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

fn check_sets(a: &[BitVector], b: &[BitVector]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    if let Some(x) = a.first() {
        let len = x.len();
        if let Some(w) = a.iter().chain(b).find(|w| w.len() != len) {
            return Err(Error::LengthMismatch { expected: len, got: w.len() });
        }
    }
    Ok(())
}

/// Maximum matching in the threshold graph {(a, b) : d_H(a, b) <= t}.
/// Returns `mate_of_left[i] = Some(j)` for matched pairs.
struct ThresholdMatcher<'a> {
    a: &'a [BitVector],
    b: &'a [BitVector],
    t: u32,
    mate_left: Vec<Option<usize>>,
    mate_right: Vec<Option<usize>>,
}

impl<'a> ThresholdMatcher<'a> {
    fn run(a: &'a [BitVector], b: &'a [BitVector], t: u32) -> Self {
        let mut m = Self {
            a,
            b,
            t,
            mate_left: vec![None; a.len()],
            mate_right: vec![None; b.len()],
        };
        for u in 0..a.len() {
            let mut seen = vec![false; b.len()];
            m.augment(u, &mut seen);
        }
        m
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.a[i].hamming(&self.b[j]) <= self.t
    }

    fn augment(&mut self, u: usize, seen: &mut [bool]) -> bool {
        for v in 0..self.b.len() {
            if seen[v] || !self.adjacent(u, v) {
                continue;
            }
            seen[v] = true;
            let free = match self.mate_right[v] {
                None => true,
                Some(w) => self.augment(w, seen),
            };
            if free {
                self.mate_left[u] = Some(v);
                self.mate_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    fn is_perfect(&self) -> bool {
        self.mate_left.iter().all(Option::is_some)
    }

    /// Left vertices reachable by alternating paths from the unmatched left
    /// vertices. Every reached right vertex is matched (the matching is
    /// maximum), so |Y| - |N(Y)| equals the number of unmatched left vertices.
    fn hall_witness(&self) -> Option<Vec<usize>> {
        let roots: Vec<usize> = (0..self.a.len()).filter(|&i| self.mate_left[i].is_none()).collect();
        if roots.is_empty() {
            return None;
        }
        let mut left_seen = vec![false; self.a.len()];
        let mut right_seen = vec![false; self.b.len()];
        for &r in &roots {
            left_seen[r] = true;
        }
        let mut stack = roots;
        #[allow(clippy::needless_range_loop)]
        while let Some(u) = stack.pop() {
            for v in 0..self.b.len() {
                if right_seen[v] || !self.adjacent(u, v) {
                    continue;
                }
                right_seen[v] = true;
                let w = self.mate_right[v].expect("maximum matching leaves no augmenting path");
                if !left_seen[w] {
                    left_seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Some((0..self.a.len()).filter(|&i| left_seen[i]).collect())
    }
}

/// A bijection `a -> b` minimising the largest Hamming distance between
/// matched words.
pub fn bottleneck_matching(a: &[BitVector], b: &[BitVector]) -> Result<Matching> {
    check_sets(a, b)?;
    if a.is_empty() {
        return Err(Error::SizeMismatch { left: 0, right: 0 });
    }
    let max_t = a[0].len() as u32;
    // Perfect matchings exist at t = len, and feasibility is monotone in t.
    let (mut lo, mut hi) = (0u32, max_t);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if ThresholdMatcher::run(a, b, mid).is_perfect() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let m = ThresholdMatcher::run(a, b, lo);
    let pairs = m
        .mate_left
        .iter()
        .enumerate()
        .map(|(i, j)| (a[i], b[j.expect("perfect at the optimum threshold")]))
        .collect();
    Ok(Matching::from_pairs(pairs))
}

/// A subset Y of `a` with |Y| > |N(Y)| in the graph with edges d_H <= t, or
/// `None` when that graph has a perfect matching.
pub fn hall_violating_set(a: &[BitVector], b: &[BitVector], t: u32) -> Result<Option<Vec<BitVector>>> {
    check_sets(a, b)?;
    let m = ThresholdMatcher::run(a, b, t);
    Ok(m.hall_witness().map(|ys| ys.into_iter().map(|i| a[i]).collect()))
}

/// Neighbourhood of `ys` in `b` under threshold `t`.
pub fn neighbourhood(ys: &[BitVector], b: &[BitVector], t: u32) -> Vec<BitVector> {
    b.iter().copied().filter(|w| ys.iter().any(|y| y.hamming(w) <= t)).collect()
}

/// Per-data-field bottleneck weights and the overall distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDetail {
    pub distance: DnaDistance,
    /// Empty when the data multisets differ.
    pub per_data: Vec<(BitVector, Matching)>,
}

pub fn dna_distance_detail(z1: &Message, z2: &Message) -> Result<DistanceDetail> {
    if z1.params() != z2.params() {
        return Err(Error::ParamMismatch);
    }
    if z1.data_multiset() != z2.data_multiset() {
        return Ok(DistanceDetail { distance: DnaDistance::Infinite, per_data: Vec::new() });
    }
    let g1 = z1.groups();
    let g2 = z2.groups();
    let mut per_data = Vec::with_capacity(g1.len());
    let mut worst = 0;
    for (u, idx1) in &g1 {
        let m = bottleneck_matching(idx1, &g2[u])?;
        worst = worst.max(m.weight);
        per_data.push((*u, m));
    }
    Ok(DistanceDetail { distance: DnaDistance::Finite(worst), per_data })
}

pub fn dna_distance(z1: &Message, z2: &Message) -> Result<DnaDistance> {
    dna_distance_detail(z1, z2).map(|d| d.distance)
}

/// Minimum pairwise DNA-distance of a code.
pub fn code_dna_distance(code: &[Message]) -> Result<DnaDistance> {
    if code.len() < 2 {
        return Err(Error::TooFewCodewords(code.len()));
    }
    let mut best = DnaDistance::Infinite;
    for (i, z1) in code.iter().enumerate() {
        for z2 in &code[i + 1..] {
            best = best.min(dna_distance(z1, z2)?);
        }
    }
    Ok(best)
}

/// Maximum positional Hamming distance between two index tuples.
pub fn index_distance(c1: &IndexTuple, c2: &IndexTuple) -> Result<u32> {
    if c1.m() != c2.m() || c1.index_len() != c2.index_len() {
        return Err(Error::ParamMismatch);
    }
    Ok(c1
        .entries()
        .iter()
        .zip(c2.entries())
        .map(|(a, b)| a.hamming(b))
        .max()
        .unwrap_or(0))
}

fn k_subsets(pool: &[BitVector], k: usize) -> Vec<Vec<BitVector>> {
    fn rec(pool: &[BitVector], k: usize, start: usize, cur: &mut Vec<BitVector>, out: &mut Vec<Vec<BitVector>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=pool.len().saturating_sub(need) {
            if pool.len() < need {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// B_r(Z): every message within DNA-distance `r` of `z`.
///
/// Each data-field group is replaced by index sets drawn from the radius-`r`
/// Hamming neighbourhood of its indices; the cartesian product over groups is
/// filtered for pairwise-distinct indices and distance at most `r`.
pub fn ball(z: &Message, r: u32, cap: u128) -> Result<Vec<Message>> {
    let groups = z.groups();
    let mut estimate: u128 = 1;
    let mut candidates: Vec<(BitVector, Vec<Vec<BitVector>>)> = Vec::with_capacity(groups.len());
    let mut pools: Vec<(BitVector, Vec<BitVector>, Vec<BitVector>)> = Vec::new();
    for (u, idx) in &groups {
        let near: BTreeSet<BitVector> = idx.iter().flat_map(|i| i.hamming_ball(r as usize)).collect();
        let near: Vec<BitVector> = near.into_iter().collect();
        estimate = estimate.saturating_mul(binom_u128(near.len(), idx.len()));
        pools.push((*u, idx.clone(), near));
    }
    if estimate > cap {
        return Err(Error::BudgetExceeded { required: estimate, cap });
    }
    for (u, idx, near) in pools {
        let sets: Vec<Vec<BitVector>> = k_subsets(&near, idx.len())
            .into_iter()
            .filter(|s| bottleneck_matching(&idx, s).map(|m| m.weight <= r).unwrap_or(false))
            .collect();
        candidates.push((u, sets));
    }

    let params = *z.params();
    let mut out = Vec::new();
    let mut used: BTreeMap<BitVector, ()> = BTreeMap::new();
    let mut chosen: Vec<Strand> = Vec::with_capacity(params.m());
    fn rec(
        level: usize,
        candidates: &[(BitVector, Vec<Vec<BitVector>>)],
        used: &mut BTreeMap<BitVector, ()>,
        chosen: &mut Vec<Strand>,
        out: &mut Vec<Vec<Strand>>,
    ) {
        if level == candidates.len() {
            out.push(chosen.clone());
            return;
        }
        let (u, sets) = &candidates[level];
        for set in sets {
            if set.iter().any(|i| used.contains_key(i)) {
                continue;
            }
            for i in set {
                used.insert(*i, ());
                chosen.push(Strand::new(*i, *u));
            }
            rec(level + 1, candidates, used, chosen, out);
            for i in set {
                used.remove(i);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, &candidates, &mut used, &mut chosen, &mut raw);
    for strands in raw {
        let y = Message::new(params, strands)?;
        if !dna_distance(z, &y)?.exceeds(r) {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}
