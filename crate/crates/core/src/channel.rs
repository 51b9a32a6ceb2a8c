//! The (tau, e_i, e_d)_K storage channel: sampling, exhaustive output
//! enumeration, disjointness oracles, distance-based verdicts and decoders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::message::{Message, Strand, SystemParams};
use crate::metric::{code_dna_distance, DnaDistance};

/// Default cap on the number of read pools [`enumerate_outputs`] may produce.
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// A rational fraction in [0, 1], so that floor(tau * K) is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tau {
    num: u64,
    den: u64,
}

impl Tau {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidParams(format!("tau = {num}/{den} is not in [0, 1]")));
        }
        let g = gcd(num, den);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    /// floor(tau * k).
    pub fn floor_times(&self, k: usize) -> usize {
        ((self.num as u128 * k as u128) / self.den as u128) as usize
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `p/q`, an integer, or a finite decimal such as `0.25`.
impl FromStr for Tau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot read tau from {s:?}"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
            return Self::new(num, den);
        }
        let v: u64 = s.parse().map_err(|_| bad())?;
        Self::new(v, 1)
    }
}

impl Serialize for Tau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which of the three tau regimes a channel falls in, by t = floor(tau K).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// t = K (tau = 1).
    Tau1,
    /// K/2 <= t < K.
    High,
    /// t < K/2.
    Low,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChannelParams {
    pub tau: Tau,
    pub e_i: usize,
    pub e_d: usize,
    #[serde(rename = "K")]
    pub k: usize,
}

impl ChannelParams {
    pub fn new(tau: Tau, e_i: usize, e_d: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("K must be at least 1".into()));
        }
        Ok(Self { tau, e_i, e_d, k })
    }

    /// Largest number of erroneous copies per strand.
    pub fn max_erroneous(&self) -> usize {
        self.tau.floor_times(self.k)
    }

    pub fn regime(&self) -> Regime {
        let t = self.max_erroneous();
        if t >= self.k {
            Regime::Tau1
        } else if 2 * t >= self.k {
            Regime::High
        } else {
            Regime::Low
        }
    }
}

/// A multiset of reads in canonical (ascending) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReadPool {
    reads: BTreeMap<Strand, usize>,
}

impl ReadPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_reads<I: IntoIterator<Item = Strand>>(reads: I) -> Self {
        let mut pool = Self::new();
        for r in reads {
            pool.add(r, 1);
        }
        pool
    }

    pub fn add(&mut self, read: Strand, count: usize) {
        if count > 0 {
            *self.reads.entry(read).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &ReadPool) {
        for (r, &c) in &other.reads {
            self.add(*r, c);
        }
    }

    pub fn total(&self) -> usize {
        self.reads.values().sum()
    }

    pub fn count(&self, read: &Strand) -> usize {
        self.reads.get(read).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Strand, usize)> {
        self.reads.iter().map(|(r, &c)| (r, c))
    }

    /// Noiseless output: K copies of every strand.
    pub fn noiseless(z: &Message, k: usize) -> Self {
        let mut pool = Self::new();
        for s in z.strands() {
            pool.add(*s, k);
        }
        pool
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SampleMode {
    /// Uniform number of erroneous copies in 0..=t, uniform error weights.
    #[default]
    Uniform,
    /// Exactly t erroneous copies, each with the maximal error weights.
    WorstCase,
}

fn flip_positions<R: Rng>(w: &BitVector, weight: usize, rng: &mut R) -> BitVector {
    if weight == 0 {
        return *w;
    }
    let n = w.len();
    let mask = sample(rng, n, weight).iter().fold(0u64, |m, p| m | (1u64 << p));
    w.flip(mask)
}

/// One channel output for `z`, deterministic in `seed`.
pub fn sample_output(z: &Message, ch: &ChannelParams, seed: u64, mode: SampleMode) -> ReadPool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = ch.max_erroneous();
    let max_wi = ch.e_i.min(z.params().index_len());
    let max_wd = ch.e_d.min(z.params().data_len());
    let mut pool = ReadPool::new();
    for s in z.strands() {
        let bad = match mode {
            SampleMode::Uniform => rng.gen_range(0..=t),
            SampleMode::WorstCase => t,
        };
        pool.add(*s, ch.k - bad);
        for _ in 0..bad {
            let (wi, wd) = match mode {
                SampleMode::Uniform => (rng.gen_range(0..=max_wi), rng.gen_range(0..=max_wd)),
                SampleMode::WorstCase => (max_wi, max_wd),
            };
            let index = flip_positions(&s.index, wi, &mut rng);
            let data = flip_positions(&s.data, wd, &mut rng);
            pool.add(Strand::new(index, data), 1);
        }
    }
    pool
}

fn multichoose_count(options: u128, upto: usize) -> u128 {
    // sum_{c=0}^{upto} C(options + c - 1, c)
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for c in 0..=upto {
        if c > 0 {
            if options == 0 {
                break;
            }
            term = term.saturating_mul(options + c as u128 - 1) / c as u128;
        }
        total = total.saturating_add(term);
    }
    total
}

/// Noisy variants of a strand within the (e_i, e_d) balls, the strand itself excluded.
fn noisy_variants(s: &Strand, ch: &ChannelParams) -> Vec<Strand> {
    let idx = s.index.hamming_ball(ch.e_i);
    let dat = s.data.hamming_ball(ch.e_d);
    let mut out = Vec::with_capacity(idx.len() * dat.len());
    for i in &idx {
        for d in &dat {
            let r = Strand::new(*i, *d);
            if r != *s {
                out.push(r);
            }
        }
    }
    out
}

/// Upper estimate of |B^K(z)|: the product over strands of the per-strand counts.
pub fn output_count_estimate(z: &Message, ch: &ChannelParams) -> u128 {
    let t = ch.max_erroneous();
    z.strands()
        .iter()
        .map(|s| multichoose_count(noisy_variants(s, ch).len() as u128, t))
        .fold(1u128, |acc, c| acc.saturating_mul(c))
}

/// Per-strand output multisets: K - c exact copies plus c noisy variants, c <= t.
fn strand_outputs(s: &Strand, ch: &ChannelParams) -> Vec<ReadPool> {
    let variants = noisy_variants(s, ch);
    let t = ch.max_erroneous();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(t);
    fn rec(
        s: &Strand,
        k: usize,
        variants: &[Strand],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<ReadPool>,
    ) {
        let mut pool = ReadPool::new();
        pool.add(*s, k - chosen.len());
        for &i in chosen.iter() {
            pool.add(variants[i], 1);
        }
        out.push(pool);
        if left == 0 {
            return;
        }
        for i in start..variants.len() {
            chosen.push(i);
            rec(s, k, variants, i, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(s, ch.k, &variants, 0, t, &mut chosen, &mut out);
    out
}

/// B^K_{(tau, e_i, e_d)}(z): every distinct read pool the channel can emit.
pub fn enumerate_outputs(z: &Message, ch: &ChannelParams, cap: u128) -> Result<BTreeSet<ReadPool>> {
    let estimate = output_count_estimate(z, ch);
    if estimate > cap {
        return Err(Error::BudgetExceeded { required: estimate, cap });
    }
    let mut acc: BTreeSet<ReadPool> = [ReadPool::new()].into_iter().collect();
    for s in z.strands() {
        let options = strand_outputs(s, ch);
        let mut next = BTreeSet::new();
        for partial in &acc {
            for o in &options {
                let mut p = partial.clone();
                p.merge(o);
                next.insert(p);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Whether `pool` is a possible output of `z`: the reads can be assigned to
/// strands, K per strand, with at most t erroneous copies each and every copy
/// inside the (e_i, e_d) balls.
pub fn is_possible_output(pool: &ReadPool, z: &Message, ch: &ChannelParams, cap: u128) -> Result<bool> {
    if pool.total() != z.strands().len() * ch.k {
        return Ok(false);
    }
    Ok(enumerate_outputs(z, ch, cap)?.contains(pool))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjointness {
    pub disjoint: bool,
    pub witness: Option<ReadPool>,
}

pub fn outputs_disjoint(z1: &Message, z2: &Message, ch: &ChannelParams, cap: u128) -> Result<Disjointness> {
    if z1.params() != z2.params() {
        return Err(Error::ParamMismatch);
    }
    let a = enumerate_outputs(z1, ch, cap)?;
    let b = enumerate_outputs(z2, ch, cap)?;
    let witness = a.intersection(&b).next().cloned();
    Ok(Disjointness { disjoint: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteVerdict {
    pub is_dcc: bool,
    /// Positions of two codewords and a pool both can produce.
    pub witness: Option<(usize, usize, ReadPool)>,
}

fn check_code_params(code: &[Message]) -> Result<()> {
    if let Some(first) = code.first() {
        if code.iter().any(|z| z.params() != first.params()) {
            return Err(Error::ParamMismatch);
        }
    }
    Ok(())
}

/// The defining check: all output sets pairwise disjoint.
pub fn is_dcc_brute(code: &[Message], ch: &ChannelParams, cap: u128) -> Result<BruteVerdict> {
    check_code_params(code)?;
    let mut owner: BTreeMap<ReadPool, usize> = BTreeMap::new();
    for (i, z) in code.iter().enumerate() {
        for pool in enumerate_outputs(z, ch, cap)? {
            if let Some(&j) = owner.get(&pool) {
                if j != i {
                    return Ok(BruteVerdict { is_dcc: false, witness: Some((j, i, pool)) });
                }
            } else {
                owner.insert(pool, i);
            }
        }
    }
    Ok(BruteVerdict { is_dcc: true, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DistanceVerdict {
    GuaranteedYes,
    GuaranteedNo,
    Inconclusive,
}

/// Codewords grouped by data multiset (the C_U subcodes), in first-seen order.
pub fn group_by_multiset(code: &[Message]) -> Vec<Vec<Message>> {
    let mut groups: Vec<(crate::message::DataMultiset, Vec<Message>)> = Vec::new();
    for z in code {
        let ms = z.data_multiset();
        match groups.iter_mut().find(|(k, _)| *k == ms) {
            Some((_, g)) => g.push(z.clone()),
            None => groups.push((ms, vec![z.clone()])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Verdict licensed by the DNA-distance conditions for e_d = 0.
///
/// Codewords with different data multisets never share an output, so each
/// C_U group is judged alone and the verdicts combine: any `GuaranteedNo`
/// wins, then any `Inconclusive`.
pub fn is_dcc_by_distance(code: &[Message], ch: &ChannelParams) -> Result<DistanceVerdict> {
    if ch.e_d != 0 {
        return Err(Error::UnsupportedEd(ch.e_d));
    }
    check_code_params(code)?;
    let e = ch.e_i as u32;
    let mut verdict = DistanceVerdict::GuaranteedYes;
    for group in group_by_multiset(code) {
        let distinct = group[0].is_distinct_data();
        let d = if group.len() >= 2 { code_dna_distance(&group)? } else { DnaDistance::Infinite };
        let v = match ch.regime() {
            Regime::Tau1 => {
                if d.exceeds(2 * e) {
                    DistanceVerdict::GuaranteedYes
                } else {
                    DistanceVerdict::GuaranteedNo
                }
            }
            Regime::High => {
                if d.exceeds(e) {
                    if distinct {
                        DistanceVerdict::GuaranteedYes
                    } else {
                        DistanceVerdict::Inconclusive
                    }
                } else {
                    DistanceVerdict::GuaranteedNo
                }
            }
            Regime::Low => {
                if distinct || d.exceeds(e) {
                    DistanceVerdict::GuaranteedYes
                } else {
                    DistanceVerdict::Inconclusive
                }
            }
        };
        verdict = match (verdict, v) {
            (DistanceVerdict::GuaranteedNo, _) | (_, DistanceVerdict::GuaranteedNo) => DistanceVerdict::GuaranteedNo,
            (DistanceVerdict::Inconclusive, _) | (_, DistanceVerdict::Inconclusive) => DistanceVerdict::Inconclusive,
            _ => DistanceVerdict::GuaranteedYes,
        };
    }
    Ok(verdict)
}

/// Majority decoder for the low-tau regime on distinct-data sources: reads are
/// grouped by data-field and each group votes for its index.
pub fn plurality_decode(pool: &ReadPool, params: &SystemParams, ch: &ChannelParams) -> Result<Message> {
    if ch.regime() != Regime::Low {
        return Err(Error::Precondition(format!(
            "plurality decoding needs floor(tau K) < K/2, got floor({} * {}) = {}",
            ch.tau,
            ch.k,
            ch.max_erroneous()
        )));
    }
    if ch.e_d != 0 {
        return Err(Error::UnsupportedEd(ch.e_d));
    }
    let mut votes: BTreeMap<BitVector, BTreeMap<BitVector, usize>> = BTreeMap::new();
    for (r, c) in pool.iter() {
        *votes.entry(r.data).or_default().entry(r.index).or_insert(0) += c;
    }
    if votes.len() != params.m() {
        return Err(Error::WrongCount { expected: params.m(), got: votes.len() });
    }
    let mut strands = Vec::with_capacity(params.m());
    for (data, tally) in votes {
        let mut ranked: Vec<(usize, BitVector)> = tally.into_iter().map(|(i, c)| (c, i)).collect();
        ranked.sort_by_key(|r| std::cmp::Reverse(r.0));
        if ranked.len() > 1 && ranked[0].0 == ranked[1].0 {
            return Err(Error::AmbiguousMajority(data));
        }
        strands.push(Strand::new(ranked[0].1, data));
    }
    Message::new(*params, strands)
}

/// Reference decoder for any regime: the positions of codewords whose output
/// set contains `pool`. Exponential; a DNA-correcting code yields at most one.
pub fn decode_by_enumeration(
    pool: &ReadPool,
    code: &[Message],
    ch: &ChannelParams,
    cap: u128,
) -> Result<Vec<usize>> {
    check_code_params(code)?;
    let mut hits = Vec::new();
    for (i, z) in code.iter().enumerate() {
        if is_possible_output(pool, z, ch, cap)? {
            hits.push(i);
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bv;
    use crate::fixtures::*;

    fn ch(tau: &str, e_i: usize, e_d: usize, k: usize) -> ChannelParams {
        ChannelParams::new(tau.parse().unwrap(), e_i, e_d, k).unwrap()
    }

    fn one_strand() -> Message {
        let p = SystemParams::new(1, 2, 1).unwrap();
        Message::from_pairs(p, &[("0", "0")]).unwrap()
    }

    #[test]
    fn tau_parsing_and_regimes() {
        assert_eq!("1/2".parse::<Tau>().unwrap(), Tau::new(1, 2).unwrap());
        assert_eq!("0.5".parse::<Tau>().unwrap(), Tau::new(1, 2).unwrap());
        assert_eq!("1".parse::<Tau>().unwrap(), Tau::one());
        assert!("3/2".parse::<Tau>().is_err());
        assert!("x".parse::<Tau>().is_err());
        assert_eq!(ch("1", 1, 0, 3).regime(), Regime::Tau1);
        assert_eq!(ch("1/2", 1, 0, 2).regime(), Regime::High);
        assert_eq!(ch("2/3", 1, 0, 3).regime(), Regime::High);
        assert_eq!(ch("1/3", 1, 0, 3).regime(), Regime::Low);
        assert_eq!(ch("0.99", 1, 0, 1).regime(), Regime::Low);
        assert_eq!(Tau::new(7, 10).unwrap().floor_times(10), 7);
    }

    #[test]
    fn noiseless_sampling() {
        let z = example1_z1();
        for seed in 0..5 {
            assert_eq!(sample_output(&z, &ch("1", 0, 0, 3), seed, SampleMode::Uniform), ReadPool::noiseless(&z, 3));
            assert_eq!(sample_output(&z, &ch("0", 2, 2, 3), seed, SampleMode::Uniform), ReadPool::noiseless(&z, 3));
        }
    }

    #[test]
    fn sampled_pools_are_enumerated() {
        let z = example1_z1();
        let c = ch("1", 1, 0, 2);
        let outs = enumerate_outputs(&z, &c, DEFAULT_ENUM_CAP).unwrap();
        for seed in 0..50 {
            for mode in [SampleMode::Uniform, SampleMode::WorstCase] {
                let pool = sample_output(&z, &c, seed, mode);
                assert_eq!(pool.total(), 8);
                assert!(outs.contains(&pool));
                for (r, _) in pool.iter() {
                    assert!(z.strands().iter().any(|s| s.data == r.data && s.index.hamming(&r.index) <= 1));
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let z = example1_z1();
        let c = ch("2/3", 1, 1, 3);
        assert_eq!(sample_output(&z, &c, 7, SampleMode::Uniform), sample_output(&z, &c, 7, SampleMode::Uniform));
    }

    #[test]
    fn tiny_enumerations() {
        let z = one_strand();
        assert_eq!(enumerate_outputs(&z, &ch("1", 0, 0, 3), 10).unwrap().len(), 1);
        let outs = enumerate_outputs(&z, &ch("1", 1, 0, 1), 10).unwrap();
        let expected: BTreeSet<ReadPool> = [
            ReadPool::from_reads([Strand::parse("0", "0").unwrap()]),
            ReadPool::from_reads([Strand::parse("1", "0").unwrap()]),
        ]
        .into_iter()
        .collect();
        assert_eq!(outs, expected);
        let outs = enumerate_outputs(&z, &ch("1/2", 1, 0, 2), 10).unwrap();
        let expected: BTreeSet<ReadPool> = [
            ReadPool::from_reads([Strand::parse("0", "0").unwrap(); 2]),
            ReadPool::from_reads([Strand::parse("0", "0").unwrap(), Strand::parse("1", "0").unwrap()]),
        ]
        .into_iter()
        .collect();
        assert_eq!(outs, expected);
    }

    #[test]
    fn enumeration_budget() {
        let z = example1_z1();
        assert!(matches!(
            enumerate_outputs(&z, &ch("1", 2, 3, 3), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn disjointness_cases() {
        let z1 = example1_z1();
        let z2 = example1_z2();
        let same = outputs_disjoint(&z1, &z1, &ch("1", 1, 0, 1), DEFAULT_ENUM_CAP).unwrap();
        assert!(!same.disjoint && same.witness.is_some());
        let (a, b) = nongraphic_pair();
        let r = outputs_disjoint(&a, &b, &ch("1", 1, 0, 1), DEFAULT_ENUM_CAP).unwrap();
        assert!(!r.disjoint);
        let p = *z1.params();
        let other = Message::from_pairs(p, &[("00", "000"), ("01", "000"), ("10", "000"), ("11", "000")]).unwrap();
        assert!(outputs_disjoint(&z1, &other, &ch("1", 2, 0, 1), DEFAULT_ENUM_CAP).unwrap().disjoint);
        assert!(!outputs_disjoint(&z1, &z2, &ch("1", 1, 0, 1), DEFAULT_ENUM_CAP).unwrap().disjoint);
    }

    #[test]
    fn dcc_brute_cases() {
        let z1 = example1_z1();
        let z2 = example1_z2();
        assert!(is_dcc_brute(std::slice::from_ref(&z1), &ch("1", 1, 0, 1), DEFAULT_ENUM_CAP).unwrap().is_dcc);
        assert!(is_dcc_brute(&[z1.clone(), z2.clone()], &ch("1", 0, 0, 1), DEFAULT_ENUM_CAP).unwrap().is_dcc);
        let v = is_dcc_brute(&[z1, z2], &ch("1", 1, 0, 1), DEFAULT_ENUM_CAP).unwrap();
        assert!(!v.is_dcc);
        assert_eq!(v.witness.as_ref().map(|w| (w.0, w.1)), Some((0, 1)));
    }

    #[test]
    fn distance_verdicts() {
        let z1 = example1_z1();
        let z2 = example1_z2();
        assert_eq!(
            is_dcc_by_distance(&[z1.clone(), z2.clone()], &ch("1", 1, 0, 1)).unwrap(),
            DistanceVerdict::GuaranteedNo
        );
        let p = *z1.params();
        let other = Message::from_pairs(p, &[("00", "000"), ("01", "000"), ("10", "000"), ("11", "000")]).unwrap();
        assert_eq!(
            is_dcc_by_distance(&[z1.clone(), other], &ch("1", 3, 0, 2)).unwrap(),
            DistanceVerdict::GuaranteedYes
        );
        let (a, b) = nongraphic_pair();
        assert_eq!(is_dcc_by_distance(&[a, b], &ch("1/3", 2, 0, 3)).unwrap(), DistanceVerdict::GuaranteedYes);
        assert_eq!(
            is_dcc_by_distance(&[z1.clone(), z2.clone()], &ch("1/3", 1, 0, 3)).unwrap(),
            DistanceVerdict::Inconclusive
        );
        assert_eq!(
            is_dcc_by_distance(&[z1.clone(), z2.clone()], &ch("1/2", 1, 0, 2)).unwrap(),
            DistanceVerdict::GuaranteedNo
        );
        assert_eq!(is_dcc_by_distance(&[z1, z2], &ch("1", 1, 1, 1)), Err(Error::UnsupportedEd(1)));
    }

    #[test]
    fn plurality_decoding() {
        let (z, _) = nongraphic_pair();
        let c = ch("2/5", 2, 0, 5);
        assert_eq!(plurality_decode(&ReadPool::noiseless(&z, 5), z.params(), &c).unwrap(), z);
        for seed in 0..100 {
            let pool = sample_output(&z, &c, seed, SampleMode::WorstCase);
            assert_eq!(plurality_decode(&pool, z.params(), &c).unwrap(), z);
        }
        // floor(K/2) copies of every strand moved onto one common wrong index
        let mut pool = ReadPool::new();
        for s in z.strands() {
            pool.add(*s, 3);
            pool.add(Strand::new(s.index.flip(0b11), s.data), 2);
        }
        assert_eq!(plurality_decode(&pool, z.params(), &c).unwrap(), z);
    }

    #[test]
    fn plurality_errors() {
        let (z, _) = nongraphic_pair();
        assert!(matches!(
            plurality_decode(&ReadPool::noiseless(&z, 2), z.params(), &ch("1", 1, 0, 2)),
            Err(Error::Precondition(_))
        ));
        let mut pool = ReadPool::new();
        for s in z.strands() {
            pool.add(*s, 1);
            pool.add(Strand::new(s.index.flip(1), s.data), 1);
        }
        assert!(matches!(
            plurality_decode(&pool, z.params(), &ch("0", 1, 0, 2)),
            Err(Error::AmbiguousMajority(_))
        ));
        let short = ReadPool::from_reads([z.strands()[0]]);
        assert!(matches!(
            plurality_decode(&short, z.params(), &ch("0", 1, 0, 1)),
            Err(Error::WrongCount { .. })
        ));
        let _ = bv("0");
    }

    #[test]
    fn enumeration_decoder() {
        let z1 = example1_z1();
        let z2 = example1_z2();
        let c = ch("1", 0, 0, 1);
        let pool = ReadPool::noiseless(&z2, 1);
        assert_eq!(decode_by_enumeration(&pool, &[z1, z2], &c, DEFAULT_ENUM_CAP).unwrap(), vec![1]);
    }
}
