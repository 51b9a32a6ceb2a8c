//! Index-correcting codes: tuples of distinct indices under the max-positional
//! Hamming distance, their constructions and searches.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVector;
use crate::clique::{self, Graph};
use crate::combin::{factorial, falling, pow2};
use crate::error::{Error, Result};
use crate::message::{exact_log2, Message, Strand, SystemParams};
use crate::metric::index_distance;

/// An ordered M-tuple of pairwise distinct, equal-length indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    entries: Vec<BitVector>,
}

impl IndexTuple {
    pub fn new(entries: Vec<BitVector>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidParams("an index tuple needs at least one entry".into()))?;
        if let Some(w) = entries.iter().find(|w| w.len() != first.len()) {
            return Err(Error::LengthMismatch { expected: first.len(), got: w.len() });
        }
        let mut seen = BTreeSet::new();
        for w in &entries {
            if !seen.insert(*w) {
                return Err(Error::DuplicateIndex(*w));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[BitVector] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn index_len(&self) -> usize {
        self.entries[0].len()
    }

    fn with_entry(&self, pos: usize, w: BitVector) -> Self {
        let mut entries = self.entries.clone();
        entries[pos] = w;
        Self { entries }
    }
}

/// Parameters (l, M, d) of an index-correcting code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub index_len: usize,
    pub m: usize,
    pub d: u32,
}

/// A set of index tuples with pairwise index-distance at least `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCode {
    params: CodeParams,
    rows: Vec<IndexTuple>,
}

impl IndexCode {
    /// Builds a code after checking every row shape and every pairwise distance.
    pub fn new(params: CodeParams, rows: Vec<IndexTuple>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.m() != params.m || r.index_len() != params.index_len) {
            return Err(Error::InvalidCode(format!("row {bad} does not have shape ({}, {})", params.index_len, params.m)));
        }
        let v = validate_code(&rows, params.d);
        if let Some(violation) = v.violation {
            return Err(Error::InvalidCode(violation.to_string()));
        }
        Ok(Self { params, rows })
    }

    fn trusted(params: CodeParams, rows: Vec<IndexTuple>) -> Self {
        debug_assert!(validate_code(&rows, params.d).valid || rows.len() > 2000);
        Self { params, rows }
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn rows(&self) -> &[IndexTuple] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Actual minimum index-distance (None for fewer than two rows).
    pub fn min_distance(&self) -> Option<u32> {
        min_pairwise(&self.rows).map(|(_, _, d)| d)
    }
}

fn min_pairwise(rows: &[IndexTuple]) -> Option<(usize, usize, u32)> {
    let mut best: Option<(usize, usize, u32)> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let d = tuple_distance(&rows[i], &rows[j]);
            if best.is_none_or(|b| d < b.2) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

#[inline]
fn tuple_distance(a: &IndexTuple, b: &IndexTuple) -> u32 {
    a.entries.iter().zip(&b.entries).map(|(x, y)| x.hamming(y)).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Shape { row: usize },
    Distance { row_a: usize, row_b: usize, distance: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Shape { row } => write!(f, "row {row} has a different shape from row 0"),
            Self::Distance { row_a, row_b, distance } => {
                write!(f, "rows {row_a} and {row_b} are at index-distance {distance}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeValidation {
    pub valid: bool,
    pub violation: Option<Violation>,
}

/// Checks that all rows share one shape and are pairwise at index-distance >= d.
pub fn validate_code(rows: &[IndexTuple], d: u32) -> CodeValidation {
    if let Some(first) = rows.first() {
        if let Some(row) = rows.iter().position(|r| r.m() != first.m() || r.index_len() != first.index_len()) {
            return CodeValidation { valid: false, violation: Some(Violation::Shape { row }) };
        }
    }
    if d == 0 {
        return CodeValidation { valid: true, violation: None };
    }
    if d == 1 {
        // distance >= 1 means distinct rows; report the lexicographically first equal pair
        let mut seen: HashMap<&IndexTuple, (usize, Option<usize>)> = HashMap::new();
        for (i, r) in rows.iter().enumerate() {
            seen.entry(r).and_modify(|e| { e.1.get_or_insert(i); }).or_insert((i, None));
        }
        let first = seen.values().filter_map(|&(a, b)| b.map(|b| (a, b))).min();
        return match first {
            Some((row_a, row_b)) => CodeValidation {
                valid: false,
                violation: Some(Violation::Distance { row_a, row_b, distance: 0 }),
            },
            None => CodeValidation { valid: true, violation: None },
        };
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let distance = tuple_distance(&rows[i], &rows[j]);
            if distance < d {
                return CodeValidation {
                    valid: false,
                    violation: Some(Violation::Distance { row_a: i, row_b: j, distance }),
                };
            }
        }
    }
    CodeValidation { valid: true, violation: None }
}

/// A binary linear code of length log2(M), used as the inner code of the coset
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInnerCode {
    length: usize,
    codewords: Vec<BitVector>,
    min_distance: u32,
}

impl LinearInnerCode {
    const MAX_LEN: usize = 20;

    /// The code spanned by `generators`.
    pub fn from_generators(length: usize, generators: &[BitVector]) -> Result<Self> {
        Self::check_len(length)?;
        let mut words: BTreeSet<BitVector> = [BitVector::zero(length)?].into_iter().collect();
        for g in generators {
            if g.len() != length {
                return Err(Error::LengthMismatch { expected: length, got: g.len() });
            }
            let shifted: Vec<BitVector> = words.iter().map(|w| w.xor(g)).collect();
            words.extend(shifted);
        }
        Ok(Self::from_closed(length, words.into_iter().collect()))
    }

    /// Checks closure under addition.
    pub fn from_codewords(length: usize, words: &[BitVector]) -> Result<Self> {
        Self::check_len(length)?;
        if let Some(w) = words.iter().find(|w| w.len() != length) {
            return Err(Error::LengthMismatch { expected: length, got: w.len() });
        }
        let set: BTreeSet<BitVector> = words.iter().copied().collect();
        if !set.contains(&BitVector::zero(length)?) {
            return Err(Error::NotLinear);
        }
        for a in &set {
            for b in &set {
                if !set.contains(&a.xor(b)) {
                    return Err(Error::NotLinear);
                }
            }
        }
        Ok(Self::from_closed(length, set.into_iter().collect()))
    }

    fn from_closed(length: usize, codewords: Vec<BitVector>) -> Self {
        let min_distance = codewords
            .iter()
            .map(|w| w.weight())
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(length as u32 + 1);
        Self { length, codewords, min_distance }
    }

    fn check_len(length: usize) -> Result<()> {
        if length == 0 || length > Self::MAX_LEN {
            return Err(Error::InvalidInner(format!("length {length} not in 1..={}", Self::MAX_LEN)));
        }
        Ok(())
    }

    /// All words of the given length (distance 1).
    pub fn universe(length: usize) -> Result<Self> {
        Self::check_len(length)?;
        Ok(Self::from_closed(length, BitVector::all(length)?))
    }

    /// Even-weight words (distance 2).
    pub fn parity(length: usize) -> Result<Self> {
        Self::check_len(length)?;
        let words = BitVector::all(length)?.into_iter().filter(|w| w.weight() % 2 == 0).collect();
        Ok(Self::from_closed(length, words))
    }

    /// {0...0, 1...1} (distance = length).
    pub fn repetition(length: usize) -> Result<Self> {
        Self::check_len(length)?;
        let ones = BitVector::new(length, if length == 64 { u64::MAX } else { (1 << length) - 1 })?;
        Self::from_generators(length, &[ones])
    }

    /// The binary Hamming code of length 2^r - 1 (distance 3): kernel of the
    /// parity-check matrix whose columns are the nonzero r-bit words.
    pub fn hamming(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInner(format!("Hamming code needs r >= 2, got {r}")));
        }
        let length = (1usize << r) - 1;
        Self::check_len(length)?;
        let words = BitVector::all(length)?
            .into_iter()
            .filter(|w| {
                let syndrome = (0..length)
                    .filter(|&pos| w.bit(pos))
                    .fold(0usize, |s, pos| s ^ (pos + 1));
                syndrome == 0
            })
            .collect();
        Ok(Self::from_closed(length, words))
    }

    /// The inner code used for target distance `d`: the whole space for d = 1,
    /// parity for d = 2, repetition for d = length, Hamming for d = 3 at
    /// length 2^r - 1.
    pub fn for_distance(length: usize, d: u32) -> Result<Self> {
        match d {
            0 | 1 => Self::universe(length),
            2 => Self::parity(length),
            d if d as usize == length => Self::repetition(length),
            3 if (length + 1).is_power_of_two() => Self::hamming((length + 1).trailing_zeros() as usize),
            _ => Err(Error::InvalidInner(format!("no inner code for length {length}, distance {d}"))),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn codewords(&self) -> &[BitVector] {
        &self.codewords
    }

    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub leader: BitVector,
    /// Ascending.
    pub members: Vec<BitVector>,
}

/// Cosets of `inner` covering all words of its length: the code itself first,
/// then by leader (minimal weight, ties lexicographic).
pub fn coset_partition(inner: &LinearInnerCode) -> Result<Vec<Coset>> {
    let mut assigned = BTreeSet::new();
    let mut cosets = Vec::new();
    for w in BitVector::all(inner.length)? {
        if assigned.contains(&w) {
            continue;
        }
        let mut members: Vec<BitVector> = inner.codewords.iter().map(|c| c.xor(&w)).collect();
        members.sort();
        assigned.extend(members.iter().copied());
        let leader = *members.iter().min_by_key(|m| (m.weight(), **m)).unwrap();
        cosets.push(Coset { leader, members });
    }
    cosets.sort_by_key(|c| (c.leader.weight(), c.leader));
    Ok(cosets)
}

fn permutations(items: &[BitVector]) -> Vec<Vec<BitVector>> {
    fn rec(rest: &mut Vec<BitVector>, cur: &mut Vec<BitVector>, out: &mut Vec<Vec<BitVector>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let w = rest.remove(i);
            cur.push(w);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, w);
        }
    }
    let mut out = Vec::new();
    rec(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// An augmented row that failed post-validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedRow {
    pub coset: usize,
    pub swapped_word: String,
    pub row: Vec<String>,
    pub conflicts_with: usize,
    pub distance: u32,
}

/// Output of [`construct_coset`] with the size accounting.
#[derive(Clone, Debug)]
pub struct CosetConstruction {
    pub code: IndexCode,
    pub base_rows: usize,
    /// |C'_i| for cosets 2..=M/A.
    pub kept_per_coset: Vec<usize>,
    pub augmented_attempted: usize,
    pub augmented_accepted: usize,
    pub dropped: Vec<DroppedRow>,
    /// (A!)^{M/A} + sum_i |C'_i| (A!)^{M/A} / A^2.
    pub formula_total: BigUint,
}

/// Coset construction of an (log2 M, M, d) index-correcting code.
///
/// Base rows are every product of per-coset permutations, block `i` holding
/// coset `i`. For each coset after the first and each member `c'` of weight
/// at least `d`, every base row with the zero word first in block 0 and `c'`
/// first in its own block yields one more row with those two entries swapped.
/// Each such row is kept only if it is at distance >= d from every row kept so far.
pub fn construct_coset(m: usize, d: u32, inner: &LinearInnerCode, cap: u128) -> Result<CosetConstruction> {
    let l = exact_log2(m)?;
    if l == 0 {
        return Err(Error::InvalidParams("M must be at least 2".into()));
    }
    if inner.length != l {
        return Err(Error::InvalidInner(format!("inner length {} != log2 M = {l}", inner.length)));
    }
    if inner.min_distance < d {
        return Err(Error::InvalidInner(format!(
            "inner distance {} is below d = {d}",
            inner.min_distance
        )));
    }
    let cosets = coset_partition(inner)?;
    let a = inner.size();
    let blocks = cosets.len();
    let base_count = factorial(a as u64).pow(blocks as u32);
    let base_count_u = base_count.to_u128().filter(|&c| c <= cap).ok_or_else(|| Error::BudgetExceeded {
        required: base_count.to_u128().unwrap_or(u128::MAX),
        cap,
    })?;

    let block_perms: Vec<Vec<Vec<BitVector>>> = cosets.iter().map(|c| permutations(&c.members)).collect();
    let mut rows: Vec<IndexTuple> = Vec::with_capacity(base_count_u as usize);
    let mut choice = vec![0usize; blocks];
    'outer: loop {
        let entries: Vec<BitVector> = choice
            .iter()
            .enumerate()
            .flat_map(|(b, &k)| block_perms[b][k].iter().copied())
            .collect();
        rows.push(IndexTuple { entries });
        for b in (0..blocks).rev() {
            choice[b] += 1;
            if choice[b] < block_perms[b].len() {
                continue 'outer;
            }
            choice[b] = 0;
        }
        break;
    }
    let base_rows = rows.len();

    let zero = BitVector::zero(l)?;
    let mut kept_per_coset = Vec::new();
    let mut attempted = 0;
    let mut dropped = Vec::new();
    for (ci, coset) in cosets.iter().enumerate().skip(1) {
        let kept: Vec<BitVector> = coset.members.iter().copied().filter(|w| w.weight() >= d).collect();
        kept_per_coset.push(kept.len());
        let pos = ci * a;
        for c in kept {
            let sources: Vec<IndexTuple> = rows[..base_rows]
                .iter()
                .filter(|r| r.entries[0] == zero && r.entries[pos] == c)
                .map(|r| r.with_entry(0, c).with_entry(pos, zero))
                .collect();
            for candidate in sources {
                attempted += 1;
                let conflict = rows
                    .iter()
                    .enumerate()
                    .map(|(k, r)| (k, tuple_distance(r, &candidate)))
                    .find(|&(_, dist)| dist < d);
                match conflict {
                    None => rows.push(candidate),
                    Some((k, dist)) => dropped.push(DroppedRow {
                        coset: ci + 1,
                        swapped_word: c.to_string(),
                        row: candidate.entries.iter().map(|w| w.to_string()).collect(),
                        conflicts_with: k,
                        distance: dist,
                    }),
                }
            }
        }
    }
    let augmented_accepted = rows.len() - base_rows;
    let per_row_block = if blocks >= 2 { &base_count / BigUint::from(a * a) } else { BigUint::zero() };
    let formula_total = &base_count + per_row_block * kept_per_coset.iter().sum::<usize>();
    let code = IndexCode::trusted(CodeParams { index_len: l, m, d }, rows);
    Ok(CosetConstruction {
        code,
        base_rows,
        kept_per_coset,
        augmented_attempted: attempted,
        augmented_accepted,
        dropped,
        formula_total,
    })
}

fn window_mask(index_len: usize, window: usize) -> u64 {
    let low = (1u64 << window) - 1;
    low | (low << (index_len - window))
}

/// Rows after zero-padding and the first `steps` complement steps.
pub fn extend_steps(rows: &[IndexTuple], d: u32, steps: usize) -> Result<Vec<IndexTuple>> {
    let first = rows.first().ok_or_else(|| Error::InvalidCode("empty code".into()))?;
    let (l, m) = (first.index_len(), first.m());
    let window = (d as usize).div_ceil(2).max(1);
    if window > l {
        return Err(Error::OverlapWindow { window, index_len: l });
    }
    if steps > m {
        return Err(Error::OutOfRange(format!("{steps} steps for M = {m}")));
    }
    let new_len = l + window;
    let mask = window_mask(new_len, window);
    let mut out: Vec<IndexTuple> = rows
        .iter()
        .map(|r| {
            Ok(IndexTuple {
                entries: r.entries.iter().map(|w| w.pad_zeros(window)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    for j in 0..steps {
        let flipped: Vec<IndexTuple> = out
            .iter()
            .map(|r| {
                let w = r.entries[j].flip(mask);
                r.with_entry(j, w)
            })
            .collect();
        out.extend(flipped);
    }
    Ok(out)
}

/// Lifts an (l, M, d) code to an (l + ceil(d/2), M, d) code with 2^M times as
/// many rows by zero-padding and complementing the first and last ceil(d/2)
/// bits of one column at a time.
pub fn construct_extend(code: &IndexCode) -> Result<IndexCode> {
    let p = code.params();
    if code.is_empty() {
        return Err(Error::InvalidCode("empty code".into()));
    }
    let rows = extend_steps(code.rows(), p.d, p.m)?;
    let window = (p.d as usize).div_ceil(2).max(1);
    Ok(IndexCode::trusted(CodeParams { index_len: p.index_len + window, m: p.m, d: p.d }, rows))
}

/// Budgets for the index-code searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Largest confusability graph the exact search will build.
    pub max_vertices: u128,
    /// Branch-and-bound node limit.
    pub max_nodes: u64,
    /// Largest tuple list enumerated directly (d <= 1, greedy shuffles).
    pub max_rows: u128,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_vertices: 6_000, max_nodes: 20_000_000, max_rows: 1_000_000 }
    }
}

/// |I(l, M)| = 2^l (2^l - 1) ... (2^l - M + 1).
pub fn tuple_space_size(l: usize, m: usize) -> BigUint {
    falling(&pow2(l as u64), m as u64)
}

fn check_shape(l: usize, m: usize) -> Result<()> {
    if m == 0 || l == 0 || l > 20 {
        return Err(Error::InvalidParams(format!("unsupported shape l = {l}, M = {m}")));
    }
    if (m as u128) > (1u128 << l) {
        return Err(Error::InvalidParams(format!("M = {m} exceeds 2^l = {}", 1u64 << l)));
    }
    Ok(())
}

fn all_tuples(l: usize, m: usize, cap: u128) -> Result<Vec<IndexTuple>> {
    check_shape(l, m)?;
    let total = tuple_space_size(l, m);
    let total_u = total.to_u128().unwrap_or(u128::MAX);
    if total_u > cap {
        return Err(Error::BudgetExceeded { required: total_u, cap });
    }
    let words = BitVector::all(l)?;
    let mut out = Vec::with_capacity(total_u as usize);
    let mut used = vec![false; words.len()];
    let mut cur = Vec::with_capacity(m);
    fn rec(words: &[BitVector], m: usize, used: &mut [bool], cur: &mut Vec<BitVector>, out: &mut Vec<IndexTuple>) {
        if cur.len() == m {
            out.push(IndexTuple { entries: cur.clone() });
            return;
        }
        for i in 0..words.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(words[i]);
            rec(words, m, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&words, m, &mut used, &mut cur, &mut out);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ExactSearch {
    pub size: usize,
    pub code: IndexCode,
}

/// F(l, M, d) by exact maximum-clique search over I(l, M).
pub fn search_exact_f(l: usize, m: usize, d: u32, budget: SearchBudget) -> Result<ExactSearch> {
    check_shape(l, m)?;
    let params = CodeParams { index_len: l, m, d };
    if d <= 1 {
        let rows = all_tuples(l, m, budget.max_rows)?;
        return Ok(ExactSearch { size: rows.len(), code: IndexCode::trusted(params, rows) });
    }
    if d as usize > l {
        // No two tuples are that far apart.
        let words = BitVector::all(l)?;
        let row = IndexTuple { entries: words[..m].to_vec() };
        return Ok(ExactSearch { size: 1, code: IndexCode::trusted(params, vec![row]) });
    }
    let tuples = all_tuples(l, m, budget.max_vertices)?;
    let n = tuples.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if tuple_distance(&tuples[i], &tuples[j]) >= d {
                g.add_edge(i, j);
            }
        }
    }
    // At l = log2 M the tuples are permutations and relabelling columns is a
    // distance-preserving transitive action, so some maximum code contains tuple 0.
    let transitive = m.is_power_of_two() && m.trailing_zeros() as usize == l;
    let forced: &[usize] = if transitive { &[0] } else { &[] };
    let clique = clique::max_clique(&g, forced, budget.max_nodes)?;
    let rows: Vec<IndexTuple> = clique.into_iter().map(|i| tuples[i].clone()).collect();
    Ok(ExactSearch { size: rows.len(), code: IndexCode::trusted(params, rows) })
}

/// Randomised greedy code: candidates in seeded random order, each kept when
/// at distance >= d from everything kept so far. When I(l, M) is larger than
/// `budget.max_rows`, that many random tuples are tried instead.
pub fn search_greedy(l: usize, m: usize, d: u32, seed: u64, budget: SearchBudget) -> Result<IndexCode> {
    check_shape(l, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = CodeParams { index_len: l, m, d };
    let mut kept: Vec<IndexTuple> = Vec::new();
    let offer = |t: IndexTuple, kept: &mut Vec<IndexTuple>| {
        if kept.iter().all(|r| tuple_distance(r, &t) >= d) {
            kept.push(t);
        }
    };
    let total = tuple_space_size(l, m).to_u128().unwrap_or(u128::MAX);
    if d <= 1 && total <= budget.max_rows {
        kept = all_tuples(l, m, budget.max_rows)?;
        kept.shuffle(&mut rng);
    } else if total <= budget.max_rows {
        let mut all = all_tuples(l, m, budget.max_rows)?;
        all.shuffle(&mut rng);
        for t in all {
            offer(t, &mut kept);
        }
    } else {
        let words = BitVector::all(l)?;
        for _ in 0..budget.max_rows {
            let mut entries: Vec<BitVector> = words.choose_multiple(&mut rng, m).copied().collect();
            entries.shuffle(&mut rng);
            offer(IndexTuple { entries }, &mut kept);
        }
    }
    Ok(IndexCode::trusted(params, kept))
}

/// One message per row: strand i gets index `row[i]` and data-field `data[i]`.
pub fn messages_from_code(code: &IndexCode, data: &[BitVector]) -> Result<Vec<Message>> {
    let p = code.params();
    if data.len() != p.m {
        return Err(Error::WrongCount { expected: p.m, got: data.len() });
    }
    let data_len = data[0].len();
    if let Some(w) = data.iter().find(|w| w.len() != data_len) {
        return Err(Error::LengthMismatch { expected: data_len, got: w.len() });
    }
    let mut seen = BTreeSet::new();
    for u in data {
        if !seen.insert(*u) {
            return Err(Error::DuplicateData(*u));
        }
    }
    let params = SystemParams::new(p.m, p.index_len + data_len, p.index_len)?;
    code.rows()
        .iter()
        .map(|row| {
            let strands = row.entries.iter().zip(data).map(|(i, u)| Strand::new(*i, *u)).collect();
            Message::new(params, strands)
        })
        .collect()
}

/// Index-distance of the whole code, checked through [`index_distance`].
pub fn code_index_distance(rows: &[IndexTuple]) -> Result<Option<u32>> {
    let mut best: Option<u32> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let d = index_distance(&rows[i], &rows[j])?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bv;
    use crate::fixtures::{example2_p, example4_p1};
    use crate::metric::{code_dna_distance, DnaDistance};

    #[test]
    fn tuple_rules() {
        assert!(IndexTuple::new(vec![bv("00"), bv("00")]).is_err());
        assert!(IndexTuple::new(vec![bv("00"), bv("0")]).is_err());
        assert!(IndexTuple::new(vec![]).is_err());
    }

    #[test]
    fn example_two_validates() {
        let p = example2_p();
        assert!(validate_code(&p, 2).valid);
        assert!(!validate_code(&p, 3).valid);
        let mut dup = p.clone();
        dup.push(p[3].clone());
        let v = validate_code(&dup, 2);
        assert_eq!(v.violation, Some(Violation::Distance { row_a: 3, row_b: 6, distance: 0 }));
        assert_eq!(validate_code(&dup, 1).violation, v.violation);
        assert!(validate_code(&p, 1).valid);
        assert!(validate_code(&dup, 0).valid);
        assert!(validate_code(&example4_p1(), 2).valid);
    }

    #[test]
    fn cosets() {
        let parity = LinearInnerCode::parity(2).unwrap();
        let cs = coset_partition(&parity).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].members, vec![bv("00"), bv("11")]);
        assert_eq!(cs[1].members, vec![bv("01"), bv("10")]);

        let h = LinearInnerCode::hamming(2).unwrap();
        assert_eq!(h.codewords(), &[bv("000"), bv("111")]);
        let cs = coset_partition(&h).unwrap();
        assert_eq!(cs.len(), 4);
        let mut all: Vec<BitVector> = cs.iter().flat_map(|c| c.members.clone()).collect();
        all.sort();
        assert_eq!(all, BitVector::all(3).unwrap());
        assert!(cs.iter().all(|c| c.members.len() == 2));
        assert_eq!(cs[1].leader, bv("001"));

        let h7 = LinearInnerCode::hamming(3).unwrap();
        assert_eq!(h7.size(), 16);
        assert_eq!(h7.min_distance(), 3);
        assert_eq!(coset_partition(&h7).unwrap().len(), 8);
    }

    #[test]
    fn linearity_check() {
        assert_eq!(
            LinearInnerCode::from_codewords(2, &[bv("00"), bv("01"), bv("10")]),
            Err(Error::NotLinear)
        );
        let c = LinearInnerCode::from_codewords(3, &[bv("000"), bv("011"), bv("101"), bv("110")]).unwrap();
        assert_eq!(c, LinearInnerCode::parity(3).unwrap());
    }

    #[test]
    fn coset_construction_small() {
        let inner = LinearInnerCode::parity(2).unwrap();
        let c = construct_coset(4, 2, &inner, 1_000_000).unwrap();
        assert_eq!(c.base_rows, 4);
        assert_eq!(c.code.len(), 4);
        assert_eq!(c.formula_total, BigUint::from(4u32));
        assert!(validate_code(c.code.rows(), 2).valid);
    }

    #[test]
    fn coset_construction_rejects_bad_inputs() {
        let inner = LinearInnerCode::parity(2).unwrap();
        assert_eq!(construct_coset(6, 2, &inner, 10).unwrap_err(), Error::NotPowerOfTwo(6));
        assert!(matches!(construct_coset(8, 2, &inner, 10), Err(Error::InvalidInner(_))));
        assert!(matches!(construct_coset(4, 3, &inner, 10), Err(Error::InvalidInner(_))));
        let inner = LinearInnerCode::parity(4).unwrap();
        assert!(matches!(construct_coset(16, 2, &inner, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn extension_first_step_matches_example_four() {
        let mut step1 = extend_steps(&example2_p(), 2, 1).unwrap();
        let mut expected = example4_p1();
        step1.sort();
        expected.sort();
        assert_eq!(step1, expected);
    }

    #[test]
    fn extension_full() {
        let code = IndexCode::new(CodeParams { index_len: 2, m: 4, d: 2 }, example2_p()).unwrap();
        let ext = construct_extend(&code).unwrap();
        assert_eq!(ext.len(), 96);
        assert_eq!(ext.params().index_len, 3);
        assert!(validate_code(ext.rows(), 2).valid);
    }

    #[test]
    fn extension_window_overlap() {
        let rows = vec![IndexTuple::new(vec![bv("0"), bv("1")]).unwrap()];
        assert_eq!(
            extend_steps(&rows, 3, 2),
            Err(Error::OverlapWindow { window: 2, index_len: 1 })
        );
        let ext = extend_steps(&rows, 1, 2).unwrap();
        assert_eq!(ext.len(), 4);
        assert!(validate_code(&ext, 1).valid);
    }

    #[test]
    fn exact_small_values() {
        let b = SearchBudget::default();
        assert_eq!(search_exact_f(2, 4, 2, b).unwrap().size, 6);
        assert_eq!(search_exact_f(2, 4, 1, b).unwrap().size, 24);
        assert_eq!(search_exact_f(1, 2, 1, b).unwrap().size, 2);
        let r = search_exact_f(2, 4, 3, b).unwrap();
        assert_eq!(r.size, 1);
        assert!(validate_code(search_exact_f(2, 4, 2, b).unwrap().code.rows(), 2).valid);
    }

    #[test]
    fn exact_agrees_with_unforced_search() {
        // the forced-vertex shortcut must not change the optimum
        let tuples = all_tuples(2, 4, 100).unwrap();
        for d in 1..=2 {
            let mut g = Graph::new(tuples.len());
            for i in 0..tuples.len() {
                for j in i + 1..tuples.len() {
                    if tuple_distance(&tuples[i], &tuples[j]) >= d {
                        g.add_edge(i, j);
                    }
                }
            }
            let free = clique::max_clique(&g, &[], u64::MAX).unwrap().len();
            assert_eq!(free, search_exact_f(2, 4, d, SearchBudget::default()).unwrap().size);
        }
    }

    #[test]
    fn greedy_is_valid() {
        let b = SearchBudget::default();
        let best = (0..20).map(|s| search_greedy(2, 4, 2, s, b).unwrap()).inspect(|c| {
            assert!(validate_code(c.rows(), 2).valid);
        }).map(|c| c.len()).max().unwrap();
        assert_eq!(best, 6);
    }

    #[test]
    fn messages_preserve_distance() {
        let code = IndexCode::new(CodeParams { index_len: 2, m: 4, d: 2 }, example2_p()).unwrap();
        let u = [bv("000"), bv("001"), bv("010"), bv("011")];
        let msgs = messages_from_code(&code, &u).unwrap();
        assert_eq!(msgs.len(), 6);
        assert!(msgs.iter().all(|z| z.is_distinct_data()));
        assert_eq!(code_dna_distance(&msgs).unwrap(), DnaDistance::Finite(2));
        assert_eq!(
            messages_from_code(&code, &[bv("000"), bv("000"), bv("010"), bv("011")]),
            Err(Error::DuplicateData(bv("000")))
        );
        assert!(matches!(
            messages_from_code(&code, &[bv("000"), bv("00"), bv("010"), bv("011")]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
