//! Permanent-based ball sizes, upper bounds on F(log2 M, M, d), construction
//! sizes and the redundancy of the distinct-data space.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::channel::{ChannelParams, Regime};
use crate::combin::{binomial_u64, factorial, floor_root_of_ratio, log2_big, pow2};
use crate::error::{Error, Result};
use crate::indexcodes::{search_exact_f, search_greedy, tuple_space_size, SearchBudget};
use crate::message::exact_log2;

/// Largest matrix dimension [`permanent`] accepts by default.
pub const DEFAULT_PERMANENT_CAP: usize = 24;

/// Largest M for which the sphere-packing floor is computed exactly.
pub const MAX_SPHERE_M: usize = 256;

/// Square 0/1 matrix, one bitmask per row (bit j = column j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n > 64 {
            return Err(Error::OutOfRange(format!("matrix dimension {n} exceeds 64")));
        }
        let mut masks = Vec::with_capacity(n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: row.len() });
            }
            let mut mask = 0u64;
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => mask |= 1 << j,
                    _ => return Err(Error::InvalidParams(format!("matrix entry {v} is not 0 or 1"))),
                }
            }
            masks.push(mask);
        }
        Ok(Self { n, rows: masks })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n > 64 {
            return Err(Error::OutOfRange(format!("matrix dimension {n} exceeds 64")));
        }
        let rows = (0..n)
            .map(|i| (0..n).filter(|&j| f(i, j)).fold(0u64, |m, j| m | 1 << j))
            .collect();
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        self.rows[i].count_ones()
    }
}

/// Exact permanent by Ryser's formula, visiting column subsets in Gray-code order.
pub fn permanent(a: &BinaryMatrix, cap: usize) -> Result<BigUint> {
    let n = a.n;
    if n > cap.min(33) {
        return Err(Error::BudgetExceeded { required: n as u128, cap: cap as u128 });
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let cols: Vec<Vec<usize>> =
        (0..n).map(|j| (0..n).filter(|&i| a.get(i, j)).collect()).collect();
    // Partial sums may wrap, but the true permanent is at most n! < 2^127 for
    // n <= 33, so the total modulo 2^128 is exact.
    let mut sums = vec![0i128; n];
    let mut total: i128 = 0;
    let mut chosen = 0u64;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let adding = chosen >> j & 1 == 0;
        chosen ^= 1 << j;
        for &i in &cols[j] {
            if adding {
                sums[i] += 1;
            } else {
                sums[i] -= 1;
            }
        }
        let prod = sums.iter().fold(1i128, |p, &s| p.wrapping_mul(s));
        if chosen.count_ones() % 2 == 1 {
            total = total.wrapping_sub(prod);
        } else {
            total = total.wrapping_add(prod);
        }
    }
    if n % 2 == 1 {
        total = total.wrapping_neg();
    }
    debug_assert!(total >= 0);
    Ok(BigUint::from(total as u128))
}

/// A_{r,M}: rows and columns are {0,1}^{log2 M} in lexicographic order,
/// entry 1 iff the Hamming distance is at most r.
pub fn build_a(r: u32, m: usize) -> Result<BinaryMatrix> {
    exact_log2(m)?;
    BinaryMatrix::from_fn(m, |i, j| ((i ^ j) as u64).count_ones() <= r)
}

/// B_{r,M}: size of a radius-r ball in I(log2 M, M).
pub fn ball_size_b(r: u32, m: usize, cap: usize) -> Result<BigUint> {
    permanent(&build_a(r, m)?, cap)
}

fn big_str<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundValue {
    Exact {
        #[serde(serialize_with = "big_str")]
        value: BigUint,
    },
    Rational {
        #[serde(serialize_with = "big_str")]
        num: BigUint,
        #[serde(serialize_with = "big_str")]
        den: BigUint,
        #[serde(serialize_with = "big_str")]
        floor: BigUint,
        approx: f64,
    },
    Real {
        log2: f64,
        approx: f64,
        #[serde(serialize_with = "big_str")]
        floor: BigUint,
    },
    Bracket {
        #[serde(serialize_with = "big_str")]
        lower: BigUint,
        #[serde(serialize_with = "big_str")]
        upper: BigUint,
    },
}

impl BoundValue {
    pub fn exact(value: BigUint) -> Self {
        Self::Exact { value }
    }

    pub fn rational(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        let floor = &num / &den;
        let approx = 2f64.powf(log2_big(&num) - log2_big(&den));
        Self::Rational { num, den, floor, approx }
    }

    /// Integer floor of the value; the upper end for a bracket.
    pub fn floor(&self) -> BigUint {
        match self {
            Self::Exact { value } => value.clone(),
            Self::Rational { floor, .. } | Self::Real { floor, .. } => floor.clone(),
            Self::Bracket { upper, .. } => upper.clone(),
        }
    }

    /// The exact integer value, when it is known.
    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Self::Exact { value } => Some(value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub value: BoundValue,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, BoundValue>,
}

impl BoundReport {
    fn new(name: &str, inputs: &[(&str, Value)], value: BoundValue) -> Self {
        Self {
            name: name.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value,
            extra: BTreeMap::new(),
        }
    }
}

/// r(d, M) = sum_{i <= floor((d-1)/2)} C(log2 M, i).
pub fn packing_radius_volume(m: usize, d: u32) -> Result<u64> {
    let l = exact_log2(m)? as u64;
    let radius = (d.max(1) as u64 - 1) / 2;
    Ok((0..=radius.min(l)).map(|i| binomial_u64(l, i).to_u64().unwrap()).sum())
}

/// M! / (r!)^{M/r} with r = r(d, M).
pub fn sphere_packing_bound(m: usize, d: u32) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::OutOfRange("d must be at least 1".into()));
    }
    if m > MAX_SPHERE_M {
        return Err(Error::OutOfRange(format!("M = {m} exceeds {MAX_SPHERE_M}")));
    }
    let r = packing_radius_volume(m, d)?;
    let m_fact = factorial(m as u64);
    let r_fact = factorial(r);
    let log2 = log2_big(&m_fact) - (m as f64 / r as f64) * log2_big(&r_fact);
    // floor(M! / r!^{M/r}) = largest x with x^r * r!^M <= M!^r
    let floor = floor_root_of_ratio(&m_fact.pow(r as u32), &r_fact.pow(m as u32), r as u32);
    let value = BoundValue::Real { log2, approx: 2f64.powf(log2), floor };
    let mut rep = BoundReport::new("sphere_packing", &[("M", m.into()), ("d", d.into())], value);
    rep.inputs.insert("r".into(), r.into());
    Ok(rep)
}

/// M! / ((2^{d-1})!)^{2^{log2 M - d + 1}}.
pub fn singleton_bound(m: usize, d: u32) -> Result<BoundReport> {
    let l = exact_log2(m)?;
    if d == 0 || d as usize > l + 1 {
        return Err(Error::OutOfRange(format!("singleton bound needs 1 <= d <= {}", l + 1)));
    }
    let block = factorial(1u64 << (d - 1));
    let den = block.pow(1u32 << (l + 1 - d as usize));
    let value = BoundValue::rational(factorial(m as u64), den);
    Ok(BoundReport::new("singleton", &[("M", m.into()), ("d", d.into())], value))
}

/// Size formulas for the coset construction at d = 2 and d = 3.
///
/// For d = 3 the value is the base term (A!)^{2^m}; the closed-form count
/// (A!)^{2^m} (1 + (2^m - 1) |C'| / A^2) goes into `extra`.
pub fn construction_size(m: usize, d: u32) -> Result<BoundReport> {
    let l = exact_log2(m)?;
    let inputs = [("M", Value::from(m)), ("d", Value::from(d))];
    match d {
        2 => {
            if m < 4 {
                return Err(Error::OutOfRange("d = 2 needs M >= 4".into()));
            }
            let half = factorial(m as u64 / 2);
            let lesser = factorial((m as u64 - 2) / 2);
            let value = &half * &half + BigUint::from(m / 2 - l) * &lesser * &lesser;
            Ok(BoundReport::new("construction", &inputs, BoundValue::exact(value)))
        }
        3 => {
            let q = l + 1;
            if !q.is_power_of_two() || q < 4 {
                return Err(Error::OutOfRange(format!("d = 3 needs log2 M = 2^m - 1 with m >= 2, got {l}")));
            }
            let mm = q.trailing_zeros() as usize;
            let a = 1u64 << (l - mm);
            let base = factorial(a).pow(q as u32);
            let kept = a - (q as u64 - 4) / 2;
            let a2 = BigUint::from(a * a);
            let num = &base * (&a2 + BigUint::from((q as u64 - 1) * kept));
            let mut rep = BoundReport::new("construction", &inputs, BoundValue::exact(base));
            rep.extra.insert("closed_form".into(), BoundValue::rational(num, a2));
            Ok(rep)
        }
        _ => Err(Error::UnsupportedD(d as usize)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Redundancy {
    pub exact: f64,
    /// -log2(1 - M^2 / 2^{L-l+1}), absent when the argument is not positive.
    pub upper: Option<f64>,
    pub beta_ok: bool,
}

/// Redundancy of the distinct-data space: log2 |X| - log2 |X̄|.
pub fn redundancy_distinct(m: usize, strand_len: usize, index_len: usize) -> Result<Redundancy> {
    if m == 0 || index_len >= strand_len {
        return Err(Error::InvalidParams(format!("need M >= 1 and l < L, got M={m}, L={strand_len}, l={index_len}")));
    }
    let lp = strand_len - index_len;
    if lp < 128 && (m as u128) > (1u128 << lp) {
        return Err(Error::EmptySpace);
    }
    let scale = 2f64.powi(-(lp.min(2000) as i32));
    let exact = -(0..m).map(|i| (-(i as f64) * scale).ln_1p()).sum::<f64>() / std::f64::consts::LN_2;
    let x = (m as f64) * (m as f64) * scale / 2.0;
    let upper = (x < 1.0).then(|| -(-x).ln_1p() / std::f64::consts::LN_2);
    let beta_ok = pow2(lp as u64) > BigUint::from(m) * BigUint::from(m);
    Ok(Redundancy { exact, upper, beta_ok })
}

/// |A_U| for a distinct-data multiset U at e_d = 0, by regime.
pub fn a_u_size(l: usize, m: usize, ch: &ChannelParams, budget: SearchBudget) -> Result<BoundReport> {
    if ch.e_d != 0 {
        return Err(Error::UnsupportedEd(ch.e_d));
    }
    let inputs = [
        ("l", Value::from(l)),
        ("M", Value::from(m)),
        ("tau", Value::from(ch.tau.to_string())),
        ("K", Value::from(ch.k)),
        ("e_i", Value::from(ch.e_i)),
    ];
    let d = match ch.regime() {
        Regime::Tau1 => 2 * ch.e_i as u32 + 1,
        Regime::High => ch.e_i as u32 + 1,
        Regime::Low => {
            let value = binomial_u64(1u64 << l, m as u64) * factorial(m as u64);
            return Ok(BoundReport::new("a_u", &inputs, BoundValue::exact(value)));
        }
    };
    let value = f_value(l, m, d, budget)?;
    let mut rep = BoundReport::new("a_u", &inputs, value);
    rep.inputs.insert("d".into(), d.into());
    Ok(rep)
}

/// F(l, M, d) exactly when the search completes, otherwise a bracket.
pub fn f_value(l: usize, m: usize, d: u32, budget: SearchBudget) -> Result<BoundValue> {
    match search_exact_f(l, m, d, budget) {
        Ok(found) => Ok(BoundValue::exact(BigUint::from(found.size))),
        Err(Error::BudgetExceeded { .. }) => {
            let lower = search_greedy(l, m, d, 0, budget).map(|c| c.len()).unwrap_or(1);
            let mut upper = tuple_space_size(l, m);
            if exact_log2(m).ok() == Some(l) {
                if let Ok(s) = sphere_packing_bound(m, d) {
                    upper = upper.min(s.value.floor());
                }
                if let Ok(s) = singleton_bound(m, d) {
                    upper = upper.min(s.value.floor());
                }
            }
            Ok(BoundValue::Bracket { lower: BigUint::from(lower), upper })
        }
        Err(e) => Err(e),
    }
}
