//! Exact big-integer combinatorics.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// n (n-1) ... (n-k+1)
pub fn falling(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut cur = n.clone();
    for _ in 0..k {
        if cur.is_zero() {
            return BigUint::zero();
        }
        acc *= &cur;
        cur -= 1u32;
    }
    acc
}

pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    falling(n, k) / factorial(k)
}

pub fn binomial_u64(n: u64, k: u64) -> BigUint {
    binomial(&BigUint::from(n), k)
}

pub fn pow2(exp: u64) -> BigUint {
    BigUint::one() << exp
}

/// log2 of a positive big integer, accurate to f64 precision.
pub fn log2_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.log2() + shift as f64
}

/// log2(num / den) for positive big integers, accurate also when the ratio is
/// close to one.
pub fn log2_ratio(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!num.is_zero() && !den.is_zero());
    if num == den {
        return 0.0;
    }
    // ln(num/den) = ln_1p((num - den)/den), with the quotient carried in fixed point.
    const FRAC: u64 = 120;
    let (neg, diff) = if num > den { (false, num - den) } else { (true, den - num) };
    let scaled = (diff << FRAC) / den;
    let x = if scaled.is_zero() {
        0.0
    } else {
        let b = scaled.bits();
        let shift = b.saturating_sub(64);
        let top = (&scaled >> shift).to_u64().unwrap() as f64;
        top * 2f64.powi(shift as i32 - FRAC as i32)
    };
    let x = if neg { -x } else { x };
    if x.abs() < 0.5 {
        x.ln_1p() / std::f64::consts::LN_2
    } else {
        log2_big(num) - log2_big(den)
    }
}

/// Integer floor of the `root`-th root of `num / den`.
pub fn floor_root_of_ratio(num: &BigUint, den: &BigUint, root: u32) -> BigUint {
    assert!(root >= 1 && !den.is_zero());
    let q = num / den;
    if root == 1 {
        return q;
    }
    // x^root * den <= num, monotone in x; q < 2^bits bounds the root by 2^ceil(bits/root).
    let mut lo = BigUint::zero();
    let mut hi = pow2(q.bits().div_ceil(root as u64));
    while lo < hi {
        let mid: BigUint = (&lo + &hi + 1u32) >> 1u32;
        if mid.pow(root) * den <= *num {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    lo
}
