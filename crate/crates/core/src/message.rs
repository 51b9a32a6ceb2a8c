//! Strands, messages and the message space.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::combin::{binomial, factorial, pow2};
use crate::error::{Error, Result};

/// ceil(log2(m)) for m >= 1.
pub fn ceil_log2(m: usize) -> usize {
    assert!(m >= 1);
    (usize::BITS - (m - 1).leading_zeros()) as usize
}

/// Exact log2 of a power of two.
pub fn exact_log2(m: usize) -> Result<usize> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    Ok(m.trailing_zeros() as usize)
}

/// Shape of the stored message: `m` strands of `strand_len` bits, the first
/// `index_len` of which are the index-field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemParams {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "L")]
    strand_len: usize,
    #[serde(rename = "l")]
    index_len: usize,
}

impl SystemParams {
    pub fn new(m: usize, strand_len: usize, index_len: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("M must be at least 1".into()));
        }
        if index_len < ceil_log2(m) {
            return Err(Error::InvalidParams(format!(
                "l = {index_len} is below ceil(log2 M) = {}",
                ceil_log2(m)
            )));
        }
        if index_len == 0 || index_len >= strand_len {
            return Err(Error::InvalidParams(format!(
                "need 1 <= l < L, got l = {index_len}, L = {strand_len}"
            )));
        }
        if index_len > 63 || strand_len - index_len > 64 {
            return Err(Error::InvalidParams("fields longer than 64 bits are not supported".into()));
        }
        Ok(Self { m, strand_len, index_len })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn strand_len(&self) -> usize {
        self.strand_len
    }

    pub fn index_len(&self) -> usize {
        self.index_len
    }

    pub fn data_len(&self) -> usize {
        self.strand_len - self.index_len
    }

    /// beta = log2(M) / L.
    pub fn beta(&self) -> f64 {
        (self.m as f64).log2() / self.strand_len as f64
    }

    fn validated(self) -> Result<Self> {
        Self::new(self.m, self.strand_len, self.index_len)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strand {
    pub index: BitVector,
    pub data: BitVector,
}

impl Strand {
    pub fn new(index: BitVector, data: BitVector) -> Self {
        Self { index, data }
    }

    pub fn parse(index: &str, data: &str) -> Result<Self> {
        Ok(Self { index: BitVector::parse(index)?, data: BitVector::parse(data)? })
    }

    fn check(&self, params: &SystemParams) -> Result<()> {
        if self.index.len() != params.index_len() {
            return Err(Error::LengthMismatch { expected: params.index_len(), got: self.index.len() });
        }
        if self.data.len() != params.data_len() {
            return Err(Error::LengthMismatch { expected: params.data_len(), got: self.data.len() });
        }
        Ok(())
    }
}

/// An element of the message space: M strands with pairwise distinct indices,
/// held in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message {
    params: SystemParams,
    strands: Vec<Strand>,
}

impl Message {
    pub fn new(params: SystemParams, mut strands: Vec<Strand>) -> Result<Self> {
        let params = params.validated()?;
        if strands.len() != params.m() {
            return Err(Error::WrongCount { expected: params.m(), got: strands.len() });
        }
        for s in &strands {
            s.check(&params)?;
        }
        strands.sort();
        for pair in strands.windows(2) {
            if pair[0].index == pair[1].index {
                return Err(Error::DuplicateIndex(pair[0].index));
            }
        }
        Ok(Self { params, strands })
    }

    /// Parses `(index, data)` string pairs.
    pub fn from_pairs(params: SystemParams, pairs: &[(&str, &str)]) -> Result<Self> {
        let strands = pairs
            .iter()
            .map(|(i, d)| Strand::parse(i, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, strands)
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn data_multiset(&self) -> DataMultiset {
        let mut entries = BTreeMap::new();
        for s in &self.strands {
            *entries.entry(s.data).or_insert(0) += 1;
        }
        DataMultiset { entries }
    }

    /// The data-field set S(Z).
    pub fn data_set(&self) -> BTreeSet<BitVector> {
        self.strands.iter().map(|s| s.data).collect()
    }

    /// I(u, Z): indices carrying data-field `u`.
    pub fn indices_of(&self, u: &BitVector) -> BTreeSet<BitVector> {
        self.strands.iter().filter(|s| s.data == *u).map(|s| s.index).collect()
    }

    pub fn is_distinct_data(&self) -> bool {
        self.data_set().len() == self.params.m()
    }

    /// Data-field to ascending index list, one entry per element of S(Z).
    pub fn groups(&self) -> BTreeMap<BitVector, Vec<BitVector>> {
        let mut g: BTreeMap<BitVector, Vec<BitVector>> = BTreeMap::new();
        for s in &self.strands {
            g.entry(s.data).or_default().push(s.index);
        }
        g
    }
}

/// The data-field multiset MS(Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataMultiset {
    entries: BTreeMap<BitVector, usize>,
}

impl DataMultiset {
    pub fn multiplicity(&self, u: &BitVector) -> usize {
        self.entries.get(u).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &BitVector> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVector, usize)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&c| c == 1)
    }
}

/// |X_{M,L,l}| = C(2^l, M) 2^{(L-l) M}.
pub fn space_size(params: &SystemParams) -> BigUint {
    let choose = binomial(&pow2(params.index_len() as u64), params.m() as u64);
    choose * pow2((params.data_len() * params.m()) as u64)
}

/// |X̄_{M,L,l}| = C(2^l, M) C(2^{L-l}, M) M!, zero when 2^{L-l} < M.
pub fn distinct_space_size(params: &SystemParams) -> BigUint {
    let m = params.m() as u64;
    let data_words = pow2(params.data_len() as u64);
    let data_choose = binomial(&data_words, m);
    if data_choose.is_zero() {
        return BigUint::zero();
    }
    binomial(&pow2(params.index_len() as u64), m) * data_choose * factorial(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bv;
    use crate::fixtures::{example1_z1, example1_z2};

    #[test]
    fn params_validation() {
        assert!(SystemParams::new(4, 5, 2).is_ok());
        assert!(SystemParams::new(5, 6, 2).is_err());
        assert!(SystemParams::new(4, 2, 2).is_err());
        assert!(SystemParams::new(0, 2, 1).is_err());
        assert!(SystemParams::new(1, 2, 1).is_ok());
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
    }

    #[test]
    fn make_message_rules() {
        let z1 = example1_z1();
        assert_eq!(z1.strands().len(), 4);
        let p = SystemParams::new(4, 5, 2).unwrap();
        let dup = Message::from_pairs(p, &[("00", "111"), ("00", "000"), ("10", "111"), ("11", "001")]);
        assert_eq!(dup, Err(Error::DuplicateIndex(bv("00"))));
        let short = Message::from_pairs(p, &[("00", "111"), ("01", "000"), ("10", "111")]);
        assert_eq!(short, Err(Error::WrongCount { expected: 4, got: 3 }));
        let bad = Message::from_pairs(p, &[("00", "11"), ("01", "000"), ("10", "111"), ("11", "001")]);
        assert_eq!(bad, Err(Error::LengthMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn order_insensitive() {
        let p = SystemParams::new(4, 5, 2).unwrap();
        let a = Message::from_pairs(p, &[("11", "001"), ("10", "111"), ("01", "000"), ("00", "111")]).unwrap();
        assert_eq!(a, example1_z1());
    }

    #[test]
    fn multisets_and_indices() {
        let z1 = example1_z1();
        let ms = z1.data_multiset();
        assert_eq!(ms.multiplicity(&bv("111")), 2);
        assert_eq!(ms.multiplicity(&bv("000")), 1);
        assert_eq!(ms.multiplicity(&bv("001")), 1);
        assert_eq!(ms.total(), 4);
        assert_eq!(ms, example1_z2().data_multiset());
        assert_eq!(z1.indices_of(&bv("111")), [bv("00"), bv("10")].into_iter().collect());
        assert_eq!(z1.indices_of(&bv("000")), [bv("01")].into_iter().collect());
        assert!(z1.indices_of(&bv("010")).is_empty());
        assert!(!z1.is_distinct_data());
    }

    #[test]
    fn distinct_data_cases() {
        let p = SystemParams::new(1, 3, 1).unwrap();
        assert!(Message::from_pairs(p, &[("1", "01")]).unwrap().is_distinct_data());
        let p = SystemParams::new(4, 6, 4).unwrap();
        let z = Message::from_pairs(p, &[("0000", "00"), ("1100", "01"), ("1010", "10"), ("1001", "11")]).unwrap();
        assert!(z.is_distinct_data());
    }

    #[test]
    fn space_sizes() {
        let p = SystemParams::new(4, 5, 2).unwrap();
        assert_eq!(space_size(&p), BigUint::from(4096u32));
        assert_eq!(distinct_space_size(&p), BigUint::from(1680u32));
        let p = SystemParams::new(1, 2, 1).unwrap();
        assert_eq!(space_size(&p), BigUint::from(4u32));
        let p = SystemParams::new(4, 3, 2).unwrap();
        assert_eq!(distinct_space_size(&p), BigUint::zero());
    }
}
