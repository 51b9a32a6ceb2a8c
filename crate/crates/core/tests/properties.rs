use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::subsequence;

use dnacc::bits::BitVector;
use dnacc::bounds::{permanent, BinaryMatrix};
use dnacc::channel::{enumerate_outputs, sample_output, ChannelParams, ReadPool, SampleMode, Tau};
use dnacc::indexcodes::{construct_extend, messages_from_code, search_greedy, validate_code, SearchBudget};
use dnacc::io::{message_from_json, message_to_json, pool_from_json, pool_to_json};
use dnacc::message::{Message, Strand, SystemParams};
use dnacc::metric::{bottleneck_matching, dna_distance, hall_violating_set, index_distance, neighbourhood, DnaDistance};

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    (0..1u64 << len).prop_map(move |v| BitVector::new(len, v).unwrap())
}

/// (params, message) with M <= 4, l <= 3, data length <= 2.
fn message() -> impl Strategy<Value = Message> {
    (1usize..=3, 1usize..=2)
        .prop_flat_map(|(l, dl)| (Just(l), Just(dl), 1usize..=4.min(1 << l)))
        .prop_flat_map(|(l, dl, m)| {
            let p = SystemParams::new(m, l + dl, l).unwrap();
            let words: Vec<u64> = (0..1u64 << l).collect();
            (Just(p), subsequence(words, m).prop_shuffle(), prop::collection::vec(bits(dl), m))
        })
        .prop_map(|(p, idx, data)| {
            let l = p.index_len();
            let strands = idx.into_iter().zip(data).map(|(i, u)| Strand::new(BitVector::new(l, i).unwrap(), u)).collect();
            Message::new(p, strands).unwrap()
        })
}

/// Two messages with the same parameters and the same data multiset.
fn related_pair() -> impl Strategy<Value = (Message, Message)> {
    message().prop_flat_map(|a| {
        let p = *a.params();
        let words: Vec<u64> = (0..1u64 << p.index_len()).collect();
        let data: Vec<BitVector> = a.strands().iter().map(|s| s.data).collect();
        (Just(a), subsequence(words, p.m()).prop_shuffle(), Just(data).prop_shuffle())
    })
    .prop_map(|(a, idx, data)| {
        let p = *a.params();
        let strands = idx
            .into_iter()
            .zip(data)
            .map(|(i, u)| Strand::new(BitVector::new(p.index_len(), i).unwrap(), u))
            .collect();
        (a, Message::new(p, strands).unwrap())
    })
}

fn brute_bottleneck(a: &[BitVector], b: &[BitVector]) -> u32 {
    fn rec(a: &[BitVector], b: &[BitVector], used: &mut Vec<bool>, i: usize, cur: u32, best: &mut u32) {
        if cur >= *best {
            return;
        }
        if i == a.len() {
            *best = cur;
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                rec(a, b, used, i + 1, cur.max(a[i].hamming(&b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = u32::MAX;
    rec(a, b, &mut vec![false; b.len()], 0, 0, &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bottleneck_is_optimal(len in 1usize..=5, n in 1usize..=5, seed in any::<u64>()) {
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); s >> 20 };
        let a: Vec<BitVector> = (0..n).map(|_| BitVector::new(len, next() & ((1 << len) - 1)).unwrap()).collect();
        let b: Vec<BitVector> = (0..n).map(|_| BitVector::new(len, next() & ((1 << len) - 1)).unwrap()).collect();
        let m = bottleneck_matching(&a, &b).unwrap();
        prop_assert_eq!(m.weight, brute_bottleneck(&a, &b));
        prop_assert_eq!(m.pairs.len(), n);
        prop_assert!(m.pairs.iter().all(|(x, y)| x.hamming(y) <= m.weight));
        // below the optimum Hall's condition must fail, with a witness
        if m.weight > 0 {
            let y = hall_violating_set(&a, &b, m.weight - 1).unwrap().expect("witness below the optimum");
            prop_assert!(neighbourhood(&y, &b, m.weight - 1).len() < y.len());
        }
        prop_assert!(hall_violating_set(&a, &b, m.weight).unwrap().is_none());
    }

    #[test]
    fn distance_is_symmetric_and_zero_only_on_equal((a, b) in related_pair()) {
        let d = dna_distance(&a, &b).unwrap();
        prop_assert!(!d.is_infinite());
        prop_assert_eq!(d, dna_distance(&b, &a).unwrap());
        prop_assert_eq!(d == DnaDistance::Finite(0), a == b);
        prop_assert_eq!(dna_distance(&a, &a).unwrap(), DnaDistance::Finite(0));
    }

    #[test]
    fn distance_is_infinite_iff_multisets_differ(a in message(), b in message()) {
        if a.params() == b.params() {
            let d = dna_distance(&a, &b).unwrap();
            prop_assert_eq!(d.is_infinite(), a.data_multiset() != b.data_multiset());
        }
    }

    #[test]
    fn triangle_inequality((a, b) in related_pair(), perm in any::<prop::sample::Index>(), idx in any::<prop::sample::Index>()) {
        // c: b with one strand's index moved to an unused word, when there is one
        let p = *b.params();
        let used: Vec<BitVector> = b.strands().iter().map(|s| s.index).collect();
        let free: Vec<BitVector> = BitVector::all(p.index_len()).unwrap().into_iter().filter(|w| !used.contains(w)).collect();
        let c = if free.is_empty() {
            b.clone()
        } else {
            let mut strands = b.strands().to_vec();
            let k = perm.index(strands.len());
            strands[k].index = free[idx.index(free.len())];
            Message::new(p, strands).unwrap()
        };
        let (ab, bc, ac) = (dna_distance(&a, &b).unwrap(), dna_distance(&b, &c).unwrap(), dna_distance(&a, &c).unwrap());
        prop_assert!(ac <= ab.saturating_add(bc));
    }

    #[test]
    fn message_construction_ignores_strand_order(z in message(), seed in any::<u64>()) {
        let mut strands = z.strands().to_vec();
        let n = strands.len();
        for i in (1..n).rev() {
            strands.swap(i, (seed as usize).wrapping_add(i * 7) % (i + 1));
        }
        prop_assert_eq!(Message::new(*z.params(), strands).unwrap(), z);
    }

    #[test]
    fn json_roundtrips(z in message()) {
        prop_assert_eq!(message_from_json(&message_to_json(&z)).unwrap(), z.clone());
        let pool = ReadPool::noiseless(&z, 3);
        prop_assert_eq!(pool_from_json(&pool_to_json(&pool)).unwrap(), pool);
    }

    #[test]
    fn permanent_matches_permutation_sum(n in 0usize..=6, mask in any::<u64>()) {
        let a = BinaryMatrix::from_fn(n, |i, j| mask >> ((i * 7 + j) % 64) & 1 == 1).unwrap();
        fn count(a: &BinaryMatrix, row: usize, used: u64) -> u64 {
            if row == a.n() { return 1; }
            (0..a.n()).filter(|&j| used >> j & 1 == 0 && a.get(row, j)).map(|j| count(a, row + 1, used | 1 << j)).sum()
        }
        prop_assert_eq!(permanent(&a, 24).unwrap(), BigUint::from(count(&a, 0, 0)));
    }
}

fn tau_strategy() -> impl Strategy<Value = Tau> {
    (0u64..=4, 1u64..=4).prop_filter_map("tau <= 1", |(p, q)| Tau::new(p, q).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_possible_outputs(z in message(), tau in tau_strategy(), k in 1usize..=3, e_i in 0usize..=1, seed in any::<u64>()) {
        let ch = ChannelParams::new(tau, e_i, 0, k).unwrap();
        let outs = enumerate_outputs(&z, &ch, 200_000);
        prop_assume!(outs.is_ok());
        let outs = outs.unwrap();
        for mode in [SampleMode::Uniform, SampleMode::WorstCase] {
            let pool = sample_output(&z, &ch, seed, mode);
            prop_assert_eq!(pool.total(), k * z.params().m());
            prop_assert!(outs.contains(&pool));
        }
        prop_assert!(outs.contains(&ReadPool::noiseless(&z, k)));
    }

    #[test]
    fn enumeration_respects_error_counts(z in message(), tau in tau_strategy(), k in 1usize..=3, e_i in 0usize..=2) {
        let ch = ChannelParams::new(tau, e_i, 0, k).unwrap();
        let outs = enumerate_outputs(&z, &ch, 200_000);
        prop_assume!(outs.is_ok());
        let t = ch.max_erroneous();
        for pool in outs.unwrap() {
            prop_assert_eq!(pool.total(), k * z.params().m());
            let mut erroneous: BTreeMap<BitVector, usize> = BTreeMap::new();
            for (r, c) in pool.iter() {
                if !z.strands().contains(r) {
                    *erroneous.entry(r.data).or_default() += c;
                    prop_assert!(z.strands().iter().any(|s| s.data == r.data && s.index.hamming(&r.index) as usize <= e_i));
                }
            }
            for (u, n) in erroneous {
                prop_assert!(n <= t * z.data_multiset().multiplicity(&u));
            }
        }
    }

    #[test]
    fn greedy_codes_validate_and_extend(l in 2usize..=3, d in 1u32..=2, seed in any::<u64>()) {
        let m = 4;
        let code = search_greedy(l, m, d, seed, SearchBudget::default()).unwrap();
        prop_assert!(validate_code(code.rows(), d).valid);
        let ext = construct_extend(&code).unwrap();
        prop_assert_eq!(ext.len(), code.len() << m);
        prop_assert!(validate_code(ext.rows(), d).valid);
    }

    #[test]
    fn index_distance_equals_dna_distance_on_distinct_data(l in 2usize..=3, seed in any::<u64>()) {
        let code = search_greedy(l, 4, 1, seed, SearchBudget { max_vertices: 6000, max_nodes: 1000, max_rows: 2000 }).unwrap();
        let data: Vec<BitVector> = (0..4).map(|v| BitVector::new(2, v).unwrap()).collect();
        let msgs = messages_from_code(&code, &data).unwrap();
        for i in 0..code.len().min(12) {
            for j in i + 1..code.len().min(12) {
                let di = index_distance(&code.rows()[i], &code.rows()[j]).unwrap();
                prop_assert_eq!(dna_distance(&msgs[i], &msgs[j]).unwrap(), DnaDistance::Finite(di));
            }
        }
    }
}
