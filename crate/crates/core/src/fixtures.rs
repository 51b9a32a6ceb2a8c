//! Reference instances used across tests, the CLI and the README.

use crate::bits::{bv, BitVector};
use crate::indexcodes::IndexTuple;
use crate::message::{Message, SystemParams};

fn msg(params: SystemParams, pairs: &[(&str, &str)]) -> Message {
    Message::from_pairs(params, pairs).expect("fixture is a valid message")
}

/// Z1 in X_{4,5,2}: data 111 twice.
pub fn example1_z1() -> Message {
    let p = SystemParams::new(4, 5, 2).unwrap();
    msg(p, &[("00", "111"), ("01", "000"), ("10", "111"), ("11", "001")])
}

/// Z2 in X_{4,5,2}, same data multiset as [`example1_z1`], DNA-distance 1.
pub fn example1_z2() -> Message {
    let p = SystemParams::new(4, 5, 2).unwrap();
    msg(p, &[("00", "111"), ("01", "111"), ("10", "001"), ("11", "000")])
}

/// Data-fields u1..u4 used by the non-graphic pair (any four distinct words work).
pub fn nongraphic_data() -> [BitVector; 4] {
    [bv("00"), bv("01"), bv("10"), bv("11")]
}

/// The distinct-data pair in X_{4,6,4} at DNA-distance 2 whose radius-1 balls are disjoint.
pub fn nongraphic_pair() -> (Message, Message) {
    let p = SystemParams::new(4, 6, 4).unwrap();
    let [u1, u2, u3, u4] = nongraphic_data().map(|u| u.to_string());
    let z1 = msg(p, &[("0000", &u1), ("1100", &u2), ("1010", &u3), ("1001", &u4)]);
    let z2 = msg(p, &[("0000", &u2), ("1100", &u1), ("1010", &u4), ("1001", &u3)]);
    (z1, z2)
}

fn rows(text: &[[&str; 4]]) -> Vec<IndexTuple> {
    text.iter()
        .map(|r| IndexTuple::new(r.iter().map(|s| bv(s)).collect()).unwrap())
        .collect()
}

/// The six-row (2,4,2) index-correcting code.
pub fn example2_p() -> Vec<IndexTuple> {
    rows(&[
        ["00", "01", "11", "10"],
        ["00", "11", "10", "01"],
        ["00", "10", "01", "11"],
        ["11", "01", "00", "10"],
        ["11", "00", "10", "01"],
        ["11", "10", "01", "00"],
    ])
}

/// [`example2_p`] after padding and the first complement step of the extension.
pub fn example4_p1() -> Vec<IndexTuple> {
    rows(&[
        ["000", "010", "110", "100"],
        ["000", "110", "100", "010"],
        ["000", "100", "010", "110"],
        ["110", "010", "000", "100"],
        ["110", "000", "100", "010"],
        ["110", "100", "010", "000"],
        ["101", "010", "110", "100"],
        ["101", "110", "100", "010"],
        ["101", "100", "010", "110"],
        ["011", "010", "000", "100"],
        ["011", "000", "100", "010"],
        ["011", "100", "010", "000"],
    ])
}
