//! DNA-correcting codes for unordered, noisy DNA storage.
//!
//! A stored message is a set of M strands, each an index followed by a
//! data-field. This crate provides the DNA-distance between messages, a
//! model of the sequencing channel with brute-force oracles, index-correcting
//! code constructions and searches, and the associated counting bounds.

pub mod bits;
pub mod bounds;
pub mod channel;
pub mod clique;
pub mod combin;
pub mod error;
pub mod fixtures;
pub mod indexcodes;
pub mod io;
pub mod message;
pub mod metric;

pub use bits::BitVector;
pub use channel::{ChannelParams, ReadPool, Regime, Tau};
pub use error::{Error, Result};
pub use indexcodes::{IndexCode, IndexTuple};
pub use message::{Message, Strand, SystemParams};
pub use metric::{dna_distance, DnaDistance};
