//! JSON formats for messages, codebooks and read pools, and the plain-text
//! matrix format for index codes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::channel::ReadPool;
use crate::error::{Error, Result};
use crate::indexcodes::IndexTuple;
use crate::message::{Message, Strand, SystemParams};

#[derive(Serialize, Deserialize)]
struct MessageDoc {
    #[serde(flatten)]
    params: SystemParams,
    strands: Vec<Strand>,
}

#[derive(Serialize, Deserialize)]
struct CodebookDoc {
    params: SystemParams,
    codewords: Vec<Vec<Strand>>,
}

#[derive(Serialize, Deserialize)]
struct ReadDoc {
    index: BitVector,
    data: BitVector,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct PoolDoc {
    reads: Vec<ReadDoc>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn message_to_json(z: &Message) -> String {
    let doc = MessageDoc { params: *z.params(), strands: z.strands().to_vec() };
    serde_json::to_string(&doc).expect("message serializes")
}

pub fn message_from_json(s: &str) -> Result<Message> {
    let doc: MessageDoc = serde_json::from_str(s).map_err(parse_err)?;
    let params = SystemParams::new(doc.params.m(), doc.params.strand_len(), doc.params.index_len())?;
    Message::new(params, doc.strands)
}

pub fn codebook_to_json(params: &SystemParams, code: &[Message]) -> String {
    let doc = CodebookDoc { params: *params, codewords: code.iter().map(|z| z.strands().to_vec()).collect() };
    serde_json::to_string(&doc).expect("codebook serializes")
}

pub fn codebook_from_json(s: &str) -> Result<(SystemParams, Vec<Message>)> {
    let doc: CodebookDoc = serde_json::from_str(s).map_err(parse_err)?;
    let params = SystemParams::new(doc.params.m(), doc.params.strand_len(), doc.params.index_len())?;
    let code = doc.codewords.into_iter().map(|c| Message::new(params, c)).collect::<Result<Vec<_>>>()?;
    Ok((params, code))
}

pub fn pool_to_json(pool: &ReadPool) -> String {
    let reads = pool.iter().map(|(r, count)| ReadDoc { index: r.index, data: r.data, count }).collect();
    serde_json::to_string(&PoolDoc { reads }).expect("pool serializes")
}

pub fn pool_from_json(s: &str) -> Result<ReadPool> {
    let doc: PoolDoc = serde_json::from_str(s).map_err(parse_err)?;
    let mut pool = ReadPool::new();
    for r in doc.reads {
        pool.add(Strand::new(r.index, r.data), r.count);
    }
    Ok(pool)
}

/// Header values found in `#` lines of a matrix file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatrixHeader {
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub d: Option<u32>,
}

/// One row per line, M whitespace-separated bit strings; `#` lines may carry
/// `l=.. M=.. d=..`.
pub fn matrix_to_text(rows: &[IndexTuple], header: &MatrixHeader) -> String {
    let mut out = String::new();
    let mut parts = Vec::new();
    if let Some(l) = header.l {
        parts.push(format!("l={l}"));
    }
    if let Some(m) = header.m {
        parts.push(format!("M={m}"));
    }
    if let Some(d) = header.d {
        parts.push(format!("d={d}"));
    }
    if !parts.is_empty() {
        let _ = writeln!(out, "# {}", parts.join(" "));
    }
    for row in rows {
        let cells: Vec<String> = row.entries().iter().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn matrix_from_text(text: &str) -> Result<(MatrixHeader, Vec<IndexTuple>)> {
    let mut header = MatrixHeader::default();
    let mut rows = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for tok in rest.split_whitespace() {
                let Some((k, v)) = tok.split_once('=') else { continue };
                let bad = || Error::Parse(format!("line {}: bad header value {tok:?}", no + 1));
                match k {
                    "l" => header.l = Some(v.parse().map_err(|_| bad())?),
                    "M" => header.m = Some(v.parse().map_err(|_| bad())?),
                    "d" => header.d = Some(v.parse().map_err(|_| bad())?),
                    _ => {}
                }
            }
            continue;
        }
        let entries = line
            .split_whitespace()
            .map(BitVector::parse)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        rows.push(IndexTuple::new(entries)?);
    }
    if let Some(first) = rows.first() {
        if let Some(m) = header.m {
            if first.m() != m {
                return Err(Error::WrongCount { expected: m, got: first.m() });
            }
        }
        if let Some(l) = header.l {
            if first.index_len() != l {
                return Err(Error::LengthMismatch { expected: l, got: first.index_len() });
            }
        }
    }
    Ok((header, rows))
}
