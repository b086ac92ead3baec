//! graph6 text encoding, single-byte size form (n <= 62).
//!
//! Layout: one size byte chr(n+63), then the upper triangle of the
//! adjacency matrix read column by column (x(0,1), x(0,2), x(1,2),
//! x(0,3), ...), packed into big-endian 6-bit groups, each emitted as
//! chr(value+63). Padding bits beyond the triangle must be zero.

use crate::error::Graph6Error;
use crate::graph::{Graph, MAX_VERTICES};
use crate::Result;

const HEADER: &[u8] = b">>graph6<<";
const OFFSET: u8 = 63;

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encode in canonical form: no header, no trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= MAX_VERTICES);
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + OFFSET);

    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + OFFSET);
    }
    String::from_utf8(out).unwrap()
}

/// Decode one graph6 word. An optional ">>graph6<<" header is accepted
/// and stripped; everything after it must be exactly the word.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let bytes = bytes.strip_prefix(HEADER).unwrap_or(bytes);
    let (&first, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;

    if first == 126 {
        return Err(Graph6Error::OrderTooLarge.into());
    }
    if !(OFFSET..126).contains(&first) {
        return Err(Graph6Error::CharOutOfRange {
            pos: 0,
            byte: first,
        }
        .into());
    }
    let n = (first - OFFSET) as usize;

    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::BadLength {
            got: data.len(),
            expected,
        }
        .into());
    }

    let mut g = Graph::empty(n)?;
    let mut it = data.iter().enumerate();
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            if nbits == 0 {
                let (i, &b) = it.next().unwrap();
                if !(OFFSET..=126).contains(&b) {
                    return Err(Graph6Error::CharOutOfRange {
                        pos: i + 1,
                        byte: b,
                    }
                    .into());
                }
                acc = b - OFFSET;
                nbits = 6;
            }
            if acc >> (nbits - 1) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            nbits -= 1;
        }
    }
    // leftover padding bits in the current group must be zero
    if nbits > 0 && acc & ((1 << nbits) - 1) != 0 {
        return Err(Graph6Error::TrailingGarbage.into());
    }
    Ok(g)
}
