//! graph6 text format for orders up to 32.
//!
//! A record is one order byte `63 + n` followed by the upper triangle
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed big-endian into sextets, each offset by 63.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Graph6Error;
use crate::graph::{Graph, MAX_ORDER};

/// Optional header emitted by nauty tools, possibly directly followed by the first record.
pub const HEADER: &str = ">>graph6<<";

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Strict decode of a single record; the slice must not contain the line terminator.
pub fn decode(record: &[u8]) -> Result<Graph, Graph6Error> {
    let (&head, body) = record.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&head) {
        return Err(Graph6Error::InvalidCharacter { offset: 0, byte: head });
    }
    if head == 126 {
        // multi-byte order header: at least 63 vertices
        return Err(Graph6Error::OrderTooLarge(63));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(Graph6Error::Empty);
    }
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    if let Some(offset) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidCharacter {
            offset: offset + 1,
            byte: body[offset],
        });
    }
    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected: expected + 1,
            found: record.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            expected: expected + 1,
            found: record.len(),
        });
    }

    let mut g = Graph::empty(n).unwrap();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let sextet = body[k / 6] - 63;
            if sextet >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let pad_bits = 6 - k % 6;
        if (body[k / 6] - 63) & ((1 << pad_bits) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

pub fn decode_str(record: &str) -> Result<Graph, Graph6Error> {
    decode(record.as_bytes())
}

/// Encodes `g`; padding bits are zero.
pub fn encode(g: &Graph) -> String {
    let mut out = Vec::with_capacity(1 + body_len(g.order()));
    encode_into(g, &mut out);
    // every byte is in 63..=126
    String::from_utf8(out).unwrap()
}

/// Appends the record for `g` (without a newline) to `out`.
pub fn encode_into(g: &Graph, out: &mut Vec<u8>) {
    let n = g.order();
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
}

/// What a line of a graph6 stream holds in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    Graph(Graph),
    /// Blank line, `>` comment, or a bare header.
    Skip,
}

/// Lenient line decoding: tolerates surrounding whitespace, blank lines, `>` comment
/// lines and a leading `>>graph6<<` header; the record itself is parsed strictly.
pub fn decode_line(line: &str) -> Result<Line, Graph6Error> {
    let mut rec = line.trim();
    if let Some(rest) = rec.strip_prefix(HEADER) {
        rec = rest;
    } else if rec.starts_with('>') {
        return Ok(Line::Skip);
    }
    if rec.is_empty() {
        return Ok(Line::Skip);
    }
    decode(rec.as_bytes()).map(Line::Graph)
}

/// Decodes every graph of a multi-line text in lenient mode, with 1-based line numbers on error.
pub fn decode_all(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match decode_line(line) {
            Ok(Line::Graph(g)) => out.push(g),
            Ok(Line::Skip) => {}
            Err(e) => return Err((i + 1, e)),
        }
    }
    Ok(out)
}
