//! graph6 reading and writing (6-bit groups, offset 63, upper triangle in
//! column order).

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated size header")]
    TruncatedHeader { offset: usize },
    #[error("vertex count {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("byte {offset}: expected {expected} data bytes, found {found}")]
    WrongLength { offset: usize, expected: usize, found: usize },
    #[error("byte {offset}: padding bits are not zero")]
    NonZeroPadding { offset: usize },
}

const HEADER: &str = ">>graph6<<";

/// Parses one graph6 record. Surrounding whitespace and the optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let mut start = line.len() - line.trim_start().len();
    let mut body = line.trim();
    if let Some(rest) = body.strip_prefix(HEADER) {
        start += HEADER.len();
        body = rest;
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte { offset: start + i, byte: b });
        }
    }
    let (n, header_len) = decode_n(bytes, start)?;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        return Err(Graph6Error::WrongLength {
            offset: start + header_len,
            expected,
            found: data.len(),
        });
    }
    if expected > 0 {
        let pad = expected * 6 - bits;
        let last = data[expected - 1] - 63;
        if pad > 0 && last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding {
                offset: start + header_len + expected - 1,
            });
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

fn decode_n(bytes: &[u8], start: usize) -> Result<(usize, usize), Graph6Error> {
    let group = |from: usize, count: usize| -> Result<usize, Graph6Error> {
        if bytes.len() < from + count {
            return Err(Graph6Error::TruncatedHeader { offset: start + bytes.len() });
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, 1));
    }
    if bytes.len() > 1 && bytes[1] == 126 {
        return Ok((group(2, 6)?, 8));
    }
    Ok((group(1, 3)?, 4))
}

/// Encodes a graph as a graph6 record (without trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    #[test]
    fn k5_record() {
        let g = parse_graph6("D~{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 10);
        assert_eq!(emit_graph6(&families::complete(5)), "D~{");
    }

    #[test]
    fn single_edge() {
        let g = parse_graph6("A_\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn known_small_record() {
        // Edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn header_prefix_and_empty_graphs() {
        assert_eq!(parse_graph6(">>graph6<<D~{").unwrap().m(), 10);
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn corrupted_padding_is_rejected() {
        // K5 has 10 bits in 12; setting the last padding bit gives '|'.
        assert_eq!(
            parse_graph6("D~|"),
            Err(Graph6Error::NonZeroPadding { offset: 2 })
        );
    }

    #[test]
    fn malformed_records() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("D~"),
            Err(Graph6Error::WrongLength { offset: 1, expected: 2, found: 1 })
        );
        assert!(matches!(parse_graph6("D~ {"), Err(Graph6Error::BadByte { offset: 2, .. })));
        assert!(matches!(parse_graph6("~?"), Err(Graph6Error::TruncatedHeader { .. })));
    }

    #[test]
    fn long_header_round_trip() {
        let g = families::cycle(70);
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=62, seed in any::<u64>()) {
            let g = crate::gen::random_graph(n, 0.4, seed);
            let s = emit_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
