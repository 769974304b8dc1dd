//! graph6 encoding (bit-exact with the format used by nauty/geng).
//!
//! Header: `n + 63` for `n <= 62`, otherwise `~` followed by three 6-bit
//! big-endian groups of `n` (each `+ 63`). Body: the upper triangle in
//! column order `(0,1),(0,2),(1,2),(0,3),..`, packed into 6-bit groups,
//! zero padded, each group `+ 63`.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("non-printable byte {byte:#04x} at offset {offset}")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("graph6 order {0} exceeds the supported maximum of 64")]
    OrderTooLarge(u64),
    #[error("graph6 body truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage after graph6 body ({0} extra bytes)")]
    TrailingGarbage(usize),
    #[error("non-zero padding bits in final graph6 byte")]
    NonZeroPadding,
}

fn check_printable(bytes: &[u8], start: usize) -> Result<(), Graph6Error> {
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::NonPrintable {
                offset: start + i,
                byte: b,
            });
        }
    }
    Ok(())
}

/// Decodes one graph6 string. A single trailing newline is tolerated.
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    check_printable(&bytes[..1], 0)?;
    let (n, header_len) = if bytes[0] < 126 {
        ((bytes[0] - 63) as u64, 1)
    } else {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte form: always n >= 258048
            if bytes.len() < 8 {
                return Err(Graph6Error::MalformedHeader);
            }
            check_printable(&bytes[2..8], 2)?;
            let n = bytes[2..8].iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64);
            return Err(Graph6Error::OrderTooLarge(n));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::MalformedHeader);
        }
        check_printable(&bytes[1..4], 1)?;
        let n = bytes[1..4].iter().fold(0u64, |acc, &b| acc << 6 | (b - 63) as u64);
        (n, 4)
    };
    if n > MAX_VERTICES as u64 {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let n = n as usize;
    let body = &bytes[header_len..];
    check_printable(body, header_len)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected));
    }
    let mut rows = [0u64; MAX_VERTICES];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = body[k / 6] - 63;
            if group >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1u64 << j;
                rows[j] |= 1u64 << i;
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_rows_unchecked(n, &rows[..n]))
}

/// Encodes a graph as graph6 (no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes a one-graph-per-line stream. Blank lines and lines starting with
/// `#` are skipped; each item carries the 1-based line number.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<Graph, Graph6LineError>)> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let lineno = i + 1;
        match line {
            Err(e) => Some((lineno, Err(Graph6LineError::Io(e.to_string())))),
            Ok(l) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some((lineno, decode_graph6(t).map_err(Graph6LineError::Parse)))
                }
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6LineError {
    #[error("read error: {0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] Graph6Error),
}

/// Writes one graph6 line per graph.
pub fn write_graph6_lines<'a, W: std::io::Write, I: IntoIterator<Item = &'a Graph>>(
    mut w: W,
    graphs: I,
) -> std::io::Result<()> {
    for g in graphs {
        writeln!(w, "{}", encode_graph6(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tiny_graphs() {
        assert_eq!(decode_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(decode_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(encode_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(decode_graph6("?").unwrap().n(), 0);
        assert_eq!(decode_graph6("A_\n").unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn known_strings() {
        // petgraph test vector: edges a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        // C5 as produced by geng
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&c5)).unwrap(), c5);
        assert_eq!(encode_graph6(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn long_form_header() {
        for n in [63usize, 64] {
            let g = Graph::complete(n).unwrap();
            let s = encode_graph6(&g);
            assert_eq!(&s.as_bytes()[..1], b"~");
            assert_eq!(s.as_bytes()[1], 63);
            assert_eq!(decode_graph6(&s).unwrap(), g);
        }
        let s = encode_graph6(&Graph::empty(63).unwrap());
        assert_eq!(&s[..4], "~??~");
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(decode_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(decode_graph6("~?"), Err(Graph6Error::MalformedHeader));
        assert!(matches!(
            decode_graph6("A\x01"),
            Err(Graph6Error::NonPrintable { offset: 1, .. })
        ));
        assert!(matches!(
            decode_graph6(" _"),
            Err(Graph6Error::NonPrintable { offset: 0, .. })
        ));
        assert_eq!(decode_graph6("A__"), Err(Graph6Error::TrailingGarbage(1)));
        assert_eq!(
            decode_graph6("D"),
            Err(Graph6Error::Truncated { expected: 2, found: 0 })
        );
        // n = 65 in long form
        assert_eq!(decode_graph6("~?@@"), Err(Graph6Error::OrderTooLarge(65)));
        assert!(matches!(decode_graph6("~~??????"), Err(Graph6Error::OrderTooLarge(_))));
        assert_eq!(decode_graph6("A`"), Err(Graph6Error::NonZeroPadding));
    }

    #[test]
    fn line_stream() {
        let data = "# comment\nA_\n\nB?\nbad\x01\n";
        let items: Vec<_> = read_graph6_lines(data.as_bytes()).collect();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].0, 2);
        assert_eq!(items[1].1.as_ref().unwrap().n(), 3);
        assert!(items[2].1.is_err());
        let mut buf = Vec::new();
        write_graph6_lines(&mut buf, [&Graph::complete(2).unwrap()]).unwrap();
        assert_eq!(buf, b"A_\n");
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn round_trip(g in arb_graph(20)) {
            let s = encode_graph6(&g);
            prop_assert_eq!(decode_graph6(&s).unwrap(), g);
            prop_assert_eq!(encode_graph6(&decode_graph6(&s).unwrap()), s);
        }
    }
}
