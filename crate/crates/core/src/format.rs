//! graph6 and plain edge-list encodings.
//!
//! graph6 follows McKay's definition: `N(n)` followed by the upper triangle of
//! the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! six bits per byte, each byte offset by 63. The edge-list format is the
//! multigraph-capable native format: a header line `n m` followed by `m` lines
//! `u v` with 0-based vertex ids.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 line. A trailing newline and the optional `>>graph6<<`
/// header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (start, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(
            start + pos,
            format!("byte {:#04x} outside graph6 range", body[pos]),
        ));
    }
    if body.is_empty() {
        return Err(parse_err(start, "missing vertex count"));
    }
    let (n, header_len) = decode_n(body, start)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < bytes_needed {
        return Err(parse_err(
            start + body.len(),
            format!(
                "truncated: expected {bytes_needed} adjacency bytes, found {}",
                data.len()
            ),
        ));
    }
    if data.len() > bytes_needed {
        return Err(parse_err(
            start + header_len + bytes_needed,
            "trailing garbage",
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).map_err(|_| {
                    parse_err(
                        start + header_len + k / 6,
                        format!("vertex degree exceeds 3 at edge {i}-{j}"),
                    )
                })?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_n(body: &[u8], start: usize) -> Result<(usize, usize)> {
    let value = |bytes: &[u8]| {
        bytes
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    if body[0] != 126 {
        return Ok(((body[0] - 63) as usize, 1));
    }
    if body.len() >= 2 && body[1] == 126 {
        if body.len() < 8 {
            return Err(parse_err(
                start + body.len(),
                "truncated 8-byte vertex count",
            ));
        }
        Ok((value(&body[2..8]), 8))
    } else {
        if body.len() < 4 {
            return Err(parse_err(
                start + body.len(),
                "truncated 4-byte vertex count",
            ));
        }
        Ok((value(&body[1..4]), 4))
    }
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    let push_bits = |out: &mut Vec<u8>, count: usize| {
        for k in (0..count).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_bits(out, 3);
    } else {
        out.push(126);
        out.push(126);
        push_bits(out, 6);
    }
}

/// Encodes a simple graph as graph6 (no header, no newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    if let Some(e) = g.first_non_simple_edge() {
        let (u, v) = g.endpoints(e);
        let kind = if u == v { "loop" } else { "parallel edge" };
        return Err(Error::Unrepresentable(format!("{kind} {e} ({u}-{v})")));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | g.find_edge(i, j).is_some() as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ascii"))
}

/// Parses the `n m` / `u v` edge-list format. Blank lines are skipped.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::ParseLine {
        line: 1,
        message: "missing header".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for (line, body) in lines {
        let [u, v] = parse_pair(line, body)?;
        if count == m {
            return Err(Error::ParseLine {
                line,
                message: format!("more than {m} edges"),
            });
        }
        for w in [u, v] {
            if w >= n {
                return Err(Error::ParseLine {
                    line,
                    message: format!("vertex {w} >= n = {n}"),
                });
            }
        }
        g.add_edge(u, v).map_err(|e| Error::ParseLine {
            line,
            message: e.to_string(),
        })?;
        count += 1;
    }
    if count != m {
        return Err(Error::ParseLine {
            line: text.lines().count().max(1),
            message: format!("expected {m} edges, found {count}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(Error::ParseLine {
            line,
            message: format!("expected two integers, found {:?}", body),
        });
    }
    let mut out = [0; 2];
    for (slot, tok) in out.iter_mut().zip(&tokens) {
        *slot = tok.parse().map_err(|_| Error::ParseLine {
            line,
            message: format!("not a non-negative integer: {tok:?}"),
        })?;
    }
    Ok(out)
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{k4, theta};
    use crate::graph::{is_isomorphic, random_cubic};
    use proptest::prelude::*;

    #[test]
    fn k4_graph6() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|v| g.degree(v) == 3));
        assert_eq!(write_graph6(&k4()).unwrap(), "C~");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap().edge_count(), 6);
    }

    #[test]
    fn rejects_bad_graph6() {
        match parse_graph6("not-a-graph") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("C~~") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 2);
                assert!(message.contains("trailing"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_graph6("I"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(parse_graph6("~?"), Err(Error::Parse { .. })));
    }

    #[test]
    fn multigraph_is_unrepresentable() {
        match write_graph6(&theta()) {
            Err(Error::Unrepresentable(msg)) => assert!(msg.contains("parallel edge 1")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn large_vertex_count_uses_long_header() {
        // 2n-vertex prism graphs are cubic and simple
        let n = 40;
        let mut g = Graph::new(2 * n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
            g.add_edge(n + i, n + (i + 1) % n).unwrap();
            g.add_edge(i, n + i).unwrap();
        }
        let s = write_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 79]);
        assert!(is_isomorphic(&parse_graph6(&s).unwrap(), &g));
        assert_eq!(write_graph6(&parse_graph6(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn edgelist_cases() {
        let g = parse_edgelist("2 3\n0 1\n0 1\n0 1").unwrap();
        assert_eq!(g, theta());
        let single = parse_edgelist("1 0").unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        assert!(matches!(
            parse_edgelist("2 1\n0 2"),
            Err(Error::ParseLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_edgelist("2 1\n0 x"),
            Err(Error::ParseLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_edgelist("2 2\n0 1"),
            Err(Error::ParseLine { .. })
        ));
        assert!(matches!(
            parse_edgelist("2 1\n0 1\n1 0"),
            Err(Error::ParseLine { line: 3, .. })
        ));
    }

    proptest! {
        #[test]
        fn graph6_and_edgelist_round_trip(half in 2usize..12, seed in any::<u64>()) {
            let g = random_cubic(2 * half, seed).unwrap();
            let s = write_graph6(&g).unwrap();
            let back = parse_graph6(&s).unwrap();
            prop_assert_eq!(write_graph6(&back).unwrap(), s);
            prop_assert!(is_isomorphic(&back, &g));
            prop_assert_eq!(parse_edgelist(&write_edgelist(&g)).unwrap(), g);
        }
    }
}
