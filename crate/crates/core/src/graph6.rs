//! graph6 and plain edge-list text formats.
//!
//! Only the short graph6 form (at most 62 vertices) is supported.

use crate::error::GraphError;
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_SHORT: usize = 62;

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(GraphError::MalformedGraph6("empty input".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(GraphError::MalformedGraph6(format!("invalid size byte {first}")));
    }
    if first == 126 {
        // extended size forms encode n >= 63
        return Err(GraphError::UnsupportedGraph6Size(decode_long_size(&bytes[1..])));
    }
    let n = (first - 63) as usize;
    let body = &bytes[1..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphError::MalformedGraph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut data = Vec::with_capacity(expected * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(GraphError::MalformedGraph6(format!("invalid data byte {b}")));
        }
        let x = b - 63;
        for shift in (0..6).rev() {
            data.push((x >> shift) & 1 == 1);
        }
    }
    if data[bits..].iter().any(|&b| b) {
        return Err(GraphError::MalformedGraph6("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if data[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

fn decode_long_size(rest: &[u8]) -> usize {
    let take = |bs: &[u8]| bs.iter().fold(0usize, |acc, &b| (acc << 6) | (b.saturating_sub(63) as usize & 63));
    match rest.first() {
        Some(126) if rest.len() >= 7 => take(&rest[1..7]),
        _ if rest.len() >= 3 => take(&rest[..3]),
        _ => MAX_SHORT + 1,
    }
}

pub fn write_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > MAX_SHORT {
        return Err(GraphError::UnsupportedGraph6Size(n));
    }
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses `"n m\nu v\n..."`. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let bad = |msg: String| GraphError::MalformedEdgeList(msg);
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
    let nums = parse_pair(header).map_err(bad)?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_pair(line).map_err(bad)?);
    }
    if edges.len() != m {
        return Err(bad(format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

fn parse_pair(line: &str) -> Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, String> {
        let tok = it.next().ok_or_else(|| format!("short line `{line}`"))?;
        tok.parse().map_err(|_| format!("not an integer: `{tok}`"))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(format!("trailing tokens in `{line}`"));
    }
    Ok(pair)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert_eq!(g.edge_count(), 6);
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), g);
    }

    #[test]
    fn known_encodings() {
        // hand-packed: P_3 has bits x(0,1)=1, x(0,2)=0, x(1,2)=1 -> 101000
        assert_eq!(write_graph6(&Graph::path(3)).unwrap(), "Bg");
        assert_eq!(write_graph6(&Graph::edgeless(1)).unwrap(), "@");
        assert_eq!(write_graph6(&Graph::edgeless(0)).unwrap(), "?");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_graph6(""), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("C"), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("C~~"), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("C\x20"), Err(GraphError::MalformedGraph6(_))));
        // P_3 with a padding bit set
        assert!(parse_graph6("Bh").is_err());
        assert!(matches!(parse_graph6("~??~"), Err(GraphError::UnsupportedGraph6Size(63))));
        assert!(matches!(write_graph6(&Graph::edgeless(63)), Err(GraphError::UnsupportedGraph6Size(63))));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let fixture = "# chair\n5 4\n0 1\n1 2\n2 3\n1 4\n";
        assert_eq!(parse_edge_list(fixture).unwrap().edge_count(), 4);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("").is_err());
    }
}
