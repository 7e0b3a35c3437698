//! Edge-list text format.
//!
//! One edge per line as `u v w`, whitespace separated. Everything after `#`
//! is a comment and blank lines are ignored. A comment of the form
//! `# nodes: N` fixes the node count; ids must then be integers in `[0, N)`
//! and are used verbatim, which lets isolated nodes survive a round trip.
//!
//! Without that directive node labels are compacted to `[0, |V|)`: in
//! ascending numeric order when every label is an integer, otherwise in
//! order of first appearance. Original labels are kept on the graph.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::WeightedGraph;
use crate::error::{Error, Result};

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_edge_list(&text, path)
}

/// Parses edge-list text; `origin` is only used in error messages.
pub fn parse_edge_list(text: &str, origin: impl AsRef<Path>) -> Result<WeightedGraph> {
    let origin: PathBuf = origin.as_ref().to_path_buf();
    let err = |line: usize, message: String| Error::Parse {
        path: origin.clone(),
        line,
        message,
    };

    let mut declared_nodes: Option<usize> = None;
    let mut raw: Vec<(usize, String, String, f64)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let (content, comment) = match line.find('#') {
            Some(pos) => (&line[..pos], Some(&line[pos + 1..])),
            None => (line, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.trim().strip_prefix("nodes:") {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| err(lineno, format!("bad node count directive: {e}")))?;
                declared_nodes = Some(n);
            }
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 3 {
            return Err(err(
                lineno,
                format!("expected `u v w`, found {} fields", tokens.len()),
            ));
        }
        let w: f64 = tokens[2]
            .parse()
            .map_err(|e| err(lineno, format!("bad weight `{}`: {e}", tokens[2])))?;
        if !(w > 0.0 && w.is_finite()) {
            return Err(err(lineno, format!("weight must be positive, got {w}")));
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop(tokens[0].to_string()));
        }
        raw.push((lineno, tokens[0].to_string(), tokens[1].to_string(), w));
    }

    let (node_count, index, labels) = match declared_nodes {
        Some(n) => {
            let mut index = HashMap::new();
            for (lineno, a, b, _) in &raw {
                for label in [a, b] {
                    let id: usize = label
                        .parse()
                        .map_err(|_| err(*lineno, format!("node `{label}` is not an integer id")))?;
                    if id >= n {
                        return Err(err(*lineno, format!("node {id} outside declared range {n}")));
                    }
                    index.insert(label.clone(), id);
                }
            }
            (n, index, None)
        }
        None => {
            let mut order: Vec<String> = Vec::new();
            let mut seen = HashSet::new();
            for (_, a, b, _) in &raw {
                for label in [a, b] {
                    if seen.insert(label.clone()) {
                        order.push(label.clone());
                    }
                }
            }
            let numeric: Option<Vec<i128>> = order.iter().map(|l| l.parse().ok()).collect();
            if let Some(nums) = numeric {
                let mut pairs: Vec<(i128, String)> = nums.into_iter().zip(order).collect();
                pairs.sort_by_key(|p| p.0);
                order = pairs.into_iter().map(|p| p.1).collect();
            }
            let index: HashMap<String, usize> = order
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect();
            (order.len(), index, Some(order))
        }
    };

    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(raw.len());
    for (_, a, b, w) in &raw {
        let (u, v) = (index[a], index[b]);
        if u == v {
            return Err(Error::SelfLoop(a.clone()));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge(a.clone(), b.clone()));
        }
        edges.push((u, v, *w));
    }
    let g = WeightedGraph::new(node_count, edges)?;
    match labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

/// Writes `g` with compact ids and a `# nodes:` directive. Weights carry 17
/// significant digits so they round-trip exactly.
pub fn write_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> Result<()> {
    writeln!(out, "# undirected weighted edge list: u v w")?;
    writeln!(out, "# nodes: {}", g.node_count())?;
    for e in g.edges() {
        writeln!(out, "{} {} {:.16e}", e.u, e.v, e.weight)?;
    }
    Ok(())
}

pub fn save_edge_list(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut buf = std::io::BufWriter::new(file);
    write_edge_list(g, &mut buf)?;
    buf.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_file() {
        let g = parse_edge_list("0 1 2.0\n1 2 3.0", "mem").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(0, 1), Some(2.0));
        assert_eq!(g.weight(2, 1), Some(3.0));
    }

    #[test]
    fn comments_blank_lines_and_compaction() {
        let text = "# header\n\n10 30 1.5 # trailing\n30 20 2\n";
        let g = parse_edge_list(text, "mem").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.labels().unwrap(), ["10", "20", "30"]);
        // 10 -> 0, 20 -> 1, 30 -> 2
        assert_eq!(g.weight(0, 2), Some(1.5));
        assert_eq!(g.weight(1, 2), Some(2.0));
    }

    #[test]
    fn non_numeric_labels_keep_first_appearance_order() {
        let g = parse_edge_list("b a 1\na c 2\n", "mem").unwrap();
        assert_eq!(g.labels().unwrap(), ["b", "a", "c"]);
    }

    #[test]
    fn rejects_self_loop() {
        let e = parse_edge_list("0 1 1.0\n2 2 1.0\n", "mem").unwrap_err();
        assert!(matches!(e, Error::SelfLoop(ref n) if n == "2"), "{e}");
    }

    #[test]
    fn rejects_duplicates_and_bad_weights_with_line_numbers() {
        assert!(matches!(
            parse_edge_list("0 1 1\n1 0 2\n", "mem"),
            Err(Error::DuplicateEdge(..))
        ));
        match parse_edge_list("0 1 1\n1 2 -3\n", "mem") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("0 1 1\n\n1 2 x\n", "mem") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_edge_list("0 1\n", "mem") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn node_directive_keeps_isolated_nodes() {
        let g = parse_edge_list("# nodes: 5\n0 3 1.0\n", "mem").unwrap();
        assert_eq!(g.node_count(), 5);
        assert!(g.labels().is_none());
        assert!(parse_edge_list("# nodes: 2\n0 3 1.0\n", "mem").is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = WeightedGraph::new(6, [(0, 1, 0.1), (1, 4, 1.0 / 3.0), (2, 4, 99.99)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(std::str::from_utf8(&buf).unwrap(), "mem").unwrap();
        assert_eq!(back, g);
    }
}
