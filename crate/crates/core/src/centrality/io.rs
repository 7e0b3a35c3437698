//! Score files: `u v score` text lines (compact node ids, `EdgeId` order)
//! and a JSON array of `{id, u, v, score}` records.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoredEdge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub score: f64,
}

fn records<'a>(g: &'a WeightedGraph, scores: &'a [f64]) -> Result<impl Iterator<Item = ScoredEdge> + 'a> {
    if scores.len() != g.edge_count() {
        return Err(Error::LengthMismatch(scores.len(), g.edge_count()));
    }
    Ok(g.edges().iter().zip(scores).enumerate().map(|(id, (e, &score))| ScoredEdge {
        id,
        u: e.u,
        v: e.v,
        score,
    }))
}

pub fn write_scores_text(g: &WeightedGraph, scores: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    for r in records(g, scores)? {
        writeln!(out, "{} {} {:.16e}", r.u, r.v, r.score)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_scores_json(g: &WeightedGraph, scores: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let list: Vec<ScoredEdge> = records(g, scores)?.collect();
    let out = BufWriter::new(fs::File::create(path)?);
    serde_json::to_writer_pretty(out, &list)?;
    Ok(())
}

/// Reads a text score file. Record ids are line positions.
pub fn read_scores(path: impl AsRef<Path>) -> Result<Vec<ScoredEdge>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let t: Vec<&str> = content.split_whitespace().collect();
        if t.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        if t.len() != 3 {
            return Err(parse_err(format!("expected `u v score`, found {} fields", t.len())));
        }
        let u = t[0].parse().map_err(|e| parse_err(format!("{e}")))?;
        let v = t[1].parse().map_err(|e| parse_err(format!("{e}")))?;
        let score = t[2].parse().map_err(|e| parse_err(format!("{e}")))?;
        out.push(ScoredEdge { id: out.len(), u, v, score });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let scores = [2.0, 1.0 / 3.0];
        let txt = dir.path().join("s.txt");
        write_scores_text(&g, &scores, &txt).unwrap();
        let back = read_scores(&txt).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!((back[1].u, back[1].v, back[1].score), (1, 2, 1.0 / 3.0));

        let js = dir.path().join("s.json");
        write_scores_json(&g, &scores, &js).unwrap();
        let parsed: Vec<ScoredEdge> = serde_json::from_str(&fs::read_to_string(js).unwrap()).unwrap();
        assert_eq!(parsed, back);
        assert!(write_scores_text(&g, &[1.0], &txt).is_err());
    }
}
