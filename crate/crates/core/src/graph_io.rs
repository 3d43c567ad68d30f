//! Edge-list text interchange.
//!
//! Format: a header line `k n variant`, then one edge per line written as two
//! word labels. `variant` is `plain`, `aug(i,j)`, or `triangle`. Plain and
//! augmented listings cover the full vertex set [k]^n; triangle listings name
//! contraction-class representatives only.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::sierp::{GraphView, SierpGraph, Variant, DEFAULT_VERTEX_BUDGET};
use crate::word::Word;
use std::collections::HashMap;

/// A graph reconstructed from an edge-list file.
pub struct LabeledGraph {
    pub k: usize,
    pub n: usize,
    pub variant: String,
    words: Vec<Word>,
    adj: Vec<Vec<u32>>,
    lookup: HashMap<Word, u32>,
}

impl GraphView for LabeledGraph {
    fn vertex_count(&self) -> usize {
        self.words.len()
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    fn vertex_of(&self, w: &Word) -> Option<usize> {
        self.lookup.get(w).map(|&v| v as usize)
    }
}

fn variant_token(v: Variant) -> String {
    match v {
        Variant::Plain => "plain".into(),
        Variant::Augmented { i, j } => format!("aug({i},{j})"),
        Variant::Triangle => "triangle".into(),
    }
}

pub fn write_edge_list(g: &SierpGraph, mut out: impl Write) -> Result<()> {
    writeln!(
        out,
        "{} {} {}",
        g.base().order(),
        g.dim(),
        variant_token(g.variant())
    )?;
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if (v as usize) > u {
                writeln!(out, "{} {}", g.word(u), g.word(v as usize))?;
            }
        }
    }
    Ok(())
}

pub fn read_edge_list(reader: impl BufRead) -> Result<LabeledGraph> {
    read_edge_list_with_budget(reader, DEFAULT_VERTEX_BUDGET)
}

pub fn read_edge_list_with_budget(reader: impl BufRead, budget: usize) -> Result<LabeledGraph> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list file".into()))??;
    let mut parts = header.split_whitespace();
    let k: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad edge-list header {header:?}")))?;
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad edge-list header {header:?}")))?;
    let variant = parts
        .next()
        .ok_or_else(|| Error::Parse(format!("bad edge-list header {header:?}")))?
        .to_string();
    if parts.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in header {header:?}")));
    }

    let mut raw_edges: Vec<(Word, Word)> = Vec::new();
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?;
        let wa = Word::parse(a.trim(), k)?;
        let wb = Word::parse(b.trim(), k)?;
        if wa.len() != n || wb.len() != n {
            return Err(Error::Parse(format!(
                "edge {line:?} has a word of the wrong length (expected {n})"
            )));
        }
        raw_edges.push((wa, wb));
    }

    // Plain and augmented listings span the whole word space; the triangle
    // quotient names only the words that survive contraction.
    let words: Vec<Word> = if variant == "triangle" {
        let mut ws: Vec<Word> = raw_edges
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    } else {
        let mut total: u128 = 1;
        for _ in 0..n {
            total *= k as u128;
            if total > budget as u128 {
                return Err(Error::VertexBudget {
                    needed: total,
                    budget,
                });
            }
        }
        (0..total as usize).map(|i| Word::from_index(i, k, n)).collect()
    };
    let lookup: HashMap<Word, u32> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i as u32))
        .collect();

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); words.len()];
    for (a, b) in &raw_edges {
        let ia = lookup[a];
        let ib = lookup[b];
        if ia == ib {
            return Err(Error::Parse(format!("self-loop at {a}")));
        }
        adj[ia as usize].push(ib);
        adj[ib as usize].push(ia);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    Ok(LabeledGraph {
        k,
        n,
        variant,
        words,
        adj,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::sierp::{build_augmented, build_sierpinski, build_triangle};

    fn round_trip(g: &SierpGraph) {
        let mut buf = Vec::new();
        write_edge_list(g, &mut buf).unwrap();
        let loaded = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(loaded.vertex_count(), g.vertex_count());
        assert_eq!(loaded.edge_count(), g.edge_count());
        for v in 0..g.vertex_count() {
            let lv = loaded.vertex_of(g.word(v)).unwrap();
            let mut a: Vec<String> = g
                .neighbors(v)
                .iter()
                .map(|&w| g.word(w as usize).to_string())
                .collect();
            let mut b: Vec<String> = loaded
                .neighbors(lv)
                .iter()
                .map(|&w| loaded.word(w as usize).to_string())
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn edge_list_round_trips() {
        let p3 = build_base(&BaseSpec::Path(3)).unwrap();
        let s = build_sierpinski(&p3, 2).unwrap();
        round_trip(&s);
        round_trip(&build_augmented(&s, 0, 1).unwrap());
        round_trip(&build_triangle(2).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_edge_list("".as_bytes()).is_err());
        assert!(read_edge_list("3 2 plain\n00\n".as_bytes()).is_err());
        assert!(read_edge_list("3 2 plain\n00 000\n".as_bytes()).is_err());
    }
}
