//! Colorings: total maps from vertices to colors {1..c}, plus their text
//! interchange format.
//!
//! File format: a header `graph: <descriptor> c: <int>`, then one `<word>
//! <color>` line per vertex in vertex order. Written files parse back to an
//! identical coloring, and re-writing a parsed file reproduces it byte for
//! byte.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::sierp::GraphView;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    graph: String,
    colors: Vec<u32>,
    c: u32,
}

impl Coloring {
    pub fn new(graph: impl Into<String>, colors: Vec<u32>, c: u32) -> Result<Coloring> {
        if c == 0 {
            return Err(Error::InvalidColoring("c must be at least 1".into()));
        }
        if colors.is_empty() {
            return Err(Error::InvalidColoring("no vertices colored".into()));
        }
        if let Some(pos) = colors.iter().position(|&x| x == 0 || x > c) {
            return Err(Error::InvalidColoring(format!(
                "vertex #{pos} has color {} outside 1..={c}",
                colors[pos]
            )));
        }
        Ok(Coloring {
            graph: graph.into(),
            colors,
            c,
        })
    }

    /// Descriptor of the graph this coloring belongs to.
    pub fn graph(&self) -> &str {
        &self.graph
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// The declared class c; colors actually used may be fewer.
    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn max_used(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Same assignment re-declared with a larger class; padding with unused
    /// colors keeps every class an i-packing.
    pub fn widened(&self, c: u32) -> Result<Coloring> {
        if c < self.max_used() {
            return Err(Error::InvalidColoring(format!(
                "cannot narrow to {c}: color {} is in use",
                self.max_used()
            )));
        }
        Ok(Coloring {
            graph: self.graph.clone(),
            colors: self.colors.clone(),
            c,
        })
    }

    pub fn write_to(&self, g: &impl GraphView, mut out: impl Write) -> Result<()> {
        if g.vertex_count() != self.colors.len() {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, graph has {}",
                self.colors.len(),
                g.vertex_count()
            )));
        }
        writeln!(out, "graph: {} c: {}", self.graph, self.c)?;
        for (v, &color) in self.colors.iter().enumerate() {
            writeln!(out, "{} {}", g.word(v), color)?;
        }
        Ok(())
    }

    pub fn read_from(g: &impl GraphView, reader: impl BufRead) -> Result<Coloring> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty coloring file".into()))??;
        let rest = header
            .strip_prefix("graph: ")
            .ok_or_else(|| Error::Parse(format!("bad coloring header {header:?}")))?;
        let (graph, c_text) = rest
            .rsplit_once(" c: ")
            .ok_or_else(|| Error::Parse(format!("bad coloring header {header:?}")))?;
        let c: u32 = c_text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad color count in {header:?}")))?;

        let mut colors: Vec<Option<u32>> = vec![None; g.vertex_count()];
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (word_text, color_text) = line
                .split_once(' ')
                .ok_or_else(|| Error::Parse(format!("bad coloring line {line:?}")))?;
            let word = crate::word::Word::parse(word_text, crate::word::MAX_BASE)?;
            let v = g
                .vertex_of(&word)
                .ok_or_else(|| Error::UnknownVertex(word.to_string()))?;
            let color: u32 = color_text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad color in {line:?}")))?;
            if colors[v].is_some() {
                return Err(Error::InvalidColoring(format!(
                    "vertex {word} colored twice"
                )));
            }
            colors[v] = Some(color);
        }
        let missing = colors.iter().filter(|c| c.is_none()).count();
        if missing > 0 {
            return Err(Error::InvalidColoring(format!(
                "{missing} vertices left uncolored"
            )));
        }
        Coloring::new(graph, colors.into_iter().map(Option::unwrap).collect(), c)
    }
}
