//! CNF encoding of packing colorability.
//!
//! Variables x_{v,i} say "vertex v has color i". Each vertex carries an
//! at-least-one-color clause; each pair u, v at distance d contributes the
//! conflict clause (-x_{u,i} v -x_{v,i}) for every color i >= d. At-most-one
//! clauses are deliberately absent: dropping extra colors from a class keeps
//! it a packing, so decoding just picks the least true color per vertex.
//!
//! Conflict pairs are generated by one truncated BFS per vertex at the
//! largest relevant radius, each pair tagged with its distance.

use std::io::{BufRead, Write};

use crate::base::BaseGraph;
use crate::coloring::Coloring;
use crate::dist::Bfs;
use crate::error::{Error, Result};
use crate::sierp::{build_sierpinski_with_budget, GraphView, DEFAULT_VERTEX_BUDGET};
use crate::word::Word;

/// Default ceiling on emitted clauses.
pub const DEFAULT_CLAUSE_BUDGET: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodingKind {
    /// Packing colorability of the graph itself.
    Packing,
    /// Extendable packing colorability: distances taken as the minimum over
    /// all single-edge augmentations.
    Extendable,
}

impl EncodingKind {
    fn token(self) -> &'static str {
        match self {
            EncodingKind::Packing => "packing",
            EncodingKind::Extendable => "extendable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    kind: EncodingKind,
    graph: String,
    words: Vec<Word>,
    c: u32,
}

impl CnfInstance {
    /// Variable index for "vertex v gets color i"; colors are 1-based.
    pub fn var(&self, v: usize, color: u32) -> Option<i32> {
        if v >= self.words.len() || color == 0 || color > self.c {
            return None;
        }
        Some((v as u32 * self.c + color) as i32)
    }

    pub fn var_of_word(&self, w: &Word, color: u32) -> Option<i32> {
        let v = self.words.iter().position(|x| x == w)?;
        self.var(v, color)
    }

    /// Inverse of [`CnfInstance::var`].
    pub fn vertex_color(&self, var: i32) -> Option<(usize, u32)> {
        if var <= 0 || var as usize > self.num_vars {
            return None;
        }
        let z = (var - 1) as u32;
        Some(((z / self.c) as usize, z % self.c + 1))
    }

    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    /// Descriptor of the encoded graph.
    pub fn graph(&self) -> &str {
        &self.graph
    }

    pub fn meta(&self) -> String {
        format!("{} {} c={}", self.kind.token(), self.graph, self.c)
    }

    /// True when the assignment satisfies every clause; the independent check
    /// behind every reported model.
    pub fn check_model(&self, model: &[bool]) -> bool {
        if model.len() < self.num_vars {
            return false;
        }
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&l| model[(l.unsigned_abs() - 1) as usize] == (l > 0))
        })
    }
}

/// Distance-tagged vertex pairs (u < v, d(u,v) <= radius), one truncated BFS
/// per vertex.
fn pairs_within(g: &impl GraphView, radius: usize) -> Vec<(u32, u32, u32)> {
    let mut bfs = Bfs::new(g.vertex_count());
    let mut pairs = Vec::new();
    for u in 0..g.vertex_count() {
        bfs.run(g, u, radius);
        for &v in &bfs.reached {
            if (v as usize) > u {
                pairs.push((u as u32, v, bfs.dist[v as usize]));
            }
        }
    }
    pairs
}

fn emit(
    words: Vec<Word>,
    kind: EncodingKind,
    graph: String,
    c: u32,
    pairs: &[(u32, u32, u32)],
    clause_budget: usize,
) -> Result<CnfInstance> {
    let n = words.len();
    let num_vars = n * c as usize;
    let conflict_count: usize = pairs
        .iter()
        .map(|&(_, _, d)| (c - d.max(1) + 1) as usize)
        .sum();
    let total = n + conflict_count;
    if total > clause_budget {
        return Err(Error::ClauseBudget {
            budget: clause_budget,
        });
    }
    let mut clauses = Vec::with_capacity(total);
    let var = |v: u32, i: u32| (v * c + i) as i32;
    for v in 0..n as u32 {
        clauses.push((1..=c).map(|i| var(v, i)).collect());
    }
    for &(u, v, d) in pairs {
        for i in d.max(1)..=c {
            clauses.push(vec![-var(u, i), -var(v, i)]);
        }
    }
    Ok(CnfInstance {
        num_vars,
        clauses,
        kind,
        graph,
        words,
        c,
    })
}

pub fn encode_packing(g: &impl GraphView, graph_desc: &str, c: u32) -> Result<CnfInstance> {
    encode_packing_with_budget(g, graph_desc, c, DEFAULT_CLAUSE_BUDGET)
}

pub fn encode_packing_with_budget(
    g: &impl GraphView,
    graph_desc: &str,
    c: u32,
    clause_budget: usize,
) -> Result<CnfInstance> {
    if c < 1 {
        return Err(Error::Precondition("need at least one color".into()));
    }
    let mut pairs = pairs_within(g, c as usize);
    pairs.sort_unstable();
    let words = (0..g.vertex_count()).map(|v| g.word(v).clone()).collect();
    emit(
        words,
        EncodingKind::Packing,
        graph_desc.into(),
        c,
        &pairs,
        clause_budget,
    )
}

/// Encode extendable packing colorability of the dimension-ell graph: a
/// model is exactly an extendable packing c-coloring.
///
/// For the augmented distance it is enough to combine plain distances with
/// paths through each added extreme-to-extreme edge, so the pair pass reuses
/// plain BFS plus two extreme-vertex BFS runs per base edge.
pub fn encode_extendable(base: &BaseGraph, ell: usize, c: u32) -> Result<CnfInstance> {
    encode_extendable_with_budget(base, ell, c, DEFAULT_VERTEX_BUDGET, DEFAULT_CLAUSE_BUDGET)
}

pub fn encode_extendable_with_budget(
    base: &BaseGraph,
    ell: usize,
    c: u32,
    vertex_budget: usize,
    clause_budget: usize,
) -> Result<CnfInstance> {
    if c < 1 {
        return Err(Error::Precondition("need at least one color".into()));
    }
    let s = build_sierpinski_with_budget(base, ell, vertex_budget)?;
    let mut best: std::collections::HashMap<(u32, u32), u32> = pairs_within(&s, c as usize)
        .into_iter()
        .map(|(u, v, d)| ((u, v), d))
        .collect();

    if ell > 1 {
        let mut ball_i = Bfs::new(s.vertex_count());
        let mut ball_j = Bfs::new(s.vertex_count());
        for &(bi, bj) in base.edges() {
            let ei = s.extreme(bi as usize)?;
            let ej = s.extreme(bj as usize)?;
            ball_i.run(&s, ei, c as usize - 1);
            ball_j.run(&s, ej, c as usize - 1);
            for &u in &ball_i.reached {
                let du = ball_i.dist[u as usize];
                if du + 1 > c {
                    continue;
                }
                for &v in &ball_j.reached {
                    if u == v {
                        continue;
                    }
                    let through = du + 1 + ball_j.dist[v as usize];
                    if through > c {
                        continue;
                    }
                    let key = (u.min(v), u.max(v));
                    let entry = best.entry(key).or_insert(u32::MAX);
                    if through < *entry {
                        *entry = through;
                    }
                }
            }
        }
    }

    let mut pairs: Vec<(u32, u32, u32)> =
        best.into_iter().map(|((u, v), d)| (u, v, d)).collect();
    pairs.sort_unstable();
    let words = (0..s.vertex_count()).map(|v| s.word(v).clone()).collect();
    emit(
        words,
        EncodingKind::Extendable,
        s.descriptor(),
        c,
        &pairs,
        clause_budget,
    )
}

/// Append unit clauses fixing (vertex, color) variables; UNSAT of the
/// negation of a structural fact proves the fact.
pub fn add_assumptions(
    mut inst: CnfInstance,
    fixes: &[(Word, u32, bool)],
) -> Result<CnfInstance> {
    for (word, color, value) in fixes {
        let var = inst
            .var_of_word(word, *color)
            .ok_or_else(|| Error::UnknownVertex(format!("({word}, color {color})")))?;
        inst.clauses.push(vec![if *value { var } else { -var }]);
    }
    Ok(inst)
}

/// Read a coloring off a model: the least true color per vertex.
pub fn decode_model(inst: &CnfInstance, model: &[bool]) -> Result<Coloring> {
    if model.len() < inst.num_vars {
        return Err(Error::InvalidColoring(format!(
            "model covers {} of {} variables",
            model.len(),
            inst.num_vars
        )));
    }
    let mut colors = Vec::with_capacity(inst.vertex_count());
    for v in 0..inst.vertex_count() {
        let color = (1..=inst.c)
            .find(|&i| model[(inst.var(v, i).unwrap() - 1) as usize])
            .ok_or_else(|| {
                Error::InvalidColoring(format!("vertex {} has no true color", inst.word(v)))
            })?;
        colors.push(color);
    }
    Coloring::new(inst.graph.clone(), colors, inst.c)
}

/// DIMACS export. Comment lines carry the encoding metadata and the full
/// variable map so models can be decoded later.
pub fn write_dimacs(inst: &CnfInstance, mut out: impl Write) -> Result<()> {
    writeln!(out, "c meta {}", inst.meta())?;
    for v in 0..inst.vertex_count() {
        for i in 1..=inst.c {
            writeln!(out, "c map {} {} {}", inst.word(v), i, inst.var(v, i).unwrap())?;
        }
    }
    writeln!(out, "p cnf {} {}", inst.num_vars, inst.clauses.len())?;
    for clause in &inst.clauses {
        for lit in clause {
            write!(out, "{lit} ")?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}

pub fn read_dimacs(reader: impl BufRead) -> Result<CnfInstance> {
    let mut kind = None;
    let mut graph = String::new();
    let mut c: u32 = 0;
    let mut map: Vec<(Word, u32, i32)> = Vec::new();
    let mut num_vars = 0usize;
    let mut declared_clauses = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();

    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c meta ") {
            let mut parts = rest.split_whitespace();
            let token = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("bad meta line {line:?}")))?;
            kind = Some(match token {
                "packing" => EncodingKind::Packing,
                "extendable" => EncodingKind::Extendable,
                other => return Err(Error::Parse(format!("unknown encoding kind {other:?}"))),
            });
            graph = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("bad meta line {line:?}")))?
                .to_string();
            let c_part = parts
                .next()
                .and_then(|t| t.strip_prefix("c="))
                .ok_or_else(|| Error::Parse(format!("bad meta line {line:?}")))?;
            c = c_part
                .parse()
                .map_err(|_| Error::Parse(format!("bad color count in {line:?}")))?;
            continue;
        }
        if let Some(rest) = line.strip_prefix("c map ") {
            let mut parts = rest.split_whitespace();
            let word = Word::parse(
                parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad map line {line:?}")))?,
                crate::word::MAX_BASE,
            )?;
            let color: u32 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad map line {line:?}")))?;
            let var: i32 = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad map line {line:?}")))?;
            map.push((word, color, var));
            continue;
        }
        if line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf ") {
            let mut parts = rest.split_whitespace();
            num_vars = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad problem line {line:?}")))?;
            declared_clauses = parts.next().and_then(|t| t.parse::<usize>().ok());
            continue;
        }
        let mut clause = Vec::new();
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                break;
            }
            if lit.unsigned_abs() as usize > num_vars {
                return Err(Error::Parse(format!(
                    "literal {lit} out of range (p cnf {num_vars} ...)"
                )));
            }
            clause.push(lit);
        }
        if clause.is_empty() {
            return Err(Error::Parse(format!("empty clause line {line:?}")));
        }
        clauses.push(clause);
    }

    let kind = kind.ok_or_else(|| Error::Parse("missing `c meta` line".into()))?;
    if let Some(n) = declared_clauses {
        if n != clauses.len() {
            return Err(Error::Parse(format!(
                "header declares {n} clauses, found {}",
                clauses.len()
            )));
        }
    }
    if c == 0 {
        return Err(Error::Parse("missing color count".into()));
    }
    if map.len() != num_vars || map.is_empty() {
        return Err(Error::Parse(format!(
            "variable map covers {} of {num_vars} variables",
            map.len()
        )));
    }
    // Reconstruct the word list from the map and insist on the canonical
    // vertex-major numbering.
    let n_vertices = num_vars / c as usize;
    let mut words: Vec<Option<Word>> = vec![None; n_vertices];
    for (word, color, var) in map {
        if color == 0 || color > c || var <= 0 || var as usize > num_vars {
            return Err(Error::Parse(format!(
                "map entry ({word}, {color}, {var}) out of range"
            )));
        }
        let z = (var - 1) as u32;
        let (v, i) = ((z / c) as usize, z % c + 1);
        if i != color {
            return Err(Error::Parse(format!(
                "map entry ({word}, {color}, {var}) breaks the vertex-major layout"
            )));
        }
        match &words[v] {
            None => words[v] = Some(word),
            Some(existing) if *existing == word => {}
            Some(existing) => {
                return Err(Error::Parse(format!(
                    "vertex {v} mapped to both {existing} and {word}"
                )))
            }
        }
    }
    let words: Vec<Word> = words
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("variable map leaves vertices unnamed".into()))?;

    Ok(CnfInstance {
        num_vars,
        clauses,
        kind,
        graph,
        words,
        c,
    })
}

/// Parse a solver model printout: signed literals, optionally across several
/// lines, optionally prefixed with `v`, optionally 0-terminated.
pub fn read_model_lines(reader: impl BufRead) -> Result<Vec<i32>> {
    let mut lits = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix("v ").unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad model literal {tok:?}")))?;
            if lit != 0 {
                lits.push(lit);
            }
        }
    }
    Ok(lits)
}

/// Turn a signed-literal list into an assignment vector.
pub fn model_from_lits(lits: &[i32], num_vars: usize) -> Result<Vec<bool>> {
    let mut model = vec![false; num_vars];
    for &lit in lits {
        let v = lit.unsigned_abs() as usize;
        if v == 0 || v > num_vars {
            return Err(Error::Parse(format!("model literal {lit} out of range")));
        }
        model[v - 1] = lit > 0;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::sierp::build_sierpinski;

    #[test]
    fn k2_encoding_shape() {
        let base = build_base(&BaseSpec::Path(2)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let inst = encode_packing(&g, &g.descriptor(), 2).unwrap();
        assert_eq!(inst.num_vars, 4);
        assert_eq!(inst.clauses.len(), 4);
    }

    #[test]
    fn k1_encoding_shape() {
        let base = build_base(&BaseSpec::Complete(1)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let inst = encode_packing(&g, &g.descriptor(), 1).unwrap();
        assert_eq!(inst.num_vars, 1);
        assert_eq!(inst.clauses.len(), 1);
    }

    #[test]
    fn var_map_round_trip() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        let inst = encode_packing(&g, &g.descriptor(), 3).unwrap();
        for v in 0..g.vertex_count() {
            for i in 1..=3 {
                let var = inst.var(v, i).unwrap();
                assert_eq!(inst.vertex_color(var), Some((v, i)));
            }
        }
        assert_eq!(inst.var(9, 1), None);
        assert_eq!(inst.var(0, 4), None);
    }

    #[test]
    fn dimacs_round_trip_is_exact() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        let inst = encode_packing(&g, &g.descriptor(), 3).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&inst, &mut buf).unwrap();
        let parsed = read_dimacs(buf.as_slice()).unwrap();
        assert_eq!(parsed.num_vars, inst.num_vars);
        assert_eq!(parsed.clauses, inst.clauses);
        assert_eq!(parsed.meta(), inst.meta());
        let mut buf2 = Vec::new();
        write_dimacs(&parsed, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn contradictory_assumptions() {
        let base = build_base(&BaseSpec::Path(2)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let inst = encode_packing(&g, &g.descriptor(), 2).unwrap();
        let w = Word::parse("0", 2).unwrap();
        let inst = add_assumptions(inst, &[(w.clone(), 1, true), (w, 1, false)]).unwrap();
        let last_two: Vec<_> = inst.clauses[inst.clauses.len() - 2..].to_vec();
        assert_eq!(last_two, vec![vec![1], vec![-1]]);
    }

    #[test]
    fn model_line_parsing() {
        let text = "c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n";
        let lits = read_model_lines(text.as_bytes()).unwrap();
        assert_eq!(lits, vec![1, -2, 3, -4]);
        let model = model_from_lits(&lits, 4).unwrap();
        assert_eq!(model, vec![true, false, true, false]);
        assert!(model_from_lits(&[9], 4).is_err());
    }
}
