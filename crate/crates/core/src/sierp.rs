//! Construction of Sierpinski-type graphs: the word-labeled expansion of a
//! base graph, single-edge augmented variants, and the triangle quotient.

use std::collections::HashMap;

use crate::base::BaseGraph;
use crate::base::{build_base, BaseSpec};
use crate::error::{Error, Result};
use crate::word::Word;

/// Default ceiling on materialized vertex counts.
pub const DEFAULT_VERTEX_BUDGET: usize = 200_000;

/// Read-only adjacency access shared by every graph shape in this crate.
pub trait GraphView {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[u32];
    fn word(&self, v: usize) -> &Word;
    fn vertex_of(&self, w: &Word) -> Option<usize>;

    fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.neighbors(v).len()).sum::<usize>() / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    /// Plain graph plus the single edge {i^n, j^n}.
    Augmented { i: u8, j: u8 },
    /// Quotient of the base-3 graph of the next dimension under contraction
    /// of all edges that lie in no triangle.
    Triangle,
}

#[derive(Clone)]
pub struct SierpGraph {
    base: BaseGraph,
    n: usize,
    variant: Variant,
    words: Vec<Word>,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
    /// Word lookup for the triangle quotient, whose vertex set is sparse in
    /// word space. Plain and augmented graphs resolve words arithmetically.
    lookup: Option<HashMap<Word, u32>>,
}

impl SierpGraph {
    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// First symbol of the vertex label: which top-level copy holds it.
    pub fn copy_of(&self, v: usize) -> u8 {
        self.words[v].first()
    }

    /// Vertex id of the extreme vertex i^n.
    pub fn extreme(&self, i: usize) -> Result<usize> {
        let w = Word::constant(i as u8, self.n);
        self.vertex_of(&w)
            .ok_or_else(|| Error::UnknownVertex(w.to_string()))
    }

    /// Stable text descriptor, e.g. `path(3)^2`, `aug(0,1)cycle(5)^2`, `st(3)`.
    pub fn descriptor(&self) -> String {
        match self.variant {
            Variant::Plain => format!("{}^{}", self.base.name(), self.n),
            Variant::Augmented { i, j } => {
                format!("aug({i},{j}){}^{}", self.base.name(), self.n)
            }
            Variant::Triangle => format!("st({})", self.n - 1),
        }
    }

    /// Parse the descriptors produced by [`SierpGraph::descriptor`].
    pub fn from_descriptor(text: &str) -> Result<SierpGraph> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("st(") {
            let n: usize = rest
                .strip_suffix(')')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad graph descriptor {text:?}")))?;
            return build_triangle(n);
        }
        if let Some(rest) = text.strip_prefix("aug(") {
            let (args, tail) = rest
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("bad graph descriptor {text:?}")))?;
            let (i, j) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad graph descriptor {text:?}")))?;
            let i: usize = i.trim().parse().map_err(|_| {
                Error::Parse(format!("bad augment endpoint in {text:?}"))
            })?;
            let j: usize = j.trim().parse().map_err(|_| {
                Error::Parse(format!("bad augment endpoint in {text:?}"))
            })?;
            let plain = SierpGraph::from_descriptor(tail)?;
            return build_augmented(&plain, i, j);
        }
        let (base_text, dim_text) = text
            .rsplit_once('^')
            .ok_or_else(|| Error::Parse(format!("bad graph descriptor {text:?}")))?;
        let n: usize = dim_text
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in {text:?}")))?;
        let base = build_base(&BaseSpec::parse(base_text)?)?;
        build_sierpinski(&base, n)
    }
}

impl GraphView for SierpGraph {
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
        if let Some(map) = &self.lookup {
            return map.get(w).map(|&v| v as usize);
        }
        let k = self.base.order();
        if w.len() != self.n || w.symbols().iter().any(|&s| s as usize >= k) {
            return None;
        }
        Some(w.index(k))
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }
}

impl std::fmt::Debug for SierpGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SierpGraph({}, |V|={}, |E|={})",
            self.descriptor(),
            self.vertex_count(),
            self.edge_count
        )
    }
}

fn checked_pow(k: usize, n: usize, budget: usize) -> Result<usize> {
    let mut value: u128 = 1;
    for _ in 0..n {
        value *= k as u128;
        if value > budget as u128 {
            return Err(Error::VertexBudget {
                needed: value,
                budget,
            });
        }
    }
    Ok(value as usize)
}

pub fn build_sierpinski(base: &BaseGraph, n: usize) -> Result<SierpGraph> {
    build_sierpinski_with_budget(base, n, DEFAULT_VERTEX_BUDGET)
}

/// Materialize the dimension-n expansion of the base.
///
/// Edges are generated prefix by prefix: for every prefix w, every edge xy of
/// the base, and every tail length m, the pair {wxy^m, wyx^m} is an edge.
/// Each edge is produced exactly once because the longest common prefix and
/// the base edge identify the triple.
pub fn build_sierpinski_with_budget(
    base: &BaseGraph,
    n: usize,
    budget: usize,
) -> Result<SierpGraph> {
    if n < 1 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let k = base.order();
    let total = checked_pow(k, n, budget)?;

    let mut pow = vec![1usize; n + 1];
    for i in 1..=n {
        pow[i] = pow[i - 1] * k;
    }
    // y^m read as a base-k integer: y * (k^m - 1) / (k - 1).
    let rep = |y: usize, m: usize| -> usize {
        if k == 1 {
            0
        } else {
            y * (pow[m] - 1) / (k - 1)
        }
    };

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); total];
    let mut edge_count = 0usize;
    for prefix_len in 0..n {
        let tail = n - prefix_len - 1;
        for prefix in 0..pow[prefix_len] {
            for &(x, y) in base.edges() {
                let (x, y) = (x as usize, y as usize);
                let u = (prefix * k + x) * pow[tail] + rep(y, tail);
                let v = (prefix * k + y) * pow[tail] + rep(x, tail);
                adj[u].push(v as u32);
                adj[v].push(u as u32);
                edge_count += 1;
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        debug_assert!(list.windows(2).all(|w| w[0] != w[1]));
    }
    if k > 1 {
        debug_assert_eq!(edge_count, base.edges().len() * (total - 1) / (k - 1));
    }

    let words = (0..total).map(|v| Word::from_index(v, k, n)).collect();
    Ok(SierpGraph {
        base: base.clone(),
        n,
        variant: Variant::Plain,
        words,
        adj,
        edge_count,
        lookup: None,
    })
}

/// Add the edge between the extreme vertices i^n and j^n. Defined only for
/// edges ij of the base; at dimension 1 the edge already exists and the
/// graph is unchanged as a simple graph.
pub fn build_augmented(s: &SierpGraph, i: usize, j: usize) -> Result<SierpGraph> {
    if s.variant != Variant::Plain {
        return Err(Error::Precondition(
            "augmentation applies to plain graphs only".into(),
        ));
    }
    if !s.base.has_edge(i, j) {
        return Err(Error::NotABaseEdge { i, j });
    }
    let mut out = s.clone();
    out.variant = Variant::Augmented {
        i: i as u8,
        j: j as u8,
    };
    let u = s.extreme(i)?;
    let v = s.extreme(j)?;
    if !s.has_edge(u, v) {
        let pos_u = out.adj[u].binary_search(&(v as u32)).unwrap_err();
        out.adj[u].insert(pos_u, v as u32);
        let pos_v = out.adj[v].binary_search(&(u as u32)).unwrap_err();
        out.adj[v].insert(pos_v, u as u32);
        out.edge_count += 1;
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    min: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            min: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn unite(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.min[ra as usize] = self.min[ra as usize].min(self.min[rb as usize]);
    }
}

pub fn build_triangle(n: usize) -> Result<SierpGraph> {
    build_triangle_with_budget(n, DEFAULT_VERTEX_BUDGET)
}

/// The dimension-n triangle graph: build the base-3 graph of dimension n+1,
/// contract every edge that lies in no triangle, and keep the quotient as a
/// simple graph. Base-3 graphs are K4-free, so an edge lies in a triangle
/// exactly when its endpoints share a common neighbor.
pub fn build_triangle_with_budget(n: usize, budget: usize) -> Result<SierpGraph> {
    let base = build_base(&BaseSpec::Complete(3))?;
    let host = build_sierpinski_with_budget(&base, n + 1, budget)?;
    let total = host.vertex_count();

    let mut uf = UnionFind::new(total);
    let mut clique_edges: Vec<(u32, u32)> = Vec::new();
    for u in 0..total {
        for &v in host.neighbors(u) {
            if (v as usize) <= u {
                continue;
            }
            let shares_neighbor = {
                let (mut a, mut b) = (host.neighbors(u), host.neighbors(v as usize));
                let mut found = false;
                while let (Some(&x), Some(&y)) = (a.first(), b.first()) {
                    match x.cmp(&y) {
                        std::cmp::Ordering::Less => a = &a[1..],
                        std::cmp::Ordering::Greater => b = &b[1..],
                        std::cmp::Ordering::Equal => {
                            found = true;
                            break;
                        }
                    }
                }
                found
            };
            if shares_neighbor {
                clique_edges.push((u as u32, v));
            } else {
                uf.unite(u as u32, v);
            }
        }
    }

    // Quotient classes keyed by their minimal original vertex, in index order.
    let mut class_of: Vec<u32> = vec![u32::MAX; total];
    let mut words: Vec<Word> = Vec::new();
    let mut order: Vec<u32> = Vec::new();
    for v in 0..total as u32 {
        let root = uf.find(v);
        let min = uf.min[root as usize];
        if min == v {
            class_of[root as usize] = order.len() as u32;
            order.push(v);
            words.push(host.word(v as usize).clone());
        }
    }
    let resolve = |uf: &mut UnionFind, v: u32| -> u32 {
        let root = uf.find(v);
        class_of[root as usize]
    };

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(clique_edges.len());
    for &(u, v) in &clique_edges {
        let cu = resolve(&mut uf, u);
        let cv = resolve(&mut uf, v);
        debug_assert_ne!(cu, cv, "a clique edge collapsed into one class");
        pairs.push((cu.min(cv), cu.max(cv)));
    }
    pairs.sort_unstable();
    pairs.dedup();

    let m = words.len();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); m];
    for &(a, b) in &pairs {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    debug_assert_eq!(m, 3 * (3usize.pow(n as u32) + 1) / 2);

    let lookup = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i as u32))
        .collect();
    Ok(SierpGraph {
        base,
        n: n + 1,
        variant: Variant::Triangle,
        words,
        adj,
        edge_count: pairs.len(),
        lookup: Some(lookup),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> BaseGraph {
        build_base(&BaseSpec::Path(k)).unwrap()
    }

    fn cycle(k: usize) -> BaseGraph {
        build_base(&BaseSpec::Cycle(k)).unwrap()
    }

    #[test]
    fn dimension_one_is_the_base() {
        let g = build_sierpinski(&path(3), 1).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn path3_dim2_cross_edges() {
        let g = build_sierpinski(&path(3), 2).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 8);
        // Cross edges are exactly {01,10} and {12,21}.
        let id = |t: &str| g.vertex_of(&Word::parse(t, 3).unwrap()).unwrap();
        assert!(g.has_edge(id("01"), id("10")));
        assert!(g.has_edge(id("12"), id("21")));
        let cross: usize = (0..9)
            .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v as usize)))
            .filter(|&(u, v)| u < v && g.copy_of(u) != g.copy_of(v))
            .count();
        assert_eq!(cross, 2);
    }

    #[test]
    fn cycle4_dim2_edge_count() {
        let g = build_sierpinski(&cycle(4), 2).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 20);
    }

    #[test]
    fn budget_guard_trips() {
        let err = build_sierpinski_with_budget(&path(10), 7, 1_000_000).unwrap_err();
        assert!(matches!(err, Error::VertexBudget { .. }));
    }

    #[test]
    fn augment_adds_one_extreme_edge() {
        let s = build_sierpinski(&path(3), 2).unwrap();
        let a = build_augmented(&s, 0, 1).unwrap();
        assert_eq!(a.edge_count(), 9);
        let u = a.extreme(0).unwrap();
        let v = a.extreme(1).unwrap();
        assert!(a.has_edge(u, v));
        assert!(!s.has_edge(u, v));
    }

    #[test]
    fn augment_rejects_non_edges_and_collapses_at_dim1() {
        let s = build_sierpinski(&path(3), 2).unwrap();
        assert!(matches!(
            build_augmented(&s, 0, 2),
            Err(Error::NotABaseEdge { i: 0, j: 2 })
        ));
        let s1 = build_sierpinski(&path(3), 1).unwrap();
        let a1 = build_augmented(&s1, 0, 1).unwrap();
        assert_eq!(a1.edge_count(), s1.edge_count());
    }

    #[test]
    fn triangle_small_shapes() {
        let t0 = build_triangle(0).unwrap();
        assert_eq!(t0.vertex_count(), 3);
        assert_eq!(t0.edge_count(), 3);

        let t1 = build_triangle(1).unwrap();
        assert_eq!(t1.vertex_count(), 6);
        assert_eq!(t1.edge_count(), 9);

        let t3 = build_triangle(3).unwrap();
        assert_eq!(t3.vertex_count(), 42);
    }

    #[test]
    fn triangle_vertex_count_formula() {
        for n in 0..=4 {
            let t = build_triangle(n).unwrap();
            assert_eq!(t.vertex_count(), 3 * (3usize.pow(n as u32) + 1) / 2);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["path(3)^2", "cycle(5)^1", "aug(0,1)path(3)^2", "st(2)"] {
            let g = SierpGraph::from_descriptor(text).unwrap();
            assert_eq!(g.descriptor(), text);
        }
        assert!(SierpGraph::from_descriptor("path(3)").is_err());
    }
}
