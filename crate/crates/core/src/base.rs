//! Base graphs: labeled connected undirected graphs on [k] that seed every
//! Sierpinski-type construction.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::MAX_BASE;

/// Descriptor accepted by [`build_base`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    K4MinusE,
    Paw,
    Custom {
        k: usize,
        edges: Vec<(usize, usize)>,
        name: Option<String>,
    },
}

impl BaseSpec {
    /// Parse descriptors of the form `path(4)`, `cycle(9)`, `complete(3)`,
    /// `k4-e`, `paw`.
    pub fn parse(text: &str) -> Result<BaseSpec> {
        let text = text.trim();
        match text {
            "k4-e" => return Ok(BaseSpec::K4MinusE),
            "paw" => return Ok(BaseSpec::Paw),
            _ => {}
        }
        let (head, rest) = text
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("bad base descriptor {text:?}")))?;
        let arg = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad base descriptor {text:?}")))?;
        let k: usize = arg
            .parse()
            .map_err(|_| Error::Parse(format!("bad order in descriptor {text:?}")))?;
        match head {
            "path" => Ok(BaseSpec::Path(k)),
            "cycle" => Ok(BaseSpec::Cycle(k)),
            "complete" => Ok(BaseSpec::Complete(k)),
            _ => Err(Error::Parse(format!("unknown base family {head:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BaseGraph {
    k: usize,
    edges: Vec<(u8, u8)>,
    adj: Vec<Vec<u8>>,
    name: String,
}

pub fn build_base(spec: &BaseSpec) -> Result<BaseGraph> {
    match *spec {
        BaseSpec::Path(k) => {
            if k < 2 {
                return Err(Error::InvalidBase(format!("path needs k >= 2, got {k}")));
            }
            let edges = (0..k - 1).map(|i| (i, i + 1)).collect();
            BaseGraph::new(k, edges, format!("path({k})"))
        }
        BaseSpec::Cycle(k) => {
            if k < 3 {
                return Err(Error::InvalidBase(format!("cycle needs k >= 3, got {k}")));
            }
            let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
            edges.push((k - 1, 0));
            BaseGraph::new(k, edges, format!("cycle({k})"))
        }
        BaseSpec::Complete(k) => {
            if k < 1 {
                return Err(Error::InvalidBase("complete needs k >= 1".into()));
            }
            let mut edges = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    edges.push((i, j));
                }
            }
            BaseGraph::new(k, edges, format!("complete({k})"))
        }
        // K_4 with the edge {0,2} removed; any other choice is isomorphic.
        BaseSpec::K4MinusE => BaseGraph::new(
            4,
            vec![(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)],
            "k4-e".into(),
        ),
        // Triangle {0,1,2} with the pendant 3 attached at 2.
        BaseSpec::Paw => BaseGraph::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)], "paw".into()),
        BaseSpec::Custom {
            k,
            ref edges,
            ref name,
        } => {
            let name = name.clone().unwrap_or_else(|| format!("custom({k})"));
            BaseGraph::new(k, edges.clone(), name)
        }
    }
}

impl BaseGraph {
    pub fn new(k: usize, edges: Vec<(usize, usize)>, name: String) -> Result<BaseGraph> {
        if k == 0 {
            return Err(Error::InvalidBase("order must be positive".into()));
        }
        if k > MAX_BASE {
            return Err(Error::InvalidBase(format!(
                "order {k} exceeds the digit alphabet ({MAX_BASE})"
            )));
        }
        let mut norm: Vec<(u8, u8)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= k || b >= k {
                return Err(Error::InvalidBase(format!(
                    "edge {{{a},{b}}} has an endpoint outside [{k}]"
                )));
            }
            if a == b {
                return Err(Error::InvalidBase(format!("self-loop at {a}")));
            }
            norm.push((a.min(b) as u8, a.max(b) as u8));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::InvalidBase("duplicate edge".into()));
        }
        let mut adj: Vec<Vec<u8>> = vec![Vec::new(); k];
        for &(a, b) in &norm {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = BaseGraph {
            k,
            edges: norm,
            adj,
            name,
        };
        if !g.is_connected() {
            return Err(Error::InvalidBase("graph is not connected".into()));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        if self.k <= 1 {
            return true;
        }
        let mut seen = vec![false; self.k];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push_back(w as usize);
                }
            }
        }
        reached == self.k
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u8] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.k && b < self.k && self.adj[a].binary_search(&(b as u8)).is_ok()
    }

    /// Non-adjacent unordered pairs i < j; the pairs Proposition-style lift
    /// preconditions quantify over.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Relabel by a permutation of [k]; used by equivariance checks.
    pub fn relabeled(&self, perm: &[usize]) -> Result<BaseGraph> {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
            .collect();
        BaseGraph::new(self.k, edges, format!("{}-relabeled", self.name))
    }
}

impl fmt::Debug for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseGraph({}, k={}, m={})", self.name, self.k, self.edges.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_shape() {
        let g = build_base(&BaseSpec::Path(4)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn paw_shape() {
        let g = build_base(&BaseSpec::Paw).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges().len(), 4);
        let mut degs: Vec<usize> = (0..4).map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 2, 2, 3]);
    }

    #[test]
    fn k4_minus_e_shape() {
        let g = build_base(&BaseSpec::K4MinusE).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges().len(), 5);
        let non_adjacent: Vec<_> = g.non_edges();
        assert_eq!(non_adjacent, vec![(0, 2)]);
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(build_base(&BaseSpec::Path(1)).is_err());
        assert!(build_base(&BaseSpec::Cycle(2)).is_err());
        let bad = BaseSpec::Custom {
            k: 3,
            edges: vec![(0, 1), (1, 1)],
            name: None,
        };
        assert!(build_base(&bad).is_err());
        let dup = BaseSpec::Custom {
            k: 3,
            edges: vec![(0, 1), (1, 0), (1, 2)],
            name: None,
        };
        assert!(build_base(&dup).is_err());
        let disconnected = BaseSpec::Custom {
            k: 4,
            edges: vec![(0, 1), (2, 3)],
            name: None,
        };
        assert!(build_base(&disconnected).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["path(4)", "cycle(9)", "complete(3)", "k4-e", "paw"] {
            let spec = BaseSpec::parse(text).unwrap();
            let g = build_base(&spec).unwrap();
            assert_eq!(g.name(), text);
        }
        assert!(BaseSpec::parse("grid(3)").is_err());
    }
}
