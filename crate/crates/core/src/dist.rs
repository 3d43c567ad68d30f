//! Truncated breadth-first distance queries.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::sierp::{GraphView, SierpGraph, Variant};

/// Distances from one source, cut off at a radius.
pub struct DistanceTable {
    source: usize,
    radius: usize,
    dist: Vec<u32>,
    reached: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl DistanceTable {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        match self.dist.get(v) {
            Some(&d) if d != UNSEEN => Some(d as usize),
            _ => None,
        }
    }

    /// Reached vertices with distances, in breadth-first order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.reached
            .iter()
            .map(move |&v| (v as usize, self.dist[v as usize] as usize))
    }

    pub fn len(&self) -> usize {
        self.reached.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reached.is_empty()
    }
}

pub fn distances_from(g: &impl GraphView, source: usize, radius: usize) -> Result<DistanceTable> {
    if source >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{source}")));
    }
    if radius < 1 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    let mut bfs = Bfs::new(g.vertex_count());
    bfs.run(g, source, radius);
    Ok(DistanceTable {
        source,
        radius,
        dist: bfs.dist,
        reached: bfs.reached,
    })
}

/// Reusable truncated-BFS scratch space; one allocation per graph size.
pub(crate) struct Bfs {
    pub dist: Vec<u32>,
    pub reached: Vec<u32>,
    queue: VecDeque<u32>,
}

impl Bfs {
    pub fn new(n: usize) -> Bfs {
        Bfs {
            dist: vec![UNSEEN; n],
            reached: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Fill `dist` for every vertex within `radius` of `source`; leaves the
    /// reached list in breadth-first order. Clears previous state first.
    pub fn run(&mut self, g: &impl GraphView, source: usize, radius: usize) {
        for &v in &self.reached {
            self.dist[v as usize] = UNSEEN;
        }
        self.reached.clear();
        self.queue.clear();

        self.dist[source] = 0;
        self.reached.push(source as u32);
        self.queue.push_back(source as u32);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            if du as usize >= radius {
                continue;
            }
            for &v in g.neighbors(u as usize) {
                if self.dist[v as usize] == UNSEEN {
                    self.dist[v as usize] = du + 1;
                    self.reached.push(v);
                    self.queue.push_back(v);
                }
            }
        }
    }

}

/// Minimum distance between the copies iS^{n-1} and jS^{n-1} inside a plain
/// graph of dimension n: multi-source BFS out of copy i until copy j is hit.
pub fn copy_distance(s: &SierpGraph, i: usize, j: usize) -> Result<usize> {
    if s.variant() != Variant::Plain {
        return Err(Error::Precondition(
            "copy distance is defined on plain graphs".into(),
        ));
    }
    let k = s.base().order();
    if i == j {
        return Err(Error::Precondition("copies must be distinct".into()));
    }
    if i >= k || j >= k {
        return Err(Error::Precondition(format!(
            "copy index out of range: {i} or {j} not in [{k}]"
        )));
    }

    let total = s.vertex_count();
    let mut dist = vec![UNSEEN; total];
    let mut queue = VecDeque::new();
    for v in 0..total {
        if s.copy_of(v) == i as u8 {
            dist[v] = 0;
            queue.push_back(v as u32);
        }
    }
    while let Some(u) = queue.pop_front() {
        if s.copy_of(u as usize) == j as u8 {
            return Ok(dist[u as usize] as usize);
        }
        for &v in s.neighbors(u as usize) {
            if dist[v as usize] == UNSEEN {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    Err(Error::Precondition(format!(
        "copy {j} unreachable from copy {i}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::sierp::build_sierpinski;
    use crate::word::Word;

    #[test]
    fn distances_on_the_dim2_caterpillar() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        let src = g.vertex_of(&Word::parse("00", 3).unwrap()).unwrap();
        let far = g.vertex_of(&Word::parse("22", 3).unwrap()).unwrap();
        let table = distances_from(&g, src, 6).unwrap();
        assert_eq!(table.get(far), Some(6));
        assert_eq!(table.get(src), Some(0));
    }

    #[test]
    fn radius_truncates() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        let src = g.vertex_of(&Word::parse("00", 3).unwrap()).unwrap();
        let far = g.vertex_of(&Word::parse("22", 3).unwrap()).unwrap();
        let table = distances_from(&g, src, 5).unwrap();
        assert_eq!(table.get(far), None);
        assert!(table.entries().all(|(_, d)| d <= 5));
    }

    #[test]
    fn cycle_distance_at_dim1() {
        let base = build_base(&BaseSpec::Cycle(5)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let table = distances_from(&g, 0, 2).unwrap();
        assert_eq!(table.get(2), Some(2));
        assert_eq!(table.get(3), Some(2));
    }

    #[test]
    fn rejects_unknown_source() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        assert!(distances_from(&g, 99, 2).is_err());
    }

    #[test]
    fn copy_distances_match_hand_routes() {
        let p3 = build_base(&BaseSpec::Path(3)).unwrap();
        let s2 = build_sierpinski(&p3, 2).unwrap();
        assert_eq!(copy_distance(&s2, 0, 1).unwrap(), 1);

        let s3 = build_sierpinski(&p3, 3).unwrap();
        assert_eq!(copy_distance(&s3, 0, 2).unwrap(), 8);

        let p4 = build_base(&BaseSpec::Path(4)).unwrap();
        let s2p4 = build_sierpinski(&p4, 2).unwrap();
        assert_eq!(copy_distance(&s2p4, 0, 2).unwrap(), 4);

        assert!(copy_distance(&s2, 1, 1).is_err());
    }
}
