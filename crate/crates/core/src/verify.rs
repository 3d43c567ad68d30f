//! Packing-coloring verification.
//!
//! A coloring is a packing coloring when every color class X_i has pairwise
//! distance greater than i. The checker runs one truncated BFS per vertex,
//! radius equal to its color, and reports the first offending pair in vertex
//! order (or all of them when asked).

use crate::base::BaseGraph;
use crate::coloring::Coloring;
use crate::dist::Bfs;
use crate::error::{Error, Result};
use crate::sierp::{build_sierpinski_with_budget, GraphView, SierpGraph, DEFAULT_VERTEX_BUDGET};

/// Two same-colored vertices too close together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub color: u32,
    pub distance: usize,
}

impl Violation {
    pub fn describe(&self, g: &impl GraphView) -> String {
        format!(
            "vertices {} and {} share color {} at distance {}",
            g.word(self.u),
            g.word(self.v),
            self.color,
            self.distance
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_total(g: &impl GraphView, f: &Coloring) -> Result<()> {
    if f.len() != g.vertex_count() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            f.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn verify_packing(g: &impl GraphView, f: &Coloring) -> Result<Verdict> {
    let mut found = find_violations(g, f, 1)?;
    Ok(match found.pop() {
        None => Verdict::Valid,
        Some(v) => Verdict::Invalid(v),
    })
}

/// Collect up to `limit` violations in deterministic vertex order. Each
/// offending unordered pair is reported once, oriented as discovered.
pub fn find_violations(g: &impl GraphView, f: &Coloring, limit: usize) -> Result<Vec<Violation>> {
    check_total(g, f)?;
    let mut bfs = Bfs::new(g.vertex_count());
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        if out.len() >= limit {
            break;
        }
        let color = f.color(u);
        bfs.run(g, u, color as usize);
        for &w in &bfs.reached {
            let w = w as usize;
            if w == u || f.color(w) != color {
                continue;
            }
            let distance = bfs.dist[w] as usize;
            // Each pair surfaces from both endpoints; keep the u < w copy so
            // the scan from the smaller vertex is the one that reports it.
            if w < u {
                continue;
            }
            out.push(Violation {
                u,
                v: w,
                color,
                distance,
            });
            if out.len() >= limit {
                break;
            }
        }
    }
    Ok(out)
}

/// Verdict of the extendability check: the coloring must stay a packing
/// coloring in every single-edge augmentation of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendVerdict {
    Valid,
    PlainInvalid(Violation),
    AugmentedInvalid {
        i: usize,
        j: usize,
        violation: Violation,
    },
}

impl ExtendVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ExtendVerdict::Valid)
    }
}

/// Check extendability on a materialized plain graph.
///
/// The plain graph is verified in full. For each base edge ij, any new
/// violation in the augmented graph must route through the added edge
/// {i^n, j^n}, so a path of length d(u, i^n) + 1 + d(j^n, v) bounds the
/// augmented distance; scanning the two truncated balls around the extreme
/// vertices covers every such pair without re-verifying the whole graph.
pub fn verify_extendable_on(s: &SierpGraph, f: &Coloring) -> Result<ExtendVerdict> {
    check_total(s, f)?;
    if let Verdict::Invalid(v) = verify_packing(s, f)? {
        return Ok(ExtendVerdict::PlainInvalid(v));
    }
    let c = f.num_colors() as usize;
    if s.dim() == 1 || c < 1 {
        // At dimension 1 every augmented edge already exists.
        return Ok(ExtendVerdict::Valid);
    }

    let mut ball_i = Bfs::new(s.vertex_count());
    let mut ball_j = Bfs::new(s.vertex_count());
    for &(bi, bj) in s.base().edges() {
        let (bi, bj) = (bi as usize, bj as usize);
        let ei = s.extreme(bi)?;
        let ej = s.extreme(bj)?;
        ball_i.run(s, ei, c - 1);
        ball_j.run(s, ej, c - 1);
        for &u in &ball_i.reached {
            let u = u as usize;
            let color = f.color(u);
            let du = ball_i.dist[u] as usize;
            if du + 1 > color as usize {
                continue;
            }
            for &v in &ball_j.reached {
                let v = v as usize;
                if v == u || f.color(v) != color {
                    continue;
                }
                let through = du + 1 + ball_j.dist[v] as usize;
                if through <= color as usize {
                    return Ok(ExtendVerdict::AugmentedInvalid {
                        i: bi,
                        j: bj,
                        violation: Violation {
                            u,
                            v,
                            color,
                            distance: through,
                        },
                    });
                }
            }
        }
    }
    Ok(ExtendVerdict::Valid)
}

/// Build the dimension-ell graph of the base and check extendability there.
pub fn verify_extendable(base: &BaseGraph, ell: usize, f: &Coloring) -> Result<ExtendVerdict> {
    let s = build_sierpinski_with_budget(base, ell, DEFAULT_VERTEX_BUDGET)?;
    verify_extendable_on(&s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::sierp::{build_augmented, build_sierpinski};
    use crate::word::Word;

    fn p3_dim2() -> SierpGraph {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        build_sierpinski(&base, 2).unwrap()
    }

    /// The explicit 3-coloring of the dimension-2 path-3 graph.
    fn p3_dim2_coloring(g: &SierpGraph) -> Coloring {
        let mut colors = vec![1u32; 9];
        for (text, color) in [("01", 2), ("21", 2), ("11", 3)] {
            let v = g.vertex_of(&Word::parse(text, 3).unwrap()).unwrap();
            colors[v] = color;
        }
        Coloring::new(g.descriptor(), colors, 3).unwrap()
    }

    #[test]
    fn explicit_three_coloring_is_valid() {
        let g = p3_dim2();
        let f = p3_dim2_coloring(&g);
        assert!(verify_packing(&g, &f).unwrap().is_valid());
    }

    #[test]
    fn adjacent_ones_are_flagged() {
        let base = build_base(&BaseSpec::Path(2)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let f = Coloring::new(g.descriptor(), vec![1, 1], 1).unwrap();
        let verdict = verify_packing(&g, &f).unwrap();
        assert_eq!(
            verdict,
            Verdict::Invalid(Violation {
                u: 0,
                v: 1,
                color: 1,
                distance: 1
            })
        );
    }

    #[test]
    fn partial_coloring_is_an_error_not_a_violation() {
        let g = p3_dim2();
        let short = Coloring::new("x", vec![1, 1], 1).unwrap();
        assert!(verify_packing(&g, &short).is_err());
    }

    #[test]
    fn explicit_three_coloring_is_extendable() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = p3_dim2();
        let f = p3_dim2_coloring(&g);
        assert!(verify_extendable(&base, 2, &f).unwrap().is_valid());
    }

    #[test]
    fn extreme_pair_of_ones_fails_extendability() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = p3_dim2();
        // Color both 00 and 11 with 1: valid in the plain graph only until
        // the augmented edge {00,11} makes them adjacent.
        let mut colors = vec![0u32; 9];
        let seq: Vec<(&str, u32)> = vec![
            ("00", 1),
            ("01", 2),
            ("02", 3),
            ("10", 4),
            ("11", 1),
            ("12", 5),
            ("20", 6),
            ("21", 7),
            ("22", 2),
        ];
        for (text, color) in seq {
            let v = g.vertex_of(&Word::parse(text, 3).unwrap()).unwrap();
            colors[v] = color;
        }
        let f = Coloring::new(g.descriptor(), colors, 7).unwrap();
        assert!(verify_packing(&g, &f).unwrap().is_valid());
        let verdict = verify_extendable(&base, 2, &f).unwrap();
        match verdict {
            ExtendVerdict::AugmentedInvalid { i, j, violation } => {
                assert_eq!((i, j), (0, 1));
                assert_eq!(violation.color, 1);
                assert_eq!(violation.distance, 1);
            }
            other => panic!("expected an augmented violation, got {other:?}"),
        }
    }

    /// Incremental extendability agrees with verifying each augmented graph
    /// in full.
    #[test]
    fn incremental_matches_full_augmented_verification() {
        let base = build_base(&BaseSpec::Cycle(5)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        // A handful of deterministic colorings, mostly invalid.
        for salt in 0..12u32 {
            let colors: Vec<u32> = (0..g.vertex_count())
                .map(|v| 1 + ((v as u32 * 7 + salt * 13) % 5))
                .collect();
            let f = Coloring::new(g.descriptor(), colors, 5).unwrap();
            let fast = verify_extendable_on(&g, &f).unwrap().is_valid();
            let mut slow = verify_packing(&g, &f).unwrap().is_valid();
            if slow {
                for &(i, j) in base.edges() {
                    let aug = build_augmented(&g, i as usize, j as usize).unwrap();
                    if !verify_packing(&aug, &f).unwrap().is_valid() {
                        slow = false;
                        break;
                    }
                }
            }
            assert_eq!(fast, slow, "salt {salt}");
        }
    }
}
