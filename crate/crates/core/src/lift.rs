//! Lifting an extendable packing coloring to higher dimensions.
//!
//! An extendable packing c-coloring of the dimension-l graph extends to every
//! higher dimension by repeating it on each dimension-l copy, provided the
//! copies of non-adjacent base vertices sit farther apart than c in the
//! dimension-(l+1) graph. Both halves of that precondition are checked here,
//! never assumed.

use crate::base::BaseGraph;
use crate::coloring::Coloring;
use crate::dist::copy_distance;
use crate::error::{Error, Result};
use crate::sierp::{build_sierpinski_with_budget, GraphView, SierpGraph, DEFAULT_VERTEX_BUDGET};
use crate::verify::{verify_extendable_on, verify_packing, ExtendVerdict, Verdict};

/// Result of the copy-distance precondition check: one entry per
/// non-adjacent base pair, each with its measured separation.
#[derive(Clone, Debug)]
pub struct CopyDistanceCheck {
    pub c: u32,
    pub pairs: Vec<(usize, usize, usize)>,
    pub holds: bool,
}

pub fn check_lift_precondition(base: &BaseGraph, ell: usize, c: u32) -> Result<CopyDistanceCheck> {
    check_lift_precondition_with_budget(base, ell, c, DEFAULT_VERTEX_BUDGET)
}

/// Measure the separation of every non-adjacent pair of copies in the
/// dimension-(ell+1) graph. A budget overrun is reported as such rather than
/// guessed around.
pub fn check_lift_precondition_with_budget(
    base: &BaseGraph,
    ell: usize,
    c: u32,
    budget: usize,
) -> Result<CopyDistanceCheck> {
    if ell < 1 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let s = build_sierpinski_with_budget(base, ell + 1, budget).map_err(|e| match e {
        Error::VertexBudget { needed, budget } => Error::Precondition(format!(
            "not checkable at budget: dimension {} needs {needed} vertices, budget {budget}",
            ell + 1
        )),
        other => other,
    })?;
    let mut pairs = Vec::new();
    let mut holds = true;
    for (i, j) in base.non_edges() {
        let d = copy_distance(&s, i, j)?;
        if d <= c as usize {
            holds = false;
        }
        pairs.push((i, j, d));
    }
    Ok(CopyDistanceCheck { c, pairs, holds })
}

pub fn lift(base: &BaseGraph, ell: usize, f: &Coloring, n: usize) -> Result<(SierpGraph, Coloring)> {
    lift_with_budget(base, ell, f, n, DEFAULT_VERTEX_BUDGET)
}

/// Repeat the coloring of the dimension-ell graph across every copy inside
/// the dimension-n graph. The extendability and copy-distance preconditions
/// are verified first, and the lifted coloring is re-verified before being
/// returned.
pub fn lift_with_budget(
    base: &BaseGraph,
    ell: usize,
    f: &Coloring,
    n: usize,
    budget: usize,
) -> Result<(SierpGraph, Coloring)> {
    if n <= ell {
        return Err(Error::Precondition(format!(
            "target dimension {n} must exceed the seed dimension {ell}"
        )));
    }
    let seed_graph = build_sierpinski_with_budget(base, ell, budget)?;
    match verify_extendable_on(&seed_graph, f)? {
        ExtendVerdict::Valid => {}
        ExtendVerdict::PlainInvalid(v) => {
            return Err(Error::Precondition(format!(
                "seed is not a packing coloring: {}",
                v.describe(&seed_graph)
            )))
        }
        ExtendVerdict::AugmentedInvalid { i, j, violation } => {
            return Err(Error::Precondition(format!(
                "seed is not extendable: augmented edge ({i},{j}): {}",
                violation.describe(&seed_graph)
            )))
        }
    }
    let check = check_lift_precondition_with_budget(base, ell, f.num_colors(), budget)?;
    if !check.holds {
        let bad = check
            .pairs
            .iter()
            .filter(|&&(_, _, d)| d <= f.num_colors() as usize)
            .map(|&(i, j, d)| format!("({i},{j}) at distance {d}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Precondition(format!(
            "copy distances do not exceed c={}: {bad}",
            f.num_colors()
        )));
    }

    let target = build_sierpinski_with_budget(base, n, budget)?;
    let k = base.order();
    let block = k.pow(ell as u32);
    let colors: Vec<u32> = (0..target.vertex_count())
        .map(|v| f.color(v % block))
        .collect();
    let lifted = Coloring::new(target.descriptor(), colors, f.num_colors())?;
    match verify_packing(&target, &lifted)? {
        Verdict::Valid => Ok((target, lifted)),
        Verdict::Invalid(v) => Err(Error::Verification(format!(
            "lifted coloring failed verification: {}",
            v.describe(&target)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::sierp::build_sierpinski;
    use crate::word::Word;

    fn p3() -> BaseGraph {
        build_base(&BaseSpec::Path(3)).unwrap()
    }

    fn p3_dim2_coloring() -> Coloring {
        let g = build_sierpinski(&p3(), 2).unwrap();
        let mut colors = vec![1u32; 9];
        for (text, color) in [("01", 2), ("21", 2), ("11", 3)] {
            let v = g.vertex_of(&Word::parse(text, 3).unwrap()).unwrap();
            colors[v] = color;
        }
        Coloring::new(g.descriptor(), colors, 3).unwrap()
    }

    #[test]
    fn precondition_holds_for_path3() {
        let check = check_lift_precondition(&p3(), 2, 3).unwrap();
        assert!(check.holds);
        assert_eq!(check.pairs, vec![(0, 2, 8)]);
    }

    #[test]
    fn precondition_vacuous_for_complete_base() {
        let k3 = build_base(&BaseSpec::Complete(3)).unwrap();
        let check = check_lift_precondition(&k3, 2, 9).unwrap();
        assert!(check.holds);
        assert!(check.pairs.is_empty());
    }

    #[test]
    fn precondition_holds_for_path4_at_c5() {
        let p4 = build_base(&BaseSpec::Path(4)).unwrap();
        let check = check_lift_precondition(&p4, 2, 5).unwrap();
        assert!(check.holds);
        assert_eq!(check.pairs.len(), 3);
        for &(_, _, d) in &check.pairs {
            assert!(d > 5);
        }
    }

    #[test]
    fn lift_path3_to_dim3_verifies() {
        let (g, lifted) = lift(&p3(), 2, &p3_dim2_coloring(), 3).unwrap();
        assert_eq!(g.vertex_count(), 27);
        assert_eq!(lifted.max_used(), 3);
        assert!(verify_packing(&g, &lifted).unwrap().is_valid());
    }

    #[test]
    fn lift_requires_a_strictly_larger_dimension() {
        let err = lift(&p3(), 2, &p3_dim2_coloring(), 2).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
