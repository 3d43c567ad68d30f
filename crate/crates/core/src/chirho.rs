//! Exact packing chromatic number search: ascend over the color count,
//! solving one CNF instance per candidate, until an UNSAT/SAT boundary pins
//! the value. Budget exhaustion leaves an honest bracket instead.

use std::time::Instant;

use crate::cnf::{decode_model, encode_packing_with_budget, CnfInstance, DEFAULT_CLAUSE_BUDGET};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::sierp::GraphView;
use crate::solver::{SolveStatus, Solver, SolverStats};
use crate::verify::{verify_packing, Verdict};

/// Work limits for one solver run.
#[derive(Clone, Copy, Debug)]
pub struct SolveBudget {
    pub max_conflicts: Option<u64>,
}

impl SolveBudget {
    pub const UNLIMITED: SolveBudget = SolveBudget {
        max_conflicts: None,
    };

    pub fn conflicts(n: u64) -> SolveBudget {
        SolveBudget {
            max_conflicts: Some(n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub model: Option<Vec<bool>>,
    pub stats: SolverStats,
    pub seconds: f64,
}

/// Solve an instance with the embedded solver. A `Sat` answer always carries
/// a model that has been re-checked against every clause.
pub fn solve(inst: &CnfInstance, budget: SolveBudget) -> SolveResult {
    let start = Instant::now();
    let mut solver = Solver::new(inst.num_vars);
    for clause in &inst.clauses {
        solver.add_clause_dimacs(clause);
    }
    let status = solver.solve(budget.max_conflicts);
    let model = match status {
        SolveStatus::Sat => {
            let m = solver.model();
            assert!(
                inst.check_model(&m),
                "solver returned a model that fails the independent clause check"
            );
            Some(m)
        }
        _ => None,
    };
    SolveResult {
        status,
        model,
        stats: solver.stats,
        seconds: start.elapsed().as_secs_f64(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct ChiRhoOptions {
    /// First candidate color count to try.
    pub c_min: u32,
    /// Last candidate color count to try.
    pub c_max: u32,
    pub budget: SolveBudget,
    pub clause_budget: usize,
}

impl ChiRhoOptions {
    pub fn up_to(c_max: u32) -> ChiRhoOptions {
        ChiRhoOptions {
            c_min: 1,
            c_max,
            budget: SolveBudget::UNLIMITED,
            clause_budget: DEFAULT_CLAUSE_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: SolveBudget) -> ChiRhoOptions {
        self.budget = budget;
        self
    }

    pub fn starting_at(mut self, c_min: u32) -> ChiRhoOptions {
        self.c_min = c_min;
        self
    }
}

#[derive(Clone, Debug)]
pub struct ChiRhoOutcome {
    /// Per-candidate statuses in the order tried.
    pub statuses: Vec<(u32, CandidateStatus)>,
    /// Exact value, when UNSAT at value-1 (or value == c_min == 1) and SAT at
    /// value are both established.
    pub value: Option<u32>,
    /// Largest proven-UNSAT candidate plus one; equals `c_min` when nothing
    /// was refuted. Only a proven bound if `c_min` itself was.
    pub lower: u32,
    /// Least satisfiable candidate found, with its verified coloring.
    pub upper: Option<u32>,
    pub coloring: Option<Coloring>,
}

impl ChiRhoOutcome {
    pub fn bracket(&self) -> (u32, Option<u32>) {
        (self.lower, self.upper)
    }
}

/// Ascending search for the packing chromatic number.
///
/// SAT at c implies SAT at c+1 (pad with unused colors), so the first SAT
/// candidate is the least one and every UNSAT below it is consistent. Every
/// SAT model is decoded and re-verified against the graph by the independent
/// packing checker before it is trusted.
pub fn chi_rho_exact(
    g: &impl GraphView,
    graph_desc: &str,
    opts: &ChiRhoOptions,
) -> Result<ChiRhoOutcome> {
    if opts.c_min < 1 || opts.c_max < opts.c_min {
        return Err(Error::Precondition(format!(
            "bad color range {}..={}",
            opts.c_min, opts.c_max
        )));
    }
    let mut statuses = Vec::new();
    let mut lower = opts.c_min;
    let mut upper = None;
    let mut coloring = None;

    for c in opts.c_min..=opts.c_max {
        let inst = encode_packing_with_budget(g, graph_desc, c, opts.clause_budget)?;
        let result = solve(&inst, opts.budget);
        match result.status {
            SolveStatus::Unsat => {
                statuses.push((c, CandidateStatus::Unsat));
                lower = c + 1;
            }
            SolveStatus::Sat => {
                statuses.push((c, CandidateStatus::Sat));
                let f = decode_model(&inst, result.model.as_ref().unwrap())?;
                match verify_packing(g, &f)? {
                    Verdict::Valid => {}
                    Verdict::Invalid(v) => {
                        return Err(Error::Verification(format!(
                            "decoded model fails the packing check: {}",
                            v.describe(g)
                        )))
                    }
                }
                upper = Some(c);
                coloring = Some(f);
                break;
            }
            SolveStatus::Unknown => {
                statuses.push((c, CandidateStatus::Unknown));
            }
        }
    }

    let value = match upper {
        Some(u) if u == opts.c_min && opts.c_min == 1 => Some(u),
        Some(u)
            if statuses
                .iter()
                .any(|&(c, s)| c + 1 == u && s == CandidateStatus::Unsat) =>
        {
            Some(u)
        }
        _ => None,
    };
    Ok(ChiRhoOutcome {
        statuses,
        value,
        lower,
        upper,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{build_base, BaseSpec};
    use crate::cnf::encode_packing;
    use crate::sierp::build_sierpinski;

    #[test]
    fn path3_dim2_needs_three_colors() {
        let base = build_base(&BaseSpec::Path(3)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();

        let two = encode_packing(&g, &g.descriptor(), 2).unwrap();
        assert_eq!(solve(&two, SolveBudget::UNLIMITED).status, SolveStatus::Unsat);

        let outcome = chi_rho_exact(&g, &g.descriptor(), &ChiRhoOptions::up_to(5)).unwrap();
        assert_eq!(outcome.value, Some(3));
        assert_eq!(outcome.lower, 3);
        assert_eq!(outcome.upper, Some(3));
        assert!(outcome.coloring.is_some());
    }

    #[test]
    fn single_vertex_needs_one() {
        let base = build_base(&BaseSpec::Complete(1)).unwrap();
        let g = build_sierpinski(&base, 1).unwrap();
        let outcome = chi_rho_exact(&g, &g.descriptor(), &ChiRhoOptions::up_to(3)).unwrap();
        assert_eq!(outcome.value, Some(1));
    }

    #[test]
    fn value_withheld_when_boundary_not_proven(){
        let base = build_base(&BaseSpec::Path(4)).unwrap();
        let g = build_sierpinski(&base, 2).unwrap();
        // Starting above 1 without a proven floor: value requires UNSAT at
        // c-1, which a c_min at the true value cannot supply.
        let opts = ChiRhoOptions::up_to(6).starting_at(4);
        let outcome = chi_rho_exact(&g, &g.descriptor(), &opts).unwrap();
        assert_eq!(outcome.upper, Some(4));
        assert_eq!(outcome.value, None);
    }
}
