//! Sierpinski-type graphs and their packing colorings: construction,
//! verification, lifting, explicit colorings, and exact packing chromatic
//! numbers via a CNF encoding with an embedded complete solver.

#![forbid(unsafe_code)]

pub mod base;
pub mod chirho;
pub mod cnf;
pub mod coloring;
pub mod dist;
pub mod error;
pub mod graph_io;
pub mod lift;
pub mod sierp;
pub mod solver;
pub mod verify;
pub mod word;

pub use base::{build_base, BaseGraph, BaseSpec};
pub use chirho::{
    chi_rho_exact, solve, CandidateStatus, ChiRhoOptions, ChiRhoOutcome, SolveBudget, SolveResult,
};
pub use cnf::{
    add_assumptions, decode_model, encode_extendable, encode_packing, model_from_lits,
    read_dimacs, read_model_lines, write_dimacs, CnfInstance, EncodingKind,
};
pub use coloring::Coloring;
pub use dist::{copy_distance, distances_from, DistanceTable};
pub use error::{Error, Result};
pub use graph_io::{read_edge_list, write_edge_list, LabeledGraph};
pub use lift::{check_lift_precondition, lift, CopyDistanceCheck};
pub use sierp::{
    build_augmented, build_sierpinski, build_sierpinski_with_budget, build_triangle,
    build_triangle_with_budget, GraphView, SierpGraph, Variant, DEFAULT_VERTEX_BUDGET,
};
pub use verify::{
    find_violations, verify_extendable, verify_extendable_on, verify_packing, ExtendVerdict,
    Verdict, Violation,
};
pub use word::Word;
