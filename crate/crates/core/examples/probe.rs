//! Rough timing probe for the solver on the target instances.
//! Run: cargo run --release -p sierpack --example probe -- <case>

use std::time::Instant;

use sierpack::{
    build_base, build_sierpinski, build_triangle, chirho::solve, encode_packing, BaseSpec,
    GraphView, SolveBudget,
};

fn probe(desc: &str, g: &impl GraphView, c: u32, budget: Option<u64>) {
    let inst = encode_packing(g, desc, c).unwrap();
    let start = Instant::now();
    let result = solve(
        &inst,
        SolveBudget {
            max_conflicts: budget,
        },
    );
    println!(
        "{desc} c={c}: {:?} in {:.2}s ({} conflicts, {} vars, {} clauses)",
        result.status,
        start.elapsed().as_secs_f64(),
        result.stats.conflicts,
        inst.num_vars,
        inst.clauses.len()
    );
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let case = args.first().map(String::as_str).unwrap_or("all");

    if case == "k4e" || case == "all" {
        let k4e = build_base(&BaseSpec::K4MinusE).unwrap();
        let s2 = build_sierpinski(&k4e, 2).unwrap();
        probe("S2_k4e", &s2, 5, None);
        probe("S2_k4e", &s2, 6, None);
        let s3 = build_sierpinski(&k4e, 3).unwrap();
        probe("S3_k4e", &s3, 7, Some(3_000_000));
        probe("S3_k4e", &s3, 8, Some(3_000_000));
    }
    if case == "paw" || case == "all" {
        let paw = build_base(&BaseSpec::Paw).unwrap();
        let s3 = build_sierpinski(&paw, 3).unwrap();
        probe("S3_paw", &s3, 6, Some(3_000_000));
        probe("S3_paw", &s3, 7, Some(3_000_000));
    }
    if case == "cycles" || case == "all" {
        for k in [9usize, 11, 13] {
            let ck = build_base(&BaseSpec::Cycle(k)).unwrap();
            let s2 = build_sierpinski(&ck, 2).unwrap();
            probe(&format!("S2_C{k}"), &s2, 4, Some(3_000_000));
            probe(&format!("S2_C{k}"), &s2, 5, Some(3_000_000));
        }
        let c5 = build_base(&BaseSpec::Cycle(5)).unwrap();
        let s2 = build_sierpinski(&c5, 2).unwrap();
        probe("S2_C5", &s2, 5, None);
        probe("S2_C5", &s2, 6, None);
    }
    if case == "cycles3" || case == "all" {
        for k in [4usize, 6, 7] {
            let ck = build_base(&BaseSpec::Cycle(k)).unwrap();
            let s3 = build_sierpinski(&ck, 3).unwrap();
            probe(&format!("S3_C{k}"), &s3, if k == 4 { 4 } else { 5 }, Some(3_000_000));
            probe(&format!("S3_C{k}"), &s3, if k == 4 { 5 } else { 6 }, Some(3_000_000));
        }
    }
    if case == "triangle" || case == "all" {
        let t2 = build_triangle(2).unwrap();
        probe("ST2", &t2, 7, None);
        probe("ST2", &t2, 8, None);
        let t3 = build_triangle(3).unwrap();
        probe("ST3", &t3, 11, Some(5_000_000));
        probe("ST3", &t3, 12, Some(5_000_000));
    }
    if case == "paths" {
        let p4 = build_base(&BaseSpec::Path(4)).unwrap();
        let s3 = build_sierpinski(&p4, 3).unwrap();
        probe("S3_P4", &s3, 4, None);
        probe("S3_P4", &s3, 5, None);
    }
    if case == "k4e4" {
        let k4e = build_base(&BaseSpec::K4MinusE).unwrap();
        let s4 = build_sierpinski(&k4e, 4).unwrap();
        probe("S4_k4e", &s4, 9, Some(10_000_000));
        probe("S4_k4e", &s4, 8, Some(10_000_000));
    }
}
