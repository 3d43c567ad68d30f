//! Embedded complete SAT solver: conflict-driven clause learning with
//! two-watched-literal propagation, first-UIP learning with deep clause
//! minimization, activity-ordered decisions, phase saving, Luby restarts,
//! and glue-aware learnt-clause reduction.
//!
//! The solver is fully deterministic: no randomization anywhere, ties in the
//! decision order broken by variable index. UNSAT answers come from the
//! complete search itself; budget exhaustion is reported as `Unknown`, never
//! mislabeled.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Lit(u32);

impl Lit {
    fn new(var: usize, positive: bool) -> Lit {
        Lit(((var as u32) << 1) | (!positive as u32))
    }

    pub(crate) fn from_dimacs(x: i32) -> Lit {
        debug_assert!(x != 0);
        Lit::new((x.unsigned_abs() - 1) as usize, x > 0)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn is_pos(self) -> bool {
        self.0 & 1 == 0
    }

    fn neg(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Value {
    True,
    False,
    Undef,
}

struct Clause {
    lits: Vec<Lit>,
    activity: f32,
    lbd: u32,
    learnt: bool,
    dead: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

const NO_REASON: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Unknown,
}

/// Max-heap over variables keyed by activity, ties to the smaller index.
struct VarOrder {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarOrder {
    fn new(n: usize) -> VarOrder {
        VarOrder {
            heap: (0..n as u32).collect(),
            pos: (0..n as i32).collect(),
        }
    }

    fn better(a: u32, b: u32, act: &[f64]) -> bool {
        let (aa, ab) = (act[a as usize], act[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if Self::better(self.heap[i], self.heap[parent], act) {
                self.heap.swap(i, parent);
                self.pos[self.heap[i] as usize] = i as i32;
                self.pos[self.heap[parent] as usize] = parent as i32;
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let mut child = left;
            if right < self.heap.len() && Self::better(self.heap[right], self.heap[left], act) {
                child = right;
            }
            if Self::better(self.heap[child], self.heap[i], act) {
                self.heap.swap(i, child);
                self.pos[self.heap[i] as usize] = i as i32;
                self.pos[self.heap[child] as usize] = child as i32;
                i = child;
            } else {
                break;
            }
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.pos[v as usize] >= 0 {
            return;
        }
        self.pos[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        let p = self.pos[v as usize];
        if p >= 0 {
            self.sift_up(p as usize, act);
        }
    }
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    values: Vec<Value>,
    levels: Vec<u32>,
    reasons: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    order: VarOrder,
    polarity: Vec<bool>,
    ok: bool,
    cla_inc: f32,
    seen: Vec<bool>,
    analyze_toclear: Vec<Lit>,
    analyze_stack: Vec<Lit>,
    pub stats: SolverStats,
}

const VAR_DECAY: f64 = 0.95;
const CLA_DECAY: f32 = 0.999;
const RESTART_BASE: u64 = 100;

impl Solver {
    pub fn new(num_vars: usize) -> Solver {
        Solver {
            num_vars,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            values: vec![Value::Undef; num_vars],
            levels: vec![0; num_vars],
            reasons: vec![NO_REASON; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            order: VarOrder::new(num_vars),
            polarity: vec![false; num_vars],
            ok: true,
            cla_inc: 1.0,
            seen: vec![false; num_vars],
            analyze_toclear: Vec::new(),
            analyze_stack: Vec::new(),
            stats: SolverStats::default(),
        }
    }

    fn value_of(values: &[Value], l: Lit) -> Value {
        match values[l.var()] {
            Value::Undef => Value::Undef,
            Value::True => {
                if l.is_pos() {
                    Value::True
                } else {
                    Value::False
                }
            }
            Value::False => {
                if l.is_pos() {
                    Value::False
                } else {
                    Value::True
                }
            }
        }
    }

    fn lit_value(&self, l: Lit) -> Value {
        Self::value_of(&self.values, l)
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    pub fn add_clause_dimacs(&mut self, lits: &[i32]) {
        let lits: Vec<Lit> = lits.iter().map(|&x| Lit::from_dimacs(x)).collect();
        self.add_clause(&lits);
    }

    fn add_clause(&mut self, input: &[Lit]) {
        if !self.ok {
            return;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut lits: Vec<Lit> = input.to_vec();
        lits.sort_unstable_by_key(|l| l.0);
        lits.dedup();
        // Tautologies vanish; level-0 falsified literals are dropped.
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return;
            }
        }
        let mut kept = Vec::with_capacity(lits.len());
        for &l in &lits {
            match self.lit_value(l) {
                Value::True => return,
                Value::False => {}
                Value::Undef => kept.push(l),
            }
        }
        match kept.len() {
            0 => self.ok = false,
            1 => {
                if !self.enqueue(kept[0], NO_REASON) {
                    self.ok = false;
                }
            }
            _ => {
                self.attach_new_clause(kept, false, 0);
            }
        }
    }

    fn attach_new_clause(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].neg().index()].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1].neg().index()].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            activity: 0.0,
            lbd,
            learnt,
            dead: false,
        });
        if learnt {
            self.learnts.push(cref);
            self.stats.learnt_clauses += 1;
        }
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: u32) -> bool {
        match self.lit_value(l) {
            Value::False => false,
            Value::True => true,
            Value::Undef => {
                let v = l.var();
                self.values[v] = if l.is_pos() { Value::True } else { Value::False };
                self.levels[v] = self.decision_level();
                self.reasons[v] = reason;
                self.trail.push(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        'queue: while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p.neg();
            let mut ws = std::mem::take(&mut self.watches[p.index()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if Self::value_of(&self.values, w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                let first = {
                    let clause = &mut self.clauses[cref];
                    debug_assert!(!clause.dead);
                    if clause.lits[0] == false_lit {
                        clause.lits.swap(0, 1);
                    }
                    debug_assert_eq!(clause.lits[1], false_lit);
                    let first = clause.lits[0];
                    if first != w.blocker && Self::value_of(&self.values, first) == Value::True {
                        ws[j] = Watcher {
                            cref: w.cref,
                            blocker: first,
                        };
                        j += 1;
                        continue 'watchers;
                    }
                    let mut moved = false;
                    for t in 2..clause.lits.len() {
                        if Self::value_of(&self.values, clause.lits[t]) != Value::False {
                            clause.lits.swap(1, t);
                            let target = clause.lits[1].neg().index();
                            debug_assert_ne!(target, p.index());
                            self.watches[target].push(Watcher {
                                cref: w.cref,
                                blocker: first,
                            });
                            moved = true;
                            break;
                        }
                    }
                    if moved {
                        continue 'watchers;
                    }
                    first
                };
                // No replacement watch: the clause is unit or a conflict.
                ws[j] = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                j += 1;
                if Self::value_of(&self.values, first) == Value::False {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    ws.truncate(j);
                    self.watches[p.index()] = ws;
                    break 'queue;
                }
                let enq = self.enqueue(first, w.cref);
                debug_assert!(enq);
            }
            ws.truncate(j);
            self.watches[p.index()] = ws;
        }
        conflict
    }

    fn var_bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v as u32, &self.activity);
    }

    fn cla_bump(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &lc in &self.learnts {
                self.clauses[lc as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();

        loop {
            self.cla_bump(confl as usize);
            let start = usize::from(p.is_some());
            for t in start..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[t];
                let v = q.var();
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    self.var_bump(v);
                    if self.levels[v] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            self.seen[pl.var()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reasons[pl.var()];
            debug_assert_ne!(confl, NO_REASON);
        }
        learnt[0] = p.unwrap().neg();

        // Deep minimization: drop literals whose reasons are subsumed by the
        // rest of the learnt clause.
        self.analyze_toclear = learnt.clone();
        let mut abstract_levels = 0u32;
        for &l in &learnt[1..] {
            abstract_levels |= Self::abstract_level(self.levels[l.var()]);
        }
        let mut kept = vec![learnt[0]];
        for idx in 1..learnt.len() {
            let l = learnt[idx];
            if self.reasons[l.var()] == NO_REASON || !self.lit_redundant(l, abstract_levels) {
                kept.push(l);
            }
        }
        for l in self.analyze_toclear.drain(..) {
            self.seen[l.var()] = false;
        }
        let mut learnt = kept;

        // Asserting literal first, then a literal of the backjump level.
        let back_level = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.levels[learnt[i].var()] > self.levels[learnt[max_i].var()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.levels[learnt[1].var()]
        };

        let mut level_mark: Vec<u32> = learnt.iter().map(|l| self.levels[l.var()]).collect();
        level_mark.sort_unstable();
        level_mark.dedup();
        let lbd = level_mark.len() as u32;
        (learnt, back_level, lbd)
    }

    fn abstract_level(level: u32) -> u32 {
        1 << (level & 31)
    }

    fn lit_redundant(&mut self, p: Lit, abstract_levels: u32) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(p);
        let top = self.analyze_toclear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let reason = self.reasons[q.var()];
            debug_assert_ne!(reason, NO_REASON);
            let len = self.clauses[reason as usize].lits.len();
            for t in 1..len {
                let l = self.clauses[reason as usize].lits[t];
                let v = l.var();
                if self.seen[v] || self.levels[v] == 0 {
                    continue;
                }
                if self.reasons[v] != NO_REASON
                    && (Self::abstract_level(self.levels[v]) & abstract_levels) != 0
                {
                    self.seen[v] = true;
                    self.analyze_stack.push(l);
                    self.analyze_toclear.push(l);
                } else {
                    for cleanup in self.analyze_toclear.drain(top..) {
                        self.seen[cleanup.var()] = false;
                    }
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level as usize];
        for t in (keep..self.trail.len()).rev() {
            let l = self.trail[t];
            let v = l.var();
            self.values[v] = Value::Undef;
            self.polarity[v] = l.is_pos();
            self.reasons[v] = NO_REASON;
            self.order.insert(v as u32, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level as usize);
        self.qhead = self.trail.len();
    }

    fn decide(&mut self) -> Option<Lit> {
        loop {
            let v = self.order.pop(&self.activity)?;
            if self.values[v as usize] == Value::Undef {
                return Some(Lit::new(v as usize, self.polarity[v as usize]));
            }
        }
    }

    fn reduce_learnts(&mut self) {
        // Keep glue clauses, reasons, and the more active half.
        let mut removable: Vec<u32> = self
            .learnts
            .iter()
            .copied()
            .filter(|&cr| {
                let c = &self.clauses[cr as usize];
                !c.dead && c.lits.len() > 2 && c.lbd > 2 && !self.is_reason(cr)
            })
            .collect();
        removable.sort_by(|&a, &b| {
            let ca = &self.clauses[a as usize];
            let cb = &self.clauses[b as usize];
            cb.lbd
                .cmp(&ca.lbd)
                .then(ca.activity.partial_cmp(&cb.activity).unwrap())
                .then(a.cmp(&b))
        });
        let drop_count = removable.len() / 2;
        for &cr in &removable[..drop_count] {
            self.detach(cr);
            self.clauses[cr as usize].dead = true;
            self.clauses[cr as usize].lits = Vec::new();
        }
        self.learnts.retain(|&cr| !self.clauses[cr as usize].dead);
    }

    fn is_reason(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        if c.lits.is_empty() {
            return false;
        }
        let v = c.lits[0].var();
        self.values[v] != Value::Undef && self.reasons[v] == cref
    }

    fn detach(&mut self, cref: u32) {
        let (w0, w1) = {
            let c = &self.clauses[cref as usize];
            (c.lits[0].neg().index(), c.lits[1].neg().index())
        };
        self.watches[w0].retain(|w| w.cref != cref);
        self.watches[w1].retain(|w| w.cref != cref);
    }

    fn luby(mut x: u64) -> u64 {
        let mut size = 1u64;
        let mut seq = 0u32;
        while size < x + 1 {
            seq += 1;
            size = 2 * size + 1;
        }
        while size - 1 != x {
            size = (size - 1) / 2;
            seq -= 1;
            x %= size;
        }
        1u64 << seq
    }

    /// Run the search. `max_conflicts` bounds the total work; exceeding it
    /// yields `Unknown`.
    pub fn solve(&mut self, max_conflicts: Option<u64>) -> SolveStatus {
        if !self.ok {
            return SolveStatus::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SolveStatus::Unsat;
        }
        let mut restart_round = 0u64;
        let mut next_reduce = 2000u64;
        let mut reduce_round = 0u64;
        loop {
            let limit = RESTART_BASE * Self::luby(restart_round);
            let mut conflicts_here = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.stats.conflicts += 1;
                    conflicts_here += 1;
                    if self.decision_level() == 0 {
                        self.ok = false;
                        return SolveStatus::Unsat;
                    }
                    let (learnt, back_level, lbd) = self.analyze(confl);
                    self.backtrack(back_level);
                    if learnt.len() == 1 {
                        let enq = self.enqueue(learnt[0], NO_REASON);
                        debug_assert!(enq);
                    } else {
                        let first = learnt[0];
                        let cref = self.attach_new_clause(learnt, true, lbd);
                        self.cla_bump(cref as usize);
                        let enq = self.enqueue(first, cref);
                        debug_assert!(enq);
                    }
                    self.var_inc /= VAR_DECAY;
                    self.cla_inc /= CLA_DECAY;
                    if let Some(max) = max_conflicts {
                        if self.stats.conflicts >= max {
                            self.backtrack(0);
                            return SolveStatus::Unknown;
                        }
                    }
                    if self.stats.conflicts >= next_reduce {
                        reduce_round += 1;
                        next_reduce += 2000 + 300 * reduce_round;
                        self.reduce_learnts();
                    }
                } else if conflicts_here >= limit {
                    self.backtrack(0);
                    self.stats.restarts += 1;
                    restart_round += 1;
                    break;
                } else {
                    match self.decide() {
                        None => return SolveStatus::Sat,
                        Some(l) => {
                            self.stats.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            let enq = self.enqueue(l, NO_REASON);
                            debug_assert!(enq);
                        }
                    }
                }
            }
        }
    }

    /// Total assignment after a `Sat` answer; unconstrained variables fall
    /// back to false.
    pub fn model(&self) -> Vec<bool> {
        self.values
            .iter()
            .map(|&v| matches!(v, Value::True))
            .collect()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve_clauses(num_vars: usize, clauses: &[Vec<i32>]) -> SolveStatus {
        let mut s = Solver::new(num_vars);
        for c in clauses {
            s.add_clause_dimacs(c);
        }
        s.solve(None)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(solve_clauses(0, &[]), SolveStatus::Sat);
        assert_eq!(solve_clauses(1, &[vec![1]]), SolveStatus::Sat);
        assert_eq!(solve_clauses(1, &[vec![1], vec![-1]]), SolveStatus::Unsat);
        assert_eq!(solve_clauses(2, &[vec![1, 2], vec![-1, -2]]), SolveStatus::Sat);
    }

    #[test]
    fn model_satisfies_all_clauses() {
        let clauses = vec![
            vec![1, 2, 3],
            vec![-1, -2],
            vec![-1, -3],
            vec![-2, -3],
            vec![1, -3],
        ];
        let mut s = Solver::new(3);
        for c in &clauses {
            s.add_clause_dimacs(c);
        }
        assert_eq!(s.solve(None), SolveStatus::Sat);
        let m = s.model();
        for c in &clauses {
            assert!(c
                .iter()
                .any(|&l| m[(l.unsigned_abs() - 1) as usize] == (l > 0)));
        }
    }

    /// Pigeonhole: n+1 pigeons into n holes is unsatisfiable; exercises the
    /// learning machinery on a genuinely hard-ish refutation.
    #[test]
    fn pigeonhole_unsat() {
        let pigeons = 6usize;
        let holes = 5usize;
        let var = |p: usize, h: usize| (p * holes + h + 1) as i32;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 0..pigeons {
            clauses.push((0..holes).map(|h| var(p, h)).collect());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    clauses.push(vec![-var(p, h), -var(q, h)]);
                }
            }
        }
        assert_eq!(solve_clauses(pigeons * holes, &clauses), SolveStatus::Unsat);
    }

    #[test]
    fn unknown_on_tiny_budget() {
        // A random-ish 3-SAT instance too big to finish in one conflict.
        let mut clauses = Vec::new();
        let n = 30i32;
        for i in 1..=n - 2 {
            clauses.push(vec![i, -(i + 1), i + 2]);
            clauses.push(vec![-i, i + 1, -(i + 2)]);
        }
        clauses.push(vec![1]);
        clauses.push(vec![-1, 2]);
        clauses.push(vec![-2, 3]);
        let mut s = Solver::new(n as usize);
        for c in &clauses {
            s.add_clause_dimacs(c);
        }
        // Either it solves instantly or reports Unknown; it must not claim
        // Unsat under a starvation budget.
        let status = s.solve(Some(1));
        assert_ne!(status, SolveStatus::Unsat);
    }

    #[test]
    fn deterministic_across_runs() {
        let mut clauses = Vec::new();
        for i in 1..=20i32 {
            clauses.push(vec![i, -(i % 20 + 1)]);
        }
        clauses.push(vec![-1, -11]);
        let run = || {
            let mut s = Solver::new(20);
            for c in &clauses {
                s.add_clause_dimacs(c);
            }
            let st = s.solve(None);
            (st, s.stats.decisions, s.stats.conflicts, s.model())
        };
        assert_eq!(run(), run());
    }
}
