//! A small conflict-driven clause-learning SAT solver.
//!
//! Deterministic by construction (no randomness, index-ordered tie
//! breaking), so every solver-free run of the pipeline reproduces the same
//! models. Two watched literals, first-UIP learning with local clause
//! minimization, activity-ordered decisions with phase saving, geometric
//! restarts, and activity-based deletion of learned clauses.

/// Internal literal encoding: variable v (1-based) is 2v when positive,
/// 2v + 1 when negated.
type Lit = u32;

fn lit_from_dimacs(l: i32) -> Lit {
    let v = l.unsigned_abs();
    if l > 0 {
        2 * v
    } else {
        2 * v + 1
    }
}

fn neg(l: Lit) -> Lit {
    l ^ 1
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

fn is_pos(l: Lit) -> bool {
    l & 1 == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
    /// Conflict budget exhausted.
    Unknown,
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    cla_act: Vec<f64>,
    deleted: Vec<bool>,
    watches: Vec<Vec<u32>>,
    /// 0 unassigned, 1 true, -1 false, indexed by variable.
    assign: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>, // clause index, or NO_REASON
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    head: usize,
    activity: Vec<f64>,
    act_inc: f64,
    cla_inc: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    root_units: Vec<Lit>,
    first_learned: usize,
    learned_alive: usize,
    max_learnts: usize,
    pub conflicts: u64,
}

const NO_REASON: u32 = u32::MAX;

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        Solver {
            num_vars,
            clauses: Vec::new(),
            cla_act: Vec::new(),
            deleted: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars + 2],
            assign: vec![0; num_vars + 1],
            level: vec![0; num_vars + 1],
            reason: vec![NO_REASON; num_vars + 1],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            head: 0,
            activity: vec![0.0; num_vars + 1],
            act_inc: 1.0,
            cla_inc: 1.0,
            phase: vec![false; num_vars + 1],
            seen: vec![false; num_vars + 1],
            ok: true,
            root_units: Vec::new(),
            first_learned: 0,
            learned_alive: 0,
            max_learnts: 0,
            conflicts: 0,
        }
    }

    /// Adds a clause in DIMACS literal convention. Tautologies are dropped,
    /// duplicate literals merged.
    pub fn add_clause(&mut self, lits: &[i32]) {
        if !self.ok {
            return;
        }
        let mut clause: Vec<Lit> = lits
            .iter()
            .map(|&l| {
                assert!(
                    l != 0 && l.unsigned_abs() as usize <= self.num_vars,
                    "literal {l} out of range"
                );
                lit_from_dimacs(l)
            })
            .collect();
        clause.sort_unstable();
        clause.dedup();
        if clause.windows(2).any(|w| w[1] == neg(w[0])) {
            return; // tautology
        }
        match clause.len() {
            0 => self.ok = false,
            1 => self.root_units.push(clause[0]),
            _ => {
                self.push_clause(clause);
            }
        }
    }

    fn push_clause(&mut self, clause: Vec<Lit>) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[clause[0] as usize].push(ci);
        self.watches[clause[1] as usize].push(ci);
        self.clauses.push(clause);
        self.cla_act.push(0.0);
        self.deleted.push(false);
        ci
    }

    fn value_lit(&self, l: Lit) -> i8 {
        let a = self.assign[var_of(l)];
        if a == 0 {
            0
        } else if (a == 1) == is_pos(l) {
            1
        } else {
            -1
        }
    }

    fn current_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        debug_assert_eq!(self.value_lit(l), 0);
        let v = var_of(l);
        self.assign[v] = if is_pos(l) { 1 } else { -1 };
        self.level[v] = self.current_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause index if one arises.
    fn propagate(&mut self) -> Option<u32> {
        while self.head < self.trail.len() {
            let p = self.trail[self.head];
            self.head += 1;
            let fp = neg(p); // literals watching fp may now be falsified
            let mut ws = std::mem::take(&mut self.watches[fp as usize]);
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                if self.deleted[ci as usize] {
                    ws.swap_remove(i);
                    continue;
                }
                {
                    let clause = &mut self.clauses[ci as usize];
                    if clause[0] == fp {
                        clause.swap(0, 1);
                    }
                    debug_assert_eq!(clause[1], fp);
                }
                let first = self.clauses[ci as usize][0];
                if self.value_lit(first) == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                let len = self.clauses[ci as usize].len();
                for j in 2..len {
                    let lj = self.clauses[ci as usize][j];
                    if self.value_lit(lj) != -1 {
                        self.clauses[ci as usize].swap(1, j);
                        self.watches[lj as usize].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if self.value_lit(first) == -1 {
                    self.watches[fp as usize] = ws;
                    return Some(ci);
                }
                self.enqueue(first, ci);
                i += 1;
            }
            self.watches[fp as usize] = ws;
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.act_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.act_inc *= 1e-100;
        }
    }

    fn bump_clause(&mut self, ci: u32) {
        let a = &mut self.cla_act[ci as usize];
        *a += self.cla_inc;
        if *a > 1e20 {
            for act in self.cla_act.iter_mut() {
                *act *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis with local minimization; returns the
    /// learned clause (asserting literal first) and the backtrack level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut counter = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut touched: Vec<usize> = Vec::new();
        let cur = self.current_level();
        loop {
            self.bump_clause(confl);
            let skip = usize::from(p.is_some()); // reason clauses hold p at slot 0
            let clause_len = self.clauses[confl as usize].len();
            for j in skip..clause_len {
                let q = self.clauses[confl as usize][j];
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    touched.push(v);
                    self.bump_var(v);
                    if self.level[v] == cur {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let pl = self.trail[idx];
            self.seen[var_of(pl)] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = neg(pl);
                break;
            }
            p = Some(pl);
            confl = self.reason[var_of(pl)];
            debug_assert_ne!(confl, NO_REASON);
        }

        // local minimization: drop literals implied by the rest of the
        // clause through their own reason
        let mut kept: Vec<Lit> = vec![learnt[0]];
        for &q in &learnt[1..] {
            let r = self.reason[var_of(q)];
            let redundant = r != NO_REASON
                && self.clauses[r as usize][1..].iter().all(|&other| {
                    self.seen[var_of(other)] || self.level[var_of(other)] == 0
                });
            if !redundant {
                kept.push(q);
            }
        }
        let mut learnt = kept;
        for v in touched {
            self.seen[v] = false;
        }

        let back_level = if learnt.len() == 1 {
            0
        } else {
            // watch the highest-level literal besides the asserting one
            let mut max_j = 1;
            for j in 2..learnt.len() {
                if self.level[var_of(learnt[j])] > self.level[var_of(learnt[max_j])] {
                    max_j = j;
                }
            }
            learnt.swap(1, max_j);
            self.level[var_of(learnt[1])]
        };
        (learnt, back_level)
    }

    fn backtrack(&mut self, to_level: u32) {
        while self.trail_lim.len() as u32 > to_level {
            let lim = self.trail_lim.pop().unwrap();
            while self.trail.len() > lim {
                let l = self.trail.pop().unwrap();
                let v = var_of(l);
                self.phase[v] = self.assign[v] == 1;
                self.assign[v] = 0;
                self.reason[v] = NO_REASON;
            }
        }
        self.head = self.trail.len();
    }

    fn decide(&mut self) -> bool {
        let mut best = 0usize;
        let mut best_act = -1.0;
        for v in 1..=self.num_vars {
            if self.assign[v] == 0 && self.activity[v] > best_act {
                best = v;
                best_act = self.activity[v];
            }
        }
        if best == 0 {
            return false;
        }
        self.trail_lim.push(self.trail.len());
        let lit = if self.phase[best] {
            2 * best as u32
        } else {
            2 * best as u32 + 1
        };
        self.enqueue(lit, NO_REASON);
        true
    }

    fn locked(&self, ci: u32) -> bool {
        let l0 = self.clauses[ci as usize][0];
        self.assign[var_of(l0)] != 0 && self.reason[var_of(l0)] == ci
    }

    /// Drops the less active half of the removable learned clauses. Watch
    /// lists shed deleted entries lazily during propagation.
    fn reduce_db(&mut self) {
        let mut cands: Vec<u32> = (self.first_learned..self.clauses.len())
            .map(|ci| ci as u32)
            .filter(|&ci| {
                !self.deleted[ci as usize]
                    && self.clauses[ci as usize].len() > 2
                    && !self.locked(ci)
            })
            .collect();
        cands.sort_by(|&a, &b| {
            self.cla_act[a as usize]
                .partial_cmp(&self.cla_act[b as usize])
                .unwrap()
                .then(a.cmp(&b))
        });
        for &ci in cands.iter().take(cands.len() / 2) {
            self.deleted[ci as usize] = true;
            self.clauses[ci as usize] = Vec::new();
            self.learned_alive -= 1;
        }
    }

    pub fn solve(&mut self) -> Option<Vec<bool>> {
        match self.solve_limited(None) {
            SolveResult::Sat => Some(self.model()),
            SolveResult::Unsat => None,
            SolveResult::Unknown => unreachable!("no budget was set"),
        }
    }

    /// Model indexed by variable (slot 0 unused) after a Sat result.
    pub fn model(&self) -> Vec<bool> {
        (0..=self.num_vars).map(|v| self.assign[v] == 1).collect()
    }

    pub fn solve_limited(&mut self, max_conflicts: Option<u64>) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        self.first_learned = self.clauses.len();
        self.max_learnts = 8000.max(self.clauses.len());
        for u in std::mem::take(&mut self.root_units) {
            match self.value_lit(u) {
                -1 => return SolveResult::Unsat,
                0 => self.enqueue(u, NO_REASON),
                _ => {}
            }
        }
        let mut restart_budget = 100u64;
        let mut since_restart = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                since_restart += 1;
                if self.current_level() == 0 {
                    return SolveResult::Unsat;
                }
                if let Some(limit) = max_conflicts {
                    if self.conflicts > limit {
                        return SolveResult::Unknown;
                    }
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                let assert_lit = learnt[0];
                if learnt.len() == 1 {
                    self.enqueue(assert_lit, NO_REASON);
                } else {
                    let ci = self.push_clause(learnt);
                    self.learned_alive += 1;
                    self.bump_clause(ci);
                    self.enqueue(assert_lit, ci);
                }
                self.act_inc /= 0.95;
                self.cla_inc /= 0.999;
                if self.learned_alive > self.max_learnts {
                    self.reduce_db();
                    self.max_learnts = self.max_learnts * 13 / 10;
                }
                if since_restart >= restart_budget {
                    since_restart = 0;
                    restart_budget = restart_budget * 3 / 2;
                    self.backtrack(0);
                }
            } else if !self.decide() {
                return SolveResult::Sat;
            }
        }
    }
}
