//! CNF encoding of "an r-coloring of [n] avoiding the pattern exists",
//! DIMACS serialization, solver orchestration, and the incremental search
//! loop over n.
//!
//! Variable v_i^c ↦ (i−1)·r + c is true iff integer i gets color c. Three
//! clause families: positive (each i gets at least one color), negative
//! (no monochromatic k-term pattern), and optional (each i gets at most one
//! color). The instance is satisfiable iff the Ramsey number exceeds n.

use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::cdcl::{self, SolveResult};
use crate::colorings::Coloring;
use crate::detect::{self, PatternKind};
use crate::diffsets::{ap_positions, enumerate_aps, enumerate_diffseqs, DiffSet};

#[derive(Debug, Error)]
pub enum SatError {
    #[error("solver command failed: {0}")]
    SolverFailed(String),
    #[error("could not parse solver output: {0}")]
    Unparsable(String),
    #[error("model does not assign exactly one color to position {0}")]
    BadModel(u64),
    #[error("sat model fails pattern detection; encoding bug: {0:?}")]
    EncodingBug(detect::Witness),
    #[error("solver timed out and produced no verdict")]
    Timeout,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A propositional instance together with the parameters it encodes.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    pub d_label: String,
    pub k: usize,
    pub r: u32,
    pub n: u64,
    pub mode: PatternKind,
    pub clauses: Vec<Vec<i32>>,
    pub positive_count: usize,
    pub negative_count: usize,
    pub optional_count: usize,
}

impl CnfInstance {
    pub fn var_count(&self) -> usize {
        (self.n as usize) * (self.r as usize)
    }

    pub fn var(&self, i: u64, c: u32) -> i32 {
        debug_assert!(i >= 1 && i <= self.n && c >= 1 && c <= self.r);
        ((i - 1) * self.r as u64 + c as u64) as i32
    }

    /// Decodes a truth assignment (indexed by variable, slot 0 unused) into
    /// the coloring it represents.
    pub fn decode_model(&self, model: &[bool]) -> Result<Coloring, SatError> {
        let mut colors = Vec::with_capacity(self.n as usize);
        for i in 1..=self.n {
            let mut chosen = None;
            for c in 1..=self.r {
                if model[self.var(i, c) as usize]
                    && chosen.replace(c).is_some() {
                        return Err(SatError::BadModel(i));
                    }
            }
            colors.push(chosen.ok_or(SatError::BadModel(i))?);
        }
        Ok(Coloring::new(self.r, colors).expect("decoded colors are in range"))
    }

    /// True iff the assignment satisfies every clause.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&l| model[l.unsigned_abs() as usize] == (l > 0))
        })
    }

    /// The assignment corresponding to a coloring.
    pub fn assignment_of(&self, c: &Coloring) -> Vec<bool> {
        let mut model = vec![false; self.var_count() + 1];
        for i in 1..=self.n {
            model[self.var(i, c.color(i as usize)) as usize] = true;
        }
        model
    }
}

/// Builds the full clause set for the parameters.
pub fn encode(d: &DiffSet, k: usize, r: u32, n: u64, mode: PatternKind) -> CnfInstance {
    assert!(k >= 2 && r >= 1 && n >= 1);
    let var = |i: u64, c: u32| ((i - 1) * r as u64 + c as u64) as i32;
    let mut clauses: Vec<Vec<i32>> = Vec::new();

    for i in 1..=n {
        clauses.push((1..=r).map(|c| var(i, c)).collect());
    }
    let positive_count = n as usize;

    let mut optional_count = 0;
    for i in 1..=n {
        for c in 1..=r {
            for c2 in (c + 1)..=r {
                clauses.push(vec![-var(i, c), -var(i, c2)]);
                optional_count += 1;
            }
        }
    }

    // Identical position tuples reached through different gap descriptions
    // collapse here; the set also fixes lexicographic clause order.
    let tuples: BTreeSet<Vec<u64>> = match mode {
        PatternKind::Diffseq => enumerate_diffseqs(d, k, n).collect(),
        PatternKind::Ap => enumerate_aps(d, k, n)
            .map(|(a, g)| ap_positions(a, g, k))
            .collect(),
    };
    let mut negative_count = 0;
    for tuple in &tuples {
        for c in 1..=r {
            clauses.push(tuple.iter().map(|&x| -var(x, c)).collect());
            negative_count += 1;
        }
    }

    CnfInstance {
        d_label: d.label().to_string(),
        k,
        r,
        n,
        mode,
        clauses,
        positive_count,
        negative_count,
        optional_count,
    }
}

/// Standard DIMACS CNF with metadata comment lines.
pub fn emit_dimacs(inst: &CnfInstance, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "c diffseq-cnf D={} k={} r={} n={} mode={}",
        inst.d_label,
        inst.k,
        inst.r,
        inst.n,
        inst.mode.name()
    )?;
    writeln!(
        out,
        "c clauses positive={} optional={} negative={}",
        inst.positive_count, inst.optional_count, inst.negative_count
    )?;
    writeln!(out, "p cnf {} {}", inst.var_count(), inst.clauses.len())?;
    for clause in &inst.clauses {
        let mut line = String::with_capacity(clause.len() * 4 + 2);
        for l in clause {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Parses a DIMACS file back into (variable count, clause list).
pub fn parse_dimacs(input: &mut impl BufRead) -> Result<(usize, Vec<Vec<i32>>), SatError> {
    let mut vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut parts = rest.split_whitespace();
            let v = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| SatError::Unparsable("bad p line".into()))?;
            vars = Some(v);
            continue;
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|e| SatError::Unparsable(format!("bad literal {tok:?}: {e}")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    if !current.is_empty() {
        return Err(SatError::Unparsable("unterminated clause".into()));
    }
    Ok((
        vars.ok_or_else(|| SatError::Unparsable("missing p line".into()))?,
        clauses,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present and detect-verified when status is Sat.
    pub coloring: Option<Coloring>,
    /// First comment line of an external solver, when one was captured.
    pub banner: Option<String>,
}

/// How to decide an instance.
#[derive(Debug, Clone)]
pub enum Backend {
    /// The built-in clause-learning solver, with an optional conflict budget.
    Internal { max_conflicts: Option<u64> },
    /// An external process; `{cnf}` in the template is replaced by the
    /// instance path (appended when absent). Must print standard s/v lines.
    External {
        command: String,
        timeout: Option<Duration>,
    },
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Internal { max_conflicts: None }
    }
}

/// Decides the instance, decoding and detect-verifying any model before
/// reporting Sat. A model that fails detection is a hard error.
pub fn solve(inst: &CnfInstance, d: &DiffSet, backend: &Backend) -> Result<SolveOutcome, SatError> {
    match backend {
        Backend::Internal { max_conflicts } => {
            let mut solver = cdcl::Solver::new(inst.var_count());
            for clause in &inst.clauses {
                solver.add_clause(clause);
            }
            match solver.solve_limited(*max_conflicts) {
                SolveResult::Sat => {
                    let coloring = verified_coloring(inst, d, &solver.model())?;
                    Ok(SolveOutcome {
                        status: SolveStatus::Sat,
                        coloring: Some(coloring),
                        banner: None,
                    })
                }
                SolveResult::Unsat => Ok(SolveOutcome {
                    status: SolveStatus::Unsat,
                    coloring: None,
                    banner: None,
                }),
                SolveResult::Unknown => Ok(SolveOutcome {
                    status: SolveStatus::Unknown,
                    coloring: None,
                    banner: None,
                }),
            }
        }
        Backend::External { command, timeout } => solve_external(inst, d, command, *timeout),
    }
}

fn verified_coloring(
    inst: &CnfInstance,
    d: &DiffSet,
    model: &[bool],
) -> Result<Coloring, SatError> {
    let coloring = inst.decode_model(model)?;
    if let Some(w) = detect::find_mono(&coloring, d, inst.k, inst.mode) {
        return Err(SatError::EncodingBug(w));
    }
    Ok(coloring)
}

fn solve_external(
    inst: &CnfInstance,
    d: &DiffSet,
    command: &str,
    timeout: Option<Duration>,
) -> Result<SolveOutcome, SatError> {
    let dir = tempfile::tempdir()?;
    let cnf_path = dir.path().join("instance.cnf");
    {
        let mut file = std::fs::File::create(&cnf_path)?;
        let mut buf = io::BufWriter::new(&mut file);
        emit_dimacs(inst, &mut buf)?;
    }
    let path_str = cnf_path.display().to_string();
    let mut parts: Vec<String> = command
        .split_whitespace()
        .map(|t| t.replace("{cnf}", &path_str))
        .collect();
    if parts.is_empty() {
        return Err(SatError::SolverFailed("empty solver command".into()));
    }
    if !command.contains("{cnf}") {
        parts.push(path_str);
    }
    let mut child = Command::new(&parts[0])
        .args(&parts[1..])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| SatError::SolverFailed(format!("{}: {e}", parts[0])))?;

    let deadline = timeout.map(|t| Instant::now() + t);
    loop {
        match child.try_wait()? {
            Some(_) => break,
            None => {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Ok(SolveOutcome {
                        status: SolveStatus::Unknown,
                        coloring: None,
                        banner: None,
                    });
                }
                std::thread::sleep(Duration::from_millis(10));
            }
        }
    }
    let output = child.wait_with_output()?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    parse_solver_output(inst, d, &stdout, output.status.code())
}

fn parse_solver_output(
    inst: &CnfInstance,
    d: &DiffSet,
    stdout: &str,
    exit_code: Option<i32>,
) -> Result<SolveOutcome, SatError> {
    let banner = stdout
        .lines()
        .find(|l| l.starts_with("c "))
        .map(|l| l[2..].trim().to_string());
    let mut status = None;
    let mut literals: Vec<i64> = Vec::new();
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(SolveStatus::Sat),
                "UNSATISFIABLE" => Some(SolveStatus::Unsat),
                "UNKNOWN" | "INDETERMINATE" => Some(SolveStatus::Unknown),
                other => return Err(SatError::Unparsable(format!("status line {other:?}"))),
            };
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|e| SatError::Unparsable(format!("v-line literal {tok:?}: {e}")))?;
                if l != 0 {
                    literals.push(l);
                }
            }
        }
    }
    // exit-code convention 10/20 as a fallback when no s-line was printed
    let status = status.or(match exit_code {
        Some(10) => Some(SolveStatus::Sat),
        Some(20) => Some(SolveStatus::Unsat),
        _ => None,
    });
    match status {
        Some(SolveStatus::Sat) => {
            let mut model = vec![false; inst.var_count() + 1];
            for l in literals {
                let v = l.unsigned_abs() as usize;
                if v == 0 || v > inst.var_count() {
                    return Err(SatError::Unparsable(format!("literal {l} out of range")));
                }
                model[v] = l > 0;
            }
            let coloring = verified_coloring(inst, d, &model)?;
            Ok(SolveOutcome {
                status: SolveStatus::Sat,
                coloring: Some(coloring),
                banner,
            })
        }
        Some(status) => Ok(SolveOutcome {
            status,
            coloring: None,
            banner,
        }),
        None => Err(SatError::Unparsable(
            "no s-line and no recognized exit code".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Test n = start, start+1, ... until the first unsat.
    Linear,
    /// Double n until unsat, then bisect; useful when values sit far out.
    DoublingBisection,
}

#[derive(Debug, Clone)]
pub struct ComputeOptions {
    pub strategy: Strategy,
    pub n_cap: u64,
    pub backend: Backend,
    pub start: Option<u64>,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            strategy: Strategy::Linear,
            n_cap: 10_000,
            backend: Backend::default(),
            start: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ComputeOutcome {
    /// First unsat n, with the avoiding witness for n − 1 when available.
    Value {
        value: u64,
        witness_below: Option<Coloring>,
        solver_banner: Option<String>,
    },
    /// Verdict still open: every n < lower is colorable; upper (when known)
    /// is uncolorable.
    Bracket {
        lower: u64,
        upper: Option<u64>,
        witness: Option<Coloring>,
    },
}

/// Runs encode/solve over increasing n until the first unsat, per the
/// strategy. Timeouts and conflict-budget exhaustion yield a bracket.
pub fn compute_number(
    d: &DiffSet,
    k: usize,
    r: u32,
    mode: PatternKind,
    opts: &ComputeOptions,
) -> Result<ComputeOutcome, SatError> {
    let start = opts.start.unwrap_or(k as u64).max(1);
    assert!(
        start <= opts.n_cap,
        "start {start} exceeds cap {}",
        opts.n_cap
    );
    let mut witness: Option<Coloring> = None;
    let mut banner: Option<String> = None;
    let decide = |n: u64, witness: &mut Option<Coloring>, banner: &mut Option<String>| {
        let inst = encode(d, k, r, n, mode);
        let outcome = solve(&inst, d, &opts.backend)?;
        if outcome.banner.is_some() {
            *banner = outcome.banner.clone();
        }
        if let Some(c) = outcome.coloring {
            *witness = Some(c);
        }
        Ok::<SolveStatus, SatError>(outcome.status)
    };

    match opts.strategy {
        Strategy::Linear => {
            for n in start..=opts.n_cap {
                match decide(n, &mut witness, &mut banner)? {
                    SolveStatus::Sat => {}
                    SolveStatus::Unsat => {
                        return Ok(ComputeOutcome::Value {
                            value: n,
                            witness_below: witness,
                            solver_banner: banner,
                        })
                    }
                    SolveStatus::Unknown => {
                        return Ok(ComputeOutcome::Bracket {
                            lower: n,
                            upper: None,
                            witness,
                        })
                    }
                }
            }
            Ok(ComputeOutcome::Bracket {
                lower: opts.n_cap + 1,
                upper: None,
                witness,
            })
        }
        Strategy::DoublingBisection => {
            // lo is always sat (or below start), hi the least known unsat
            let mut lo = start.saturating_sub(1);
            let mut hi: Option<u64> = None;
            let mut probe = start;
            while hi.is_none() {
                if probe > opts.n_cap {
                    return Ok(ComputeOutcome::Bracket {
                        lower: lo + 1,
                        upper: None,
                        witness,
                    });
                }
                match decide(probe, &mut witness, &mut banner)? {
                    SolveStatus::Sat => {
                        lo = probe;
                        probe = (probe * 2).min(opts.n_cap.max(probe + 1));
                    }
                    SolveStatus::Unsat => hi = Some(probe),
                    SolveStatus::Unknown => {
                        return Ok(ComputeOutcome::Bracket {
                            lower: lo + 1,
                            upper: None,
                            witness,
                        })
                    }
                }
            }
            let mut hi = hi.unwrap();
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match decide(mid, &mut witness, &mut banner)? {
                    SolveStatus::Sat => lo = mid,
                    SolveStatus::Unsat => hi = mid,
                    SolveStatus::Unknown => {
                        return Ok(ComputeOutcome::Bracket {
                            lower: lo + 1,
                            upper: Some(hi),
                            witness,
                        })
                    }
                }
            }
            Ok(ComputeOutcome::Value {
                value: hi,
                witness_below: witness,
                solver_banner: banner,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_kinds(inst: &CnfInstance) -> (usize, usize, usize) {
        (inst.positive_count, inst.optional_count, inst.negative_count)
    }

    #[test]
    fn clause_counts_tiny() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 1, PatternKind::Diffseq);
        assert_eq!(count_kinds(&inst), (1, 1, 0));
        assert_eq!(inst.var_count(), 2);
        assert_eq!(inst.clauses.len(), 2);
    }

    #[test]
    fn clause_counts_f_2_2_5() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 5, PatternKind::Diffseq);
        // 9 pairs in [5] with Fibonacci gap, times 2 colors
        assert_eq!(count_kinds(&inst), (5, 5, 18));
        assert_eq!(inst.clauses.len(), 28);
        assert_eq!(inst.var_count(), 10);
    }

    #[test]
    fn clause_counts_ap() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 3, 2, 5, PatternKind::Ap);
        // 4 progressions times 2 colors
        assert_eq!(inst.negative_count, 8);
    }

    #[test]
    fn variable_numbering() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 5, PatternKind::Diffseq);
        assert_eq!(inst.var(3, 2), 6);
        assert_eq!(inst.var(1, 1), 1);
        assert_eq!(inst.var(5, 2), 10);
    }

    #[test]
    fn optional_clause_count_formula() {
        for (r, n) in [(2u32, 7u64), (3, 5), (4, 6)] {
            let inst = encode(&DiffSet::lucas(), 2, r, n, PatternKind::Diffseq);
            assert_eq!(
                inst.optional_count,
                n as usize * (r as usize * (r as usize - 1) / 2)
            );
            assert_eq!(inst.positive_count, n as usize);
        }
    }

    #[test]
    fn dimacs_golden_bytes() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 1, PatternKind::Diffseq);
        let mut buf = Vec::new();
        emit_dimacs(&inst, &mut buf).unwrap();
        let expected = "c diffseq-cnf D=F k=2 r=2 n=1 mode=diffseq\n\
                        c clauses positive=1 optional=1 negative=0\n\
                        p cnf 2 2\n\
                        1 2 0\n\
                        -1 -2 0\n";
        assert_eq!(String::from_utf8(buf).unwrap(), expected);
    }

    #[test]
    fn dimacs_header_f_2_2_5() {
        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 5, PatternKind::Diffseq);
        let mut buf = Vec::new();
        emit_dimacs(&inst, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("p cnf 10 28\n"));
    }

    #[test]
    fn dimacs_round_trip() {
        let inst = encode(&DiffSet::lucas(), 3, 2, 8, PatternKind::Diffseq);
        let mut buf = Vec::new();
        emit_dimacs(&inst, &mut buf).unwrap();
        let (vars, clauses) = parse_dimacs(&mut buf.as_slice()).unwrap();
        assert_eq!(vars, inst.var_count());
        let mut a = inst.clauses.clone();
        let mut b = clauses;
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn internal_solver_finds_verified_colorings() {
        let f = DiffSet::fibonacci();
        // Δ(F,2;4) = 9: [8] is colorable, [9] is not
        let sat = solve(&encode(&f, 2, 4, 8, PatternKind::Diffseq), &f, &Backend::default()).unwrap();
        assert_eq!(sat.status, SolveStatus::Sat);
        let c = sat.coloring.unwrap();
        assert!(detect::find_mono_diffseq(&c, &f, 2).is_none());

        let unsat = solve(&encode(&f, 2, 4, 9, PatternKind::Diffseq), &f, &Backend::default()).unwrap();
        assert_eq!(unsat.status, SolveStatus::Unsat);
    }

    #[test]
    fn lucas_3_3_threshold() {
        let l = DiffSet::lucas();
        let unsat = solve(&encode(&l, 3, 3, 13, PatternKind::Diffseq), &l, &Backend::default()).unwrap();
        assert_eq!(unsat.status, SolveStatus::Unsat);
        let sat = solve(&encode(&l, 3, 3, 12, PatternKind::Diffseq), &l, &Backend::default()).unwrap();
        assert_eq!(sat.status, SolveStatus::Sat);
    }

    #[test]
    fn compute_number_linear_and_bisection_agree() {
        let f = DiffSet::fibonacci();
        for strategy in [Strategy::Linear, Strategy::DoublingBisection] {
            let opts = ComputeOptions {
                strategy,
                n_cap: 40,
                ..Default::default()
            };
            match compute_number(&f, 3, 2, PatternKind::Ap, &opts).unwrap() {
                ComputeOutcome::Value { value, witness_below, .. } => {
                    assert_eq!(value, 17, "{strategy:?}");
                    let w = witness_below.unwrap();
                    assert_eq!(w.n(), 16);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn conflict_budget_yields_bracket() {
        let p = DiffSet::perrin();
        let opts = ComputeOptions {
            n_cap: 200,
            backend: Backend::Internal { max_conflicts: Some(1) },
            start: Some(30),
            ..Default::default()
        };
        match compute_number(&p, 3, 4, PatternKind::Diffseq, &opts).unwrap() {
            ComputeOutcome::Bracket { lower, .. } => assert!(lower >= 30),
            ComputeOutcome::Value { .. } => panic!("budget of one conflict cannot finish"),
        }
    }

    #[cfg(unix)]
    #[test]
    fn external_solver_orchestration() {
        use std::os::unix::fs::PermissionsExt;
        // fake solver: prints a fixed sat answer for the n=1, r=2 instance
        let dir = tempfile::tempdir().unwrap();
        let script = dir.path().join("fakesat.sh");
        std::fs::write(
            &script,
            "#!/bin/sh\necho 'c fakesat 1.0'\necho 's SATISFIABLE'\necho 'v 1 -2 0'\n",
        )
        .unwrap();
        std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();

        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 1, PatternKind::Diffseq);
        let backend = Backend::External {
            command: format!("{} {{cnf}}", script.display()),
            timeout: Some(Duration::from_secs(5)),
        };
        let outcome = solve(&inst, &f, &backend).unwrap();
        assert_eq!(outcome.status, SolveStatus::Sat);
        assert_eq!(outcome.banner.as_deref(), Some("fakesat 1.0"));
        assert_eq!(outcome.coloring.unwrap().colors(), &[1]);
    }

    #[cfg(unix)]
    #[test]
    fn external_solver_timeout_is_unknown() {
        use std::os::unix::fs::PermissionsExt;
        let dir = tempfile::tempdir().unwrap();
        let script = dir.path().join("sleeper.sh");
        std::fs::write(&script, "#!/bin/sh\nsleep 30\n").unwrap();
        std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();

        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 1, PatternKind::Diffseq);
        let backend = Backend::External {
            command: script.display().to_string(),
            timeout: Some(Duration::from_millis(50)),
        };
        let outcome = solve(&inst, &f, &backend).unwrap();
        assert_eq!(outcome.status, SolveStatus::Unknown);
    }

    #[cfg(unix)]
    #[test]
    fn lying_external_solver_is_caught() {
        use std::os::unix::fs::PermissionsExt;
        // claims sat with an all-color-1 model, which contains patterns
        let dir = tempfile::tempdir().unwrap();
        let script = dir.path().join("liar.sh");
        std::fs::write(
            &script,
            "#!/bin/sh\necho 's SATISFIABLE'\necho 'v 1 -2 3 -4 5 -6 0'\n",
        )
        .unwrap();
        std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();

        let f = DiffSet::fibonacci();
        let inst = encode(&f, 2, 2, 3, PatternKind::Diffseq);
        let backend = Backend::External {
            command: script.display().to_string(),
            timeout: None,
        };
        match solve(&inst, &f, &backend) {
            Err(SatError::EncodingBug(_)) => {}
            other => panic!("expected hard error, got {other:?}"),
        }
    }
}
