//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the two flagged long-running computations are `#[ignore]`d and
//! opt-in via `-- --ignored`.

use diffseq::colorings::{self, from_word};
use diffseq::detect::{self, PatternKind};
use diffseq::diffsets::DiffSet;
use diffseq::numerics::{self, beatty_floor};
use diffseq::proofcheck;
use diffseq::satgen::{self, Backend, SolveStatus};
use diffseq::search::{self, ExactOutcome, GreedyOutcome, GreedyPolicy, SearchOptions};
use diffseq::words::{self, WordId};

fn criterion(number: &str, ok: bool, detail: &str) {
    println!(
        "criterion {number}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} failed: {detail}");
}

fn exact(d: &DiffSet, k: usize, r: u32, mode: PatternKind, cap: u64) -> Option<u64> {
    let opts = SearchOptions {
        canonical_colors: true,
        start: None,
    };
    match search::exact_number(d, k, r, mode, cap, opts) {
        ExactOutcome::Value { value, .. } => Some(value),
        ExactOutcome::ExceedsCap { .. } => None,
    }
}

#[test]
fn acceptance_01_lucas_table_exact_engine() {
    let l = DiffSet::lucas();
    let mut ok = true;
    for (k, expected) in [(2, 3u64), (3, 5), (4, 7), (5, 13), (6, 15), (7, 21)] {
        ok &= exact(&l, k, 2, PatternKind::Diffseq, 40) == Some(expected);
    }
    for (k, expected) in [(2, 4u64), (3, 13), (4, 22), (5, 51)] {
        ok &= exact(&l, k, 3, PatternKind::Diffseq, 70) == Some(expected);
    }
    ok &= exact(&l, 2, 4, PatternKind::Diffseq, 20) == Some(5);
    criterion(
        "1",
        ok,
        "Lucas table: r=2 values 3,5,7,13,15,21; r=3 values 4,13,22,51; r=4 value 5",
    );
}

#[test]
fn acceptance_02_perrin_table() {
    let p = DiffSet::perrin();
    let mut ok = true;
    for (k, expected) in [(2, 5u64), (3, 9), (4, 13), (5, 19), (6, 23), (7, 31)] {
        ok &= exact(&p, k, 2, PatternKind::Diffseq, 50) == Some(expected);
    }
    for (k, expected) in [(2, 7u64), (3, 17), (4, 28), (5, 43)] {
        ok &= exact(&p, k, 3, PatternKind::Diffseq, 60) == Some(expected);
    }
    ok &= exact(&p, 2, 4, PatternKind::Diffseq, 30) == Some(13);
    ok &= exact(&p, 3, 4, PatternKind::Diffseq, 50) == Some(35);
    ok &= exact(&p, 2, 5, PatternKind::Diffseq, 30) == Some(18);
    ok &= exact(&p, 2, 6, PatternKind::Diffseq, 40) == Some(25);

    // CI substitute for the flagged Δ(P,3;5) = 107 run: the instance at
    // n = 106 is satisfiable, certified by a detect-verified model that
    // satisfies every clause of the encoding.
    let inst = satgen::encode(&p, 3, 5, 106, PatternKind::Diffseq);
    let outcome = satgen::solve(&inst, &p, &Backend::default()).expect("internal solve");
    let sat_ok = outcome.status == SolveStatus::Sat
        && outcome.coloring.as_ref().is_some_and(|c| {
            inst.is_satisfied_by(&inst.assignment_of(c))
                && detect::find_mono_diffseq(c, &p, 3).is_none()
        });
    ok &= sat_ok;
    criterion(
        "2",
        ok,
        "Perrin table: r=2..6 values exact; sat verified at n=106 for (P,3;5)",
    );
}

#[test]
fn acceptance_03_fibonacci_small_values_both_engines() {
    let f = DiffSet::fibonacci();
    let mut ok = true;
    ok &= exact(&f, 2, 4, PatternKind::Diffseq, 20) == Some(9);
    ok &= exact(&f, 3, 2, PatternKind::Ap, 30) == Some(17);
    for (k, r, mode, expected) in [
        (2usize, 4u32, PatternKind::Diffseq, 9u64),
        (3, 2, PatternKind::Ap, 17),
    ] {
        let opts = satgen::ComputeOptions {
            n_cap: 40,
            ..Default::default()
        };
        ok &= match satgen::compute_number(&f, k, r, mode, &opts) {
            Ok(satgen::ComputeOutcome::Value { value, .. }) => value == expected,
            _ => false,
        };
    }
    criterion("3", ok, "Δ(F,2;4) = 9 and n(AP_F,3;2) = 17 by both engines");
}

#[test]
fn acceptance_04_infinite_avoidance_witnesses_at_scale() {
    let n = 1_000_000usize;
    let g = DiffSet::g_set();
    let f = DiffSet::fibonacci();

    let s_col = from_word(WordId::S, n);
    let ok_s = detect::find_mono_diffseq(&s_col, &g, 4).is_none();

    let t_col = from_word(WordId::T, n);
    let ok_t5 = detect::find_mono_ap(&t_col, &f, 5).is_none();
    // color 2 is the class of symbol 1
    let ok_t4 = detect::find_mono_ap_in_color(&t_col, &f, 4, 2).is_none();

    let base = from_word(WordId::S, n / 2);
    let lifted = colorings::lift_parity(&base, n).expect("valid lift base");
    let ok_lift = detect::find_mono_diffseq(&lifted, &f, 4).is_none();

    criterion(
        "4",
        ok_s && ok_t5 && ok_t4 && ok_lift,
        "at 10^6: S has no mono 4-term G-diffseq; T has no mono 5-term F-gap AP and its ones no 4-term; lifted S has no mono 4-term F-diffseq",
    );
}

#[test]
fn acceptance_05_modular_colorings_at_scale() {
    let n = 1_000_000usize;
    let l = DiffSet::lucas();
    let ok_mod8 = detect::find_mono_diffseq(&colorings::lucas_mod8(n), &l, 3).is_none();
    let ok_mod5 = detect::find_mono_diffseq(&colorings::congruence_coloring(5, n), &l, 2).is_none();
    criterion(
        "5",
        ok_mod8 && ok_mod5,
        "at 10^6: mod-8 coloring has no mono 3-term L-diffseq, mod-5 no mono 2-term",
    );
}

#[test]
fn acceptance_06_word_engine_cross_validation() {
    let n = 1_000_000usize;
    let mut ok = true;
    for id in [WordId::Fibonacci, WordId::S, WordId::T] {
        let prefix = words::prefix(id, n);
        ok &= prefix
            .iter()
            .enumerate()
            .all(|(i, &s)| words::at(id, i as u64 + 1) == s);
    }
    // ones of T are exactly the values 2⌊mφ⌋ − m
    let t = words::prefix(WordId::T, n);
    let from_prefix: Vec<u64> = t
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 1)
        .map(|(i, _)| i as u64 + 1)
        .collect();
    let mut from_beatty = Vec::new();
    let mut m = 1u64;
    loop {
        let pos = 2 * beatty_floor(m) - m;
        if pos > n as u64 {
            break;
        }
        from_beatty.push(pos);
        m += 1;
    }
    ok &= from_prefix == from_beatty;
    criterion(
        "6",
        ok,
        "morphism and closed-form evaluators agree on 10^6 symbols of F, S, T; ones of T are {2⌊mφ⌋−m}",
    );
}

#[test]
fn acceptance_07_closed_form_identities() {
    let report = numerics::verify_closed_forms(200);
    criterion(
        "7",
        report.passed(),
        "Fibonacci/Lucas closed forms and the φ-division identity exact for 1 ≤ n ≤ 200",
    );
}

#[test]
fn acceptance_08_proofcheck_suites() {
    let lemma32 = proofcheck::check_lemma32(30);
    let chains = proofcheck::check_chains(10_000);
    let lemma33 = proofcheck::check_lemma33(13, 200);
    let thm2 = proofcheck::check_thm2(60);
    let modular = proofcheck::check_modular_facts();
    for report in [&lemma32, &chains, &lemma33, &thm2, &modular] {
        if !report.passed() {
            eprintln!("{}", report.render_text());
        }
    }
    criterion(
        "8",
        lemma32.passed()
            && chains.passed()
            && lemma33.passed()
            && thm2.passed()
            && modular.passed(),
        "suites lemma32 (i ≤ 30), chains (N = 10^4), lemma33 (n ≤ 200), thm2 (N = 60, 33 table values), modular",
    );
}

#[test]
fn acceptance_09_property_battery() {
    // encoding-vs-backtracking satisfiability equivalence on small instances
    let sets = [
        DiffSet::fibonacci(),
        DiffSet::lucas(),
        DiffSet::perrin(),
        DiffSet::g_set(),
    ];
    let mut instances = 0;
    let mut equiv_ok = true;
    let mut models_ok = true;
    for d in &sets {
        for (k, r, n, mode) in [
            (2usize, 2u32, 3u64, PatternKind::Diffseq),
            (2, 2, 8, PatternKind::Diffseq),
            (3, 2, 9, PatternKind::Diffseq),
            (3, 3, 13, PatternKind::Diffseq),
            (4, 2, 15, PatternKind::Diffseq),
            (2, 3, 7, PatternKind::Diffseq),
            (3, 2, 17, PatternKind::Ap),
            (4, 3, 30, PatternKind::Ap),
        ] {
            instances += 1;
            let inst = satgen::encode(d, k, r, n, mode);
            let outcome = satgen::solve(&inst, d, &Backend::default()).expect("internal solve");
            let dfs = search::find_avoiding(d, k, r, mode, n, SearchOptions::default());
            equiv_ok &= (outcome.status == SolveStatus::Sat) == dfs.is_some();
            if outcome.status == SolveStatus::Sat {
                // every sat model decodes to a coloring passing detection
                models_ok &= outcome
                    .coloring
                    .as_ref()
                    .is_some_and(|c| detect::find_mono(c, d, k, mode).is_none());
            }
        }
    }

    // detector dp scan against naive enumeration on random colorings
    let mut state = 0x1234_5678_9abc_def1u64;
    let mut rand = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut detect_ok = true;
    for _ in 0..200 {
        let d = &sets[(rand() % 4) as usize];
        let n = 5 + (rand() % 36) as usize;
        let r = 2 + (rand() % 2) as u32;
        let k = 2 + (rand() % 3) as usize;
        let colors: Vec<u32> = (0..n).map(|_| (rand() % r as u64) as u32 + 1).collect();
        let c = colorings::Coloring::new(r, colors).unwrap();
        let dp = detect::find_mono_diffseq(&c, d, k).map(|w| w.positions);
        let naive = diffseq::diffsets::enumerate_diffseqs(d, k, n as u64)
            .find(|t| t.iter().all(|&p| c.color(p as usize) == c.color(t[0] as usize)));
        detect_ok &= dp == naive;
    }

    criterion(
        "9",
        instances >= 20 && equiv_ok && models_ok && detect_ok,
        &format!("{instances} encode-vs-backtracking instances, detector vs naive on 200 random colorings, all sat models detect-clean"),
    );
}

#[test]
fn acceptance_10_lower_bound_pipeline() {
    let g = DiffSet::g_set();
    let f = DiffSet::fibonacci();

    // default fallback policy first; its stuck position is reported and the
    // documented succeeding configuration certifies the bound
    let default_policy = GreedyPolicy::BoundedBacktrack { window: 30 };
    let witness = match search::greedy_color(&g, 3, 2, PatternKind::Diffseq, 50_000, default_policy)
    {
        GreedyOutcome::Complete(c) => c,
        GreedyOutcome::Stuck { position } => {
            println!("criterion 10: default policy (window 30) sticks at {position}; retrying with window 20000");
            match search::greedy_color(
                &g,
                3,
                2,
                PatternKind::Diffseq,
                50_000,
                GreedyPolicy::BoundedBacktrack { window: 20_000 },
            ) {
                GreedyOutcome::Complete(c) => c,
                GreedyOutcome::Stuck { position } => {
                    criterion("10", false, &format!("all policies stuck at {position}"));
                    return;
                }
            }
        }
    };
    let bound_g =
        search::lower_bound_from_witness(&witness, &g, 3, PatternKind::Diffseq).expect("verified");

    let lifted = colorings::lift_parity(&witness, 100_000).expect("lift");
    let bound_f = search::lower_bound_from_witness(&lifted, &f, 3, PatternKind::Diffseq)
        .expect("lifted witness verified");

    // CI substitute for the flagged n(AP_F,4;2) > 8000 run
    let inst = satgen::encode(&f, 4, 2, 2000, PatternKind::Ap);
    let outcome = satgen::solve(&inst, &f, &Backend::default()).expect("internal solve");
    let ap_bound = outcome
        .coloring
        .as_ref()
        .map(|c| search::lower_bound_from_witness(c, &f, 4, PatternKind::Ap).expect("verified"));

    criterion(
        "10",
        bound_g == 50_000 && bound_f == 100_000 && ap_bound == Some(2000),
        "greedy G-coloring of [50000] verified, parity lift certifies the 3-term bound at 100000, AP bound certified at 2000",
    );
}

/// Flagged, long-running: the two largest Perrin entries via the SAT
/// engine. The sat side of (P,4;4) alone takes upward of ten minutes with
/// the built-in solver; point --solver-cmd at a modern external solver to
/// bring this into minutes.
#[test]
#[ignore = "extended runtime; run explicitly with -- --ignored"]
fn acceptance_extended_perrin_44_and_35() {
    let p = DiffSet::perrin();
    let opts = satgen::ComputeOptions {
        n_cap: 200,
        start: Some(75),
        ..Default::default()
    };
    let v44 = match satgen::compute_number(&p, 4, 4, PatternKind::Diffseq, &opts) {
        Ok(satgen::ComputeOutcome::Value { value, .. }) => Some(value),
        _ => None,
    };
    let opts = satgen::ComputeOptions {
        n_cap: 200,
        start: Some(100),
        ..Default::default()
    };
    let v35 = match satgen::compute_number(&p, 3, 5, PatternKind::Diffseq, &opts) {
        Ok(satgen::ComputeOutcome::Value { value, .. }) => Some(value),
        _ => None,
    };
    criterion(
        "extended-1",
        v44 == Some(81) && v35 == Some(107),
        "Δ(P,4;4) = 81 and Δ(P,3;5) = 107 via the SAT engine",
    );
}

/// Flagged: the full n(AP_F,4;2) > 8000 certificate (about half a minute
/// with the built-in solver).
#[test]
#[ignore = "extended runtime; run explicitly with -- --ignored"]
fn acceptance_extended_ap_bound_8000() {
    let f = DiffSet::fibonacci();
    let inst = satgen::encode(&f, 4, 2, 8000, PatternKind::Ap);
    let outcome = satgen::solve(&inst, &f, &Backend::default()).expect("internal solve");
    let bound = outcome
        .coloring
        .as_ref()
        .map(|c| search::lower_bound_from_witness(c, &f, 4, PatternKind::Ap).expect("verified"));
    criterion(
        "extended-2",
        bound == Some(8000),
        "n(AP_F,4;2) > 8000 certified by a detect-verified SAT witness",
    );
}
