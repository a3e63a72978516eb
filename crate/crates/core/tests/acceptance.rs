//! Acceptance criteria. Runs without the test harness so that every
//! criterion prints its `criterion N: PASS|FAIL` line; exits nonzero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use dsr_core::carc::unfold::{build_gu, U_LEFT, U_RIGHT};
use dsr_core::carc::{solve_carc, CarcCase, SolveOptions};
use dsr_core::generate::{
    random_carc_once, random_connected_carc, random_connected_interval, random_covering_carc,
    random_formula, rng,
};
use dsr_core::geom::ring_model;
use dsr_core::oracle::{
    enumerate_dominating, reachable_configs, reconfig_bfs, satr_bfs, OracleOptions,
};
use dsr_core::reduction::{
    build_reduction, df_assignment, extract_assignment, satr_to_dsr, simulate_flips,
    verify_structure, Assignment, CnfFormula, ReductionLayout,
};
use dsr_core::{is_dominating, validate_sequence, Graph, TokenConfig};
use rand::seq::SliceRandom;
use rand::Rng;

fn report(n: u32, ok: bool, detail: &str) {
    println!(
        "criterion {n}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn smallest_dominating_size(g: &Graph, max: usize) -> Option<usize> {
    (1..=max).find(|&k| enumerate_dominating(g, k).next().is_some())
}

fn criterion_1_oracle_equivalence() -> bool {
    let start = Instant::now();
    let (mut models, mut instances, mut mismatches) = (0, 0, Vec::new());
    let mut cases: BTreeMap<&str, [usize; 2]> = BTreeMap::new();
    let mut seed = 0u64;
    while models < 500 {
        seed += 1;
        let mut r = rng(1_000 + seed);
        let n = r.gen_range(3..=10);
        // about half the models cover the whole circle, which exercises the
        // sliding walks rather than the interval shortcut
        let roll: f64 = r.gen();
        let density = if roll < 0.05 {
            1.0
        } else {
            r.gen_range(0.1..0.7)
        };
        let model = if roll < 0.5 {
            random_connected_carc(&mut r, n, density)
        } else {
            random_covering_carc(&mut r, n, density)
        };
        let Ok(m) = model else {
            continue;
        };
        let g = m.intersection_graph();
        let Some(gamma) = smallest_dominating_size(&g, 4) else {
            continue;
        };
        models += 1;
        // spaces at the domination number are the ones most often disconnected
        let k = if r.gen_bool(0.7) {
            gamma
        } else {
            r.gen_range(gamma..=4)
        };
        let all: Vec<TokenConfig> = enumerate_dominating(&g, k).collect();
        for round in 0..3 {
            let ds = all.choose(&mut r).unwrap();
            let mut dt = all.choose(&mut r).unwrap();
            if round == 2 {
                // aim for a negative instance when the space has several classes
                let class = reachable_configs(&g, ds, true, OracleOptions::default()).unwrap();
                let outside: Vec<&TokenConfig> =
                    all.iter().filter(|c| !class.contains(c)).collect();
                if let Some(c) = outside.choose(&mut r) {
                    dt = c;
                }
            }
            let verdict = solve_carc(&m, ds, dt, SolveOptions::default()).unwrap();
            let oracle = reconfig_bfs(&g, ds, dt, true, OracleOptions::default())
                .unwrap()
                .is_some();
            let name = match verdict.case {
                CarcCase::SizeMismatch => "size-mismatch",
                CarcCase::FullCircle { .. } => "full-circle",
                CarcCase::Interval => "interval",
                CarcCase::Sliding { .. } => "sliding",
            };
            cases.entry(name).or_default()[oracle as usize] += 1;
            instances += 1;
            if verdict.reachable != oracle {
                mismatches.push(format!("seed {} ds {ds} dt {dt}", 1_000 + seed));
            }
        }
    }
    let breakdown: Vec<String> = cases
        .iter()
        .map(|(k, [no, yes])| format!("{k}: {yes} yes / {no} no"))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let ok = mismatches.is_empty() && secs < 600.0;
    report(
        1,
        ok,
        &format!(
            "{models} models, {instances} instances, {} mismatches, {secs:.1}s; {}",
            mismatches.len(),
            breakdown.join(", ")
        ),
    );
    if !ok {
        eprintln!("{mismatches:?}");
    }
    ok
}

fn criterion_2_cycle_family() -> bool {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 2..=5usize {
        let m = ring_model(3 * k);
        let g = m.intersection_graph();
        let classes: Vec<TokenConfig> = (0..3)
            .map(|c| TokenConfig::new((0..k).map(|i| 3 * i + c)))
            .collect();
        for (a, ds) in classes.iter().enumerate() {
            for (b, dt) in classes.iter().enumerate() {
                let want = a == b;
                let got = solve_carc(&m, ds, dt, SolveOptions::default())
                    .unwrap()
                    .reachable;
                let oracle = reconfig_bfs(&g, ds, dt, true, OracleOptions::default())
                    .unwrap()
                    .is_some();
                checked += 1;
                if got != want || oracle != want {
                    failures.push(format!(
                        "C{}: {ds} -> {dt}: solver {got}, oracle {oracle}",
                        3 * k
                    ));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(
        2,
        ok,
        &format!(
            "{checked} class pairs on C6..C15, {} disagreements",
            failures.len()
        ),
    );
    if !ok {
        eprintln!("{failures:?}");
    }
    ok
}

fn criterion_3_full_circle() -> bool {
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let mut r = rng(3_000 + seed);
        let n = r.gen_range(3..=10);
        let m = random_carc_once(&mut r, n, 1.0);
        let g = m.intersection_graph();
        let k = r.gen_range(1..=4);
        let all: Vec<TokenConfig> = enumerate_dominating(&g, k).collect();
        let ds = all.choose(&mut r).unwrap();
        let dt = all.choose(&mut r).unwrap();
        let opts = SolveOptions {
            witness: true,
            ..SolveOptions::default()
        };
        let v = solve_carc(&m, ds, dt, opts).unwrap();
        let valid = v.witness.as_ref().is_some_and(|w| {
            let rep = validate_sequence(&g, w, true);
            rep.is_valid() && rep.end == *dt && w.start == *ds
        });
        if !(v.reachable && valid && matches!(v.case, CarcCase::FullCircle { .. })) {
            failures.push(format!("seed {}: {:?}", 3_000 + seed, v.case));
        }
    }
    let ok = failures.is_empty();
    report(
        3,
        ok,
        &format!("100 instances, {} failures", failures.len()),
    );
    if !ok {
        eprintln!("{failures:?}");
    }
    ok
}

fn criterion_4_interval_connectivity() -> bool {
    let mut counterexamples = Vec::new();
    let mut pairs = 0usize;
    let (mut models, mut seed) = (0, 0u64);
    while models < 200 {
        seed += 1;
        let mut r = rng(4_000 + seed);
        let n = r.gen_range(2..=8);
        let density = r.gen_range(0.1..0.6);
        let Ok(model) = random_connected_interval(&mut r, n, density) else {
            continue;
        };
        models += 1;
        let g = model.intersection_graph();
        for k in 1..=3 {
            let all: Vec<TokenConfig> = enumerate_dominating(&g, k).collect();
            let Some(first) = all.first() else { continue };
            // all pairs are mutually reachable iff the class of one set is everything
            let class = reachable_configs(&g, first, true, OracleOptions::default()).unwrap();
            pairs += all.len() * all.len();
            if class.len() != all.len() {
                counterexamples.push(format!(
                    "seed {} k {k}: {} of {} sets reachable",
                    4_000 + seed,
                    class.len(),
                    all.len()
                ));
            }
        }
    }
    let ok = counterexamples.is_empty();
    report(
        4,
        ok,
        &format!(
            "200 models, {pairs} ordered pairs, {} counterexamples",
            counterexamples.len()
        ),
    );
    if !ok {
        eprintln!("{counterexamples:?}");
    }
    ok
}

/// Criterion 5 and 7 share this corpus of padded random formulas.
fn formula_corpus() -> Vec<CnfFormula> {
    (0..50u64)
        .map(|seed| {
            let mut r = rng(5_000 + seed);
            let m = r.gen_range(1..=8);
            let n = r.gen_range(1..=4.min(3 * m));
            random_formula(&mut r, n, m).unwrap().pad_clauses().unwrap()
        })
        .collect()
}

fn figure_formula() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, -2], &[1], &[-2, 1]]).unwrap()
}

fn df_minus_junction_dominates(l: &ReductionLayout) -> bool {
    l.formula().satisfying_assignments().iter().all(|a| {
        let d = df_assignment(l, a).unwrap();
        d.len() == l.params().k
            && is_dominating(l.graph(), &d.without_one(l.junction()).unwrap()).unwrap()
    })
}

fn criterion_5_reduction_structure() -> bool {
    let mut failures = Vec::new();
    let fig = build_reduction(&figure_formula(), None).unwrap();
    let report5 = verify_structure(&fig);
    if fig.vertex_count() != 1139 {
        failures.push(format!(
            "figure layout has {} vertices, expected 1139",
            fig.vertex_count()
        ));
    }
    if fig.params().k != 34 {
        failures.push(format!("figure K = {}", fig.params().k));
    }
    if !report5.is_ok() {
        failures.push(format!("figure layout structure:\n{report5}"));
    }
    let mut sat = 0;
    for (i, f) in formula_corpus().iter().enumerate() {
        let l = build_reduction(f, None).unwrap();
        let rep = verify_structure(&l);
        if !rep.is_ok() {
            failures.push(format!("corpus formula {i}:\n{rep}"));
        }
        if !df_minus_junction_dominates(&l) {
            failures.push(format!(
                "corpus formula {i}: D_F(a) minus J is not dominating"
            ));
        }
        sat += l.formula().satisfying_assignments().len();
    }
    let ok = failures.is_empty();
    report(
        5,
        ok,
        &format!(
            "figure: {} vertices, K = {}; 50 formulas, {sat} satisfying assignments; {} failures",
            fig.vertex_count(),
            fig.params().k,
            failures.len()
        ),
    );
    if !ok {
        eprintln!("{}", failures.join("\n"));
    }
    ok
}

/// Seeded SATR yes-instances with `n <= 4`, preferring distinct endpoints.
fn satr_corpus() -> Vec<(CnfFormula, Assignment, Assignment, Vec<usize>)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 50 {
        seed += 1;
        let mut r = rng(6_000 + seed);
        let m = r.gen_range(1..=8);
        let n = r.gen_range(1..=4.min(3 * m));
        let f = random_formula(&mut r, n, m).unwrap();
        let sats = f.satisfying_assignments();
        if sats.is_empty() {
            continue;
        }
        let a_s = sats.choose(&mut r).unwrap().clone();
        let others: Vec<&Assignment> = sats.iter().filter(|a| **a != a_s).collect();
        let a_t = match others.choose(&mut r) {
            Some(a) => (*a).clone(),
            None => a_s.clone(),
        };
        if let Some(flips) = satr_bfs(&f, &a_s, &a_t).unwrap() {
            out.push((f, a_s, a_t, flips));
        }
    }
    out
}

fn criterion_6_forward_simulation() -> bool {
    let mut failures = Vec::new();
    let mut moves = 0;
    for (i, (f, a_s, a_t, flips)) in satr_corpus().iter().enumerate() {
        let inst = satr_to_dsr(f, a_s, a_t, None).unwrap();
        let seq = simulate_flips(&inst.layout, a_s, flips).unwrap();
        let rep = validate_sequence(inst.layout.graph(), &seq, true);
        let k = inst.layout.params().k;
        moves += seq.len();
        if !rep.is_valid() || rep.end != inst.dt || seq.start != inst.ds || inst.ds.len() != k {
            failures.push(format!("instance {i}: {:?}", rep.failure));
        }
    }
    let ok = failures.is_empty();
    report(
        6,
        ok,
        &format!(
            "50 instances, {moves} slides validated, {} failures",
            failures.len()
        ),
    );
    if !ok {
        eprintln!("{failures:?}");
    }
    ok
}

fn criterion_7_assignment_extraction() -> bool {
    let mut failures = Vec::new();
    let mut round_trips = 0;
    for (i, f) in formula_corpus().iter().enumerate() {
        let l = build_reduction(f, None).unwrap();
        for a in f.satisfying_assignments() {
            round_trips += 1;
            let back = extract_assignment(&l, &df_assignment(&l, &a).unwrap()).unwrap();
            if back != a {
                failures.push(format!("corpus formula {i}: {a} extracted as {back}"));
            }
        }
    }
    let mut steps = 0;
    for (i, (f, a_s, a_t, flips)) in satr_corpus().iter().enumerate() {
        let inst = satr_to_dsr(f, a_s, a_t, None).unwrap();
        let seq = simulate_flips(&inst.layout, a_s, flips).unwrap();
        let mut prev: Option<Assignment> = None;
        for c in seq.configs() {
            steps += 1;
            let x = extract_assignment(&inst.layout, &c).unwrap();
            if !f.satisfies(&x) {
                failures.push(format!("instance {i}: extracted {x} falsifies the formula"));
            }
            if let Some(p) = &prev {
                if p.diff(&x).len() > 1 {
                    failures.push(format!("instance {i}: {p} -> {x} flips several variables"));
                }
            }
            prev = Some(x);
        }
        if prev.as_ref() != Some(a_t) {
            failures.push(format!("instance {i}: sequence does not end at {a_t}"));
        }
    }
    let ok = failures.is_empty();
    report(
        7,
        ok,
        &format!(
            "{round_trips} round trips, {steps} intermediate extractions, {} failures",
            failures.len()
        ),
    );
    if !ok {
        eprintln!("{failures:?}");
    }
    ok
}

fn criterion_8_unfolded_domination() -> bool {
    let mut failures = Vec::new();
    let (mut models, mut sets) = (0, 0usize);
    let mut seed = 0u64;
    while models < 50 {
        seed += 1;
        let mut r = rng(8_000 + seed);
        let n = r.gen_range(3..=8);
        let density = r.gen_range(0.1..0.6);
        let Ok(m) = random_connected_carc(&mut r, n, density) else {
            continue;
        };
        let g = m.intersection_graph();
        models += 1;
        for u in m.maximal_arcs() {
            // |D| for the smallest dominating set of G holding a token on u
            let Some(d) = (1..=4).find(|&k| enumerate_dominating(&g, k).any(|s| s.contains(u)))
            else {
                continue;
            };
            let gu = build_gu(&m, u).unwrap();
            let mut found = 0;
            for x in enumerate_dominating(gu.graph(), d + 1) {
                found += 1;
                if !(x.contains(U_LEFT) && x.contains(U_RIGHT)) {
                    failures.push(format!("seed {} u {u}: {x}", 8_000 + seed));
                }
            }
            if found == 0 {
                failures.push(format!(
                    "seed {} u {u}: no dominating set of size {}",
                    8_000 + seed,
                    d + 1
                ));
            }
            sets += found;
        }
    }
    let ok = failures.is_empty();
    report(
        8,
        ok,
        &format!(
            "{models} models, {sets} dominating sets of G_u checked, {} failures",
            failures.len()
        ),
    );
    if !ok {
        eprintln!("{failures:?}");
    }
    ok
}

fn main() {
    let criteria: [fn() -> bool; 8] = [
        criterion_1_oracle_equivalence,
        criterion_2_cycle_family,
        criterion_3_full_circle,
        criterion_4_interval_connectivity,
        criterion_5_reduction_structure,
        criterion_6_forward_simulation,
        criterion_7_assignment_extraction,
        criterion_8_unfolded_domination,
    ];
    let failed: Vec<usize> = criteria
        .iter()
        .enumerate()
        .filter(|(_, c)| !c())
        .map(|(i, _)| i + 1)
        .collect();
    if failed.is_empty() {
        println!("all {} criteria passed", criteria.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
