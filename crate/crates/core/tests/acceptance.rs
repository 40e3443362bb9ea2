//! End-to-end acceptance run. Prints one verdict line per criterion and
//! exits non-zero if any of them fails. Pass criterion numbers as arguments
//! to run a subset.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use whitehead::automorphism::{
    enumerate_restricted, enumerate_type1, enumerate_type2, enumerate_whitehead, random_type2,
};
use whitehead::classic::{lr_count, orbit_min, type2_set, MinLengthOracle};
use whitehead::experiments::{lrp_runs, mix, primitive_near_length, primitive_runs, time_dwa_gwa, LrpRun, PrimitiveRun};
use whitehead::sampling::{gen_snmin, gen_sp, random_word, stream_rng, SampleSpec};
use whitehead::stats::{mean, pearson};
use whitehead::{dwa_type2, elr, is_minimal, Automorphism, Budget, Letter, Word, WordTuple};

const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn counting() -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=6u64 {
        let expected = 2 * n * 4u64.pow(n as u32 - 1) - 2 * n;
        let autos: HashSet<_> = enumerate_type2(n as usize).unwrap().collect();
        let got = autos.len() as u64;
        ok &= got == expected && autos.iter().all(|a| !a.is_identity());
        notes.push(format!("A_{n}={got}/{expected}"));
    }
    for n in 2..=5u64 {
        let expected = 2u64.pow(n as u32) * factorial(n);
        let autos: HashSet<_> = enumerate_type1(n as usize).unwrap().into_iter().collect();
        ok &= autos.len() as u64 == expected;
        notes.push(format!("B_{n}={}/{expected}", autos.len()));
    }
    let mut t_ok = true;
    for n in 2..=20u64 {
        let t: HashSet<_> = enumerate_restricted(n as usize).unwrap().into_iter().collect();
        t_ok &= t.len() as u64 == 5 * n * n - 4 * n;
    }
    ok &= t_ok;
    notes.push(format!("|T| for n=2..20 {}", if t_ok { "exact" } else { "WRONG" }));
    let secs = start.elapsed().as_secs_f64();
    verdict(ok && secs < 60.0, format!("{} in {secs:.1}s (limit 60s)", notes.join(" ")))
}

/// Every freely reduced word of length at most `max_len`.
fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=rank).flat_map(|g| [Letter::gen(g), Letter::inv_gen(g)]).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() != Some(&l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|v| Word::free_reduce(rank, v).unwrap())
        .collect()
}

fn oracle_sweep(rank: usize, max_len: usize, budget: Budget) -> (usize, usize, usize) {
    let mut oracle = MinLengthOracle::for_rank(rank, budget).unwrap();
    let omega = enumerate_whitehead(rank).unwrap();
    let (mut words, mut mismatches, mut theorem_failures) = (0, 0, 0);
    for w in all_words(rank, max_len) {
        words += 1;
        let m = oracle.min_length(&w).unwrap();
        let u = WordTuple::single(w.clone());
        if dwa_type2(&u).unwrap().output.total_length() != m {
            mismatches += 1;
        }
        if m < w.len() && elr(&u, &omega).unwrap().is_none() {
            theorem_failures += 1;
        }
    }
    (words, mismatches, theorem_failures)
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let f2 = oracle_sweep(2, 8, Budget::default());
    let capped = Budget {
        length_cap: Some(10),
        ..Budget::default()
    };
    let f3 = oracle_sweep(3, 6, capped);
    let secs = start.elapsed().as_secs_f64();
    let ok = f2.1 == 0 && f2.2 == 0 && f3.1 == 0 && f3.2 == 0 && secs < 600.0;
    verdict(
        ok,
        format!(
            "F_2: {} words, {} dwa mismatches, {} unreduced; F_3: {} words, {} mismatches, {} unreduced; {secs:.1}s (limit 600s)",
            f2.0, f2.1, f2.2, f3.0, f3.1, f3.2
        ),
    )
}

fn khan_bound() -> Verdict {
    let mut rng = stream_rng(SEED, &[3]);
    let mut checked = 0;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    while checked < 200 {
        let l = rng.gen_range(2..=12);
        let w = random_word(2, l, &mut rng);
        let u = WordTuple::single(w.clone());
        if !is_minimal(&u).unwrap() {
            continue;
        }
        checked += 1;
        let g = orbit_min(&u, &Budget::default()).unwrap();
        let size = g.len() as u128;
        let (l, n) = (l as u128, 2u128);
        let khan = 8 * l * l + 40 * l;
        let eq1 = 2 * n * (2 * n - 1).pow(l as u32 - 1);
        let flat = g.vertices().iter().all(|v| v.total_length() == l as usize);
        if !g.is_complete() || size > khan || size > eq1 || !flat {
            failures.push(w.to_string());
        }
        worst = worst.max(size as f64 / khan as f64);
    }
    verdict(
        failures.is_empty(),
        format!(
            "{checked} minimal words, max |orbit|/(8L^2+40L) = {worst:.3}, violations {:?}",
            failures
        ),
    )
}

fn lr_fractions() -> Verdict {
    let targets = [(2, 0.24, 0.03), (3, 0.09, 0.02), (4, 0.04, 0.015), (5, 0.03, 0.015)];
    let mut ok = true;
    let mut notes = Vec::new();
    let start = Instant::now();
    for (r, target, tol) in targets {
        let spec = SampleSpec::new(r, vec![100, 200, 300, 400, 500, 600], 90, mix(SEED, &[4, r as u64])).unwrap();
        let (samples, _) = gen_snmin(&spec).unwrap();
        let omega = type2_set(r).unwrap();
        let a_r = (2 * r * 4usize.pow(r as u32 - 1) - 2 * r) as f64;
        let fractions: Vec<f64> = samples
            .par_iter()
            .map(|s| lr_count(&WordTuple::single(s.word.clone()), &omega) as f64 / a_r)
            .collect();
        let m = mean(&fractions).unwrap_or(f64::NAN);
        let pass = samples.len() >= 500 && within(m, target, tol);
        ok &= pass;
        notes.push(format!("F_{r}={m:.4} ({target}±{tol}, n={})", samples.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 900.0;
    verdict(ok, format!("{}; {secs:.1}s (limit 900s)", notes.join(", ")))
}

/// Length-reduction runs on `S_NMin`, lengths 50..600, shared by the
/// expected-generation and correlation criteria.
fn lrp_sample(rank: usize) -> &'static [LrpRun] {
    static RUNS: OnceLock<Vec<(usize, Vec<LrpRun>)>> = OnceLock::new();
    let all = RUNS.get_or_init(|| {
        [(2, 25), (5, 25), (10, 5)]
            .into_iter()
            .map(|(r, per_length)| {
                let lengths: Vec<usize> = (1..=12).map(|k| 50 * k).collect();
                let spec = SampleSpec::new(r, lengths, per_length, mix(SEED, &[5, r as u64])).unwrap();
                let (samples, _) = gen_snmin(&spec).unwrap();
                (r, lrp_runs(&samples, mix(SEED, &[6, r as u64]), 5000).unwrap())
            })
            .collect()
    });
    &all.iter().find(|(r, _)| *r == rank).unwrap().1
}

fn expected_generations() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, target, tol, min_samples) in [(2, 1.0, 0.1, 300), (5, 2.4, 0.5, 300), (10, 6.5, 2.0, 50)] {
        let runs = lrp_sample(r);
        let g: Vec<f64> = runs.iter().map(|x| x.generations as f64).collect();
        let e = mean(&g).unwrap_or(f64::NAN);
        let unsolved = runs.iter().filter(|x| !x.solved).count();
        let pass = runs.len() >= min_samples && within(e, target, tol);
        ok &= pass;
        notes.push(format!(
            "E({r})={e:.3} ({target}±{tol}, n={}, unsolved {unsolved}){}",
            runs.len(),
            if pass { "" } else { " OUT" }
        ));
    }
    verdict(ok, notes.join(", "))
}

/// Primitive words `1 < |w| <= 300` from no-return walks, with their GWA runs.
fn primitive_sample(rank: usize) -> &'static [PrimitiveRun] {
    static RUNS: OnceLock<Vec<(usize, Vec<PrimitiveRun>)>> = OnceLock::new();
    let all = RUNS.get_or_init(|| {
        [2, 5]
            .into_iter()
            .map(|r| {
                let walks: Vec<usize> = (1..=30).map(|k| 2 * k).collect();
                let spec = SampleSpec::new(r, walks, 20, mix(SEED, &[7, r as u64])).unwrap();
                let mut pool = gen_sp(&spec).unwrap();
                pool.retain(|s| (2..=300).contains(&s.word.len()));
                // thin evenly so every walk length stays represented
                let keep = pool.len().min(250);
                let samples: Vec<_> = (0..keep).map(|i| pool[i * pool.len() / keep].clone()).collect();
                let runs = primitive_runs(&samples, mix(SEED, &[8, r as u64]), 1_000_000, None).unwrap();
                (r, runs)
            })
            .collect()
    });
    &all.iter().find(|(r, _)| *r == rank).unwrap().1
}

fn primitive_soundness() -> Verdict {
    let start = Instant::now();
    let mut total = 0;
    let mut failed = 0;
    let mut notes = Vec::new();
    for r in [2, 5] {
        let runs = primitive_sample(r);
        let bad = runs
            .iter()
            .filter(|x| x.output_length != 1 || !x.witness_ok || x.timed_out)
            .count();
        let longest = runs.iter().map(|x| x.length).max().unwrap_or(0);
        total += runs.len();
        failed += bad;
        notes.push(format!("r={r}: {}/{} reached 1 (max |w| {longest})", runs.len() - bad, runs.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        total >= 500 && failed == 0 && secs < 1200.0,
        format!("{}; {secs:.1}s (limit 1200s)", notes.join(", ")),
    )
}

fn primitive_q() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, e) in [(2, 1.0), (5, 3.0)] {
        let runs = primitive_sample(r);
        let within_budget = runs
            .iter()
            .filter(|x| x.output_length == 1 && x.generations as f64 <= e * x.length as f64)
            .count();
        let q = within_budget as f64 / runs.len() as f64;
        ok &= q >= 0.9;
        notes.push(format!("Q_{r}={q:.3} (>= 0.9, n={})", runs.len()));
    }
    verdict(ok, notes.join(", "))
}

fn growth_ratio() -> Verdict {
    const LEN: usize = 1000;
    const SAMPLES: usize = 20_000;
    let ratio = |r: usize, restricted: bool| -> f64 {
        let t = enumerate_restricted(r).unwrap();
        let xs: Vec<f64> = (0..SAMPLES)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(SEED, &[9, r as u64, i as u64]);
                let w = random_word(r, LEN, &mut rng);
                let image = if restricted {
                    t[rng.gen_range(0..t.len())].apply(&w).unwrap()
                } else {
                    random_type2(r, &mut rng).apply(&w).unwrap()
                };
                image.len() as f64 / LEN as f64
            })
            .collect();
        mean(&xs).unwrap()
    };
    let omega2 = ratio(2, false);
    let t5 = ratio(5, true);
    let (a, b) = (within(omega2, 1.04, 0.03), within(t5, 1.15, 0.04));
    verdict(
        a && b,
        format!(
            "r=2 type-2 ratio {omega2:.4} (1.04±0.03){}, r=5 T ratio {t5:.4} (1.15±0.04){}",
            if a { "" } else { " OUT" },
            if b { "" } else { " OUT" }
        ),
    )
}

fn length_independence() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in [2, 5, 10] {
        let runs = lrp_sample(r);
        let xs: Vec<f64> = runs.iter().map(|x| x.length as f64).collect();
        let ys: Vec<f64> = runs.iter().map(|x| x.generations as f64).collect();
        match pearson(&xs, &ys) {
            Some(c) => {
                ok &= c.r.abs() < 0.15;
                let flag = if c.degenerate { ", constant T_gen" } else { "" };
                notes.push(format!("r={r}: corr {:.4} (n={}{flag})", c.r, runs.len()));
            }
            None => {
                ok = false;
                notes.push(format!("r={r}: too few runs"));
            }
        }
    }
    verdict(ok, format!("{} (|corr| < 0.15)", notes.join(", ")))
}

fn timing_order() -> Verdict {
    const REPEATS: usize = 3;
    let mut sums = Vec::new();
    for r in [2, 5] {
        let samples = primitive_near_length(r, 100, 20, mix(SEED, &[10, r as u64])).unwrap();
        let (mut dwa, mut gwa) = (0.0, 0.0);
        for (i, s) in samples.iter().enumerate() {
            let (mut d_best, mut g_best) = (f64::INFINITY, f64::INFINITY);
            for _ in 0..REPEATS {
                let (d, g, _, out) = time_dwa_gwa(&s.word, mix(SEED, &[11, i as u64]), Some(Duration::from_secs(60))).unwrap();
                assert_eq!(out, 1, "GWA failed on a primitive word");
                d_best = d_best.min(d);
                g_best = g_best.min(g.expect("GWA hit the time limit"));
            }
            dwa += d_best;
            gwa += g_best;
        }
        sums.push((r, samples.len(), dwa, gwa));
    }
    let (_, n2, d2, g2) = sums[0];
    let (_, n5, d5, g5) = sums[1];
    verdict(
        d2 < g2 && g5 < d5,
        format!(
            "r=2: DWA {d2:.5}s vs GWA {g2:.5}s over {n2} words (want DWA < GWA); r=5: DWA {d5:.4}s vs GWA {g5:.4}s over {n5} words (want GWA < DWA)"
        ),
    )
}

fn property_suites() -> Verdict {
    let results = common::all_properties();
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    verdict(
        failed.is_empty(),
        format!("{} suites x {} cases; failures {:?}", results.len(), common::CASES, failed),
    )
}

type Criterion = (u32, &'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "counting formulas", counting),
        (2, "oracle equivalence", oracle_equivalence),
        (3, "Khan bound", khan_bound),
        (4, "length-reducing fractions", lr_fractions),
        (5, "expected generations", expected_generations),
        (6, "primitive soundness", primitive_soundness),
        (7, "primitive Q_r", primitive_q),
        (8, "growth ratios", growth_ratio),
        (9, "length independence", length_independence),
        (10, "DWA/GWA timing order", timing_order),
        (11, "property suites", property_suites),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (n, name, check) in criteria {
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| verdict(false, "panicked"));
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} ({name}): {status} [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            v.detail
        );
        failures += usize::from(!v.pass);
    }
    println!("acceptance: {failures} failing");
    if failures > 0 {
        std::process::exit(1);
    }
}
