//! Property checks shared by the proptest suites and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::Rng;
use whitehead::automorphism::{enumerate_restricted, enumerate_type1, random_type2};
use whitehead::gwa::{self, fitness, next_population, GwaConfig, Population, Termination};
use whitehead::sampling::stream_rng;
use whitehead::{Automorphism, Member, WhiteheadAuto, Word, WordTuple};

pub const CASES: u32 = 1000;

pub fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    }
}

/// A rank with a raw (possibly unreduced) letter sequence over it.
pub fn raw_word(max_rank: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2..=max_rank).prop_flat_map(move |r| {
        let letter = (1..=r as i32, any::<bool>()).prop_map(|(g, inv)| if inv { -g } else { g });
        (Just(r), prop::collection::vec(letter, 0..=max_len))
    })
}

/// Several raw sequences over one shared rank.
pub fn raw_words(max_rank: usize, max_len: usize, count: usize) -> impl Strategy<Value = (usize, Vec<Vec<i32>>)> {
    (2..=max_rank).prop_flat_map(move |r| {
        let letter = (1..=r as i32, any::<bool>()).prop_map(|(g, inv)| if inv { -g } else { g });
        let word = prop::collection::vec(letter, 0..=max_len);
        (Just(r), prop::collection::vec(word, count))
    })
}

pub fn word_of(rank: usize, raw: &[i32]) -> Word {
    Word::from_signed(rank, raw).expect("letters are in range")
}

fn raw_of(w: &Word) -> Vec<i32> {
    w.letters().iter().map(|l| l.raw()).collect()
}

/// Any Whitehead automorphism or element of `T`, picked by a seed.
pub fn pick_auto(rank: usize, seed: u64) -> WhiteheadAuto {
    let mut rng = stream_rng(seed, &[rank as u64]);
    match rng.gen_range(0..3) {
        0 => WhiteheadAuto::Type2(random_type2(rank, &mut rng)),
        1 => {
            let all = enumerate_type1(rank).unwrap();
            WhiteheadAuto::Type1(all[rng.gen_range(0..all.len())].clone())
        }
        _ => {
            let t = enumerate_restricted(rank).unwrap();
            t[rng.gen_range(0..t.len())].to_whitehead(rank)
        }
    }
}

pub fn check_free_reduction(rank: usize, raw: &[i32]) -> Result<(), TestCaseError> {
    let once = word_of(rank, raw);
    let twice = word_of(rank, &raw_of(&once));
    prop_assert_eq!(&once, &twice);
    prop_assert!(once.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    prop_assert!(once.len() <= raw.len());
    Ok(())
}

pub fn check_cyclic_core(rank: usize, raw: &[i32]) -> Result<(), TestCaseError> {
    let w = word_of(rank, raw);
    let (core, conj) = w.cyclic_reduce();
    prop_assert!(core.len() <= w.len());
    let back = conj.concat(&core).unwrap().concat(&conj.invert()).unwrap();
    prop_assert_eq!(back, w);
    Ok(())
}

pub fn check_associative(rank: usize, a: &[i32], b: &[i32], c: &[i32]) -> Result<(), TestCaseError> {
    let (a, b, c) = (word_of(rank, a), word_of(rank, b), word_of(rank, c));
    let left = a.concat(&b).unwrap().concat(&c).unwrap();
    let right = a.concat(&b.concat(&c).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

pub fn check_homomorphism(rank: usize, seed: u64, u: &[i32], v: &[i32]) -> Result<(), TestCaseError> {
    let t = pick_auto(rank, seed);
    let (u, v) = (word_of(rank, u), word_of(rank, v));
    let whole = t.apply(&u.concat(&v).unwrap()).unwrap();
    let parts = t.apply(&u).unwrap().concat(&t.apply(&v).unwrap()).unwrap();
    prop_assert_eq!(whole, parts);
    Ok(())
}

pub fn check_invertible(rank: usize, seed: u64, raw: &[i32]) -> Result<(), TestCaseError> {
    let t = pick_auto(rank, seed);
    let w = word_of(rank, raw);
    let image = t.apply(&w).unwrap();
    prop_assert_eq!(t.inverse().apply(&image).unwrap(), w.clone());
    prop_assert!(image.len() <= 3 * w.len());
    prop_assert_eq!(t.apply(&w.invert()).unwrap(), image.invert());
    Ok(())
}

/// Each element of `T` is undone by its member inverse, and only the moved
/// generator's occurrences can lengthen the word.
pub fn check_restricted(rank: usize, index: usize, raw: &[i32]) -> Result<(), TestCaseError> {
    let all = enumerate_restricted(rank).unwrap();
    let t = all[index % all.len()];
    let w = word_of(rank, raw);
    let image = t.apply(&w).unwrap();
    prop_assert!(image.len() <= w.len() + 2 * w.occurrences(t.target()));
    prop_assert_eq!(t.inverse().apply(&image).unwrap(), w);
    Ok(())
}

fn t3_config(rank: usize, seed: u64) -> GwaConfig {
    let mut cfg = GwaConfig::new(Termination::t3_for_rank(rank), seed);
    cfg.max_generations = Some(400);
    cfg
}

pub fn check_determinism(rank: usize, raw: &[i32], seed: u64) -> Result<(), TestCaseError> {
    let u = WordTuple::single(word_of(rank, raw));
    let cfg = t3_config(rank, seed);
    let a = gwa::run(&u, &cfg).unwrap();
    let b = gwa::run(&u, &cfg).unwrap();
    prop_assert_eq!(a, b);
    let mut r1 = stream_rng(seed, &[7]);
    let mut r2 = stream_rng(seed, &[7]);
    prop_assert_eq!(r1.gen::<u64>(), r2.gen::<u64>());
    Ok(())
}

pub fn check_witness(rank: usize, raw: &[i32], seed: u64, cyclic: bool) -> Result<(), TestCaseError> {
    let u = WordTuple::single(word_of(rank, raw));
    let mut cfg = t3_config(rank, seed);
    cfg.cyclic_fitness = cyclic;
    let res = gwa::run(&u, &cfg).unwrap();
    prop_assert_eq!(res.witness.apply_tuple(&u).unwrap(), res.output.clone());
    prop_assert!(gwa::verify_witness(&u, &res.witness, &res.output).unwrap());
    prop_assert!(res.output.total_length() <= u.total_length());
    Ok(())
}

/// Breeds `generations` populations by hand, keeping the best member seen
/// as the elite, and checks that the best length never goes back up.
pub fn check_elitism(rank: usize, raw: &[i32], seed: u64, generations: usize) -> Result<(), TestCaseError> {
    let u = WordTuple::single(word_of(rank, raw));
    let t = enumerate_restricted(rank).unwrap();
    let mut cfg = GwaConfig::new(Termination::T2 { target: 0 }, seed);
    cfg.population_size = 20;
    let mut rng = stream_rng(seed, &[0xe1]);
    let mut pop = Population::random(&u, &t, &cfg, &mut rng).unwrap();
    let mut elite = pop.members()[pop.best()].clone();
    let mut best = pop.lengths()[pop.best()];
    for _ in 0..generations {
        pop = next_population(&u, &pop, &elite, &t, &cfg, &mut rng).unwrap();
        let now = pop.lengths()[pop.best()];
        prop_assert!(now <= best, "best length went from {} to {}", best, now);
        if now < best {
            best = now;
            elite = pop.members()[pop.best()].clone();
        }
        prop_assert!(pop.members().contains(&elite));
    }
    Ok(())
}

pub fn check_zero_fitness(rank: usize, raw: &[i32], seed: u64, member_lens: &[usize]) -> Result<(), TestCaseError> {
    let u = WordTuple::single(word_of(rank, raw));
    let t = enumerate_restricted(rank).unwrap();
    let mut rng = stream_rng(seed, &[0xf1]);
    let members: Vec<Member> = member_lens
        .iter()
        .map(|&l| Member::new((0..l).map(|_| t[rng.gen_range(0..t.len())]).collect()))
        .collect();
    let pop = Population::evaluate(&u, members, false).unwrap();
    let longest = *pop.lengths().iter().max().unwrap();
    for (&l, &f) in pop.lengths().iter().zip(pop.fitness()) {
        prop_assert_eq!(f, (longest - l) as u64);
    }
    prop_assert_eq!(fitness(&[5, 5, 5]), vec![0, 0, 0]);
    Ok(())
}

/// Runs one named property through a fresh runner, as the acceptance check
/// needs a verdict rather than a panic.
pub fn run_property<S, F>(strategy: S, check: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    TestRunner::new(config())
        .run(&strategy, check)
        .map_err(|e| e.to_string())
}

/// Every suite as (name, outcome). Used by the acceptance run.
pub fn all_properties() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "determinism under seed",
            run_property((raw_word(3, 16), any::<u64>()), |((r, w), s)| check_determinism(r, &w, s)),
        ),
        (
            "free-reduction idempotence",
            run_property(raw_word(5, 60), |(r, w)| check_free_reduction(r, &w)),
        ),
        (
            "automorphism homomorphism",
            run_property((raw_words(4, 30, 2), any::<u64>()), |((r, ws), s)| {
                check_homomorphism(r, s, &ws[0], &ws[1])
            }),
        ),
        (
            "automorphism invertibility",
            run_property((raw_word(4, 40), any::<u64>()), |((r, w), s)| check_invertible(r, s, &w)),
        ),
        (
            "witness soundness",
            run_property((raw_word(3, 16), any::<u64>(), any::<bool>()), |((r, w), s, c)| {
                check_witness(r, &w, s, c)
            }),
        ),
        (
            "elitism monotonicity",
            run_property((raw_word(3, 20), any::<u64>()), |((r, w), s)| check_elitism(r, &w, s, 8)),
        ),
        (
            "fitness-zero member",
            run_property(
                (raw_word(4, 30), any::<u64>(), prop::collection::vec(0usize..6, 1..30)),
                |((r, w), s, lens)| check_zero_fitness(r, &w, s, &lens),
            ),
        ),
    ]
}
