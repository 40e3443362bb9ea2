//! The measurement suite: each experiment turns a parameter set into a list
//! of [`ExperimentRecord`]s that serialize to CSV.
//!
//! Work is split into (rank, stratum) cells and per-sample jobs, each with
//! its own RNG stream, so results do not depend on thread scheduling.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::RngCore;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::automorphism::{enumerate_restricted, random_type2, type2_count, Automorphism};
use crate::classic::{dwa_type2, elr, is_minimal, lr_count, type2_set};
use crate::error::{Error, Result};
use crate::gwa::{self, default_expected, GwaConfig, Termination};
use crate::sampling::{gen_sf, gen_snmin, gen_sp, random_word, stream_rng, NonMinimalSample, PrimitiveSample, SampleSpec};
use crate::stats::{fraction, mean, pearson};
use crate::word::{Word, WordTuple};

/// Every metric name an experiment may emit.
pub const METRICS: &[&str] = &[
    "lr_fraction",
    "minimal_fraction",
    "E",
    "T_gen_mean",
    "corr",
    "corr_gt100",
    "ratio_omega",
    "ratio_T",
    "Q",
    "Q_gt100",
    "solved_fraction",
    "mu_avg",
    "mu_max",
    "dwa_secs",
    "gwa_secs",
    "monotone_fraction",
    "dwa_monotone_fraction",
    "skipped",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub rank: usize,
    /// Input length or band label, such as `120` or `100-600`.
    pub length: String,
    /// Whitehead complexity bucket, or `all`.
    pub wc: String,
    pub metric: String,
    #[serde(serialize_with = "na_or_value")]
    pub value: Option<f64>,
    pub samples: usize,
    pub seed: u64,
}

fn na_or_value<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&format!("{x:.6}")),
        None => s.serialize_str("na"),
    }
}

impl ExperimentRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        experiment: Experiment,
        rank: usize,
        length: impl Into<String>,
        wc: impl Into<String>,
        metric: &str,
        value: Option<f64>,
        samples: usize,
        seed: u64,
    ) -> Result<Self> {
        if !METRICS.contains(&metric) {
            return Err(Error::Config(format!("unknown metric {metric:?}")));
        }
        let length = length.into();
        if samples == 0 {
            return Err(Error::EmptyStratum(format!("{experiment} rank {rank} length {length} {metric}")));
        }
        Ok(ExperimentRecord {
            experiment: experiment.to_string(),
            rank,
            length,
            wc: wc.into(),
            metric: metric.to_owned(),
            value,
            samples,
            seed,
        })
    }
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Experiment {
    LrFraction,
    MinimalFraction,
    ExpectedGenerations,
    TrVsLength,
    GrowthRatio,
    PrimitiveQ,
    MemberLengths,
    DwaVsGwa,
    Monotonicity,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::LrFraction,
        Experiment::MinimalFraction,
        Experiment::ExpectedGenerations,
        Experiment::TrVsLength,
        Experiment::GrowthRatio,
        Experiment::PrimitiveQ,
        Experiment::MemberLengths,
        Experiment::DwaVsGwa,
        Experiment::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::LrFraction => "lr-fraction",
            Experiment::MinimalFraction => "minimal-fraction",
            Experiment::ExpectedGenerations => "expected-generations",
            Experiment::TrVsLength => "tr-vs-length",
            Experiment::GrowthRatio => "growth-ratio",
            Experiment::PrimitiveQ => "primitive-q",
            Experiment::MemberLengths => "member-lengths",
            Experiment::DwaVsGwa => "dwa-vs-gwa",
            Experiment::Monotonicity => "monotonicity",
        }
    }

    /// Desk-scale parameters that finish in minutes.
    pub fn defaults(self) -> ExpParams {
        let p = ExpParams::default();
        match self {
            Experiment::LrFraction => ExpParams {
                ranks: vec![2, 3, 4, 5],
                lengths: vec![100, 200, 400, 600],
                per_length: 100,
                ..p
            },
            Experiment::MinimalFraction => ExpParams {
                ranks: vec![3, 4, 5],
                lengths: vec![1, 5, 10, 20, 50, 100, 200],
                per_length: 200,
                ..p
            },
            Experiment::ExpectedGenerations => ExpParams {
                ranks: vec![2, 5],
                lengths: vec![100, 200, 300, 400, 500, 600],
                k_values: vec![50, 100, 200],
                ..p
            },
            Experiment::TrVsLength | Experiment::MemberLengths => ExpParams {
                ranks: vec![2, 5],
                lengths: vec![50, 100, 200, 400, 600],
                per_length: 40,
                ..p
            },
            Experiment::GrowthRatio => ExpParams {
                ranks: vec![2, 3, 5, 10],
                lengths: vec![300],
                per_length: 2000,
                ..p
            },
            Experiment::PrimitiveQ => ExpParams {
                ranks: vec![2, 5],
                lengths: vec![10, 20, 40, 60],
                per_length: 25,
                ..p
            },
            Experiment::DwaVsGwa => ExpParams {
                ranks: vec![2, 5],
                lengths: vec![30, 60, 100],
                per_length: 5,
                timeout: Some(Duration::from_secs(60)),
                ..p
            },
            Experiment::Monotonicity => ExpParams {
                ranks: vec![2, 3, 5],
                lengths: vec![20, 50, 100],
                per_length: 50,
                ..p
            },
        }
    }

    pub fn run(self, params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
        params.validate()?;
        match self {
            Experiment::LrFraction => exp_lr_fraction(params),
            Experiment::MinimalFraction => exp_minimal_fraction(params),
            Experiment::ExpectedGenerations => exp_expected_generations(params),
            Experiment::TrVsLength => exp_tr_vs_length(params),
            Experiment::GrowthRatio => exp_growth_ratio(params),
            Experiment::PrimitiveQ => exp_primitive_q(params),
            Experiment::MemberLengths => exp_member_lengths(params),
            Experiment::DwaVsGwa => exp_dwa_vs_gwa(params),
            Experiment::Monotonicity => exp_monotonicity(params),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpParams {
    pub ranks: Vec<usize>,
    /// Length strata. For primitive inputs these are walk lengths over `T`.
    pub lengths: Vec<usize>,
    pub per_length: usize,
    /// Sample sizes for the `E_K` table.
    pub k_values: Vec<usize>,
    pub seed: u64,
    pub timeout: Option<Duration>,
    /// Generation cap for a single length-reduction search.
    pub max_generations: u64,
}

impl Default for ExpParams {
    fn default() -> Self {
        ExpParams {
            ranks: vec![2, 3, 5, 10],
            lengths: vec![100, 200, 400, 600],
            per_length: 50,
            k_values: vec![100, 200],
            seed: 1,
            timeout: None,
            max_generations: 5000,
        }
    }
}

impl ExpParams {
    pub fn validate(&self) -> Result<()> {
        if self.ranks.is_empty() || self.lengths.is_empty() {
            return Err(Error::Config("ranks and lengths must be nonempty".into()));
        }
        if let Some(&r) = self.ranks.iter().find(|&&r| r < 2) {
            return Err(Error::UnsupportedRank(r));
        }
        if self.per_length == 0 || self.k_values.contains(&0) || self.max_generations == 0 {
            return Err(Error::Config("sample counts must be positive".into()));
        }
        Ok(())
    }

    fn spec(&self, rank: usize, lengths: Vec<usize>, per_length: usize, tag: u64) -> Result<SampleSpec> {
        SampleSpec::new(rank, lengths, per_length, mix(self.seed, &[tag, rank as u64]))
    }

    fn band(&self) -> String {
        let lo = self.lengths.iter().min().unwrap();
        let hi = self.lengths.iter().max().unwrap();
        if lo == hi {
            lo.to_string()
        } else {
            format!("{lo}-{hi}")
        }
    }
}

/// Derived seed for a job identified by `tags`.
pub fn mix(seed: u64, tags: &[u64]) -> u64 {
    stream_rng(seed, tags).next_u64()
}

/// Configuration for a single length-reduction search: no stagnation stop,
/// only the generation cap.
pub fn lrp_config(seed: u64, max_generations: u64) -> GwaConfig {
    let mut cfg = GwaConfig::new(Termination::T2 { target: 0 }, seed);
    cfg.max_generations = Some(max_generations);
    cfg
}

/// One length-reduction search on an `S_NMin` word.
#[derive(Clone, Debug, PartialEq)]
pub struct LrpRun {
    pub length: usize,
    pub generations: u64,
    pub solved: bool,
    pub mu_mean: f64,
    pub mu_max: usize,
}

pub fn lrp_runs(samples: &[NonMinimalSample], seed: u64, max_generations: u64) -> Result<Vec<LrpRun>> {
    samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let cfg = lrp_config(mix(seed, &[0x1e, i as u64]), max_generations);
            let u = WordTuple::single(s.word.clone());
            let (red, (generations, stats)) = gwa::length_reduction_search(&u, &cfg)?;
            if let Some(r) = &red {
                if r.witness.apply_tuple(&u)? != r.output || r.output.total_length() >= u.total_length() {
                    return Err(Error::Config("unsound length-reduction witness".into()));
                }
            }
            Ok(LrpRun {
                length: s.word.len(),
                generations,
                solved: red.is_some(),
                mu_mean: stats.mean(),
                mu_max: stats.max_len,
            })
        })
        .collect()
}

fn snmin(params: &ExpParams, rank: usize, per_length: usize, tag: u64) -> Result<(Vec<NonMinimalSample>, usize)> {
    gen_snmin(&params.spec(rank, params.lengths.clone(), per_length, tag)?)
}

fn exp_lr_fraction(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::LrFraction;
    let cells: Vec<(usize, usize)> = params
        .ranks
        .iter()
        .flat_map(|&r| params.lengths.iter().map(move |&l| (r, l)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(r, l)| {
            let (s, _) = gen_snmin(&params.spec(r, vec![l], params.per_length, 0x10 + l as u64)?)?;
            let omega = type2_set(r)?;
            let a = type2_count(r) as f64;
            let fractions: Vec<f64> = s
                .iter()
                .map(|x| lr_count(&WordTuple::single(x.word.clone()), &omega) as f64 / a)
                .collect();
            Ok((r, l, fractions))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (r, l, f) in results {
        if !f.is_empty() {
            out.push(ExperimentRecord::new(e, r, l.to_string(), "1", "lr_fraction", mean(&f), f.len(), params.seed)?);
        }
    }
    Ok(out)
}

fn exp_minimal_fraction(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::MinimalFraction;
    let cells: Vec<(usize, usize)> = params
        .ranks
        .iter()
        .flat_map(|&r| params.lengths.iter().map(move |&l| (r, l)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(r, l)| {
            let words = gen_sf(&params.spec(r, vec![l], params.per_length, 0x20 + l as u64)?)?;
            let flags = words
                .iter()
                .map(|w| is_minimal(&WordTuple::single(w.clone())))
                .collect::<Result<Vec<_>>>()?;
            Ok((r, l, flags))
        })
        .collect::<Result<Vec<_>>>()?;
    results
        .into_iter()
        .map(|(r, l, flags)| {
            ExperimentRecord::new(e, r, l.to_string(), "all", "minimal_fraction", fraction(&flags), flags.len(), params.seed)
        })
        .collect()
}

fn exp_expected_generations(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::ExpectedGenerations;
    let k_max = *params.k_values.iter().max().unwrap_or(&params.per_length);
    let per_length = k_max.div_ceil(params.lengths.len());
    let mut out = Vec::new();
    for &r in &params.ranks {
        let (samples, skipped) = snmin(params, r, per_length, 0x30)?;
        // interleave strata so every prefix spans all lengths
        let mut order: Vec<usize> = (0..samples.len()).collect();
        order.sort_by_key(|&i| (i % per_length, i / per_length));
        let samples: Vec<NonMinimalSample> = order.into_iter().map(|i| samples[i].clone()).collect();
        let runs = lrp_runs(&samples, mix(params.seed, &[0x31, r as u64]), params.max_generations)?;
        for &k in &params.k_values {
            let take = k.min(runs.len());
            if take == 0 {
                continue;
            }
            let g: Vec<f64> = runs[..take].iter().map(|x| x.generations as f64).collect();
            out.push(ExperimentRecord::new(e, r, params.band(), format!("K={k}"), "E", mean(&g), take, params.seed)?);
        }
        if skipped > 0 {
            out.push(ExperimentRecord::new(e, r, params.band(), "all", "skipped", Some(skipped as f64), skipped, params.seed)?);
        }
    }
    Ok(out)
}

fn correlation_records(
    e: Experiment,
    r: usize,
    runs: &[LrpRun],
    params: &ExpParams,
) -> Result<Vec<ExperimentRecord>> {
    let mut out = Vec::new();
    for (metric, min_len) in [("corr", 0), ("corr_gt100", 101)] {
        let pairs: Vec<&LrpRun> = runs.iter().filter(|x| x.length >= min_len).collect();
        let xs: Vec<f64> = pairs.iter().map(|x| x.length as f64).collect();
        let ys: Vec<f64> = pairs.iter().map(|x| x.generations as f64).collect();
        if let Some(c) = pearson(&xs, &ys) {
            let wc = if c.degenerate { "degenerate" } else { "1" };
            out.push(ExperimentRecord::new(e, r, params.band(), wc, metric, Some(c.r), pairs.len(), params.seed)?);
        }
    }
    Ok(out)
}

fn exp_tr_vs_length(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::TrVsLength;
    let mut out = Vec::new();
    for &r in &params.ranks {
        let (samples, _) = snmin(params, r, params.per_length, 0x40)?;
        let runs = lrp_runs(&samples, mix(params.seed, &[0x41, r as u64]), params.max_generations)?;
        let mut lengths: Vec<usize> = runs.iter().map(|x| x.length).collect();
        lengths.sort_unstable();
        lengths.dedup();
        for l in lengths {
            let g: Vec<f64> = runs.iter().filter(|x| x.length == l).map(|x| x.generations as f64).collect();
            out.push(ExperimentRecord::new(e, r, l.to_string(), "1", "T_gen_mean", mean(&g), g.len(), params.seed)?);
        }
        out.extend(correlation_records(e, r, &runs, params)?);
    }
    Ok(out)
}

/// Mean `|wt|/|w|` over random words and uniformly random `t`, for type-2
/// Whitehead automorphisms and for the restricted set.
pub fn growth_ratios(rank: usize, length: usize, samples: usize, seed: u64) -> Result<(f64, f64)> {
    let t = enumerate_restricted(rank)?;
    let pairs = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, &[0x50, i as u64]);
            let w = random_word(rank, length, &mut rng);
            let omega = random_type2(rank, &mut rng).apply(&w)?.len() as f64 / length as f64;
            let restricted = t[rand::Rng::gen_range(&mut rng, 0..t.len())].apply(&w)?.len() as f64 / length as f64;
            Ok((omega, restricted))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let omega: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let restricted: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    Ok((mean(&omega).unwrap_or(1.0), mean(&restricted).unwrap_or(1.0)))
}

fn exp_growth_ratio(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::GrowthRatio;
    let mut out = Vec::new();
    for &r in &params.ranks {
        for &l in &params.lengths {
            if l == 0 {
                continue;
            }
            let (omega, restricted) = growth_ratios(r, l, params.per_length, mix(params.seed, &[0x51, r as u64, l as u64]))?;
            out.push(ExperimentRecord::new(e, r, l.to_string(), "all", "ratio_omega", Some(omega), params.per_length, params.seed)?);
            out.push(ExperimentRecord::new(e, r, l.to_string(), "all", "ratio_T", Some(restricted), params.per_length, params.seed)?);
        }
    }
    Ok(out)
}

/// GWA set up for primitive words: stop at length 1, score cyclic words.
/// Plain scoring can stall for good on long conjugates, which no single
/// element of `T` shortens.
pub fn primitive_config(seed: u64) -> GwaConfig {
    let mut cfg = GwaConfig::new(Termination::T2 { target: 1 }, seed);
    cfg.cyclic_fitness = true;
    cfg
}

/// A GWA run with the perfect termination condition on a primitive word.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveRun {
    pub length: usize,
    pub generations: u64,
    pub output_length: usize,
    pub witness_ok: bool,
    pub timed_out: bool,
}

pub fn primitive_runs(
    samples: &[PrimitiveSample],
    seed: u64,
    max_generations: u64,
    timeout: Option<Duration>,
) -> Result<Vec<PrimitiveRun>> {
    samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut cfg = primitive_config(mix(seed, &[0x60, i as u64]));
            cfg.max_generations = Some(max_generations);
            cfg.time_limit = timeout;
            let u = WordTuple::single(s.word.clone());
            let res = gwa::run(&u, &cfg)?;
            Ok(PrimitiveRun {
                length: s.word.len(),
                generations: res.generations,
                output_length: res.output.total_length(),
                witness_ok: gwa::verify_witness(&u, &res.witness, &res.output)?,
                timed_out: res.timed_out,
            })
        })
        .collect()
}

fn exp_primitive_q(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::PrimitiveQ;
    let mut out = Vec::new();
    for &r in &params.ranks {
        let samples = gen_sp(&params.spec(r, params.lengths.clone(), params.per_length, 0x61)?)?;
        // words of length 1 need no work and say nothing about Q
        let samples: Vec<PrimitiveSample> = samples.into_iter().filter(|s| s.word.len() > 1).collect();
        let runs = primitive_runs(&samples, mix(params.seed, &[0x62, r as u64]), params.max_generations, params.timeout)?;
        let e_r = default_expected(r);
        let solved: Vec<bool> = runs.iter().map(|x| x.output_length == 1 && x.witness_ok).collect();
        if !runs.is_empty() {
            out.push(ExperimentRecord::new(e, r, "all", "all", "solved_fraction", fraction(&solved), runs.len(), params.seed)?);
        }
        for (metric, min_len) in [("Q", 0), ("Q_gt100", 101)] {
            let flags: Vec<bool> = runs
                .iter()
                .filter(|x| x.length >= min_len)
                .map(|x| x.output_length == 1 && x.generations as f64 <= e_r * x.length as f64)
                .collect();
            if !flags.is_empty() {
                let band = if min_len > 0 { ">100" } else { "all" };
                out.push(ExperimentRecord::new(e, r, band, "all", metric, fraction(&flags), flags.len(), params.seed)?);
            }
        }
    }
    Ok(out)
}

fn exp_member_lengths(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::MemberLengths;
    let mut out = Vec::new();
    for &r in &params.ranks {
        let (samples, _) = snmin(params, r, params.per_length, 0x70)?;
        let runs = lrp_runs(&samples, mix(params.seed, &[0x71, r as u64]), params.max_generations)?;
        let mut lengths: Vec<usize> = runs.iter().map(|x| x.length).collect();
        lengths.sort_unstable();
        lengths.dedup();
        let mut emit = |label: String, group: Vec<&LrpRun>| -> Result<()> {
            let avg: Vec<f64> = group.iter().map(|x| x.mu_mean).collect();
            let max: Vec<f64> = group.iter().map(|x| x.mu_max as f64).collect();
            out.push(ExperimentRecord::new(e, r, label.clone(), "1", "mu_avg", mean(&avg), group.len(), params.seed)?);
            out.push(ExperimentRecord::new(e, r, label, "1", "mu_max", mean(&max), group.len(), params.seed)?);
            Ok(())
        };
        if runs.is_empty() {
            continue;
        }
        emit("all".into(), runs.iter().collect())?;
        for l in lengths {
            emit(l.to_string(), runs.iter().filter(|x| x.length == l).collect())?;
        }
    }
    Ok(out)
}

/// Primitive words whose length lies within 20% of `target`, drawn from
/// walks of growing length. May return fewer than `count` words.
pub fn primitive_near_length(rank: usize, target: usize, count: usize, seed: u64) -> Result<Vec<PrimitiveSample>> {
    let lo = target - target / 5;
    let hi = target + target / 5;
    let mut out = Vec::new();
    let mut walk = 1;
    let mut round = 0u64;
    while out.len() < count && round < 400 {
        let spec = SampleSpec::new(rank, vec![walk], 20, mix(seed, &[0x80, round]))?;
        let batch = gen_sp(&spec)?;
        let too_short = batch.iter().filter(|s| s.word.len() < lo).count();
        out.extend(batch.into_iter().filter(|s| (lo..=hi).contains(&s.word.len())));
        if too_short > 10 {
            walk += 1;
        }
        round += 1;
    }
    out.truncate(count);
    Ok(out)
}

/// Seconds taken by DWA and by GWA (perfect termination) on `w`; `None`
/// when the GWA run hits `timeout`.
pub fn time_dwa_gwa(w: &Word, seed: u64, timeout: Option<Duration>) -> Result<(f64, Option<f64>, usize, usize)> {
    let u = WordTuple::single(w.clone());
    let start = Instant::now();
    let d = dwa_type2(&u)?;
    let dwa_secs = start.elapsed().as_secs_f64();
    let mut cfg = primitive_config(seed);
    cfg.time_limit = timeout;
    let start = Instant::now();
    let g = gwa::run(&u, &cfg)?;
    let gwa_secs = start.elapsed().as_secs_f64();
    let gwa_secs = (!g.timed_out).then_some(gwa_secs);
    Ok((dwa_secs, gwa_secs, d.output.total_length(), g.output.total_length()))
}

fn exp_dwa_vs_gwa(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::DwaVsGwa;
    let mut out = Vec::new();
    // sequential on purpose: timings must not compete for cores
    for &r in &params.ranks {
        for &l in &params.lengths {
            let seed = mix(params.seed, &[0x81, r as u64, l as u64]);
            let samples = primitive_near_length(r, l, params.per_length, seed)?;
            if samples.is_empty() {
                continue;
            }
            let mut dwa = Vec::new();
            let mut gwa = Vec::new();
            let mut gwa_na = false;
            for (i, s) in samples.iter().enumerate() {
                let (d, g, _, _) = time_dwa_gwa(&s.word, mix(seed, &[i as u64]), params.timeout)?;
                dwa.push(d);
                match g {
                    Some(g) => gwa.push(g),
                    None => gwa_na = true,
                }
            }
            let gwa_mean = if gwa_na { None } else { mean(&gwa) };
            out.push(ExperimentRecord::new(e, r, l.to_string(), "all", "dwa_secs", mean(&dwa), samples.len(), params.seed)?);
            out.push(ExperimentRecord::new(e, r, l.to_string(), "all", "gwa_secs", gwa_mean, samples.len(), params.seed)?);
        }
    }
    Ok(out)
}

/// Whether descent over `T` alone reaches a minimal word without getting
/// stuck at a local minimum.
pub fn t_descent_is_monotone(w: &Word) -> Result<bool> {
    let t = enumerate_restricted(w.rank())?;
    let omega = type2_set(w.rank())?;
    let mut cur = WordTuple::single(w.clone());
    loop {
        if let Some((_, next)) = elr(&cur, &t)? {
            cur = next;
            continue;
        }
        return Ok(elr(&cur, &omega)?.is_none());
    }
}

fn exp_monotonicity(params: &ExpParams) -> Result<Vec<ExperimentRecord>> {
    let e = Experiment::Monotonicity;
    let mut out = Vec::new();
    for &r in &params.ranks {
        let (samples, _) = snmin(params, r, params.per_length, 0x90)?;
        if samples.is_empty() {
            continue;
        }
        let flags = samples
            .par_iter()
            .map(|s| t_descent_is_monotone(&s.word))
            .collect::<Result<Vec<bool>>>()?;
        let control = samples
            .par_iter()
            .map(|s| {
                let d = dwa_type2(&WordTuple::single(s.word.clone()))?;
                is_minimal(&d.output)
            })
            .collect::<Result<Vec<bool>>>()?;
        out.push(ExperimentRecord::new(e, r, params.band(), "1", "monotone_fraction", fraction(&flags), flags.len(), params.seed)?);
        out.push(ExperimentRecord::new(e, r, params.band(), "1", "dwa_monotone_fraction", fraction(&control), control.len(), params.seed)?);
    }
    Ok(out)
}
