//! Pseudo-random test sets: random words, certified non-minimal words,
//! primitive words with their generating automorphism, and a loop that
//! grows a sample until a statistic settles.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphism::{enumerate_restricted, random_type2, Automorphism, Member, RestrictedAuto, Type2Auto};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Independent, reproducible RNG stream for one cell of a computation.
pub fn stream_rng(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut h = 0x9e37_79b9_7f4a_7c15u64;
    for &t in tags {
        h = splitmix(h ^ t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(h);
    rng
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub rank: usize,
    /// Length strata. For primitive samples these are automorphism-walk
    /// lengths rather than word lengths.
    pub lengths: Vec<usize>,
    pub per_length: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(rank: usize, lengths: Vec<usize>, per_length: usize, seed: u64) -> Result<Self> {
        let spec = SampleSpec {
            rank,
            lengths,
            per_length,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::UnsupportedRank(0));
        }
        if self.per_length == 0 {
            return Err(Error::Config("per-length count must be at least 1".into()));
        }
        if self.lengths.is_empty() {
            return Err(Error::Config("no length strata given".into()));
        }
        Ok(())
    }

    /// Header comment for serialized sample files.
    pub fn header(&self, kind: &str) -> String {
        let lengths: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        format!(
            "# {kind} rank={} lengths={} per_length={} seed={}",
            self.rank,
            lengths.join(","),
            self.per_length,
            self.seed
        )
    }
}

/// A freely reduced word of length `l` drawn by a no-return random walk.
pub fn random_word<R: Rng + ?Sized>(rank: usize, l: usize, rng: &mut R) -> Word {
    assert!(rank >= 1, "rank must be positive");
    let mut letters: Vec<Letter> = Vec::with_capacity(l);
    for _ in 0..l {
        let next = match letters.last() {
            None => Letter::from_index(rng.gen_range(0..2 * rank)),
            Some(prev) => {
                // skip the inverse of the predecessor in the index order
                let forbidden = prev.inverse().index();
                let mut k = rng.gen_range(0..2 * rank - 1);
                if k >= forbidden {
                    k += 1;
                }
                Letter::from_index(k)
            }
        };
        letters.push(next);
    }
    Word::from_reduced(rank, letters)
}

/// `K` random words per length stratum, duplicates kept.
pub fn gen_sf(spec: &SampleSpec) -> Result<Vec<Word>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.lengths.len() * spec.per_length);
    for (s, &l) in spec.lengths.iter().enumerate() {
        let mut rng = stream_rng(spec.seed, &[0x5f, s as u64]);
        out.extend((0..spec.per_length).map(|_| random_word(spec.rank, l, &mut rng)));
    }
    Ok(out)
}

/// Draws per base word when searching for a lengthening automorphism.
pub const SNMIN_RETRIES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMinimalSample {
    pub base: Word,
    pub auto: Type2Auto,
    /// `base · auto`, strictly longer than `base`.
    pub word: Word,
}

/// A random cyclically reduced word of length `l`, by rejection.
pub fn random_cyclic_word<R: Rng + ?Sized>(rank: usize, l: usize, rng: &mut R) -> Word {
    loop {
        let w = random_word(rank, l, rng);
        if w.cyclic_len() == w.len() {
            return w;
        }
    }
}

/// Non-minimal words `wφ` with `w` random and `φ` a uniformly random
/// non-trivial type-2 automorphism that lengthens it.
///
/// Both `w` and `wφ` are cyclically reduced, so the samples are non-minimal
/// as cyclic words too and `φ` is never a disguised conjugation. Base words
/// for which no draw qualifies are skipped; the skip count is returned.
pub fn gen_snmin(spec: &SampleSpec) -> Result<(Vec<NonMinimalSample>, usize)> {
    spec.validate()?;
    if spec.rank < 2 {
        return Err(Error::UnsupportedRank(spec.rank));
    }
    let mut out = Vec::new();
    let mut skipped = 0;
    for (s, &l) in spec.lengths.iter().enumerate() {
        let mut rng = stream_rng(spec.seed, &[0x6e, s as u64]);
        for _ in 0..spec.per_length {
            let base = random_cyclic_word(spec.rank, l, &mut rng);
            let found = (0..SNMIN_RETRIES).find_map(|_| {
                let auto = random_type2(spec.rank, &mut rng);
                let word = auto.apply(&base).expect("rank checked");
                (word.len() > base.len() && word.cyclic_len() == word.len()).then_some((auto, word))
            });
            match found {
                Some((auto, word)) => out.push(NonMinimalSample { base: base.clone(), auto, word }),
                None => skipped += 1,
            }
        }
    }
    Ok((out, skipped))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSample {
    pub generator: Word,
    pub member: Member,
    /// `generator · member`.
    pub word: Word,
}

/// A no-return walk of length `l` over `T`: no element follows its own
/// single-element inverse (`W4` has none, so it is never excluded).
pub fn random_member<R: Rng + ?Sized>(t: &[RestrictedAuto], l: usize, rng: &mut R) -> Member {
    let mut ops: Vec<RestrictedAuto> = Vec::with_capacity(l);
    while ops.len() < l {
        let next = *t.choose(rng).expect("T is nonempty");
        if let Some(prev) = ops.last() {
            if prev.syntactic_inverse() == Some(next) {
                continue;
            }
        }
        ops.push(next);
    }
    Member::new(ops)
}

/// Primitive words `xφ`: `x` a uniform generator, `φ` a no-return walk
/// over `T` whose length runs over `spec.lengths`.
pub fn gen_sp(spec: &SampleSpec) -> Result<Vec<PrimitiveSample>> {
    spec.validate()?;
    let t = enumerate_restricted(spec.rank)?;
    let mut out = Vec::new();
    for (s, &l) in spec.lengths.iter().enumerate() {
        let mut rng = stream_rng(spec.seed, &[0x70, s as u64]);
        for _ in 0..spec.per_length {
            let g = rng.gen_range(1..=spec.rank);
            let generator = Word::generator(spec.rank, g)?;
            let member = random_member(&t, l, &mut rng);
            let word = member.apply(&generator)?;
            out.push(PrimitiveSample {
                generator,
                member,
                word,
            });
        }
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct StabilizationSpec {
    pub epsilon: f64,
    /// Consecutive steps within `epsilon` needed to stop.
    pub n: usize,
    /// Samples added per step.
    pub growth: usize,
    /// Safety cap on the number of steps.
    pub max_steps: usize,
}

impl StabilizationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 || self.n == 0 || self.growth == 0 {
            return Err(Error::Config("stabilization needs epsilon > 0, N >= 1, growth >= 1".into()));
        }
        Ok(())
    }
}

/// Grows a sample with `generate(step, count)` until the characteristic
/// `chi` changes by at most `epsilon` for `n` consecutive steps. Returns the
/// sample and the trajectory of `chi` (initial value first).
pub fn stabilize<S, G, C>(mut generate: G, chi: C, spec: &StabilizationSpec) -> Result<(Vec<S>, Vec<f64>)>
where
    G: FnMut(usize, usize) -> Vec<S>,
    C: Fn(&[S]) -> f64,
{
    spec.validate()?;
    let mut sample = generate(0, spec.growth);
    let mut history = vec![chi(&sample)];
    let mut stable = 0;
    let mut step = 1;
    while stable < spec.n {
        if step > spec.max_steps {
            return Err(Error::Config(format!(
                "characteristic did not stabilize within {} steps",
                spec.max_steps
            )));
        }
        sample.extend(generate(step, spec.growth));
        let value = chi(&sample);
        let prev = *history.last().unwrap();
        if (value - prev).abs() <= spec.epsilon {
            stable += 1;
        } else {
            stable = 0;
        }
        history.push(value);
        step += 1;
    }
    Ok((sample, history))
}

/// Line-oriented sample files: `#` comments, then one tab-separated record
/// per line.
pub fn write_records<W: Write>(mut out: W, header: &str, records: &[Vec<String>]) -> Result<()> {
    writeln!(out, "{header}")?;
    for r in records {
        writeln!(out, "{}", r.join("\t"))?;
    }
    Ok(())
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.split('\t').map(str::to_owned).collect());
    }
    Ok(out)
}

impl NonMinimalSample {
    pub fn record(&self) -> Vec<String> {
        vec![self.word.to_string(), self.auto.to_string(), self.base.to_string()]
    }
}

impl PrimitiveSample {
    pub fn record(&self) -> Vec<String> {
        vec![self.word.to_string(), self.member.to_string(), self.generator.to_string()]
    }
}

/// Renders a TSV sample file to a string; handy for the CLI and tests.
pub fn render(header: &str, records: &[Vec<String>]) -> String {
    let mut s = String::new();
    writeln!(s, "{header}").unwrap();
    for r in records {
        writeln!(s, "{}", r.join("\t")).unwrap();
    }
    s
}
