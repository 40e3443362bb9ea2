//! The genetic Whitehead algorithm.
//!
//! Chromosomes are [`Member`]s, finite sequences over the restricted set `T`.
//! A population is scored by how much shorter each member makes the current
//! tuple, bred by roulette selection, one-point crossover and four mutations,
//! and restarted from the improved tuple whenever a member shortens it.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphism::{enumerate_restricted, Member, RestrictedAuto};
use crate::classic::{elr, type2_set};
use crate::error::{Error, Result};
use crate::word::{Letter, Word, WordTuple};

/// Expected generations per length reduction, from the published runs at
/// ranks 2, 5, 10, 15 and 20; other ranks interpolate linearly.
pub fn default_expected(rank: usize) -> f64 {
    const TABLE: [(usize, f64); 5] = [(2, 1.0), (5, 3.0), (10, 7.0), (15, 12.0), (20, 18.0)];
    if rank <= TABLE[0].0 {
        return TABLE[0].1;
    }
    for w in TABLE.windows(2) {
        let ((r0, e0), (r1, e1)) = (w[0], w[1]);
        if rank <= r1 {
            return e0 + (e1 - e0) * (rank - r0) as f64 / (r1 - r0) as f64;
        }
    }
    let (r, e) = TABLE[4];
    e + 1.2 * (rank - r) as f64
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Termination {
    /// Stop once an ELR sweep over the type-2 automorphisms finds nothing.
    T1,
    /// Stop once the length reaches `target`.
    T2 { target: usize },
    /// Stop after `p·expected` generations without improvement.
    T3 { expected: f64, p: f64 },
    /// T3, then one ELR sweep to confirm minimality.
    T4 { expected: f64, p: f64 },
}

impl Termination {
    pub fn t3_for_rank(rank: usize) -> Self {
        Termination::T3 {
            expected: default_expected(rank),
            p: 2.0,
        }
    }

    pub fn t4_for_rank(rank: usize) -> Self {
        Termination::T4 {
            expected: default_expected(rank),
            p: 2.0,
        }
    }

    fn stall_limit(&self) -> Option<u64> {
        match *self {
            Termination::T3 { expected, p } | Termination::T4 { expected, p } => {
                Some((p * expected).ceil().max(1.0) as u64)
            }
            _ => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    Attach,
    Insert,
    Delete,
    Replace,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MutationWeights {
    pub attach: f64,
    pub insert: f64,
    pub delete: f64,
    pub replace: f64,
}

impl Default for MutationWeights {
    fn default() -> Self {
        MutationWeights {
            attach: 0.7,
            insert: 0.1,
            delete: 0.1,
            replace: 0.1,
        }
    }
}

impl MutationWeights {
    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> Mutation {
        let x: f64 = rng.gen();
        if x < self.attach {
            Mutation::Attach
        } else if x < self.attach + self.insert {
            Mutation::Insert
        } else if x < self.attach + self.insert + self.delete {
            Mutation::Delete
        } else {
            Mutation::Replace
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwaConfig {
    pub population_size: usize,
    /// Probability that a selected pair is copied instead of crossed over.
    pub p_copy: f64,
    /// Probability that a member of the intermediate population is mutated.
    pub p_mutate: f64,
    pub weights: MutationWeights,
    pub termination: Termination,
    /// Score members by cyclically reduced length. A single input word is
    /// then also replaced by its cyclic core before every restart, with the
    /// conjugation written out in `T` and appended to the witness.
    pub cyclic_fitness: bool,
    pub seed: u64,
    /// Inclusive range of member lengths in a fresh population.
    pub init_len: (usize, usize),
    pub max_member_len: usize,
    /// Hard stop on the total number of generations.
    pub max_generations: Option<u64>,
    /// Wall-clock limit; a run that hits it reports `timed_out`.
    pub time_limit: Option<Duration>,
}

impl GwaConfig {
    pub fn new(termination: Termination, seed: u64) -> Self {
        GwaConfig {
            population_size: 50,
            p_copy: 0.12,
            p_mutate: 0.85,
            weights: MutationWeights::default(),
            termination,
            cyclic_fitness: false,
            seed,
            init_len: (1, 1),
            max_member_len: 64,
            max_generations: None,
            time_limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        let w = &self.weights;
        if self.population_size == 0 {
            return Err(Error::Config("population size must be positive".into()));
        }
        if !prob(self.p_copy) || !prob(self.p_mutate) {
            return Err(Error::Config("probabilities must lie in [0, 1]".into()));
        }
        let weights = [w.attach, w.insert, w.delete, w.replace];
        if !weights.iter().all(|&p| prob(p)) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::Config("mutation weights must sum to 1".into()));
        }
        if self.init_len.0 > self.init_len.1 || self.init_len.1 > self.max_member_len {
            return Err(Error::Config("bad initial member length range".into()));
        }
        if let Termination::T3 { expected, p } | Termination::T4 { expected, p } = self.termination {
            if expected <= 0.0 || p < 1.0 {
                return Err(Error::Config("T3/T4 need expected > 0 and p >= 1".into()));
            }
        }
        Ok(())
    }
}

/// Tuple length as seen by the fitness function.
pub fn measure(u: &WordTuple, cyclic: bool) -> usize {
    if cyclic {
        u.cyclic_length()
    } else {
        u.total_length()
    }
}

/// `Fit(μ) = max_λ |Uλ| - |Uμ|`.
pub fn fitness(lengths: &[usize]) -> Vec<u64> {
    let max = lengths.iter().copied().max().unwrap_or(0);
    lengths.iter().map(|&l| (max - l) as u64).collect()
}

/// Roulette-wheel selection; uniform when every fitness is zero.
pub fn select<R: Rng + ?Sized>(fitness: &[u64], rng: &mut R) -> usize {
    let total: u64 = fitness.iter().sum();
    if total == 0 {
        return rng.gen_range(0..fitness.len());
    }
    let mut x = rng.gen_range(0..total);
    for (i, &f) in fitness.iter().enumerate() {
        if x < f {
            return i;
        }
        x -= f;
    }
    unreachable!("roulette ran past the total")
}

/// One-point crossover at 1-based cut points `p` (in `a`) and `q` (in `b`):
/// `o1 = a[..p-1] ++ b[q-1..]`, `o2 = b[..q-1] ++ a[p-1..]`.
pub fn crossover_at(a: &Member, b: &Member, p: usize, q: usize) -> (Member, Member) {
    let (a, b) = (a.ops(), b.ops());
    let o1 = a[..p - 1].iter().chain(&b[q - 1..]).copied().collect();
    let o2 = b[..q - 1].iter().chain(&a[p - 1..]).copied().collect();
    (Member::new(o1), Member::new(o2))
}

/// Crossover with cut points `0 < p < |a|`, `0 < q < |b|`. Members shorter
/// than two have no admissible cut and pass through unchanged, as do
/// offspring that would exceed `cap` twice in a row.
pub fn crossover<R: Rng + ?Sized>(a: &Member, b: &Member, cap: usize, rng: &mut R) -> (Member, Member) {
    if a.len() < 2 || b.len() < 2 {
        return (a.clone(), b.clone());
    }
    for _ in 0..2 {
        let p = rng.gen_range(1..a.len());
        let q = rng.gen_range(1..b.len());
        let (o1, o2) = crossover_at(a, b, p, q);
        if o1.len() <= cap && o2.len() <= cap {
            return (o1, o2);
        }
    }
    (a.clone(), b.clone())
}

pub fn mutate<R: Rng + ?Sized>(
    m: &Member,
    kind: Mutation,
    t: &[RestrictedAuto],
    cap: usize,
    rng: &mut R,
) -> Member {
    let mut ops = m.ops().to_vec();
    match kind {
        Mutation::Attach if ops.len() < cap => ops.push(*t.choose(rng).unwrap()),
        Mutation::Insert if ops.len() < cap => {
            let pos = rng.gen_range(0..=ops.len());
            ops.insert(pos, *t.choose(rng).unwrap());
        }
        Mutation::Delete if !ops.is_empty() => {
            let pos = rng.gen_range(0..ops.len());
            ops.remove(pos);
        }
        Mutation::Replace if !ops.is_empty() => {
            let pos = rng.gen_range(0..ops.len());
            ops[pos] = *t.choose(rng).unwrap();
        }
        _ => {}
    }
    Member::new(ops)
}

/// A scored population.
#[derive(Clone, Debug, PartialEq)]
pub struct Population {
    members: Vec<Member>,
    lengths: Vec<usize>,
    fitness: Vec<u64>,
}

impl Population {
    pub fn evaluate(u: &WordTuple, members: Vec<Member>, cyclic: bool) -> Result<Self> {
        let lengths = members
            .iter()
            .map(|m| Ok(measure(&m.apply_tuple(u)?, cyclic)))
            .collect::<Result<Vec<_>>>()?;
        let fitness = fitness(&lengths);
        Ok(Population {
            members,
            lengths,
            fitness,
        })
    }

    pub fn random<R: Rng + ?Sized>(
        u: &WordTuple,
        t: &[RestrictedAuto],
        cfg: &GwaConfig,
        rng: &mut R,
    ) -> Result<Self> {
        let members = (0..cfg.population_size)
            .map(|_| {
                let len = rng.gen_range(cfg.init_len.0..=cfg.init_len.1);
                Member::new((0..len).map(|_| *t.choose(rng).unwrap()).collect())
            })
            .collect();
        Self::evaluate(u, members, cfg.cyclic_fitness)
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn fitness(&self) -> &[u64] {
        &self.fitness
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the fittest member (first one on ties).
    pub fn best(&self) -> usize {
        let mut best = 0;
        for (i, &l) in self.lengths.iter().enumerate() {
            if l < self.lengths[best] {
                best = i;
            }
        }
        best
    }

    fn weakest(&self) -> usize {
        let mut worst = 0;
        for (i, &l) in self.lengths.iter().enumerate() {
            if l > self.lengths[worst] {
                worst = i;
            }
        }
        worst
    }

    fn member_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(Member::len)
    }
}

/// Breeds the next population: selection with copy-or-crossover into an
/// intermediate population, mutation, then the elite replaces the weakest
/// member.
pub fn next_population<R: Rng + ?Sized>(
    u: &WordTuple,
    pop: &Population,
    elite: &Member,
    t: &[RestrictedAuto],
    cfg: &GwaConfig,
    rng: &mut R,
) -> Result<Population> {
    let size = cfg.population_size;
    let mut inter: Vec<Member> = Vec::with_capacity(size + 1);
    while inter.len() < size {
        let a = &pop.members[select(&pop.fitness, rng)];
        let b = &pop.members[select(&pop.fitness, rng)];
        if rng.gen_bool(cfg.p_copy) {
            inter.push(a.clone());
            inter.push(b.clone());
        } else {
            let (o1, o2) = crossover(a, b, cfg.max_member_len, rng);
            inter.push(o1);
            inter.push(o2);
        }
    }
    inter.truncate(size);
    let members = inter
        .into_iter()
        .map(|m| {
            if rng.gen_bool(cfg.p_mutate) {
                let kind = cfg.weights.pick(rng);
                mutate(&m, kind, t, cfg.max_member_len, rng)
            } else {
                m
            }
        })
        .collect();
    let mut next = Population::evaluate(u, members, cfg.cyclic_fitness)?;
    let w = next.weakest();
    next.lengths[w] = measure(&elite.apply_tuple(u)?, cfg.cyclic_fitness);
    next.members[w] = elite.clone();
    next.fitness = fitness(&next.lengths);
    Ok(next)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verified {
    Yes,
    No,
    Unchecked,
}

impl fmt::Display for Verified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verified::Yes => "yes",
            Verified::No => "no",
            Verified::Unchecked => "unchecked",
        })
    }
}

/// Member-length statistics over every population of a run.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct MemberStats {
    pub total_len: u64,
    pub count: u64,
    pub max_len: usize,
}

impl MemberStats {
    fn record(&mut self, pop: &Population) {
        for l in pop.member_lengths() {
            self.total_len += l as u64;
            self.count += 1;
            self.max_len = self.max_len.max(l);
        }
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.total_len as f64 / self.count as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwaResult {
    pub input: WordTuple,
    pub output: WordTuple,
    /// Carries `input` to `output`.
    pub witness: Member,
    pub generations: u64,
    pub substitutions: u64,
    pub verified_minimal: Verified,
    /// Generation counter at each substitution.
    pub reductions_at: Vec<u64>,
    pub member_stats: MemberStats,
    pub timed_out: bool,
}

impl GwaResult {
    /// Tab-separated record: input, output, witness, generations,
    /// substitutions, verification, wall time.
    pub fn record(&self, wall_secs: f64) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.6}",
            self.input,
            self.output,
            self.witness,
            self.generations,
            self.substitutions,
            self.verified_minimal,
            wall_secs
        )
    }
}

/// Elements of `T` whose composite is the inner automorphism
/// `w ↦ y⁻¹ w y`: conjugate every other generator by `x_j`, flanked by
/// `W1(j)` when `y = x_j⁻¹`.
pub fn inner_member(rank: usize, y: Letter) -> Member {
    let j = y.generator();
    let mut ops: Vec<RestrictedAuto> = (1..=rank)
        .filter(|&i| i != j)
        .map(|i| RestrictedAuto::W4 { i, j })
        .collect();
    if y.is_inverse() {
        ops.insert(0, RestrictedAuto::W1 { i: j });
        ops.push(RestrictedAuto::W1 { i: j });
    }
    Member::new(ops)
}

/// Elements of `T` carrying `c · v · c⁻¹` to `v`, one inner automorphism per
/// letter of `c`.
pub fn strip_conjugator(rank: usize, c: &Word) -> Member {
    let mut m = Member::default();
    for &y in c.letters() {
        m.extend(&inner_member(rank, y));
    }
    m
}

/// Replaces a single word by its cyclic core, recording the conjugation.
fn normalize(cur: &mut WordTuple, witness: &mut Member) -> Result<()> {
    if cur.k() != 1 {
        return Ok(());
    }
    let (core, conj) = cur.words()[0].cyclic_reduce();
    if conj.is_empty() {
        return Ok(());
    }
    let m = strip_conjugator(cur.rank(), &conj);
    let next = m.apply_tuple(cur)?;
    debug_assert_eq!(next.words()[0], core);
    *cur = next;
    witness.extend(&m);
    Ok(())
}

/// Runs the genetic algorithm with the Substitution Method until the
/// configured termination condition holds.
pub fn run(u: &WordTuple, cfg: &GwaConfig) -> Result<GwaResult> {
    cfg.validate()?;
    let n = u.rank();
    if n < 2 {
        return Err(Error::UnsupportedRank(n));
    }
    let t = enumerate_restricted(n)?;
    let type2 = match cfg.termination {
        Termination::T1 | Termination::T4 { .. } => type2_set(n)?,
        _ => Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = u.clone();
    let mut witness = Member::default();
    let mut generations = 0u64;
    let mut substitutions = 0u64;
    let mut reductions_at = Vec::new();
    let mut stats = MemberStats::default();
    let mut verified = Verified::Unchecked;
    let start = Instant::now();
    let mut timed_out = false;
    let mut out_of_time = |g: u64| {
        if cfg.time_limit.is_some_and(|t| start.elapsed() >= t) {
            timed_out = true;
        }
        timed_out || cfg.max_generations.is_some_and(|m| g >= m)
    };

    'restart: loop {
        if cfg.cyclic_fitness {
            normalize(&mut cur, &mut witness)?;
        }
        match cfg.termination {
            Termination::T1 => {
                if elr(&cur, &type2)?.is_none() {
                    verified = Verified::Yes;
                    break;
                }
            }
            Termination::T2 { target } if measure(&cur, cfg.cyclic_fitness) <= target => break,
            _ => {}
        }
        if out_of_time(generations) {
            break;
        }
        let cur_len = measure(&cur, cfg.cyclic_fitness);
        let mut pop = Population::random(&cur, &t, cfg, &mut rng)?;
        generations += 1;
        let mut elite = pop.members[pop.best()].clone();
        let mut elite_len = pop.lengths[pop.best()];
        let mut stalled = 0u64;
        loop {
            stats.record(&pop);
            let b = pop.best();
            if pop.lengths[b] < cur_len {
                let mu = pop.members[b].clone();
                cur = mu.apply_tuple(&cur)?;
                witness.extend(&mu);
                substitutions += 1;
                reductions_at.push(generations);
                continue 'restart;
            }
            if pop.lengths[b] < elite_len {
                elite = pop.members[b].clone();
                elite_len = pop.lengths[b];
            }
            stalled += 1;
            if cfg.termination.stall_limit().is_some_and(|s| stalled >= s) {
                if let Termination::T4 { .. } = cfg.termination {
                    verified = if elr(&cur, &type2)?.is_none() {
                        Verified::Yes
                    } else {
                        Verified::No
                    };
                }
                break 'restart;
            }
            if out_of_time(generations) {
                break 'restart;
            }
            pop = next_population(&cur, &pop, &elite, &t, cfg, &mut rng)?;
            generations += 1;
        }
    }

    Ok(GwaResult {
        input: u.clone(),
        output: cur,
        witness,
        generations,
        substitutions,
        verified_minimal: verified,
        reductions_at,
        member_stats: stats,
        timed_out,
    })
}

/// Outcome of a single length-reduction search.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub witness: Member,
    pub output: WordTuple,
    /// Populations evaluated, counting the initial one.
    pub generations: u64,
    pub member_stats: MemberStats,
}

/// Evolves one population until some member shortens `u`. Gives up after
/// `p·E` stagnant generations under T3/T4, otherwise after
/// `max_generations` (default 10 000).
pub fn length_reduction_step(u: &WordTuple, cfg: &GwaConfig) -> Result<Option<Reduction>> {
    let (reduction, _) = length_reduction_search(u, cfg)?;
    Ok(reduction)
}

/// Like [`length_reduction_step`] but also reports member statistics and
/// the generations spent when no reduction was found.
pub fn length_reduction_search(
    u: &WordTuple,
    cfg: &GwaConfig,
) -> Result<(Option<Reduction>, (u64, MemberStats))> {
    cfg.validate()?;
    let n = u.rank();
    if n < 2 {
        return Err(Error::UnsupportedRank(n));
    }
    let limit = cfg
        .termination
        .stall_limit()
        .or(cfg.max_generations)
        .unwrap_or(10_000);
    let t = enumerate_restricted(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cur_len = measure(u, cfg.cyclic_fitness);
    let mut stats = MemberStats::default();
    let mut pop = Population::random(u, &t, cfg, &mut rng)?;
    let mut generations = 1;
    let mut elite = pop.members[pop.best()].clone();
    let mut elite_len = pop.lengths[pop.best()];
    loop {
        stats.record(&pop);
        let b = pop.best();
        if pop.lengths[b] < cur_len {
            let witness = pop.members[b].clone();
            let output = witness.apply_tuple(u)?;
            return Ok((
                Some(Reduction {
                    witness,
                    output,
                    generations,
                    member_stats: stats,
                }),
                (generations, stats),
            ));
        }
        if pop.lengths[b] < elite_len {
            elite = pop.members[b].clone();
            elite_len = pop.lengths[b];
        }
        if generations >= limit {
            return Ok((None, (generations, stats)));
        }
        pop = next_population(u, &pop, &elite, &t, cfg, &mut rng)?;
        generations += 1;
    }
}

/// Applies `witness` to `input` and checks the claimed output.
pub fn verify_witness(input: &WordTuple, witness: &Member, output: &WordTuple) -> Result<bool> {
    Ok(&witness.apply_tuple(input)? == output)
}
