//! Whitehead automorphisms of `F_n`: signed permutations (type 1), the
//! multiplier maps of type 2, and the restricted generating set `T`.
//!
//! Automorphisms act on the right: `w t1 t2` means substitute with `t1`
//! first, then with `t2`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::word::{check_rank, push_reduced, Letter, Word, WordTuple};

/// Image of a single generator under a Whitehead automorphism.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Image {
    len: u8,
    letters: [Letter; 3],
}

impl Image {
    fn one(a: Letter) -> Self {
        Image {
            len: 1,
            letters: [a, a, a],
        }
    }

    fn two(a: Letter, b: Letter) -> Self {
        Image {
            len: 2,
            letters: [a, b, b],
        }
    }

    fn three(a: Letter, b: Letter, c: Letter) -> Self {
        Image {
            len: 3,
            letters: [a, b, c],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters[..self.len as usize]
    }
}

pub trait Automorphism {
    /// Fails if the automorphism cannot act on words of `rank`.
    fn check_rank(&self, rank: usize) -> Result<()>;

    /// Image of `x_generator`.
    fn image(&self, generator: usize) -> Image;

    /// Substitution routine: replace every letter by its image, then cancel.
    fn apply(&self, w: &Word) -> Result<Word> {
        self.check_rank(w.rank())?;
        let mut buf = Vec::with_capacity(w.len() + w.len() / 2);
        substitute(self, w.rank(), w.letters(), &mut buf);
        Ok(Word::from_reduced(w.rank(), buf))
    }

    fn apply_tuple(&self, u: &WordTuple) -> Result<WordTuple> {
        let words = u
            .words()
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(WordTuple::from_parts(u.rank(), words))
    }

    /// `|Ut|` without keeping the result. `buf` is scratch space.
    fn image_length(&self, u: &WordTuple, buf: &mut Vec<Letter>) -> usize {
        u.words()
            .iter()
            .map(|w| {
                buf.clear();
                substitute(self, u.rank(), w.letters(), buf);
                buf.len()
            })
            .sum()
    }
}

pub(crate) fn substitute<A: Automorphism + ?Sized>(
    t: &A,
    rank: usize,
    letters: &[Letter],
    buf: &mut Vec<Letter>,
) {
    let table: Vec<Image> = (1..=rank).map(|g| t.image(g)).collect();
    for &l in letters {
        let img = &table[l.generator() - 1];
        if l.is_inverse() {
            for &m in img.letters().iter().rev() {
                push_reduced(buf, m.inverse());
            }
        } else {
            for &m in img.letters() {
                push_reduced(buf, m);
            }
        }
    }
}

/// A type-1 automorphism: a signed permutation of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Type1Auto {
    image: Vec<Letter>,
}

impl Type1Auto {
    pub fn new(image: Vec<Letter>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for l in &image {
            let g = l.generator();
            if g == 0 || g > n || seen[g - 1] {
                return Err(Error::Parse(format!(
                    "type-1 image is not a signed permutation of rank {n}"
                )));
            }
            seen[g - 1] = true;
        }
        Ok(Type1Auto { image })
    }

    pub fn identity(rank: usize) -> Self {
        Type1Auto {
            image: (1..=rank).map(Letter::gen).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.image.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(k, l)| l.generator() == k + 1 && !l.is_inverse())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![Letter::gen(1); self.rank()];
        for (k, l) in self.image.iter().enumerate() {
            // x_k -> x_g^s  gives  x_g -> x_k^s
            inv[l.generator() - 1] = Letter::new(k + 1, l.is_inverse());
        }
        Type1Auto { image: inv }
    }
}

impl Automorphism for Type1Auto {
    fn check_rank(&self, rank: usize) -> Result<()> {
        check_rank(self.rank(), rank)
    }

    fn image(&self, generator: usize) -> Image {
        Image::one(self.image[generator - 1])
    }
}

/// What a type-2 automorphism does to one generator `x`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// `x -> x`
    Fix,
    /// `x -> x a`
    RightMult,
    /// `x -> a^{-1} x`
    LeftMult,
    /// `x -> a^{-1} x a`
    Conj,
}

impl Action {
    const ALL: [Action; 4] = [Action::Fix, Action::RightMult, Action::LeftMult, Action::Conj];

    fn code(self) -> char {
        match self {
            Action::Fix => '-',
            Action::RightMult => 'R',
            Action::LeftMult => 'L',
            Action::Conj => 'C',
        }
    }

    fn from_code(c: char) -> Result<Self> {
        match c {
            '-' | '.' => Ok(Action::Fix),
            'R' => Ok(Action::RightMult),
            'L' => Ok(Action::LeftMult),
            'C' => Ok(Action::Conj),
            _ => Err(Error::Parse(format!("unknown action code '{c}'"))),
        }
    }
}

/// A type-2 automorphism with multiplier `a`. The entry of `actions` at the
/// multiplier's own generator is always [`Action::Fix`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Type2Auto {
    multiplier: Letter,
    actions: Vec<Action>,
}

impl Type2Auto {
    pub fn new(multiplier: Letter, actions: Vec<Action>) -> Result<Self> {
        let g = multiplier.generator();
        if g == 0 || g > actions.len() {
            return Err(Error::InvalidLetter {
                generator: g,
                rank: actions.len(),
            });
        }
        if actions[g - 1] != Action::Fix {
            return Err(Error::Parse("the multiplier's own generator must be fixed".into()));
        }
        Ok(Type2Auto {
            multiplier,
            actions,
        })
    }

    pub fn rank(&self) -> usize {
        self.actions.len()
    }

    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn is_identity(&self) -> bool {
        self.actions.iter().all(|&a| a == Action::Fix)
    }

    /// Same action codes with the multiplier inverted.
    pub fn inverse(&self) -> Self {
        Type2Auto {
            multiplier: self.multiplier.inverse(),
            actions: self.actions.clone(),
        }
    }
}

impl Automorphism for Type2Auto {
    fn check_rank(&self, rank: usize) -> Result<()> {
        check_rank(self.rank(), rank)
    }

    fn image(&self, generator: usize) -> Image {
        let x = Letter::gen(generator);
        let a = self.multiplier;
        match self.actions[generator - 1] {
            Action::Fix => Image::one(x),
            Action::RightMult => Image::two(x, a),
            Action::LeftMult => Image::two(a.inverse(), x),
            Action::Conj => Image::three(a.inverse(), x, a),
        }
    }
}

/// An element of the restricted set `T`. Indices are 1-based generators and
/// `inverse` selects `x_j^{-1}` in place of `x_j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RestrictedAuto {
    /// `x_i -> x_i^{-1}`
    W1 { i: usize },
    /// `x_i -> x_j^{±1} x_i`
    W2 { i: usize, j: usize, inverse: bool },
    /// `x_i -> x_i x_j^{±1}`
    W3 { i: usize, j: usize, inverse: bool },
    /// `x_i -> x_j^{-1} x_i x_j`
    W4 { i: usize, j: usize },
}

impl RestrictedAuto {
    fn max_index(&self) -> usize {
        match *self {
            RestrictedAuto::W1 { i } => i,
            RestrictedAuto::W2 { i, j, .. }
            | RestrictedAuto::W3 { i, j, .. }
            | RestrictedAuto::W4 { i, j } => i.max(j),
        }
    }

    /// The generator this element moves.
    pub fn target(&self) -> usize {
        match *self {
            RestrictedAuto::W1 { i }
            | RestrictedAuto::W2 { i, .. }
            | RestrictedAuto::W3 { i, .. }
            | RestrictedAuto::W4 { i, .. } => i,
        }
    }

    /// The inverse as a sequence over `T`; `W4` needs a conjugation by `W1`.
    pub fn inverse(&self) -> Member {
        Member(match *self {
            RestrictedAuto::W1 { .. } => vec![*self],
            RestrictedAuto::W2 { i, j, inverse } => vec![RestrictedAuto::W2 {
                i,
                j,
                inverse: !inverse,
            }],
            RestrictedAuto::W3 { i, j, inverse } => vec![RestrictedAuto::W3 {
                i,
                j,
                inverse: !inverse,
            }],
            RestrictedAuto::W4 { j, .. } => vec![
                RestrictedAuto::W1 { i: j },
                *self,
                RestrictedAuto::W1 { i: j },
            ],
        })
    }

    /// The single element of `T` inverse to this one, if there is one.
    pub fn syntactic_inverse(&self) -> Option<RestrictedAuto> {
        match *self {
            RestrictedAuto::W4 { .. } => None,
            _ => Some(self.inverse().0[0]),
        }
    }

    /// The same map viewed as a member of the full Whitehead set.
    pub fn to_whitehead(&self, rank: usize) -> WhiteheadAuto {
        let mut actions = vec![Action::Fix; rank];
        match *self {
            RestrictedAuto::W1 { i } => {
                let mut image: Vec<Letter> = (1..=rank).map(Letter::gen).collect();
                image[i - 1] = Letter::inv_gen(i);
                WhiteheadAuto::Type1(Type1Auto { image })
            }
            RestrictedAuto::W2 { i, j, inverse } => {
                actions[i - 1] = Action::LeftMult;
                WhiteheadAuto::Type2(Type2Auto {
                    multiplier: Letter::new(j, !inverse),
                    actions,
                })
            }
            RestrictedAuto::W3 { i, j, inverse } => {
                actions[i - 1] = Action::RightMult;
                WhiteheadAuto::Type2(Type2Auto {
                    multiplier: Letter::new(j, inverse),
                    actions,
                })
            }
            RestrictedAuto::W4 { i, j } => {
                actions[i - 1] = Action::Conj;
                WhiteheadAuto::Type2(Type2Auto {
                    multiplier: Letter::gen(j),
                    actions,
                })
            }
        }
    }
}

impl Automorphism for RestrictedAuto {
    fn check_rank(&self, rank: usize) -> Result<()> {
        let m = self.max_index();
        if m > rank {
            return Err(Error::RankMismatch {
                left: m,
                right: rank,
            });
        }
        Ok(())
    }

    fn image(&self, generator: usize) -> Image {
        let x = Letter::gen(generator);
        if generator != self.target() {
            return Image::one(x);
        }
        match *self {
            RestrictedAuto::W1 { .. } => Image::one(x.inverse()),
            RestrictedAuto::W2 { j, inverse, .. } => Image::two(Letter::new(j, inverse), x),
            RestrictedAuto::W3 { j, inverse, .. } => Image::two(x, Letter::new(j, inverse)),
            RestrictedAuto::W4 { j, .. } => Image::three(Letter::inv_gen(j), x, Letter::gen(j)),
        }
    }
}

impl fmt::Display for RestrictedAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |inv: bool| if inv { '-' } else { '+' };
        match *self {
            RestrictedAuto::W1 { i } => write!(f, "W1({i})"),
            RestrictedAuto::W2 { i, j, inverse } => write!(f, "W2({i},{j},{})", s(inverse)),
            RestrictedAuto::W3 { i, j, inverse } => write!(f, "W3({i},{j},{})", s(inverse)),
            RestrictedAuto::W4 { i, j } => write!(f, "W4({i},{j})"),
        }
    }
}

fn split_call<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.trim()
        .strip_prefix(head)?
        .trim()
        .strip_prefix('(')?
        .strip_suffix(')')
}

impl FromStr for RestrictedAuto {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot read restricted automorphism {s:?}"));
        let (kind, args) = ["W1", "W2", "W3", "W4"]
            .iter()
            .find_map(|k| split_call(s, k).map(|a| (*k, a)))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let idx = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(bad()),
            }
        };
        let sign = |p: &str| -> Result<bool> {
            match p {
                "+" => Ok(false),
                "-" => Ok(true),
                _ => Err(bad()),
            }
        };
        let t = match (kind, parts.as_slice()) {
            ("W1", [i]) => RestrictedAuto::W1 { i: idx(i)? },
            ("W2", [i, j, s]) => RestrictedAuto::W2 {
                i: idx(i)?,
                j: idx(j)?,
                inverse: sign(s)?,
            },
            ("W3", [i, j, s]) => RestrictedAuto::W3 {
                i: idx(i)?,
                j: idx(j)?,
                inverse: sign(s)?,
            },
            ("W4", [i, j]) => RestrictedAuto::W4 {
                i: idx(i)?,
                j: idx(j)?,
            },
            _ => return Err(bad()),
        };
        match t {
            RestrictedAuto::W1 { .. } => {}
            RestrictedAuto::W2 { i, j, .. }
            | RestrictedAuto::W3 { i, j, .. }
            | RestrictedAuto::W4 { i, j } => {
                if i == j {
                    return Err(Error::Parse(format!("{s:?}: i and j must differ")));
                }
            }
        }
        Ok(t)
    }
}

/// A sequence `<t_1, ..., t_s>` over `T`, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Member(pub Vec<RestrictedAuto>);

impl Member {
    pub fn new(ops: Vec<RestrictedAuto>) -> Self {
        Member(ops)
    }

    pub fn ops(&self) -> &[RestrictedAuto] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut cur = w.clone();
        for t in &self.0 {
            cur = t.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn apply_tuple(&self, u: &WordTuple) -> Result<WordTuple> {
        let mut cur = u.clone();
        for t in &self.0 {
            cur = t.apply_tuple(&cur)?;
        }
        Ok(cur)
    }

    /// Inverse sequence: reversed, each element inverted.
    pub fn inverse(&self) -> Member {
        Member(self.0.iter().rev().flat_map(|t| t.inverse().0).collect())
    }

    pub fn extend(&mut self, other: &Member) {
        self.0.extend_from_slice(&other.0);
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Member {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Member::default());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Member)
    }
}

/// Any element of `Ω_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WhiteheadAuto {
    Type1(Type1Auto),
    Type2(Type2Auto),
}

impl WhiteheadAuto {
    pub fn inverse(&self) -> Self {
        match self {
            WhiteheadAuto::Type1(t) => WhiteheadAuto::Type1(t.inverse()),
            WhiteheadAuto::Type2(t) => WhiteheadAuto::Type2(t.inverse()),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAuto::Type1(t) => t.rank(),
            WhiteheadAuto::Type2(t) => t.rank(),
        }
    }
}

impl Automorphism for WhiteheadAuto {
    fn check_rank(&self, rank: usize) -> Result<()> {
        match self {
            WhiteheadAuto::Type1(t) => t.check_rank(rank),
            WhiteheadAuto::Type2(t) => t.check_rank(rank),
        }
    }

    fn image(&self, generator: usize) -> Image {
        match self {
            WhiteheadAuto::Type1(t) => t.image(generator),
            WhiteheadAuto::Type2(t) => t.image(generator),
        }
    }
}

impl From<Type1Auto> for WhiteheadAuto {
    fn from(t: Type1Auto) -> Self {
        WhiteheadAuto::Type1(t)
    }
}

impl From<Type2Auto> for WhiteheadAuto {
    fn from(t: Type2Auto) -> Self {
        WhiteheadAuto::Type2(t)
    }
}

impl fmt::Display for Type1Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T1(")?;
        for (k, l) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Type2Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T2({}; ", self.multiplier)?;
        for a in &self.actions {
            write!(f, "{}", a.code())?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for WhiteheadAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAuto::Type1(t) => t.fmt(f),
            WhiteheadAuto::Type2(t) => t.fmt(f),
        }
    }
}

fn parse_letter(s: &str) -> Result<Letter> {
    let w = Word::parse(s, usize::MAX)?;
    match w.letters() {
        [l] => Ok(*l),
        _ => Err(Error::Parse(format!("expected a single letter, got {s:?}"))),
    }
}

impl FromStr for WhiteheadAuto {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(args) = split_call(s, "T2") {
            let (m, codes) = args
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("T2 needs 'a; codes' in {s:?}")))?;
            let actions = codes
                .trim()
                .chars()
                .map(Action::from_code)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Type2Auto::new(parse_letter(m)?, actions)?.into());
        }
        if let Some(args) = split_call(s, "T1") {
            let image = args
                .split(',')
                .map(parse_letter)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Type1Auto::new(image)?.into());
        }
        Err(Error::Parse(format!("cannot read Whitehead automorphism {s:?}")))
    }
}

/// `A_n = 2n·4^{n-1} - 2n`.
pub fn type2_count(n: usize) -> u64 {
    let n = n as u64;
    2 * n * 4u64.pow(n as u32 - 1) - 2 * n
}

/// `B_n = 2^n n!`.
pub fn type1_count(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// `|T| = 5n² - 4n`.
pub fn restricted_count(n: usize) -> u64 {
    let n = n as u64;
    5 * n * n - 4 * n
}

/// Lazy enumeration of the non-trivial type-2 automorphisms, ordered by
/// multiplier (`x1 < X1 < x2 < ...`) and then by action vector.
#[derive(Clone, Debug)]
pub struct Type2Iter {
    rank: usize,
    multiplier: usize,
    code: u64,
}

impl Iterator for Type2Iter {
    type Item = Type2Auto;

    fn next(&mut self) -> Option<Type2Auto> {
        let per = 4u64.pow(self.rank as u32 - 1);
        loop {
            if self.multiplier >= 2 * self.rank {
                return None;
            }
            self.code += 1;
            if self.code >= per {
                self.multiplier += 1;
                self.code = 0;
                continue;
            }
            return Some(decode_type2(self.rank, self.multiplier, self.code));
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let per = 4u64.pow(self.rank as u32 - 1);
        let left = if self.multiplier >= 2 * self.rank {
            0
        } else {
            (2 * self.rank - self.multiplier) as u64 * (per - 1) - (self.code.min(per - 1))
        };
        (left as usize, Some(left as usize))
    }
}

impl ExactSizeIterator for Type2Iter {}

fn decode_type2(rank: usize, multiplier: usize, mut code: u64) -> Type2Auto {
    let a = Letter::from_index(multiplier);
    let mut actions = vec![Action::Fix; rank];
    // the last free generator is the least significant digit
    for g in (1..=rank).rev() {
        if g == a.generator() {
            continue;
        }
        actions[g - 1] = Action::ALL[(code % 4) as usize];
        code /= 4;
    }
    Type2Auto {
        multiplier: a,
        actions,
    }
}

pub fn enumerate_type2(n: usize) -> Result<Type2Iter> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n));
    }
    if n > 31 {
        return Err(Error::UnsupportedRank(n));
    }
    Ok(Type2Iter {
        rank: n,
        multiplier: 0,
        code: 0,
    })
}

/// All `2^n n!` signed permutations, identity first.
pub fn enumerate_type1(n: usize) -> Result<Vec<Type1Auto>> {
    if n == 0 {
        return Err(Error::UnsupportedRank(n));
    }
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for g in 1..=n {
                if !p.contains(&g) {
                    let mut q = p.clone();
                    q.push(g);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in &perms {
        for signs in 0u32..(1 << n) {
            let image = p
                .iter()
                .enumerate()
                .map(|(k, &g)| Letter::new(g, signs >> k & 1 == 1))
                .collect();
            out.push(Type1Auto { image });
        }
    }
    Ok(out)
}

/// The restricted set `T`, sorted by (kind, i, j, sign).
pub fn enumerate_restricted(n: usize) -> Result<Vec<RestrictedAuto>> {
    if n == 0 {
        return Err(Error::UnsupportedRank(n));
    }
    let pairs = || {
        (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
    };
    let mut out = Vec::with_capacity(restricted_count(n) as usize);
    out.extend((1..=n).map(|i| RestrictedAuto::W1 { i }));
    for (i, j) in pairs() {
        for inverse in [false, true] {
            out.push(RestrictedAuto::W2 { i, j, inverse });
        }
    }
    for (i, j) in pairs() {
        for inverse in [false, true] {
            out.push(RestrictedAuto::W3 { i, j, inverse });
        }
    }
    out.extend(pairs().map(|(i, j)| RestrictedAuto::W4 { i, j }));
    Ok(out)
}

/// `Ω_n` in fixed order: every type-1 map, then every non-trivial type-2 map.
pub fn enumerate_whitehead(n: usize) -> Result<Vec<WhiteheadAuto>> {
    let mut out: Vec<WhiteheadAuto> = enumerate_type1(n)?
        .into_iter()
        .filter(|t| !t.is_identity())
        .map(Into::into)
        .collect();
    out.extend(enumerate_type2(n)?.map(WhiteheadAuto::from));
    Ok(out)
}

/// `T ∪ T^{-1}` as Whitehead automorphisms, without repeats.
pub fn restricted_with_inverses(n: usize) -> Result<Vec<WhiteheadAuto>> {
    let mut out: Vec<WhiteheadAuto> = Vec::new();
    for t in enumerate_restricted(n)? {
        let w = t.to_whitehead(n);
        let inv = w.inverse();
        for a in [w, inv] {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Uniform draw from the `A_n` non-trivial type-2 automorphisms.
pub fn random_type2<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Type2Auto {
    let a = Letter::from_index(rng.gen_range(0..2 * n));
    loop {
        let mut actions = vec![Action::Fix; n];
        for (g, slot) in actions.iter_mut().enumerate() {
            if g + 1 != a.generator() {
                *slot = Action::ALL[rng.gen_range(0..4)];
            }
        }
        if actions.iter().any(|&x| x != Action::Fix) {
            return Type2Auto {
                multiplier: a,
                actions,
            };
        }
    }
}
