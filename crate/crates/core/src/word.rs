//! Freely reduced words and tuples of words over `X^{±1}`.
//!
//! Two text forms are understood. The token form writes `x3` for the third
//! generator and `X3` for its inverse. The compact form uses `a..z` and
//! `A..Z` for ranks up to 26, so `abAB` is the commutator of `x1` and `x2`.
//! The empty word is spelled `1`.

use std::fmt;

use crate::error::{Error, Result};

/// A signed generator `x_g^{±1}`, stored as `+g` or `-g`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// `x_generator` (1-based).
    pub fn gen(generator: usize) -> Self {
        assert!(generator >= 1, "generators are 1-based");
        Letter(generator as i32)
    }

    /// `x_generator^{-1}`.
    pub fn inv_gen(generator: usize) -> Self {
        assert!(generator >= 1, "generators are 1-based");
        Letter(-(generator as i32))
    }

    pub fn new(generator: usize, inverse: bool) -> Self {
        if inverse {
            Self::inv_gen(generator)
        } else {
            Self::gen(generator)
        }
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 or -1.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Signed generator index: `g` for `x_g`, `-g` for its inverse.
    pub fn raw(self) -> i32 {
        self.0
    }

    /// Position in the ordering `x1 < X1 < x2 < X2 < ...`; used to enumerate
    /// multipliers in a fixed order.
    pub fn index(self) -> usize {
        2 * (self.generator() - 1) + usize::from(self.is_inverse())
    }

    pub fn from_index(index: usize) -> Self {
        Letter::new(index / 2 + 1, index % 2 == 1)
    }

    fn check(self, rank: usize) -> Result<()> {
        if self.0 == 0 || self.generator() > rank {
            return Err(Error::InvalidLetter {
                generator: self.generator(),
                rank,
            });
        }
        Ok(())
    }

    pub(crate) fn fmt_with(self, f: &mut fmt::Formatter<'_>, compact: bool) -> fmt::Result {
        let g = self.generator();
        if compact {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", (base + (g - 1) as u8) as char)
        } else if self.is_inverse() {
            write!(f, "X{g}")
        } else {
            write!(f, "x{g}")
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

/// Pushes `l` onto a reduced buffer, cancelling against the top if needed.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<Letter>, l: Letter) {
    match buf.last() {
        Some(&top) if top.0 == -l.0 => {
            buf.pop();
        }
        _ => buf.push(l),
    }
}

/// An element of `F_n`, kept freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// Freely reduces `raw` with a single stack pass.
    pub fn free_reduce<I>(rank: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut letters = Vec::new();
        for l in raw {
            l.check(rank)?;
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from signed generator indices (`-2` is `x2^{-1}`).
    pub fn from_signed(rank: usize, raw: &[i32]) -> Result<Self> {
        let mut letters = Vec::with_capacity(raw.len());
        for &r in raw {
            if r == 0 {
                return Err(Error::InvalidLetter { generator: 0, rank });
            }
            letters.push(Letter(r));
        }
        Self::free_reduce(rank, letters)
    }

    /// Trusted constructor for buffers that are already reduced and in range.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0].0 != -p[1].0));
        Word { rank, letters }
    }

    pub fn generator(rank: usize, g: usize) -> Result<Self> {
        Self::free_reduce(rank, [Letter::gen(g)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_rank(self.rank, other.rank)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Splits `w = c · core · c^{-1}` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let k = self.conjugator_len();
        let n = self.len();
        let core = Word::from_reduced(self.rank, self.letters[k..n - k].to_vec());
        let conj = Word::from_reduced(self.rank, self.letters[..k].to_vec());
        (core, conj)
    }

    /// Length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        self.len() - 2 * self.conjugator_len()
    }

    fn conjugator_len(&self) -> usize {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k].0 == -self.letters[n - 1 - k].0 {
            k += 1;
        }
        k
    }

    /// Number of occurrences of `x_g^{±1}`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator() == g).count()
    }

    /// Parses either the token form (`x1X2`) or the compact form (`aB`).
    pub fn parse(s: &str, rank: usize) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty(rank));
        }
        let letters = if s.bytes().any(|b| b.is_ascii_digit()) {
            parse_tokens(s)?
        } else {
            parse_compact(s)?
        };
        Word::free_reduce(rank, letters)
    }

    /// Smallest rank able to hold the letters of `s`.
    pub fn infer_rank(s: &str) -> Result<usize> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(0);
        }
        let letters = if s.bytes().any(|b| b.is_ascii_digit()) {
            parse_tokens(s)?
        } else {
            parse_compact(s)?
        };
        Ok(letters.iter().map(|l| l.generator()).max().unwrap_or(0))
    }
}

fn parse_tokens(s: &str) -> Result<Vec<Letter>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let inverse = match bytes[i] {
            b'x' => false,
            b'X' => true,
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            c => return Err(Error::Parse(format!("unexpected '{}' in {s:?}", c as char))),
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let g: usize = s[start..i]
            .parse()
            .map_err(|_| Error::Parse(format!("missing generator index in {s:?}")))?;
        if g == 0 {
            return Err(Error::Parse(format!("generator index 0 in {s:?}")));
        }
        out.push(Letter::new(g, inverse));
    }
    Ok(out)
}

fn parse_compact(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'a'..='z' => Ok(Letter::gen(c as usize - 'a' as usize + 1)),
            'A'..='Z' => Ok(Letter::inv_gen(c as usize - 'A' as usize + 1)),
            _ => Err(Error::Parse(format!("unexpected '{c}' in {s:?}"))),
        })
        .collect()
}

pub(crate) fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { left: a, right: b });
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let compact = self.rank <= 26;
        for l in &self.letters {
            l.fmt_with(f, compact)?;
        }
        Ok(())
    }
}

/// A `k`-tuple of words of a common rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordTuple {
    rank: usize,
    words: Vec<Word>,
}

impl WordTuple {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        let rank = words
            .first()
            .map(|w| w.rank())
            .ok_or_else(|| Error::Parse("a tuple needs at least one word".into()))?;
        for w in &words {
            check_rank(rank, w.rank())?;
        }
        Ok(WordTuple { rank, words })
    }

    pub fn single(w: Word) -> Self {
        WordTuple {
            rank: w.rank(),
            words: vec![w],
        }
    }

    pub(crate) fn from_parts(rank: usize, words: Vec<Word>) -> Self {
        WordTuple { rank, words }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn k(&self) -> usize {
        self.words.len()
    }

    pub fn total_length(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn cyclic_length(&self) -> usize {
        self.words.iter().map(Word::cyclic_len).sum()
    }

    /// Comma-separated words.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let words = s
            .split(',')
            .map(|p| Word::parse(p, rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(words)
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }
}

impl From<Word> for WordTuple {
    fn from(w: Word) -> Self {
        WordTuple::single(w)
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    /// Repeatedly deletes the first adjacent inverse pair until none is left.
    fn rewrite_oracle(mut v: Vec<i32>) -> Vec<i32> {
        loop {
            match v.windows(2).position(|p| p[0] == -p[1]) {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    fn signed(word: &Word) -> Vec<i32> {
        word.letters().iter().map(|l| l.raw()).collect()
    }

    #[test]
    fn free_reduce_examples() {
        assert!(Word::from_signed(2, &[1, 2, -2, -1]).unwrap().is_empty());
        assert_eq!(Word::from_signed(2, &[1, 2, -1]).unwrap(), w("abA"));
        let raw = [1, -1, 1, 2];
        let reduced = Word::from_signed(2, &raw).unwrap();
        assert_eq!(signed(&reduced), rewrite_oracle(raw.to_vec()));
        assert_eq!(reduced, w("ab"));
    }

    #[test]
    fn invalid_letter_is_rejected() {
        assert_eq!(
            Word::from_signed(2, &[1, 3]),
            Err(Error::InvalidLetter {
                generator: 3,
                rank: 2
            })
        );
        assert!(Word::parse("x0", 3).is_err());
        assert!(Word::parse("abc", 2).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("ab").concat(&w("Ba")).unwrap(), w("aa"));
        assert_eq!(w("abA").concat(&Word::empty(2)).unwrap(), w("abA"));
        let got = w("abA").concat(&w("aB")).unwrap();
        assert_eq!(signed(&got), rewrite_oracle(vec![1, 2, -1, 1, -2]));
        assert_eq!(got, w("a"));
        assert!(matches!(
            w("a").concat(&Word::empty(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("ab").invert(), w("BA"));
        assert_eq!(Word::empty(2).invert(), Word::empty(2));
        assert!(w("abAAb").concat(&w("abAAb").invert()).unwrap().is_empty());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("abA").cyclic_reduce(), (w("b"), w("a")));
        assert_eq!(w("ba").cyclic_reduce(), (w("ba"), Word::empty(2)));
        assert_eq!(w("aabAA").cyclic_reduce(), (w("b"), w("aa")));
        assert_eq!(w("aabAA").cyclic_len(), 1);
        // a single letter cannot be conjugated away
        assert_eq!(w("a").cyclic_reduce(), (w("a"), Word::empty(2)));
    }

    #[test]
    fn text_forms_agree() {
        assert_eq!(Word::parse("x1x2X1X2", 2).unwrap(), w("abAB"));
        assert_eq!(Word::parse("1", 4).unwrap(), Word::empty(4));
        assert_eq!(w("abAB").to_string(), "abAB");
        let big = Word::parse("x27X3", 30).unwrap();
        assert_eq!(big.to_string(), "x27X3");
        assert_eq!(Word::infer_rank("x27X3").unwrap(), 27);
        assert_eq!(Word::infer_rank("abD").unwrap(), 4);
    }

    #[test]
    fn tuples() {
        let t = WordTuple::parse("abA,bb", 2).unwrap();
        assert_eq!(t.total_length(), 5);
        assert_eq!(t.cyclic_length(), 3);
        assert_eq!(t.to_string(), "abA,bb");
        assert!(WordTuple::new(vec![w("a"), Word::empty(3)]).is_err());
    }
}
