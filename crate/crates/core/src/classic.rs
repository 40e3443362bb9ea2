//! Deterministic Whitehead machinery: elementary length reduction, descent,
//! the census of length-reducing automorphisms, the breadth-first
//! construction of minimal orbits and brute-force oracles used to check all
//! of the above on small inputs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::automorphism::{
    enumerate_restricted, enumerate_type2, enumerate_whitehead, Automorphism, Type2Auto,
    WhiteheadAuto,
};
use crate::error::{Error, Result};
use crate::word::{check_rank, Word, WordTuple};

/// Search limits for the breadth-first procedures. Running out of budget is
/// always reported, never silently truncated.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    /// Maximum distance from the root; `None` means unbounded.
    pub max_depth: Option<usize>,
    /// Longest total length the oracles may visit; `None` means `2|w|`.
    pub length_cap: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 1_000_000,
            max_depth: None,
            length_cap: None,
        }
    }
}

impl Budget {
    pub fn vertices(max_vertices: usize) -> Self {
        Budget {
            max_vertices,
            ..Budget::default()
        }
    }

    fn cap_for(&self, len: usize) -> usize {
        self.length_cap.unwrap_or(2 * len).max(len)
    }
}

/// The solution sequence of a descent together with the length after each
/// step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace<A> {
    pub input: WordTuple,
    pub output: WordTuple,
    pub steps: Vec<(A, usize)>,
}

impl<A> DescentTrace<A> {
    pub fn autos(&self) -> impl DoubleEndedIterator<Item = &A> {
        self.steps.iter().map(|(a, _)| a)
    }
}

/// All non-trivial type-2 automorphisms of rank `n`, in enumeration order.
pub fn type2_set(n: usize) -> Result<Vec<Type2Auto>> {
    Ok(enumerate_type2(n)?.collect())
}

fn check_autos<A: Automorphism>(u: &WordTuple, autos: &[A]) -> Result<()> {
    match autos.first() {
        None => Err(Error::Config("empty automorphism list".into())),
        Some(a) => a.check_rank(u.rank()),
    }
}

/// Elementary length reduction: the first automorphism in `autos` that
/// shortens `u`, with the shortened tuple.
pub fn elr<'a, A: Automorphism>(
    u: &WordTuple,
    autos: &'a [A],
) -> Result<Option<(&'a A, WordTuple)>> {
    check_autos(u, autos)?;
    let len = u.total_length();
    let mut buf = Vec::new();
    for t in autos {
        if t.image_length(u, &mut buf) < len {
            return Ok(Some((t, t.apply_tuple(u)?)));
        }
    }
    Ok(None)
}

/// Whitehead descent: repeat [`elr`] until no automorphism in `autos`
/// reduces the length.
pub fn dwa<A: Automorphism + Clone>(u: &WordTuple, autos: &[A]) -> Result<DescentTrace<A>> {
    check_autos(u, autos)?;
    let mut cur = u.clone();
    let mut steps = Vec::new();
    while let Some((t, next)) = elr(&cur, autos)? {
        steps.push((t.clone(), next.total_length()));
        cur = next;
    }
    Ok(DescentTrace {
        input: u.clone(),
        output: cur,
        steps,
    })
}

/// Descent over all non-trivial type-2 automorphisms.
pub fn dwa_type2(u: &WordTuple) -> Result<DescentTrace<Type2Auto>> {
    dwa(u, &type2_set(u.rank())?)
}

/// `LR(U)`: the type-2 automorphisms that shorten `u`.
pub fn lr_set(u: &WordTuple) -> Result<Vec<Type2Auto>> {
    let len = u.total_length();
    let mut buf = Vec::new();
    Ok(enumerate_type2(u.rank())?
        .filter(|t| t.image_length(u, &mut buf) < len)
        .collect())
}

/// `|LR(U)|` against a prepared list of automorphisms.
pub fn lr_count<A: Automorphism>(u: &WordTuple, autos: &[A]) -> usize {
    let len = u.total_length();
    let mut buf = Vec::new();
    autos
        .iter()
        .filter(|t| t.image_length(u, &mut buf) < len)
        .count()
}

/// True when no non-trivial type-2 automorphism shortens `u`.
pub fn is_minimal(u: &WordTuple) -> Result<bool> {
    Ok(elr(u, &type2_set(u.rank())?)?.is_none())
}

/// A breadth-first spanning tree of (part of) a minimal orbit.
#[derive(Clone, Debug)]
pub struct OrbitGraph {
    vertices: Vec<WordTuple>,
    index: HashMap<WordTuple, usize>,
    /// Tree edges `(from, to, label)`.
    edges: Vec<(usize, usize, WhiteheadAuto)>,
    /// For each vertex, the edge that discovered it.
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    marked: Vec<bool>,
    complete: bool,
}

impl OrbitGraph {
    fn new(root: WordTuple) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        OrbitGraph {
            vertices: vec![root],
            index,
            edges: Vec::new(),
            parent: vec![None],
            depth: vec![0],
            marked: vec![false],
            complete: false,
        }
    }

    pub fn root(&self) -> &WordTuple {
        &self.vertices[0]
    }

    pub fn vertices(&self) -> &[WordTuple] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, WhiteheadAuto)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// False when a budget stopped the search early.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_marked(&self, v: &WordTuple) -> bool {
        self.index.get(v).is_some_and(|&i| self.marked[i])
    }

    pub fn contains(&self, v: &WordTuple) -> bool {
        self.index.contains_key(v)
    }

    /// Labels along the tree path from the root to `v`.
    pub fn path_to(&self, v: &WordTuple) -> Option<Vec<WhiteheadAuto>> {
        let mut i = *self.index.get(v)?;
        let mut labels = Vec::new();
        while let Some(e) = self.parent[i] {
            let (from, _, ref t) = self.edges[e];
            labels.push(t.clone());
            i = from;
        }
        labels.reverse();
        Some(labels)
    }

    /// One line per edge: `from TAB auto TAB to`.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for (from, to, t) in &self.edges {
            let _ = writeln!(s, "{}\t{}\t{}", self.vertices[*from], t, self.vertices[*to]);
        }
        s
    }

    /// Local search at vertex `w`: add every equal-length neighbour not yet
    /// present. Returns false if the vertex budget ran out.
    fn local_search(&mut self, w: usize, autos: &[WhiteheadAuto], budget: &Budget) -> Result<bool> {
        let cur = self.vertices[w].clone();
        let len = cur.total_length();
        let mut buf = Vec::new();
        for t in autos {
            if t.image_length(&cur, &mut buf) != len {
                continue;
            }
            let next = t.apply_tuple(&cur)?;
            if self.index.contains_key(&next) {
                continue;
            }
            if self.vertices.len() >= budget.max_vertices {
                return Ok(false);
            }
            let id = self.vertices.len();
            self.index.insert(next.clone(), id);
            self.vertices.push(next);
            self.edges.push((w, id, t.clone()));
            self.parent.push(Some(self.edges.len() - 1));
            self.depth.push(self.depth[w] + 1);
            self.marked.push(false);
        }
        self.marked[w] = true;
        Ok(true)
    }
}

/// Breadth-first construction of `Orb_min(u)` using every Whitehead
/// automorphism of both types.
pub fn orbit_min(u: &WordTuple, budget: &Budget) -> Result<OrbitGraph> {
    orbit_min_with(u, &enumerate_whitehead(u.rank())?, budget)
}

pub fn orbit_min_with(
    u: &WordTuple,
    autos: &[WhiteheadAuto],
    budget: &Budget,
) -> Result<OrbitGraph> {
    check_autos(u, autos)?;
    let mut g = OrbitGraph::new(u.clone());
    // vertices are appended in discovery order, so scanning by index visits
    // unmarked vertices nearest to the root first
    let mut next = 0;
    while next < g.vertices.len() {
        if budget.max_depth.is_some_and(|d| g.depth[next] >= d) {
            return Ok(g);
        }
        if !g.local_search(next, autos, budget)? {
            return Ok(g);
        }
        next += 1;
    }
    g.complete = true;
    Ok(g)
}

/// `2n(2n-1)^{L-1}`, saturating.
pub fn orbit_size_bound(n: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let base = (2 * n - 1) as u128;
    let mut b = (2 * n) as u128;
    for _ in 1..len {
        b = b.saturating_mul(base);
    }
    b
}

/// `8L² + 40L`, the quadratic bound for single words in rank 2.
pub fn khan_bound(len: usize) -> u128 {
    let l = len as u128;
    8 * l * l + 40 * l
}

/// Outcome of [`same_orbit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SameOrbit {
    /// Applying the sequence to `U` yields `V`.
    Connected(Vec<WhiteheadAuto>),
    /// The minimal orbits were explored completely and do not meet.
    Disconnected,
    /// A budget ran out first.
    Undecided,
}

/// Decides whether `v` lies in the orbit of `u`: descend both, then grow
/// breadth-first trees from both minimal tuples until they meet.
pub fn same_orbit(u: &WordTuple, v: &WordTuple, budget: &Budget) -> Result<SameOrbit> {
    check_rank(u.rank(), v.rank())?;
    if u.k() != v.k() {
        return Ok(SameOrbit::Disconnected);
    }
    if u == v {
        return Ok(SameOrbit::Connected(Vec::new()));
    }
    let n = u.rank();
    let t2 = type2_set(n)?;
    let du = dwa(u, &t2)?;
    let dv = dwa(v, &t2)?;
    if du.output.total_length() != dv.output.total_length() {
        return Ok(SameOrbit::Disconnected);
    }
    let autos = enumerate_whitehead(n)?;
    let (across, back) = match search_both(&du.output, &dv.output, &autos, budget)? {
        Meet::Found(a, b) => (a, b),
        Meet::Apart => return Ok(SameOrbit::Disconnected),
        Meet::OutOfBudget => return Ok(SameOrbit::Undecided),
    };
    let mut seq: Vec<WhiteheadAuto> = du.autos().cloned().map(WhiteheadAuto::from).collect();
    seq.extend(across);
    seq.extend(back.iter().rev().map(WhiteheadAuto::inverse));
    seq.extend(dv.autos().rev().map(|t| WhiteheadAuto::from(t.inverse())));
    Ok(SameOrbit::Connected(seq))
}

struct Side {
    seen: HashMap<WordTuple, Option<(WordTuple, WhiteheadAuto)>>,
    frontier: Vec<WordTuple>,
}

impl Side {
    fn new(root: &WordTuple) -> Self {
        let mut seen = HashMap::new();
        seen.insert(root.clone(), None);
        Side {
            seen,
            frontier: vec![root.clone()],
        }
    }

    fn path(&self, mut v: WordTuple) -> Vec<WhiteheadAuto> {
        let mut labels = Vec::new();
        while let Some(Some((prev, t))) = self.seen.get(&v) {
            labels.push(t.clone());
            v = prev.clone();
        }
        labels.reverse();
        labels
    }
}

enum Expand {
    Met(WordTuple),
    Continue,
    Exhausted,
    OutOfBudget,
}

fn expand(
    side: &mut Side,
    other: &Side,
    autos: &[WhiteheadAuto],
    budget: &Budget,
    total: &mut usize,
) -> Result<Expand> {
    if side.frontier.is_empty() {
        return Ok(Expand::Exhausted);
    }
    let mut next = Vec::new();
    let mut buf = Vec::new();
    for w in std::mem::take(&mut side.frontier) {
        let len = w.total_length();
        for t in autos {
            if t.image_length(&w, &mut buf) != len {
                continue;
            }
            let x = t.apply_tuple(&w)?;
            if side.seen.contains_key(&x) {
                continue;
            }
            if *total >= budget.max_vertices {
                return Ok(Expand::OutOfBudget);
            }
            *total += 1;
            side.seen.insert(x.clone(), Some((w.clone(), t.clone())));
            if other.seen.contains_key(&x) {
                return Ok(Expand::Met(x));
            }
            next.push(x);
        }
    }
    side.frontier = next;
    Ok(if side.frontier.is_empty() {
        Expand::Exhausted
    } else {
        Expand::Continue
    })
}

enum Meet {
    Found(Vec<WhiteheadAuto>, Vec<WhiteheadAuto>),
    Apart,
    OutOfBudget,
}

/// Bidirectional search between two minimal tuples. On success returns the
/// labels from `a` and from `b` to the meeting vertex.
fn search_both(
    a: &WordTuple,
    b: &WordTuple,
    autos: &[WhiteheadAuto],
    budget: &Budget,
) -> Result<Meet> {
    let mut sa = Side::new(a);
    let mut sb = Side::new(b);
    if a == b {
        return Ok(Meet::Found(Vec::new(), Vec::new()));
    }
    let mut total = 2;
    let mut depth = 0;
    loop {
        if budget.max_depth.is_some_and(|d| depth >= d) {
            return Ok(Meet::OutOfBudget);
        }
        depth += 1;
        // grow the smaller frontier
        let a_first = sa.frontier.len() <= sb.frontier.len();
        let outcome = if a_first {
            expand(&mut sa, &sb, autos, budget, &mut total)?
        } else {
            expand(&mut sb, &sa, autos, budget, &mut total)?
        };
        match outcome {
            Expand::Met(x) => return Ok(Meet::Found(sa.path(x.clone()), sb.path(x))),
            Expand::Exhausted => return Ok(Meet::Apart),
            Expand::OutOfBudget => return Ok(Meet::OutOfBudget),
            Expand::Continue => {}
        }
    }
}

/// Exhaustive breadth-first search over the whole Whitehead graph of `w`,
/// allowing the length to rise up to the budget's cap (default `2|w|`).
/// Returns the least length reached, recursing as soon as a shorter word
/// turns up.
pub fn min_length_oracle(w: &Word, budget: &Budget) -> Result<usize> {
    let autos = enumerate_whitehead(w.rank())?;
    MinLengthOracle::new(autos, *budget).min_length(w)
}

/// [`min_length_oracle`] with memoisation across calls. Orbit minima are
/// invariants, so any shorter word already settled finishes a search, and
/// every word of the same length met by a search that found nothing shorter
/// shares its answer.
pub struct MinLengthOracle {
    autos: Vec<WhiteheadAuto>,
    budget: Budget,
    memo: HashMap<Word, usize>,
}

impl MinLengthOracle {
    pub fn new(autos: Vec<WhiteheadAuto>, budget: Budget) -> Self {
        MinLengthOracle {
            autos,
            budget,
            memo: HashMap::new(),
        }
    }

    pub fn for_rank(n: usize, budget: Budget) -> Result<Self> {
        Ok(Self::new(enumerate_whitehead(n)?, budget))
    }

    pub fn min_length(&mut self, w: &Word) -> Result<usize> {
        if let Some(&m) = self.memo.get(w) {
            return Ok(m);
        }
        let len = w.len();
        if len <= 1 {
            self.memo.insert(w.clone(), len);
            return Ok(len);
        }
        let cap = self.budget.cap_for(len);
        let mut seen: HashMap<Word, usize> = HashMap::new();
        seen.insert(w.clone(), 0);
        let mut queue = VecDeque::from([w.clone()]);
        let mut buf = Vec::new();
        while let Some(v) = queue.pop_front() {
            let d = seen[&v];
            if self.budget.max_depth.is_some_and(|m| d >= m) {
                continue;
            }
            let vt = WordTuple::single(v.clone());
            for t in &self.autos {
                let l = t.image_length(&vt, &mut buf);
                if l > cap {
                    continue;
                }
                let x = t.apply(&v)?;
                if seen.contains_key(&x) {
                    continue;
                }
                if l < len {
                    // the orbit minimum is shared, so finish on the shorter word
                    let m = self.min_length(&x)?;
                    self.memo.insert(w.clone(), m);
                    return Ok(m);
                }
                if seen.len() >= self.budget.max_vertices {
                    return Err(Error::BudgetExceeded {
                        vertices: seen.len(),
                    });
                }
                seen.insert(x.clone(), d + 1);
                queue.push_back(x);
            }
        }
        for v in seen.into_keys().filter(|v| v.len() == len) {
            self.memo.insert(v, len);
        }
        Ok(len)
    }
}

/// Whitehead complexity relative to `gens`: the breadth-first distance from
/// `w` to the nearest word of minimal length. `gens` should be closed under
/// inverses (see [`enumerate_whitehead`] and
/// [`crate::automorphism::restricted_with_inverses`]).
pub fn wc_oracle(w: &Word, gens: &[WhiteheadAuto], budget: &Budget) -> Result<usize> {
    if let Some(t) = gens.first() {
        t.check_rank(w.rank())?;
    }
    let target = min_length_oracle(w, budget)?;
    if w.len() == target {
        return Ok(0);
    }
    let cap = budget.cap_for(w.len());
    let mut seen: HashMap<Word, usize> = HashMap::from([(w.clone(), 0)]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        let d = seen[&v];
        if budget.max_depth.is_some_and(|m| d >= m) {
            continue;
        }
        for t in gens {
            let x = t.apply(&v)?;
            if x.len() > cap || seen.contains_key(&x) {
                continue;
            }
            if x.len() == target {
                return Ok(d + 1);
            }
            if seen.len() >= budget.max_vertices {
                return Err(Error::BudgetExceeded {
                    vertices: seen.len(),
                });
            }
            seen.insert(x.clone(), d + 1);
            queue.push_back(x);
        }
    }
    Err(Error::BudgetExceeded {
        vertices: seen.len(),
    })
}

/// True iff no element of `T` shortens `w` while some type-2 automorphism
/// does.
pub fn is_local_minimum_wrt_t(w: &Word) -> Result<bool> {
    let u = WordTuple::single(w.clone());
    let t = enumerate_restricted(w.rank())?;
    if elr(&u, &t)?.is_some() {
        return Ok(false);
    }
    Ok(!is_minimal(&u)?)
}
