//! Tournaments, the two concept classes they induce, the canonical
//! order-1 no-clash teacher, and reconstruction of a tournament from an
//! order-1 teacher of a class of size `2n`.

use crate::bits::Bits;
use crate::concept::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, RecoveryError, Result};
use crate::nc::{find_clash, NcTeacher};
use crate::rng;
use std::fmt::Write as _;

/// Orientation of the complete graph on `1..=n`, one bit per unordered pair.
///
/// Pair `{i, j}` with `i < j` has rank `(j-1)(j-2)/2 + (i-1)`; its bit is set
/// iff the edge is `(i, j)` (i.e. `i` beats `j`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tournament {
    n: usize,
    orient: Vec<u64>,
}

#[inline]
pub fn pair_rank(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Tournament {
    fn blank(n: usize) -> Self {
        Tournament {
            n,
            orient: vec![0; pair_count(n).div_ceil(64).max(1)],
        }
    }

    /// Tournament whose `pair_count(n)` orientation bits are the low bits of `code`
    /// in pair-rank order. Enumerating `code` covers every tournament.
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut g = Self::blank(n);
        for r in 0..pair_count(n) {
            if code >> r & 1 == 1 {
                g.orient[r / 64] |= 1 << (r % 64);
            }
        }
        g
    }

    /// Every edge directed from the smaller to the larger player.
    pub fn linear(n: usize) -> Self {
        let mut g = Self::blank(n);
        for r in 0..pair_count(n) {
            g.orient[r / 64] |= 1 << (r % 64);
        }
        g
    }

    /// Each pair oriented by the top bit of `rng::stream(seed, rank)`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut g = Self::blank(n);
        for r in 0..pair_count(n) {
            if rng::stream(seed, r as u64) >> 63 == 1 {
                g.orient[r / 64] |= 1 << (r % 64);
            }
        }
        g
    }

    /// Builds from directed edges; each unordered pair must appear exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut g = Self::blank(n);
        let mut seen = vec![false; pair_count(n)];
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::InstanceOutOfRange(x, n));
                }
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            let r = pair_rank(i, j);
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidArgument(format!(
                    "pair {{{i},{j}}} oriented more than once"
                )));
            }
            if a < b {
                g.orient[r / 64] |= 1 << (r % 64);
            }
        }
        if let Some(r) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "pair of rank {r} has no orientation"
            )));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True iff `(i, j)` is an edge, i.e. `i` beats `j`.
    pub fn beats(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = (i.min(j), i.max(j));
        let r = pair_rank(a, b);
        let bit = self.orient[r / 64] >> (r % 64) & 1 == 1;
        if i < j {
            bit
        } else {
            !bit
        }
    }

    /// Directed edges, ordered by unordered pair `(min, max)` lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(pair_count(self.n));
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                out.push(if self.beats(i, j) { (i, j) } else { (j, i) });
            }
        }
        out
    }

    /// `C_j`: the players that beat `j`.
    pub fn beaten_by(&self, j: usize) -> Concept {
        let mut b = Bits::zeros(self.n);
        for i in 1..=self.n {
            if self.beats(i, j) {
                b.set(i - 1);
            }
        }
        Concept::from_bits(self.n, b)
    }
}

/// All `2^(n(n-1)/2)` tournaments on `n <= 11` players.
pub fn all_tournaments(n: usize) -> impl Iterator<Item = Tournament> {
    let p = pair_count(n);
    assert!(p < 64, "too many tournaments to enumerate");
    (0..1u64 << p).map(move |code| Tournament::from_code(n, code))
}

/// First induced class: the complements `C̄_1, ..., C̄_n`.
pub fn class1(g: &Tournament) -> ConceptClass {
    let concepts = (1..=g.n)
        .map(|j| crate::concept::complement(&g.beaten_by(j)))
        .collect();
    ConceptClass::new(g.n, concepts).expect("j ∈ C̄_j separates the complements")
}

/// Second induced class: `C_1, ..., C_n, C̄_1, ..., C̄_n`.
pub fn class2(g: &Tournament) -> ConceptClass {
    let mut concepts: Vec<Concept> = (1..=g.n).map(|j| g.beaten_by(j)).collect();
    let comps: Vec<Concept> = concepts.iter().map(crate::concept::complement).collect();
    concepts.extend(comps);
    ConceptClass::new(g.n, concepts).expect("induced class has 2n distinct concepts")
}

/// Order-1 teacher on `class2(g)` assigning `{j}` to both `C_j` and `C̄_j`.
pub fn canonical_teacher(g: &Tournament) -> NcTeacher {
    let n = g.n;
    let sets = (0..2 * n)
        .map(|idx| InstanceSet::from_members(n, &[idx % n + 1]).expect("in range"))
        .collect();
    NcTeacher::new(class2(g), sets).expect("one set per concept")
}

/// Reconstructs the tournament `G` with `class2(G) = k` from an admissible
/// order-1 teacher: the concept taught by `{j}` that contains `j` is `C̄_j`,
/// the other is `C_j`, and `(i, j)` is an edge iff `i ∈ C_j`.
pub fn recover_tournament(k: &ConceptClass, t: &NcTeacher) -> Result<Tournament> {
    let n = k.n();
    if k.len() != 2 * n {
        return Err(RecoveryError::WrongSize {
            got: k.len(),
            expected: 2 * n,
        }
        .into());
    }
    if !t.class().same_set(k) {
        return Err(RecoveryError::ClassMismatch.into());
    }
    let t = t.align_to(k)?;
    let order = t.order();
    if order != 1 {
        return Err(RecoveryError::NotOrderOne(order).into());
    }
    if let Some((index, s)) = t.sets().iter().enumerate().find(|(_, s)| s.len() != 1) {
        return Err(RecoveryError::NotSingleton {
            index,
            size: s.len(),
        }
        .into());
    }
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (idx, s) in t.sets().iter().enumerate() {
        owners[s.members()[0]].push(idx);
    }
    for (j, own) in owners.iter().enumerate().skip(1) {
        if own.len() != 2 {
            return Err(RecoveryError::Multiplicity {
                instance: j,
                count: own.len(),
            }
            .into());
        }
        if k.get(own[0]).label(j) == k.get(own[1]).label(j) {
            return Err(RecoveryError::PairAgrees(j).into());
        }
    }
    if let Some((a, b)) = find_clash(&t) {
        return Err(RecoveryError::NotAdmissible(a, b).into());
    }
    // c[j]: the concept taught by {j} that does not contain j
    let c: Vec<Option<&Concept>> = owners
        .iter()
        .enumerate()
        .map(|(j, own)| {
            own.iter()
                .map(|&idx| k.get(idx))
                .find(|concept| j > 0 && !concept.label(j))
        })
        .collect();
    let mut edges = Vec::with_capacity(pair_count(n));
    for i in 1..=n {
        for j in i + 1..=n {
            let ij = c[j].unwrap().label(i);
            let ji = c[i].unwrap().label(j);
            if ij == ji {
                return Err(RecoveryError::NotInduced.into());
            }
            edges.push(if ij { (i, j) } else { (j, i) });
        }
    }
    let g = Tournament::from_edges(n, &edges)?;
    if !class2(&g).same_set(k) {
        return Err(RecoveryError::NotInduced.into());
    }
    Ok(g)
}

/// Tournament file: `n=<int>` then one `i j` line per directed edge.
pub fn serialize_tournament(g: &Tournament) -> String {
    let mut out = format!("n={}\n", g.n);
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        if n.is_none() {
            let v = line
                .strip_prefix("n=")
                .and_then(|v| v.trim().parse::<usize>().ok())
                .ok_or_else(|| perr(format!("expected header `n=<int>`, found {line:?}")))?;
            n = Some(v);
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| perr(format!("bad player {x:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(perr("expected `i j`".into()));
        }
        edges.push((nums[0], nums[1]));
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing header `n=<int>`".into(),
    })?;
    if edges.len() != pair_count(n) {
        return Err(Error::InvalidArgument(format!(
            "expected {} edges, found {}",
            pair_count(n),
            edges.len()
        )));
    }
    Tournament::from_edges(n, &edges)
}
