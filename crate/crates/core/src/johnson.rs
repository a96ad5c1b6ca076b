//! Johnson graphs `J(n,k)`, wide/narrow cliques, and the extremal number
//! `H_t(n,k)`: the largest family of `k`-subsets of `[n]` whose induced
//! subgraph contains no narrow `(t+1)`-clique.
//!
//! A narrow clique lives inside the `k`-subsets of a single `(k+1)`-set, so a
//! family is narrow-`(t+1)`-clique-free iff every `(k+1)`-set contains at most
//! `t` members. All searches work with that form of the constraint.

use crate::bits::{k_subsets_colex, k_subsets_lex, Bits};
use crate::budget::Budget;
use crate::concept::InstanceSet;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Default ceiling on `binomial(n,k)` for the exact search.
pub const EXACT_VERTEX_LIMIT: u128 = 1000;

/// A family of distinct `k`-subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSetFamily {
    n: usize,
    k: usize,
    members: Vec<InstanceSet>,
}

impl KSetFamily {
    pub fn new(n: usize, k: usize, members: Vec<InstanceSet>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let mut seen = std::collections::HashSet::new();
        for m in &members {
            if m.n() != n {
                return Err(Error::DomainMismatch(n, m.n()));
            }
            if m.len() != k {
                return Err(Error::InvalidArgument(format!(
                    "member {m} has size {}, expected {k}",
                    m.len()
                )));
            }
            if !seen.insert(m.bits().clone()) {
                return Err(Error::InvalidArgument(format!("duplicate member {m}")));
            }
        }
        Ok(KSetFamily { n, k, members })
    }

    pub fn from_lists(n: usize, k: usize, lists: &[&[usize]]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| InstanceSet::from_members(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[InstanceSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &InstanceSet) -> bool {
        self.members.contains(s)
    }

    /// Members sorted in colex order.
    pub fn sorted(&self) -> KSetFamily {
        let mut members = self.members.clone();
        members.sort_by(|a, b| a.bits().colex_cmp(b.bits()));
        KSetFamily { members, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueClass {
    Wide,
    Narrow,
    Both,
    Neither,
}

/// Adjacency in `J(n,k)`: `|a ∩ b| = k - 1`.
pub fn johnson_adjacent(a: &InstanceSet, b: &InstanceSet) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DomainMismatch(a.n(), b.n()));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "sizes differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.bits().and(b.bits()).count_ones() + 1 == a.len())
}

/// Classifies a clique of `J(n,k)` as wide (common intersection of size
/// `k-1`), narrow (union of size `k+1`), both (only for two vertices), or
/// neither (a single vertex or the empty set).
pub fn classify_clique(ks: &[InstanceSet]) -> Result<CliqueClass> {
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            if !johnson_adjacent(&ks[i], &ks[j])? {
                return Err(Error::InvalidArgument(format!(
                    "{} and {} are not adjacent",
                    ks[i], ks[j]
                )));
            }
        }
    }
    let Some(first) = ks.first() else {
        return Ok(CliqueClass::Neither);
    };
    let k = first.len();
    let mut inter = first.bits().clone();
    let mut union = first.bits().clone();
    for s in &ks[1..] {
        inter = inter.and(s.bits());
        union = union.or(s.bits());
    }
    let wide = inter.count_ones() + 1 == k;
    let narrow = union.count_ones() == k + 1;
    Ok(match (wide, narrow) {
        (true, true) => CliqueClass::Both,
        (true, false) => CliqueClass::Wide,
        (false, true) => CliqueClass::Narrow,
        (false, false) => CliqueClass::Neither,
    })
}

/// The maximal narrow cliques `P_k(D)`, one per `(k+1)`-subset `D` of `[n]`
/// (in lexicographic order of `D`).
pub fn narrow_cliques(n: usize, k: usize) -> Vec<Vec<InstanceSet>> {
    if k + 1 > n {
        return Vec::new();
    }
    k_subsets_lex(n, k + 1)
        .into_iter()
        .map(|d| {
            k_subsets_lex(k + 1, k)
                .into_iter()
                .map(|pick| {
                    InstanceSet::from_bits(n, Bits::from_indices(n, pick.into_iter().map(|p| d[p])))
                })
                .collect()
        })
        .collect()
}

/// Largest number of members inside any single `(k+1)`-subset of `[n]`.
pub fn max_members_in_span(f: &KSetFamily) -> usize {
    let mut counts: HashMap<Bits, usize> = HashMap::new();
    for a in &f.members {
        for x in 0..f.n {
            if !a.bits().test(x) {
                let mut d = a.bits().clone();
                d.set(x);
                *counts.entry(d).or_insert(0) += 1;
            }
        }
    }
    counts.values().copied().max().unwrap_or(0)
}

/// Independent checker: no `(k+1)`-subset contains more than `t` members.
pub fn is_narrow_clique_free(f: &KSetFamily, t: usize) -> bool {
    max_members_in_span(f) <= t
}

/// Members of `f` avoiding instance `i`, over the domain `[n-1]`.
/// Instances above `i` shift down by one (the identity when `i = n`).
pub fn restrict_family(f: &KSetFamily, i: usize) -> Result<KSetFamily> {
    if i == 0 || i > f.n {
        return Err(Error::InstanceOutOfRange(i, f.n));
    }
    if f.n == 1 || f.k > f.n - 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot restrict a family of {}-subsets to a domain of size {}",
            f.k,
            f.n - 1
        )));
    }
    let m = f.n - 1;
    let members = f
        .members
        .iter()
        .filter(|s| !s.contains(i))
        .map(|s| {
            let idx = s.bits().ones().map(|x| if x + 1 > i { x - 1 } else { x });
            InstanceSet::from_bits(m, Bits::from_indices(m, idx))
        })
        .collect();
    KSetFamily::new(m, f.k, members)
}

/// Replaces every member `A` by `[n] \ A`, mapping `J(n,k)` onto `J(n,n-k)`.
pub fn complement_family(f: &KSetFamily) -> Result<KSetFamily> {
    let members = f
        .members
        .iter()
        .map(|s| InstanceSet::from_bits(f.n, s.bits().not(f.n)))
        .collect();
    KSetFamily::new(f.n, f.n - f.k, members)
}

/// An instance occurring in the fewest members, with its occurrence count
/// (at most `k |f| / n` by pigeonhole).
pub fn lightest_instance(f: &KSetFamily) -> (usize, usize) {
    (1..=f.n)
        .map(|i| (i, f.members.iter().filter(|s| s.contains(i)).count()))
        .min_by_key(|&(i, c)| (c, i))
        .expect("n >= 1")
}

/// Result of an `H_t(n,k)` search.
#[derive(Debug, Clone)]
pub struct HmaxOutcome {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    /// Size of the best family found.
    pub lower: usize,
    /// Proven upper bound; equals `lower` when the search completed.
    pub upper: usize,
    pub witness: KSetFamily,
    pub nodes: u64,
}

impl HmaxOutcome {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn exact(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut b: u128 = 1;
    for i in 0..k {
        b = b.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    b
}

/// `floor(t * binomial(n,k) / (k+1))`, which also equals
/// `floor(t * binomial(n,k+1) / (n-k))`: every member lies in `n-k` of the
/// `(k+1)`-subsets and each of those holds at most `t` members.
pub fn counting_upper_bound(n: usize, k: usize, t: usize) -> u128 {
    if k + 1 > n {
        return binomial(n, k);
    }
    (t as u128 * binomial(n, k) / (k as u128 + 1)).min(binomial(n, k))
}

/// Exact `H_t(n,k)` with a colex-least maximum witness.
///
/// Branch-and-bound over the `k`-subsets in colex order, include before
/// exclude, with one counter per `(k+1)`-subset. Instances with more than
/// `vertex_limit` vertices, or searches that exhaust `budget`, report the
/// first-fit family as lower bound and the counting bound as upper bound.
pub fn h_max(n: usize, k: usize, t: usize, vertex_limit: u128, budget: &mut Budget) -> Result<HmaxOutcome> {
    if !(1 <= t && t <= k && k <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= t <= k <= n, got t={t}, k={k}, n={n}"
        )));
    }
    let total = binomial(n, k);
    if total > vertex_limit {
        let witness = first_fit(n, k, t, budget)?;
        return Ok(HmaxOutcome {
            n,
            k,
            t,
            lower: witness.len(),
            upper: counting_upper_bound(n, k, t) as usize,
            witness,
            nodes: budget.nodes(),
        });
    }
    let mut solver = HmaxSolver::new(n, k, t);
    let exhausted = solver.solve(budget);
    let witness = solver.witness_family();
    let lower = witness.len();
    let upper = if exhausted {
        counting_upper_bound(n, k, t) as usize
    } else {
        lower
    };
    Ok(HmaxOutcome {
        n,
        k,
        t,
        lower,
        upper,
        witness,
        nodes: budget.nodes(),
    })
}

/// `h_t(n,k) = H_t(n,k) / binomial(n,k)`; fails unless the search is exact.
pub fn h_ratio(n: usize, k: usize, t: usize) -> Result<BigRational> {
    let out = h_max(n, k, t, EXACT_VERTEX_LIMIT, &mut Budget::unlimited())?;
    let h = out
        .exact()
        .ok_or_else(|| Error::BudgetExceeded(format!("H_{t}({n},{k}) not solved exactly")))?;
    Ok(BigRational::new(BigInt::from(h), BigInt::from(binomial(n, k))))
}

fn first_fit(n: usize, k: usize, t: usize, budget: &mut Budget) -> Result<KSetFamily> {
    let mut counts: HashMap<Bits, usize> = HashMap::new();
    let mut members = Vec::new();
    // colex enumeration is only affordable for moderate sizes
    if binomial(n, k) > 5_000_000 {
        return KSetFamily::new(n, k, members);
    }
    for v in k_subsets_colex(n, k) {
        if budget.tick() {
            break;
        }
        let a = Bits::from_indices(n, v.iter().copied());
        let supers: Vec<Bits> = (0..n)
            .filter(|&x| !a.test(x))
            .map(|x| {
                let mut d = a.clone();
                d.set(x);
                d
            })
            .collect();
        if supers.iter().all(|d| counts.get(d).copied().unwrap_or(0) < t) {
            for d in supers {
                *counts.entry(d).or_insert(0) += 1;
            }
            members.push(InstanceSet::from_bits(n, a));
        }
    }
    KSetFamily::new(n, k, members)
}

struct HmaxSolver {
    n: usize,
    k: usize,
    t: usize,
    vertices: Vec<Bits>,
    /// constraint ids of the (k+1)-supersets of each vertex
    spans: Vec<Vec<usize>>,
    count: Vec<usize>,
    undecided: Vec<usize>,
    /// sum over constraints of min(t - count, undecided)
    capacity: usize,
    chosen: Vec<bool>,
    size: usize,
    best: Vec<bool>,
    best_size: usize,
}

impl HmaxSolver {
    fn new(n: usize, k: usize, t: usize) -> Self {
        let vertices: Vec<Bits> = k_subsets_colex(n, k)
            .into_iter()
            .map(|v| Bits::from_indices(n, v))
            .collect();
        let mut ids: HashMap<Bits, usize> = HashMap::new();
        let mut spans = Vec::with_capacity(vertices.len());
        for a in &vertices {
            let mut own = Vec::with_capacity(n - k);
            for x in 0..n {
                if !a.test(x) {
                    let mut d = a.clone();
                    d.set(x);
                    let next = ids.len();
                    own.push(*ids.entry(d).or_insert(next));
                }
            }
            spans.push(own);
        }
        let nd = ids.len();
        let undecided = vec![k + 1; nd];
        let capacity = nd * t.min(k + 1);
        let nv = vertices.len();
        HmaxSolver {
            n,
            k,
            t,
            vertices,
            spans,
            count: vec![0; nd],
            undecided,
            capacity,
            chosen: vec![false; nv],
            size: 0,
            best: vec![false; nv],
            best_size: 0,
        }
    }

    fn cap(&self, d: usize) -> usize {
        (self.t - self.count[d]).min(self.undecided[d])
    }

    fn decide(&mut self, v: usize, include: bool) {
        for i in 0..self.spans[v].len() {
            let d = self.spans[v][i];
            self.capacity -= self.cap(d);
            self.undecided[d] -= 1;
            if include {
                self.count[d] += 1;
            }
            self.capacity += self.cap(d);
        }
        if include {
            self.chosen[v] = true;
            self.size += 1;
        }
    }

    fn undo(&mut self, v: usize, include: bool) {
        for i in 0..self.spans[v].len() {
            let d = self.spans[v][i];
            self.capacity -= self.cap(d);
            self.undecided[d] += 1;
            if include {
                self.count[d] -= 1;
            }
            self.capacity += self.cap(d);
        }
        if include {
            self.chosen[v] = false;
            self.size -= 1;
        }
    }

    fn can_add(&self, v: usize) -> bool {
        self.spans[v].iter().all(|&d| self.count[d] < self.t)
    }

    fn bound(&self, next: usize) -> usize {
        let remaining = self.vertices.len() - next;
        if self.n == self.k {
            return self.size + remaining;
        }
        self.size + remaining.min(self.capacity / (self.n - self.k))
    }

    /// Returns true if the budget ran out.
    fn solve(&mut self, budget: &mut Budget) -> bool {
        // the first leaf of include-first DFS is the colex first-fit family
        for v in 0..self.vertices.len() {
            let inc = self.can_add(v);
            self.decide(v, inc);
        }
        self.best = self.chosen.clone();
        self.best_size = self.size;
        for v in (0..self.vertices.len()).rev() {
            let inc = self.chosen[v];
            self.undo(v, inc);
        }
        let bound = counting_upper_bound(self.n, self.k, self.t) as usize;
        if self.best_size >= bound {
            return false;
        }
        self.dfs(0, budget)
    }

    fn dfs(&mut self, v: usize, budget: &mut Budget) -> bool {
        if budget.tick() {
            return true;
        }
        if v == self.vertices.len() {
            if self.size > self.best_size {
                self.best_size = self.size;
                self.best = self.chosen.clone();
            }
            return false;
        }
        if self.bound(v) <= self.best_size {
            return false;
        }
        if self.can_add(v) {
            self.decide(v, true);
            let stop = self.dfs(v + 1, budget);
            self.undo(v, true);
            if stop {
                return true;
            }
        }
        self.decide(v, false);
        let stop = self.dfs(v + 1, budget);
        self.undo(v, false);
        stop
    }

    fn witness_family(&self) -> KSetFamily {
        let members = self
            .vertices
            .iter()
            .zip(&self.best)
            .filter(|(_, &b)| b)
            .map(|(v, _)| InstanceSet::from_bits(self.n, v.clone()))
            .collect();
        KSetFamily::new(self.n, self.k, members).expect("distinct k-subsets")
    }
}

/// Witness file: one member per line, `i1 i2 ... ik`.
pub fn serialize_family(f: &KSetFamily) -> String {
    let mut out = String::new();
    for m in &f.members {
        let line: Vec<String> = m.members().iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_family(n: usize, k: usize, text: &str) -> Result<KSetFamily> {
    let mut members = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: ln + 1, msg };
        let idx = line
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| perr(format!("bad instance {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        members.push(InstanceSet::from_members(n, &idx).map_err(|e| perr(e.to_string()))?);
    }
    KSetFamily::new(n, k, members)
}
