//! Goldman–Kearns teaching dimension, TD_min and the recursive teaching
//! dimension (peeling recursion plus a subclass-enumeration oracle).

use crate::bits::Bits;
use crate::concept::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, Result};
use crate::hitting;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on the class size accepted by [`rtd_bruteforce`].
pub const RTD_BRUTEFORCE_CAP: usize = 14;

/// Minimal teaching-set size and a witness for every concept, in class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TeachingReport {
    pub sizes: Vec<usize>,
    #[serde(serialize_with = "ser_sets")]
    pub witnesses: Vec<InstanceSet>,
}

fn ser_sets<S: serde::Serializer>(sets: &[InstanceSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(sets.len()))?;
    for x in sets {
        seq.serialize_element(&x.members())?;
    }
    seq.end()
}

impl TeachingReport {
    pub fn td_min(&self) -> Option<usize> {
        self.sizes.iter().copied().min()
    }

    pub fn td_max(&self) -> Option<usize> {
        self.sizes.iter().copied().max()
    }
}

pub fn is_teaching_set(k: &ConceptClass, c: &Concept, s: &InstanceSet) -> Result<bool> {
    let ci = k.index_of(c).ok_or(Error::NotInClass)?;
    if s.n() != k.n() {
        return Err(Error::DomainMismatch(k.n(), s.n()));
    }
    Ok(k.iter()
        .enumerate()
        .all(|(j, other)| j == ci || !c.bits().agree_on(other.bits(), s.bits())))
}

fn difference_sets(raw: &[Bits], members: &[usize], target: usize) -> Vec<Bits> {
    members
        .iter()
        .filter(|&&j| j != target)
        .map(|&j| raw[target].xor(&raw[j]))
        .collect()
}

/// Minimum teaching-set size of `c` in `k`, with the lexicographically
/// smallest witness among minimum ones.
pub fn td_of(k: &ConceptClass, c: &Concept) -> Result<(usize, InstanceSet)> {
    let ci = k.index_of(c).ok_or(Error::NotInClass)?;
    let raw = k.raw();
    let members: Vec<usize> = (0..k.len()).collect();
    Ok(td_with_witness(&raw, k.n(), &members, ci))
}

fn td_with_witness(raw: &[Bits], n: usize, members: &[usize], target: usize) -> (usize, InstanceSet) {
    let sets = difference_sets(raw, members, target);
    let w = hitting::lex_min_hitting_set(&sets, n).expect("distinct concepts differ somewhere");
    let set = InstanceSet::from_bits(n, Bits::from_indices(n, w.iter().copied()));
    (w.len(), set)
}

fn td_size(raw: &[Bits], n: usize, members: &[usize], target: usize) -> usize {
    let sets = difference_sets(raw, members, target);
    hitting::min_hitting_set_size(&sets, n).expect("distinct concepts differ somewhere")
}

/// Per-concept minimal teaching sets; computed concurrently, reported in class order.
pub fn teaching_report(k: &ConceptClass) -> TeachingReport {
    let raw = k.raw();
    let members: Vec<usize> = (0..k.len()).collect();
    let rows: Vec<(usize, InstanceSet)> = (0..k.len())
        .into_par_iter()
        .map(|i| td_with_witness(&raw, k.n(), &members, i))
        .collect();
    let (sizes, witnesses) = rows.into_iter().unzip();
    TeachingReport { sizes, witnesses }
}

pub fn td_max(k: &ConceptClass) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::EmptyClass);
    }
    let raw = k.raw();
    let members: Vec<usize> = (0..k.len()).collect();
    Ok((0..k.len())
        .into_par_iter()
        .map(|i| td_size(&raw, k.n(), &members, i))
        .max()
        .unwrap_or(0))
}

/// Smallest teaching-set size over all concepts, by iterative deepening on
/// the size `s` of an instance set that isolates some concept.
pub fn td_min(k: &ConceptClass) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::EmptyClass);
    }
    let raw = k.raw();
    let members: Vec<usize> = (0..k.len()).collect();
    Ok(td_min_raw(&raw, k.n(), &members))
}

pub(crate) fn td_min_raw(raw: &[Bits], n: usize, members: &[usize]) -> usize {
    if members.len() <= 1 {
        return 0;
    }
    let mut search = IsolationSearch::new(raw, members);
    (1..=n)
        .find(|&s| search.exists(n, s))
        .expect("the full domain isolates every concept of a duplicate-free class")
}

/// DFS over ascending instance sets of a fixed size, refining the partition of
/// the concepts by their labels; succeeds when a leaf partition has a singleton block.
struct IsolationSearch<'a> {
    raw: &'a [Bits],
    members: &'a [usize],
    scratch: Vec<u32>,
}

impl<'a> IsolationSearch<'a> {
    fn new(raw: &'a [Bits], members: &'a [usize]) -> Self {
        IsolationSearch {
            raw,
            members,
            scratch: Vec::new(),
        }
    }

    fn exists(&mut self, n: usize, size: usize) -> bool {
        let blocks = vec![0u32; self.members.len()];
        self.dfs(n, 0, size, &blocks, 1)
    }

    fn dfs(&mut self, n: usize, start: usize, left: usize, blocks: &[u32], nblocks: usize) -> bool {
        if left == 0 {
            return has_singleton(blocks, nblocks, &mut self.scratch);
        }
        for x in start..=n - left {
            let (next, count) = self.refine(blocks, nblocks, x);
            if self.dfs(n, x + 1, left - 1, &next, count) {
                return true;
            }
        }
        false
    }

    fn refine(&mut self, blocks: &[u32], nblocks: usize, x: usize) -> (Vec<u32>, usize) {
        let map = &mut self.scratch;
        map.clear();
        map.resize(2 * nblocks, u32::MAX);
        let mut count = 0u32;
        let next = blocks
            .iter()
            .zip(self.members)
            .map(|(&b, &ci)| {
                let key = 2 * b as usize + self.raw[ci].test(x) as usize;
                if map[key] == u32::MAX {
                    map[key] = count;
                    count += 1;
                }
                map[key]
            })
            .collect();
        (next, count as usize)
    }
}

fn has_singleton(blocks: &[u32], nblocks: usize, scratch: &mut Vec<u32>) -> bool {
    scratch.clear();
    scratch.resize(nblocks, 0);
    for &b in blocks {
        scratch[b as usize] += 1;
    }
    scratch.iter().any(|&c| c == 1)
}

/// Recursive teaching dimension by peeling off the easiest-to-teach concepts.
/// The empty class has RTD 0.
pub fn rtd(k: &ConceptClass) -> usize {
    rtd_layers(k).into_iter().map(|(t, _)| t).max().unwrap_or(0)
}

/// The peeling sequence: for each round, TD_min of the remaining class and
/// the indices (into `k`) of the concepts removed.
pub fn rtd_layers(k: &ConceptClass) -> Vec<(usize, Vec<usize>)> {
    let raw = k.raw();
    let mut remaining: Vec<usize> = (0..k.len()).collect();
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let tds: Vec<usize> = remaining
            .par_iter()
            .map(|&i| td_size(&raw, k.n(), &remaining, i))
            .collect();
        let tmin = *tds.iter().min().unwrap();
        let (peeled, rest): (Vec<_>, Vec<_>) = remaining
            .iter()
            .zip(&tds)
            .partition(|(_, &t)| t == tmin);
        layers.push((tmin, peeled.into_iter().map(|(&i, _)| i).collect()));
        remaining = rest.into_iter().map(|(&i, _)| i).collect();
    }
    layers
}

/// RTD as the maximum of TD_min over all nonempty subclasses.
pub fn rtd_bruteforce(k: &ConceptClass, cap: usize) -> Result<usize> {
    let m = k.len();
    if m > cap || m >= usize::BITS as usize {
        return Err(Error::TooLarge { size: m, cap });
    }
    let raw = k.raw();
    let best = (1u64..1 << m)
        .into_par_iter()
        .map(|mask| {
            let members: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            td_min_raw(&raw, k.n(), &members)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}
