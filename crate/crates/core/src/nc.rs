//! No-clash teachers: clash detection, admissibility, normalization and
//! exact NCTD by constraint search.

use crate::bits::{k_subsets_lex, Bits};
use crate::budget::Budget;
use crate::concept::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, Result};
use std::fmt::Write as _;

/// An assignment of an instance set to every concept of a class,
/// aligned with the class order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcTeacher {
    class: ConceptClass,
    sets: Vec<InstanceSet>,
}

impl NcTeacher {
    pub fn new(class: ConceptClass, sets: Vec<InstanceSet>) -> Result<Self> {
        if sets.len() != class.len() {
            return Err(Error::TeacherMismatch(format!(
                "{} sets for {} concepts",
                sets.len(),
                class.len()
            )));
        }
        if let Some(s) = sets.iter().find(|s| s.n() != class.n()) {
            return Err(Error::DomainMismatch(class.n(), s.n()));
        }
        Ok(NcTeacher { class, sets })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn sets(&self) -> &[InstanceSet] {
        &self.sets
    }

    pub fn set_of(&self, c: &Concept) -> Option<&InstanceSet> {
        self.class.index_of(c).map(|i| &self.sets[i])
    }

    /// Size of the largest assigned set.
    pub fn order(&self) -> usize {
        self.sets.iter().map(InstanceSet::len).max().unwrap_or(0)
    }

    pub fn is_normalized(&self) -> bool {
        let d = self.order();
        self.sets.iter().all(|s| s.len() == d)
    }

    /// Restriction to the concepts of `sub`, which must be a subclass.
    pub fn restrict(&self, sub: &ConceptClass) -> Result<NcTeacher> {
        let sets = sub
            .iter()
            .map(|c| self.set_of(c).cloned().ok_or(Error::NotInClass))
            .collect::<Result<Vec<_>>>()?;
        NcTeacher::new(sub.clone(), sets)
    }

    /// Re-orders this teacher to follow `class`, which must hold the same concepts.
    pub fn align_to(&self, class: &ConceptClass) -> Result<NcTeacher> {
        if !self.class.same_set(class) {
            return Err(Error::TeacherMismatch(
                "teacher concepts differ from the class".into(),
            ));
        }
        self.restrict(class)
    }
}

/// True iff the two (distinct) concepts agree on `s ∪ s2`.
pub fn clash(c: &Concept, c2: &Concept, s: &InstanceSet, s2: &InstanceSet) -> Result<bool> {
    let n = c.n();
    for m in [c2.n(), s.n(), s2.n()] {
        if m != n {
            return Err(Error::DomainMismatch(n, m));
        }
    }
    if c == c2 {
        return Err(Error::IdenticalConcepts);
    }
    Ok(c.bits().agree_on_union(c2.bits(), s.bits(), s2.bits()))
}

/// First clashing pair of concept indices, if any.
pub fn find_clash(t: &NcTeacher) -> Option<(usize, usize)> {
    let cs = t.class.concepts();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i]
                .bits()
                .agree_on_union(cs[j].bits(), t.sets[i].bits(), t.sets[j].bits())
            {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_nc_teacher(t: &NcTeacher) -> bool {
    find_clash(t).is_none()
}

/// Pads every set to exactly `d` instances with the smallest unused instances.
pub fn normalize_teacher(t: &NcTeacher, d: usize) -> Result<NcTeacher> {
    let n = t.class.n();
    let order = t.order();
    if d < order {
        return Err(Error::InvalidArgument(format!(
            "target order {d} is below the teacher's order {order}"
        )));
    }
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "target order {d} exceeds the domain size {n}"
        )));
    }
    let sets = t
        .sets
        .iter()
        .map(|s| {
            let mut bits = s.bits().clone();
            let mut have = s.len();
            for x in 0..n {
                if have == d {
                    break;
                }
                if !bits.test(x) {
                    bits.set(x);
                    have += 1;
                }
            }
            InstanceSet::from_bits(n, bits)
        })
        .collect();
    NcTeacher::new(t.class.clone(), sets)
}

/// `2^d * binomial(n, d)`, saturating at `u128::MAX`.
pub fn ksz_count(n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let mut b: u128 = 1;
    for i in 0..d {
        // exact: b * (n - i) is divisible by (i + 1)
        b = match b.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    if d >= 128 {
        return u128::MAX;
    }
    b.checked_mul(1u128 << d).unwrap_or(u128::MAX)
}

/// Smallest `d` with `2^d * binomial(n, d) >= |k|`.
pub fn nctd_lower_bound(k: &ConceptClass) -> usize {
    let m = k.len() as u128;
    (0..=k.n())
        .find(|&d| ksz_count(k.n(), d) >= m)
        .unwrap_or(k.n())
}

/// Result of an NCTD computation.
#[derive(Debug, Clone)]
pub enum NctdOutcome {
    /// Exact value with an admissible normalized witness of that order.
    Exact { d: usize, teacher: NcTeacher },
    /// Every order up to `d_max` was refuted.
    ExceedsMax { d_max: usize },
    /// The budget ran out. All orders below `lower` are refuted; an admissible
    /// teacher of order `upper` is known.
    Inconclusive {
        lower: usize,
        upper: usize,
        teacher: NcTeacher,
    },
}

impl NctdOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            NctdOutcome::Exact { d, .. } => Some(*d),
            _ => None,
        }
    }
}

/// Exact NCTD: decides each order from [`nctd_lower_bound`] up to `d_max`.
pub fn nctd(k: &ConceptClass, d_max: usize, budget: &mut Budget) -> Result<NctdOutcome> {
    if k.is_empty() {
        return Err(Error::EmptyClass);
    }
    let d_max = d_max.min(k.n());
    let lower = nctd_lower_bound(k);
    for d in lower..=d_max {
        match find_teacher(k, d, budget) {
            Search::Found(teacher) => return Ok(NctdOutcome::Exact { d, teacher }),
            Search::Refuted => {}
            Search::Exhausted => {
                let full = vec![InstanceSet::full(k.n()); k.len()];
                let teacher = NcTeacher::new(k.clone(), full)?;
                return Ok(NctdOutcome::Inconclusive {
                    lower: d,
                    upper: k.n(),
                    teacher,
                });
            }
        }
    }
    Ok(NctdOutcome::ExceedsMax { d_max })
}

/// Whether `k` has an admissible teacher of order at most `d`
/// (`None` when the budget ran out).
pub fn has_nc_teacher_within(k: &ConceptClass, d: usize, budget: &mut Budget) -> Option<bool> {
    if k.len() <= 1 {
        return Some(true);
    }
    let lower = nctd_lower_bound(k);
    for dd in lower..=d.min(k.n()) {
        match find_teacher(k, dd, budget) {
            Search::Found(_) => return Some(true),
            Search::Refuted => {}
            Search::Exhausted => return None,
        }
    }
    Some(false)
}

#[derive(Debug, Clone)]
pub enum Search {
    Found(NcTeacher),
    Refuted,
    Exhausted,
}

/// Backtracking search for an admissible teacher whose sets all have size `d`.
///
/// Concepts are assigned most-constrained-first (fewest remaining candidate
/// sets, ties by class index); candidates are tried in lexicographic order;
/// every assignment prunes the candidates of the unassigned concepts that would clash with it.
pub fn find_teacher(k: &ConceptClass, d: usize, budget: &mut Budget) -> Search {
    let n = k.n();
    if d > n {
        return Search::Refuted;
    }
    let mut solver = Solver::new(k, d);
    match solver.run(budget) {
        Some(true) => {
            let sets = solver
                .assigned
                .iter()
                .map(|a| InstanceSet::from_bits(n, solver.cands[a.unwrap()].clone()))
                .collect();
            let t = NcTeacher::new(k.clone(), sets).expect("aligned with class");
            debug_assert!(is_nc_teacher(&t));
            Search::Found(t)
        }
        Some(false) => Search::Refuted,
        None => Search::Exhausted,
    }
}

/// Cap on the words held by the precomputed clash masks.
const MASK_CACHE_WORDS: usize = 1 << 23;

struct Solver {
    m: usize,
    words: usize,
    cands: Vec<Bits>,
    /// agree[i * m + j]: instances on which concepts i and j carry the same label
    agree: Vec<Bits>,
    /// masks[(i * m + j) * words ..]: candidates contained in agree[i * m + j]
    masks: Option<Vec<u64>>,
    scratch: Vec<u64>,
    domains: Vec<Vec<u64>>,
    sizes: Vec<usize>,
    assigned: Vec<Option<usize>>,
    /// (concept, word, previous value)
    trail: Vec<(usize, usize, u64)>,
}

fn mask_within(cands: &[Bits], ag: &Bits, out: &mut [u64]) {
    out.fill(0);
    for (b, c) in cands.iter().enumerate() {
        if c.is_subset(ag) {
            out[b / 64] |= 1 << (b % 64);
        }
    }
}

impl Solver {
    fn new(k: &ConceptClass, d: usize) -> Self {
        let n = k.n();
        let m = k.len();
        let cands: Vec<Bits> = k_subsets_lex(n, d)
            .into_iter()
            .map(|s| Bits::from_indices(n, s))
            .collect();
        let raw = k.raw();
        let full = Bits::full(n);
        let mut agree = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                agree.push(full.and_not(&raw[i].xor(&raw[j])));
            }
        }
        let nc = cands.len();
        let words = nc.div_ceil(64).max(1);
        let masks = (m * m * words <= MASK_CACHE_WORDS).then(|| {
            let mut v = vec![0u64; m * m * words];
            for (p, ag) in agree.iter().enumerate() {
                mask_within(&cands, ag, &mut v[p * words..(p + 1) * words]);
            }
            v
        });
        let mut dom = vec![u64::MAX; words];
        if nc % 64 != 0 {
            dom[words - 1] = (1u64 << (nc % 64)) - 1;
        }
        if nc == 0 {
            dom[0] = 0;
        }
        Solver {
            m,
            words,
            cands,
            agree,
            masks,
            scratch: vec![0; words],
            domains: vec![dom; m],
            sizes: vec![nc; m],
            assigned: vec![None; m],
            trail: Vec::new(),
        }
    }

    fn run(&mut self, budget: &mut Budget) -> Option<bool> {
        if self.m > 0 && self.cands.is_empty() {
            return Some(false);
        }
        self.search(0, budget)
    }

    fn pick(&self) -> Option<usize> {
        (0..self.m)
            .filter(|&i| self.assigned[i].is_none())
            .min_by_key(|&i| (self.sizes[i], i))
    }

    /// Candidates of concept `j` that would clash with concept `i`, written to scratch.
    fn load_mask(&mut self, i: usize, j: usize) {
        let p = i * self.m + j;
        match &self.masks {
            Some(v) => self
                .scratch
                .copy_from_slice(&v[p * self.words..(p + 1) * self.words]),
            None => mask_within(&self.cands, &self.agree[p], &mut self.scratch),
        }
    }

    fn search(&mut self, depth: usize, budget: &mut Budget) -> Option<bool> {
        if depth == self.m {
            return Some(true);
        }
        if budget.tick() {
            return None;
        }
        let i = self.pick().expect("unassigned concept remains");
        let options: Vec<usize> = ones(&self.domains[i]).collect();
        for a in options {
            let mark = self.trail.len();
            self.assigned[i] = Some(a);
            if self.propagate(i, a) {
                match self.search(depth + 1, budget) {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.undo(mark);
            self.assigned[i] = None;
        }
        Some(false)
    }

    /// Removes candidates that clash with `i := a`; false on a wipe-out.
    fn propagate(&mut self, i: usize, a: usize) -> bool {
        for j in 0..self.m {
            if self.assigned[j].is_some() {
                continue;
            }
            self.load_mask(i, j);
            if self.scratch[a / 64] >> (a % 64) & 1 == 0 {
                continue;
            }
            for w in 0..self.words {
                let old = self.domains[j][w];
                let hit = old & self.scratch[w];
                if hit != 0 {
                    self.domains[j][w] = old & !hit;
                    self.sizes[j] -= hit.count_ones() as usize;
                    self.trail.push((j, w, old));
                }
            }
            if self.sizes[j] == 0 {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (j, w, old) = self.trail.pop().unwrap();
            let now = self.domains[j][w];
            self.sizes[j] += (old & !now).count_ones() as usize;
            self.domains[j][w] = old;
        }
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Teacher file: `n=<int> d=<int>` then `<bitstring> : i1 i2 ... id` per concept.
pub fn serialize_teacher(t: &NcTeacher) -> String {
    let mut out = format!("n={} d={}\n", t.class.n(), t.order());
    for (c, s) in t.class.iter().zip(&t.sets) {
        let _ = write!(out, "{} :", c.to_bitstring());
        for i in s.members() {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_teacher(text: &str) -> Result<NcTeacher> {
    let mut header: Option<(usize, usize)> = None;
    let mut concepts = Vec::new();
    let mut sets = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        let Some((n, d)) = header else {
            header = Some(parse_teacher_header(line).ok_or_else(|| {
                perr(format!("expected header `n=<int> d=<int>`, found {line:?}"))
            })?);
            continue;
        };
        let (bits, rest) = line
            .split_once(':')
            .ok_or_else(|| perr("expected `<bitstring> : instances`".into()))?;
        let bits = bits.trim();
        if bits.chars().count() != n {
            return Err(perr(format!("expected {n} labels, found {}", bits.len())));
        }
        let c = Concept::from_bitstring(bits).map_err(|e| perr(e.to_string()))?;
        let members = rest
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| perr(format!("bad instance {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if members.len() > d {
            return Err(perr(format!("set of size {} exceeds d={d}", members.len())));
        }
        let s = InstanceSet::from_members(n, &members).map_err(|e| perr(e.to_string()))?;
        if s.len() != members.len() {
            return Err(perr("repeated instance".into()));
        }
        concepts.push(c);
        sets.push(s);
    }
    let (n, _) = header.ok_or(Error::Parse {
        line: 1,
        msg: "missing header `n=<int> d=<int>`".into(),
    })?;
    let class = ConceptClass::new(n, concepts)?;
    NcTeacher::new(class, sets)
}

fn parse_teacher_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    let d = parts.next()?.strip_prefix("d=")?.parse().ok()?;
    if parts.next().is_some() || n == 0 {
        return None;
    }
    Some((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{complement, parse_class};
    use proptest::prelude::*;

    fn c(n: usize, m: &[usize]) -> Concept {
        Concept::from_members(n, m).unwrap()
    }
    fn s(n: usize, m: &[usize]) -> InstanceSet {
        InstanceSet::from_members(n, m).unwrap()
    }

    #[test]
    fn clash_examples() {
        assert!(clash(&c(3, &[1]), &c(3, &[2]), &s(3, &[3]), &s(3, &[3])).unwrap());
        assert!(!clash(&c(3, &[1]), &c(3, &[2]), &s(3, &[1]), &s(3, &[2])).unwrap());
        let x = c(3, &[1, 3]);
        assert!(!clash(&x, &complement(&x), &s(3, &[2]), &s(3, &[])).unwrap());
        assert_eq!(
            clash(&x, &x, &s(3, &[1]), &s(3, &[1])),
            Err(Error::IdenticalConcepts)
        );
    }

    #[test]
    fn admissibility_examples() {
        let k = parse_class("n=3\n000\n100\n110\n111\n").unwrap();
        let empty = NcTeacher::new(k.clone(), vec![InstanceSet::empty(3); 4]).unwrap();
        assert!(!is_nc_teacher(&empty));
        let full = NcTeacher::new(k.clone(), vec![InstanceSet::full(3); 4]).unwrap();
        assert!(is_nc_teacher(&full));
    }

    #[test]
    fn normalize_examples() {
        let k = ConceptClass::new(3, vec![c(3, &[1]), c(3, &[2])]).unwrap();
        let t = NcTeacher::new(k, vec![s(3, &[1]), s(3, &[2])]).unwrap();
        assert!(is_nc_teacher(&t));
        assert_eq!(normalize_teacher(&t, 1).unwrap(), t);
        let t2 = normalize_teacher(&t, 2).unwrap();
        assert_eq!(t2.sets()[0].members(), vec![1, 2]);
        assert_eq!(t2.sets()[1].members(), vec![1, 2]);
        assert!(is_nc_teacher(&t2));
        assert!(t2.is_normalized());
        assert!(normalize_teacher(&t, 0).is_err());
        assert!(normalize_teacher(&t, 4).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let single = ConceptClass::new(4, vec![c(4, &[])]).unwrap();
        assert_eq!(nctd_lower_bound(&single), 0);
        let all: Vec<Concept> = (0..16u64)
            .map(|w| Concept::from_bits(4, Bits::from_word(w)))
            .collect();
        let k = ConceptClass::new(4, all[..8].to_vec()).unwrap();
        assert_eq!(nctd_lower_bound(&k), 1);
        let k = ConceptClass::new(5, (0..24u64).map(|w| Concept::from_bits(5, Bits::from_word(w))).collect()).unwrap();
        assert_eq!(nctd_lower_bound(&k), 2);
        let k = ConceptClass::new(4, all).unwrap();
        assert_eq!(nctd_lower_bound(&k), 2);
        assert_eq!(ksz_count(4, 2), 24);
        assert_eq!(ksz_count(4, 0), 1);
    }

    #[test]
    fn nctd_singleton_and_example() {
        let single = ConceptClass::new(3, vec![c(3, &[2])]).unwrap();
        let out = nctd(&single, 3, &mut Budget::unlimited()).unwrap();
        assert_eq!(out.exact(), Some(0));
        let k = parse_class("n=3\n000\n100\n110\n111\n011\n001\n").unwrap();
        let out = nctd(&k, 3, &mut Budget::unlimited()).unwrap();
        let NctdOutcome::Exact { d, teacher } = out else {
            panic!("expected exact")
        };
        assert_eq!(d, 1);
        assert!(is_nc_teacher(&teacher));
        assert!(teacher.is_normalized());
    }

    #[test]
    fn nctd_respects_max() {
        let all: Vec<Concept> = (0..8u64)
            .map(|w| Concept::from_bits(3, Bits::from_word(w)))
            .collect();
        let cube = ConceptClass::new(3, all).unwrap();
        let out = nctd(&cube, 1, &mut Budget::unlimited()).unwrap();
        assert!(matches!(out, NctdOutcome::ExceedsMax { d_max: 1 }));
        let out = nctd(&cube, 3, &mut Budget::unlimited()).unwrap();
        assert_eq!(out.exact(), Some(2));
    }

    #[test]
    fn teacher_file_round_trip() {
        let k = parse_class("n=3\n000\n100\n110\n").unwrap();
        let t = NcTeacher::new(k, vec![s(3, &[1]), s(3, &[2]), s(3, &[2])]).unwrap();
        let text = serialize_teacher(&t);
        assert_eq!(text, "n=3 d=1\n000 : 1\n100 : 2\n110 : 2\n");
        let back = parse_teacher(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(serialize_teacher(&back), text);
        assert!(parse_teacher("n=3\n000 : 1\n").is_err());
        assert!(parse_teacher("n=3 d=1\n000 : 1 2\n").is_err());
        assert!(parse_teacher("n=3 d=1\n000 : 4\n").is_err());
    }

    /// Exhaustive NCTD over all assignments of d-subsets, for tiny classes.
    fn brute_nctd(k: &ConceptClass) -> usize {
        let n = k.n();
        for d in 0..=n {
            let cands: Vec<Bits> = k_subsets_lex(n, d)
                .into_iter()
                .map(|s| Bits::from_indices(n, s))
                .collect();
            let m = k.len();
            let mut idx = vec![0usize; m];
            loop {
                let ok = (0..m).all(|i| {
                    (i + 1..m).all(|j| {
                        !k.get(i)
                            .bits()
                            .agree_on_union(k.get(j).bits(), &cands[idx[i]], &cands[idx[j]])
                    })
                });
                if ok {
                    return d;
                }
                let mut p = 0;
                while p < m {
                    idx[p] += 1;
                    if idx[p] < cands.len() {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
                if p == m {
                    break;
                }
            }
        }
        unreachable!()
    }

    fn arb_class(n: usize, max_m: usize) -> impl Strategy<Value = ConceptClass> {
        proptest::collection::btree_set(0u64..(1 << n), 1..=max_m).prop_map(move |set| {
            ConceptClass::new(
                n,
                set.into_iter()
                    .map(|w| Concept::from_bits(n, Bits::from_word(w)))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn nctd_matches_exhaustive(k in arb_class(3, 6)) {
            let out = nctd(&k, 3, &mut Budget::unlimited()).unwrap();
            prop_assert_eq!(out.exact(), Some(brute_nctd(&k)));
        }

        #[test]
        fn witness_properties(k in arb_class(4, 12), perm_seed in 0usize..24) {
            let NctdOutcome::Exact { d, teacher } = nctd(&k, 4, &mut Budget::unlimited()).unwrap() else {
                panic!("search is unbudgeted")
            };
            prop_assert!(is_nc_teacher(&teacher));
            prop_assert!(teacher.sets().iter().all(|s| s.len() == d));
            // each set is shared by at most 2^d concepts
            let mut counts = std::collections::HashMap::new();
            for s in teacher.sets() {
                *counts.entry(s.members()).or_insert(0usize) += 1;
            }
            prop_assert!(counts.values().all(|&m| m <= 1 << d));
            // direct re-check of the no-clash condition
            for i in 0..k.len() {
                for j in i + 1..k.len() {
                    let u = teacher.sets()[i].union(&teacher.sets()[j]).unwrap();
                    prop_assert!(u.members().iter().any(|&x| k.get(i).label(x) != k.get(j).label(x)));
                }
            }
            // padding keeps admissibility
            for dd in d..=4 {
                prop_assert!(is_nc_teacher(&normalize_teacher(&teacher, dd).unwrap()));
            }
            // invariance under complementation and domain permutation
            let comp = ConceptClass::new(4, k.iter().map(complement).collect()).unwrap();
            prop_assert_eq!(nctd(&comp, 4, &mut Budget::unlimited()).unwrap().exact(), Some(d));
            let perms = permutations(4);
            let p = &perms[perm_seed];
            let permuted = ConceptClass::new(
                4,
                k.iter()
                    .map(|c| Concept::from_bits(4, Bits::from_indices(4, c.bits().ones().map(|i| p[i]))))
                    .collect(),
            )
            .unwrap();
            prop_assert_eq!(nctd(&permuted, 4, &mut Budget::unlimited()).unwrap().exact(), Some(d));
            // NCTD <= RTD <= TD
            let r = crate::classical::rtd(&k);
            prop_assert!(d <= r);
            prop_assert!(r <= crate::classical::td_max(&k).unwrap());
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
}
