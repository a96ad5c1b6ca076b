//! Random-tournament experiments, the gap-theorem inequality arithmetic,
//! exhaustive checks of the dimension-1 characterization and exact search
//! for the largest class of a given NCTD on tiny domains.
//!
//! Logs are base 2 unless written `ln`.

use crate::bits::Bits;
use crate::bounds::{binomial_big, ksz_bound};
use crate::budget::Budget;
use crate::classical::{rtd, td_min};
use crate::concept::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, Result};
use crate::nc::{find_teacher, has_nc_teacher_within, is_nc_teacher, nctd, NctdOutcome, Search};
use crate::rng::trial_seed;
use crate::tournament::{all_tournaments, canonical_teacher, class1, class2, Tournament};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Largest `n` for which trials also record the RTD of `class1(G)`.
pub const RTD_MAX_N: usize = 16;

/// Largest domain accepted by [`max_class_search`].
pub const MAX_CLASS_SEARCH_N: usize = 5;

/// `z` for a two-sided 95% interval.
const Z95: f64 = 1.959_963_984_540_054;

// ---------------------------------------------------------------------------
// threshold and Claim arithmetic

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    pub k_prime: f64,
    pub k: i64,
}

fn threshold_with(n: u64, offset: f64) -> Threshold {
    let log_n = (n as f64).log2();
    let k_prime = log_n - 2.0 * (2.0 * n as f64).log2().log2() - offset;
    Threshold {
        k_prime,
        k: k_prime.floor() as i64,
    }
}

/// `k' = log n - 2 log log(2n) - 4` and `k = floor(k')`.
pub fn threshold_k(n: u64) -> Threshold {
    threshold_with(n, 4.0)
}

/// The fraction-of-tournaments variant with `-5`.
pub fn threshold_k_corollary(n: u64) -> Threshold {
    threshold_with(n, 5.0)
}

pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().log2() + shift as f64
}

/// `log2( binomial(n,k) 2^k exp(-2^-(k+3) (n-k)) )`.
fn ineq2_log2(n: u64, k: u64) -> f64 {
    let b = binomial_big(n as usize, k as usize);
    let decay = (n - k) as f64 * 2f64.powi(-(k as i32 + 3));
    log2_big(&b) + k as f64 - decay * std::f64::consts::LOG2_E
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimPoint {
    pub n: u64,
    pub k_prime: f64,
    pub k: i64,
    /// `k >= 1`; the inequalities are only evaluated then.
    pub applicable: bool,
    /// `(n-k) 2^-(k+1) >= 2`.
    pub ineq1: bool,
    /// `binomial(n,k) 2^k exp(-2^-(k+3)(n-k)) < 1`.
    pub ineq2: bool,
    /// `k log(2n) - 2^-(k+4) n < 0`.
    pub sufficient: bool,
    pub corollary_k: i64,
    pub corollary_applicable: bool,
    /// The `-5` variant of the second inequality with right side `(2n)^-log(2n)`.
    pub corollary_ineq2: bool,
    /// `k log(2n) - 2^-(k+4) n < -log^2(2n)` for the `-5` threshold.
    pub corollary_sufficient: bool,
}

pub fn claim_check(n: u64) -> Result<ClaimPoint> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let th = threshold_k(n);
    let co = threshold_k_corollary(n);
    let log_2n = (2.0 * n as f64).log2();
    let mut p = ClaimPoint {
        n,
        k_prime: th.k_prime,
        k: th.k,
        applicable: th.k >= 1 && (th.k as u64) < n,
        ineq1: false,
        ineq2: false,
        sufficient: false,
        corollary_k: co.k,
        corollary_applicable: co.k >= 1 && (co.k as u64) < n,
        corollary_ineq2: false,
        corollary_sufficient: false,
    };
    if p.applicable {
        let k = th.k as u64;
        p.ineq1 = (n - k) as f64 * 2f64.powi(-(k as i32 + 1)) >= 2.0;
        p.ineq2 = ineq2_log2(n, k) < 0.0;
        p.sufficient = k as f64 * log_2n - 2f64.powi(-(k as i32 + 4)) * (n as f64) < 0.0;
    }
    if p.corollary_applicable {
        let k = co.k as u64;
        p.corollary_ineq2 = ineq2_log2(n, k) < -log_2n * log_2n;
        p.corollary_sufficient =
            k as f64 * log_2n - 2f64.powi(-(k as i32 + 4)) * (n as f64) < -log_2n * log_2n;
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimScan {
    pub scan_max: u64,
    pub points: Vec<ClaimPoint>,
    /// Smallest scanned `n` with `k >= 1`.
    pub first_applicable: Option<u64>,
    /// Smallest applicable scanned `n` from which both inequalities hold at every
    /// applicable scanned point.
    pub n0: Option<u64>,
    /// The same for the corollary variant.
    pub corollary_n0: Option<u64>,
    /// Wherever the sufficient condition holds, so does the second inequality.
    pub sufficient_implies_ineq2: bool,
    pub corollary_sufficient_implies_ineq2: bool,
}

/// Scan points: every `n` up to `min(scan_max, 4096)`, then `round(2^(12 + i/8))`.
pub fn claim_grid(scan_max: u64) -> Vec<u64> {
    let mut grid: Vec<u64> = (2..=scan_max.min(4096)).collect();
    let mut i = 1u32;
    loop {
        let n = 2f64.powf(12.0 + i as f64 / 8.0).round() as u64;
        if n > scan_max {
            break;
        }
        grid.push(n);
        i += 1;
    }
    if scan_max > 4096 && grid.last() != Some(&scan_max) {
        grid.push(scan_max);
    }
    grid
}

fn tail_start<F: Fn(&ClaimPoint) -> Option<bool>>(points: &[ClaimPoint], holds: F) -> Option<u64> {
    let mut n0 = None;
    for p in points.iter().rev() {
        match holds(p) {
            Some(true) => n0 = Some(p.n),
            Some(false) => break,
            None => {}
        }
    }
    n0
}

pub fn claim_scan(scan_max: u64) -> Result<ClaimScan> {
    if scan_max < 2 {
        return Err(Error::InvalidArgument("need scan_max >= 2".into()));
    }
    let points = claim_grid(scan_max)
        .into_par_iter()
        .map(claim_check)
        .collect::<Result<Vec<_>>>()?;
    let n0 = tail_start(&points, |p| p.applicable.then_some(p.ineq1 && p.ineq2));
    let corollary_n0 = tail_start(&points, |p| p.corollary_applicable.then_some(p.corollary_ineq2));
    Ok(ClaimScan {
        scan_max,
        first_applicable: points.iter().find(|p| p.applicable).map(|p| p.n),
        n0,
        corollary_n0,
        sufficient_implies_ineq2: points.iter().all(|p| !p.sufficient || p.ineq2),
        corollary_sufficient_implies_ineq2: points
            .iter()
            .all(|p| !p.corollary_sufficient || p.corollary_ineq2),
        points,
    })
}

// ---------------------------------------------------------------------------
// TD_min over random tournaments

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub k_override: Option<i64>,
    /// Per-trial timeout for the NCTD search.
    pub budget_secs: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(n: usize, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            n,
            trials,
            seed,
            k_override: None,
            budget_secs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument("need n >= 2".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidArgument("need trials >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub td_min: usize,
    pub nctd: usize,
    /// NCTD of `class2(G)`, certified by the canonical teacher.
    pub nctd2: usize,
    pub rtd: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdminSummary {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// td_min value to number of trials.
    pub distribution: BTreeMap<usize, u64>,
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub all_nctd_one: bool,
}

impl TdminSummary {
    /// Fraction of trials with `td_min <= k`.
    pub fn fraction_at_most(&self, k: i64) -> f64 {
        let hits: u64 = self
            .distribution
            .iter()
            .filter(|(&v, _)| (v as i64) <= k)
            .map(|(_, c)| c)
            .sum();
        hits as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdminRun {
    pub records: Vec<TrialRecord>,
    pub summary: TdminSummary,
}

fn run_trial(cfg: &ExperimentConfig, trial: u64) -> Result<TrialRecord> {
    let seed = trial_seed(cfg.seed, trial);
    let g = Tournament::random(cfg.n, seed);
    let k1 = class1(&g);
    let mut budget = Budget::from_secs_or_env(cfg.budget_secs);
    let nc1 = match nctd(&k1, cfg.n, &mut budget)? {
        NctdOutcome::Exact { d, .. } => d,
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "nctd of trial {trial} (seed {seed})"
            )))
        }
    };
    // |class2| = 2n > 1 rules out order 0, so an admissible order-1 teacher pins NCTD = 1
    let nctd2 = if is_nc_teacher(&canonical_teacher(&g)) { 1 } else { 0 };
    Ok(TrialRecord {
        trial,
        seed,
        n: cfg.n,
        td_min: td_min(&k1)?,
        nctd: nc1,
        nctd2,
        rtd: (cfg.n <= RTD_MAX_N).then(|| rtd(&k1)),
    })
}

/// Runs `cfg.trials` independent trials; trial `i` uses tournament seed
/// `trial_seed(cfg.seed, i)`. Output is ordered by trial index.
pub fn run_tdmin_experiment(cfg: &ExperimentConfig) -> Result<TdminRun> {
    cfg.validate()?;
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;
    let mut distribution = BTreeMap::new();
    for r in &records {
        *distribution.entry(r.td_min).or_insert(0u64) += 1;
    }
    let total: usize = records.iter().map(|r| r.td_min).sum();
    let summary = TdminSummary {
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        min: records.iter().map(|r| r.td_min).min().unwrap_or(0),
        max: records.iter().map(|r| r.td_min).max().unwrap_or(0),
        mean: total as f64 / records.len() as f64,
        all_nctd_one: records.iter().all(|r| r.nctd == 1 && r.nctd2 == 1),
        distribution,
    };
    Ok(TdminRun { records, summary })
}

pub const TDMIN_CSV_HEADER: &str = "trial,seed,n,td_min,nctd";

pub fn tdmin_csv(records: &[TrialRecord]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(TDMIN_CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{},{},{},{},{}", r.trial, r.seed, r.n, r.td_min, r.nctd);
    }
    out
}

// ---------------------------------------------------------------------------
// τ_n estimation

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// `floor(log n - 2 log log(2n)) - 5`.
    pub threshold: i64,
    pub k_used: i64,
    /// No concept of a class with two or more members is taught by `k_used < 1` examples.
    pub vacuous: bool,
    pub hits: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval for `hits` successes in `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    let m = trials as f64;
    let p = hits as f64 / m;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * m)) / (1.0 + z2 / m);
    let half = z / (1.0 + z2 / m) * (p * (1.0 - p) / m + z2 / (4.0 * m * m)).sqrt();
    let low = if hits == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if hits == trials { 1.0 } else { (centre + half).min(1.0) };
    (low, high)
}

/// Fraction of sampled tournaments with `td_min(class1(G)) <= k`, where `k` is
/// the corollary threshold unless overridden.
pub fn tau_estimate(n: usize, trials: u64, seed: u64, k_override: Option<i64>) -> Result<TauReport> {
    ExperimentConfig::new(n, trials, seed).validate()?;
    let threshold = threshold_k_corollary(n as u64).k;
    let k_used = k_override.unwrap_or(threshold);
    let vacuous = k_used < 1;
    let hits = if vacuous {
        0
    } else {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let g = Tournament::random(n, trial_seed(seed, t));
                td_min(&class1(&g)).map(|v| (v as i64 <= k_used) as u64)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum()
    };
    let (ci_low, ci_high) = wilson_interval(hits, trials, Z95);
    Ok(TauReport {
        n,
        trials,
        seed,
        threshold,
        k_used,
        vacuous,
        hits,
        fraction: hits as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}

// ---------------------------------------------------------------------------
// labelled-pattern counts

/// Number of concepts of `k` whose labels on the members of `s` (ascending)
/// equal `b`.
pub fn pattern_count_class(k: &ConceptClass, s: &InstanceSet, b: &[bool]) -> Result<usize> {
    if s.n() != k.n() {
        return Err(Error::DomainMismatch(k.n(), s.n()));
    }
    let members = s.members();
    if members.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "pattern has {} bits for {} instances",
            b.len(),
            members.len()
        )));
    }
    Ok(k
        .iter()
        .filter(|c| members.iter().zip(b).all(|(&i, &v)| c.label(i) == v))
        .count())
}

/// `Z_{S,b}` on `class1(g)`.
pub fn pattern_count(g: &Tournament, s: &InstanceSet, b: &[bool]) -> Result<usize> {
    pattern_count_class(&class1(g), s, b)
}

/// Counts of all `2^k` patterns on every `k`-subset, reduced to the two
/// predicates the gap argument cares about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternSummary {
    pub k: usize,
    /// Minimum of `Z_{S,b}` over all `|S| = k` and all `b`, zeros included.
    pub min_count: usize,
    /// No `(S, b)` with `|S| = k` has `Z_{S,b} = 1`.
    pub no_singleton: bool,
}

impl PatternSummary {
    /// Every pattern is matched at least twice; sufficient for `td_min > k`.
    pub fn min_at_least_two(&self) -> bool {
        self.min_count >= 2
    }
}

pub fn pattern_summary(k: &ConceptClass, size: usize) -> Result<PatternSummary> {
    let n = k.n();
    if size > n {
        return Err(Error::InvalidArgument(format!("|S| = {size} exceeds n = {n}")));
    }
    if size >= 32 {
        return Err(Error::TooLarge { size, cap: 31 });
    }
    let raw: Vec<&Bits> = k.iter().map(|c| c.bits()).collect();
    let subsets = crate::bits::k_subsets_lex(n, size);
    let (min_count, singleton) = subsets
        .par_iter()
        .map(|s| {
            let mut counts = vec![0usize; 1 << size];
            for c in &raw {
                let key = s
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (j, &i)| acc | (c.test(i) as usize) << j);
                counts[key] += 1;
            }
            let min = counts.iter().copied().min().unwrap_or(0);
            (min, counts.contains(&1))
        })
        .reduce(|| (usize::MAX, false), |a, b| (a.0.min(b.0), a.1 || b.1));
    Ok(PatternSummary {
        k: size,
        min_count,
        no_singleton: !singleton,
    })
}

/// TD_min as the smallest `k` for which some `k`-pattern is matched by exactly one concept.
pub fn td_min_by_patterns(k: &ConceptClass) -> Result<usize> {
    if k.is_empty() {
        return Err(Error::EmptyClass);
    }
    for size in 0..=k.n() {
        if !pattern_summary(k, size)?.no_singleton {
            return Ok(size);
        }
    }
    unreachable!("the full domain isolates every concept of a duplicate-free class")
}

// ---------------------------------------------------------------------------
// exhaustive dimension-1 check

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dim1Report {
    pub n: usize,
    /// `binomial(2^n, 2n)`.
    pub candidates: u64,
    /// Candidates that reached the NCTD decision.
    pub examined: u64,
    /// Distinct classes with NCTD 1, each as sorted concept words.
    pub passing: Vec<Vec<u64>>,
    /// Distinct classes `class2(G)` over all tournaments.
    pub tournament_classes: usize,
    pub tournaments: u64,
    pub matches: bool,
    pub complement_closed: bool,
    pub prefilter: bool,
}

impl Dim1Report {
    pub fn passed(&self) -> bool {
        self.matches && self.complement_closed
    }
}

fn class_from_words(n: usize, words: &[u64]) -> ConceptClass {
    let concepts = words
        .iter()
        .map(|&w| Concept::from_bits(n, Bits::from_word(w)))
        .collect();
    ConceptClass::new(n, concepts).expect("distinct words")
}

fn sorted_words(k: &ConceptClass) -> Vec<u64> {
    let mut w: Vec<u64> = k.iter().map(|c| c.bits().word0()).collect();
    w.sort_unstable();
    w
}

/// Colex-ordered `size`-subsets of `0..m`, as index vectors.
fn colex_combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    crate::bits::k_subsets_colex(m, size)
}

/// Enumerates every class of `2n` concepts over `[n]` and decides NCTD = 1.
/// With `prefilter`, classes not closed under complement are skipped first.
pub fn verify_dim1(n: usize, prefilter: bool) -> Result<Dim1Report> {
    if !(1..=4).contains(&n) {
        return Err(Error::TooLarge { size: n, cap: 4 });
    }
    let full = (1u64 << n) - 1;
    let combos = colex_combinations(1 << n, 2 * n);
    let candidates = combos.len() as u64;
    let results: Vec<Option<Vec<u64>>> = combos
        .par_iter()
        .map(|idx| {
            let words: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            if prefilter && !words.iter().all(|w| words.binary_search(&(w ^ full)).is_ok()) {
                return None;
            }
            let k = class_from_words(n, &words);
            let ok = matches!(find_teacher(&k, 1, &mut Budget::unlimited()), Search::Found(_));
            Some(if ok { words } else { Vec::new() })
        })
        .collect();
    let examined = results.iter().filter(|r| r.is_some()).count() as u64;
    let passing: BTreeSet<Vec<u64>> = results
        .into_iter()
        .flatten()
        .filter(|w| !w.is_empty())
        .collect();
    let mut tournaments = 0u64;
    let expected: BTreeSet<Vec<u64>> = all_tournaments(n)
        .map(|g| {
            tournaments += 1;
            sorted_words(&class2(&g))
        })
        .collect();
    let complement_closed = passing
        .iter()
        .all(|w| w.iter().all(|x| w.binary_search(&(x ^ full)).is_ok()));
    Ok(Dim1Report {
        n,
        candidates,
        examined,
        matches: passing == expected,
        tournament_classes: expected.len(),
        tournaments,
        passing: passing.into_iter().collect(),
        complement_closed,
        prefilter,
    })
}

// ---------------------------------------------------------------------------
// largest class of NCTD at most d

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxClassOutcome {
    pub n: usize,
    pub d: usize,
    /// Size of the greedy witness.
    pub greedy: usize,
    /// Best known interval for the maximum size.
    pub lower: usize,
    pub upper: usize,
    /// Canonical forms (under domain permutation) of every maximum class,
    /// each as sorted concept words; filled only when exact.
    pub witnesses: Vec<Vec<u64>>,
    pub nodes: u64,
}

impl MaxClassOutcome {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

fn permute_word(w: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .fold(0, |acc, (i, &p)| acc | (w >> i & 1) << p)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
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

/// Least sorted word list over all relabellings of the domain.
pub fn canonical_form(words: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut v: Vec<u64> = words.iter().map(|&w| permute_word(w, p)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

fn within(n: usize, words: &[u64], d: usize, budget: &mut Budget) -> Option<bool> {
    has_nc_teacher_within(&class_from_words(n, words), d, budget)
}

/// Exact size of the largest class over `[n]` with NCTD at most `d`, with all
/// maximum classes up to domain permutation.
///
/// Sizes are tried from `min(2^n, 2^d binomial(n,d))` downwards; since NCTD
/// never grows on a subclass, the first size with a witness is the maximum.
pub fn max_class_search(n: usize, d: usize, budget: &mut Budget) -> Result<MaxClassOutcome> {
    if n == 0 || n > MAX_CLASS_SEARCH_N {
        return Err(Error::TooLarge {
            size: n,
            cap: MAX_CLASS_SEARCH_N,
        });
    }
    if d > n {
        return Err(Error::InvalidArgument(format!("need d <= n, got d={d}, n={n}")));
    }
    let universe = 1usize << n;
    let ksz = ksz_bound(n, d)?.to_usize().unwrap_or(usize::MAX);
    let mut upper = ksz.min(universe);

    // greedy: add concepts in numeric order while the class stays within order d
    let mut greedy: Vec<u64> = Vec::new();
    for w in 0..universe as u64 {
        greedy.push(w);
        match within(n, &greedy, d, budget) {
            Some(true) => {}
            Some(false) => {
                greedy.pop();
            }
            None => {
                greedy.pop();
                return Ok(MaxClassOutcome {
                    n,
                    d,
                    greedy: greedy.len(),
                    lower: greedy.len(),
                    upper,
                    witnesses: Vec::new(),
                    nodes: budget.nodes(),
                });
            }
        }
    }
    let lower = greedy.len();
    let perms = permutations(n);
    while upper >= lower {
        let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut exhausted = false;
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        for idx in colex_combinations(universe, upper) {
            let words: Vec<u64> = idx.iter().map(|&i| i as u64).collect();
            let canon = canonical_form(&words, &perms);
            if !seen.insert(canon.clone()) {
                continue;
            }
            match within(n, &words, d, budget) {
                Some(true) => {
                    found.insert(canon);
                }
                Some(false) => {}
                None => {
                    exhausted = true;
                    break;
                }
            }
        }
        if exhausted {
            let lower = if found.is_empty() { lower } else { upper };
            return Ok(MaxClassOutcome {
                n,
                d,
                greedy: greedy.len(),
                lower,
                upper,
                witnesses: Vec::new(),
                nodes: budget.nodes(),
            });
        }
        if !found.is_empty() {
            return Ok(MaxClassOutcome {
                n,
                d,
                greedy: greedy.len(),
                lower: upper,
                upper,
                witnesses: found.into_iter().collect(),
                nodes: budget.nodes(),
            });
        }
        upper -= 1;
    }
    unreachable!("the greedy witness has size at least lower")
}

// ---------------------------------------------------------------------------
// binomial lower-tail simulation

/// Monte Carlo estimate of `Pr[Z < (1-γ) p m]` for `Z ~ Binomial(m, p)`,
/// with its standard error. Deterministic in `seed`.
pub fn simulate_lower_tail(p: f64, m: u64, gamma: f64, samples: u64, seed: u64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&gamma) || samples == 0 {
        return Err(Error::InvalidArgument("need p, gamma in [0, 1] and samples >= 1".into()));
    }
    const CHUNK: u64 = 1 << 14;
    let cutoff = (1.0 - gamma) * p * m as f64;
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, c));
            let count = CHUNK.min(samples - c * CHUNK);
            (0..count)
                .filter(|_| {
                    let z = (0..m).filter(|_| rng.gen_bool(p)).count();
                    (z as f64) < cutoff
                })
                .count() as u64
        })
        .sum();
    let est = hits as f64 / samples as f64;
    Ok((est, (est * (1.0 - est) / samples as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::k_subsets_lex;
    use crate::bounds::chernoff_bound;
    use crate::classical::is_teaching_set;
    use proptest::prelude::*;

    #[test]
    fn threshold_examples() {
        let t = threshold_k(1 << 20);
        assert!((t.k_prime - (16.0 - 2.0 * 21f64.log2())).abs() < 1e-12);
        assert!((t.k_prime - 7.216).abs() < 1e-3);
        assert_eq!(t.k, 7);
        assert!(threshold_k(16).k_prime < 0.0);
        let ks: Vec<f64> = (10..=30).map(|e| threshold_k(1u64 << e).k_prime).collect();
        assert!(ks.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(threshold_k_corollary(1 << 20).k, 6);
    }

    #[test]
    fn claim_scan_small() {
        let scan = claim_scan(1 << 24).unwrap();
        assert!(scan.sufficient_implies_ineq2);
        assert!(scan.corollary_sufficient_implies_ineq2);
        let first = scan.first_applicable.unwrap();
        assert!(first > 4096);
        assert!(scan.n0.unwrap() >= first);
        assert!(claim_check(1).is_err());
        let p = claim_check(16).unwrap();
        assert!(!p.applicable && !p.ineq1 && !p.ineq2);
    }

    #[test]
    fn ineq2_log_domain_matches_direct() {
        for (n, k) in [(100u64, 2u64), (500, 3), (1000, 1), (60, 4)] {
            let b = binomial_big(n as usize, k as usize).to_f64().unwrap();
            let direct = b * 2f64.powi(k as i32) * (-((n - k) as f64) * 2f64.powi(-(k as i32 + 3))).exp();
            assert!((ineq2_log2(n, k) - direct.log2()).abs() < 1e-9);
        }
    }

    #[test]
    fn tdmin_degenerate_n2() {
        let run = run_tdmin_experiment(&ExperimentConfig::new(2, 10, 3)).unwrap();
        assert!(run.records.iter().all(|r| r.td_min == 1 && r.nctd == 1));
        assert_eq!(run.summary.distribution.get(&1), Some(&10));
        for g in all_tournaments(2) {
            assert_eq!(class1(&g).len(), 2);
            assert_eq!(td_min(&class1(&g)).unwrap(), 1);
        }
    }

    #[test]
    fn tdmin_records_and_csv() {
        let cfg = ExperimentConfig::new(10, 40, 99);
        let a = run_tdmin_experiment(&cfg).unwrap();
        let b = run_tdmin_experiment(&cfg).unwrap();
        assert_eq!(tdmin_csv(&a.records), tdmin_csv(&b.records));
        assert!(a.summary.all_nctd_one);
        assert!(a.records.iter().enumerate().all(|(i, r)| r.trial == i as u64));
        for r in &a.records {
            let rtd = r.rtd.unwrap();
            assert!(r.nctd <= rtd && r.td_min <= rtd);
        }
        let csv = tdmin_csv(&a.records);
        assert!(csv.starts_with("trial,seed,n,td_min,nctd\n"));
        assert_eq!(csv.lines().count(), 41);
        assert!(ExperimentConfig::new(1, 1, 0).validate().is_err());
        assert!(ExperimentConfig::new(3, 0, 0).validate().is_err());
    }

    #[test]
    fn tau_examples() {
        let r = tau_estimate(16, 50, 1, None).unwrap();
        assert!(r.vacuous);
        assert_eq!(r.fraction, 0.0);
        let a = tau_estimate(16, 300, 5, Some(1)).unwrap();
        let b = tau_estimate(16, 300, 5, Some(1)).unwrap();
        assert_eq!(a, b);
        assert!(!a.vacuous);
        assert!(a.ci_low <= a.fraction && a.fraction <= a.ci_high);
    }

    #[test]
    fn wilson_reference() {
        // 20 of 100: the Wilson 95% interval is about [0.1333, 0.2888]
        let (lo, hi) = wilson_interval(20, 100, Z95);
        assert!((lo - 0.13330).abs() < 1e-4);
        assert!((hi - 0.28883).abs() < 1e-4);
        let (lo, hi) = wilson_interval(0, 10, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0);
    }

    #[test]
    fn pattern_examples() {
        let g = Tournament::random(7, 11);
        let empty = InstanceSet::empty(7);
        assert_eq!(pattern_count(&g, &empty, &[]).unwrap(), 7);
        let s = InstanceSet::from_members(7, &[2, 5, 6]).unwrap();
        let total: usize = (0..8u32)
            .map(|m| {
                let b: Vec<bool> = (0..3).map(|j| m >> j & 1 == 1).collect();
                pattern_count(&g, &s, &b).unwrap()
            })
            .sum();
        assert_eq!(total, 7);
        assert!(pattern_count(&g, &s, &[true]).is_err());
    }

    /// Brute force: some `k`-set isolates some concept.
    fn some_isolating_set(k: &ConceptClass, size: usize) -> bool {
        k_subsets_lex(k.n(), size).into_iter().any(|s| {
            let m: Vec<usize> = s.iter().map(|i| i + 1).collect();
            let set = InstanceSet::from_members(k.n(), &m).unwrap();
            k.iter().any(|c| is_teaching_set(k, c, &set).unwrap())
        })
    }

    proptest! {
        #[test]
        fn patterns_characterize_td_min(n in 2usize..=9, seed in any::<u64>()) {
            let k = class1(&Tournament::random(n, seed));
            let direct = td_min(&k).unwrap();
            prop_assert_eq!(td_min_by_patterns(&k).unwrap(), direct);
            for size in 0..=n {
                let p = pattern_summary(&k, size).unwrap();
                prop_assert_eq!(p.no_singleton, direct > size);
                prop_assert_eq!(p.no_singleton, !some_isolating_set(&k, size));
                if p.min_at_least_two() {
                    prop_assert!(direct > size);
                }
            }
        }
    }

    #[test]
    fn dim1_small() {
        for n in 1..=3 {
            for pre in [false, true] {
                let r = verify_dim1(n, pre).unwrap();
                assert!(r.passed(), "n={n} pre={pre}: {r:?}");
                assert_eq!(r.passing.len(), r.tournament_classes);
            }
        }
        assert!(verify_dim1(5, true).is_err());
    }

    #[test]
    fn max_class_dim1() {
        for n in 1..=3 {
            let out = max_class_search(n, 1, &mut Budget::unlimited()).unwrap();
            assert_eq!(out.exact(), Some(2 * n));
            let perms = permutations(n);
            let tours: BTreeSet<Vec<u64>> = all_tournaments(n)
                .map(|g| canonical_form(&sorted_words(&class2(&g)), &perms))
                .collect();
            for w in &out.witnesses {
                assert!(tours.contains(w));
            }
        }
    }

    #[test]
    fn max_class_budget_interval() {
        let out = max_class_search(4, 1, &mut Budget::with_nodes(5)).unwrap();
        assert!(out.lower <= out.upper && out.upper <= 8);
    }

    #[test]
    fn canonical_form_invariant() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let a = canonical_form(&[0b001, 0b011], &perms);
        let b = canonical_form(&[0b100, 0b110], &perms);
        assert_eq!(a, b);
    }

    #[test]
    fn simulation_matches_exact_tail() {
        let (est, se) = simulate_lower_tail(0.5, 20, 0.5, 200_000, 4).unwrap();
        // Pr[Bin(20, 1/2) < 5] = 6196 / 2^20
        let exact = 6196.0 / 1048576.0;
        assert!((est - exact).abs() < 4.0 * se + 1e-4);
        assert!(est <= chernoff_bound(0.5, 20, 0.5).unwrap());
        let again = simulate_lower_tail(0.5, 20, 0.5, 200_000, 4).unwrap();
        assert_eq!((est, se), again);
    }
}
