//! Closed-form size bounds for no-clash classes and the heavy-teaching-set
//! machinery linking no-clash teachers to narrow-clique-free families.

use crate::budget::Budget;
use crate::concept::InstanceSet;
use crate::error::{Error, Result};
use crate::johnson::{self, KSetFamily};
use crate::nc::NcTeacher;
use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Comparison tolerance for the irrational improved factor.
pub const FACTOR_TOLERANCE: f64 = 1e-12;

/// Node budget for the automatic exact `h_t(n,d)` used by [`bound_report`].
pub const AUTO_H_NODE_BUDGET: u64 = 2_000_000;

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut b = BigUint::one();
    for i in 0..k {
        b = b * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    b
}

/// `Φ_d(m) = Σ_{i=0}^{d} binomial(m, i)`.
pub fn sauer_phi(d: usize, m: usize) -> Result<BigUint> {
    if d > m {
        return Err(Error::InvalidArgument(format!("need d <= m, got d={d}, m={m}")));
    }
    Ok((0..=d).map(|i| binomial_big(m, i)).sum())
}

/// `2^d * binomial(n, d)`.
pub fn ksz_bound(n: usize, d: usize) -> Result<BigUint> {
    if d > n {
        return Err(Error::InvalidArgument(format!("need d <= n, got d={d}, n={n}")));
    }
    Ok(binomial_big(n, d) << d)
}

/// `2 sqrt(2/(d+1)) - 2/(d+1)`.
pub fn improved_factor(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidArgument("need d >= 1".into()));
    }
    let x = 2.0 / (d as f64 + 1.0);
    Ok(2.0 * x.sqrt() - x)
}

/// `floor(sqrt(2(d+1)))`, computed in integers.
pub fn default_t(d: usize) -> usize {
    (2 * (d + 1)).sqrt()
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `(h + (1-h) * 2/(t+1)) * 2^d * binomial(n,d)`, exactly.
pub fn gub_bound(n: usize, d: usize, t: usize, h: &BigRational) -> Result<BigRational> {
    if !(2 <= t && t <= d && d <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= t <= d <= n, got t={t}, d={d}, n={n}"
        )));
    }
    if h < &BigRational::zero() || h > &BigRational::one() {
        return Err(Error::InvalidArgument(format!("h = {h} outside [0, 1]")));
    }
    let one = BigRational::one();
    let ksz = BigRational::from_integer(BigInt::from(ksz_bound(n, d)?));
    Ok((h + (&one - h) * ratio(2, t + 1)) * ksz)
}

/// `(5n - 4) n / 3`.
pub fn corollary_d2_bound(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    Ok(ratio((5 * n - 4) * n, 3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HKind {
    Exact,
    UpperBound,
}

/// The `h` used for an automatic bound: exact `h_t(n,d)` when the extremal
/// search finishes within [`AUTO_H_NODE_BUDGET`] nodes, else the inherited `t/(d+1)` (valid for
/// `n >= d+1`). At `n = d`, `h = 1` exactly.
pub fn auto_h(n: usize, d: usize, t: usize) -> Result<(BigRational, HKind)> {
    if n == d {
        return Ok((BigRational::one(), HKind::Exact));
    }
    if johnson::binomial(n, d) <= johnson::EXACT_VERTEX_LIMIT {
        let mut budget = Budget::with_nodes(AUTO_H_NODE_BUDGET);
        let out = johnson::h_max(n, d, t, johnson::EXACT_VERTEX_LIMIT, &mut budget)?;
        if let Some(h) = out.exact() {
            return Ok((
                BigRational::new(BigInt::from(h), BigInt::from(johnson::binomial(n, d))),
                HKind::Exact,
            ));
        }
    }
    Ok((ratio(t, d + 1), HKind::UpperBound))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub t: Option<usize>,
    pub ksz: BigUint,
    pub gub: Option<BigRational>,
    pub factor: f64,
    pub h_used: Option<BigRational>,
    pub h_kind: Option<HKind>,
}

/// All bounds for `(n, d)`; `t` defaults to `floor(sqrt(2(d+1)))` clamped to `d`.
/// The improved bound needs `d >= 2`; for `d = 1` only `ksz` and `factor` are set.
pub fn bound_report(n: usize, d: usize, t: Option<usize>) -> Result<BoundReport> {
    let ksz = ksz_bound(n, d)?;
    let factor = improved_factor(d)?;
    if d < 2 {
        if let Some(t) = t {
            return Err(Error::InvalidArgument(format!("t={t} needs d >= 2")));
        }
        return Ok(BoundReport {
            n,
            d,
            t: None,
            ksz,
            gub: None,
            factor,
            h_used: None,
            h_kind: None,
        });
    }
    let t = t.unwrap_or_else(|| default_t(d).min(d));
    let (h, kind) = auto_h(n, d, t)?;
    let gub = gub_bound(n, d, t, &h)?;
    Ok(BoundReport {
        n,
        d,
        t: Some(t),
        ksz,
        gub: Some(gub),
        factor,
        h_used: Some(h),
        h_kind: Some(kind),
    })
}

/// Distinct teaching sets of a teacher with their multiplicities `m(F)`,
/// in order of first appearance.
pub fn multiplicities(t: &NcTeacher) -> Vec<(InstanceSet, usize)> {
    let mut out: Vec<(InstanceSet, usize)> = Vec::new();
    let mut pos: std::collections::HashMap<InstanceSet, usize> = std::collections::HashMap::new();
    for s in t.sets() {
        match pos.get(s) {
            Some(&i) => out[i].1 += 1,
            None => {
                pos.insert(s.clone(), out.len());
                out.push((s.clone(), 1));
            }
        }
    }
    out
}

/// Heavy teaching sets: those `F` with `m(F) > 2^(d+1) / (t+1)`.
/// The teacher must be normalized to its order `d`, and `2 <= t <= d`.
pub fn heavy_sets(teacher: &NcTeacher, t: usize) -> Result<KSetFamily> {
    let d = teacher.order();
    if !teacher.is_normalized() {
        return Err(Error::NotNormalized(d));
    }
    if !(2 <= t && t <= d) {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= t <= d, got t={t}, d={d}"
        )));
    }
    let threshold = 1u128 << (d + 1);
    let members = multiplicities(teacher)
        .into_iter()
        .filter(|(_, m)| *m as u128 * (t as u128 + 1) > threshold)
        .map(|(s, _)| s)
        .collect();
    KSetFamily::new(teacher.class().n(), d, members)
}

/// `exp(-p m γ² / 2)`, bounding `Pr[Z < (1-γ) p m]` for `Z ~ Binomial(m, p)`.
pub fn chernoff_bound(p: f64, m: u64, gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) || !(p > 0.0 && p <= 1.0) || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= gamma <= 1, 0 < p <= 1, m >= 1; got p={p}, m={m}, gamma={gamma}"
        )));
    }
    Ok((-p * m as f64 * gamma * gamma / 2.0).exp())
}

/// `p/q` in lowest terms, with `q` printed even when it is 1.
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest `f64` to a rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}
