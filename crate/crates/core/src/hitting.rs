//! Exact minimum hitting set over bit-vector families.
//!
//! Used for teaching sets: a teaching set for `c` is exactly a hitting set of
//! the difference sets `{c Δ c' : c' ≠ c}`.

use crate::bits::Bits;

/// Size of a minimum hitting set of `sets` over a universe of `n` elements.
///
/// Branch-and-bound: branch on the unhit set with the fewest allowed
/// elements, bound by a greedy packing of pairwise disjoint unhit sets.
/// Returns `None` if some set is empty (no hitting set exists).
pub fn min_hitting_set_size(sets: &[Bits], n: usize) -> Option<usize> {
    if sets.iter().any(Bits::is_empty) {
        return None;
    }
    if sets.is_empty() {
        return Some(0);
    }
    let all: Vec<usize> = (0..sets.len()).collect();
    let mut best = greedy(sets, n).len();
    let allowed = Bits::full(n);
    branch(sets, &all, &allowed, 0, &mut best);
    Some(best)
}

/// Lexicographically smallest hitting set among those of minimum size,
/// as ascending zero-based element indices.
pub fn lex_min_hitting_set(sets: &[Bits], n: usize) -> Option<Vec<usize>> {
    let size = min_hitting_set_size(sets, n)?;
    let all: Vec<usize> = (0..sets.len()).collect();
    let mut chosen = Vec::with_capacity(size);
    let found = lex_search(sets, n, &all, 0, size, &mut chosen);
    debug_assert!(found, "a hitting set of the optimal size must exist");
    Some(chosen)
}

/// Whether a hitting set with at most `limit` elements exists.
pub fn has_hitting_set_within(sets: &[Bits], n: usize, limit: usize) -> bool {
    let all: Vec<usize> = (0..sets.len()).collect();
    let mut chosen = Vec::new();
    (0..=limit).any(|s| {
        chosen.clear();
        lex_search(sets, n, &all, 0, s, &mut chosen)
    })
}

fn greedy(sets: &[Bits], n: usize) -> Vec<usize> {
    let mut unhit: Vec<usize> = (0..sets.len()).collect();
    let mut picked = Vec::new();
    while !unhit.is_empty() {
        let mut best = (0usize, 0usize);
        for x in 0..n {
            let cnt = unhit.iter().filter(|&&i| sets[i].test(x)).count();
            if cnt > best.1 {
                best = (x, cnt);
            }
        }
        let x = best.0;
        picked.push(x);
        unhit.retain(|&i| !sets[i].test(x));
    }
    picked
}

/// Number of pairwise disjoint sets (restricted to `allowed`) found greedily,
/// smallest first. Each needs its own element, so this bounds the optimum.
fn packing_bound(sets: &[Bits], unhit: &[usize], allowed: &Bits) -> usize {
    let mut order: Vec<(usize, Bits)> = unhit
        .iter()
        .map(|&i| {
            let r = sets[i].and(allowed);
            (r.count_ones(), r)
        })
        .collect();
    order.sort_by_key(|(c, _)| *c);
    let mut used = Bits::zeros(allowed.words().len() * 64);
    let mut count = 0;
    for (_, r) in order {
        if !r.intersects(&used) {
            used = used.or(&r);
            count += 1;
        }
    }
    count
}

fn branch(sets: &[Bits], unhit: &[usize], allowed: &Bits, chosen: usize, best: &mut usize) {
    if unhit.is_empty() {
        if chosen < *best {
            *best = chosen;
        }
        return;
    }
    if chosen + 1 >= *best {
        return;
    }
    let mut pivot = None;
    let mut pivot_size = usize::MAX;
    for &i in unhit {
        let sz = sets[i].and(allowed).count_ones();
        if sz == 0 {
            return;
        }
        if sz < pivot_size {
            pivot_size = sz;
            pivot = Some(i);
        }
    }
    if chosen + packing_bound(sets, unhit, allowed) >= *best {
        return;
    }
    let pivot = sets[pivot.unwrap()].and(allowed);
    let mut allowed = allowed.clone();
    for x in pivot.ones() {
        let rest: Vec<usize> = unhit.iter().copied().filter(|&i| !sets[i].test(x)).collect();
        branch(sets, &rest, &allowed, chosen + 1, best);
        // later branches exclude x: any solution containing x was covered here
        allowed.clear(x);
    }
}

fn lex_search(
    sets: &[Bits],
    n: usize,
    unhit: &[usize],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if unhit.is_empty() {
        return true;
    }
    if remaining == 0 || start >= n {
        return false;
    }
    let mut allowed = Bits::zeros(n);
    for x in start..n {
        allowed.set(x);
    }
    if unhit.iter().any(|&i| !sets[i].intersects(&allowed)) {
        return false;
    }
    if packing_bound(sets, unhit, &allowed) > remaining {
        return false;
    }
    for x in start..n {
        if !unhit.iter().any(|&i| sets[i].test(x)) {
            continue;
        }
        let rest: Vec<usize> = unhit.iter().copied().filter(|&i| !sets[i].test(x)).collect();
        chosen.push(x);
        if lex_search(sets, n, &rest, x + 1, remaining - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::k_subsets_lex;
    use proptest::prelude::*;

    fn brute(sets: &[Bits], n: usize) -> Option<Vec<usize>> {
        for s in 0..=n {
            for cand in k_subsets_lex(n, s) {
                let b = Bits::from_indices(n, cand.iter().copied());
                if sets.iter().all(|x| x.intersects(&b)) {
                    return Some(cand);
                }
            }
        }
        None
    }

    #[test]
    fn small_cases() {
        let n = 4;
        let sets = vec![
            Bits::from_indices(n, [0, 1]),
            Bits::from_indices(n, [1, 2]),
            Bits::from_indices(n, [2, 3]),
        ];
        assert_eq!(min_hitting_set_size(&sets, n), Some(2));
        assert_eq!(lex_min_hitting_set(&sets, n), Some(vec![0, 2]));
        assert_eq!(min_hitting_set_size(&[], n), Some(0));
        assert_eq!(min_hitting_set_size(&[Bits::zeros(n)], n), None);
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n in 1usize..9,
            raw in proptest::collection::vec(1u64..512, 0..10),
        ) {
            let mask = (1u64 << n) - 1;
            let sets: Vec<Bits> = raw
                .iter()
                .map(|w| w & mask)
                .filter(|&w| w != 0)
                .map(Bits::from_word)
                .collect();
            let expected = brute(&sets, n).unwrap();
            prop_assert_eq!(min_hitting_set_size(&sets, n), Some(expected.len()));
            prop_assert_eq!(lex_min_hitting_set(&sets, n), Some(expected.clone()));
            prop_assert!(has_hitting_set_within(&sets, n, expected.len()));
            if !expected.is_empty() {
                prop_assert!(!has_hitting_set_within(&sets, n, expected.len() - 1));
            }
        }
    }
}
