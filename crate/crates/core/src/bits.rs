//! Fixed-width bit vectors over a domain `[n]`.
//!
//! Instance `i` (1-based) lives at bit `(i - 1) % 64` of word `(i - 1) / 64`.
//! Domains with `n <= 64` fit in one inline word; larger domains spill to a
//! heap-allocated run of words. Bits past `n` are always zero.

use smallvec::SmallVec;
use std::cmp::Ordering;

pub(crate) const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: SmallVec<[u64; 1]>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

impl Bits {
    pub fn zeros(n: usize) -> Self {
        Bits {
            words: SmallVec::from_elem(0, words_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::zeros(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    /// Builds from a single word; only valid for `n <= 64`.
    pub fn from_word(word: u64) -> Self {
        Bits {
            words: SmallVec::from_elem(word, 1),
        }
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::zeros(n);
        for i in idx {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low word; the whole vector when the domain has at most 64 instances.
    #[inline]
    pub fn word0(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Zero-based indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// True iff `self` and `other` coincide on every bit of `mask`.
    #[inline]
    pub fn agree_on(&self, other: &Bits, mask: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&mask.words)
            .all(|((a, b), m)| (a ^ b) & m == 0)
    }

    /// True iff `self` and `other` coincide on `m1 ∪ m2`.
    #[inline]
    pub fn agree_on_union(&self, other: &Bits, m1: &Bits, m2: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(m1.words.iter().zip(&m2.words))
            .all(|((a, b), (x, y))| (a ^ b) & (x | y) == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Complement within `[n]`.
    pub fn not(&self, n: usize) -> Bits {
        let full = Bits::full(n);
        full.and_not(self)
    }

    fn zip_with(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Lexicographic order of the ascending index lists (`{1,2} < {1,3} < {2}`).
    pub fn lex_cmp(&self, other: &Bits) -> Ordering {
        let mut a = self.ones();
        let mut b = other.ones();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }

    /// Colex order: compare by the largest element where the sets differ.
    pub fn colex_cmp(&self, other: &Bits) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words).rev() {
            let d = a ^ b;
            if d != 0 {
                let top = 63 - d.leading_zeros();
                return if a >> top & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.ones().map(|i| i + 1)).finish()
    }
}

/// All `k`-subsets of `{0..n}` in lexicographic order of their index lists.
pub fn k_subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All `k`-subsets of `{0..n}` in colex order.
pub fn k_subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = k_subsets_lex(n, k);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiword_ops() {
        let n = 130;
        let a = Bits::from_indices(n, [0, 64, 129]);
        let b = Bits::from_indices(n, [0, 65, 129]);
        assert_eq!(a.words().len(), 3);
        assert_eq!(a.xor(&b).ones().collect::<Vec<_>>(), vec![64, 65]);
        assert_eq!(a.not(n).count_ones(), 127);
        assert!(a.agree_on(&b, &Bits::from_indices(n, [0, 129, 3])));
        assert!(!a.agree_on(&b, &Bits::from_indices(n, [65])));
    }

    #[test]
    fn orders() {
        let s12 = Bits::from_indices(4, [0, 1]);
        let s13 = Bits::from_indices(4, [0, 2]);
        let s2 = Bits::from_indices(4, [1]);
        assert_eq!(s12.lex_cmp(&s13), Ordering::Less);
        assert_eq!(s13.lex_cmp(&s2), Ordering::Less);
        assert_eq!(s2.colex_cmp(&s13), Ordering::Less);
        assert_eq!(s12.colex_cmp(&s13), Ordering::Less);
    }

    #[test]
    fn subset_enumeration_counts() {
        assert_eq!(k_subsets_lex(5, 2).len(), 10);
        assert_eq!(k_subsets_lex(3, 0), vec![Vec::<usize>::new()]);
        assert!(k_subsets_lex(2, 3).is_empty());
        let colex = k_subsets_colex(4, 2);
        assert_eq!(colex[0], vec![0, 1]);
        assert_eq!(colex[1], vec![0, 2]);
        assert_eq!(colex[2], vec![1, 2]);
    }
}
