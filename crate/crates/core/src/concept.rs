//! Concepts, instance sets and concept classes over a domain `[n]`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// A 0/1 labelling of the instances `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    n: usize,
    bits: Bits,
}

/// A subset of the instances `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InstanceSet {
    n: usize,
    bits: Bits,
}

fn check_member(n: usize, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::InstanceOutOfRange(i, n))
    } else {
        Ok(i - 1)
    }
}

macro_rules! bitset_common {
    ($t:ident) => {
        impl $t {
            /// Wraps raw bits; bits at or beyond `n` must be clear.
            pub fn from_bits(n: usize, bits: Bits) -> Self {
                debug_assert_eq!(bits.words().len(), crate::bits::words_for(n));
                $t { n, bits }
            }

            /// Builds from 1-based instance numbers.
            pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
                if n == 0 {
                    return Err(Error::EmptyDomain);
                }
                let mut bits = Bits::zeros(n);
                for &i in members {
                    bits.set(check_member(n, i)?);
                }
                Ok($t { n, bits })
            }

            pub fn empty(n: usize) -> Self {
                $t {
                    n,
                    bits: Bits::zeros(n),
                }
            }

            pub fn n(&self) -> usize {
                self.n
            }

            pub fn bits(&self) -> &Bits {
                &self.bits
            }

            /// Membership of the 1-based instance `i`.
            pub fn contains(&self, i: usize) -> bool {
                i >= 1 && i <= self.n && self.bits.test(i - 1)
            }

            /// Members as ascending 1-based instance numbers.
            pub fn members(&self) -> Vec<usize> {
                self.bits.ones().map(|i| i + 1).collect()
            }

            pub fn len(&self) -> usize {
                self.bits.count_ones()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.bits)
            }
        }
    };
}

bitset_common!(Concept);
bitset_common!(InstanceSet);

impl Concept {
    /// Parses a label string such as `"0110"`; character `j` labels instance `j`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut bits = Bits::zeros(n);
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits.set(i),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid label character {other:?}"),
                    })
                }
            }
        }
        Ok(Concept { n, bits })
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.n)
            .map(|i| if self.bits.test(i) { '1' } else { '0' })
            .collect()
    }

    pub fn label(&self, i: usize) -> bool {
        self.contains(i)
    }
}

impl InstanceSet {
    pub fn full(n: usize) -> Self {
        InstanceSet {
            n,
            bits: Bits::full(n),
        }
    }

    pub fn union(&self, other: &InstanceSet) -> Result<InstanceSet> {
        same_n(self.n, other.n)?;
        Ok(InstanceSet {
            n: self.n,
            bits: self.bits.or(&other.bits),
        })
    }

    pub fn is_disjoint(&self, other: &InstanceSet) -> bool {
        !self.bits.intersects(&other.bits)
    }

    pub fn is_subset(&self, other: &InstanceSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Lexicographic order on the ascending member lists.
    pub fn lex_cmp(&self, other: &InstanceSet) -> std::cmp::Ordering {
        self.bits.lex_cmp(&other.bits)
    }
}

impl fmt::Display for InstanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DomainMismatch(a, b))
    }
}

/// True iff `c` and `c2` carry the same label on every instance of `s`.
pub fn agrees_on(c: &Concept, c2: &Concept, s: &InstanceSet) -> Result<bool> {
    same_n(c.n, c2.n)?;
    same_n(c.n, s.n)?;
    Ok(c.bits.agree_on(&c2.bits, &s.bits))
}

/// Instances on which the two concepts disagree.
pub fn difference_set(c: &Concept, c2: &Concept) -> Result<InstanceSet> {
    same_n(c.n, c2.n)?;
    Ok(InstanceSet {
        n: c.n,
        bits: c.bits.xor(&c2.bits),
    })
}

pub fn complement(c: &Concept) -> Concept {
    Concept {
        n: c.n,
        bits: c.bits.not(c.n),
    }
}

/// Duplicate-free, order-preserving list of concepts over a shared domain.
#[derive(Clone)]
pub struct ConceptClass {
    n: usize,
    concepts: Vec<Concept>,
    index: HashMap<Bits, usize>,
}

impl PartialEq for ConceptClass {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.concepts == other.concepts
    }
}

impl Eq for ConceptClass {}

impl fmt::Debug for ConceptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConceptClass")
            .field("n", &self.n)
            .field("concepts", &self.concepts)
            .finish()
    }
}

impl ConceptClass {
    /// Rejects duplicates and concepts over a different domain. May be empty.
    pub fn new(n: usize, concepts: Vec<Concept>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut index = HashMap::with_capacity(concepts.len());
        for (i, c) in concepts.iter().enumerate() {
            same_n(n, c.n)?;
            if index.insert(c.bits.clone(), i).is_some() {
                return Err(Error::DuplicateConcept { line: i + 1 });
            }
        }
        Ok(ConceptClass {
            n,
            concepts,
            index,
        })
    }

    /// Builds from membership lists, one per concept.
    pub fn from_member_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let concepts = lists
            .iter()
            .map(|m| Concept::from_members(n, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, concepts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn get(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Concept> {
        self.concepts.iter()
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        if c.n != self.n {
            return None;
        }
        self.index.get(&c.bits).copied()
    }

    pub fn contains(&self, c: &Concept) -> bool {
        self.index_of(c).is_some()
    }

    /// Subclass with the given member indices, in the given order.
    pub fn subclass(&self, idx: &[usize]) -> ConceptClass {
        let concepts: Vec<Concept> = idx.iter().map(|&i| self.concepts[i].clone()).collect();
        ConceptClass::new(self.n, concepts).expect("subclass of a valid class is valid")
    }

    /// Set equality, ignoring order.
    pub fn same_set(&self, other: &ConceptClass) -> bool {
        self.n == other.n
            && self.len() == other.len()
            && other.iter().all(|c| self.contains(c))
    }

    /// Raw bit vectors, aligned with `concepts()`.
    pub(crate) fn raw(&self) -> Vec<Bits> {
        self.concepts.iter().map(|c| c.bits.clone()).collect()
    }
}

/// Parses the class file format: a `n=<int>` header followed by one
/// 0/1 label string per concept; blank and `#` lines are skipped.
pub fn parse_class(text: &str) -> Result<ConceptClass> {
    let mut n: Option<usize> = None;
    let mut concepts = Vec::new();
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(n) = n else {
            n = Some(parse_header_n(line, line_no)?);
            continue;
        };
        if line.chars().count() != n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {n} labels, found {}", line.chars().count()),
            });
        }
        let c = Concept::from_bitstring(line).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
            other => other,
        })?;
        if seen.insert(c.bits.clone(), line_no).is_some() {
            return Err(Error::DuplicateConcept { line: line_no });
        }
        concepts.push(c);
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing header `n=<int>`".into(),
    })?;
    ConceptClass::new(n, concepts)
}

fn parse_header_n(line: &str, line_no: usize) -> Result<usize> {
    let bad = || Error::Parse {
        line: line_no,
        msg: format!("missing header `n=<int>`, found {line:?}"),
    };
    let v = line.strip_prefix("n=").ok_or_else(bad)?;
    let n: usize = v.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    Ok(n)
}

pub fn serialize_class(k: &ConceptClass) -> String {
    let mut out = format!("n={}\n", k.n);
    for c in k.iter() {
        out.push_str(&c.to_bitstring());
        out.push('\n');
    }
    out
}
