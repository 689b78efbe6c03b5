//! Ambient ring data, monomials and monomial orderings.
//!
//! All computations happen in a fixed polynomial ring over the rationals,
//! viewed either globally or through the localization at the origin. The
//! ordering decides which view is active: under `DegRevLex` the smallest
//! monomial is 1 (global well-order), under `NegDegRevLex` the largest
//! monomial is 1 (local, not a well-order).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Variable names of the ambient polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    names: Vec<String>,
}

impl RingContext {
    /// Build a ring context from distinct variable names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, Error> {
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        let mut seen: Vec<&str> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if seen.contains(&n) {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            seen.push(n);
        }
        Ok(Arc::new(RingContext {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }))
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new context with an extra variable inserted at `index`.
    pub fn with_variable_inserted(&self, index: usize, name: &str) -> Result<Arc<Self>, Error> {
        let mut names: Vec<String> = self.names.clone();
        if index > names.len() {
            return Err(Error::IndexOutOfRange {
                index,
                count: names.len(),
            });
        }
        names.insert(index, name.to_string());
        RingContext::new(&names)
    }

    /// A variable name not already used in this ring ("t", "t_1", ...).
    pub fn fresh_variable_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        let mut k = 1usize;
        loop {
            let cand = format!("{stem}_{k}");
            if self.index_of(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    pub fn describe(&self) -> String {
        self.names.join(",")
    }
}

/// Shared handle to a ring context.
pub type Ring = Arc<RingContext>;

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<(), Error> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.describe(), b.describe()))
    }
}

/// Exponent vector of a power product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(variable_count: usize) -> Self {
        Monomial {
            exponents: vec![0; variable_count],
        }
    }

    pub fn variable(variable_count: usize, index: usize) -> Self {
        let mut exponents = vec![0; variable_count];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// `other / self` when the division is exact.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exponents: other
                .exponents
                .iter()
                .zip(&self.exponents)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().map(|&e| e.min(1)).collect(),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }
}

/// Total orders on monomials, compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrdering {
    /// Degree-reverse-lexicographic. Global: 1 is the smallest monomial,
    /// so the ordering is a well-order.
    DegRevLex,
    /// Negative-degree-reverse-lexicographic. Local: 1 is the largest
    /// monomial and infinite descending chains exist (x > x^2 > ...), so
    /// this is not a well-order. The leading term of a polynomial has
    /// minimal total degree.
    NegDegRevLex,
    /// The first `block` variables are compared by deg-rev-lex among
    /// themselves; ties fall through to the remaining variables, compared
    /// globally or locally. Any monomial involving a block variable is
    /// larger than any block-free monomial, which is what elimination needs.
    Elimination { block: usize, tail_global: bool },
}

fn degrevlex_range(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    let da: u64 = a[lo..hi].iter().map(|&e| e as u64).sum();
    let db: u64 = b[lo..hi].iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (lo..hi).rev() {
        if a[i] != b[i] {
            // smaller last differing exponent wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn negdegrevlex_range(a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
    let da: u64 = a[lo..hi].iter().map(|&e| e as u64).sum();
    let db: u64 = b[lo..hi].iter().map(|&e| e as u64).sum();
    match db.cmp(&da) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (lo..hi).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrdering {
    /// True iff every variable is larger than 1, i.e. the ordering is a
    /// well-order and standard bases are Groebner bases.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrdering::DegRevLex => true,
            MonomialOrdering::NegDegRevLex => false,
            MonomialOrdering::Elimination { tail_global, .. } => *tail_global,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        debug_assert_eq!(ea.len(), eb.len());
        let n = ea.len();
        match self {
            MonomialOrdering::DegRevLex => degrevlex_range(ea, eb, 0, n),
            MonomialOrdering::NegDegRevLex => negdegrevlex_range(ea, eb, 0, n),
            MonomialOrdering::Elimination { block, tail_global } => {
                let k = (*block).min(n);
                match degrevlex_range(ea, eb, 0, k) {
                    Ordering::Equal => {
                        if *tail_global {
                            degrevlex_range(ea, eb, k, n)
                        } else {
                            negdegrevlex_range(ea, eb, k, n)
                        }
                    }
                    other => other,
                }
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// Position-over-term ordering on free-module terms: a lower component
/// index dominates, ties are decided by the base monomial ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleOrdering {
    pub base: MonomialOrdering,
}

impl ModuleOrdering {
    pub fn new(base: MonomialOrdering) -> Self {
        ModuleOrdering { base }
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match b.0.cmp(&a.0) {
            Ordering::Equal => self.base.cmp(a.1, b.1),
            other => other,
        }
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrdering::DegRevLex => write!(f, "degrevlex"),
            MonomialOrdering::NegDegRevLex => write!(f, "negdegrevlex"),
            MonomialOrdering::Elimination { block, tail_global } => {
                write!(
                    f,
                    "elim({block},{})",
                    if *tail_global { "global" } else { "local" }
                )
            }
        }
    }
}
