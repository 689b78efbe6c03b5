//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted strictly descending under the polynomial's active
//! ordering; switching orderings re-sorts the term list and never touches
//! coefficients. The zero polynomial is the empty term list.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::ring::{check_same_ring, Monomial, MonomialOrdering, Ring};

/// Default ordering for newly built polynomials: the local view at the origin.
pub const DEFAULT_ORDERING: MonomialOrdering = MonomialOrdering::NegDegRevLex;

/// One nonzero term of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub monomial: Monomial,
}

#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Ring,
    ordering: MonomialOrdering,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            ordering: DEFAULT_ORDERING,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, value: BigRational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !value.is_zero() {
            p.terms.push(Term {
                coefficient: value,
                monomial: Monomial::one(ring.variable_count()),
            });
        }
        p
    }

    pub fn constant_int(ring: &Ring, value: i64) -> Self {
        Polynomial::constant(ring, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn variable(ring: &Ring, index: usize) -> Result<Self, Error> {
        if index >= ring.variable_count() {
            return Err(Error::IndexOutOfRange {
                index,
                count: ring.variable_count(),
            });
        }
        Ok(Polynomial {
            ring: ring.clone(),
            ordering: DEFAULT_ORDERING,
            terms: vec![Term {
                coefficient: BigRational::one(),
                monomial: Monomial::variable(ring.variable_count(), index),
            }],
        })
    }

    /// Build from raw (coefficient, monomial) pairs: duplicates are merged,
    /// zeros dropped, terms sorted under `ordering`.
    pub fn from_terms(
        ring: &Ring,
        ordering: MonomialOrdering,
        raw: Vec<(BigRational, Monomial)>,
    ) -> Result<Self, Error> {
        let n = ring.variable_count();
        let mut map: HashMap<Monomial, BigRational> = HashMap::new();
        for (c, m) in raw {
            if m.len() != n {
                return Err(Error::IndexOutOfRange {
                    index: m.len(),
                    count: n,
                });
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coefficient)| Term {
                coefficient,
                monomial,
            })
            .collect();
        terms.sort_by(|a, b| ordering.cmp(&b.monomial, &a.monomial));
        Ok(Polynomial {
            ring: ring.clone(),
            ordering,
            terms,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ordering
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].monomial.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.monomial.is_one())
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Invertible in the local ring at the origin, i.e. nonzero constant term.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Minimum total degree of a term; `None` encodes +infinity (zero polynomial).
    pub fn order(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.monomial.total_degree()).min()
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.monomial.total_degree()).max()
    }

    /// Leading term under the active ordering.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading term under an arbitrary ordering (scans when it differs from
    /// the active one).
    pub fn leading_under(&self, ordering: MonomialOrdering) -> Option<&Term> {
        if ordering == self.ordering {
            return self.terms.first();
        }
        self.terms
            .iter()
            .max_by(|a, b| ordering.cmp(&a.monomial, &b.monomial))
    }

    /// Same term multiset, re-sorted under `ordering`.
    pub fn with_ordering(&self, ordering: MonomialOrdering) -> Polynomial {
        if ordering == self.ordering {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ordering.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: self.ring.clone(),
            ordering,
            terms,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let rhs;
        let rhs_ref = if other.ordering == self.ordering {
            other
        } else {
            rhs = other.with_ordering(self.ordering);
            &rhs
        };
        let mut terms = Vec::with_capacity(self.terms.len() + rhs_ref.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs_ref.terms.len() {
            let (a, b) = (&self.terms[i], &rhs_ref.terms[j]);
            match self.ordering.cmp(&a.monomial, &b.monomial) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coefficient + &b.coefficient;
                    if !c.is_zero() {
                        terms.push(Term {
                            coefficient: c,
                            monomial: a.monomial.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs_ref.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            ordering: self.ordering,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut map: HashMap<Monomial, BigRational> = HashMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = &a.coefficient * &b.coefficient;
                let entry = map.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coefficient)| Term {
                coefficient,
                monomial,
            })
            .collect();
        terms.sort_by(|a, b| self.ordering.cmp(&b.monomial, &a.monomial));
        Ok(Polynomial {
            ring: self.ring.clone(),
            ordering: self.ordering,
            terms,
        })
    }

    pub fn neg_ref(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            ordering: self.ordering,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: -t.coefficient.clone(),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    /// Multiply by a single term c*x^m. Keeps sortedness (orderings are
    /// compatible with multiplication).
    pub fn mul_term(&self, coefficient: &BigRational, monomial: &Monomial) -> Polynomial {
        if coefficient.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            ordering: self.ordering,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coefficient: &t.coefficient * coefficient,
                    monomial: t.monomial.mul(monomial),
                })
                .collect(),
        }
    }

    pub fn scale(&self, coefficient: &BigRational) -> Polynomial {
        self.mul_term(coefficient, &Monomial::one(self.ring.variable_count()))
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut acc = Polynomial::constant_int(&self.ring, 1).with_ordering(self.ordering);
        for _ in 0..exponent {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial, Error> {
        let n = self.ring.variable_count();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, count: n });
        }
        let mut raw = Vec::new();
        for t in &self.terms {
            let e = t.monomial.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = t.monomial.exponents().to_vec();
            exps[index] = e - 1;
            raw.push((
                &t.coefficient * BigRational::from_integer(BigInt::from(e)),
                Monomial::from_exponents(exps),
            ));
        }
        Polynomial::from_terms(&self.ring, self.ordering, raw)
    }

    /// Content: gcd of the numerators divided by the lcm of the denominators,
    /// so that `self / content` is primitive with integer coefficients.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for t in &self.terms {
            num_gcd = num_gcd.gcd(&t.coefficient.numer().abs());
            den_lcm = den_lcm.lcm(t.coefficient.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Canonical scalar normalization: content 1, positive leading coefficient.
    /// Never changes the ideal generated in the local or global ring.
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms[0].coefficient.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Evaluate at polynomial images, one per variable of this ring. The
    /// images must share a ring; the result lives in that ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, Error> {
        let n = self.ring.variable_count();
        if images.len() != n {
            return Err(Error::IndexOutOfRange {
                index: images.len(),
                count: n,
            });
        }
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .ok_or(Error::EmptyRing)?;
        for img in images {
            check_same_ring(&target, img.ring())?;
        }
        let ordering = images[0].ordering();
        let mut acc = Polynomial::zero(&target).with_ordering(ordering);
        for t in &self.terms {
            let mut term_val = Polynomial::constant(&target, t.coefficient.clone())
                .with_ordering(ordering);
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                if e > 0 {
                    term_val = term_val.checked_mul(&images[i].pow(e))?;
                }
            }
            acc = acc.checked_add(&term_val)?;
        }
        Ok(acc)
    }

    /// Re-express in a larger ring. `index_map[i]` is the position of this
    /// ring's variable `i` inside `target`.
    pub fn embed(
        &self,
        target: &Ring,
        index_map: &[usize],
        ordering: MonomialOrdering,
    ) -> Result<Polynomial, Error> {
        let n = self.ring.variable_count();
        if index_map.len() != n {
            return Err(Error::IndexOutOfRange {
                index: index_map.len(),
                count: n,
            });
        }
        let tn = target.variable_count();
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u32; tn];
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                let j = index_map[i];
                if j >= tn {
                    return Err(Error::IndexOutOfRange { index: j, count: tn });
                }
                exps[j] = e;
            }
            raw.push((t.coefficient.clone(), Monomial::from_exponents(exps)));
        }
        Polynomial::from_terms(target, ordering, raw)
    }

    /// Project into a smaller ring keeping only the variables listed in
    /// `source_indices`; returns `None` when another variable occurs.
    pub fn restrict(
        &self,
        target: &Ring,
        source_indices: &[usize],
        ordering: MonomialOrdering,
    ) -> Option<Polynomial> {
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u32; target.variable_count()];
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match source_indices.iter().position(|&s| s == i) {
                    Some(j) => exps[j] = e,
                    None => return None,
                }
            }
            raw.push((t.coefficient.clone(), Monomial::from_exponents(exps)));
        }
        Some(Polynomial::from_terms(target, ordering, raw).expect("exponent lengths match"))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !crate::ring::same_ring(&self.ring, &other.ring) {
            return false;
        }
        if self.ordering == other.ordering {
            return self.terms == other.terms;
        }
        self.terms() == other.with_ordering(self.ordering).terms()
    }
}

impl Eq for Polynomial {}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring context mismatch")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring context mismatch")
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$checked(rhs).expect("ring context mismatch")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let c = &t.coefficient;
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if t.monomial.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ring, &t.monomial)?;
            }
        }
        Ok(())
    }
}
