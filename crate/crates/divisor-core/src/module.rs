//! Finitely generated submodules of a free module over the local ring.
//!
//! Vector polynomials are the coefficient tuples of derivations
//! `a_1 d_1 + ... + a_n d_n`; submodules carry a position-over-term
//! ordering over the ambient local ordering, a cached standard basis, and
//! Nakayama-style minimal generating sets.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::engine::{self, Caps, EngineCfg, SbMode};
use crate::error::Error;
use crate::poly::{Polynomial, Term};
use crate::ring::{check_same_ring, ModuleOrdering, Monomial, MonomialOrdering, Ring};

/// Element of a free module: a fixed-length tuple of polynomials.
#[derive(Debug, Clone)]
pub struct VectorPolynomial {
    components: Vec<Polynomial>,
}

impl VectorPolynomial {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::RankMismatch {
                expected: 1,
                got: 0,
            });
        }
        let ring = components[0].ring().clone();
        let ordering = components[0].ordering();
        let mut out = Vec::with_capacity(components.len());
        for c in components {
            check_same_ring(&ring, c.ring())?;
            out.push(c.with_ordering(ordering));
        }
        Ok(VectorPolynomial { components: out })
    }

    pub fn zero(ring: &Ring, rank: usize) -> Self {
        VectorPolynomial {
            components: (0..rank).map(|_| Polynomial::zero(ring)).collect(),
        }
    }

    /// The coordinate vector e_index.
    pub fn unit(ring: &Ring, rank: usize, index: usize) -> Result<Self, Error> {
        if index >= rank {
            return Err(Error::IndexOutOfRange {
                index,
                count: rank,
            });
        }
        let mut v = VectorPolynomial::zero(ring, rank);
        v.components[index] = Polynomial::constant_int(ring, 1);
        Ok(v)
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Ring {
        self.components[0].ring()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Polynomial {
        &self.components[index]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn base_ordering(&self) -> MonomialOrdering {
        self.components[0].ordering()
    }

    pub fn with_base_ordering(&self, ordering: MonomialOrdering) -> Self {
        VectorPolynomial {
            components: self
                .components
                .iter()
                .map(|c| c.with_ordering(ordering))
                .collect(),
        }
    }

    /// Leading (component, term) under position-over-term: the first nonzero
    /// component dominates, its own leading term decides.
    pub fn leading(&self) -> Option<(usize, &Term)> {
        for (i, c) in self.components.iter().enumerate() {
            if let Some(t) = c.leading() {
                return Some((i, t));
            }
        }
        None
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.components.iter().filter_map(|c| c.total_degree()).max()
    }

    pub fn checked_add(&self, other: &VectorPolynomial) -> Result<VectorPolynomial, Error> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorPolynomial { components })
    }

    pub fn checked_sub(&self, other: &VectorPolynomial) -> Result<VectorPolynomial, Error> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorPolynomial { components })
    }

    pub fn mul_term(&self, coefficient: &BigRational, monomial: &Monomial) -> VectorPolynomial {
        VectorPolynomial {
            components: self
                .components
                .iter()
                .map(|c| c.mul_term(coefficient, monomial))
                .collect(),
        }
    }

    pub fn scale(&self, coefficient: &BigRational) -> VectorPolynomial {
        self.mul_term(coefficient, &Monomial::one(self.ring().variable_count()))
    }

    /// Content over all components, sign taken from the leading coefficient.
    pub fn normalized(&self) -> VectorPolynomial {
        let Some((_, lt)) = self.leading() else {
            return self.clone();
        };
        let mut content = BigRational::one();
        let mut first = true;
        for c in &self.components {
            if c.is_zero() {
                continue;
            }
            let cc = c.content();
            content = if first { cc } else { rational_gcd(&content, &cc) };
            first = false;
        }
        let mut factor = content.recip();
        if lt.coefficient.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    BigRational::new(
        a.numer().gcd(b.numer()),
        a.denom().lcm(b.denom()),
    )
}

impl PartialEq for VectorPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for VectorPolynomial {}

impl fmt::Display for VectorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Finitely generated submodule of the free module of the given rank.
#[derive(Debug)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    ordering: ModuleOrdering,
    generators: Vec<VectorPolynomial>,
    caps: Caps,
    basis: OnceLock<Vec<VectorPolynomial>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Submodule {
            ring: self.ring.clone(),
            rank: self.rank,
            ordering: self.ordering,
            generators: self.generators.clone(),
            caps: self.caps,
            basis,
        }
    }
}

impl Submodule {
    /// The module ordering is fixed to position-over-term over the local
    /// ordering; generators are re-sorted accordingly.
    pub fn new(ring: &Ring, rank: usize, generators: Vec<VectorPolynomial>) -> Result<Self, Error> {
        let ordering = ModuleOrdering::new(MonomialOrdering::NegDegRevLex);
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_same_ring(ring, g.ring())?;
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: g.rank(),
                });
            }
            if !g.is_zero() {
                gens.push(g.with_base_ordering(ordering.base));
            }
        }
        Ok(Submodule {
            ring: ring.clone(),
            rank,
            ordering,
            generators: gens,
            caps: Caps::default(),
            basis: OnceLock::new(),
        })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ordering(&self) -> ModuleOrdering {
        self.ordering
    }

    pub fn generators(&self) -> &[VectorPolynomial] {
        &self.generators
    }

    pub fn is_zero_module(&self) -> bool {
        self.generators.is_empty()
    }

    /// Standard basis under the module ordering, computed once and shared.
    pub fn standard_basis(&self) -> Result<&[VectorPolynomial], Error> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let cfg = EngineCfg {
            ordering: self.ordering,
            caps: self.caps,
        };
        let out = engine::standard_basis(&self.generators, &cfg, SbMode::Plain)?;
        let _ = self.basis.set(out.basis);
        Ok(self.basis.get().expect("just set"))
    }

    /// Membership over the local ring, by Mora weak normal form.
    pub fn contains(&self, v: &VectorPolynomial) -> Result<bool, Error> {
        check_same_ring(&self.ring, v.ring())?;
        if v.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: v.rank(),
            });
        }
        if v.is_zero() {
            return Ok(true);
        }
        let basis = self.standard_basis()?;
        let cfg = EngineCfg {
            ordering: self.ordering,
            caps: self.caps,
        };
        let r = engine::weak_normal_form(v, basis, &cfg)?;
        Ok(r.remainder.is_zero())
    }

    /// Adding generators never shrinks the module.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Submodule::new(&self.ring, self.rank, gens)?.with_caps(self.caps))
    }

    /// Module equality by mutual containment of generators.
    pub fn equals(&self, other: &Submodule) -> Result<bool, Error> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in self.generators() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A minimal generating set by Nakayama reduction: drop a basis element
    /// whenever it lies in the module spanned by the others plus m*M, working
    /// through candidates in descending leading-term order. The returned
    /// count equals the minimal number of generators over the local ring;
    /// the chosen set is deterministic but only the count is canonical.
    pub fn minimal_generators(&self) -> Result<Vec<VectorPolynomial>, Error> {
        if self.ordering.base.is_global() {
            return Err(Error::InvalidInput(
                "minimal generating sets require a local ordering".into(),
            ));
        }
        let sb = self.standard_basis()?.to_vec();
        if sb.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.ring.variable_count();
        // m*M: every generator scaled by every variable.
        let mut maximal_ideal_times_module = Vec::with_capacity(sb.len() * n);
        for g in &sb {
            for l in 0..n {
                maximal_ideal_times_module
                    .push(g.mul_term(&BigRational::one(), &Monomial::variable(n, l)));
            }
        }
        let mut current = sb;
        loop {
            let mut dropped = None;
            for idx in 0..current.len() {
                let mut gens: Vec<VectorPolynomial> = current
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, g)| g.clone())
                    .collect();
                gens.extend(maximal_ideal_times_module.iter().cloned());
                let span = Submodule::new(&self.ring, self.rank, gens)?.with_caps(self.caps);
                if span.contains(&current[idx])? {
                    dropped = Some(idx);
                    break;
                }
            }
            match dropped {
                Some(idx) => {
                    current.remove(idx);
                }
                None => break,
            }
        }
        Ok(current)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Generators of the relation module { a : a_1 f_1 + ... + a_m f_m = 0 },
/// extracted by lifting the reductions-to-zero of all S-pairs of a tracked
/// standard basis. Zero inputs contribute coordinate-vector relations.
pub fn syzygies(polys: &[Polynomial]) -> Result<Submodule, Error> {
    syzygies_with_caps(polys, Caps::default())
}

pub fn syzygies_with_caps(polys: &[Polynomial], caps: Caps) -> Result<Submodule, Error> {
    if polys.is_empty() {
        return Err(Error::InvalidInput("syzygies of an empty list".into()));
    }
    let ring = polys[0].ring().clone();
    for p in polys {
        check_same_ring(&ring, p.ring())?;
    }
    let ordering = ModuleOrdering::new(MonomialOrdering::NegDegRevLex);
    let rank = polys.len();
    let vectors: Vec<VectorPolynomial> = polys
        .iter()
        .map(|p| {
            VectorPolynomial::new(vec![p.with_ordering(ordering.base)]).expect("rank 1")
        })
        .collect();
    let cfg = EngineCfg { ordering, caps };
    let out = engine::standard_basis(&vectors, &cfg, SbMode::WithSyzygies)?;
    let gens: Vec<VectorPolynomial> = out
        .syzygies
        .into_iter()
        .map(VectorPolynomial::new)
        .collect::<Result<Vec<_>, _>>()?;
    let gens = gens
        .into_iter()
        .map(|g| g.normalized())
        .collect::<Vec<_>>();
    Ok(Submodule::new(&ring, rank, gens)?.with_caps(caps))
}
