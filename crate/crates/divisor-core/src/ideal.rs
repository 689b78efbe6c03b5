//! Ideals with cached standard bases, in global and local orderings.
//!
//! Membership means membership in the localization at the origin whenever
//! the ordering is local; under a global ordering the same machinery is
//! plain Buchberger division.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::One;

use crate::engine::{self, Caps, EngineCfg, SbMode};
use crate::error::Error;
use crate::module::VectorPolynomial;
use crate::poly::Polynomial;
use crate::ring::{check_same_ring, ModuleOrdering, Monomial, MonomialOrdering, Ring};

/// Result of dividing by a standard basis. Over a local ordering the
/// division may multiply the input by a local unit (Mora), recorded in
/// `used_unit_multiplier`.
#[derive(Debug, Clone)]
pub struct NormalFormResult {
    pub remainder: Polynomial,
    pub used_unit_multiplier: bool,
}

/// Certified division: `unit * input = sum(quotients[i] * basis[i]) + remainder`,
/// with quotients indexed by the standard basis of the ideal.
#[derive(Debug, Clone)]
pub struct DivisionCertificate {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    ordering: MonomialOrdering,
    generators: Vec<Polynomial>,
    caps: Caps,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            ordering: self.ordering,
            generators: self.generators.clone(),
            caps: self.caps,
            basis,
        }
    }
}

impl Ideal {
    /// The zero ideal is represented by the single generator 0.
    pub fn new(
        ring: &Ring,
        generators: Vec<Polynomial>,
        ordering: MonomialOrdering,
    ) -> Result<Self, Error> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            check_same_ring(ring, g.ring())?;
            if !g.is_zero() {
                gens.push(g.with_ordering(ordering));
            }
        }
        if gens.is_empty() {
            gens.push(Polynomial::zero(ring).with_ordering(ordering));
        }
        Ok(Ideal {
            ring: ring.clone(),
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

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ordering
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    fn module_cfg(&self) -> EngineCfg {
        EngineCfg {
            ordering: ModuleOrdering::new(self.ordering),
            caps: self.caps,
        }
    }

    fn wrap(polys: &[Polynomial]) -> Vec<VectorPolynomial> {
        polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| VectorPolynomial::new(vec![p.clone()]).expect("rank 1"))
            .collect()
    }

    /// Standard basis under the ideal's ordering: interreduced, content-1
    /// generators sorted descending by leading monomial. Cached with
    /// single-assignment semantics; concurrent racers compute the same value.
    pub fn standard_basis(&self) -> Result<&[Polynomial], Error> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let out = engine::standard_basis(
            &Ideal::wrap(&self.generators),
            &self.module_cfg(),
            SbMode::Plain,
        )?;
        let polys: Vec<Polynomial> = out
            .basis
            .into_iter()
            .map(|v| v.into_components().swap_remove(0))
            .collect();
        let _ = self.basis.set(polys);
        Ok(self.basis.get().expect("just set"))
    }

    fn set_basis(&self, basis: Vec<Polynomial>) {
        let _ = self.basis.set(basis);
    }

    /// True when the computed standard basis consists of single terms.
    pub fn is_monomial_ideal(&self) -> Result<bool, Error> {
        Ok(self
            .standard_basis()?
            .iter()
            .all(|g| g.is_monomial()))
    }

    /// Unit ideal test: some basis element has leading monomial 1. Under a
    /// local ordering that is exactly invertibility in the localization.
    pub fn is_unit_ideal(&self) -> Result<bool, Error> {
        Ok(self
            .standard_basis()?
            .iter()
            .any(|g| g.leading().map_or(false, |t| t.monomial.is_one())))
    }

    /// Total normal form: no term of the remainder is divisible by a basis
    /// leading monomial, and the remainder is zero iff `f` lies in the ideal
    /// (in the localization when the ordering is local).
    pub fn normal_form(&self, f: &Polynomial) -> Result<NormalFormResult, Error> {
        let cert = self.division_certificate(f)?;
        Ok(NormalFormResult {
            used_unit_multiplier: !cert.unit.is_constant(),
            remainder: cert.remainder,
        })
    }

    /// Certified total normal form against the standard basis.
    pub fn division_certificate(&self, f: &Polynomial) -> Result<DivisionCertificate, Error> {
        check_same_ring(&self.ring, f.ring())?;
        let sb = self.standard_basis()?.to_vec();
        let (remainder, unit, quotients, _) =
            engine::certified_poly_normal_form(f, &sb, &self.module_cfg())?;
        Ok(DivisionCertificate {
            unit,
            quotients,
            remainder,
        })
    }

    /// Membership via the weak normal form (fast path; same verdict as
    /// `normal_form`).
    pub fn contains(&self, f: &Polynomial) -> Result<bool, Error> {
        check_same_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        let sb = self.standard_basis()?;
        if sb.is_empty() {
            return Ok(false);
        }
        let v = VectorPolynomial::new(vec![f.clone()])?;
        let r = engine::weak_normal_form(&v, &Ideal::wrap(sb), &self.module_cfg())?;
        Ok(r.remainder.is_zero())
    }

    /// Ideal equality by two-way membership of generators.
    pub fn equals(&self, other: &Ideal) -> Result<bool, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.ordering != other.ordering {
            return Err(Error::OrderingMismatch);
        }
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

    /// Sum: concatenated generators, no basis computed eagerly.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal::new(&self.ring, gens, self.ordering)?.with_caps(self.caps))
    }

    /// Product: all pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in other.generators() {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(Ideal::new(&self.ring, gens, self.ordering)?.with_caps(self.caps))
    }

    /// Intersection by the tag-variable route: adjoin t, form
    /// t*I + (1-t)*J, and eliminate t with an ordering whose t-block is
    /// global while the ambient block keeps the ideal's own ordering.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal, Error> {
        check_same_ring(&self.ring, &other.ring)?;
        let ambient = self.ordering;
        if !matches!(
            ambient,
            MonomialOrdering::DegRevLex | MonomialOrdering::NegDegRevLex
        ) {
            return Err(Error::InvalidInput(
                "intersection requires a plain global or local ambient ordering".into(),
            ));
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ideal::new(&self.ring, Vec::new(), ambient).map(|i| i.with_caps(self.caps));
        }
        let n = self.ring.variable_count();
        let tag = self.ring.fresh_variable_name("t");
        let ext = self.ring.with_variable_inserted(0, &tag)?;
        let elim = MonomialOrdering::Elimination {
            block: 1,
            tail_global: ambient.is_global(),
        };
        let index_map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::variable(&ext, 0)?.with_ordering(elim);
        let one = Polynomial::constant_int(&ext, 1).with_ordering(elim);
        let one_minus_t = one.checked_sub(&t)?;
        let mut gens = Vec::new();
        for f in &self.generators {
            gens.push(t.checked_mul(&f.embed(&ext, &index_map, elim)?)?);
        }
        for g in other.generators() {
            gens.push(one_minus_t.checked_mul(&g.embed(&ext, &index_map, elim)?)?);
        }
        let extended = Ideal::new(&ext, gens, elim)?.with_caps(self.caps);
        let sb = extended.standard_basis()?;
        let mut result_gens = Vec::new();
        for g in sb {
            if g.terms().iter().all(|t| t.monomial.exponents()[0] == 0) {
                let restricted = g
                    .restrict(&self.ring, &index_map, ambient)
                    .expect("tag-free by construction");
                result_gens.push(restricted);
            }
        }
        let result =
            Ideal::new(&self.ring, result_gens.clone(), ambient)?.with_caps(self.caps);
        if !result_gens.is_empty() {
            // the tag-free slice of an elimination basis is itself a
            // standard basis of the intersection
            result.set_basis(result_gens);
        }
        Ok(result)
    }

    /// Monomial ideal of leading monomials of a standard basis.
    pub fn leading_ideal(&self) -> Result<Ideal, Error> {
        let sb = self.standard_basis()?;
        let monomials: Vec<Monomial> = sb
            .iter()
            .filter_map(|g| g.leading().map(|t| t.monomial.clone()))
            .collect();
        let minimal = minimalize_monomials(monomials);
        let gens: Vec<Polynomial> = minimal
            .iter()
            .map(|m| monomial_poly(&self.ring, m, self.ordering))
            .collect();
        let out = Ideal::new(&self.ring, gens.clone(), self.ordering)?.with_caps(self.caps);
        if !gens.is_empty() {
            out.set_basis(gens);
        }
        Ok(out)
    }

    /// Radical membership by the Rabinowitsch device: f is in the radical
    /// iff 1 lies in I + (1 - t*f) in an extended ring under a global
    /// ordering. This certifies membership in the radical of the ideal
    /// generated by the same generators in the polynomial ring; such a
    /// certificate is sound for the localized radical as well.
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool, Error> {
        check_same_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.ring.variable_count();
        let tag = self.ring.fresh_variable_name("t");
        let ext = self.ring.with_variable_inserted(n, &tag)?;
        let ord = MonomialOrdering::DegRevLex;
        let index_map: Vec<usize> = (0..n).collect();
        let t = Polynomial::variable(&ext, n)?.with_ordering(ord);
        let one = Polynomial::constant_int(&ext, 1).with_ordering(ord);
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in &self.generators {
            gens.push(g.embed(&ext, &index_map, ord)?);
        }
        gens.push(one.checked_sub(&t.checked_mul(&f.embed(&ext, &index_map, ord)?)?)?);
        let extended = Ideal::new(&ext, gens, ord)?.with_caps(self.caps);
        extended.contains(&one)
    }

    /// Radical of a monomial ideal: squarefree parts of the generators.
    pub fn monomial_radical(&self) -> Result<Ideal, Error> {
        if self.is_zero_ideal() {
            return Ideal::new(&self.ring, Vec::new(), self.ordering)
                .map(|i| i.with_caps(self.caps));
        }
        let mut monomials = Vec::new();
        for g in &self.generators {
            if !g.is_monomial() {
                return Err(Error::NonMonomialGenerator(g.to_string()));
            }
            monomials.push(g.leading().expect("nonzero").monomial.squarefree_part());
        }
        let minimal = minimalize_monomials(monomials);
        let gens: Vec<Polynomial> = minimal
            .iter()
            .map(|m| monomial_poly(&self.ring, m, self.ordering))
            .collect();
        let out = Ideal::new(&self.ring, gens.clone(), self.ordering)?.with_caps(self.caps);
        if !gens.is_empty() {
            out.set_basis(gens);
        }
        Ok(out)
    }

    /// Minimal generators of the leading ideal, as monomials.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>, Error> {
        let sb = self.standard_basis()?;
        Ok(minimalize_monomials(
            sb.iter()
                .filter_map(|g| g.leading().map(|t| t.monomial.clone()))
                .collect(),
        ))
    }
}

pub(crate) fn monomial_poly(ring: &Ring, m: &Monomial, ordering: MonomialOrdering) -> Polynomial {
    Polynomial::from_terms(ring, ordering, vec![(BigRational::one(), m.clone())])
        .expect("monomial length matches ring")
}

/// Drop monomials divisible by another in the list; dedupe.
pub(crate) fn minimalize_monomials(mut monomials: Vec<Monomial>) -> Vec<Monomial> {
    monomials.sort_by_key(|m| (m.total_degree(), m.exponents().to_vec()));
    monomials.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in monomials {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
