//! Decision procedures for divisor germs at the origin: splayedness by
//! three equivalent criteria, logarithmic derivation modules, Saito's
//! freeness criterion, normal crossings for unions of smooth components,
//! radicality status of Jacobian ideals, and cylinder directions.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::engine::Caps;
use crate::error::Error;
use crate::ideal::Ideal;
use crate::module::{syzygies_with_caps, Submodule, VectorPolynomial};
use crate::poly::Polynomial;
use crate::ring::{check_same_ring, MonomialOrdering, Ring};

const LOCAL: MonomialOrdering = MonomialOrdering::NegDegRevLex;

/// Analysis entry point carrying resource caps and search flags.
#[derive(Debug, Clone, Copy)]
pub struct Analyzer {
    pub caps: Caps,
    /// Exhaustive subset search in `cylinder_directions`, allowed for n <= 4.
    pub cylinder_exhaustive: bool,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer {
            caps: Caps::default(),
            cylinder_exhaustive: false,
        }
    }
}

/// A divisor germ D = D1 ∪ D2 given by reduced coprime equations g, h with
/// g(0) = h(0) = 0. Squarefreeness of the inputs is caller-asserted; the
/// absence of common factors is checked via (g) ∩ (h) = (g·h).
#[derive(Debug, Clone)]
pub struct DivisorPair {
    g: Polynomial,
    h: Polynomial,
}

impl DivisorPair {
    pub fn new(g: Polynomial, h: Polynomial) -> Result<Self, Error> {
        DivisorPair::with_caps(g, h, Caps::default())
    }

    pub fn with_caps(g: Polynomial, h: Polynomial, caps: Caps) -> Result<Self, Error> {
        check_same_ring(g.ring(), h.ring())?;
        if g.is_zero() || h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if g.is_local_unit() || h.is_local_unit() {
            return Err(Error::UnitInput);
        }
        let ring = g.ring().clone();
        let ideal_g = Ideal::new(&ring, vec![g.clone()], LOCAL)?.with_caps(caps);
        let ideal_h = Ideal::new(&ring, vec![h.clone()], LOCAL)?.with_caps(caps);
        let ideal_gh = Ideal::new(&ring, vec![g.checked_mul(&h)?], LOCAL)?.with_caps(caps);
        if !ideal_g.intersection(&ideal_h)?.equals(&ideal_gh)? {
            return Err(Error::CommonFactor);
        }
        Ok(DivisorPair { g, h })
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn ring(&self) -> &Ring {
        self.g.ring()
    }

    /// The combined defining equation g*h.
    pub fn product(&self) -> Polynomial {
        self.g.checked_mul(&self.h).expect("same ring")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplayedCriterion {
    Leibniz,
    Geometric,
    LogDerivations,
}

impl fmt::Display for SplayedCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplayedCriterion::Leibniz => write!(f, "leibniz"),
            SplayedCriterion::Geometric => write!(f, "geometric"),
            SplayedCriterion::LogDerivations => write!(f, "logder"),
        }
    }
}

/// Certificate of a failed criterion: an element of exactly one side of the
/// compared pair.
#[derive(Debug, Clone)]
pub enum Witness {
    Polynomial(Polynomial),
    VectorField(VectorPolynomial),
}

/// The two objects a criterion compared.
#[derive(Debug, Clone)]
pub enum CriterionEvidence {
    Ideals { lhs: Ideal, rhs: Ideal },
    DerivationSum {
        sum: Submodule,
        missing_coordinates: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct SplayednessReport {
    pub verdict: bool,
    pub criterion: SplayedCriterion,
    pub evidence: CriterionEvidence,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone)]
pub struct FreenessReport {
    pub free: bool,
    pub generator_count: usize,
    /// Coefficient matrix of a basis of the derivation module, rows are the
    /// generators; present exactly when free.
    pub saito_matrix: Option<Vec<Vec<Polynomial>>>,
    /// det(saito_matrix); equal to the defining equation up to a local unit.
    pub determinant: Option<Polynomial>,
}

#[derive(Debug, Clone)]
pub enum RadicalStatus {
    RadicalCertified,
    NotRadical { witness: Polynomial },
    Unknown,
}

impl RadicalStatus {
    pub fn is_decisive(&self) -> bool {
        !matches!(self, RadicalStatus::Unknown)
    }
}

#[derive(Debug, Clone)]
pub struct NormalCrossingReport {
    pub verdict: bool,
    pub reason: Option<String>,
    /// Cross-check: a union of smooth irreducible components has normal
    /// crossings iff it is free with radical Jacobian ideal.
    pub corollary_free: Option<bool>,
    pub corollary_radical: Option<RadicalStatus>,
    pub routes_agree: Option<bool>,
}

/// Multiplicity of the divisor {h = 0} at the origin: the order of h.
pub fn multiplicity(h: &Polynomial) -> Result<u64, Error> {
    h.order().ok_or(Error::ZeroPolynomial)
}

impl Analyzer {
    fn ideal(&self, ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal, Error> {
        Ok(Ideal::new(ring, gens, LOCAL)?.with_caps(self.caps))
    }

    pub fn divisor_pair(&self, g: Polynomial, h: Polynomial) -> Result<DivisorPair, Error> {
        DivisorPair::with_caps(g, h, self.caps)
    }

    /// The ideal of all first partials, under the local ordering.
    pub fn jacobian_ideal(&self, h: &Polynomial) -> Result<Ideal, Error> {
        let ring = h.ring().clone();
        let n = ring.variable_count();
        let mut gens = Vec::with_capacity(n);
        for i in 0..n {
            gens.push(h.partial_derivative(i)?);
        }
        self.ideal(&ring, gens)
    }

    /// (h) + J_h, the ideal of the singular locus of {h = 0}.
    pub fn singular_locus_ideal(&self, h: &Polynomial) -> Result<Ideal, Error> {
        let j = self.jacobian_ideal(h)?;
        let principal = self.ideal(h.ring(), vec![h.clone()])?;
        principal.sum(&j)
    }

    /// Generators of the module of vector fields tangent to {h = 0}:
    /// the syzygies of (d_1 h, ..., d_n h, -h) projected onto the first n
    /// coordinates.
    pub fn log_derivations(&self, h: &Polynomial) -> Result<Submodule, Error> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if h.is_local_unit() {
            return Err(Error::UnitInput);
        }
        let ring = h.ring().clone();
        let n = ring.variable_count();
        let mut polys = Vec::with_capacity(n + 1);
        for i in 0..n {
            polys.push(h.partial_derivative(i)?);
        }
        polys.push(h.neg_ref());
        let relations = syzygies_with_caps(&polys, self.caps)?;
        let gens: Vec<VectorPolynomial> = relations
            .generators()
            .iter()
            .map(|v| {
                VectorPolynomial::new(v.components()[..n].to_vec()).expect("rank n >= 1")
            })
            .collect();
        let gens = gens.into_iter().filter(|v| !v.is_zero()).collect();
        Ok(Submodule::new(&ring, n, gens)?.with_caps(self.caps))
    }

    /// Leibniz criterion: (gh) + J_{gh} = (gh) + g*J_h + h*J_g. The form
    /// with the (gh) summand is insensitive to multiplying g and h by units.
    pub fn is_splayed_leibniz(&self, pair: &DivisorPair) -> Result<SplayednessReport, Error> {
        let ring = pair.ring().clone();
        let gh = pair.product();
        let principal_gh = self.ideal(&ring, vec![gh.clone()])?;
        let lhs = principal_gh.sum(&self.jacobian_ideal(&gh)?)?;
        let g_jh = self
            .ideal(&ring, vec![pair.g().clone()])?
            .product(&self.jacobian_ideal(pair.h())?)?;
        let h_jg = self
            .ideal(&ring, vec![pair.h().clone()])?
            .product(&self.jacobian_ideal(pair.g())?)?;
        let rhs = principal_gh.sum(&g_jh.sum(&h_jg)?)?;
        let (verdict, witness) = compare_ideals(&lhs, &rhs)?;
        Ok(SplayednessReport {
            verdict,
            criterion: SplayedCriterion::Leibniz,
            evidence: CriterionEvidence::Ideals { lhs, rhs },
            witness,
        })
    }

    /// Geometric criterion: the singular locus of D is the scheme-theoretic
    /// union of D1 ∩ D2 and the singular loci of the components:
    /// (gh) + J_{gh} = (g,h) ∩ ((g)+J_g) ∩ ((h)+J_h). The verdict does not
    /// depend on rescaling g, h by units since every constituent ideal is
    /// unchanged in the local ring.
    pub fn is_splayed_geometric(&self, pair: &DivisorPair) -> Result<SplayednessReport, Error> {
        let ring = pair.ring().clone();
        let gh = pair.product();
        let lhs = self
            .ideal(&ring, vec![gh.clone()])?
            .sum(&self.jacobian_ideal(&gh)?)?;
        let intersection_ideal =
            self.ideal(&ring, vec![pair.g().clone(), pair.h().clone()])?;
        let rhs = intersection_ideal
            .intersection(&self.singular_locus_ideal(pair.g())?)?
            .intersection(&self.singular_locus_ideal(pair.h())?)?;
        let (verdict, witness) = compare_ideals(&lhs, &rhs)?;
        Ok(SplayednessReport {
            verdict,
            criterion: SplayedCriterion::Geometric,
            evidence: CriterionEvidence::Ideals { lhs, rhs },
            witness,
        })
    }

    /// Tangency criterion: Der(log D1) + Der(log D2) contains every
    /// coordinate vector field.
    pub fn is_splayed_logder(&self, pair: &DivisorPair) -> Result<SplayednessReport, Error> {
        let ring = pair.ring().clone();
        let n = ring.variable_count();
        let sum = self
            .log_derivations(pair.g())?
            .sum(&self.log_derivations(pair.h())?)?;
        let mut missing = Vec::new();
        for i in 0..n {
            let e = VectorPolynomial::unit(&ring, n, i)?;
            if !sum.contains(&e)? {
                missing.push(i);
            }
        }
        let verdict = missing.is_empty();
        let witness = missing
            .first()
            .map(|&i| Witness::VectorField(VectorPolynomial::unit(&ring, n, i).expect("in range")));
        Ok(SplayednessReport {
            verdict,
            criterion: SplayedCriterion::LogDerivations,
            evidence: CriterionEvidence::DerivationSum {
                sum,
                missing_coordinates: missing,
            },
            witness,
        })
    }

    /// All variables y such that d_y h lies in (h) + (d_v h : v not in Y),
    /// signalling that the germ is a cylinder along y. Greedy search in
    /// descending variable order; exhaustive subset search (maximal
    /// cardinality guaranteed) when enabled and n <= 4.
    pub fn cylinder_directions(&self, h: &Polynomial) -> Result<BTreeSet<usize>, Error> {
        let ring = h.ring().clone();
        let n = ring.variable_count();
        let mut partials = Vec::with_capacity(n);
        for i in 0..n {
            partials.push(h.partial_derivative(i)?);
        }
        let admits = |selected: &BTreeSet<usize>| -> Result<bool, Error> {
            let mut gens = vec![h.clone()];
            for v in 0..n {
                if !selected.contains(&v) {
                    gens.push(partials[v].clone());
                }
            }
            let ideal = self.ideal(&ring, gens)?;
            for y in selected {
                if !ideal.contains(&partials[*y])? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if self.cylinder_exhaustive {
            if n > 4 {
                return Err(Error::InvalidInput(
                    "exhaustive cylinder search is limited to rings with at most 4 variables"
                        .into(),
                ));
            }
            let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
            masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
            for mask in masks {
                let set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                if admits(&set)? {
                    return Ok(set);
                }
            }
            unreachable!("the empty set always qualifies");
        }
        let mut selected = BTreeSet::new();
        for i in (0..n).rev() {
            let mut candidate = selected.clone();
            candidate.insert(i);
            if admits(&candidate)? {
                selected = candidate;
            }
        }
        Ok(selected)
    }

    /// Saito's criterion: {h = 0} is free iff the derivation module has
    /// exactly n minimal generators whose coefficient determinant equals h
    /// up to a local unit. Both tests must agree; a systematic disagreement
    /// signals non-reduced input (or a bug) and is reported as an
    /// inconsistency instead of a verdict.
    pub fn is_free_saito(&self, h: &Polynomial) -> Result<FreenessReport, Error> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if h.is_local_unit() {
            return Err(Error::UnitInput);
        }
        let ring = h.ring().clone();
        let n = ring.variable_count();
        let derivations = self.log_derivations(h)?;
        let minimal = derivations.minimal_generators()?;
        if minimal.len() != n {
            return Ok(FreenessReport {
                free: false,
                generator_count: minimal.len(),
                saito_matrix: None,
                determinant: None,
            });
        }
        let matrix: Vec<Vec<Polynomial>> = minimal
            .iter()
            .map(|v| v.components().to_vec())
            .collect();
        let det = determinant(&matrix)?;
        let principal_h = self.ideal(&ring, vec![h.clone()])?;
        let principal_det = self.ideal(&ring, vec![det.clone()])?;
        let verified = principal_h.contains(&det)? && principal_det.contains(h)?;
        if !verified {
            return Err(Error::Inconsistency(
                "derivation module has n minimal generators but their determinant \
                 is not the defining equation up to a unit; is the input reduced?"
                    .into(),
            ));
        }
        Ok(FreenessReport {
            free: true,
            generator_count: n,
            saito_matrix: Some(matrix),
            determinant: Some(det),
        })
    }

    /// Direct normal-crossings test for a union of smooth components
    /// (independent gradients at the origin), cross-checked against the
    /// freeness + radical-Jacobian characterization when the latter is
    /// decisive.
    pub fn is_normal_crossing(
        &self,
        components: &[Polynomial],
    ) -> Result<NormalCrossingReport, Error> {
        if components.is_empty() {
            return Err(Error::InvalidInput("no components given".into()));
        }
        let ring = components[0].ring().clone();
        let n = ring.variable_count();
        for c in components {
            check_same_ring(&ring, c.ring())?;
            if c.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if c.is_local_unit() {
                return Err(Error::UnitInput);
            }
        }
        let m = components.len();
        let mut verdict = true;
        let mut reason = None;
        if m > n {
            verdict = false;
            reason = Some(format!("{m} components exceed the {n} available directions"));
        }
        let mut gradients: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        if verdict {
            for c in components {
                let mut grad = Vec::with_capacity(n);
                for i in 0..n {
                    grad.push(c.partial_derivative(i)?.constant_term());
                }
                if grad.iter().all(|x| x.is_zero()) {
                    verdict = false;
                    reason = Some("non-smooth component".into());
                    break;
                }
                gradients.push(grad);
            }
        }
        if verdict && rational_rank(gradients) < m {
            verdict = false;
            reason = Some("tangent hyperplanes are linearly dependent at the origin".into());
        }
        // corollary route on the product equation
        let mut product = Polynomial::constant_int(&ring, 1);
        for c in components {
            product = product.checked_mul(c)?;
        }
        let corollary_free = match self.is_free_saito(&product) {
            Ok(r) => Some(r.free),
            Err(Error::Inconsistency(_)) => None,
            Err(e) => return Err(e),
        };
        let corollary_radical = Some(self.jacobian_radical_status(&product)?);
        let routes_agree = match (&corollary_free, &corollary_radical) {
            (Some(free), Some(status)) if status.is_decisive() => {
                let secondary =
                    *free && matches!(status, RadicalStatus::RadicalCertified);
                Some(secondary == verdict)
            }
            _ => None,
        };
        Ok(NormalCrossingReport {
            verdict,
            reason,
            corollary_free,
            corollary_radical,
            routes_agree,
        })
    }

    /// Three-valued radicality of the Jacobian ideal. Certification happens
    /// for monomial Jacobian ideals and when the leading ideal is squarefree
    /// (which forces radicality); refutation searches a fixed witness list
    /// and re-verifies every witness by radical membership plus
    /// non-membership.
    pub fn jacobian_radical_status(&self, h: &Polynomial) -> Result<RadicalStatus, Error> {
        let ring = h.ring().clone();
        let n = ring.variable_count();
        let jacobian = self.jacobian_ideal(h)?;
        if jacobian.is_unit_ideal()? {
            return Ok(RadicalStatus::RadicalCertified);
        }
        let leading = jacobian.leading_ideal()?;
        if jacobian.is_monomial_ideal()? {
            let monomial_ideal = Ideal::new(
                &ring,
                jacobian.standard_basis()?.to_vec(),
                LOCAL,
            )?
            .with_caps(self.caps);
            let radical = monomial_ideal.monomial_radical()?;
            if monomial_ideal.equals(&radical)? {
                return Ok(RadicalStatus::RadicalCertified);
            }
            for w in radical.generators() {
                if !jacobian.contains(w)? && jacobian.radical_membership(w)? {
                    return Ok(RadicalStatus::NotRadical { witness: w.clone() });
                }
            }
            return Err(Error::Inconsistency(
                "monomial Jacobian ideal differs from its radical but no witness verified".into(),
            ));
        }
        let leading_squarefree = leading
            .generators()
            .iter()
            .all(|g| g.leading().map_or(true, |t| t.monomial.is_squarefree()));
        if leading_squarefree {
            // a squarefree leading ideal forces the ideal itself to be radical
            return Ok(RadicalStatus::RadicalCertified);
        }
        let mut candidates: Vec<Polynomial> = vec![h.clone()];
        for i in 0..n {
            candidates.push(Polynomial::variable(&ring, i)?);
        }
        for m in leading.monomial_radical()?.generators() {
            candidates.push(m.clone());
        }
        for g in jacobian.generators() {
            if g.is_monomial() {
                let sf = g.leading().expect("nonzero").monomial.squarefree_part();
                candidates.push(crate::ideal::monomial_poly(&ring, &sf, LOCAL));
            }
        }
        let mut seen: Vec<Polynomial> = Vec::new();
        for c in candidates {
            if c.is_zero() || seen.contains(&c) {
                continue;
            }
            seen.push(c.clone());
            if !jacobian.contains(&c)? && jacobian.radical_membership(&c)? {
                return Ok(RadicalStatus::NotRadical { witness: c });
            }
        }
        Ok(RadicalStatus::Unknown)
    }
}

/// Equality with a failure witness: a generator of one side that is not
/// contained in the other.
fn compare_ideals(lhs: &Ideal, rhs: &Ideal) -> Result<(bool, Option<Witness>), Error> {
    for gen in rhs.generators() {
        if !lhs.contains(gen)? {
            return Ok((false, Some(Witness::Polynomial(gen.clone()))));
        }
    }
    for gen in lhs.generators() {
        if !rhs.contains(gen)? {
            return Ok((false, Some(Witness::Polynomial(gen.clone()))));
        }
    }
    Ok((true, None))
}

fn determinant(matrix: &[Vec<Polynomial>]) -> Result<Polynomial, Error> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let ring = matrix[0][0].ring().clone();
    if n == 1 {
        return Ok(matrix[0][0].clone());
    }
    let mut acc = Polynomial::zero(&ring).with_ordering(matrix[0][0].ordering());
    for (col, pivot) in matrix[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = pivot.checked_mul(&determinant(&minor)?)?;
        acc = if col % 2 == 0 {
            acc.checked_add(&cofactor)?
        } else {
            acc.checked_sub(&cofactor)?
        };
    }
    Ok(acc)
}

/// Rank of a small rational matrix by Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows.len() {
            break;
        }
        let pivot = (row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(row, p);
        let inv = rows[row][col].clone();
        for r in (row + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &inv;
            for c in col..cols {
                let delta = &factor * &rows[row][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}
