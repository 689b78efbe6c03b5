//! Hilbert-Samuel functions and polynomials of O/I with respect to the
//! maximal ideal, computed by staircase counting on the leading ideal, plus
//! the closed form for hypersurfaces and the additivity defect of a divisor
//! pair.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::engine::Caps;
use crate::divisor::DivisorPair;
use crate::error::Error;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrdering};

/// Eventually-polynomial data of a Hilbert-Samuel function: rational
/// coefficients (index = power of t) plus the degree from which the fitted
/// polynomial matches every computed value. Equality compares coefficients
/// only.
#[derive(Debug, Clone)]
pub struct HsPolynomial {
    coefficients: Vec<BigRational>,
    stabilization_degree: u64,
}

impl HsPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>, stabilization_degree: u64) -> Self {
        while coefficients.last().map_or(false, |c| c.is_zero()) {
            coefficients.pop();
        }
        HsPolynomial {
            coefficients,
            stabilization_degree,
        }
    }

    pub fn zero() -> Self {
        HsPolynomial::new(Vec::new(), 0)
    }

    pub fn constant(value: i64) -> Self {
        HsPolynomial::new(
            vec![BigRational::from_integer(BigInt::from(value))],
            0,
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> BigRational {
        self.coefficients
            .get(power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coefficients.is_empty() {
            None
        } else {
            Some(self.coefficients.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn stabilization_degree(&self) -> u64 {
        self.stabilization_degree
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(BigInt::from(t));
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    pub fn add(&self, other: &HsPolynomial) -> HsPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        let coeffs = (0..len)
            .map(|k| self.coefficient(k) + other.coefficient(k))
            .collect();
        HsPolynomial::new(
            coeffs,
            self.stabilization_degree.max(other.stabilization_degree),
        )
    }

    pub fn sub(&self, other: &HsPolynomial) -> HsPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        let coeffs = (0..len)
            .map(|k| self.coefficient(k) - other.coefficient(k))
            .collect();
        HsPolynomial::new(
            coeffs,
            self.stabilization_degree.max(other.stabilization_degree),
        )
    }
}

impl PartialEq for HsPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients
    }
}

impl Eq for HsPolynomial {}

impl fmt::Display for HsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = c.abs();
            match power {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if power == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HsOptions {
    pub caps: Caps,
    /// Cap on the probed degree; the default is 4 * (max generator degree)
    /// * n + 20.
    pub max_degree: Option<u64>,
}

impl Default for HsOptions {
    fn default() -> Self {
        HsOptions {
            caps: Caps::default(),
            max_degree: None,
        }
    }
}

/// Additivity data of a divisor pair: the four Hilbert-Samuel polynomials
/// and the defect chi_D + chi_{D1 cap D2} - chi_{D1} - chi_{D2}, which is
/// zero whenever the pair is splayed (but not conversely).
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub chi_union: HsPolynomial,
    pub chi_first: HsPolynomial,
    pub chi_second: HsPolynomial,
    pub chi_intersection: HsPolynomial,
    pub defect: HsPolynomial,
}

fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = acc * (a - b + i) as u128 / i as u128;
    }
    acc
}

/// Monomials of total degree < d in n variables.
fn count_below(n: usize, d: u64) -> u128 {
    if d == 0 {
        0
    } else {
        binomial(n as u64 + d - 1, n as u64)
    }
}

pub(crate) fn staircase_count_inclusion_exclusion(
    n: usize,
    generators: &[Monomial],
    d: u64,
) -> u128 {
    let g = generators.len();
    debug_assert!(g <= 24, "inclusion-exclusion over too many generators");
    let mut total: i128 = 0;
    for mask in 0u32..(1u32 << g) {
        let mut lcm = Monomial::one(n);
        for (i, gen) in generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                lcm = lcm.lcm(gen);
            }
        }
        let deg = lcm.total_degree();
        let count = if deg >= d {
            0
        } else {
            count_below(n, d - deg) as i128
        };
        if mask.count_ones() % 2 == 0 {
            total += count;
        } else {
            total -= count;
        }
    }
    debug_assert!(total >= 0);
    total as u128
}

pub(crate) fn staircase_count_enumerate(n: usize, generators: &[Monomial], d: u64) -> u128 {
    fn layer(
        n: usize,
        generators: &[Monomial],
        prefix: &mut Vec<u32>,
        remaining: u64,
        index: usize,
        count: &mut u128,
    ) {
        if index == n - 1 {
            prefix.push(remaining as u32);
            let m = Monomial::from_exponents(prefix.clone());
            if !generators.iter().any(|g| g.divides(&m)) {
                *count += 1;
            }
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e as u32);
            layer(n, generators, prefix, remaining - e, index + 1, count);
            prefix.pop();
        }
    }
    let mut count = 0u128;
    for total in 0..d {
        let mut prefix = Vec::with_capacity(n);
        layer(n, generators, &mut prefix, total, 0, &mut count);
    }
    count
}

fn staircase_count(n: usize, generators: &[Monomial], d: u64) -> u128 {
    if generators.iter().any(|m| m.is_one()) {
        return 0; // unit ideal
    }
    if generators.len() <= 20 {
        staircase_count_inclusion_exclusion(n, generators, d)
    } else {
        staircase_count_enumerate(n, generators, d)
    }
}

fn leading_generators(ideal: &Ideal) -> Result<Vec<Monomial>, Error> {
    let local = if ideal.ordering() == MonomialOrdering::NegDegRevLex {
        ideal.clone()
    } else {
        Ideal::new(
            ideal.ring(),
            ideal.generators().to_vec(),
            MonomialOrdering::NegDegRevLex,
        )?
        .with_caps(ideal.caps())
    };
    local.leading_monomials()
}

/// Number of standard monomials of total degree < d: the length of
/// O/(I + m^d), i.e. the Hilbert-Samuel function of O/I at d.
pub fn hs_function(ideal: &Ideal, d: u64, options: &HsOptions) -> Result<u128, Error> {
    let n = ideal.ring().variable_count();
    let gens = leading_generators(ideal)?;
    let _ = options;
    Ok(staircase_count(n, &gens, d))
}

fn default_degree_cap(ideal: &Ideal) -> u64 {
    let n = ideal.ring().variable_count() as u64;
    let max_deg = ideal
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(1)
        .max(1);
    4 * max_deg * n + 20
}

/// Fit the eventually-polynomial Hilbert-Samuel function by Newton forward
/// differences once the (n+1)-th finite differences vanish on n+3
/// consecutive points, then verify three extra evaluations past the fit
/// window.
pub fn hs_polynomial(ideal: &Ideal, options: &HsOptions) -> Result<HsPolynomial, Error> {
    let n = ideal.ring().variable_count();
    let gens = leading_generators(ideal)?;
    let cap = options.max_degree.unwrap_or_else(|| default_degree_cap(ideal));
    let order = n + 1; // differences of this order must vanish
    let window = n + 3;
    let needed = |w: u64| w + (window as u64 - 1) + order as u64;

    let mut values: Vec<i128> = Vec::new();
    let value_at = |d: u64, values: &mut Vec<i128>| -> i128 {
        while (values.len() as u64) <= d {
            let next = values.len() as u64;
            values.push(staircase_count(n, &gens, next) as i128);
        }
        values[d as usize]
    };
    let delta = |values: &[i128], k: usize, j: u64| -> i128 {
        let mut acc: i128 = 0;
        for i in 0..=k {
            let c = binomial(k as u64, i as u64) as i128;
            let v = values[(j + i as u64) as usize];
            if (k - i) % 2 == 0 {
                acc += c * v;
            } else {
                acc -= c * v;
            }
        }
        acc
    };

    let mut base: Option<u64> = None;
    let mut w: u64 = 0;
    while needed(w) <= cap {
        let _ = value_at(needed(w), &mut values);
        let stable = (0..window as u64).all(|j| delta(&values, order, w + j) == 0);
        if stable {
            base = Some(w);
            break;
        }
        w += 1;
    }
    let Some(b) = base else {
        return Err(Error::NonStabilized(cap));
    };

    // Newton forward-difference expansion around the base point
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero()];
    let mut factor_poly: Vec<BigRational> = vec![BigRational::one()]; // prod (t-b-i)
    let mut factorial = BigRational::one();
    for k in 0..=n {
        let dk = BigRational::from_integer(BigInt::from(delta(&values, k, b)));
        if k > 0 {
            factorial *= BigRational::from_integer(BigInt::from(k as i64));
        }
        let scale = &dk / &factorial;
        for (i, c) in factor_poly.iter().enumerate() {
            if coeffs.len() <= i {
                coeffs.push(BigRational::zero());
            }
            coeffs[i] += &scale * c;
        }
        // multiply factor_poly by (t - (b + k))
        let shift = BigRational::from_integer(BigInt::from(b as i64 + k as i64));
        let mut next = vec![BigRational::zero(); factor_poly.len() + 1];
        for (i, c) in factor_poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &shift * c;
        }
        factor_poly = next;
    }
    let fitted = HsPolynomial::new(coeffs, b);

    // verify three evaluations beyond everything used by the fit
    let last_used = needed(b);
    for extra in 1..=3u64 {
        let d = last_used + extra;
        if d > cap {
            break;
        }
        let v = value_at(d, &mut values);
        if fitted.eval(d as i64) != BigRational::from_integer(BigInt::from(v)) {
            return Err(Error::NonStabilized(cap));
        }
    }

    // tighten the stabilization degree against all computed values
    let mut d0 = b;
    while d0 > 0 {
        let d = d0 - 1;
        let v = values[d as usize];
        if fitted.eval(d as i64) == BigRational::from_integer(BigInt::from(v)) {
            d0 = d;
        } else {
            break;
        }
    }
    Ok(HsPolynomial {
        coefficients: fitted.coefficients,
        stabilization_degree: d0,
    })
}

/// Closed form for a hypersurface of order m in n variables:
/// chi(d) = sum_{j=1}^{m} C(n+d-j-1, n-1), expanded with rational
/// coefficients. Matches the staircase computation from degree m on.
pub fn hs_hypersurface_closed_form(n: usize, m: u64) -> HsPolynomial {
    assert!(n >= 1 && m >= 1);
    let mut coeffs = vec![BigRational::zero(); n];
    let mut factorial = BigRational::one();
    for k in 1..n {
        factorial *= BigRational::from_integer(BigInt::from(k as i64));
    }
    for j in 1..=m {
        // C(n+d-j-1, n-1) = prod_{i=0}^{n-2} (d + n-j-1-i) / (n-1)!
        let mut poly = vec![BigRational::one()];
        for i in 0..(n - 1) {
            let offset = BigRational::from_integer(BigInt::from(
                n as i64 - j as i64 - 1 - i as i64,
            ));
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (p, c) in poly.iter().enumerate() {
                next[p + 1] += c;
                next[p] += &offset * c;
            }
            poly = next;
        }
        for (p, c) in poly.iter().enumerate() {
            coeffs[p] += c / &factorial;
        }
    }
    HsPolynomial::new(coeffs, m)
}

/// The four Hilbert-Samuel polynomials of a divisor pair and their signed
/// sum. A nonzero defect refutes splayedness; a zero defect does not
/// certify it.
pub fn additivity_defect(
    pair: &DivisorPair,
    options: &HsOptions,
) -> Result<AdditivityReport, Error> {
    let ring = pair.ring().clone();
    let local = MonomialOrdering::NegDegRevLex;
    let make = |gens: Vec<Polynomial>| -> Result<Ideal, Error> {
        Ok(Ideal::new(&ring, gens, local)?.with_caps(options.caps))
    };
    let chi_union = hs_polynomial(&make(vec![pair.product()])?, options)?;
    let chi_first = hs_polynomial(&make(vec![pair.g().clone()])?, options)?;
    let chi_second = hs_polynomial(&make(vec![pair.h().clone()])?, options)?;
    let chi_intersection =
        hs_polynomial(&make(vec![pair.g().clone(), pair.h().clone()])?, options)?;
    let defect = chi_union
        .add(&chi_intersection)
        .sub(&chi_first)
        .sub(&chi_second);
    Ok(AdditivityReport {
        chi_union,
        chi_first,
        chi_second,
        chi_intersection,
        defect,
    })
}
