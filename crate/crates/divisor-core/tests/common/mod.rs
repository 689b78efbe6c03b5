#![allow(dead_code)]

use divisor_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn ring(names: &[&str]) -> Ring {
    RingContext::new(names).unwrap()
}

pub fn xyz() -> Ring {
    ring(&["x", "y", "z"])
}

pub fn xy() -> Ring {
    ring(&["x", "y"])
}

pub fn var(r: &Ring, i: usize) -> Polynomial {
    Polynomial::variable(r, i).unwrap()
}

pub fn int(r: &Ring, v: i64) -> Polynomial {
    Polynomial::constant_int(r, v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn local_ideal(r: &Ring, gens: Vec<Polynomial>) -> Ideal {
    Ideal::new(r, gens, MonomialOrdering::NegDegRevLex).unwrap()
}

pub fn monomial(r: &Ring, exps: &[u32]) -> Polynomial {
    assert_eq!(exps.len(), r.variable_count());
    let mut p = int(r, 1);
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            p = &p * &var(r, i);
        }
    }
    p
}

/// Equality of ideals with the same local ordering.
pub fn ideals_equal(a: &Ideal, b: &Ideal) -> bool {
    a.equals(b).unwrap()
}
