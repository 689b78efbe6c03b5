//! Randomized invariants: ordering laws, ring axioms, division soundness,
//! basis idempotence, oracle equivalence on monomial ideals, syzygy
//! exactness and Hilbert-Samuel cross-checks.

mod common;

use common::*;
use divisor_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::cmp::Ordering as Cmp;

fn arb_exponents(n: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max, n)
}

fn arb_monomial(n: usize, max: u32) -> impl Strategy<Value = Monomial> {
    arb_exponents(n, max).prop_map(Monomial::from_exponents)
}

fn arb_poly(ring: Ring, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.variable_count();
    proptest::collection::vec(
        ((-4i64..=4), (1i64..=2), arb_exponents(n, max_exp)),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        let terms = raw
            .into_iter()
            .filter(|(c, _, _)| *c != 0)
            .map(|(c, d, exps)| {
                (
                    BigRational::new(BigInt::from(c), BigInt::from(d)),
                    Monomial::from_exponents(exps),
                )
            })
            .collect();
        Polynomial::from_terms(&ring, MonomialOrdering::NegDegRevLex, terms).unwrap()
    })
}

fn arb_nonzero_poly(
    ring: Ring,
    max_terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = Polynomial> {
    arb_poly(ring, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

fn all_orderings() -> Vec<MonomialOrdering> {
    vec![
        MonomialOrdering::DegRevLex,
        MonomialOrdering::NegDegRevLex,
        MonomialOrdering::Elimination {
            block: 1,
            tail_global: false,
        },
        MonomialOrdering::Elimination {
            block: 1,
            tail_global: true,
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ordering_laws(
        a in arb_monomial(3, 5),
        b in arb_monomial(3, 5),
        c in arb_monomial(3, 5),
        w in arb_monomial(3, 3),
    ) {
        for ord in all_orderings() {
            // antisymmetry / totality
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            if ord.cmp(&a, &b) == Cmp::Equal {
                prop_assert_eq!(a.clone(), b.clone());
            }
            // compatibility with multiplication
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&w), &b.mul(&w)));
            // transitivity
            if ord.cmp(&a, &b) != Cmp::Greater && ord.cmp(&b, &c) != Cmp::Greater {
                prop_assert_ne!(ord.cmp(&a, &c), Cmp::Greater);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn arithmetic_is_a_commutative_ring(
        f in arb_poly(xyz(), 4, 3),
        g in arb_poly(xyz(), 4, 3),
        h in arb_poly(xyz(), 4, 3),
    ) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn order_is_additive_on_products(
        f in arb_nonzero_poly(xyz(), 4, 3),
        g in arb_nonzero_poly(xyz(), 4, 3),
    ) {
        // multiplicity additivity over an integral domain
        prop_assert_eq!(
            (&f * &g).order().unwrap(),
            f.order().unwrap() + g.order().unwrap()
        );
    }

    #[test]
    fn derivative_satisfies_the_leibniz_rule(
        f in arb_poly(xyz(), 4, 3),
        g in arb_poly(xyz(), 4, 3),
        i in 0usize..3,
    ) {
        let lhs = (&f * &g).partial_derivative(i).unwrap();
        let rhs = &(&f * &g.partial_derivative(i).unwrap())
            + &(&g * &f.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_leading_term_has_minimal_degree(f in arb_nonzero_poly(xyz(), 5, 4)) {
        let lt = f.leading_under(MonomialOrdering::NegDegRevLex).unwrap();
        prop_assert_eq!(lt.monomial.total_degree(), f.order().unwrap());
    }
}

fn monomial_ideal(r: &Ring, exps: &[Vec<u32>]) -> Ideal {
    local_ideal(
        r,
        exps.iter().map(|e| monomial(r, e)).collect::<Vec<_>>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn monomial_ideals_match_exponent_combinatorics(
        gens_i in proptest::collection::vec(arb_exponents(2, 3), 1..=3),
        gens_j in proptest::collection::vec(arb_exponents(2, 3), 1..=3),
        probe in arb_exponents(2, 4),
    ) {
        let r = xy();
        let i = monomial_ideal(&r, &gens_i);
        let j = monomial_ideal(&r, &gens_j);
        let f = monomial(&r, &probe);
        let probe_m = Monomial::from_exponents(probe.clone());

        // membership is divisibility by some generator
        let divides = |gens: &[Vec<u32>]| {
            gens.iter()
                .any(|g| Monomial::from_exponents(g.clone()).divides(&probe_m))
        };
        prop_assert_eq!(i.contains(&f).unwrap(), divides(&gens_i));

        // sum
        let sum = i.sum(&j).unwrap();
        let mut all = gens_i.clone();
        all.extend(gens_j.iter().cloned());
        prop_assert_eq!(sum.contains(&f).unwrap(), divides(&all));

        // product: componentwise exponent sums
        let prod = i.product(&j).unwrap();
        let pairwise: Vec<Vec<u32>> = gens_i
            .iter()
            .flat_map(|a| {
                gens_j.iter().map(move |b| {
                    a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<u32>>()
                })
            })
            .collect();
        prop_assert_eq!(prod.contains(&f).unwrap(), divides(&pairwise));

        // intersection: componentwise maxima over all generator pairs
        let isect = i.intersection(&j).unwrap();
        let lcms: Vec<Vec<u32>> = gens_i
            .iter()
            .flat_map(|a| {
                gens_j.iter().map(move |b| {
                    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect::<Vec<u32>>()
                })
            })
            .collect();
        let oracle = monomial_ideal(&r, &lcms);
        prop_assert!(ideals_equal(&isect, &oracle));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn division_certificates_reconstruct_exactly(
        gens in proptest::collection::vec(arb_nonzero_poly(xy(), 3, 2), 1..=2),
        f in arb_poly(xy(), 4, 3),
    ) {
        let r = xy();
        let i = local_ideal(&r, gens);
        let cert = i.division_certificate(&f).unwrap();
        let sb = i.standard_basis().unwrap();
        // no term of the remainder is divisible by a basis leading monomial
        for t in cert.remainder.terms() {
            for g in sb {
                prop_assert!(!g.leading().unwrap().monomial.divides(&t.monomial));
            }
        }
        // unit * f - sum(q_i g_i) - r = 0 symbolically
        let mut acc = &cert.unit * &f;
        for (q, g) in cert.quotients.iter().zip(sb) {
            acc = &acc - &(q * g);
        }
        acc = &acc - &cert.remainder;
        prop_assert!(acc.is_zero());
        prop_assert!(cert.unit.is_local_unit());
    }

    #[test]
    fn standard_basis_is_idempotent(
        gens in proptest::collection::vec(arb_nonzero_poly(xy(), 3, 3), 1..=3),
    ) {
        let r = xy();
        let i = local_ideal(&r, gens);
        let sb = i.standard_basis().unwrap().to_vec();
        let rebuilt = local_ideal(&r, sb.clone());
        prop_assert!(ideals_equal(&i, &rebuilt));
        prop_assert_eq!(rebuilt.standard_basis().unwrap(), sb.as_slice());
    }

    #[test]
    fn unit_factors_do_not_change_local_ideals(
        f in arb_nonzero_poly(xy(), 3, 2),
        u_tail in arb_poly(xy(), 2, 2),
    ) {
        let r = xy();
        // u = 1 + (terms vanishing at the origin)
        let mut tail = u_tail;
        if tail.is_local_unit() {
            tail = &tail - &Polynomial::constant(&r, tail.constant_term());
        }
        let u = &int(&r, 1) + &tail;
        let a = local_ideal(&r, vec![&u * &f]);
        let b = local_ideal(&r, vec![f]);
        prop_assert!(ideals_equal(&a, &b));
    }

    #[test]
    fn coprime_leading_monomials_form_a_basis(
        f in arb_nonzero_poly(xyz(), 3, 2),
        g in arb_nonzero_poly(xyz(), 3, 2),
    ) {
        let lf = f.leading().unwrap().monomial.clone();
        let lg = g.leading().unwrap().monomial.clone();
        prop_assume!(lf.is_coprime_with(&lg));
        prop_assume!(!lf.is_one() && !lg.is_one());
        let r = xyz();
        let i = local_ideal(&r, vec![f, g]);
        let lead = i.leading_ideal().unwrap();
        let expected = local_ideal(
            &r,
            vec![monomial(&r, lf.exponents()), monomial(&r, lg.exponents())],
        );
        prop_assert!(ideals_equal(&lead, &expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn intersection_is_the_categorical_meet(
        gens_i in proptest::collection::vec(arb_nonzero_poly(xy(), 2, 2), 1..=2),
        gens_j in proptest::collection::vec(arb_nonzero_poly(xy(), 2, 2), 1..=2),
        f in arb_poly(xy(), 3, 3),
    ) {
        let r = xy();
        let i = local_ideal(&r, gens_i);
        let j = local_ideal(&r, gens_j);
        let meet = i.intersection(&j).unwrap();
        prop_assert_eq!(
            meet.contains(&f).unwrap(),
            i.contains(&f).unwrap() && j.contains(&f).unwrap()
        );
    }

    #[test]
    fn syzygies_are_exact_relations(
        polys in proptest::collection::vec(arb_nonzero_poly(xy(), 2, 2), 2..=3),
    ) {
        let syz = syzygies(&polys).unwrap();
        for s in syz.generators() {
            let mut acc = Polynomial::zero(&xy());
            for (c, f) in s.components().iter().zip(&polys) {
                acc = &acc + &(c * f);
            }
            prop_assert!(acc.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn monomial_pair_syzygies_are_koszul(
        a in arb_exponents(2, 3),
        b in arb_exponents(2, 3),
    ) {
        let r = xy();
        let (ma, mb) = (monomial(&r, &a), monomial(&r, &b));
        let syz = syzygies(&[ma.clone(), mb.clone()]).unwrap();
        let la = Monomial::from_exponents(a.clone());
        let lb = Monomial::from_exponents(b.clone());
        let lcm = la.lcm(&lb);
        let qa = la.checked_div(&lcm).unwrap();
        let qb = lb.checked_div(&lcm).unwrap();
        let koszul = Submodule::new(
            &r,
            2,
            vec![VectorPolynomial::new(vec![
                monomial(&r, qa.exponents()),
                monomial(&r, qb.exponents()).neg_ref(),
            ])
            .unwrap()],
        )
        .unwrap();
        prop_assert!(syz.equals(&koszul).unwrap());
    }

    #[test]
    fn module_membership_is_monotone(
        base in proptest::collection::vec(
            proptest::collection::vec(arb_poly(xy(), 2, 2), 2),
            1..=2,
        ),
        extra in proptest::collection::vec(arb_poly(xy(), 2, 2), 2),
        probe in proptest::collection::vec(arb_poly(xy(), 2, 2), 2),
    ) {
        let r = xy();
        let to_vec = |c: Vec<Polynomial>| VectorPolynomial::new(c).unwrap();
        let gens: Vec<VectorPolynomial> = base.into_iter().map(to_vec).collect();
        let m = Submodule::new(&r, 2, gens.clone()).unwrap();
        let v = to_vec(probe);
        let mut bigger_gens = gens;
        bigger_gens.push(to_vec(extra));
        let bigger = Submodule::new(&r, 2, bigger_gens).unwrap();
        if m.contains(&v).unwrap() {
            prop_assert!(bigger.contains(&v).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn minimal_generator_count_is_invariant(
        vecs in proptest::collection::vec(
            proptest::collection::vec(arb_poly(xy(), 2, 2), 2),
            1..=3,
        ),
        rotate in 0usize..3,
        unit_tail_exp in 1u32..3,
    ) {
        let r = xy();
        let gens: Vec<VectorPolynomial> = vecs
            .into_iter()
            .map(|c| VectorPolynomial::new(c).unwrap())
            .filter(|v| !v.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let m = Submodule::new(&r, 2, gens.clone()).unwrap();
        let count = m.minimal_generators().unwrap().len();

        // permuted generators
        let mut permuted = gens.clone();
        let shift = rotate % permuted.len().max(1);
        permuted.rotate_left(shift);
        let mp = Submodule::new(&r, 2, permuted).unwrap();
        prop_assert_eq!(mp.minimal_generators().unwrap().len(), count);

        // unit-rescaled generators
        let x = var(&r, 0);
        let unit = &int(&r, 1) + &x.pow(unit_tail_exp);
        let scaled: Vec<VectorPolynomial> = gens
            .iter()
            .map(|v| {
                VectorPolynomial::new(
                    v.components().iter().map(|c| c * &unit).collect(),
                )
                .unwrap()
            })
            .collect();
        let ms = Submodule::new(&r, 2, scaled).unwrap();
        prop_assert_eq!(ms.minimal_generators().unwrap().len(), count);
    }

    #[test]
    fn principal_ideals_match_the_hypersurface_closed_form(
        f in arb_nonzero_poly(xy(), 4, 3),
    ) {
        prop_assume!(!f.is_local_unit());
        let r = xy();
        let m = f.order().unwrap();
        let chi = hs_polynomial(&local_ideal(&r, vec![f]), &HsOptions::default()).unwrap();
        prop_assert_eq!(chi, hs_hypersurface_closed_form(r.variable_count(), m));
    }
}
