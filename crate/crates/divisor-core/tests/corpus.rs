//! Cross-criterion agreement on a corpus of divisor pairs, invariance under
//! coordinate changes and unit rescaling, freeness factorization for
//! separated-variable products, and the radical-Jacobian consequence.

mod common;

use common::*;
use divisor_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn analyzer() -> Analyzer {
    Analyzer::default()
}

/// Squarefree equations in two given variables, vanishing at the origin.
fn pool(a: &Polynomial, b: &Polynomial) -> Vec<Polynomial> {
    vec![
        a.clone(),
        a * b,
        a + &(b * b),
        &(a * a) - &b.pow(3),
        &(a * a) - &(b * b),
        a + b,
    ]
}

struct Case {
    g: Polynomial,
    h: Polynomial,
    expected: Option<bool>,
    label: String,
}

fn known_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let r3 = xyz();
    let (x, y, z) = (var(&r3, 0), var(&r3, 1), var(&r3, 2));
    let r2 = xy();
    let (u, v) = (var(&r2, 0), var(&r2, 1));

    let mut push = |g: Polynomial, h: Polynomial, expected: bool, label: &str| {
        cases.push(Case {
            g,
            h,
            expected: Some(expected),
            label: label.to_string(),
        });
    };

    push(x.clone(), &(&y * &y) - &z.pow(3), true, "plane x cusp cylinder");
    push(x.clone(), &(&y * &y) + &z.pow(3), true, "free splayed example");
    push(x.clone(), &(&x + &(&y * &y)) - &z.pow(3), false, "tangential smooth pair");
    push(u.clone(), v.clone(), true, "normal crossing");
    push(u.clone(), &v - &(&u * &u), true, "line and parabola");
    push(&u + &v, &u - &v, true, "transversal lines");
    push(v.clone(), &(&u * &u) - &v, false, "line tangent to parabola");
    push(u.clone(), &u + &(&v * &v), false, "tangential plane pair");
    push(
        &(&x * &x) - &y.pow(3),
        &(&y * &y) - &(&(&x * &x) * &z),
        false,
        "cusp cylinder and umbrella",
    );
    push(&x * &z, &(&x + &z) - &(&y * &y), false, "triple plane product");
    cases
}

fn random_separated_cases(rng: &mut ChaCha8Rng, count: usize) -> Vec<Case> {
    let r4 = ring(&["x", "y", "z", "w"]);
    let (x, y, z, w) = (var(&r4, 0), var(&r4, 1), var(&r4, 2), var(&r4, 3));
    let left = pool(&x, &y);
    let right = pool(&z, &w);
    (0..count)
        .map(|k| {
            let g = left[rng.gen_range(0..left.len())].clone();
            let h = right[rng.gen_range(0..right.len())].clone();
            Case {
                g,
                h,
                expected: Some(true),
                label: format!("separated #{k}"),
            }
        })
        .collect()
}

fn unit_rescaled(case: &Case, tag: &str) -> Case {
    let r = case.g.ring().clone();
    let n = r.variable_count();
    let one = int(&r, 1);
    let u1 = &one + &var(&r, 0);
    let u2 = &one - &var(&r, n - 1);
    Case {
        g: &case.g * &u1,
        h: &case.h * &u2,
        expected: case.expected,
        label: format!("{} ({tag})", case.label),
    }
}

fn check_agreement(a: &Analyzer, case: &Case) {
    let pair = a
        .divisor_pair(case.g.clone(), case.h.clone())
        .unwrap_or_else(|e| panic!("{}: invalid pair: {e}", case.label));
    let leibniz = a.is_splayed_leibniz(&pair).unwrap().verdict;
    let geometric = a.is_splayed_geometric(&pair).unwrap().verdict;
    let logder = a.is_splayed_logder(&pair).unwrap().verdict;
    assert_eq!(
        leibniz, geometric,
        "{}: leibniz {leibniz} vs geometric {geometric}",
        case.label
    );
    assert_eq!(
        leibniz, logder,
        "{}: leibniz {leibniz} vs logder {logder}",
        case.label
    );
    if let Some(expected) = case.expected {
        assert_eq!(leibniz, expected, "{}: expected {expected}", case.label);
    }
}

#[test]
fn criteria_agree_across_the_corpus() {
    let a = analyzer();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut corpus = known_cases();
    corpus.extend(random_separated_cases(&mut rng, 12));
    let rescaled: Vec<Case> = corpus
        .iter()
        .step_by(3)
        .map(|c| unit_rescaled(c, "unit rescaled"))
        .collect();
    corpus.extend(rescaled);
    assert!(corpus.len() >= 30, "corpus has {} pairs", corpus.len());
    for case in &corpus {
        check_agreement(&a, case);
    }
}

/// Random unimodular integer matrix from a few shears.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m
}

fn apply_change(f: &Polynomial, m: &[Vec<i64>]) -> Polynomial {
    let r = f.ring().clone();
    let n = r.variable_count();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut acc = Polynomial::zero(&r);
            for (j, &c) in m[i].iter().enumerate() {
                acc = &acc + &(&int(&r, c) * &var(&r, j));
            }
            acc
        })
        .collect();
    f.substitute(&images).unwrap()
}

#[test]
fn splayedness_survives_linear_coordinate_changes() {
    let a = analyzer();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let r3 = xyz();
    let (x, y, z) = (var(&r3, 0), var(&r3, 1), var(&r3, 2));
    let seeds = vec![
        (x.clone(), &(&y * &y) - &z.pow(3)),
        (x.clone(), &(&y * &y) + &z.pow(3)),
        (x.clone(), &y * &z),
        (&x * &y, z.clone()),
    ];
    for (g, h) in seeds {
        let m = unimodular(&mut rng, 3);
        let case = Case {
            g: apply_change(&g, &m),
            h: apply_change(&h, &m),
            expected: Some(true),
            label: format!("coordinate change of ({g}, {h})"),
        };
        check_agreement(&a, &case);
    }
}

#[test]
fn freeness_factors_over_separated_products() {
    let a = analyzer();
    let r4 = ring(&["x", "y", "z", "w"]);
    let (x, y, z, w) = (var(&r4, 0), var(&r4, 1), var(&r4, 2), var(&r4, 3));
    // all reduced plane curves are free, so these split into free x free
    let cusp = &(&x * &x) - &y.pow(3);
    let cross = &z * &w;
    let lines = &(&x * &y) * &(&x + &y);
    for (g, h) in [(cusp.clone(), cross.clone()), (lines, &(&z * &z) - &w.pow(3))] {
        let fg = a.is_free_saito(&g).unwrap().free;
        let fh = a.is_free_saito(&h).unwrap().free;
        let fgh = a.is_free_saito(&(&g * &h)).unwrap().free;
        assert!(fg && fh && fgh);
    }
    // a non-free factor forces the product to be non-free
    let arrangement = &(&(&x * &y) * &z) * &(&(&x + &y) + &z);
    let fg = a.is_free_saito(&arrangement).unwrap();
    assert!(!fg.free);
    let product = &arrangement * &w;
    let fgh = a.is_free_saito(&product).unwrap();
    assert!(!fgh.free);
    assert!(a.is_free_saito(&w).unwrap().free);
}

#[test]
fn certified_radical_jacobians_satisfy_the_leibniz_identity() {
    // when J_{gh} is certified radical, J_{gh} = g J_h + h J_g holds without
    // the (gh) summand, and the pair is splayed
    let a = analyzer();
    let r3 = xyz();
    let (x, y, z) = (var(&r3, 0), var(&r3, 1), var(&r3, 2));
    let r2 = xy();
    let (u, v) = (var(&r2, 0), var(&r2, 1));
    let pairs = vec![
        (u.clone(), v.clone()),
        (x.clone(), &y * &z),
        (&x * &y, z.clone()),
    ];
    let mut certified = 0;
    for (g, h) in pairs {
        let gh = &g * &h;
        let status = a.jacobian_radical_status(&gh).unwrap();
        if !matches!(status, RadicalStatus::RadicalCertified) {
            continue;
        }
        certified += 1;
        let jacobian = a.jacobian_ideal(&gh).unwrap();
        let rhs = a
            .jacobian_ideal(&h)
            .unwrap()
            .product(&Ideal::new(g.ring(), vec![g.clone()], MonomialOrdering::NegDegRevLex).unwrap())
            .unwrap()
            .sum(
                &a.jacobian_ideal(&g)
                    .unwrap()
                    .product(
                        &Ideal::new(h.ring(), vec![h.clone()], MonomialOrdering::NegDegRevLex)
                            .unwrap(),
                    )
                    .unwrap(),
            )
            .unwrap();
        assert!(ideals_equal(&jacobian, &rhs));
        let pair = a.divisor_pair(g, h).unwrap();
        assert!(a.is_splayed_leibniz(&pair).unwrap().verdict);
    }
    assert!(certified >= 3, "only {certified} pairs certified radical");
}
