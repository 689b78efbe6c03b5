//! Shared division and standard-basis machinery for ideals (rank 1) and
//! submodules of free modules.
//!
//! Global well-orderings run Buchberger with classical division; local and
//! mixed orderings run Mora's tangent cone algorithm, where the weak normal
//! form may save intermediate states as extra reducers, which amounts to
//! multiplying the input by a local unit. Every arithmetic step can be
//! mirrored on shadow vectors, which yields division certificates and, via
//! the lifting of S-pair reductions to zero, syzygy generators.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::module::VectorPolynomial;
use crate::poly::Polynomial;
use crate::ring::{ModuleOrdering, Monomial};

/// Resource limits for basis computations. Exceeding a cap aborts with a
/// resource error instead of returning a possibly wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_basis_size: usize,
    pub max_spairs: usize,
    pub max_reduction_steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_basis_size: 4096,
            max_spairs: 100_000,
            max_reduction_steps: 2_000_000,
        }
    }
}

/// A vector with a shadow that mirrors every reduction step. The shadow
/// semantics are fixed by the caller (division certificate slots or
/// representations over original generators).
#[derive(Debug, Clone)]
pub(crate) struct Tracked {
    pub v: VectorPolynomial,
    pub shadow: Vec<Polynomial>,
}

impl Tracked {
    fn sub_scaled(&mut self, c: &BigRational, m: &Monomial, other: &Tracked) {
        self.v = self
            .v
            .checked_sub(&other.v.mul_term(c, m))
            .expect("rank/ring checked");
        for (s, o) in self.shadow.iter_mut().zip(&other.shadow) {
            *s = s
                .checked_sub(&o.mul_term(c, m))
                .expect("shadow rings match");
        }
    }

    /// Content-1, positive-leading-coefficient normalization applied to the
    /// vector and its shadow simultaneously.
    fn normalize(&mut self) {
        let normalized = self.v.normalized();
        if let (Some((_, a)), Some((_, b))) = (normalized.leading(), self.v.leading()) {
            let factor = &a.coefficient / &b.coefficient;
            self.v = normalized;
            for s in self.shadow.iter_mut() {
                *s = s.scale(&factor);
            }
        }
    }
}

pub(crate) struct EngineCfg {
    pub ordering: ModuleOrdering,
    pub caps: Caps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SbMode {
    /// Interreduced deterministic basis, product criterion allowed (rank 1).
    Plain,
    /// Keep every element including the originals and lift all S-pair
    /// reductions to zero into syzygies. No pair is skipped.
    WithSyzygies,
}

pub(crate) struct SbOutput {
    pub basis: Vec<VectorPolynomial>,
    /// Syzygy representations over the original generators (WithSyzygies).
    pub syzygies: Vec<Vec<Polynomial>>,
}

/// Result of a division: `unit * input = (combination of basis) + remainder`.
pub(crate) struct Reduction {
    pub remainder: VectorPolynomial,
}

fn ecart(v: &VectorPolynomial) -> u64 {
    match (v.total_degree(), v.leading()) {
        (Some(d), Some((_, t))) => d - t.monomial.total_degree(),
        _ => 0,
    }
}

struct ReducerChoice {
    ecart: u64,
    from_saved: bool,
    index: usize,
}

fn pick_reducer(
    h: &VectorPolynomial,
    basis: &[Tracked],
    saved: &[Tracked],
) -> Option<ReducerChoice> {
    let (hc, ht) = h.leading()?;
    let mut best: Option<ReducerChoice> = None;
    let mut consider = |g: &Tracked, from_saved: bool, index: usize| {
        if let Some((gc, gt)) = g.v.leading() {
            if gc == hc && gt.monomial.divides(&ht.monomial) {
                let e = ecart(&g.v);
                // minimal ecart wins; ties go to the earliest reducer,
                // basis elements before saved intermediates
                if best.as_ref().map_or(true, |b| e < b.ecart) {
                    best = Some(ReducerChoice {
                        ecart: e,
                        from_saved,
                        index,
                    });
                }
            }
        }
    };
    for (i, g) in basis.iter().enumerate() {
        consider(g, false, i);
    }
    for (i, g) in saved.iter().enumerate() {
        consider(g, true, i);
    }
    best
}

/// Mora weak normal form with mirrored shadows. For global orderings no
/// intermediate state is ever saved, so this degenerates to classical
/// leading-term division.
fn weak_nf_tracked(
    mut h: Tracked,
    basis: &[Tracked],
    cfg: &EngineCfg,
    steps: &mut usize,
) -> Result<(Tracked, bool), Error> {
    let allow_saving = !cfg.ordering.base.is_global();
    let mut saved: Vec<Tracked> = Vec::new();
    let mut used_saved = false;
    loop {
        if h.v.is_zero() {
            return Ok((h, used_saved));
        }
        let Some(choice) = pick_reducer(&h.v, basis, &saved) else {
            return Ok((h, used_saved));
        };
        *steps += 1;
        if *steps > cfg.caps.max_reduction_steps {
            return Err(Error::ResourceCap(format!(
                "reduction steps > {}",
                cfg.caps.max_reduction_steps
            )));
        }
        if allow_saving && choice.ecart > ecart(&h.v) {
            saved.push(h.clone());
        }
        let g = if choice.from_saved {
            used_saved = true;
            saved[choice.index].clone()
        } else {
            basis[choice.index].clone()
        };
        let (_, ht) = h.v.leading().expect("nonzero");
        let (_, gt) = g.v.leading().expect("reducer nonzero");
        let factor = &ht.coefficient / &gt.coefficient;
        let shift = gt
            .monomial
            .checked_div(&ht.monomial)
            .expect("divisibility checked");
        h.sub_scaled(&factor, &shift, &g);
    }
}

/// Total normal form: the weak normal form applied repeatedly so that no
/// term of the remainder is divisible by a basis leading monomial. Over
/// local orderings termination is enforced by the reduction-step cap.
fn total_nf_tracked(
    f: Tracked,
    basis: &[Tracked],
    cfg: &EngineCfg,
    steps: &mut usize,
) -> Result<(VectorPolynomial, Vec<Polynomial>, bool), Error> {
    let ring = f.v.ring().clone();
    let rank = f.v.rank();
    let mut acc = VectorPolynomial::zero(&ring, rank).with_base_ordering(cfg.ordering.base);
    let mut cur = f;
    let mut used = false;
    loop {
        let (red, u) = weak_nf_tracked(cur, basis, cfg, steps)?;
        used |= u;
        if red.v.is_zero() {
            return Ok((acc, red.shadow, used));
        }
        // move the irreducible leading term out and keep reducing the tail
        let (comp, lt) = red.v.leading().expect("nonzero");
        let mut head = VectorPolynomial::zero(&ring, rank).with_base_ordering(cfg.ordering.base);
        let head_poly = Polynomial::constant(&ring, lt.coefficient.clone())
            .with_ordering(cfg.ordering.base)
            .mul_term(&BigRational::one(), &lt.monomial);
        let mut comps = head.into_components();
        comps[comp] = head_poly;
        head = VectorPolynomial::new(comps).expect("rank preserved");
        acc = acc.checked_add(&head)?;
        let tail = red.v.checked_sub(&head)?;
        cur = Tracked {
            v: tail,
            shadow: red.shadow,
        };
    }
}

fn empty_shadow() -> Vec<Polynomial> {
    Vec::new()
}

/// Weak normal form against a fixed basis, untracked.
pub(crate) fn weak_normal_form(
    v: &VectorPolynomial,
    basis: &[VectorPolynomial],
    cfg: &EngineCfg,
) -> Result<Reduction, Error> {
    let tracked_basis: Vec<Tracked> = basis
        .iter()
        .map(|b| Tracked {
            v: b.with_base_ordering(cfg.ordering.base),
            shadow: empty_shadow(),
        })
        .collect();
    let mut steps = 0usize;
    let (r, _) = weak_nf_tracked(
        Tracked {
            v: v.with_base_ordering(cfg.ordering.base),
            shadow: empty_shadow(),
        },
        &tracked_basis,
        cfg,
        &mut steps,
    )?;
    Ok(Reduction { remainder: r.v })
}

pub(crate) struct Certificate {
    pub remainder: VectorPolynomial,
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub used_unit_multiplier: bool,
}

/// Total normal form with a division certificate
/// `unit * v = sum(quotients[i] * basis[i]) + remainder`.
pub(crate) fn certified_normal_form(
    v: &VectorPolynomial,
    basis: &[VectorPolynomial],
    cfg: &EngineCfg,
) -> Result<Certificate, Error> {
    let ring = v.ring().clone();
    let m = basis.len();
    // shadow slots: [unit, -q_1, ..., -q_m]
    let shadow_unit = |slot: usize| -> Vec<Polynomial> {
        (0..m + 1)
            .map(|k| {
                if k == slot {
                    Polynomial::constant_int(&ring, 1).with_ordering(cfg.ordering.base)
                } else {
                    Polynomial::zero(&ring).with_ordering(cfg.ordering.base)
                }
            })
            .collect()
    };
    let tracked_basis: Vec<Tracked> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| Tracked {
            v: b.with_base_ordering(cfg.ordering.base),
            shadow: shadow_unit(i + 1),
        })
        .collect();
    let mut steps = 0usize;
    let (remainder, shadow, _) = total_nf_tracked(
        Tracked {
            v: v.with_base_ordering(cfg.ordering.base),
            shadow: shadow_unit(0),
        },
        &tracked_basis,
        cfg,
        &mut steps,
    )?;
    let unit = shadow[0].clone();
    let quotients: Vec<Polynomial> = shadow[1..].iter().map(|q| q.neg_ref()).collect();
    let one = Polynomial::constant_int(&ring, 1).with_ordering(cfg.ordering.base);
    let used_unit_multiplier = unit != one;
    Ok(Certificate {
        remainder,
        unit,
        quotients,
        used_unit_multiplier,
    })
}

fn spair(a: &Tracked, b: &Tracked) -> Tracked {
    let (ca, ta) = a.v.leading().expect("nonzero");
    let (cb, tb) = b.v.leading().expect("nonzero");
    debug_assert_eq!(ca, cb);
    let lcm = ta.monomial.lcm(&tb.monomial);
    let ma = ta.monomial.checked_div(&lcm).expect("lcm divisible");
    let mb = tb.monomial.checked_div(&lcm).expect("lcm divisible");
    let fa = ta.coefficient.recip();
    let fb = tb.coefficient.recip();
    let mut s = Tracked {
        v: a.v.mul_term(&fa, &ma),
        shadow: a.shadow.iter().map(|p| p.mul_term(&fa, &ma)).collect(),
    };
    let t = Tracked {
        v: b.v.mul_term(&fb, &mb),
        shadow: b.shadow.iter().map(|p| p.mul_term(&fb, &mb)).collect(),
    };
    s.v = s.v.checked_sub(&t.v).expect("same rank");
    s.shadow = s
        .shadow
        .iter()
        .zip(&t.shadow)
        .map(|(x, y)| x.checked_sub(y).expect("same ring"))
        .collect();
    s
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

fn push_pairs(pairs: &mut Vec<Pair>, basis: &[Tracked], new_index: usize) {
    let Some((nc, nt)) = basis[new_index].v.leading() else {
        return;
    };
    for (i, g) in basis.iter().enumerate().take(new_index) {
        if let Some((gc, gt)) = g.v.leading() {
            if gc == nc {
                let lcm = gt.monomial.lcm(&nt.monomial);
                pairs.push(Pair {
                    i,
                    j: new_index,
                    degree: lcm.total_degree(),
                    lcm,
                });
            }
        }
    }
}

/// Normal strategy: smallest lcm degree first, ties by the ordering on the
/// lcm, then by generator indices. Deterministic.
fn pop_best_pair(pairs: &mut Vec<Pair>, cfg: &EngineCfg) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0usize;
    for k in 1..pairs.len() {
        let a = &pairs[k];
        let b = &pairs[best];
        let better = match a.degree.cmp(&b.degree) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match cfg.ordering.base.cmp(&a.lcm, &b.lcm) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (a.i, a.j) < (b.i, b.j),
            },
        };
        if better {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

/// Standard basis computation; in `WithSyzygies` mode all reductions are
/// tracked against the original generators and every S-pair of the final
/// basis is reduced to zero to harvest the lifted syzygies.
pub(crate) fn standard_basis(
    gens: &[VectorPolynomial],
    cfg: &EngineCfg,
    mode: SbMode,
) -> Result<SbOutput, Error> {
    let track = mode == SbMode::WithSyzygies;
    let m = gens.len();
    let ring = gens
        .first()
        .map(|g| g.ring().clone());
    let mut syzygies: Vec<Vec<Polynomial>> = Vec::new();
    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let g = g.with_base_ordering(cfg.ordering.base);
        if g.is_zero() {
            if track {
                // a zero input satisfies the coordinate relation e_i
                let ring = ring.as_ref().expect("nonempty gens");
                let shadow: Vec<Polynomial> = (0..m)
                    .map(|k| {
                        if k == i {
                            Polynomial::constant_int(ring, 1)
                                .with_ordering(cfg.ordering.base)
                        } else {
                            Polynomial::zero(ring).with_ordering(cfg.ordering.base)
                        }
                    })
                    .collect();
                syzygies.push(shadow);
            }
            continue;
        }
        let shadow = if track {
            let ring = ring.as_ref().expect("nonempty gens");
            (0..m)
                .map(|k| {
                    if k == i {
                        Polynomial::constant_int(ring, 1).with_ordering(cfg.ordering.base)
                    } else {
                        Polynomial::zero(ring).with_ordering(cfg.ordering.base)
                    }
                })
                .collect()
        } else {
            empty_shadow()
        };
        basis.push(Tracked { v: g, shadow });
    }

    let rank1 = basis.first().map_or(true, |g| g.v.rank() == 1);
    let mut pairs: Vec<Pair> = Vec::new();
    for k in 0..basis.len() {
        push_pairs(&mut pairs, &basis, k);
    }
    let mut steps = 0usize;
    let mut processed = 0usize;
    while let Some(pair) = pop_best_pair(&mut pairs, cfg) {
        processed += 1;
        if processed > cfg.caps.max_spairs {
            return Err(Error::ResourceCap(format!(
                "S-pairs > {}",
                cfg.caps.max_spairs
            )));
        }
        if !track && rank1 {
            // product criterion: coprime leading monomials reduce to zero
            let (_, ti) = basis[pair.i].v.leading().expect("nonzero");
            let (_, tj) = basis[pair.j].v.leading().expect("nonzero");
            if ti.monomial.is_coprime_with(&tj.monomial) {
                continue;
            }
        }
        let s = spair(&basis[pair.i], &basis[pair.j]);
        let (mut r, _) = weak_nf_tracked(s, &basis, cfg, &mut steps)?;
        if r.v.is_zero() {
            continue;
        }
        r.normalize();
        basis.push(r);
        if basis.len() > cfg.caps.max_basis_size {
            return Err(Error::ResourceCap(format!(
                "basis size > {}",
                cfg.caps.max_basis_size
            )));
        }
        push_pairs(&mut pairs, &basis, basis.len() - 1);
    }

    if track {
        // second pass: every S-pair of the completed basis reduces to zero;
        // the mirrored shadow of each zero reduction is a syzygy
        let mut all_pairs: Vec<Pair> = Vec::new();
        for k in 0..basis.len() {
            push_pairs(&mut all_pairs, &basis, k);
        }
        while let Some(pair) = pop_best_pair(&mut all_pairs, cfg) {
            let s = spair(&basis[pair.i], &basis[pair.j]);
            let (r, _) = weak_nf_tracked(s, &basis, cfg, &mut steps)?;
            if !r.v.is_zero() {
                return Err(Error::Inconsistency(
                    "S-pair of a completed standard basis did not reduce to zero".into(),
                ));
            }
            if r.shadow.iter().all(|p| p.is_zero()) {
                continue;
            }
            if !syzygies.contains(&r.shadow) {
                syzygies.push(r.shadow);
            }
        }
        let out = basis.into_iter().map(|t| t.v).collect();
        return Ok(SbOutput {
            basis: out,
            syzygies,
        });
    }

    // interreduction: drop leading-monomial-redundant elements, then for
    // global orderings tail-reduce to the unique reduced basis
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ci, ti) = basis[i].v.leading().expect("nonzero");
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, tj) = basis[j].v.leading().expect("nonzero");
            if ci == cj
                && tj.monomial.divides(&ti.monomial)
                && (tj.monomial != ti.monomial || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut reduced: Vec<VectorPolynomial> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(t, _)| t.v)
        .collect();
    if cfg.ordering.base.is_global() {
        for i in 0..reduced.len() {
            let others: Vec<Tracked> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| Tracked {
                    v: g.clone(),
                    shadow: empty_shadow(),
                })
                .collect();
            let (r, _, _) = total_nf_tracked(
                Tracked {
                    v: reduced[i].clone(),
                    shadow: empty_shadow(),
                },
                &others,
                cfg,
                &mut steps,
            )?;
            reduced[i] = r;
        }
    }
    // replace an element by its bare leading monomial when that monomial
    // already lies in the module (e.g. x + x^2 generates (x) locally);
    // the leading ideal is unchanged, so the result is still a basis
    let snapshot: Vec<Tracked> = reduced
        .iter()
        .map(|v| Tracked {
            v: v.clone(),
            shadow: empty_shadow(),
        })
        .collect();
    for g in reduced.iter_mut() {
        let (comp, lt) = g.leading().expect("nonzero");
        if g.components().iter().map(|c| c.term_count()).sum::<usize>() == 1 {
            continue;
        }
        let ring = g.ring().clone();
        let rank = g.rank();
        let mut comps: Vec<Polynomial> = VectorPolynomial::zero(&ring, rank)
            .with_base_ordering(cfg.ordering.base)
            .into_components();
        comps[comp] = Polynomial::constant_int(&ring, 1)
            .with_ordering(cfg.ordering.base)
            .mul_term(&BigRational::one(), &lt.monomial.clone());
        let candidate = VectorPolynomial::new(comps).expect("rank preserved");
        let (r, _) = weak_nf_tracked(
            Tracked {
                v: candidate.clone(),
                shadow: empty_shadow(),
            },
            &snapshot,
            cfg,
            &mut steps,
        )?;
        if r.v.is_zero() {
            *g = candidate;
        }
    }
    let mut reduced: Vec<VectorPolynomial> =
        reduced.into_iter().map(|v| v.normalized()).collect();
    reduced.sort_by(|a, b| {
        let (ca, ta) = a.leading().expect("nonzero");
        let (cb, tb) = b.leading().expect("nonzero");
        cfg.ordering
            .cmp((cb, &tb.monomial), (ca, &ta.monomial))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    Ok(SbOutput {
        basis: reduced,
        syzygies,
    })
}

/// Certified total normal form for rank-1 use by ideals.
pub(crate) fn certified_poly_normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    cfg: &EngineCfg,
) -> Result<(Polynomial, Polynomial, Vec<Polynomial>, bool), Error> {
    let v = VectorPolynomial::new(vec![f.with_ordering(cfg.ordering.base)])?;
    let b: Vec<VectorPolynomial> = basis
        .iter()
        .map(|g| VectorPolynomial::new(vec![g.with_ordering(cfg.ordering.base)]))
        .collect::<Result<Vec<_>, _>>()?;
    let cert = certified_normal_form(&v, &b, cfg)?;
    let remainder = cert.remainder.components()[0].clone();
    Ok((
        remainder,
        cert.unit,
        cert.quotients,
        cert.used_unit_multiplier,
    ))
}
