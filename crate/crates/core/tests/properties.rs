use std::sync::Arc;

use proptest::prelude::*;

use lad_core::dsl::{parse, parse_ideal};
use lad_core::dynamics::DynamicalSystem;
use lad_core::entropy::{entropy_report, length_sequence};
use lad_core::groebner::buchberger;
use lad_core::ideals::{
    colength_of, local_colength, local_colength_by_truncation, maximal_power, truncated_dimension,
    ColengthConfig, LocalIdeal,
};
use lad_core::oracle::oracle_colength;
use lad_core::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField};

const PRIMES: [u64; 3] = [2, 3, 5];

/// `(coeff, exponents)` terms.
type RawPoly = Vec<(u32, Vec<u32>)>;

fn ring(p: u64, nvars: usize, order: MonomialOrder) -> PolyRing {
    PolyRing::new(PrimeField::new(p).unwrap(), nvars, order)
}

/// Polynomial from raw `(coeff, exponents)` terms.
fn poly(r: PolyRing, terms: &[(u32, Vec<u32>)]) -> Polynomial {
    Polynomial::from_terms(
        r,
        terms.iter().map(|(c, e)| {
            (
                *c as u64,
                Monomial::from_exponents(e[..r.nvars].to_vec()).unwrap(),
            )
        }),
    )
}

fn raw_terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
    prop::collection::vec(
        (0u32..7, prop::collection::vec(0..=max_deg, 3)),
        0..=max_terms,
    )
    .prop_map(move |ts| {
        ts.into_iter()
            .map(|(c, mut e)| {
                // keep total degree within max_deg
                while e.iter().sum::<u32>() > max_deg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (c, e)
            })
            .collect()
    })
}

/// Like [`poly`] with the constant term dropped.
fn local_poly(r: PolyRing, terms: &[(u32, Vec<u32>)]) -> Polynomial {
    let p = poly(r, terms);
    p.sub(&Polynomial::constant(r, p.constant_term() as u64))
}

fn setting() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(PRIMES.to_vec()), 1usize..=3)
}

/// At least as many generators as variables, all of degree at most 3.
/// Generator `i < n` is a pure power of `x_i` plus up to two random terms,
/// so most samples are primary at the origin but some are not.
fn local_ideal() -> impl Strategy<Value = (u64, usize, Vec<RawPoly>)> {
    setting().prop_flat_map(|(p, n)| {
        let term = (1u32..p as u32, prop::collection::vec(0u32..=3, n)).prop_map(|(c, mut e)| {
            while e.iter().sum::<u32>() > 3 {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            if e.iter().all(|&x| x == 0) {
                e[0] = 1;
            }
            e.resize(3, 0);
            (c, e)
        });
        let gens = (
            prop::collection::vec((1u32..=3, prop::collection::vec(term.clone(), 0..=2)), n),
            prop::collection::vec(prop::collection::vec(term, 1..=3), 0..=3 - n),
        )
            .prop_map(|(leading, extra)| {
                let mut gens: Vec<RawPoly> = leading
                    .into_iter()
                    .enumerate()
                    .map(|(i, (a, mut ts))| {
                        let mut e = vec![0; 3];
                        e[i] = a;
                        ts.push((1, e));
                        ts
                    })
                    .collect();
                gens.extend(extra);
                gens
            });
        (Just(p), Just(n), gens)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((p, n) in setting(), a in raw_terms(3, 5), b in raw_terms(3, 5), c in raw_terms(3, 5)) {
        let r = ring(p, n, MonomialOrder::DegRevLex);
        let (a, b, c) = (poly(r, &a), poly(r, &b), poly(r, &c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c)).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(r)).unwrap(), a.clone());
        prop_assert_eq!(a.pow(3).unwrap(), a.mul(&a).unwrap().mul(&a).unwrap());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        (p, n) in setting(),
        a in raw_terms(3, 4),
        b in raw_terms(3, 4),
        imgs in prop::collection::vec(raw_terms(2, 3), 3),
    ) {
        let r = ring(p, n, MonomialOrder::DegRevLex);
        let (a, b) = (poly(r, &a), poly(r, &b));
        let images: Vec<Polynomial> = imgs[..n].iter().map(|t| poly(r, t)).collect();
        let sub = |f: &Polynomial| f.substitute(&images).unwrap();
        prop_assert_eq!(sub(&a.add(&b)), sub(&a).add(&sub(&b)));
        prop_assert_eq!(sub(&a.mul(&b).unwrap()), sub(&a).mul(&sub(&b)).unwrap());
        let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(r, i)).collect();
        prop_assert_eq!(a.substitute(&vars).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn groebner_fixpoint_and_membership(
        (p, n) in setting(),
        gens in prop::collection::vec(raw_terms(3, 4), 1..=3),
        mults in prop::collection::vec(raw_terms(2, 3), 3),
        lex in any::<bool>(),
    ) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let r = ring(p, n, order);
        let gens: Vec<Polynomial> = gens.iter().map(|t| poly(r, t)).collect();
        let gb = buchberger(&gens, order).unwrap();
        prop_assert!(gb.is_groebner());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        // combinations of the generators are members
        let mut comb = Polynomial::zero(r);
        for (g, h) in gens.iter().zip(&mults) {
            comb = comb.add(&g.mul(&poly(r, h)).unwrap());
        }
        prop_assert!(gb.normal_form(&comb).is_zero());
        // a basis of the basis is itself
        if !gb.is_zero_ideal() {
            let again = buchberger(gb.generators(), order).unwrap();
            prop_assert_eq!(again.generators(), gb.generators());
        }
        // normal forms are idempotent and differ from f by a member
        let f = comb.add(&Polynomial::var(r, 0));
        let nf = gb.normal_form(&f);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        prop_assert!(gb.contains(&f.sub(&nf)));
    }
}

fn colength_cfg() -> ColengthConfig {
    ColengthConfig {
        truncation_cap: 40,
        ..ColengthConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// The engine and the linear-algebra oracle agree on random ideals; a
    /// finite colength `λ` is always certified by the oracle within `λ + 2`
    /// truncation steps since `m^λ` lies in the ideal.
    #[test]
    fn oracle_equivalence((p, n, gens) in local_ideal()) {
        let r = ring(p, n, MonomialOrder::DegRevLex);
        let gens: Vec<Polynomial> = gens.iter().map(|t| local_poly(r, t)).collect();
        match colength_of(&gens, r, &colength_cfg()) {
            Ok(c) => {
                let o = oracle_colength(&gens, n, r.field, c.value as u32 + 2).unwrap();
                prop_assert_eq!(o.value, c.value);
            }
            Err(e) => {
                prop_assert_eq!(e.kind(), lad_core::ErrorKind::Validation);
                prop_assert!(oracle_colength(&gens, n, r.field, 12).is_err());
            }
        }
    }

    /// Pure powers: `length k[[x]]/(x_1^{a_1}, ..., x_s^{a_s}) = ∏ a_i`, also
    /// after adding higher-order multiples to the first generator.
    #[test]
    fn complete_intersection_product_rule(
        p in prop::sample::select(PRIMES.to_vec()),
        exps in prop::collection::vec(1u32..6, 1..=3),
        tail in raw_terms(3, 2),
    ) {
        let n = exps.len();
        let r = ring(p, n, MonomialOrder::DegRevLex);
        let mut gens: Vec<Polynomial> = exps
            .iter()
            .enumerate()
            .map(|(i, &a)| Polynomial::var(r, i).pow(a).unwrap())
            .collect();
        let expected: u64 = exps.iter().map(|&a| a as u64).product();
        prop_assert_eq!(colength_of(&gens, r, &colength_cfg()).unwrap().value, expected);
        gens[0] = gens[0].add(&gens[0].mul(&local_poly(r, &tail)).unwrap());
        prop_assert_eq!(colength_of(&gens, r, &colength_cfg()).unwrap().value, expected);
    }
}

fn system(text: &str, endo: &str) -> DynamicalSystem {
    let f = parse(text).unwrap();
    DynamicalSystem::new(f.endo(endo).unwrap().endo.clone(), &Default::default()).unwrap()
}

#[test]
fn submultiplicativity_on_every_fixture() {
    let fixtures = [
        (include_str!("../../../fixtures/example1.lad"), "phi"),
        (include_str!("../../../fixtures/example1.lad"), "psi"),
        (include_str!("../../../fixtures/fiber.lad"), "psibar"),
        (include_str!("../../../fixtures/frobenius.lad"), "frob"),
        (include_str!("../../../fixtures/hypersurface.lad"), "frob"),
        (include_str!("../../../fixtures/zero_dim.lad"), "sq"),
        (include_str!("../../../fixtures/surjection.lad"), "frob"),
        (include_str!("../../../fixtures/surjection.lad"), "frobc"),
    ];
    for (text, name) in fixtures {
        let sys = system(text, name);
        let m = sys.ring().maximal_ideal();
        let seq = length_sequence(&sys, &m, 4, &colength_cfg()).unwrap();
        let l = &seq.lengths;
        for a in 1..=4 {
            for b in 1..=4 - a {
                assert!(
                    l[a + b - 1] <= l[a - 1] * l[b - 1],
                    "{name}: λ_{} = {} > λ_{a} λ_{b}",
                    a + b,
                    l[a + b - 1]
                );
            }
        }
    }
}

#[test]
fn zero_dimensional_lengths_are_bounded_by_the_ring() {
    let sys = system(include_str!("../../../fixtures/zero_dim.lad"), "sq");
    let ring_length = local_colength(&sys.ring().zero_ideal(), &colength_cfg())
        .unwrap()
        .value;
    let m = sys.ring().maximal_ideal();
    let seq = length_sequence(&sys, &m, 6, &colength_cfg()).unwrap();
    assert!(seq.lengths.iter().all(|&l| l <= ring_length));
    assert_eq!(seq.lengths.last(), Some(&ring_length));
}

/// `(y) ⊇ (y^2) ⊇ m^2` on the source of the example:
/// `λ_n(y) ≤ λ_n(y^2) ≤ λ_n(m^2)` for every `n`.
#[test]
fn sandwich_on_the_example() {
    let f = parse(include_str!("../../../fixtures/example1.lad")).unwrap();
    let r = Arc::clone(&f.ring("R").unwrap().presentation);
    let sys =
        DynamicalSystem::new(f.endo("phi").unwrap().endo.clone(), &Default::default()).unwrap();
    let cfg = colength_cfg();
    let y = r.var(0);
    let q1 = LocalIdeal::new(Arc::clone(&r), vec![y.clone()]).unwrap();
    let q2 = LocalIdeal::new(Arc::clone(&r), vec![y.pow(2).unwrap()]).unwrap();
    let m2 = maximal_power(&r, 2);
    let gb = q2.basis(&Default::default()).unwrap();
    assert!(m2.generators().iter().all(|g| gb.contains(g)));
    let l1 = length_sequence(&sys, &q1, 4, &cfg).unwrap().lengths;
    let l2 = length_sequence(&sys, &q2, 4, &cfg).unwrap().lengths;
    let lm = length_sequence(&sys, &m2, 4, &cfg).unwrap().lengths;
    for n in 0..4 {
        assert!(l1[n] <= l2[n] && l2[n] <= lm[n], "n = {}", n + 1);
    }
    assert_eq!(l1, vec![3, 9, 27, 81]);
    assert_eq!(l2, vec![6, 18, 54, 162]);
}

/// Every naive estimate sits above the known limit.
#[test]
fn naive_estimates_bound_the_limit() {
    let cases = [
        (
            include_str!("../../../fixtures/frobenius.lad"),
            "frob",
            2.0 * 3f64.ln(),
        ),
        (
            include_str!("../../../fixtures/example1.lad"),
            "phi",
            3f64.ln(),
        ),
        (
            include_str!("../../../fixtures/fiber.lad"),
            "psibar",
            5f64.ln(),
        ),
    ];
    for (text, name, limit) in cases {
        let sys = system(text, name);
        let m = sys.ring().maximal_ideal();
        let r = entropy_report(&sys, &m, 3, &colength_cfg()).unwrap();
        assert!(
            r.naive.iter().all(|&v| v >= limit - 1e-12),
            "{name}: {:?}",
            r.naive
        );
    }
}

/// Whenever a colength is certified at `N`, one more truncation agrees.
#[test]
fn stabilization_certificate_rechecks() {
    let f = parse(include_str!("../../../fixtures/example1.lad")).unwrap();
    let s = Arc::clone(&f.ring("S").unwrap().presentation);
    let j = parse_ideal("(w, y)", &s).unwrap();
    let cfg = colength_cfg();
    let c = local_colength_by_truncation(&j, &cfg).unwrap();
    let gens = j.joined_generators();
    for n in [c.truncation, c.truncation + 1, c.truncation + 2] {
        assert_eq!(
            truncated_dimension(&gens, s.ring(), n, &cfg.gb).unwrap(),
            c.value
        );
    }
}
