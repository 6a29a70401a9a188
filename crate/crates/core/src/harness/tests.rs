use super::*;
use crate::dsl::{parse, parse_ideal, parse_polynomial, AssumptionKind, FixtureFile};
use crate::dynamics::{CheckOutcome, DynamicalSystem};

const EXAMPLE1: &str = include_str!("../../../../fixtures/example1.lad");
const FROBENIUS_PAIR: &str = include_str!("../../../../fixtures/frobenius_pair.lad");
const FROBENIUS: &str = include_str!("../../../../fixtures/frobenius.lad");
const SURJECTION: &str = include_str!("../../../../fixtures/surjection.lad");
const FIBER: &str = include_str!("../../../../fixtures/fiber.lad");

fn system(f: &FixtureFile, endo: &str) -> DynamicalSystem {
    DynamicalSystem::new(
        f.endo(endo).unwrap().endo.clone(),
        &ColengthConfig::default(),
    )
    .unwrap()
}

fn setup(f: &FixtureFile, phi: &str, psi: &str, map: &str) -> MorphismSetup {
    MorphismSetup::new(
        system(f, phi),
        system(f, psi),
        f.map(map).unwrap().images.clone(),
    )
    .unwrap()
}

fn assumptions(f: &FixtureFile, map: &str) -> Assumptions {
    let m = f.map(map).unwrap();
    Assumptions {
        flat: f.assumes(AssumptionKind::Flat, map),
        cohen_macaulay: f.assumes(AssumptionKind::CohenMacaulay, &m.target),
    }
}

fn ideal(f: &FixtureFile, ring: &str, text: &str) -> LocalIdeal {
    parse_ideal(text, &f.ring(ring).unwrap().presentation).unwrap()
}

#[test]
fn example_additivity_first_iterates() {
    let f = parse(EXAMPLE1).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    let check = verify_additivity(
        &m,
        &ideal(&f, "R", "(y)"),
        &ideal(&f, "S", "(w)"),
        2,
        assumptions(&f, "f"),
        &ColengthConfig::default(),
    )
    .unwrap();
    assert!(check.passed());
    let lhs: Vec<u64> = check.rows.iter().map(|r| r.lhs).collect();
    let rf: Vec<u64> = check.rows.iter().map(|r| r.rhs_factor_r).collect();
    let ff: Vec<u64> = check.rows.iter().map(|r| r.rhs_factor_fiber).collect();
    assert_eq!(lhs, [12, 180, 2700]);
    assert_eq!(rf, [1, 3, 9]);
    assert_eq!(ff, [12, 60, 300]);
    assert_eq!(check.flatness.dimension_check, CheckOutcome::Pass);
    assert_eq!(check.target_entropy.exact_ratio, Some(15));
    assert!(check.decomposition.gap().abs() < 1e-9);
}

#[test]
fn additivity_requires_declared_hypotheses() {
    let f = parse(EXAMPLE1).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    let err = verify_additivity(
        &m,
        &ideal(&f, "R", "(y)"),
        &ideal(&f, "S", "(w)"),
        1,
        Assumptions::default(),
        &ColengthConfig::default(),
    );
    assert!(matches!(err, Err(Error::ValidationFailed(_))));
}

#[test]
fn additivity_rejects_bad_parameters() {
    let f = parse(EXAMPLE1).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    let a = assumptions(&f, "f");
    let cfg = ColengthConfig::default();
    // (x) is not a parameter of the fiber: x is nilpotent there
    let err = verify_additivity(
        &m,
        &ideal(&f, "R", "(y)"),
        &ideal(&f, "S", "(x)"),
        1,
        a,
        &cfg,
    );
    assert!(matches!(err, Err(Error::ValidationFailed(_))));
    // the zero ideal of R is not primary
    let cfg_small = ColengthConfig {
        truncation_cap: 16,
        ..ColengthConfig::default()
    };
    let err = verify_additivity(
        &m,
        &ideal(&f, "R", "()"),
        &ideal(&f, "S", "(w)"),
        1,
        a,
        &cfg_small,
    );
    assert!(matches!(err, Err(Error::ValidationFailed(_))));
}

#[test]
fn frobenius_pair_additivity() {
    let f = parse(FROBENIUS_PAIR).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    let check = verify_additivity(
        &m,
        &ideal(&f, "R", "(y)"),
        &ideal(&f, "S", "(w)"),
        4,
        assumptions(&f, "f"),
        &ColengthConfig::default(),
    )
    .unwrap();
    assert!(check.passed());
    for r in &check.rows {
        assert_eq!(r.lhs, 4u64.pow(r.n as u32));
        assert_eq!(r.rhs_factor_r, 2u64.pow(r.n as u32));
    }
}

#[test]
fn identity_additivity_has_trivial_fiber() {
    let f = parse(FROBENIUS).unwrap();
    let m = setup(&f, "frob", "frob", "id");
    let check = verify_additivity(
        &m,
        &ideal(&f, "R", "(x, y)"),
        &ideal(&f, "R", "()"),
        3,
        assumptions(&f, "id"),
        &ColengthConfig::default(),
    )
    .unwrap();
    assert!(check.passed());
    for r in &check.rows {
        assert_eq!(r.rhs_factor_fiber, 1);
        assert_eq!(r.lhs, r.rhs_factor_r);
    }
    let ineq = verify_inequality(&m, 3, &ColengthConfig::default()).unwrap();
    assert!(ineq
        .rows
        .iter()
        .all(|r| r.pass && r.lhs == r.rhs_factor_r && r.rhs_factor_fiber == 1));
}

#[test]
fn inequality_on_a_non_flat_quotient() {
    let f = parse(SURJECTION).unwrap();
    let m = setup(&f, "frob", "frobc", "q");
    let check = verify_inequality(&m, 3, &ColengthConfig::default()).unwrap();
    assert!(check.passed());
    let lhs: Vec<u64> = check.rows.iter().map(|r| r.lhs).collect();
    let rf: Vec<u64> = check.rows.iter().map(|r| r.rhs_factor_r).collect();
    assert_eq!(lhs, [3, 7, 15]);
    assert_eq!(rf, [4, 16, 64]);
    assert!(check.rows.iter().all(|r| r.rhs_factor_fiber == 1));
}

#[test]
fn inequality_on_the_example() {
    let f = parse(EXAMPLE1).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    let check = verify_inequality(&m, 2, &ColengthConfig::default()).unwrap();
    assert!(check.passed());
}

#[test]
fn non_commuting_map_is_rejected() {
    let text = EXAMPLE1.replace("endo phi on R : y -> y^3", "endo phi on R : y -> y^2");
    let f = parse(&text).unwrap();
    let m = setup(&f, "phi", "psi", "f");
    assert!(matches!(
        verify_inequality(&m, 1, &ColengthConfig::default()),
        Err(Error::ValidationFailed(_))
    ));
}

#[test]
fn systems_of_parameters() {
    let f = parse("field 2\nring A vars x s mod (s^6, x^2)\nring B vars x w s mod (s^6, x^2)\nring P vars x y\n").unwrap();
    let a = &f.ring("A").unwrap().presentation;
    let b = &f.ring("B").unwrap().presentation;
    let p = &f.ring("P").unwrap().presentation;
    assert!(sop_check(a, &[]).unwrap());
    assert!(sop_check(b, &[parse_polynomial("w", b).unwrap()]).unwrap());
    assert!(!sop_check(b, &[]).unwrap());
    assert!(!sop_check(b, &[parse_polynomial("x", b).unwrap()]).unwrap());
    let x = parse_polynomial("x", p).unwrap();
    assert!(!sop_check(p, &[x.clone(), x.clone()]).unwrap());
    assert!(sop_check(p, &[x, parse_polynomial("y", p).unwrap()]).unwrap());
}

#[test]
fn images_of_parameters_are_parameters() {
    let f = parse(FIBER).unwrap();
    let ring = &f.ring("F").unwrap().presentation;
    let sys = system(&f, "psibar");
    for sop in [&["w"][..], &["w + x"], &["w + s^2"]] {
        let elems: Vec<_> = sop
            .iter()
            .map(|e| parse_polynomial(e, ring).unwrap())
            .collect();
        assert!(sop_check(ring, &elems).unwrap(), "{sop:?}");
        let mut it = Iterates::new(sys.endo().clone());
        for n in 1..=3 {
            let images: Vec<_> = elems
                .iter()
                .map(|e| it.get(n).unwrap().apply(e).unwrap())
                .collect();
            assert!(sop_check(ring, &images).unwrap(), "{sop:?} at n = {n}");
        }
    }
}
