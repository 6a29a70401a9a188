use super::*;
use crate::dsl::{parse, parse_ideal, parse_polynomial, FixtureFile};
use crate::ideals::local_colength;

const EXAMPLE: &str = "\
field 2
ring R vars y
ring S vars x y w s mod (s^6, y^3 + x^2)
endo phi on R : y -> y^3
endo psi on S : x -> x^3 + s^3, y -> y^3, w -> w^5 + x^2, s -> x*s^2
endo sq on R : y -> y^2
map f : R -> S : y -> y
";

fn fixture(text: &str) -> FixtureFile {
    parse(text).unwrap()
}

fn endo(f: &FixtureFile, name: &str) -> Endomorphism {
    f.endo(name).unwrap().endo.clone()
}

fn system(f: &FixtureFile, name: &str) -> DynamicalSystem {
    DynamicalSystem::new(endo(f, name), &ColengthConfig::default()).unwrap()
}

fn shown(e: &Endomorphism) -> Vec<String> {
    e.images().iter().map(|p| e.ring().fmt_poly(p)).collect()
}

fn setup(
    f: &FixtureFile,
    source_endo: &str,
    target_endo: &str,
    map: &str,
) -> Result<MorphismSetup> {
    MorphismSetup::new(
        system(f, source_endo),
        system(f, target_endo),
        f.map(map).unwrap().images.clone(),
    )
}

#[test]
fn iterates_of_a_power_map() {
    let f = fixture(EXAMPLE);
    let phi = endo(&f, "phi");
    assert_eq!(shown(&phi.iterate(0).unwrap()), ["y"]);
    for n in 1..=4u32 {
        assert_eq!(
            shown(&phi.iterate(n as usize).unwrap()),
            [format!("y^{}", 3u32.pow(n))]
        );
    }
}

#[test]
fn fiber_endomorphism_squared() {
    let f = fixture(
        "field 2\nring F vars x w s mod (s^6, x^2)\nendo pb on F : x -> s^3, w -> w^5, s -> x*s^2\n",
    );
    let pb = endo(&f, "pb");
    let sq = pb.iterate(2).unwrap();
    // x -> (x*s^2)^3 = x^3*s^6 = 0, w -> w^25, s -> s^3*(x*s^2)^2 = 0
    assert_eq!(shown(&sq), ["0", "w^25", "0"]);
}

#[test]
fn iteration_is_additive() {
    let f = fixture(EXAMPLE);
    for name in ["phi", "psi", "sq"] {
        let e = endo(&f, name);
        let mut it = Iterates::new(e.clone());
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                let ea = it.get(a).unwrap().clone();
                let eb = it.get(b).unwrap().clone();
                let lhs = it.get(a + b).unwrap().normalized().unwrap();
                let rhs = ea.compose(&eb).unwrap().normalized().unwrap();
                assert_eq!(lhs, rhs, "{name}: {a} + {b}");
            }
        }
    }
}

#[test]
fn well_definedness() {
    let f = fixture(EXAMPLE);
    endo(&f, "psi").check_well_defined().unwrap();
    let bad = fixture("field 2\nring S vars x y mod (x^2)\nendo e on S : x -> y, y -> y\n");
    match endo(&bad, "e").check_well_defined() {
        Err(Error::ValidationFailed(msg)) => assert!(msg.contains("x^2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn finite_length_checks() {
    let cfg = ColengthConfig::default();
    let f = fixture(EXAMPLE);
    assert_eq!(
        endo(&f, "psi").check_finite_length(&cfg).unwrap(),
        Primality::Yes
    );
    let g = fixture("field 2\nring R vars x y\nendo e on R : x -> x, y -> 0\n");
    assert_eq!(
        endo(&g, "e").check_finite_length(&cfg).unwrap(),
        Primality::No
    );
    assert!(matches!(
        DynamicalSystem::new(endo(&g, "e"), &cfg),
        Err(Error::ValidationFailed(_))
    ));
    let id = Endomorphism::identity(Arc::clone(&f.ring("S").unwrap().presentation));
    assert_eq!(id.check_finite_length(&cfg).unwrap(), Primality::Yes);
    let sys = system(&f, "psi");
    assert!(sys.validated_finite_length());
}

#[test]
fn stable_ideals() {
    let f = fixture("field 2\nring P vars x y w s\nendo psi on P : x -> x^3 + s^3, y -> y^3, w -> w^5 + x^2, s -> x*s^2\n");
    let p = Arc::clone(&f.ring("P").unwrap().presentation);
    let psi = endo(&f, "psi");
    let j = parse_ideal("(s^6, y^3 + x^2)", &p).unwrap();
    assert!(psi.check_stable_ideal(&j).unwrap());
    assert!(psi.check_stable_ideal(&p.maximal_ideal()).unwrap());
    let unstable = parse_ideal("(w)", &p).unwrap();
    assert!(!psi.check_stable_ideal(&unstable).unwrap());
    match psi.induced(&unstable) {
        Err(Error::UnstableIdeal { generator }) => assert_eq!(generator, "w"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn induced_endomorphisms() {
    let f = fixture(EXAMPLE);
    let s = Arc::clone(&f.ring("S").unwrap().presentation);
    let psi = endo(&f, "psi");

    let fiber = psi.induced(&parse_ideal("(y)", &s).unwrap()).unwrap();
    assert_eq!(shown(&fiber), ["s^3", "0", "w^5", "x*s^2"]);

    let same = psi.induced(&s.zero_ideal()).unwrap();
    assert_eq!(
        same.normalized().unwrap().images(),
        psi.normalized().unwrap().images()
    );

    let residue = psi.induced(&s.maximal_ideal()).unwrap();
    assert!(residue.images().iter().all(|p| p.is_zero()));
}

#[test]
fn induction_commutes_with_iteration() {
    let f = fixture(EXAMPLE);
    let s = Arc::clone(&f.ring("S").unwrap().presentation);
    let psi = endo(&f, "psi");
    for j in ["(y)", "(y, w)", "(s^2)"] {
        let j = parse_ideal(j, &s).unwrap();
        if !psi.check_stable_ideal(&j).unwrap() {
            continue;
        }
        let bar = psi.induced(&j).unwrap();
        for n in 0..=3 {
            let a = psi.iterate(n).unwrap().induced(&j).unwrap();
            let b = bar.iterate(n).unwrap().normalized().unwrap();
            assert_eq!(a.normalized().unwrap(), b, "{j} at n = {n}");
        }
    }
}

#[test]
fn example_morphism() {
    let f = fixture(EXAMPLE);
    let m = setup(&f, "phi", "psi", "f").unwrap();
    assert!(m.check_morphism().unwrap());
    assert_eq!((m.dim_source(), m.dim_fiber()), (1, 1));
    let report = m.flatness_advisory(true).unwrap();
    assert_eq!(report.dimension_check, CheckOutcome::Pass);
    assert_eq!(report.pattern_check, CheckOutcome::Pass);
    assert_eq!(report.dim_target, 2);

    let wrong = setup(&f, "sq", "psi", "f").unwrap();
    assert!(!wrong.check_morphism().unwrap());
    assert_eq!(wrong.commutation_defects().unwrap(), [0]);
}

#[test]
fn identity_morphism() {
    let f = fixture("field 2\nring R vars x y\nendo fr on R : x -> x^2, y -> y^2\nmap id : R -> R : x -> x, y -> y\n");
    let m = setup(&f, "fr", "fr", "id").unwrap();
    assert!(m.check_morphism().unwrap());
    let report = m.flatness_advisory(false).unwrap();
    assert_eq!(report.dimension_check, CheckOutcome::Pass);
    assert_eq!(report.pattern_check, CheckOutcome::Pass);
    assert_eq!(m.dim_fiber(), 0);
}

#[test]
fn surjection_onto_crossing_is_not_flat() {
    let f = fixture(
        "field 2\nring A vars x y\nring B vars x y mod (x*y)\n\
         endo fa on A : x -> x^2, y -> y^2\nendo fb on B : x -> x^2, y -> y^2\n\
         map q : A -> B : x -> x, y -> y\n",
    );
    let m = setup(&f, "fa", "fb", "q").unwrap();
    assert!(m.check_morphism().unwrap());
    let report = m.flatness_advisory(false).unwrap();
    assert_eq!(
        (report.dim_source, report.dim_fiber, report.dim_target),
        (2, 0, 1)
    );
    assert_eq!(report.dimension_check, CheckOutcome::Fail);
    assert_eq!(report.pattern_check, CheckOutcome::Fail);
}

#[test]
fn ill_defined_map_is_rejected() {
    let f = fixture(
        "field 2\nring A vars x mod (x^2)\nring B vars t\n\
         endo fa on A : x -> 0\nendo fb on B : t -> t^2\nmap g : A -> B : x -> t\n",
    );
    assert!(matches!(
        setup(&f, "fa", "fb", "g"),
        Err(Error::ValidationFailed(_))
    ));
}

#[test]
fn iterates_keep_finite_colength() {
    let f = fixture(EXAMPLE);
    let cfg = ColengthConfig::default();
    for name in ["phi", "psi"] {
        let sys = system(&f, name);
        let mut it = Iterates::new(sys.endo().clone());
        for n in 1..=3 {
            let j = it.get(n).unwrap().image_ideal().unwrap();
            assert!(local_colength(&j, &cfg).is_ok(), "{name} at n = {n}");
        }
    }
}

#[test]
fn apply_reduces_modulo_the_defining_ideal() {
    let f = fixture(EXAMPLE);
    let s = &f.ring("S").unwrap().presentation;
    let psi = endo(&f, "psi");
    let y3 = parse_polynomial("y^3", s).unwrap();
    // psi(y^3) = y^9 = x^6 modulo y^3 + x^2
    assert_eq!(s.fmt_poly(&psi.apply(&y3).unwrap()), "x^6");
}
