use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::perm::{q, ratio, PLMap, Q};
use crate::term::{Generator, Z2Element};
use crate::wreath::WreathElement;

fn gen(name: &str) -> Generator {
    Generator::new(name).unwrap()
}

fn term(p: &Presentation, s: &str) -> LTerm {
    parse(s, &p.generators).unwrap()
}

fn bump() -> PLMap {
    PLMap::from_ints(&[(0, 0), (1, 2), (4, 4)])
}

#[test]
fn relator_dominates_itself() {
    let p = Presentation::parse("x", &["abs(x)"]).unwrap();
    let w = term(&p, "x");
    let c = ideal_semidecide(&p, &w, 100).unwrap();
    assert_eq!(c.kind(), "proved");
    assert!(c.verify(&p, &w).unwrap());
}

#[test]
fn commutator_with_a_killed_generator() {
    let p = Presentation::parse("x,y", &["abs(x)"]).unwrap();
    let w = term(&p, "comm(x, y)");
    let c = ideal_semidecide(&p, &w, 500).unwrap();
    let Certificate::Proved(proof) = &c else {
        panic!("expected a proof, got {c}");
    };
    assert!(!proof.conjugators.is_empty());
    // Independent re-check of the inequality by the decision procedure.
    let q = LTerm::product([LTerm::abs(w.clone()), LTerm::inv(proof.bound.clone())]);
    assert!(crate::freedec::is_leq_identity(&q).unwrap());
    assert!(c.verify(&p, &w).unwrap());
}

#[test]
fn surviving_generator_is_refuted_not_proved() {
    let p = Presentation::parse("x,y", &["abs(x)"]).unwrap();
    let w = term(&p, "y");
    assert_eq!(ideal_semidecide(&p, &w, 40).unwrap().kind(), "unknown");
    let a = Assignment::Perm(BTreeMap::from([(gen("x"), PLMap::identity()), (gen("y"), bump())]));
    let c = hom_refute(&p, &w, a).unwrap();
    assert_eq!(c.kind(), "refuted");
    assert!(c.verify(&p, &w).unwrap());
}

#[test]
fn hom_refute_contract() {
    let p = Presentation::parse("x,y", &["abs(x)"]).unwrap();
    let a = Assignment::Perm(BTreeMap::from([(gen("x"), PLMap::identity()), (gen("y"), bump())]));
    assert_eq!(hom_refute(&p, &LTerm::Identity, a).unwrap().kind(), "unknown");
    let bad = Assignment::Perm(BTreeMap::from([(gen("x"), bump()), (gen("y"), bump())]));
    assert!(matches!(
        hom_refute(&p, &term(&p, "y"), bad),
        Err(PresentError::InvalidAssignment { .. })
    ));
    let partial = Assignment::Perm(BTreeMap::from([(gen("x"), PLMap::identity())]));
    assert_eq!(
        hom_refute(&p, &term(&p, "y"), partial).unwrap_err(),
        PresentError::UnassignedGenerator("y".into())
    );
}

#[test]
fn other_targets() {
    let free = Presentation::parse("x", &[]).unwrap();
    let w = term(&free, "x");
    let c = hom_refute(&free, &w, Assignment::Z2(BTreeMap::from([(gen("x"), Z2Element::GENERATOR)]))).unwrap();
    assert_eq!(c.kind(), "refuted");
    assert!(c.verify(&free, &w).unwrap());

    let p = Presentation::parse("x,y", &["x y^-1"]).unwrap();
    let w = term(&p, "x /\\ e");
    let a = Assignment::Cardinal {
        rank: 2,
        images: BTreeMap::from([(gen("x"), vec![1, -1]), (gen("y"), vec![1, -1])]),
    };
    let c = hom_refute(&p, &w, a).unwrap();
    assert_eq!(c.kind(), "refuted");

    let shift = WreathElement::shift(1);
    let a = Assignment::Wreath {
        base: Alphabet::parse_list("g").unwrap(),
        shift: gen("c"),
        images: BTreeMap::from([(gen("x"), shift.clone()), (gen("y"), shift)]),
    };
    let c = hom_refute(&p, &term(&p, "x"), a).unwrap();
    assert_eq!(c.kind(), "refuted");
    assert!(c.verify(&p, &term(&p, "x")).unwrap());
}

/// Cases with a prover budget each; candidates grow expensive quickly once
/// the relator is a commutator.
fn suite() -> Vec<(Presentation, &'static str, u64)> {
    let one = Presentation::parse("x", &["abs(x)"]).unwrap();
    let two = Presentation::parse("x,y", &["abs(x)"]).unwrap();
    let comm = Presentation::parse("x,y", &["comm(x, y)"]).unwrap();
    let free = Presentation::parse("x,y", &[]).unwrap();
    vec![
        (one.clone(), "x", 120),
        (one.clone(), "x \\/ e", 120),
        (one, "e", 120),
        (two.clone(), "comm(x, y)", 120),
        (two.clone(), "y", 120),
        (two.clone(), "x y x^-1", 80),
        (two, "y /\\ e", 80),
        (comm.clone(), "x y x^-1 y^-1", 120),
        (comm, "x", 15),
        (free.clone(), "(x \\/ e) (x /\\ e) x^-1", 120),
        (free, "comm(x, y)", 120),
    ]
}

#[test]
fn prover_and_refuter_never_both_succeed() {
    let mut proved = 0;
    let mut refuted = 0;
    for (p, s, budget) in suite() {
        let w = term(&p, s);
        let a = ideal_semidecide(&p, &w, budget).unwrap();
        let b = random_refute(&p, &w, 300, 7).unwrap();
        assert!(!(a.is_definitive() && b.is_definitive()), "{s}");
        assert!(a.verify(&p, &w).unwrap() && b.verify(&p, &w).unwrap(), "{s}");
        proved += a.is_definitive() as usize;
        refuted += b.is_definitive() as usize;
        // solve alternates, so the prover gets every other step.
        let c = solve(&p, &w, 2 * budget, 7).unwrap();
        assert!(c.verify(&p, &w).unwrap());
        if a.is_definitive() {
            assert_eq!(c.kind(), "proved", "{s}");
        }
        if !c.is_definitive() {
            assert!(!a.is_definitive() && !b.is_definitive(), "{s}");
        }
    }
    assert!(proved >= 4 && refuted >= 4, "{proved} {refuted}");
}

#[test]
fn budgets_must_be_positive() {
    let p = Presentation::parse("x", &["abs(x)"]).unwrap();
    let w = term(&p, "x");
    assert_eq!(ideal_semidecide(&p, &w, 0).unwrap_err(), PresentError::ZeroBudget);
    assert_eq!(solve(&p, &w, 0, 1).unwrap_err(), PresentError::ZeroBudget);
}

#[test]
fn presentation_json() {
    let p = Presentation::from_json(r#"{"generators": ["x", "y"], "relators": ["abs(x)", "x y x^-1 y^-1"]}"#).unwrap();
    assert_eq!(p.relators.len(), 2);
    let again = Presentation::from_json(&p.to_json().to_string()).unwrap();
    assert_eq!(again, p);
    assert!(Presentation::from_json(r#"{"generators": ["x"], "relators": ["y"]}"#).is_err());
    assert!(matches!(Presentation::from_json("[]"), Err(PresentError::Format(_))));
}

fn pairs(gens: &Alphabet, texts: &[(&str, &str)]) -> Vec<(LTerm, LTerm)> {
    texts
        .iter()
        .map(|(u, v)| (parse(u, gens).unwrap(), parse(v, gens).unwrap()))
        .collect()
}

#[test]
fn schema_shape() {
    let g = Alphabet::parse_list("g").unwrap();
    let ps = pairs(&g, &[("g", "g^2"), ("g^2", "g")]);
    let small = gdagger_schema(&g, &ps, 1, 1).unwrap();
    let full = schema_alphabet(&g, 1).unwrap();
    let conj = small.iter().find(|r| r.family == Family::Conjugacy).unwrap();
    let expected = parse("abs(conj(g, s0) (g^2)^-1)", &full).unwrap();
    assert!(normalize_eq(&conj.relator, &expected));
    let dominated = small.iter().find(|r| r.family == Family::Dominated).unwrap();
    assert!(normalize_eq(&dominated.relator, &parse("(abs(s0) a0^-1) \\/ e", &full).unwrap()));
    assert!(small.iter().all(|r| r.relator.is_over(&full)));

    // Larger truncations contain smaller ones.
    let set = |m, k| -> BTreeSet<String> {
        gdagger_schema(&g, &ps, m, k).unwrap().iter().map(|r| r.relator.to_string()).collect()
    };
    assert!(set(1, 1).is_subset(&set(1, 2)));
    assert!(set(1, 2).is_subset(&set(2, 2)));
    assert!(set(2, 1).is_subset(&set(2, 3)));

    assert_eq!(gdagger_schema(&g, &ps, 0, 1).unwrap_err(), PresentError::EmptySchema);
    assert_eq!(gdagger_schema(&g, &ps, 1, 0).unwrap_err(), PresentError::EmptySchema);
    assert!(matches!(gdagger_schema(&g, &ps, 3, 1), Err(PresentError::TooFewPairs { .. })));
    let clash = Alphabet::parse_list("a0").unwrap();
    assert!(matches!(
        gdagger_schema(&clash, &pairs(&clash, &[("a0", "a0")]), 1, 1),
        Err(PresentError::ReservedGenerator(_))
    ));
}

fn normalize_eq(a: &LTerm, b: &LTerm) -> bool {
    crate::term::normalize(a) == crate::term::normalize(b)
}

fn dec(s: &str) -> Q {
    parse_rational(s)
}

fn parse_rational(s: &str) -> Q {
    crate::perm::parse_rational(s).unwrap()
}

/// Concrete PL maps satisfying the schema at `m_max = 2`, `k_max = 2`.
pub(crate) fn schema_model() -> (Alphabet, Vec<(LTerm, LTerm)>, BTreeMap<Generator, PLMap>) {
    let pl = |pts: &[(&str, &str)]| PLMap::new(pts.iter().map(|(x, y)| (dec(x), dec(y))).collect()).unwrap();
    let c1 = PLMap::from_ints(&[(0, 0), (5, 15), (80, 90), (100, 100)]);
    let a0 = PLMap::from_ints(&[(10, 10), (11, 12), (15, 15)]);
    let s0 = pl(&[("221/20", "221/20"), ("111/10", "23/2"), ("57/5", "59/5"), ("239/20", "239/20")]);
    let g = pl(&[("111/10", "111/10"), ("56/5", "113/10"), ("57/5", "57/5")]);
    let h = g.conjugate_by(&s0);
    let s1 = s0.inverse().conjugate_by(&c1);
    let alphabet = Alphabet::parse_list("g,h").unwrap();
    let ps = pairs(&alphabet, &[("g", "h"), ("h", "g")]);
    let images = BTreeMap::from([
        (gen("g"), g),
        (gen("h"), h),
        (gen("a0"), a0),
        (gen("c1"), c1),
        (gen("s0"), s0),
        (gen("s1"), s1),
    ]);
    (alphabet, ps, images)
}

#[test]
fn schema_holds_in_a_pl_model_and_implies_derived_orthogonality() {
    let (alphabet, ps, images) = schema_model();
    let schema = gdagger_schema(&alphabet, &ps, 2, 2).unwrap();
    let families: BTreeSet<Family> = schema.iter().map(|r| r.family).collect();
    assert_eq!(families.len(), 4);
    let full = schema_alphabet(&alphabet, 2).unwrap();
    let p = Presentation::new(full, schema.iter().map(|r| r.relator.clone()).collect()).unwrap();
    for r in &schema {
        let v = crate::perm::eval_map(&r.relator, &images).unwrap();
        assert!(v.is_identity(), "{r}");
    }
    for r in gdagger_derived(2) {
        let c = hom_refute(&p, &r.relator, Assignment::Perm(images.clone())).unwrap();
        assert_eq!(c.kind(), "unknown", "{r}");
    }
    // The model is not trivial: s0 and a0 are not orthogonal.
    let not_orth = parse("abs(s0) /\\ abs(a0)", &p.generators).unwrap();
    let c = hom_refute(&p, &not_orth, Assignment::Perm(images)).unwrap();
    assert_eq!(c.kind(), "refuted");
    let _ = (q(0), ratio(1, 2));
}
