//! End-to-end acceptance checks, one line per criterion.
//!
//! Run with `cargo test -p ellwp-core --test acceptance`. The process exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ellwp_core::freedec::{Diagram, Extension, Placement, BASE};
use ellwp_core::freedec::{decide, Decision};
use ellwp_core::perm::{self, find_witness, random_plmap, LazyConjugator, PLMap, SamplerConfig, Q};
use ellwp_core::present::{
    gdagger_derived, gdagger_schema, hom_refute, ideal_semidecide, random_refute, schema_alphabet, unpair, Assignment,
    Certificate, Family, GodelCodec, Presentation,
};
use ellwp_core::sample::{enumerate_terms, random_term};
use ellwp_core::term::{eval_z2, normalize, MeetString};
use ellwp_core::wreath::{lex_w_decide, sum_factor, w_decide, FreeOracle, GroupOracle, WeightRoute};
use ellwp_core::{parse, Alphabet, Generator, LTerm};

type Outcome = Result<String, String>;

fn gen(name: &str) -> Generator {
    Generator::new(name).unwrap()
}

fn alphabet(list: &str) -> Alphabet {
    Alphabet::parse_list(list).unwrap()
}

fn term(text: &str, gens: &str) -> LTerm {
    parse(text, &alphabet(gens)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn is_identity(t: &LTerm) -> Result<bool, String> {
    decide(t).map(|v| v.is_identity()).map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let terms = enumerate_terms(&[gen("x")], 7);
    let mut mismatches = 0;
    for t in &terms {
        let z = eval_z2(t).map_err(|e| e.to_string())?;
        if is_identity(t)? != (z.m1 == 0 && z.m2 == 0) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches == 0, || format!("{mismatches} of {} terms disagree", terms.len()))?;
    ensure(elapsed.as_secs() < 300, || format!("took {elapsed:?}"))?;
    Ok(format!("{} terms agree with the Z2 oracle in {elapsed:.2?}", terms.len()))
}

fn strict(exts: &[Extension]) -> usize {
    exts.iter().filter(|e| e.placement == Placement::Strict).count()
}

fn branch_counts() -> Outcome {
    let (x, y) = (gen("x"), gen("y"));
    let d = Diagram::new(&[x.clone(), y.clone()]);
    let first = d.extend(BASE, &x, 1);
    ensure(strict(&first) == 2, || format!("first letter: {} strict placements", strict(&first)))?;
    for parent in first.iter().filter(|e| e.placement == Placement::Strict) {
        let second = parent.diagram.extend(parent.image, &y, 1);
        ensure(strict(&second) == 3, || format!("second letter: {} strict placements", strict(&second)))?;
        let repeat = parent.diagram.extend(parent.image, &x, 1);
        ensure(repeat.len() == 1, || format!("repeated letter: {} diagrams", repeat.len()))?;
    }
    Ok("2 first-letter, 3 second-letter, 1 repeated-letter diagram".into())
}

fn identity_suite() -> Outcome {
    let gens = "x,y,z,t";
    let identities = [
        "x (y /\\ z) t ((x y t) /\\ (x z t))^-1",
        "x (y \\/ z) t ((x y t) \\/ (x z t))^-1",
        "(x \\/ y) ((x^-1 /\\ y^-1)^-1)^-1",
        "(x /\\ (y \\/ z)) ((x /\\ y) \\/ (x /\\ z))^-1",
        "(x \\/ (y /\\ z)) ((x \\/ y) /\\ (x \\/ z))^-1",
        "((x /\\ y) \\/ (x /\\ z) \\/ (y /\\ z)) ((x \\/ y) /\\ (x \\/ z) /\\ (y \\/ z))^-1",
        "x ((x \\/ e) (x /\\ e))^-1",
        "(x \\/ e) /\\ (x^-1 \\/ e)",
    ];
    for s in identities {
        ensure(is_identity(&term(s, gens))?, || format!("{s} should be the identity"))?;
    }
    for s in ["abs(x)", "comm(x, y)"] {
        ensure(!is_identity(&term(s, gens))?, || format!("{s} should not be the identity"))?;
    }
    Ok(format!("{} identities and 2 non-identities decided exactly", identities.len()))
}

fn refuter_soundness() -> Outcome {
    let gens = [gen("x"), gen("y")];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut witnessed, mut identities) = (0, 0);
    for _ in 0..200 {
        let t = random_term(&mut rng, &gens, 8);
        let identity = is_identity(&t)?;
        identities += identity as usize;
        if let Some(w) = find_witness(&t, 1000, 11) {
            witnessed += 1;
            ensure(!identity, || format!("witness for the identity {t}"))?;
            ensure(w.point != w.image, || format!("witness for {t} fixes its point"))?;
        }
    }
    Ok(format!("{witnessed} witnesses, {identities} identities, no conflicts"))
}

fn conjugator_fixture() -> Outcome {
    let f = PLMap::from_ints(&[(0, 0), (1, 3), (4, 4)]);
    let g = PLMap::from_ints(&[(10, 10), (12, 13), (14, 14)]);
    let (alpha, beta) = (perm::q(1), perm::q(11));
    let h = LazyConjugator::new(&f, &g, alpha.clone(), beta.clone(), None).map_err(|e| e.to_string())?;
    let at = |x: &Q| h.apply(x).map_err(|e| e.to_string());
    ensure(at(&alpha)? == beta, || "alpha does not go to beta".into())?;
    ensure(at(&f.apply(&alpha))? == g.apply(&beta), || "alpha f does not go to beta g".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let den: i64 = rng.gen_range(1..=1000);
        let num: i64 = rng.gen_range(1..4 * den);
        let x = perm::ratio(num, den);
        // h⁻¹ f h = g at x·h, i.e. (x f) h = (x h) g.
        ensure(at(&f.apply(&x))? == g.apply(&at(&x)?), || format!("conjugacy fails at {x}"))?;
    }
    Ok("h conjugates f to g at 1000 points; anchors transported".into())
}

fn support_transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = SamplerConfig::default();
    for _ in 0..100 {
        let f = random_plmap(&mut rng, &cfg);
        let g = random_plmap(&mut rng, &cfg);
        let got: Vec<(Q, Q)> = f.conjugate_by(&g).supports().into_iter().map(|b| (b.lo, b.hi)).collect();
        let want: Vec<(Q, Q)> = f.supports().into_iter().map(|b| (g.apply(&b.lo), g.apply(&b.hi))).collect();
        ensure(got == want, || format!("supports differ for f = {f}, g = {g}"))?;
    }
    Ok("supports of f*g equal supp(f)g on 100 pairs".into())
}

/// A random term with at most `letters` generator occurrences.
fn random_lettered<R: Rng>(rng: &mut R, gens: &[Generator], letters: usize) -> LTerm {
    let t = if letters <= 1 {
        LTerm::gen(&gens[rng.gen_range(0..gens.len())])
    } else {
        let left = rng.gen_range(1..letters);
        let a = random_lettered(rng, gens, left);
        let right = rng.gen_range(1..=letters - left);
        let b = random_lettered(rng, gens, right);
        match rng.gen_range(0..3) {
            0 => LTerm::product([a, b]),
            1 => LTerm::join([a, b]),
            _ => LTerm::meet([a, b]),
        }
    };
    if rng.gen_ratio(1, 4) {
        LTerm::inv(t)
    } else {
        t
    }
}

fn wreath_equivalence() -> Outcome {
    let (g, c) = (gen("g"), gen("c"));
    let base = || FreeOracle::new(alphabet("g"));
    let route = WeightRoute::new(base(), c.clone()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut identities = 0;
    for _ in 0..500 {
        let t = random_lettered(&mut rng, &[g.clone(), c.clone()], 10);
        let direct = w_decide(&t, base(), &c).map_err(|e| e.to_string())?.decision == Decision::EqualsIdentity;
        let weights = route.is_identity(&t).map_err(|e| e.to_string())?;
        ensure(direct == weights, || format!("routes disagree on {t}"))?;
        identities += direct as usize;
    }

    // c ∧ 1 = 1 and g*cᵐ ⊥ g for m ≠ 0 in G ≀ ℤ.
    let wz = |s: &str| -> Result<bool, String> {
        Ok(w_decide(&term(s, "g,c"), base(), &c).map_err(|e| e.to_string())?.decision == Decision::EqualsIdentity)
    };
    ensure(wz("c /\\ e")?, || "c /\\ e is not the identity".into())?;
    for m in [-3, -1, 1, 2, 4] {
        let s = format!("abs(conj(g, c^{m})) /\\ abs(g)");
        ensure(wz(&s)?, || format!("{s} is not the identity"))?;
    }
    ensure(!wz("abs(conj(g, c^2)) /\\ abs(conj(g, c^2))")?, || "orthogonality is vacuous".into())?;
    // a0*c1ᵐ ⊥ a0 for m ≠ 0 in the lexicographic tower.
    let (a0, c1) = (gen("a0"), gen("c1"));
    for m in [-2, -1, 1, 3] {
        let s = format!("abs(conj(a0, c1^{m})) /\\ abs(a0)");
        let v = lex_w_decide(&term(&s, "g,a0,c1"), base(), &a0, &c1).map_err(|e| e.to_string())?;
        ensure(v.decision == Decision::EqualsIdentity, || format!("{s} is not the identity"))?;
    }

    // g_{x,1} g_{x',2}⁻¹ ∧ g_{x,3} = (g_{x,1} ∧ g_{x,3})(g_{x',2}⁻¹ ∧ 1).
    let gens = "g1,g2,g3";
    let t = term("g1 g2^-1 /\\ g3", gens);
    let partition = BTreeMap::from([(gen("g1"), "x"), (gen("g2"), "x'"), (gen("g3"), "x")]);
    let factors = sum_factor(&t, &partition).map_err(|e| e.to_string())?;
    let ours = LTerm::product(factors.values().cloned()).to_string();
    let canonical = |s: &str| normalize(&term(s, gens)).to_term();
    let expected = LTerm::product([canonical("g1 /\\ g3"), canonical("g2^-1 /\\ e")]).to_string();
    ensure(ours == expected, || format!("factorization prints as {ours}, expected {expected}"))?;
    // Equal in the cardinal sum: every summand of the quotient is trivial.
    let quotient = LTerm::product([t, LTerm::inv(term(&ours, gens))]);
    for (k, f) in sum_factor(&quotient, &partition).map_err(|e| e.to_string())? {
        ensure(is_identity(&f)?, || format!("factorization differs in summand {k}"))?;
    }
    Ok(format!(
        "500 terms agree ({identities} identities); relations verified; {ours}"
    ))
}

fn presentation_toolkit() -> Outcome {
    let err = |e: ellwp_core::present::PresentError| e.to_string();
    let one = Presentation::parse("x", &["abs(x)"]).map_err(err)?;
    let x = term("x", "x");
    let c = ideal_semidecide(&one, &x, 100).map_err(err)?;
    ensure(matches!(c, Certificate::Proved(_)), || format!("x = 1 not proved: {c}"))?;
    ensure(c.verify(&one, &x).map_err(err)?, || "proof does not verify".into())?;

    let two = Presentation::parse("x,y", &["abs(x)"]).map_err(err)?;
    let y = term("y", "x,y");
    let bump = PLMap::from_ints(&[(0, 0), (1, 2), (4, 4)]);
    let a = Assignment::Perm(BTreeMap::from([(gen("x"), PLMap::identity()), (gen("y"), bump)]));
    let c = hom_refute(&two, &y, a).map_err(err)?;
    ensure(c.kind() == "refuted", || format!("y = 1 not refuted: {c}"))?;

    let cases = [
        (&one, "x"),
        (&one, "x \\/ e"),
        (&one, "e"),
        (&two, "y"),
        (&two, "y /\\ e"),
        (&two, "x y x^-1"),
        (&two, "comm(x, y)"),
    ];
    let (mut proved, mut refuted) = (0, 0);
    for (p, s) in cases {
        let w = parse(s, &p.generators).map_err(|e| e.to_string())?;
        let a = ideal_semidecide(p, &w, 40).map_err(err)?;
        let b = random_refute(p, &w, 200, 3).map_err(err)?;
        ensure(!(a.is_definitive() && b.is_definitive()), || format!("both fire on {s}"))?;
        proved += a.is_definitive() as usize;
        refuted += b.is_definitive() as usize;
    }

    let (g_alphabet, pairs, images) = schema_model();
    let schema = gdagger_schema(&g_alphabet, &pairs, 2, 2).map_err(err)?;
    let families: BTreeSet<Family> = schema.iter().map(|r| r.family).collect();
    let all = [Family::Dominated, Family::OrthogonalToBase, Family::MutuallyOrthogonal, Family::Conjugacy];
    ensure(all.iter().all(|f| families.contains(f)), || "a relator family is missing".into())?;
    let full = schema_alphabet(&g_alphabet, 2).map_err(err)?;
    let p = Presentation::new(full, schema.iter().map(|r| r.relator.clone()).collect()).map_err(err)?;
    let derived = gdagger_derived(2);
    for r in &derived {
        let c = hom_refute(&p, &r.relator, Assignment::Perm(images.clone())).map_err(err)?;
        ensure(c.kind() == "unknown", || format!("{r} fails in the model"))?;
    }
    Ok(format!(
        "proved x, refuted y; {proved} proofs and {refuted} refutations never overlap; {} schema relators and {} derived relations hold in a PL model",
        schema.len(),
        derived.len()
    ))
}

/// PL maps of ℚ satisfying the schema at `m_max = k_max = 2` with
/// `G = ⟨g, h⟩`, `h = g*s0` and pairs `(g, h)`, `(h, g)`.
fn schema_model() -> (Alphabet, Vec<(LTerm, LTerm)>, BTreeMap<Generator, PLMap>) {
    let r = |s: &str| perm::parse_rational(s).unwrap();
    let pl = |pts: &[(&str, &str)]| PLMap::new(pts.iter().map(|(x, y)| (r(x), r(y))).collect()).unwrap();
    let c1 = PLMap::from_ints(&[(0, 0), (5, 15), (80, 90), (100, 100)]);
    let a0 = PLMap::from_ints(&[(10, 10), (11, 12), (15, 15)]);
    let s0 = pl(&[("221/20", "221/20"), ("111/10", "23/2"), ("57/5", "59/5"), ("239/20", "239/20")]);
    let g = pl(&[("111/10", "111/10"), ("56/5", "113/10"), ("57/5", "57/5")]);
    let h = g.conjugate_by(&s0);
    let s1 = s0.inverse().conjugate_by(&c1);
    let gens = alphabet("g,h");
    let pairs = vec![(term("g", "g,h"), term("h", "g,h")), (term("h", "g,h"), term("g", "g,h"))];
    let images = BTreeMap::from([
        (gen("g"), g),
        (gen("h"), h),
        (gen("a0"), a0),
        (gen("c1"), c1),
        (gen("s0"), s0),
        (gen("s1"), s1),
    ]);
    (gens, pairs, images)
}

fn numbering() -> Outcome {
    let codec = GodelCodec::new(&alphabet("x,y")).map_err(|e| e.to_string())?;
    let mut strings = BTreeSet::new();
    for n in 0u32..10_000 {
        let n = BigUint::from(n);
        let s: MeetString = codec.decode(&n);
        let (pad, _) = unpair(&n);
        let back = codec.encode_padded(&s, &pad).map_err(|e| e.to_string())?;
        ensure(back == n, || format!("index {n} re-encodes as {back}"))?;
        let other = codec.encode_padded(&s, &(pad + 1u32)).map_err(|e| e.to_string())?;
        ensure(other != n && codec.decode(&other) == s, || format!("{s} has a single index"))?;
        strings.insert(s);
    }
    Ok(format!("10000 indices round-trip; {} meet strings each have 2+ indices", strings.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("branch counts", branch_counts),
        ("identity suite", identity_suite),
        ("refuter soundness", refuter_soundness),
        ("conjugator", conjugator_fixture),
        ("support transport", support_transport),
        ("wreath equivalence", wreath_equivalence),
        ("presentation toolkit", presentation_toolkit),
        ("numbering", numbering),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
