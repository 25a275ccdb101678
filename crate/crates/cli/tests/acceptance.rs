//! Acceptance gate: ten end-to-end criteria, one test per criterion.
//! Each test prints a single PASS line (visible with `--nocapture`) and
//! enforces its wall-clock budget.

use std::process::Command as Proc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use strata_core::complex::FreeComplex;
use strata_core::dg::{AlgElt, DGAlgebra, DGGen, DGModule};
use strata_core::groebner::Budget;
use strata_core::oracle::{
    brute_radical_member, random_poly, random_tensor_complex, support_crosscheck, BruteAnswer,
    PointGrid,
};
use strata_core::poly::Poly;
use strata_core::ring::{Ideal, PresentedRing};
use strata_core::scalar::{Coeff, FieldKind};
use strata_core::strata::{
    builds, reduction_builds_check, reduction_supp_check, reverify_containment, supp_contains,
    support_of, support_of_complex, tensor_support_check, Answer, SupportIdeal, Verdict,
};
use strata_core::tate::coreduction_restricted;

type Q = BigRational;

fn pass(criterion: usize, started: Instant, limit_secs: u64, summary: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "criterion {criterion} exceeded its {limit_secs}s budget: {elapsed:?}"
    );
    println!("criterion {criterion}: PASS ({elapsed:.2?} < {limit_secs}s) — {summary}");
}

fn qring(vars: &[&str], rels: &[&str]) -> Arc<PresentedRing<Q>> {
    let plain = PresentedRing::<Q>::polynomial(
        FieldKind::Rationals,
        vars.iter().map(|v| v.to_string()).collect(),
    )
    .unwrap();
    if rels.is_empty() {
        return plain;
    }
    let rels: Vec<Poly<Q>> = rels.iter().map(|r| plain.parse(r).unwrap()).collect();
    PresentedRing::quotient(&plain, rels).unwrap()
}

fn koszul_algebra(ring: &Arc<PresentedRing<Q>>, elems: &[&str]) -> Arc<DGAlgebra<Q>> {
    let polys: Vec<Poly<Q>> = elems.iter().map(|e| ring.parse(e).unwrap()).collect();
    let names = (1..=polys.len()).map(|i| format!("e{i}")).collect();
    DGAlgebra::koszul(ring.clone(), names, polys).unwrap()
}

/// Five Koszul DG-algebras, three of them on non-regular sequences
/// (dual numbers, the fat point, and a dependent pair over the plane).
fn algebra_suite() -> Vec<(Arc<DGAlgebra<Q>>, Vec<&'static str>)> {
    vec![
        (koszul_algebra(&qring(&["x"], &[]), &["x"]), vec!["x"]),
        (koszul_algebra(&qring(&["x"], &["x^2"]), &["x"]), vec!["x"]),
        (
            koszul_algebra(&qring(&["x", "y"], &["x^2", "x*y", "y^2"]), &["x", "y"]),
            vec!["x", "y"],
        ),
        (koszul_algebra(&qring(&["x", "y"], &["x*y"]), &["x"]), vec!["x"]),
        (koszul_algebra(&qring(&["x", "y"], &[]), &["x", "x*y"]), vec!["x", "x*y"]),
    ]
}

/// A polynomial with zero constant term, so Koszul-type quotients stay nonzero.
fn proper_elem(base: &Arc<PresentedRing<Q>>, rng: &mut ChaCha8Rng) -> Poly<Q> {
    let v = Poly::var(base.nvars(), rng.gen_range(0..base.nvars()));
    base.nf(&random_poly(base, rng, 1, 2).mul(&v).add(&v))
}

/// A seeded random finite-amplitude module over one of the suite algebras.
fn random_module(rng: &mut ChaCha8Rng, suite: &[(Arc<DGAlgebra<Q>>, Vec<&'static str>)]) -> DGModule<Q> {
    let (alg, _) = &suite[rng.gen_range(0..suite.len())];
    let base = alg.base().clone();
    let m = match rng.gen_range(0..3) {
        0 => DGModule::free(alg.clone(), rng.gen_range(-1..=1)),
        1 => DGModule::koszul(alg.clone(), &[proper_elem(&base, rng)]).unwrap(),
        _ => {
            let elems = [proper_elem(&base, rng), proper_elem(&base, rng)];
            DGModule::koszul(alg.clone(), &elems).unwrap()
        }
    };
    match rng.gen_range(0..4) {
        0 => m.shift(rng.gen_range(-2..=2)),
        1 => m.direct_sum(&DGModule::free(alg.clone(), 0)),
        2 => m.tensor(&DGModule::koszul(alg.clone(), &[proper_elem(&base, rng)]).unwrap()),
        _ => m,
    }
}

fn run_shipped_session(name: &str) -> std::process::ExitStatus {
    let session = format!("{}/../../sessions/{name}", env!("CARGO_MANIFEST_DIR"));
    // capture the runner's stdout so it doesn't interleave with harness output
    Proc::new(env!("CARGO_BIN_EXE_strata"))
        .args(["run", &session])
        .output()
        .expect("session binary runs")
        .status
}

#[test]
fn criterion_01_koszul_support_equals_h0_support() {
    let started = Instant::now();
    let budget = &mut Budget::standard();
    let suite = algebra_suite();
    assert!(suite.len() >= 5);
    for (alg, _) in &suite {
        let m = DGModule::free(alg.clone(), 0);
        let supp_a = support_of(&m, budget).unwrap();
        let supp_h = support_of_complex(&m.reduce_to_h0().unwrap(), budget).unwrap();
        // mutual radical containment, each direction a certified verdict
        let fwd = supp_contains(&supp_a, &supp_h, budget).unwrap();
        let bwd = supp_contains(&supp_h, &supp_a, budget).unwrap();
        assert_eq!(fwd.answer, Answer::Yes);
        assert_eq!(bwd.answer, Answer::Yes);
        assert!(reduction_supp_check(&m, budget).unwrap().equal);
    }
    pass(1, started, 10, "support(A) = support(H⁰A) on 5 Koszul DG-algebras");
}

#[test]
fn criterion_02_reduction_is_conservative() {
    let started = Instant::now();
    let suite = algebra_suite();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let (mut acyclic, mut non_acyclic) = (0usize, 0usize);
    for i in 0..50 {
        let budget = &mut Budget::standard();
        let mut m = random_module(&mut rng, &suite);
        if i < 10 {
            // deliberately contractible: the cone on an identity map
            let one = m.algebra().base().one();
            m = m.cone_scalar(&one);
        } else if i < 20 {
            // deliberately non-acyclic: a free summand survives reduction
            m = m.direct_sum(&DGModule::free(m.algebra().clone(), 0));
        }
        let dg_side = m.is_acyclic(budget).unwrap();
        let reduced_side = m
            .reduce_to_h0()
            .unwrap()
            .cohomology_table(budget)
            .unwrap()
            .nonzero_degrees(budget)
            .unwrap()
            .is_empty();
        assert_eq!(dg_side, reduced_side, "conservativity failed on instance {i}");
        if dg_side {
            acyclic += 1;
        } else {
            non_acyclic += 1;
        }
    }
    assert!(acyclic >= 10, "only {acyclic} acyclic instances");
    assert!(non_acyclic >= 10, "only {non_acyclic} non-acyclic instances");
    assert!(run_shipped_session("conservativity.strata").success());
    pass(
        2,
        started,
        60,
        &format!("50 random modules agree on both routes ({acyclic} acyclic, {non_acyclic} not), shipped session ok"),
    );
}

#[test]
fn criterion_03_tensor_support_law() {
    let started = Instant::now();
    let budget = &mut Budget::standard();
    let a1 = koszul_algebra(&qring(&["x", "y"], &[]), &["x*y"]);
    let a2 = koszul_algebra(&qring(&["x", "y"], &["x^2", "x*y", "y^2"]), &["x", "y"]);
    let a3 = koszul_algebra(&qring(&["x"], &["x^3"]), &["x^2"]);
    let a4 = koszul_algebra(&qring(&["x", "y", "z"], &[]), &["x*z"]);
    let kz = |a: &Arc<DGAlgebra<Q>>, e: &str| {
        DGModule::koszul(a.clone(), &[a.base().parse(e).unwrap()]).unwrap()
    };
    let free = |a: &Arc<DGAlgebra<Q>>| DGModule::free(a.clone(), 0);
    let pairs = vec![
        (kz(&a1, "x"), kz(&a1, "y")),
        (kz(&a1, "x"), kz(&a1, "x")),
        (kz(&a1, "x"), free(&a1)),
        (kz(&a1, "x + y"), kz(&a1, "y")),
        (kz(&a2, "x"), kz(&a2, "y")),
        (kz(&a2, "x + y"), free(&a2)),
        (kz(&a3, "x"), kz(&a3, "x^2")),
        (kz(&a3, "x"), free(&a3)),
        (kz(&a4, "x"), kz(&a4, "z")),
        (kz(&a4, "x"), kz(&a4, "y")),
        (kz(&a4, "x*y"), kz(&a4, "z")),
        (free(&a4), free(&a4)),
    ];
    assert!(pairs.len() >= 10);
    for (m, n) in &pairs {
        let cmp = tensor_support_check(m, n, budget).unwrap();
        assert!(cmp.equal, "tensor-support law failed for a pair");
    }
    pass(3, started, 60, "supp(M⊗N) = supp M ∩ supp N on 12 pairs over 4 algebras");
}

fn two_route_instances<K: Coeff>(field: FieldKind, base_seed: u64) {
    let ring = PresentedRing::<K>::polynomial(
        field,
        vec!["x".to_string(), "y".to_string()],
    )
    .unwrap();
    for i in 0..50u64 {
        let budget = &mut Budget::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed + i);
        let x = random_tensor_complex(&ring, &mut rng, 2, 2);
        let supp = support_of_complex(&x, budget).unwrap();
        let grid = PointGrid::standard(ring.clone(), base_seed ^ i, 10);
        assert!(grid.len() >= 25, "grid has only {} points", grid.len());
        let rep = support_crosscheck(&x, &supp, &grid);
        assert!(rep.agree, "routes disagree on instance {i}: {:?}", rep.mismatches);
        assert!(rep.points_checked >= 25);
    }
}

#[test]
fn criterion_04_fitting_route_matches_point_sampling() {
    let started = Instant::now();
    two_route_instances::<Q>(FieldKind::Rationals, 0xC4_000);
    two_route_instances::<strata_core::Fp>(FieldKind::Prime(7), 0xC4_700);
    pass(
        4,
        started,
        120,
        "Fitting supports match fiber sampling at ≥25 points on 100 random complexes (ℚ and 𝔽₇)",
    );
}

#[test]
fn criterion_05_builds_matches_reduced_side() {
    let started = Instant::now();
    let suite = algebra_suite();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    let mut checked = 0;
    while checked < 20 {
        let budget = &mut Budget::standard();
        let m = random_module(&mut rng, &suite);
        // the pair must share an algebra; rebuild n over m's algebra
        let pick = &suite
            .iter()
            .find(|(a, _)| Arc::ptr_eq(a, m.algebra()))
            .unwrap()
            .0;
        let n = match rng.gen_range(0..3) {
            0 => DGModule::free(pick.clone(), 0),
            1 => m.shift(1),
            _ => m.tensor(&DGModule::free(pick.clone(), -1)),
        };
        let rep = reduction_builds_check(&m, &n, budget).unwrap();
        assert!(rep.agree, "algebra-side and reduced-side verdicts disagree");
        checked += 1;
    }
    pass(5, started, 60, "A-side builds verdict equals the H⁰A-side verdict on 20 pairs");
}

#[test]
fn criterion_06_koszul_base_change_matrices() {
    let started = Instant::now();
    let suite = algebra_suite();
    assert!(suite.len() >= 5);
    for (alg, elems) in &suite {
        let base = alg.base();
        let polys: Vec<Poly<Q>> = elems.iter().map(|e| base.parse(e).unwrap()).collect();
        let m = DGModule::koszul(alg.clone(), &polys).unwrap();
        let left = m.reduce_to_h0().unwrap();
        let h0 = alg.h0().unwrap();
        let images: Vec<Poly<Q>> = polys.iter().map(|p| h0.nf(p)).collect();
        let right = FreeComplex::koszul(h0.clone(), &images).unwrap();
        assert_eq!(left.ranks(), right.ranks());
        if let Some((lo, hi)) = left.degree_range() {
            for d in lo..hi {
                let (a, b) = (left.diff(d), right.diff(d));
                assert_eq!(a.rows(), b.rows());
                assert_eq!(a.cols(), b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        assert!(
                            h0.eq_elts(a.get(i, j), b.get(i, j)),
                            "matrix entry ({i},{j}) differs in degree {d}"
                        );
                    }
                }
            }
        }
    }
    pass(6, started, 10, "reduce(K(A; f)) = K(H⁰A; f̄) entrywise on 5 instances");
}

#[test]
fn criterion_07_ext_pattern_over_the_exterior_algebra() {
    let started = Instant::now();
    let budget = &mut Budget::standard();
    let ground = PresentedRing::<Q>::polynomial(FieldKind::Rationals, vec![]).unwrap();
    let lambda = DGAlgebra::new(
        ground.clone(),
        vec![DGGen { name: "e".into(), degree: -1 }],
        vec![AlgElt::zero(1, 0)],
    )
    .unwrap();
    let cor = coreduction_restricted(&lambda, (0, 4), None, budget).unwrap();
    let mut dims = Vec::new();
    for d in 0..=4 {
        dims.push(match cor.table.get(d) {
            None => 0,
            Some(m) => m.k_dimension(budget).unwrap().unwrap(),
        });
    }
    assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    assert!(run_shipped_session("ext_pattern.strata").success());
    pass(7, started, 10, "coreduction dimensions over Λ(e) on [0,4] are (1,0,1,0,1)");
}

#[test]
fn criterion_08_infinite_amplitude_caveat() {
    let started = Instant::now();
    let budget = &mut Budget::standard();
    let ground = PresentedRing::<Q>::polynomial(FieldKind::Rationals, vec![]).unwrap();
    let a = DGAlgebra::new(
        ground.clone(),
        vec![DGGen { name: "t".into(), degree: -2 }],
        vec![AlgElt::zero(1, 0)],
    )
    .unwrap();
    let m = DGModule::free(a.clone(), 0);
    // cohomology pattern: rank one in each of 0, -2, -4 within the window
    let table = m.dg_cohomology(Some((-4, 0)), budget).unwrap();
    assert_eq!(table.nonzero_degrees(budget).unwrap(), vec![-4, -2, 0]);
    for d in [-4, -2, 0] {
        assert_eq!(table.get(d).unwrap().k_dimension(budget).unwrap(), Some(1));
    }
    // the reduction of A is the ground field in degree zero
    let reduced = m.reduce_to_h0().unwrap();
    assert_eq!(reduced.ranks().len(), 1);
    assert_eq!(reduced.rank(0), 1);
    assert_eq!(reduced.ring().nvars(), 0);
    assert!(reduced.ring().relations().is_empty());
    // builds refuses: inapplicable, and in particular never "yes"
    for other in [m.shift(1), DGModule::free(a.clone(), 0)] {
        let v = builds(&m, &other, budget).unwrap();
        assert_eq!(v.answer, Answer::Inapplicable);
        assert_ne!(v.answer, Answer::Yes);
        assert!(!v.applicability.finite_rank);
        assert!(v.applicability.amplitude.is_none());
    }
    assert!(run_shipped_session("infinite_amplitude.strata").success());
    pass(8, started, 10, "ℚ[t] pattern verified; builds answers inapplicable, never yes");
}

fn groebner_instance<K: Coeff>(field: FieldKind, nvars: usize, seed: u64) -> bool {
    let vars = ["x", "y", "z"][..nvars].iter().map(|v| v.to_string()).collect::<Vec<_>>();
    let plain = PresentedRing::<K>::polynomial(field, vars.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = &mut Budget::standard();
    let gens: Vec<Poly<K>> = (0..rng.gen_range(1..=2))
        .map(|_| random_poly(&plain, &mut rng, 3, 2))
        .collect();
    // (a) normal-form idempotence in the quotient presentation
    let quotient = match PresentedRing::quotient(&plain, gens.clone()) {
        Ok(q) => q,
        Err(_) => return false, // unit ideal: not a countable instance
    };
    let f = random_poly(&plain, &mut rng, 3, 3);
    assert_eq!(quotient.nf(&f), quotient.nf(&quotient.nf(&f)));
    // (b) membership: two presentations agree, and explicit combinations
    // of the generators are recognized
    let ideal = Ideal::new(plain.clone(), gens.clone());
    let members_by_nf = quotient.nf(&f).is_zero();
    assert_eq!(ideal.contains(&f, budget).unwrap(), members_by_nf);
    let mut combo = Poly::zero(nvars);
    for g in &gens {
        combo = combo.add(&g.mul(&random_poly(&plain, &mut rng, 1, 2)));
    }
    assert!(ideal.contains(&plain.nf(&combo), budget).unwrap());
    // (c) radical membership never contradicts the brute-force oracle
    let witness = ideal.radical_contains(&f, budget).unwrap();
    let grid = PointGrid::standard(plain.clone(), seed, 4);
    match brute_radical_member(&f, &ideal, 6, &grid, budget).unwrap() {
        BruteAnswer::Member => assert!(witness.member, "brute found a power, engine said no"),
        BruteAnswer::NonMember => {
            assert!(!witness.member, "brute found a falsifying point, engine said yes")
        }
        BruteAnswer::Unknown => {}
    }
    true
}

#[test]
fn criterion_09_groebner_layer_oracles() {
    let started = Instant::now();
    let mut done = 0usize;
    let mut seed = 0u64;
    while done < 500 {
        seed += 1;
        let nvars = 1 + (done % 3);
        let counted = if done.is_multiple_of(2) {
            groebner_instance::<Q>(FieldKind::Rationals, nvars, 0xC9_0000 + seed)
        } else {
            groebner_instance::<strata_core::Fp>(FieldKind::Prime(7), nvars, 0xC9_0000 + seed)
        };
        if counted {
            done += 1;
        }
    }
    pass(
        9,
        started,
        120,
        "nf idempotence, membership agreement, radical non-contradiction on 500 instances",
    );
}

#[test]
fn criterion_10_verdict_transitivity_and_reverification() {
    let started = Instant::now();
    let budget = &mut Budget::standard();

    // a family with a genuine support lattice: V(x,y) ⊂ V(x), V(y) ⊂ Spec
    let a = koszul_algebra(&qring(&["x", "y"], &[]), &["x*y"]);
    let kz = |e: &str| DGModule::koszul(a.clone(), &[a.base().parse(e).unwrap()]).unwrap();
    let free = DGModule::free(a.clone(), 0);
    let contractible = free.cone_scalar(&a.base().one());
    let family =
        [free.clone(), kz("x"), kz("y"), kz("x").tensor(&kz("y")), contractible];

    // every builds verdict across the family, kept with its support pair
    let mut verdicts: Vec<(SupportIdeal<Q>, SupportIdeal<Q>, Verdict)> = Vec::new();
    let mut yes = vec![vec![false; family.len()]; family.len()];
    for (i, m) in family.iter().enumerate() {
        for (j, n) in family.iter().enumerate() {
            let v = builds(m, n, budget).unwrap();
            yes[i][j] = v.answer == Answer::Yes;
            verdicts.push((
                support_of(m, budget).unwrap(),
                support_of(n, budget).unwrap(),
                v,
            ));
        }
    }
    // transitivity of the certified relation
    let k = family.len();
    for i in 0..k {
        assert!(yes[i][i], "builds must be reflexive");
        for j in 0..k {
            for l in 0..k {
                if yes[i][j] && yes[j][l] {
                    assert!(yes[i][l], "transitivity failed at ({i},{j},{l})");
                }
            }
        }
    }

    // verdicts from the support-equality suite (criterion 1 shape)
    for (alg, _) in &algebra_suite() {
        let m = DGModule::free(alg.clone(), 0);
        let supp_a = support_of(&m, budget).unwrap();
        let supp_h = support_of_complex(&m.reduce_to_h0().unwrap(), budget).unwrap();
        let v = supp_contains(&supp_a, &supp_h, budget).unwrap();
        verdicts.push((supp_a, supp_h, v));
    }

    // certificate re-verification: every emitted verdict replays, and a
    // tampered verdict does not
    assert!(verdicts.len() >= 25);
    for (big, small, v) in &verdicts {
        assert!(
            reverify_containment(big, small, v, budget).unwrap(),
            "verdict failed re-verification"
        );
    }
    let (big, small, good) = &verdicts[0];
    let mut forged = good.clone();
    forged.answer = match forged.answer {
        Answer::Yes => Answer::No,
        _ => Answer::Yes,
    };
    assert!(!reverify_containment(big, small, &forged, budget).unwrap());

    // the infinite-amplitude verdicts from criterion 8 cannot re-verify:
    // they carry no support certificate at all
    let ground = PresentedRing::<Q>::polynomial(FieldKind::Rationals, vec![]).unwrap();
    let infinite = DGAlgebra::new(
        ground,
        vec![DGGen { name: "t".into(), degree: -2 }],
        vec![AlgElt::zero(1, 0)],
    )
    .unwrap();
    let m = DGModule::free(infinite, 0);
    let inapplicable = builds(&m, &m, budget).unwrap();
    assert_eq!(inapplicable.answer, Answer::Inapplicable);
    assert!(inapplicable.certificate.is_empty());

    pass(
        10,
        started,
        30,
        &format!("{} verdicts re-verified; builds is transitive on a 5-module family", verdicts.len()),
    );
}
