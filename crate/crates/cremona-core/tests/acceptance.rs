//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Every assertion is exact (structural equality of canonical forms) except
//! where a criterion states an explicit tolerance, and those tolerances are
//! pinned here in exact rational arithmetic. Run with `--nocapture` to see
//! the per-criterion lines.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use cremona_core::classify::{
    classify, cross_check, expected_collisions, reference_corpus, Subcase,
};
use cremona_core::degrees::{
    degree_sequence, dynamical_degree_estimate, fit_recurrence, growth_class, GrowthTag,
    DEFAULT_TERM_BUDGET,
};
use cremona_core::family::{
    birationality_check, build_family_map, invert_family, jacobian_determinant,
    jacobian_numerators, ParameterTuple,
};
use cremona_core::fibration::{
    builtin_fibrations, detect_periodicity, normal_form, transversality, verify_fibration,
    FibrationFunction, Transform,
};
use cremona_core::geometry::as_diagnostic;
use cremona_core::moebius::{brute_force_period, periodicity_exact, MoebiusMap};
use cremona_core::poly::{MultiPoly, VarSpace};
use cremona_core::ratfunc::RationalFunction;
use cremona_core::scalar::GaussianRational;

type Gq = GaussianRational;

fn params(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> ParameterTuple {
    ParameterTuple::from_ints(a, b, c).unwrap()
}

fn q(s: &str) -> Gq {
    Gq::parse(s).unwrap()
}

/// Small deterministic generator for the randomized suites.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn small(&mut self) -> i64 {
        (self.next() % 7) as i64 - 3
    }

    fn scalar(&mut self) -> Gq {
        // mostly real small integers, occasionally Gaussian
        if self.next() % 4 == 0 {
            Gq::from_ints(self.small(), self.small())
        } else {
            Gq::from_int(self.small())
        }
    }
}

#[test]
fn acceptance_01_fibonacci_growth() {
    let start = Instant::now();
    let p = params([0, 0, 1], [0, 1, 0], [0, 0, 1]);
    let seq = degree_sequence(&p, 10, DEFAULT_TERM_BUDGET).unwrap();
    assert_eq!(seq.degrees, vec![2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
    let fit = fit_recurrence(&seq).unwrap();
    let zv = VarSpace::single("z");
    assert_eq!(fit.char_poly, MultiPoly::parse(&zv, "z^2-z-1").unwrap());
    // ratio estimator within 1e-2 of the golden ratio, certified exactly:
    // p(z) = z^2 - z - 1 is increasing for z > 1/2, so the root lies in
    // (r - eps, r + eps) iff p changes sign there.
    let r = dynamical_degree_estimate(&seq).unwrap();
    assert_eq!(r, BigRational::new(BigInt::from(144), BigInt::from(89)));
    let eps = BigRational::new(BigInt::from(1), BigInt::from(100));
    let p_at = |x: &BigRational| x * x - x - BigRational::from_integer(BigInt::from(1));
    let lo = &r - &eps;
    let hi = &r + &eps;
    assert!(lo > BigRational::from_integer(BigInt::from(1)));
    assert!(p_at(&lo) < BigRational::from_integer(BigInt::from(0)));
    assert!(p_at(&hi) > BigRational::from_integer(BigInt::from(0)));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "runtime {elapsed:?} exceeds 10 s");
    println!(
        "acceptance 01 PASS: Fibonacci degrees 2..144 exact, fit z^2-z-1, 144/89 within 1e-2 of the golden ratio ({elapsed:?})"
    );
}

#[test]
fn acceptance_02_linear_growth() {
    let start = Instant::now();
    let p = params([0, 1, 0], [0, 0, 1], [0, 1, 0]);
    let seq = degree_sequence(&p, 20, DEFAULT_TERM_BUDGET).unwrap();
    let expected: Vec<u32> = (2..=21).collect();
    assert_eq!(seq.degrees, expected);
    let fit = fit_recurrence(&seq).unwrap();
    let zv = VarSpace::single("z");
    assert_eq!(fit.char_poly, MultiPoly::parse(&zv, "z^2-2*z+1").unwrap());
    let growth = growth_class(&fit, &seq);
    assert_eq!(growth.tag, GrowthTag::Linear);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "runtime {elapsed:?} exceeds 10 s");
    println!(
        "acceptance 02 PASS: linear degrees 2..21 exact, fit (z-1)^2, growth class linear ({elapsed:?})"
    );
}

#[test]
fn acceptance_03_exponential_growth() {
    let start = Instant::now();
    let p = params([0, 1, 1], [0, 1, 0], [0, 1, 1]);
    let seq = degree_sequence(&p, 8, DEFAULT_TERM_BUDGET).unwrap();
    let expected: Vec<u32> = (1..=8).map(|n| 1u32 << n).collect();
    assert_eq!(seq.degrees, expected);
    let r = dynamical_degree_estimate(&seq).unwrap();
    assert_eq!(r, BigRational::from_integer(BigInt::from(2)), "ratio estimate exactly 2");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "runtime {elapsed:?} exceeds 60 s");
    println!("acceptance 03 PASS: exponential degrees 2..256 exact, ratio exactly 2 ({elapsed:?})");
}

#[test]
fn acceptance_04_fibonacci_in_second_family() {
    let start = Instant::now();
    let p = params([0, 1, 1], [1, 0, 0], [0, 1, 0]); // (x + y, 1/x)
    let seq = degree_sequence(&p, 10, DEFAULT_TERM_BUDGET).unwrap();
    assert_eq!(seq.degrees, vec![2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
    let elapsed = start.elapsed();
    println!(
        "acceptance 04 PASS: (x+y, 1/x) reproduces the Fibonacci degrees through d_10 exactly ({elapsed:?})"
    );
}

#[test]
fn acceptance_05_periodic_case() {
    let start = Instant::now();
    let p = ParameterTuple::new(
        [q("0"), q("1i"), q("1")],
        [q("1"), q("0"), q("0")],
        [q("0"), q("0"), q("1")],
    )
    .unwrap(); // (ix + y, 1/y)
    let seq = degree_sequence(&p, 8, DEFAULT_TERM_BUDGET).unwrap();
    assert_eq!(seq.degrees, vec![2, 2, 2, 1, 2, 2, 2, 1]);
    let f = build_family_map(&p);
    assert_eq!(detect_periodicity(&f, 24).unwrap(), Some(4));
    let elapsed = start.elapsed();
    println!(
        "acceptance 05 PASS: (ix+y, 1/y) has degrees 2,2,2,1 repeating and period 4 ({elapsed:?})"
    );
}

#[test]
fn acceptance_06_two_k_periodic_case() {
    let start = Instant::now();
    let p = params([0, 0, 1], [-1, 0, 0], [1, 1, 0]); // (y, -1/(1+x))
    let seq = degree_sequence(&p, 12, DEFAULT_TERM_BUDGET).unwrap();
    assert_eq!(seq.degrees, vec![2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 1]);
    assert_eq!(seq.degrees[5], 1);
    assert_eq!(seq.degrees[11], 1);
    let f = build_family_map(&p);
    assert_eq!(detect_periodicity(&f, 24).unwrap(), Some(6));
    let h = MoebiusMap::from_h(&q("1"), &q("-1")).unwrap();
    let report = periodicity_exact(&h);
    assert_eq!(report.period, Some(3));
    let elapsed = start.elapsed();
    println!(
        "acceptance 06 PASS: (y, -1/(1+x)) is 6-periodic with d_6 = d_12 = 1; h of (1,-1) has order 3 ({elapsed:?})"
    );
}

#[test]
fn acceptance_07_fibration_identities_exact() {
    use cremona_core::fibration::{AffineChange, NormalFormKind, NormalFormMap};

    // (a) W = x (a0 - x) under f = (a0 - x, (b0 + y)/x), a0 = b0 = 1
    let start_a = Instant::now();
    let kind = NormalFormKind::HalfJonquieres { a0: q("1"), a1: q("-1"), b0: q("1") };
    let form = NormalFormMap {
        map: plane_map_of(&kind),
        conjugation: AffineChange::identity(),
        source_case: Subcase::CD2iii,
        kind,
    };
    let specs = builtin_fibrations(&form).unwrap();
    let w = specs.iter().find(|s| s.label == "W").unwrap();
    match &w.function {
        FibrationFunction::Exact(h) => {
            let v = VarSpace::affine();
            assert_eq!(
                h,
                &RationalFunction::from_poly(MultiPoly::parse(&v, "x-x^2").unwrap())
            );
        }
        _ => panic!("W must be exact"),
    }
    assert!(matches!(w.transform, Transform::Invariant));
    let verdict = verify_fibration(&form.map, w, 1);
    assert!(verdict.passed() && !verdict.is_numeric(), "W: {verdict}");
    let t_a = start_a.elapsed();
    assert!(t_a.as_secs() < 1, "check (a) took {t_a:?}");

    // (b) K1 (scale -1), K2 (translate), W = K1^2 (invariant) at (2, -1)
    let start_b = Instant::now();
    let p = swap_params(2, -1);
    let report = classify(&p).unwrap();
    let form = normal_form(&p, &report).unwrap();
    let specs = builtin_fibrations(&form).unwrap();
    for (label, want_transform) in
        [("K1", "scale(-1)"), ("K2", "translate(+1)"), ("W", "invariant")]
    {
        let s = specs.iter().find(|s| s.label == label).unwrap();
        assert_eq!(format!("{}", s.transform), want_transform, "{label} transform");
        let v = verify_fibration(&form.map, s, 1);
        assert!(v.passed() && !v.is_numeric(), "{label}: {v}");
    }
    let t_b = start_b.elapsed();
    assert!(t_b.as_secs() < 1, "check (b) took {t_b:?}");

    // (c) H1 (scale i), H2 (scale -i) at (0, 1), with the transversality
    // determinant matching the closed form 4i/((1+x)^2 (1+y)^2)
    let start_c = Instant::now();
    let p = swap_params(0, 1);
    let report = classify(&p).unwrap();
    let form = normal_form(&p, &report).unwrap();
    let specs = builtin_fibrations(&form).unwrap();
    let h1 = specs.iter().find(|s| s.label == "H1").unwrap();
    let h2 = specs.iter().find(|s| s.label == "H2").unwrap();
    assert!(matches!(&h1.transform, Transform::Scale(c) if c == &q("1i")));
    assert!(matches!(&h2.transform, Transform::Scale(c) if c == &q("-1i")));
    for s in [h1, h2] {
        let v = verify_fibration(&form.map, s, 1);
        assert!(v.passed() && !v.is_numeric(), "{}: {v}", s.label);
    }
    let t = transversality(h1, h2).unwrap();
    assert!(t.transverse);
    let v = VarSpace::affine();
    let expected = RationalFunction::new(
        MultiPoly::parse(&v, "4i").unwrap(),
        MultiPoly::parse(&v, "(x+1)*(x+1)*(y+1)*(y+1)").unwrap_or_else(|_| {
            MultiPoly::parse(&v, "x^2*y^2+2*x^2*y+2*x*y^2+x^2+y^2+4*x*y+2*x+2*y+1").unwrap()
        }),
    )
    .unwrap();
    assert_eq!(t.jacobian, expected, "transversality determinant");
    let t_c = start_c.elapsed();
    assert!(t_c.as_secs() < 1, "check (c) took {t_c:?}");

    println!(
        "acceptance 07 PASS: W, K1/K2/W and H1/H2 identities verified structurally; transversality matches 4i/((1+x)^2(1+y)^2) ({t_a:?}/{t_b:?}/{t_c:?})"
    );
}

fn plane_map_of(kind: &cremona_core::fibration::NormalFormKind) -> cremona_core::family::PlaneMap {
    // rebuild the normal-form map through the public constructor path
    use cremona_core::fibration::NormalFormKind as K;
    let v = VarSpace::affine();
    let x = MultiPoly::var(&v, 0);
    let y = MultiPoly::var(&v, 1);
    let c = |g: &Gq| MultiPoly::constant(&v, g.clone());
    match kind {
        K::HalfJonquieres { a0, a1, b0 } => cremona_core::family::PlaneMap::new(
            RationalFunction::from_poly(c(a0).add_ref(&x.scale(a1))),
            RationalFunction::new(c(b0).add_ref(&y), x.clone()).unwrap(),
        ),
        _ => unreachable!("only the half-Jonquieres shape is rebuilt here"),
    }
}

fn swap_params(c0: i64, b0: i64) -> ParameterTuple {
    // (y, b0/(c0 + x)) as a family member: alpha = (0,0,1), beta = (b0,0,0),
    // gamma = (c0,1,0)
    params([0, 0, 1], [b0, 0, 0], [c0, 1, 0])
}

#[test]
fn acceptance_08_classifier_coverage() {
    let start = Instant::now();
    let corpus = reference_corpus();
    let mut seen: Vec<Subcase> = corpus.iter().map(|(sc, _)| *sc).collect();
    seen.sort_by_key(|s| s.tag());
    seen.dedup();
    assert_eq!(seen.len(), Subcase::ALL.len(), "corpus covers every sub-case tag");
    for (sc, p) in &corpus {
        let n = match sc {
            Subcase::CD2i | Subcase::CD3i => 8,
            Subcase::CD2ii | Subcase::CD3ii | Subcase::G2a => 10,
            Subcase::CD2iii | Subcase::CD3iii | Subcase::G1ia => 12,
            Subcase::G1ic => 10,
            Subcase::G2b2 => 13,
            _ => 12,
        };
        let report = cross_check(p, n).unwrap_or_else(|e| panic!("{sc}: {e}"));
        assert!(
            report.pass,
            "{sc}: cross-check failed: closed_form_ok={} annihilation_ok={} growth {:?} vs {:?} first_mismatch={:?} degrees={:?}",
            report.closed_form_ok,
            report.annihilation_ok,
            report.observed_growth,
            report.expected_growth,
            report.first_mismatch,
            report.degrees.degrees
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "runtime {elapsed:?} exceeds 5 min");
    println!(
        "acceptance 08 PASS: all {} sub-cases classified and cross-checked ({elapsed:?})",
        corpus.len()
    );
}

#[test]
fn acceptance_09_property_suites() {
    let start = Instant::now();

    // inverse round trip on 100 random birational tuples
    let mut rng = Rng(0xACCE0901);
    let mut done = 0usize;
    while done < 100 {
        let alpha = [rng.scalar(), rng.scalar(), rng.scalar()];
        let beta = [rng.scalar(), rng.scalar(), rng.scalar()];
        let gamma = [rng.scalar(), rng.scalar(), rng.scalar()];
        let Ok(p) = ParameterTuple::new(alpha, beta, gamma) else { continue };
        if !birationality_check(&p).is_birational {
            continue;
        }
        let f = build_family_map(&p);
        let g = invert_family(&p).unwrap();
        assert!(f.compose(&g).unwrap().is_identity(), "f o f^-1 != id for {p:?}");
        assert!(g.compose(&f).unwrap().is_identity(), "f^-1 o f != id for {p:?}");
        done += 1;
    }

    // Moebius periodicity against brute-force composition on 200 samples
    let mut rng = Rng(0xACCE0902);
    let mut done = 0usize;
    let curated = [
        ("0", "1"),
        ("1", "-1"),
        ("2", "-2"),
        ("3", "-3"),
        ("2", "-1"),
        ("1", "1"),
    ];
    for (g0, b0) in curated {
        let m = MoebiusMap::from_h(&q(g0), &q(b0)).unwrap();
        assert_eq!(periodicity_exact(&m).period, brute_force_period(&m, 12));
    }
    while done < 200 {
        let g0 = rng.scalar();
        let b0 = rng.scalar();
        let Ok(m) = MoebiusMap::from_h(&g0, &b0) else { continue };
        let exact = periodicity_exact(&m).period;
        let brute = brute_force_period(&m, 12);
        assert_eq!(exact, brute, "periodicity mismatch at ({g0}, {b0})");
        done += 1;
    }

    // Jacobian numerators against the symbolic-differentiation oracle
    let v = VarSpace::affine();
    let mut rng = Rng(0xACCE0903);
    let mut done = 0usize;
    while done < 100 {
        let alpha = [rng.scalar(), rng.scalar(), rng.scalar()];
        let beta = [rng.scalar(), rng.scalar(), rng.scalar()];
        let gamma = [rng.scalar(), rng.scalar(), rng.scalar()];
        let Ok(p) = ParameterTuple::new(alpha, beta, gamma) else { continue };
        let (det_f, det_finv) = jacobian_numerators(&p);
        // forward side: det Jac f = -detf / C^2
        let sym = jacobian_determinant(&build_family_map(&p));
        let gamma_form = ParameterTuple::affine_form(p.gamma(), &v);
        let expected =
            RationalFunction::new(det_f.neg_ref(), gamma_form.mul_ref(&gamma_form)).unwrap();
        assert_eq!(sym, expected, "forward Jacobian mismatch for {p:?}");
        // inverse side (needs birationality): det Jac f^-1 = detfinv / D^2
        if birationality_check(&p).is_birational {
            let inv = invert_family(&p).unwrap();
            let sym = jacobian_determinant(&inv);
            let y = MultiPoly::var(&v, 1);
            let den = MultiPoly::constant(&v, p.ab(1, 2)).sub_ref(&y.scale(&p.ac(1, 2)));
            let expected = RationalFunction::new(det_finv, den.mul_ref(&den)).unwrap();
            assert_eq!(sym, expected, "inverse Jacobian mismatch for {p:?}");
        }
        done += 1;
    }

    let elapsed = start.elapsed();
    println!(
        "acceptance 09 PASS: 100 inverse round trips, 200 Moebius periodicity checks, 100 Jacobian oracle checks, all exact ({elapsed:?})"
    );
}

#[test]
fn acceptance_10_stability_diagnostic_concordance() {
    let start = Instant::now();
    for (sc, p) in reference_corpus() {
        let report = as_diagnostic(&p, 64).unwrap();
        let expected = expected_collisions(sc);
        let mut got: Vec<(String, usize)> =
            report.collisions.iter().map(|c| (c.line.clone(), c.iterate)).collect();
        got.sort();
        let mut want: Vec<(String, usize)> =
            expected.iter().map(|(l, n)| (l.to_string(), *n)).collect();
        want.sort();
        assert_eq!(got, want, "{sc}: collision pattern mismatch");
        assert_eq!(report.is_as_on_p2, expected.is_empty(), "{sc}: stability flag");
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance 10 PASS: collapse-orbit collision patterns match the per-case narratives ({elapsed:?})"
    );
}
