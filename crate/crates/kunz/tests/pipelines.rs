//! Cross-method checks of the decomposition pipelines.

mod common;

use common::{random_kunz, random_semigroup};
use kunz::{
    decompose_compact, decompose_exact, decompose_heuristic, decompose_oracle, verify,
    DecomposeError, Decomposition, KunzCoordinates, SolveLimits,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_valid(d: &Decomposition) {
    let report = verify(d);
    assert!(report.all_pass(), "{} decomposition of {} invalid:\n{report}", d.method, d.input);
}

/// Every method produces a decomposition passing all verification
/// conditions, across random instances of mixed origin.
#[test]
fn all_methods_verify_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let limits = SolveLimits::default();
    for i in 0..60 {
        let x = if i % 2 == 0 {
            { let m = rng.gen_range(3..=20); random_kunz(&mut rng, m, 5) }
        } else {
            random_semigroup(&mut rng, 3, 20, 400)
        };
        let exact_ok_scale = x.multiplicity() <= 12;
        let h = decompose_heuristic(&x, &limits).unwrap();
        assert_valid(&h);
        let c = decompose_compact(&x, false, &limits).unwrap();
        assert_valid(&c);
        assert!(h.size() >= c.size(), "heuristic beat the minimum on {x}");
        assert!(c.minimal && !h.minimal);
        if exact_ok_scale {
            let e = decompose_exact(&x, &limits).unwrap();
            assert_valid(&e);
            assert_eq!(e.size(), c.size(), "exact vs compact size on {x}");
        }
    }
}

/// Exact, compact, and the brute-force oracle agree on the minimal size
/// wherever the oracle completes.
#[test]
fn minimality_agreement_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let limits = SolveLimits::default();
    let mut done = 0;
    while done < 40 {
        let x = { let m = rng.gen_range(3..=10); random_kunz(&mut rng, m, 4) };
        let o = match decompose_oracle(&x, &limits) {
            Ok(o) => o,
            Err(DecomposeError::OracleTooLarge { .. }) => continue,
            Err(e) => panic!("oracle failed on {x}: {e}"),
        };
        assert_valid(&o);
        let e = decompose_exact(&x, &limits).unwrap();
        let c = decompose_compact(&x, false, &limits).unwrap();
        assert_eq!(o.size(), e.size(), "oracle vs exact on {x}");
        assert_eq!(o.size(), c.size(), "oracle vs compact on {x}");
        done += 1;
    }
}

/// The heuristic is sandwiched: never below the minimum, never above the
/// number of special gaps.
#[test]
fn heuristic_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let limits = SolveLimits::default();
    for _ in 0..40 {
        let x = { let m = rng.gen_range(3..=14); random_kunz(&mut rng, m, 5) };
        let sg = x.special_gaps_above_m();
        let h = decompose_heuristic(&x, &limits).unwrap();
        let c = decompose_compact(&x, false, &limits).unwrap();
        assert!(h.size() >= c.size());
        assert!(h.size() <= sg.len().max(1), "{x}: {} parts for {} gaps", h.size(), sg.len());
    }
}

/// In the minimal methods every part's Frobenius number is one of the
/// input's special gaps and the part keeps it as a gap (its certificate
/// lists it), except for the trivial self-decompositions.
#[test]
fn frobenius_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let limits = SolveLimits::default();
    for _ in 0..30 {
        let x = { let m = rng.gen_range(4..=10); random_kunz(&mut rng, m, 4) };
        let sg = x.special_gaps_above_m();
        if sg.len() <= 1 {
            continue;
        }
        for d in [
            decompose_exact(&x, &limits).unwrap(),
            decompose_compact(&x, false, &limits).unwrap(),
        ] {
            for (part, cert) in d.parts.iter().zip(&d.certificates) {
                assert_eq!(part.frobenius(), cert.frobenius);
                assert!(sg.contains(&cert.frobenius), "{x}: part Frobenius not a special gap");
                assert!(
                    cert.covered_special_gaps.contains(&cert.frobenius),
                    "{x}: part does not cover its own Frobenius number"
                );
            }
        }
    }
}

/// Parts obey the genus trichotomy, and the maximal-semigroup part (genus
/// m-1) only ever appears in its own decomposition.
#[test]
fn genus_trichotomy_of_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let limits = SolveLimits::default();
    for _ in 0..30 {
        let x = { let m = rng.gen_range(3..=12); random_kunz(&mut rng, m, 4) };
        let m = x.multiplicity();
        let all_ones = x.coords().iter().all(|&v| v == 1);
        for d in [
            decompose_heuristic(&x, &limits).unwrap(),
            decompose_compact(&x, false, &limits).unwrap(),
        ] {
            for p in &d.parts {
                let g = p.genus();
                let f = p.frobenius();
                assert!(
                    g == m - 1 || g == m || g == (f + 2) / 2,
                    "{x}: part {p} genus {g} outside the trichotomy"
                );
                if g == m - 1 {
                    assert!(all_ones, "{x}: maximal part in a non-trivial decomposition");
                }
            }
        }
    }
}

/// The symmetric-only variant: inputs with even Frobenius number are
/// rejected; when the unrestricted minimum already uses only odd-Frobenius
/// parts, the restriction succeeds with the same size.
#[test]
fn symmetric_variant_dichotomy() {
    let mut rng = ChaCha8Rng::seed_from_u64(127);
    let limits = SolveLimits::default();
    let mut even_seen = 0;
    let mut odd_matches = 0;
    for _ in 0..60 {
        let x = { let m = rng.gen_range(3..=10); random_kunz(&mut rng, m, 4) };
        if x.frobenius() % 2 == 0 {
            even_seen += 1;
            assert_eq!(
                decompose_compact(&x, true, &limits).unwrap_err(),
                DecomposeError::NotSymmetricallyDecomposable,
                "{x}: even Frobenius number must not decompose symmetrically"
            );
            continue;
        }
        let unrestricted = decompose_compact(&x, false, &limits).unwrap();
        if unrestricted.parts.iter().all(|p| p.frobenius() % 2 == 1) {
            let sym = decompose_compact(&x, true, &limits).unwrap();
            assert_valid(&sym);
            assert_eq!(sym.size(), unrestricted.size(), "{x}");
            assert!(sym.parts.iter().all(|p| p.frobenius() % 2 == 1));
            odd_matches += 1;
        }
    }
    assert!(even_seen > 0 && odd_matches > 0, "sample covered both regimes");
}

/// The worked m=12 example end to end: sizes per method and the heuristic
/// tie-break window.
#[test]
fn twelve_example_sizes() {
    let x = kunz::NumericalSemigroup::new(&[12, 17, 18, 23, 26, 28, 33, 39])
        .unwrap()
        .kunz_coordinates()
        .unwrap();
    let limits = SolveLimits::default();
    assert_eq!(x.coords(), &[4, 2, 3, 2, 1, 1, 3, 3, 2, 2, 1]);
    assert_eq!(x.special_gaps_above_m(), vec![21, 22, 27, 31, 32, 37]);
    let e = decompose_exact(&x, &limits).unwrap();
    let c = decompose_compact(&x, false, &limits).unwrap();
    let o = decompose_oracle(&x, &limits).unwrap();
    let h = decompose_heuristic(&x, &limits).unwrap();
    assert_eq!(e.size(), 4);
    assert_eq!(c.size(), 4);
    assert_eq!(o.size(), 4);
    assert!(h.size() == 4 || h.size() == 5, "one per-gap choice may cost one part");
    for d in [&e, &c, &o, &h] {
        assert_valid(d);
    }
    // The decomposition printed in the worked example is itself valid.
    let paper_parts: Vec<KunzCoordinates> = [
        vec![1, 2, 3, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![2, 2, 1, 2, 1, 1, 3, 1, 1, 1, 1],
        vec![1, 2, 2, 2, 1, 1, 2, 3, 1, 1, 1],
        vec![4, 2, 1, 1, 1, 1, 2, 2, 2, 2, 1],
    ]
    .into_iter()
    .map(|v| KunzCoordinates::new(12, v).unwrap())
    .collect();
    let reconstructed = kunz::intersect(&paper_parts).unwrap();
    assert_eq!(reconstructed, x);
}

/// Decompositions are reproducible run to run.
#[test]
fn decomposition_determinism() {
    let mut rng = ChaCha8Rng::seed_from_u64(131);
    let limits = SolveLimits::default();
    for _ in 0..10 {
        let x = { let m = rng.gen_range(3..=10); random_kunz(&mut rng, m, 4) };
        let a = decompose_compact(&x, false, &limits).unwrap();
        let b = decompose_compact(&x, false, &limits).unwrap();
        assert_eq!(a, b);
        let a = decompose_heuristic(&x, &limits).unwrap();
        let b = decompose_heuristic(&x, &limits).unwrap();
        assert_eq!(a, b);
    }
}
