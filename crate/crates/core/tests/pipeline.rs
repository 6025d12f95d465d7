use zerogap::certification::{
    certify_gap, min_ell_over_mu, minimal_certified_length, SearchDomain,
};
use zerogap::explicit_formula::{prime_free_delta, verify, Convention};
use zerogap::extremal::selberg_minorant;
use zerogap::lfunction::{bundled_example, load_lfunction, to_json};
use zerogap::LFunctionData;

fn d0() -> f64 {
    prime_free_delta()
}

fn small() -> SearchDomain<f64> {
    SearchDomain {
        re_max: 10.0,
        im_max: 50.0,
        step: 0.25,
    }
}

#[test]
fn minimum_is_convention_invariant() {
    let f = selberg_minorant(-2.5 / d0(), 2.5 / d0(), d0()).unwrap();
    let h = min_ell_over_mu(&f, &small(), Convention::Halved).unwrap();
    let l = min_ell_over_mu(&f, &small(), Convention::Literal).unwrap();
    assert!(
        (h.value - l.value).abs() < 1e-6,
        "{} vs {}",
        h.value,
        l.value
    );
}

#[test]
fn grid_refinement_is_stable() {
    let f = selberg_minorant(-20.0, 20.0, d0()).unwrap();
    let coarse = min_ell_over_mu(&f, &small(), Convention::Halved).unwrap();
    let fine = min_ell_over_mu(
        &f,
        &SearchDomain {
            step: 0.125,
            ..small()
        },
        Convention::Halved,
    )
    .unwrap();
    assert!((coarse.value - fine.value).abs() < 1e-3);
}

#[test]
fn certificate_invariants() {
    for length in [20.0, 30.0, 45.0, 50.0] {
        let c = certify_gap(4, length, d0(), &small(), Convention::Halved).unwrap();
        assert_eq!(c.beta - c.alpha, length);
        assert!(!c.certified || c.margin > 0.0);
        for d in [1, 2, 3] {
            let lower = certify_gap(d, length, d0(), &small(), Convention::Halved).unwrap();
            assert!(!c.certified || lower.certified);
        }
    }
}

#[test]
fn minimal_length_is_stable_under_precision() {
    let a = minimal_certified_length(4, d0(), &small(), Convention::Halved, 1e-3).unwrap();
    let b = minimal_certified_length(4, d0(), &small(), Convention::Halved, 5e-4).unwrap();
    assert!((a.length - b.length).abs() < 1e-3);
    assert!(a.length > 28.992 && a.length <= 45.3236015);
}

#[test]
fn bundled_zeros_fill_every_certified_window() {
    let data: LFunctionData = bundled_example();
    assert!(data
        .zeros()
        .every_window_contains_zero(45.3236, -30.0, 30.0));
}

#[test]
fn round_trip_preserves_report() {
    let data: LFunctionData = bundled_example();
    let again: LFunctionData = load_lfunction(&to_json(&data)).unwrap();
    let f = selberg_minorant(-2.5 / d0(), 2.5 / d0(), d0()).unwrap();
    let a = verify(&data, &f, Convention::Halved).unwrap();
    let b = verify(&again, &f, Convention::Halved).unwrap();
    assert_eq!(a.residual, b.residual);
}
