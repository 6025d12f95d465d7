//! Acceptance criteria, one pass/fail line each. Exits nonzero if any fail.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex;
use proptest::test_runner::{Config, TestRunner};
use zerogap::certification::{certify_gap, minimal_certified_length, SearchDomain};
use zerogap::explicit_formula::{prime_free_delta, verify, Convention};
use zerogap::extremal::{beurling, fourier_at, selberg_minorant};
use zerogap::lfunction::bundled_example;
use zerogap::region_scan::{classify_point, ScanConfig, Verdict};
use zerogap::special_math::{
    digamma, integrate, integrate_tail, reciprocal_minus_trigamma_shifted,
    trigamma_minus_reciprocal, trigamma_real, DEFAULT_BUDGET,
};
use zerogap::LFunctionData;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn d0() -> f64 {
    prime_free_delta()
}

fn certified_length() -> f64 {
    10.0 * PI / 2f64.ln()
}

fn ac1_certificate() -> Check {
    let start = Instant::now();
    let length = format!("{:.17}", certified_length());
    let out = Command::new(env!("CARGO_BIN_EXE_zerogap"))
        .args(["certify-gap", "--degree", "4", "--length", &length])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(
        out.status.success(),
        format!("exit status {:?}", out.status.code()),
    )?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let margin = v["margin"].as_f64().unwrap_or(f64::NAN);
    ensure(v["certified"] == true, "not certified")?;
    ensure(margin > 0.0, format!("margin {margin}"))?;
    ensure(
        v["search_domain"]["step"] == 0.25 && v["search_domain"]["im_max"] == 200.0,
        "non-default grid",
    )?;
    ensure(elapsed < 600.0, format!("took {elapsed:.1} s"))?;
    Ok(format!(
        "L = {length}, margin = {margin:.6}, {elapsed:.2} s"
    ))
}

fn ac2_minorant() -> Check {
    let d = d0();
    let (a, b) = (-2.5 / d, 2.5 / d);
    let f = selberg_minorant(a, b, d).map_err(|e| e.to_string())?;
    let integral = f.integral_numeric(1e-9).map_err(|e| e.to_string())?.value;
    let want = b - a - 1.0 / d;
    ensure(
        (integral - want).abs() < 1e-6,
        format!("integral {integral} vs {want}"),
    )?;

    let n = 100_000;
    for k in 0..n {
        let x = -80.0 + 160.0 * (k as f64 + 0.5) / n as f64;
        let chi = if (a..=b).contains(&x) { 1.0 } else { 0.0 };
        ensure(f.value(x) <= chi + 1e-12, format!("S(x) > chi at x = {x}"))?;
    }

    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let x = d * (1.01 + 1.99 * k as f64 / 19.0);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let v = fourier_at(&f, sign * x).map_err(|e| e.to_string())?.norm();
        worst = worst.max(v);
    }
    ensure(
        worst <= 1e-6,
        format!("|S^(x)| up to {worst:e} outside the support"),
    )?;

    let at0 = fourier_at(&f, 0.0).map_err(|e| e.to_string())?.re;
    ensure((at0 - 4.0 / d).abs() < 1e-6, format!("S^(0) = {at0}"))?;
    Ok(format!(
        "integral {integral:.9}, S^(0) = {at0:.9}, max |S^| off-support {worst:.1e}"
    ))
}

fn ac3_beurling() -> Check {
    let n = 100_000;
    for k in 0..=n {
        let x = -50.0 + 100.0 * k as f64 / n as f64;
        ensure(beurling(x) >= x.signum() - 1e-12, format!("B < sgn at {x}"))?;
    }
    let t = 50.0;
    let pts: Vec<f64> = (-50..=50).map(|k| k as f64).collect();
    let inner = integrate(
        |x: f64| beurling(x) - x.signum(),
        &pts,
        1e-12,
        DEFAULT_BUDGET,
    )
    .map_err(|e| e.to_string())?;
    // beyond ±T: (2/π²) sin²(πx) W(|x|) on each side, sin² = (1 − cos 2πx)/2
    let amp = |x: f64| {
        (reciprocal_minus_trigamma_shifted(x).unwrap() + trigamma_minus_reciprocal(x).unwrap())
            / (PI * PI)
    };
    let flat = integrate_tail(amp, 0.0, 0.0, t, 1e-12).map_err(|e| e.to_string())?;
    let wave = integrate_tail(amp, 1.0, 0.0, t, 1e-12).map_err(|e| e.to_string())?;
    let total = inner.value + flat.value - wave.value;
    ensure(
        (total - 1.0).abs() < 1e-6,
        format!("integral of B - sgn = {total}"),
    )?;
    Ok(format!("integral of B - sgn = {total:.12}"))
}

fn ac4_region() -> Check {
    let cfg = ScanConfig::<f64>::default();
    let tight = ScanConfig {
        tolerance: cfg.tolerance / 2.0,
        ..cfg
    };
    let cases = [
        ((4.7209, 12.4687), Verdict::Unconstrained),
        ((0.0, 0.0), Verdict::Impossible),
        ((50.0, 50.0), Verdict::ForcedLowZero),
    ];
    let mut notes = Vec::new();
    for ((a, b), want) in cases {
        let p = classify_point(a, b, &cfg).map_err(|e| e.to_string())?;
        let q = classify_point(a, b, &tight).map_err(|e| e.to_string())?;
        ensure(p.verdict == want, format!("({a}, {b}) -> {:?}", p.verdict))?;
        ensure(
            q.verdict == want,
            format!("({a}, {b}) at halved tolerance -> {:?}", q.verdict),
        )?;
        notes.push(format!("({a}, {b}) {}", want.as_str()));
    }
    Ok(notes.join(", "))
}

fn ac5_dataset() -> Check {
    let data: LFunctionData = bundled_example();
    let z = data.zeros();
    ensure(
        z.values().len() == 11,
        format!("{} zeros listed", z.values().len()),
    )?;
    ensure(
        z.values().iter().all(|g| *g > 0.0 && *g < 30.0),
        "zero outside (0, 30)",
    )?;
    let gap = 2.0 * z.values()[0];
    ensure(
        (gap - 28.992_123_018_2).abs() < 1e-9,
        format!("2 gamma_1 = {gap}"),
    )?;
    ensure((gap - 28.992).abs() < 5e-4, "gap does not round to 28.992")?;
    let ords = z.ordinates();
    let central = ords
        .windows(2)
        .find(|w| w[0] < 0.0 && w[1] > 0.0)
        .map(|w| w[1] - w[0]);
    ensure(central == Some(gap), "central gap is not 2 gamma_1")?;
    ensure(
        z.every_window_contains_zero(45.3236, -30.0, 30.0),
        "a window of length 45.3236 misses every zero",
    )?;
    Ok(format!("2 gamma_1 = {gap:.10}, 22 symmetrized ordinates"))
}

fn ac6_explicit_formula() -> Check {
    let d = d0();
    let data: LFunctionData = bundled_example();
    let f = selberg_minorant(-2.5 / d, 2.5 / d, d).map_err(|e| e.to_string())?;
    let r = verify(&data, &f, Convention::Halved).map_err(|e| e.to_string())?;
    ensure(r.rhs_primes == 0.0, "prime sum did not vanish")?;
    ensure(r.implied_log_q.is_finite(), "implied log Q not finite")?;
    let allowance = r.tail_bound + r.tolerance_budget;
    ensure(
        r.residual.abs() <= allowance,
        format!("|residual| {} > {allowance}", r.residual.abs()),
    )?;
    Ok(format!(
        "residual {:.6}, tail bound {:.6}, budget {:.1e}, tail estimate {:.6}, implied log Q {:.6}",
        r.residual, r.tail_bound, r.tolerance_budget, r.tail_estimate, r.implied_log_q
    ))
}

fn ac7_special_functions() -> Check {
    let digamma_oracle: [(f64, f64); 3] = [
        (1.0, -0.577_215_664_901_532_9),
        (2.0, 0.422_784_335_098_467_13),
        (0.5, -1.963_510_026_021_423_5),
    ];
    let trigamma_oracle: [(f64, f64); 3] = [
        (1.0, 1.644_934_066_848_226_4),
        (2.0, 0.644_934_066_848_226_4),
        (0.5, 4.934_802_200_544_679),
    ];
    for (x, want) in digamma_oracle {
        let got = digamma(Complex::new(x, 0.0)).map_err(|e| e.to_string())?.re;
        ensure((got - want).abs() < 1e-10, format!("psi({x}) = {got}"))?;
    }
    for (x, want) in trigamma_oracle {
        let got = trigamma_real(x).map_err(|e| e.to_string())?;
        ensure((got - want).abs() < 1e-10, format!("psi'({x}) = {got}"))?;
    }
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(-30.0f64..30.0, 0.05f64..60.0), |(re, im)| {
            let z = Complex::new(re, im);
            let step = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
            let conj = digamma(z.conj()).unwrap() - digamma(z).unwrap().conj();
            let scale = 1.0 + digamma(z).unwrap().norm();
            proptest::prop_assert!(step.norm() <= 1e-11 * scale, "recurrence fails at {}", z);
            proptest::prop_assert!(
                conj.norm() <= 1e-13 * scale,
                "conjugate symmetry fails at {}",
                z
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("oracle constants to 1e-10; recurrence and conjugate symmetry on 1000 points".into())
}

fn ac8_conventions() -> Check {
    let d = d0();
    let domain = SearchDomain::default();
    let h = certify_gap(4, certified_length(), d, &domain, Convention::Halved)
        .map_err(|e| e.to_string())?;
    let l = certify_gap(4, certified_length(), d, &domain, Convention::Literal)
        .map_err(|e| e.to_string())?;
    ensure(h.certified == l.certified, "verdicts differ")?;
    let mh = minimal_certified_length(4, d, &domain, Convention::Halved, 1e-4)
        .map_err(|e| e.to_string())?;
    let ml = minimal_certified_length(4, d, &domain, Convention::Literal, 1e-4)
        .map_err(|e| e.to_string())?;
    ensure(
        (mh.length - ml.length).abs() < 1e-3,
        format!("{} vs {}", mh.length, ml.length),
    )?;
    Ok(format!(
        "verdict {} under both; minimal length {:.5} / {:.5}",
        h.certified, mh.length, ml.length
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 window-length certificate", ac1_certificate),
        ("AC2 minorant identities", ac2_minorant),
        ("AC3 Beurling extremality", ac3_beurling),
        ("AC4 spectral region classification", ac4_region),
        ("AC5 dataset integrity", ac5_dataset),
        ("AC6 explicit-formula consistency", ac6_explicit_formula),
        ("AC7 special-function oracles", ac7_special_functions),
        ("AC8 convention invariance", ac8_conventions),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
