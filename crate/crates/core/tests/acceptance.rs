//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rbf_core::landscape::{fitted_envelope, ENVELOPE_DFT_SAMPLES, ENVELOPE_DROP_TOL};
use rbf_core::numeric::dist_to_integer;
use rbf_core::quadrature::EXPCOS_INTEGRAL;
use rbf_core::resonance::chi_second_derivative_at_integer;
use rbf_core::spectrum::{bias_rbf_general_with, estimate_spectrum_dft};
use rbf_core::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn g(p: usize) -> GridSize {
    GridSize::new(p).unwrap()
}

fn y(v: f64) -> RelativeFrequency {
    RelativeFrequency::new(v).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1() -> Outcome {
    let f = Builtin1D::Sin2 { k: 2.3 };
    let ((direct, theorem), dt) = timed(|| {
        let direct = direct_bias(&f, g(20)).unwrap();
        let theorem = bias_sin2(g(20), PrototypeParams::from_k(2.3).unwrap()).unwrap();
        (direct, theorem)
    });
    let diff = (direct - theorem).abs();
    let pass = diff <= 1e-12
        && (direct - (-2.444718e-2)).abs() < 5e-9
        && (theorem - (-2.444718e-2)).abs() < 5e-9
        && dt < Duration::from_millis(1);
    outcome(pass, format!("direct={direct:e} theorem={theorem:e} diff={diff:e} time={dt:?}"))
}

fn criterion_2() -> Outcome {
    let f = Builtin1D::Cos2PiN { n: 4 };
    let (vals, dt) = timed(|| {
        let spec = f.spectrum().unwrap();
        [
            direct_bias(&f, g(4)).unwrap(),
            bias_rbf_general(&spec, g(4)).unwrap().re,
            bias_classical_alias(&spec, g(4), 2).unwrap().value.re,
        ]
    });
    let worst = pairwise(&vals);
    let pass = vals.iter().all(|v| (v - 1.0).abs() <= 1e-13) && worst <= 1e-13 && dt < Duration::from_millis(1);
    outcome(pass, format!("direct={} rbf={} classical={} max_diff={worst:e} time={dt:?}", vals[0], vals[1], vals[2]))
}

fn criterion_3() -> Outcome {
    let f = Builtin2D::ProdCos8Pi;
    let spec = f.spectrum();
    let vals = [
        direct_bias_2d(&f, g(4)).unwrap(),
        bias_rbf_2d(&spec, g(4)).unwrap().re,
        bias_classical_2d(&spec, g(4), 2).unwrap().value.re,
    ];
    let worst = pairwise(&vals);
    let pass = vals.iter().all(|v| (v - 1.0).abs() <= 1e-13) && worst <= 1e-13;
    outcome(pass, format!("direct_2d={} rbf_2d={} classical_2d={} max_diff={worst:e}", vals[0], vals[1], vals[2]))
}

fn pairwise(vals: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vals.iter().enumerate() {
        for b in &vals[i + 1..] {
            worst = worst.max((a - b).abs());
        }
    }
    worst
}

fn criterion_4() -> Outcome {
    let (rows, dt) = timed(|| sweep_bias(&Builtin1D::Sin2 { k: 2.3 }, 2, 200).unwrap());
    let mut worst_match = 0.0f64;
    let mut bound_checked = 0;
    let mut bound_violations = Vec::new();
    for r in &rows {
        worst_match = worst_match.max((r.direct_error - r.rbf_prediction).abs());
        if dist_to_integer(4.6 / r.p as f64) > 0.05 {
            bound_checked += 1;
            let bound = PI * PI * 4.6 * 4.6 / (3.0 * (r.p * r.p) as f64);
            if r.direct_error.abs() > bound {
                bound_violations.push(r.p);
            }
        }
    }
    let pass = rows.len() == 199 && worst_match <= 1e-10 && bound_violations.is_empty() && dt < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "rows={} max|direct-rbf|={worst_match:e} bound rows checked={bound_checked} violations={bound_violations:?} time={dt:?}",
            rows.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut assertions = 0u64;
    let mut failures = Vec::new();
    let t = Instant::now();
    let mut check = |ok: bool, what: &str, failures: &mut Vec<String>| {
        assertions += 1;
        if !ok && failures.len() < 5 {
            failures.push(what.to_string());
        }
    };
    for p in 1..=64usize {
        for _ in 0..400 {
            let v: f64 = rng.gen_range(-3.0..3.0);
            let a = chi_tilde(g(p), y(v));
            check((chi_tilde(g(p), y(v + 1.0)) - a).norm() < 1e-12, &format!("periodicity P={p} y={v}"), &mut failures);
            check((chi_tilde(g(p), y(-v)) - a.conj()).norm() < 1e-12, &format!("conjugate P={p} y={v}"), &mut failures);
            check(a.norm() <= 1.0 + 1e-12, &format!("bounded P={p} y={v}"), &mut failures);
            let near_one = a.norm() > 1.0 - 1e-9;
            check(!near_one || p == 1 || dist_to_integer(v) < 1e-4, &format!("peak width P={p} y={v}"), &mut failures);
        }
    }
    for p in 2..=64usize {
        for n in 1..p {
            let z = chi_tilde(g(p), y(n as f64 / p as f64));
            check(z.norm() < 1e-12, &format!("rational zero P={p} n={n}"), &mut failures);
        }
    }
    for p in 1..=64usize {
        for k in -5..=5i64 {
            let z = chi_tilde(g(p), y(k as f64));
            check(z == Complex64::new(1.0, 0.0), &format!("integer peak P={p} k={k}"), &mut failures);
        }
    }
    let dt = t.elapsed();
    let pass = failures.is_empty() && assertions >= 100_000 && dt < Duration::from_secs(10);
    outcome(pass, format!("assertions={assertions} failures={failures:?} time={dt:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut samples = 0;
    let mut record = |p: usize, v: f64| {
        let d = (chi_tilde_closed(g(p), y(v)).value - chi_tilde_naive(g(p), y(v)).value).norm();
        worst = worst.max(d);
        samples += 1;
    };
    for &p in &[2usize, 3, 5, 20, 997] {
        let mut taken = 0;
        while taken < 1000 {
            let v: f64 = rng.gen_range(-5.0..5.0);
            if dist_to_integer(v) < 1e-6 {
                continue;
            }
            record(p, v);
            taken += 1;
        }
        for k in -2..=2 {
            for &d in &[1.5e-12, 5e-12, 1e-9, 1e-7, 1e-6, 1.0000001e-6, 2e-6, 1e-5, 1e-3] {
                record(p, k as f64 + d);
                record(p, k as f64 - d);
            }
        }
    }
    record(10_000, 0.5 + 1.0 / 30_000.0);
    // inside the integer limit the value is set to exactly 1; the true
    // imaginary part there is about pi (P-1) d
    let snap = (chi_tilde_closed(g(997), y(1e-12)).value - chi_tilde_naive(g(997), y(1e-12)).value).norm();
    outcome(
        worst <= 1e-10,
        format!("samples={samples} max|closed-naive|={worst:e}; integer-limit snap at P=997, d=1e-12 differs by {snap:e}"),
    )
}

fn criterion_7() -> Outcome {
    let h = 1e-5;
    let mut worst_rel = 0.0f64;
    for &p in &[5usize, 20, 50] {
        let exact = chi_second_derivative_at_integer(g(p));
        for k in [0i64, 1, 3] {
            let kf = k as f64;
            let fd = (chi_real(g(p), y(kf + h)) - 2.0 * chi_real(g(p), y(kf)) + chi_real(g(p), y(kf - h))) / (h * h);
            worst_rel = worst_rel.max(((fd - exact) / exact).abs());
        }
    }
    let fd_pass = worst_rel <= 1e-4;

    let mut ratios = Vec::new();
    for &p in &[5usize, 20] {
        for &eps in &[1e-2, 1e-3] {
            let residual = |e: f64| (chi_real(g(p), y(1.0 + e)) - chi_taylor_lobe(g(p), 1, e)).abs();
            ratios.push((p, eps, residual(eps) / residual(eps / 2.0)));
        }
    }
    let ratio_pass = ratios.iter().all(|&(_, _, r)| (6.0..=10.0).contains(&r));
    let shown: Vec<String> = ratios.iter().map(|(p, e, r)| format!("P={p} eps={e:e}: {r:.4}")).collect();
    outcome(
        fd_pass && ratio_pass,
        format!(
            "second derivative max rel err={worst_rel:e} ({}); residual ratios [{}] required in [6, 10] ({}). \
             chi_P is even about each integer, so the residual is quartic and the ratio tends to 16",
            if fd_pass { "ok" } else { "fail" },
            shown.join(", "),
            if ratio_pass { "ok" } else { "fail" },
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_1d = 0.0f64;
    let mut worst_2d = 0.0f64;
    let mut warnings = 0;
    for i in 0..500 {
        let p = rng.gen_range(2..=32usize);
        let n_modes = rng.gen_range(0..=40usize);
        let hermitian = i % 2 == 0;
        let mut modes = std::collections::BTreeMap::new();
        while modes.len() < n_modes {
            let k: i64 = rng.gen_range(-200..=200);
            let c = Complex64::new(rng.gen_range(-1.0..1.0), if hermitian && k == 0 { 0.0 } else { rng.gen_range(-1.0..1.0) });
            modes.insert(k, c);
            if hermitian {
                modes.insert(-k, c.conj());
            }
        }
        let spec = FourierSpectrum::new(modes, hermitian).unwrap();
        let l_max = 200u64.div_ceil(p as u64);
        let rbf = bias_rbf_general(&spec, g(p)).unwrap();
        let diag = bias_rbf_general_with(&spec, g(p), FilterMode::Diagnostic).unwrap();
        let alias = bias_classical_alias(&spec, g(p), l_max).unwrap();
        warnings += usize::from(alias.coverage_warning);
        worst_1d = worst_1d.max((rbf - alias.value).norm()).max((rbf - diag).norm());
        if hermitian {
            let real = bias_real_reduction(&spec, g(p), l_max).unwrap();
            worst_1d = worst_1d.max((rbf.re - real).abs()).max(rbf.im.abs());
        }

        let mut modes2 = std::collections::BTreeMap::new();
        while modes2.len() < n_modes {
            let k = (rng.gen_range(-200..=200i64), rng.gen_range(-200..=200i64));
            modes2.insert(k, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        let spec2 = Spectrum2D::new(modes2, false).unwrap();
        let rbf2 = bias_rbf_2d(&spec2, g(p)).unwrap();
        let alias2 = bias_classical_2d(&spec2, g(p), l_max).unwrap();
        warnings += usize::from(alias2.coverage_warning);
        worst_2d = worst_2d.max((rbf2 - alias2.value).norm());
    }
    let pass = worst_1d <= 1e-12 && worst_2d <= 1e-12 && warnings == 0;
    outcome(pass, format!("spectra=500 max diff 1D={worst_1d:e} 2D={worst_2d:e} coverage warnings={warnings}"))
}

fn criterion_9() -> Outcome {
    let spec = estimate_spectrum_dft(&Builtin1D::ExpCos, g(ENVELOPE_DFT_SAMPLES), ENVELOPE_DROP_TOL).unwrap();
    let model = DecayModel::fit_exponential(&spec).unwrap();
    assert_eq!(model, fitted_envelope(&Builtin1D::ExpCos).unwrap());
    let DecayModel::Exponential { gamma, c } = model else { unreachable!() };
    let mut failing = Vec::new();
    let mut worst_excess = 0.0f64;
    for p in 4..=32usize {
        let direct = direct_bias(&Builtin1D::ExpCos, g(p)).unwrap();
        let bound = bound_exponential(&model, g(p)).unwrap().value;
        if direct.abs() > bound {
            failing.push(p);
            worst_excess = worst_excess.max(direct.abs() - bound);
        }
    }
    let alg = bound_algebraic(&DecayModel::algebraic(1, 1.0).unwrap(), g(10)).unwrap();
    let alg_ok = (alg - PI * PI / 300.0).abs() <= 1e-12;
    let floor = f64::EPSILON * EXPCOS_INTEGRAL;
    outcome(
        failing.is_empty() && alg_ok,
        format!(
            "fit gamma={gamma:.6} C={c:.6} from {} estimated modes; |direct| > bound at P={failing:?} \
             (largest excess {worst_excess:e}, rounding floor of the direct bias ~{floor:e}); \
             algebraic bound s=1 C=1 P=10 = {alg} ({})",
            spec.len(),
            if alg_ok { "ok" } else { "fail" },
        ),
    )
}

fn criterion_10() -> Outcome {
    let v = 2f64.sqrt() - 1.0;
    let small = chi_tilde(g(100), y(v)).norm();
    let large = chi_tilde(g(100_000), y(v)).norm();
    let decay_ok = large * 10.0 <= small;
    let mut parity_ok = true;
    for p in 2..=64usize {
        let z = chi_tilde_naive(g(p), y(0.5)).value;
        let expect = if p % 2 == 0 { 0.0 } else { 1.0 / p as f64 };
        parity_ok &= (z - Complex64::new(expect, 0.0)).norm() < 1e-15;
        parity_ok &= (chi_tilde(g(p), y(0.5)) - z).norm() < 1e-15;
    }
    outcome(
        decay_ok && parity_ok,
        format!(
            "|chi(sqrt2-1)| P=1e2: {small:e}, P=1e5: {large:e} ({}); chi(1/2) = 0 for even P, 1/P for odd P ({})",
            if decay_ok { "ok" } else { "fail" },
            if parity_ok { "ok" } else { "fail" },
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("reference case sin^2, P=20", criterion_1),
        ("reference case cos(8 pi x), P=4", criterion_2),
        ("reference case 2D product, P=4", criterion_3),
        ("bias sweep P=2..200", criterion_4),
        ("resonance property suite", criterion_5),
        ("closed form vs direct sum", criterion_6),
        ("lobe curvature and Taylor residual", criterion_7),
        ("spectral filter vs alias sum, 1D and 2D", criterion_8),
        ("error bounds", criterion_9),
        ("equidistribution and half-frequency parity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {:>2} {}: {} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
