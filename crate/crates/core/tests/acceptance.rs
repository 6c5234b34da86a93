//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use casimir_core::barnes::{barnes_zeta2, BarnesArgs};
use casimir_core::casimir::{
    elliptic_casimir, elliptic_zeta, identity_zeta, large_p_ratio, residue_bracket, surface_report, triangle_area,
    EllipticOrder, TriangleSignature,
};
use casimir_core::hurwitz::{hurwitz_zeta, hurwitz_zeta_ds, riemann_zeta, HurwitzArgs};
use casimir_core::numkernel::{bernoulli_poly, half_ln_2pi, log_gamma, pi, pow10, ratio};
use casimir_core::oracle::{
    brute_barnes_sum, heat_kernel_kp, image_sum_lhs, image_sum_rhs, quad_elliptic_zeta_strip, quad_identity_zeta_strip,
    HeatKernelForm, QuadratureConfig,
};
use casimir_core::{real, working_digits, Real};

struct Outcome {
    passed: bool,
    detail: String,
}

fn order(p: u32) -> EllipticOrder {
    EllipticOrder::new(p).unwrap()
}

fn abs_diff(a: &Real, b: &Real) -> Real {
    real(a - b).abs()
}

fn rel_diff(a: &Real, b: &Real) -> Real {
    abs_diff(a, b) / real(b.abs_ref())
}

fn sci(x: &Real) -> String {
    format!("{:.2e}", x.to_f64())
}

const TABLE: [(u32, &str); 8] = [
    (2, "0.06784431430510"),
    (3, "0.13711344651904"),
    (4, "0.21953559350794"),
    (5, "0.31807385516328"),
    (6, "0.43395511099216"),
    (7, "0.56781535477158"),
    (8, "0.72002994863742"),
    (9, "0.89084009854643"),
];

fn parse(s: &str) -> Real {
    real(Real::parse(s).unwrap())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = real(0);
    for (p, printed) in TABLE {
        let dev = abs_diff(&elliptic_casimir(order(p)).unwrap(), &parse(printed));
        worst = worst.max(&dev);
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: worst <= 1e-13,
        detail: format!("table p=2..9 max deviation {} (tol 1e-13), {secs:.2}s", sci(&worst)),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let value = elliptic_casimir(order(2001)).unwrap();
    let ratio_2001 = large_p_ratio(order(2001)).unwrap();
    let rel = rel_diff(&value, &parse("38807.3481"));
    let ratio_dev = abs_diff(&ratio_2001, &parse("0.0096921424509"));
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: rel <= 5e-5 && ratio_dev <= 1e-10,
        detail: format!(
            "p=2001 value {:.6} rel dev {} (tol 5e-5), ratio dev {} (tol 1e-10), {secs:.1}s",
            value.to_f64(),
            sci(&rel),
            sci(&ratio_dev)
        ),
    }
}

fn criterion_3() -> Outcome {
    let d = working_digits() as i32;
    let value = identity_zeta(&ratio(-1, 2)).unwrap();
    let dev = abs_diff(&value, &parse("-0.00231380528192948"));
    let zeta3 = riemann_zeta(&real(3)).unwrap();
    let pi4 = pi().square().square();
    // closed form exactly as stated: identity_zeta(-1/2) = -3ζ(3)/(8π⁴)
    let stated = real(&value + real(&zeta3 * 3u32) / (real(&pi4) * 8u32)).abs();
    // -3ζ(3)/(16π⁴) is the form that reproduces the printed decimal
    let corrected = real(&value + real(&zeta3 * 3u32) / (real(&pi4) * 16u32)).abs();
    let tol = pow10(-(d - 6));
    Outcome {
        passed: dev <= 1e-16 && stated <= tol,
        detail: format!(
            "value dev {} (tol 1e-16); |ζ_1 + 3ζ(3)/(8π⁴)| = {} (tol {}); \
             |ζ_1 + 3ζ(3)/(16π⁴)| = {} for reference",
            sci(&dev),
            sci(&stated),
            sci(&tol),
            sci(&corrected)
        ),
    }
}

fn criterion_4() -> Outcome {
    let sig = TriangleSignature::new(2, 3, 7).unwrap();
    let report = surface_report(&sig, false).unwrap();
    let dev = abs_diff(&report.identity_total, &parse("-0.00034614446"));
    let area_dev = abs_diff(&triangle_area(&sig), &(pi() / 21u32));
    let area_tol = pow10(-(working_digits() as i32 - 2));
    Outcome {
        passed: dev <= 1e-10 && area_dev <= area_tol && report.invariants_hold(),
        detail: format!(
            "(2,3,7) identity_total dev {} (tol 1e-10), area - π/21 = {}",
            sci(&dev),
            sci(&area_dev)
        ),
    }
}

fn criterion_5() -> Outcome {
    let tol = pow10(-(working_digits() as i32 - 8));
    let mut worst = real(0);
    for sb in [-1, -3, -5] {
        for p in [2, 3, 5, 7, 11] {
            let v = residue_bracket(&real(sb), order(p)).unwrap().abs();
            worst = worst.max(&v);
        }
    }
    Outcome {
        passed: worst <= tol,
        detail: format!("max |residue bracket| {} over sB∈{{-1,-3,-5}}, p∈{{2,3,5,7,11}} (tol {})", sci(&worst), sci(&tol)),
    }
}

fn criterion_6() -> Outcome {
    let cfg = QuadratureConfig::new(pow10(-20), 12, real(40)).unwrap();
    let mut worst = real(0);
    let mut bounded = true;
    for s in [ratio(30, 100), ratio(35, 100), ratio(40, 100), ratio(45, 100)] {
        for p in [2, 3, 7] {
            let q = quad_elliptic_zeta_strip(&s, order(p), &cfg).unwrap();
            let dev = abs_diff(&elliptic_zeta(&s, order(p)).unwrap(), &q.value);
            bounded &= dev <= q.error_estimate;
            worst = worst.max(&dev);
        }
    }
    let mut worst_id = real(0);
    for s in [ratio(125, 100), ratio(140, 100)] {
        let q = quad_identity_zeta_strip(&s, &cfg).unwrap();
        let dev = abs_diff(&identity_zeta(&s).unwrap(), &q.value);
        bounded &= dev <= q.error_estimate;
        worst_id = worst_id.max(&dev);
    }
    Outcome {
        passed: worst <= 1e-10 && worst_id <= 1e-10 && bounded,
        detail: format!(
            "elliptic strip max dev {}, identity strip max dev {} (tol 1e-10), estimates bound deviations: {bounded}",
            sci(&worst),
            sci(&worst_id)
        ),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut all = true;
    let mut parts = Vec::new();
    for (s, g, a, b, cutoff) in [(3, 1, 1, 1, 5000), (3, 1, 2, 3, 4000), (4, 6, 2, 5, 2000)] {
        let args = BarnesArgs::new(real(s), real(g), a, b).unwrap();
        let sum = brute_barnes_sum(&args, cutoff).unwrap();
        let value = barnes_zeta2(&args).unwrap();
        let inside = sum.contains(&value);
        let width = sum.width();
        all &= inside && width <= 1e-12;
        parts.push(format!("({s},{g},{a},{b}) inside={inside} width={}", sci(&width)));
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome { passed: all, detail: format!("{} (tol 1e-12), {secs:.1}s", parts.join("; ")) }
}

fn criterion_8() -> (Outcome, Outcome) {
    let tol = pow10(-(working_digits() as i32 - 8));
    let mut worst = real(0);
    for p in [2, 3, 5, 7, 12] {
        for x in [ratio(1, 100), ratio(1, 10), real(1), real(5)] {
            let lhs = image_sum_lhs(p, &x).unwrap();
            let rhs = image_sum_rhs(p, &x).unwrap();
            worst = worst.max(&rel_diff(&lhs, &rhs));
        }
    }
    let cfg = QuadratureConfig::new(pow10(-16), 12, real(40)).unwrap();
    let mut printed_worst = real(0);
    let mut image_worst = real(0);
    for p in [2, 3, 7] {
        for t in [ratio(1, 10), real(1), real(10)] {
            let coth = heat_kernel_kp(order(p), &t, &cfg, HeatKernelForm::Coth).unwrap().value;
            let printed = heat_kernel_kp(order(p), &t, &cfg, HeatKernelForm::PrintedMSum).unwrap().value;
            let image = heat_kernel_kp(order(p), &t, &cfg, HeatKernelForm::ImageSum).unwrap().value;
            printed_worst = printed_worst.max(&rel_diff(&printed, &coth));
            image_worst = image_worst.max(&rel_diff(&image, &coth));
        }
    }
    let main = Outcome {
        passed: worst <= tol && printed_worst <= 1e-12,
        detail: format!(
            "image sum max rel dev {} (tol {}); K_p coth vs cosh-numerator m-sum max rel dev {} (tol 1e-12)",
            sci(&worst),
            sci(&tol),
            sci(&printed_worst)
        ),
    };
    let reference = Outcome {
        passed: image_worst <= 1e-12,
        detail: format!("K_p coth vs m-sum without cosh x max rel dev {} (tol 1e-12)", sci(&image_worst)),
    };
    (main, reference)
}

fn criterion_9() -> Outcome {
    let d = working_digits() as i32;
    let tol = pow10(-(d - 5));
    let mut failures = Vec::new();

    for n in 0..=4u32 {
        for w in [ratio(3, 10), ratio(1, 2), real(1), ratio(7, 4)] {
            let z = hurwitz_zeta(&HurwitzArgs::new(-real(n), real(&w)).unwrap()).unwrap();
            let b = bernoulli_poly(n as usize + 1, &w).unwrap() / (n + 1);
            if real(z + b).abs() > tol {
                failures.push(format!("bernoulli n={n} w={}", w.to_f64()));
            }
        }
    }
    for w in [ratio(1, 10), ratio(1, 2), real(1), ratio(19, 10)] {
        let dz = hurwitz_zeta_ds(&HurwitzArgs::new(real(0), real(&w)).unwrap()).unwrap();
        let lerch = log_gamma(&w).unwrap() - half_ln_2pi();
        if abs_diff(&dz, &lerch) > tol {
            failures.push(format!("lerch w={}", w.to_f64()));
        }
    }
    for s in [real(-2), real(-1), ratio(2, 5), real(3)] {
        for w in [ratio(3, 10), ratio(5, 4), ratio(13, 5)] {
            let at = |w: &Real| {
                let args = HurwitzArgs::new(real(&s), real(w)).unwrap();
                (hurwitz_zeta(&args).unwrap(), hurwitz_zeta_ds(&args).unwrap())
            };
            let (z0, d0) = at(&w);
            let (z1, d1) = at(&(real(&w) + 1u32));
            let power = (real(w.ln_ref()) * -real(&s)).exp();
            let dpower = -real(w.ln_ref()) * &power;
            let scale = real(power.abs_ref()).max(&real(1));
            if abs_diff(&real(&z0 - &z1), &power) > real(&tol * &scale)
                || abs_diff(&real(&d0 - &d1), &dpower) > real(&tol * &scale)
            {
                failures.push(format!("shift s={} w={}", s.to_f64(), w.to_f64()));
            }
        }
    }
    let h = pow10(-d / 4);
    for (s, w) in [(ratio(-3, 2), ratio(1, 3)), (ratio(1, 2), real(1)), (ratio(5, 2), ratio(7, 4)), (real(-2), real(2))] {
        let f = |s: Real| hurwitz_zeta(&HurwitzArgs::new(s, real(&w)).unwrap()).unwrap();
        let fd = (f(real(&s) + &h) - f(real(&s) - &h)) / (real(&h) * 2u32);
        let exact = hurwitz_zeta_ds(&HurwitzArgs::new(real(&s), real(&w)).unwrap()).unwrap();
        if rel_diff(&fd, &exact) > h {
            failures.push(format!("finite difference s={} w={}", s.to_f64(), w.to_f64()));
        }
    }
    for (s, w) in [(real(3), real(1)), (ratio(9, 2), ratio(3, 10)), (real(6), ratio(5, 2))] {
        // Σ_{k<N} (w+k)^{-s} + [∫_{w+N}^∞, (w+N)^{-s} + ∫_{w+N}^∞]
        let n = 2000u32;
        let mut direct = real(0);
        for k in 0..n {
            direct += (real(real(&w + k).ln_ref()) * -real(&s)).exp();
        }
        let edge = real(&w + n);
        let edge_pow = (real(edge.ln_ref()) * -real(&s)).exp();
        let integral = real(&edge_pow * &edge) / (real(&s) - 1u32);
        let lo = real(&direct + &integral);
        let hi = direct + integral + edge_pow;
        let z = hurwitz_zeta(&HurwitzArgs::new(real(&s), real(&w)).unwrap()).unwrap();
        if !(z >= lo && z <= hi) {
            failures.push(format!("direct sum s={} w={}", s.to_f64(), w.to_f64()));
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "Bernoulli, Lerch, shift, finite-difference and direct-sum checks all within tolerance".to_string()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn criterion_10() -> Outcome {
    let values: Vec<Real> = (2..=50).map(|p| elliptic_casimir(order(p)).unwrap()).collect();
    let positive = values.iter().all(|v| *v > 0);
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    Outcome {
        passed: positive && increasing,
        detail: format!(
            "p=2..50 positive: {positive}, strictly increasing: {increasing}, ζ_50(-1/2) = {:.6}",
            values.last().unwrap().to_f64()
        ),
    }
}

fn main() -> ExitCode {
    println!("acceptance criteria at {} working digits", working_digits());
    let (c8, c8_reference) = criterion_8();
    let results = [
        ("1", criterion_1()),
        ("2", criterion_2()),
        ("3", criterion_3()),
        ("4", criterion_4()),
        ("5", criterion_5()),
        ("6", criterion_6()),
        ("7", criterion_7()),
        ("8", c8),
        ("9", criterion_9()),
        ("10", criterion_10()),
    ];
    let mut failed = 0;
    for (id, outcome) in &results {
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {verdict}  {}", outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    let verdict = if c8_reference.passed { "PASS" } else { "FAIL" };
    println!("reference  8: {verdict}  {}", c8_reference.detail);
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 && c8_reference.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
