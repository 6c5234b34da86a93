//! Self-check suites: each check compares a continued value against an
//! independent oracle and records the deviation and the tolerance it must meet.

use casimir_core::barnes::{barnes_zeta2, BarnesArgs};
use casimir_core::casimir::{elliptic_zeta, identity_zeta, residue_bracket, EllipticOrder};
use casimir_core::numkernel::{pow10, ratio};
use casimir_core::oracle::{
    brute_barnes_sum, heat_kernel_kp, image_sum_lhs, image_sum_rhs, quad_elliptic_zeta_strip, quad_identity_zeta_strip,
    HeatKernelForm, QuadratureConfig,
};
use casimir_core::{real, with_working_digits, working_digits, Real, Result};
use rayon::prelude::*;

use crate::record::{short, Check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Residues,
    Strip,
    Imagesum,
    Bruteforce,
    Heatkernel,
    All,
}

/// Relative perturbation applied to every continued value before comparison,
/// so that a broken build can be simulated.
#[derive(Debug, Clone, Copy, Default)]
pub struct Fault(pub f64);

impl Fault {
    fn apply(self, v: Real) -> Real {
        if self.0 == 0.0 {
            return v;
        }
        let shift = real(v.abs_ref()).max(&real(1)) * self.0;
        v + shift
    }
}

/// A deferred check; evaluated on a worker thread at the requested precision.
type Job = Box<dyn Fn(Fault) -> Result<Check> + Send + Sync>;

fn order(p: u32) -> EllipticOrder {
    EllipticOrder::new(p).expect("suite orders are ≥ 2")
}

fn check(name: String, deviation: Real, tolerance: Real) -> Check {
    Check { name, passed: deviation <= tolerance, deviation: short(&deviation), tolerance: short(&tolerance) }
}

fn quad_cfg() -> QuadratureConfig {
    let floor = pow10(-(working_digits() as i32 - 8));
    QuadratureConfig::new(pow10(-16).max(&floor), 12, real(40)).expect("valid quadrature settings")
}

fn residues() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for sb in [-1i32, -3, -5] {
        for p in [2u32, 3, 5, 7, 11] {
            jobs.push(Box::new(move |fault| {
                let v = fault.apply(residue_bracket(&real(sb), order(p))?);
                let tol = pow10(-(working_digits() as i32 - 8));
                Ok(check(format!("residue sB={sb} p={p}"), v.abs(), tol))
            }));
        }
    }
    // a simple pole at s = 1/2: (s - 1/2) ζ_p(s) settles as s → 1/2
    for p in [2u32, 3, 7] {
        jobs.push(Box::new(move |fault| {
            let at = |k: i32| -> Result<Real> {
                let h = pow10(-k);
                Ok(fault.apply(elliptic_zeta(&(ratio(1, 2) - &h), order(p))?) * h)
            };
            let (a, b) = (at(4)?, at(5)?);
            let rel = real(&a - &b).abs() / real(b.abs_ref());
            Ok(check(format!("simple pole at 1/2 p={p}"), rel, pow10(-3)))
        }));
    }
    jobs
}

fn strip() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for s in [30i64, 35, 40, 45] {
        for p in [2u32, 3, 7] {
            jobs.push(Box::new(move |fault| {
                let s = ratio(s, 100);
                let quad = quad_elliptic_zeta_strip(&s, order(p), &quad_cfg())?;
                let v = fault.apply(elliptic_zeta(&s, order(p))?);
                let name = format!("elliptic strip s={} p={p}", s.to_f64());
                Ok(check(name, (v - quad.value).abs(), real(1e-10)))
            }));
        }
    }
    for s in [125i64, 140] {
        jobs.push(Box::new(move |fault| {
            let s = ratio(s, 100);
            let quad = quad_identity_zeta_strip(&s, &quad_cfg())?;
            let v = fault.apply(identity_zeta(&s)?);
            Ok(check(format!("identity strip s={}", s.to_f64()), (v - quad.value).abs(), real(1e-10)))
        }));
    }
    jobs
}

fn imagesum() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for p in [2u32, 3, 5, 7, 12] {
        for (num, den) in [(1i64, 100i64), (1, 10), (1, 1), (5, 1)] {
            jobs.push(Box::new(move |fault| {
                let x = ratio(num, den);
                let lhs = fault.apply(image_sum_lhs(p, &x)?);
                let rhs = image_sum_rhs(p, &x)?;
                let rel = real(&lhs - &rhs).abs() / rhs.abs();
                let tol = pow10(-(working_digits() as i32 - 8));
                Ok(check(format!("image sum p={p} x={}", x.to_f64()), rel, tol))
            }));
        }
    }
    jobs
}

fn bruteforce() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for (s, g, a, b, cutoff) in [(3u32, 1u32, 1u32, 1u32, 5000u32), (3, 1, 2, 3, 4000), (4, 6, 2, 5, 2000)] {
        jobs.push(Box::new(move |fault| {
            let args = BarnesArgs::new(real(s), real(g), a, b)?;
            let sum = brute_barnes_sum(&args, cutoff)?;
            let v = fault.apply(barnes_zeta2(&args)?);
            // distance outside the bracket; zero when inside
            let outside = real(sum.lower() - &v).max(&real(&v - sum.upper())).max(&real(0));
            let deviation = outside + sum.width();
            Ok(check(format!("brute force s={s} γ={g} ω=({a},{b})"), deviation, real(1e-12)))
        }));
    }
    jobs
}

fn heatkernel() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for p in [2u32, 3, 7] {
        for (num, den) in [(1i64, 10i64), (1, 1), (10, 1)] {
            jobs.push(Box::new(move |fault| {
                let t = ratio(num, den);
                let coth = fault.apply(heat_kernel_kp(order(p), &t, &quad_cfg(), HeatKernelForm::Coth)?.value);
                let image = heat_kernel_kp(order(p), &t, &quad_cfg(), HeatKernelForm::ImageSum)?.value;
                let rel = real(&coth - &image).abs() / image.abs();
                Ok(check(format!("heat kernel p={p} t={}", t.to_f64()), rel, real(1e-12)))
            }));
        }
    }
    jobs
}

fn jobs(suite: Suite) -> Vec<Job> {
    match suite {
        Suite::Residues => residues(),
        Suite::Strip => strip(),
        Suite::Imagesum => imagesum(),
        Suite::Bruteforce => bruteforce(),
        Suite::Heatkernel => heatkernel(),
        Suite::All => [residues(), strip(), imagesum(), bruteforce(), heatkernel()].into_iter().flatten().collect(),
    }
}

/// Runs every check of `suite` in parallel at `digits` working digits; results keep suite order.
pub fn run(suite: Suite, digits: u32, fault: Fault) -> Result<Vec<Check>> {
    jobs(suite)
        .par_iter()
        .map(|job| with_working_digits(digits, || job(fault))?)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_breaks_residues() {
        let clean = run(Suite::Imagesum, 30, Fault::default()).unwrap();
        assert!(clean.iter().all(|c| c.passed));
        let broken = run(Suite::Residues, 30, Fault(1e-6)).unwrap();
        assert!(broken.iter().any(|c| !c.passed));
    }
}
