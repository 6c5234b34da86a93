//! Two-dimensional Barnes zeta function with positive-integer periods,
//!
//! `ζ_B2(s, γ | α, β) = Σ_{m,n≥0} (γ + αm + βn)^{-s}`,
//!
//! continued to all real `s` away from its poles at `s = 1, 2`.
//!
//! Splitting `m = βN + j` and `n = αM + k` (`0 ≤ j < β`, `0 ≤ k < α`) turns the
//! lattice sum into `αβ` one-dimensional sums over `ν = N + M`, each of which
//! carries multiplicity `ν + 1`:
//!
//! `ζ_B2 = (αβ)^{-s} Σ_{j,k} [ζ_H(s-1, w_jk) + (1 - w_jk) ζ_H(s, w_jk)]`,
//! `w_jk = (γ + αj + βk) / (αβ)`.

use rug::Rational;

use crate::error::{domain, Result};
use crate::hurwitz::{hurwitz_many, POLE_EXCLUSION};
use crate::numkernel::{real, with_guard_digits, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct BarnesArgs {
    pub s: Real,
    pub gamma: Real,
    pub alpha: u32,
    pub beta: u32,
}

impl BarnesArgs {
    pub fn new(s: Real, gamma: Real, alpha: u32, beta: u32) -> Result<Self> {
        check_periods(&gamma, alpha, beta)?;
        for pole in [1u32, 2] {
            if real(&s - pole).abs() <= POLE_EXCLUSION {
                return Err(domain(format!(
                    "s = {} lies inside the Barnes pole exclusion zone around s = {pole}",
                    s.to_f64()
                )));
            }
        }
        Ok(Self { s, gamma, alpha, beta })
    }
}

fn check_periods(gamma: &Real, alpha: u32, beta: u32) -> Result<()> {
    if *gamma <= 0 {
        return Err(domain(format!("Barnes parameter γ must be positive, got {}", gamma.to_f64())));
    }
    if alpha == 0 || beta == 0 {
        return Err(domain("Barnes periods must be positive integers"));
    }
    Ok(())
}

/// One residue class `(j, k)` of the lattice and its Hurwitz shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueClassWeight {
    pub j: u32,
    pub k: u32,
    pub w: Real,
}

/// All `αβ` Hurwitz shifts `w_jk = (γ + αj + βk)/(αβ)`, ordered by `(j, k)`.
pub fn residue_weights(gamma: &Real, alpha: u32, beta: u32) -> Result<Vec<ResidueClassWeight>> {
    check_periods(gamma, alpha, beta)?;
    let period = u64::from(alpha) * u64::from(beta);
    let mut out = Vec::with_capacity(period as usize);
    for j in 0..beta {
        for k in 0..alpha {
            let offset = u64::from(alpha) * u64::from(j) + u64::from(beta) * u64::from(k);
            let w = (real(gamma) + offset) / period;
            out.push(ResidueClassWeight { j, k, w });
        }
    }
    Ok(out)
}

pub fn barnes_zeta2(args: &BarnesArgs) -> Result<Real> {
    Ok(barnes_zeta2_with_ds(args)?.0)
}

/// `∂ζ_B2/∂s = (αβ)^{-s} [F'(s) - ln(αβ) F(s)]` with `F` the bracketed Hurwitz sum.
pub fn barnes_zeta2_ds(args: &BarnesArgs) -> Result<Real> {
    Ok(barnes_zeta2_with_ds(args)?.1)
}

pub fn barnes_zeta2_with_ds(args: &BarnesArgs) -> Result<(Real, Real)> {
    let period = u64::from(args.alpha) * u64::from(args.beta);
    let guard = 4 + (period as f64).log10().ceil() as u32;
    let (value, deriv) = with_guard_digits(guard, || -> Result<(Real, Real)> {
        let s = real(&args.s);
        let exponents = [real(&s - 1u32), real(&s)];
        let mut f = real(0);
        let mut f_ds = real(0);
        for class in residue_weights(&args.gamma, args.alpha, args.beta)? {
            let vals = hurwitz_many(&class.w, &exponents)?;
            let (shifted, shifted_ds) = &vals[0];
            let (plain, plain_ds) = &vals[1];
            let one_minus_w = real(1) - &class.w;
            f += shifted;
            f += real(&one_minus_w * plain);
            f_ds += shifted_ds;
            f_ds += real(&one_minus_w * plain_ds);
        }
        let ln_period = real(period).ln();
        let scale = real(-real(&s * &ln_period)).exp();
        let value = real(&scale * &f);
        let deriv = scale * (f_ds - ln_period * f);
        Ok((value, deriv))
    })?;
    Ok((real(&value), real(&deriv)))
}

/// `ζ_B2(-1, γ | α, β) = B₃⁽²⁾(γ | α, β) / (6αβ)` in closed form,
/// `(2γ - α - β)(2γ(γ - α - β) + αβ) / (24αβ)`.
pub fn gen_bernoulli_b32(gamma: &Real, alpha: u32, beta: u32) -> Real {
    let a = real(alpha);
    let b = real(beta);
    let sum = real(&a + &b);
    let first = real(gamma) * 2u32 - &sum;
    let second = real(gamma) * 2u32 * (real(gamma) - &sum) + real(&a * &b);
    first * second / (a * b * 24u32)
}

/// Exact rational version of [`gen_bernoulli_b32`] for rational `γ`.
pub fn gen_bernoulli_b32_exact(gamma: &Rational, alpha: u32, beta: u32) -> Rational {
    let a = Rational::from(alpha);
    let b = Rational::from(beta);
    let sum = Rational::from(&a + &b);
    let g2 = Rational::from(gamma * 2u32);
    let first = Rational::from(&g2 - &sum);
    let second = &g2 * Rational::from(gamma - &sum) + Rational::from(&a * &b);
    first * second / (a * b * 24u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{pow10, ratio, working_digits};

    fn args(s: Real, g: Real, a: u32, b: u32) -> BarnesArgs {
        BarnesArgs::new(s, g, a, b).unwrap()
    }

    #[test]
    fn weights_for_two_three() {
        let ws = residue_weights(&real(1), 2, 3).unwrap();
        let got: Vec<f64> = ws.iter().map(|c| c.w.to_f64()).collect();
        // γ/6 + j/3 + k/2 in (j, k) order
        let expected = [1.0 / 6.0, 2.0 / 3.0, 0.5, 1.0, 5.0 / 6.0, 4.0 / 3.0];
        assert_eq!(got.len(), 6);
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-15);
        }
        let single = residue_weights(&real(1), 1, 1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].w, 1);
    }

    #[test]
    fn weights_enumerate_all_classes() {
        let ws = residue_weights(&real(6), 2, 5).unwrap();
        assert_eq!(ws.len(), 10);
        for c in &ws {
            let expected = ratio(6 + 2 * i64::from(c.j) + 5 * i64::from(c.k), 10);
            assert_eq!(c.w, expected);
            assert!(c.j < 5 && c.k < 2);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gen_bernoulli_b32_exact(&Rational::from(1), 1, 1), 0);
        assert_eq!(gen_bernoulli_b32_exact(&Rational::from(1), 2, 3), Rational::from((1, 24)));
        assert_eq!(gen_bernoulli_b32_exact(&Rational::from((9, 2)), 2, 7), 0);
        let f = gen_bernoulli_b32(&real(1), 2, 3);
        assert!(real(&f - ratio(1, 24)).abs() < pow10(-38));
    }

    #[test]
    fn continued_value_at_minus_one_matches_closed_form() {
        let tol = pow10(-(working_digits() as i32 - 6));
        let mut cases = vec![(real(1), 1, 1)];
        for p in 2..=9u32 {
            cases.push((real(1), 2, p));
            cases.push((real(1 + p), 2, p));
        }
        for (g, a, b) in cases {
            let z = barnes_zeta2(&args(real(-1), real(&g), a, b)).unwrap();
            let closed = gen_bernoulli_b32(&g, a, b);
            assert!(real(&z - &closed).abs() <= tol, "γ={} α={a} β={b}", g.to_f64());
        }
    }

    #[test]
    fn period_swap_symmetry() {
        let tol = pow10(-(working_digits() as i32 - 6));
        for s in [real(-1), ratio(1, 2), ratio(5, 2), real(3)] {
            for (g, a, b) in [(ratio(7, 5), 2, 3), (real(1), 3, 7), (real(2), 4, 6)] {
                let (v1, d1) = barnes_zeta2_with_ds(&args(real(&s), real(&g), a, b)).unwrap();
                let (v2, d2) = barnes_zeta2_with_ds(&args(real(&s), real(&g), b, a)).unwrap();
                let scale = real(v1.abs_ref()).max(&real(1));
                assert!(real(&v1 - &v2).abs() <= real(&tol * &scale));
                assert!(real(&d1 - &d2).abs() <= real(&tol * &scale) * 10u32);
            }
        }
    }

    #[test]
    fn unit_periods_reduce_to_riemann() {
        // ζ_B2(s, 1 | 1, 1) = ζ(s - 1)
        let s = ratio(7, 3);
        let z = barnes_zeta2(&args(real(&s), real(1), 1, 1)).unwrap();
        let r = crate::hurwitz::riemann_zeta(&(s - 1u32)).unwrap();
        assert!(real(&z - &r).abs() < pow10(-36));
    }

    #[test]
    fn derivative_matches_central_difference() {
        let d = working_digits() as i32;
        let h = pow10(-d / 4);
        for (g, a, b) in [(real(1), 2, 2), (real(1), 2, 7), (real(8), 2, 7)] {
            let up = barnes_zeta2(&args(real(-1) + &h, real(&g), a, b)).unwrap();
            let dn = barnes_zeta2(&args(real(-1) - &h, real(&g), a, b)).unwrap();
            let fd = (up - dn) / (real(&h) * 2u32);
            let exact = barnes_zeta2_ds(&args(real(-1), g, a, b)).unwrap();
            let rel = real(&fd - &exact).abs() / real(exact.abs_ref());
            assert!(rel < pow10(-d / 4));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(BarnesArgs::new(real(1), real(1), 2, 3).is_err());
        assert!(BarnesArgs::new(real(2) + 1e-8, real(1), 2, 3).is_err());
        assert!(BarnesArgs::new(real(3), real(0), 2, 3).is_err());
        assert!(BarnesArgs::new(real(3), real(1), 0, 3).is_err());
        assert!(residue_weights(&real(-1), 1, 1).is_err());
    }
}
