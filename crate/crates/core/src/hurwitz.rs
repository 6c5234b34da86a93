//! Hurwitz zeta function `ζ_H(s, w) = Σ_{k≥0} (w+k)^{-s}` and its `s`-derivative
//! for real `s ≠ 1` and `w > 0`, by Euler–Maclaurin summation.
//!
//! The derivative is obtained by differentiating every Euler–Maclaurin term
//! analytically. The rising factorial `s(s+1)…(s+2j-2)` is carried together
//! with its derivative by the product rule, so a vanishing factor (negative
//! integer `s`) contributes its exact limit instead of a 0/0 ratio.

use rug::ops::Pow;

use crate::error::{convergence, domain, Result};
use crate::numkernel::{em_coefficient, pow10, real, with_guard_digits, working_digits, Real};

/// Half-width of the excluded neighbourhood of the pole at `s = 1`.
pub const POLE_EXCLUSION: f64 = 1e-6;
/// Maximum number of Euler–Maclaurin correction terms.
pub const MAX_CORRECTION_TERMS: usize = 80;

#[derive(Debug, Clone, PartialEq)]
pub struct HurwitzArgs {
    pub s: Real,
    pub w: Real,
}

impl HurwitzArgs {
    pub fn new(s: Real, w: Real) -> Result<Self> {
        check_w(&w)?;
        check_s(&s)?;
        Ok(Self { s, w })
    }
}

fn check_w(w: &Real) -> Result<()> {
    if *w <= 0 {
        return Err(domain(format!("Hurwitz shift must be positive, got w = {}", w.to_f64())));
    }
    Ok(())
}

fn check_s(s: &Real) -> Result<()> {
    if real(s - 1u32).abs() <= POLE_EXCLUSION {
        return Err(domain(format!(
            "s = {} lies inside the pole exclusion zone around s = 1",
            s.to_f64()
        )));
    }
    Ok(())
}

pub fn hurwitz_zeta(args: &HurwitzArgs) -> Result<Real> {
    Ok(hurwitz_zeta_with_ds(args)?.0)
}

/// `∂ζ_H/∂s` at `(s, w)`.
pub fn hurwitz_zeta_ds(args: &HurwitzArgs) -> Result<Real> {
    Ok(hurwitz_zeta_with_ds(args)?.1)
}

/// Value and `s`-derivative together; they share all logarithms.
pub fn hurwitz_zeta_with_ds(args: &HurwitzArgs) -> Result<(Real, Real)> {
    let mut out = hurwitz_many(&args.w, std::slice::from_ref(&args.s))?;
    Ok(out.pop().expect("one result per exponent"))
}

/// Riemann zeta `ζ(s) = ζ_H(s, 1)`.
pub fn riemann_zeta(s: &Real) -> Result<Real> {
    hurwitz_zeta(&HurwitzArgs::new(real(s), real(1))?)
}

/// `(ζ_H(s, w), ∂_s ζ_H(s, w))` for several exponents sharing the same shift `w`.
///
/// The direct part of the sum needs `ln(w+k)` only once for all exponents,
/// which is what the Barnes reduction exploits (it always asks for `s-1` and `s`).
pub(crate) fn hurwitz_many(w: &Real, exponents: &[Real]) -> Result<Vec<(Real, Real)>> {
    check_w(w)?;
    for s in exponents {
        check_s(s)?;
    }
    let digits = working_digits();
    let max_abs_s = exponents
        .iter()
        .map(|s| s.to_f64().abs())
        .fold(0.0f64, f64::max);
    // w + N >= max(15, 2|s|, 0.9 digits)
    let target = f64::max(15.0, f64::max(2.0 * max_abs_s, 0.9 * f64::from(digits)));
    let n_terms = (target - w.to_f64()).ceil().max(0.0) as u64;
    // The direct sum grows like (w+N)^{1-s}; carry enough guard digits to absorb that cancellation.
    let guard = 5 + ((max_abs_s + 1.0) * (w.to_f64() + n_terms as f64).log10()).ceil() as u32;

    let raw = with_guard_digits(guard, || euler_maclaurin(w, exponents, n_terms, digits))?;
    Ok(raw.into_iter().map(|(v, d)| (real(&v), real(&d))).collect())
}

fn euler_maclaurin(
    w: &Real,
    exponents: &[Real],
    n_terms: u64,
    user_digits: u32,
) -> Result<Vec<(Real, Real)>> {
    let w = real(w);
    let exponents: Vec<Real> = exponents.iter().map(real).collect();

    let mut sums = vec![(real(0), real(0)); exponents.len()];
    for k in 0..n_terms {
        let x = real(&w + k);
        let ln_x = x.ln();
        for (s, (value, deriv)) in exponents.iter().zip(sums.iter_mut()) {
            let term = real(-(real(s * &ln_x))).exp();
            *deriv -= real(&term * &ln_x);
            *value += term;
        }
    }

    let a = real(&w + n_terms);
    let ln_a = real(a.ln_ref());
    let a2 = real(&a * &a);
    let tol = pow10(-(user_digits as i32 + 5));

    let mut out = Vec::with_capacity(exponents.len());
    for (s, (direct, direct_ds)) in exponents.iter().zip(sums) {
        let a_pow = real(-(real(s * &ln_a))).exp(); // a^{-s}
        let a_pow_1 = real(&a_pow * &a); // a^{1-s}
        let sm1 = real(s - 1u32);

        let integral = real(&a_pow_1 / &sm1);
        let integral_ds = -(real(&ln_a * &integral)) - real(&integral / &sm1);
        let half = real(&a_pow / 2u32);
        let half_ds = -(real(&ln_a * &half));

        let scale_v = real(direct.abs_ref()) + real(integral.abs_ref()) + real(half.abs_ref());
        let scale_d = real(direct_ds.abs_ref()) + real(integral_ds.abs_ref()) + real(half_ds.abs_ref());
        let tiny = pow10(-(4 * user_digits as i32));
        let scale_v = if scale_v > tiny { scale_v } else { tiny.clone() };
        let scale_d = if scale_d > tiny { scale_d } else { tiny };

        let mut value = direct + integral + half;
        let mut deriv = direct_ds + integral_ds + half_ds;

        // rising factorial s(s+1)…(s+2j-2) and its s-derivative
        let mut poch = real(s);
        let mut poch_ds = real(1);
        let mut power = real(&a_pow / &a); // a^{-s-2j+1} at j = 1
        let mut previous: Option<Real> = None;
        let mut converged = false;
        for j in 1..=MAX_CORRECTION_TERMS {
            let c = em_coefficient(j)?;
            let term = real(&c * &poch) * &power;
            let term_ds = real(&c * &power) * (real(&poch_ds) - real(&poch * &ln_a));
            let size = (real(term.abs_ref()) / &scale_v).max(&(real(term_ds.abs_ref()) / &scale_d));
            if size < tol {
                value += term;
                deriv += term_ds;
                converged = true;
                break;
            }
            if let Some(prev) = &previous {
                if size > *prev {
                    // asymptotic series started to diverge; the previous partial sum is optimal
                    converged = true;
                    break;
                }
            }
            value += term;
            deriv += term_ds;
            previous = Some(size);

            for i in [2 * j - 1, 2 * j] {
                let factor = real(s + i as u32);
                poch_ds = real(&poch_ds * &factor) + &poch;
                poch *= factor;
            }
            power /= &a2;
        }
        if !converged {
            return Err(convergence(format!(
                "Euler–Maclaurin tail for s = {} did not converge within {MAX_CORRECTION_TERMS} terms",
                s.to_f64()
            )));
        }
        out.push((value, deriv));
    }
    Ok(out)
}

/// `w^{-s}`, used by the shift-identity tests and oracles.
pub fn power_neg(w: &Real, s: &Real) -> Real {
    real(w).pow(real(-real(s)))
}
