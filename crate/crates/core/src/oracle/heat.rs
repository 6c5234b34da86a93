//! Heat-kernel side of the verification: the conical image-sum identity, the
//! elliptic bracket `coth(px)/sinh(2x) - 1/(2p sinh²x)` and the elliptic
//! heat-kernel contribution `K_p(t)`.

use std::cell::RefCell;
use std::collections::HashMap;

use rug::Rational;

use super::quadrature::{tanh_sinh, QuadratureConfig, QuadratureResult};
use crate::casimir::EllipticOrder;
use crate::error::{domain, Error, Result};
use crate::numkernel::{bernoulli_rational, pi, real, with_guard_digits, working_bits, working_digits, Real};

/// Below this the bracket is summed from its Maclaurin series.
pub const SERIES_SWITCH: f64 = 1e-3;
/// Largest `p·x` accepted by the exponential forms.
pub const MAX_EXPONENT_ARGUMENT: f64 = 3.0e8;

fn check_x(x: &Real) -> Result<()> {
    if *x <= 0 {
        return Err(domain(format!("x must be positive, got {}", x.to_f64())));
    }
    Ok(())
}

/// `Σ_{m=0}^{p-1} 1 / (sin²(πm/p) + sinh²x)` summed term by term.
pub fn image_sum_lhs(p: u32, x: &Real) -> Result<Real> {
    check_x(x)?;
    if p == 0 {
        return Err(domain("image sum needs p ≥ 1"));
    }
    let sinh2 = real(x.sinh_ref()).square();
    let mut acc = real(0);
    for m in 0..p {
        let angle = pi() * m / p;
        acc += (angle.sin().square() + &sinh2).recip();
    }
    Ok(acc)
}

/// `2p coth(px) / sinh(2x)` in the decaying-exponential form
/// `2p (1 + e^{-2px}) / (1 - e^{-2px}) · 2e^{-2x} / (1 - e^{-4x})`.
pub fn image_sum_rhs(p: u32, x: &Real) -> Result<Real> {
    check_x(x)?;
    if p == 0 {
        return Err(domain("image sum needs p ≥ 1"));
    }
    let px = real(x * p);
    if px.to_f64() > MAX_EXPONENT_ARGUMENT {
        return Err(Error::Overflow(format!("p·x = {} exceeds the exponent range", px.to_f64())));
    }
    Ok(coth(&px) * csch(&(real(x) * 2u32)) * (2 * p))
}

/// `coth y` for `y > 0` via `e^{-2y}`.
fn coth(y: &Real) -> Real {
    let m = real(-real(y * 2u32));
    let e = real(m.exp_ref());
    (e + 1u32) / -m.exp_m1()
}

/// `1/sinh y` for `y > 0` via `e^{-y}`.
fn csch(y: &Real) -> Real {
    let e = real(-real(y)).exp();
    let m2 = real(-real(y * 2u32));
    e * 2u32 / -m2.exp_m1()
}

thread_local! {
    static SERIES: RefCell<HashMap<(u32, u32), Vec<Real>>> = RefCell::new(HashMap::new());
}

/// Maclaurin coefficients of the bracket in powers of `x²`.
///
/// With `coth y = Σ a_n y^{2n-1}`, `a_n = 2^{2n} B_{2n}/(2n)!`,
/// `csch y = Σ b_n y^{2n-1}`, `b_n = -2(2^{2n-1} - 1) B_{2n}/(2n)!`, and
/// `csch² y = -d/dy coth y = -Σ (2n-1) a_n y^{2n-2}`, the coefficient of `x^{2K-2}` is
///
/// `c_K = Σ_{n+m=K} a_n b_m p^{2n-1} 2^{2m-1} + (2K-1) a_K / (2p)`.
///
/// `c_0 = 0` (the `1/x²` poles cancel) and `c_1 = p/6 - 1/(6p)`.
fn bracket_series(p: u32, terms: usize) -> Result<Vec<Rational>> {
    let mut a = Vec::with_capacity(terms + 1);
    let mut b = Vec::with_capacity(terms + 1);
    for n in 0..=terms {
        let bern = bernoulli_rational(2 * n)?;
        let fact = rug::Integer::from(rug::Integer::factorial(2 * n as u32));
        let base = bern / fact;
        let two_2n = rug::Integer::from(1) << (2 * n as u32);
        a.push(&base * Rational::from(two_2n.clone()));
        // -2(2^{2n-1} - 1) = 2 - 2^{2n}
        let factor = Rational::from(2) - Rational::from(two_2n);
        b.push(&base * factor);
    }
    let p_rat = Rational::from(p);
    let pow = |base: &Rational, e: i32| -> Rational {
        let mut r = Rational::from(1);
        if e >= 0 {
            for _ in 0..e {
                r *= base;
            }
        } else {
            for _ in 0..(-e) {
                r /= base;
            }
        }
        r
    };
    let two = Rational::from(2);
    let mut out = Vec::with_capacity(terms);
    for k in 1..=terms {
        let mut c = Rational::new();
        for (n, a_n) in a.iter().enumerate().take(k + 1) {
            let m = k - n;
            c += Rational::from(a_n * &b[m]) * pow(&p_rat, 2 * n as i32 - 1) * pow(&two, 2 * m as i32 - 1);
        }
        c += Rational::from(&a[k] * (2 * k as i64 - 1)) / Rational::from(2 * p);
        out.push(c);
    }
    Ok(out)
}

fn series_coefficients(p: u32) -> Result<Vec<Real>> {
    let bits = working_bits();
    SERIES.with(|cache| {
        if let Some(v) = cache.borrow().get(&(p, bits)) {
            return Ok(v.clone());
        }
        // x < 10^-3, so each term gains six digits; keep a margin for large p
        let terms = (working_digits() as usize + 10) / 6 + 2 + (p as f64).log10().ceil() as usize;
        let coeffs: Vec<Real> = bracket_series(p, terms)?.into_iter().map(real).collect();
        cache.borrow_mut().insert((p, bits), coeffs.clone());
        Ok(coeffs)
    })
}

/// `coth(px)/sinh(2x) - 1/(2p sinh²x)` for `x > 0`.
pub fn elliptic_bracket_integrand(p: EllipticOrder, x: &Real) -> Result<Real> {
    check_x(x)?;
    let p = p.get();
    if *x < SERIES_SWITCH {
        let coeffs = series_coefficients(p)?;
        let x2 = real(x.square_ref());
        let mut acc = real(0);
        for c in coeffs.iter().rev() {
            acc *= &x2;
            acc += c;
        }
        return Ok(acc);
    }
    let px = real(x * p);
    if px.to_f64() > MAX_EXPONENT_ARGUMENT {
        return Err(Error::Overflow(format!("p·x = {} exceeds the exponent range", px.to_f64())));
    }
    // the two terms share a 1/(2p x²) leading part; guard digits absorb the cancellation
    let guard = if *x < 1 { (-2.0 * x.to_f64().log10()).ceil() as u32 + 2 } else { 0 };
    let value = with_guard_digits(guard, || {
        let x = real(x);
        let first = coth(&real(&x * p)) * csch(&(real(&x) * 2u32));
        let second = csch(&x).square() / (2 * p);
        first - second
    });
    Ok(real(&value))
}

/// `|bracket(x)| ≤ C e^{-2x}` for all `x ≥ split`.
pub(crate) fn bracket_envelope(p: u32, split: &Real) -> Real {
    let e2 = real(-real(split * 2u32)).exp();
    let e4 = real(e2.square_ref());
    let first = coth(&real(split * p)) * 2u32 / (real(1) - e4);
    let second = real(2) / ((real(1) - e2).square() * p);
    first.max(&second)
}

/// Which representation of `K_p(t)` to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatKernelForm {
    /// `(πt)^{-1/2} e^{-t/4} ∫ e^{-x²/t} [coth(px)/sinh(2x) - 1/(2p sinh²x)] dx`.
    Coth,
    /// The same integral with the bracket replaced by its image sum
    /// `(1/2p) Σ_{m=1}^{p-1} 1/(sin²(πm/p) + sinh²x)`, which is regular at `x = 0`.
    ImageSum,
    /// The m-sum as usually printed,
    /// `(4πt)^{-1/2} e^{-t/4} (1/p) Σ_{m=1}^{p-1} ∫ e^{-x²/t} cosh x / (sin²(πm/p) + sinh²x) dx`.
    /// The `cosh x` numerator makes this differ from the other two forms.
    PrintedMSum,
}

/// Elliptic heat-kernel contribution `K_p(t)` of an order-`p` fixed point.
pub fn heat_kernel_kp(
    p: EllipticOrder,
    t: &Real,
    cfg: &QuadratureConfig,
    form: HeatKernelForm,
) -> Result<QuadratureResult> {
    if *t <= 0 {
        return Err(domain(format!("heat-kernel time must be positive, got {}", t.to_f64())));
    }
    let order = p.get();
    let sines: Vec<Real> = (1..order).map(|m| (pi() * m / order).sin().square()).collect();
    let m_sum = |x: &Real| -> Real {
        let sinh2 = real(x.sinh_ref()).square();
        sines.iter().fold(real(0), |acc, s2| acc + (real(s2 + &sinh2)).recip())
    };
    let integrand = |x: &Real| -> Result<Real> {
        let gauss = real(-real(x.square_ref()) / t).exp();
        let bracket = match form {
            HeatKernelForm::Coth => elliptic_bracket_integrand(p, x)?,
            HeatKernelForm::ImageSum => m_sum(x) / (2 * order),
            HeatKernelForm::PrintedMSum => m_sum(x) * real(x.cosh_ref()) / order,
        };
        Ok(gauss * bracket)
    };
    let split = &cfg.split_point;
    let panel = tanh_sinh(integrand, &real(0), split, &cfg.target_rel_error, cfg.max_levels)?;

    let gauss_split = real(-real(split.square_ref()) / t).exp();
    let tail = match form {
        // ∫_X^∞ e^{-x²/t} C e^{-2x} dx ≤ C e^{-X²/t} e^{-2X} / 2; the image sum obeys the same envelope
        HeatKernelForm::Coth | HeatKernelForm::ImageSum => {
            bracket_envelope(order, split) * gauss_split * real(-real(split * 2u32)).exp() / 2u32
        }
        // cosh x / sinh²x ≤ 2(1 + e^{-2X}) e^{-x} / (1 - e^{-2X})² for x ≥ X
        HeatKernelForm::PrintedMSum => {
            let e2 = real(-real(split * 2u32)).exp();
            let c = (real(1) + &e2) * 2u32 / (real(1) - &e2).square() * (order - 1) / order;
            c * gauss_split * real(-real(split)).exp()
        }
    };
    check_tail(&tail, &panel, cfg)?;

    let root = match form {
        HeatKernelForm::PrintedMSum => pi() * t * 4u32,
        _ => pi() * t,
    };
    let prefactor = root.sqrt().recip() * real(-real(t / 4u32)).exp();
    let QuadratureResult { value, error_estimate } = panel;
    Ok(QuadratureResult { value, error_estimate: error_estimate + tail }.scaled(&prefactor))
}

pub(crate) fn check_tail(tail: &Real, panel: &QuadratureResult, cfg: &QuadratureConfig) -> Result<()> {
    let allowed = real(panel.value.abs_ref()) * &cfg.target_rel_error;
    if *tail > allowed {
        return Err(crate::error::convergence(format!(
            "tail beyond the split point ({}) exceeds the target error; raise split_point",
            tail.to_f64()
        )));
    }
    Ok(())
}
