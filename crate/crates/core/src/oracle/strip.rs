//! Mellin-strip integrals: direct quadrature counterparts of the continued
//! elliptic and identity zeta functions, valid only inside their strips.
//!
//! Elliptic, for `1/4 < s < 1/2`:
//!
//! `ζ_p(s) = Γ(1/2-s) / (√π Γ(s)) ∫_0^∞ x^{2s-1} [coth(px)/sinh(2x) - 1/(2p sinh²x)] dx`.
//!
//! Identity, for `1 < s < 3/2`: inserting the heat kernel per unit area
//! `e^{-t/4}/(2(πt)^{3/2}) ∫ x e^{-x²/t}/sinh x dx` into
//! `ζ(s) = Γ(s)^{-1} ∫ t^{s-1} e^{t/4} K(t) dt` and doing the `t` integral first,
//! `∫_0^∞ t^{s-5/2} e^{-x²/t} dt = x^{2s-3} Γ(3/2-s)`, leaves
//!
//! `ζ_1(s) = Γ(3/2-s) / (2π^{3/2} Γ(s)) ∫_0^∞ x^{2s-2} / sinh x dx`.

use super::heat::{bracket_envelope, check_tail, elliptic_bracket_integrand};
use super::quadrature::{tanh_sinh, QuadratureConfig, QuadratureResult};
use crate::casimir::EllipticOrder;
use crate::error::{domain, Result};
use crate::numkernel::{gamma, pi, real, Real};

pub fn quad_elliptic_zeta_strip(s: &Real, p: EllipticOrder, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if *s <= 0.25 || *s >= 0.5 {
        return Err(domain(format!("elliptic strip is 1/4 < s < 1/2, got s = {}", s.to_f64())));
    }
    let exponent = real(s) * 2u32 - 1u32;
    let integrand = |x: &Real| -> Result<Real> {
        let power = (real(x.ln_ref()) * &exponent).exp();
        Ok(power * elliptic_bracket_integrand(p, x)?)
    };
    let split = &cfg.split_point;
    let panel = tanh_sinh(integrand, &real(0), split, &cfg.target_rel_error, cfg.max_levels)?;

    // 2s - 1 < 0, so x^{2s-1} ≤ X^{2s-1} beyond the split
    let tail = bracket_envelope(p.get(), split)
        * (real(split.ln_ref()) * &exponent).exp()
        * real(-real(split * 2u32)).exp()
        / 2u32;
    check_tail(&tail, &panel, cfg)?;

    let prefactor = gamma(&(real(0.5f64) - s))? / (pi().sqrt() * gamma(s)?);
    let QuadratureResult { value, error_estimate } = panel;
    Ok(QuadratureResult { value, error_estimate: error_estimate + tail }.scaled(&prefactor))
}

pub fn quad_identity_zeta_strip(s: &Real, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if *s <= 1 || *s >= 1.5 {
        return Err(domain(format!("identity strip is 1 < s < 3/2, got s = {}", s.to_f64())));
    }
    let exponent = real(s) * 2u32 - 2u32;
    let integrand = |x: &Real| -> Result<Real> {
        // 1/sinh x = 2e^{-x} / (1 - e^{-2x}), accurate at both ends
        let e = real(-real(x)).exp();
        let m2 = real(-real(x * 2u32));
        let csch = e * 2u32 / -m2.exp_m1();
        Ok((real(x.ln_ref()) * &exponent).exp() * csch)
    };
    // 1/sinh only decays like e^{-x}, so the panel is twice as long
    let end = real(&cfg.split_point) * 2u32;
    let panel = tanh_sinh(integrand, &real(0), &end, &cfg.target_rel_error, cfg.max_levels)?;

    // ∫_X^∞ x^a e^{-x} dx ≤ X^a e^{-X} / (1 - a/X) for 0 < a < X
    let e2 = real(-real(&end * 2u32)).exp();
    let tail = real(2) / (real(1) - e2)
        * (real(end.ln_ref()) * &exponent).exp()
        * real(-real(&end)).exp()
        / (real(1) - real(&exponent / &end));
    check_tail(&tail, &panel, cfg)?;

    let prefactor = gamma(&(real(1.5f64) - s))? / (pi() * pi().sqrt() * gamma(s)? * 2u32);
    let QuadratureResult { value, error_estimate } = panel;
    Ok(QuadratureResult { value, error_estimate: error_estimate + tail }.scaled(&prefactor))
}
