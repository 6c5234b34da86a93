//! Tanh-sinh (double-exponential) quadrature on a finite interval at working precision.
//!
//! Nodes cluster double-exponentially at both endpoints, which makes the rule
//! insensitive to integrable power singularities such as `x^{2s-1}` at the
//! origin. Each refinement halves the step and reuses all previous nodes; the
//! difference between consecutive levels is the reported error estimate.

use crate::error::{convergence, domain, Result};
use crate::numkernel::{pi, pow10, real, working_digits, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    pub target_rel_error: Real,
    /// Maximum number of step halvings.
    pub max_levels: u32,
    /// Upper end of the finite panel; the rest of the half-line is bounded analytically.
    pub split_point: Real,
}

impl QuadratureConfig {
    pub fn new(target_rel_error: Real, max_levels: u32, split_point: Real) -> Result<Self> {
        let floor = pow10(-(working_digits() as i32 - 8));
        if target_rel_error < floor {
            return Err(domain(format!(
                "target relative error {} is below 10^-(digits-8)",
                target_rel_error.to_f64()
            )));
        }
        if split_point <= 1 {
            return Err(domain("split point must exceed 1"));
        }
        if max_levels == 0 {
            return Err(domain("at least one refinement level is required"));
        }
        Ok(Self { target_rel_error, max_levels, split_point })
    }

    /// Same configuration with the tolerance halved.
    pub fn refined(&self) -> Result<Self> {
        Self::new(real(&self.target_rel_error) / 2u32, self.max_levels + 2, real(&self.split_point))
    }
}

impl Default for QuadratureConfig {
    /// Half the working digits as the target, 12 levels, split at 40.
    fn default() -> Self {
        let target = pow10(-(working_digits() as i32 / 2));
        Self { target_rel_error: target, max_levels: 12, split_point: real(40) }
    }
}

/// An integral value together with an estimate of its absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub value: Real,
    pub error_estimate: Real,
}

impl QuadratureResult {
    pub fn scaled(self, factor: &Real) -> Self {
        let mag = real(factor.abs_ref());
        Self { value: self.value * factor, error_estimate: self.error_estimate * mag }
    }
}

/// `∫_a^b f(x) dx`.
///
/// Nodes near `a` are formed as `a + δ` with `δ` computed directly, so `f` may
/// carry an integrable singularity at `a`.
pub fn tanh_sinh<F>(f: F, a: &Real, b: &Real, target_rel_error: &Real, max_levels: u32) -> Result<QuadratureResult>
where
    F: Fn(&Real) -> Result<Real>,
{
    let half = (real(b) - a) / 2u32;
    let center = (real(a) + b) / 2u32;
    let half_pi = pi() / 2u32;
    let digits = f64::from(working_digits());
    // weights decay like exp(-(π/2) e^t); stop once that is far below working precision
    let t_max = (4.0 / std::f64::consts::PI * (digits + 20.0) * std::f64::consts::LN_10).ln();

    // contribution of the symmetric node pair at parameter t
    let pair = |t: &Real| -> Result<Real> {
        let u = real(t.sinh_ref()) * &half_pi;
        let cosh_u = real(u.cosh_ref());
        // distance from either endpoint: half * (1 - tanh u) = 2 half / (1 + e^{2u})
        let e2u = real(&u * 2u32).exp();
        let delta = real(&half * 2u32) / (e2u + 1u32);
        let weight = real(&half * &half_pi) * real(t.cosh_ref()) / real(cosh_u.square_ref());
        let left = f(&(real(a) + &delta))?;
        let right = f(&(real(b) - &delta))?;
        Ok(weight * (left + right))
    };

    let mut h = real(1);
    let mut sum = real(&half * &half_pi) * f(&center)?;
    let mut k = 1u32;
    loop {
        let t = real(k);
        if t.to_f64() > t_max {
            break;
        }
        sum += pair(&t)?;
        k += 1;
    }
    let mut estimate = real(&sum * &h);

    for level in 1..=max_levels {
        h /= 2u32;
        let steps = (t_max / h.to_f64()).floor() as u64;
        let mut fresh = real(0);
        let mut i = 1u64;
        while i <= steps {
            let t = real(&h * i);
            fresh += pair(&t)?;
            i += 2;
        }
        sum += fresh;
        let next = real(&sum * &h);
        let change = real(&next - &estimate).abs();
        estimate = next;
        let tol = real(estimate.abs_ref()) * target_rel_error;
        if level >= 3 && change <= tol {
            return Ok(QuadratureResult { value: estimate, error_estimate: change });
        }
    }
    Err(convergence(format!(
        "tanh-sinh quadrature did not reach relative error {} within {max_levels} levels",
        target_rel_error.to_f64()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::ratio;

    #[test]
    fn polynomial_and_singular_integrands() {
        let tol = pow10(-25);
        let r = tanh_sinh(|x| Ok(real(x * x)), &real(0), &real(3), &tol, 12).unwrap();
        assert!(real(&r.value - 9u32).abs() < pow10(-24));

        // ∫_0^1 x^{-1/2} dx = 2
        let r = tanh_sinh(|x| Ok(real(x.sqrt_ref()).recip()), &real(0), &real(1), &tol, 12).unwrap();
        assert!(real(&r.value - 2u32).abs() < pow10(-22));
        assert!(r.error_estimate < pow10(-20));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(pow10(-40), 10, real(40)).is_err());
        assert!(QuadratureConfig::new(pow10(-10), 10, real(1)).is_err());
        assert!(QuadratureConfig::new(pow10(-10), 0, real(40)).is_err());
        let cfg = QuadratureConfig::new(pow10(-10), 10, ratio(81, 2)).unwrap();
        assert_eq!(cfg.refined().unwrap().target_rel_error, pow10(-10) / 2u32);
    }
}
