//! Conformal (`a = 1/4`) spectral zeta functions of a hyperbolic orbifold and the
//! Casimir energy `E₀ = ½ ζ(-1/2)` assembled from them.
//!
//! An elliptic fixed point of order `p` contributes
//!
//! `ζ_p(s) = sec(πs) · [ζ_B2(2s, 1 | 2, p) + ζ_B2(2s, 1+p | 2, p) - ζ_B2(2s, 1 | 1, 1)/p]`.
//!
//! The bracket vanishes at every negative odd Barnes argument, so the secant
//! poles at negative half-integers are removable; there the value is the
//! derivative of the bracket times the residue factor of the secant.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::Rational;

use crate::barnes::{barnes_zeta2_with_ds, BarnesArgs};
use crate::error::{domain, Error, Result};
use crate::hurwitz::{hurwitz_zeta_ds, riemann_zeta, HurwitzArgs};
use crate::numkernel::{gamma, pi, real, Real};

/// Distance from a half-integer within which the secant is treated as singular.
pub const HALF_INTEGER_ZONE: f64 = 1e-6;

/// Order `p ≥ 2` of an elliptic fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EllipticOrder(u32);

impl EllipticOrder {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(domain(format!("order must be ≥ 2, got {p}")));
        }
        Ok(Self(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for EllipticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The constant `a` multiplying `e^{at}` in the Mellin transform of the heat kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationChoice {
    /// `a = 1/4`: the operator is conformally covariant in three dimensions.
    #[default]
    Conformal,
    /// `a = 0`: the bare Laplacian. Declared for completeness, not computable here.
    Minimal,
}

impl PropagationChoice {
    pub fn ensure_supported(self) -> Result<()> {
        match self {
            Self::Conformal => Ok(()),
            Self::Minimal => Err(Error::Unsupported(
                "minimal propagation (a = 0) is not implemented; only the conformal choice is".into(),
            )),
        }
    }
}

/// A hyperbolic triangle orbifold `(p, q, r)` with `1/p + 1/q + 1/r < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleSignature {
    pub p: EllipticOrder,
    pub q: EllipticOrder,
    pub r: EllipticOrder,
}

impl TriangleSignature {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        let (p, q, r) = (EllipticOrder::new(p)?, EllipticOrder::new(q)?, EllipticOrder::new(r)?);
        let sig = Self { p, q, r };
        if sig.euler_defect() <= 0 {
            return Err(domain(format!(
                "signature not hyperbolic: 1/{p} + 1/{q} + 1/{r} ≥ 1"
            )));
        }
        Ok(sig)
    }

    pub fn orders(&self) -> [EllipticOrder; 3] {
        [self.p, self.q, self.r]
    }

    /// `1 - 1/p - 1/q - 1/r`, exactly.
    fn euler_defect(&self) -> Rational {
        let [p, q, r] = self.orders().map(|o| i64::from(o.get()));
        Rational::from((p * q * r - q * r - p * r - p * q, p * q * r))
    }
}

impl fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// Value and Barnes-argument derivative of
/// `ζ_B2(u, 1 | 2, p) + ζ_B2(u, 1+p | 2, p) - ζ_B2(u, 1 | 1, 1)/p`.
fn bracket_with_du(u: &Real, p: EllipticOrder) -> Result<(Real, Real)> {
    let p = p.get();
    let (a, da) = barnes_zeta2_with_ds(&BarnesArgs::new(real(u), real(1), 2, p)?)?;
    let (b, db) = barnes_zeta2_with_ds(&BarnesArgs::new(real(u), real(1 + p), 2, p)?)?;
    let (c, dc) = barnes_zeta2_with_ds(&BarnesArgs::new(real(u), real(1), 1, 1)?)?;
    Ok((a + b - c / p, da + db - dc / p))
}

/// The secant-pole bracket at Barnes argument `sb`; it vanishes at negative odd `sb`.
pub fn residue_bracket(sb: &Real, p: EllipticOrder) -> Result<Real> {
    Ok(bracket_with_du(sb, p)?.0)
}

enum HalfInteger {
    None,
    /// `-(2k+1)/2`
    Negative(u32),
    Positive,
}

fn classify_half_integer(s: &Real) -> HalfInteger {
    let twice = real(s) * 2u32;
    let odd = real(twice.round_ref());
    let is_odd = odd.to_f64().rem_euclid(2.0) == 1.0;
    if !is_odd || (real(&twice - &odd).abs() / 2u32) > HALF_INTEGER_ZONE {
        return HalfInteger::None;
    }
    if odd < 0 {
        // odd = -(2k+1)
        let k = ((-odd.to_f64() - 1.0) / 2.0) as u32;
        HalfInteger::Negative(k)
    } else {
        HalfInteger::Positive
    }
}

/// `ζ_p(s)` for real `s`.
///
/// Within [`HALF_INTEGER_ZONE`] of a negative half-integer `s₀ = -(2k+1)/2` the
/// removable singularity is resolved as `2(-1)^k/π · ∂_u[bracket](2s₀)`.
/// Positive half-integers are genuine poles and are rejected.
pub fn elliptic_zeta(s: &Real, p: EllipticOrder) -> Result<Real> {
    match classify_half_integer(s) {
        HalfInteger::Positive => Err(domain(format!(
            "ζ_p has a pole at the positive half-integer s = {}",
            s.to_f64()
        ))),
        HalfInteger::Negative(k) => {
            let u = -real(2 * k + 1);
            let (_, slope) = bracket_with_du(&u, p)?;
            let factor = real(2) / pi();
            let limit = factor * slope;
            Ok(if k % 2 == 0 { limit } else { -limit })
        }
        HalfInteger::None => {
            let u = real(s) * 2u32;
            let (value, _) = bracket_with_du(&u, p)?;
            let cos = (pi() * s).cos();
            Ok(value / cos)
        }
    }
}

/// `ζ_p(-1/2) = (2/π)[ζ'_B2(-1,1|2,p) + ζ'_B2(-1,1+p|2,p) - ζ'_B2(-1,1|1,1)/p]`.
pub fn elliptic_casimir(p: EllipticOrder) -> Result<Real> {
    elliptic_zeta(&real(-0.5f64), p)
}

/// `ζ_p(-1/2) / p²`.
pub fn large_p_ratio(p: EllipticOrder) -> Result<Real> {
    let p2 = u64::from(p.get()).pow(2);
    Ok(elliptic_casimir(p)? / p2)
}

fn near(s: &Real, target: f64) -> bool {
    real(s - target).abs() <= HALF_INTEGER_ZONE
}

/// Identity-component zeta function per unit area,
///
/// `ζ_1(s) = Γ(3/2-s) Γ(2s-1) / (π^{3/2} Γ(s)) · (1 - 2^{1-2s}) · ζ(2s-1)`.
///
/// At `s = -1/2` the pole of `Γ(2s-1)` meets the zero of `ζ(2s-1)` and the
/// limit `3 ζ'(-2) / (4π²)` is returned.
pub fn identity_zeta(s: &Real) -> Result<Real> {
    if near(s, -0.5) {
        let zeta_prime = hurwitz_zeta_ds(&HurwitzArgs::new(real(-2), real(1))?)?;
        return Ok(zeta_prime * 3u32 / (real(pi().square_ref()) * 4u32));
    }
    let two_s_minus_1 = real(s) * 2u32 - 1u32;
    let nearest = real(two_s_minus_1.round_ref());
    if nearest <= 0 && real(&two_s_minus_1 - &nearest).abs() <= 2.0 * HALF_INTEGER_ZONE {
        return Err(domain(format!(
            "identity zeta is not defined at the Γ(2s-1) pole s = {}",
            s.to_f64()
        )));
    }
    if near(s, 1.0) {
        return Err(domain("identity zeta has a pole at s = 1"));
    }
    let three_halves_minus = real(1.5f64) - s;
    let nearest = real(three_halves_minus.round_ref());
    if nearest <= 0 && real(&three_halves_minus - &nearest).abs() <= HALF_INTEGER_ZONE {
        return Err(domain(format!(
            "identity zeta is not defined at the Γ(3/2-s) pole s = {}",
            s.to_f64()
        )));
    }
    let gammas = gamma(&three_halves_minus)? * gamma(&two_s_minus_1)? / gamma(s)?;
    let pi_32 = pi() * pi().sqrt();
    let factor = real(1) - real(2).pow(-real(&two_s_minus_1));
    Ok(gammas / pi_32 * factor * riemann_zeta(&two_s_minus_1)?)
}

/// Fundamental-domain area `2π(1 - 1/p - 1/q - 1/r)`.
pub fn triangle_area(sig: &TriangleSignature) -> Real {
    real(sig.euler_defect()) * pi() * 2u32
}

pub const EXCLUSION_NOTE: &str = "hyperbolic conjugacy classes omitted";

/// Partial Casimir energy of a triangle orbifold: elliptic points plus identity term.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub signature: TriangleSignature,
    pub area: Real,
    pub elliptic_terms: Vec<(EllipticOrder, Real)>,
    pub elliptic_sum: Real,
    pub identity_density: Real,
    pub identity_total: Real,
    pub zeta_half_partial: Real,
    pub energy_partial: Real,
    pub charged: bool,
    pub excluded: &'static str,
}

impl CasimirReport {
    /// Re-derives the arithmetic relations between the fields.
    pub fn invariants_hold(&self) -> bool {
        let sum = self
            .elliptic_terms
            .iter()
            .fold(real(0), |acc, (_, v)| acc + v);
        let total = real(&self.area * &self.identity_density);
        let zeta = real(&self.elliptic_sum + &self.identity_total);
        let mut energy = real(&self.zeta_half_partial) / 2u32;
        if self.charged {
            energy *= 2u32;
        }
        sum == self.elliptic_sum
            && total == self.identity_total
            && zeta == self.zeta_half_partial
            && energy == self.energy_partial
    }
}

/// One primitive elliptic class per vertex of the triangle.
pub fn surface_report(sig: &TriangleSignature, charged: bool) -> Result<CasimirReport> {
    let mut cache: BTreeMap<EllipticOrder, Real> = BTreeMap::new();
    let mut elliptic_terms = Vec::with_capacity(3);
    for order in sig.orders() {
        let value = match cache.get(&order) {
            Some(v) => v.clone(),
            None => {
                let v = elliptic_casimir(order)?;
                cache.insert(order, v.clone());
                v
            }
        };
        elliptic_terms.push((order, value));
    }
    let elliptic_sum = elliptic_terms.iter().fold(real(0), |acc, (_, v)| acc + v);
    let area = triangle_area(sig);
    let identity_density = identity_zeta(&real(-0.5f64))?;
    let identity_total = real(&area * &identity_density);
    let zeta_half_partial = real(&elliptic_sum + &identity_total);
    let mut energy_partial = real(&zeta_half_partial) / 2u32;
    if charged {
        energy_partial *= 2u32;
    }
    let report = CasimirReport {
        signature: *sig,
        area,
        elliptic_terms,
        elliptic_sum,
        identity_density,
        identity_total,
        zeta_half_partial,
        energy_partial,
        charged,
        excluded: EXCLUSION_NOTE,
    };
    debug_assert!(report.invariants_hold());
    Ok(report)
}
