//! Working-precision contract and the elementary numerics everything else
//! is built on: Bernoulli numbers and polynomials, log-gamma, constants.
//!
//! Every [`Real`] produced by this crate is created at the calling thread's
//! working precision. The precision is stored per thread so that tests and
//! worker pools can run at different precisions without interfering; use
//! [`with_working_digits`] to evaluate a closure at a given precision.

use std::cell::{Cell, RefCell};
use std::sync::{OnceLock, RwLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};

use crate::error::{domain, Result};

/// Extended-precision real scalar. All continuous quantities in the crate use it.
pub type Real = Float;

pub const DEFAULT_WORKING_DIGITS: u32 = 40;
pub const MIN_WORKING_DIGITS: u32 = 20;
/// Bounded by the Bernoulli table: log-gamma needs roughly `B_{digits}`.
pub const MAX_WORKING_DIGITS: u32 = 190;
/// Largest Bernoulli index the table will produce.
pub const BERNOULLI_CAP: usize = 200;

thread_local! {
    static WORKING_DIGITS: Cell<u32> = const { Cell::new(DEFAULT_WORKING_DIGITS) };
    static EM_COEFFS: RefCell<(u32, Vec<Float>)> = const { RefCell::new((0, Vec::new())) };
}

pub fn working_digits() -> u32 {
    WORKING_DIGITS.with(Cell::get)
}

/// Sets the working precision of the current thread.
pub fn set_working_digits(digits: u32) -> Result<()> {
    if !(MIN_WORKING_DIGITS..=MAX_WORKING_DIGITS).contains(&digits) {
        return Err(domain(format!(
            "working digits must lie in [{MIN_WORKING_DIGITS}, {MAX_WORKING_DIGITS}], got {digits}"
        )));
    }
    WORKING_DIGITS.with(|d| d.set(digits));
    Ok(())
}

/// Runs `f` with the working precision temporarily set to `digits`.
pub fn with_working_digits<T>(digits: u32, f: impl FnOnce() -> T) -> Result<T> {
    let previous = working_digits();
    set_working_digits(digits)?;
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_DIGITS.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(previous);
    Ok(f())
}

/// Runs `f` with `extra` guard digits on top of the current working precision,
/// ignoring the user-facing cap. Callers round results back with [`real`].
pub(crate) fn with_guard_digits<T>(extra: u32, f: impl FnOnce() -> T) -> T {
    let previous = working_digits();
    WORKING_DIGITS.with(|d| d.set(previous + extra));
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_DIGITS.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(previous);
    f()
}

/// Binary precision backing the current decimal working precision (a few guard bits included).
pub fn working_bits() -> u32 {
    digits_to_bits(working_digits())
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// Creates a [`Real`] at working precision.
pub fn real<T>(value: T) -> Real
where
    Float: Assign<T>,
{
    Float::with_val(working_bits(), value)
}

/// `p/q` at working precision.
pub fn ratio(p: i64, q: i64) -> Real {
    real(Rational::from((p, q)))
}

pub fn pi() -> Real {
    real(Constant::Pi)
}

/// `10^e` at working precision.
pub fn pow10(e: i32) -> Real {
    real(10).pow(e)
}

/// `10^{-working_digits}`.
pub fn epsilon() -> Real {
    pow10(-(working_digits() as i32))
}

/// `½ ln 2π`.
pub fn half_ln_2pi() -> Real {
    let two_pi = pi() * 2u32;
    two_pi.ln() / 2u32
}

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// Exact Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Uses `sum_{k=0}^{n} C(n+1,k) B_k = 0` over exact rationals; the table is
/// shared between threads and grown on demand up to [`BERNOULLI_CAP`].
pub fn bernoulli_rational(n: usize) -> Result<Rational> {
    if n > BERNOULLI_CAP {
        return Err(domain(format!(
            "Bernoulli index {n} exceeds the table cap {BERNOULLI_CAP}"
        )));
    }
    if let Some(b) = bernoulli_table().read().expect("bernoulli table poisoned").get(n) {
        return Ok(b.clone());
    }
    let mut table = bernoulli_table().write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        if m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, k as u32));
            acc += Rational::from(c) * b;
        }
        acc /= -(m as i64 + 1);
        table.push(acc);
    }
    Ok(table[n].clone())
}

/// `B_n` at working precision.
pub fn bernoulli_number(n: usize) -> Result<Real> {
    Ok(real(bernoulli_rational(n)?))
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^{n-k}`, evaluated by Horner's rule.
pub fn bernoulli_poly(n: usize, x: &Real) -> Result<Real> {
    let mut acc = real(0);
    for k in 0..=n {
        let c = Integer::from(Integer::binomial_u(n as u32, k as u32));
        acc *= x;
        acc += real(bernoulli_rational(k)? * Rational::from(c));
    }
    Ok(acc)
}

/// Euler–Maclaurin coefficient `B_{2j} / (2j)!`, cached per thread at the current precision.
pub(crate) fn em_coefficient(j: usize) -> Result<Real> {
    let bits = working_bits();
    EM_COEFFS.with(|cell| {
        let mut cache = cell.borrow_mut();
        if cache.0 != bits {
            *cache = (bits, Vec::new());
        }
        while cache.1.len() <= j {
            let k = cache.1.len();
            let b = bernoulli_rational(2 * k)?;
            let fact = Integer::from(Integer::factorial(2 * k as u32));
            cache.1.push(Float::with_val(bits, b / fact));
        }
        Ok(cache.1[j].clone())
    })
}

/// `ln Γ(x)` for real `x > 0`.
///
/// The argument is shifted upward until `x >= max(20, digits/1.5)` and the
/// Stirling series with Bernoulli coefficients is summed until its terms fall
/// below working precision.
pub fn log_gamma(x: &Real) -> Result<Real> {
    if *x <= 0 {
        return Err(domain(format!("log_gamma requires x > 0, got {}", x.to_f64())));
    }
    let threshold = f64::max(20.0, f64::from(working_digits()) / 1.5);
    let mut z = real(x);
    let mut shift = real(1);
    while z < threshold {
        shift *= &z;
        z += 1u32;
    }
    let tol = epsilon() / 1000u32;
    let mut out = (real(&z) - 0.5f64) * real(z.ln_ref()) - &z + half_ln_2pi();
    let z2 = real(&z * &z);
    let mut zpow = real(&z);
    let mut previous = None::<Real>;
    for k in 1..=BERNOULLI_CAP / 2 {
        let b = bernoulli_number(2 * k)?;
        let denom = (2 * k * (2 * k - 1)) as u32;
        let term = b / denom / &zpow;
        let size = real(term.abs_ref());
        out += &term;
        if size < tol {
            break;
        }
        if let Some(prev) = &previous {
            if size > *prev {
                break;
            }
        }
        previous = Some(size);
        zpow *= &z2;
    }
    Ok(out - shift.ln())
}

/// `Γ(x)` for real `x` off the non-positive integers; negative arguments use reflection.
pub fn gamma(x: &Real) -> Result<Real> {
    if *x > 0 {
        return Ok(log_gamma(x)?.exp());
    }
    let nearest = real(x.round_ref());
    if real(x - &nearest).abs() < 1e-12 {
        return Err(domain(format!("Γ has a pole at {}", x.to_f64())));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let one_minus = real(1) - x;
    let sin = (pi() * x).sin();
    Ok(pi() / (sin * log_gamma(&one_minus)?.exp()))
}
