//! Brute-force Barnes double sums with rigorous tail brackets, for `s > 2`.
//!
//! The square `0 ≤ m, n ≤ N` is summed exactly. The rest of the lattice is
//! bracketed with the Euler–Maclaurin formula truncated after the `g'` term:
//! for `g` completely monotone on `[a, ∞)`,
//!
//! `Σ_{k≥0} g(a + hk) = ∫_a^∞ g/h + g(a)/2 - h g'(a)/12 + R`, with `h³ g'''(a)/720 ≤ R ≤ 0`.
//!
//! Rows `n ≤ N` get their `m > N` tail this way. For the corner `n > N` the
//! inner sum over all `m` is bracketed by two closed-form functions of
//! `c = γ + βn`, sums of terms `c^{-σ} (ln c)^L`, and each of those is bracketed
//! again over `n`. A plain integral bound on the corner would only give a width
//! of order `1/N`.

use crate::barnes::BarnesArgs;
use crate::error::{domain, Result};
use crate::numkernel::{epsilon, real, Real};

/// Smallest accepted square side.
pub const MIN_CUTOFF: u32 = 100;

/// What is summed over the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteKind {
    /// `x^{-s}`, giving `ζ_B2`.
    Value,
    /// `-x^{-s} ln x`, giving `∂ζ_B2/∂s`.
    Derivative,
}

/// Partial square sum and a bracket `[tail_lo, tail_hi]` for everything else.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteSum {
    pub partial: Real,
    pub tail_lo: Real,
    pub tail_hi: Real,
}

impl BruteSum {
    pub fn lower(&self) -> Real {
        real(&self.partial + &self.tail_lo)
    }

    pub fn upper(&self) -> Real {
        real(&self.partial + &self.tail_hi)
    }

    pub fn width(&self) -> Real {
        real(&self.tail_hi - &self.tail_lo)
    }

    /// `(midpoint, half-width)`: the true sum lies within `midpoint ± half-width`.
    pub fn center_radius(&self) -> (Real, Real) {
        let mid = (self.lower() + self.upper()) / 2u32;
        (mid, self.width() / 2u32)
    }

    pub fn contains(&self, x: &Real) -> bool {
        *x >= self.lower() && *x <= self.upper()
    }
}

/// `coef · x^{-sigma} · (ln x)^{log as 0/1}`.
#[derive(Debug, Clone)]
struct Term {
    coef: Real,
    sigma: Real,
    log: bool,
}

impl Term {
    fn eval(&self, x: &Real) -> Real {
        let ln = real(x.ln_ref());
        let v = real(-real(&ln * &self.sigma)).exp() * &self.coef;
        if self.log {
            v * ln
        } else {
            v
        }
    }

    fn derivative(&self) -> Vec<Term> {
        let sigma = real(&self.sigma + 1u32);
        let mut out = vec![Term { coef: -real(&self.coef * &self.sigma), sigma: real(&sigma), log: self.log }];
        if self.log {
            out.push(Term { coef: real(&self.coef), sigma, log: false });
        }
        out
    }

    /// `∫_x^∞` of the term, as terms in `x`; needs `sigma > 1`.
    fn tail_integral(&self) -> Vec<Term> {
        let sm1 = real(&self.sigma - 1u32);
        let mut out = vec![Term { coef: real(&self.coef / &sm1), sigma: real(&sm1), log: self.log }];
        if self.log {
            out.push(Term { coef: real(&self.coef / real(sm1.square_ref())), sigma: sm1, log: false });
        }
        out
    }

    fn scaled(mut self, factor: &Real) -> Term {
        self.coef *= factor;
        self
    }

    /// The unit term is completely monotone to the sixth derivative on `[x0, ∞)`:
    /// `d^k/dx^k x^{-σ} ln x = (-1)^k (σ)_k x^{-σ-k} (ln x - Σ_{i<k} 1/(σ+i))`.
    fn monotone_from(&self, x0: &Real) -> bool {
        if self.sigma <= 0 {
            return false;
        }
        if !self.log {
            return true;
        }
        let harmonic = (0..6u32).fold(real(0), |acc, i| acc + real(real(&self.sigma + i).recip_ref()));
        real(x0.ln_ref()) > harmonic
    }
}

fn eval_all(terms: &[Term], x: &Real) -> Real {
    terms.iter().fold(real(0), |acc, t| acc + t.eval(x))
}

fn derivative_all(terms: &[Term]) -> Vec<Term> {
    terms.iter().flat_map(Term::derivative).collect()
}

fn unit(t: &Term) -> Term {
    Term { coef: real(1), sigma: real(&t.sigma), log: t.log }
}

/// Euler–Maclaurin bracket of `Σ_{k≥0} u(a + hk)` for a unit term `u`, as term lists in `a`:
/// upper `∫/h + u/2 - h u'/12`, lower the same plus `h³ u'''/720`.
fn unit_bracket_terms(u: &Term, h: u32) -> (Vec<Term>, Vec<Term>) {
    let h = real(h);
    let mut upper: Vec<Term> = u.tail_integral().into_iter().map(|t| t.scaled(&real(h.recip_ref()))).collect();
    upper.push(u.clone().scaled(&real(0.5f64)));
    let d1 = u.derivative();
    upper.extend(d1.iter().cloned().map(|t| t.scaled(&(-real(&h) / 12u32))));
    let d3 = derivative_all(&derivative_all(&d1));
    let mut lower = upper.clone();
    lower.extend(d3.into_iter().map(|t| t.scaled(&(real(h.square_ref()) * &h / 720u32))));
    (lower, upper)
}

/// Bracket of `Σ_{k≥0} Σ_i terms_i(a + hk)` evaluated at a point `a`.
fn bracket_at(terms: &[Term], a: &Real, h: u32) -> Result<(Real, Real)> {
    let mut lo = real(0);
    let mut hi = real(0);
    for t in terms {
        let u = unit(t);
        if !u.monotone_from(a) || u.sigma <= 1 {
            return Err(domain(format!(
                "tail term x^-{} is not completely monotone from {}",
                u.sigma.to_f64(),
                a.to_f64()
            )));
        }
        let (l, h_) = unit_bracket_terms(&u, h);
        let (l, h_) = (eval_all(&l, a), eval_all(&h_, a));
        if t.coef >= 0 {
            lo += real(&t.coef * &l);
            hi += real(&t.coef * &h_);
        } else {
            lo += real(&t.coef * &h_);
            hi += real(&t.coef * &l);
        }
    }
    Ok((lo, hi))
}

/// Bracket of `Σ_{m≥0} Σ_i terms_i(c + αm)` as two term lists in `c`, valid for `c ≥ c0`.
fn inner_bracket_terms(terms: &[Term], alpha: u32, c0: &Real) -> Result<(Vec<Term>, Vec<Term>)> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for t in terms {
        let u = unit(t);
        if !u.monotone_from(c0) || u.sigma <= 1 {
            return Err(domain("inner tail term is not completely monotone"));
        }
        let (l, h) = unit_bracket_terms(&u, alpha);
        let (for_lo, for_hi) = if t.coef >= 0 { (l, h) } else { (h, l) };
        lo.extend(for_lo.into_iter().map(|x| x.scaled(&t.coef)));
        hi.extend(for_hi.into_iter().map(|x| x.scaled(&t.coef)));
    }
    Ok((lo, hi))
}

/// `Σ_{m,n ≥ 0} x^{-s}` with `x = γ + αm + βn`, summed on the square `m, n ≤ cutoff`
/// and bracketed beyond it.
pub fn brute_barnes_sum(args: &BarnesArgs, cutoff: u32) -> Result<BruteSum> {
    brute_sum(args, cutoff, BruteKind::Value)
}

/// Same lattice, summing `-x^{-s} ln x`.
pub fn brute_barnes_sum_ds(args: &BarnesArgs, cutoff: u32) -> Result<BruteSum> {
    brute_sum(args, cutoff, BruteKind::Derivative)
}

pub fn brute_sum(args: &BarnesArgs, cutoff: u32, kind: BruteKind) -> Result<BruteSum> {
    if args.s <= 2.001 {
        return Err(domain(format!("the double sum needs s > 2 + 10^-3, got {}", args.s.to_f64())));
    }
    if cutoff < MIN_CUTOFF {
        return Err(domain(format!("cutoff must be at least {MIN_CUTOFF}, got {cutoff}")));
    }
    let (alpha, beta, n_cut) = (args.alpha, args.beta, cutoff as usize);
    let phi = match kind {
        BruteKind::Value => vec![Term { coef: real(1), sigma: real(&args.s), log: false }],
        BruteKind::Derivative => vec![Term { coef: real(-1), sigma: real(&args.s), log: true }],
    };

    // multiplicity of each offset k = αm + βn over the square, one stride-α run per n
    let (a, b) = (alpha as usize, beta as usize);
    let span = (a + b) * n_cut + 1;
    let mut diff = vec![0i64; span + a * (n_cut + 1)];
    for n in 0..=n_cut {
        diff[b * n] += 1;
        diff[b * n + a * (n_cut + 1)] -= 1;
    }
    let mut count = vec![0i64; span];
    for k in 0..span {
        count[k] = diff[k] + if k >= a { count[k - a] } else { 0 };
    }
    let mut partial = real(0);
    let mut magnitude = real(0);
    let mut evaluations = 0u64;
    for (k, &c) in count.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = eval_all(&phi, &(real(&args.gamma) + k as u64)) * c;
        magnitude += real(term.abs_ref());
        partial += term;
        evaluations += 1;
    }

    // rows n ≤ N, m > N
    let mut tail_lo = real(0);
    let mut tail_hi = real(0);
    for n in 0..=cutoff {
        let start = real(&args.gamma) + u64::from(beta) * u64::from(n) + u64::from(alpha) * u64::from(cutoff + 1);
        let (lo, hi) = bracket_at(&phi, &start, alpha)?;
        magnitude += real(hi.abs_ref());
        tail_lo += lo;
        tail_hi += hi;
    }

    // corner n > N, all m
    let c0 = real(&args.gamma) + u64::from(beta) * u64::from(cutoff + 1);
    let (inner_lo, inner_hi) = inner_bracket_terms(&phi, alpha, &c0)?;
    let (corner_lo, _) = bracket_at(&inner_lo, &c0, beta)?;
    let (_, corner_hi) = bracket_at(&inner_hi, &c0, beta)?;
    tail_lo += corner_lo;
    tail_hi += corner_hi;

    // rounding allowance for the working-precision sums
    let rounding = magnitude * epsilon() * (evaluations + u64::from(cutoff) + 64);
    tail_lo -= &rounding;
    tail_hi += &rounding;
    Ok(BruteSum { partial, tail_lo, tail_hi })
}
