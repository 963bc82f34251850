use num_traits::Zero;

use crate::algebra::{binom, dfact, factorial, sign, Rational};
use crate::error::{Error, Result};

/// Degenerate harmonic numbers `H_{0,λ} ..= H_{nmax,λ}`.
///
/// The summand `(1/λ) binom(λ, k) (-1)^{k-1}` is evaluated as
/// `(-1)^{k-1} dfact(k-1, λ) / k!`, so `λ = 0` gives the classical `H_n`.
pub fn dharmonic_seq(nmax: usize, lambda: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for k in 1..=nmax {
        acc += sign(k - 1) * dfact(k - 1, lambda) / Rational::from_integer(factorial(k));
        out.push(acc.clone());
    }
    out
}

pub fn dharmonic(n: usize, lambda: &Rational) -> Rational {
    dharmonic_seq(n, lambda).pop().unwrap_or_else(Rational::zero)
}

/// `H_{n,λ}` from the literal `(1/λ) binom(λ, k)` summand. `None` at `λ = 0`.
pub fn dharmonic_raw(n: usize, lambda: &Rational) -> Option<Rational> {
    if lambda.is_zero() {
        return None;
    }
    let inv = lambda.recip();
    Some(
        (1..=n)
            .map(|k| sign(k - 1) * &inv * binom(lambda, k))
            .fold(Rational::zero(), |a, b| a + b),
    )
}

/// Degenerate hyperharmonic numbers `H^{(r)}_{0,λ} ..= H^{(r)}_{nmax,λ}`, by
/// iterated partial sums starting from `H^{(1)} = H`.
pub fn dhyperharmonic_seq(nmax: usize, r: usize, lambda: &Rational) -> Result<Vec<Rational>> {
    if r < 1 {
        return Err(Error::InvalidParameter("hyperharmonic order r must be >= 1".into()));
    }
    let mut seq = dharmonic_seq(nmax, lambda);
    for _ in 1..r {
        let mut acc = Rational::zero();
        for value in seq.iter_mut().skip(1) {
            acc += &*value;
            *value = acc.clone();
        }
    }
    Ok(seq)
}

pub fn dhyperharmonic(n: usize, r: usize, lambda: &Rational) -> Result<Rational> {
    Ok(dhyperharmonic_seq(n, r, lambda)?.pop().unwrap_or_else(Rational::zero))
}
