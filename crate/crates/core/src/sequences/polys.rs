use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::stirling::{s2_triangle, StirlingTriangle};
use crate::algebra::{binom_poly, dfact, factorial, gfact_falling, int, Poly, Rational, Ring};
use crate::error::{Error, Result};
use crate::series::{dexp, dexp_minus_one, Series};

fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn factorial_q(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// `n! [t^n]` for every `n` up to the order of a series over `Poly`.
fn egf_coefficients(series: &Series<Poly>) -> Vec<Poly> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale(&factorial_q(n)))
        .collect()
}

fn as_poly_series(series: &Series<Rational>) -> Series<Poly> {
    series.map(|c| Poly::constant(c.clone()))
}

/// Degenerate Bernoulli polynomials `β_{0,λ}(x) ..= β_{nmax,λ}(x)` from the
/// generating function `t / (e_λ(t) - 1) · e_λ^x(t)`.
pub fn dbernoulli_polys(nmax: usize, lambda: &Rational) -> Vec<Poly> {
    let quotient = dexp_minus_one(lambda, nmax + 1)
        .div_t()
        .expect("e_λ(t) - 1 has zero constant term");
    let factor = quotient
        .reciprocal()
        .expect("(e_λ(t) - 1)/t has constant term 1");
    let gf = &as_poly_series(&factor) * &dexp(&Poly::x(), lambda, nmax);
    egf_coefficients(&gf)
}

pub fn dbernoulli_poly(n: usize, lambda: &Rational) -> Poly {
    dbernoulli_polys(n, lambda).pop().unwrap_or_else(Poly::one)
}

/// `β_{n,λ}(x) = Σ_k k! S_{2,λ}(n,k) Σ_j binom(x,j) dfact(k-j) / (k-j+1)!`.
pub fn dbernoulli_poly_closed(n: usize, s2: &StirlingTriangle) -> Poly {
    let lambda = s2.lambda();
    let mut total = Poly::zero();
    for k in 0..=n {
        let mut inner = Poly::zero();
        for j in 0..=k {
            let weight = dfact(k - j, lambda) / factorial_q(k - j + 1);
            inner = inner + binom_poly(j).scale(&weight);
        }
        total = total + inner.scale(&(factorial_q(k) * s2.entry(n, k)));
    }
    total
}

/// Both Bernoulli constructions; an error if they disagree.
pub fn dbernoulli_poly_verified(n: usize, lambda: &Rational) -> Result<Poly> {
    let series_path = dbernoulli_poly(n, lambda);
    let closed = dbernoulli_poly_closed(n, &s2_triangle(n, lambda));
    if series_path != closed {
        return Err(Error::PathDisagreement(format!(
            "β_{{{n},{lambda}}}: series {series_path} vs closed form {closed}"
        )));
    }
    Ok(series_path)
}

/// Degenerate Euler polynomials from `2 / (e_λ(t) + 1) · e_λ^x(t)`.
pub fn deuler_polys(nmax: usize, lambda: &Rational) -> Vec<Poly> {
    let denom = &dexp(&Rational::one(), lambda, nmax) + &Series::constant(int(1), nmax);
    let factor = denom
        .reciprocal()
        .expect("e_λ(t) + 1 has constant term 2")
        .scale(&int(2));
    let gf = &as_poly_series(&factor) * &dexp(&Poly::x(), lambda, nmax);
    egf_coefficients(&gf)
}

pub fn deuler_poly(n: usize, lambda: &Rational) -> Poly {
    deuler_polys(n, lambda).pop().unwrap_or_else(Poly::one)
}

/// `φ_{n,λ}(x) = Σ_k S_{2,λ}(n,k) x^k`.
pub fn dbell_from(s2: &StirlingTriangle, n: usize) -> Poly {
    Poly::new(s2.row(n).to_vec())
}

pub fn dbell_poly(n: usize, lambda: &Rational) -> Poly {
    dbell_from(&s2_triangle(n, lambda), n)
}

/// `F_{n,λ}(x) = Σ_k S_{2,λ}(n,k) k! x^k`.
pub fn dfubini_from(s2: &StirlingTriangle, n: usize) -> Poly {
    Poly::new(
        s2.row(n)
            .iter()
            .enumerate()
            .map(|(k, c)| c * factorial_q(k))
            .collect(),
    )
}

pub fn dfubini_poly(n: usize, lambda: &Rational) -> Poly {
    dfubini_from(&s2_triangle(n, lambda), n)
}

/// Fubini polynomials read off `1 / (1 - x (e_λ(t) - 1))`.
pub fn dfubini_series_oracle(nmax: usize, lambda: &Rational) -> Vec<Poly> {
    let inner = dexp_minus_one(lambda, nmax).map(|c| Poly::monomial(c.clone(), 1));
    let denom = &Series::one(nmax) - &inner;
    let gf = denom.reciprocal().expect("constant term is 1");
    egf_coefficients(&gf)
}

/// `Σ_{k=1}^{n} (k - λ)_{p,λ}`.
pub fn power_sum(p: usize, n: usize, lambda: &Rational) -> Rational {
    (1..=n)
        .map(|k| gfact_falling(&(from_usize(k) - lambda), p, lambda))
        .fold(Rational::zero(), |a, b| a + b)
}
