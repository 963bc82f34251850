use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, Rational, Ring};

fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Generalized falling factorial `x0 (x0 - λ) ... (x0 - (n-1)λ)`.
pub fn gfact_falling<R: Ring>(x0: &R, n: usize, lambda: &Rational) -> R {
    (0..n).fold(R::one(), |acc, j| {
        let factor = x0.clone() - R::from_rational(lambda * from_usize(j));
        acc * &factor
    })
}

/// Generalized rising factorial `x0 (x0 + λ) ... (x0 + (n-1)λ)`.
pub fn gfact_rising(x0: &Rational, n: usize, lambda: &Rational) -> Rational {
    (0..n).fold(Rational::one(), |acc, j| acc * (x0 + lambda * from_usize(j)))
}

/// Ordinary falling factorial `x0 (x0 - 1) ... (x0 - n + 1)`.
pub fn ffact_int<R: Ring>(x0: &R, n: usize) -> R {
    gfact_falling(x0, n, &Rational::one())
}

/// `∏_{j=1}^{k} (λ - j)`.
///
/// For `λ ≠ 0` this equals `λ^k (1)_{k+1,1/λ}`, the coefficient shape that
/// appears throughout the degenerate logarithm; at `λ = 0` it is
/// `(-1)^k k!`.
pub fn dfact(k: usize, lambda: &Rational) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * (lambda - from_usize(j)))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `binom(x0, k) = (x0)_k / k!` over any coefficient ring.
pub fn binom<R: Ring>(x0: &R, k: usize) -> R {
    ffact_int(x0, k).scale(&Rational::from_integer(factorial(k)).recip())
}

/// `binom(x, k)` as a polynomial of degree `k`.
pub fn binom_poly(k: usize) -> Poly {
    binom(&Poly::x(), k)
}
