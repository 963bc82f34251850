use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{factorial, Rational};
use crate::error::{Error, Result};
use crate::series::{dexp_minus_one, dlog};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingKind {
    First,
    Second,
}

/// Recurrence used to fill the second-kind triangle.
///
/// `FlippedLambdaSign` replaces the weight `k - nλ` by `k + nλ`. It exists so
/// the identity checks can be shown to reject a corrupted table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum S2Recurrence {
    #[default]
    Standard,
    FlippedLambdaSign,
}

/// Lower-triangular table of degenerate Stirling numbers `S_{i,λ}(n, k)` for
/// `0 ≤ k ≤ n ≤ nmax`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    lambda: Rational,
    rows: Vec<Vec<Rational>>,
}

impl StirlingTriangle {
    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Row `n`, entries `k = 0..=n`.
    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `S(n, k)`, zero for `k > n`. Panics if `n > nmax`.
    pub fn entry(&self, n: usize, k: usize) -> Rational {
        self.rows[n].get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn build(
        kind: StirlingKind,
        nmax: usize,
        lambda: &Rational,
        weight: impl Fn(usize, usize) -> Rational,
    ) -> Self {
        let mut rows = vec![vec![Rational::one()]];
        for n in 0..nmax {
            let prev = &rows[n];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_else(Rational::zero);
            let next = (0..=n + 1)
                .map(|k| {
                    let carry = if k == 0 { Rational::zero() } else { at(k - 1) };
                    carry + weight(n, k) * at(k)
                })
                .collect();
            rows.push(next);
        }
        StirlingTriangle {
            kind,
            lambda: lambda.clone(),
            rows,
        }
    }
}

fn from_usize(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Second kind via `S(n+1, k) = S(n, k-1) + (k - nλ) S(n, k)`.
pub fn s2_triangle(nmax: usize, lambda: &Rational) -> StirlingTriangle {
    s2_triangle_with(nmax, lambda, S2Recurrence::Standard)
}

pub fn s2_triangle_with(nmax: usize, lambda: &Rational, recurrence: S2Recurrence) -> StirlingTriangle {
    StirlingTriangle::build(StirlingKind::Second, nmax, lambda, |n, k| {
        let shift = from_usize(n) * lambda;
        match recurrence {
            S2Recurrence::Standard => from_usize(k) - shift,
            S2Recurrence::FlippedLambdaSign => from_usize(k) + shift,
        }
    })
}

/// First kind via `S(n+1, k) = S(n, k-1) + (kλ - n) S(n, k)`, which follows
/// from `(x)_{n+1} = (x)_n (x - n)` and `x (x)_{k,λ} = (x)_{k+1,λ} + kλ (x)_{k,λ}`.
pub fn s1_triangle(nmax: usize, lambda: &Rational) -> StirlingTriangle {
    StirlingTriangle::build(StirlingKind::First, nmax, lambda, |n, k| {
        from_usize(k) * lambda - from_usize(n)
    })
}

/// `n! [t^n]` of `(log_λ(1+t))^k / k!` (first kind) or `(e_λ(t) - 1)^k / k!`
/// (second kind), computed with series at truncation order `order`.
pub fn stirling_series_oracle(
    kind: StirlingKind,
    n: usize,
    k: usize,
    lambda: &Rational,
    order: usize,
) -> Result<Rational> {
    if order < n {
        return Err(Error::TruncationTooSmall { order, needed: n });
    }
    let base = match kind {
        StirlingKind::First => dlog(lambda, order),
        StirlingKind::Second => dexp_minus_one(lambda, order),
    };
    let power = base.pow(k);
    let scale = Rational::from_integer(factorial(n)) / Rational::from_integer(factorial(k));
    Ok(power.coeff(n) * scale)
}
