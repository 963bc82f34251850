//! One checker per registry entry. Each returns both sides exactly; the
//! caller decides the verdict.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Binding, Evaluation};
use crate::algebra::{
    binom_poly, binomial, dfact, factorial, gfact_falling, gfact_rising, int, rat, sign, Poly,
    Rational, Ring,
};
use crate::error::Result;
use crate::sequences::{dbernoulli_poly_closed, dharmonic_seq, dhyperharmonic_seq, power_sum, Tables};
use crate::series::{dlog, dpolylog, negate_variable, Series};
use crate::value::Value;

fn q(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn choose(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn sum<T: Ring>(items: impl Iterator<Item = T>) -> T {
    items.fold(T::zero(), |a, b| a + &b)
}

// Parameters are present once the schema has validated the binding.
fn n_of(b: &Binding) -> usize {
    b.n.expect("validated binding has n")
}

fn r_of(b: &Binding) -> usize {
    b.r.expect("validated binding has r")
}

fn order_of(b: &Binding) -> usize {
    b.order.expect("validated binding has order")
}

/// `-log_λ(1-t)`.
fn neg_log_one_minus(lambda: &Rational, order: usize) -> Series<Rational> {
    -&negate_variable(&dlog(lambda, order))
}

pub(super) fn t1(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let (r, order) = (r_of(b), order_of(b));
    let lambda = tables.lambda();
    let one_minus_t = Series::new(vec![int(1), int(-1)], order);
    let lhs = &neg_log_one_minus(lambda, order) * &one_minus_t.pow(r).reciprocal()?;
    let rhs = Series::new(dhyperharmonic_seq(order, r, lambda)?, order);
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t2(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let (n, r) = (n_of(b), r_of(b));
    let lambda = tables.lambda();
    let hyper = dhyperharmonic_seq(n, r, lambda)?;
    let lhs = sum((1..=n).map(|k| sign(k) * &hyper[k] * fact(k) * tables.s2().entry(n, k)));
    let rhs = sign(n) * gfact_rising(&q(r), n - 1, lambda) * q(n);
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t3(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let (n, r) = (n_of(b), r_of(b));
    let lambda = tables.lambda();
    let lhs = dhyperharmonic_seq(n, r, lambda)?.swap_remove(n);
    let total = sum((1..=n).map(|k| {
        sign(n - k) * gfact_rising(&q(r), k - 1, lambda) * q(k) * tables.s1().entry(n, k)
    }));
    Ok(Evaluation::exact(lhs, total / fact(n)))
}

/// `Σ_{k=0}^{m} binom(x,k) (-1/2)^{m-k}`.
fn binom_half_sum(m: usize) -> Poly {
    let half = rat(-1, 2);
    sum((0..=m).map(|k| binom_poly(k).scale(&num_traits::Pow::pow(&half, (m - k) as u32))))
}

pub(super) fn t4a(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = sum((0..=n).map(|k| tables.euler(k).scale(&tables.s1().entry(n, k))));
    let rhs = binom_half_sum(n).scale(&fact(n));
    Ok(Evaluation::exact(lhs, rhs))
}

fn euler_via_s2(tables: &Tables, n: usize) -> Poly {
    sum((0..=n).map(|k| binom_half_sum(k).scale(&(fact(k) * tables.s2().entry(n, k)))))
}

pub(super) fn t4b(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    Ok(Evaluation::exact(tables.euler(n).clone(), euler_via_s2(tables, n)))
}

pub(super) fn e32(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = tables.euler(n).eval(&rat(1, 2));
    let central = |k: usize| {
        sum((0..=k).map(|j| {
            let two_pow = Rational::from_integer(BigInt::one() << (k + j));
            let denom = (int(1) - q(2 * j)) * two_pow;
            choose(2 * j, j) / denom
        }))
    };
    let rhs = sum((0..=n).map(|k| fact(k) * tables.s2().entry(n, k) * sign(k) * central(k)));
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t5(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let x = Poly::x();
    let rhs = sum((0..=n).map(|j| {
        let inner = sum((j..=n).map(|k| {
            gfact_falling(&x, n - k, lambda).scale(&(choose(n, k) * tables.s2().entry(k, j)))
        }));
        inner.scale(&(dfact(j, lambda) / q(j + 1)))
    }));
    Ok(Evaluation::exact(tables.bernoulli(n).clone(), rhs))
}

pub(super) fn t6(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let lhs = sum((0..=n).map(|k| tables.bernoulli(k).scale(&tables.s1().entry(n, k))));
    let rhs = sum((0..=n).map(|k| {
        binom_poly(k).scale(&(dfact(n - k, lambda) / fact(n - k + 1)))
    }))
    .scale(&fact(n));
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t7(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let beta = tables.bernoulli(n).clone();
    let beta_zero = beta.eval(&int(0));
    let closed = dbernoulli_poly_closed(n, tables.s2());
    let closed_zero = sum((0..=n).map(|k| {
        fact(k) * tables.s2().entry(n, k) * dfact(k, lambda) / fact(k + 1)
    }));
    Ok(Evaluation::exact(
        Value::List(vec![beta.into(), beta_zero.into()]),
        Value::List(vec![closed.into(), closed_zero.into()]),
    ))
}

/// `β_{k,λ}(1-λ)`.
fn bernoulli_shifted(tables: &Tables, k: usize) -> Rational {
    tables.bernoulli(k).eval(&(int(1) - tables.lambda()))
}

pub(super) fn t8(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = fact(n - 1) * tables.harmonic_neg(n);
    let rhs = sum((1..=n).map(|k| {
        sign(n - k) * bernoulli_shifted(tables, k - 1) * tables.s1_neg().entry(n, k)
    }));
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t9(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let lhs = tables.bernoulli_neg(n - 1).eval(&(int(2) * lambda + int(1)));
    let rhs = sum((1..=n).map(|k| {
        fact(k - 1) * sign(n - k) * tables.harmonic_neg(k) * tables.s2().entry(n, k)
    }));
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t10(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = dfact(n - 1, tables.lambda()) / q(n);
    let rhs = sum((1..=n).map(|k| bernoulli_shifted(tables, k - 1) * tables.s1().entry(n, k)));
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t11a(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let phi = tables.bell(n);
    let shift = q(n) * tables.lambda();
    let rhs = phi.mul_x() + phi.derivative().mul_x() - phi.scale(&shift);
    Ok(Evaluation::exact(tables.bell(n + 1).clone(), rhs))
}

pub(super) fn t11b(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let base = int(1) - lambda;
    let rhs = sum((0..=n).map(|k| {
        tables
            .bell(k)
            .scale(&(choose(n, k) * gfact_falling(&base, n - k, lambda)))
    }))
    .mul_x();
    Ok(Evaluation::exact(tables.bell(n + 1).clone(), rhs))
}

/// `Σ_{j<m} binom(m,j) β_{j,λ}(1-λ) φ_{m-j,λ}(x)`, without the `1/m`.
fn bernoulli_bell_sum(tables: &Tables, m: usize) -> Poly {
    sum((0..m).map(|j| tables.bell(m - j).scale(&(choose(m, j) * bernoulli_shifted(tables, j)))))
}

/// `Σ_k S2_λ(n,k) x^k / k^power`.
fn s2_weighted(tables: &Tables, n: usize, power: u32) -> Poly {
    Poly::new(
        (0..=n)
            .map(|k| match k {
                0 => Rational::zero(),
                _ => tables.s2().entry(n, k) / num_traits::Pow::pow(&q(k), power),
            })
            .collect(),
    )
}

pub(super) fn t12(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = s2_weighted(tables, n, 1);
    let unscaled = bernoulli_bell_sum(tables, n);
    let rhs = unscaled.scale(&q(n).recip());
    // The x = 1 specialization with the printed 1/n! prefactor.
    let at_one = lhs.eval(&int(1));
    let printed = unscaled.eval(&int(1)) / fact(n);
    let verdict = if printed == at_one { "agrees" } else { "differs" };
    let note = format!(
        "x=1 form with 1/n! prefactor {verdict}: Σ S2(n,k)/k = {at_one}, printed right side = {printed}"
    );
    Ok(Evaluation::exact(lhs, rhs).with_note(note))
}

pub(super) fn e61(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lhs = s2_weighted(tables, n, 2);
    let rhs = sum((0..n).map(|j| {
        let m = n - j;
        let inner = sum((1..=m).map(|i| {
            tables
                .bell(i)
                .scale(&(choose(m, i) * bernoulli_shifted(tables, m - i)))
        }));
        inner.scale(&(choose(n, j) * bernoulli_shifted(tables, j) / q(m)))
    }))
    .scale(&q(n).recip());
    Ok(Evaluation::exact(lhs, rhs))
}

/// `Σ_{k≥1} S2_λ(n,k) (k-1)! x^k`.
fn s2_falling_weighted(tables: &Tables, n: usize) -> Poly {
    Poly::new(
        (0..=n)
            .map(|k| match k {
                0 => Rational::zero(),
                _ => tables.s2().entry(n, k) * fact(k - 1),
            })
            .collect(),
    )
}

pub(super) fn t13(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let shift = q(n) * tables.lambda();
    let f_n = tables.fubini(n);
    let lhs = f_n.clone() + f_n.mul_x();
    let sums = s2_falling_weighted(tables, n + 1) + s2_falling_weighted(tables, n).scale(&shift);
    let integrals = tables.fubini(n + 1).int_over_t()? + f_n.int_over_t()?.scale(&shift);
    Ok(Evaluation::exact(
        Value::List(vec![lhs.clone().into(), lhs.into()]),
        Value::List(vec![sums.into(), integrals.into()]),
    ))
}

pub(super) fn t13r(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let shift = q(n) * tables.lambda();
    let lhs = s2_falling_weighted(tables, n + 1).eval(&int(1))
        + s2_falling_weighted(tables, n).eval(&int(1)) * shift;
    let rhs = match n {
        0 => int(1),
        _ => int(2) * tables.fubini(n).eval(&int(1)),
    };
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn t14(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let f_n = tables.fubini(n);
    let shift = q(n) * tables.lambda();
    let x_plus_x2 = Poly::new(vec![int(0), int(1), int(1)]);
    let rhs = f_n.mul_x() - f_n.scale(&shift) + x_plus_x2 * f_n.derivative();
    Ok(Evaluation::exact(tables.fubini(n + 1).clone(), rhs))
}

pub(super) fn t15(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let lhs = sum((2..=n).map(|k| dfact(k - 2, lambda) * tables.s2().entry(n, k)));
    let rhs = q(n - 1) * gfact_falling(&int(1), n - 1, lambda);
    Ok(Evaluation::exact(lhs, rhs))
}

/// Classical Stirling numbers of the second kind, row `n`, from
/// `S(m, k) = k S(m-1, k) + S(m-1, k-1)`.
fn classical_s2_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let stay = row.get(k).cloned().unwrap_or_default() * BigInt::from(k);
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

pub(super) fn c15(_tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let row = classical_s2_row(n);
    let lhs = sum((2..=n).map(|k| {
        sign(k - 2) * fact(k - 2) * Rational::from_integer(row[k].clone())
    }));
    Ok(Evaluation::exact(lhs, q(n - 1)))
}

pub(super) fn e44(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let order = order_of(b);
    let lambda = tables.lambda();
    // -t/(1-t) = -(t + t^2 + ...)
    let argument = Series::from_fn(order, |i| if i == 0 { int(0) } else { int(-1) });
    let lhs = dpolylog(2, lambda, order).compose(&argument)?;
    let harmonic = dharmonic_seq(order, &(-lambda.clone()));
    let rhs = Series::from_fn(order, |m| match m {
        0 => int(0),
        _ => -harmonic[m].clone() / q(m),
    });
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn e59(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let p = b.p.expect("validated binding has p");
    let lambda = tables.lambda();
    let lhs = power_sum(p, n, lambda);
    let beta = tables.bernoulli(p + 1);
    let rhs = (beta.eval(&(q(n + 1) - lambda)) - beta.eval(&(int(1) - lambda))) / q(p + 1);
    Ok(Evaluation::exact(lhs, rhs))
}

pub(super) fn e66(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let order = order_of(b);
    let lambda = tables.lambda();
    let one_minus_x = Series::new(vec![int(1), int(-1)], order);
    let geometric = one_minus_x.reciprocal()?;
    let argument = geometric.mul_t().truncate(order);
    let fubini = Series::new(tables.fubini(n).coeffs().to_vec(), order);
    let lhs = &fubini.compose(&argument)? * &geometric;
    let rhs = Series::from_fn(order, |k| gfact_falling(&q(k), n, lambda));
    Ok(Evaluation::exact(lhs, rhs))
}

/// Smallest `K` for which the explicit tail bound on
/// `Σ_{k>K} |(k)_{n,λ}| 2^{-(k+1)}` is at most `tolerance`, with that bound.
///
/// `|(k)_{n,λ}| ≤ (k+c)^n` with `c = ⌈(n-1)|λ|⌉`, and the majorant
/// `b_k = (k+c)^n / 2^{k+1}` has decreasing ratios, so once
/// `b_{k+1}/b_k ≤ 3/4` the tail past `K` is at most `4 b_{K+1}`.
pub(crate) fn e67_cutoff(n: usize, lambda: &Rational, tolerance: &Rational) -> (usize, Rational) {
    let spread = q(n.saturating_sub(1)) * lambda.abs();
    let c = spread.ceil().to_integer();
    let majorant = |k: usize| {
        let base = Rational::from_integer(BigInt::from(k) + &c);
        num_traits::Pow::pow(&base, n as u32) / Rational::from_integer(BigInt::one() << (k + 1))
    };
    let ratio = |k: usize| {
        let lo = Rational::from_integer(BigInt::from(k) + &c);
        let hi = Rational::from_integer(BigInt::from(k + 1) + &c);
        num_traits::Pow::pow(&(hi / lo), n as u32) / int(2)
    };
    let mut k0 = 1;
    while ratio(k0) > rat(3, 4) {
        k0 += 1;
    }
    let mut cutoff = k0;
    loop {
        let bound = int(4) * majorant(cutoff + 1);
        if &bound <= tolerance {
            return (cutoff, bound);
        }
        cutoff += 1;
    }
}

/// `Σ_{k=0}^{K} (k)_{n,λ} (1/2)^{k+1}`.
pub(crate) fn e67_partial_sum(n: usize, lambda: &Rational, cutoff: usize) -> Rational {
    sum((0..=cutoff).map(|k| {
        gfact_falling(&q(k), n, lambda) / Rational::from_integer(BigInt::one() << (k + 1))
    }))
}

pub(super) fn e67(tables: &Tables, b: &Binding) -> Result<Evaluation> {
    let n = n_of(b);
    let lambda = tables.lambda();
    let tolerance = b.tolerance.as_ref().expect("validated binding has tolerance");
    let (cutoff, bound) = e67_cutoff(n, lambda, tolerance);
    let lhs = tables.fubini(n).eval(&int(1));
    let rhs = e67_partial_sum(n, lambda, cutoff);
    let error = (&lhs - &rhs).abs();
    let pass = &error <= tolerance;
    let note = format!(
        "numeric: K={cutoff}, tail bound {:.3e}, |lhs - rhs| <= tolerance: {pass}",
        to_f64(&bound)
    );
    Ok(Evaluation {
        lhs: lhs.into(),
        rhs: rhs.into(),
        pass: Some(pass),
        note: Some(note),
    })
}

/// For display only.
fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
