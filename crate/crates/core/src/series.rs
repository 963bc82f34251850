//! Truncated formal power series in `t`.
//!
//! A [`Series`] carries its truncation order `N` explicitly: it knows the
//! coefficients of `t^0 ..= t^N` exactly and nothing beyond. Binary
//! operations produce a result at the smaller of the two orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::algebra::{binom, dfact, factorial, gfact_falling, sign, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<R> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `t^order`.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Series {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Series::new(vec![R::zero(), R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Re-truncates to `min(order, self.order())`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Series<S> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplication by `t`; the product is known one order further.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order + 2);
        coeffs.push(R::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series {
            order: self.order + 1,
            coeffs,
        }
    }

    /// Division by `t` for a series with zero constant term; the quotient is
    /// known one order less.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order == 0 {
            return Err(Error::InvalidParameter(
                "division by t needs a zero constant term and order >= 1".into(),
            ));
        }
        Ok(Series {
            order: self.order - 1,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Series::one(self.order), |acc, _| &acc * self)
    }

    /// `1 / self`, requiring an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(Error::UnitRequired)?;
        let mut out: Vec<R> = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for m in 1..=self.order {
            let mut acc = R::zero();
            for j in 1..=m {
                acc = acc + &(self.coeffs[j].clone() * &out[m - j]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// `self(inner(t))`, by Horner's rule. `inner` must have valuation ≥ 1.
    pub fn compose(&self, inner: &Series<R>) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionValuation);
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c;
        }
        Ok(acc)
    }

    /// The series `b` with `self(b(t)) = t`. Requires a zero constant term and
    /// an invertible linear coefficient.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order == 0 {
            return Err(Error::NotInvertible);
        }
        let inv1 = self.coeffs[1]
            .unit_inverse()
            .ok_or(Error::NotInvertible)?;
        let order = self.order;
        let mut inverse = Series::new(vec![R::zero(), inv1.clone()], order);
        // Adding b_m t^m to the partial inverse only moves the t^m coefficient
        // of self(b) by a_1 b_m.
        for m in 2..=order {
            let partial = self.truncate(m).compose(&inverse.truncate(m))?;
            inverse.coeffs[m] = -(partial.coeffs[m].clone() * &inv1);
        }
        debug_assert_eq!(self.compose(&inverse)?, Series::t(order));
        Ok(inverse)
    }
}

impl<R: Ring> Add for &Series<R> {
    type Output = Series<R>;

    fn add(self, rhs: &Series<R>) -> Series<R> {
        let order = self.order.min(rhs.order);
        Series::from_fn(order, |i| self.coeffs[i].clone() + &rhs.coeffs[i])
    }
}

impl<R: Ring> Sub for &Series<R> {
    type Output = Series<R>;

    fn sub(self, rhs: &Series<R>) -> Series<R> {
        let order = self.order.min(rhs.order);
        Series::from_fn(order, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<R: Ring> Mul for &Series<R> {
    type Output = Series<R>;

    /// Cauchy product truncated to the smaller order.
    fn mul(self, rhs: &Series<R>) -> Series<R> {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Series { order, coeffs }
    }
}

impl<R: Ring> Neg for &Series<R> {
    type Output = Series<R>;

    fn neg(self) -> Series<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

fn inv_factorial(k: usize) -> Rational {
    Rational::from_integer(factorial(k)).recip()
}

/// Degenerate exponential `e_λ^{x0}(t) = Σ (x0)_{k,λ} t^k / k!`.
pub fn dexp<R: Ring>(x0: &R, lambda: &Rational, order: usize) -> Series<R> {
    Series::from_fn(order, |k| gfact_falling(x0, k, lambda).scale(&inv_factorial(k)))
}

/// Degenerate logarithm `log_λ(1 + t)`, the compositional inverse of
/// `e_λ(t) - 1`.
pub fn dlog(lambda: &Rational, order: usize) -> Series<Rational> {
    Series::from_fn(order, |k| match k {
        0 => Rational::zero(),
        _ => dfact(k - 1, lambda) * inv_factorial(k),
    })
}

/// `(1 + t)^{x0} = Σ binom(x0, k) t^k`.
pub fn binom_series<R: Ring>(x0: &R, order: usize) -> Series<R> {
    Series::from_fn(order, |k| binom(x0, k))
}

/// Degenerate polylogarithm `Li_{k,λ}(t)`.
pub fn dpolylog(k: i64, lambda: &Rational, order: usize) -> Series<Rational> {
    Series::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        let n_pow = Rational::from_integer(BigInt::from(n)).pow(k.unsigned_abs() as u32);
        let n_pow = if k >= 0 { n_pow.recip() } else { n_pow };
        sign(n - 1) * dfact(n - 1, lambda) * inv_factorial(n - 1) * n_pow
    })
}

/// `t ↦ -t` substitution.
pub fn negate_variable<R: Ring>(series: &Series<R>) -> Series<R> {
    Series::from_fn(series.order(), |i| {
        let c = series.coeff(i).clone();
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    })
}

/// `e_λ(t) - 1`, the inner series of most substitutions.
pub fn dexp_minus_one(lambda: &Rational, order: usize) -> Series<Rational> {
    let mut s = dexp(&Rational::one(), lambda, order);
    s.coeffs[0] = Rational::zero();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Poly};
    use proptest::prelude::*;

    fn s(coeffs: &[Rational], order: usize) -> Series<Rational> {
        Series::new(coeffs.to_vec(), order)
    }

    fn grid() -> Vec<Rational> {
        vec![int(0), rat(1, 2), rat(-1, 2), rat(2, 3), rat(-3, 7)]
    }

    #[test]
    fn mul_examples() {
        let prod = &s(&[int(1), int(1)], 2) * &s(&[int(1), int(-1)], 2);
        assert_eq!(prod, s(&[int(1), int(0), int(-1)], 2));
        let t = Series::<Rational>::t(1);
        assert_eq!(&t * &t, Series::zero(1));
    }

    #[test]
    fn mul_takes_min_order() {
        let a = Series::<Rational>::one(5);
        let b = Series::<Rational>::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            s(&[int(1), int(-1)], 3).reciprocal().unwrap(),
            s(&[int(1), int(1), int(1), int(1)], 3)
        );
        assert_eq!(
            s(&[int(2), int(1)], 1).reciprocal().unwrap(),
            s(&[rat(1, 2), rat(-1, 4)], 1)
        );
        assert_eq!(s(&[int(0), int(1), int(1)], 4).reciprocal(), Err(Error::UnitRequired));
    }

    #[test]
    fn reciprocal_over_poly_needs_constant_unit() {
        let a = Series::new(vec![Poly::x(), Poly::one()], 3);
        assert_eq!(a.reciprocal(), Err(Error::UnitRequired));
        let b = Series::new(vec![Poly::constant(int(2)), Poly::x()], 3);
        let inv = b.reciprocal().unwrap();
        assert_eq!(&b * &inv, Series::one(3));
    }

    #[test]
    fn compose_examples() {
        let outer = s(&[int(1), int(1), int(1)], 4);
        let inner = s(&[int(0), int(0), int(1)], 4);
        assert_eq!(outer.compose(&inner).unwrap(), s(&[int(1), int(0), int(1), int(0), int(1)], 4));
        assert_eq!(
            outer.compose(&s(&[int(1), int(1)], 4)),
            Err(Error::CompositionValuation)
        );
    }

    #[test]
    fn dlog_inverts_dexp() {
        for lambda in grid() {
            let inner = dexp_minus_one(&lambda, 24);
            assert_eq!(dlog(&lambda, 24).compose(&inner).unwrap(), Series::t(24));
            assert_eq!(inner.comp_inverse().unwrap(), dlog(&lambda, 24));
        }
    }

    #[test]
    fn comp_inverse_examples() {
        assert_eq!(Series::<Rational>::t(5).comp_inverse().unwrap(), Series::t(5));
        let lambda = rat(1, 2);
        assert_eq!(dexp_minus_one(&lambda, 6).comp_inverse().unwrap(), dlog(&lambda, 6));
        assert_eq!(
            s(&[int(0), int(2), int(1)], 2).comp_inverse().unwrap(),
            s(&[int(0), rat(1, 2), rat(-1, 8)], 2)
        );
        assert_eq!(s(&[int(1), int(1)], 3).comp_inverse(), Err(Error::NotInvertible));
        assert_eq!(s(&[int(0), int(0), int(1)], 3).comp_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn dexp_examples() {
        assert_eq!(
            dexp(&int(1), &int(0), 3),
            s(&[int(1), int(1), rat(1, 2), rat(1, 6)], 3)
        );
        let lambda = rat(2, 9);
        assert_eq!(
            dexp(&int(1), &lambda, 2),
            s(&[int(1), int(1), (int(1) - &lambda) / int(2)], 2)
        );
        assert_eq!(
            dexp(&Poly::x(), &rat(1, 2), 1),
            Series::new(vec![Poly::one(), Poly::x()], 1)
        );
    }

    #[test]
    fn dexp_coefficients_are_generalized_factorials() {
        for lambda in grid() {
            let x0 = rat(5, 3);
            let series = dexp(&x0, &lambda, 12);
            for k in 0..=12 {
                let scaled = series.coeff(k) * Rational::from_integer(factorial(k));
                assert_eq!(scaled, gfact_falling(&x0, k, &lambda));
            }
        }
    }

    #[test]
    fn dlog_examples() {
        assert_eq!(dlog(&int(0), 3), s(&[int(0), int(1), rat(-1, 2), rat(1, 3)], 3));
        let lambda = rat(4, 5);
        assert_eq!(dlog(&lambda, 2), s(&[int(0), int(1), (&lambda - int(1)) / int(2)], 2));
        assert_eq!(dlog(&rat(1, 2), 2), s(&[int(0), int(1), rat(-1, 4)], 2));
    }

    #[test]
    fn binom_series_examples() {
        assert_eq!(binom_series(&int(1), 3), s(&[int(1), int(1)], 3));
        assert_eq!(binom_series(&rat(1, 2), 2), s(&[int(1), rat(1, 2), rat(-1, 8)], 2));
        assert_eq!(
            binom_series(&Poly::x(), 1),
            Series::new(vec![Poly::one(), Poly::x()], 1)
        );
    }

    #[test]
    fn dpolylog_examples() {
        for lambda in grid() {
            let li1 = dpolylog(1, &lambda, 10);
            let neg_log = -&negate_variable(&dlog(&lambda, 10));
            assert_eq!(li1, neg_log);
        }
        assert_eq!(dpolylog(2, &int(0), 3), s(&[int(0), int(1), rat(1, 4), rat(1, 9)], 3));
        let lambda = rat(3, 11);
        assert_eq!(*dpolylog(2, &lambda, 2).coeff(2), (int(1) - &lambda) / int(4));
    }

    #[test]
    fn negative_polylog_index_multiplies() {
        // Li_{-1,0}(t) = t/(1-t)^2 = Σ n t^n
        assert_eq!(dpolylog(-1, &int(0), 4), s(&[int(0), int(1), int(2), int(3), int(4)], 4));
    }

    #[test]
    fn div_and_mul_t() {
        let a = s(&[int(0), int(3), int(4)], 2);
        assert_eq!(a.div_t().unwrap(), s(&[int(3), int(4)], 1));
        assert_eq!(a.div_t().unwrap().mul_t(), a);
        assert!(s(&[int(1)], 2).div_t().is_err());
    }

    fn unit_series() -> impl Strategy<Value = Series<Rational>> {
        (
            (1i64..20, 1i64..5, any::<bool>()),
            prop::collection::vec((-9i64..9, 1i64..5), 0..10),
        )
            .prop_map(|((n, d, neg), rest)| {
                let c0 = if neg { rat(-n, d) } else { rat(n, d) };
                let mut coeffs = vec![c0];
                coeffs.extend(rest.into_iter().map(|(a, b)| rat(a, b)));
                Series::new(coeffs, 9)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reciprocal_is_inverse(a in unit_series()) {
            prop_assert_eq!(&a * &a.reciprocal().unwrap(), Series::one(9));
        }

        #[test]
        fn poly_series_commutes_with_evaluation(
            a in prop::collection::vec(prop::collection::vec(-5i64..5, 0..4), 1..7),
            b in prop::collection::vec(prop::collection::vec(-5i64..5, 0..4), 1..7),
            xn in -7i64..7, xd in 1i64..4,
        ) {
            let to_series = |v: &Vec<Vec<i64>>| {
                Series::new(v.iter().map(|c| Poly::new(c.iter().map(|&q| int(q)).collect())).collect(), 5)
            };
            let (a, b) = (to_series(&a), to_series(&b));
            let x0 = rat(xn, xd);
            let eval = |s: &Series<Poly>| s.map(|p| p.eval(&x0));
            prop_assert_eq!(eval(&(&a * &b)), &eval(&a) * &eval(&b));
        }
    }
}
