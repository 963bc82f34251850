//! Degenerate number and polynomial families.
//!
//! Each family has a primary path (a recurrence or a finite sum). Families
//! that also have a generating function expose it as a second, independent
//! constructor used for cross-checking.

mod harmonic;
mod polys;
mod stirling;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::value::Value;

pub use harmonic::{dharmonic, dharmonic_raw, dharmonic_seq, dhyperharmonic, dhyperharmonic_seq};
pub use polys::{
    dbell_from, dbell_poly, dbernoulli_poly, dbernoulli_poly_closed, dbernoulli_poly_verified,
    dbernoulli_polys, deuler_poly, deuler_polys, dfubini_from, dfubini_poly, dfubini_series_oracle,
    power_sum,
};
pub use stirling::{
    s1_triangle, s2_triangle, s2_triangle_with, stirling_series_oracle, S2Recurrence, StirlingKind,
    StirlingTriangle,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Harmonic,
    Hyperharmonic,
    Bernoulli,
    Euler,
    Bell,
    Fubini,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Harmonic,
        Family::Hyperharmonic,
        Family::Bernoulli,
        Family::Euler,
        Family::Bell,
        Family::Fubini,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Harmonic => "harmonic",
            Family::Hyperharmonic => "hyperharmonic",
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
            Family::Bell => "bell",
            Family::Fubini => "fubini",
        }
    }

    pub fn is_polynomial(self) -> bool {
        !matches!(self, Family::Harmonic | Family::Hyperharmonic)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// One member of a family: `Poly` for the polynomial families, `Rational`
/// for the harmonic ones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SequenceValue {
    pub family: Family,
    pub n: usize,
    pub r: Option<usize>,
    pub lambda: Rational,
    pub value: Value,
}

/// Members `0..=nmax` of a family. `r` is required by, and only accepted
/// for, the hyperharmonic family.
pub fn sequence(
    family: Family,
    nmax: usize,
    r: Option<usize>,
    lambda: &Rational,
) -> Result<Vec<SequenceValue>> {
    if r.is_some() != (family == Family::Hyperharmonic) {
        return Err(Error::InvalidParameter(format!(
            "r is required for hyperharmonic and not accepted for {family}"
        )));
    }
    let values: Vec<Value> = match family {
        Family::Harmonic => dharmonic_seq(nmax, lambda).into_iter().map(Value::from).collect(),
        Family::Hyperharmonic => dhyperharmonic_seq(nmax, r.unwrap_or(1), lambda)?
            .into_iter()
            .map(Value::from)
            .collect(),
        Family::Bernoulli => dbernoulli_polys(nmax, lambda).into_iter().map(Value::from).collect(),
        Family::Euler => deuler_polys(nmax, lambda).into_iter().map(Value::from).collect(),
        Family::Bell => {
            let s2 = s2_triangle(nmax, lambda);
            (0..=nmax).map(|n| dbell_from(&s2, n).into()).collect()
        }
        Family::Fubini => {
            let s2 = s2_triangle(nmax, lambda);
            (0..=nmax).map(|n| dfubini_from(&s2, n).into()).collect()
        }
    };
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(n, value)| SequenceValue {
            family,
            n,
            r,
            lambda: lambda.clone(),
            value,
        })
        .collect())
}

/// Everything the identity checks read for one `λ`, computed once up to
/// `nmax`: both Stirling triangles, the harmonic numbers and polynomial
/// families at `λ`, and the `-λ` variants some identities mix in.
#[derive(Clone, Debug)]
pub struct Tables {
    lambda: Rational,
    nmax: usize,
    s1: StirlingTriangle,
    s2: StirlingTriangle,
    s1_neg: StirlingTriangle,
    harmonic: Vec<Rational>,
    harmonic_neg: Vec<Rational>,
    bernoulli: Vec<Poly>,
    bernoulli_neg: Vec<Poly>,
    euler: Vec<Poly>,
    bell: Vec<Poly>,
    fubini: Vec<Poly>,
}

impl Tables {
    pub fn new(lambda: &Rational, nmax: usize, recurrence: S2Recurrence) -> Self {
        let neg = -lambda.clone();
        let s2 = s2_triangle_with(nmax, lambda, recurrence);
        let bell = (0..=nmax).map(|n| dbell_from(&s2, n)).collect();
        let fubini = (0..=nmax).map(|n| dfubini_from(&s2, n)).collect();
        Tables {
            lambda: lambda.clone(),
            nmax,
            s1: s1_triangle(nmax, lambda),
            s1_neg: s1_triangle(nmax, &neg),
            harmonic: dharmonic_seq(nmax, lambda),
            harmonic_neg: dharmonic_seq(nmax, &neg),
            bernoulli: dbernoulli_polys(nmax, lambda),
            bernoulli_neg: dbernoulli_polys(nmax, &neg),
            euler: deuler_polys(nmax, lambda),
            s2,
            bell,
            fubini,
        }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn s1(&self) -> &StirlingTriangle {
        &self.s1
    }

    pub fn s2(&self) -> &StirlingTriangle {
        &self.s2
    }

    /// `S_{1,-λ}`.
    pub fn s1_neg(&self) -> &StirlingTriangle {
        &self.s1_neg
    }

    pub fn harmonic(&self, n: usize) -> &Rational {
        &self.harmonic[n]
    }

    /// `H_{n,-λ}`.
    pub fn harmonic_neg(&self, n: usize) -> &Rational {
        &self.harmonic_neg[n]
    }

    pub fn bernoulli(&self, n: usize) -> &Poly {
        &self.bernoulli[n]
    }

    /// `β_{n,-λ}(x)`.
    pub fn bernoulli_neg(&self, n: usize) -> &Poly {
        &self.bernoulli_neg[n]
    }

    pub fn euler(&self, n: usize) -> &Poly {
        &self.euler[n]
    }

    pub fn bell(&self, n: usize) -> &Poly {
        &self.bell[n]
    }

    pub fn fubini(&self, n: usize) -> &Poly {
        &self.fubini[n]
    }
}
