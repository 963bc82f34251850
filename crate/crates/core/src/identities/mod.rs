//! Registry of machine-checkable identities and the grid runner that sweeps
//! them.
//!
//! Every check except `E67` compares two exact objects: rationals, polynomials
//! in `x` (coefficientwise), or truncated series (to the stated order). `E67`
//! compares an exact value with a partial sum of an infinite series, using an
//! explicit tail bound.

mod checks;
mod suite;

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::algebra::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::sequences::{S2Recurrence, Tables};
use crate::value::Value;

pub use suite::{run_suite, run_suite_filtered, Grid, IdentityReport, SuiteReport};

/// Concrete parameter values for one identity instance.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Binding {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub p: Option<usize>,
    pub lambda: Option<Rational>,
    pub order: Option<usize>,
    pub tolerance: Option<Rational>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn p(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }

    pub fn lambda(mut self, lambda: Rational) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn order(mut self, order: usize) -> Self {
        self.order = Some(order);
        self
    }

    pub fn tolerance(mut self, tolerance: Rational) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    /// Largest family index a check may touch.
    fn table_size(&self) -> usize {
        self.n.unwrap_or(0).max(self.p.unwrap_or(0)) + 1
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(l) = &self.lambda {
            parts.push(format!("lambda={l}"));
        }
        if let Some(o) = self.order {
            parts.push(format!("order={o}"));
        }
        if let Some(t) = &self.tolerance {
            parts.push(format!("tolerance={t}"));
        }
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Binding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        if let Some(n) = self.n {
            map.serialize_entry("n", &n)?;
        }
        if let Some(r) = self.r {
            map.serialize_entry("r", &r)?;
        }
        if let Some(p) = self.p {
            map.serialize_entry("p", &p)?;
        }
        if let Some(l) = &self.lambda {
            map.serialize_entry("lambda", &format_rational(l))?;
        }
        if let Some(o) = self.order {
            map.serialize_entry("order", &o)?;
        }
        if let Some(t) = &self.tolerance {
            map.serialize_entry("tolerance", &format_rational(t))?;
        }
        map.end()
    }
}

/// Which parameters an identity takes, with their lower bounds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ParamSchema {
    /// `Some(m)`: takes `n ≥ m`.
    pub n_min: Option<usize>,
    /// Takes `r ≥ 1`.
    pub r: bool,
    /// Takes `p ≥ 0`.
    pub p: bool,
    pub lambda: bool,
    /// Takes a truncation order `N ≥ 1`.
    pub order: bool,
    /// Takes a positive tolerance (numeric checks only).
    pub tolerance: bool,
    /// Both sides are polynomials in a symbolic `x`.
    pub symbolic_x: bool,
}

impl ParamSchema {
    const fn n(n_min: usize) -> Self {
        ParamSchema {
            n_min: Some(n_min),
            r: false,
            p: false,
            lambda: true,
            order: false,
            tolerance: false,
            symbolic_x: false,
        }
    }

    const fn symbolic(mut self) -> Self {
        self.symbolic_x = true;
        self
    }

    const fn with_r(mut self) -> Self {
        self.r = true;
        self
    }

    const fn with_p(mut self) -> Self {
        self.p = true;
        self
    }

    const fn with_order(mut self) -> Self {
        self.order = true;
        self
    }

    const fn with_tolerance(mut self) -> Self {
        self.tolerance = true;
        self
    }

    const fn without_n(mut self) -> Self {
        self.n_min = None;
        self
    }

    const fn without_lambda(mut self) -> Self {
        self.lambda = false;
        self
    }

    fn validate(&self, id: &str, binding: &Binding) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::BindingOutsideSchema {
                id: id.to_string(),
                reason,
            })
        };
        let presence = [
            ("n", self.n_min.is_some(), binding.n.is_some()),
            ("r", self.r, binding.r.is_some()),
            ("p", self.p, binding.p.is_some()),
            ("lambda", self.lambda, binding.lambda.is_some()),
            ("order", self.order, binding.order.is_some()),
            ("tolerance", self.tolerance, binding.tolerance.is_some()),
        ];
        for (name, wanted, given) in presence {
            match (wanted, given) {
                (true, false) => return fail(format!("missing {name}")),
                (false, true) => return fail(format!("{name} is not a parameter")),
                _ => {}
            }
        }
        if let (Some(min), Some(n)) = (self.n_min, binding.n) {
            if n < min {
                return fail(format!("needs n >= {min}, got {n}"));
            }
        }
        if binding.r == Some(0) {
            return fail("needs r >= 1".into());
        }
        if binding.order == Some(0) {
            return fail("needs order >= 1".into());
        }
        if let Some(t) = &binding.tolerance {
            if *t <= Rational::from_integer(0.into()) {
                return fail("needs tolerance > 0".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = self.n_min {
            parts.push(format!("n >= {m}"));
        }
        if self.r {
            parts.push("r >= 1".into());
        }
        if self.p {
            parts.push("p >= 0".into());
        }
        if self.lambda {
            parts.push("lambda".into());
        }
        if self.symbolic_x {
            parts.push("symbolic x".into());
        }
        if self.order {
            parts.push("order N".into());
        }
        if self.tolerance {
            parts.push("tolerance".into());
        }
        f.write_str(&parts.join(", "))
    }
}

/// Both sides of one identity instance, before the pass verdict.
pub(crate) struct Evaluation {
    lhs: Value,
    rhs: Value,
    /// Set by numeric checks; exact checks pass iff `lhs == rhs`.
    pass: Option<bool>,
    note: Option<String>,
}

impl Evaluation {
    fn exact(lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        Evaluation {
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass: None,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

type Checker = fn(&Tables, &Binding) -> Result<Evaluation>;

#[derive(Clone, Copy)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    pub schema: ParamSchema,
    /// Compared within a tolerance rather than exactly.
    pub numeric: bool,
    checker: Checker,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("schema", &self.schema)
            .field("numeric", &self.numeric)
            .finish()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IdentitySummary {
    pub id: &'static str,
    pub description: &'static str,
    pub schema: ParamSchema,
    pub numeric: bool,
}

/// Outcome of one identity instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub binding: Binding,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {} [{}]", self.id, self.binding)?;
        writeln!(f, "  lhs = {}", self.lhs)?;
        write!(f, "  rhs = {}", self.rhs)?;
        if let Some(note) = &self.note {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

const fn spec(
    id: &'static str,
    description: &'static str,
    schema: ParamSchema,
    checker: Checker,
) -> IdentitySpec {
    IdentitySpec {
        id,
        description,
        schema,
        numeric: false,
        checker,
    }
}

static REGISTRY: [IdentitySpec; 25] = [
    spec(
        "T1",
        "generating function -log_λ(1-t)/(1-t)^r = Σ H^(r)_{n,λ} t^n",
        ParamSchema::n(0).without_n().with_r().with_order(),
        checks::t1,
    ),
    spec(
        "T2",
        "Σ_k (-1)^k H^(r)_{k,λ} k! S2_λ(n,k) = (-1)^n <r>_{n-1,λ} n",
        ParamSchema::n(1).with_r(),
        checks::t2,
    ),
    spec(
        "T3",
        "H^(r)_{n,λ} = (1/n!) Σ_k (-1)^(n-k) <r>_{k-1,λ} k S1_λ(n,k)",
        ParamSchema::n(1).with_r(),
        checks::t3,
    ),
    spec(
        "T4a",
        "Σ_k S1_λ(n,k) E_{k,λ}(x) = n! Σ_k binom(x,k) (-1/2)^(n-k)",
        ParamSchema::n(0).symbolic(),
        checks::t4a,
    ),
    spec(
        "T4b",
        "E_{n,λ}(x) = Σ_k k! S2_λ(n,k) Σ_j binom(x,j) (-1/2)^(k-j)",
        ParamSchema::n(0).symbolic(),
        checks::t4b,
    ),
    spec(
        "E32",
        "E_{n,λ}(1/2) = Σ_k k! S2_λ(n,k) (-1)^k Σ_j binom(2j,j) / ((1-2j) 2^(k+j))",
        ParamSchema::n(0),
        checks::e32,
    ),
    spec(
        "T5",
        "β_{n,λ}(x) = Σ_j dfact(j)/(j+1) Σ_{k>=j} binom(n,k) S2_λ(k,j) (x)_{n-k,λ}",
        ParamSchema::n(0).symbolic(),
        checks::t5,
    ),
    spec(
        "T6",
        "Σ_k β_{k,λ}(x) S1_λ(n,k) = n! Σ_k binom(x,k) dfact(n-k)/(n-k+1)!",
        ParamSchema::n(0).symbolic(),
        checks::t6,
    ),
    spec(
        "T7",
        "β_{n,λ}(x) = Σ_k k! S2_λ(n,k) Σ_j binom(x,j) dfact(k-j)/(k-j+1)!, with its x=0 case",
        ParamSchema::n(0).symbolic(),
        checks::t7,
    ),
    spec(
        "T8",
        "(n-1)! H_{n,-λ} = Σ_k (-1)^(n-k) β_{k-1,λ}(1-λ) S1_{-λ}(n,k)",
        ParamSchema::n(1),
        checks::t8,
    ),
    spec(
        "T9",
        "β_{n-1,-λ}(2λ+1) = Σ_k (k-1)! (-1)^(n-k) H_{k,-λ} S2_λ(n,k)",
        ParamSchema::n(1),
        checks::t9,
    ),
    spec(
        "T10",
        "dfact(n-1)/n = Σ_k β_{k-1,λ}(1-λ) S1_λ(n,k)",
        ParamSchema::n(1),
        checks::t10,
    ),
    spec(
        "T11a",
        "φ_{n+1,λ}(x) = x φ_{n,λ}(x) + (x d/dx - nλ) φ_{n,λ}(x)",
        ParamSchema::n(1).symbolic(),
        checks::t11a,
    ),
    spec(
        "T11b",
        "φ_{n+1,λ}(x) = x Σ_k binom(n,k) (1-λ)_{n-k,λ} φ_{k,λ}(x)",
        ParamSchema::n(1).symbolic(),
        checks::t11b,
    ),
    spec(
        "T12",
        "Σ_k S2_λ(n,k) x^k/k = (1/n) Σ_{j<n} binom(n,j) β_{j,λ}(1-λ) φ_{n-j,λ}(x)",
        ParamSchema::n(1).symbolic(),
        checks::t12,
    ),
    spec(
        "E61",
        "Σ_k S2_λ(n,k) x^k/k^2 as a nested double sum of β_{j,λ}(1-λ) and φ_{m,λ}(x)",
        ParamSchema::n(1).symbolic(),
        checks::e61,
    ),
    spec(
        "T13",
        "(1+x) F_{n,λ}(x) = Σ_k S2_λ(n+1,k)(k-1)! x^k + nλ Σ_k S2_λ(n,k)(k-1)! x^k, and its integral form",
        ParamSchema::n(1).symbolic(),
        checks::t13,
    ),
    spec(
        "T13r",
        "Σ_k S2_λ(n+1,k)(k-1)! + nλ Σ_k S2_λ(n,k)(k-1)! = 2 F_{n,λ}(1) (n >= 1), 1 (n = 0)",
        ParamSchema::n(0),
        checks::t13r,
    ),
    spec(
        "T14",
        "F_{n+1,λ}(x) = (x - nλ) F_{n,λ}(x) + (x + x^2) F'_{n,λ}(x)",
        ParamSchema::n(1).symbolic(),
        checks::t14,
    ),
    spec(
        "T15",
        "Σ_{k=2}^n dfact(k-2) S2_λ(n,k) = (n-1) (1)_{n-1,λ}",
        ParamSchema::n(2),
        checks::t15,
    ),
    spec(
        "C15",
        "Σ_{k=2}^n (-1)^(k-2) (k-2)! S2(n,k) = n-1 with classical Stirling numbers",
        ParamSchema::n(2).without_lambda(),
        checks::c15,
    ),
    spec(
        "E44",
        "Li_{2,λ}(-t/(1-t)) = -Σ (n-1)! H_{n,-λ} t^n/n!",
        ParamSchema::n(0).without_n().with_order(),
        checks::e44,
    ),
    spec(
        "E59",
        "Σ_{k=1}^n (k-λ)_{p,λ} = (β_{p+1,λ}(n+1-λ) - β_{p+1,λ}(1-λ))/(p+1)",
        ParamSchema::n(1).with_p(),
        checks::e59,
    ),
    spec(
        "E66",
        "F_{n,λ}(x/(1-x))/(1-x) = Σ_k (k)_{n,λ} x^k as series in x",
        ParamSchema::n(0).with_order(),
        checks::e66,
    ),
    IdentitySpec {
        id: "E67",
        description: "F_{n,λ}(1) = Σ_k (k)_{n,λ} (1/2)^(k+1), partial sum within tolerance",
        schema: ParamSchema::n(0).with_tolerance(),
        numeric: true,
        checker: checks::e67,
    },
];

pub fn registry() -> &'static [IdentitySpec] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentitySpec> {
    REGISTRY
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Registry listing in its fixed order.
pub fn list_identities() -> Vec<IdentitySummary> {
    REGISTRY
        .iter()
        .map(|s| IdentitySummary {
            id: s.id,
            description: s.description,
            schema: s.schema,
            numeric: s.numeric,
        })
        .collect()
}

impl IdentitySpec {
    /// Evaluates one binding against precomputed tables. The tables must be
    /// for the binding's `λ` (any `λ` when the identity takes none) and large
    /// enough for the binding.
    pub fn check_with(&self, tables: &Tables, binding: &Binding) -> Result<CheckResult> {
        self.schema.validate(self.id, binding)?;
        let eval = (self.checker)(tables, binding)?;
        let pass = eval.pass.unwrap_or(eval.lhs == eval.rhs);
        Ok(CheckResult {
            id: self.id.to_string(),
            binding: binding.clone(),
            lhs: eval.lhs,
            rhs: eval.rhs,
            pass,
            note: eval.note,
        })
    }
}

/// Runs one identity instance with freshly computed tables.
pub fn run_identity(id: &str, binding: &Binding) -> Result<CheckResult> {
    run_identity_with(id, binding, S2Recurrence::Standard)
}

/// As [`run_identity`], with a chosen second-kind recurrence.
pub fn run_identity_with(id: &str, binding: &Binding, recurrence: S2Recurrence) -> Result<CheckResult> {
    let spec = lookup(id)?;
    spec.schema.validate(spec.id, binding)?;
    let zero = Rational::from_integer(0.into());
    let lambda = binding.lambda.as_ref().unwrap_or(&zero);
    let tables = Tables::new(lambda, binding.table_size(), recurrence);
    spec.check_with(&tables, binding)
}
