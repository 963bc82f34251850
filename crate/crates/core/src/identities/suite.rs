use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{lookup, registry, Binding, CheckResult, IdentitySpec};
use crate::algebra::{format_rational, int, rat, Rational};
use crate::error::Result;
use crate::sequences::{S2Recurrence, Tables};

/// Parameter grid for a suite run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grid {
    pub nmax: usize,
    pub rmax: usize,
    pub pmax: usize,
    pub lambdas: Vec<Rational>,
    /// Series truncation order; series identities also run at `order + 5`.
    pub order: usize,
    /// E67 tolerance.
    pub tolerance: Rational,
    pub recurrence: S2Recurrence,
}

impl Grid {
    pub fn default_lambdas() -> Vec<Rational> {
        vec![
            int(0),
            rat(1, 2),
            rat(-1, 2),
            int(1),
            int(-1),
            rat(2, 3),
            rat(-3, 7),
            int(3),
            rat(1, 5),
        ]
    }

    /// `10^-30`.
    pub fn default_tolerance() -> Rational {
        Rational::new(BigInt::from(1), BigInt::from(10).pow(30u32))
    }

    /// Bindings of `spec` over this grid, `λ` outermost.
    pub fn bindings(&self, spec: &IdentitySpec) -> Vec<Binding> {
        let schema = &spec.schema;
        if !schema.lambda {
            // λ-free identities are the classical λ = 0 specializations.
            if !self.lambdas.iter().any(Zero::is_zero) {
                return Vec::new();
            }
            let n_min = schema.n_min.unwrap_or(0);
            return (n_min..=self.nmax).map(|n| Binding::new().n(n)).collect();
        }
        let mut out = Vec::new();
        for lambda in &self.lambdas {
            let base = Binding::new().lambda(lambda.clone());
            let mut partial = vec![base];
            if let Some(n_min) = schema.n_min {
                partial = expand(partial, n_min..=self.nmax, Binding::n);
            }
            if schema.r {
                partial = expand(partial, 1..=self.rmax, Binding::r);
            }
            if schema.p {
                partial = expand(partial, 0..=self.pmax, Binding::p);
            }
            if schema.order {
                // Only the generating-function identities in t are rerun at a
                // second order; E66 is a series in x and stays at `order`.
                let orders = if schema.n_min.is_none() {
                    vec![self.order, self.order + 5]
                } else {
                    vec![self.order]
                };
                partial = expand(partial, orders, Binding::order);
            }
            if schema.tolerance {
                partial = partial
                    .into_iter()
                    .map(|b| b.tolerance(self.tolerance.clone()))
                    .collect();
            }
            out.extend(partial);
        }
        out
    }

    fn table_size(&self) -> usize {
        self.nmax.max(self.pmax) + 1
    }
}

fn expand(
    partial: Vec<Binding>,
    values: impl IntoIterator<Item = usize> + Clone,
    set: fn(Binding, usize) -> Binding,
) -> Vec<Binding> {
    partial
        .into_iter()
        .flat_map(|b| values.clone().into_iter().map(move |v| set(b.clone(), v)))
        .collect()
}

impl Default for Grid {
    /// The acceptance grid.
    fn default() -> Self {
        Grid {
            nmax: 12,
            rmax: 4,
            pmax: 6,
            lambdas: Grid::default_lambdas(),
            order: 24,
            tolerance: Grid::default_tolerance(),
            recurrence: S2Recurrence::Standard,
        }
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("nmax", &self.nmax)?;
        map.serialize_entry("rmax", &self.rmax)?;
        map.serialize_entry("pmax", &self.pmax)?;
        let lambdas: Vec<String> = self.lambdas.iter().map(format_rational).collect();
        map.serialize_entry("lambdas", &lambdas)?;
        map.serialize_entry("order", &self.order)?;
        map.serialize_entry("tolerance", &format_rational(&self.tolerance))?;
        map.serialize_entry("s2_recurrence", &self.recurrence)?;
        map.end()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub pass_count: usize,
    pub fail_count: usize,
    pub failures: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub grid: Grid,
    pub results: Vec<IdentityReport>,
    pub all_pass: bool,
    /// Wall-clock time; not part of the serialized report.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn executed(&self) -> usize {
        self.results.iter().map(|r| r.pass_count + r.fail_count).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().flat_map(|r| r.failures.iter())
    }
}

/// Runs every registry identity over `grid`.
pub fn run_suite(grid: &Grid) -> SuiteReport {
    let specs: Vec<&IdentitySpec> = registry().iter().collect();
    run_specs(grid, &specs).expect("grid bindings satisfy every schema")
}

/// Runs the named identities (registry order is kept) over `grid`.
pub fn run_suite_filtered(grid: &Grid, ids: &[String]) -> Result<SuiteReport> {
    let mut specs = Vec::new();
    for id in ids {
        lookup(id)?;
    }
    for spec in registry() {
        if ids.iter().any(|id| id == spec.id) {
            specs.push(spec);
        }
    }
    run_specs(grid, &specs)
}

fn run_specs(grid: &Grid, specs: &[&IdentitySpec]) -> Result<SuiteReport> {
    let start = Instant::now();
    let size = grid.table_size();
    let tables: Vec<Tables> = grid
        .lambdas
        .par_iter()
        .map(|lambda| Tables::new(lambda, size, grid.recurrence))
        .collect();
    let zero_tables = grid
        .lambdas
        .iter()
        .position(Zero::is_zero)
        .map(|i| &tables[i]);

    let mut work: Vec<(usize, &IdentitySpec, Binding, &Tables)> = Vec::new();
    for (slot, spec) in specs.iter().enumerate() {
        for binding in grid.bindings(spec) {
            let table = match &binding.lambda {
                Some(lambda) => {
                    let idx = grid.lambdas.iter().position(|l| l == lambda).expect("grid λ");
                    &tables[idx]
                }
                None => zero_tables.expect("λ-free bindings need λ = 0 in the grid"),
            };
            work.push((slot, spec, binding, table));
        }
    }

    let outcomes: Vec<(usize, CheckResult)> = work
        .par_iter()
        .map(|(slot, spec, binding, table)| Ok((*slot, spec.check_with(table, binding)?)))
        .collect::<Result<_>>()?;

    let mut results: Vec<IdentityReport> = specs
        .iter()
        .map(|s| IdentityReport {
            id: s.id.to_string(),
            pass_count: 0,
            fail_count: 0,
            failures: Vec::new(),
        })
        .collect();
    for (slot, outcome) in outcomes {
        let report = &mut results[slot];
        if outcome.pass {
            report.pass_count += 1;
        } else {
            report.fail_count += 1;
            report.failures.push(outcome);
        }
    }
    let all_pass = results.iter().all(|r| r.fail_count == 0);
    Ok(SuiteReport {
        grid: grid.clone(),
        results,
        all_pass,
        elapsed: start.elapsed(),
    })
}
