//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Oracles here are written independently of the library: plain vectors
//! for truncated series and classical recurrences for the λ = 0 checks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use degen::algebra::{int, rat, Poly};
use degen::identities::{run_identity, run_suite, run_suite_filtered, Binding, Grid};
use degen::sequences::{
    dbell_poly, dbernoulli_poly_closed, dbernoulli_polys, deuler_polys, dfubini_poly,
    dharmonic_seq, dhyperharmonic_seq, s1_triangle, s2_triangle, S2Recurrence,
};
use degen::series::{dexp, dlog, Series};
use degen::Rational;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn lambdas() -> Vec<Rational> {
    Grid::default_lambdas()
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(int(1), |acc, i| acc * int(i as i64))
}

fn choose(n: usize, k: usize) -> Rational {
    if k > n {
        return int(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Truncated product of two coefficient vectors, degrees `0..=deg`.
fn vmul(a: &[Rational], b: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![int(0); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `[t^j] (e_λ(t) - 1) = ∏_{i<j}(1 - iλ) / j!` for j ≥ 1.
fn exp_minus_one(lambda: &Rational, deg: usize) -> Vec<Rational> {
    let mut out = vec![int(0); deg + 1];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        let prod = (0..j).fold(int(1), |acc, i| acc * (int(1) - int(i as i64) * lambda));
        *slot = prod / factorial(j);
    }
    out
}

/// `[t^j] log_λ(1 + t) = ∏_{i=1}^{j-1}(λ - i) / j!` for j ≥ 1.
fn log_one_plus(lambda: &Rational, deg: usize) -> Vec<Rational> {
    let mut out = vec![int(0); deg + 1];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        let prod = (1..j).fold(int(1), |acc, i| acc * (lambda - int(i as i64)));
        *slot = prod / factorial(j);
    }
    out
}

/// `n! [t^n] f(t)^k / k!` for all `n, k ≤ nmax`.
fn triangle_from_gf(base: &[Rational], nmax: usize) -> Vec<Vec<Rational>> {
    let mut power = vec![int(0); nmax + 1];
    power[0] = int(1);
    let mut out = vec![vec![int(0); nmax + 1]; nmax + 1];
    for k in 0..=nmax {
        for n in 0..=nmax {
            out[n][k] = &power[n] * factorial(n) / factorial(k);
        }
        power = vmul(&power, base, nmax);
    }
    out
}

fn criterion_full_suite() -> Verdict {
    let start = Instant::now();
    let report = run_suite(&Grid::default());
    let elapsed = start.elapsed();
    let failures: Vec<String> = report.failures().map(|f| f.to_string()).collect();
    let ids = report.results.len();
    let passing = report.results.iter().filter(|r| r.fail_count == 0 && r.pass_count > 0).count();
    let detail = format!(
        "{} checks over {ids} identities, {passing} fully passing, {:.1?}",
        report.executed(),
        elapsed
    );
    if !failures.is_empty() || passing != ids {
        return Err(format!("{detail}; first failure: {}", failures.first().cloned().unwrap_or_default()));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("{detail}; over the 60 s budget"));
    }
    Ok(detail)
}

fn criterion_triangle_oracle() -> Verdict {
    let nmax = 20;
    for lambda in lambdas() {
        let s1 = s1_triangle(nmax, &lambda);
        let s2 = s2_triangle(nmax, &lambda);
        let o1 = triangle_from_gf(&log_one_plus(&lambda, 24), nmax);
        let o2 = triangle_from_gf(&exp_minus_one(&lambda, 24), nmax);
        for n in 0..=nmax {
            for k in 0..=nmax {
                if s1.entry(n, k) != o1[n][k] {
                    return Err(format!("S1({n},{k}) at λ={lambda}"));
                }
                if s2.entry(n, k) != o2[n][k] {
                    return Err(format!("S2({n},{k}) at λ={lambda}"));
                }
            }
        }
    }
    Ok(format!("nmax = {nmax}, {} values of λ", lambdas().len()))
}

fn criterion_inversion() -> Verdict {
    let size = 12;
    for lambda in lambdas() {
        let s1 = s1_triangle(size, &lambda);
        let s2 = s2_triangle(size, &lambda);
        for n in 0..=size {
            for m in 0..=size {
                let a: Rational = (0..=size).map(|k| s1.entry(n, k) * s2.entry(k, m)).sum();
                let b: Rational = (0..=size).map(|k| s2.entry(n, k) * s1.entry(k, m)).sum();
                let delta = if n == m { int(1) } else { int(0) };
                if a != delta || b != delta {
                    return Err(format!("entry ({n},{m}) at λ={lambda}"));
                }
            }
        }
    }
    Ok(format!("sizes 0..={size}, both orders of multiplication"))
}

fn poly_from(coeffs: Vec<Rational>) -> Poly {
    Poly::new(coeffs)
}

fn classical_bernoulli_numbers(nmax: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        if n == 0 {
            b.push(int(1));
            continue;
        }
        let s: Rational = (0..n).map(|k| choose(n + 1, k) * &b[k]).sum();
        b.push(-s / int(n as i64 + 1));
    }
    b
}

fn criterion_classical() -> Verdict {
    let nmax = 10;
    let zero = int(0);

    // Stirling numbers, classical recurrences.
    let mut cs1 = vec![vec![int(0); nmax + 2]; nmax + 1];
    let mut cs2 = vec![vec![int(0); nmax + 2]; nmax + 1];
    cs1[0][0] = int(1);
    cs2[0][0] = int(1);
    for n in 0..nmax {
        for k in 1..=n + 1 {
            cs1[n + 1][k] = &cs1[n][k - 1] - int(n as i64) * &cs1[n][k];
            cs2[n + 1][k] = &cs2[n][k - 1] + int(k as i64) * &cs2[n][k];
        }
    }
    let s1 = s1_triangle(nmax, &zero);
    let s2 = s2_triangle(nmax, &zero);
    for n in 0..=nmax {
        for k in 0..=nmax {
            if s1.entry(n, k) != cs1[n][k] || s2.entry(n, k) != cs2[n][k] {
                return Err(format!("Stirling ({n},{k})"));
            }
        }
    }

    // Harmonic and hyperharmonic numbers.
    let h: Vec<Rational> = (0..=nmax + 4)
        .map(|n| (1..=n).map(|k| rat(1, k as i64)).sum())
        .collect();
    if dharmonic_seq(nmax, &zero)[..] != h[..=nmax] {
        return Err("harmonic numbers".into());
    }
    for r in 1..=4 {
        let got = dhyperharmonic_seq(nmax, r, &zero).map_err(|e| e.to_string())?;
        for n in 0..=nmax {
            let want = choose(n + r - 1, r - 1) * (&h[n + r - 1] - &h[r - 1]);
            if got[n] != want {
                return Err(format!("hyperharmonic n={n} r={r}"));
            }
        }
    }

    // Bernoulli polynomials from Bernoulli numbers.
    let bn = classical_bernoulli_numbers(nmax);
    let bern = dbernoulli_polys(nmax, &zero);
    for n in 0..=nmax {
        let mut c = vec![int(0); n + 1];
        for k in 0..=n {
            c[n - k] = choose(n, k) * &bn[k];
        }
        if bern[n] != poly_from(c) {
            return Err(format!("Bernoulli n={n}"));
        }
    }

    // Euler polynomials: E_n(x) = x^n - (1/2) Σ_{k<n} C(n,k) E_k(x).
    let euler = deuler_polys(nmax, &zero);
    let mut ce: Vec<Poly> = Vec::new();
    for n in 0..=nmax {
        let mut p = Poly::monomial(int(1), n);
        for (k, ek) in ce.iter().enumerate() {
            p = &p - &(&Poly::constant(choose(n, k) / int(2)) * ek);
        }
        ce.push(p);
    }
    if euler != ce {
        return Err("Euler polynomials".into());
    }

    // Touchard: φ_{n+1} = x(φ_n + φ_n'); Fubini: F_{n+1} = x(1+x)F_n' + xF_n.
    let x = Poly::x();
    let one_plus_x = &Poly::constant(int(1)) + &x;
    let mut bell = Poly::constant(int(1));
    let mut fub = Poly::constant(int(1));
    for n in 0..=nmax {
        if dbell_poly(n, &zero) != bell {
            return Err(format!("Bell n={n}"));
        }
        if dfubini_poly(n, &zero) != fub {
            return Err(format!("Fubini n={n}"));
        }
        bell = &x * &(&bell + &bell.derivative());
        fub = &(&(&x * &one_plus_x) * &fub.derivative()) + &(&x * &fub);
    }
    Ok(format!("n <= {nmax}, eight families"))
}

fn criterion_bernoulli_paths() -> Verdict {
    let nmax = 10;
    for lambda in lambdas() {
        let series_route = dbernoulli_polys(nmax, &lambda);
        let s2 = s2_triangle(nmax, &lambda);
        for (n, p) in series_route.iter().enumerate() {
            if *p != dbernoulli_poly_closed(n, &s2) {
                return Err(format!("n={n} at λ={lambda}"));
            }
        }
    }
    Ok(format!("n <= {nmax}, {} values of λ", lambdas().len()))
}

fn criterion_comp_inverse() -> Verdict {
    let order = 24;
    for lambda in lambdas() {
        let inner = &dexp(&int(1), &lambda, order) - &Series::one(order);
        let composed = dlog(&lambda, order).compose(&inner).map_err(|e| e.to_string())?;
        if composed != Series::t(order) {
            return Err(format!("λ={lambda}: {composed}"));
        }
    }
    Ok(format!("order {order}"))
}

/// `F_{n,λ}(1) = n! [t^n] 1 / (2 - e_λ(t))`.
fn fubini_at_one(n: usize, lambda: &Rational) -> Rational {
    let mut denom: Vec<Rational> = exp_minus_one(lambda, n).into_iter().map(|c| -c).collect();
    denom[0] = int(1);
    let mut inv = vec![int(0); n + 1];
    inv[0] = int(1);
    for m in 1..=n {
        inv[m] = -(1..=m).map(|j| &denom[j] * &inv[m - j]).sum::<Rational>();
    }
    &inv[n] * factorial(n)
}

fn criterion_e67() -> Verdict {
    let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(30u32));
    let lams = [int(0), rat(1, 2), rat(-1, 2)];
    let mut worst_k = 0;
    for lambda in &lams {
        for n in 0..=6usize {
            // Library check at its own cutoff.
            let binding = Binding::new().n(n).lambda(lambda.clone()).tolerance(tol.clone());
            let result = run_identity("E67", &binding).map_err(|e| e.to_string())?;
            if !result.pass {
                return Err(format!("library E67 failed: {result}"));
            }
            // Independent cutoff: |(k)_{n,λ}| ≤ (k + c)^n; the majorant
            // terms m_k = (k+c)^n / 2^(k+1) shrink by ≤ 3/4 once k is large,
            // so the tail after K is at most 4 m_{K+1}.
            let c = (int(n as i64 - 1).max(int(0)) * lambda.abs()).ceil();
            let majorant = |k: usize| -> Rational {
                Pow::pow(&c + int(k as i64), n as u32) / Pow::pow(int(2), (k + 1) as u32)
            };
            let mut k = 0usize;
            loop {
                let settled = majorant(k + 1) * int(4) <= majorant(k) * int(3);
                if settled && majorant(k + 1) * int(4) <= tol {
                    break;
                }
                k += 1;
            }
            let falling = |k: usize| -> Rational {
                (0..n).fold(int(1), |acc, i| acc * (int(k as i64) - int(i as i64) * lambda))
            };
            let partial: Rational = (0..=k)
                .map(|j| falling(j) / Pow::pow(int(2), (j + 1) as u32))
                .sum();
            let err = (partial - fubini_at_one(n, lambda)).abs();
            if err > tol {
                return Err(format!("n={n} λ={lambda}: error above tolerance at K={k}"));
            }
            worst_k = worst_k.max(k);
        }
    }
    Ok(format!("n <= 6, tolerance 1e-30, largest K = {worst_k}"))
}

fn criterion_mutation() -> Verdict {
    let grid = Grid {
        nmax: 4,
        rmax: 2,
        pmax: 2,
        lambdas: vec![rat(1, 2), rat(-1, 2), int(1), rat(2, 3)],
        order: 8,
        recurrence: S2Recurrence::FlippedLambdaSign,
        ..Grid::default()
    };
    let ids: Vec<String> = ["T15", "T2", "T9"].iter().map(|s| s.to_string()).collect();
    let report = run_suite_filtered(&grid, &ids).map_err(|e| e.to_string())?;
    let mut found = Vec::new();
    for r in &report.results {
        let first = r
            .failures
            .iter()
            .find(|f| f.binding.n.is_some_and(|n| n <= 4))
            .ok_or_else(|| format!("{} survived the mutation", r.id))?;
        found.push(format!("{} [{}]", r.id, first.binding));
    }
    Ok(format!("counterexamples: {}", found.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("full identity suite on the default grid", criterion_full_suite),
        ("Stirling triangles equal generating-function extraction", criterion_triangle_oracle),
        ("S1 and S2 matrices are mutually inverse", criterion_inversion),
        ("λ = 0 matches classical oracles", criterion_classical),
        ("Bernoulli series route equals closed form", criterion_bernoulli_paths),
        ("dlog composed with dexp - 1 is t", criterion_comp_inverse),
        ("E67 partial sums within tolerance", criterion_e67),
        ("flipped S2 recurrence is detected", criterion_mutation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
