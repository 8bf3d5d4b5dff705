//! Acceptance criteria. Each test prints one `[PASS]` or `[FAIL]` line; run
//! with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mixcirc::characterization::{compose, DEFAULT_BRUTE_FORCE_CAP};
use mixcirc::circulant::{spectrum_exact, spectrum_numeric, verify_eigenpairs, EigenStatus};
use mixcirc::gaussian::{cyclotomic, cyclotomic_factor, GaussianInt, GaussianPoly, HalfClass};
use mixcirc::number_theory::{euler_phi, g_class_set, odd_divisors, DivisorClassSelector};
use mixcirc::ramanujan::{mixed_spectrum_from_sums, s_closed, s_sum};
use mixcirc::suites::{near_integral_set, random_decomposition, random_symbol_set};
use mixcirc::{brute_force_integral, enumerate_integral, SymbolSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, failures: &[String], elapsed: Duration, budget: Duration) {
    let ok = failures.is_empty() && elapsed < budget;
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{status}] AC-{id} {title} ({:.2}s, budget {}s)", elapsed.as_secs_f64(), budget.as_secs());
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "AC-{id}: {} failures, first: {}", failures.len(), failures[0]);
    assert!(elapsed < budget, "AC-{id}: took {elapsed:?}, budget {budget:?}");
}

fn tau(n: usize) -> usize {
    (1..=n).filter(|d| n % d == 0).count()
}

fn phi_sieve(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for p in 2..=limit {
        if phi[p] == p {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p;
            }
        }
    }
    phi
}

fn moebius_naive(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Φ_n = ∏_{d | n} (x^d − 1)^{μ(n/d)}` over the integers, by multiplying the
/// numerator factors and dividing out the denominator factors.
fn cyclotomic_oracle(n: usize) -> Vec<i128> {
    let mut poly = vec![1i128];
    let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    for &d in &divs {
        if moebius_naive(n / d) == 1 {
            let mut next = vec![0i128; poly.len() + d];
            for (k, &c) in poly.iter().enumerate() {
                next[k + d] += c;
                next[k] -= c;
            }
            poly = next;
        }
    }
    for &d in &divs {
        if moebius_naive(n / d) == -1 {
            // Divide by x^d − 1: q_k = q_{k−d} − p_k read from the bottom.
            let mut q = vec![0i128; poly.len() - d];
            for k in 0..q.len() {
                q[k] = -poly[k] + if k >= d { q[k - d] } else { 0 };
            }
            poly = q;
        }
    }
    poly
}

fn real_poly(coeffs: &[i128]) -> GaussianPoly {
    GaussianPoly::new(coeffs.iter().map(|&c| GaussianInt::new(c as i64, 0)).collect())
}

fn product(factors: impl IntoIterator<Item = GaussianPoly>) -> GaussianPoly {
    factors.into_iter().fold(GaussianPoly::one(), |acc, f| &acc * &f)
}

#[test]
fn ac01_characterization_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 4..=16 {
        let fast: BTreeSet<SymbolSet> = enumerate_integral(n).unwrap().collect();
        let slow: BTreeSet<SymbolSet> = brute_force_integral(n, DEFAULT_BRUTE_FORCE_CAP).unwrap().collect();
        if fast != slow {
            failures.push(format!("n={n}: enumerated {} sets, brute force {}", fast.len(), slow.len()));
        }
    }
    report(1, "enumeration matches brute force for n in 4..16", &failures, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn ac02_counting() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=64 {
        let mut exp = tau(n) - 1;
        if n % 4 == 0 {
            exp += tau(n / 4);
        }
        let expected = 1u64 << exp;
        let sets: Vec<SymbolSet> = enumerate_integral(n).unwrap().collect();
        let distinct: BTreeSet<&SymbolSet> = sets.iter().collect();
        if sets.len() as u64 != expected || distinct.len() != sets.len() {
            failures.push(format!("n={n}: {} sets ({} distinct), expected {expected}", sets.len(), distinct.len()));
        }
    }
    report(2, "integral set count equals k(n) for n in 2..64", &failures, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn ac03_cyclotomic_factorization() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in (4..=256).step_by(4) {
        let phi = cyclotomic(n).unwrap();
        if *phi != real_poly(&cyclotomic_oracle(n)) {
            failures.push(format!("n={n}: cyclotomic polynomial differs from the Möbius product"));
        }
        let f1 = cyclotomic_factor(n, HalfClass::One).unwrap();
        let f3 = cyclotomic_factor(n, HalfClass::Three).unwrap();
        if &*f1 * &*f3 != *phi {
            failures.push(format!("n={n}: factor product differs from the cyclotomic polynomial"));
        }
        let d1 = odd_divisors(n, DivisorClassSelector::Odd1Mod4).unwrap();
        let d3 = odd_divisors(n, DivisorClassSelector::Odd3Mod4).unwrap();
        let factor = |m: usize, class| (*cyclotomic_factor(m, class).unwrap()).clone();
        let minus = product(
            d1.iter()
                .map(|&d| factor(n / d, HalfClass::One))
                .chain(d3.iter().map(|&d| factor(n / d, HalfClass::Three))),
        );
        let plus = product(
            d1.iter()
                .map(|&d| factor(n / d, HalfClass::Three))
                .chain(d3.iter().map(|&d| factor(n / d, HalfClass::One))),
        );
        if minus != GaussianPoly::binomial(n / 4, GaussianInt::new(0, -1)) {
            failures.push(format!("n={n}: class-1 products differ from x^(n/4) - i"));
        }
        if plus != GaussianPoly::binomial(n / 4, GaussianInt::new(0, 1)) {
            failures.push(format!("n={n}: class-3 products differ from x^(n/4) + i"));
        }
    }
    report(3, "cyclotomic factorization for n = 0 mod 4 up to 256", &failures, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn ac04_degree_identity() {
    let start = Instant::now();
    let limit = 10_000;
    let phi = phi_sieve(limit);
    let mut failures = Vec::new();
    for n in (2..=limit).step_by(2) {
        let odd = odd_divisors(n, DivisorClassSelector::AllOdd).unwrap();
        let sum: usize = odd.iter().map(|&d| euler_phi(n / d).unwrap()).sum();
        let sieve_sum: usize = (1..=n).step_by(2).filter(|d| n % d == 0).map(|d| phi[n / d]).sum();
        if sum != n / 2 || sieve_sum != n / 2 {
            failures.push(format!("n={n}: library sum {sum}, sieve sum {sieve_sum}, expected {}", n / 2));
        }
    }
    report(4, "n/2 equals the sum of phi(n/d) over odd d, even n up to 10000", &failures, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn ac05_sine_sum_properties() {
    let start = Instant::now();
    let phi = phi_sieve(400);
    let mut failures = Vec::new();
    for n in (4..=400).step_by(4) {
        let table: Vec<i64> = (0..n).map(|t| s_sum(n, t).unwrap()).collect();
        let mut bad = |what: &str| failures.push(format!("n={n}: {what}"));
        for t in 0..n {
            if s_sum(n, t + n).unwrap() != table[t] {
                bad(&format!("not periodic at t={t}"));
            }
            if table[(n - t) % n] != -table[t] {
                bad(&format!("not antisymmetric at t={t}"));
            }
        }
        if table[0] != 0 || table[n / 2] != 0 {
            bad("nonzero at 0 or n/2");
        }
        if table[n / 4] != phi[n] as i64 || table[3 * n / 4] != -(phi[n] as i64) {
            bad("value at n/4 or 3n/4 is not plus or minus phi(n)");
        }
    }
    report(5, "sine sum periodicity, antisymmetry and special values up to 400", &failures, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn ac06_closed_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut qualifying = 0;
    for n in (4..=400).step_by(4) {
        if !odd_divisors(n, DivisorClassSelector::Odd3Mod4).unwrap().is_empty() {
            continue;
        }
        qualifying += 1;
        for t in 0..n {
            let (direct, closed) = (s_sum(n, t).unwrap(), s_closed(n, t).unwrap());
            if direct != closed {
                failures.push(format!("n={n} t={t}: direct {direct}, closed {closed}"));
            }
        }
    }
    if qualifying == 0 {
        failures.push("no qualifying moduli".into());
    }
    report(6, "closed form equals direct sine sum for qualifying n up to 400", &failures, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn ac07_power_of_two() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 2..=10u32 {
        let n = 1usize << k;
        let (q, h) = (1usize << (k - 2), 1i64 << (k - 1));
        for t in 0..n {
            let expected = if t == q {
                h
            } else if t == 3 * q {
                -h
            } else {
                0
            };
            let got = s_sum(n, t).unwrap();
            if got != expected {
                failures.push(format!("n={n} t={t}: got {got}, expected {expected}"));
            }
        }
    }
    report(7, "sine sum table for n = 2^k, k in 2..10", &failures, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn ac08_spectrum_reconstruction() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for n in [8, 12, 16, 20, 24, 48] {
        for _ in 0..100 {
            let dec = random_decomposition(&mut rng, n);
            let c = compose(&dec).unwrap();
            let from_sums = mixed_spectrum_from_sums(&dec).unwrap();
            let exact: Vec<Option<i64>> = spectrum_exact(&c).iter().map(|e| e.value()).collect();
            if exact.iter().zip(&from_sums).any(|(e, s)| *e != Some(*s)) {
                failures.push(format!("n={n} C={c}: exact {exact:?}, from sums {from_sums:?}"));
            }
        }
    }
    report(8, "spectrum from Ramanujan sums equals exact spectrum", &failures, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn ac09_exact_numeric_coherence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut seen = [0usize; 2];
    for n in 2..=64 {
        for trial in 0..10 {
            let c = if trial % 2 == 0 { random_symbol_set(&mut rng, n) } else { near_integral_set(&mut rng, n) };
            let numeric = spectrum_numeric(&c).unwrap();
            for (e, &x) in spectrum_exact(&c).iter().zip(&numeric) {
                match &e.status {
                    EigenStatus::Integer(v) => {
                        seen[0] += 1;
                        if (x - *v as f64).abs() > 1e-6 {
                            failures.push(format!("n={n} C={c} j={}: exact {v}, numeric {x}", e.index));
                        }
                    }
                    EigenStatus::NonInteger(_) => {
                        seen[1] += 1;
                        if (x - x.round()).abs() <= 1e-6 {
                            failures.push(format!("n={n} C={c} j={}: non-integer within 1e-6 of {x}", e.index));
                        }
                    }
                }
            }
            if !verify_eigenpairs(&c, 1e-8) {
                failures.push(format!("n={n} C={c}: eigenpair residual at least 1e-8"));
            }
        }
    }
    if seen.contains(&0) {
        failures.push(format!("degenerate sample: {} integer, {} non-integer eigenvalues", seen[0], seen[1]));
    }
    report(9, "exact and numeric spectra agree, eigenpair residual below 1e-8", &failures, start.elapsed(), Duration::from_secs(60));
}

/// Every transversal of the negation pairing on totatives whose sine sums
/// are all within 1e-6 of an integer.
fn integral_transversals(n: usize) -> BTreeSet<Vec<usize>> {
    let low: Vec<usize> = (1..n).filter(|&a| 2 * a < n && num_integer::gcd(a, n) == 1).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << low.len()) {
        let mut c: Vec<usize> =
            low.iter().enumerate().map(|(b, &a)| if mask >> b & 1 == 1 { n - a } else { a }).collect();
        c.sort_unstable();
        let integral = (0..n).all(|q| {
            let s: f64 = c.iter().map(|&a| 2.0 * (std::f64::consts::TAU * (a * q) as f64 / n as f64).sin()).sum();
            (s - s.round()).abs() < 1e-6
        });
        if integral {
            out.insert(c);
        }
    }
    out
}

#[test]
fn ac10_skew_symmetric_exclusivity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [4, 8, 12, 20] {
        let expected: BTreeSet<Vec<usize>> = [1, 3]
            .into_iter()
            .map(|r| g_class_set(n, 1, r).unwrap().elements().to_vec())
            .collect();
        let got = integral_transversals(n);
        if got != expected {
            failures.push(format!("n={n}: integral sets {got:?}, expected {expected:?}"));
        }
    }
    for n in [5, 6, 7, 9, 10] {
        let got = integral_transversals(n);
        if !got.is_empty() {
            failures.push(format!("n={n}: unexpected integral sets {got:?}"));
        }
    }
    report(10, "only the two half-orbits give integral sine sums", &failures, start.elapsed(), Duration::from_secs(30));
}
