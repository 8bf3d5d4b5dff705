//! Named property suites behind a common trait, run by the `verify` command.
//!
//! Each suite checks the identities of one module over every modulus up to a
//! caller-supplied bound. Suites are registered by name in a
//! [`SuiteRegistry`] and selected at runtime.

use std::collections::BTreeSet;
use std::thread;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characterization::{
    brute_force_integral, compose, count_bound, decompose, enumerate_integral, Decomposition, Decompositions,
};
use crate::circulant::{is_integral, spectrum_exact, spectrum_numeric, verify_eigenpairs, SymbolSet};
use crate::gaussian::{cyclotomic, cyclotomic_factor, root_of_unity, GaussianInt, GaussianPoly, HalfClass};
use crate::number_theory::{
    divisors, euler_phi, g_class_set, g_set, m_class_set, m_set, moebius_pow2, odd_divisors, DivisorClassSelector,
    ResidueSet,
};
use crate::ramanujan::{mixed_spectrum_from_sums, s_closed, s_sum, s_sum_general, SumTable};

const MAX_REPORTED_FAILURES: usize = 20;

/// Outcome of one suite run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
    pub failure_count: u64,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

pub trait PropertySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Runs every check for moduli up to `max_n`.
    fn run(&self, max_n: usize) -> SuiteReport;
}

#[derive(Default)]
pub struct SuiteRegistry {
    suites: Vec<Box<dyn PropertySuite>>,
}

impl SuiteRegistry {
    pub fn new() -> Self {
        SuiteRegistry::default()
    }

    /// Registry holding every built-in suite.
    pub fn with_builtin() -> Self {
        SuiteRegistry::new()
            .with_suite(NumberTheorySuite)
            .with_suite(CyclotomicSuite)
            .with_suite(CirculantSuite)
            .with_suite(CharacterizationSuite)
            .with_suite(RamanujanSuite)
    }

    pub fn with_suite(mut self, suite: impl PropertySuite + 'static) -> Self {
        self.register(Box::new(suite));
        self
    }

    /// Adds a suite, replacing any existing suite with the same name.
    pub fn register(&mut self, suite: Box<dyn PropertySuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn PropertySuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Runs the named suites (all when `names` is empty) concurrently.
    /// Unknown names are returned as `Err`.
    pub fn run(&self, names: &[String], max_n: usize) -> Result<Vec<SuiteReport>, String> {
        let selected: Vec<&dyn PropertySuite> = if names.is_empty() {
            self.suites.iter().map(|s| s.as_ref()).collect()
        } else {
            names
                .iter()
                .map(|n| self.get(n).ok_or_else(|| n.clone()))
                .collect::<Result<_, _>>()?
        };
        Ok(thread::scope(|scope| {
            let handles: Vec<_> = selected.iter().map(|s| scope.spawn(move || s.run(max_n))).collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        }))
    }
}

fn disjoint_union(parts: &[ResidueSet]) -> Option<Vec<usize>> {
    let mut all: Vec<usize> = parts.iter().flat_map(|p| p.elements().iter().copied()).collect();
    let len = all.len();
    all.sort_unstable();
    all.dedup();
    (all.len() == len).then_some(all)
}

pub struct NumberTheorySuite;

impl PropertySuite for NumberTheorySuite {
    fn name(&self) -> &'static str {
        "number-theory"
    }

    fn description(&self) -> &'static str {
        "orbit partitions of the residue families, the odd-divisor phi identity, direct-factor Moebius"
    }

    fn run(&self, max_n: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(self.name());
        for n in 2..=max_n {
            for d in divisors(n).unwrap() {
                let parts: Vec<_> = divisors(n / d).unwrap().iter().map(|h| g_set(n, h * d).unwrap()).collect();
                let union = disjoint_union(&parts);
                rep.check(union.as_deref() == Some(m_set(n, d).unwrap().elements()), || {
                    format!("M_{n}({d}) is not the disjoint union of G_{n}(hd)")
                });
            }
            if n % 2 == 0 {
                let s: usize = odd_divisors(n, DivisorClassSelector::AllOdd)
                    .unwrap()
                    .iter()
                    .map(|d| euler_phi(n / d).unwrap())
                    .sum();
                rep.check(s == n / 2, || format!("odd-divisor phi sum {s} != {} for n={n}", n / 2));
            }
            let s: i64 = divisors(n)
                .unwrap()
                .iter()
                .filter(|&&d| d % 2 == 1)
                .map(|d| moebius_pow2(n / d).unwrap())
                .sum();
            rep.check(s == 0, || format!("direct-factor identity fails at n={n}"));
            if n % 4 != 0 {
                continue;
            }
            for d in divisors(n / 4).unwrap() {
                check_quarter_lemmas(&mut rep, n, d);
            }
        }
        rep
    }
}

fn check_quarter_lemmas(rep: &mut SuiteReport, n: usize, d: usize) {
    let g = n / (4 * d);
    let odd = odd_divisors(g, DivisorClassSelector::AllOdd).unwrap();
    let m = |r| m_class_set(n, d, r).unwrap();

    let lhs = m(1).union(&m(3));
    let rhs: Vec<_> = odd.iter().map(|h| g_set(n, h * d).unwrap()).collect();
    rep.check(disjoint_union(&rhs).as_deref() == Some(lhs.elements()), || {
        format!("M^1 ∪ M^3 mismatch at n={n}, d={d}")
    });
    let rhs: Vec<_> = odd.iter().map(|h| g_set(n, 2 * h * d).unwrap()).collect();
    rep.check(disjoint_union(&rhs).as_deref() == Some(m(2).elements()), || {
        format!("M^2 mismatch at n={n}, d={d}")
    });
    let mut with_zero = m_set(n, 4 * d).unwrap().elements().to_vec();
    with_zero.insert(0, 0);
    rep.check(m(0).elements() == with_zero.as_slice(), || format!("M^0 mismatch at n={n}, d={d}"));

    let g1 = g_class_set(n, d, 1).unwrap();
    let g3 = g_class_set(n, d, 3).unwrap();
    let full = g_set(n, d).unwrap();
    rep.check(
        disjoint_union(&[g1.clone(), g3.clone()]).as_deref() == Some(full.elements()),
        || format!("G = G^1 ⊔ G^3 fails at n={n}, d={d}"),
    );
    let half = euler_phi(n / d).unwrap() / 2;
    rep.check(g1.len() == half && g3.len() == half, || format!("half-orbit sizes at n={n}, d={d}"));

    let d1 = odd_divisors(g, DivisorClassSelector::Odd1Mod4).unwrap();
    let d3 = odd_divisors(g, DivisorClassSelector::Odd3Mod4).unwrap();
    for (r, same, flip) in [(1, 1, 3), (3, 3, 1)] {
        let mut parts: Vec<_> = d1.iter().map(|h| g_class_set(n, h * d, same).unwrap()).collect();
        parts.extend(d3.iter().map(|h| g_class_set(n, h * d, flip).unwrap()));
        rep.check(disjoint_union(&parts).as_deref() == Some(m(r).elements()), || {
            format!("M^{r} four-way decomposition fails at n={n}, d={d}")
        });
    }
}

pub struct CyclotomicSuite;

impl PropertySuite for CyclotomicSuite {
    fn name(&self) -> &'static str {
        "cyclotomic"
    }

    fn description(&self) -> &'static str {
        "Phi_n = Phi_n^1 Phi_n^3 over Q(i), factor products of x^(n/4) -+ i, root membership"
    }

    fn run(&self, max_n: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(self.name());
        for n in (4..=max_n).step_by(4) {
            let f1 = cyclotomic_factor(n, HalfClass::One).unwrap();
            let f3 = cyclotomic_factor(n, HalfClass::Three).unwrap();
            rep.check(&*f1 * &*f3 == *cyclotomic(n).unwrap(), || format!("Φ^1·Φ^3 != Φ at n={n}"));
            let half = euler_phi(n).unwrap() / 2;
            rep.check(
                f1.degree() == Some(half) && f3.degree() == Some(half) && f1.is_monic() && f3.is_monic(),
                || format!("degree/monicity at n={n}"),
            );
            rep.check(f3.conj() == *f1, || format!("conjugation symmetry at n={n}"));
            for (class, target) in [(HalfClass::One, GaussianInt::new(0, -1)), (HalfClass::Three, GaussianInt::new(0, 1))] {
                let mut prod = GaussianPoly::one();
                for d in odd_divisors(n, DivisorClassSelector::Odd1Mod4).unwrap() {
                    prod = &prod * &*cyclotomic_factor(n / d, class).unwrap();
                }
                for d in odd_divisors(n, DivisorClassSelector::Odd3Mod4).unwrap() {
                    prod = &prod * &*cyclotomic_factor(n / d, class.opposite()).unwrap();
                }
                rep.check(prod == GaussianPoly::binomial(n / 4, target), || {
                    format!("factor product for x^{} ∓ i fails at n={n}", n / 4)
                });
            }
            if n <= 64 {
                for (r, poly) in [(1, &f1), (3, &f3)] {
                    let own = g_class_set(n, 1, r).unwrap();
                    let other = g_class_set(n, 1, 4 - r).unwrap();
                    let ok = own.elements().iter().all(|&a| poly.eval_numeric(root_of_unity(n, a)).norm() < 1e-9)
                        && other.elements().iter().all(|&a| poly.eval_numeric(root_of_unity(n, a)).norm() >= 0.1);
                    rep.check(ok, || format!("root membership of Φ_{n}^{r}"));
                }
            }
        }
        rep
    }
}

/// Uniformly random subset of `{1, …, n-1}`.
pub fn random_symbol_set(rng: &mut impl Rng, n: usize) -> SymbolSet {
    SymbolSet::new(n, (1..n).filter(|_| rng.gen_bool(0.5))).expect("elements in range")
}

/// Uniformly random valid decomposition.
pub fn random_decomposition(rng: &mut impl Rng, n: usize) -> Decomposition {
    let mut dec = Decomposition::empty(n);
    for d in divisors(n).unwrap().into_iter().filter(|&d| d < n) {
        let quarter = n % 4 == 0 && (n / 4) % d == 0;
        match rng.gen_range(0..if quarter { 4 } else { 2 }) {
            0 => {}
            1 => {
                dec.full.insert(d);
            }
            2 => {
                dec.half.insert(d, HalfClass::One);
            }
            _ => {
                dec.half.insert(d, HalfClass::Three);
            }
        }
    }
    dec
}

/// A set that is integral about half the time: a random decomposition,
/// optionally with one element toggled.
pub fn near_integral_set(rng: &mut impl Rng, n: usize) -> SymbolSet {
    let c = compose(&random_decomposition(rng, n)).expect("valid decomposition");
    if rng.gen_bool(0.5) {
        return c;
    }
    let k = rng.gen_range(1..n);
    let elements: Vec<usize> = if c.contains(k) {
        c.elements().iter().copied().filter(|&x| x != k).collect()
    } else {
        c.elements().iter().copied().chain([k]).collect()
    };
    SymbolSet::new(n, elements).expect("elements in range")
}

/// Distance from `x` to the nearest integer.
pub fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

pub struct CirculantSuite;

impl PropertySuite for CirculantSuite {
    fn name(&self) -> &'static str {
        "circulant"
    }

    fn description(&self) -> &'static str {
        "symmetry pairing, split integrality lemma, exact/numeric agreement, Fourier eigenpairs"
    }

    fn run(&self, max_n: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(self.name());
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1c0);
        for n in 2..=max_n.min(64) {
            for draw in 0..10 {
                let c = if draw % 2 == 0 { random_symbol_set(&mut rng, n) } else { near_integral_set(&mut rng, n) };
                let (sym, skew) = c.split();
                let ls = spectrum_numeric(&sym).unwrap();
                let ms = spectrum_numeric(&skew).unwrap();
                let paired = (0..n).all(|j| {
                    (ls[j] - ls[(n - j) % n]).abs() < 1e-9 && (ms[j] + ms[(n - j) % n]).abs() < 1e-9
                });
                rep.check(paired, || format!("symmetry pairing fails for n={n}, C={c}"));

                let numeric = spectrum_numeric(&c).unwrap();
                for e in spectrum_exact(&c) {
                    let g = numeric[e.index];
                    let ok = match e.value() {
                        Some(v) => (g - v as f64).abs() < 1e-6,
                        None => distance_to_integer(g) > 1e-6,
                    };
                    rep.check(ok, || format!("exact/numeric disagree at n={n}, C={c}, j={}", e.index));
                }
                rep.check(verify_eigenpairs(&c, 1e-8), || format!("eigenpair residual for n={n}, C={c}"));
            }
        }
        for n in 2..=max_n.min(12) {
            for mask in 0..(1u64 << (n - 1)) {
                check_split_lemma(&mut rep, &SymbolSet::from_mask(n, mask).unwrap());
            }
        }
        for n in 13..=max_n.min(48) {
            for _ in 0..10 {
                check_split_lemma(&mut rep, &near_integral_set(&mut rng, n));
            }
        }
        rep
    }
}

fn check_split_lemma(rep: &mut SuiteReport, c: &SymbolSet) {
    let (sym, skew) = c.split();
    let whole = is_integral(c).integral;
    let parts = is_integral(&sym).integral && is_integral(&skew).integral;
    rep.check(whole == parts, || format!("split lemma fails for n={}, C={c}", c.n()));
}

pub struct CharacterizationSuite;

impl PropertySuite for CharacterizationSuite {
    fn name(&self) -> &'static str {
        "characterization"
    }

    fn description(&self) -> &'static str {
        "enumeration vs brute force, counting bound, decompose/compose inverses"
    }

    fn run(&self, max_n: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(self.name());
        for n in 2..=max_n.min(16) {
            let fast: BTreeSet<SymbolSet> = enumerate_integral(n).unwrap().collect();
            let slow: BTreeSet<SymbolSet> = brute_force_integral(n, 16).unwrap().collect();
            rep.check(fast == slow, || format!("enumeration differs from brute force at n={n}"));
            for mask in 0..(1u64 << (n - 1)) {
                let c = SymbolSet::from_mask(n, mask).unwrap();
                let dec = decompose(&c);
                rep.check(dec.is_some() == fast.contains(&c), || {
                    format!("decompose presence disagrees with integrality for n={n}, C={c}")
                });
            }
        }
        for n in 2..=max_n.min(64) {
            let sets: Vec<SymbolSet> = enumerate_integral(n).unwrap().collect();
            rep.check(BigUint::from(sets.len()) == count_bound(n).unwrap(), || {
                format!("count {} != k({n})", sets.len())
            });
            for dec in Decompositions::new(n).unwrap() {
                let c = compose(&dec).unwrap();
                rep.check(decompose(&c).as_ref() == Some(&dec), || format!("decompose∘compose at n={n}"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xc4a2);
        let upper = max_n.min(48);
        if upper >= 2 {
            for _ in 0..1000 {
                let n = rng.gen_range(2..=upper);
                let c = near_integral_set(&mut rng, n);
                let dec = decompose(&c);
                rep.check(dec.is_some() == is_integral(&c).integral, || {
                    format!("decompose vs is_integral for n={n}, C={c}")
                });
                if let Some(dec) = dec {
                    rep.check(compose(&dec).as_ref() == Ok(&c), || format!("compose∘decompose for n={n}, C={c}"));
                }
            }
        }
        rep
    }
}

pub struct RamanujanSuite;

impl PropertySuite for RamanujanSuite {
    fn name(&self) -> &'static str {
        "ramanujan"
    }

    fn description(&self) -> &'static str {
        "sine-sum properties, closed form, powers of two, spectrum reconstruction, skew exclusivity"
    }

    fn run(&self, max_n: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(self.name());
        for n in (4..=max_n).step_by(4) {
            let table = SumTable::sine(n).unwrap();
            let phi = euler_phi(n).unwrap() as i64;
            let s = |t: usize| table.get(t);
            let ok = (0..n).all(|t| s_sum(n, t + n).unwrap() == s(t) && s(n - t) == -s(t))
                && s(0) == 0
                && s(n / 2) == 0
                && s(n / 4) == phi
                && s(3 * n / 4) == -phi;
            rep.check(ok, || format!("basic s-sum properties fail at n={n}"));

            if odd_divisors(n, DivisorClassSelector::Odd3Mod4).unwrap().is_empty() {
                for t in 0..n {
                    rep.check(s_closed(n, t) == Ok(s(t)), || format!("closed form differs at n={n}, t={t}"));
                }
            }
            if n.is_power_of_two() {
                let half = (n / 2) as i64;
                let ok = (0..n).all(|t| {
                    let expected = if t == n / 4 {
                        half
                    } else if t == 3 * n / 4 {
                        -half
                    } else {
                        0
                    };
                    s(t) == expected
                });
                rep.check(ok, || format!("power-of-two table fails at n={n}"));
            }
            check_telescoping(&mut rep, n);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0x5a11);
        for n in 2..=max_n.min(48) {
            for _ in 0..10 {
                let dec = random_decomposition(&mut rng, n);
                let c = compose(&dec).unwrap();
                let exact: Vec<Option<i64>> = spectrum_exact(&c).iter().map(|e| e.value()).collect();
                let sums = mixed_spectrum_from_sums(&dec).unwrap();
                let ok = exact.iter().zip(&sums).all(|(e, s)| *e == Some(*s));
                rep.check(ok, || format!("reconstruction fails at n={n}, C={c}"));
            }
        }

        for n in [4, 8, 12, 20, 5, 6, 7, 9, 10].into_iter().filter(|&n| n <= max_n) {
            let found = integral_skew_symmetric_sets(n);
            let expected = if n % 4 == 0 {
                vec![
                    g_class_set(n, 1, 1).unwrap().elements().to_vec(),
                    g_class_set(n, 1, 3).unwrap().elements().to_vec(),
                ]
            } else {
                Vec::new()
            };
            rep.check(found == expected, || format!("skew-symmetric exclusivity fails at n={n}"));
        }
        rep
    }
}

/// All skew-symmetric `C ⊆ G_n(1)` whose sine sums are integers for every
/// argument, sorted.
pub fn integral_skew_symmetric_sets(n: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<usize> = g_set(n, 1).unwrap().elements().iter().copied().filter(|&a| 2 * a < n).collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << pairs.len()) {
        let mut c: Vec<usize> = pairs
            .iter()
            .enumerate()
            .map(|(b, &a)| if (mask >> b) & 1 == 1 { n - a } else { a })
            .collect();
        c.sort_unstable();
        let integral = (0..n).all(|q| distance_to_integer(s_sum_general(n, &c, q).unwrap()) < 1e-6);
        if integral {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Checks the sine sum over `M_n^1(1)` against its closed value and against
/// the split into half-orbit sums over `D_n^1` and `D_n^3`, where the class-3
/// half-orbit sums are `−s_{n/d}`.
fn check_telescoping(rep: &mut SuiteReport, n: usize) {
    let m1 = m_class_set(n, 1, 1).unwrap();
    let d1 = odd_divisors(n, DivisorClassSelector::Odd1Mod4).unwrap();
    let d3 = odd_divisors(n, DivisorClassSelector::Odd3Mod4).unwrap();
    for t in 0..n {
        let f: f64 = m1.elements().iter().map(|&a| 2.0 * root_of_unity(n, a * t % n).im).sum();
        let closed = if t == n / 4 {
            (n / 2) as f64
        } else if t == 3 * n / 4 {
            -((n / 2) as f64)
        } else {
            0.0
        };
        let branches: i64 = d1.iter().map(|d| s_sum(n / d, t).unwrap()).sum::<i64>()
            - d3.iter().map(|d| s_sum(n / d, t).unwrap()).sum::<i64>();
        rep.check((f - closed).abs() < 1e-9 && (f - branches as f64).abs() < 1e-9, || {
            format!("telescoping identity fails at n={n}, t={t}")
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let reg = SuiteRegistry::with_builtin();
        assert_eq!(reg.names(), vec!["number-theory", "cyclotomic", "circulant", "characterization", "ramanujan"]);
        assert!(reg.get("cyclotomic").is_some());
        assert!(reg.get("nope").is_none());
        assert_eq!(reg.run(&["nope".to_string()], 8).unwrap_err(), "nope");
    }

    #[test]
    fn builtin_suites_pass_small() {
        let reports = SuiteRegistry::with_builtin().run(&[], 12).unwrap();
        assert_eq!(reports.len(), 5);
        for r in reports {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.checks > 0);
        }
    }

    struct AlwaysFails;

    impl PropertySuite for AlwaysFails {
        fn name(&self) -> &'static str {
            "cyclotomic"
        }
        fn description(&self) -> &'static str {
            "replacement"
        }
        fn run(&self, _max_n: usize) -> SuiteReport {
            let mut rep = SuiteReport::new("cyclotomic");
            rep.check(false, || "boom".into());
            rep
        }
    }

    #[test]
    fn register_replaces_by_name() {
        let reg = SuiteRegistry::with_builtin().with_suite(AlwaysFails);
        assert_eq!(reg.names().len(), 5);
        let reports = reg.run(&["cyclotomic".to_string()], 8).unwrap();
        assert!(!reports[0].passed());
        assert_eq!(reports[0].failures, vec!["boom".to_string()]);
    }
}
