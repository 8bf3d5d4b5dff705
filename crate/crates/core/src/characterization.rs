//! Recognition, construction, enumeration and counting of integral mixed
//! circulant symbol sets.
//!
//! A symbol set is integral exactly when its symmetric part is a union of full
//! orbits `G_n(d)` and its skew part is a union of half-orbits `G_n^1(d)` or
//! `G_n^3(d)` with `d | n/4` (the skew part must be empty unless `4 | n`).
//! [`Decomposition`] records which orbits are used.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::{is_integral, SymbolSet};
use crate::gaussian::HalfClass;
use crate::number_theory::{divisor_count, divisors, g_class_set, g_set};

/// Largest modulus accepted by [`brute_force_integral`] unless overridden.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterizationError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("divisor {d} is used both as a full orbit and as a half-orbit")]
    Overlap { d: usize },
    #[error("{d} is not a proper divisor of {n}")]
    NotProperDivisor { n: usize, d: usize },
    #[error("half-orbit divisor {d} does not divide n/4 for n = {n}")]
    NotQuarterDivisor { n: usize, d: usize },
    #[error("n = {n} exceeds the brute-force cap {cap}")]
    AboveCap { n: usize, cap: usize },
}

/// Divisor sets describing an integral symbol set: `full` holds the `d` with
/// `G_n(d) ⊆ C`, `half` maps `d | n/4` to the half-orbit `G_n^r(d) ⊆ C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub full: BTreeSet<usize>,
    pub half: BTreeMap<usize, HalfClass>,
}

impl Decomposition {
    pub fn empty(n: usize) -> Self {
        Decomposition { n, full: BTreeSet::new(), half: BTreeMap::new() }
    }

    pub fn new(
        n: usize,
        full: impl IntoIterator<Item = usize>,
        half: impl IntoIterator<Item = (usize, HalfClass)>,
    ) -> Result<Self, CharacterizationError> {
        let dec = Decomposition { n, full: full.into_iter().collect(), half: half.into_iter().collect() };
        dec.validate()?;
        Ok(dec)
    }

    pub fn validate(&self) -> Result<(), CharacterizationError> {
        let n = self.n;
        if n < 2 {
            return Err(CharacterizationError::ModulusTooSmall(n));
        }
        for &d in &self.full {
            if d == 0 || d >= n || n % d != 0 {
                return Err(CharacterizationError::NotProperDivisor { n, d });
            }
        }
        for &d in self.half.keys() {
            if d == 0 || n % 4 != 0 || (n / 4) % d != 0 {
                return Err(CharacterizationError::NotQuarterDivisor { n, d });
            }
            if self.full.contains(&d) {
                return Err(CharacterizationError::Overlap { d });
            }
        }
        Ok(())
    }
}

/// Builds `C = ∪_{d∈full} G_n(d) ∪ ∪_{(d,r)∈half} G_n^r(d)`.
pub fn compose(dec: &Decomposition) -> Result<SymbolSet, CharacterizationError> {
    dec.validate()?;
    let n = dec.n;
    let mut elements = Vec::new();
    for &d in &dec.full {
        elements.extend_from_slice(g_set(n, d).expect("validated divisor").elements());
    }
    for (&d, &class) in &dec.half {
        elements.extend_from_slice(g_class_set(n, d, class.residue()).expect("validated divisor").elements());
    }
    Ok(SymbolSet::new(n, elements).expect("orbits are disjoint subsets of 1..n"))
}

/// The unique decomposition of `c`, or `None` when `c` is not integral.
pub fn decompose(c: &SymbolSet) -> Option<Decomposition> {
    let n = c.n();
    let (symmetric, skew) = c.split();
    let mut dec = Decomposition::empty(n);

    for &k in symmetric.elements() {
        let d = k.gcd(&n);
        if dec.full.contains(&d) {
            continue;
        }
        let orbit = g_set(n, d).expect("gcd divides n");
        if !orbit.elements().iter().all(|&x| symmetric.contains(x)) {
            return None;
        }
        dec.full.insert(d);
    }

    if !skew.is_empty() && n % 4 != 0 {
        return None;
    }
    for &k in skew.elements() {
        let d = k.gcd(&n);
        if (n / d) % 4 != 0 {
            return None;
        }
        let class = HalfClass::from_residue((k / d) % 4).expect("k/d is odd");
        match dec.half.get(&d) {
            Some(&seen) if seen == class => continue,
            Some(_) => return None,
            None => {}
        }
        let own = g_class_set(n, d, class.residue()).expect("4d | n");
        let other = g_class_set(n, d, class.opposite().residue()).expect("4d | n");
        if !own.elements().iter().all(|&x| skew.contains(x))
            || other.elements().iter().any(|&x| skew.contains(x))
        {
            return None;
        }
        dec.half.insert(d, class);
    }

    dec.validate().ok()?;
    Some(dec)
}

/// What a single divisor contributes to an enumerated decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OrbitChoice {
    Absent,
    Full,
    Half(HalfClass),
}

const TWO_WAY: &[OrbitChoice] = &[OrbitChoice::Absent, OrbitChoice::Full];
const FOUR_WAY: &[OrbitChoice] = &[
    OrbitChoice::Absent,
    OrbitChoice::Full,
    OrbitChoice::Half(HalfClass::One),
    OrbitChoice::Half(HalfClass::Three),
];

/// Every valid decomposition for a modulus, in lexicographic order of the
/// per-divisor choice vector (divisors ascending, first divisor most
/// significant; choices ordered absent, full, class 1, class 3).
#[derive(Debug, Clone)]
pub struct Decompositions {
    n: usize,
    slots: Vec<(usize, &'static [OrbitChoice])>,
    counter: Vec<usize>,
    done: bool,
}

impl Decompositions {
    pub fn new(n: usize) -> Result<Self, CharacterizationError> {
        if n < 2 {
            return Err(CharacterizationError::ModulusTooSmall(n));
        }
        let slots: Vec<_> = divisors(n)
            .expect("n > 0")
            .into_iter()
            .filter(|&d| d < n)
            .map(|d| {
                let choices = if n % 4 == 0 && (n / 4) % d == 0 { FOUR_WAY } else { TWO_WAY };
                (d, choices)
            })
            .collect();
        let counter = vec![0; slots.len()];
        Ok(Decompositions { n, slots, counter, done: false })
    }

    fn current(&self) -> Decomposition {
        let mut dec = Decomposition::empty(self.n);
        for (&(d, choices), &idx) in self.slots.iter().zip(&self.counter) {
            match choices[idx] {
                OrbitChoice::Absent => {}
                OrbitChoice::Full => {
                    dec.full.insert(d);
                }
                OrbitChoice::Half(class) => {
                    dec.half.insert(d, class);
                }
            }
        }
        dec
    }

    fn advance(&mut self) {
        for pos in (0..self.slots.len()).rev() {
            self.counter[pos] += 1;
            if self.counter[pos] < self.slots[pos].1.len() {
                return;
            }
            self.counter[pos] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Decompositions {
    type Item = Decomposition;

    fn next(&mut self) -> Option<Decomposition> {
        if self.done {
            return None;
        }
        let dec = self.current();
        self.advance();
        Some(dec)
    }
}

/// Stream of every integral symbol set on `n` vertices, each exactly once.
#[derive(Debug, Clone)]
pub struct IntegralSymbolSets {
    inner: Decompositions,
    seen: HashSet<SymbolSet>,
}

impl Iterator for IntegralSymbolSets {
    type Item = SymbolSet;

    fn next(&mut self) -> Option<SymbolSet> {
        let dec = self.inner.next()?;
        let set = compose(&dec).expect("enumerated decompositions are valid");
        assert!(self.seen.insert(set.clone()), "orbit collision at {set} for n = {}", dec.n);
        Some(set)
    }
}

pub fn enumerate_integral(n: usize) -> Result<IntegralSymbolSets, CharacterizationError> {
    Ok(IntegralSymbolSets { inner: Decompositions::new(n)?, seen: HashSet::new() })
}

/// `k(n) = 2^{τ(n/4)+τ(n)-1}` when `4 | n`, else `2^{τ(n)-1}`.
pub fn count_bound(n: usize) -> Result<BigUint, CharacterizationError> {
    if n < 2 {
        return Err(CharacterizationError::ModulusTooSmall(n));
    }
    let mut exp = divisor_count(n).expect("n > 0") - 1;
    if n % 4 == 0 {
        exp += divisor_count(n / 4).expect("n/4 > 0");
    }
    Ok(BigUint::from(1u8) << exp)
}

/// Exhaustive search over all `2^{n-1}` subsets, keeping the integral ones.
pub fn brute_force_integral(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = SymbolSet>, CharacterizationError> {
    if n < 2 {
        return Err(CharacterizationError::ModulusTooSmall(n));
    }
    if n > cap || n > 64 {
        return Err(CharacterizationError::AboveCap { n, cap });
    }
    let total: u64 = 1 << (n - 1);
    Ok((0..total)
        .map(move |mask| SymbolSet::from_mask(n, mask).expect("mask within range"))
        .filter(|c| is_integral(c).integral))
}
