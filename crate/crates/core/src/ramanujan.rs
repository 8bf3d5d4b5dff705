//! Ramanujan sums `c_n(q)`, their sine analogue `s_n(t)`, the closed form of
//! `s_n` through the power-of-two Möbius function, and reconstruction of
//! integral spectra from these sums.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characterization::{CharacterizationError, Decomposition};
use crate::circulant::classify_remainder;
use crate::gaussian::{cyclotomic, cyclotomic_factor, root_of_unity, GaussianInt, GaussianPoly, HalfClass};
use crate::number_theory::{divisors, g_class_set, g_set, moebius_pow2, odd_divisors, DivisorClassSelector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamanujanError {
    #[error("n must be positive")]
    ZeroModulus,
    #[error("n = {0} is not a multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("n = {0} has an odd divisor congruent to 3 mod 4")]
    HasThreeModFourDivisor(usize),
    #[error("{d} does not divide n/4 for n = {n}")]
    NotQuarterDivisor { n: usize, d: usize },
    #[error("set is not skew-symmetric in the totatives of {0}")]
    NotSkewSymmetric(usize),
    #[error("sum for n = {n}, argument {q} did not reduce to an integer: {remainder}")]
    NonConstantRemainder { n: usize, q: usize, remainder: String },
    #[error("closed form for n = {n}, t = {t} is not an integer")]
    NonIntegralClosedForm { n: usize, t: usize },
    #[error(transparent)]
    Decomposition(#[from] CharacterizationError),
}

pub type Result<T> = std::result::Result<T, RamanujanError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    #[serde(rename = "COSINE_C")]
    Cosine,
    #[serde(rename = "SINE_S")]
    Sine,
}

/// One full period of `c_n` or `s_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumTable {
    pub n: usize,
    pub kind: SumKind,
    pub values: Vec<i64>,
}

impl SumTable {
    pub fn cosine(n: usize) -> Result<Self> {
        let values = (0..n).map(|q| c_sum(n, q)).collect::<Result<_>>()?;
        Ok(SumTable { n, kind: SumKind::Cosine, values })
    }

    pub fn sine(n: usize) -> Result<Self> {
        let values = (0..n).map(|t| s_sum(n, t)).collect::<Result<_>>()?;
        Ok(SumTable { n, kind: SumKind::Sine, values })
    }

    /// Value at any non-negative argument, by periodicity.
    pub fn get(&self, t: usize) -> i64 {
        self.values[t % self.n]
    }
}

fn reduce_to_integer(p: GaussianPoly, modulus: &GaussianPoly, n: usize, q: usize) -> Result<i64> {
    let rem = p.reduce_mod(modulus).expect("cyclotomic moduli are monic");
    classify_remainder(rem).map_err(|w| RamanujanError::NonConstantRemainder {
        n,
        q,
        remainder: w.to_string(),
    })
}

/// `c_n(q) = Σ_{gcd(a,n)=1} w_n^{aq}`, computed exactly modulo `Φ_n`.
pub fn c_sum(n: usize, q: usize) -> Result<i64> {
    if n == 0 {
        return Err(RamanujanError::ZeroModulus);
    }
    let mut coeffs = vec![GaussianInt::default(); n];
    let one = GaussianInt::from(1);
    for a in (1..=n).filter(|a| a.gcd(&n) == 1) {
        coeffs[a * (q % n) % n] += &one;
    }
    let modulus = cyclotomic(n).expect("n > 0");
    reduce_to_integer(GaussianPoly::new(coeffs), &modulus, n, q)
}

/// `s_n(t) = Σ_{a∈G_n^1(1)} (w_n^{at} − w_n^{−at}) / i`, computed exactly
/// modulo `Φ_n^1`.
pub fn s_sum(n: usize, t: usize) -> Result<i64> {
    if n == 0 || n % 4 != 0 {
        return Err(RamanujanError::NotMultipleOfFour(n));
    }
    let mut coeffs = vec![GaussianInt::default(); n];
    let minus_i = GaussianInt::new(0, -1);
    for &a in g_class_set(n, 1, 1).expect("4 | n").elements() {
        let e = a * (t % n) % n;
        coeffs[e] += &minus_i;
        coeffs[(n - e) % n] -= &minus_i;
    }
    let modulus = cyclotomic_factor(n, HalfClass::One).expect("4 | n");
    reduce_to_integer(GaussianPoly::new(coeffs), &modulus, n, t)
}

/// Floating-point `s_n^C(q) = Σ_{a∈C} 2 sin(2π a q / n)` for a set `C` that
/// picks exactly one of `a`, `n − a` from every totative pair.
pub fn s_sum_general(n: usize, c: &[usize], q: usize) -> Result<f64> {
    if n == 0 {
        return Err(RamanujanError::ZeroModulus);
    }
    let totatives = g_set(n, 1).expect("1 | n");
    let mut chosen = vec![false; n];
    for &a in c {
        if a >= n || !totatives.contains(a) || chosen[a] || chosen[n - a] {
            return Err(RamanujanError::NotSkewSymmetric(n));
        }
        chosen[a] = true;
    }
    if 2 * c.len() != totatives.len() {
        return Err(RamanujanError::NotSkewSymmetric(n));
    }
    Ok(c.iter().map(|&a| 2.0 * root_of_unity(n, a * (q % n) % n).im).sum())
}

fn check_closed_form_domain(n: usize) -> Result<()> {
    if n == 0 || n % 4 != 0 {
        return Err(RamanujanError::NotMultipleOfFour(n));
    }
    if !odd_divisors(n, DivisorClassSelector::Odd3Mod4).expect("n > 0").is_empty() {
        return Err(RamanujanError::HasThreeModFourDivisor(n));
    }
    Ok(())
}

/// Closed form of `s_n(t)` for `4 | n` with every odd divisor of `n`
/// congruent to 1 mod 4:
///
/// `s_n(t) = 2δ μ_P(n₁) Σ_{e | δ, te/δ odd, gcd(n₁, e) = 1} (−1)^{(te/δ − 1)/2} μ_P(e)/e`
///
/// with `δ = gcd(n/4, t)`, `n₁ = n/(4δ)` and `μ_P` the power-of-two Möbius
/// function. The inner sum is accumulated as an exact rational.
pub fn s_closed(n: usize, t: usize) -> Result<i64> {
    check_closed_form_domain(n)?;
    let quarter = n / 4;
    let delta = quarter.gcd(&t);
    let n1 = quarter / delta;
    let mut inner = Ratio::<i64>::from_integer(0);
    for e in divisors(delta).expect("delta > 0") {
        let m = t / delta * e;
        if m % 2 == 0 || n1.gcd(&e) != 1 {
            continue;
        }
        let sign = if ((m - 1) / 2) % 2 == 0 { 1 } else { -1 };
        inner += Ratio::new(sign * moebius_pow2(e).expect("e > 0"), e as i64);
    }
    let total = inner * Ratio::from_integer(2 * delta as i64 * moebius_pow2(n1).expect("n1 > 0"));
    if !total.is_integer() {
        return Err(RamanujanError::NonIntegralClosedForm { n, t });
    }
    Ok(total.to_integer())
}

fn half_orbit_sign(class: HalfClass) -> i64 {
    // G_n^3(d) = n − G_n^1(d), so the class-3 half flips the sine sum.
    match class {
        HalfClass::One => -1,
        HalfClass::Three => 1,
    }
}

/// Spectrum of the oriented graph on `G_n^r(d)`: `d` copies of `∓s_{n/d}`.
pub fn oriented_spectrum_from_s(n: usize, d: usize, class: HalfClass) -> Result<Vec<i64>> {
    if n == 0 || d == 0 || n % 4 != 0 || (n / 4) % d != 0 {
        return Err(RamanujanError::NotQuarterDivisor { n, d });
    }
    let table = SumTable::sine(n / d)?;
    let sign = half_orbit_sign(class);
    Ok((0..n).map(|j| sign * table.get(j)).collect())
}

/// `γ_j = Σ_{d∈full} c_{n/d}(j) + Σ_{(d,r)∈half} ∓s_{n/d}(j)`.
pub fn mixed_spectrum_from_sums(dec: &Decomposition) -> Result<Vec<i64>> {
    dec.validate()?;
    let n = dec.n;
    let mut gamma = vec![0i64; n];
    for &d in &dec.full {
        let table = SumTable::cosine(n / d)?;
        for (j, g) in gamma.iter_mut().enumerate() {
            *g += table.get(j);
        }
    }
    for (&d, &class) in &dec.half {
        for (g, v) in gamma.iter_mut().zip(oriented_spectrum_from_s(n, d, class)?) {
            *g += v;
        }
    }
    Ok(gamma)
}
