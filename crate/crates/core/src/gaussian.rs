//! Gaussian integers, dense polynomials over them, and the cyclotomic
//! polynomials `Φ_n` together with their two monic factors over `Q(i)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::number_theory::{divisors, odd_divisors, DivisorClassSelector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("n = {0} is not a multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("n must be positive")]
    ZeroOrder,
    #[error("inexact division while building the factor of order {n}, class {class}")]
    InexactDivision { n: usize, class: HalfClass },
}

/// Which half of a totative orbit: quotients `≡ 1` or `≡ 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HalfClass {
    #[serde(rename = "CLASS1")]
    One,
    #[serde(rename = "CLASS3")]
    Three,
}

impl HalfClass {
    pub fn residue(self) -> usize {
        match self {
            HalfClass::One => 1,
            HalfClass::Three => 3,
        }
    }

    pub fn from_residue(r: usize) -> Option<HalfClass> {
        match r {
            1 => Some(HalfClass::One),
            3 => Some(HalfClass::Three),
            _ => None,
        }
    }

    pub fn opposite(self) -> HalfClass {
        match self {
            HalfClass::One => HalfClass::Three,
            HalfClass::Three => HalfClass::One,
        }
    }
}

impl fmt::Display for HalfClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue())
    }
}

/// An arbitrary-precision Gaussian integer `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::new(v, 0)
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        GaussianInt::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        GaussianInt::new(1, 0)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, rhs: &GaussianInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianInt {
    /// `a+bi` with explicit sign on the imaginary part, e.g. `-1+0i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Dense polynomial over the Gaussian integers, lowest degree first, with no
/// trailing zero coefficients. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianPoly {
    coeffs: Vec<GaussianInt>,
}

impl GaussianPoly {
    pub fn new(mut coeffs: Vec<GaussianInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GaussianPoly { coeffs }
    }

    /// Convenience constructor from `(re, im)` pairs, lowest degree first.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        GaussianPoly::new(pairs.iter().map(|&(a, b)| GaussianInt::new(a, b)).collect())
    }

    pub fn zero() -> Self {
        GaussianPoly::default()
    }

    pub fn one() -> Self {
        GaussianPoly::constant(GaussianInt::one())
    }

    pub fn constant(c: GaussianInt) -> Self {
        GaussianPoly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: GaussianInt, k: usize) -> Self {
        let mut coeffs = vec![GaussianInt::zero(); k + 1];
        coeffs[k] = c;
        GaussianPoly::new(coeffs)
    }

    /// `x^k + c`.
    pub fn binomial(k: usize, c: GaussianInt) -> Self {
        GaussianPoly::monomial(GaussianInt::one(), k) + GaussianPoly::constant(c)
    }

    pub fn coeffs(&self) -> &[GaussianInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// The constant term if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<GaussianInt> {
        match self.coeffs.len() {
            0 => Some(GaussianInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Every coefficient conjugated.
    pub fn conj(&self) -> Self {
        GaussianPoly { coeffs: self.coeffs.iter().map(GaussianInt::conj).collect() }
    }

    pub fn scale(&self, c: &GaussianInt) -> Self {
        GaussianPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Adds `c·x^k` in place.
    pub fn add_term(&mut self, c: &GaussianInt, k: usize) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, GaussianInt::zero());
        }
        self.coeffs[k] += c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Long division by a monic divisor. Returns `(quotient, remainder)` with
    /// `self = den·quotient + remainder` and `deg(remainder) < deg(den)`.
    pub fn divmod(&self, den: &GaussianPoly) -> Result<(GaussianPoly, GaussianPoly), AlgebraError> {
        let dd = den.degree().ok_or(AlgebraError::ZeroDivisor)?;
        if !den.is_monic() {
            return Err(AlgebraError::NonMonicDivisor);
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((GaussianPoly::zero(), self.clone()));
        }
        // Cyclotomic moduli are sparse; only their non-zero terms matter.
        let tail: Vec<(usize, &GaussianInt)> =
            den.coeffs[..dd].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut quot = vec![GaussianInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[k]);
            if lead.is_zero() {
                continue;
            }
            let shift = k - dd;
            for &(idx, c) in &tail {
                rem[shift + idx] -= &(&lead * c);
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        Ok((GaussianPoly::new(quot), GaussianPoly::new(rem)))
    }

    /// Remainder modulo a monic polynomial of positive degree.
    pub fn reduce_mod(&self, modulus: &GaussianPoly) -> Result<GaussianPoly, AlgebraError> {
        if modulus.degree() == Some(0) {
            return Err(AlgebraError::ConstantModulus);
        }
        Ok(self.divmod(modulus)?.1)
    }

    /// Horner evaluation in floating point.
    pub fn eval_numeric(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex())
    }

    /// Coefficients low to high as comma-separated `a+bi`.
    pub fn coefficient_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0+0i".to_string();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl Add for GaussianPoly {
    type Output = GaussianPoly;
    fn add(self, rhs: GaussianPoly) -> GaussianPoly {
        &self + &rhs
    }
}

impl<'a> Add<&'a GaussianPoly> for &'a GaussianPoly {
    type Output = GaussianPoly;
    fn add(self, rhs: &GaussianPoly) -> GaussianPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        GaussianPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for GaussianPoly {
    type Output = GaussianPoly;
    fn sub(self, rhs: GaussianPoly) -> GaussianPoly {
        &self - &rhs
    }
}

impl<'a> Sub<&'a GaussianPoly> for &'a GaussianPoly {
    type Output = GaussianPoly;
    fn sub(self, rhs: &GaussianPoly) -> GaussianPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        GaussianPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for GaussianPoly {
    type Output = GaussianPoly;
    fn mul(self, rhs: GaussianPoly) -> GaussianPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianPoly> for &'a GaussianPoly {
    type Output = GaussianPoly;
    fn mul(self, rhs: &GaussianPoly) -> GaussianPoly {
        if self.is_zero() || rhs.is_zero() {
            return GaussianPoly::zero();
        }
        let mut out = vec![GaussianInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[a + b] += &(ca * cb);
            }
        }
        GaussianPoly::new(out)
    }
}

impl Neg for GaussianPoly {
    type Output = GaussianPoly;
    fn neg(self) -> GaussianPoly {
        GaussianPoly { coeffs: self.coeffs.into_iter().map(Neg::neg).collect() }
    }
}

fn fmt_coefficient(c: &GaussianInt) -> (bool, String) {
    // Returns (negative, magnitude text without the unit "1" suppression).
    let zero = BigInt::zero();
    if c.im == zero {
        (c.re.is_negative(), c.re.abs().to_string())
    } else if c.re == zero {
        let mag = c.im.abs();
        let text = if mag.is_one() { "i".to_string() } else { format!("{mag}i") };
        (c.im.is_negative(), text)
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for GaussianPoly {
    /// Pretty form, highest degree first, e.g. `x^2 - i*x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = fmt_coefficient(c);
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let term = if k == 0 {
                mag
            } else if mag == "1" {
                var
            } else {
                format!("{mag}*{var}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Memo table for `Φ_n` and `Φ_n^r`. Inserts are idempotent, so a single
/// table can be shared between threads.
#[derive(Debug, Default)]
pub struct CyclotomicCache {
    full: RwLock<HashMap<usize, Arc<GaussianPoly>>>,
    halves: RwLock<HashMap<(usize, HalfClass), Arc<GaussianPoly>>>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        CyclotomicCache::default()
    }

    /// Process-wide table used by the free functions in this crate.
    pub fn global() -> &'static CyclotomicCache {
        static GLOBAL: OnceLock<CyclotomicCache> = OnceLock::new();
        GLOBAL.get_or_init(CyclotomicCache::new)
    }

    /// `Φ_n`, by exact division of `x^n - 1` by the lower-order factors.
    pub fn cyclotomic(&self, n: usize) -> Result<Arc<GaussianPoly>, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::ZeroOrder);
        }
        if let Some(p) = self.full.read().expect("poisoned").get(&n) {
            return Ok(p.clone());
        }
        let mut den = GaussianPoly::one();
        for d in divisors(n).expect("n > 0") {
            if d < n {
                den = &den * &*self.cyclotomic(d)?;
            }
        }
        let (q, r) = GaussianPoly::binomial(n, GaussianInt::from(-1)).divmod(&den)?;
        debug_assert!(r.is_zero());
        let q = Arc::new(q);
        Ok(self.full.write().expect("poisoned").entry(n).or_insert(q).clone())
    }

    /// `Φ_n^r`, the monic factor of `Φ_n` whose roots are `w_n^a` for
    /// `a ∈ G_n^r(1)`. Built from `x^{n/4} ∓ i` divided by the factors of
    /// strictly smaller order.
    pub fn factor(&self, n: usize, class: HalfClass) -> Result<Arc<GaussianPoly>, AlgebraError> {
        if n == 0 || n % 4 != 0 {
            return Err(AlgebraError::NotMultipleOfFour(n));
        }
        if let Some(p) = self.halves.read().expect("poisoned").get(&(n, class)) {
            return Ok(p.clone());
        }
        // Roots of x^{n/4} - i are w_n^a with a ≡ 1 (mod 4); those of
        // x^{n/4} + i have a ≡ 3 (mod 4).
        let (target, same, flipped) = match class {
            HalfClass::One => (GaussianInt::new(0, -1), HalfClass::One, HalfClass::Three),
            HalfClass::Three => (GaussianInt::new(0, 1), HalfClass::Three, HalfClass::One),
        };
        let mut den = GaussianPoly::one();
        for d in odd_divisors(n, DivisorClassSelector::Odd1Mod4).expect("n > 0") {
            if d > 1 {
                den = &den * &*self.factor(n / d, same)?;
            }
        }
        for d in odd_divisors(n, DivisorClassSelector::Odd3Mod4).expect("n > 0") {
            den = &den * &*self.factor(n / d, flipped)?;
        }
        let (q, r) = GaussianPoly::binomial(n / 4, target).divmod(&den)?;
        if !r.is_zero() {
            return Err(AlgebraError::InexactDivision { n, class });
        }
        let q = Arc::new(q);
        Ok(self.halves.write().expect("poisoned").entry((n, class)).or_insert(q).clone())
    }
}

/// `Φ_n` from the shared cache.
pub fn cyclotomic(n: usize) -> Result<Arc<GaussianPoly>, AlgebraError> {
    CyclotomicCache::global().cyclotomic(n)
}

/// `Φ_n^r` from the shared cache.
pub fn cyclotomic_factor(n: usize, class: HalfClass) -> Result<Arc<GaussianPoly>, AlgebraError> {
    CyclotomicCache::global().factor(n, class)
}

/// Minimal polynomial of `w_n = exp(2πi/n)` over `Q(i)`: `Φ_n^1` when `4 | n`,
/// otherwise `Φ_n`.
pub fn minimal_polynomial(n: usize) -> Result<Arc<GaussianPoly>, AlgebraError> {
    if n % 4 == 0 && n > 0 {
        cyclotomic_factor(n, HalfClass::One)
    } else {
        cyclotomic(n)
    }
}

/// `exp(2πi·k/n)` in floating point.
pub fn root_of_unity(n: usize, k: usize) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * ((k % n) as f64) / (n as f64);
    Complex64::from_polar(1.0, theta)
}
