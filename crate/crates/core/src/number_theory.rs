//! Divisor lattices, multiplicative functions and the residue-class families
//! `G_n(d)`, `G_n^r(d)`, `M_n(d)` and `M_n^r(d)`.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("argument must be positive, got 0")]
    Zero,
    #[error("{d} does not divide {n}")]
    NotADivisor { n: usize, d: usize },
    #[error("4*{d} does not divide {n}")]
    NotAQuarterDivisor { n: usize, d: usize },
    #[error("residue class {r} is not allowed here")]
    BadResidueClass { r: usize },
}

pub type Result<T> = std::result::Result<T, NumberTheoryError>;

/// Which odd divisors to keep: all of them (`D_n`), those `≡ 1 (mod 4)`
/// (`D_n^1`), or those `≡ 3 (mod 4)` (`D_n^3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorClassSelector {
    AllOdd,
    Odd1Mod4,
    Odd3Mod4,
}

impl DivisorClassSelector {
    fn accepts(self, d: usize) -> bool {
        match self {
            DivisorClassSelector::AllOdd => d % 2 == 1,
            DivisorClassSelector::Odd1Mod4 => d % 4 == 1,
            DivisorClassSelector::Odd3Mod4 => d % 4 == 3,
        }
    }
}

/// A sorted, duplicate-free set of residues modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: usize,
    elements: Vec<usize>,
}

impl ResidueSet {
    /// Builds a set from arbitrary residues; they are sorted and deduplicated.
    /// Panics if an element is not below the modulus.
    pub fn from_elements(modulus: usize, mut elements: Vec<usize>) -> Self {
        assert!(
            elements.iter().all(|&e| e < modulus),
            "residue out of range for modulus {modulus}"
        );
        elements.sort_unstable();
        elements.dedup();
        ResidueSet { modulus, elements }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Union of two sets over the same modulus.
    pub fn union(&self, other: &ResidueSet) -> ResidueSet {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let mut all = self.elements.clone();
        all.extend_from_slice(&other.elements);
        ResidueSet::from_elements(self.modulus, all)
    }

    pub fn is_disjoint(&self, other: &ResidueSet) -> bool {
        self.elements.iter().all(|&x| !other.contains(x))
    }
}

fn nonzero(n: usize) -> Result<usize> {
    if n == 0 {
        Err(NumberTheoryError::Zero)
    } else {
        Ok(n)
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Result<Vec<usize>> {
    let n = nonzero(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Number of positive divisors, `τ(n)`.
pub fn divisor_count(n: usize) -> Result<usize> {
    Ok(divisors(n)?.len())
}

pub fn odd_divisors(n: usize, sel: DivisorClassSelector) -> Result<Vec<usize>> {
    Ok(divisors(n)?.into_iter().filter(|&d| sel.accepts(d)).collect())
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(n: usize) -> Result<Vec<(usize, u32)>> {
    let mut m = nonzero(n)?;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

pub fn euler_phi(n: usize) -> Result<usize> {
    let mut phi = n;
    for (p, _) in factorize(n)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Classical Möbius function.
pub fn moebius(n: usize) -> Result<i64> {
    let mut mu = 1;
    for (_, e) in factorize(n)? {
        if e > 1 {
            return Ok(0);
        }
        mu = -mu;
    }
    Ok(mu)
}

/// Möbius function of the direct factor set of powers of two:
/// `μ_P(n) = Σ μ(n/d)` over divisors `d` of `n` that are powers of two.
pub fn moebius_pow2(n: usize) -> Result<i64> {
    let n = nonzero(n)?;
    let mut total = 0;
    let mut d = 1;
    while n % d == 0 {
        total += moebius(n / d)?;
        d *= 2;
    }
    Ok(total)
}

fn check_divisor(n: usize, d: usize) -> Result<()> {
    nonzero(n)?;
    if d == 0 || n % d != 0 {
        return Err(NumberTheoryError::NotADivisor { n, d });
    }
    Ok(())
}

fn check_quarter_divisor(n: usize, d: usize) -> Result<()> {
    check_divisor(n, d)?;
    if n % (4 * d) != 0 {
        return Err(NumberTheoryError::NotAQuarterDivisor { n, d });
    }
    Ok(())
}

/// `G_n(d) = {k : 1 ≤ k ≤ n-1, gcd(k, n) = d}`.
pub fn g_set(n: usize, d: usize) -> Result<ResidueSet> {
    check_divisor(n, d)?;
    let elements = (1..n).filter(|k| k.gcd(&n) == d).collect();
    Ok(ResidueSet { modulus: n, elements })
}

/// The half `G_n^r(d)` of `G_n(d)` whose quotient by `d` is `≡ r (mod 4)`.
/// Requires `4d | n` and `r ∈ {1, 3}`.
pub fn g_class_set(n: usize, d: usize, r: usize) -> Result<ResidueSet> {
    if r != 1 && r != 3 {
        return Err(NumberTheoryError::BadResidueClass { r });
    }
    check_quarter_divisor(n, d)?;
    let elements = (1..n / d)
        .filter(|k| k % 4 == r)
        .map(|k| k * d)
        .filter(|x| x.gcd(&n) == d)
        .collect();
    Ok(ResidueSet { modulus: n, elements })
}

/// `M_n(d) = {d, 2d, ..., n-d}`.
pub fn m_set(n: usize, d: usize) -> Result<ResidueSet> {
    check_divisor(n, d)?;
    let elements = (1..n / d).map(|k| k * d).collect();
    Ok(ResidueSet { modulus: n, elements })
}

/// `M_n^r(d) = {dk : 0 ≤ dk < n, k ≡ r (mod 4)}`; contains 0 when `r = 0`.
pub fn m_class_set(n: usize, d: usize, r: usize) -> Result<ResidueSet> {
    if r > 3 {
        return Err(NumberTheoryError::BadResidueClass { r });
    }
    check_quarter_divisor(n, d)?;
    let elements = (0..n / d).filter(|k| k % 4 == r).map(|k| k * d).collect();
    Ok(ResidueSet { modulus: n, elements })
}
