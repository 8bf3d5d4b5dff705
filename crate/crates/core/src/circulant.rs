//! Mixed circulant graphs: symbol sets, Hermitian adjacency matrices, the
//! numeric spectrum and the exact integrality decision per eigenvalue.

use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussian::{minimal_polynomial, root_of_unity, GaussianInt, GaussianPoly};

/// Largest imaginary residue tolerated when reading off a real eigenvalue.
pub const REALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CirculantError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("element out of range: {element} is not in 1..{n}")]
    ElementOutOfRange { n: usize, element: usize },
    #[error("duplicate element {0}")]
    DuplicateElement(usize),
    #[error("eigenvalue {j} has imaginary residue {residue:e}")]
    ImaginaryResidue { j: usize, residue: f64 },
    #[error("eigenvalue index {j} out of range for n = {n}")]
    IndexOutOfRange { n: usize, j: usize },
}

/// Connection set `C ⊆ {1, …, n-1}` of `Circ(Z_n, C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolSet {
    n: usize,
    elements: Vec<usize>,
}

impl SymbolSet {
    /// Validates and builds a symbol set; elements may be given in any order.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self, CirculantError> {
        if n < 2 {
            return Err(CirculantError::ModulusTooSmall(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for e in elements {
            if e == 0 || e >= n {
                return Err(CirculantError::ElementOutOfRange { n, element: e });
            }
            if seen[e] {
                return Err(CirculantError::DuplicateElement(e));
            }
            seen[e] = true;
            out.push(e);
        }
        out.sort_unstable();
        Ok(SymbolSet { n, elements: out })
    }

    pub fn empty(n: usize) -> Result<Self, CirculantError> {
        SymbolSet::new(n, [])
    }

    /// Subset of `{1, …, n-1}` selected by the bits of `mask` (bit `k-1` ↔ `k`).
    pub fn from_mask(n: usize, mask: u64) -> Result<Self, CirculantError> {
        SymbolSet::new(n, (1..n).filter(|k| (mask >> (k - 1)) & 1 == 1))
    }

    pub fn n(&self) -> usize {
        self.n
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

    pub fn contains(&self, k: usize) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    fn negation(&self, k: usize) -> usize {
        (self.n - k) % self.n
    }

    /// Elements whose negation is also present (`C \ C̄`).
    pub fn symmetric_part(&self) -> SymbolSet {
        self.filtered(|k| self.contains(self.negation(k)))
    }

    /// Elements whose negation is absent (`C̄`).
    pub fn skew_part(&self) -> SymbolSet {
        self.filtered(|k| !self.contains(self.negation(k)))
    }

    /// `(symmetric part, skew part)`.
    pub fn split(&self) -> (SymbolSet, SymbolSet) {
        (self.symmetric_part(), self.skew_part())
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|&k| self.contains(self.negation(k)))
    }

    pub fn is_skew(&self) -> bool {
        self.elements.iter().all(|&k| !self.contains(self.negation(k)))
    }

    fn filtered(&self, keep: impl Fn(usize) -> bool) -> SymbolSet {
        SymbolSet {
            n: self.n,
            elements: self.elements.iter().copied().filter(|&k| keep(k)).collect(),
        }
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.elements.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{body}}}")
    }
}

/// Hermitian adjacency matrix of a mixed circulant graph, stored as its first
/// row `c_0, …, c_{n-1}`; entry `(u, v)` is `c_{(v-u) mod n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianCirculant {
    first_row: Vec<GaussianInt>,
}

impl HermitianCirculant {
    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[GaussianInt] {
        &self.first_row
    }

    pub fn entry(&self, u: usize, v: usize) -> &GaussianInt {
        let n = self.n();
        &self.first_row[(v + n - u % n) % n]
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| (0..n).all(|v| *self.entry(u, v) == self.entry(v, u).conj()))
    }
}

pub fn hermitian_matrix(c: &SymbolSet) -> HermitianCirculant {
    let n = c.n();
    let mut first_row = vec![GaussianInt::zero(); n];
    for &k in c.elements() {
        if c.contains(n - k) {
            first_row[k] = GaussianInt::from(1);
        } else {
            first_row[k] = GaussianInt::new(0, 1);
            first_row[n - k] = GaussianInt::new(0, -1);
        }
    }
    HermitianCirculant { first_row }
}

/// `γ_j = Σ_l c_l w_n^{jl}` as a complex number, before the reality check.
fn eigenvalue_complex(row: &[Complex64], j: usize) -> Complex64 {
    let n = row.len();
    row.iter()
        .enumerate()
        .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
        .map(|(l, c)| c * root_of_unity(n, j * l % n))
        .sum()
}

/// Floating-point spectrum `γ_0, …, γ_{n-1}` from the circulant formula.
pub fn spectrum_numeric(c: &SymbolSet) -> Result<Vec<f64>, CirculantError> {
    let h = hermitian_matrix(c);
    let row: Vec<Complex64> = h.first_row().iter().map(GaussianInt::to_complex).collect();
    (0..c.n())
        .map(|j| {
            let z = eigenvalue_complex(&row, j);
            if z.im.abs() >= REALITY_TOLERANCE {
                Err(CirculantError::ImaginaryResidue { j, residue: z.im.abs() })
            } else {
                Ok(z.re)
            }
        })
        .collect()
}

/// Outcome of reducing an eigenvalue polynomial modulo the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenStatus {
    Integer(i64),
    /// The non-constant or non-real remainder that witnesses irrationality.
    NonInteger(GaussianPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactEigenvalue {
    pub index: usize,
    pub status: EigenStatus,
}

impl ExactEigenvalue {
    pub fn value(&self) -> Option<i64> {
        match self.status {
            EigenStatus::Integer(v) => Some(v),
            EigenStatus::NonInteger(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.value().is_some()
    }
}

/// `P_j(x)` with `P_j(w_n) = γ_j`, exponents reduced mod `n`.
pub fn eigenvalue_polynomial(c: &SymbolSet, j: usize) -> GaussianPoly {
    let n = c.n();
    let mut coeffs = vec![GaussianInt::zero(); n];
    let one = GaussianInt::from(1);
    let i = GaussianInt::i();
    for &k in c.elements() {
        let e = j * k % n;
        if c.contains(n - k) {
            coeffs[e] += &one;
        } else {
            coeffs[e] += &i;
            coeffs[(n - e) % n] -= &i;
        }
    }
    GaussianPoly::new(coeffs)
}

/// Classifies a remainder: a real constant is an integer eigenvalue.
pub(crate) fn classify_remainder(rem: GaussianPoly) -> Result<i64, GaussianPoly> {
    match rem.as_constant() {
        Some(c) if c.is_real() => c.re.to_i64().ok_or(rem),
        _ => Err(rem),
    }
}

/// Exact status of `γ_j`, decided by reduction modulo the minimal polynomial
/// of `w_n` over `Q(i)`.
pub fn eigenvalue_exact(c: &SymbolSet, j: usize) -> Result<ExactEigenvalue, CirculantError> {
    if j >= c.n() {
        return Err(CirculantError::IndexOutOfRange { n: c.n(), j });
    }
    let modulus = minimal_polynomial(c.n()).expect("minimal polynomial of a valid order");
    let rem = eigenvalue_polynomial(c, j)
        .reduce_mod(&modulus)
        .expect("minimal polynomial is monic of positive degree");
    let status = match classify_remainder(rem) {
        Ok(v) => EigenStatus::Integer(v),
        Err(w) => EigenStatus::NonInteger(w),
    };
    Ok(ExactEigenvalue { index: j, status })
}

/// Exact status of every eigenvalue, in index order.
pub fn spectrum_exact(c: &SymbolSet) -> Vec<ExactEigenvalue> {
    (0..c.n()).map(|j| eigenvalue_exact(c, j).expect("index in range")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// Least index whose eigenvalue is not an integer.
    pub witness: Option<usize>,
}

pub fn is_integral(c: &SymbolSet) -> IntegralityVerdict {
    let witness = (0..c.n()).find(|&j| !eigenvalue_exact(c, j).expect("index in range").is_integer());
    IntegralityVerdict { integral: witness.is_none(), witness }
}

/// Checks `‖H·F_j − γ_j·F_j‖_∞ < tol` for every Fourier column `F_j`.
pub fn verify_eigenpairs(c: &SymbolSet, tol: f64) -> bool {
    let n = c.n();
    let Ok(gammas) = spectrum_numeric(c) else {
        return false;
    };
    let h = hermitian_matrix(c);
    let scale = 1.0 / (n as f64).sqrt();
    let nonzero: Vec<(usize, Complex64)> = h
        .first_row()
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(l, g)| (l, g.to_complex()))
        .collect();
    (0..n).all(|j| {
        let f = |u: usize| root_of_unity(n, j * u % n) * scale;
        (0..n).all(|u| {
            let hf: Complex64 = nonzero.iter().map(|&(l, c)| c * f((u + l) % n)).sum();
            (hf - f(u) * gammas[j]).norm() < tol
        })
    })
}
