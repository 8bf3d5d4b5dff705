//! Exact integrality analysis for mixed circulant graphs.
//!
//! A mixed circulant graph `Circ(Z_n, C)` has vertex set `Z_n` and an arc
//! `a → b` whenever `b − a ∈ C`. Its Hermitian adjacency matrix is circulant,
//! so the spectrum is given by sums of roots of unity. This crate decides
//! integrality of every eigenvalue exactly (by reduction modulo the minimal
//! polynomial of `exp(2πi/n)` over the Gaussian rationals), characterizes and
//! enumerates the integral symbol sets, and expresses the integer eigenvalues
//! through Ramanujan sums and their sine analogue.

pub mod characterization;
pub mod circulant;
pub mod dot;
pub mod gaussian;
pub mod number_theory;
pub mod ramanujan;
pub mod report;
pub mod suites;

pub use characterization::{
    brute_force_integral, compose, count_bound, decompose, enumerate_integral, Decomposition,
};
pub use circulant::{
    eigenvalue_exact, hermitian_matrix, is_integral, spectrum_exact, spectrum_numeric,
    verify_eigenpairs, EigenStatus, ExactEigenvalue, SymbolSet,
};
pub use gaussian::{cyclotomic, cyclotomic_factor, GaussianInt, GaussianPoly, HalfClass};
pub use report::{parse_symbol_set, SpectrumReport};
pub use suites::{PropertySuite, SuiteRegistry, SuiteReport};
