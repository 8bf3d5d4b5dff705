//! Symbol-set parsing and the versioned JSON spectrum report.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characterization::{decompose, Decomposition};
use crate::circulant::{spectrum_exact, spectrum_numeric, CirculantError, SymbolSet};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid integer: {0:?}")]
    InvalidInteger(String),
    #[error("modulus too small: n must be at least 2, got {0}")]
    ModulusTooSmall(i64),
    #[error("element out of range: {element} is not in 1..{n}")]
    ElementOutOfRange { n: usize, element: i64 },
    #[error("duplicate element: {0}")]
    DuplicateElement(usize),
}

fn parse_int(text: &str) -> Result<i64, ParseError> {
    text.trim().parse().map_err(|_| ParseError::InvalidInteger(text.trim().to_string()))
}

/// Parses the `--n` and `--set` values; `set` is a comma-separated list and
/// may be empty.
pub fn parse_symbol_set(n: &str, set: &str) -> Result<SymbolSet, ParseError> {
    let n = parse_int(n)?;
    if n < 2 {
        return Err(ParseError::ModulusTooSmall(n));
    }
    let n = n as usize;
    let mut seen = vec![false; n];
    let mut elements = Vec::new();
    for item in set.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let e = parse_int(item)?;
        if e <= 0 || e >= n as i64 {
            return Err(ParseError::ElementOutOfRange { n, element: e });
        }
        let e = e as usize;
        if seen[e] {
            return Err(ParseError::DuplicateElement(e));
        }
        seen[e] = true;
        elements.push(e);
    }
    Ok(SymbolSet::new(n, elements).expect("validated above"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    pub j: usize,
    pub gamma_numeric: f64,
    pub exact: Option<i64>,
    pub integral: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema: u32,
    pub n: usize,
    pub symbol_set: Vec<usize>,
    pub eigenvalues: Vec<EigenRecord>,
    pub integral: bool,
    pub decomposition: Option<DecompositionRecord>,
}

/// JSON shape of a [`Decomposition`]: `d1` full orbits, `d2` tagged halves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub d1: Vec<usize>,
    pub d2: Vec<(usize, String)>,
}

impl From<&Decomposition> for DecompositionRecord {
    fn from(dec: &Decomposition) -> Self {
        DecompositionRecord {
            d1: dec.full.iter().copied().collect(),
            d2: dec
                .half
                .iter()
                .map(|(&d, &c)| (d, format!("CLASS{}", c.residue())))
                .collect(),
        }
    }
}

impl SpectrumReport {
    pub fn build(c: &SymbolSet) -> Result<Self, CirculantError> {
        let numeric = spectrum_numeric(c)?;
        let eigenvalues: Vec<EigenRecord> = spectrum_exact(c)
            .into_iter()
            .zip(numeric)
            .map(|(e, gamma)| EigenRecord {
                j: e.index,
                gamma_numeric: gamma,
                exact: e.value(),
                integral: e.is_integer(),
            })
            .collect();
        let integral = eigenvalues.iter().all(|r| r.integral);
        Ok(SpectrumReport {
            schema: REPORT_SCHEMA,
            n: c.n(),
            symbol_set: c.elements().to_vec(),
            eigenvalues,
            integral,
            decomposition: decompose(c).as_ref().map(DecompositionRecord::from),
        })
    }

    pub fn symbol_set(&self) -> Result<SymbolSet, CirculantError> {
        SymbolSet::new(self.n, self.symbol_set.iter().copied())
    }

    /// Plain-text table, one eigenvalue per line.
    pub fn to_table(&self) -> String {
        let mut out = format!("n = {}, C = {{", self.n);
        out.push_str(&self.symbol_set.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        out.push_str("}\n");
        out.push_str(&format!("{:>4}  {:>14}  {:>8}  integral\n", "j", "gamma", "exact"));
        for r in &self.eigenvalues {
            let exact = r.exact.map_or_else(|| "-".to_string(), |v| v.to_string());
            out.push_str(&format!("{:>4}  {:>14.9}  {:>8}  {}\n", r.j, r.gamma_numeric, exact, r.integral));
        }
        out.push_str(&format!("integral: {}\n", self.integral));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let c = parse_symbol_set("12", "1,5,6").unwrap();
        assert_eq!((c.n(), c.elements()), (12, &[1, 5, 6][..]));
        assert!(parse_symbol_set("4", "").unwrap().is_empty());
        assert!(parse_symbol_set("4", " 3 , 1 ").is_ok());
    }

    #[test]
    fn parse_errors_are_distinct() {
        let e = parse_symbol_set("4", "4").unwrap_err();
        assert_eq!(e, ParseError::ElementOutOfRange { n: 4, element: 4 });
        assert!(e.to_string().starts_with("element out of range"));
        assert!(matches!(parse_symbol_set("4", "0"), Err(ParseError::ElementOutOfRange { .. })));
        assert!(matches!(parse_symbol_set("4", "-1"), Err(ParseError::ElementOutOfRange { .. })));
        assert_eq!(parse_symbol_set("4", "1,1"), Err(ParseError::DuplicateElement(1)));
        assert_eq!(parse_symbol_set("1", ""), Err(ParseError::ModulusTooSmall(1)));
        assert!(matches!(parse_symbol_set("x", ""), Err(ParseError::InvalidInteger(_))));
    }

    #[test]
    fn report_flags_agree() {
        let r = SpectrumReport::build(&parse_symbol_set("12", "1,5,6").unwrap()).unwrap();
        assert!(r.integral);
        assert_eq!(r.schema, 1);
        let exact: Vec<i64> = r.eigenvalues.iter().map(|e| e.exact.unwrap()).collect();
        assert_eq!(exact, vec![1, -3, 1, -5, 1, -3, 1, 1, 1, 3, 1, 1]);
        let dec = r.decomposition.unwrap();
        assert_eq!(dec.d1, vec![6]);
        assert_eq!(dec.d2, vec![(1, "CLASS1".to_string())]);

        let r = SpectrumReport::build(&parse_symbol_set("8", "1,3").unwrap()).unwrap();
        assert!(!r.integral);
        assert!(r.decomposition.is_none());
        assert_eq!(r.integral, r.eigenvalues.iter().all(|e| e.integral));
    }
}
