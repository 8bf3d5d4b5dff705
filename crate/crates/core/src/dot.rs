//! Graphviz export of a mixed circulant graph.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::circulant::SymbolSet;

/// DOT digraph: one arc `a -> a+c` per vertex for every `c` in the skew part,
/// and one `dir=none` edge per unordered pair joined by the symmetric part.
pub fn export_dot(c: &SymbolSet) -> String {
    let n = c.n();
    let (symmetric, skew) = c.split();
    let mut out = String::new();
    let _ = writeln!(out, "digraph circ_{n} {{");
    for v in 0..n {
        let _ = writeln!(out, "  {v};");
    }
    for &k in skew.elements() {
        for a in 0..n {
            let _ = writeln!(out, "  {a} -> {};", (a + k) % n);
        }
    }
    let pairs: BTreeSet<(usize, usize)> = symmetric
        .elements()
        .iter()
        .flat_map(|&k| (0..n).map(move |a| {
            let b = (a + k) % n;
            (a.min(b), a.max(b))
        }))
        .collect();
    for (a, b) in pairs {
        let _ = writeln!(out, "  {a} -> {b} [dir=none];");
    }
    out.push_str("}\n");
    out
}
