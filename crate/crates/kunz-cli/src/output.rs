//! Output documents: the stable JSON schema for decompositions and the
//! plain-text rendering.

use kunz::{verify, Decomposition, KunzCoordinates};
use serde::{Deserialize, Serialize};

/// JSON document for one part. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartDoc {
    pub kunz: Vec<i64>,
    pub generators: Vec<i64>,
    pub frobenius: i64,
}

/// JSON document for a decomposition. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub m: i64,
    pub kunz: Vec<i64>,
    pub generators: Vec<i64>,
    pub parts: Vec<PartDoc>,
    pub method: String,
    pub minimal: bool,
    pub verified: bool,
}

fn part_doc(p: &KunzCoordinates) -> PartDoc {
    PartDoc {
        kunz: p.coords().to_vec(),
        generators: p.to_semigroup().generators().to_vec(),
        frobenius: p.frobenius(),
    }
}

impl DecompositionDoc {
    pub fn from_decomposition(d: &Decomposition, verified: bool) -> Self {
        DecompositionDoc {
            m: d.input.multiplicity(),
            kunz: d.input.coords().to_vec(),
            generators: d.input.to_semigroup().generators().to_vec(),
            parts: d.parts.iter().map(part_doc).collect(),
            method: d.method.to_string(),
            minimal: d.minimal,
            verified,
        }
    }
}

fn join(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Human-readable report for `info`.
pub fn render_info(x: &KunzCoordinates) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let s = x.to_semigroup();
    let sg = x.special_gaps_above_m();
    let _ = writeln!(out, "multiplicity:      {}", x.multiplicity());
    let _ = writeln!(out, "kunz:              ({})", join(x.coords()));
    let _ = writeln!(out, "minimal generators: <{}>", join(s.generators()));
    let _ = writeln!(out, "genus:             {}", x.genus());
    let _ = writeln!(out, "frobenius:         {}", x.frobenius());
    let _ = writeln!(out, "gaps:              {}", x.gaps().len());
    let _ = writeln!(out, "special gaps > m:  {{{}}}", join(&sg));
    let _ = write!(out, "m-irreducible:     {}", if x.is_m_irreducible() { "yes" } else { "no" });
    out
}

/// Human-readable report for `decompose`, including the verification
/// verdict.
pub fn render_decomposition(d: &Decomposition, elapsed_ms: f64) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} decomposition of <{}> into {} part(s){}:",
        d.method,
        join(d.input.to_semigroup().generators()),
        d.parts.len(),
        if d.minimal { " (minimal)" } else { "" }
    );
    for (p, cert) in d.parts.iter().zip(&d.certificates) {
        let _ = writeln!(
            out,
            "  <{}>  kunz ({})  F = {}  covers {{{}}}",
            join(p.to_semigroup().generators()),
            join(p.coords()),
            cert.frobenius,
            join(&cert.covered_special_gaps),
        );
    }
    let report = verify(d);
    let _ = writeln!(out, "{report}");
    let _ = write!(out, "time: {elapsed_ms:.3} ms");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kunz::{decompose_exact, KunzCoordinates, SolveLimits};

    #[test]
    fn json_document_round_trips() {
        let x = KunzCoordinates::new(5, vec![2, 2, 3, 4]).unwrap();
        let d = decompose_exact(&x, &SolveLimits::default()).unwrap();
        let doc = DecompositionDoc::from_decomposition(&d, true);
        let text = serde_json::to_string(&doc).unwrap();
        let back: DecompositionDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        // Field order is fixed by declaration order.
        let m_pos = text.find("\"m\"").unwrap();
        let kunz_pos = text.find("\"kunz\"").unwrap();
        let verified_pos = text.find("\"verified\"").unwrap();
        assert!(m_pos < kunz_pos && kunz_pos < verified_pos);
    }
}
