//! JSON documents for matrices, matrix lists, DO polynomials and similarity
//! class lists.
//!
//! ```text
//! matrix       {"p":3,"n":2,"rows":[[1,0],[0,2]]}
//! matrix list  {"p":3,"n":1,"matrices":[[[1]]]}
//! DO poly      {"p":3,"n":3,"modulus":[1,2,0,1],"terms":[{"i":0,"j":1,"u":[1,0,0]}]}
//! ```
//!
//! Parsing is strict: unknown fields, out-of-range residues, ragged rows and
//! repeated terms are rejected. Polynomials inside class lists use the text
//! form `p:3 coeffs:1,0,1`, constant term first.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dopoly::DOPoly;
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtFieldCtx, MAX_EXTENSION_DEGREE};
use crate::fp::PrimeModulus;
use crate::matrix::FpMatrix;
use crate::poly::FpPoly;
use crate::quot::RcfMultiset;
use crate::rcf::RcfForm;

/// Largest matrix dimension accepted by the parsers.
pub const MAX_MATRIX_DIMENSION: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub p: u64,
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixListDoc {
    pub p: u64,
    pub n: usize,
    pub matrices: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub i: usize,
    pub j: usize,
    pub u: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DOPolyDoc {
    pub p: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    pub terms: Vec<TermDoc>,
}

/// One similarity class: invariant factors in text form and a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcfClassDoc {
    pub factors: Vec<String>,
    pub multiplicity: usize,
}

fn parse_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn check_dimension(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::Parse(format!("dimension {n} outside 1..={max}")));
    }
    Ok(())
}

fn residues(p: PrimeModulus, values: &[u64], what: &str) -> Result<Vec<u32>> {
    values
        .iter()
        .map(|&v| {
            if v < u64::from(p.value()) {
                Ok(v as u32)
            } else {
                Err(Error::Parse(format!("{what} entry {v} is not a residue mod {p}")))
            }
        })
        .collect()
}

fn matrix_from_rows(p: PrimeModulus, n: usize, rows: &[Vec<u64>]) -> Result<FpMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("matrix is not {n} x {n}")));
    }
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        data.extend(residues(p, row, "matrix")?);
    }
    FpMatrix::from_data(p, n, data)
}

fn modulus_of(p: u64) -> Result<PrimeModulus> {
    PrimeModulus::new(p).map_err(|e| Error::Parse(e.to_string()))
}

impl MatrixDoc {
    pub fn from_matrix(m: &FpMatrix) -> Self {
        Self {
            p: u64::from(m.modulus().value()),
            n: m.n(),
            rows: rows_u64(m),
        }
    }

    pub fn to_matrix(&self) -> Result<FpMatrix> {
        check_dimension(self.n, MAX_MATRIX_DIMENSION)?;
        matrix_from_rows(modulus_of(self.p)?, self.n, &self.rows)
    }
}

impl MatrixListDoc {
    pub fn from_matrices(p: PrimeModulus, n: usize, ms: &[FpMatrix]) -> Self {
        Self {
            p: u64::from(p.value()),
            n,
            matrices: ms.iter().map(rows_u64).collect(),
        }
    }

    pub fn to_matrices(&self) -> Result<Vec<FpMatrix>> {
        check_dimension(self.n, MAX_MATRIX_DIMENSION)?;
        let p = modulus_of(self.p)?;
        self.matrices
            .iter()
            .map(|rows| matrix_from_rows(p, self.n, rows))
            .collect()
    }
}

impl DOPolyDoc {
    pub fn from_dopoly(g: &DOPoly) -> Self {
        let ctx = g.ctx();
        Self {
            p: u64::from(ctx.p().value()),
            n: ctx.n(),
            modulus: Some(ctx.modulus().coeffs().iter().map(|&c| u64::from(c)).collect()),
            terms: g
                .terms()
                .iter()
                .map(|(&(i, j), u)| TermDoc {
                    i,
                    j,
                    u: u.coords().iter().map(|&c| u64::from(c)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_dopoly(&self) -> Result<DOPoly> {
        check_dimension(self.n, MAX_EXTENSION_DEGREE)?;
        let p = modulus_of(self.p)?;
        let ctx = match &self.modulus {
            Some(coeffs) => {
                if coeffs.len() != self.n + 1 {
                    return Err(Error::Parse(format!(
                        "modulus needs {} coefficients",
                        self.n + 1
                    )));
                }
                let f = FpPoly::from_residues(p, residues(p, coeffs, "modulus")?);
                ExtFieldCtx::new(f).map_err(|e| Error::Parse(e.to_string()))?
            }
            None => ExtFieldCtx::with_degree(p, self.n)?,
        };
        let ctx = Arc::new(ctx);
        let mut g = DOPoly::zero(&ctx);
        let mut seen = BTreeSet::new();
        for t in &self.terms {
            if t.i >= self.n || t.j >= self.n {
                return Err(Error::Parse(format!(
                    "term index ({}, {}) out of range",
                    t.i, t.j
                )));
            }
            if !seen.insert((t.i.min(t.j), t.i.max(t.j))) {
                return Err(Error::Parse(format!("repeated term ({}, {})", t.i, t.j)));
            }
            if t.u.len() != self.n {
                return Err(Error::Parse(format!(
                    "coefficient needs {} coordinates",
                    self.n
                )));
            }
            let u = ctx.elem(residues(p, &t.u, "coefficient")?)?;
            g.add_term(t.i, t.j, &u);
        }
        Ok(g)
    }
}

fn rows_u64(m: &FpMatrix) -> Vec<Vec<u64>> {
    m.rows()
        .map(|r| r.iter().map(|&x| u64::from(x)).collect())
        .collect()
}

pub fn parse_matrix(s: &str) -> Result<FpMatrix> {
    parse_json::<MatrixDoc>(s)?.to_matrix()
}

pub fn parse_matrix_list(s: &str) -> Result<Vec<FpMatrix>> {
    parse_json::<MatrixListDoc>(s)?.to_matrices()
}

pub fn parse_dopoly(s: &str) -> Result<DOPoly> {
    parse_json::<DOPolyDoc>(s)?.to_dopoly()
}

/// Parses comma-separated coordinates such as `1,0,2`.
pub fn parse_elem(ctx: &ExtFieldCtx, s: &str) -> Result<ExtElem> {
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("coordinate {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != ctx.n() {
        return Err(Error::Parse(format!(
            "element needs {} coordinates, got {}",
            ctx.n(),
            values.len()
        )));
    }
    ctx.elem(residues(ctx.p(), &values, "element")?)
}

pub fn rcf_classes_doc(ms: &RcfMultiset) -> Vec<RcfClassDoc> {
    ms.classes()
        .iter()
        .map(|(f, m)| RcfClassDoc {
            factors: f.invariant_factors().iter().map(FpPoly::to_string).collect(),
            multiplicity: *m,
        })
        .collect()
}

pub fn parse_rcf_classes(docs: &[RcfClassDoc]) -> Result<RcfMultiset> {
    let classes = docs
        .iter()
        .map(|d| {
            let factors = d
                .factors
                .iter()
                .map(|s| s.parse::<FpPoly>())
                .collect::<Result<Vec<_>>>()?;
            Ok((RcfForm::from_factors(factors)?, d.multiplicity))
        })
        .collect::<Result<Vec<_>>>()?;
    RcfMultiset::from_classes(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quot::{quot_set, rcf_multiset};

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix(r#"{"p":3,"n":2,"rows":[[1,0],[0,2]]}"#).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 0], vec![0, 2]]);
        let doc = serde_json::to_string(&MatrixDoc::from_matrix(&m)).unwrap();
        assert_eq!(parse_matrix(&doc).unwrap(), m);
    }

    #[test]
    fn matrix_rejections() {
        for bad in [
            r#"{"p":3,"n":2,"rows":[[1,0],[0,3]]}"#,
            r#"{"p":4,"n":1,"rows":[[1]]}"#,
            r#"{"p":3,"n":2,"rows":[[1,0],[0]]}"#,
            r#"{"p":3,"n":0,"rows":[]}"#,
            r#"{"p":3,"n":1,"rows":[[1]],"extra":1}"#,
            r#"{"p":3,"n":1}"#,
            "not json",
        ] {
            assert!(matches!(parse_matrix(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn matrix_list_example() {
        let ms = parse_matrix_list(r#"{"p":3,"n":1,"matrices":[[[1]]]}"#).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(ms[0].is_identity());
    }

    #[test]
    fn dopoly_example() {
        let g = parse_dopoly(
            r#"{"p":3,"n":3,"modulus":[1,2,0,1],"terms":[{"i":0,"j":1,"u":[1,0,0]}]}"#,
        )
        .unwrap();
        assert_eq!(g.ctx().modulus(), &FpPoly::new(g.ctx().p(), [1, 2, 0, 1]));
        assert_eq!(g, DOPoly::twisted_monomial(g.ctx(), 1));
        let h = parse_dopoly(r#"{"p":3,"n":3,"terms":[{"i":1,"j":0,"u":[1,0,0]}]}"#).unwrap();
        assert_eq!(g, h);
        let doc = serde_json::to_string(&DOPolyDoc::from_dopoly(&g)).unwrap();
        assert_eq!(parse_dopoly(&doc).unwrap(), g);
    }

    #[test]
    fn dopoly_rejections() {
        for bad in [
            r#"{"p":3,"n":3,"modulus":[1,0,0,1],"terms":[]}"#,
            r#"{"p":3,"n":3,"modulus":[1,2,1],"terms":[]}"#,
            r#"{"p":3,"n":3,"terms":[{"i":0,"j":3,"u":[1,0,0]}]}"#,
            r#"{"p":3,"n":3,"terms":[{"i":0,"j":1,"u":[1,0]}]}"#,
            r#"{"p":3,"n":3,"terms":[{"i":0,"j":1,"u":[1,0,0]},{"i":1,"j":0,"u":[1,0,0]}]}"#,
            r#"{"p":3,"n":65,"terms":[]}"#,
        ] {
            assert!(parse_dopoly(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn class_list_round_trip() {
        let g = parse_dopoly(r#"{"p":3,"n":3,"terms":[{"i":0,"j":1,"u":[1,0,0]}]}"#).unwrap();
        let ms = rcf_multiset(&quot_set(&g).unwrap());
        let json = serde_json::to_string(&rcf_classes_doc(&ms)).unwrap();
        let docs: Vec<RcfClassDoc> = serde_json::from_str(&json).unwrap();
        assert_eq!(parse_rcf_classes(&docs).unwrap(), ms);
    }

    #[test]
    fn element_parsing() {
        let ctx = ExtFieldCtx::with_degree(PrimeModulus::new(3).unwrap(), 3).unwrap();
        assert_eq!(parse_elem(&ctx, "1, 0,2").unwrap().coords(), &[1, 0, 2]);
        assert!(parse_elem(&ctx, "1,0").is_err());
        assert!(parse_elem(&ctx, "1,0,3").is_err());
        assert!(parse_elem(&ctx, "1,x,0").is_err());
    }
}
