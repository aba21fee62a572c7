//! JSON renderings of library results.

use matfield::format::{rcf_classes_doc, MatrixDoc, MatrixListDoc};
use matfield::twisted::{ConjugationReport, TwistedReport};
use matfield::{FieldDecision, FpMatrix, NotFieldWitness, QuotSet, RcfMultiset, X2Certificate, X2Failure};
use serde_json::{json, Value};

pub fn matrix(m: &FpMatrix) -> Value {
    serde_json::to_value(MatrixDoc::from_matrix(m)).expect("matrix documents serialize")
}

pub fn matrix_list(p: matfield::PrimeModulus, n: usize, ms: &[FpMatrix]) -> Value {
    serde_json::to_value(MatrixListDoc::from_matrices(p, n, ms)).expect("matrix lists serialize")
}

/// Integers that may exceed `u64` are written as strings.
pub fn big(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn witness(w: &NotFieldWitness) -> Value {
    match w {
        NotFieldWitness::ReducibleMinPoly { element, min_poly } => json!({
            "kind": "reducible_min_poly",
            "element": matrix(element),
            "min_poly": min_poly.to_string(),
        }),
        NotFieldWitness::OutsideSpan { index } => json!({"kind": "outside_span", "index": index}),
        NotFieldWitness::NoGenerator => json!({"kind": "no_generator"}),
        NotFieldWitness::ZeroDivisor { element } => {
            json!({"kind": "zero_divisor", "element": matrix(element)})
        }
        NotFieldWitness::NonCommutative { left, right } => json!({
            "kind": "non_commutative",
            "left": matrix(left),
            "right": matrix(right),
        }),
        NotFieldWitness::DimensionExceeds { dimension } => {
            json!({"kind": "dimension_exceeds", "dimension": dimension})
        }
    }
}

pub fn field_decision(d: &FieldDecision) -> Value {
    match d {
        FieldDecision::Field {
            degree,
            generator,
            min_poly,
            coordinates,
        } => json!({
            "field": true,
            "degree": degree,
            "generator": matrix(generator),
            "min_poly": min_poly.to_string(),
            "coordinates": coordinates,
        }),
        FieldDecision::NotField(w) => json!({"field": false, "witness": witness(w)}),
    }
}

pub fn x2(c: &X2Certificate) -> Value {
    match c {
        X2Certificate::Equivalent {
            generator,
            min_poly,
            degree,
        } => json!({
            "equivalent": true,
            "degree": degree,
            "generator": matrix(generator),
            "min_poly": min_poly.to_string(),
        }),
        X2Certificate::NotEquivalent(f) => {
            let failure = match f {
                X2Failure::SingularBase { rank } => json!({"stage": "singular_base", "rank": rank}),
                X2Failure::SingularGenerator { index } => {
                    json!({"stage": "singular_generator", "index": index})
                }
                X2Failure::NotField(w) => json!({"stage": "not_field", "witness": witness(w)}),
                X2Failure::WrongDegree { degree } => {
                    json!({"stage": "wrong_degree", "degree": degree})
                }
            };
            json!({"equivalent": false, "failure": failure})
        }
    }
}

pub fn quot(q: &QuotSet, lower: u128, upper: u128, elements: bool) -> Value {
    let mut v = json!({
        "size": q.len(),
        "lower": big(lower),
        "upper": big(upper),
    });
    if elements {
        v["elements"] = matrix_list(q.p(), q.n(), &q.matrices());
    }
    v
}

pub fn invariant(ms: &RcfMultiset, full: bool) -> Value {
    let mut v = json!({
        "digest": ms.digest(),
        "size": ms.total(),
        "class_count": ms.classes().len(),
    });
    if full {
        v["classes"] = serde_json::to_value(rcf_classes_doc(ms)).expect("class lists serialize");
    }
    v
}

pub fn twisted(r: &TwistedReport) -> Value {
    json!({
        "passed": r.passed(),
        "quotient": matrix(&r.quotient),
        "min_poly": r.min_poly.to_string(),
        "irreducible": r.irreducible,
        "degree": r.degree,
        "expected_degree": r.expected_degree,
        "checked": r.checked,
        "missing": r.missing.as_ref().map(matrix),
    })
}

pub fn conjugation(r: &ConjugationReport) -> Value {
    json!({
        "passed": r.passed(),
        "subfield": r.subfield,
        "inverse_matches": r.inverse_matches,
        "composition": r.composition,
        "conjugation": r.conjugation,
        "self_equivalence": r.self_equivalence,
    })
}
