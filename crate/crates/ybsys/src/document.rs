//! JSON interchange: matrices, algebras, quadruples, search configs and
//! reports, with expression-string entries that are auditable against the
//! printed matrices.  Unknown fields are rejected and `schema_version` is
//! mandatory.

use serde::{Deserialize, Serialize};

use crate::algebra::{ConstantQuadruple, FiniteAlgebra, Provenance};
use crate::commutator::SystemReport;
use crate::error::{Error, Result};
use crate::parse::parse_scalar;
use crate::ring::{Ring, RingDescriptor, RingKind};
use crate::search::{SearchConfig, VerifiedSolution};
use crate::tensor::RingMatrix;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocKind {
    Matrix,
    Algebra,
    Quadruple,
    SearchConfig,
    Report,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub kind: RingKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
}

impl RingDoc {
    pub fn from_ring(ring: &Ring) -> Self {
        RingDoc {
            kind: ring.kind,
            vars: ring.vars.clone(),
            modulus: (ring.modulus != 0).then_some(ring.modulus),
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        match self.kind {
            RingKind::Rational => Ok(RingDescriptor::rational()),
            RingKind::PolyRational => RingDescriptor::poly(&self.vars),
            RingKind::PrimeField => RingDescriptor::prime_field(
                self.modulus
                    .ok_or_else(|| Error::Document("prime_field requires modulus".into()))?,
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub kind: DocKind,
    pub ring: RingDoc,
    pub body: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixBody {
    pub rows: usize,
    pub cols: usize,
    /// Row-major expression strings under the document ring.
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBody {
    pub dim: usize,
    pub unit_index: usize,
    /// structure_constants[i][j][k] as expression strings.
    pub structure_constants: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleBody {
    pub a: MatrixBody,
    pub b: MatrixBody,
    pub c: MatrixBody,
    pub d: MatrixBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionReport {
    pub label: String,
    pub zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReportBody {
    pub system: String,
    pub all_zero: bool,
    pub conditions: Vec<ConditionReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchResultBody {
    pub solutions: Vec<VerifiedSolution>,
}

fn check_version(doc: &Document) -> Result<()> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Document(format!(
            "unsupported schema_version `{}`",
            doc.schema_version
        )));
    }
    Ok(())
}

pub fn matrix_to_body(m: &RingMatrix) -> MatrixBody {
    MatrixBody {
        rows: m.rows,
        cols: m.cols,
        entries: m.entries().iter().map(|e| e.to_string()).collect(),
    }
}

pub fn body_to_matrix(body: &MatrixBody, ring: &Ring) -> Result<RingMatrix> {
    let entries = body
        .entries
        .iter()
        .map(|s| parse_scalar(s, ring))
        .collect::<Result<Vec<_>>>()?;
    RingMatrix::from_entries(ring, body.rows, body.cols, entries)
}

pub fn matrix_document(m: &RingMatrix) -> Document {
    Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: DocKind::Matrix,
        ring: RingDoc::from_ring(&m.ring),
        body: serde_json::to_value(matrix_to_body(m)).unwrap(),
    }
}

pub fn quadruple_document(q: &ConstantQuadruple) -> Document {
    let body = QuadrupleBody {
        a: matrix_to_body(&q.a),
        b: matrix_to_body(&q.b),
        c: matrix_to_body(&q.c),
        d: matrix_to_body(&q.d),
    };
    Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: DocKind::Quadruple,
        ring: RingDoc::from_ring(&q.a.ring),
        body: serde_json::to_value(body).unwrap(),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    check_version(&doc)?;
    Ok(doc)
}

pub fn document_matrix(doc: &Document) -> Result<RingMatrix> {
    if doc.kind != DocKind::Matrix {
        return Err(Error::Document("expected a matrix document".into()));
    }
    let ring = doc.ring.to_ring()?;
    let body: MatrixBody =
        serde_json::from_value(doc.body.clone()).map_err(|e| Error::Document(e.to_string()))?;
    body_to_matrix(&body, &ring)
}

pub fn document_quadruple(doc: &Document) -> Result<ConstantQuadruple> {
    if doc.kind != DocKind::Quadruple {
        return Err(Error::Document("expected a quadruple document".into()));
    }
    let ring = doc.ring.to_ring()?;
    let body: QuadrupleBody =
        serde_json::from_value(doc.body.clone()).map_err(|e| Error::Document(e.to_string()))?;
    Ok(ConstantQuadruple {
        a: body_to_matrix(&body.a, &ring)?,
        b: body_to_matrix(&body.b, &ring)?,
        c: body_to_matrix(&body.c, &ring)?,
        d: body_to_matrix(&body.d, &ring)?,
        provenance: Provenance::User,
    })
}

pub fn document_algebra(doc: &Document) -> Result<FiniteAlgebra> {
    if doc.kind != DocKind::Algebra {
        return Err(Error::Document("expected an algebra document".into()));
    }
    let ring = doc.ring.to_ring()?;
    let body: AlgebraBody =
        serde_json::from_value(doc.body.clone()).map_err(|e| Error::Document(e.to_string()))?;
    let constants = body
        .structure_constants
        .iter()
        .map(|plane| {
            plane
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_scalar(s, &ring))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteAlgebra::new(&ring, body.dim, body.unit_index, constants)
}

pub fn document_search_config(doc: &Document) -> Result<SearchConfig> {
    if doc.kind != DocKind::SearchConfig {
        return Err(Error::Document("expected a search_config document".into()));
    }
    serde_json::from_value(doc.body.clone()).map_err(|e| Error::Document(e.to_string()))
}

pub fn report_document(system: &str, report: &SystemReport, ring: &Ring) -> Document {
    let conditions = report
        .labels
        .iter()
        .zip(&report.residuals)
        .map(|(label, res)| ConditionReport {
            label: label.clone(),
            zero: res.is_zero(),
            first_nonzero: res.first_nonzero(),
        })
        .collect();
    let body = VerifyReportBody {
        system: system.to_string(),
        all_zero: report.all_zero,
        conditions,
    };
    Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: DocKind::Report,
        ring: RingDoc::from_ring(ring),
        body: serde_json::to_value(body).unwrap(),
    }
}

pub fn search_result_document(solutions: &[VerifiedSolution]) -> Document {
    Document {
        schema_version: SCHEMA_VERSION.into(),
        kind: DocKind::Report,
        ring: RingDoc {
            kind: RingKind::Rational,
            vars: Vec::new(),
            modulus: None,
        },
        body: serde_json::to_value(SearchResultBody {
            solutions: solutions.to_vec(),
        })
        .unwrap(),
    }
}

pub fn to_json_string(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{theorem21_quadruple, theorem21_ring, two_dim_algebra};
    use crate::ring::ScalarValue;

    #[test]
    fn matrix_roundtrip() {
        let ring = theorem21_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let lambda = ScalarValue::var(&ring, "lambda").unwrap();
        let lambda_p = ScalarValue::var(&ring, "lambda'").unwrap();
        let alg = two_dim_algebra(&sigma);
        let quad = theorem21_quadruple(&alg, &lambda, &lambda_p).unwrap();
        let doc = matrix_document(&quad.a);
        let text = to_json_string(&doc);
        let back = document_matrix(&parse_document(&text).unwrap()).unwrap();
        assert_eq!(back, quad.a);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"schema_version":"1","kind":"matrix","ring":{"kind":"rational"},"body":{"rows":1,"cols":1,"entries":["1"]},"extra":true}"#;
        assert!(parse_document(text).is_err());
    }

    #[test]
    fn missing_version_rejected() {
        let text = r#"{"kind":"matrix","ring":{"kind":"rational"},"body":{"rows":1,"cols":1,"entries":["1"]}}"#;
        assert!(parse_document(text).is_err());
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"schema_version":"2","kind":"matrix","ring":{"kind":"rational"},"body":{"rows":1,"cols":1,"entries":["1"]}}"#;
        assert!(parse_document(text).is_err());
    }

    #[test]
    fn nonprime_modulus_rejected() {
        let doc = RingDoc {
            kind: RingKind::PrimeField,
            vars: vec![],
            modulus: Some(10),
        };
        assert!(doc.to_ring().is_err());
    }
}
