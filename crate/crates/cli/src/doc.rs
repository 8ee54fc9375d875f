//! JSON documents: certificates emitted by `cxc certify` and the bundle and
//! catalog files accepted as input. Every number is a string in the forms
//! printed by the exact number types.

use std::path::Path;

use serde::{Deserialize, Serialize};
use seshadri_core::curve_bundles::{CurveBundle, SemistablePiece};
use seshadri_core::curve_products::{CxCClass, FamilyTag, Generality, NefCertificate, Witness};
use seshadri_core::exact_num::{parse_rational, Rational};
use seshadri_core::seshadri_calculus::{CurveRestriction, ExtendedRational, SeshadriEstimate};

use crate::parse::parse_bundle;

pub const CERT_SCHEMA: &str = "seshadri-cert/1";
pub const BUNDLE_SCHEMA: &str = "seshadri-bundle/1";
pub const CATALOG_SCHEMA: &str = "seshadri-catalog/1";
pub const ESTIMATES_SCHEMA: &str = "seshadri-estimates/1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassDoc {
    pub a: String,
    pub b: String,
    pub c: String,
    pub text: String,
}

impl From<&CxCClass> for ClassDoc {
    fn from(d: &CxCClass) -> Self {
        Self { a: d.a().to_string(), b: d.b().to_string(), c: d.c().to_string(), text: d.to_string() }
    }
}

/// A family used by a certificate with the hypothesis it needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceTag {
    pub family: String,
    pub hypothesis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub weight: String,
    pub family: String,
    pub class: ClassDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDoc {
    Pairing { pairing: String, value: String },
    Combination { terms: Vec<TermDoc> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub class: ClassDoc,
    pub verdict: String,
    pub generality: String,
    pub family: String,
    pub sources: Vec<SourceTag>,
    pub witness: WitnessDoc,
}

impl CertificateEntry {
    pub fn new(d: &CxCClass, cert: &NefCertificate) -> Self {
        let witness = match &cert.witness {
            Witness::Pairing { pairing, value } => {
                WitnessDoc::Pairing { pairing: pairing.as_str().into(), value: value.to_string() }
            }
            Witness::Combination(terms) => WitnessDoc::Combination {
                terms: terms
                    .iter()
                    .map(|t| TermDoc {
                        weight: t.weight.to_string(),
                        family: t.generator.family.as_str().into(),
                        class: ClassDoc::from(&t.generator.class),
                    })
                    .collect(),
            },
            Witness::None => WitnessDoc::None,
        };
        let sources = cert
            .family
            .split('+')
            .filter_map(FamilyTag::parse)
            .map(|t| SourceTag { family: t.as_str().into(), hypothesis: t.generality().as_str().into() })
            .collect();
        Self {
            class: ClassDoc::from(d),
            verdict: cert.verdict.as_str().into(),
            generality: cert.generality.as_str().into(),
            family: cert.family.clone(),
            sources,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema: String,
    pub command: String,
    pub genus: u32,
    pub max_generality: String,
    pub certificates: Vec<CertificateEntry>,
}

impl CertificateDocument {
    pub fn new(command: String, genus: u32, max_generality: Generality, certificates: Vec<CertificateEntry>) -> Self {
        Self { schema: CERT_SCHEMA.into(), command, genus, max_generality: max_generality.as_str().into(), certificates }
    }
}

/// A degree or twist given either as a JSON number or as a string like `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberField {
    Int(i64),
    Text(String),
}

impl NumberField {
    fn value(&self) -> Result<Rational, String> {
        match self {
            Self::Int(n) => Ok(Rational::from_integer((*n).into())),
            Self::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceDoc {
    pub rank: u64,
    pub degree: NumberField,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<NumberField>,
}

impl BundleDoc {
    pub fn to_bundle(&self) -> Result<CurveBundle, String> {
        if let Some(s) = &self.schema {
            if s != BUNDLE_SCHEMA {
                return Err(format!("unsupported schema `{s}` (expected {BUNDLE_SCHEMA})"));
            }
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| SemistablePiece::new(p.rank, p.degree.value()?).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, String>>()?;
        let twist = match &self.twist {
            Some(t) => t.value()?,
            None => Rational::from_integer(0.into()),
        };
        let bundle = CurveBundle::new(pieces, twist).map_err(|e| e.to_string())?;
        Ok(match &self.label {
            Some(l) => bundle.with_label(l.clone()),
            None => bundle,
        })
    }

    pub fn from_bundle(b: &CurveBundle) -> Self {
        let twist = b.twist_value();
        Self {
            schema: Some(BUNDLE_SCHEMA.into()),
            label: b.label().map(str::to_string),
            pieces: b
                .pieces()
                .iter()
                .map(|p| PieceDoc { rank: p.rank(), degree: NumberField::Text(p.degree().to_string()) })
                .collect(),
            twist: (!num_traits::Zero::is_zero(twist)).then(|| NumberField::Text(twist.to_string())),
        }
    }
}

/// A bundle written inline in the text grammar or as a structured object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BundleField {
    Inline(String),
    Doc(BundleDoc),
}

impl BundleField {
    fn to_bundle(&self) -> Result<CurveBundle, String> {
        match self {
            Self::Inline(s) => parse_bundle(s).map_err(|e| e.to_string()),
            Self::Doc(d) => d.to_bundle(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictionDoc {
    pub curve: String,
    #[serde(default = "one")]
    pub mult: u64,
    pub bundle: BundleField,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default)]
    pub complete: bool,
    pub restrictions: Vec<RestrictionDoc>,
}

impl CatalogDoc {
    pub fn restrictions(&self) -> Result<Vec<CurveRestriction>, String> {
        if let Some(s) = &self.schema {
            if s != CATALOG_SCHEMA {
                return Err(format!("unsupported schema `{s}` (expected {CATALOG_SCHEMA})"));
            }
        }
        self.restrictions
            .iter()
            .map(|r| {
                let bundle = r.bundle.to_bundle().map_err(|e| format!("curve `{}`: {e}", r.curve))?;
                CurveRestriction::new(r.curve.clone(), r.mult, bundle).map_err(|e| format!("curve `{}`: {e}", r.curve))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateDoc {
    pub upper: String,
    #[serde(default)]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
}

impl EstimateDoc {
    pub fn to_estimate(&self) -> Result<SeshadriEstimate, String> {
        Ok(SeshadriEstimate {
            upper: parse_extended(&self.upper)?,
            catalog_complete: self.complete,
            lower: self.lower.as_deref().map(parse_extended).transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatesDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub points: Vec<EstimateDoc>,
}

pub fn parse_extended(s: &str) -> Result<ExtendedRational, String> {
    match s.trim() {
        "inf" | "+inf" => Ok(ExtendedRational::PosInfinity),
        "-inf" => Ok(ExtendedRational::NegInfinity),
        t => parse_rational(t).map(ExtendedRational::Finite).map_err(|e| e.to_string()),
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use seshadri_core::exact_num::rat;

    #[test]
    fn bundle_documents_round_trip() {
        let b = CurveBundle::from_pairs(&[(1, 1), (2, -3)], rat(-1, 2)).unwrap().with_label("V");
        let json = serde_json::to_string(&BundleDoc::from_bundle(&b)).unwrap();
        let back: BundleDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_bundle().unwrap(), b);
        let doc: BundleDoc = serde_json::from_str(r#"{"pieces":[{"rank":1,"degree":1},{"rank":1,"degree":"5/2"}]}"#).unwrap();
        assert_eq!(doc.to_bundle().unwrap().degree(), rat(7, 2));
    }

    #[test]
    fn catalogs_accept_inline_and_structured_bundles() {
        let doc: CatalogDoc = serde_json::from_str(
            r#"{"restrictions":[{"curve":"line","bundle":"1:1,1:2"},{"curve":"conic","mult":2,"bundle":{"pieces":[{"rank":1,"degree":4}]}}]}"#,
        )
        .unwrap();
        let rs = doc.restrictions().unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[1].value(), rat(2, 1));
        assert!(!doc.complete);
    }

    #[test]
    fn extended_values() {
        assert_eq!(parse_extended("inf").unwrap(), ExtendedRational::PosInfinity);
        assert_eq!(parse_extended("-1/2").unwrap(), ExtendedRational::Finite(rat(-1, 2)));
        assert!(parse_extended("nan").is_err());
    }
}
