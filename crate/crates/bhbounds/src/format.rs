//! On-disk formats.
//!
//! Polynomial file:
//!
//! ```json
//! {"m": 2, "n": 2, "terms": [{"alpha": [2, 0], "re": 1.0, "im": 0.0}, ...]}
//! ```
//!
//! Certificate file: the polynomial in the same layout, both ratios, the
//! sup-norm bracket, the configuration and the seed, tagged with
//! `"schema": "bh-cert-1"`. Floats are written in shortest round-trip form,
//! so reading a certificate back reproduces every number bit for bit.

use std::path::Path;

use bhbounds_core::{
    Complex64, HomogeneousPolynomial, MultiIndex, SearchConfig, SearchOutcome, SupNormConfig,
    SupNormResult, WitnessCertificate,
};
use serde::{Deserialize, Serialize};

pub const CERT_SCHEMA: &str = "bh-cert-1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polynomial: {0}")]
    Polynomial(#[from] bhbounds_core::Error),
    #[error("unsupported certificate schema {found:?} (expected {CERT_SCHEMA:?})")]
    Schema { found: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub m: u32,
    pub n: usize,
    pub terms: Vec<TermDoc>,
}

impl From<&HomogeneousPolynomial> for PolynomialDoc {
    fn from(p: &HomogeneousPolynomial) -> Self {
        Self {
            m: p.degree(),
            n: p.num_vars(),
            terms: p
                .terms()
                .map(|(a, c)| TermDoc {
                    alpha: a.exponents().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialDoc> for HomogeneousPolynomial {
    type Error = bhbounds_core::Error;

    fn try_from(doc: PolynomialDoc) -> Result<Self, Self::Error> {
        HomogeneousPolynomial::from_terms(
            doc.m,
            doc.n,
            doc.terms
                .into_iter()
                .map(|t| (MultiIndex::new(t.alpha), Complex64::new(t.re, t.im))),
        )
    }
}

pub fn parse_polynomial(text: &str) -> Result<HomogeneousPolynomial, FormatError> {
    let doc: PolynomialDoc = serde_json::from_str(text)?;
    Ok(doc.try_into()?)
}

pub fn polynomial_to_json(p: &HomogeneousPolynomial) -> String {
    let mut s =
        serde_json::to_string_pretty(&PolynomialDoc::from(p)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_polynomial(path: &Path) -> Result<HomogeneousPolynomial, FormatError> {
    parse_polynomial(&read(path)?)
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupNormDoc {
    pub lower_estimate: f64,
    pub upper_bracket: f64,
    pub arg_angles: Vec<f64>,
    pub grid_used: usize,
    pub grid_value: f64,
    pub refine_sweeps: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupNormConfigDoc {
    pub grid_points_per_axis: usize,
    pub refine_tolerance: f64,
    pub max_refine_iterations: usize,
    pub parallel_chunks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchDoc {
    pub m: u32,
    pub num_vars: usize,
    pub restarts: usize,
    pub step_init: f64,
    pub step_min: f64,
    pub eval_budget: usize,
    pub seed_with_family: bool,
    pub restart: usize,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub schema: String,
    pub polynomial: PolynomialDoc,
    pub coeff_norm: f64,
    pub estimate: f64,
    pub certified_lower: f64,
    pub supnorm: SupNormDoc,
    pub config: SupNormConfigDoc,
    pub search: Option<SearchDoc>,
    pub seed: Option<u64>,
}

impl From<&WitnessCertificate> for CertificateDoc {
    fn from(cert: &WitnessCertificate) -> Self {
        let s = &cert.supnorm;
        let c = &cert.supnorm_config;
        Self {
            schema: CERT_SCHEMA.to_owned(),
            polynomial: PolynomialDoc::from(&cert.polynomial),
            coeff_norm: cert.coeff_norm,
            estimate: cert.estimate,
            certified_lower: cert.certified_lower,
            supnorm: SupNormDoc {
                lower_estimate: s.lower_estimate,
                upper_bracket: s.upper_bracket,
                arg_angles: s.arg_angles.clone(),
                grid_used: s.grid_used,
                grid_value: s.grid_value,
                refine_sweeps: s.refine_sweeps,
                converged: s.converged,
            },
            config: SupNormConfigDoc {
                grid_points_per_axis: c.grid_points_per_axis,
                refine_tolerance: c.refine_tolerance,
                max_refine_iterations: c.max_refine_iterations,
                parallel_chunks: c.parallel_chunks,
            },
            search: cert.search.as_ref().map(|o| SearchDoc {
                m: o.config.m,
                num_vars: o.config.num_vars,
                restarts: o.config.restarts,
                step_init: o.config.step_init,
                step_min: o.config.step_min,
                eval_budget: o.config.eval_budget,
                seed_with_family: o.config.seed_with_family,
                restart: o.restart,
                evaluations: o.evaluations,
            }),
            seed: cert.search.as_ref().map(|o| o.config.rng_seed),
        }
    }
}

impl TryFrom<CertificateDoc> for WitnessCertificate {
    type Error = FormatError;

    fn try_from(doc: CertificateDoc) -> Result<Self, FormatError> {
        if doc.schema != CERT_SCHEMA {
            return Err(FormatError::Schema { found: doc.schema });
        }
        let supnorm_config = SupNormConfig {
            grid_points_per_axis: doc.config.grid_points_per_axis,
            refine_tolerance: doc.config.refine_tolerance,
            max_refine_iterations: doc.config.max_refine_iterations,
            parallel_chunks: doc.config.parallel_chunks,
        };
        let search = doc.search.map(|s| SearchOutcome {
            config: SearchConfig {
                m: s.m,
                num_vars: s.num_vars,
                restarts: s.restarts,
                rng_seed: doc.seed.unwrap_or_default(),
                step_init: s.step_init,
                step_min: s.step_min,
                eval_budget: s.eval_budget,
                supnorm: supnorm_config.clone(),
                seed_with_family: s.seed_with_family,
            },
            restart: s.restart,
            evaluations: s.evaluations,
        });
        Ok(WitnessCertificate {
            polynomial: doc.polynomial.try_into()?,
            coeff_norm: doc.coeff_norm,
            supnorm: SupNormResult {
                lower_estimate: doc.supnorm.lower_estimate,
                upper_bracket: doc.supnorm.upper_bracket,
                arg_angles: doc.supnorm.arg_angles,
                grid_used: doc.supnorm.grid_used,
                grid_value: doc.supnorm.grid_value,
                refine_sweeps: doc.supnorm.refine_sweeps,
                converged: doc.supnorm.converged,
            },
            certified_lower: doc.certified_lower,
            estimate: doc.estimate,
            supnorm_config,
            search,
        })
    }
}

pub fn certificate_to_json(cert: &WitnessCertificate) -> String {
    let mut s =
        serde_json::to_string_pretty(&CertificateDoc::from(cert)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<WitnessCertificate, FormatError> {
    let doc: CertificateDoc = serde_json::from_str(text)?;
    doc.try_into()
}

pub fn read_certificate(path: &Path) -> Result<WitnessCertificate, FormatError> {
    parse_certificate(&read(path)?)
}
