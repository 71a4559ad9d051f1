//! The shared matrix text format.
//!
//! A matrix is a JSON document with fields `rows`, `cols`,
//! `backend` ("exact" | "float"), and `entries`, an array of strings in
//! row-major order. Exact entries use the grammar
//! `q0 +- q1*sqrt(d1) +- ...` with each `q` a decimal-free integer or
//! fraction `p/q`; float entries are the shortest round-trip decimal form,
//! so both backends round-trip bit-exactly.
//!
//! Flags add a `theta`/`kind` header around a matrix document, and
//! `sl_2`-triples are three matrices with an `n` header and the list of
//! adjoined radicands.

use serde::{Deserialize, Serialize};
use symflag_core::flags::{Flag, FlagKind, ThetaSet};
use symflag_core::mat::Mat;
use symflag_core::rep::Sl2Triple;
use symflag_core::scalar::{Backend, Ext, Scalar, Tolerance};
use symflag_core::symplectic::SymplecticForm;

/// Parse or validation failure with a one-line message.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(m: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(m.into()))
}

/// Serialized matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub backend: String,
    pub entries: Vec<String>,
}

pub fn scalar_to_string(s: &Scalar) -> String {
    match s {
        Scalar::Exact(e) => format!("{e}"),
        Scalar::Float(x) => format!("{x}"),
    }
}

pub fn scalar_from_string(text: &str, backend: Backend) -> Result<Scalar, FormatError> {
    match backend {
        Backend::Exact => match Ext::parse(text) {
            Ok(e) => Ok(Scalar::Exact(e)),
            Err(e) => err(format!("bad exact entry `{text}`: {e}")),
        },
        Backend::Float => match text.trim().parse::<f64>() {
            Ok(x) => Ok(Scalar::Float(x)),
            Err(_) => err(format!("bad float entry `{text}`")),
        },
    }
}

pub fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Exact => "exact",
        Backend::Float => "float",
    }
}

pub fn backend_from_name(name: &str) -> Result<Backend, FormatError> {
    match name {
        "exact" => Ok(Backend::Exact),
        "float" => Ok(Backend::Float),
        other => err(format!("unknown backend `{other}` (expected exact|float)")),
    }
}

pub fn mat_to_doc(m: &Mat) -> MatrixDoc {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            entries.push(scalar_to_string(m.at(i, j)));
        }
    }
    MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        backend: backend_name(m.backend()).to_string(),
        entries,
    }
}

pub fn mat_from_doc(doc: &MatrixDoc) -> Result<Mat, FormatError> {
    if doc.rows == 0 || doc.cols == 0 {
        return err("rows and cols must be positive");
    }
    if doc.entries.len() != doc.rows * doc.cols {
        return err(format!(
            "expected {} entries, found {}",
            doc.rows * doc.cols,
            doc.entries.len()
        ));
    }
    let backend = backend_from_name(&doc.backend)?;
    let mut parsed = Vec::with_capacity(doc.entries.len());
    for e in &doc.entries {
        parsed.push(scalar_from_string(e, backend)?);
    }
    Ok(Mat::from_fn(doc.rows, doc.cols, |i, j| {
        parsed[i * doc.cols + j].clone()
    }))
}

pub fn mat_to_json(m: &Mat) -> String {
    serde_json::to_string_pretty(&mat_to_doc(m)).expect("matrix serializes")
}

pub fn mat_from_json(text: &str) -> Result<Mat, FormatError> {
    let doc: MatrixDoc = match serde_json::from_str(text) {
        Ok(d) => d,
        Err(e) => return err(format!("malformed matrix document: {e}")),
    };
    mat_from_doc(&doc)
}

/// Serialized flag: the matrix plus a Theta header.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FlagDoc {
    pub n: usize,
    pub kind: String,
    pub theta: Vec<usize>,
    pub matrix: MatrixDoc,
}

pub fn flag_to_doc(f: &Flag) -> FlagDoc {
    FlagDoc {
        n: f.n(),
        kind: match f.kind() {
            FlagKind::Symplectic => "symplectic".into(),
            FlagKind::SlPair => "sl_pair".into(),
        },
        theta: f.dims().to_vec(),
        matrix: mat_to_doc(f.basis()),
    }
}

pub fn flag_from_doc(doc: &FlagDoc) -> Result<Flag, FormatError> {
    let basis = mat_from_doc(&doc.matrix)?;
    let tol = Tolerance::default();
    match doc.kind.as_str() {
        "symplectic" => {
            let theta = match ThetaSet::new(doc.n, doc.theta.clone()) {
                Ok(t) => t,
                Err(e) => return err(format!("bad Theta header: {e}")),
            };
            let form = SymplecticForm::standard(doc.n, basis.backend());
            Flag::isotropic(&theta, basis, &form, &tol)
                .map_err(|e| FormatError(format!("bad flag: {e}")))
        }
        "sl_pair" => {
            Flag::sl_pair(doc.n, basis, &tol).map_err(|e| FormatError(format!("bad flag: {e}")))
        }
        other => err(format!("unknown flag kind `{other}`")),
    }
}

/// Serialized representation triple: three matrices, the rank header, and
/// the adjoined radicands.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TripleDoc {
    pub n: usize,
    pub radicands: Vec<u64>,
    pub h: MatrixDoc,
    pub x: MatrixDoc,
    pub y: MatrixDoc,
}

pub fn triple_to_doc(t: &Sl2Triple) -> TripleDoc {
    let mut radicands: Vec<u64> = Vec::new();
    for m in [t.h(), t.x(), t.y()] {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if let Scalar::Exact(e) = m.at(i, j) {
                    for d in e.radicands() {
                        if !radicands.contains(&d) {
                            radicands.push(d);
                        }
                    }
                }
            }
        }
    }
    radicands.sort_unstable();
    TripleDoc {
        n: t.n(),
        radicands,
        h: mat_to_doc(t.h()),
        x: mat_to_doc(t.x()),
        y: mat_to_doc(t.y()),
    }
}
