//! JSON encodings used by the command-line tools: matrices are
//! {"field": "real"|"complex", "m": [[..],[..]]} with complex entries as
//! [re, im]; generator systems and synthesis reports follow suit.

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::FieldKind;
use crate::synthesis::{ApproxReport, TargetKind};
use crate::words::GeneratorSystem;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One matrix entry: a bare number in the real case, [re, im] otherwise.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Real(f64),
    Complex([f64; 2]),
}

impl EntryJson {
    pub fn as_complex(&self) -> Complex64 {
        match self {
            EntryJson::Real(x) => Complex64::new(*x, 0.0),
            EntryJson::Complex([re, im]) => Complex64::new(*re, *im),
        }
    }

    pub fn as_real(&self) -> Result<f64> {
        match self {
            EntryJson::Real(x) => Ok(*x),
            EntryJson::Complex([re, im]) if *im == 0.0 => Ok(*re),
            _ => Err(Error::Domain("expected a real entry".into())),
        }
    }

    fn from_c64(z: Complex64) -> Self {
        EntryJson::Complex([z.re, z.im])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Mat2Json {
    pub field: FieldKind,
    pub m: [[EntryJson; 2]; 2],
}

impl Mat2Json {
    pub fn from_real(m: &Mat2<f64>) -> Self {
        Mat2Json {
            field: FieldKind::Real,
            m: [
                [EntryJson::Real(m.m11), EntryJson::Real(m.m12)],
                [EntryJson::Real(m.m21), EntryJson::Real(m.m22)],
            ],
        }
    }

    pub fn from_complex(m: &Mat2<Complex64>) -> Self {
        Mat2Json {
            field: FieldKind::Complex,
            m: [
                [EntryJson::from_c64(m.m11), EntryJson::from_c64(m.m12)],
                [EntryJson::from_c64(m.m21), EntryJson::from_c64(m.m22)],
            ],
        }
    }

    pub fn to_real(&self) -> Result<Mat2<f64>> {
        if self.field != FieldKind::Real {
            return Err(Error::Domain("matrix is not real".into()));
        }
        Ok(Mat2::new(
            self.m[0][0].as_real()?,
            self.m[0][1].as_real()?,
            self.m[1][0].as_real()?,
            self.m[1][1].as_real()?,
        ))
    }

    pub fn to_complex(&self) -> Mat2<Complex64> {
        Mat2::new(
            self.m[0][0].as_complex(),
            self.m[0][1].as_complex(),
            self.m[1][0].as_complex(),
            self.m[1][1].as_complex(),
        )
    }
}

/// Parse a matrix from either the tagged object form or a bare 2x2 array
/// (assumed real), as accepted by the membership command line.
pub fn parse_matrix(text: &str) -> Result<Mat2Json> {
    if let Ok(m) = serde_json::from_str::<Mat2Json>(text) {
        return Ok(m);
    }
    let bare: [[EntryJson; 2]; 2] = serde_json::from_str(text).map_err(|e| Error::Syntax {
        position: 0,
        message: format!("matrix JSON: {e}"),
    })?;
    let field = if bare
        .iter()
        .flatten()
        .all(|e| matches!(e, EntryJson::Real(_)))
    {
        FieldKind::Real
    } else {
        FieldKind::Complex
    };
    Ok(Mat2Json { field, m: bare })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolJson {
    pub sym: String,
    pub m: [[EntryJson; 2]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub name: String,
    pub field: FieldKind,
    pub params: BTreeMap<String, EntryJson>,
    pub symbols: Vec<SymbolJson>,
}

impl SystemJson {
    pub fn from_real(sys: &GeneratorSystem<f64>) -> Self {
        SystemJson {
            name: sys.name.clone(),
            field: FieldKind::Real,
            params: sys
                .params
                .iter()
                .map(|(k, v)| (k.clone(), EntryJson::Real(*v)))
                .collect(),
            symbols: sys
                .symbols()
                .map(|s| {
                    let m = Mat2Json::from_real(sys.matrix(s).expect("listed symbol"));
                    SymbolJson {
                        sym: s.to_string(),
                        m: m.m,
                    }
                })
                .collect(),
        }
    }

    pub fn from_complex(sys: &GeneratorSystem<Complex64>) -> Self {
        SystemJson {
            name: sys.name.clone(),
            field: FieldKind::Complex,
            params: sys
                .params
                .iter()
                .map(|(k, v)| (k.clone(), EntryJson::from_c64(*v)))
                .collect(),
            symbols: sys
                .symbols()
                .map(|s| {
                    let m = Mat2Json::from_complex(sys.matrix(s).expect("listed symbol"));
                    SymbolJson {
                        sym: s.to_string(),
                        m: m.m,
                    }
                })
                .collect(),
        }
    }
}

/// Flat report emitted by the approximation commands. Timings are included
/// only on request so that identical runs produce byte-identical JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub word: String,
    pub word_length: u64,
    pub error: f64,
    pub log_scale: f64,
    pub phase: EntryJson,
    pub achieved: Mat2Json,
    pub target: Mat2Json,
    pub target_kind: &'static str,
    pub depths: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ReportJson {
    pub fn from_real(r: &ApproxReport<f64>, timings: bool) -> Self {
        let (target, kind) = match &r.target {
            TargetKind::Projective(p) => (Mat2Json::from_real(p.rep()), "projective"),
            TargetKind::Matrix(m) => (Mat2Json::from_real(m), "matrix"),
        };
        ReportJson {
            word: r.word.to_string(),
            word_length: r.word.total_length(),
            error: r.error,
            log_scale: r.achieved.log_scale,
            phase: EntryJson::Real(r.achieved.phase),
            achieved: Mat2Json::from_real(r.achieved.projective.rep()),
            target,
            target_kind: kind,
            depths: r.depths.clone(),
            elapsed_ms: timings.then(|| r.elapsed.as_millis() as u64),
        }
    }

    pub fn from_complex(r: &ApproxReport<Complex64>, timings: bool) -> Self {
        let (target, kind) = match &r.target {
            TargetKind::Projective(p) => (Mat2Json::from_complex(p.rep()), "projective"),
            TargetKind::Matrix(m) => (Mat2Json::from_complex(m), "matrix"),
        };
        ReportJson {
            word: r.word.to_string(),
            word_length: r.word.total_length(),
            error: r.error,
            log_scale: r.achieved.log_scale,
            phase: EntryJson::from_c64(r.achieved.phase),
            achieved: Mat2Json::from_complex(r.achieved.projective.rep()),
            target,
            target_kind: kind,
            depths: r.depths.clone(),
            elapsed_ms: timings.then(|| r.elapsed.as_millis() as u64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = Mat2::new(1.0, 0.5, 0.0, -2.0);
        let j = Mat2Json::from_real(&m);
        let s = serde_json::to_string(&j).unwrap();
        let back: Mat2Json = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_real().unwrap(), m);
    }

    #[test]
    fn bare_array_parses_as_real() {
        let j = parse_matrix("[[1,1],[0,1]]").unwrap();
        assert_eq!(j.field, FieldKind::Real);
        assert_eq!(j.to_real().unwrap(), Mat2::new(1.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn complex_entries_parse() {
        let j = parse_matrix(r#"{"field":"complex","m":[[[0,1],[1,0]],[[0,0],[1,0]]]}"#).unwrap();
        let m = j.to_complex();
        assert_eq!(m.m11, Complex64::new(0.0, 1.0));
    }
}
