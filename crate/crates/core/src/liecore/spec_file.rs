use super::group::{Family, MatrixGroup};
use super::lie::{killing_form, InvariantPairing, LieData};
use crate::exactalg::{mat_mul, Mat, Rat, Rationals};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const GROUP_SCHEMA: &str = "shifted-cartan/group.v1";

/// Group/pairing specification file. Rational entries are strings like
/// "3/4" so nothing is lost to floating point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpecFile {
    pub schema: String,
    pub family: String,
    pub size: usize,
    pub pairing: PairingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PairingSpec {
    Trace,
    Killing,
    Gram { gram: Vec<Vec<String>> },
}

#[derive(Debug)]
pub enum SpecFileError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Schema(String),
    BadRational(String),
    UnknownFamily(String),
    StructureConstantMismatch,
}

impl fmt::Display for SpecFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFileError::Io(e) => write!(f, "io: {e}"),
            SpecFileError::Json(e) => write!(f, "json: {e}"),
            SpecFileError::Schema(s) => write!(f, "unsupported schema '{s}', expected {GROUP_SCHEMA}"),
            SpecFileError::BadRational(s) => write!(f, "cannot parse rational '{s}'"),
            SpecFileError::UnknownFamily(s) => write!(f, "unknown family '{s}'"),
            SpecFileError::StructureConstantMismatch => {
                write!(f, "supplied structure constants disagree with the matrix realization")
            }
        }
    }
}

impl std::error::Error for SpecFileError {}

fn parse_rat(s: &str) -> Result<Rat, SpecFileError> {
    Rat::from_str(s.trim()).map_err(|_| SpecFileError::BadRational(s.to_string()))
}

/// Trace-form gram matrix tr(b_i·b_j) of the matrix realization.
pub fn trace_gram(group: &MatrixGroup) -> Mat<Rat> {
    let q = Rationals;
    let d = group.dim();
    Mat::from_fn(d, d, |i, j| {
        let prod = mat_mul(&q, &group.basis_mats[i], &group.basis_mats[j]);
        (0..group.n).map(|k| prod.at(k, k).clone()).fold(Rat::zero(), |a, b| a + b)
    })
}

pub fn parse_group_spec(text: &str) -> Result<(MatrixGroup, InvariantPairing), SpecFileError> {
    let file: GroupSpecFile = serde_json::from_str(text).map_err(SpecFileError::Json)?;
    if file.schema != GROUP_SCHEMA {
        return Err(SpecFileError::Schema(file.schema));
    }
    let family = match file.family.as_str() {
        "special-linear" => Family::SpecialLinear(file.size),
        "special-orthogonal" => Family::SpecialOrthogonal(file.size),
        "symplectic" => Family::Symplectic(file.size),
        "torus" => Family::Torus(file.size),
        other => return Err(SpecFileError::UnknownFamily(other.to_string())),
    };
    let group = MatrixGroup::from_family(&family);
    if let Some(sc) = &file.structure_constants {
        let parsed = parse_structure_constants(sc, group.dim())?;
        if parsed != group.lie.c {
            return Err(SpecFileError::StructureConstantMismatch);
        }
    }
    let gram = match &file.pairing {
        PairingSpec::Trace => trace_gram(&group),
        PairingSpec::Killing => killing_form(&group.lie),
        PairingSpec::Gram { gram } => {
            let d = group.dim();
            let mut m = crate::exactalg::mat_zero(&Rationals, d, d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, parse_rat(&gram[i][j])?);
                }
            }
            m
        }
    };
    let pairing = InvariantPairing::new(group.lie.clone(), gram);
    Ok((group, pairing))
}

fn parse_structure_constants(
    sc: &[Vec<Vec<String>>],
    dim: usize,
) -> Result<Vec<Vec<Vec<Rat>>>, SpecFileError> {
    let mut out = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                out[i][j][k] = parse_rat(&sc[i][j][k])?;
            }
        }
    }
    Ok(out)
}

pub fn load_group_spec(path: &std::path::Path) -> Result<(MatrixGroup, InvariantPairing), SpecFileError> {
    let text = std::fs::read_to_string(path).map_err(SpecFileError::Io)?;
    parse_group_spec(&text)
}

/// A LieData wrapper check usable from the CLI: reports violations.
pub fn lie_verdict_summary(l: &LieData) -> String {
    let v = l.check();
    if v.is_valid() {
        "valid".to_string()
    } else {
        format!(
            "invalid: {} antisymmetry violation(s), {} Jacobi violation(s)",
            v.antisymmetry_violations.len(),
            v.jacobi_violations.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_trace_spec() {
        let text = r#"{"schema":"shifted-cartan/group.v1","family":"special-linear","size":2,"pairing":{"kind":"trace"}}"#;
        let (g, p) = parse_group_spec(text).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(p.check().all());
        // trace form on sl2: tr(h²) = 2, tr(ef) = 1
        assert_eq!(p.gram.at(0, 0), &crate::exactalg::rat_int(2));
        assert_eq!(p.gram.at(1, 2), &crate::exactalg::rat_int(1));
    }

    #[test]
    fn parse_gram_spec_and_errors() {
        let text = r#"{"schema":"shifted-cartan/group.v1","family":"torus","size":1,"pairing":{"kind":"gram","gram":[["1"]]}}"#;
        let (g, p) = parse_group_spec(text).unwrap();
        assert_eq!(g.dim(), 1);
        assert!(p.check().all());

        let bad = r#"{"schema":"nope","family":"torus","size":1,"pairing":{"kind":"trace"}}"#;
        assert!(matches!(parse_group_spec(bad), Err(SpecFileError::Schema(_))));
        let bad = r#"{"schema":"shifted-cartan/group.v1","family":"sporadic","size":1,"pairing":{"kind":"trace"}}"#;
        assert!(matches!(parse_group_spec(bad), Err(SpecFileError::UnknownFamily(_))));
        assert!(parse_group_spec("not json at all").is_err());
    }
}
