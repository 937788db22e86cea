//! JSON formats for systems and representations.
//!
//! A system document:
//!
//! ```json
//! {"variables": ["x", "n"], "parameters": ["m"],
//!  "maps": [{"name": "s", "kind": "shift", "action": {"n": "1"}}],
//!  "equations": [{"map": "s", "matrix": [["n", "0"], ["0", "x"]]}],
//!  "input_kind": "associated"}
//! ```
//!
//! `input_kind` is `associated` (the matrices `B` of `phi(Z) = B Z`) or
//! `structure` (the action of the operators on a module basis).  A
//! representation document is `{"groups": [{"certificate": {map: value},
//! "vectors": [[...], ...], "display": "..."}]}` with one inner list per
//! vector.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::delta::{DeltaMap, DeltaSet, MapKind};
use crate::display::describe;
use crate::error::{Error, Result};
use crate::linalg::MatrixF;
use crate::ratfunc::{parse_rational, Q, RatFunc, Vars};
use crate::system::{Certificate, HyperexpGroup, IntegrableSystem, Representation, StructureMatrices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    #[default]
    Associated,
    Structure,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    name: String,
    kind: String,
    action: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationDoc {
    map: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    variables: Vec<String>,
    #[serde(default)]
    parameters: Vec<String>,
    maps: Vec<MapDoc>,
    equations: Vec<EquationDoc>,
    #[serde(default)]
    input_kind: InputKind,
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    certificate: Map<String, Value>,
    vectors: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    display: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationDoc {
    groups: Vec<GroupDoc>,
}

/// A parsed system document, before any interpretation of the matrices.
#[derive(Clone, Debug)]
pub struct SystemInput {
    pub kind: InputKind,
    pub vars: Vars,
    /// The names among `vars` that no map moves.
    pub parameters: Vec<String>,
    pub delta: DeltaSet,
    pub matrices: Vec<MatrixF>,
}

impl SystemInput {
    /// The first-order system, converting structure matrices if needed.
    pub fn integrable_system(&self) -> Result<IntegrableSystem> {
        match self.kind {
            InputKind::Associated => {
                IntegrableSystem::new(self.vars.clone(), self.delta.clone(), self.matrices.clone())
            }
            InputKind::Structure => self.structure()?.associated_system(),
        }
    }

    pub fn structure(&self) -> Result<StructureMatrices> {
        if self.kind != InputKind::Structure {
            return Err(Error::InvalidInput("the document holds an associated system".into()));
        }
        StructureMatrices::new(self.vars.clone(), self.delta.clone(), self.matrices.clone())
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    }
}

fn in_context(e: Error, what: &str) -> Error {
    match e {
        Error::Parse { message, line, column } => Error::Parse {
            message: format!("{what}: {message}"),
            line,
            column,
        },
        other => other,
    }
}

fn parse_kind(s: &str) -> Result<MapKind> {
    match s {
        "derivation" => Ok(MapKind::Derivation),
        "shift" => Ok(MapKind::Shift),
        _ => Err(Error::InvalidInput(format!("unknown map kind '{s}'"))),
    }
}

pub fn parse_system(text: &str) -> Result<SystemInput> {
    let doc: SystemDoc = serde_json::from_str(text).map_err(json_error)?;
    let mut names = doc.variables.clone();
    names.extend(doc.parameters.iter().cloned());
    let vars = Vars::new(&names)?;
    let mut maps = Vec::with_capacity(doc.maps.len());
    for m in &doc.maps {
        let mut pairs: Vec<(&str, Q)> = Vec::new();
        for (v, c) in &m.action {
            if doc.parameters.contains(v) {
                return Err(Error::InvalidInput(format!("map '{}' acts on parameter '{v}'", m.name)));
            }
            let c = parse_rational(c).map_err(|e| in_context(e, &format!("action of '{}' on '{v}'", m.name)))?;
            pairs.push((v.as_str(), c));
        }
        maps.push(DeltaMap::from_pairs(&m.name, parse_kind(&m.kind)?, &vars, &pairs)?);
    }
    let delta = DeltaSet::new(vars.len(), maps)?;
    let mut matrices: Vec<Option<MatrixF>> = vec![None; delta.len()];
    for eq in &doc.equations {
        let i = delta
            .position(&eq.map)
            .ok_or_else(|| Error::InvalidInput(format!("equation for unknown map '{}'", eq.map)))?;
        if matrices[i].is_some() {
            return Err(Error::InvalidInput(format!("two equations for map '{}'", eq.map)));
        }
        matrices[i] = Some(parse_matrix(&eq.matrix, &vars, &format!("matrix of '{}'", eq.map))?);
    }
    let matrices = matrices
        .into_iter()
        .zip(delta.maps())
        .map(|(m, d)| m.ok_or_else(|| Error::InvalidInput(format!("no equation for map '{}'", d.name()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SystemInput {
        kind: doc.input_kind,
        vars,
        parameters: doc.parameters,
        delta,
        matrices,
    })
}

fn parse_matrix(rows: &[Vec<String>], vars: &Vars, what: &str) -> Result<MatrixF> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput(format!("{what} is not square")));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| vars.parse(s).map_err(|e| in_context(e, &format!("{what}, entry ({}, {})", i + 1, j + 1))))
            .collect::<Result<Vec<RatFunc>>>()?;
        out.push(parsed);
    }
    Ok(MatrixF::from_rows(out, vars.len()))
}

fn matrix_rows(m: &MatrixF, vars: &Vars) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| vars.show(x)).collect()).collect()
}

/// A system document for `matrices`.
pub fn system_to_json(vars: &Vars, parameters: &[String], delta: &DeltaSet, matrices: &[MatrixF], kind: InputKind) -> String {
    let variables: Vec<String> = vars.names().iter().filter(|n| !parameters.contains(n)).cloned().collect();
    let maps = delta
        .maps()
        .iter()
        .map(|m| MapDoc {
            name: m.name().to_string(),
            kind: m.kind().as_str().to_string(),
            action: m
                .action()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (vars.names()[i].clone(), c.to_string()))
                .collect(),
        })
        .collect();
    let equations = delta
        .maps()
        .iter()
        .zip(matrices)
        .map(|(m, b)| EquationDoc {
            map: m.name().to_string(),
            matrix: matrix_rows(b, vars),
        })
        .collect();
    let doc = SystemDoc {
        variables,
        parameters: parameters.to_vec(),
        maps,
        equations,
        input_kind: kind,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// The representation as a JSON value; `display` adds readable labels.
pub fn representation_to_value(rep: &Representation, vars: &Vars, delta: &DeltaSet, display: bool) -> Value {
    let groups = rep
        .groups
        .iter()
        .map(|g| GroupDoc {
            certificate: g
                .cert
                .entries()
                .iter()
                .map(|(n, v)| (n.clone(), Value::String(vars.show(v))))
                .collect(),
            vectors: g.vectors.columns().iter().map(|c| c.iter().map(|x| vars.show(x)).collect()).collect(),
            display: display.then(|| describe(vars, delta, &g.cert)),
        })
        .collect();
    serde_json::to_value(RepresentationDoc { groups }).expect("serializable")
}

pub fn representation_to_json(rep: &Representation, vars: &Vars, delta: &DeltaSet) -> String {
    serde_json::to_string_pretty(&representation_to_value(rep, vars, delta, true)).expect("serializable")
}

/// Read a representation document against the variables of a system.
pub fn parse_representation(text: &str, vars: &Vars, dim: usize) -> Result<Representation> {
    let doc: RepresentationDoc = serde_json::from_str(text).map_err(json_error)?;
    let mut groups = Vec::with_capacity(doc.groups.len());
    for (gi, g) in doc.groups.iter().enumerate() {
        let mut pairs = Vec::new();
        for (name, v) in &g.certificate {
            let Value::String(s) = v else {
                return Err(Error::InvalidInput(format!("group {}: certificate values must be strings", gi + 1)));
            };
            let f = vars
                .parse(s)
                .map_err(|e| in_context(e, &format!("group {}, certificate of '{name}'", gi + 1)))?;
            pairs.push((name.clone(), f));
        }
        let mut cols = Vec::with_capacity(g.vectors.len());
        for (j, col) in g.vectors.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "group {}, vector {}: expected {dim} entries",
                    gi + 1,
                    j + 1
                )));
            }
            let parsed = col
                .iter()
                .map(|s| vars.parse(s).map_err(|e| in_context(e, &format!("group {}, vector {}", gi + 1, j + 1))))
                .collect::<Result<Vec<_>>>()?;
            cols.push(parsed);
        }
        groups.push(HyperexpGroup {
            cert: Certificate::from_pairs(pairs),
            vectors: MatrixF::from_cols(&cols, dim, vars.len()),
        });
    }
    Ok(Representation { groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{"variables": ["x", "n"], "parameters": ["m"],
        "maps": [{"name": "s", "kind": "shift", "action": {"n": "1"}}],
        "equations": [{"map": "s", "matrix": [["n", "0"], ["0", "x*m"]]}]}"#;

    #[test]
    fn round_trip() {
        let s = parse_system(DOC).unwrap();
        assert_eq!(s.kind, InputKind::Associated);
        let text = system_to_json(&s.vars, &s.parameters, &s.delta, &s.matrices, s.kind);
        let again = parse_system(&text).unwrap();
        assert_eq!(again.matrices, s.matrices);
        assert_eq!(again.delta, s.delta);
    }

    #[test]
    fn errors_are_located() {
        let bad = DOC.replace("x*m", "x*(m");
        match parse_system(&bad) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("entry (2, 2)"), "{message}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_system("{"), Err(Error::Parse { .. })));
        let bad = DOC.replace("\"n\": \"1\"", "\"m\": \"1\"");
        assert!(matches!(parse_system(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn representation_round_trip() {
        let s = parse_system(DOC).unwrap();
        let sys = s.integrable_system().unwrap();
        let rep = crate::solver::solve_recursive(&sys, &crate::SolverConfig::default()).unwrap();
        let text = representation_to_json(&rep, &s.vars, &s.delta);
        let back = parse_representation(&text, &s.vars, 2).unwrap();
        assert_eq!(back, rep);
    }
}
