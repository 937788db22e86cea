//! Python bindings.  Systems and representations cross the boundary as the
//! same JSON documents the `lore` tool reads and writes.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use laurent_ore::io::{parse_representation, parse_system, representation_to_json, system_to_json, InputKind, SystemInput};
use laurent_ore::system::{iso_test, verify_group, IntegrableSystem, Representation as CoreRepresentation};
use laurent_ore::{solver, Error, SolverConfig};

create_exception!(laurent_ore, LaurentOreError, PyException);
create_exception!(laurent_ore, ParseError, LaurentOreError);
create_exception!(laurent_ore, NotIntegrableError, LaurentOreError);
create_exception!(laurent_ore, IncompleteError, LaurentOreError);
create_exception!(laurent_ore, VerificationError, LaurentOreError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => ParseError::new_err(msg),
        Error::NotIntegrable { .. } => NotIntegrableError::new_err(msg),
        Error::InternalInconsistency(_) => VerificationError::new_err(msg),
        e if e.is_incompleteness() => IncompleteError::new_err(msg),
        _ => LaurentOreError::new_err(msg),
    }
}

/// A fully integrable system read from its JSON document.
#[pyclass(module = "laurent_ore", frozen)]
struct System {
    input: SystemInput,
    sys: IntegrableSystem,
}

#[pymethods]
impl System {
    #[new]
    fn new(document: &str) -> PyResult<Self> {
        let input = parse_system(document).map_err(to_py)?;
        let sys = input.integrable_system().map_err(to_py)?;
        Ok(System { input, sys })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.input.vars.names().to_vec()
    }

    #[getter]
    fn maps(&self) -> Vec<String> {
        self.input.delta.maps().iter().map(|m| m.name().to_string()).collect()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.sys.dim()
    }

    #[pyo3(signature = (order=None, max_degree=None, max_dispersion=None, pivot=None))]
    fn solve(
        &self,
        py: Python<'_>,
        order: Option<Vec<String>>,
        max_degree: Option<usize>,
        max_dispersion: Option<usize>,
        pivot: Option<usize>,
    ) -> PyResult<Representation> {
        let mut cfg = SolverConfig {
            order,
            ..SolverConfig::default()
        };
        if let Some(d) = max_degree {
            cfg.max_degree = d;
        }
        if let Some(d) = max_dispersion {
            cfg.max_dispersion = d;
        }
        if let Some(p) = pivot {
            if p == 0 {
                return Err(ParseError::new_err("pivot is 1-based"));
            }
            cfg.pivot = p - 1;
        }
        let rep = py.detach(|| solver::solve_recursive(&self.sys, &cfg)).map_err(to_py)?;
        Ok(Representation {
            json: representation_to_json(&rep, &self.input.vars, &self.input.delta),
            rep,
        })
    }

    /// Per group, whether it passes the exact check.
    fn verify(&self, representation: &str) -> PyResult<Vec<bool>> {
        let rep = parse_representation(representation, &self.input.vars, self.sys.dim()).map_err(to_py)?;
        rep.groups
            .iter()
            .map(|g| verify_group(&self.sys, g).map(|c| c.passed()).map_err(to_py))
            .collect()
    }

    /// A witness `r` when the submodules with eigenvalues `first` and
    /// `second` are isomorphic, else `None`.
    fn iso(&self, first: BTreeMap<String, String>, second: BTreeMap<String, String>) -> PyResult<Option<String>> {
        let parse = |m: BTreeMap<String, String>| {
            m.into_iter()
                .map(|(k, v)| Ok((k, self.input.vars.parse(&v).map_err(to_py)?)))
                .collect::<PyResult<Vec<_>>>()
        };
        let r = iso_test(&self.input.delta, &parse(first)?, &parse(second)?).map_err(to_py)?;
        Ok(r.map(|r| self.input.vars.show(&r)))
    }

    /// The document of the same system in associated form.
    fn associated(&self) -> String {
        system_to_json(
            &self.input.vars,
            &self.input.parameters,
            self.sys.delta(),
            self.sys.matrices(),
            InputKind::Associated,
        )
    }
}

#[pyclass(module = "laurent_ore", frozen)]
struct Representation {
    rep: CoreRepresentation,
    json: String,
}

#[pymethods]
impl Representation {
    fn __len__(&self) -> usize {
        self.rep.len()
    }

    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("<Representation with {} group(s)>", self.rep.len())
    }
}

#[pymodule]
#[pyo3(name = "laurent_ore")]
fn laurent_ore_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<System>()?;
    m.add_class::<Representation>()?;
    m.add("LaurentOreError", py.get_type::<LaurentOreError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("NotIntegrableError", py.get_type::<NotIntegrableError>())?;
    m.add("IncompleteError", py.get_type::<IncompleteError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    Ok(())
}
