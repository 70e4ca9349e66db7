//! Python bindings. Errors surface as `ValueError`; groups, singularities
//! and constructions are passed as their text forms.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cremona::constructions::{self, added_singularities, audit_self_intersection};
use cremona::curves;
use cremona::document::{self, AuditDocument, CurveDocument, MeridianReport, PairDocument};
use cremona::extensions::{self, ExtensionContext, Property, Tri};
use cremona::fpgroup;
use cremona::zariski;
use cremona::{AbelianInvariants, ConstructionSpec, CurveDatum, GroupDescriptor, SingularityMultiset};

fn err(e: cremona::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = cremona::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

/// A plane curve with its group descriptor, property flags and history.
#[pyclass(name = "Curve", module = "cremona", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCurve(CurveDatum);

#[pymethods]
impl PyCurve {
    #[staticmethod]
    fn smooth(degree: u64) -> PyResult<Self> {
        curves::seed_smooth(degree).map(PyCurve).map_err(err)
    }

    #[staticmethod]
    fn pencil(lines: u64) -> PyResult<Self> {
        curves::seed_pencil(lines).map(PyCurve).map_err(err)
    }

    #[staticmethod]
    fn generic_lines(lines: u64) -> PyResult<Self> {
        curves::seed_generic_lines(lines).map(PyCurve).map_err(err)
    }

    /// `asserted` maps property names to `"true"`, `"false"` or `"unknown"`.
    #[staticmethod]
    #[pyo3(signature = (components, singularities, group, asserted = None))]
    fn custom(
        components: Vec<BigUint>,
        singularities: Vec<String>,
        group: &str,
        asserted: Option<BTreeMap<String, String>>,
    ) -> PyResult<Self> {
        let sings = singularities
            .iter()
            .map(|s| parse(s))
            .collect::<PyResult<SingularityMultiset>>()?;
        let asserted = asserted
            .unwrap_or_default()
            .iter()
            .map(|(k, v)| Ok((parse::<Property>(k)?, parse::<Tri>(v)?)))
            .collect::<PyResult<Vec<_>>>()?;
        CurveDatum::custom(components, sings, parse(group)?, &asserted)
            .map(PyCurve)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        document::from_json::<CurveDocument>(text)
            .map(|d| PyCurve(d.curve))
            .map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        document::to_json(&CurveDocument::new(self.0.clone())).map_err(err)
    }

    fn apply(&self, spec: &str) -> PyResult<Self> {
        constructions::apply(&self.0, &parse(spec)?).map(PyCurve).map_err(err)
    }

    fn assert_property(&self, name: &str, value: &str) -> PyResult<Self> {
        self.0
            .clone()
            .assert_property(parse(name)?, parse(value)?)
            .map(PyCurve)
            .map_err(err)
    }

    #[getter]
    fn degree(&self) -> BigUint {
        self.0.degree()
    }

    #[getter]
    fn component_degrees(&self) -> Vec<BigUint> {
        self.0.component_degrees().to_vec()
    }

    #[getter]
    fn irreducible(&self) -> bool {
        self.0.irreducible()
    }

    #[getter]
    fn group(&self) -> String {
        self.0.group().to_string()
    }

    #[getter]
    fn family(&self) -> Option<String> {
        self.0.family().map(ToString::to_string)
    }

    #[getter]
    fn singularities(&self) -> Vec<String> {
        strings(self.0.singularities().iter())
    }

    #[getter]
    fn props(&self) -> BTreeMap<String, String> {
        self.0
            .props()
            .iter()
            .map(|(p, v)| (p.name().to_string(), v.to_string()))
            .collect()
    }

    /// `(free_rank, torsion)` of the first homology of the complement.
    #[getter]
    fn h1(&self) -> (usize, Vec<BigUint>) {
        invariants(self.0.h1())
    }

    fn __repr__(&self) -> String {
        format!("Curve(degree={}, group={})", self.0.degree(), self.0.group())
    }
}

fn invariants(a: AbelianInvariants) -> (usize, Vec<BigUint>) {
    (a.free_rank, a.torsion)
}

/// A parsed construction such as `general(1,2)`.
#[pyclass(name = "Construction", module = "cremona", frozen)]
struct PyConstruction(ConstructionSpec);

#[pymethods]
impl PyConstruction {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyConstruction)
    }

    #[getter]
    fn kernel_order(&self) -> BigUint {
        self.0.kernel_order()
    }

    #[getter]
    fn steps(&self) -> BigUint {
        self.0.steps()
    }

    fn degree_after(&self, degree: BigUint) -> BigUint {
        constructions::degree_after(&degree, &self.0)
    }

    fn added_singularities(&self, degree: BigUint) -> PyResult<Vec<String>> {
        added_singularities(&degree, &self.0)
            .map(|m| strings(m.iter()))
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Construction('{}')", self.0)
    }
}

/// Two curves with equal combinatorics and distinguished groups.
#[pyclass(name = "ZariskiPair", module = "cremona", frozen)]
struct PyZariskiPair(zariski::ZariskiPairRecord);

#[pymethods]
impl PyZariskiPair {
    #[new]
    fn new(left: &PyCurve, right: &PyCurve) -> Self {
        PyZariskiPair(zariski::ZariskiPairRecord::seed(left.0.clone(), right.0.clone()))
    }

    fn lift(&self, spec: &str) -> PyResult<Self> {
        zariski::lift_pair(&self.0, &parse(spec)?)
            .map(PyZariskiPair)
            .map_err(err)
    }

    fn enumerate(&self, bound: u64) -> PyResult<Vec<Self>> {
        zariski::enumerate_family(&self.0, bound)
            .map(|v| v.into_iter().map(PyZariskiPair).collect())
            .map_err(err)
    }

    #[getter]
    fn left(&self) -> PyCurve {
        PyCurve(self.0.left().clone())
    }

    #[getter]
    fn right(&self) -> PyCurve {
        PyCurve(self.0.right().clone())
    }

    #[getter]
    fn combinatorics_equal(&self) -> bool {
        self.0.combinatorics_equal()
    }

    #[getter]
    fn generation(&self) -> u64 {
        self.0.generation()
    }

    #[getter]
    fn lineage(&self) -> Vec<String> {
        strings(self.0.lineage())
    }

    fn to_json(&self) -> PyResult<String> {
        document::to_json(&PairDocument::new(vec![self.0.clone()])).map_err(err)
    }
}

/// Self-intersection audit as a JSON document.
#[pyfunction]
fn audit(degree: BigUint, spec: &str) -> PyResult<String> {
    let report = audit_self_intersection(&degree, &parse(spec)?).map_err(err)?;
    document::to_json(&AuditDocument::new(report)).map_err(err)
}

/// Meridian replay, as JSON or as the line-oriented trace.
#[pyfunction]
#[pyo3(signature = (spec, text = false))]
fn meridians(spec: &str, text: bool) -> PyResult<String> {
    let report = MeridianReport::of_spec(&parse(spec)?).map_err(err)?;
    if text {
        Ok(report.to_text())
    } else {
        document::to_json(&report).map_err(err)
    }
}

#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    Ok(fpgroup::smith_normal_form(&fpgroup::IntMatrix::from_rows(&rows)))
}

/// `(free_rank, torsion)` of a presentation given by generator names and
/// relator words.
#[pyfunction]
fn abelianization(generators: Vec<String>, relators: Vec<String>) -> PyResult<(usize, Vec<BigUint>)> {
    let words = relators.iter().map(|r| parse(r)).collect::<PyResult<Vec<_>>>()?;
    let p = fpgroup::Presentation::new(generators, words).map_err(err)?;
    Ok(invariants(fpgroup::abelianization(&p)))
}

#[pyfunction]
fn reduce_word(word: &str) -> PyResult<String> {
    Ok(parse::<fpgroup::Word>(word)?.free_reduce().to_string())
}

#[pyfunction]
fn cyclic_quotient_order(ns: Vec<u64>) -> PyResult<BigUint> {
    fpgroup::cyclic_quotient_order(&ns).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (group, n, irreducible = true))]
fn central_extend(group: &str, n: BigUint, irreducible: bool) -> PyResult<String> {
    let g: GroupDescriptor = parse(group)?;
    extensions::central_extend(&g, &n, ExtensionContext { irreducible, family: None })
        .map(|g| g.to_string())
        .map_err(err)
}

/// Splitting verdict for an extension by `Z/n` of a group with the given
/// first homology and `components` irreducible components.
#[pyfunction]
fn split_test(free_rank: usize, torsion: Vec<BigUint>, components: usize, n: BigUint) -> String {
    let h1 = AbelianInvariants { free_rank, torsion };
    extensions::split_test(&h1, components, &n).to_string()
}

#[pymodule]
#[pyo3(name = "cremona")]
fn cremona_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurve>()?;
    m.add_class::<PyConstruction>()?;
    m.add_class::<PyZariskiPair>()?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(meridians, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(abelianization, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_word, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_quotient_order, m)?)?;
    m.add_function(wrap_pyfunction!(central_extend, m)?)?;
    m.add_function(wrap_pyfunction!(split_test, m)?)?;
    m.add("SCHEMA_VERSION", document::SCHEMA_VERSION)?;
    Ok(())
}
