//! Python bindings: the `goodred` extension module.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use goodred_core::criterion::{self, FieldProfile, Status};
use goodred_core::dvfclassify::{self, ExtensionDescriptor};
use goodred_core::examples::{self, ExamplesError, SearchParams};
use goodred_core::gf::{FieldError, GaloisField};
use goodred_core::groups::{self, FamilySpec, GroupError, Perm, DEFAULT_ENUMERATION_CAP};
use goodred_core::kummer::{self, BranchDivisor, BranchPoint};
use goodred_core::localfield::{self, BreakSequence, LaurentRepresentative};
use goodred_core::rational::{self, Rational};
use goodred_core::vancycles;

create_exception!(goodred, CapExceeded, PyRuntimeError, "An enumeration cap or integer width was exceeded.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn group_error(e: GroupError) -> PyErr {
    match e {
        GroupError::CapExceeded { .. } => CapExceeded::new_err(e.to_string()),
        GroupError::Field(FieldError::TooLarge { .. }) => CapExceeded::new_err(e.to_string()),
        e => value_error(e),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(v).map_err(value_error)?)
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    rational::parse(s).map_err(value_error)
}

/// A permutation group on `{0, …, degree − 1}` given by generators.
#[pyclass(module = "goodred", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PermutationGroup {
    inner: groups::PermutationGroup,
}

#[pymethods]
impl PermutationGroup {
    /// Generators are image lists or cycle-notation strings such as "(0 1 2)(3 4)".
    #[new]
    #[pyo3(signature = (degree, generators, label=None))]
    fn new(degree: usize, generators: Vec<Bound<'_, PyAny>>, label: Option<String>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| {
                if let Ok(s) = g.extract::<String>() {
                    Perm::from_cycles(degree, &s).map_err(group_error)
                } else {
                    let images: Vec<u32> = g.extract()?;
                    Perm::from_images(images).map_err(group_error)
                }
            })
            .collect::<PyResult<Vec<_>>>()?;
        let mut inner = groups::PermutationGroup::new(degree, gens).map_err(group_error)?;
        if let Some(l) = label {
            inner = inner.with_label(l);
        }
        Ok(PermutationGroup { inner })
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PermutationGroup {
            inner: groups::PermutationGroup::cyclic(n),
        }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PermutationGroup {
            inner: groups::PermutationGroup::symmetric(n),
        }
    }

    #[staticmethod]
    fn dihedral(n: usize) -> Self {
        PermutationGroup {
            inner: groups::PermutationGroup::dihedral(n),
        }
    }

    /// `PGL_2(q)` acting on the `q + 1` points of the projective line.
    #[staticmethod]
    fn pgl2(q: u64) -> PyResult<Self> {
        let inner = groups::PermutationGroup::pgl2(q).map_err(group_error)?;
        Ok(PermutationGroup { inner })
    }

    /// `Z/p^s ⋊ Z/m` as affine maps of `Z/p^s`.
    #[staticmethod]
    fn semidirect(p: u64, s: u32, m: u64) -> PyResult<Self> {
        let inner = groups::PermutationGroup::semidirect(p, s, m).map_err(group_error)?;
        Ok(PermutationGroup { inner })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.to_string()).collect()
    }

    #[pyo3(signature = (cap=None))]
    fn order(&self, cap: Option<usize>) -> PyResult<usize> {
        let elements = groups::enumerate_elements(&self.inner, cap.unwrap_or(DEFAULT_ENUMERATION_CAP))
            .map_err(group_error)?;
        Ok(elements.len())
    }

    #[pyo3(signature = (p, cap=None))]
    fn profile(&self, p: u64, cap: Option<usize>) -> PyResult<GroupProfile> {
        let inner = groups::profile(&self.inner, p, cap.unwrap_or(DEFAULT_ENUMERATION_CAP))
            .map_err(group_error)?;
        Ok(GroupProfile { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "PermutationGroup(degree={}, generators={:?})",
            self.inner.degree(),
            self.generators()
        )
    }
}

/// Invariants of a group relative to a prime `p`.
#[pyclass(module = "goodred", frozen, skip_from_py_object)]
#[derive(Clone)]
struct GroupProfile {
    inner: groups::GroupProfile,
}

#[pymethods]
impl GroupProfile {
    #[new]
    #[pyo3(signature = (order, p, p_valuation, sylow_cyclic, m_invariant, order_p_class_count, center_exponent))]
    fn new(
        order: BigUint,
        p: u64,
        p_valuation: u32,
        sylow_cyclic: bool,
        m_invariant: Option<u64>,
        order_p_class_count: u64,
        center_exponent: u64,
    ) -> Self {
        GroupProfile {
            inner: groups::GroupProfile {
                order,
                p,
                p_valuation,
                sylow_cyclic,
                m_invariant,
                order_p_class_count,
                center_exponent,
            },
        }
    }

    #[getter]
    fn order(&self) -> BigUint {
        self.inner.order.clone()
    }
    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }
    #[getter]
    fn p_valuation(&self) -> u32 {
        self.inner.p_valuation
    }
    #[getter]
    fn sylow_cyclic(&self) -> bool {
        self.inner.sylow_cyclic
    }
    #[getter]
    fn m_invariant(&self) -> Option<u64> {
        self.inner.m_invariant
    }
    #[getter]
    fn order_p_class_count(&self) -> u64 {
        self.inner.order_p_class_count
    }
    #[getter]
    fn center_exponent(&self) -> u64 {
        self.inner.center_exponent
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialize(py, &self.inner)
    }

    fn __eq__(&self, other: &GroupProfile) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "GroupProfile(order={}, p={}, p_valuation={}, sylow_cyclic={}, m_invariant={:?}, order_p_class_count={}, center_exponent={})",
            self.inner.order,
            self.inner.p,
            self.inner.p_valuation,
            self.inner.sylow_cyclic,
            self.inner.m_invariant,
            self.inner.order_p_class_count,
            self.inner.center_exponent
        )
    }
}

#[pyclass(module = "goodred", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Verdict {
    inner: criterion::Verdict,
}

#[pymethods]
impl Verdict {
    /// `"PotentiallyGood"` or `"Inconclusive"`.
    #[getter]
    fn status(&self) -> &'static str {
        match self.inner.status {
            Status::PotentiallyGood => "PotentiallyGood",
            Status::Inconclusive => "Inconclusive",
        }
    }
    #[getter]
    fn tame_degree_divides(&self) -> Option<u64> {
        self.inner.tame_degree_divides
    }
    #[getter]
    fn good_reduction_outright(&self) -> bool {
        self.inner.good_reduction_outright
    }
    #[getter]
    fn reasons(&self) -> Vec<String> {
        self.inner.reasons.clone()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialize(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Verdict(status={:?}, tame_degree_divides={:?}, good_reduction_outright={})",
            self.status(),
            self.inner.tame_degree_divides,
            self.inner.good_reduction_outright
        )
    }
}

/// Closed-form profile of `family = "pgl"` (needs `m`, `q`) or `"semidirect"` (needs `m`, `s`).
#[pyfunction]
#[pyo3(signature = (family, p, m, q=None, s=1, cap=None))]
fn family_profile(family: &str, p: u64, m: u64, q: Option<u64>, s: u32, cap: Option<usize>) -> PyResult<GroupProfile> {
    let spec = match family {
        "pgl" => FamilySpec::Pgl {
            m,
            q: q.ok_or_else(|| value_error("the pgl family needs q"))?,
            p,
        },
        "semidirect" => FamilySpec::Semidirect { p, s, m },
        other => return Err(value_error(format!("unknown family {other:?}"))),
    };
    let inner = groups::family_profile(&spec, cap.unwrap_or(DEFAULT_ENUMERATION_CAP)).map_err(group_error)?;
    Ok(GroupProfile { inner })
}

#[pyfunction]
#[pyo3(signature = (profile, e=1, branching=None))]
fn decide(profile: &GroupProfile, e: u64, branching: Option<Vec<u64>>) -> PyResult<Verdict> {
    let field = FieldProfile::new(profile.inner.p, e).map_err(value_error)?;
    let inner = match branching {
        Some(indices) => criterion::decide_with_branching(&profile.inner, &field, &indices),
        None => criterion::decide(&profile.inner, &field),
    }
    .map_err(value_error)?;
    Ok(Verdict { inner })
}

/// Tail configurations as dicts `{"primitive": [...], "new": [...]}` of `"n/d"` strings.
#[pyfunction]
#[pyo3(signature = (r, m_g, n_prim, max_new=0))]
fn enumerate_tails<'py>(py: Python<'py>, r: u64, m_g: u64, n_prim: usize, max_new: usize) -> PyResult<Bound<'py, PyAny>> {
    let found = vancycles::enumerate(r, m_g, n_prim, max_new).map_err(value_error)?;
    let out: Vec<Value> = found
        .iter()
        .map(|c| {
            serde_json::json!({
                "primitive": c.primitive_invariants().map(rational::to_text).collect::<Vec<_>>(),
                "new": c.new_invariants().map(rational::to_text).collect::<Vec<_>>(),
                "fractional_sum": rational::to_text(&vancycles::fractional_sum(c)),
            })
        })
        .collect();
    to_py(py, &Value::Array(out))
}

/// Normalizes `points = [(residue, exponent), ...]` over `F_p` and tests for an m-th power.
#[pyfunction]
fn kummer_check<'py>(py: Python<'py>, m: u64, p: u64, points: Vec<(u64, i64)>) -> PyResult<Bound<'py, PyAny>> {
    let raw = BranchDivisor::new(
        m,
        p,
        1,
        points
            .into_iter()
            .map(|(x, a)| BranchPoint {
                residue: vec![x],
                exponent: a,
            })
            .collect(),
    )
    .map_err(value_error)?;
    let d = kummer::normalize(&raw).map_err(value_error)?;
    let test = kummer::mth_power_reduction_test(&d);
    let v = serde_json::json!({
        "exponents": d.exponents(),
        "multiplicative_type": kummer::is_multiplicative_type(&d),
        "is_mth_power": test.is_mth_power,
        "class_sums": test.class_sums.iter().map(|c| (c.residue[0], c.sum_mod_m)).collect::<Vec<_>>(),
    });
    to_py(py, &v)
}

/// Conductor of `y^p − y = f` with `terms` written `"e:c,..."` (coefficients as field encodings).
#[pyfunction]
#[pyo3(signature = (p, terms, field_degree=1))]
fn conductor<'py>(py: Python<'py>, p: u64, terms: &str, field_degree: u32) -> PyResult<Bound<'py, PyAny>> {
    let field = GaloisField::new(p, field_degree).map_err(|e| match e {
        FieldError::TooLarge { .. } => CapExceeded::new_err(e.to_string()),
        e => value_error(e),
    })?;
    let f = LaurentRepresentative::parse_terms(&field, terms).map_err(value_error)?;
    let c = localfield::as_conductor(&f, &field).map_err(value_error)?;
    let v = serde_json::json!({
        "conductor": c.conductor,
        "kind": c.kind,
        "reduced_terms": c.reduced.format_terms(),
    });
    to_py(py, &v)
}

fn breaks(lower_breaks: Vec<u64>, group_orders: Vec<u64>, tame_index: u64) -> PyResult<BreakSequence> {
    BreakSequence::with_tame_index(lower_breaks, group_orders, tame_index).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (lower_breaks, group_orders, u, tame_index=1))]
fn herbrand_phi(lower_breaks: Vec<u64>, group_orders: Vec<u64>, u: &str, tame_index: u64) -> PyResult<String> {
    let b = breaks(lower_breaks, group_orders, tame_index)?;
    let v = localfield::herbrand_phi(&b, parse_rational(u)?).map_err(value_error)?;
    Ok(rational::to_text(&v))
}

#[pyfunction]
#[pyo3(signature = (lower_breaks, group_orders, v, tame_index=1))]
fn herbrand_psi(lower_breaks: Vec<u64>, group_orders: Vec<u64>, v: &str, tame_index: u64) -> PyResult<String> {
    let b = breaks(lower_breaks, group_orders, tame_index)?;
    let u = localfield::herbrand_psi(&b, parse_rational(v)?).map_err(value_error)?;
    Ok(rational::to_text(&u))
}

#[pyfunction]
#[pyo3(signature = (lower_breaks, group_orders, tame_index=1))]
fn upper_jumps(lower_breaks: Vec<u64>, group_orders: Vec<u64>, tame_index: u64) -> PyResult<Vec<String>> {
    let b = breaks(lower_breaks, group_orders, tame_index)?;
    let jumps = localfield::upper_jumps(&b).map_err(value_error)?;
    Ok(jumps.iter().map(rational::to_text).collect())
}

/// Class name of a Kummer extension descriptor.
#[pyfunction]
#[pyo3(signature = (p, n, e_k, v_a, residue_is_pth_power, contains_zeta, uniformizer_index=1, residue_separable=None))]
#[allow(clippy::too_many_arguments)]
fn classify_dvf(
    p: u64,
    n: u32,
    e_k: u64,
    v_a: i64,
    residue_is_pth_power: bool,
    contains_zeta: bool,
    uniformizer_index: u64,
    residue_separable: Option<bool>,
) -> PyResult<String> {
    let d = ExtensionDescriptor {
        p,
        n,
        e_k,
        v_a,
        residue_is_pth_power,
        contains_zeta,
        uniformizer_index,
        residue_separable,
    };
    let class = dvfclassify::classify(&d).map_err(value_error)?;
    Ok(format!("{class:?}"))
}

#[pyfunction]
#[pyo3(signature = (m, p, q_max, n=1))]
fn search_examples<'py>(py: Python<'py>, m: u64, p: u64, q_max: u64, n: u32) -> PyResult<Bound<'py, PyAny>> {
    let records = examples::search(&SearchParams { m, n, p, q_max }).map_err(|e| match e {
        ExamplesError::Overflow { .. } | ExamplesError::Group(GroupError::CapExceeded { .. }) => {
            CapExceeded::new_err(e.to_string())
        }
        e => value_error(e),
    })?;
    serialize(py, &records)
}

#[pymodule(name = "goodred")]
fn goodred_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_class::<PermutationGroup>()?;
    m.add_class::<GroupProfile>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(family_profile, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tails, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_check, m)?)?;
    m.add_function(wrap_pyfunction!(conductor, m)?)?;
    m.add_function(wrap_pyfunction!(herbrand_phi, m)?)?;
    m.add_function(wrap_pyfunction!(herbrand_psi, m)?)?;
    m.add_function(wrap_pyfunction!(upper_jumps, m)?)?;
    m.add_function(wrap_pyfunction!(classify_dvf, m)?)?;
    m.add_function(wrap_pyfunction!(search_examples, m)?)?;
    Ok(())
}
