//! Python bindings. Rationals cross the boundary as `"p/q"` strings; inputs
//! also accept Python ints.

use kirwan_core::{
    classify_support, epsilon_window, format_rational, in_sweep_cone, index_set, load_action,
    min_norm_point as core_min_norm_point, parse_rational, quotient_betti, semistable_series,
    serialize_action, unstable_quotient, InnerProduct, ParabolicData,
    RationalVector, RootDatum, StabilityClass, StratumIndex, SupportSet, WeightSystem, Q,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_q(ob: &Bound<'_, PyAny>) -> PyResult<Q> {
    if let Ok(i) = ob.extract::<i64>() {
        return Ok(Q::from_integer(i.into()));
    }
    let s: String = ob.extract()?;
    parse_rational(&s).ok_or_else(|| value_error(format!("bad rational {s:?}")))
}

/// A vector given as `"1/2,-1"` or as a sequence of ints and `"p/q"` strings.
fn to_vector(ob: &Bound<'_, PyAny>) -> PyResult<RationalVector> {
    if ob.is_instance_of::<PyString>() {
        let s: String = ob.extract()?;
        return s.parse().map_err(value_error);
    }
    let items: Vec<Bound<'_, PyAny>> = ob.extract()?;
    items
        .iter()
        .map(to_q)
        .collect::<PyResult<Vec<_>>>()
        .map(RationalVector::new)
}

fn strings(v: &RationalVector) -> Vec<String> {
    v.coords().iter().map(format_rational).collect()
}

/// A validated weight system with optional root data.
#[pyclass(frozen, name = "Action", module = "kirwan")]
struct Action {
    ws: WeightSystem,
    rd: Option<RootDatum>,
}

impl Action {
    fn stratum(&self, beta: &Bound<'_, PyAny>) -> PyResult<StratumIndex> {
        let beta = to_vector(beta)?;
        index_set(&self.ws, self.rd.as_ref())
            .map_err(value_error)?
            .into_iter()
            .find(|si| si.beta == beta)
            .ok_or_else(|| value_error(format!("beta {beta} is not in B")))
    }

    fn parabolic(&self, sp: Vec<usize>) -> PyResult<ParabolicData> {
        let rd = self
            .rd
            .clone()
            .ok_or_else(|| value_error("action has no root data"))?;
        ParabolicData::new(rd, sp).map_err(value_error)
    }
}

#[pymethods]
impl Action {
    #[getter]
    fn rank(&self) -> usize {
        self.ws.rank()
    }

    #[getter]
    fn weights(&self) -> Vec<Vec<String>> {
        self.ws.weights().iter().map(strings).collect()
    }

    #[getter]
    fn has_roots(&self) -> bool {
        self.rd.is_some()
    }

    /// Canonical JSON; `load` inverts it.
    fn to_json(&self) -> String {
        serialize_action(&self.ws, self.rd.as_ref())
    }

    /// The sorted index set B, one dict per β.
    fn index_set<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let b = index_set(&self.ws, self.rd.as_ref()).map_err(value_error)?;
        b.iter()
            .map(|si| {
                let d = PyDict::new(py);
                d.set_item("beta", strings(&si.beta))?;
                d.set_item("norm_sq", format_rational(&si.norm_sq))?;
                d.set_item("z_support", si.z_support.indices())?;
                d.set_item("y_support", si.y_support.indices())?;
                d.set_item("codim", si.codim)?;
                d.set_item("fiber_dim", si.fiber_dim)?;
                Ok(d)
            })
            .collect()
    }

    /// Returns `(class, beta)` with class one of `"stable"`, `"semistable"`, `"unstable"`.
    fn classify(&self, support: Vec<usize>) -> PyResult<(String, Vec<String>)> {
        let s = SupportSet::new(support, self.ws.len())
            .ok_or_else(|| value_error("support must be a nonempty set of coordinate indices"))?;
        let class = classify_support(&s, &self.ws);
        let name = match class {
            StabilityClass::Stable => "stable",
            StabilityClass::Semistable => "semistable",
            StabilityClass::Unstable(_) => "unstable",
        };
        Ok((name.to_string(), strings(&class.beta(self.ws.rank()))))
    }

    /// `(numerator coefficients, denominator power)` of `P_t^T(X^ss)` in `q = t²`.
    fn semistable_series(&self) -> PyResult<(Vec<i64>, u32)> {
        let s = semistable_series(&self.ws).map_err(value_error)?;
        Ok((s.numerator.coeffs().to_vec(), s.denom_power))
    }

    /// Even Betti numbers of the torus quotient; raises if some point is strictly semistable.
    fn quotient_betti(&self) -> PyResult<Vec<i64>> {
        quotient_betti(&self.ws)
            .map(|p| p.coeffs().to_vec())
            .map_err(value_error)
    }

    fn epsilon_window<'py>(
        &self,
        py: Python<'py>,
        beta: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let si = self.stratum(beta)?;
        let w = epsilon_window(&si, &self.ws).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item(
            "walls",
            w.walls.iter().map(format_rational).collect::<Vec<_>>(),
        )?;
        d.set_item("eps_max", w.eps_max.as_ref().map(format_rational))?;
        d.set_item("empty_for_all_eps", w.empty_for_all_eps)?;
        Ok(d)
    }

    fn unstable_quotient<'py>(
        &self,
        py: Python<'py>,
        beta: &Bound<'py, PyAny>,
        epsilon: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let si = self.stratum(beta)?;
        let eps = to_q(epsilon)?;
        let r = unstable_quotient(&si, &self.ws, &eps).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("beta", strings(&r.beta))?;
        d.set_item("epsilon", format_rational(&r.epsilon))?;
        d.set_item("nonempty", r.nonempty)?;
        d.set_item("complex_dim", r.complex_dim)?;
        d.set_item("betti", r.betti.as_ref().map(|p| p.coeffs().to_vec()))?;
        d.set_item("locally_free", r.locally_free)?;
        d.set_item(
            "semistable_supports",
            r.semistable_supports
                .iter()
                .map(|s| s.indices().to_vec())
                .collect::<Vec<_>>(),
        )?;
        Ok(d)
    }

    fn in_sweep_cone(&self, sp: Vec<usize>, xi: &Bound<'_, PyAny>) -> PyResult<bool> {
        let pd = self.parabolic(sp)?;
        in_sweep_cone(&to_vector(xi)?, &pd).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        let ws: Vec<String> = self.ws.weights().iter().map(|w| w.to_string()).collect();
        format!("Action(rank={}, weights=[{}])", self.ws.rank(), ws.join(", "))
    }
}

/// Parses an action document (JSON text).
#[pyfunction]
fn load(text: &str) -> PyResult<Action> {
    let (ws, rd) = load_action(text).map_err(value_error)?;
    Ok(Action { ws, rd })
}

/// Closest point to the origin of the convex hull of `points`.
#[pyfunction]
#[pyo3(signature = (points, gram=None))]
fn min_norm_point(
    points: Vec<Bound<'_, PyAny>>,
    gram: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<Vec<String>> {
    let pts = points
        .iter()
        .map(to_vector)
        .collect::<PyResult<Vec<_>>>()?;
    let rank = pts.first().map_or(0, RationalVector::rank);
    let ip = match gram {
        None => InnerProduct::identity(rank),
        Some(rows) => {
            let rows = rows
                .iter()
                .map(|r| to_vector(r).map(RationalVector::into_coords))
                .collect::<PyResult<Vec<_>>>()?;
            InnerProduct::new(rows).map_err(value_error)?
        }
    };
    core_min_norm_point(&pts, &ip)
        .map(|p| strings(&p))
        .map_err(value_error)
}

#[pymodule]
pub fn kirwan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Action>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(min_norm_point, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
