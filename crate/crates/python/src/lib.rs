//! Python bindings: `pyakizuki.Instance` wraps one configured construction.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use akizuki::config::SuiteConfig;
use akizuki::construction::{minimal_exponents as exponents, validate, Construction};
use akizuki::expr::parse_expression;
use akizuki::ring_c::{Membership, RingC};
use akizuki::suite::run_suite;

fn py_err(e: akizuki::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A construction built from a JSON configuration (the default instance when omitted).
#[pyclass(module = "pyakizuki", frozen)]
struct Instance {
    cfg: SuiteConfig,
    cons: Arc<Construction>,
}

impl Instance {
    fn ring(&self) -> RingC<'_> {
        RingC::new(&self.cons)
    }
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (config_json = None))]
    fn new(config_json: Option<&str>) -> PyResult<Self> {
        let cfg = match config_json {
            Some(text) => SuiteConfig::from_json(text).map_err(py_err)?,
            None => SuiteConfig::default(),
        };
        let cons = Arc::new(cfg.construction().map_err(py_err)?);
        Ok(Instance { cfg, cons })
    }

    /// Exponents `n_0, ..., n_{r_max+1}`.
    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.cons.params().n.clone()
    }

    #[getter]
    fn base(&self) -> String {
        self.cons.base().to_string()
    }

    /// Parse an element of `B` and print it in normal form.
    fn parse(&self, expr: &str) -> PyResult<String> {
        let b = self.ring().ring_b();
        Ok(parse_expression(&b, expr).map_err(py_err)?.to_string())
    }

    /// Coefficients of `z_r` modulo `t^precision`, as strings.
    fn z_series(&self, r: usize, precision: u32) -> PyResult<Vec<String>> {
        let s = self.cons.z_series(r, precision).map_err(py_err)?;
        Ok((0..precision).map(|i| s.coeff(i).to_string()).collect())
    }

    /// `f = X + Y w_r + t^N Z` for `f` in `C`.
    #[pyo3(signature = (expr, r, n))]
    fn decompose<'py>(&self, py: Python<'py>, expr: &str, r: usize, n: u32) -> PyResult<Bound<'py, PyDict>> {
        let rc = self.ring();
        let g = parse_expression(&rc.ring_b(), expr).map_err(py_err)?;
        let f = rc.require_member(&g, self.cons.top_level()).map_err(py_err)?;
        let nf = rc.decompose_eq6(&f, r, n).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("x", nf.x.to_string())?;
        d.set_item("y", nf.y.to_string())?;
        d.set_item("z", nf.z.to_string())?;
        d.set_item("final_level", nf.final_level)?;
        d.set_item("exact", rc.verify_eq6(&f, &nf))?;
        Ok(d)
    }

    /// Membership in `C` up to `max_level`.
    fn member<'py>(&self, py: Python<'py>, expr: &str, max_level: usize) -> PyResult<Bound<'py, PyDict>> {
        let rc = self.ring();
        let g = parse_expression(&rc.ring_b(), expr).map_err(py_err)?;
        let d = PyDict::new(py);
        match rc.c_membership(&g, max_level).map_err(py_err)? {
            Membership::Member { level, elem } => {
                d.set_item("member", true)?;
                d.set_item("level", level)?;
                d.set_item("normal_form", elem.to_string())?;
            }
            Membership::NotMember { failures } => {
                let rows: Vec<(usize, usize, String, u32)> = failures
                    .into_iter()
                    .map(|f| (f.level, f.degree, f.valuation.to_string(), f.required))
                    .collect();
                d.set_item("member", false)?;
                d.set_item("failures", rows)?;
            }
        }
        Ok(d)
    }

    /// `g`, `n`, `w` with `f g = t^{2n} w` and `w` a unit, for `f` in `M`.
    fn claim<'py>(&self, py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyDict>> {
        let rc = self.ring();
        let g = parse_expression(&rc.ring_b(), expr).map_err(py_err)?;
        let f = rc.require_member(&g, self.cons.top_level()).map_err(py_err)?;
        let cw = rc.claim_inverse(&f, self.cfg.precision).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("n", cw.n)?;
        d.set_item("r", cw.r)?;
        d.set_item("g", cw.g.to_string())?;
        d.set_item("w", cw.w.to_string())?;
        d.set_item("verified", rc.verify_claim(&f, &cw))?;
        Ok(d)
    }

    /// Rows `(level, valuation, required)` showing `t^{n_r} z_r` outside `C`.
    fn ex2(&self, r: usize, max_level: usize) -> PyResult<Vec<(usize, String, u32)>> {
        let rows = self.ring().ex2_nonmembership(r, max_level).map_err(py_err)?;
        Ok(rows.into_iter().map(|row| (row.level, row.valuation.to_string(), row.required)).collect())
    }

    /// Violated construction hypotheses; empty when the instance is valid.
    fn violations(&self) -> Vec<String> {
        validate(self.cons.params()).iter().map(|v| v.to_string()).collect()
    }

    /// Run the configured suites and return the JSON report.
    fn run_suite(&self, py: Python<'_>) -> PyResult<String> {
        let cfg = self.cfg.clone();
        let report = py.detach(move || run_suite(&cfg)).map_err(py_err)?;
        Ok(report.to_json())
    }
}

/// The minimal exponents `n_r = 2(2^r - 1)` for `r <= r_max + 1`.
#[pyfunction]
fn minimal_exponents(r_max: usize) -> Vec<u32> {
    exponents(r_max)
}

/// The built-in default configuration as JSON.
#[pyfunction]
fn default_config() -> String {
    serde_json::to_string_pretty(&SuiteConfig::default()).expect("configs serialize")
}

#[pymodule]
fn pyakizuki(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(minimal_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(default_config, m)?)?;
    Ok(())
}
