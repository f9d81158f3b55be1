//! Python bindings: NIG calculus, training losses, and the evaluation
//! metrics. Build with `cargo build -p monig-py`, then load the cdylib
//! as module `monig_py` (see python/smoke_test.py).

use monig_core::loss::{
    branch_loss, evidence_regularizer, gaussian_nll, nig_nll, LossConfig,
};
use monig_core::metrics::{auroc, mae, rmse, ueir};
use monig_core::{monig_fuse, naive_average_fuse, nig_sum, MonigError, NigParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: MonigError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One Normal-Inverse-Gamma evidential distribution.
#[pyclass(module = "monig_py", frozen, name = "Nig", from_py_object)]
#[derive(Clone)]
struct PyNig {
    inner: NigParams,
}

#[pymethods]
impl PyNig {
    #[new]
    fn new(delta: f64, gamma: f64, alpha: f64, beta: f64) -> PyResult<Self> {
        Ok(PyNig {
            inner: NigParams::new(delta, gamma, alpha, beta).map_err(err)?,
        })
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    /// Predictive mean.
    fn point_prediction(&self) -> f64 {
        self.inner.point_prediction()
    }

    /// Expected noise variance.
    fn aleatoric(&self) -> f64 {
        self.inner.aleatoric()
    }

    /// Variance of the predictive mean.
    fn epistemic(&self) -> f64 {
        self.inner.epistemic()
    }

    /// Marginal predictive distribution as (location, squared scale,
    /// degrees of freedom) of a Student-t.
    fn student_t(&self) -> (f64, f64, f64) {
        let t = self.inner.marginal_student_t();
        (t.location, t.scale, t.dof)
    }

    /// Log of the marginal predictive density at y.
    fn ln_density(&self, y: f64) -> f64 {
        self.inner.marginal_student_t().ln_density(y)
    }

    fn density(&self, y: f64) -> f64 {
        self.inner.marginal_student_t().density(y)
    }

    /// NIG summation, so `a + b` fuses two distributions.
    fn __add__(&self, other: &PyNig) -> PyResult<PyNig> {
        Ok(PyNig {
            inner: nig_sum(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Nig(delta={}, gamma={}, alpha={}, beta={})",
            self.inner.delta, self.inner.gamma, self.inner.alpha, self.inner.beta
        )
    }
}

/// Fuses two NIG distributions.
#[pyfunction]
#[pyo3(name = "nig_sum")]
fn py_nig_sum(a: &PyNig, b: &PyNig) -> PyResult<PyNig> {
    Ok(PyNig {
        inner: nig_sum(&a.inner, &b.inner).map_err(err)?,
    })
}

/// Folds any number of NIG branches into one fused distribution.
#[pyfunction]
#[pyo3(name = "fuse")]
fn py_fuse(branches: Vec<PyNig>) -> PyResult<PyNig> {
    let inner: Vec<NigParams> = branches.iter().map(|b| b.inner).collect();
    Ok(PyNig {
        inner: monig_fuse(&inner).map_err(err)?,
    })
}

/// Point prediction by (optionally weighted) averaging of branch means.
#[pyfunction]
#[pyo3(name = "average_fuse", signature = (branches, weights=None))]
fn py_average_fuse(branches: Vec<PyNig>, weights: Option<Vec<f64>>) -> PyResult<f64> {
    let inner: Vec<NigParams> = branches.iter().map(|b| b.inner).collect();
    naive_average_fuse(&inner, weights.as_deref()).map_err(err)
}

/// Evidential negative log likelihood of target y.
#[pyfunction]
#[pyo3(name = "nig_nll")]
fn py_nig_nll(y: f64, p: &PyNig) -> PyResult<f64> {
    nig_nll(y, &p.inner).map_err(err)
}

/// Evidence penalty |y - delta| (gamma + 2 alpha).
#[pyfunction]
#[pyo3(name = "evidence_regularizer")]
fn py_evidence_regularizer(y: f64, p: &PyNig) -> f64 {
    evidence_regularizer(y, &p.inner)
}

/// Combined per-branch loss: NLL plus lambda times the evidence penalty.
#[pyfunction]
#[pyo3(name = "branch_loss")]
fn py_branch_loss(y: f64, p: &PyNig, lambda: f64) -> PyResult<f64> {
    let cfg = LossConfig::new(lambda).map_err(err)?;
    branch_loss(y, &p.inner, &cfg).map_err(err)
}

/// Gaussian negative log likelihood.
#[pyfunction]
#[pyo3(name = "gaussian_nll")]
fn py_gaussian_nll(y: f64, mean: f64, variance: f64) -> PyResult<f64> {
    gaussian_nll(y, mean, variance).map_err(err)
}

#[pyfunction]
#[pyo3(name = "rmse")]
fn py_rmse(pred: Vec<f64>, target: Vec<f64>) -> PyResult<f64> {
    rmse(&pred, &target).map_err(err)
}

#[pyfunction]
#[pyo3(name = "mae")]
fn py_mae(pred: Vec<f64>, target: Vec<f64>) -> PyResult<f64> {
    mae(&pred, &target).map_err(err)
}

/// Ranking AUROC of scores against boolean labels.
#[pyfunction]
#[pyo3(name = "auroc")]
fn py_auroc(scores: Vec<f64>, labels: Vec<bool>) -> PyResult<f64> {
    auroc(&scores, &labels).map_err(err)
}

/// Uncertainty-error inversion rate, in percent.
#[pyfunction]
#[pyo3(name = "ueir")]
fn py_ueir(errors: Vec<f64>, uncertainties: Vec<f64>) -> PyResult<f64> {
    ueir(&errors, &uncertainties).map_err(err)
}

#[pymodule]
fn monig_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNig>()?;
    m.add_function(wrap_pyfunction!(py_nig_sum, m)?)?;
    m.add_function(wrap_pyfunction!(py_fuse, m)?)?;
    m.add_function(wrap_pyfunction!(py_average_fuse, m)?)?;
    m.add_function(wrap_pyfunction!(py_nig_nll, m)?)?;
    m.add_function(wrap_pyfunction!(py_evidence_regularizer, m)?)?;
    m.add_function(wrap_pyfunction!(py_branch_loss, m)?)?;
    m.add_function(wrap_pyfunction!(py_gaussian_nll, m)?)?;
    m.add_function(wrap_pyfunction!(py_rmse, m)?)?;
    m.add_function(wrap_pyfunction!(py_mae, m)?)?;
    m.add_function(wrap_pyfunction!(py_auroc, m)?)?;
    m.add_function(wrap_pyfunction!(py_ueir, m)?)?;
    Ok(())
}
