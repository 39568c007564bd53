//! Python bindings for the memorybench core.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use memorybench::analysis::{self, TcnArch, DEFAULT_RECEPTIVE_CAP, DEFAULT_TAU};
use memorybench::io::{self as mio, GroupKey, ResultRecord};
use memorybench::memory::{DEFAULT_ALPHA_MAX, DEFAULT_EPSILON};
use memorybench::{scaling, Activation, MemoryKind, MemorySpec, TargetConfig};

create_exception!(memorybench, MemorybenchError, PyValueError);

fn err(e: memorybench::Error) -> PyErr {
    MemorybenchError::new_err(e.to_string())
}

fn activation(name: &str) -> PyResult<Activation> {
    match name {
        "tanh" => Ok(Activation::Tanh),
        "identity" => Ok(Activation::Identity),
        other => Err(MemorybenchError::new_err(format!("unknown activation {other:?}"))),
    }
}

/// Materialized kernel rho(0..=T).
#[pyclass(frozen, name = "Kernel", module = "memorybench")]
struct PyKernel(memorybench::MemoryKernel);

#[pymethods]
impl PyKernel {
    #[new]
    #[pyo3(signature = (kind, alpha, t_max, alpha_max = DEFAULT_ALPHA_MAX, epsilon = DEFAULT_EPSILON))]
    fn new(kind: &str, alpha: f64, t_max: usize, alpha_max: f64, epsilon: f64) -> PyResult<Self> {
        let kind: MemoryKind = kind.parse().map_err(err)?;
        let spec = MemorySpec::with_tail(kind, alpha, t_max, alpha_max, epsilon).map_err(err)?;
        memorybench::materialize(spec).map(PyKernel).map_err(err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().as_str()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.spec().alpha
    }

    #[getter]
    fn t_max(&self) -> usize {
        self.0.t_max()
    }

    #[getter]
    fn alpha_max(&self) -> f64 {
        self.0.spec().alpha_max
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.spec().epsilon
    }

    /// Scale parameter; `None` for Airy kernels.
    #[getter]
    fn mu(&self) -> Option<f64> {
        self.0.mu()
    }

    #[getter]
    fn residual(&self) -> Option<f64> {
        self.0.residual()
    }

    #[getter]
    fn delta_offset(&self) -> Option<usize> {
        self.0.delta_offset()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.values().len()
    }

    fn __repr__(&self) -> String {
        format!("Kernel(kind={:?}, alpha={}, t_max={})", self.kind(), self.alpha(), self.t_max())
    }
}

/// Inputs and targets, each n x (T+1).
#[pyclass(frozen, name = "Dataset", module = "memorybench")]
struct PyDataset(memorybench::Dataset);

#[pymethods]
impl PyDataset {
    #[getter]
    fn x(&self) -> Vec<Vec<f64>> {
        self.0.x.to_rows()
    }

    #[getter]
    fn y(&self) -> Vec<Vec<f64>> {
        self.0.y.to_rows()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.x.shape()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.0.config.seed
    }

    #[getter]
    fn kernel(&self) -> PyKernel {
        PyKernel(self.0.config.kernel.clone())
    }

    /// Held-out split drawn from `seed + 1`.
    fn test_split(&self, py: Python<'_>) -> PyResult<PyDataset> {
        let config = self.0.config.test_split();
        py.detach(|| memorybench::generate(&config)).map(PyDataset).map_err(err)
    }
}

#[pyclass(frozen, get_all, name = "TcnBound", module = "memorybench")]
struct PyTcnBound {
    effective_filters: i64,
    receptive_field: u64,
    coverage_term: f64,
    truncation_term: f64,
    total: f64,
}

#[pyfunction]
fn airy_ai(x: f64) -> PyResult<f64> {
    memorybench::airy::airy_ai(x).map_err(err)
}

#[pyfunction]
fn airy_tr(x: f64) -> PyResult<f64> {
    memorybench::airy::airy_tr(x).map_err(err)
}

#[pyfunction]
fn poly_tail(t_max: usize, a: f64) -> PyResult<f64> {
    scaling::poly_tail(t_max, a).map_err(err)
}

#[pyfunction]
fn solve_alpha_max(t_max: usize, epsilon: f64) -> PyResult<f64> {
    scaling::solve_alpha_max(t_max, epsilon).map(|s| s.mu).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, t_max, alpha_max = DEFAULT_ALPHA_MAX))]
fn solve_mu_exp(alpha: f64, t_max: usize, alpha_max: f64) -> PyResult<f64> {
    scaling::solve_mu_exp(alpha, t_max, alpha_max).map(|s| s.mu).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, alpha_max = DEFAULT_ALPHA_MAX))]
fn mu_poly(alpha: f64, alpha_max: f64) -> f64 {
    scaling::mu_poly(alpha, alpha_max)
}

#[pyfunction]
fn mu_delta(alpha: f64, t_max: usize) -> usize {
    scaling::mu_delta(alpha, t_max)
}

#[pyfunction]
#[pyo3(signature = (kind, alpha, t_max, alpha_max = DEFAULT_ALPHA_MAX, epsilon = DEFAULT_EPSILON))]
fn materialize(kind: &str, alpha: f64, t_max: usize, alpha_max: f64, epsilon: f64) -> PyResult<PyKernel> {
    PyKernel::new(kind, alpha, t_max, alpha_max, epsilon)
}

#[pyfunction]
#[pyo3(signature = (kernel, n_sequences, seed = 0, sigma1 = "tanh", sigma2 = "tanh"))]
fn generate(
    py: Python<'_>,
    kernel: &PyKernel,
    n_sequences: usize,
    seed: u64,
    sigma1: &str,
    sigma2: &str,
) -> PyResult<PyDataset> {
    let config = TargetConfig::new(kernel.0.clone(), n_sequences, seed).with_activations(activation(sigma1)?, activation(sigma2)?);
    py.detach(|| memorybench::generate(&config)).map(PyDataset).map_err(err)
}

#[pyfunction]
fn rmse(y_hat: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    analysis::rmse(&y_hat, &y).map_err(err)
}

/// Tail energy C(rho, s) for s = 0..=T+1.
#[pyfunction]
fn complexity_profile(kernel: &PyKernel) -> Vec<f64> {
    analysis::complexity_profile(&kernel.0).values().to_vec()
}

#[pyfunction]
fn best_m_term_error(kernel: &PyKernel, m: usize, horizon: usize) -> PyResult<f64> {
    analysis::best_m_term_error(&kernel.0, m, horizon).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (kernel, filter_size, channels, cap = DEFAULT_RECEPTIVE_CAP))]
fn tcn_bound(kernel: &PyKernel, filter_size: usize, channels: Vec<usize>, cap: u64) -> PyResult<PyTcnBound> {
    let arch = TcnArch::with_cap(filter_size, channels, cap).map_err(err)?;
    let r = analysis::tcn_bound(&kernel.0, &arch);
    Ok(PyTcnBound {
        effective_filters: r.effective_filters,
        receptive_field: r.receptive_field,
        coverage_term: r.coverage_term,
        truncation_term: r.truncation_term,
        total: r.total,
    })
}

#[pyfunction]
fn causal_matrix(kernel: &PyKernel, size: usize) -> PyResult<Vec<Vec<f64>>> {
    analysis::causal_matrix(&kernel.0, size).map(|m| m.to_rows()).map_err(err)
}

/// Returns `(singular_values, effective_rank)`.
#[pyfunction]
#[pyo3(signature = (kernel, size, tau = DEFAULT_TAU))]
fn singular_values(py: Python<'_>, kernel: &PyKernel, size: usize, tau: f64) -> PyResult<(Vec<f64>, usize)> {
    let result = py.detach(|| {
        let a = analysis::causal_matrix(&kernel.0, size)?;
        analysis::singular_values_with_tau(&a, tau)
    });
    result.map(|s| (s.singular_values, s.effective_rank)).map_err(err)
}

#[pyfunction]
fn write_dataset(dataset: &PyDataset, dir: PathBuf) -> PyResult<()> {
    mio::write_dataset(&dataset.0, &dir).map_err(err)
}

/// Reads a dataset directory and checks it against its manifest.
#[pyfunction]
fn read_dataset(dir: PathBuf) -> PyResult<PyDataset> {
    mio::read_dataset(&dir).map(PyDataset).map_err(err)
}

/// Validates one result record given as a JSON object and appends it.
#[pyfunction]
fn append_result(record_json: &str, path: PathBuf) -> PyResult<()> {
    let record = ResultRecord::from_json(record_json).map_err(err)?;
    mio::append_result(&record, &path).map_err(err)
}

/// Min-over-seeds aggregation; one dict per group.
#[pyfunction]
#[pyo3(signature = (paths, group = "model,memory,alpha,m"))]
fn aggregate<'py>(py: Python<'py>, paths: Vec<PathBuf>, group: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let keys = GroupKey::parse_list(group).map_err(err)?;
    let rows = mio::aggregate(&paths, &keys).map_err(err)?;
    rows.iter()
        .map(|row| {
            let d = PyDict::new(py);
            for (k, v) in keys.iter().zip(&row.key) {
                d.set_item(k.as_str(), v.to_string())?;
            }
            d.set_item("min_train_rmse", row.min_train_rmse)?;
            d.set_item("min_steps_to_threshold", row.min_steps_to_threshold)?;
            d.set_item("seed_count", row.seed_count)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "memorybench")]
fn memorybench_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MemorybenchError", m.py().get_type::<MemorybenchError>())?;
    m.add_class::<PyKernel>()?;
    m.add_class::<PyDataset>()?;
    m.add_class::<PyTcnBound>()?;
    m.add_function(wrap_pyfunction!(airy_ai, m)?)?;
    m.add_function(wrap_pyfunction!(airy_tr, m)?)?;
    m.add_function(wrap_pyfunction!(poly_tail, m)?)?;
    m.add_function(wrap_pyfunction!(solve_alpha_max, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mu_exp, m)?)?;
    m.add_function(wrap_pyfunction!(mu_poly, m)?)?;
    m.add_function(wrap_pyfunction!(mu_delta, m)?)?;
    m.add_function(wrap_pyfunction!(materialize, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(rmse, m)?)?;
    m.add_function(wrap_pyfunction!(complexity_profile, m)?)?;
    m.add_function(wrap_pyfunction!(best_m_term_error, m)?)?;
    m.add_function(wrap_pyfunction!(tcn_bound, m)?)?;
    m.add_function(wrap_pyfunction!(causal_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(singular_values, m)?)?;
    m.add_function(wrap_pyfunction!(write_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(read_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(append_result, m)?)?;
    m.add_function(wrap_pyfunction!(aggregate, m)?)?;
    Ok(())
}
