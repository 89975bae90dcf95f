//! Python bindings: fields, matrices, ranges, fibres, predictions and sweeps.
//! Field elements cross the boundary as integer encodings.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use nullrange::classify::{predict_full_field, predict_subfield};
use nullrange::hermitian::dagger;
use nullrange::ranges::{compute_range, fiber_table};
use nullrange::verify::{run_verify, Scope, VerifyConfig};
use nullrange::{EnumOptions, Error, FieldCtx, FieldElem, HermMatrix, RangeKind, RangeMode};

create_exception!(pynullrange, CapacityError, PyException, "Enumeration would exceed the configured capacity.");

fn to_py(err: Error) -> PyErr {
    match err {
        Error::CapacityExceeded { .. } => CapacityError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn options(capacity: Option<u128>, sample_budget: Option<u64>, seed: u64) -> EnumOptions {
    let mut opts = EnumOptions { sample_budget, seed, ..EnumOptions::default() };
    if let Some(c) = capacity {
        opts.capacity = c;
    }
    opts
}

/// F_{q²} over F_q = F_{p^m}, with canonical moduli.
#[pyclass(frozen, name = "Field")]
pub struct PyField {
    ctx: Arc<FieldCtx>,
}

impl PyField {
    fn elem(&self, enc: u64) -> PyResult<FieldElem> {
        self.ctx.elem(enc).map_err(to_py)
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m = 1))]
    fn new(p: u32, m: u32) -> PyResult<Self> {
        Ok(PyField { ctx: Arc::new(FieldCtx::build_tower(p, m).map_err(to_py)?) })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.ctx.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.ctx.m()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.ctx.q()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.ctx.q2()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.add(self.elem(a)?, self.elem(b)?).enc())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.ctx.mul(self.elem(a)?, self.elem(b)?).enc())
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.inv(self.elem(a)?).map_err(to_py)?.enc())
    }

    fn frobenius(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.frobenius(self.elem(a)?).enc())
    }

    fn norm(&self, a: u64) -> PyResult<u32> {
        Ok(self.ctx.norm(self.elem(a)?).enc())
    }

    fn norm_preimages(&self, a: u64) -> PyResult<Vec<u32>> {
        let pre = self.ctx.norm_preimages(self.elem(a)?).map_err(to_py)?;
        Ok(pre.into_iter().map(FieldElem::enc).collect())
    }

    fn theta(&self) -> Vec<u32> {
        self.ctx.theta().into_iter().map(FieldElem::enc).collect()
    }

    fn is_square(&self, a: u64) -> PyResult<bool> {
        self.ctx.is_square(self.elem(a)?).map_err(to_py)
    }

    fn in_subfield(&self, a: u64) -> PyResult<bool> {
        Ok(self.ctx.in_subfield(self.elem(a)?))
    }

    /// Polynomial form of an element.
    fn format(&self, a: u64) -> PyResult<String> {
        Ok(self.ctx.format_elem(self.elem(a)?))
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, m={}, q={})", self.ctx.p(), self.ctx.m(), self.ctx.q())
    }
}

/// A square matrix over F_{q²}, bound to its field.
#[pyclass(frozen, name = "Matrix")]
pub struct PyMatrix {
    ctx: Arc<FieldCtx>,
    inner: HermMatrix,
}

impl PyMatrix {
    fn with(&self, inner: HermMatrix) -> Self {
        PyMatrix { ctx: Arc::clone(&self.ctx), inner }
    }
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(field: &PyField, rows: Vec<Vec<u64>>) -> PyResult<Self> {
        let inner = HermMatrix::from_encodings(&field.ctx, &rows).map_err(to_py)?;
        Ok(PyMatrix { ctx: Arc::clone(&field.ctx), inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner.encoded_rows()
    }

    fn dagger(&self) -> Self {
        self.with(dagger(&self.ctx, &self.inner))
    }

    /// c·I + d·M.
    fn affine(&self, c: u64, d: u64) -> PyResult<Self> {
        let (c, d) = (self.ctx.elem(c).map_err(to_py)?, self.ctx.elem(d).map_err(to_py)?);
        Ok(self.with(self.inner.affine(&self.ctx, c, d)))
    }

    fn has_subfield_coeffs(&self) -> bool {
        self.inner.has_subfield_coeffs(&self.ctx)
    }

    /// Computes one range: `kind` is num_k, num0_prime, num_k_subfield or
    /// num0_prime_subfield.
    #[pyo3(signature = (kind, k = 0, capacity = None, sample_budget = None, seed = 0))]
    fn range(
        &self,
        kind: &str,
        k: u64,
        capacity: Option<u128>,
        sample_budget: Option<u64>,
        seed: u64,
    ) -> PyResult<PyRangeSet> {
        let kind = RangeKind::parse(kind).ok_or_else(|| PyValueError::new_err(format!("unknown range kind {kind:?}")))?;
        let k = self.ctx.elem(k).map_err(to_py)?;
        let opts = options(capacity, sample_budget, seed);
        let r = compute_range(&self.ctx, &self.inner, kind, k, &opts).map_err(to_py)?;
        Ok(PyRangeSet {
            kind: r.kind.name().to_string(),
            k: r.k.enc(),
            values: r.encodings(),
            exhaustive: r.mode == RangeMode::Exhaustive,
            witness_count: r.witness_count,
        })
    }

    /// (value, count) pairs of u ↦ ⟨u, Mu⟩ over the isotropic vectors of F_q^n.
    #[pyo3(signature = (capacity = None))]
    fn fibers(&self, capacity: Option<u128>) -> PyResult<Vec<(u32, u64)>> {
        let rows = fiber_table(&self.ctx, &self.inner, &options(capacity, None, 0)).map_err(to_py)?;
        Ok(rows.into_iter().map(|f| (f.value.enc(), f.count)).collect())
    }

    /// Closed-form predictions as a JSON array. `k` selects the subfield
    /// level; omit it for the full-field predictions.
    #[pyo3(signature = (k = None))]
    fn predict(&self, k: Option<u64>) -> PyResult<String> {
        let preds = match k {
            None => predict_full_field(&self.ctx, &self.inner),
            Some(k) => predict_subfield(&self.ctx, &self.inner, self.ctx.elem(k).map_err(to_py)?),
        }
        .map_err(to_py)?;
        serde_json::to_string(&preds).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.inner.encoded_rows())
    }
}

#[pyclass(frozen, get_all, name = "RangeSet")]
pub struct PyRangeSet {
    kind: String,
    k: u32,
    values: Vec<u32>,
    /// False when the set came from sampling and may be incomplete.
    exhaustive: bool,
    witness_count: u64,
}

#[pymethods]
impl PyRangeSet {
    fn __len__(&self) -> usize {
        self.values.len()
    }

    fn __contains__(&self, v: u32) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    fn __repr__(&self) -> String {
        let exhaustive = if self.exhaustive { "True" } else { "False" };
        format!("RangeSet(kind={}, k={}, values={:?}, exhaustive={exhaustive})", self.kind, self.k, self.values)
    }
}

/// Runs a named sweep and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (field, scope, n = None, count = None, seed = 0, capacity = None))]
fn verify(
    field: &PyField,
    scope: &str,
    n: Option<usize>,
    count: Option<usize>,
    seed: u64,
    capacity: Option<u128>,
) -> PyResult<String> {
    let scope = Scope::parse(scope).ok_or_else(|| PyValueError::new_err(format!("unknown scope {scope:?}")))?;
    let cfg = VerifyConfig { scope, n, count, seed, opts: options(capacity, None, seed) };
    let report = run_verify(&field.ctx, &cfg).map_err(to_py)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
pub fn pynullrange(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyRangeSet>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    Ok(())
}
