//! Python bindings: complexes, constructions, homology, certificates and the
//! small census search. Certificates and censuses cross the boundary as JSON
//! strings so no number is ever rounded.

use bcl_core::constructions::{self, LabeledComplex};
use bcl_core::homology::{self, CoefficientField};
use bcl_core::search::{self, SearchSpec, Target};
use bcl_core::{certify, covers, io, iso, Coloring, Error, Face};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(s: &str) -> PyResult<CoefficientField> {
    s.parse().map_err(err)
}

fn face(vs: Vec<usize>) -> PyResult<Face> {
    Face::from_vertices(vs).map_err(err)
}

/// A simplicial complex, optionally with a vertex coloring.
#[pyclass(name = "Complex", module = "bcl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyComplex {
    inner: bcl_core::Complex,
    coloring: Option<Coloring>,
}

impl PyComplex {
    fn labeled(lc: LabeledComplex) -> Self {
        PyComplex { inner: lc.complex, coloring: Some(lc.coloring) }
    }
}

#[pymethods]
impl PyComplex {
    /// Facets as vertex lists on `n` vertices (default: one more than the
    /// largest id). `colors` gives the 1-based color of each vertex.
    #[new]
    #[pyo3(signature = (facets, n=None, colors=None))]
    fn new(facets: Vec<Vec<usize>>, n: Option<usize>, colors: Option<Vec<usize>>) -> PyResult<Self> {
        let n = n.unwrap_or_else(|| facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0));
        let inner = bcl_core::Complex::from_vertex_lists(n, &facets).map_err(err)?;
        let coloring = colors.map(Coloring::new).transpose().map_err(err)?;
        Ok(PyComplex { inner, coloring })
    }

    /// Reads the facet file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let ff = io::parse_complex(text).map_err(err)?;
        Ok(PyComplex { inner: ff.complex, coloring: ff.coloring })
    }

    fn to_text(&self) -> String {
        io::write_complex(&self.inner, self.coloring.as_ref())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> isize {
        self.inner.dim()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        io::sorted_facet_lists(&self.inner)
    }

    #[getter]
    fn colors(&self) -> Option<Vec<usize>> {
        self.coloring.as_ref().map(|k| k.colors().to_vec())
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.f_vector().counts().to_vec()
    }

    fn h_vector(&self) -> PyResult<Vec<i64>> {
        Ok(self.inner.h_vector().map_err(err)?.counts().to_vec())
    }

    /// Reduced Betti numbers from degree 0.
    #[pyo3(signature = (field="Q"))]
    fn betti(&self, field: &str) -> PyResult<Vec<u64>> {
        Ok(homology::betti(&self.inner, self::field(field)?).values().to_vec())
    }

    fn link(&self, face: Vec<usize>) -> PyResult<Self> {
        let inner = self.inner.link(self::face(face)?).map_err(err)?;
        Ok(PyComplex { inner, coloring: self.coloring.clone() })
    }

    #[pyo3(signature = (field="Q"))]
    fn is_homology_manifold(&self, field: &str) -> PyResult<bool> {
        homology::is_homology_manifold(&self.inner, self::field(field)?).map_err(err)
    }

    #[pyo3(signature = (field="Q"))]
    fn is_buchsbaum_star(&self, field: &str) -> PyResult<bool> {
        match homology::is_buchsbaum_star(&self.inner, self::field(field)?) {
            Ok(b) => Ok(b),
            Err(Error::NotBuchsbaum(_)) => Ok(false),
            Err(e) => Err(err(e)),
        }
    }

    fn is_balanced(&self) -> bool {
        self.coloring.as_ref().is_some_and(|k| bcl_core::coloring::validate(&self.inner, k))
    }

    fn is_isomorphic(&self, other: &PyComplex) -> bool {
        iso::is_isomorphic(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Complex(n={}, dim={}, f={:?})", self.inner.n(), self.inner.dim(), self.inner.f_vector().counts())
    }
}

/// Boundary of the d-dimensional cross-polytope.
#[pyfunction]
fn cross_polytope(d: usize) -> PyResult<PyComplex> {
    Ok(PyComplex::labeled(constructions::cross_polytope_boundary(d).map_err(err)?))
}

/// Stacked cross-polytopal sphere on `n` vertices with `d` colors.
#[pyfunction]
fn stacked(n: usize, d: usize) -> PyResult<PyComplex> {
    Ok(PyComplex::labeled(constructions::stacked_cross_polytopal_sphere(n, d).map_err(err)?))
}

/// The 3d-vertex handle construction BM_d.
#[pyfunction]
fn bm(d: usize) -> PyResult<PyComplex> {
    Ok(PyComplex::labeled(constructions::bm(d).map_err(err)?))
}

/// The t-sheeted cover of BM_d along its handle cocycle.
#[pyfunction]
fn bm_cover(d: usize, t: u64) -> PyResult<PyComplex> {
    let b = constructions::bm(d).map_err(err)?;
    let omega = covers::handle_cocycle(&b, t).map_err(err)?;
    let inner = covers::cyclic_cover(&b.complex, &omega).map_err(err)?;
    let coloring = Some(covers::lift_coloring(&b.coloring, b.complex.n(), t));
    Ok(PyComplex { inner, coloring })
}

/// Certificate JSON for the cover h-number identity on BM_d.
#[pyfunction]
fn certify_bm_cover(d: usize, t: u64) -> PyResult<String> {
    let b = constructions::bm(d).map_err(err)?;
    let omega = covers::handle_cocycle(&b, t).map_err(err)?;
    Ok(covers::cover_h_identity_check(&b.complex, &omega).map_err(err)?.to_json())
}

/// Certificate JSON for the lower-bound inequality on a colored complex.
#[pyfunction]
#[pyo3(signature = (c, t=None))]
fn certify_lower_bound(c: &PyComplex, t: Option<u64>) -> PyResult<String> {
    let k = c.coloring.as_ref().ok_or_else(|| PyValueError::new_err("complex has no coloring"))?;
    Ok(certify::lbt_inequality_check(&c.inner, k, t).map_err(err)?.to_json())
}

/// Certificate JSON for the facet-count equation at `d`.
#[pyfunction]
fn certify_facet_count(d: usize) -> PyResult<String> {
    Ok(certify::facet_count_contradiction(d).map_err(err)?.to_json())
}

/// Exhaustive search for connected balanced closed manifolds with the given
/// class sizes. Returns `(classes, census_json)`.
#[pyfunction]
#[pyo3(signature = (class_sizes, chi=None, max_nodes=None))]
fn census(py: Python<'_>, class_sizes: Vec<usize>, chi: Option<i64>, max_nodes: Option<u64>) -> PyResult<(Vec<PyComplex>, String)> {
    let mut target = Target::closed_manifold();
    target.chi = chi;
    let mut spec = SearchSpec::new(class_sizes.len(), class_sizes, target).map_err(err)?;
    spec.limits.max_nodes = max_nodes;
    let result = py.detach(|| search::enumerate(&spec)).map_err(err)?;
    let json = serde_json::to_string_pretty(&search::census_json(&result, &spec)).expect("census serializes");
    let classes = result
        .classes
        .into_iter()
        .map(|c| PyComplex { inner: c.complex, coloring: Some(c.coloring) })
        .collect();
    Ok((classes, json))
}

#[pymodule]
fn bcl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(cross_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(stacked, m)?)?;
    m.add_function(wrap_pyfunction!(bm, m)?)?;
    m.add_function(wrap_pyfunction!(bm_cover, m)?)?;
    m.add_function(wrap_pyfunction!(certify_bm_cover, m)?)?;
    m.add_function(wrap_pyfunction!(certify_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(certify_facet_count, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
