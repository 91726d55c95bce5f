use pyo3::prelude::*;

#[pymodule]
fn ballq(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
