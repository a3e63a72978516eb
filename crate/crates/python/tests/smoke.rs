use std::ffi::CString;

use pyo3::prelude::*;

use dsr::dsr as dsr_module;

/// Runs python/smoke_test.py against the module registered in an embedded
/// interpreter.
#[test]
fn python_smoke_test() {
    pyo3::append_to_inittab!(dsr_module);
    Python::initialize();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../python/smoke_test.py");
    let source = std::fs::read_to_string(path).unwrap();
    Python::attach(|py| {
        let globals = pyo3::types::PyDict::new(py);
        py.run(&CString::new(source).unwrap(), Some(&globals), None)
            .unwrap();
        py.eval(c"main()", Some(&globals), None)
            .map_err(|e| e.display(py))
            .unwrap();
    });
}
