use std::ffi::CString;

use pynullrange::pynullrange;
use pyo3::prelude::*;

const SCRIPT: &str = r#"
import json
import pynullrange as nr

f4 = nr.Field(2)
assert (f4.q, f4.order) == (2, 4)
assert sorted(f4.norm_preimages(1)) == [1, 2, 3]
eye = nr.Matrix(f4, [[1, 0], [0, 1]])
r = eye.range("num0_prime")
assert list(r.values) == [0] and r.exhaustive and 0 in r and len(r) == 1
assert eye.fibers() == [(0, 2)]

f3 = nr.Field(3)
m = nr.Matrix(f3, [[1, 2], [0, 1]])
assert len(m.range("num0_prime_subfield")) == 0
assert m.dagger().rows() == [[1, 0], [2, 1]]
assert nr.Matrix(f3, [[0, 3], [0, 0]]).dagger().rows() == [[0, 0], [f3.frobenius(3), 0]]
preds = json.loads(nr.Matrix(f3, [[0, 1], [0, 0]]).predict())
assert any(p["basis"] == "jordan-block" for p in preds)

report = json.loads(nr.verify(f4, "exhaustive-2x2"))
assert report["failures"] == 0 and len(report["matrices"]) == 256

try:
    m.range("num0_prime", capacity=4)
except nr.CapacityError:
    pass
else:
    raise AssertionError("capacity not enforced")
sampled = m.range("num0_prime", capacity=4, sample_budget=50, seed=1)
assert not sampled.exhaustive

for bad in (lambda: nr.Field(4), lambda: m.range("nope"), lambda: nr.Matrix(f3, [[1, 0]])):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
"#;

#[test]
fn module_round_trip() {
    pyo3::append_to_inittab!(pynullrange);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(SCRIPT).unwrap();
        py.run(&code, None, None).unwrap_or_else(|e| panic!("{e}"));
    });
}
