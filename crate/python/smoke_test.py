#!/usr/bin/env python3
"""Smoke test for the holoconvex_py extension module.

Build the module first, then run this script:

    cargo build -p holoconvex-py
    python3 python/smoke_test.py

The script locates the built cdylib under target/, imports it, and exercises
the series arithmetic plus a full pipeline run on the model problem.
"""

import json
import os
import shutil
import sys
import tempfile


def import_module():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    candidates = [
        os.path.join(root, "target", profile, name)
        for profile in ("debug", "release")
        for name in ("libholoconvex_py.so", "holoconvex_py.so", "libholoconvex_py.dylib")
    ]
    built = next((p for p in candidates if os.path.exists(p)), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p holoconvex-py")
    stage = tempfile.mkdtemp(prefix="holoconvex_py_")
    shutil.copy(built, os.path.join(stage, "holoconvex_py.so"))
    sys.path.insert(0, stage)
    import holoconvex_py

    return holoconvex_py


def check_series(hx):
    one = hx.Series.constant(1, 4, 1.0)
    z = hx.Series.variable(1, 4, 0)
    prod = (one + z) * (one - z)
    assert abs(prod.coeff([0]) - 1.0) < 1e-14
    assert abs(prod.coeff([1])) < 1e-14
    assert abs(prod.coeff([2]) + 1.0) < 1e-14

    d = (z * z).derive(0)
    assert abs(d.coeff([1]) - 2.0) < 1e-14

    geom = (one - z).reciprocal()
    for k in range(4):
        assert abs(geom.coeff([k]) - 1.0) < 1e-12

    v = (one + z).eval([2.0 + 0.0j])
    assert abs(v - 3.0) < 1e-14
    print("series arithmetic: ok")


PROBLEM = {
    "dimension": 2,
    "order": 8,
    "tolerance": 1e-9,
    "rho": [
        {"z": [0, 1], "zbar": [0, 0], "coeff": [-1.0, 0.0]},
        {"z": [0, 0], "zbar": [0, 1], "coeff": [-1.0, 0.0]},
        {"z": [1, 0], "zbar": [1, 0], "coeff": [1.0, 0.0]},
    ],
    "operator": [
        {"alpha": [0, 2], "coeff": [{"exponents": [1, 0], "coeff": [0.5, 0.0]}]},
        {"alpha": [1, 1], "coeff": [{"exponents": [0, 0], "coeff": [1.0, 0.0]}]},
    ],
    "point": [[0.0, 0.0], [0.0, 0.0]],
    "seed": 42,
}


def check_pipeline(hx):
    text = json.dumps(PROBLEM)
    assert hx.classify(text) == "pos-holds"
    report = json.loads(hx.check(text))
    assert report["schema"] == "holoconvex-report/1"
    assert report["classification"] == "pos-holds"
    assert abs(report["pos_reduced"]["sum_sq"] - 0.25) < 1e-12
    f_terms = report["surface"]["f"]
    assert len(f_terms) == 1
    assert f_terms[0]["exponents"] == [2]
    assert abs(f_terms[0]["coeff"][0] - 0.25) < 1e-10
    spectrum = report["certificate"]["h_spectrum"]
    assert abs(spectrum[0] - 0.5) < 1e-9 and abs(spectrum[-1] - 1.5) < 1e-9
    assert report["certificate"]["sample_min"] > 0.0

    # determinism at the binding level
    assert hx.check(text) == hx.check(text)
    print("pipeline check: ok (classification pos-holds, f = 0.25 z1^2)")

    bad = dict(PROBLEM, dimension=1)
    try:
        hx.check(json.dumps(bad))
    except ValueError:
        print("validation errors raise ValueError: ok")
    else:
        sys.exit("expected a ValueError for dimension 1")


def main():
    hx = import_module()
    check_series(hx)
    check_pipeline(hx)
    table = hx.run_selftest(6)
    print(table.strip().splitlines()[-1])
    print("smoke test passed")


if __name__ == "__main__":
    main()
