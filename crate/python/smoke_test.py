"""Smoke test for the pyakizuki extension.

Build and install first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyakizuki-*.whl
"""

import json
import sys

import pyakizuki


def main() -> int:
    inst = pyakizuki.Instance()
    assert inst.exponents == [0, 2, 6, 14, 30, 62, 126], inst.exponents
    assert pyakizuki.minimal_exponents(2) == [0, 2, 6, 14]
    assert inst.violations() == []

    assert inst.parse("(z0 - 1)^2") == "1 + (-2)*z0 + z0^2"
    z0 = inst.z_series(0, 8)
    assert z0 == ["1", "0", "1", "0", "0", "0", "1", "0"], z0

    d = inst.decompose("w0", 2, 20)
    assert (d["x"], d["y"], d["z"], d["exact"]) == ("t^3 + t^7", "1", "0", True), d

    m = inst.member("t^2*z1", 3)
    assert not m["member"]
    assert [(lvl, val, req) for lvl, _, val, req in m["failures"]] == [(1, "2", 3), (2, "6", 7), (3, "14", 15)]
    assert inst.member("t^3*z1", 3)["member"]

    c = inst.claim("t*y0")
    assert (c["n"], c["r"], c["verified"]) == (5, 2, True), c

    assert inst.ex2(1, 4) == [(1, "2", 3), (2, "6", 7), (3, "14", 15), (4, "30", 31)]

    try:
        inst.parse("z9")
    except ValueError as e:
        assert "unknown index" in str(e)
    else:
        raise AssertionError("z9 should be rejected")

    cfg = json.loads(pyakizuki.default_config())
    cfg["suites"] = ["identities", "trick2", "ex2", "akizuki"]
    report = json.loads(pyakizuki.Instance(json.dumps(cfg)).run_suite())
    assert report["summary"]["failed"] == 0, report["summary"]
    print(f"pyakizuki smoke test ok: {report['summary']['total']} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
