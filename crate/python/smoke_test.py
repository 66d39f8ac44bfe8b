"""Smoke test for the berezin_py extension module.

Build the extension first:

    cargo build -p berezin-py

then run this script with the same Python the module was built against:

    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parents[1]
    candidates = [
        root / "target" / "debug" / "libberezin_py.so",
        root / "target" / "release" / "libberezin_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("libberezin_py.so not found; run `cargo build -p berezin-py` first")
    # import machinery wants the module name without the lib prefix
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="berezin_py_"))
    shutil.copy(built, tmp / "berezin_py.so")
    sys.path.insert(0, str(tmp))
    import berezin_py

    return berezin_py


def main():
    bz = load_module()

    model = bz.Model.standard(2)
    assert model.dim == 2 and model.point_count == 2, repr(model)

    nilpotent = [[0.0, 1.0], [0.0, 0.0]]
    for t in (0.0, 0.25, 0.5, 0.8, 1.0):
        got = bz.t_berezin_norm(model, nilpotent, t)
        assert abs(got - max(t, 1.0 - t)) < 1e-12, (t, got)
    assert bz.berezin_number(model, nilpotent) < 1e-15
    assert abs(bz.berezin_norm(model, nilpotent) - 1.0) < 1e-12

    t_star, value = bz.min_t(model, nilpotent)
    assert abs(t_star - 0.5) < 1e-5 and abs(value - 0.5) < 1e-8, (t_star, value)

    ones = [[1.0, 1.0], [1.0, 1.0]]
    _, ones_min = bz.min_t(model, ones)
    assert abs(ones_min - 1.0) < 1e-8, ones_min

    equal, witness = bz.equality_test(model, ones, 0.3)
    assert equal and witness is not None, (equal, witness)
    equal, witness = bz.equality_test(model, nilpotent, 0.3)
    assert not equal and witness is None, (equal, witness)

    s = 1.0 / math.sqrt(2.0)
    rotation = [[complex(s, 0.0), complex(-s, 0.0)], [complex(s, 0.0), complex(s, 0.0)]]
    assert bz.unitary_test(model, rotation)
    assert not bz.unitary_test(model, [[2.0, 0.0], [0.0, 0.5]])

    hardy = bz.Model.hardy(8, [0.3, 0.7], 8)
    shift = [[0.0] * 9 for _ in range(9)]
    for i in range(1, 9):
        shift[i][i - 1] = 1.0
    assert bz.berezin_norm(hardy, shift) <= 1.0 + 1e-12

    for part in bz.check_sandwich(model, [[1.0, 2.0], [3.0, complex(0.0, 4.0)]], 0.3):
        assert part["holds"], part

    ids = bz.bound_ids()
    assert len(ids) == 23 and "sandwich" in ids and "orlicz_main" in ids

    report = bz.verify(seed=7, cases_per=5, bounds=["sandwich", "mixed", "block_2x2"])
    assert report["failure_count"] == 0, report
    # three bounds, five operator classes each, five cases per class
    assert report["total_cases"] == 3 * 5 * 5, report["total_cases"]

    outcomes = bz.self_test_mutation(cases_per=2)
    assert all(o["detected"] for o in outcomes), outcomes

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
