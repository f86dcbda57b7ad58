"""Compiled kernels and the NumPy fallback must agree exactly."""

import numpy as np
import pytest

from gmcs._core import fallback

_kernels = pytest.importorskip(
    "gmcs._core._kernels", reason="compiled extension not built"
)


def test_selector_prefers_compiled():
    import gmcs._core as core

    assert core.COMPILED
    assert core.reg_inc_beta is _kernels.reg_inc_beta


def test_reg_inc_beta_matches_fallback():
    rng = np.random.default_rng(31)
    for _ in range(300):
        x = float(rng.uniform(0, 1))
        a = float(rng.uniform(0.1, 40))
        b = float(rng.uniform(0.1, 40))
        got = _kernels.reg_inc_beta(x, a, b)
        want = fallback.reg_inc_beta(x, a, b)
        assert got == pytest.approx(want, rel=1e-13, abs=1e-300)


def test_reg_inc_beta_many_matches_fallback():
    xs = np.linspace(0, 1, 257)
    a, b = 8.0, 0.5
    assert np.allclose(
        _kernels.reg_inc_beta_many(xs, a, b),
        fallback.reg_inc_beta_many(xs, a, b),
        rtol=1e-13,
        atol=0,
    )


def test_closure_scan_identical_including_ties():
    rng = np.random.default_rng(32)
    for _ in range(200):
        m = int(rng.integers(1, 11))
        p = rng.uniform(0, 1, m)
        alpha = float(rng.uniform(0.01, 0.4))
        thr = np.array([alpha / k for k in range(1, m + 1)])
        if rng.random() < 0.5:
            p[rng.integers(m)] = thr[-1]
        if rng.random() < 0.5:
            p[rng.integers(m)] = 1.0 - thr[-1]
        ch, ck = _kernels.closure_scan(p, thr)
        fh, fk = fallback.closure_scan(p, thr)
        assert np.array_equal(ch, fh)
        assert np.array_equal(ck, fk)


def test_both_enforce_scan_limit():
    p = np.full(17, 0.5)
    thr = np.full(17, 0.01)
    for impl in (_kernels, fallback):
        with pytest.raises(Exception):
            impl.closure_scan(p, thr)


def test_pure_python_env_forces_fallback(tmp_path):
    import subprocess
    import sys

    code = (
        "import gmcs._core as core; "
        "print(core.COMPILED, core.reg_inc_beta.__module__)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "GMCS_PURE_PYTHON": "1"},
    )
    assert out.returncode == 0
    flag, module = out.stdout.split()
    assert flag == "False"
    assert module.endswith("fallback")
