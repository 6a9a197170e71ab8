import os
import subprocess
import sys

import numpy as np
import pytest

from hypgraft import _kernels_py, kernels

try:
    from hypgraft import _ckernels
except ImportError:
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def _polygon(n=40):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return np.c_[np.cos(t), np.sin(t)] * 0.9


def test_mvc_reproduces_affine_data():
    verts = _polygon()
    A = np.array([[1.2, 0.3], [-0.4, 0.8]])
    vals = verts @ A.T + [0.1, -0.2]
    rng = np.random.default_rng(1)
    pts = rng.uniform(-0.5, 0.5, (200, 2))
    out = kernels.mvc_map(pts, verts, vals)
    assert np.allclose(out, pts @ A.T + [0.1, -0.2], atol=1e-12)


def test_hausdorff_python_matches_brute_force():
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=(300, 4)), rng.normal(size=(250, 4))
    d = np.minimum(np.linalg.norm(a[:, None] - b[None], axis=-1), np.linalg.norm(a[:, None] + b[None], axis=-1))
    assert _kernels_py.directed_hausdorff(a, b, True) == pytest.approx(d.min(axis=1).max(), rel=1e-12)
    d1 = np.linalg.norm(a[:, None] - b[None], axis=-1)
    assert _kernels_py.directed_hausdorff(a, b, False) == pytest.approx(d1.min(axis=1).max(), rel=1e-12)


@needs_ext
def test_backends_agree():
    rng = np.random.default_rng(3)
    verts = _polygon(60)
    vals = rng.normal(size=(60, 3))
    pts = rng.uniform(-0.6, 0.6, (500, 2))
    assert np.allclose(_ckernels.mvc_map(pts, verts, vals), _kernels_py.mvc_map(pts, verts, vals), atol=1e-12)
    a, b = rng.normal(size=(400, 4)), rng.normal(size=(300, 4))
    for signed in (True, False):
        assert _ckernels.directed_hausdorff(a, b, signed) == pytest.approx(
            _kernels_py.directed_hausdorff(a, b, signed), rel=1e-12)


def test_pure_python_switch():
    env = dict(os.environ, HYPGRAFT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from hypgraft import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_python_chabauty_agrees():
    code = ("from hypgraft import chabauty; "
            "print(repr(chabauty.limit_experiment('k_to_K', steps=4)['distances'][-1]))")
    env = dict(os.environ, HYPGRAFT_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("HYPGRAFT_PURE_PYTHON")
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert float(pure.stdout) == pytest.approx(float(fast.stdout), rel=1e-12)
