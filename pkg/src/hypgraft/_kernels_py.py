"""Pure numpy versions of the hot kernels.

These are the reference implementations; the compiled module must agree
with them to rounding error.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 128


def mvc_map(points: np.ndarray, verts: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Mean value interpolation of ``values`` given at polygon ``verts``.

    Parameters
    ----------
    points : (P, 2) array
        Evaluation points, strictly inside the polygon.
    verts : (N, 2) array
        Polygon vertices in order; the polygon is closed implicitly.
    values : (N, k) array
        Data attached to the vertices.

    Returns
    -------
    (P, k) array
    """
    points = np.ascontiguousarray(points, dtype=float)
    verts = np.ascontiguousarray(verts, dtype=float)
    values = np.ascontiguousarray(values, dtype=float)
    out = np.empty((points.shape[0], values.shape[1]))
    for s in range(0, points.shape[0], _CHUNK):
        p = points[s:s + _CHUNK]
        d = verts[None, :, :] - p[:, None, :]
        r = np.hypot(d[..., 0], d[..., 1])
        dn = np.roll(d, -1, axis=1)
        rn = np.roll(r, -1, axis=1)
        cross = d[..., 0] * dn[..., 1] - d[..., 1] * dn[..., 0]
        dot = d[..., 0] * dn[..., 0] + d[..., 1] * dn[..., 1]
        # tan of half the angle subtended by each edge
        t = cross / (r * rn + dot)
        w = (np.roll(t, 1, axis=1) + t) / r
        out[s:s + _CHUNK] = (w @ values) / w.sum(axis=1)[:, None]
    return out


def directed_hausdorff(a: np.ndarray, b: np.ndarray, signed: bool = True) -> float:
    """``max_x min_y |x - y|`` over rows, Euclidean norm.

    With ``signed`` the rows ``y`` and ``-y`` are identified, as for
    matrices representing the same element of PSL(2, R). Candidates are
    found from the expanded squared distance and the winners are
    re-evaluated directly, so coincident rows give exactly 0.
    """
    a = np.ascontiguousarray(a, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    if a.shape[0] == 0:
        return 0.0
    if b.shape[0] == 0:
        return float("inf")
    k = min(4, b.shape[0])
    bb = np.einsum("ij,ij->i", b, b)
    best = 0.0
    for s in range(0, a.shape[0], 4 * _CHUNK):
        x = a[s:s + 4 * _CHUNK]
        g = x @ b.T
        if signed:
            g = np.abs(g)
        d2 = bb[None, :] - 2.0 * g
        idx = np.argpartition(d2, k - 1, axis=1)[:, :k]
        cand = b[idx]
        diff = np.sum((cand - x[:, None, :]) ** 2, axis=-1)
        if signed:
            diff = np.minimum(diff, np.sum((cand + x[:, None, :]) ** 2, axis=-1))
        best = max(best, float(np.sqrt(diff.min(axis=1)).max()))
    return best
