"""Hyperboloid-model frames used to realize polygons explicitly.

A frame is a 3x3 matrix in SO+(2,1) for the form diag(1, -1, -1). Column 0
is a point of the hyperboloid, column 1 a unit tangent direction and
column 2 the unit normal to its left.
"""
from __future__ import annotations

import numpy as np

J = np.diag([1.0, -1.0, -1.0])


def boost_x(u: float) -> np.ndarray:
    """Translation by ``u`` along the frame's direction vector."""
    ch, sh = np.cosh(u), np.sinh(u)
    return np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])


def boost_y(t: float) -> np.ndarray:
    """Translation by ``t`` along the frame's left normal."""
    ch, sh = np.cosh(t), np.sinh(t)
    return np.array([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]])


def rotation(theta: float) -> np.ndarray:
    """Counterclockwise rotation of the tangent plane at the frame point."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


LEFT_TURN = rotation(0.5 * np.pi)


def inverse(frame: np.ndarray) -> np.ndarray:
    """Inverse of a Lorentz matrix, ``J F^T J``."""
    return J @ frame.T @ J


def minkowski(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x[..., 0] * y[..., 0] - x[..., 1] * y[..., 1] - x[..., 2] * y[..., 2]


def distance(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Hyperbolic distance between hyperboloid points."""
    return np.arccosh(np.maximum(minkowski(x, y), 1.0))


def fermi_point(frame: np.ndarray, u, t) -> np.ndarray:
    """Point at arclength ``u`` along the frame geodesic and signed distance ``t`` to its left."""
    u = np.asarray(u, dtype=float)
    t = np.asarray(t, dtype=float)
    local = np.stack([np.cosh(u) * np.cosh(t), np.sinh(u) * np.cosh(t), np.sinh(t)], axis=-1)
    return local @ frame.T


def fermi_coords(frame: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`fermi_point`."""
    y = np.asarray(x, dtype=float) @ inverse(frame).T
    t = np.arcsinh(y[..., 2])
    u = np.arctanh(np.clip(y[..., 1] / y[..., 0], -1.0, 1.0))
    return u, t


def centering(points: np.ndarray) -> np.ndarray:
    """Lorentz matrix moving the normalized mean of ``points`` to the origin."""
    m = np.asarray(points, dtype=float).reshape(-1, 3).mean(axis=0)
    m = m / np.sqrt(minkowski(m, m))
    # boost taking m to e0: the inverse of the boost taking e0 to m
    x0, v = m[0], m[1:]
    n = np.linalg.norm(v)
    if n < 1e-15:
        return np.eye(3)
    d = v / n
    ch, sh = x0, n
    b = np.eye(3)
    b[0, 0] = ch
    b[0, 1:] = -sh * d
    b[1:, 0] = -sh * d
    b[1:, 1:] = np.eye(2) + (ch - 1.0) * np.outer(d, d)
    return b


def to_klein(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / x[..., :1]


def from_klein(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    w = 1.0 / np.sqrt(1.0 - np.sum(z * z, axis=-1))
    return np.concatenate([w[..., None], z * w[..., None]], axis=-1)


def klein_metric_sqrt(z: np.ndarray) -> np.ndarray:
    """Symmetric square roots of the Klein-model metric tensor at points ``z``.

    The metric is ``I/(1-r^2) + z z^T/(1-r^2)^2``; its eigenvalues are
    ``1/(1-r^2)`` across and ``1/(1-r^2)^2`` along the radius.
    """
    z = np.asarray(z, dtype=float)
    r2 = np.sum(z * z, axis=-1)
    s = 1.0 - r2
    a = 1.0 / np.sqrt(s)
    b = 1.0 / s
    outer = z[..., :, None] * z[..., None, :]
    safe = np.where(r2 > 0, r2, 1.0)
    proj = outer / safe[..., None, None]
    eye = np.broadcast_to(np.eye(2), proj.shape)
    return a[..., None, None] * (eye - proj) + b[..., None, None] * proj


def equidistant_step(r: float, du: float) -> np.ndarray:
    """Motion along the curve at distance ``r`` to the left of a geodesic.

    The frame sits on the curve with the geodesic on its right; the step
    covers core length ``du``. Computed as ``exp(M)`` with
    ``M = du * N(-r) X N(r)``, using ``M^3 = du^2 M`` so that nothing of size
    ``cosh(r)`` is ever formed on its own.
    """
    c = du * np.cosh(r) if r < 700 else np.exp(np.log(du) + r - np.log(2.0))
    s = du * np.sinh(r) if r < 700 else c
    m = np.array([[0.0, c, 0.0], [c, 0.0, s], [0.0, -s, 0.0]])
    lam = abs(du)
    if lam < 1e-8:
        a, b = 1.0 + lam * lam / 6.0, 0.5 + lam * lam / 24.0
    else:
        a, b = np.sinh(lam) / lam, (np.cosh(lam) - 1.0) / (lam * lam)
    return np.eye(3) + a * m + b * (m @ m)
