"""Finite-difference stencils used for cross-checks.

These exist to probe closed-form quantities independently; production
evaluation paths never difference anything (gradients and derivatives all
have closed radial forms).
"""

from __future__ import annotations

import numpy as np


def five_point_first(fn, x, h):
    """O(h^4) first derivative of fn at x (vectorized)."""
    x = np.asarray(x, float)
    h = np.broadcast_to(np.asarray(h, float), x.shape)
    pts = x[..., None] + h[..., None] * np.array([-2.0, -1.0, 1.0, 2.0])
    v = fn(pts.reshape(-1)).reshape(pts.shape)
    return (v[..., 0] - 8 * v[..., 1] + 8 * v[..., 2] - v[..., 3]) / (12 * h)


def five_point_second(fn, x, h):
    """O(h^4) second derivative of fn at x (vectorized)."""
    x = np.asarray(x, float)
    h = np.broadcast_to(np.asarray(h, float), x.shape)
    pts = x[..., None] + h[..., None] * np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    v = fn(pts.reshape(-1)).reshape(pts.shape)
    return (-v[..., 0] + 16 * v[..., 1] - 30 * v[..., 2] + 16 * v[..., 3] - v[..., 4]) / (12 * h * h)


def grid_derivative(y, dt):
    """Second-order derivative of samples on a uniform grid.

    Central differences in the interior, one-sided three-point stencils
    at the two endpoints.
    """
    y = np.asarray(y, float)
    out = np.empty_like(y)
    out[1:-1] = (y[2:] - y[:-2]) / (2.0 * dt)
    out[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt)
    out[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * dt)
    return out
