"""Gauss-Legendre rules on a circle and the scalar rational filter.

The filter value at a point mu is

    psi(mu) = (1/2) * sum_j w_j * (z_j - c) / (z_j - mu),

with nodes z_j = c + rho * exp(i * theta_j), theta_j = (1 + t_j) * pi.
Its real part is strictly above 1/2 inside the circle and strictly below
1/2 outside, which is what turns the quadrature into a counting tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NodeCollision

MAX_NODES = 512
NODE_COLLISION_REL = 1e-14


@dataclass(frozen=True)
class Disk:
    """Open disk in the complex plane: |z - center| < radius."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        if not np.isfinite(self.center.real) or not np.isfinite(self.center.imag):
            raise ValueError("disk center must be finite")

    def contains(self, mu):
        return abs(mu - self.center) < self.radius


@dataclass(frozen=True)
class ContourRule:
    """A Gauss-Legendre rule mapped onto the boundary circle of a disk."""

    disk: Disk
    nodes_1d: np.ndarray  # t_j on (-1, 1), ascending
    weights: np.ndarray  # w_j, sum to 2
    angles: np.ndarray  # theta_j = (1 + t_j) * pi
    points: np.ndarray  # z_j on the circle

    @property
    def q(self):
        return len(self.nodes_1d)


def gauss_legendre(q):
    """Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on the Legendre recurrence from Chebyshev-like
    initial guesses; accurate to ~1e-15 for q up to 512.
    """
    if not (1 <= q <= MAX_NODES):
        raise ValueError(f"node count must be in [1, {MAX_NODES}], got {q}")
    if q == 1:
        return np.zeros(1), np.full(1, 2.0)
    k = np.arange(1, q + 1)
    x = np.cos(np.pi * (4 * k - 1) / (4 * q + 2))
    for _ in range(100):
        # evaluate P_q and P_{q-1} by the three-term recurrence
        p0 = np.ones_like(x)
        p1 = x.copy()
        for m in range(2, q + 1):
            p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp = q * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    # final derivative at the converged nodes
    p0 = np.ones_like(x)
    p1 = x.copy()
    for m in range(2, q + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    dp = q * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


def map_to_circle(rule, disk: Disk):
    """Map a [-1, 1] rule onto the boundary circle of a disk."""
    t, w = rule
    t = np.asarray(t, dtype=float)
    w = np.asarray(w, dtype=float)
    theta = (1.0 + t) * np.pi
    z = disk.center + disk.radius * np.exp(1j * theta)
    return ContourRule(disk, t, w, theta, z)


def contour_rule(disk: Disk, q):
    """Convenience: generate and map a q-point rule in one step."""
    return map_to_circle(gauss_legendre(q), disk)


@dataclass(frozen=True)
class FilterValue:
    """Scalar filter evaluation with its per-node diagnostic terms."""

    value: complex
    g_terms: np.ndarray  # Re[(z_j - c) / (z_j - mu)], one per node

    @property
    def real_part(self):
        return self.value.real


def filter_value(rule: ContourRule, mu):
    """Evaluate the rational filter at a single point.

    Raises :class:`NodeCollision` when mu is within 1e-14 * radius of a
    quadrature node, where the resolvent term overflows meaningfully.
    """
    disk = rule.disk
    d = rule.points - mu
    if np.min(np.abs(d)) <= NODE_COLLISION_REL * disk.radius:
        raise NodeCollision(f"evaluation point {mu} coincides with a quadrature node")
    terms = (rule.points - disk.center) / d
    value = complex(0.5 * np.sum(rule.weights * terms))
    return FilterValue(value, terms.real)


def filter_values(rule: ContourRule, mus):
    """Vectorized filter evaluation (no collision guard) for sweeps."""
    mus = np.asarray(mus, dtype=complex)
    d = rule.points[None, :] - mus[:, None]
    terms = (rule.points - rule.disk.center)[None, :] / d
    return 0.5 * (terms * rule.weights[None, :]).sum(axis=1)


def filter_profile(rule: ContourRule, r_max, n_samples):
    """Sample Re psi on a polar grid around the disk center.

    Returns an (n_samples^2, 3) float array with columns (r, theta,
    re_psi).  Samples that would collide with a quadrature node are
    nudged radially by 1e-12 * radius so the grid is always evaluable.
    """
    if not (r_max > 0):
        raise ValueError("r_max must be positive")
    if n_samples < 2:
        raise ValueError("need at least 2 samples per axis")
    disk = rule.disk
    rs = np.linspace(0.0, r_max, n_samples)
    thetas = np.linspace(-np.pi, np.pi, n_samples + 1)[1:]  # theta in (-pi, pi]
    rr, tt = np.meshgrid(rs, thetas, indexing="ij")
    mus = disk.center + rr * np.exp(1j * tt)
    dist = np.min(np.abs(rule.points[None, None, :] - mus[:, :, None]), axis=2)
    collide = dist <= NODE_COLLISION_REL * disk.radius
    if np.any(collide):
        rr = rr + collide * 1e-12 * disk.radius
        mus = disk.center + rr * np.exp(1j * tt)
    re_psi = filter_values(rule, mus.ravel()).real
    out = np.column_stack([rr.ravel(), tt.ravel(), re_psi])
    return out


def write_profile_csv(path_or_fh, samples):
    """Write profile samples as CSV with 17 significant digits."""
    header = "r,theta,re_psi\n"
    own = isinstance(path_or_fh, (str, bytes)) or hasattr(path_or_fh, "__fspath__")
    fh = open(path_or_fh, "w", encoding="ascii") if own else path_or_fh
    try:
        fh.write(header)
        for r, theta, re_psi in samples:
            fh.write(f"{r:.17g},{theta:.17g},{re_psi:.17g}\n")
    finally:
        if own:
            fh.close()
