"""Brute-force ground truth for tests and the reference benchmark.

A dense generalized eigendecomposition plus geometric counting gives an
independent answer to "how many eigenvalues lie inside the disk", against
which the contour pipeline is checked.  The module also hosts the 8x8
diagonal benchmark that compares the analytic filter diagonal against the
eigenvalues of the counting matrix digit by digit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .counting import build_m, count_eigs, sort_eigs
from .errors import MaxRoundsExceeded, NumericalFailure
from .projector import Pencil, apply_filtered
from .quadrature import Disk, contour_rule, filter_values
from .search import SearchConfig

ORACLE_CAP = 2048


@dataclass(frozen=True)
class SpectrumOracle:
    """Full spectrum of a pencil; singular-B directions show up as inf."""

    eigenvalues: np.ndarray  # finite values, with np.inf for infinite ones
    vectors: np.ndarray  # right eigenvectors, one per column
    max_residual: float  # worst relative residual over the finite pairs

    @property
    def finite(self):
        return self.eigenvalues[np.isfinite(self.eigenvalues)]

    @property
    def n_infinite(self):
        return int(np.count_nonzero(~np.isfinite(self.eigenvalues)))


def dense_generalized_eig(a, b=None):
    """Dense QZ-based generalized eigendecomposition (the ground truth)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n > ORACLE_CAP:
        raise ValueError(f"oracle limited to n <= {ORACLE_CAP}, got {n}")
    if b is None:
        b = np.eye(n, dtype=complex)
    else:
        b = np.asarray(b, dtype=complex)
    try:
        w, vr = scipy.linalg.eig(a, b, right=True)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"generalized eigendecomposition failed: {exc}") from exc
    # scipy reports non-finite directions as inf or nan; fold both to inf
    bad = ~np.isfinite(w)
    w = np.where(bad, np.inf + 0j, w)
    scale = np.linalg.norm(a) + np.linalg.norm(b)
    worst = 0.0
    for i in range(n):
        if not np.isfinite(w[i]):
            continue
        x = vr[:, i]
        r = np.linalg.norm(a @ x - w[i] * (b @ x)) / (np.linalg.norm(x) * scale)
        worst = max(worst, float(r))
    return SpectrumOracle(w, vr, worst)


def exact_count(oracle: SpectrumOracle, disk: Disk, boundary_band=0.0):
    """Geometric count of finite eigenvalues strictly inside the disk.

    Eigenvalues within ``boundary_band * radius`` of the circle are
    returned separately; one sitting exactly on the circle is excluded
    from the count.
    """
    finite = oracle.finite
    dist = np.abs(finite - disk.center)
    count = int(np.count_nonzero(dist < disk.radius))
    near = [complex(v) for v, d in zip(finite, dist)
            if abs(d - disk.radius) <= boundary_band * disk.radius]
    return count, near


def filter_diagonal(eigenvalues, rule):
    """Filter value at each eigenvalue: the diagonal the pipeline must match."""
    return filter_values(rule, np.asarray(eigenvalues, dtype=complex))


@dataclass(frozen=True)
class BenchmarkResult:
    """Side-by-side filter diagonal vs counting-matrix eigenvalues."""

    eigenvalues: np.ndarray  # the 8 true eigenvalues 0.1 .. 0.8
    d_column: np.ndarray  # Re of filter diagonal, descending
    m_column: np.ndarray  # Re of counting-matrix eigenvalues, descending
    count: int
    seed: int
    q: int
    disk: Disk


# The published reference table was generated with 36 quadrature nodes:
# at q=36 all eight filter-diagonal digits reproduce to ~1e-13, while the
# narrative's q=32 gives 0.7488 for the near-boundary entry.
BENCHMARK_Q = 36
BENCHMARK_DISK = Disk(0.0 + 0.0j, 0.401)


def diagonal_benchmark(seed=0, q=BENCHMARK_Q, disk=BENCHMARK_DISK, p=6,
                       rank_tol=1e-15):
    """Run the 8x8 similarity benchmark with a random basis.

    Builds A = S diag(0.1..0.8) S^{-1}, B = I with S drawn from the seed,
    forces a single search round with p sample vectors (wide enough to
    capture all four inside eigenvalues), and compares the S-independent
    filter diagonal with the counting-matrix eigenvalues.

    The rank tolerance is pinned well below the default so the counting
    matrix keeps its full p x p shape for every basis draw; the trailing
    eigenvalues sit around 1e-12 and would otherwise drop out for
    unlucky seeds.
    """
    lam = np.arange(1, 9) * 0.1
    rng = np.random.default_rng(seed)
    s_mat = rng.standard_normal((8, 8))
    a = s_mat @ np.diag(lam) @ np.linalg.inv(s_mat)
    pencil = Pencil(a)

    rule = contour_rule(disk, q)
    d_col = np.sort(filter_diagonal(lam, rule).real)[::-1]

    config = SearchConfig(p=p, q=q, rng_seed=seed, max_rounds=1, rank_tol=rank_tol)
    try:
        report = count_eigs(pencil, disk, config)
        mu = report.mu_eigs
        count = report.s
    except MaxRoundsExceeded as exc:
        # single forced round: finish the counting step from the partial basis
        sr = exc.partial
        u2 = apply_filtered(sr.facts, pencil, sr.u1)
        mu = sort_eigs(kernels.eig_dense(build_m(sr.u1, u2)))
        count = int(np.count_nonzero(mu.real > 0.5))
    return BenchmarkResult(lam, d_col, mu.real.copy(), count, seed, q, disk)


def benchmark_table_text(result: BenchmarkResult):
    """Aligned text rendering of the benchmark comparison."""
    lines = [
        f"diagonal benchmark: q={result.q}, center={result.disk.center}, "
        f"radius={result.disk.radius}, seed={result.seed}",
        f"{'i':>2}  {'Re filter diag':>22}  {'Re eig(counting matrix)':>24}",
    ]
    for i in range(len(result.d_column)):
        m = f"{result.m_column[i]:.15f}" if i < len(result.m_column) else ""
        lines.append(f"{i + 1:>2}  {result.d_column[i]:>22.15f}  {m:>24}")
    lines.append(f"eigenvalues counted inside: {result.count}")
    return "\n".join(lines) + "\n"


def benchmark_table_csv(result: BenchmarkResult):
    """CSV rendering with 17 significant digits."""
    rows = ["i,re_filter_diag,re_eig_m"]
    for i in range(len(result.d_column)):
        m = f"{result.m_column[i]:.17g}" if i < len(result.m_column) else ""
        rows.append(f"{i + 1},{result.d_column[i]:.17g},{m}")
    return "\n".join(rows) + "\n"
