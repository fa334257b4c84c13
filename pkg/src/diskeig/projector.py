"""Approximate spectral projector: cached node factorizations and block apply.

The projector action on a block Y is

    (1/2) * sum_j w_j * (z_j - c) * (z_j*B - A)^{-1} @ (B @ Y),

one shifted solve per quadrature node against the shared right-hand side
B @ Y.  Node factorizations and node solves are independent and can run
on a thread pool; contributions are always accumulated in ascending node
order so serial and parallel runs produce identical sums.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import AllNodesSingular, NodeSingular, SingularMatrix
from .mmio import SparseMatrix
from .quadrature import ContourRule

DENSE_CAP = 4096


class Pencil:
    """The matrix pair (A, B) of a generalized eigenproblem A x = lambda B x.

    Accepts sparse coordinate matrices or dense arrays; dense working
    forms are materialized lazily and promoted to complex.  B may be None
    for the standard eigenproblem (B = identity).
    """

    def __init__(self, a, b=None, dense_cap=DENSE_CAP):
        self._a_src = a
        self._b_src = b
        n = a.n_rows if isinstance(a, SparseMatrix) else np.asarray(a).shape[0]
        a_cols = a.n_cols if isinstance(a, SparseMatrix) else np.asarray(a).shape[1]
        if a_cols != n:
            raise ValueError("A must be square")
        if b is not None:
            bn = b.n_rows if isinstance(b, SparseMatrix) else np.asarray(b).shape[0]
            bc = b.n_cols if isinstance(b, SparseMatrix) else np.asarray(b).shape[1]
            if (bn, bc) != (n, n):
                raise ValueError(f"B must be {n}x{n} to match A, got {bn}x{bc}")
        if n > dense_cap:
            raise ValueError(
                f"problem size n={n} exceeds the dense working cap {dense_cap}; "
                f"sparse factorization is out of scope, reduce the problem or "
                f"raise dense_cap at your own risk"
            )
        self.n = n

    @cached_property
    def a_dense(self):
        a = self._a_src
        return kernels.as_dense(a.to_dense() if isinstance(a, SparseMatrix) else a)

    @cached_property
    def b_dense(self):
        b = self._b_src
        if b is None:
            return np.eye(self.n, dtype=complex)
        return kernels.as_dense(b.to_dense() if isinstance(b, SparseMatrix) else b)

    @property
    def b_is_identity(self):
        return self._b_src is None

    def shifted(self, z):
        """Dense working form of z*B - A."""
        return z * self.b_dense - self.a_dense


@dataclass(frozen=True)
class NodeFactorizations:
    """Per-node LU factorizations of z_j*B - A, reusable across applies."""

    rule: ContourRule
    factors: tuple  # one LUFactors per node
    near_singular_nodes: tuple  # node indices flagged near-singular

    @property
    def q(self):
        return len(self.factors)


def _node_map(fn, count, threads):
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, range(count)))
    return [fn(j) for j in range(count)]


def factorize_nodes(pencil: Pencil, rule: ContourRule, threads=None):
    """Factor every shifted matrix z_j*B - A.

    A singular node means z_j is an eigenvalue; if every node is singular
    the pencil itself is likely not regular.
    """

    def factor_one(j):
        try:
            return kernels.lu_factor(pencil.shifted(rule.points[j]))
        except SingularMatrix:
            return None

    results = _node_map(factor_one, rule.q, threads)
    failed = [j for j, f in enumerate(results) if f is None]
    if len(failed) == rule.q:
        raise AllNodesSingular(
            "every shifted matrix z_j*B - A is singular; the pencil is not regular"
        )
    if failed:
        j = failed[0]
        raise NodeSingular(j, rule.points[j])
    near = tuple(j for j, f in enumerate(results) if f.near_singular)
    return NodeFactorizations(rule, tuple(results), near)


def apply_filtered(facts: NodeFactorizations, pencil: Pencil, y, threads=None):
    """Apply the approximate spectral projector to a block of vectors.

    B @ y is formed once and shared as the right-hand side of all q
    shifted solves.  The weighted node contributions are summed in
    ascending node order regardless of thread count.
    """
    y = np.asarray(y, dtype=complex)
    squeeze = y.ndim == 1
    if squeeze:
        y = y[:, None]
    if y.shape[0] != pencil.n:
        raise ValueError("block row dimension does not match the pencil")
    rule = facts.rule
    rhs = y if pencil.b_is_identity else pencil.b_dense @ y

    solves = _node_map(lambda j: kernels.lu_solve(facts.factors[j], rhs), rule.q, threads)
    coeff = 0.5 * rule.weights * (rule.points - rule.disk.center)
    out = np.zeros_like(y)
    for j in range(rule.q):
        out += coeff[j] * solves[j]
    return out[:, 0] if squeeze else out
