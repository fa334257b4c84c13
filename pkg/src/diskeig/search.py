"""Rank search for the filtered sample block.

Starting from p Gaussian sample vectors, the filtered block is grown by a
factor alpha until its numerical rank stalls below the block width.  The
rank is then an upper bound s1 on the number of eigenvalues inside the
disk, and the orthonormal RRQR factor spans the captured eigenspace.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import MaxRoundsExceeded
from .projector import NodeFactorizations, Pencil, apply_filtered, factorize_nodes
from .quadrature import Disk, contour_rule

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    alpha: float = 1.5  # block growth factor per round
    p: int = 10  # initial sample-vector count
    q: int = 16  # quadrature node count
    rng_seed: int = 0
    rank_tol: float | None = None  # None -> kernels.default_rank_tol
    max_rounds: int = 8

    def __post_init__(self):
        if not self.alpha > 1:
            raise ValueError(f"growth factor must exceed 1, got {self.alpha}")
        if self.p < 1:
            raise ValueError("initial sample count must be at least 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")
        if self.q < 1:
            raise ValueError("quadrature node count must be at least 1")


@dataclass(frozen=True)
class SearchResult:
    u1: np.ndarray  # orthonormal n x s1 basis of the captured eigenspace
    s1: int  # numerical rank: upper bound on the inside count
    s0: int  # stochastic trace estimate
    trace_imag: float  # imaginary part of the raw trace, diagnostic
    rounds_used: int
    total_solves: int  # right-hand-side columns filtered, times q
    facts: NodeFactorizations = field(repr=False, compare=False, default=None)


def sample_gaussian(n, m, rng):
    """Standard-normal n x m sample, promoted to complex.

    ``rng`` may be a seed or a numpy Generator; passing the same seed
    reproduces the same block.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return rng.standard_normal((n, m)).astype(complex)


def trace_estimate(y, u):
    """Ceil of the per-column trace of y* @ u, floored at zero.

    With u the filtered image of y this estimates the inside eigenvalue
    count.  Returns (estimate, imaginary diagnostic).
    """
    if y.shape != u.shape:
        raise ValueError("sample and filtered blocks must have equal shapes")
    p = y.shape[1]
    t = np.trace(y.conj().T @ u) / p
    return max(0, math.ceil(t.real)), float(t.imag)


def search(pencil: Pencil, disk: Disk, config: SearchConfig, facts=None, threads=None):
    """Find an upper bound s1 and an orthonormal basis of the captured space.

    Control flow per round: widen the sampled block to the target width
    s_star, filter the fresh columns through the cached node
    factorizations, take the rank-revealing QR, and stop as soon as the
    rank falls short of the block width.
    """
    n = pencil.n
    if facts is None:
        facts = factorize_nodes(pencil, contour_rule(disk, config.q), threads)
    rng = np.random.default_rng(config.rng_seed)
    rank_tol = config.rank_tol

    p = min(config.p, n)
    y = sample_gaussian(n, p, rng)
    u = apply_filtered(facts, pencil, y, threads)
    total_solves = p * facts.q
    s0, trace_imag = trace_estimate(y, u)
    s_star = min(max(p, s0), n)
    sample_scale = np.max(np.linalg.norm(y, axis=0))

    rounds = 0
    while True:
        rounds += 1
        if s_star > p:
            y_hat = sample_gaussian(n, s_star - p, rng)
            u_hat = apply_filtered(facts, pencil, y_hat, threads)
            total_solves += (s_star - p) * facts.q
            u = np.hstack([u, u_hat])
            sample_scale = max(sample_scale, np.max(np.linalg.norm(y_hat, axis=0)))
        else:
            s_star = p
        tol = rank_tol if rank_tol is not None else kernels.default_rank_tol(*u.shape)
        if np.max(np.linalg.norm(u, axis=0)) <= tol * sample_scale:
            # the whole filtered block is zero at the sample's scale: every
            # sampled direction was annihilated, so nothing lies inside
            rrqr = kernels.RRQRFactors(
                np.zeros((n, 0), dtype=complex),
                np.zeros((0, u.shape[1]), dtype=complex),
                np.arange(u.shape[1]),
                0,
            )
        else:
            rrqr = kernels.qr_column_pivoted(u, rank_tol)
        s1 = rrqr.rank
        log.debug("search round %d: block width %d, rank %d", rounds, s_star, s1)
        result = SearchResult(rrqr.q1, s1, s0, trace_imag, rounds, total_solves, facts)
        if s1 < s_star:
            return result
        if s_star >= n:
            # the block saturates the whole space; no wider sample can make
            # the rank stall, and s1 = n is already a valid upper bound
            return result
        if rounds >= config.max_rounds:
            raise MaxRoundsExceeded(
                f"rank search did not stall within {config.max_rounds} rounds "
                f"(last rank {s1} of width {s_star})",
                partial=result,
            )
        p = s1
        s_star = min(math.ceil(config.alpha * s1), n)
