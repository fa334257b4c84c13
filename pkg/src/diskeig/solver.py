"""Subspace eigensolver that stops once the counted number of pairs converge.

Each sweep re-orthonormalizes the filtered block, projects the pencil to
an s1 x s1 problem through two thin QRs, lifts the Ritz vectors, and
accepts pairs inside the disk whose relative residual beats the
tolerance.  The exact inside count from the counting stage decides when
every wanted pair has been found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .counting import CountReport, count_eigs
from .errors import DegenerateVector, IllConditionedProjection
from .projector import Pencil, apply_filtered
from .quadrature import Disk
from .search import SearchConfig

DUP_EIG_REL = 1e-12  # eigenvalue coincidence threshold, relative to radius
DUP_ALIGN = 1 - 1e-8  # eigenvector alignment above which a pair is a duplicate


@dataclass(frozen=True)
class EigsConfig(SearchConfig):
    eps: float = 1e-10  # relative residual tolerance
    max_iter: int = 20  # sweep cap (the refinement loop starts at k = 2)
    kappa_cap: float = 1e12  # projected-B condition cap

    def __post_init__(self):
        super().__post_init__()
        if not self.eps > 0:
            raise ValueError("residual tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class EigenpairSet:
    eigenvalues: np.ndarray  # accepted eigenvalues, inside the disk
    vectors: np.ndarray  # matching unit-norm eigenvectors, one per column
    residuals: np.ndarray
    iterations_used: int
    converged: bool  # exactly s accepted pairs were found
    count_report: CountReport = field(repr=False, compare=False, default=None)


def residual(pencil: Pencil, lam, x):
    """Relative eigenpair residual ||A x - lam B x|| / (||A x|| + ||B x||).

    Scale-invariant in x by construction.
    """
    x = np.asarray(x, dtype=complex)
    if not np.any(x):
        raise DegenerateVector("residual of the zero vector is undefined")
    ax = pencil.a_dense @ x
    bx = pencil.b_dense @ x
    denom = np.linalg.norm(ax) + np.linalg.norm(bx)
    if denom == 0.0:
        raise DegenerateVector("A x and B x both vanish; residual undefined")
    return float(np.linalg.norm(ax - lam * bx) / denom)


def _dedupe(accepted, radius):
    """Collapse accepted pairs that duplicate an eigenvalue and direction."""
    kept = []
    for lam, x, res in accepted:
        dup = False
        for klam, kx, _ in kept:
            if abs(lam - klam) <= DUP_EIG_REL * radius and abs(np.vdot(kx, x)) > DUP_ALIGN:
                dup = True
                break
        if not dup:
            kept.append((lam, x, res))
    return kept


def _projected_pairs(pencil, u_block, kappa_cap):
    """Rayleigh-Ritz pairs of the pencil over span(u_block)."""
    u1, _ = kernels.qr_thin(u_block)
    u2, _ = kernels.qr_thin(pencil.b_dense @ u_block)
    a_t = u2.conj().T @ pencil.a_dense @ u1
    b_t = u2.conj().T @ pencil.b_dense @ u1
    cond = np.linalg.cond(b_t)
    if not np.isfinite(cond) or cond > kappa_cap:
        raise IllConditionedProjection(
            f"projected B has condition estimate {cond:.3e} above the cap {kappa_cap:.1e}"
        )
    bf = kernels.lu_factor(b_t)
    lam, y = kernels.eig_dense(kernels.lu_solve(bf, a_t), vectors=True)
    x = u1 @ y
    x /= np.linalg.norm(x, axis=0, keepdims=True)
    return lam, x, u1


def refine_eigenpairs(pencil: Pencil, disk: Disk, config: EigsConfig = None, threads=None):
    """Compute the eigenpairs inside the disk to the residual tolerance.

    The counting stage supplies both the stopping target s and an
    already-filtered block, so the refinement loop starts at its second
    effective iteration.  Hitting the sweep cap returns a partial set
    with ``converged=False`` instead of raising.
    """
    if config is None:
        config = EigsConfig()
    report = count_eigs(pencil, disk, config, threads=threads)
    s = report.s
    facts = report.search_result.facts

    empty = EigenpairSet(
        np.zeros(0, dtype=complex), np.zeros((pencil.n, 0), dtype=complex),
        np.zeros(0), 1, converged=True, count_report=report,
    )
    if s == 0:
        return empty

    u_block = report.u2_filtered
    best = None
    for k in range(2, config.max_iter + 1):
        lam, x, u1 = _projected_pairs(pencil, u_block, config.kappa_cap)
        accepted = []
        for i in range(len(lam)):
            if not disk.contains(lam[i]):
                continue
            res = residual(pencil, lam[i], x[:, i])
            if res < config.eps:
                accepted.append((complex(lam[i]), x[:, i], res))
        accepted = _dedupe(accepted, disk.radius)
        result = EigenpairSet(
            np.array([a[0] for a in accepted], dtype=complex),
            np.column_stack([a[1] for a in accepted]) if accepted
            else np.zeros((pencil.n, 0), dtype=complex),
            np.array([a[2] for a in accepted], dtype=float),
            iterations_used=k,
            converged=len(accepted) == s,
            count_report=report,
        )
        if result.converged:
            return result
        if best is None or len(result.eigenvalues) > len(best.eigenvalues):
            best = result
        u_block = apply_filtered(facts, pencil, u1, threads)
    if best is not None:
        return best
    # the sweep budget ran out before any pair was accepted
    return EigenpairSet(
        np.zeros(0, dtype=complex), np.zeros((pencil.n, 0), dtype=complex),
        np.zeros(0), max(config.max_iter, 1), converged=False, count_report=report,
    )
