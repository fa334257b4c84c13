import os
import pathlib

import numpy as np
import pytest

from diskeig import Disk, Pencil


def make_pencil(rng, n, disk, n_inside, d_in=0.3, d_out=0.5, r_out_max=3.0,
                generalized=True):
    """Random diagonalizable pencil with a prescribed inside count.

    Eigenvalues are placed at radial distance at least ``d_in * radius``
    inside and ``d_out * radius`` outside the circle.  A = S diag(lam) T
    and B = S T share the well-conditioned factors, so the pencil
    eigenvalues are exactly ``lam``.
    """
    rho, c = disk.radius, disk.center
    r_in = rng.uniform(0.0, (1.0 - d_in) * rho, size=n_inside)
    r_out = rng.uniform((1.0 + d_out) * rho, r_out_max * rho, size=n - n_inside)
    angles = rng.uniform(-np.pi, np.pi, size=n)
    lam = c + np.concatenate([r_in, r_out]) * np.exp(1j * angles)

    def well_conditioned(k):
        q, _ = np.linalg.qr(rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)))
        return q @ np.diag(rng.uniform(0.5, 2.0, size=k))

    s_mat = well_conditioned(n)
    t_mat = well_conditioned(n) if generalized else np.linalg.inv(s_mat)
    a = s_mat @ np.diag(lam) @ t_mat
    b = s_mat @ t_mat
    return Pencil(a, b), lam


def matrix_dir():
    """Directory holding the fetched Matrix Market test problems."""
    env = os.environ.get("DISKEIG_MATRIX_DIR")
    if env:
        return pathlib.Path(env)
    return pathlib.Path(__file__).resolve().parent.parent / "data" / "matrices"


def require_matrices(*names):
    base = matrix_dir()
    paths = [base / name for name in names]
    missing = [p.name for p in paths if not p.exists()]
    if missing:
        pytest.skip(f"matrix files not fetched: {', '.join(missing)} "
                    f"(run docs/fetch_matrices.sh)")
    return paths


@pytest.fixture
def unit_disk():
    return Disk(0.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
