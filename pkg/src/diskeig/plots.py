"""Figure rendering for the report paths.

Figures are written straight to files (Agg backend), next to the CSV or
JSON they illustrate.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_filter_profile(samples, path, radius=1.0):
    """Two-panel view of the radial filter profile: linear and log scale.

    ``samples`` is the (r, theta, re_psi) array from the profile sweep;
    one curve per sampled angle.
    """
    samples = np.asarray(samples)
    rs = np.unique(samples[:, 0])
    fig, (ax_lin, ax_log) = plt.subplots(1, 2, figsize=(10, 4))
    for theta in np.unique(samples[:, 1]):
        sel = samples[samples[:, 1] == theta]
        sel = sel[np.argsort(sel[:, 0])]
        ax_lin.plot(sel[:, 0], sel[:, 2], lw=0.8, alpha=0.6)
        ax_log.semilogy(sel[:, 0], np.abs(sel[:, 2]), lw=0.8, alpha=0.6)
    for ax in (ax_lin, ax_log):
        ax.axvline(radius, color="k", ls=":", lw=0.8)
        ax.set_xlabel("r")
        ax.set_xlim(rs.min(), rs.max())
    ax_lin.axhline(0.5, color="r", ls="--", lw=0.8, label="1/2 threshold")
    ax_lin.set_ylabel("Re psi")
    ax_lin.legend(loc="upper right", fontsize=8)
    ax_log.axhline(0.5, color="r", ls="--", lw=0.8)
    ax_log.set_ylabel("|Re psi|")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_counting_spectrum(mu_eigs, path):
    """Scatter of the counting-matrix eigenvalues against the 1/2 threshold."""
    mu = np.asarray(mu_eigs, dtype=complex)
    fig, ax = plt.subplots(figsize=(5, 4))
    inside = mu.real > 0.5
    ax.scatter(mu.real[inside], mu.imag[inside], marker="o", label="counted (Re > 1/2)")
    ax.scatter(mu.real[~inside], mu.imag[~inside], marker="x", label="not counted")
    ax.axvline(0.5, color="r", ls="--", lw=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_benchmark(result, path):
    """Bar comparison of filter diagonal vs counting-matrix eigenvalues."""
    fig, ax = plt.subplots(figsize=(6, 4))
    idx = np.arange(1, len(result.d_column) + 1)
    ax.bar(idx - 0.2, result.d_column, width=0.4, label="Re filter diag")
    m = result.m_column
    ax.bar(np.arange(1, len(m) + 1) + 0.2, m, width=0.4, label="Re eig(counting matrix)")
    ax.axhline(0.5, color="r", ls="--", lw=0.8)
    ax.set_xlabel("index (descending Re)")
    ax.set_yscale("symlog", linthresh=1e-12)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
