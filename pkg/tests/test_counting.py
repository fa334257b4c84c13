import numpy as np
import pytest

from diskeig import (
    Disk,
    Pencil,
    SearchConfig,
    build_m,
    contour_rule,
    count_eigs,
    filter_values,
)
from diskeig.counting import sort_eigs
from diskeig.oracle import dense_generalized_eig, diagonal_benchmark, exact_count

from conftest import make_pencil


class TestBuildM:
    def test_identity_basis_gives_filter_diagonal(self, unit_disk):
        from diskeig import apply_filtered, factorize_nodes

        lam = np.array([0.3, 0.7, 2.0, 5.0])
        p = Pencil(np.diag(lam))
        rule = contour_rule(unit_disk, 16)
        facts = factorize_nodes(p, rule)
        u1 = np.eye(4, dtype=complex)
        m = build_m(u1, apply_filtered(facts, p, u1))
        expect = np.diag(filter_values(rule, lam))
        assert np.max(np.abs(m - expect)) <= 1e-12

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            build_m(np.eye(3), np.eye(2))

    def test_exact_inside_eigenspace(self, rng, unit_disk):
        # basis spanning exactly the inside eigenspace: eig(M) are the
        # filter values of the inside eigenvalues
        from diskeig import apply_filtered, eig_dense, factorize_nodes

        n, n_inside = 14, 4
        pencil, lam = make_pencil(rng, n, unit_disk, n_inside, d_in=0.4, d_out=1.0)
        oracle = dense_generalized_eig(pencil.a_dense, pencil.b_dense)
        mask = np.abs(oracle.eigenvalues - unit_disk.center) < unit_disk.radius
        u1, _ = np.linalg.qr(oracle.vectors[:, mask])
        rule = contour_rule(unit_disk, 16)
        facts = factorize_nodes(pencil, rule)
        m = build_m(u1, apply_filtered(facts, pencil, u1))
        got = np.sort(eig_dense(m).real)
        expect = np.sort(filter_values(rule, oracle.eigenvalues[mask]).real)
        assert np.max(np.abs(got - expect)) <= 1e-8


class TestSortEigs:
    def test_order(self):
        mu = np.array([0.1 + 1j, 0.9, 0.9 - 1j, 0.5])
        out = sort_eigs(mu)
        assert np.array_equal(out, np.array([0.9 - 1j, 0.9, 0.5, 0.1 + 1j]))


class TestCountEigs:
    def test_benchmark_count_is_four(self):
        assert diagonal_benchmark(seed=3).count == 4

    def test_empty_disk(self):
        p = Pencil(np.diag([5.0, 6.0, 7.0]))
        report = count_eigs(p, Disk(0.0, 1.0), SearchConfig(p=2, q=16))
        assert report.s == 0
        assert report.mu_eigs.size == 0 or np.all(report.mu_eigs.real < 0.5)

    def test_invariant_ordering(self, rng, unit_disk):
        pencil, _ = make_pencil(rng, 16, unit_disk, 3)
        report = count_eigs(pencil, unit_disk, SearchConfig(q=16))
        assert 0 <= report.s <= report.s1 <= 16
        assert report.s == np.count_nonzero(report.mu_eigs.real > 0.5)

    def test_matches_oracle(self, unit_disk):
        master = np.random.default_rng(17)
        for trial in range(25):
            n = int(master.integers(8, 40))
            n_inside = int(master.integers(0, 7))
            pencil, _ = make_pencil(master, n, unit_disk, n_inside, d_in=0.1, d_out=0.1)
            report = count_eigs(pencil, unit_disk, SearchConfig(q=16, rng_seed=trial))
            oracle = dense_generalized_eig(pencil.a_dense, pencil.b_dense)
            s, _ = exact_count(oracle, unit_disk)
            assert report.s == s == n_inside

    @pytest.mark.parametrize("gamma", [2.0, -1.0, 1j])
    def test_scaling_invariance(self, gamma, unit_disk):
        rng = np.random.default_rng(23)
        pencil, _ = make_pencil(rng, 18, unit_disk, 4)
        config = SearchConfig(q=16, rng_seed=5)
        base = count_eigs(pencil, unit_disk, config).s
        scaled = Pencil(gamma * pencil.a_dense, gamma * pencil.b_dense)
        assert count_eigs(scaled, unit_disk, config).s == base == 4

    def test_disk_additivity(self):
        rng = np.random.default_rng(31)
        d1 = Disk(-2.0, 1.0)
        d2 = Disk(3.0 + 1j, 1.5)
        n = 24
        lam = np.concatenate([
            d1.center + 0.5 * rng.uniform(0.1, 0.9, 3) * np.exp(1j * rng.uniform(-3, 3, 3)),
            d2.center + 1.5 * rng.uniform(0.1, 0.9, 5) * np.exp(1j * rng.uniform(-3, 3, 5)),
            10.0 + rng.uniform(0, 5, n - 8),
        ])
        q_mat, _ = np.linalg.qr(rng.standard_normal((n, n)))
        a = q_mat @ np.diag(lam) @ q_mat.conj().T
        pencil = Pencil(a)
        s1 = count_eigs(pencil, d1, SearchConfig(q=16)).s
        s2 = count_eigs(pencil, d2, SearchConfig(q=16)).s
        oracle = dense_generalized_eig(pencil.a_dense, pencil.b_dense)
        total = exact_count(oracle, d1)[0] + exact_count(oracle, d2)[0]
        assert s1 + s2 == total == 8

    def test_inside_eigs_all_above_half(self, unit_disk):
        lam = np.concatenate([np.linspace(0.1, 0.8, 5),
                              np.linspace(1.3, 4.0, 7)])
        pencil = Pencil(np.diag(lam))
        report = count_eigs(pencil, unit_disk, SearchConfig(q=16))
        assert report.s == 5
        top = np.sort(report.mu_eigs.real)[::-1][:5]
        assert np.all(top > 0.5)

    def test_boundary_warnings(self):
        # an eigenvalue close enough to the circle that its filter value
        # falls in the warning band
        disk = Disk(0.0, 1.0)
        lam = np.array([0.2, 0.999999, 5.0])
        pencil = Pencil(np.diag(lam))
        report = count_eigs(pencil, disk, SearchConfig(q=16, p=3))
        assert len(report.boundary_warnings) >= 1

    def test_timings_recorded(self, unit_disk):
        p = Pencil(np.diag([0.5, 2.0]))
        report = count_eigs(p, unit_disk, SearchConfig(p=2, q=8))
        assert set(report.timings_ms) == {"factorize_ms", "solve_ms", "total_ms"}
        assert report.timings_ms["total_ms"] >= 0
