import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diskeig import quadrature as quad
from diskeig.errors import NodeCollision
from diskeig.quadrature import (
    Disk,
    contour_rule,
    filter_profile,
    filter_value,
    filter_values,
    gauss_legendre,
    map_to_circle,
    write_profile_csv,
)


class TestGaussLegendre:
    def test_one_point(self):
        t, w = gauss_legendre(1)
        assert np.allclose(t, [0.0]) and np.allclose(w, [2.0])

    def test_two_point_closed_form(self):
        t, w = gauss_legendre(2)
        assert np.allclose(t, [-1 / np.sqrt(3), 1 / np.sqrt(3)])
        assert np.allclose(w, [1.0, 1.0])

    @pytest.mark.parametrize("q", [3, 8, 16, 64, 200, 512])
    def test_against_numpy_reference(self, q):
        t, w = gauss_legendre(q)
        tr, wr = np.polynomial.legendre.leggauss(q)
        assert np.max(np.abs(t - tr)) <= 1e-14
        assert np.max(np.abs(w - wr)) <= 1e-14

    @pytest.mark.parametrize("q", [1, 4, 16, 100, 512])
    def test_weight_sum_and_positivity(self, q):
        t, w = gauss_legendre(q)
        assert abs(w.sum() - 2.0) <= 1e-14
        assert np.all(w > 0)
        assert np.all(np.diff(t) > 0)
        assert np.all((t > -1) & (t < 1))

    @pytest.mark.parametrize("q", [4, 16, 64])
    def test_nodes_are_legendre_roots(self, q):
        t, _ = gauss_legendre(q)
        c = np.zeros(q + 1)
        c[-1] = 1
        assert np.max(np.abs(np.polynomial.legendre.legval(t, c))) <= 1e-15 * q

    @pytest.mark.parametrize("q", [0, -1, 513])
    def test_out_of_range(self, q):
        with pytest.raises(ValueError):
            gauss_legendre(q)


class TestMapToCircle:
    def test_single_node_maps_to_minus_one(self):
        rule = map_to_circle(gauss_legendre(1), Disk(0.0, 1.0))
        assert np.allclose(rule.angles, [np.pi])
        assert np.allclose(rule.points, [-1.0])

    def test_circle_membership(self):
        disk = Disk(2 + 1j, 0.5)
        rule = contour_rule(disk, 24)
        assert np.max(np.abs(np.abs(rule.points - disk.center) - 0.5)) <= 1e-15

    def test_unit_disk_configuration(self, unit_disk):
        rule = contour_rule(unit_disk, 16)
        assert rule.q == 16
        assert abs(rule.weights.sum() - 2.0) <= 1e-14
        assert np.max(np.abs(np.abs(rule.points) - 1.0)) <= 1e-13

    def test_disk_validation(self):
        with pytest.raises(ValueError):
            Disk(0.0, -1.0)
        with pytest.raises(ValueError):
            Disk(0.0, np.inf)


class TestFilterValue:
    def test_center_is_exactly_one(self, unit_disk):
        rule = contour_rule(unit_disk, 16)
        fv = filter_value(rule, unit_disk.center)
        assert fv.value == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(fv.g_terms, 1.0)

    def test_boundary_real_part_half(self):
        disk = Disk(0.5 - 0.25j, 1.3)
        rule = contour_rule(disk, 16)
        rng = np.random.default_rng(2)
        for theta in rng.uniform(-np.pi, np.pi, size=100):
            mu = disk.center + disk.radius * np.exp(1j * theta)
            if np.min(np.abs(rule.points - mu)) < 5e-2:
                continue  # rounding in the resolvent term blows up near nodes
            assert filter_value(rule, mu).real_part == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("q", [4, 8, 16, 32])
    def test_separation_sweep(self, q):
        disk = Disk(0.3 - 0.7j, 1.7)
        rule = contour_rule(disk, q)
        rng = np.random.default_rng(q)
        n = 10_000
        th = rng.uniform(-np.pi, np.pi, size=n)
        mu_in = disk.center + rng.uniform(0, 0.99) * disk.radius * np.exp(1j * th)
        mu_out = disk.center + rng.uniform(1.01, 10, size=n) * disk.radius * np.exp(1j * th)
        assert np.all(filter_values(rule, mu_in).real > 0.5)
        assert np.all(filter_values(rule, mu_out).real < 0.5)

    def test_assembly_from_g_terms(self, unit_disk):
        rule = contour_rule(unit_disk, 12)
        fv = filter_value(rule, 0.4 + 0.3j)
        assembled = 0.5 * np.sum(rule.weights * fv.g_terms)
        assert abs(assembled - fv.real_part) <= 1e-13

    def test_node_collision(self, unit_disk):
        rule = contour_rule(unit_disk, 8)
        with pytest.raises(NodeCollision):
            filter_value(rule, rule.points[3])

    def test_translation_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            c = complex(rng.standard_normal(), rng.standard_normal())
            rho = float(rng.uniform(0.1, 3))
            mu = c + rng.uniform(0, 4) * rho * np.exp(1j * rng.uniform(-np.pi, np.pi))
            shift = complex(rng.standard_normal(), rng.standard_normal())
            v0 = filter_value(contour_rule(Disk(c, rho), 16), mu).value
            v1 = filter_value(contour_rule(Disk(c + shift, rho), 16), mu + shift).value
            assert abs(v0 - v1) <= 1e-13 * max(1.0, abs(v0))

    def test_rotation_invariance(self):
        # rotating the node set and mu together about the center leaves the
        # filter unchanged: only the relative geometry (r, theta - rotation)
        # enters
        rng = np.random.default_rng(8)
        disk = Disk(1 - 2j, 1.4)
        base = contour_rule(disk, 16)
        for _ in range(50):
            mu = disk.center + rng.uniform(0, 4) * disk.radius * np.exp(
                1j * rng.uniform(-np.pi, np.pi))
            phi = rng.uniform(-np.pi, np.pi)
            rotated = quad.ContourRule(
                disk, base.nodes_1d, base.weights, base.angles + phi,
                disk.center + disk.radius * np.exp(1j * (base.angles + phi)),
            )
            mu_rot = disk.center + (mu - disk.center) * np.exp(1j * phi)
            v0 = filter_value(base, mu).value
            v1 = filter_value(rotated, mu_rot).value
            assert abs(v0 - v1) <= 1e-13 * max(1.0, abs(v0))

    @given(
        r=st.floats(min_value=0.0, max_value=10.0),
        theta=st.floats(min_value=-np.pi, max_value=np.pi),
        q=st.sampled_from([4, 8, 16, 32]),
    )
    @settings(max_examples=200, deadline=None)
    def test_separation_property(self, r, theta, q):
        disk = Disk(0.0, 1.0)
        rule = contour_rule(disk, q)
        if abs(r - 1.0) < 1e-3:
            return  # stay off the boundary band
        mu = r * np.exp(1j * theta)
        if np.min(np.abs(rule.points - mu)) <= 1e-12:
            return
        re = filter_value(rule, mu).real_part
        assert (re > 0.5) == (r < 1.0)


class TestFilterProfile:
    def test_center_row_is_one(self, unit_disk):
        rule = contour_rule(unit_disk, 16)
        samples = filter_profile(rule, 4.0, 20)
        at_zero = samples[samples[:, 0] == 0.0]
        assert np.allclose(at_zero[:, 2], 1.0)

    def test_inside_rows_above_half(self, unit_disk):
        rule = contour_rule(unit_disk, 16)
        samples = filter_profile(rule, 4.0, 80)
        inside = samples[samples[:, 0] < 1.0]
        outside = samples[samples[:, 0] > 1.0]
        assert np.all(inside[:, 2] > 0.5)
        assert np.all(outside[:, 2] < 0.5)

    def test_crossing_at_radius(self, unit_disk):
        rule = contour_rule(unit_disk, 16)
        samples = filter_profile(rule, 4.0, 81)  # grid hits r = 1 exactly
        on_circle = samples[np.isclose(samples[:, 0], 1.0, atol=1e-9)]
        assert on_circle.size > 0
        assert np.allclose(on_circle[:, 2], 0.5, atol=1e-10)

    def test_validation(self, unit_disk):
        rule = contour_rule(unit_disk, 8)
        with pytest.raises(ValueError):
            filter_profile(rule, -1.0, 10)
        with pytest.raises(ValueError):
            filter_profile(rule, 1.0, 1)

    def test_csv_emission(self, tmp_path, unit_disk):
        rule = contour_rule(unit_disk, 8)
        samples = filter_profile(rule, 2.0, 5)
        path = tmp_path / "profile.csv"
        write_profile_csv(path, samples)
        lines = path.read_text().splitlines()
        assert lines[0] == "r,theta,re_psi"
        assert len(lines) == 1 + len(samples)
        r, theta, re_psi = (float(x) for x in lines[1].split(","))
        assert (r, theta, re_psi) == (samples[0, 0], samples[0, 1], samples[0, 2])
