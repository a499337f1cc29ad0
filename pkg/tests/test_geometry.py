"""Tests for the sphere maps: shift, normalization, reflection, stereographic."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from funksphere.errors import DomainError
from funksphere.geometry import (
    Z_CAP,
    check_shift,
    g_inv,
    g_map,
    h_inv,
    h_map,
    r_map,
    reflection_weight,
    sphere_surface_area,
    stereo,
    stereo_inv,
    subsphere,
    tangent_frame,
    unit_vector,
)

SHIFTS = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99]


def random_sphere(rng, n, d):
    x = rng.normal(size=(n, d))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


class TestCheckShift:
    def test_accepts_interior(self):
        assert check_shift(0.5) == 0.5
        assert check_shift(-0.5) == -0.5
        assert check_shift(0) == 0.0

    def test_rejects_beyond_cap(self):
        with pytest.raises(DomainError):
            check_shift(1.0)
        with pytest.raises(DomainError):
            check_shift(-1.0)
        with pytest.raises(DomainError):
            check_shift(Z_CAP * 1.01)

    def test_unsigned_mode_rejects_negative(self):
        assert check_shift(0.3, signed=False) == 0.3
        with pytest.raises(DomainError):
            check_shift(-0.3, signed=False)


class TestUnitVector:
    def test_normalizes(self):
        v = unit_vector(np.array([0.6, 0.8, 0.6]))
        assert_allclose(np.linalg.norm(v), 1.0, atol=1e-15)

    def test_rejects_far_from_unit(self):
        with pytest.raises(DomainError):
            unit_vector(np.array([10.0, 0.0, 0.0]))
        with pytest.raises(DomainError):
            unit_vector(np.array([0.01, 0.0, 0.0]))


class TestShiftMap:
    """The shift map h_z and its companion g_z that renormalizes transform
    output onto the sphere."""

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", SHIFTS)
    def test_h_stays_on_sphere(self, d, z):
        rng = np.random.default_rng(101)
        eta = random_sphere(rng, 300, d)
        out = h_map(eta, z)
        assert_allclose(np.linalg.norm(out, axis=-1), 1.0, atol=1e-12)

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", SHIFTS)
    def test_h_roundtrip(self, d, z):
        rng = np.random.default_rng(102)
        eta = random_sphere(rng, 300, d)
        kappa = (1 + z) / (1 - z)
        tol = max(1e-13, 50 * np.finfo(float).eps * kappa * kappa)
        assert_allclose(h_inv(h_map(eta, z), z), eta, atol=tol)
        assert_allclose(h_map(h_map(eta, z), -z), eta, atol=tol)

    def test_h_identity_at_zero(self):
        rng = np.random.default_rng(103)
        eta = random_sphere(rng, 50, 3)
        assert_allclose(h_map(eta, 0.0), eta, atol=1e-15)

    def test_h_fixes_poles(self):
        for d in (3, 4):
            pole = np.zeros(d)
            pole[-1] = 1.0
            assert_allclose(h_map(pole, 0.7), pole, atol=1e-15)
            assert_allclose(h_map(-pole, 0.7), -pole, atol=1e-15)

    def test_h_hand_value(self):
        # z = 0.5 at the equator point e1: denominator 1, scaling sqrt(3)/2
        eta = np.array([1.0, 0.0, 0.0])
        out = h_map(eta, 0.5)
        assert_allclose(out, [math.sqrt(0.75), 0.0, 0.5], atol=1e-15)

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", SHIFTS)
    def test_g_roundtrip(self, d, z):
        rng = np.random.default_rng(104)
        xi = random_sphere(rng, 300, d)
        out = g_map(xi, z)
        assert_allclose(np.linalg.norm(out, axis=-1), 1.0, atol=1e-12)
        assert_allclose(g_inv(out, z), xi, atol=1e-12)

    def test_g_preserves_perp_direction(self):
        """g_z rescales within the plane spanned by xi_perp and the pole."""
        rng = np.random.default_rng(105)
        xi = random_sphere(rng, 100, 3)
        out = g_map(xi, 0.6)
        cross = xi[:, 0] * out[:, 1] - xi[:, 1] * out[:, 0]
        assert_allclose(cross, 0.0, atol=1e-14)

    def test_g_hand_value(self):
        xi = np.array([0.0, 0.6, 0.8])
        z = 0.5
        denom = math.sqrt(1 - z * z * 0.64)
        want = np.array([0.0, 0.6, 0.8 * math.sqrt(0.75)]) / denom
        assert_allclose(g_map(xi, z), want, atol=1e-15)


class TestReflection:
    """The reflection r_z across the shifted family of subspheres, and its
    cocycle weight."""

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", [0.0, 0.3, 0.7, 0.9])
    def test_involution(self, d, z):
        rng = np.random.default_rng(106)
        w = random_sphere(rng, 300, d)
        assert_allclose(r_map(r_map(w, z), z), w, atol=1e-12)

    def test_zero_shift_is_antipodal(self):
        rng = np.random.default_rng(107)
        w = random_sphere(rng, 100, 4)
        assert_allclose(r_map(w, 0.0), -w, atol=1e-15)

    @pytest.mark.parametrize("z", [0.2, 0.5, 0.8])
    def test_image_collinear_with_shifted_center(self, z):
        """w, r_z(w) and the point z e_d lie on a line."""
        rng = np.random.default_rng(108)
        w = random_sphere(rng, 200, 3)
        v = r_map(w, z)
        c = np.array([0.0, 0.0, z])
        u1 = w - c
        u2 = v - c
        cross = np.cross(u1, u2)
        assert np.max(np.abs(cross)) < 1e-12

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", [0.2, 0.6, 0.9])
    def test_preserves_each_family_subsphere(self, d, z):
        """r_z maps the section cut by <p, xi> = z xi_d into itself, for
        every axis xi.  This is the mechanism behind the nullspace: the
        averages over each section cannot see the r_z-odd part."""
        from funksphere.quadrature import subsphere_rule

        rng = np.random.default_rng(109)
        for xi in random_sphere(rng, 10, d):
            rule = subsphere_rule(xi, z, 16 if d == 3 else (6, 12))
            refl = r_map(rule.nodes, z)
            assert_allclose(refl @ xi, z * xi[-1], atol=1e-13)
            assert_allclose(np.linalg.norm(refl, axis=-1), 1.0, atol=1e-13)

    @pytest.mark.parametrize("d", [3, 4])
    @pytest.mark.parametrize("z", [0.0, 0.4, 0.9])
    def test_weight_reciprocity(self, d, z):
        rng = np.random.default_rng(110)
        w = random_sphere(rng, 200, d)
        prod = reflection_weight(w, z) * reflection_weight(r_map(w, z), z)
        assert_allclose(prod, 1.0, atol=1e-12)

    def test_weight_at_zero_shift(self):
        rng = np.random.default_rng(111)
        w = random_sphere(rng, 50, 3)
        assert_allclose(reflection_weight(w, 0.0), 1.0, atol=1e-15)

    def test_weight_exponent_tracks_dimension(self):
        w = np.array([0.0, 0.0, 0.0, -1.0])
        z = 0.5
        base = (1 - z * z) / (1 + z * z + 2 * z)
        assert_allclose(reflection_weight(w, z), base ** 2, atol=1e-15)
        assert_allclose(reflection_weight(w[1:], z), base, atol=1e-15)


class TestStereo:
    def test_roundtrip(self):
        rng = np.random.default_rng(112)
        xi = random_sphere(rng, 300, 3)
        xi = xi[xi[:, 2] < 0.99]
        assert_allclose(stereo_inv(stereo(xi)), xi, atol=1e-12)

    def test_inv_roundtrip_plane(self):
        rng = np.random.default_rng(113)
        x = rng.normal(size=(200, 2)) * 3
        assert_allclose(stereo(stereo_inv(x)), x, atol=1e-12)

    def test_equator_fixed(self):
        xi = np.array([0.6, 0.8, 0.0])
        assert_allclose(stereo(xi), [0.6, 0.8], atol=1e-15)

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            stereo(np.array([0.0, 0.0, 1.0]))

    @pytest.mark.parametrize("z", [0.1, 0.5, 0.9])
    def test_conjugates_shift_to_dilation(self, z):
        """In stereographic coordinates the shift map is multiplication by
        sqrt((1+z)/(1-z))."""
        rng = np.random.default_rng(114)
        eta = random_sphere(rng, 500, 3)
        eta = eta[eta[:, 2] < 0.95]
        a = math.sqrt((1 + z) / (1 - z))
        lhs = stereo(h_map(eta, z))
        rhs = a * stereo(eta)
        rel = np.linalg.norm(lhs - rhs, axis=-1) / (1 + np.linalg.norm(rhs, axis=-1))
        assert np.max(rel) < 1e-12


class TestSubsphere:
    @pytest.mark.parametrize("d", [3, 4])
    def test_center_radius_volume(self, d):
        rng = np.random.default_rng(115)
        xi = random_sphere(rng, 100, d)
        z = 0.6
        sub = subsphere(xi, z)
        assert_allclose(sub.center, z * xi[:, -1:] * xi, atol=1e-15)
        assert_allclose(sub.radius, np.sqrt(1 - z * z * xi[:, -1] ** 2), atol=1e-15)
        want_vol = sphere_surface_area(d - 1) * sub.radius ** (d - 2)
        assert_allclose(sub.volume, want_vol, atol=1e-13)

    def test_zero_shift_great_sphere(self):
        xi = np.array([0.0, 1.0, 0.0])
        sub = subsphere(xi, 0.0)
        assert_allclose(sub.center, np.zeros(3), atol=1e-15)
        assert_allclose(sub.radius, 1.0, atol=1e-15)
        assert_allclose(sub.volume, 2 * math.pi, atol=1e-14)

    def test_centers_lie_on_half_shift_sphere(self):
        rng = np.random.default_rng(116)
        xi = random_sphere(rng, 1000, 3)
        z = 0.8
        sub = subsphere(xi, z)
        offset = sub.center - np.array([0.0, 0.0, z / 2])
        assert_allclose(np.linalg.norm(offset, axis=-1), z / 2, atol=1e-12)


class TestSurfaceArea:
    def test_known_values(self):
        assert_allclose(sphere_surface_area(2), 2 * math.pi, rtol=1e-15)
        assert_allclose(sphere_surface_area(3), 4 * math.pi, rtol=1e-15)
        assert_allclose(sphere_surface_area(4), 2 * math.pi ** 2, rtol=1e-15)


class TestTangentFrame:
    @pytest.mark.parametrize("d", [3, 4])
    def test_orthonormal_and_oriented(self, d):
        rng = np.random.default_rng(117)
        xi = random_sphere(rng, 200, d)
        frame = tangent_frame(xi)
        basis = frame.basis
        assert basis.shape == (200, d - 1, d)
        dots = np.einsum("kid,kd->ki", basis, xi)
        assert_allclose(dots, 0.0, atol=1e-13)
        gram = np.einsum("kid,kjd->kij", basis, basis)
        assert_allclose(gram, np.broadcast_to(np.eye(d - 1), gram.shape), atol=1e-13)
        full = np.concatenate([xi[:, None, :], basis], axis=1)
        assert_allclose(np.linalg.det(full), 1.0, atol=1e-12)

    def test_poles(self):
        for d in (3, 4):
            pole = np.zeros(d)
            pole[-1] = 1.0
            frame = tangent_frame(pole)
            assert_allclose(np.einsum("id,d->i", frame.basis, pole), 0.0, atol=1e-15)


class TestPullbackScaling:
    """Finite differences of the shift map along a tangent frame are
    orthogonal with common length sqrt(1-z^2)/(1+z eta_d)."""

    def test_conformal_factor(self):
        rng = np.random.default_rng(118)
        eps = 1e-5
        worst = 0.0
        for _ in range(100):
            d = 3
            eta = random_sphere(rng, 1, d)[0]
            z = rng.uniform(0.0, 0.9)
            frame = tangent_frame(eta)
            scale = math.sqrt(1 - z * z) / (1 + z * eta[-1])
            derivs = []
            for i in range(d - 1):
                e = frame.basis[i]
                plus = h_map(math.cos(eps) * eta + math.sin(eps) * e, z)
                minus = h_map(math.cos(eps) * eta - math.sin(eps) * e, z)
                derivs.append((plus - minus) / (2 * eps))
            for i in range(d - 1):
                for j in range(d - 1):
                    got = float(np.dot(derivs[i], derivs[j]))
                    want = scale * scale if i == j else 0.0
                    worst = max(worst, abs(got - want))
        assert worst < 1e-6
