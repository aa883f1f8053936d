"""Reproducing kernel, overlap geometry, and coherent-state coefficients."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyginibre.kernels import (DiskRadius, LandauIndex,
                                 cs_overlap_coefficient, g_weight,
                                 kernel_point, kernel_tilde,
                                 scaled_intersection_area)

finite_z = st.complex_numbers(max_magnitude=8.0, allow_nan=False,
                              allow_infinity=False)


class TestDomainTypes:
    def test_landau_index_validation(self):
        assert LandauIndex(3).m == 3
        with pytest.raises(ValueError):
            LandauIndex(-1)
        with pytest.raises(ValueError):
            LandauIndex(1.5)

    def test_disk_radius_validation(self):
        assert DiskRadius(2.5).R == 2.5
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                DiskRadius(bad)


class TestKernel:
    @given(st.integers(0, 4), finite_z)
    def test_flat_diagonal(self, m, z):
        # the one-point intensity is 1/pi everywhere
        assert kernel_point(m, z, z) == pytest.approx(1.0 / math.pi,
                                                      rel=1e-12)

    @given(st.integers(0, 4), finite_z, finite_z)
    def test_hermitian(self, m, z, w):
        assert kernel_point(m, z, w) == pytest.approx(
            np.conj(kernel_point(m, w, z)), rel=1e-10, abs=1e-12)

    @given(st.integers(0, 3), finite_z, finite_z)
    def test_modulus_bounded_by_diagonal(self, m, z, w):
        assert abs(kernel_point(m, z, w)) <= 1.0 / math.pi + 1e-12

    def test_ground_level_reference(self):
        # m = 0: |K(z, w)| = e^{-|z-w|^2/2}/pi
        z, w = 1.0 + 0.5j, -0.25 + 1.0j
        expect = math.exp(-abs(z - w) ** 2 / 2.0) / math.pi
        assert abs(kernel_point(0, z, w)) == pytest.approx(expect, rel=1e-12)

    def test_tilde_overflow_guard(self):
        with pytest.raises(OverflowError):
            kernel_tilde(0, 700.0 + 0.0j, 700.0 + 0.0j)


class TestOverlapArea:
    def test_coincident_disks(self):
        assert scaled_intersection_area(0.0, 2.0) == pytest.approx(1.0)

    def test_disjoint_disks(self):
        assert scaled_intersection_area(4.0, 2.0) == 0.0
        assert scaled_intersection_area(7.3, 2.0) == 0.0

    @given(st.floats(0.0, 10.0), st.floats(0.1, 5.0))
    def test_range_and_monotonicity(self, r, R):
        a = scaled_intersection_area(r, R)
        assert 0.0 <= a <= 1.0
        assert scaled_intersection_area(r + 0.1, R) <= a + 1e-12

    def test_halfway_geometry(self):
        # centers at distance R: two circular segments of known area
        area = scaled_intersection_area(1.0, 1.0)
        exact = (2.0 * math.pi / 3.0 - math.sqrt(3.0) / 2.0) / math.pi
        assert area == pytest.approx(exact, rel=1e-12)

    @given(st.floats(0.0, 10.0), st.floats(0.1, 5.0))
    def test_g_weight_complements_area(self, r, R):
        g = g_weight(r, R)
        a = scaled_intersection_area(r, R)
        assert g == pytest.approx(math.pi * R * R * (1.0 - a), rel=1e-11,
                                  abs=1e-11)


class TestCoherentStateOverlap:
    @given(st.integers(0, 3), finite_z)
    def test_unit_norm(self, m, z):
        # Poisson-type tail: mean + 15 sqrt(mean) + margin covers 1e-9
        kmax = int(abs(z) ** 2 + 15.0 * abs(z)) + 40 + 6 * m
        total = sum(abs(cs_overlap_coefficient(m, k, z)) ** 2
                    for k in range(kmax))
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_phase_convention_at_origin(self):
        for m in range(4):
            assert cs_overlap_coefficient(m, m, 0.0 + 0.0j) == 1.0
            assert cs_overlap_coefficient(m, m + 1, 0.0 + 0.0j) == 0.0
