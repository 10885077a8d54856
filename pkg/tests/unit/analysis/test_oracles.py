import unittest

import numpy as np
from numpy.testing import assert_allclose

from macrodiversity_mrc.analysis import oracles, ser_analytic
from macrodiversity_mrc.analysis.gamma_dist import gamma_cdf, mixture_coefficients
from macrodiversity_mrc.exceptions import InvalidParameterError, OutOfRegionError
from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig
from macrodiversity_mrc.tests.test_utils import (TEST_SEED, swapped_two_antenna_cdf, three_antenna_config,
                                                 two_antenna_cdf, two_antenna_config)


class CdfOracleTest(unittest.TestCase):
    def test_hand_integrated_cdfs(self) -> None:
        """
        Nested quadrature of the joint density reproduces the hand-integrated CDFs
        :return:
        """
        coeffs = mixture_coefficients(two_antenna_config())
        for r in [0.5, 3.0]:
            assert_allclose(oracles.cdf_via_quadrature(r, coeffs), two_antenna_cdf(r), rtol=1e-7)
        swapped = mixture_coefficients(two_antenna_config((1.0, 2.0)))
        assert_allclose(oracles.cdf_via_quadrature(1.0, swapped), swapped_two_antenna_cdf(1.0), rtol=1e-7)

    def test_three_antenna_cdf(self) -> None:
        """
        The closed-form CDF agrees with quadrature on a three-antenna configuration
        :return:
        """
        coeffs = mixture_coefficients(three_antenna_config())
        assert_allclose(oracles.cdf_via_quadrature(1.2, coeffs), gamma_cdf(1.2, coeffs), rtol=1e-7)

    def test_random_configurations(self) -> None:
        """
        The closed-form CDF agrees with quadrature on randomized configurations of two to four antennas
        :return:
        """
        rng = np.random.RandomState(TEST_SEED)
        for n_r in [2, 3, 4, 3, 2]:
            desired = PowerMatrix(rng.uniform(0.2, 3.0, n_r))
            interferers = [PowerMatrix(rng.uniform(0.05, 2.0, n_r)) for _ in range(rng.randint(1, 3))]
            coeffs = mixture_coefficients(SystemConfig(desired, interferers, rng.uniform(0.1, 1.0)))
            for r in np.logspace(-1.5, 1.5, 4):
                assert_allclose(gamma_cdf(r, coeffs), oracles.cdf_via_quadrature(r, coeffs), atol=1e-8)

    def test_cdf_edges(self) -> None:
        """
        Trivial thresholds and the singular uniform case
        :return:
        """
        coeffs = mixture_coefficients(two_antenna_config())
        self.assertEqual(oracles.cdf_via_quadrature(0.0, coeffs), 0.0)
        self.assertEqual(oracles.cdf_via_quadrature(float('inf'), coeffs), 1.0)
        with self.assertRaises(InvalidParameterError):
            oracles.cdf_via_quadrature(-1.0, coeffs)
        uniform = mixture_coefficients(SystemConfig(PowerMatrix([2.0, 1.0]), [], 1.0))
        with self.assertRaises(InvalidParameterError):
            oracles.cdf_via_quadrature(1.0, uniform)


class AverageOracleTest(unittest.TestCase):
    def test_w1_w2(self) -> None:
        """
        Quadrature over the closed-form CDF matches the closed-form averages
        :return:
        """
        config = three_antenna_config()
        coeffs = mixture_coefficients(config)
        for b in [0.3, 2.0]:
            assert_allclose(oracles.w1_via_quadrature(1.5, b, coeffs), ser_analytic.w1(1.5, b, config), rtol=1e-8)
            assert_allclose(oracles.w2_via_quadrature(1.5, b, coeffs), ser_analytic.w2(1.5, b, config), rtol=1e-8)
        self.assertEqual(oracles.w1_via_quadrature(0.0, 1.0, coeffs), 0.0)
        with self.assertRaises(InvalidParameterError):
            oracles.w1_via_quadrature(1.0, 1.0, coeffs, inner='trapezoid')


class IntegralOracleTest(unittest.TestCase):
    def test_integrals(self) -> None:
        """
        Quadrature of the defining integrands matches the closed forms on both sides of beta = 0
        :return:
        """
        for alpha, beta in [(1.0, 1.0), (0.2, -0.3), (0.7, 0.05)]:
            assert_allclose(oracles.integral_via_quadrature(oracles.KIND_I1, alpha, beta),
                            ser_analytic.integral_I1(alpha, beta), rtol=1e-8)
        for alpha, beta in [(1.0, 1.0), (2.0, -0.5), (0.0, 0.375)]:
            assert_allclose(oracles.integral_via_quadrature(oracles.KIND_I2, alpha, beta),
                            ser_analytic.integral_I2(alpha, beta), rtol=1e-8)

    def test_random_sweep(self) -> None:
        """
        Closed forms match quadrature over randomized points of each region, its special cases and points
        close to its boundary
        :return:
        """
        rng = np.random.RandomState(TEST_SEED)
        alphas = rng.uniform(0.0, 1.5, 40)
        i1_points = [(alpha, alpha * alpha - 0.5 + margin)
                     for alpha, margin in zip(alphas, rng.uniform(0.05, 3.0, 40))] + [(1.0, 0.55), (0.1, -0.44)]
        for alpha, beta in i1_points:
            assert_allclose(ser_analytic.integral_I1(alpha, beta),
                            oracles.integral_via_quadrature(oracles.KIND_I1, alpha, beta), rtol=1e-9)
        i2_points = [(alpha, alpha * alpha + 0.5 - margin)
                     for alpha, margin in zip(alphas, rng.uniform(0.05, 3.0, 40))]
        i2_points += [(0.6, 0.36), (0.4, 0.5), (1.0, 1.45), (0.0, 0.375)]
        for alpha, beta in i2_points:
            assert_allclose(ser_analytic.integral_I2(alpha, beta),
                            oracles.integral_via_quadrature(oracles.KIND_I2, alpha, beta), rtol=1e-9)

    def test_regions(self) -> None:
        """
        Divergent integrals and unknown kinds are refused
        :return:
        """
        with self.assertRaises(OutOfRegionError):
            oracles.integral_via_quadrature(oracles.KIND_I1, 1.0, 0.4)
        with self.assertRaises(OutOfRegionError):
            oracles.integral_via_quadrature(oracles.KIND_I2, -0.5, 0.0)
        with self.assertRaises(InvalidParameterError):
            oracles.integral_via_quadrature('I3', 0.0, 0.0)
        self.assertEqual(oracles.integral_via_quadrature(oracles.KIND_I1, 0.0, 1.0), 0.0)

    def test_quadrature_spec(self) -> None:
        """
        Tolerances must be positive and only the tangent map is available
        :return:
        """
        with self.assertRaises(InvalidParameterError):
            oracles.QuadratureSpec(relative_tolerance=0.0)
        with self.assertRaises(InvalidParameterError):
            oracles.QuadratureSpec(transform='exp')
        self.assertEqual(oracles.DEFAULT_SPEC.max_subdivisions, 200)
