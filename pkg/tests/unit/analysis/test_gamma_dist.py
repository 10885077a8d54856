import math
import unittest

from numpy.testing import assert_allclose

from macrodiversity_mrc.analysis import gamma_dist
from macrodiversity_mrc.analysis.arithmetic import ExtendedArithmetic
from macrodiversity_mrc.analysis.hypoexponential import hypoexponential_cdf
from macrodiversity_mrc.exceptions import (AccuracyError, CoincidentPowerError, InvalidParameterError,
                                           NearSingularError)
from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig
from macrodiversity_mrc.tests.test_utils import (swapped_two_antenna_cdf, three_antenna_config, two_antenna_cdf,
                                                 two_antenna_config)


class MixtureCoefficientsTest(unittest.TestCase):
    def test_two_antenna_coefficients(self) -> None:
        """
        Both ordered pairs are kept and share the sign of beta
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(two_antenna_config())
        self.assertFalse(coeffs.is_uniform)
        self.assertEqual([(pair.i, pair.k) for pair in coeffs.pairs], [(0, 1), (1, 0)])
        assert_allclose(float(coeffs.pair(0, 1).beta), 0.5)
        assert_allclose(float(coeffs.pair(1, 0).beta), 0.5)
        swapped = gamma_dist.mixture_coefficients(two_antenna_config((1.0, 2.0)))
        self.assertTrue(all(float(pair.beta) < 0.0 for pair in swapped.pairs))
        self.assertEqual(coeffs.pair(0, 1).label, '1,2')
        with self.assertRaises(KeyError):
            coeffs.pair(0, 0)

    def test_coincident_powers(self) -> None:
        """
        Equal desired powers are refused
        :return:
        """
        config = SystemConfig(PowerMatrix([1.0, 1.0, 2.0]), [PowerMatrix([0.0, 1.0, 2.0])], 1.0)
        with self.assertRaises(CoincidentPowerError) as context:
            gamma_dist.mixture_coefficients(config)
        self.assertEqual(context.exception.groups, [(0, 1)])

    def test_near_singular(self) -> None:
        """
        A vanishing partial-fraction factor is reported with its antenna triple
        :return:
        """
        config = SystemConfig(PowerMatrix([1.0, 2.0, 3.0]), [PowerMatrix([0.0, 3.0, 4.0])], 1.0)
        with self.assertRaises(NearSingularError) as context:
            gamma_dist.mixture_coefficients(config)
        self.assertEqual(context.exception.triple, (0, 1, 2))
        self.assertEqual(context.exception.ratio, 0.0)

    def test_small_factors_raise_precision(self) -> None:
        """
        Factors below the default threshold but admitted by a lower one are resolved in extended precision, so
        perturbations of different directions agree
        :return:
        """
        base = SystemConfig(PowerMatrix([1.0, 2.0, 3.0]), [PowerMatrix([0.0, 3.0, 4.0])], 1.0)
        tilted = [base.with_desired(PowerMatrix(powers)) for powers in
                  [[1.0, 2.0, 3.0 * (1.0 + 1e-11)], [1.0, 2.0, 3.0 * (1.0 + 2e-11)], [1.0 + 1e-11, 2.0, 3.0]]]
        with self.assertRaises(NearSingularError):
            gamma_dist.mixture_coefficients(tilted[0])
        coeffs = [gamma_dist.mixture_coefficients(config, degeneracy_threshold=1e-15) for config in tilted]
        self.assertGreater(coeffs[0].conditioning, 9.0)
        self.assertLess(gamma_dist.mixture_coefficients(three_antenna_config()).conditioning, 2.0)
        for r in [0.3, 2.0]:
            values = [gamma_dist.gamma_cdf(r, coefficients) for coefficients in coeffs]
            self.assertTrue(0.0 < values[0] < 1.0)
            assert_allclose(values[1:], [values[0]] * 2, rtol=1e-8)

    def test_uniform_level(self) -> None:
        """
        Equal levels on every antenna reduce to hypoexponential means p_i / D
        :return:
        """
        config = SystemConfig(PowerMatrix([2.0, 1.0, 0.5]), [], 0.5)
        coeffs = gamma_dist.mixture_coefficients(config)
        self.assertTrue(coeffs.is_uniform)
        assert_allclose(coeffs.hypoexponential_means(), [4.0, 2.0, 1.0])
        with self.assertRaises(InvalidParameterError):
            gamma_dist.joint_pdf(1.0, 1.0, coeffs)

    def test_dropped_pairs(self) -> None:
        """
        Pairs seeing the same interference level carry no mass
        :return:
        """
        config = SystemConfig(PowerMatrix([3.0, 2.0, 1.0]), [PowerMatrix([0.0, 1.0, 1.0])], 1.0)
        coeffs = gamma_dist.mixture_coefficients(config)
        self.assertEqual(coeffs.dropped, ((1, 2), (2, 1)))
        self.assertEqual(len(coeffs.pairs), 4)

    def test_profile_length(self) -> None:
        """
        A profile must give one magnitude per interferer
        :return:
        """
        profile = gamma_dist.InterfererMagnitudeProfile([1.0, 1.0])
        with self.assertRaises(InvalidParameterError):
            gamma_dist.mixture_coefficients(two_antenna_config(), profile)
        with self.assertRaises(InvalidParameterError):
            gamma_dist.InterfererMagnitudeProfile([-1.0])

    def test_extended_arithmetic_variant(self) -> None:
        """
        Coefficients recomputed in extended precision agree with the double ones
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(three_antenna_config())
        extended = coeffs.in_arithmetic(ExtendedArithmetic(40))
        self.assertIs(coeffs.in_arithmetic(ExtendedArithmetic(40)), extended)
        for pair, precise in zip(coeffs.pairs, extended.pairs):
            assert_allclose(float(pair.xi), float(precise.xi), rtol=1e-12)
            assert_allclose(float(pair.beta), float(precise.beta), rtol=1e-12)


class GammaCdfTest(unittest.TestCase):
    def test_two_antenna_cdf(self) -> None:
        """
        The closed form matches the CDF integrated by hand
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(two_antenna_config())
        for r in [0.01, 0.3, 1.0, 4.0, 20.0]:
            assert_allclose(gamma_dist.gamma_cdf(r, coeffs), two_antenna_cdf(r), rtol=1e-10, atol=1e-14)
        assert_allclose(gamma_dist.gamma_cdf(1.0, coeffs), 0.262938, rtol=1e-5)

    def test_negative_beta_cdf(self) -> None:
        """
        Swapping the desired powers exercises the beta < 0 branch
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(two_antenna_config((1.0, 2.0)))
        for r in [0.01, 0.3, 1.0, 4.0, 20.0]:
            assert_allclose(gamma_dist.gamma_cdf(r, coeffs), swapped_two_antenna_cdf(r), rtol=1e-10, atol=1e-14)

    def test_limits(self) -> None:
        """
        P(g < 0) = 0, P(g < inf) = 1 and negative thresholds are refused
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(three_antenna_config())
        self.assertEqual(gamma_dist.gamma_cdf(0.0, coeffs), 0.0)
        self.assertEqual(gamma_dist.gamma_cdf(math.inf, coeffs), 1.0)
        assert_allclose(gamma_dist.gamma_cdf(1e4, coeffs), 1.0, atol=1e-9)
        with self.assertRaises(InvalidParameterError):
            gamma_dist.gamma_cdf(-1.0, coeffs)

    def test_monotonic(self) -> None:
        """
        The CDF does not decrease with the threshold
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(three_antenna_config())
        values = [gamma_dist.gamma_cdf(r, coeffs) for r in [0.05 * 1.5 ** n for n in range(20)]]
        for lower, upper in zip(values, values[1:]):
            self.assertLessEqual(lower, upper + 1e-14)
        self.assertGreater(values[0], 0.0)

    def test_scale_invariance(self) -> None:
        """
        Scaling every power and the noise together leaves g unchanged
        :return:
        """
        config = three_antenna_config()
        scaled = config.scaled(37.0)
        for r in [0.2, 2.0]:
            assert_allclose(gamma_dist.gamma_cdf(r, gamma_dist.mixture_coefficients(scaled)),
                            gamma_dist.gamma_cdf(r, gamma_dist.mixture_coefficients(config)), rtol=1e-10)

    def test_uniform_cdf(self) -> None:
        """
        Without interference the CDF is the hypoexponential CDF of p_i / sigma^2
        :return:
        """
        config = SystemConfig(PowerMatrix([2.0, 1.0]), [], 0.5)
        coeffs = gamma_dist.mixture_coefficients(config)
        assert_allclose(gamma_dist.gamma_cdf(3.0, coeffs), hypoexponential_cdf(3.0, [4.0, 2.0]), rtol=1e-14)

        silent = SystemConfig(PowerMatrix([2.0, 1.0]), [], 0.0)
        self.assertEqual(gamma_dist.gamma_cdf(3.0, gamma_dist.mixture_coefficients(silent)), 0.0)

    def test_joint_pdf_support(self) -> None:
        """
        The joint density vanishes outside D_min x <= y <= D_max x
        :return:
        """
        coeffs = gamma_dist.mixture_coefficients(two_antenna_config())
        self.assertEqual(gamma_dist.joint_pdf(1.0, 0.5, coeffs), 0.0)
        self.assertEqual(gamma_dist.joint_pdf(-1.0, 0.5, coeffs), 0.0)
        assert_allclose(gamma_dist.joint_pdf(1.0, 1.5, coeffs), 0.5 * math.exp(-0.75), rtol=1e-12)

    def test_clamp_probability(self) -> None:
        """
        Small excursions are clamped, large ones are errors
        :return:
        """
        self.assertEqual(gamma_dist.clamp_probability(1.0 + 1e-12), 1.0)
        self.assertEqual(gamma_dist.clamp_probability(-1e-12), 0.0)
        with self.assertRaises(AccuracyError):
            gamma_dist.clamp_probability(1.1)


class OutageTest(unittest.TestCase):
    def test_outage_threshold_in_db(self) -> None:
        """
        A 0 dB threshold is the linear threshold 1
        :return:
        """
        config = two_antenna_config()
        assert_allclose(gamma_dist.outage_probability(config, None, 0.0, threshold_in_db=True),
                        two_antenna_cdf(1.0), rtol=1e-10)
        assert_allclose(gamma_dist.outage_probability(config, None, 10.0, threshold_in_db=True),
                        two_antenna_cdf(10.0), rtol=1e-10)
        self.assertEqual(gamma_dist.outage_probability(config, None, -math.inf, threshold_in_db=True), 0.0)
        self.assertEqual(gamma_dist.outage_probability(config, None, math.inf), 1.0)
