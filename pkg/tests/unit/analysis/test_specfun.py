import unittest

import numpy as np
from mpmath.ctx_mp import MPContext
from numpy.testing import assert_allclose

from macrodiversity_mrc.analysis import arithmetic as arith
from macrodiversity_mrc.analysis import specfun
from macrodiversity_mrc.exceptions import AccuracyError, InvalidParameterError

mp = MPContext()
mp.dps = 50

ARGUMENTS = [0.0, 1e-8, 0.3, 1.0, 2.5, 6.0, 12.0, 25.0]


class SpecfunTest(unittest.TestCase):
    def test_gaussian_q(self) -> None:
        """
        Q(x) against a 50-digit reference, deep into the tail
        :return:
        """
        for x in [-3.0, 0.0, 0.5, 2.0, 8.0, 30.0]:
            expected = float(mp.erfc(mp.mpf(x) / mp.sqrt(2)) / 2)
            assert_allclose(specfun.gaussian_q(x), expected, rtol=1e-12)
        self.assertEqual(specfun.gaussian_q(0.0), 0.5)

    def test_erfi_and_dawson(self) -> None:
        """
        erfi and the Dawson function against a 50-digit reference
        :return:
        """
        for x in ARGUMENTS:
            expected_dawson = float(mp.sqrt(mp.pi) / 2 * mp.exp(-mp.mpf(x) ** 2) * mp.erfi(x))
            assert_allclose(specfun.dawson(x), expected_dawson, rtol=1e-12, atol=1e-300)
            assert_allclose(specfun.dawson(-x), -expected_dawson, rtol=1e-12, atol=1e-300)
            if x < specfun.ERFI_MAX_ARGUMENT:
                assert_allclose(specfun.erfi(x), float(mp.erfi(x)), rtol=1e-12, atol=1e-300)

    def test_erfi_overflow(self) -> None:
        """
        erfi refuses arguments whose e^{x^2} overflows
        :return:
        """
        with self.assertRaises(AccuracyError):
            specfun.erfi(30.0)
        with self.assertRaises(AccuracyError):
            specfun.erfi(np.array([1.0, -40.0]))

    def test_erfcx(self) -> None:
        """
        erfcx against a 50-digit reference, including arguments where erfc underflows
        :return:
        """
        for x in ARGUMENTS + [-2.0, 100.0, 1e4]:
            expected = float(mp.exp(mp.mpf(x) ** 2) * mp.erfc(x))
            assert_allclose(specfun.erfcx(x), expected, rtol=1e-12)

    def test_array_arguments(self) -> None:
        """
        Vectorized evaluation matches scalar evaluation
        :return:
        """
        xs = np.array(ARGUMENTS)
        assert_allclose(specfun.erfcx(xs), [specfun.erfcx(x) for x in ARGUMENTS], rtol=0)
        assert_allclose(specfun.gaussian_q(xs), [specfun.gaussian_q(x) for x in ARGUMENTS], rtol=0)

    def test_scaled_products(self) -> None:
        """
        e^{x^2 - 5} erfc(x) stays finite where its factors would not, and both arithmetics agree on e^c erfcx(x)
        and e^c dawson(x)
        :return:
        """
        x = 40.0
        product = specfun.ScaledExpProduct(-5.0, specfun.erfcx(x))
        expected = float(mp.exp(mp.mpf(x) ** 2 - 5) * mp.erfc(x))
        assert_allclose(product.value(), expected, rtol=1e-12)

        double = arith.DOUBLE
        extended = arith.ExtendedArithmetic(40)
        for exponent, y in [(-3.0, 2.5), (-600.0, 0.5), (-1e6, 1.0)]:
            assert_allclose(double.exp_erfcx(exponent, y), float(extended.exp_erfcx(exponent, y)), rtol=1e-12,
                            atol=0.0)
            assert_allclose(double.exp_dawson(exponent, y), float(extended.exp_dawson(exponent, y)), rtol=1e-12,
                            atol=0.0)
        self.assertEqual(double.exp_erfcx(-1e6, 1.0), 0.0)

        with self.assertRaises(AccuracyError):
            specfun.ScaledExpProduct(1000.0, 1.0).value()
        self.assertEqual(specfun.ScaledExpProduct(-1e6, 1.0).value(), 0.0)

    def test_scaled_product_algebra(self) -> None:
        """
        Products add exponents and multiply mantissas
        :return:
        """
        left = specfun.ScaledExpProduct(2.0, 3.0)
        right = specfun.ScaledExpProduct(-1.0, -0.5)
        assert_allclose((left * right).value(), -1.5 * np.exp(1.0), rtol=1e-15)
        assert_allclose(left.scaled(2.0).value(), 6.0 * np.exp(2.0), rtol=1e-15)
        with self.assertRaises(InvalidParameterError):
            specfun.ScaledExpProduct(0.0, float('inf'))
