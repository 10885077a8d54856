import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from macrodiversity_mrc.analysis import modulation as mod
from macrodiversity_mrc.exceptions import CombinatorialBlowupError, InvalidParameterError
from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig


class ModulationTest(unittest.TestCase):
    def test_unit_energy(self) -> None:
        """
        Every constellation is normalized to unit average energy
        :return:
        """
        for name in mod.MODULATIONS:
            modulation = mod.modulation_by_name(name)
            assert_allclose(np.mean(np.abs(modulation.points) ** 2), 1.0, rtol=1e-12)
        self.assertEqual(mod.modulation_by_name('64qam').order, 64)

    def test_modulation_names(self) -> None:
        """
        Names are case and dash insensitive and 4-QAM is QPSK
        :return:
        """
        self.assertEqual(mod.modulation_by_name('16-QAM').name, '16qam')
        self.assertEqual(mod.modulation_by_name('4qam').name, 'qpsk')
        with self.assertRaises(InvalidParameterError):
            mod.modulation_by_name('8psk')
        with self.assertRaises(InvalidParameterError):
            mod.square_qam(8)

    def test_ser_terms(self) -> None:
        """
        a = 4(1 - 1/sqrt(M)), a' = a(1 - 1/sqrt(M)), b = 3/(M - 1)
        :return:
        """
        terms = mod.square_qam(16).ser_terms
        assert_allclose([terms[0].a, terms[0].b, terms[1].a, terms[1].b], [3.0, 0.2, 2.25, 0.2])
        self.assertTrue(terms[1].squared)
        self.assertEqual([(term.a, term.b) for term in mod.bpsk().ser_terms], [(1.0, 2.0)])
        with self.assertRaises(InvalidParameterError):
            mod.SerTerm(1.0, 0.0)

    def test_magnitude_levels(self) -> None:
        """
        16-QAM has three ring energies with probabilities 1/4, 1/2, 1/4
        :return:
        """
        levels = mod.square_qam(16).magnitude_levels()
        assert_allclose([level for level, _ in levels], [0.2, 1.0, 1.8])
        assert_allclose([probability for _, probability in levels], [0.25, 0.5, 0.25])
        self.assertEqual(mod.qpsk().magnitude_levels(), [(1.0, 1.0)])

    def test_detect(self) -> None:
        """
        Noiseless points detect as themselves and small offsets do not change the decision
        :return:
        """
        modulation = mod.square_qam(16)
        indices = modulation.detect(modulation.points + 0.01 * (1 + 1j))
        self.assertEqual(list(indices), list(range(16)))
        self.assertEqual(list(mod.bpsk().detect(np.array([0.3, -2.0, 5.0]))), [0, 1, 0])


class MagnitudeProfilesTest(unittest.TestCase):
    def test_constant_modulus(self) -> None:
        """
        A constant-modulus constellation gives a single unit profile
        :return:
        """
        config = SystemConfig(PowerMatrix([1.0, 2.0]), [PowerMatrix([1.0, 0.0]), PowerMatrix([0.0, 1.0])], 0.1)
        profiles = mod.magnitude_profiles(mod.qpsk(), config)
        self.assertEqual(len(profiles), 1)
        self.assertEqual(profiles[0].magnitudes, (1.0, 1.0))
        self.assertEqual(profiles[0].probability, 1.0)

    def test_distinct_interferers(self) -> None:
        """
        Two different interferers enumerate every magnitude combination
        :return:
        """
        config = SystemConfig(PowerMatrix([1.0, 2.0]), [PowerMatrix([1.0, 0.0]), PowerMatrix([0.0, 1.0])], 0.1)
        profiles = mod.magnitude_profiles(mod.square_qam(16), config)
        self.assertEqual(len(profiles), 9)
        assert_allclose(math.fsum(profile.probability for profile in profiles), 1.0)
        mean = [math.fsum(profile.probability * profile.magnitudes[k] for profile in profiles) for k in range(2)]
        assert_allclose(mean, [1.0, 1.0])

    def test_identical_interferers(self) -> None:
        """
        Identical interferers only need the multisets of their magnitudes
        :return:
        """
        interferer = PowerMatrix([0.5, 0.5])
        config = SystemConfig(PowerMatrix([1.0, 2.0]), [interferer, interferer, interferer], 0.1)
        profiles = mod.magnitude_profiles(mod.square_qam(16), config)
        self.assertEqual(len(profiles), 10)
        assert_allclose(math.fsum(profile.probability for profile in profiles), 1.0)

    def test_cap(self) -> None:
        """
        Exceeding the cap raises instead of enumerating
        :return:
        """
        interferers = [PowerMatrix([0.1 * (k + 1), 0.0]) for k in range(3)]
        config = SystemConfig(PowerMatrix([1.0, 2.0]), interferers, 0.1)
        with self.assertRaises(CombinatorialBlowupError):
            mod.magnitude_profiles(mod.square_qam(64), config, cap=100)
