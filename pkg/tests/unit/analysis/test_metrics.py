import unittest

from numpy.testing import assert_allclose

from macrodiversity_mrc.analysis import metrics
from macrodiversity_mrc.analysis.scenarios import METRIC_RHO_DB, scenario_config
from macrodiversity_mrc.exceptions import InvalidParameterError, UndefinedMetricError
from macrodiversity_mrc.models.results import MetricReport
from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig
from macrodiversity_mrc.tests.test_utils import TEST_SEED, three_antenna_config


class MeanSinrMetricTest(unittest.TestCase):
    def test_identity_powers(self) -> None:
        """
        Unit desired and interferer powers without noise give (n^2 + n) / n
        :return:
        """
        single = SystemConfig(PowerMatrix([1.0]), [PowerMatrix([1.0])], 0.0)
        self.assertEqual(metrics.mean_sinr_metric(single).m_p_linear, 2.0)
        triple = SystemConfig(PowerMatrix([1.0] * 3), [PowerMatrix([1.0] * 3)], 0.0)
        self.assertEqual(metrics.mean_sinr_metric(triple).m_p_linear, 4.0)

    def test_noise_term(self) -> None:
        """
        Noise adds sigma^2 Tr(P_1) to the denominator
        :return:
        """
        config = SystemConfig(PowerMatrix([2.0, 1.0]), [PowerMatrix([0.5, 0.0])], 0.25)
        report = metrics.mean_sinr_metric(config)
        self.assertEqual(report.numerator, 14.0)
        self.assertEqual(report.denominator, 1.75)

    def test_reference_scenarios(self) -> None:
        """
        Metric values of the reference scenarios at 20 dB
        :return:
        """
        expected = {'S1': 3.063, 'S2': 7.672, 'S5': 5.977, 'S7': 17.301, 'S8': 27.626, 'S10': 15.607}
        for name, m_p_db in expected.items():
            report = metrics.mean_sinr_metric(scenario_config(name, METRIC_RHO_DB))
            assert_allclose(report.m_p_db, m_p_db, atol=1e-3, err_msg=name)

    def test_homogeneity(self) -> None:
        """
        Scaling every power is neutral, scaling the desired source alone scales the metric
        :return:
        """
        config = three_antenna_config()
        base = metrics.mean_sinr_metric(config).m_p_linear
        assert_allclose(metrics.mean_sinr_metric(config.scaled(7.0)).m_p_linear, base, rtol=1e-14)
        louder = config.with_desired(config.desired.scaled(3.0))
        assert_allclose(metrics.mean_sinr_metric(louder).m_p_linear, 3.0 * base, rtol=1e-14)

    def test_undefined(self) -> None:
        """
        Neither interference nor noise leaves the metric undefined
        :return:
        """
        config = SystemConfig(PowerMatrix([1.0, 2.0]), [PowerMatrix([0.0, 0.0])], 0.0)
        with self.assertRaises(UndefinedMetricError):
            metrics.mean_sinr_metric(config)
        with self.assertRaises(UndefinedMetricError):
            metrics.mc_mean_sinr(config, 10, seed=TEST_SEED)

    def test_ordering(self) -> None:
        """
        Names are ordered by decreasing metric
        :return:
        """
        reports = {'a': MetricReport(2.0, 1.0), 'b': MetricReport(9.0, 1.0), 'c': MetricReport(1.0, 2.0)}
        self.assertEqual(metrics.mp_ordering(reports), ['b', 'a', 'c'])
        assert_allclose(reports['b'].m_p_db, 9.542425094)


class MonteCarloMeanSinrTest(unittest.TestCase):
    def test_noise_only_mean(self) -> None:
        """
        Without interference the SINR is h^H h / sigma^2 with mean Tr(P_1) / sigma^2
        :return:
        """
        config = SystemConfig(PowerMatrix([2.0, 1.0, 0.5]), [], 0.5)
        estimate = metrics.mc_mean_sinr(config, 40000, seed=TEST_SEED, batch_samples=10000)
        self.assertEqual(estimate.n_samples, 40000)
        self.assertEqual(estimate.seed, TEST_SEED)
        self.assertLess(abs(estimate.mean - 7.0), 5.0 * estimate.std_err)

    def test_reproducible(self) -> None:
        """
        The same seed gives the same estimate
        :return:
        """
        config = three_antenna_config()
        first = metrics.mc_mean_sinr(config, 1000, seed=TEST_SEED)
        second = metrics.mc_mean_sinr(config, 1000, seed=TEST_SEED)
        self.assertEqual(first.mean, second.mean)
        with self.assertRaises(InvalidParameterError):
            metrics.mc_mean_sinr(config, 0, seed=TEST_SEED)
