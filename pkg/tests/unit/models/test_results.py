import unittest

from numpy.testing import assert_allclose

from macrodiversity_mrc.models.results import (MetricReport, MetricReportSchema, SerEstimate, SerEstimateSchema,
                                               SerResult, SerResultSchema)


class ResultsTest(unittest.TestCase):
    def test_ser_estimate(self) -> None:
        """
        SER and binomial standard error from the counts
        :return:
        """
        estimate = SerEstimate(n_errors=25, n_symbols=1000, seed=7)
        self.assertEqual(estimate.ser, 0.025)
        assert_allclose(estimate.std_err, (0.025 * 0.975 / 1000) ** 0.5)
        empty = SerEstimate(n_errors=0, n_symbols=0)
        self.assertEqual((empty.ser, empty.std_err), (0.0, 0.0))

    def test_ser_estimate_schema(self) -> None:
        """
        Estimates dump their derived values and load back from the counts
        :return:
        """
        dumped = SerEstimateSchema().dump(SerEstimate(n_errors=3, n_symbols=100, seed=11, chunk_symbols=50))
        self.assertEqual(dumped['ser'], 0.03)
        self.assertEqual(dumped['rng_algorithm'], 'PCG64')
        loaded = SerEstimateSchema().load({'n_errors': 3, 'n_symbols': 100, 'seed': 11})
        self.assertEqual((loaded.n_errors, loaded.n_symbols, loaded.seed), (3, 100, 11))
        self.assertEqual(loaded.rng_algorithm, 'PCG64')

    def test_metric_report(self) -> None:
        """
        m_p in linear and dB form
        :return:
        """
        report = MetricReport(numerator=100.0, denominator=1.0)
        self.assertEqual(report.m_p_linear, 100.0)
        self.assertEqual(report.m_p_db, 20.0)
        dumped = MetricReportSchema().dump(report)
        self.assertEqual(dumped['m_p_db'], 20.0)
        self.assertEqual(MetricReportSchema().load({'numerator': 4.0, 'denominator': 2.0}).m_p_linear, 2.0)

    def test_ser_result_schema(self) -> None:
        """
        Results dump with their breakdown and perturbation
        :return:
        """
        result = SerResult(value=0.01, breakdown={'1,2': 0.004, '2,1': 0.006}, method='mixture',
                           perturbation={'epsilon_rel': 1e-5, 'relative_change': 1e-7})
        dumped = SerResultSchema().dump(result)
        self.assertEqual(dumped['breakdown'], {'1,2': 0.004, '2,1': 0.006})
        self.assertEqual(dumped['perturbation']['epsilon_rel'], 1e-5)
        self.assertIsNone(SerResultSchema().dump(SerResult(value=0.5))['perturbation'])
