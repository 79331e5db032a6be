###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################

__copyright__ = 'Copyright 2026'
__license__ = 'GPL3'

import os
import csv
import json
import math
import shutil
import tempfile
from unittest import TestCase

import numpy as np
import pytest

import charsum.harness as harness
from charsum.characters import build_group
from charsum.smooth import smooth_numbers
from charsum.exceptions import CapacityError, DomainError
from charsum.tests.thresholds import PARTITION_TOL


class SumSplitTests(TestCase):
    @classmethod
    def setup_class(self):
        """Setup class variables before any tests."""
        self.g101 = build_group(101)
        self.g1009 = build_group(1009)
        self.g10007 = build_group(10007)
        self.rng = np.random.default_rng(42)

    def test_breakpoints(self):
        """Verify breakpoints are ordered and clipped to z."""
        split = harness.SumSplit(self.g1009)
        self.assertEqual(split.z, 37)
        (b1, b2, b3, b4), clipped = split.breakpoints(1)
        self.assertTrue(b1 < b2 <= b3 <= b4 <= split.z)
        self.assertTrue(clipped)

        (b1, b2, b3, b4), clipped = split.breakpoints(0)
        self.assertAlmostEqual(b2, 1.0, delta=1e-15)
        self.assertTrue(b1 < b2 <= b3 <= b4 <= split.z)

    def test_partition_identity(self):
        """Verify S1 + S2 + S3 regroups the direct smooth sum for both signs."""
        groups = {101: self.g101, 1009: self.g1009, 10007: self.g10007}
        cases = [(101, 1, 1.0), (101, 50, 0.5), (1009, 3, 1.0), (1009, 4, 0.0)]
        while len(cases) < 50:
            q = int(self.rng.choice(sorted(groups)))
            ell = int(self.rng.integers(1, groups[q].order))
            B = float(self.rng.uniform(0, 1))
            cases.append((q, ell, B))

        for q, ell, B in cases:
            report = harness.decompose(groups[q], ell, B)
            plus_direct, minus_direct = report.full_sum_check
            plus = abs(report.S1 + report.S2_plus + report.S3_plus - plus_direct)
            minus = abs(report.S1 + report.S2_minus + report.S3_minus - minus_direct)
            self.assertLess(plus, PARTITION_TOL)
            self.assertLess(minus, PARTITION_TOL)
            self.assertLess(report.partition_residual, PARTITION_TOL)

    def test_polya_consistency(self):
        """Verify the split Polya sum matches the expansion of the conjugate character."""
        for group, ell, B in ((self.g1009, 3, 1.0), (self.g1009, 10, 0.5), (self.g101, 7, 1.0)):
            report = harness.decompose(group, ell, B)
            expected = group.polya_rhs(group.conjugate_index(ell), report.alpha, report.z)
            self.assertLessEqual(abs(report.polya_rhs - expected), 1e-9 * max(1.0, abs(expected)))

            x = report.alpha * group.q
            self.assertAlmostEqual(report.polya_lhs, np.conj(group.partial_sum(ell, x)), delta=1e-12)
            self.assertGreater(report.main_term, 0)
            self.assertTrue(math.isfinite(report.ratio))

    def test_decompose_errors(self):
        """Verify decompose() preconditions."""
        with pytest.raises(DomainError):
            harness.decompose(self.g101, 0, 1)
        with pytest.raises(DomainError):
            harness.decompose(self.g101, 1, 2)
        with pytest.raises(DomainError):
            harness.decompose(self.g101, 1, -1)
        with pytest.raises(DomainError):
            harness.decompose(build_group(13), 1, 0.5)

    def test_rough_sum(self):
        """Verify rough_sum() against a direct sum."""
        y = math.log(101)
        z = 11
        alpha = 0.1
        smooth = set(smooth_numbers(y, z).tolist())
        expected = 0j
        for n in range(1, z + 1):
            if n in smooth:
                continue
            chi = self.g101.char_value(1, n)
            expected += chi * (1 - np.exp(-2j * np.pi * alpha * n)) / n
            expected += chi * (1 - np.exp(2j * np.pi * alpha * n)) / n

        # chi_1 is odd, so the +alpha part enters with a plus sign
        self.assertAlmostEqual(harness.rough_sum(self.g101, 1, alpha, z, y), expected, delta=1e-12)


class ProbeTests(TestCase):
    @classmethod
    def setup_class(self):
        """Setup class variables before any tests."""
        self.g101 = build_group(101)
        self.g1009 = build_group(1009)

    def test_a_delta(self):
        """Verify the transform fraction matches per-character membership."""
        delta = harness.default_delta(101)
        alpha = 1 / math.log(101)
        frac = harness.a_delta_fraction(self.g101, delta, alpha)

        outside = [ell for ell in range(1, self.g101.order)
                   if not harness.a_delta_test(self.g101, ell, delta, alpha).member]
        self.assertEqual(frac.non_members.tolist(), outside)
        self.assertAlmostEqual(frac.fraction, len(outside) / 99, delta=1e-15)
        self.assertGreater(frac.envelope, 0)

        # a large threshold admits every character
        self.assertEqual(harness.a_delta_fraction(self.g101, 100.0, alpha).fraction, 0.0)

        with pytest.raises(DomainError):
            harness.a_delta_test(self.g101, 0, delta, alpha)

    def test_exceptional_count_envelope(self):
        """Verify the envelope exceeds q^(1 - 1/(500 log log q)) and stays below 2q."""
        for q in (101, 1009, 10007):
            llq = math.log(math.log(q))
            env = harness.exceptional_count_envelope(q, harness.default_delta(q))
            self.assertGreater(env, q ** (1 - 1 / (500 * llq)))
            self.assertLess(env, 2 * q)

    def test_theorem_probe(self):
        """Verify theorem_probe() uses the parity-restricted sweep."""
        probe = harness.theorem_probe(1009, 1, 'odd')
        sweep = self.g1009.sweep_max(probe.x, 'odd')
        self.assertEqual(probe.measured, sweep.max_abs)
        self.assertEqual(probe.argmax_ell % 2, 1)
        self.assertTrue(math.isfinite(probe.ratio))
        self.assertGreater(probe.predicted, 0)
        self.assertFalse(probe.degenerate)

        even = harness.theorem_probe(1009, 1, 'even')
        self.assertEqual(even.argmax_ell % 2, 0)

        with pytest.raises(DomainError):
            harness.theorem_probe(1009, 0, 'even')
        with pytest.raises(DomainError):
            harness.theorem_probe(1009, 1, 'any')

    def test_ratio_trend(self):
        """Verify measured/predicted ratios are finite across q and B."""
        for q in (101, 1009, 10007):
            for B in (0, 1):
                self.assertTrue(math.isfinite(harness.theorem_probe(q, B, 'odd').ratio))
            self.assertTrue(math.isfinite(harness.theorem_probe(q, 1, 'even').ratio))

    def test_full_period_is_degenerate(self):
        """Verify theorem_probe() flags a sum over a full period."""
        for q in (101, 1009):
            full = harness.theorem_probe(q, 0, 'odd')
            self.assertEqual(full.x, q)
            self.assertTrue(full.degenerate)
            self.assertLess(full.measured, 1e-8)

            self.assertFalse(harness.theorem_probe(q, 1, 'odd').degenerate)

    def test_predicted_main_term(self):
        """Verify the predicted main terms."""
        odd = harness.predicted_main_term(1009, 0, 'odd')
        expected = math.exp(0.5772156649015329) * math.sqrt(1009) * math.log(math.log(1009)) / math.pi
        self.assertAlmostEqual(odd, expected, delta=1e-6 * expected)

        even = harness.predicted_main_term(1009, 1, 'even')
        self.assertAlmostEqual(even, math.sqrt(1009) / 2, delta=1e-12)

    def test_conjecture_probe(self):
        """Verify conjecture_probe() against direct rough sums."""
        alphas = [0.1, 0.25]
        probe = harness.conjecture_probe(self.g101, 1, 200, alpha_grid=alphas)

        y = math.log(101)
        smooth = set(smooth_numbers(y, 200).tolist())
        rough = np.array([n for n in range(1, 201) if n not in smooth])
        for a, value in zip(alphas, probe.values):
            direct = abs(np.sum(self.g101.values(1, rough) * np.exp(2j * np.pi * a * rough) / rough))
            self.assertAlmostEqual(value, direct, delta=1e-10)
        self.assertEqual(probe.max_value, max(probe.values))

        self.assertEqual(harness.conjecture_probe(self.g101, 1, 200).values, [])
        with pytest.raises(CapacityError):
            harness.conjecture_probe(self.g101, 1, 10**8, alpha_grid=alphas)

    def test_large_sieve_and_first_piece(self):
        """Verify the large-sieve and first-piece checks are finite."""
        sieve = harness.large_sieve_check(self.g101, 1, 1000, 10, 0.1, 1)
        self.assertTrue(math.isfinite(sieve.ratio))
        self.assertGreater(sieve.rhs, 0)

        first = harness.first_piece_check(self.g1009, 3, 1)
        self.assertTrue(math.isfinite(first.ratio))
        self.assertAlmostEqual(first.bound, 1 / math.log(math.log(1009)), delta=1e-12)

        with pytest.raises(DomainError):
            harness.large_sieve_check(self.g101, 1, 2, 10, 0.1, 1)

    def test_sweep_comparison(self):
        """Verify sweep_comparison() reports agreement."""
        for q in (101, 1009, 10007):
            res = harness.sweep_comparison(q)
            self.assertTrue(res.agree)
            self.assertEqual(res.x, q // 2)


class ExperimentTests(TestCase):
    @classmethod
    def setup_class(self):
        """Setup class variables before any tests."""
        self.out_dir = tempfile.mkdtemp(prefix='charsum_')

    @classmethod
    def teardown_class(self):
        shutil.rmtree(self.out_dir, ignore_errors=True)

    def _config(self, name, probes):
        return {'name': name,
                'output': os.path.join(self.out_dir, name, 'results.jsonl'),
                'probes': probes}

    def test_run_experiment_idempotent(self):
        """Verify a completed configuration is not recomputed."""
        config = self._config('smoke', [{'type': 'sweep', 'q': [101]},
                                        {'type': 'theorem', 'q': [101], 'B': [1], 'parity': 'odd'},
                                        {'type': 'dickman', 'u': [2.0], 'tail_B': [1.0]},
                                        {'type': 'decompose', 'q': [101], 'ell': [1], 'B': [1]}])

        first = harness.run_experiment(config)
        self.assertIsNone(first.error)
        self.assertEqual(len(first.payload), 4)

        second = harness.run_experiment(dict(config, cpus=3))
        self.assertEqual(second.config_hash, first.config_hash)

        with open(config['output']) as f:
            lines = [line for line in f if line.strip()]
        self.assertEqual(len(lines), 1)

        doc = json.loads(lines[0])
        dickman_entry = [e for e in doc['payload'] if e['probe']['type'] == 'dickman'][0]
        self.assertAlmostEqual(dickman_entry['result']['rho'][0]['value'], 1 - math.log(2), delta=1e-10)

    def test_report(self):
        """Verify report() flattens records into CSV rows."""
        config = self._config('report', [{'type': 'theorem', 'q': [101, 1009], 'B': [1]}])
        harness.run_experiment(config)

        csv_file = os.path.join(self.out_dir, 'report.csv')
        rows = harness.report(config['output'], csv_file)
        self.assertEqual(len(rows), 4)
        self.assertEqual({(r['q'], r['parity']) for r in rows},
                         {(101, 'odd'), (101, 'even'), (1009, 'odd'), (1009, 'even')})
        self.assertTrue(all(math.isfinite(r['ratio']) for r in rows))

        with open(csv_file) as f:
            self.assertEqual(len(list(csv.DictReader(f))), 4)

    def test_failed_run_is_recorded(self):
        """Verify a failing work item leaves an error record."""
        config = self._config('failing', [{'type': 'sweep', 'q': [101, 103, 107, 109]},
                                          {'type': 'decompose', 'q': [101], 'ell': [0], 'B': [1]}])
        with pytest.raises(DomainError):
            harness.run_experiment(config)

        with open(config['output']) as f:
            doc = json.loads(f.readline())
        self.assertIsNotNone(doc['error'])
        # the first batch of four sweeps completed before the failure
        self.assertEqual(len(doc['payload']), 4)
