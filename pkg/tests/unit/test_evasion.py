###
# (C) Copyright [2024] catmouse contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
##

import os
import unittest
from fractions import Fraction

import numpy as np

from catmouse import evasion
from catmouse import exceptions
from catmouse.evasion import EvasionLab
from catmouse.evasion import ImportantSet
from catmouse.game_engine import Schedule
from catmouse.graph_core import make_tk
from catmouse.strategies import StrategyBuilder


class ArithmeticTest(unittest.TestCase):
    def test_binary_expansion(self):
        expansion = evasion.binary_expansion(42)

        self.assertEqual(expansion.digits, (1, 0, 1, 0, 1, 0))
        self.assertEqual(str(expansion), '101010')
        self.assertEqual(evasion.binary_expansion(0).digits, (0,))
        self.assertRaises(exceptions.CatMouseInputError, evasion.binary_expansion, -1)

    def test_gamma_and_beta(self):
        self.assertEqual(evasion.gamma(42), 3)
        self.assertEqual(evasion.beta(42), 3)
        self.assertEqual(evasion.gamma(7), 0)
        self.assertEqual(evasion.beta(7), 2)
        self.assertEqual(evasion.gamma(0), 0)
        self.assertEqual(evasion.beta(0), 0)
        self.assertEqual(evasion.beta(2731), 7)

    def test_naf(self):
        self.assertEqual(str(evasion.naf(7)), '2^3 - 2^0')
        self.assertEqual(str(evasion.naf(42)), '2^5 + 2^3 + 2^1')
        self.assertEqual(str(evasion.naf(0)), '0')

    def test_naf_is_non_adjacent(self):
        for n in range(1, 2000):
            representation = evasion.naf(n)
            exponents = [exponent for _, exponent in representation.terms]
            self.assertEqual(representation.value, n)
            self.assertTrue(all(high - low >= 2 for high, low in zip(exponents, exponents[1:])), n)

    def test_bruteforce(self):
        self.assertEqual(evasion.beta_bruteforce(0), 0)
        self.assertEqual(evasion.beta_bruteforce(7), 2)
        self.assertEqual(evasion.beta_bruteforce(42), 3)
        self.assertIsNone(evasion.beta_bruteforce(2731))
        self.assertEqual(evasion.beta_bruteforce(2731, max_terms=3), None)

    def test_bruteforce_guards(self):
        self.assertRaises(exceptions.CatMouseCapacityError, evasion.beta_bruteforce, 2 ** 12 + 1)
        self.assertRaises(exceptions.CatMouseCapacityError, evasion.beta_bruteforce, 5, 7)

    def test_arrays_match_scalars(self):
        values = np.arange(0, 5000)

        self.assertEqual(evasion.gamma_array(values).tolist(), [evasion.gamma(int(n)) for n in values])
        self.assertEqual(evasion.beta_array(values).tolist(), [evasion.beta(int(n)) for n in values])

    def test_arithmetic_lemma(self):
        report = evasion.check_arithmetic_lemma(2 ** 20)

        self.assertFalse(report.falsified)
        self.assertEqual(report.checked, 2 ** 20)
        self.assertGreaterEqual(report.min_slack, 0)
        self.assertRaises(exceptions.CatMouseCapacityError, evasion.check_arithmetic_lemma, 2 ** 20 + 1)

    def test_oracle(self):
        report = evasion.check_beta_oracle()

        self.assertEqual(report.violations, [])
        self.assertEqual(report.checked, evasion.BRUTEFORCE_MAX_N + 1)
        self.assertEqual(evasion.BRUTEFORCE_MAX_N, 2 ** 12)
        self.assertEqual(report.to_dict()['check'], 'oracle')

    def test_approximate_lemma(self):
        report = evasion.check_approximate_lemma(10 ** 5, 3)

        self.assertFalse(report.falsified)
        self.assertEqual(report.checked, 10 ** 5)

    def test_special_n_and_budgets(self):
        self.assertEqual(evasion.special_n(8), 170)
        self.assertEqual(evasion.special_n(1), 0)
        self.assertEqual(evasion.gamma(evasion.special_n(8)), 4)
        self.assertEqual(evasion.corollary_budget(16, evasion.STRONG, Fraction(1, 20)), 3)
        self.assertEqual(evasion.corollary_budget(16, evasion.STRONG, '0.05'), 3)
        self.assertEqual(evasion.corollary_budget(100, evasion.WEAK), 2)
        self.assertRaises(exceptions.CatMouseInputError, evasion.corollary_budget, 16, evasion.STRONG, '0.3')
        self.assertRaises(exceptions.CatMouseInputError, evasion.corollary_budget, 0)

    def test_as_fraction(self):
        self.assertEqual(evasion.as_fraction('1/20'), Fraction(1, 20))
        self.assertEqual(evasion.as_fraction(0.05), Fraction(1, 20))
        self.assertRaises(exceptions.CatMouseInputError, evasion.as_fraction, 'tiny')


class BoundaryTest(unittest.TestCase):
    def setUp(self):
        self.st = make_tk(2)

    def test_important_boundary(self):
        self.assertEqual(evasion.important_boundary(ImportantSet(self.st, [0])), {1, 2})
        self.assertEqual(evasion.important_boundary(ImportantSet(self.st, [1, 3, 4])), {0})
        self.assertEqual(evasion.important_boundary(ImportantSet(self.st, range(7))), set())

    def test_important_set_rejects_subdividers(self):
        self.assertRaises(exceptions.CatMouseInputError, ImportantSet, self.st, [7])

    def test_weak_boundary_is_exhaustive_up_to_three(self):
        for k in (1, 2, 3):
            report = evasion.check_weak_boundary(k)
            self.assertTrue(report.exhaustive)
            self.assertEqual(report.checked, 2 ** (2 ** (k + 1) - 1))
            self.assertEqual(report.violation_count, 0)
            self.assertFalse(report.falsified)

        self.assertEqual(evasion.check_weak_boundary(3).to_dict()['mode'], 'exhaustive')

    def test_weak_boundary_guard(self):
        self.assertRaises(exceptions.CatMouseCapacityError, evasion.check_weak_boundary, 4)

    def test_weak_boundary_sampled(self):
        report = evasion.check_weak_boundary(7, samples=3000, seed=5)

        self.assertFalse(report.exhaustive)
        self.assertEqual(report.checked, 3000)
        self.assertFalse(report.falsified)

    def test_eps_boundary_intermediate_bound(self):
        report = evasion.check_eps_boundary(6, Fraction(1, 20), samples=3000, seed=2)

        self.assertEqual(report.intermediate_violations, 0)
        self.assertEqual(report.threshold, 238)
        self.assertFalse(report.falsified)

    def test_eps_threshold(self):
        self.assertEqual(evasion.eps_threshold(Fraction(1, 20)), 238)
        self.assertRaises(exceptions.CatMouseInputError, evasion.eps_threshold, 0)


class SurvivalTest(unittest.TestCase):
    def setUp(self):
        self.st = make_tk(2)

    def test_idle_schedule_keeps_everything(self):
        report = evasion.survival_run(self.st, Schedule(1, [[]] * 4))

        self.assertEqual(report.outcome, evasion.SURVIVES)
        self.assertEqual(report.counts, [(0, 7), (2, 7), (4, 7)])
        self.assertEqual(report.n_target, 2)
        self.assertEqual(report.cats, 0)

    def test_target_above_count(self):
        report = evasion.survival_run(self.st, Schedule(1, [[]] * 2), n_target=8)

        self.assertEqual(report.outcome, evasion.BELOW_TARGET)

    def test_winning_schedule_catches(self):
        st = make_tk(1)
        schedule = StrategyBuilder().basic(st.tree)
        report = evasion.survival_run(st, schedule)

        self.assertEqual(report.outcome, evasion.CAUGHT)

    def test_dynamics_match_step(self):
        dyn = evasion.TkDynamics(self.st)
        a = dyn.step(dyn.full(), [0, 7])

        self.assertFalse(a[0])
        self.assertFalse(a[7])
        self.assertEqual(int(a.sum()), self.st.tree.n - 2)
        self.assertEqual(dyn.subdivider_of(1), 7)

    def test_audit_records(self):
        st = make_tk(8)
        schedule = evasion.random_schedule(st, 1, 8, 4)
        report = evasion.survival_run(st, schedule, audit=True)

        self.assertEqual(len(report.audits), 4)
        for record in report.audits:
            self.assertTrue(record['chain'])
            self.assertTrue(record['weak'])
            self.assertTrue(record['r_bound'])
            self.assertGreaterEqual(record['observed'], record['chain_bound'])

    def test_adversaries(self):
        st = make_tk(5)
        m = st.important_count

        random_one = evasion.random_schedule(st, 2, 6, 9)
        self.assertEqual(random_one, evasion.random_schedule(st, 2, 6, 9))
        self.assertEqual(len(random_one), 6)

        greedy = evasion.greedy_schedule(st, 2, 6, 1)
        self.assertLessEqual(greedy.cats_used, 2)
        self.assertEqual(len(greedy), 6)

        sweep = evasion.sweep_schedule(st, 2, 6, 3)
        self.assertTrue(all(v >= m for shot in sweep.rounds for v in shot))

        truncated = evasion.truncated_schedule(st, 2, 6, StrategyBuilder())
        self.assertLessEqual(truncated.cats_used, 2)
        self.assertLessEqual(len(truncated), 6)


class CampaignTest(unittest.TestCase):
    def test_campaign(self):
        report = evasion.survival_campaign(8, Fraction(1, 20), 6, 11, audit=True, rounds=12)
        payload = report.to_dict()

        self.assertEqual(report.cats, 1)
        self.assertEqual(report.runs, 6)
        self.assertEqual(report.outcomes[evasion.SURVIVES], 6)
        self.assertEqual(report.audited_steps, 36)
        self.assertFalse(report.violated)
        self.assertEqual(sorted(report.per_adversary), [evasion.GREEDY, evasion.RANDOM, evasion.SWEEP])
        self.assertEqual(payload['evidence'], 'sampled')
        self.assertEqual(payload['eps'], '1/20')

    def test_campaign_is_deterministic(self):
        first = evasion.survival_campaign(8, '0.05', 3, 2, rounds=8).to_dict()
        second = evasion.survival_campaign(8, '0.05', 3, 2, rounds=8).to_dict()

        self.assertEqual(first, second)

    def test_zero_budget_is_skipped(self):
        report = evasion.survival_campaign(4, Fraction(1, 20), 5, 0)

        self.assertTrue(report.skipped)
        self.assertEqual(report.runs, 0)

    def test_unknown_adversary(self):
        self.assertRaises(exceptions.CatMouseInputError, evasion.survival_campaign, 8, '0.05', 2, 0,
                          adversaries=('lazy',))


@unittest.skipUnless(os.environ.get('CATMOUSE_SLOW_TESTS'), 'set CATMOUSE_SLOW_TESTS=1 to run every height')
class FullCampaignTest(unittest.TestCase):
    def test_heights_eight_to_sixteen(self):
        for k in range(8, 17):
            report = evasion.survival_campaign(k, Fraction(1, 20), 8, k, audit=True, adversaries=evasion.ADVERSARIES)

            self.assertEqual(report.runs, 8, k)
            self.assertEqual(report.outcomes[evasion.SURVIVES], 8, k)
            self.assertFalse(report.violated, k)
            self.assertEqual(sorted(report.per_adversary), sorted(evasion.ADVERSARIES), k)


class EvasionLabTest(unittest.TestCase):
    def test_lab_uses_its_seed(self):
        lab = EvasionLab(seed=4)

        self.assertEqual(lab.approximate(500).to_dict(), evasion.check_approximate_lemma(500, 4).to_dict())
        self.assertEqual(lab.weak_boundary(2).violation_count, 0)
        self.assertFalse(lab.arithmetic(1000).falsified)
        self.assertEqual(lab.campaign(8, '0.05', 2, rounds=4).runs, 2)


if __name__ == '__main__':
    unittest.main()
