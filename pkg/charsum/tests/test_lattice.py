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

import math
from fractions import Fraction
from unittest import TestCase

import numpy as np
import pytest

import charsum.lattice as lattice
from charsum.characters import build_group
from charsum.exceptions import CapacityError, DomainError, PreconditionError
from charsum.tests.thresholds import FOURIER_SIDE_TOL


class LatticeTests(TestCase):
    @classmethod
    def setup_class(self):
        """Setup class variables before any tests."""
        self.m8 = lattice.make_instance(8, [1])
        self.m6 = lattice.make_instance(6, [1])
        self.m101 = lattice.make_instance(101, [1, 10])
        self.rng = np.random.default_rng(8128)

    def test_make_instance(self):
        """Verify make_instance() reduces to the exact order."""
        inst = lattice.make_instance(8, [2, 6])
        self.assertEqual(inst.M, 4)
        self.assertEqual(inst.numerators, (1, 3))

        raw = lattice.make_instance(8, [2, 6], normalize=False)
        self.assertEqual(raw.M, 8)
        self.assertEqual(raw.fractions(), [Fraction(1, 4), Fraction(3, 4)])

        self.assertEqual(lattice.make_instance(7, [-1, 15]).numerators, (6, 1))

        with pytest.raises(DomainError):
            lattice.make_instance(0, [1])
        with pytest.raises(DomainError):
            lattice.make_instance(8, [])

    def test_enumerate_small_multiples(self):
        """Verify enumerate_small_multiples() on M = 8."""
        plus = lattice.enumerate_small_multiples(self.m8, 2, Fraction(1, 4), 'plus')
        self.assertEqual(plus.members.tolist(), [0, 2, 6])

        minus = lattice.enumerate_small_multiples(self.m8, 2, Fraction(1, 4), 'minus')
        self.assertEqual(minus.members.tolist(), [1, 7])

        # eta >= 1/2 admits every residue class member
        everything = lattice.enumerate_small_multiples(self.m8, 2, Fraction(1, 2), 'minus')
        self.assertEqual(everything.members.tolist(), [1, 3, 5, 7])

        self.assertEqual(lattice.count_small_multiples(self.m8, 2, '1/4', 'plus'), 3)

        with pytest.raises(CapacityError):
            lattice.enumerate_small_multiples(self.m8, 2, Fraction(1, 4), 'plus', cap=4)
        with pytest.raises(DomainError):
            lattice.enumerate_small_multiples(self.m8, 2, Fraction(1, 4), 'both')

    def test_is_member_boundary(self):
        """Verify the distance test is closed and exact."""
        inst = lattice.make_instance(1000, [1])
        members = lattice.is_member(inst, [100, 101, 900, 899], 1, Fraction(1, 10), 'plus')
        self.assertEqual(members.tolist(), [True, False, True, False])

    def test_enumeration_against_brute_force(self):
        """Verify enumeration against rational arithmetic."""
        for _ in range(10):
            M = int(self.rng.integers(20, 300))
            k = int(self.rng.integers(1, 4))
            inst = lattice.make_instance(M, self.rng.integers(0, M, size=k).tolist(), normalize=False)
            eta = Fraction(int(self.rng.integers(1, 10)), 20)
            n = int(self.rng.integers(1, 4))

            expected = []
            for ell in range(M):
                if ell % n != 0:
                    continue
                dists = [abs(Fraction(ell * a, M) - round(Fraction(ell * a, M))) for a in inst.numerators]
                if max(dists) <= eta:
                    expected.append(ell)

            got = lattice.enumerate_small_multiples(inst, n, eta, 'plus').members.tolist()
            self.assertEqual(got, expected)

    def test_cube_collisions(self):
        """Verify cube_collisions() differences are small multiples."""
        diffs = lattice.cube_collisions(self.m101, range(101), 3)
        self.assertGreaterEqual(diffs.size, 12)
        self.assertEqual(int(diffs[0]), 0)
        self.assertTrue(np.all(lattice.is_member(self.m101, diffs, 1, Fraction(1, 3), 'plus')))

        self.assertEqual(lattice.cube_collisions(self.m101, [], 3).size, 0)
        with pytest.raises(DomainError):
            lattice.cube_collisions(self.m101, range(101), 0)

    def test_pigeonhole_witness(self):
        """Verify pigeonhole_witness() on M = 8."""
        witness = lattice.pigeonhole_witness(self.m8, 2, 4)
        self.assertEqual(witness.count, 3)
        self.assertEqual(witness.bound, 1)
        self.assertTrue(witness.holds)
        self.assertTrue(np.all(lattice.is_member(self.m8, witness.multipliers, 2, Fraction(1, 4), 'plus')))

        with pytest.raises(DomainError):
            lattice.pigeonhole_witness(self.m8, 2, 5)

    def test_pigeonhole_random(self):
        """Verify the pigeonhole count bound on random instances."""
        checked = 0
        while checked < 100:
            k = int(self.rng.integers(1, 5))
            N = int(self.rng.integers(2, 9))
            n = int(self.rng.integers(1, 5))
            M = int(self.rng.integers(n * N ** k, max(n * N ** k + 1, 100001)))
            u = self.rng.integers(0, M, size=k).tolist()
            inst = lattice.make_instance(M, u)
            if n * N ** inst.k > inst.M:
                continue

            witness = lattice.pigeonhole_witness(inst, n, N)
            self.assertTrue(witness.holds)
            if witness.multipliers is not None:
                self.assertTrue(np.all(lattice.is_member(inst, witness.multipliers, n, Fraction(1, N), 'plus')))
            checked += 1

    def test_shift_construction(self):
        """Verify shift_construction() on M = 8."""
        report = lattice.shift_construction(self.m8, 2, Fraction(1, 4), Fraction(1, 4))
        self.assertEqual(report.witness, 1)
        self.assertEqual(report.plus_count, 3)
        self.assertEqual(report.minus_count, 4)
        self.assertEqual(report.images.tolist(), [1, 3, 7])
        self.assertTrue(report.images_valid)
        self.assertTrue(report.holds)

        # only multiples of 1/2 are reachable, so C_{2-}(1/8) is empty
        with pytest.raises(PreconditionError):
            lattice.shift_construction(lattice.make_instance(2, [1]), 2, Fraction(1, 8), Fraction(1, 8))
        with pytest.raises(DomainError):
            lattice.shift_construction(self.m8, 3, Fraction(1, 4), Fraction(1, 4))

    def test_relation_search(self):
        """Verify relation_search() on small instances."""
        res = lattice.relation_search(self.m6, 2, 3)
        self.assertEqual(res.status, 'found')
        self.assertEqual(res.relation.r, (3,))
        self.assertEqual(res.relation.residue, 0)

        res = lattice.relation_search(self.m101, 1, 11)
        self.assertEqual(res.status, 'found')
        self.assertEqual(res.relation.r, (10, -1))
        self.assertEqual(res.strategy, 'exhaustive')

        res = lattice.relation_search(lattice.make_instance(6, [0, 1]), 1, 2)
        self.assertEqual(res.relation.r, (1, 0))
        self.assertEqual(res.strategy, 'trivial')

        self.assertEqual(lattice.relation_search(self.m101, 1, 0).status, 'absent')
        self.assertEqual(lattice.relation_search(self.m101, 1, 5).status, 'absent')

        with pytest.raises(DomainError):
            lattice.relation_search(self.m6, 4, 3)

    def test_meet_in_the_middle(self):
        """Verify meet-in-the-middle finds the exhaustive relation."""
        res = lattice.relation_search(self.m101, 1, 11, exhaustive_cap=0)
        self.assertEqual(res.strategy, 'meet-in-the-middle')
        self.assertEqual(res.relation.r, (10, -1))

        res = lattice.relation_search(self.m101, 1, 11, exhaustive_cap=0, mitm_cap=0)
        self.assertEqual(res.status, 'unknown')

        for _ in range(10):
            M = int(self.rng.integers(50, 500))
            inst = lattice.make_instance(M, self.rng.integers(1, M, size=3).tolist())
            full = lattice.relation_search(inst, 1, 4)
            mitm = lattice.relation_search(inst, 1, 4, exhaustive_cap=0)
            self.assertEqual(full.status, mitm.status)
            if full.status == 'found' and full.strategy != 'trivial':
                r = mitm.relation.r
                self.assertEqual(sum(a * b for a, b in zip(r, inst.numerators)) % inst.M, 0)
                self.assertEqual(max(abs(x) for x in r), max(abs(x) for x in full.relation.r))

    def test_counting_function(self):
        """Verify counting_function_S() against the bump values."""
        c0 = lattice.bump_normalization()
        res = lattice.counting_function_S(self.m8, 2, 2)
        self.assertEqual(res.support_count, 2)
        self.assertAlmostEqual(res.value, 4 * c0 * math.exp(-4.0 / 3.0), delta=1e-12)

        # odd multiples of 1/8 never enter the open cube of side 1/4
        empty = lattice.counting_function_S(self.m8, 2, 4)
        self.assertEqual(empty.value, 0.0)
        self.assertEqual(empty.log_value, -math.inf)

    def test_counting_function_support(self):
        """Verify S(N) > 0 implies C_{n-}(1/N) is non-empty."""
        for _ in range(100):
            M = int(self.rng.integers(10, 400))
            k = int(self.rng.integers(1, 5))
            inst = lattice.make_instance(M, self.rng.integers(0, M, size=k).tolist())
            N = int(self.rng.integers(1, 6))
            res = lattice.counting_function_S(inst, 2, N)
            self.assertEqual(res.support_count > 0, math.isfinite(res.log_value))
            if math.isfinite(res.log_value):
                self.assertGreater(lattice.count_small_multiples(inst, 2, Fraction(1, N), 'minus'), 0)

    def test_fourier_side(self):
        """Verify the dual-side evaluation of S(N)."""
        direct = lattice.counting_function_S(self.m8, 2, 2).value
        dual = lattice.fourier_counting_function(self.m8, 2, 2, 200)
        self.assertAlmostEqual(dual, direct, delta=FOURIER_SIDE_TOL * max(1.0, direct))

        self.assertAlmostEqual(lattice.bump_transform(0), 1.0, delta=1e-15)
        self.assertLess(abs(lattice.bump_transform(20.0)), 1e-3)

    def test_dichotomy(self):
        """Verify dichotomy_check() branches."""
        planted = lattice.make_instance(200, [1, 10])
        out = lattice.dichotomy_check(planted, 2, 2)
        self.assertEqual(out.branch, 'relation')
        self.assertEqual(out.relation.r, (0, 10))
        self.assertEqual(out.relation.residue, 0)
        self.assertEqual(out.L, 15)

        free = lattice.make_instance(1000, [3])
        out = lattice.dichotomy_check(free, 2, 8)
        self.assertEqual(out.branch, 'count')
        self.assertEqual(out.count, 250)
        self.assertGreaterEqual(out.count, out.bound)

        with pytest.raises(DomainError):
            lattice.dichotomy_check(free, 1, 8)

    def test_dichotomy_planted(self):
        """Verify instances carrying a small relation land in the relation branch."""
        rng = np.random.default_rng(1729)
        for _ in range(50):
            k = int(rng.integers(1, 4))
            N = 3 if k == 1 else (2 if k == 3 else int(rng.integers(2, 4)))
            n = int(rng.integers(2, 4))
            m = int(rng.integers(50, 5000))
            M = n * m
            L = int(math.floor(k ** 4 * N * math.log(N) ** 2))

            # r has a unit entry, so the matching numerator can be solved for
            r = rng.integers(-min(L, 6), min(L, 6) + 1, size=k).tolist()
            j0 = int(rng.integers(0, k))
            r[j0] = int(rng.choice([-1, 1]))
            u = rng.integers(0, M, size=k).tolist()
            rest = sum(r[j] * u[j] for j in range(k) if j != j0)
            u[j0] = (-r[j0] * rest + m * int(rng.integers(0, n))) % M

            inst = lattice.make_instance(M, u, normalize=False)
            self.assertEqual(sum(a * b for a, b in zip(r, u)) % m, 0)

            out = lattice.dichotomy_check(inst, n, N)
            self.assertEqual(out.branch, 'relation')
            self.assertEqual(out.L, L)
            found = out.relation.r
            self.assertTrue(any(found))
            self.assertLessEqual(max(abs(x) for x in found), L)
            self.assertEqual(sum(a * b for a, b in zip(found, u)) % m, 0)
            self.assertEqual(out.relation.residue, 0)

    def test_dichotomy_relation_free(self):
        """Verify relation-free instances land in the count branch with enough multipliers."""
        rng = np.random.default_rng(31415)
        free = 0
        for _ in range(2000):
            if free == 50:
                break

            k = int(rng.integers(1, 3))
            N = int(rng.integers(2, 4))
            n = int(rng.integers(2, 4))
            M = n * int(rng.integers(2000, 50000))
            inst = lattice.make_instance(M, rng.integers(1, M, size=k).tolist(), normalize=False)
            L = int(math.floor(k ** 4 * N * math.log(N) ** 2))

            search = lattice.relation_search(inst, n, L, mitm_cap=0)
            if search.status != 'absent':
                continue
            self.assertIn(search.strategy, ('exhaustive', 'trivial'))

            out = lattice.dichotomy_check(inst, n, N)
            self.assertIn(out.branch, ('relation', 'count'))
            self.assertEqual(out.branch, 'count')
            self.assertEqual(out.bound, Fraction(M, n * N ** k))
            self.assertGreaterEqual(out.count, out.bound)
            free += 1

        self.assertEqual(free, 50)

    def test_obstruction_check(self):
        """Verify obstruction_check() on M = 6."""
        report = lattice.obstruction_check(self.m6, 2, (3,), 1)
        self.assertEqual(report.min_distance, Fraction(1, 2))
        self.assertTrue(report.holds)
        self.assertEqual(report.min_norm_sq, Fraction(1, 36))
        self.assertEqual(report.euclid_bound, Fraction(1, 36))
        self.assertTrue(report.euclid_holds)

        self.assertTrue(lattice.obstruction_check(self.m6, 1, (6,), 0).empty_domain)

        with pytest.raises(DomainError):
            lattice.obstruction_check(self.m6, 2, (3,), 2)
        with pytest.raises(DomainError):
            lattice.obstruction_check(self.m6, 2, (1,), 1)

    def test_obstruction_random(self):
        """Verify the obstruction bounds on constructed instances."""
        built = 0
        while built < 50:
            n = int(self.rng.integers(2, 6))
            M = n * int(self.rng.integers(2, 60))
            k = int(self.rng.integers(1, 4))
            u = self.rng.integers(0, M, size=k).tolist()
            r = self.rng.integers(-5, 6, size=k).tolist()
            inst = lattice.make_instance(M, u, normalize=False)

            dot = sum(a * b for a, b in zip(r, u)) % M
            if (n * dot) % M != 0 or not any(r):
                continue
            t = dot // (M // n)
            if math.gcd(t, n) != 1:
                continue

            report = lattice.obstruction_check(inst, n, r, t)
            self.assertTrue(report.holds)
            self.assertTrue(report.euclid_holds)
            built += 1

    def test_obstruction_minima_exhaustive(self):
        """Verify both obstruction minima range over every admissible ell."""
        built = 0
        while built < 30:
            n = int(self.rng.integers(2, 5))
            M = n * int(self.rng.integers(2, 40))
            k = int(self.rng.integers(1, 4))
            u = self.rng.integers(0, M, size=k).tolist()
            r = self.rng.integers(-4, 5, size=k).tolist()
            inst = lattice.make_instance(M, u, normalize=False)

            dot = sum(a * b for a, b in zip(r, u)) % M
            if (n * dot) % M != 0 or not any(r):
                continue
            t = dot // (M // n)
            if math.gcd(t, n) != 1:
                continue

            ells = [ell for ell in range(1, M) if ell % n != 0]

            def centered(c):
                return min(c % M, M - c % M)

            distance = min(Fraction(centered(ell * dot), M) for ell in ells)
            norm_sq = min(Fraction(sum(centered(ell * a) ** 2 for a in u), M * M) for ell in ells)

            report = lattice.obstruction_check(inst, n, r, t)
            self.assertEqual(report.min_distance, distance)
            self.assertEqual(report.min_norm_sq, norm_sq)
            built += 1

    def test_relation_divisibility(self):
        """Verify the prime-power criterion matches the argument relation."""
        group = build_group(101)
        primes = [2, 3, 5]
        for r in ([1, 0, 0], [2, -1, 0], [1, 1, -1], [0, 5, -3], [4, -2, 1]):
            for n in (1, 2, 5):
                divides, holds = lattice.relation_divisibility_check(group, primes, r, n)
                self.assertEqual(divides, holds)

        # 2^100 = 1 (mod 101)
        divides, holds = lattice.relation_divisibility_check(group, [2], [50], 2)
        self.assertTrue(divides)
        self.assertTrue(holds)
