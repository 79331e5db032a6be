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

import json
import math
from fractions import Fraction
from collections import namedtuple
from unittest import TestCase

import numpy as np
import mpmath
import pytest

from charsum.common import (as_fraction,
                            centered_residue,
                            check_finite,
                            csum,
                            dist_to_int,
                            floor_power,
                            parse_sign,
                            signed_phase,
                            to_jsonable)
from charsum.misc.time_keeper import TimeKeeper
from charsum.exceptions import DomainError


class CommonTests(TestCase):
    @classmethod
    def setup_class(self):
        """Setup class variables before any tests."""
        self.rng = np.random.default_rng(2026)

    def test_signed_phase(self):
        """Verify signed_phase() conjugate symmetry and reduction."""
        n = self.rng.integers(1, 10**9, size=100)
        alpha = 0.123456789
        plus = signed_phase(alpha, n, 1)
        minus = signed_phase(alpha, n, -1)
        self.assertTrue(np.array_equal(plus, np.conj(minus)))
        self.assertTrue(np.allclose(np.abs(plus), 1.0))
        self.assertAlmostEqual(complex(signed_phase(0.25, [1], 1)[0]), 1j, delta=1e-15)

    def test_csum(self):
        """Verify csum() cancels where naive summation loses digits."""
        values = [1e16, 1.0, -1e16] * 10
        self.assertEqual(csum(values), 10.0)
        self.assertEqual(csum([]), 0.0)
        self.assertEqual(csum(np.array([1 + 2j, 3 - 1j])), 4 + 1j)

    def test_integer_helpers(self):
        """Verify floor_power(), centered_residue() and dist_to_int()."""
        self.assertEqual(floor_power(10, 3), 1000)
        self.assertEqual(floor_power(1000, 1 / 3), 10)
        self.assertEqual(floor_power(2, 0.5), 1)

        self.assertEqual(centered_residue(7, 8), -1)
        self.assertEqual(centered_residue(4, 8), 4)
        self.assertEqual(centered_residue(-3, 8), -3)
        self.assertEqual(centered_residue(np.array([0, 3, 5, 6]), 6).tolist(), [0, 3, -1, 0])

        self.assertAlmostEqual(float(dist_to_int(2.75)), 0.25, delta=1e-15)

    def test_parsing(self):
        """Verify parse_sign(), as_fraction() and check_finite()."""
        self.assertEqual(parse_sign('+'), 1)
        self.assertEqual(parse_sign(-1), -1)
        self.assertEqual(parse_sign('minus'), -1)
        with pytest.raises(DomainError):
            parse_sign('*')

        self.assertEqual(as_fraction('1/4'), Fraction(1, 4))
        self.assertEqual(as_fraction(0.5), Fraction(1, 2))
        self.assertEqual(as_fraction(3), Fraction(3))

        check_finite(1.5, 'x')
        for bad in (math.inf, math.nan, 'abc'):
            with pytest.raises(DomainError):
                check_finite(bad, 'x')

    def test_to_jsonable(self):
        """Verify to_jsonable() output survives json.dumps()."""
        Record = namedtuple('Record', 'a b c d e')
        rec = Record(np.int64(3), 1 - 2j, Fraction(1, 3), mpmath.mpf('0.5'), np.array([True, False]))
        doc = to_jsonable({'rec': rec, 'items': (1, 2.5)})

        self.assertEqual(doc, {'rec': {'a': 3, 'b': [1.0, -2.0], 'c': '1/3', 'd': 0.5, 'e': [True, False]},
                               'items': [1, 2.5]})
        self.assertEqual(json.loads(json.dumps(doc)), doc)

    def test_time_keeper(self):
        """Verify TimeKeeper stage marks and formatting."""
        self.assertEqual(TimeKeeper.seconds_to_str(3723.5), '1:02:03.500')
        self.assertEqual(TimeKeeper.seconds_to_str(0.0004), '0:00:00.000')

        keeper = TimeKeeper()
        stage, total = keeper.mark('first')
        keeper.mark()
        self.assertEqual([s[0] for s in keeper.stages], ['first'])
        self.assertTrue(0 <= stage <= total <= keeper.total_seconds())
