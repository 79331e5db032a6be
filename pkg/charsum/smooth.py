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
import logging
from collections import namedtuple

import numpy as np
import mpmath
from sympy import primerange

from charsum.config import SIEVE_LIMIT
from charsum.common import check_finite, csum, floor_power
from charsum.dickman import default_evaluator
from charsum.exceptions import CapacityError, DomainError

SmoothTail = namedtuple('SmoothTail', 'y z value tail_bound envelope exact')
SmoothRemoval = namedtuple('SmoothRemoval', 'smooth_sum scaled_sum envelope')


def primes_up_to(y):
    """Primes p <= y as an int64 array."""
    return np.array(list(primerange(2, int(math.floor(y)) + 1)), dtype=np.int64)


def largest_prime_factor_table(limit):
    """Largest prime factor P(n) for 0 <= n <= limit.

    A smallest-prime-factor sieve is run first. P(n) is then
    max(spf[n], P(n / spf[n])); the cofactor is at most n/2,
    so the table fills in doubling blocks with each block
    depending only on earlier ones.

    Parameters
    ----------
    limit : int
        Upper bound (inclusive).

    Returns
    -------
    np.ndarray
        Array with lpf[0] = 0, lpf[1] = 1 and lpf[n] = P(n).
    """

    dtype = np.int32 if limit < 2**31 else np.int64

    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            multiples = spf[p * p::p]
            multiples[multiples == 0] = p

    idx = np.arange(limit + 1, dtype=dtype)
    is_prime = spf == 0
    is_prime[:2] = False
    spf[is_prime] = idx[is_prime]
    del is_prime

    lpf = np.zeros(limit + 1, dtype=dtype)
    if limit >= 1:
        lpf[1] = 1

    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        s = spf[lo:hi]
        cofactor = idx[lo:hi] // s
        lpf[lo:hi] = np.maximum(s, lpf[cofactor])
        lo = hi

    return lpf


def smooth_numbers(y, limit):
    """All n <= limit with P(n) <= y, sorted.

    Built directly from the primes up to y, so it is practical
    for huge limits when y is small.

    Parameters
    ----------
    y : float
        Smoothness bound.
    limit : int
        Largest integer to include.

    Returns
    -------
    np.ndarray
        Sorted int64 array, always containing 1.
    """

    check_finite(y, 'y')
    limit = int(limit)
    if limit < 1:
        return np.zeros(0, dtype=np.int64)

    primes = primes_up_to(y)
    if len(primes) and limit > (2**62) // int(primes[-1]):
        raise CapacityError('Limit too large for 64-bit enumeration: %d' % limit)

    values = np.array([1], dtype=np.int64)
    for p in primes:
        layers = [values]
        cur = values
        while True:
            cur = cur * p
            cur = cur[cur <= limit]
            if cur.size == 0:
                break
            layers.append(cur)
        values = np.concatenate(layers)

    values.sort()
    return values


def smooth_reciprocal_tail_bound(y, H):
    """Upper bound on the sum of 1/n over y-smooth n > H.

    The Euler product prod_{p<=y} (1 - 1/p)^(-1) is formed in
    mpmath and the head, the sum of 1/n over y-smooth n <= H, is
    summed exactly from its float64 terms by math.fsum. Each term
    carries a relative rounding error of at most 2^-53 and the sum
    one more, so the difference is raised by head * 2^-52 to stay
    an upper bound, then clamped at 0.
    """

    primes = primes_up_to(y)
    terms = 1.0 / smooth_numbers(y, H).astype(np.float64)
    head = math.fsum(terms)
    with mpmath.workdps(40):
        euler = mpmath.fprod(mpmath.mpf(int(p)) / (int(p) - 1) for p in primes)
        tail = float(euler - mpmath.mpf(head))

    return max(0.0, tail + head * 2.0 ** -52)


class SmoothSieve(object):
    """Largest-prime-factor table supporting exact smooth-number queries."""

    def __init__(self, limit=SIEVE_LIMIT, rho_evaluator=None):
        """Initialization.

        Parameters
        ----------
        limit : int
            Largest integer covered.
        rho_evaluator : RhoEvaluator
            Evaluator for the Dickman function (shared default if None).
        """

        self.logger = logging.getLogger('timestamp')

        if int(limit) < 1:
            raise DomainError('Sieve limit must be positive: %s' % limit)

        self.limit = int(limit)
        self.rho_evaluator = rho_evaluator if rho_evaluator else default_evaluator()

        self.logger.info('Building largest prime factor table to %d.' % self.limit)
        self.lpf = largest_prime_factor_table(self.limit)
        self.lpf.flags.writeable = False

    def extend(self, limit):
        """Sieve with a larger limit; existing entries are unchanged."""

        if limit <= self.limit:
            return self

        return SmoothSieve(limit, self.rho_evaluator)

    def _rho(self, u):
        return float(self.rho_evaluator.rho(u))

    def largest_prime_factor(self, n):
        """Largest prime dividing n, with P(1) = 1.

        Parameters
        ----------
        n : int
            Integer in [1, limit].

        Returns
        -------
        int
            P(n).
        """

        if int(n) != n or n < 1 or n > self.limit:
            raise DomainError('n must be an integer in [1, %d]: %s' % (self.limit, n))

        return int(self.lpf[int(n)])

    def smooth_mask(self, lo, hi, y):
        """Integers in [lo, hi] and a mask of those with P(n) <= y."""

        n = np.arange(lo, hi + 1, dtype=np.int64)
        return n, self.lpf[lo:hi + 1] <= y

    def psi(self, x, y):
        """Count of n <= x with P(n) <= y.

        Parameters
        ----------
        x : float
            Upper bound, at most limit.
        y : float
            Smoothness bound, at least 2.

        Returns
        -------
        int
            psi(x, y).
        """

        check_finite(x, 'x')
        check_finite(y, 'y')
        if y < 2:
            raise DomainError('psi requires y >= 2: %s' % y)
        if x > self.limit:
            raise CapacityError('x exceeds sieve limit %d: %s' % (self.limit, x))
        if x < 1:
            return 0

        return int(np.count_nonzero(self.lpf[1:int(math.floor(x)) + 1] <= y))

    def hildebrand_residual(self, x, y):
        """Normalised error (psi(x,y)/x - rho(u)) / (rho(u) log(u+1)/log y)."""

        count = self.psi(x, y)
        u = math.log(x) / math.log(y)
        rho_u = self._rho(u)

        return (count / x - rho_u) / (rho_u * math.log(u + 1) / math.log(y))

    def smooth_log_sum(self, y, s, r):
        """Sum of 1/n over y-smooth n with y^s < n <= y^r.

        Accumulation is compensated, so the error is below 1e-12
        relative.
        """

        check_finite(y, 'y')
        if y < 2:
            raise DomainError('smooth_log_sum requires y >= 2: %s' % y)
        if s < 0 or r < s:
            raise DomainError('smooth_log_sum requires 0 <= s <= r: (%s, %s)' % (s, r))

        lower = floor_power(y, s)
        upper = floor_power(y, r)
        if upper > self.limit:
            raise CapacityError('y^r exceeds sieve limit %d.' % self.limit)
        if upper <= lower:
            return 0.0

        n = np.flatnonzero(self.lpf[lower + 1:upper + 1] <= y) + (lower + 1)
        return csum(1.0 / n.astype(np.float64))

    def smooth_tail_check(self, y, z):
        """Sum of 1/n over y-smooth n in (y^(log log y), z].

        In exact mode (z <= limit) the sum is enumerated. Up to
        limit^2 the part beyond the sieve is replaced by the
        bound log y int rho + rho(u_limit) and the result is
        flagged as inexact.

        Returns
        -------
        SmoothTail
            Value, tail bound for the non-enumerated range, the
            (log y)^(-(log log log y - 3/2)) envelope, and a flag.
        """

        check_finite(y, 'y')
        check_finite(z, 'z')
        if y < 100:
            raise DomainError('smooth_tail_check requires y >= 100: %s' % y)

        log_y = math.log(y)
        start_exp = math.log(log_y)
        lower = floor_power(y, start_exp)
        if z < y ** start_exp * (1 - 1e-12):
            raise DomainError('z must be at least y^(log log y): %s' % z)
        if z > float(self.limit) ** 2:
            raise CapacityError('z exceeds squared sieve limit.')

        envelope = log_y ** (-(math.log(math.log(log_y)) - 1.5))

        upper = min(int(math.floor(z)), self.limit)
        value = 0.0
        if upper > lower:
            n, mask = self.smooth_mask(lower + 1, upper, y)
            value = csum(1.0 / n[mask])

        if z <= self.limit:
            return SmoothTail(y, z, value, 0.0, envelope, True)

        self.logger.warning('smooth_tail_check beyond sieve limit; using rho bound for (%d, %g].' % (self.limit, z))
        u_lo = math.log(self.limit) / log_y
        u_hi = math.log(z) / log_y
        tail_bound = log_y * float(self.rho_evaluator.rho_integral(u_lo, u_hi)) + self._rho(u_lo)

        return SmoothTail(y, z, value, tail_bound, envelope, False)

    def remove_smoothness(self, y, B, c, f, interval):
        """Compare a y-smooth restricted sum with rho(B) times the full sum.

        Parameters
        ----------
        y : float
            Smoothness bound.
        B : float
            Exponent, at least 1.
        c : float
            Exponent of log y in the upper range limit.
        f : function
            Vectorised bounded function of n.
        interval : tuple
            Closed range (a, b) inside [y^B/log y, y^B (log y)^c].

        Returns
        -------
        SmoothRemoval
            (sum over smooth n of f(n)/n, rho(B) * sum over all n
            of f(n)/n, rho(B) log(B+1) (log log y)^2 / log y).
        """

        check_finite(y, 'y')
        check_finite(B, 'B')
        if B < 1 or c < 0:
            raise DomainError('remove_smoothness requires B >= 1 and c >= 0.')

        a, b = interval
        log_y = math.log(y)
        lo_allowed = y ** B / log_y
        hi_allowed = y ** B * log_y ** c
        if a < lo_allowed * (1 - 1e-12) or b > hi_allowed * (1 + 1e-12) or b < a:
            raise DomainError('Interval must lie inside [y^B/log y, y^B (log y)^c].')

        lo = int(math.ceil(a))
        hi = int(math.floor(b))
        if hi > self.limit:
            raise CapacityError('Interval exceeds sieve limit %d.' % self.limit)

        rho_B = self._rho(B)
        envelope = rho_B * math.log(B + 1) * math.log(log_y) ** 2 / log_y
        if hi < lo:
            return SmoothRemoval(0.0, 0.0, envelope)

        n, mask = self.smooth_mask(lo, hi, y)
        values = np.broadcast_to(np.asarray(f(n)), n.shape)
        if not np.all(np.isfinite(values)):
            raise DomainError('Test function returned non-finite values.')

        terms = values / n
        return SmoothRemoval(csum(terms[mask]), rho_B * csum(terms), envelope)
