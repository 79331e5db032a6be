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
from fractions import Fraction
from collections import namedtuple

import numpy as np
import mpmath
from sympy import factorint

from charsum import dickman
from charsum import lattice
from charsum.config import (PRETENTIOUS_EXHAUSTIVE_CAP,
                            EULER_TRUNCATION_HEIGHT,
                            CHUNK_SIZE)
from charsum.common import (EXP_GAMMA,
                            as_fraction,
                            check_finite,
                            csum,
                            floor_power)
from charsum.smooth import primes_up_to, smooth_numbers, smooth_reciprocal_tail_bound
from charsum.exceptions import CapacityError, DomainError

PretentiousnessCertificate = namedtuple('PretentiousnessCertificate', 'q ell T max_dev parity principal')
PretentiousParameters = namedtuple('PretentiousParameters', 'y N T')
CountBound = namedtuple('CountBound', 'count bound holds')
EulerProductCheck = namedtuple('EulerProductCheck',
                               'sum_value tail_bound product_value mertens_ref within_budget ratio')
SmoothCharTail = namedtuple('SmoothCharTail', 'value tail_bound reference envelope')
SwitchReport = namedtuple('SwitchReport', 'char_sum unit_sum envelope')


class HFunction(namedtuple('HFunction', 'T N')):
    """Pretentiousness scale h(T) = log log T / N."""

    __slots__ = ()

    @property
    def value(self):
        return math.log(math.log(self.T)) / self.N


def h_value(T, N):
    """log log T / N for T > e and N > 0."""

    check_finite(T, 'T')
    check_finite(N, 'N')
    if T <= math.e or N <= 0:
        raise DomainError('h(T) requires T > e and N > 0: (%s, %s)' % (T, N))

    return HFunction(T, N).value


def choose_pretentious_parameters(q):
    """Sizes used for the pretentious sets: y = log q, N = log y, T = y/(4 log y)."""

    if q < 16:
        raise DomainError('Parameters need log log q > 1: q = %s' % q)

    y = math.log(q)
    N = math.log(y)
    return PretentiousParameters(y, N, y / (4 * N))


def _deviations(group, ells, primes):
    """max_p |chi_ell(p) - 1| for each label, as 2|sin(pi r/(q-1))|."""

    ells = np.asarray(ells, dtype=np.int64)
    worst = np.zeros(ells.shape, dtype=np.float64)
    for p in primes:
        r = (ells * int(group.ind[int(p)])) % group.order
        np.maximum(worst, 2.0 * np.abs(np.sin(np.pi * r / group.order)), out=worst)
    return worst


def _primes_below(group, T):
    check_finite(T, 'T')
    if T >= group.q:
        raise DomainError('Prime cutoff T must be below q = %d: %s' % (group.q, T))
    return [int(p) for p in primes_up_to(T)]


def _argument_instance(group, primes):
    """Lattice instance of the arguments ind[p]/(q-1), without normalisation."""
    return lattice.make_instance(group.order, [int(group.ind[p]) for p in primes], normalize=False)


class PretentiousSearch(object):
    """Finds and certifies characters with chi(p) close to 1 for p <= T."""

    def __init__(self, group, cap=PRETENTIOUS_EXHAUSTIVE_CAP):
        """Initialization.

        Parameters
        ----------
        group : CharacterGroup
            Characters modulo a prime q.
        cap : int
            Largest q searched exhaustively.
        """

        self.logger = logging.getLogger('timestamp')

        self.group = group
        self.cap = cap

    def certify(self, ell, T):
        """Certificate for a single label."""

        primes = _primes_below(self.group, T)
        ell = int(ell) % self.group.order
        max_dev = float(_deviations(self.group, [ell], primes)[0]) if primes else 0.0

        return PretentiousnessCertificate(self.group.q, ell, T, max_dev,
                                          self.group.parity(ell), ell == 0)

    def verify(self, cert):
        """Recompute a certificate and compare max_dev exactly."""
        return self.certify(cert.ell, cert.T).max_dev == cert.max_dev

    def search(self, T, epsilon, parity='any'):
        """Characters with max_{p<=T} |chi(p) - 1| <= epsilon.

        Parameters
        ----------
        T : float
            Prime cutoff, below q.
        epsilon : float
            Deviation threshold in (0, 2].
        parity : str
            'any', 'odd' or 'even'.

        Returns
        -------
        list
            PretentiousnessCertificate per qualifying label, sorted.
            The principal character is flagged rather than dropped.
        """

        check_finite(epsilon, 'epsilon')
        if not 0 < epsilon <= 2:
            raise DomainError('epsilon must lie in (0, 2]: %s' % epsilon)
        if parity not in ('any', 'odd', 'even'):
            raise DomainError('Parity must be any, odd or even: %s' % parity)

        primes = _primes_below(self.group, T)

        if self.group.q > self.cap:
            return self._search_above_cap(T, epsilon, parity, primes)

        certs = []
        for lo in range(0, self.group.order, CHUNK_SIZE):
            ells = np.arange(lo, min(self.group.order, lo + CHUNK_SIZE), dtype=np.int64)
            if parity == 'odd':
                ells = ells[ells % 2 == 1]
            elif parity == 'even':
                ells = ells[ells % 2 == 0]

            devs = _deviations(self.group, ells, primes)
            keep = devs <= epsilon
            for ell, dev in zip(ells[keep].tolist(), devs[keep].tolist()):
                certs.append(PretentiousnessCertificate(self.group.q, ell, T, dev,
                                                        self.group.parity(ell), ell == 0))

        self.logger.debug('Found %d characters within %g of 1 for p <= %g.' % (len(certs), epsilon, T))
        return certs

    def _search_above_cap(self, T, epsilon, parity, primes):
        if parity == 'odd':
            raise CapacityError('Odd pretentious search is exhaustive only for q <= %d.' % self.cap)

        # |chi(p) - 1| <= 2 pi |theta_p|, so |theta_p| <= 1/N gives deviation <= epsilon
        N = int(math.ceil(2 * math.pi / epsilon))
        self.logger.warning('q = %d above exhaustive cap; using pigeonhole candidates with N = %d.' % (self.group.q, N))

        labels = self.pigeonhole_candidates(T, N)
        devs = _deviations(self.group, labels, primes)
        return [PretentiousnessCertificate(self.group.q, int(ell), T, float(dev), 'even', int(ell) == 0)
                for ell, dev in zip(labels, devs) if dev <= epsilon]

    def pigeonhole_candidates(self, T, N, window=None):
        """Even labels with |theta_p| <= 1/N built from cube collisions.

        The multipliers 0, 2, ..., 2*window are bucketed by their
        argument vectors; differences within the fullest cube are
        verified exactly before they are returned.
        """

        primes = _primes_below(self.group, T)
        inst = _argument_instance(self.group, primes)
        if window is None:
            window = min(inst.M // 2 - 1, 10**6)
        window = max(0, min(int(window), inst.M // 2 - 1))

        multipliers = np.arange(0, 2 * window + 1, 2, dtype=np.int64)
        diffs = lattice.cube_collisions(inst, multipliers, int(N))
        ok = lattice.is_member(inst, diffs, 2, Fraction(1, int(N)), 'plus')

        return np.sort(diffs[ok])

    def count_bound_check(self, T, N):
        """Even characters with every |theta_p| <= 1/N against (q-1)/(2 N^pi(T)).

        Returns
        -------
        CountBound
            Exact count, exact rational bound, and whether the
            count meets it.
        """

        N = as_fraction(N)
        if N < 1 or T < 3:
            raise DomainError('count_bound_check requires N >= 1 and T >= 3.')

        primes = _primes_below(self.group, T)
        inst = _argument_instance(self.group, primes)
        count = lattice.count_small_multiples(inst, 2, 1 / N, 'plus')
        bound = Fraction(self.group.order) / (2 * N ** len(primes))

        return CountBound(count, bound, count >= bound)

    def odd_pretentious_report(self, T, N):
        """Odd characters with every |theta_p| <= 2/N against (q-1)/(2 N^pi(T))."""

        N = as_fraction(N)
        if N < 1:
            raise DomainError('odd_pretentious_report requires N >= 1.')

        primes = _primes_below(self.group, T)
        inst = _argument_instance(self.group, primes)
        count = lattice.count_small_multiples(inst, 2, 2 / N, 'minus')
        bound = Fraction(self.group.order) / (2 * N ** len(primes))
        if count < bound:
            self.logger.info('Odd pretentious set below bound for q = %d: %d < %s.' % (self.group.q, count, bound))

        return CountBound(count, bound, count >= bound)


def search_pretentious(group, T, epsilon, parity='any'):
    return PretentiousSearch(group).search(T, epsilon, parity)


def certify(group, ell, T):
    return PretentiousSearch(group).certify(ell, T)


def count_bound_check(group, T, N):
    return PretentiousSearch(group).count_bound_check(T, N)


def odd_pretentious_report(group, T, N):
    return PretentiousSearch(group).odd_pretentious_report(T, N)


def pigeonhole_candidates(group, T, N, window=None):
    return PretentiousSearch(group).pigeonhole_candidates(T, N, window)


def prime_log_sum(group, ell, y):
    """Sum over p <= y of (chi(p) - 1)/p."""

    primes = np.array(_primes_below(group, y), dtype=np.int64)
    if primes.size == 0:
        return 0j

    return csum((group.values(ell, primes) - 1) / primes)


def chi_minus_one_bound(group, ell, n):
    """|chi(n) - 1| against the sum of k |chi(p) - 1| over p^k || n."""

    n = int(n)
    if n < 1:
        raise DomainError('n must be a positive integer: %s' % n)
    if n % group.q == 0:
        raise DomainError('n must be coprime to q = %d: %s' % (group.q, n))

    lhs = abs(group.char_value(ell, n) - 1)
    rhs = math.fsum(k * abs(group.char_value(ell, p) - 1) for p, k in factorint(n).items())

    return lhs, rhs


def geometric_deviation_check(group, ell, y):
    """Sum of |chi(p)-1|/(p-1) (all prime powers) against 2 sum |chi(p)-1|/p."""

    primes = np.array(_primes_below(group, y), dtype=np.int64)
    if primes.size == 0:
        return 0.0, 0.0

    dev = np.abs(group.values(ell, primes) - 1)
    return csum(dev / (primes - 1)), 2 * csum(dev / primes)


def euler_product_check(group, ell, y, H=EULER_TRUNCATION_HEIGHT):
    """Truncated smooth sum of chi(n)/n against the Euler product over p <= y.

    Returns
    -------
    EulerProductCheck
        The truncated sum, its tail budget, the product, the
        Mertens reference e^gamma log y, whether the two agree
        within the budget, and |product| / reference.
    """

    check_finite(y, 'y')
    if y < 2:
        raise DomainError('euler_product_check requires y >= 2: %s' % y)
    primes = np.array(_primes_below(group, y), dtype=np.int64)

    n = smooth_numbers(y, H)
    sum_value = csum(group.values(ell, n) / n)
    tail_bound = smooth_reciprocal_tail_bound(y, H)

    with mpmath.workdps(30):
        chi_p = group.values(ell, primes)
        product = mpmath.fprod(1 / (1 - mpmath.mpc(c.real, c.imag) / int(p)) for c, p in zip(chi_p, primes))
        product_value = complex(product)

    mertens_ref = EXP_GAMMA * math.log(y)
    within = abs(sum_value - product_value) <= tail_bound + 1e-9 * abs(product_value)

    return EulerProductCheck(sum_value, tail_bound, product_value, mertens_ref,
                             within, abs(product_value) / mertens_ref)


def smooth_char_tail_sum(group, ell, y, B, H=EULER_TRUNCATION_HEIGHT, h=None):
    """Sum of chi(n)/n over y-smooth y^B < n <= H.

    The reference value is log y times the integral of rho over
    [B, infinity); the envelope 1 + h log y is reported when h
    is given.
    """

    check_finite(B, 'B')
    if y < 2 or B < 0:
        raise DomainError('smooth_char_tail_sum requires y >= 2 and B >= 0.')

    lower = floor_power(y, B)
    n = smooth_numbers(y, H)
    n = n[n > lower]
    value = csum(group.values(ell, n) / n) if n.size else 0j

    reference = math.log(y) * float(dickman.rho_tail_integral(B))
    envelope = None if h is None else 1 + h * math.log(y)

    return SmoothCharTail(value, smooth_reciprocal_tail_bound(y, H), reference, envelope)


def switch_to_one(group, ell, y, u, u_prime, f, H=EULER_TRUNCATION_HEIGHT, h=1.0):
    """Compare f(n) chi(n)/n with f(n)/n over y-smooth n in [y^u, y^u'].

    Parameters
    ----------
    f : function
        Vectorised bounded function of an int64 array.
    h : float
        Pretentiousness scale of the character.

    Returns
    -------
    SwitchReport
        Both sums and the envelope h log y int_w^w' rho with
        w = max(0, u-1) and w' = max(u'-u, u'-1).
    """

    check_finite(u, 'u')
    check_finite(u_prime, 'u_prime')
    if not 0 <= u <= u_prime:
        raise DomainError('switch_to_one requires 0 <= u <= u_prime: (%s, %s)' % (u, u_prime))

    lo = y ** u
    hi = floor_power(y, u_prime)
    if hi > H:
        raise CapacityError('y^u_prime exceeds truncation height %d.' % H)

    n = smooth_numbers(y, hi)
    n = n[n >= lo * (1 - 1e-12)]
    weights = np.asarray(f(n), dtype=np.complex128) / n if n.size else np.zeros(0, dtype=np.complex128)

    char_sum = csum(weights * group.values(ell, n)) if n.size else 0j
    unit_sum = csum(weights) if n.size else 0j

    w = max(0.0, u - 1)
    w_prime = max(u_prime - u, u_prime - 1)
    envelope = h * math.log(y) * float(dickman.rho_integral(w, w_prime))

    return SwitchReport(complex(char_sum), complex(unit_sum), envelope)
