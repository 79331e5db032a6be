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
from scipy import fft
from sympy import isprime, primefactors, primerange

from charsum.config import GROUP_CAP, POLYA_EXPONENT, CHUNK_SIZE
from charsum.common import check_finite, csum, signed_phase, centered_residue
from charsum.exceptions import CapacityError, DomainError, ValidationError

SweepResult = namedtuple('SweepResult', 'q x parity max_abs argmax_ell')

_QUARTER_ROOTS = np.array([1 + 0j, 1j, -1 + 0j, -1j])


class ThetaVector(namedtuple('ThetaVector', 'q ell primes numerators denominator')):
    """Centered arguments theta_p = numerator/denominator in (-1/2, 1/2]."""

    __slots__ = ()

    @property
    def values(self):
        return np.array(self.numerators, dtype=np.float64) / self.denominator

    def fractions(self):
        return [Fraction(a, self.denominator) for a in self.numerators]


def root_of_unity(k, m):
    """Compute e(k/m) for integer arrays k.

    Multiples of m/4 are returned exactly, so real characters
    take the values +1 and -1 without rounding.
    """

    k = np.asarray(k, dtype=np.int64) % m
    out = np.exp(2j * np.pi * (k / m))

    quarter = (4 * k) % m == 0
    if np.any(quarter):
        out = np.where(quarter, _QUARTER_ROOTS[(4 * k // m) % 4], out)

    return out


def smallest_primitive_root(q):
    """Smallest primitive root modulo the prime q."""

    factors = primefactors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return g

    return 1  # q = 2


def discrete_log_table(q, g):
    """Table ind with g^ind[n] = n (mod q) for 1 <= n <= q-1.

    Powers of g are generated in doubling blocks: the block
    [m, 2m) is the block [0, m) multiplied by g^m.
    """

    order = q - 1
    powers = np.empty(order, dtype=np.int64)
    powers[0] = 1
    filled = 1
    while filled < order:
        step = pow(g, filled, q)
        m = min(filled, order - filled)
        powers[filled:filled + m] = (powers[:m] * step) % q
        filled += m

    ind = np.full(q, -1, dtype=np.int64)
    ind[powers] = np.arange(order, dtype=np.int64)
    return ind


def build_group(q, cap=GROUP_CAP):
    """Build the character group modulo a prime q.

    Parameters
    ----------
    q : int
        Prime modulus, 3 <= q <= cap.
    cap : int
        Largest modulus accepted.

    Returns
    -------
    CharacterGroup
        Group realised through the smallest primitive root.
    """

    if int(q) != q:
        raise ValidationError('Modulus must be an integer: %s' % q)
    q = int(q)
    if q < 3:
        raise DomainError('Modulus must be at least 3: %d' % q)
    if not isprime(q):
        raise ValidationError('Modulus must be prime: %d' % q)
    if q > cap:
        raise CapacityError('Modulus %d exceeds cap %d.' % (q, cap))

    return CharacterGroup(q)


class CharacterGroup(object):
    """Dirichlet characters modulo a prime q.

    The character with label ell is chi(n) = e(ell*ind[n]/(q-1)),
    where ind is the discrete logarithm to the smallest primitive
    root g. Label 0 is the principal character and chi(-1) =
    (-1)^ell.
    """

    def __init__(self, q):
        """Initialization.

        Parameters
        ----------
        q : int
            Prime modulus (validated by build_group).
        """

        self.logger = logging.getLogger('timestamp')

        self.q = q
        self.order = q - 1
        self.g = smallest_primitive_root(q)

        self.logger.debug('Building discrete log table for q = %d (g = %d).' % (q, self.g))
        self.ind = discrete_log_table(q, self.g)
        self.ind.flags.writeable = False

    def _label(self, ell):
        if int(ell) != ell:
            raise DomainError('Character label must be an integer: %s' % ell)
        return int(ell) % self.order

    @staticmethod
    def parity(ell):
        """'odd' or 'even' according to chi(-1) = (-1)^ell."""
        return 'odd' if ell % 2 else 'even'

    def conjugate_index(self, ell):
        """Label of the conjugate character."""
        return (-self._label(ell)) % self.order

    def char_value(self, ell, n):
        """chi_ell(n): 0 when q | n, otherwise a root of unity."""

        ell = self._label(ell)
        r = int(n) % self.q
        if r == 0:
            return 0j

        return complex(root_of_unity(ell * int(self.ind[r]), self.order))

    def values(self, ell, n):
        """Vectorised chi_ell over an integer array n."""

        ell = self._label(ell)
        r = np.asarray(n, dtype=np.int64) % self.q
        k = (ell * self.ind[r]) % self.order
        return np.where(r == 0, 0j, root_of_unity(k, self.order))

    def partial_sum(self, ell, x):
        """Sum of chi_ell(n) over 1 <= n <= x, compensated."""

        check_finite(x, 'x')
        if x < 1:
            raise DomainError('partial_sum requires x >= 1: %s' % x)

        X = int(math.floor(x))
        chunk_sums = []
        for lo in range(1, X + 1, CHUNK_SIZE):
            n = np.arange(lo, min(X, lo + CHUNK_SIZE - 1) + 1, dtype=np.int64)
            chunk_sums.append(csum(self.values(ell, n)))

        return csum(np.array(chunk_sums, dtype=np.complex128))

    def partial_sums_all(self, x):
        """Partial sums up to x for every label, by one inverse transform.

        The sum for label ell is the sum over n <= x of
        e(ell*ind[n]/(q-1)), i.e. (q-1) times entry ell of the
        inverse DFT of the indicator of {ind[n] : n <= x}. The
        transform length q-1 is arbitrary and scipy.fft handles
        composite and prime lengths alike.
        """

        check_finite(x, 'x')
        if x > self.q:
            raise DomainError('x must not exceed q = %d: %s' % (self.q, x))

        X = min(int(math.floor(x)), self.order)
        indicator = np.zeros(self.order, dtype=np.float64)
        if X >= 1:
            indicator[self.ind[1:X + 1]] = 1.0

        return fft.ifft(indicator) * self.order

    def partial_sums_naive(self, x):
        """Partial sums up to x for every label, one character at a time."""

        check_finite(x, 'x')
        if x > self.q:
            raise DomainError('x must not exceed q = %d: %s' % (self.q, x))

        X = min(int(math.floor(x)), self.order)
        sums = np.zeros(self.order, dtype=np.complex128)
        if X < 1:
            return sums

        ind_n = self.ind[1:X + 1]
        for ell in range(self.order):
            sums[ell] = csum(root_of_unity((ell * ind_n) % self.order, self.order))

        return sums

    def _select_labels(self, parity, exclude_principal):
        labels = np.arange(self.order)
        mask = np.ones(self.order, dtype=bool)
        if parity == 'odd':
            mask &= labels % 2 == 1
        elif parity == 'even':
            mask &= labels % 2 == 0
        elif parity != 'any':
            raise DomainError('Parity must be any, odd or even: %s' % parity)
        if exclude_principal:
            mask[0] = False

        return labels[mask]

    def sweep_max(self, x, parity='any', exclude_principal=True, method='fft'):
        """Largest |sum_{n<=x} chi(n)| over the selected characters.

        Parameters
        ----------
        x : float
            Sum length, at most q.
        parity : str
            'any', 'odd' or 'even'.
        exclude_principal : boolean
            Skip the principal character.
        method : str
            'fft' for the transform path, 'naive' for per-character sums.

        Returns
        -------
        SweepResult
            Maximum modulus and the smallest label attaining it.
        """

        if method == 'fft':
            sums = self.partial_sums_all(x)
        elif method == 'naive':
            sums = self.partial_sums_naive(x)
        else:
            raise DomainError('Unknown sweep method: %s' % method)

        labels = self._select_labels(parity, exclude_principal)
        if labels.size == 0:
            raise DomainError('No characters match parity %s.' % parity)

        mags = np.abs(sums[labels])
        max_abs = float(mags.max())

        # ties within rounding resolve to the smallest label
        tied = labels[mags >= max_abs - 1e-9 * max(1.0, max_abs)]
        return SweepResult(self.q, x, parity, max_abs, int(tied.min()))

    def gauss_sum(self, ell):
        """Gauss sum tau(chi_ell) = sum_a chi_ell(a) e(a/q), ell != 0."""

        ell = self._label(ell)
        if ell == 0:
            raise DomainError('Gauss sum of the principal character is excluded.')

        a = np.arange(1, self.q, dtype=np.int64)
        return csum(self.values(ell, a) * root_of_unity(a, self.q))

    def default_truncation(self):
        """Polya truncation z = round(q^(11/21))."""
        return max(1, int(round(self.q ** POLYA_EXPONENT)))

    def polya_rhs(self, ell, alpha, z=None):
        """Truncated Polya expansion of sum_{n <= alpha q} chi(n).

        (tau(chi)/2 pi i) sum_{1<=|n|<=z} conj(chi(n)) (1 - e(-alpha n))/n,
        with the terms for n and -n combined.
        """

        ell = self._label(ell)
        if ell == 0:
            raise DomainError('Polya expansion requires a non-principal character.')
        check_finite(alpha, 'alpha')
        if not 0 < alpha < 1:
            raise DomainError('alpha must lie in (0, 1): %s' % alpha)
        if z is None:
            z = self.default_truncation()
        if z < 1:
            raise DomainError('Truncation z must be at least 1: %s' % z)

        n = np.arange(1, int(math.floor(z)) + 1, dtype=np.int64)
        chi_bar = np.conj(self.values(ell, n))
        chi_minus_one = -1.0 if ell % 2 else 1.0
        bracket = (1 - signed_phase(alpha, n, -1)) - chi_minus_one * (1 - signed_phase(alpha, n, 1))
        series = csum(chi_bar * bracket / n)

        return self.gauss_sum(ell) / (2j * np.pi) * series

    def polya_error(self, ell, alpha, z=None):
        """|sum_{n <= alpha q} chi(n) - polya_rhs|."""

        x = alpha * self.q
        lhs = self.partial_sum(ell, x) if x >= 1 else 0j
        return abs(lhs - self.polya_rhs(ell, alpha, z))

    def first_primes(self, k):
        """First k primes, which must all be below q."""

        if k < 1:
            raise DomainError('k must be positive: %s' % k)

        primes = []
        for p in primerange(2, self.q):
            primes.append(int(p))
            if len(primes) == k:
                return primes

        raise DomainError('Fewer than %d primes below q = %d.' % (k, self.q))

    def theta_vector(self, ell, k):
        """Centered arguments of chi_ell at the first k primes."""

        ell = self._label(ell)
        primes = self.first_primes(k)
        numerators = tuple(int(centered_residue(ell * int(self.ind[p]), self.order)) for p in primes)
        return ThetaVector(self.q, ell, tuple(primes), numerators, self.order)
