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

from charsum.config import (TAIL_EXPONENT_C,
                            EXPSUM_MAX_TERMS,
                            EXPSUM_HEAD_CAP,
                            CHUNK_SIZE)
from charsum.common import (EULER_GAMMA,
                            check_finite,
                            csum,
                            floor_power,
                            parse_sign,
                            signed_phase)
from charsum.exceptions import CapacityError, DomainError

AlphaSum = namedtuple('AlphaSum', 'alpha sign head tail tail_bound constant_residual')
TailSum = namedtuple('TailSum', 'value bound cutoff order')
HeadPrefix = namedtuple('HeadPrefix', 'value normalized cutoff')
ConstantResidual = namedtuple('ConstantResidual', 'value target normalized_residual')
FractionalIntegral = namedtuple('FractionalIntegral', 'value envelope ratio')

# largest order of repeated summation by parts for the tail remainder
MAX_ABEL_ORDER = 40

logger = logging.getLogger('timestamp')


def _check_alpha(alpha):
    check_finite(alpha, 'alpha')
    if not 0 < alpha < 1:
        raise DomainError('alpha must lie in (0, 1): %s' % alpha)


def head_cutoff(alpha):
    """floor(1/alpha), exact when 1/alpha is an integer."""

    K = floor_power(alpha, -1)
    if K > EXPSUM_HEAD_CAP:
        raise CapacityError('1/alpha = %d exceeds head cap %d.' % (K, EXPSUM_HEAD_CAP))
    return K


def _phase_sum(alpha, sign, lo, hi, head=False):
    """Compensated sum of e(sign alpha n)/n (or (1 - e(.))/n) over lo <= n <= hi."""

    chunks = []
    for start in range(lo, hi + 1, CHUNK_SIZE):
        n = np.arange(start, min(hi, start + CHUNK_SIZE - 1) + 1, dtype=np.int64)
        w = signed_phase(alpha, n, sign)
        chunks.append(csum(((1 - w) if head else w) / n))

    return complex(csum(np.array(chunks, dtype=np.complex128))) if chunks else 0j


def head_sum(alpha, sign):
    """Sum of (1 - e(+-alpha n))/n over n <= 1/alpha."""

    _check_alpha(alpha)
    sign = parse_sign(sign)
    return _phase_sum(alpha, sign, 1, head_cutoff(alpha), head=True)


def head_prefix(alpha, sign):
    """Head restricted to n <= 1/(alpha |log alpha|), and |value| |log alpha|."""

    _check_alpha(alpha)
    sign = parse_sign(sign)
    log_alpha = abs(math.log(alpha))
    cutoff = min(head_cutoff(alpha), int(math.floor(1.0 / (alpha * log_alpha))))
    value = _phase_sum(alpha, sign, 1, cutoff, head=True)

    return HeadPrefix(value, abs(value) * log_alpha, cutoff)


def default_tail_exponent(alpha, B):
    """Tail cutoff exponent c = 5 (1 - log B / log |log alpha|), 5 when B <= 1."""

    _check_alpha(alpha)
    if B <= 1:
        return float(TAIL_EXPONENT_C)

    loglog = math.log(abs(math.log(alpha)))
    if loglog <= 0:
        return float(TAIL_EXPONENT_C)

    return max(0.0, TAIL_EXPONENT_C * (1 - math.log(B) / loglog))


def _abel_remainder(alpha, sign, N):
    """Sum of e(sign alpha n)/n over n >= N by repeated summation by parts.

    With w = e(sign alpha) and r = w/(1-w),
        sum_{n>=N} w^n f(n) = sum_{j<p} r^j w^N D^j f(N)/(1-w) + r^p sum_{n>=N} w^n D^p f(n),
    where D is the forward difference. For f(n) = 1/n the remainder
    is at most |r|^p |D^(p-1) f(N)|; p is chosen to minimise it.
    """

    w = complex(signed_phase(alpha, 1, sign))
    one_minus_w = 1 - w
    r = w / one_minus_w
    base = complex(signed_phase(alpha, N, sign)) / one_minus_w

    # p = 0: Dirichlet bound on the untouched remainder
    bound = 2.0 / (abs(one_minus_w) * N)
    total = 0j
    d = 1.0 / N
    r_pow = 1 + 0j
    order = 0
    for j in range(MAX_ABEL_ORDER):
        term = r_pow * base * d
        new_bound = abs(r_pow * r) * abs(d)
        if new_bound >= bound:
            break
        total += term
        bound = new_bound
        order = j + 1
        r_pow *= r
        d *= -(j + 1) / (N + j + 1)

    return total, bound, order


def tail_sum(alpha, sign, c=TAIL_EXPONENT_C, method='abel'):
    """Tail sum of e(+-alpha n)/n over n > 1/alpha.

    Terms are summed directly up to K = |log alpha|^c / alpha (at
    most EXPSUM_MAX_TERMS past 1/alpha). The remainder beyond K is
    added by repeated summation by parts ('abel') or dropped
    ('direct'); either way its bound is reported.

    Returns
    -------
    TailSum
        Value, remainder bound, cutoff K and the summation order.
    """

    _check_alpha(alpha)
    sign = parse_sign(sign)
    if method not in ('abel', 'direct'):
        raise DomainError('Unknown tail method: %s' % method)

    K0 = head_cutoff(alpha)
    target = abs(math.log(alpha)) ** c / alpha
    K = max(K0, int(min(target, float(K0 + EXPSUM_MAX_TERMS))))
    if target > K0 + EXPSUM_MAX_TERMS:
        logger.debug('Tail cutoff for alpha = %g capped at %d terms.' % (alpha, EXPSUM_MAX_TERMS))

    value = _phase_sum(alpha, sign, K0 + 1, K)

    N = K + 1
    if method == 'direct':
        w = complex(signed_phase(alpha, 1, sign))
        return TailSum(value, 2.0 / (abs(1 - w) * N), K, 0)

    remainder, bound, order = _abel_remainder(alpha, sign, N)
    return TailSum(value + remainder, bound, K, order)


def tail_closed_form(alpha, sign):
    """-log(1 - e(+-alpha)) minus the sum of e(+-alpha n)/n over n <= 1/alpha."""

    _check_alpha(alpha)
    sign = parse_sign(sign)
    w = complex(signed_phase(alpha, 1, sign))
    head = _phase_sum(alpha, sign, 1, head_cutoff(alpha))

    with mpmath.workdps(30):
        full = -mpmath.log(1 - mpmath.mpc(w.real, w.imag))
        return complex(full - mpmath.mpc(head.real, head.imag))


def main_constant_target(sign):
    """log(2 pi) + gamma - sign i pi/2."""

    sign = parse_sign(sign)
    return complex(math.log(2 * math.pi) + EULER_GAMMA, -sign * math.pi / 2)


def main_constant_residual(alpha, sign, c=TAIL_EXPONENT_C):
    """Head minus tail against log(2 pi) + gamma -+ i pi/2.

    Returns
    -------
    ConstantResidual
        head - tail, the target constant, and the residual
        divided by alpha |log alpha|.
    """

    _check_alpha(alpha)
    if alpha > 0.1:
        raise DomainError('main_constant_residual requires alpha <= 0.1: %s' % alpha)

    value = head_sum(alpha, sign) - tail_sum(alpha, sign, c).value
    target = main_constant_target(sign)

    return ConstantResidual(value, target, abs(value - target) / (alpha * abs(math.log(alpha))))


def alpha_sum(alpha, sign, c=TAIL_EXPONENT_C):
    """Head, tail and constant residual for one frequency."""

    _check_alpha(alpha)
    head = head_sum(alpha, sign)
    tail = tail_sum(alpha, sign, c)
    residual = abs(head - tail.value - main_constant_target(sign))

    return AlphaSum(alpha, parse_sign(sign), head, tail.value, tail.bound, residual)


def fractional_integral(alpha, Y, sign):
    """Integral of {t} e(+-alpha t)/t over [Y, infinity).

    The piece up to m = ceil(Y) is integrated directly. Beyond m,
    summing the unit intervals gives
        int_0^1 s e(+-alpha s) w^m Phi(w, 1, m + s) ds,
    with w = e(+-alpha) and Phi the Lerch transcendent. Its Laplace
    representation Phi(w, 1, a) = int_0^inf e^(-a x)/(1 - w e^(-x)) dx
    turns the double integral into one smooth integral over x, the
    inner s-integral being elementary.

    Returns
    -------
    FractionalIntegral
        Value, the envelope 1 + 1/(alpha Y) and |value|/envelope.
    """

    _check_alpha(alpha)
    check_finite(Y, 'Y')
    if Y <= 0:
        raise DomainError('fractional_integral requires Y > 0: %s' % Y)
    sign = parse_sign(sign)

    with mpmath.workdps(25):
        two_pi_i_alpha = 2j * mpmath.pi * sign * alpha
        m = int(math.ceil(Y))
        if m == Y:
            head = mpmath.mpf(0)
        else:
            head = mpmath.quad(lambda t: (t - (m - 1)) * mpmath.exp(two_pi_i_alpha * t) / t, [Y, m])

        w = mpmath.exp(two_pi_i_alpha)

        def inner(x):
            # int_0^1 s e^(beta s) ds with beta = 2 pi i alpha - x
            beta = two_pi_i_alpha - x
            return (mpmath.exp(beta) * (beta - 1) + 1) / (beta * beta)

        tail = w ** m * mpmath.quad(lambda x: mpmath.exp(-m * x) / (1 - w * mpmath.exp(-x)) * inner(x),
                                    [0, 1, mpmath.inf])

        value = complex(head + tail)

    envelope = 1 + 1 / (alpha * Y)
    return FractionalIntegral(value, envelope, abs(value) / envelope)
